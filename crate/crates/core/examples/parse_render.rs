//! The expression language and the three output formats.
//!
//! Run with `cargo run --example parse_render`.

use qhopf::expr::{parse_element, parse_expression};
use qhopf::render::{render, skew_from_json, Format, Renderable};
use qhopf::Engine;

fn main() -> qhopf::Result<()> {
    let e = Engine::free(2);
    for src in ["bracket(x1, x2)", "serreL(1,2,2) - x1*x2^2", "p12^-1 * g(1) * x2 + 3/2*x1x2"] {
        let a = parse_element(src, &e)?;
        for f in [Format::Text, Format::Latex] {
            println!("{src:28} {f:?}: {}", render(Renderable::Skew(&a), f));
        }
    }

    let a = parse_element("bracedL(1,2,1)", &e)?;
    let json = render(Renderable::Skew(&a), Format::Json);
    println!("{json}");
    assert_eq!(skew_from_json(&json)?, a);

    let delta = e.coproduct(&parse_element("x1x2", &e)?);
    println!("{}", render(Renderable::Tensor(&delta), Format::Latex));

    // errors carry a 1-based column
    if let Err(err) = parse_expression("x1 + * x2") {
        println!("error: {err}");
    }
    if let Err(err) = parse_element("g2top()", &e) {
        println!("error: {err}");
    }
    Ok(())
}
