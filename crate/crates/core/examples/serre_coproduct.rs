//! Coproducts of q-Serre polynomials and braced elements, generic versus closed form.
//!
//! Run with `cargo run --example serre_coproduct`.

use qhopf::render::{tensor_latex, tensor_text};
use qhopf::suite::family_element;
use qhopf::{ClosedKind, Engine};

fn main() -> qhopf::Result<()> {
    let e = Engine::free(2);

    let u = e.serre_left(1, 2, 2)?;
    println!("[x1x2^2] has {} terms", u.len());
    let generic = e.coproduct_free(&u);
    println!("coproduct:\n  {}", tensor_text(&generic));
    println!("latex:\n  {}", tensor_latex(&generic));

    for kind in ClosedKind::ALL.into_iter().filter(|k| *k != ClosedKind::G2Top) {
        for n in 0..=4 {
            let el = family_element(&e, kind, n)?;
            assert_eq!(e.coproduct_free(&el), e.closed_coproduct(kind, n)?);
        }
        println!("{kind}: closed form agrees for n <= 4");
    }

    // braced elements normalize the middle coefficients to 1
    let b = e.braced_left(1, 2, 2)?;
    println!("Delta({{x1x2^2}}) = {}", tensor_text(&e.coproduct_free(&b)));
    Ok(())
}
