//! Runs the registered identity checks, optionally with a corrupted claim.
//!
//! `cargo run --release --example identity_suite -- [name] [max_n] [--corrupt]`

use qhopf::render::{render, Format, Renderable};
use qhopf::suite::{run, SuiteOptions};

fn main() -> qhopf::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let corrupt = args.iter().any(|a| a == "--corrupt");
    let rest: Vec<&String> = args.iter().filter(|a| *a != "--corrupt").collect();
    let name = rest.first().map_or("all", |s| s.as_str());
    let mut opts = SuiteOptions { corrupt, ..SuiteOptions::default() };
    if let Some(m) = rest.get(1) {
        opts.max_n = m.parse().expect("max_n is an integer");
    }
    let reports = run(name, &opts)?;
    println!("{}", render(Renderable::Reports(&reports), Format::Text));
    if reports.iter().any(|r| !r.passed()) {
        std::process::exit(1);
    }
    Ok(())
}
