//! The G2 specialization: Serre kernel, the degree-(2,3) linear relation, and the
//! coproduct of the top element.
//!
//! Run with `cargo run --release --example g2_coproduct`.

use qhopf::g2;
use qhopf::render::braided_text;
use qhopf::shuffle::omega_tensor;
use qhopf::{ClosedKind, Engine};

fn main() -> qhopf::Result<()> {
    let e = Engine::g2();
    let (a, b) = g2::top_coefficients(&e)?;
    println!("top element coefficients:\n  {a}\n  {b}");
    let top = g2::g2_top_element(&e)?;
    println!("top element has {} terms", top.len());

    // Δ^b(top) and the closed display differ in k<X> ⊗ k<X>, but only by terms Ω ⊗ Ω kills
    let generic = e.braided_from_ordinary(&top)?;
    let claimed = g2::claimed_braided_top(&e)?;
    let diff = &generic - &claimed;
    println!("Delta^b(top): {} terms, display: {} terms, difference: {} terms", generic.len(), claimed.len(), diff.len());
    assert!(omega_tensor(e.params(), &diff).is_zero());
    println!("(Omega (x) Omega) of the difference is 0");
    let head: Vec<String> = braided_text(&claimed).split(" + ").take(3).map(String::from).collect();
    println!("display: {} + ...", head.join(" + "));
    assert_eq!(e.ordinary_from_braided(&claimed), e.closed_coproduct(ClosedKind::G2Top, 0)?);

    for report in [
        g2::verify_serre_kernel(&e),
        g2::verify_lemma_leq(&e),
        g2::verify_basis_change(&e),
        g2::verify_theorem_c5(&e),
    ] {
        println!("{report}");
    }
    Ok(())
}
