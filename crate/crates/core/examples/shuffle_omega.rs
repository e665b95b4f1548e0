//! Quantum shuffles and the map Ω from the free algebra to the shuffle algebra.
//!
//! Run with `cargo run --example shuffle_omega`.

use qhopf::render::braided_text;
use qhopf::shuffle::deconcat_coproduct;
use qhopf::{Engine, ShuffleElement, Word};

fn main() -> qhopf::Result<()> {
    let e = Engine::free(2);
    let x2x1 = ShuffleElement::comonomial(Word::from_letters([2, 1]));
    let x2x2x1 = ShuffleElement::comonomial(Word::from_letters([2, 2, 1]));
    println!("(x2x1)(x2^2x1) = {}", e.shuffle_product(&x2x1, &x2x2x1));
    println!("deconcatenation of (x2^2x1): {}", braided_text(&deconcat_coproduct(&x2x2x1)));

    for n in 0..=3 {
        let s = e.serre_left(1, 2, n)?;
        println!("Omega([x1x2^{n}]) = {}", e.omega(&s));
    }

    // Ω is a braided Hopf map: Δ^b ∘ Ω = (Ω ⊗ Ω) ∘ Δ^b
    let s = e.serre_right(2, 3, 1)?;
    assert!(e.braided_compat_check(&s)?);
    println!("braided compatibility holds on [x2^3x1]");
    println!("Delta^b([x2x1]) = {}", braided_text(&e.braided_from_ordinary(&e.serre_right(2, 1, 1)?)?));

    // under the G2 bindings the sixth Serre relation lies in the kernel
    let g2 = Engine::g2();
    println!("G2: Omega([x1x2^4]) = {}", g2.omega(&g2.serre_left(1, 2, 4)?));
    Ok(())
}
