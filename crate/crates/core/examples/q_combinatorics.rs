//! Gauss polynomials, the coefficients α(n,k), and the two-variable identity behind them.
//!
//! Run with `cargo run --example q_combinatorics`.

use qhopf::hopf::{pol_identity_sides, verify_pol_identity};
use qhopf::qcalc::{q_factorial, q_int, GaussTable};
use qhopf::{Engine, Scalar, Var};

fn main() {
    let q = Scalar::var(Var::Q);
    println!("[4]_q  = {}", q_int(4, &q));
    println!("[4]_q! = {}", q_factorial(4, &q));

    let table = GaussTable::new(5, &q);
    for n in 0..=5 {
        let row: Vec<String> = (0..=n as i64).map(|k| table.get(n, k).to_string()).collect();
        println!("n = {n}: {}", row.join(" | "));
    }

    // α(n,k) from the product formula and from the recurrence
    let e = Engine::free(2);
    let rec = e.alpha_recurrent_table(4);
    for k in 0..=4 {
        let closed = e.alpha_closed(4, k);
        assert_eq!(closed, rec[4][k as usize]);
        println!("alpha(4,{k}) = {closed}");
    }

    let (lhs, rhs) = pol_identity_sides(3, 2);
    println!("identity at n = 3, k = 2:\n  lhs = {lhs}\n  rhs = {rhs}");
    assert!((0..=6).all(|n| (0..=n as i64 + 1).all(|k| verify_pol_identity(n, k))));
}
