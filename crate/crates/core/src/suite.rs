//! Named identity checks, runnable one at a time or all together.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chargroup::{GroupElement, Params, Word};
use crate::error::{Error, Result};
use crate::freealg::{Engine, FreeElement, GroupWord, SkewElement};
use crate::g2::{self, Checker, VerificationReport};
use crate::hopf::{pol_identity_sides, verify_pol_identity, ClosedKind, TensorElement};
use crate::linear::Linear;
use crate::qcalc::{q_factorial, GaussTable};
use crate::scalar::{Monomial, Scalar, Var};
use crate::shuffle::{deconcat_coproduct, shuffle_bracket, shuffle_product, shuffle_words, Omega, ShuffleElement};

/// Every identity name accepted by [`run`], in report order.
pub const IDENTITIES: [&str; 14] = [
    "coSer",
    "pol",
    "mon",
    "ser3",
    "mon1",
    "coSer4",
    "mon2",
    "omega-forms",
    "shuffle",
    "serre-kernel",
    "leq",
    "basis-change",
    "c5",
    "hopf",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest `n` for the closed-form families; the α checks go to `max_n + 2`.
    pub max_n: u32,
    pub seed: u64,
    /// Random cases per randomized property.
    pub cases: usize,
    /// Perturbs one claimed coefficient per identity, to exercise failure reports.
    pub corrupt: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_n: 6,
            seed: 0x5eed_2024,
            cases: 50,
            corrupt: false,
        }
    }
}

/// Runs one identity, or all of them for `"all"`.
pub fn run(name: &str, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    if name == "all" {
        return Ok(IDENTITIES.iter().map(|n| run_one(n, opts)).collect());
    }
    if !IDENTITIES.contains(&name) {
        return Err(Error::Eval(format!(
            "unknown identity {name:?}; expected one of {} or all",
            IDENTITIES.join(", ")
        )));
    }
    Ok(vec![run_one(name, opts)])
}

fn run_one(name: &str, opts: &SuiteOptions) -> VerificationReport {
    let g2e = Engine::g2();
    match name {
        "pol" => alpha_and_pol(opts),
        "omega-forms" => omega_forms(opts),
        "shuffle" => shuffle_identities(opts),
        "hopf" => hopf_sanity(opts),
        "serre-kernel" => g2::verify_serre_kernel(&g2e),
        "leq" => g2::verify_lemma_leq(&g2e),
        "basis-change" => g2::verify_basis_change(&g2e),
        "c5" if opts.corrupt => g2::verify_theorem_c5_with(&g2e, Some(g2::tau(&g2e, 0) * Scalar::from_int(2))),
        "c5" => g2::verify_theorem_c5(&g2e),
        other => closed_family(other.parse().expect("registered name"), opts),
    }
}

/// The element whose coproduct a closed-form display describes.
pub fn family_element(e: &Engine, kind: ClosedKind, n: u32) -> Result<FreeElement> {
    match kind {
        ClosedKind::Mon => Ok(Linear::basis(Word::power(2, n as usize))),
        ClosedKind::Ser3 => e.braced_power(2, n),
        ClosedKind::CoSer => e.serre_left(1, 2, n),
        ClosedKind::Mon1 => e.braced_left(1, 2, n),
        ClosedKind::CoSer4 => e.serre_right(2, n, 1),
        ClosedKind::Mon2 => e.braced_right(2, n, 1),
        ClosedKind::G2Top => g2::g2_top_element(e),
    }
}

fn corrupt_first(t: &TensorElement) -> TensorElement {
    let mut out = t.clone();
    if let Some((k, c)) = t.iter().next() {
        out.add_term(k.clone(), c.clone());
    }
    out
}

/// Generic coproduct against the closed display for `0 ≤ n ≤ max_n`, free parameters.
pub fn closed_family(kind: ClosedKind, opts: &SuiteOptions) -> VerificationReport {
    let mut c = Checker::new(kind.name());
    let e = Engine::free(2);
    let mut largest = 0;
    for n in 0..=opts.max_n {
        let Some(el) = c.guard(&format!("n = {n}"), family_element(&e, kind, n)) else { break };
        let Some(mut claim) = c.guard(&format!("n = {n}"), e.closed_coproduct(kind, n)) else { break };
        if opts.corrupt && n == opts.max_n {
            claim = corrupt_first(&claim);
        }
        let got = e.coproduct_free(&el);
        largest = largest.max(got.len());
        c.equal_tensor(&format!("n = {n}"), &got, &claim);
    }
    c.detail(format!("0 <= n <= {}, largest coproduct has {largest} terms", opts.max_n));
    c.finish()
}

/// α closed = α recurrent, the two-variable identity, its λ-slices, and the specialization.
pub fn alpha_and_pol(opts: &SuiteOptions) -> VerificationReport {
    let mut c = Checker::new("pol");
    let e = Engine::free(2);
    let top = opts.max_n + 2;
    let rec = e.alpha_recurrent_table(top);
    for n in 0..=top {
        for k in 0..=n as i64 {
            let closed = e.alpha_closed(n, k);
            c.equal_scalar(&format!("alpha({n},{k})"), &closed, &rec[n as usize][k as usize]);
        }
    }
    let q = Scalar::var(Var::Q);
    let gauss = GaussTable::new(top + 1, &q);
    for n in 0..=top {
        for k in 0..=(n as i64 + 1) {
            c.check(verify_pol_identity(n, k), || format!("identity fails at n = {n}, k = {k}"));
            c.check(e.alpha_closed_satisfies_recurrence(n, k), || {
                format!("specialized identity fails at n = {n}, k = {k}")
            });
            if k == 0 {
                continue;
            }
            let (lhs, rhs) = pol_identity_sides(n, k);
            let (Some(l), Some(r)) = (
                lhs.is_polynomial().then(|| lhs.numerator().split_by_var(Var::Lambda)),
                rhs.is_polynomial().then(|| rhs.numerator().split_by_var(Var::Lambda)),
            ) else {
                c.fail(format!("n = {n}, k = {k}: sides are not polynomial"));
                continue;
            };
            let slice = |m: &std::collections::BTreeMap<i32, crate::scalar::Poly>, d: i32| {
                m.get(&d).cloned().map(Scalar::from_poly).unwrap_or_else(Scalar::zero)
            };
            // λ^0: [n+1,k] = [n,k-1] + q^k [n,k]
            let pascal1 = gauss.get(n, k - 1) + q.pow(k as i32).unwrap() * gauss.get(n, k);
            c.equal_scalar(&format!("lambda^0 slice n = {n}, k = {k}"), &slice(&l, 0), &gauss.get(n + 1, k));
            c.equal_scalar(&format!("lambda^0 slice rhs n = {n}, k = {k}"), &slice(&r, 0), &pascal1);
            // λ^1 over -q^n: [n+1,k] = q^{n-k+1} [n,k-1] + [n,k]
            let qn = q.pow(n as i32).unwrap();
            let pascal2 = q.pow(n as i32 - k as i32 + 1).unwrap() * gauss.get(n, k - 1) + gauss.get(n, k);
            c.equal_scalar(&format!("lambda^1 slice n = {n}, k = {k}"), &slice(&l, 1), &(-(&qn * &gauss.get(n + 1, k))));
            c.equal_scalar(&format!("lambda^1 slice rhs n = {n}, k = {k}"), &slice(&r, 1), &(-(&qn * &pascal2)));
        }
    }
    c.detail(format!("0 <= k <= n <= {top}"));
    c.finish()
}

/// `[n]_{q^-1}!`, `q = p22`.
fn inv_factorial(params: &Params, n: u32) -> Scalar {
    q_factorial(n, &params.q().inv().expect("nonzero"))
}

/// `∏_{s<n} (1 - p12 p21 q^s)`.
fn lambda_product(params: &Params, n: u32) -> Scalar {
    let lam = params.p(1, 2) * params.p(2, 1);
    let q = params.q();
    (0..n)
        .map(|s| Scalar::one() - &lam * &q.pow(s as i32).unwrap())
        .product()
}

/// Ω on powers of `x2` and on the Serre polynomials, against the explicit formulas.
pub fn omega_forms(opts: &SuiteOptions) -> VerificationReport {
    let mut c = Checker::new("omega-forms");
    let e = Engine::free(2);
    let params = e.params();
    let q = params.q();
    let mut om = Omega::new(params);
    for n in 0..=opts.max_n {
        let w = Word::power(2, n as usize);
        let got = om.word(&w);
        let want = ShuffleElement::term(w.clone(), inv_factorial(params, n));
        c.equal(&format!("Omega(x2^{n})"), got.as_linear(), want.as_linear());
        if let Some(b) = c.guard("braced", e.braced_power(2, n)) {
            let e2 = (n as i32) * (1 - n as i32) / 2;
            let want = ShuffleElement::term(w, q.pow(e2).unwrap());
            c.equal(&format!("Omega({{x2^{n}}})"), om.element(&b).as_linear(), want.as_linear());
        }
    }
    let p21 = params.p(2, 1);
    let p12 = params.p(1, 2);
    for n in 0..opts.max_n {
        let base = inv_factorial(params, n) * lambda_product(params, n);
        let nn = n as i32;
        let e2 = nn * (1 - nn) / 2;
        let cases: [(&str, Result<FreeElement>, Scalar, Word); 4] = [
            ("[x1x2^n]", e.serre_left(1, 2, n), &base * &p21.pow(-nn).unwrap(), Word::power(2, n as usize).concat(&Word::letter(1))),
            ("[x2^nx1]", e.serre_right(2, n, 1), &base * &p12.pow(-nn).unwrap(), Word::letter(1).concat(&Word::power(2, n as usize))),
            ("{x1x2^n}", e.braced_left(1, 2, n), p21.pow(-nn).unwrap() * q.pow(e2).unwrap(), Word::power(2, n as usize).concat(&Word::letter(1))),
            ("{x2^nx1}", e.braced_right(2, n, 1), p12.pow(-nn).unwrap() * q.pow(e2).unwrap(), Word::letter(1).concat(&Word::power(2, n as usize))),
        ];
        for (label, el, coef, word) in cases {
            let Some(el) = c.guard(label, el) else { continue };
            let want = ShuffleElement::term(word, coef);
            c.equal(&format!("Omega({label}) at n = {n}"), om.element(&el).as_linear(), want.as_linear());
        }
    }
    c.detail(format!("powers n <= {}, Serre polynomials n <= {}", opts.max_n, opts.max_n.saturating_sub(1)));
    c.finish()
}

/// All words in `x1, x2` of length `0..=max_len`.
pub fn words_up_to(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| [1, 2].map(|l| w.concat(&Word::letter(l))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Right side of `(w)(x_i) = Σ_{uv=w} p(x_i,v)^{-1} (u x_i v)` and of the mirrored display.
pub fn single_letter_shuffle(params: &Params, w: &Word, i: usize, letter_on_right: bool) -> ShuffleElement {
    let x = Word::letter(i);
    let mut out = Linear::zero();
    for cut in 0..=w.len() {
        let (u, v) = (w.slice(0..cut), w.slice(cut..w.len()));
        let c = if letter_on_right {
            params.bichar_words(&x, &v)
        } else {
            params.bichar_words(&u, &x)
        };
        out.add_term(u.concat(&x).concat(&v), c.inv().expect("nonzero"));
    }
    ShuffleElement::from_linear(out)
}

/// `[(w),(x_i)] = Σ (p(x_i,v)^{-1} - p(v,x_i)) (u x_i v)` and
/// `[(x_i),(w)] = Σ (p(u,x_i)^{-1} - p(x_i,u)) (u x_i v)`.
pub fn single_letter_bracket(params: &Params, w: &Word, i: usize, letter_on_right: bool) -> ShuffleElement {
    let x = Word::letter(i);
    let mut out = Linear::zero();
    for cut in 0..=w.len() {
        let (u, v) = (w.slice(0..cut), w.slice(cut..w.len()));
        let c = if letter_on_right {
            params.bichar_words(&x, &v).inv().expect("nonzero") - params.bichar_words(&v, &x)
        } else {
            params.bichar_words(&u, &x).inv().expect("nonzero") - params.bichar_words(&x, &u)
        };
        out.add_term(u.concat(&x).concat(&v), c);
    }
    ShuffleElement::from_linear(out)
}

fn random_coefficient(rng: &mut ChaCha8Rng, n: usize) -> Scalar {
    let mut k = rng.gen_range(-3..=3);
    if k == 0 {
        k = 1;
    }
    let mut entries = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        entries.push((Var::p(i, j), rng.gen_range(-1..=1)));
    }
    Scalar::from_int(k) * Scalar::monomial(Monomial::from_entries(entries))
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| rng.gen_range(1..=n)))
}

/// A random element of `k⟨X⟩` with 1..=3 terms, each of degree at most `max_deg`.
pub fn random_free(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> FreeElement {
    let mut out = Linear::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_deg);
        out.add_term(random_word(rng, n, len), random_coefficient(rng, n));
    }
    out
}

/// A random element of `G⟨X⟩` with group exponents in `-1..=2`.
pub fn random_skew(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> SkewElement {
    let mut out = Linear::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_deg);
        let g = GroupElement::from_exponents((0..n).map(|_| rng.gen_range(-1..=2)));
        out.add_term(GroupWord::new(g, random_word(rng, n, len)), random_coefficient(rng, n));
    }
    out
}

/// Single-letter shuffle displays, bracket identities, coassociativity of deconcatenation,
/// associativity, Ω multiplicativity and braided compatibility.
pub fn shuffle_identities(opts: &SuiteOptions) -> VerificationReport {
    let mut c = Checker::new("shuffle");
    let e = Engine::free(2);
    let params = e.params();
    let words = words_up_to(5);
    for w in &words {
        let sw = ShuffleElement::comonomial(w.clone());
        for i in 1..=2 {
            let x = ShuffleElement::comonomial(Word::letter(i));
            let right = shuffle_words(params, w, &Word::letter(i));
            let left = shuffle_words(params, &Word::letter(i), w);
            c.equal(&format!("({w})(x{i})"), right.as_linear(), single_letter_shuffle(params, w, i, true).as_linear());
            c.equal(&format!("(x{i})({w})"), left.as_linear(), single_letter_shuffle(params, w, i, false).as_linear());
            if let Some(b) = c.guard("bracket", shuffle_bracket(params, &sw, &x)) {
                c.equal(&format!("[({w}),(x{i})]"), b.as_linear(), single_letter_bracket(params, w, i, true).as_linear());
            }
            if let Some(b) = c.guard("bracket", shuffle_bracket(params, &x, &sw)) {
                c.equal(&format!("[(x{i}),({w})]"), b.as_linear(), single_letter_bracket(params, w, i, false).as_linear());
            }
        }
        // (Δ⊗id)Δ = (id⊗Δ)Δ on (w)
        let mut left = Linear::zero();
        let mut right = Linear::zero();
        for i in 0..=w.len() {
            for j in i..=w.len() {
                let key = (w.slice(0..i), w.slice(i..j), w.slice(j..w.len()));
                left.add_term(key.clone(), Scalar::one());
                right.add_term(key, Scalar::one());
            }
        }
        let d = deconcat_coproduct(&sw);
        let via_left: Linear<(Word, Word, Word)> = d.map_linear(|(a, b)| {
            deconcat_coproduct(&ShuffleElement::comonomial(a.clone()))
                .map_basis(|(x, y)| ((x.clone(), y.clone(), b.clone()), Scalar::one()))
        });
        let via_right: Linear<(Word, Word, Word)> = d.map_linear(|(a, b)| {
            deconcat_coproduct(&ShuffleElement::comonomial(b.clone()))
                .map_basis(|(x, y)| ((a.clone(), x.clone(), y.clone()), Scalar::one()))
        });
        c.check(via_left == via_right && via_left == left, || format!("deconcatenation not coassociative on ({w})"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut om = Omega::new(params);
    for case in 0..opts.cases {
        let (la, lb) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let lc = 6usize.saturating_sub(la + lb).min(3);
        let a = ShuffleElement::from_linear(random_free(&mut rng, 2, la));
        let b = ShuffleElement::from_linear(random_free(&mut rng, 2, lb));
        let d = ShuffleElement::from_linear(random_free(&mut rng, 2, lc));
        let ab_d = shuffle_product(params, &shuffle_product(params, &a, &b), &d);
        let a_bd = shuffle_product(params, &a, &shuffle_product(params, &b, &d));
        c.equal(&format!("associativity case {case}"), ab_d.as_linear(), a_bd.as_linear());

        let x = random_free(&mut rng, 2, 2);
        let y = random_free(&mut rng, 2, 2);
        let lhs = om.element(&e.multiply_free(&x, &y));
        let rhs = shuffle_product(params, &om.element(&x), &om.element(&y));
        c.equal(&format!("Omega multiplicative case {case}"), lhs.as_linear(), rhs.as_linear());

        let z = random_free(&mut rng, 2, 4);
        if let Some(ok) = c.guard("braided", e.braided_compat_check(&z)) {
            c.check(ok, || format!("braided compatibility fails on {}", crate::render::skew_text(&crate::freealg::lift(&z))));
        }
    }
    for n in 0..=5 {
        if let Some(ok) = c.guard("braided", e.serre_left(1, 2, n).and_then(|s| e.braided_compat_check(&s))) {
            c.check(ok, || format!("braided compatibility fails on [x1x2^{n}]"));
        }
    }
    c.detail(format!("{} words of length <= 5, {} random cases, seed {:#x}", words.len(), opts.cases, opts.seed));
    c.finish()
}

/// Δ multiplicativity, coassociativity and the braided round trip on random elements.
pub fn hopf_sanity(opts: &SuiteOptions) -> VerificationReport {
    let mut c = Checker::new("hopf");
    let e = Engine::free(2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xdead_beef);
    for case in 0..opts.cases {
        let la = rng.gen_range(0..=4);
        let a = random_skew(&mut rng, 2, la);
        let b = random_skew(&mut rng, 2, 4 - la);
        let lhs = e.coproduct(&e.multiply(&a, &b));
        let rhs = e.tensor_multiply(&e.coproduct(&a), &e.coproduct(&b));
        c.equal_tensor(&format!("multiplicativity case {case}"), &lhs, &rhs);

        let d = e.coproduct(&random_skew(&mut rng, 2, 4));
        let left = e.coproduct_left(&d);
        let right = e.coproduct_right(&d);
        if let Some(((x, y, z), g, w)) = left.first_difference(&right) {
            c.fail(format!("coassociativity case {case}: term {x} (x) {y} (x) {z}: got {g}, expected {w}"));
        }

        let f = random_free(&mut rng, 2, 4);
        if let Some(b) = c.guard("braided", e.braided_from_ordinary(&f)) {
            c.equal_tensor(&format!("braided round trip case {case}"), &e.ordinary_from_braided(&b), &e.coproduct_free(&f));
        }
    }
    c.detail(format!("{} random cases, seed {:#x}", opts.cases, opts.seed));
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            max_n: 3,
            cases: 5,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn unknown_identity() {
        assert!(run("nope", &quick()).is_err());
    }

    #[test]
    fn quick_suite_passes() {
        for r in run("all", &quick()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn corruption_is_detected() {
        let opts = SuiteOptions { corrupt: true, ..quick() };
        let r = &run("coSer", &opts).unwrap()[0];
        assert!(!r.passed());
        assert!(r.witness.as_deref().unwrap().starts_with("n = 3"));
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(words_up_to(2).len(), 7);
    }
}
