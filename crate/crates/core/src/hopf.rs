//! The Hopf structure of `G⟨X⟩`: tensor arithmetic, the coproduct, the closed-form
//! coproduct families, the α coefficients, and the braided coproduct of `k⟨X⟩`.
//!
//! The coproduct is always computed from the generator images
//! `Δ(x_i) = x_i⊗1 + g_i⊗x_i`, `Δ(g) = g⊗g`, never from a closed form, so comparing
//! [`Engine::coproduct`] with [`Engine::closed_coproduct`] is a two-sided check.

use std::fmt;
use std::str::FromStr;

use crate::chargroup::{grading, GroupElement, Mode, Word};
use crate::error::{Error, Result};
use crate::freealg::{lift, Engine, FreeElement, GroupWord, SkewElement};
use crate::linear::Linear;
use crate::qcalc::GaussTable;
use crate::scalar::{Scalar, Var};

/// An element of `G⟨X⟩ ⊗ G⟨X⟩`.
pub type TensorElement = Linear<(GroupWord, GroupWord)>;

/// An element of `G⟨X⟩^{⊗3}`, used for coassociativity.
pub type TripleTensor = Linear<(GroupWord, GroupWord, GroupWord)>;

/// A group-free tensor `Σ c · u ⊗ v` of `k⟨X⟩ ⊗ k⟨X⟩` (the braided coproduct's target).
pub type BraidedTensor = Linear<(Word, Word)>;

/// `a ⊗ b`.
pub fn tensor(a: &SkewElement, b: &SkewElement) -> TensorElement {
    a.bilinear(b, |x, y| Linear::basis((x.clone(), y.clone())))
}

/// `a ⊗ b` for group-free factors.
pub fn braided_tensor(a: &FreeElement, b: &FreeElement) -> BraidedTensor {
    a.bilinear(b, |x, y| Linear::basis((x.clone(), y.clone())))
}

/// The named closed-form coproduct displays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedKind {
    /// `Δ(x_2^n) = Σ_k [n,k] g_2^{n-k} x_2^k ⊗ x_2^{n-k}`.
    Mon,
    /// `Δ({x_2^n}) = Σ_k g_2^{n-k} {x_2^k} ⊗ {x_2^{n-k}}`.
    Ser3,
    /// `Δ([x_1x_2^n]) = [x_1x_2^n]⊗1 + Σ_k α_k^{(n)} g_1g_2^{n-k} x_2^k ⊗ [x_1x_2^{n-k}]`.
    CoSer,
    /// `Δ({x_1x_2^n}) = {x_1x_2^n}⊗1 + Σ_k g_1g_2^{n-k} {x_2^k} ⊗ {x_1x_2^{n-k}}`.
    Mon1,
    /// `Δ([x_2^nx_1]) = g_1g_2^n⊗[x_2^nx_1] + Σ_k α_k^{(n)} g_2^k [x_2^{n-k}x_1] ⊗ x_2^k`.
    CoSer4,
    /// `Δ({x_2^nx_1}) = g_1g_2^n⊗{x_2^nx_1} + Σ_k g_2^k {x_2^{n-k}x_1} ⊗ {x_2^k}`.
    Mon2,
    /// The G2 element `{x_1x_2^3x_1}`; `n` is ignored.
    G2Top,
}

impl ClosedKind {
    pub const ALL: [ClosedKind; 7] = [
        ClosedKind::Mon,
        ClosedKind::Ser3,
        ClosedKind::CoSer,
        ClosedKind::Mon1,
        ClosedKind::CoSer4,
        ClosedKind::Mon2,
        ClosedKind::G2Top,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClosedKind::Mon => "mon",
            ClosedKind::Ser3 => "ser3",
            ClosedKind::CoSer => "coSer",
            ClosedKind::Mon1 => "mon1",
            ClosedKind::CoSer4 => "coSer4",
            ClosedKind::Mon2 => "mon2",
            ClosedKind::G2Top => "g2top",
        }
    }
}

impl fmt::Display for ClosedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Eval(format!("unknown closed form {s:?}")))
    }
}

impl Engine {
    fn multiply_tensor_basis(
        &self,
        a: &(GroupWord, GroupWord),
        b: &(GroupWord, GroupWord),
    ) -> TensorElement {
        let (l, cl) = self.multiply_basis(&a.0, &b.0);
        let (r, cr) = self.multiply_basis(&a.1, &b.1);
        Linear::term((l, r), cl * cr)
    }

    /// `(a⊗b)(c⊗d) = ac ⊗ bd`, extended bilinearly.
    pub fn tensor_multiply(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.bilinear(b, |x, y| self.multiply_tensor_basis(x, y))
    }

    /// `Δ(x_i) = x_i ⊗ 1 + g_i ⊗ x_i`.
    pub fn coproduct_generator(&self, i: usize) -> TensorElement {
        let x = GroupWord::from_word(Word::letter(i));
        let g = GroupWord::from_group(GroupElement::generator(i));
        [
            ((x.clone(), GroupWord::unit()), Scalar::one()),
            ((g, GroupWord::from_word(Word::letter(i))), Scalar::one()),
        ]
        .into_iter()
        .collect()
    }

    fn coproduct_basis(&self, b: &GroupWord) -> TensorElement {
        let g = GroupWord::from_group(b.group.clone());
        let mut acc: TensorElement = Linear::basis((g.clone(), g));
        for l in b.word.letters() {
            acc = self.tensor_multiply(&acc, &self.coproduct_generator(l));
        }
        acc
    }

    /// The algebra-map extension of the generator coproducts.
    pub fn coproduct(&self, a: &SkewElement) -> TensorElement {
        a.map_linear(|b| self.coproduct_basis(b))
    }

    pub fn coproduct_free(&self, a: &FreeElement) -> TensorElement {
        self.coproduct(&lift(a))
    }

    /// `(Δ ⊗ id)`.
    pub fn coproduct_left(&self, t: &TensorElement) -> TripleTensor {
        t.map_linear(|(a, b)| {
            self.coproduct_basis(a)
                .map_basis(|(x, y)| ((x.clone(), y.clone(), b.clone()), Scalar::one()))
        })
    }

    /// `(id ⊗ Δ)`.
    pub fn coproduct_right(&self, t: &TensorElement) -> TripleTensor {
        t.map_linear(|(a, b)| {
            self.coproduct_basis(b)
                .map_basis(|(x, y)| ((a.clone(), x.clone(), y.clone()), Scalar::one()))
        })
    }

    fn lambda_12(&self) -> Scalar {
        self.params().p(1, 2) * self.params().p(2, 1)
    }

    /// `α_k^{(n)} = [n,k]_{p22} · ∏_{s=n-k}^{n-1} (1 − p12 p21 p22^s)`, zero outside `0..=n`.
    pub fn alpha_closed(&self, n: u32, k: i64) -> Scalar {
        if k < 0 || k > n as i64 {
            return Scalar::zero();
        }
        let q = self.params().q();
        let table = GaussTable::new(n, &q);
        self.alpha_from_table(&table, n, k)
    }

    fn alpha_from_table(&self, table: &GaussTable, n: u32, k: i64) -> Scalar {
        if k < 0 || k > n as i64 {
            return Scalar::zero();
        }
        let q = self.params().q();
        let lambda = self.lambda_12();
        let mut acc = table.get(n, k);
        for s in (n as i64 - k)..(n as i64) {
            acc = acc * (Scalar::one() - &lambda * &q.pow(s as i32).expect("q is nonzero"));
        }
        acc
    }

    /// All `α_k^{(m)}` for `m ≤ n` by the recurrence
    /// `α_k^{(m+1)} = α_{k-1}^{(m)} (1 − p12 p21 p22^{2m-k+1}) + α_k^{(m)} p22^k`.
    pub fn alpha_recurrent_table(&self, n: u32) -> Vec<Vec<Scalar>> {
        let q = self.params().q();
        let lambda = self.lambda_12();
        let mut rows = vec![vec![Scalar::one()]];
        for m in 0..n as i64 {
            let prev = &rows[m as usize];
            let get = |k: i64| {
                if k < 0 || k > m {
                    Scalar::zero()
                } else {
                    prev[k as usize].clone()
                }
            };
            let row = (0..=m + 1)
                .map(|k| {
                    if k == 0 {
                        return Scalar::one();
                    }
                    let e = (2 * m - k + 1) as i32;
                    let left = get(k - 1) * (Scalar::one() - &lambda * &q.pow(e).expect("nonzero"));
                    let right = get(k) * q.pow(k as i32).expect("nonzero");
                    left + right
                })
                .collect();
            rows.push(row);
        }
        rows
    }

    pub fn alpha_recurrent(&self, n: u32, k: i64) -> Scalar {
        if k < 0 || k > n as i64 {
            return Scalar::zero();
        }
        self.alpha_recurrent_table(n)[n as usize][k as usize].clone()
    }

    /// Checks that the closed α values satisfy the recurrence at step `n → n+1`, i.e. the
    /// polynomial identity after multiplying by `∏_{s=n-k+1}^{n-1}(1−λq^s)` and
    /// specializing `q ← p22`, `λ ← p12 p21`.
    pub fn alpha_closed_satisfies_recurrence(&self, n: u32, k: i64) -> bool {
        let q = self.params().q();
        let lambda = self.lambda_12();
        let table = GaussTable::new(n + 1, &q);
        let lhs = self.alpha_from_table(&table, n + 1, k);
        if k == 0 {
            return lhs.is_one();
        }
        let e = 2 * n as i32 - k as i32 + 1;
        let rhs = self.alpha_from_table(&table, n, k - 1)
            * (Scalar::one() - &lambda * &q.pow(e).expect("nonzero"))
            + self.alpha_from_table(&table, n, k) * q.pow(k as i32).expect("nonzero");
        lhs == rhs
    }

    /// Builds the right-hand side of the named closed-form coproduct display.
    ///
    /// For [`ClosedKind::G2Top`] the display holds modulo the kernel of `Ω ⊗ Ω`, not in
    /// `G⟨X⟩ ⊗ G⟨X⟩`; the generic coproduct of the top element has extra Serre-relation terms.
    pub fn closed_coproduct(&self, kind: ClosedKind, n: u32) -> Result<TensorElement> {
        if kind != ClosedKind::G2Top && self.n() < 2 {
            return Err(Error::IndexOutOfRange { index: 2, n: self.n() });
        }
        let one = Linear::basis(GroupWord::unit());
        let gt = |g: &[i32], a: &FreeElement, b: &FreeElement| -> TensorElement {
            let grp = GroupElement::from_exponents(g.iter().copied());
            let left = lift(a).map_basis(|gw| (GroupWord::new(grp.clone(), gw.word.clone()), Scalar::one()));
            tensor(&left, &lift(b))
        };
        let word = |w: Word| -> FreeElement { Linear::basis(w) };
        let nn = n as i32;
        let mut out = TensorElement::zero();
        match kind {
            ClosedKind::Mon => {
                let table = GaussTable::new(n, &self.params().q());
                for k in 0..=n {
                    let t = gt(&[0, nn - k as i32], &word(Word::power(2, k as usize)), &word(Word::power(2, (n - k) as usize)));
                    out.add_scaled(&t, &table.get(n, k as i64));
                }
            }
            ClosedKind::Ser3 => {
                for k in 0..=n {
                    let t = gt(&[0, nn - k as i32], &self.braced_power(2, k)?, &self.braced_power(2, n - k)?);
                    out = &out + &t;
                }
            }
            ClosedKind::CoSer => {
                let top = lift(&self.serre_left(1, 2, n)?);
                out = tensor(&top, &one);
                let table = GaussTable::new(n, &self.params().q());
                for k in 0..=n {
                    let t = gt(&[1, nn - k as i32], &word(Word::power(2, k as usize)), &self.serre_left(1, 2, n - k)?);
                    out.add_scaled(&t, &self.alpha_from_table(&table, n, k as i64));
                }
            }
            ClosedKind::Mon1 => {
                let top = lift(&self.braced_left(1, 2, n)?);
                out = tensor(&top, &one);
                for k in 0..=n {
                    let t = gt(&[1, nn - k as i32], &self.braced_power(2, k)?, &self.braced_left(1, 2, n - k)?);
                    out = &out + &t;
                }
            }
            ClosedKind::CoSer4 => {
                out = gt(&[1, nn], &word(Word::empty()), &self.serre_right(2, n, 1)?);
                let table = GaussTable::new(n, &self.params().q());
                for k in 0..=n {
                    let t = gt(&[0, k as i32], &self.serre_right(2, n - k, 1)?, &word(Word::power(2, k as usize)));
                    out.add_scaled(&t, &self.alpha_from_table(&table, n, k as i64));
                }
            }
            ClosedKind::Mon2 => {
                out = gt(&[1, nn], &word(Word::empty()), &self.braced_right(2, n, 1)?);
                for k in 0..=n {
                    let t = gt(&[0, k as i32], &self.braced_right(2, n - k, 1)?, &self.braced_power(2, k)?);
                    out = &out + &t;
                }
            }
            ClosedKind::G2Top => {
                if self.params().mode() != Mode::G2 {
                    return Err(Error::RequiresG2("g2top".into()));
                }
                let top = crate::g2::g2_top_element(self)?;
                out = tensor(&lift(&top), &one) + gt(&[2, 3], &word(Word::empty()), &top);
                for k in 0..=3u32 {
                    let t = gt(&[1, k as i32], &self.braced_right(2, 3 - k, 1)?, &self.braced_left(1, 2, k)?);
                    out = &out + &t;
                }
            }
        }
        Ok(out)
    }

    /// `Δ^b(u) = Σ u^{(1)} gr(u^{(2)})^{-1} ⊗ u^{(2)}` for `u ∈ k⟨X⟩`.
    ///
    /// Each first-leg group part must equal the grading of the second leg; anything
    /// else is an internal inconsistency.
    pub fn braided_from_ordinary(&self, a: &FreeElement) -> Result<BraidedTensor> {
        let delta = self.coproduct_free(a);
        let mut out = BraidedTensor::zero();
        for ((l, r), c) in &delta {
            let gr = grading(&r.word);
            if l.group != gr || !r.group.is_identity() {
                return Err(Error::Consistency(format!(
                    "coproduct term {l} (x) {r} does not carry gr(second leg) on the first leg"
                )));
            }
            // g·w·g^{-1} = p(w, g)^{-1} w
            let hop = self.params().bichar(&grading(&l.word), &gr).inv()?;
            out.add_term((l.word.clone(), r.word.clone()), c * &hop);
        }
        Ok(out)
    }

    /// Reattaches `gr(u^{(2)})` to the right of the first leg and commutes it to normal form.
    pub fn ordinary_from_braided(&self, b: &BraidedTensor) -> TensorElement {
        b.map_basis(|(l, r)| {
            let gr = grading(r);
            let hop = self.params().bichar(&grading(l), &gr);
            (
                (GroupWord::new(gr, l.clone()), GroupWord::from_word(r.clone())),
                hop,
            )
        })
    }
}

/// The two-variable identity
/// `[n+1,k](1−λq^n) = [n,k−1](1−λq^{2n−k+1}) + [n,k](1−λq^{n−k}) q^k`
/// in independent indeterminates `λ`, `q`. Vacuously true outside `1 ≤ k ≤ n+1`.
pub fn verify_pol_identity(n: u32, k: i64) -> bool {
    let (lhs, rhs) = pol_identity_sides(n, k);
    lhs == rhs
}

/// Both sides of the two-variable identity as scalars in `λ`, `q`.
pub fn pol_identity_sides(n: u32, k: i64) -> (Scalar, Scalar) {
    if k < 1 || k > n as i64 + 1 {
        return (Scalar::zero(), Scalar::zero());
    }
    let q = Scalar::var(Var::Q);
    let lambda = Scalar::var(Var::Lambda);
    let table = GaussTable::new(n + 1, &q);
    let qp = |e: i64| q.pow(e as i32).expect("q is nonzero");
    let one = Scalar::one();
    let n_i = n as i64;
    let lhs = table.get(n + 1, k) * (&one - &lambda * &qp(n_i));
    let rhs = table.get(n, k - 1) * (&one - &lambda * &qp(2 * n_i - k + 1))
        + table.get(n, k) * (&one - &lambda * &qp(n_i - k)) * qp(k);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize, j: usize) -> Scalar {
        Scalar::var(Var::p(i, j))
    }

    fn gw(g: &[i32], letters: &[usize]) -> GroupWord {
        GroupWord::new(
            GroupElement::from_exponents(g.iter().copied()),
            Word::from_letters(letters.iter().copied()),
        )
    }

    #[test]
    fn tensor_multiply_examples() {
        let e = Engine::free(2);
        // (x2⊗1)(g2⊗x2) = p22 g2x2 ⊗ x2
        let a = Linear::basis((gw(&[], &[2]), gw(&[], &[])));
        let b = Linear::basis((gw(&[0, 1], &[]), gw(&[], &[2])));
        assert_eq!(
            e.tensor_multiply(&a, &b),
            Linear::term((gw(&[0, 1], &[2]), gw(&[], &[2])), p(2, 2))
        );
        let unit = Linear::basis((GroupWord::unit(), GroupWord::unit()));
        assert_eq!(e.tensor_multiply(&a, &unit), a);
        let c = Linear::basis((gw(&[1], &[]), gw(&[], &[1])));
        let d = Linear::basis((gw(&[0, 1], &[]), gw(&[], &[2])));
        assert_eq!(
            e.tensor_multiply(&c, &d),
            Linear::basis((gw(&[1, 1], &[]), gw(&[], &[1, 2])))
        );
    }

    #[test]
    fn coproduct_generators() {
        let e = Engine::free(2);
        assert_eq!(e.coproduct_free(&e.x(1).unwrap()), e.coproduct_generator(1));
        let g = e.g(1).unwrap();
        assert_eq!(
            e.coproduct(&g),
            Linear::basis((gw(&[1], &[]), gw(&[1], &[])))
        );
    }

    #[test]
    fn coproduct_of_first_bracket() {
        let e = Engine::free(2);
        let b = e.serre_left(1, 2, 1).unwrap();
        let lam = p(1, 2) * p(2, 1);
        let expected = tensor(&lift(&b), &Linear::basis(GroupWord::unit()))
            + tensor(
                &Linear::basis(gw(&[1, 1], &[])),
                &lift(&b),
            )
            + Linear::term((gw(&[1], &[2]), gw(&[], &[1])), Scalar::one() - lam);
        assert_eq!(e.coproduct_free(&b), expected);
    }

    #[test]
    fn alpha_examples() {
        let e = Engine::free(2);
        let lam = p(1, 2) * p(2, 1);
        let q = p(2, 2);
        for n in 0..5 {
            assert!(e.alpha_closed(n, 0).is_one());
        }
        assert_eq!(e.alpha_closed(1, 1), Scalar::one() - &lam);
        assert_eq!(
            e.alpha_closed(2, 1),
            (Scalar::one() + &q) * (Scalar::one() - &lam * &q)
        );
        assert!(e.alpha_recurrent(0, 0).is_one());
        assert_eq!(e.alpha_recurrent(1, 1), Scalar::one() - &lam);
        assert!(e.alpha_closed(3, 4).is_zero());
        assert!(e.alpha_recurrent(3, -1).is_zero());
    }

    #[test]
    fn pol_identity_small() {
        for n in 0..4 {
            for k in 0..=(n as i64 + 2) {
                assert!(verify_pol_identity(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn braided_of_generator_is_primitive() {
        let e = Engine::free(2);
        let b = e.braided_from_ordinary(&e.x(1).unwrap()).unwrap();
        let x1 = Word::letter(1);
        let expected: BraidedTensor = [
            ((x1.clone(), Word::empty()), Scalar::one()),
            ((Word::empty(), x1), Scalar::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn braided_round_trip() {
        let e = Engine::free(2);
        let a = e.serre_left(1, 2, 2).unwrap();
        let b = e.braided_from_ordinary(&a).unwrap();
        assert_eq!(e.ordinary_from_braided(&b), e.coproduct_free(&a));
    }

    #[test]
    fn reattaching_grading_multiplies_by_bichar() {
        // {x2^{n-k}x1}⊗{x2^k} ↦ p12^k q^{k(n-k)} g2^k{x2^{n-k}x1}⊗{x2^k}
        let e = Engine::free(2);
        let (n, k) = (3u32, 2u32);
        let l = e.braced_right(2, n - k, 1).unwrap();
        let r = e.braced_power(2, k).unwrap();
        let out = e.ordinary_from_braided(&braided_tensor(&l, &r));
        let c = p(1, 2).pow(k as i32).unwrap() * p(2, 2).pow((k * (n - k)) as i32).unwrap();
        let lg = lift(&l).map_basis(|gw| (GroupWord::new(GroupElement::from_exponents([0, k as i32]), gw.word.clone()), Scalar::one()));
        assert_eq!(out, tensor(&lg, &lift(&r)).scale(&c));
    }
}
