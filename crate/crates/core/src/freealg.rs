//! The skew group algebra `G⟨X⟩`: products, skew brackets, q-Serre polynomials and
//! the scaled (braced) elements.

use std::cmp::Ordering;
use std::fmt;

use crate::chargroup::{grading, GroupElement, Params, Word};
use crate::error::{Error, Result};
use crate::linear::Linear;
use crate::qcalc::q_int;
use crate::scalar::Scalar;

/// A basis element `g·w` of `G⟨X⟩` in normal form (group part on the left).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub group: GroupElement,
    pub word: Word,
}

impl GroupWord {
    pub fn new(group: GroupElement, word: Word) -> Self {
        GroupWord { group, word }
    }

    pub fn unit() -> Self {
        GroupWord::new(GroupElement::identity(), Word::empty())
    }

    pub fn from_word(word: Word) -> Self {
        GroupWord::new(GroupElement::identity(), word)
    }

    pub fn from_group(group: GroupElement) -> Self {
        GroupWord::new(group, Word::empty())
    }
}

// words deg-lex first, then group exponents
impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .cmp(&other.word)
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.group.is_identity(), self.word.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{}", self.word),
            (false, true) => write!(f, "{}", self.group),
            (false, false) => write!(f, "{}*{}", self.group, self.word),
        }
    }
}

/// An element of `G⟨X⟩`.
pub type SkewElement = Linear<GroupWord>;

/// An element of the free algebra `k⟨X⟩ ⊂ G⟨X⟩`.
pub type FreeElement = Linear<Word>;

/// Embeds `k⟨X⟩` into `G⟨X⟩`.
pub fn lift(a: &FreeElement) -> SkewElement {
    a.map_basis(|w| (GroupWord::from_word(w.clone()), Scalar::one()))
}

/// The free-algebra part of `a`, if every group part is trivial.
pub fn lower(a: &SkewElement) -> Option<FreeElement> {
    if a.keys().any(|gw| !gw.group.is_identity()) {
        return None;
    }
    Some(a.map_basis(|gw| (gw.word.clone(), Scalar::one())))
}

/// The common degree vector of the words in `a`, or an error if they differ.
pub fn homogeneous_degree<B: Ord + Clone>(
    a: &Linear<B>,
    word_of: impl Fn(&B) -> &Word,
) -> Result<GroupElement> {
    let mut degrees = a.keys().map(|b| grading(word_of(b)));
    let Some(first) = degrees.next() else {
        return Ok(GroupElement::identity());
    };
    if degrees.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Error::InhomogeneousBracket)
    }
}

/// The computation context: a fixed table of quantization parameters.
#[derive(Clone, Debug)]
pub struct Engine {
    params: Params,
}

impl Engine {
    pub fn new(params: Params) -> Self {
        Engine { params }
    }

    pub fn free(n: usize) -> Self {
        Engine::new(Params::free(n))
    }

    pub fn g2() -> Self {
        Engine::new(Params::g2())
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// The generator `x_i`.
    pub fn x(&self, i: usize) -> Result<FreeElement> {
        self.params.check_index(i)?;
        Ok(Linear::basis(Word::letter(i)))
    }

    /// The group-like generator `g_i`.
    pub fn g(&self, i: usize) -> Result<SkewElement> {
        self.params.check_index(i)?;
        Ok(Linear::basis(GroupWord::from_group(GroupElement::generator(i))))
    }

    /// `(g,u)·(h,v) = χ^u(h) · (gh, uv)`.
    pub fn multiply_basis(&self, a: &GroupWord, b: &GroupWord) -> (GroupWord, Scalar) {
        let hop = if a.word.is_empty() || b.group.is_identity() {
            Scalar::one()
        } else {
            self.params.bichar(&grading(&a.word), &b.group)
        };
        (
            GroupWord::new(a.group.compose(&b.group), a.word.concat(&b.word)),
            hop,
        )
    }

    pub fn multiply(&self, a: &SkewElement, b: &SkewElement) -> SkewElement {
        a.bilinear(b, |x, y| {
            let (gw, c) = self.multiply_basis(x, y);
            Linear::term(gw, c)
        })
    }

    /// Concatenation product in `k⟨X⟩`.
    pub fn multiply_free(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.bilinear(b, |x, y| Linear::basis(x.concat(y)))
    }

    pub fn power(&self, a: &SkewElement, k: u32) -> SkewElement {
        let mut acc = Linear::basis(GroupWord::unit());
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// `[u, v] = uv − p(u,v)·vu` for homogeneous `u`, `v`.
    pub fn skew_bracket(&self, u: &SkewElement, v: &SkewElement) -> Result<SkewElement> {
        let du = homogeneous_degree(u, |gw| &gw.word)?;
        let dv = homogeneous_degree(v, |gw| &gw.word)?;
        let p = self.params.bichar(&du, &dv);
        Ok(&self.multiply(u, v) - &self.multiply(v, u).scale(&p))
    }

    /// The skew bracket restricted to `k⟨X⟩`.
    pub fn bracket_free(&self, u: &FreeElement, v: &FreeElement) -> Result<FreeElement> {
        let du = homogeneous_degree(u, |w| w)?;
        let dv = homogeneous_degree(v, |w| w)?;
        let p = self.params.bichar(&du, &dv);
        Ok(&self.multiply_free(u, v) - &self.multiply_free(v, u).scale(&p))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.params.check_index(i)?;
        self.params.check_index(j)?;
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        Ok(())
    }

    /// `[x_i x_j^m] = [[…[x_i, x_j], …], x_j]`.
    pub fn serre_left(&self, i: usize, j: usize, m: u32) -> Result<FreeElement> {
        self.check_pair(i, j)?;
        let xj = self.x(j)?;
        let mut acc = self.x(i)?;
        for _ in 0..m {
            acc = self.bracket_free(&acc, &xj)?;
        }
        Ok(acc)
    }

    /// `[x_j^m x_i] = [x_j, [x_j, …[x_j, x_i]…]]`.
    pub fn serre_right(&self, j: usize, m: u32, i: usize) -> Result<FreeElement> {
        self.check_pair(i, j)?;
        let xj = self.x(j)?;
        let mut acc = self.x(i)?;
        for _ in 0..m {
            acc = self.bracket_free(&xj, &acc)?;
        }
        Ok(acc)
    }

    /// `[n]_q!` for `q = p_ii`, failing if a factor vanishes.
    fn factorial_denominator(&self, i: usize, n: u32, element: &dyn Fn() -> String) -> Result<Scalar> {
        let q = self.params.p(i, i);
        let mut acc = Scalar::one();
        for k in 1..=n {
            let f = q_int(k, q);
            if f.is_zero() {
                return Err(Error::UndefinedScaledElement {
                    element: element(),
                    factor: format!("[{k}]_p{i}{i}"),
                });
            }
            acc = acc * f.inv()?;
        }
        Ok(acc)
    }

    /// `1 / ([n]_q! · ∏_{s<n} (1 − p_ij p_ji q^s))` with `q = p_jj`.
    fn serre_denominator(&self, i: usize, j: usize, n: u32, element: &dyn Fn() -> String) -> Result<Scalar> {
        let mut acc = self.factorial_denominator(j, n, element)?;
        let lambda = self.params.p(i, j) * self.params.p(j, i);
        let q = self.params.p(j, j);
        for s in 0..n {
            let f = Scalar::one() - &lambda * &q.pow(s as i32)?;
            if f.is_zero() {
                return Err(Error::UndefinedScaledElement {
                    element: element(),
                    factor: format!("1 - p{i}{j}*p{j}{i}*p{j}{j}^{s} at s = {s}"),
                });
            }
            acc = acc * f.inv()?;
        }
        Ok(acc)
    }

    /// `{x_i^n} = x_i^n / [n]_q!` with `q = p_ii`.
    pub fn braced_power(&self, i: usize, n: u32) -> Result<FreeElement> {
        self.params.check_index(i)?;
        let c = self.factorial_denominator(i, n, &|| format!("{{x{i}^{n}}}"))?;
        Ok(Linear::term(Word::power(i, n as usize), c))
    }

    /// `{x_i x_j^n} = [x_i x_j^n] / ([n]_q! ∏_{s<n}(1 − p_ij p_ji q^s))`, `q = p_jj`.
    pub fn braced_left(&self, i: usize, j: usize, n: u32) -> Result<FreeElement> {
        let serre = self.serre_left(i, j, n)?;
        let c = self.serre_denominator(i, j, n, &|| format!("{{x{i}x{j}^{n}}}"))?;
        Ok(serre.scale(&c))
    }

    /// `{x_j^n x_i} = [x_j^n x_i] / ([n]_q! ∏_{s<n}(1 − p_ij p_ji q^s))`, `q = p_jj`.
    pub fn braced_right(&self, j: usize, n: u32, i: usize) -> Result<FreeElement> {
        let serre = self.serre_right(j, n, i)?;
        let c = self.serre_denominator(i, j, n, &|| format!("{{x{j}^{n}x{i}}}"))?;
        Ok(serre.scale(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Var;

    fn p(i: usize, j: usize) -> Scalar {
        Scalar::var(Var::p(i, j))
    }

    fn w(letters: &[usize]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    fn gw(g: &[i32], letters: &[usize]) -> GroupWord {
        GroupWord::new(GroupElement::from_exponents(g.iter().copied()), w(letters))
    }

    #[test]
    fn word_hops_over_group() {
        let e = Engine::free(2);
        let x2 = lift(&e.x(2).unwrap());
        let g2 = e.g(2).unwrap();
        let prod = e.multiply(&x2, &g2);
        assert_eq!(prod, Linear::term(gw(&[0, 1], &[2]), p(2, 2)));
    }

    #[test]
    fn serre_step_from_proposition_proof() {
        // x2 · g1 g2^{n-k} x2^k = p21 p22^{n-k} g1 g2^{n-k} x2^{k+1}; hopping leaves the group part alone
        let e = Engine::free(2);
        let x2 = lift(&e.x(2).unwrap());
        for (n, k) in [(3i32, 1usize), (4, 2), (2, 0)] {
            let b = Linear::basis(gw(&[1, n - k as i32], &vec![2; k]));
            let expected = Linear::term(
                gw(&[1, n - k as i32], &vec![2; k + 1]),
                p(2, 1) * p(2, 2).pow(n - k as i32).unwrap(),
            );
            assert_eq!(e.multiply(&x2, &b), expected);
        }
    }

    #[test]
    fn unit_law() {
        let e = Engine::free(2);
        let a = lift(&e.serre_left(1, 2, 2).unwrap());
        let one = Linear::basis(GroupWord::unit());
        assert_eq!(e.multiply(&a, &one), a);
        assert_eq!(e.multiply(&one, &a), a);
    }

    #[test]
    fn bracket_examples() {
        let e = Engine::free(2);
        let x1 = lift(&e.x(1).unwrap());
        let x2 = lift(&e.x(2).unwrap());
        let b = e.skew_bracket(&x1, &x2).unwrap();
        let expected: SkewElement = [
            (GroupWord::from_word(w(&[1, 2])), Scalar::one()),
            (GroupWord::from_word(w(&[2, 1])), -p(1, 2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(b, expected);
        let one = Linear::basis(GroupWord::unit());
        assert!(e.skew_bracket(&x1, &one).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_inhomogeneous() {
        let e = Engine::free(2);
        let x1 = lift(&e.x(1).unwrap());
        let mixed = &x1 + &lift(&e.x(2).unwrap());
        assert_eq!(e.skew_bracket(&mixed, &x1), Err(Error::InhomogeneousBracket));
    }

    #[test]
    fn serre_examples() {
        let e = Engine::free(2);
        let q = p(2, 2);
        assert_eq!(e.serre_left(1, 2, 0).unwrap(), e.x(1).unwrap());
        // [[x1,x2],x2] = x1x2^2 − p12(1+q) x2x1x2 + p12^2 q x2^2x1
        let expected: FreeElement = [
            (w(&[1, 2, 2]), Scalar::one()),
            (w(&[2, 1, 2]), -(p(1, 2) * (Scalar::one() + &q))),
            (w(&[2, 2, 1]), p(1, 2).pow(2).unwrap() * q.clone()),
        ]
        .into_iter()
        .collect();
        assert_eq!(e.serre_left(1, 2, 2).unwrap(), expected);
        let expected_right: FreeElement = [
            (w(&[2, 2, 1]), Scalar::one()),
            (w(&[2, 1, 2]), -(p(2, 1) * (Scalar::one() + &q))),
            (w(&[1, 2, 2]), p(2, 1).pow(2).unwrap() * q),
        ]
        .into_iter()
        .collect();
        assert_eq!(e.serre_right(2, 2, 1).unwrap(), expected_right);
        let m1: FreeElement = [(w(&[2, 1]), Scalar::one()), (w(&[1, 2]), -p(2, 1))]
            .into_iter()
            .collect();
        assert_eq!(e.serre_right(2, 1, 1).unwrap(), m1);
        assert_eq!(e.serre_left(1, 1, 2), Err(Error::EqualIndices(1)));
    }

    #[test]
    fn braced_examples() {
        let e = Engine::free(2);
        let q = p(2, 2);
        assert_eq!(e.braced_power(2, 1).unwrap(), e.x(2).unwrap());
        let b2 = e.braced_power(2, 2).unwrap();
        assert_eq!(
            b2,
            Linear::term(w(&[2, 2]), (Scalar::one() + &q).inv().unwrap())
        );
        assert_eq!(e.braced_left(1, 2, 0).unwrap(), e.x(1).unwrap());
        let lam = p(1, 2) * p(2, 1);
        let d = (Scalar::one() - &lam).inv().unwrap();
        assert_eq!(
            e.braced_left(1, 2, 1).unwrap(),
            e.serre_left(1, 2, 1).unwrap().scale(&d)
        );
        assert_eq!(
            e.braced_right(2, 1, 1).unwrap(),
            e.serre_right(2, 1, 1).unwrap().scale(&d)
        );
    }

    #[test]
    fn braced_power_undefined_at_minus_one() {
        let params = Params::free(2);
        let mut b = std::collections::BTreeMap::new();
        b.insert(Var::p(2, 2), Scalar::from_int(-1));
        let e = Engine::new(params.substitute(&b, crate::chargroup::Mode::Free).unwrap());
        assert!(matches!(
            e.braced_power(2, 2),
            Err(Error::UndefinedScaledElement { .. })
        ));
    }

    #[test]
    fn braced_left_degenerates_under_g2() {
        let e = Engine::g2();
        for n in 0..=3 {
            assert!(e.braced_left(1, 2, n).is_ok());
        }
        match e.braced_left(1, 2, 4) {
            Err(Error::UndefinedScaledElement { factor, .. }) => assert!(factor.contains("s = 3")),
            other => panic!("expected undefined scaled element, got {other:?}"),
        }
        assert!(e.braced_right(2, 2, 1).is_ok());
    }
}
