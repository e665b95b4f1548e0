//! The grading group, words, and the bimultiplicative form `p(-,-)`.
//!
//! The grading group is the free abelian group on `g_1..g_n`; characters are never
//! materialized, every `χ^u(g)` goes through [`Params::bichar`].

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Monomial, Poly, Scalar, Var};

/// An element `g_1^{a_1}…g_n^{a_n}` of the grading group, stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<i32>);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Vec::new())
    }

    /// The generator `g_i` (1-based).
    pub fn generator(i: usize) -> Self {
        let mut v = vec![0; i];
        v[i - 1] = 1;
        GroupElement(v)
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = i32>) -> Self {
        let mut v: Vec<i32> = exps.into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        GroupElement(v)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Exponent of `g_i` (1-based).
    pub fn exponent(&self, i: usize) -> i32 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// The group law (componentwise addition of exponents).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let len = self.0.len().max(other.0.len());
        GroupElement::from_exponents((1..=len).map(|i| self.exponent(i) + other.exponent(i)))
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i32) -> GroupElement {
        GroupElement::from_exponents(self.0.iter().map(|e| e * k))
    }

    /// Largest generator index with a nonzero exponent.
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn latex(&self) -> String {
        let mut s = String::new();
        for (i, e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&format!("g_{}", i + 1)),
                _ => s.push_str(&format!("g_{}^{{{}}}", i + 1, e)),
            }
        }
        s
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for (i, e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "g{}", i + 1)?,
                _ => write!(f, "g{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// A word in the generators `x_1..x_n`, letters stored 1-based.
///
/// Ordered degree-lexicographically, which is also the printing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = usize>) -> Self {
        Word(letters.into_iter().map(|i| i as u8).collect())
    }

    /// `x_i^k` as a word.
    pub fn power(i: usize, k: usize) -> Self {
        Word(vec![i as u8; k])
    }

    pub fn letters(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().map(|&b| b as usize)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    fn runs(&self) -> Vec<(u8, usize)> {
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for &b in &self.0 {
            match runs.last_mut() {
                Some((l, k)) if *l == b => *k += 1,
                _ => runs.push((b, 1)),
            }
        }
        runs
    }

    pub fn latex(&self) -> String {
        let mut s = String::new();
        for (l, k) in self.runs() {
            if k == 1 {
                s.push_str(&format!("x_{l}"));
            } else {
                s.push_str(&format!("x_{l}^{{{k}}}"));
            }
        }
        s
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (l, k) in self.runs() {
            if k == 1 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{l}^{k}")?;
            }
        }
        Ok(())
    }
}

/// `gr(w)`: replaces every letter `x_i` by `g_i`.
pub fn grading(w: &Word) -> GroupElement {
    let mut v = vec![0i32; w.max_letter()];
    for l in w.letters() {
        v[l - 1] += 1;
    }
    GroupElement::from_exponents(v)
}

/// How the quantization parameters are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every `p_ij` is an independent indeterminate; `q` is an alias for `p22`.
    Free,
    /// The two-parameter G2 family: `p11 = q^3`, `p22 = q`, `p21 = q^-3 p12^-1`.
    G2,
}

/// The matrix of quantization parameters `p_ij = χ^i(g_j)`.
#[derive(Clone, Debug)]
pub struct Params {
    n: usize,
    mode: Mode,
    table: Vec<Scalar>,
    // monomial fast path; `Some` iff every entry is a single term
    monomials: Option<Vec<(Monomial, BigRational)>>,
}

impl Params {
    /// Fully free parameters on `n` generators.
    pub fn free(n: usize) -> Self {
        assert!(n >= 1, "at least one generator");
        let table = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| Scalar::var(Var::p(i, j))))
            .collect();
        Params::build(n, Mode::Free, table)
    }

    /// The G2 specialization on two generators with surviving indeterminates `q`, `p12`.
    pub fn g2() -> Self {
        let b = g2_bindings();
        let table = vec![
            b[&Var::p(1, 1)].clone(),
            Scalar::var(Var::p(1, 2)),
            b[&Var::p(2, 1)].clone(),
            b[&Var::p(2, 2)].clone(),
        ];
        Params::build(2, Mode::G2, table)
    }

    /// A custom table given row-major; every entry must be nonzero.
    pub fn from_table(n: usize, mode: Mode, table: Vec<Scalar>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::Eval(format!(
                "parameter table needs {} entries, got {}",
                n * n,
                table.len()
            )));
        }
        if table.iter().any(Scalar::is_zero) {
            return Err(Error::ZeroDivisor);
        }
        Ok(Params::build(n, mode, table))
    }

    fn build(n: usize, mode: Mode, table: Vec<Scalar>) -> Self {
        let monomials = table.iter().map(Scalar::as_monomial).collect();
        Params {
            n,
            mode,
            table,
            monomials,
        }
    }

    /// Applies a substitution to every entry, e.g. specializing free parameters.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Scalar>, mode: Mode) -> Result<Self> {
        let table = self
            .table
            .iter()
            .map(|s| s.substitute(bindings))
            .collect::<Result<Vec<_>>>()?;
        Params::from_table(self.n, mode, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `p_ij` (1-based).
    pub fn p(&self, i: usize, j: usize) -> &Scalar {
        &self.table[(i - 1) * self.n + (j - 1)]
    }

    /// The base `q = p_22` of the q-combinatorics (for n = 1, `p_11`).
    pub fn q(&self) -> Scalar {
        let j = self.n.min(2);
        self.p(j, j).clone()
    }

    /// `∏ p_ij^{e_ij}` over the given exponent entries.
    pub fn power_product(&self, entries: impl IntoIterator<Item = (usize, usize, i32)>) -> Scalar {
        if let Some(monos) = &self.monomials {
            let mut m = Monomial::one();
            let mut c = BigRational::one();
            for (i, j, e) in entries {
                if e == 0 {
                    continue;
                }
                let (mm, mc) = &monos[(i - 1) * self.n + (j - 1)];
                m = m.mul(&mm.pow(e));
                c *= mc.pow(e);
            }
            return Scalar::from_poly(Poly::term(m, c));
        }
        let mut acc = Scalar::one();
        for (i, j, e) in entries {
            if e != 0 {
                acc = acc * self.p(i, j).pow(e).expect("parameters are nonzero");
            }
        }
        acc
    }

    /// `p(a, b) = ∏ p_ij^{a_i b_j}` on degree vectors.
    pub fn bichar(&self, a: &GroupElement, b: &GroupElement) -> Scalar {
        let a = a.exponents();
        let b = b.exponents();
        self.power_product(a.iter().enumerate().flat_map(|(i, &ai)| {
            b.iter()
                .enumerate()
                .map(move |(j, &bj)| (i + 1, j + 1, ai * bj))
        }))
    }

    /// `p(u, v)` on words.
    pub fn bichar_words(&self, u: &Word, v: &Word) -> Scalar {
        self.bichar(&grading(u), &grading(v))
    }

    /// Resolves a parameter name in this mode (`q` aliases `p22` in free mode).
    pub fn resolve(&self, v: Var) -> Result<Scalar> {
        match (self.mode, v) {
            (_, Var::Lambda) => Ok(Scalar::var(Var::Lambda)),
            (Mode::Free, Var::Q) => {
                if self.n < 2 {
                    return Err(Error::Eval("q = p22 needs n >= 2".into()));
                }
                Ok(self.p(2, 2).clone())
            }
            (Mode::G2, Var::Q) => Ok(Scalar::var(Var::Q)),
            (_, Var::P(i, j)) => {
                let (i, j) = (i as usize, j as usize);
                self.check_index(i)?;
                self.check_index(j)?;
                Ok(self.p(i, j).clone())
            }
        }
    }
}

/// The G2 substitution `{p11 ↦ q^3, p22 ↦ q, p21 ↦ q^-3 p12^-1}`.
pub fn g2_bindings() -> BTreeMap<Var, Scalar> {
    let q = Scalar::var(Var::Q);
    let p12 = Scalar::var(Var::p(1, 2));
    let mut b = BTreeMap::new();
    b.insert(Var::p(1, 1), q.pow(3).expect("nonzero"));
    b.insert(Var::p(2, 2), q.clone());
    b.insert(
        Var::p(2, 1),
        q.pow(-3).expect("nonzero") * p12.inv().expect("nonzero"),
    );
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[usize]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    #[test]
    fn grading_examples() {
        assert!(grading(&Word::empty()).is_identity());
        assert_eq!(grading(&w(&[2, 2, 1])).exponents(), &[1, 2]);
        assert_eq!(grading(&w(&[1, 2, 2, 2, 1])).exponents(), &[2, 3]);
        assert_eq!(grading(&w(&[1, 2, 2, 2, 1])).to_string(), "g1^2g2^3");
    }

    #[test]
    fn grading_is_additive() {
        let u = w(&[1, 2]);
        let v = w(&[2, 2, 1]);
        assert_eq!(grading(&u.concat(&v)), grading(&u).compose(&grading(&v)));
    }

    #[test]
    fn bichar_examples() {
        let p = Params::free(2);
        assert_eq!(p.bichar_words(&w(&[1]), &w(&[2])), Scalar::var(Var::p(1, 2)));
        assert!(p.bichar_words(&Word::empty(), &w(&[1, 2])).is_one());
        // p(x1 x2^n, g2) = p12 p22^n
        for n in 0..5 {
            let u = w(&[1]).concat(&Word::power(2, n));
            let expected = Scalar::var(Var::p(1, 2)) * Scalar::var_pow(Var::p(2, 2), n as i32);
            assert_eq!(p.bichar(&grading(&u), &GroupElement::generator(2)), expected);
        }
    }

    #[test]
    fn g2_relations_hold() {
        let p = Params::g2();
        let q = Scalar::var(Var::Q);
        assert_eq!(p.p(1, 1), &q.pow(3).unwrap());
        assert!((p.p(1, 2) * p.p(2, 1) * p.p(2, 2).pow(3).unwrap()).is_one());
        assert_eq!(p.q(), q);
    }

    #[test]
    fn resolve_aliases_q_in_free_mode() {
        let p = Params::free(2);
        assert_eq!(p.resolve(Var::Q).unwrap(), Scalar::var(Var::p(2, 2)));
        assert!(p.resolve(Var::p(3, 1)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(w(&[1, 2, 2, 2, 1]).to_string(), "x1x2^3x1");
        assert_eq!(w(&[1, 2, 2, 2, 1]).latex(), "x_1x_2^{3}x_1");
        assert_eq!(GroupElement::from_exponents([1, 2]).latex(), "g_1g_2^{2}");
    }
}
