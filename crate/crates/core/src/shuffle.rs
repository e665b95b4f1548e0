//! The braided shuffle algebra `Sh(W)` and the homomorphism `Ω: k⟨X⟩ → Sh(W)`.
//!
//! Comonomials share their carrier with words of `k⟨X⟩`, but [`ShuffleElement`] is a
//! separate type so the concatenation and shuffle products cannot be mixed up.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::chargroup::{Params, Word};
use crate::error::Result;
use crate::freealg::{Engine, FreeElement};
use crate::hopf::BraidedTensor;
use crate::linear::Linear;
use crate::scalar::Scalar;

/// A linear combination of comonomials `(z_1 z_2 ⋯ z_m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShuffleElement(Linear<Word>);

impl ShuffleElement {
    pub fn zero() -> Self {
        ShuffleElement(Linear::zero())
    }

    /// The empty comonomial, the unit of the shuffle product.
    pub fn one() -> Self {
        Self::comonomial(Word::empty())
    }

    pub fn comonomial(w: Word) -> Self {
        ShuffleElement(Linear::basis(w))
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        ShuffleElement(Linear::term(w, c))
    }

    pub fn from_linear(l: Linear<Word>) -> Self {
        ShuffleElement(l)
    }

    pub fn as_linear(&self) -> &Linear<Word> {
        &self.0
    }

    pub fn into_linear(self) -> Linear<Word> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.0.coefficient(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.0.iter()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ShuffleElement(self.0.scale(c))
    }

    pub fn first_difference(&self, other: &Self) -> Option<(Word, Scalar, Scalar)> {
        self.0.first_difference(&other.0)
    }
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::shuffle_text(self))
    }
}

impl Add<&ShuffleElement> for &ShuffleElement {
    type Output = ShuffleElement;
    fn add(self, rhs: &ShuffleElement) -> ShuffleElement {
        ShuffleElement(&self.0 + &rhs.0)
    }
}

impl Sub<&ShuffleElement> for &ShuffleElement {
    type Output = ShuffleElement;
    fn sub(self, rhs: &ShuffleElement) -> ShuffleElement {
        ShuffleElement(&self.0 - &rhs.0)
    }
}

impl Add for ShuffleElement {
    type Output = ShuffleElement;
    fn add(self, rhs: ShuffleElement) -> ShuffleElement {
        &self + &rhs
    }
}

impl Sub for ShuffleElement {
    type Output = ShuffleElement;
    fn sub(self, rhs: ShuffleElement) -> ShuffleElement {
        &self - &rhs
    }
}

impl Neg for ShuffleElement {
    type Output = ShuffleElement;
    fn neg(self) -> ShuffleElement {
        ShuffleElement(-self.0)
    }
}

/// Interleavings of two words, bucketed by output word and by the exponent matrix of the
/// accumulated `p(v_i, u_j)^{-1}` factors.
struct Interleaver<'a> {
    u: &'a [u8],
    v: &'a [u8],
    n: usize,
    buf: Vec<u8>,
    hops: Vec<i32>,
    out: HashMap<(Vec<u8>, Vec<i32>), u64>,
}

impl Interleaver<'_> {
    fn run(&mut self, i: usize, j: usize) {
        if i == self.u.len() && j == self.v.len() {
            *self
                .out
                .entry((self.buf.clone(), self.hops.clone()))
                .or_insert(0) += 1;
            return;
        }
        if i < self.u.len() {
            self.buf.push(self.u[i]);
            self.run(i + 1, j);
            self.buf.pop();
        }
        if j < self.v.len() {
            // v_j jumps ahead of u_i..u_end
            let a = self.v[j] as usize - 1;
            for &b in &self.u[i..] {
                self.hops[a * self.n + b as usize - 1] += 1;
            }
            self.buf.push(self.v[j]);
            self.run(i, j + 1);
            self.buf.pop();
            for &b in &self.u[i..] {
                self.hops[a * self.n + b as usize - 1] -= 1;
            }
        }
    }
}

/// `(u)(v) = Σ_interleavings ∏_{i<j} p(v_i, u_j)^{-1} (u_1 v_1 ⋯ u_ℓ v_ℓ)` on comonomials.
pub fn shuffle_words(params: &Params, u: &Word, v: &Word) -> ShuffleElement {
    if u.is_empty() {
        return ShuffleElement::comonomial(v.clone());
    }
    if v.is_empty() {
        return ShuffleElement::comonomial(u.clone());
    }
    let n = params.n();
    let mut il = Interleaver {
        u: u.as_bytes(),
        v: v.as_bytes(),
        n,
        buf: Vec::with_capacity(u.len() + v.len()),
        hops: vec![0; n * n],
        out: HashMap::new(),
    };
    il.run(0, 0);
    let mut out = Linear::zero();
    for ((w, hops), count) in il.out {
        let entries = hops
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(idx, &e)| (idx / n + 1, idx % n + 1, -e));
        let c = params.power_product(entries) * Scalar::from_int(count as i64);
        out.add_term(Word::from_letters(w.into_iter().map(usize::from)), c);
    }
    ShuffleElement(out)
}

/// The shuffle product, extended bilinearly.
pub fn shuffle_product(params: &Params, a: &ShuffleElement, b: &ShuffleElement) -> ShuffleElement {
    ShuffleElement(a.0.bilinear(&b.0, |u, v| shuffle_words(params, u, v).0))
}

/// `Δ^b((u)) = Σ_{u = u_1 u_2} (u_1) ⊗ (u_2)`.
pub fn deconcat_coproduct(a: &ShuffleElement) -> BraidedTensor {
    a.0.map_linear(|w| {
        (0..=w.len())
            .map(|i| ((w.slice(0..i), w.slice(i..w.len())), Scalar::one()))
            .collect()
    })
}

/// Caches `Ω` on words, built up letter by letter.
pub struct Omega<'a> {
    params: &'a Params,
    cache: HashMap<Word, ShuffleElement>,
}

impl<'a> Omega<'a> {
    pub fn new(params: &'a Params) -> Self {
        Omega {
            params,
            cache: HashMap::new(),
        }
    }

    pub fn word(&mut self, w: &Word) -> ShuffleElement {
        if w.len() <= 1 {
            return ShuffleElement::comonomial(w.clone());
        }
        if let Some(hit) = self.cache.get(w) {
            return hit.clone();
        }
        let head = self.word(&w.slice(0..w.len() - 1));
        let last = ShuffleElement::comonomial(w.slice(w.len() - 1..w.len()));
        let out = shuffle_product(self.params, &head, &last);
        self.cache.insert(w.clone(), out.clone());
        out
    }

    pub fn element(&mut self, a: &FreeElement) -> ShuffleElement {
        let mut out = Linear::zero();
        for (w, c) in a {
            out.add_scaled(&self.word(w).0, c);
        }
        ShuffleElement(out)
    }

    /// `Ω ⊗ Ω` on a group-free tensor.
    pub fn tensor(&mut self, t: &BraidedTensor) -> BraidedTensor {
        t.map_linear(|(l, r)| {
            let a = self.word(l);
            let b = self.word(r);
            a.0.bilinear(&b.0, |x, y| Linear::basis((x.clone(), y.clone())))
        })
    }
}

/// `Ω(a)`: every word goes to the shuffle product of its letters.
pub fn omega(params: &Params, a: &FreeElement) -> ShuffleElement {
    Omega::new(params).element(a)
}

/// `(Ω ⊗ Ω)(t)`.
pub fn omega_tensor(params: &Params, t: &BraidedTensor) -> BraidedTensor {
    Omega::new(params).tensor(t)
}

/// `[(a),(b)] = (a)(b) − p(a,b)(b)(a)` for homogeneous shuffle elements.
pub fn shuffle_bracket(params: &Params, a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement> {
    let da = crate::freealg::homogeneous_degree(&a.0, |w: &Word| w)?;
    let db = crate::freealg::homogeneous_degree(&b.0, |w: &Word| w)?;
    let p = params.bichar(&da, &db);
    Ok(&shuffle_product(params, a, b) - &shuffle_product(params, b, a).scale(&p))
}

impl Engine {
    pub fn shuffle_product(&self, a: &ShuffleElement, b: &ShuffleElement) -> ShuffleElement {
        shuffle_product(self.params(), a, b)
    }

    pub fn omega(&self, a: &FreeElement) -> ShuffleElement {
        omega(self.params(), a)
    }

    /// `(Ω⊗Ω)(Δ^b(a))`, the left side of the braided compatibility square.
    pub fn omega_of_braided(&self, a: &FreeElement) -> Result<BraidedTensor> {
        Ok(omega_tensor(self.params(), &self.braided_from_ordinary(a)?))
    }

    /// Checks `(Ω⊗Ω)(Δ^b(a)) = Δ^b(Ω(a))`.
    pub fn braided_compat_check(&self, a: &FreeElement) -> Result<bool> {
        let left = self.omega_of_braided(a)?;
        let right = deconcat_coproduct(&self.omega(a));
        Ok(left == right)
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

    fn inv(s: Scalar) -> Scalar {
        s.inv().unwrap()
    }

    #[test]
    fn two_letters() {
        let params = Params::free(2);
        let out = shuffle_words(&params, &w(&[1]), &w(&[2]));
        let expected = ShuffleElement::comonomial(w(&[1, 2])) + ShuffleElement::term(w(&[2, 1]), inv(p(2, 1)));
        assert_eq!(out, expected);
    }

    #[test]
    fn unit_law() {
        let params = Params::free(2);
        let u = ShuffleElement::comonomial(w(&[2, 1, 1]));
        assert_eq!(shuffle_product(&params, &u, &ShuffleElement::one()), u);
        assert_eq!(shuffle_product(&params, &ShuffleElement::one(), &u), u);
    }

    #[test]
    fn worked_product_two_words() {
        // free parameters: the printed term list, before merging
        let params = Params::free(2);
        let out = shuffle_words(&params, &w(&[2, 1]), &w(&[2, 2, 1]));
        let pp = |e: [i32; 4]| params.power_product([(1, 1, e[0]), (1, 2, e[1]), (2, 1, e[2]), (2, 2, e[3])]);
        let mid = pp([0, 0, -1, 0]) + pp([0, 0, -1, -1]) + pp([-1, -1, -2, -2]);
        let q3 = Scalar::one() + inv(p(2, 2)) + inv(p(2, 2)).pow(2).unwrap();
        let last = inv(p(2, 1)).pow(2).unwrap() * &q3 * (Scalar::one() + inv(p(1, 1)));
        let expected = ShuffleElement::comonomial(w(&[2, 1, 2, 2, 1]))
            + ShuffleElement::term(w(&[2, 2, 1, 2, 1]), mid)
            + ShuffleElement::term(w(&[2, 2, 2, 1, 1]), last.clone());
        assert_eq!(out, expected);

        // G2: p11 p12 p21 = 1 merges the middle coefficient into p21^-1 (1 + q^-1 + q^-2)
        let g2 = Params::g2();
        let out = shuffle_words(&g2, &w(&[2, 1]), &w(&[2, 2, 1]));
        let q = g2.q();
        let q3 = Scalar::one() + q.pow(-1).unwrap() + q.pow(-2).unwrap();
        let p21 = g2.p(2, 1).clone();
        let expected = ShuffleElement::comonomial(w(&[2, 1, 2, 2, 1]))
            + ShuffleElement::term(w(&[2, 2, 1, 2, 1]), inv(p21.clone()) * &q3)
            + ShuffleElement::term(
                w(&[2, 2, 2, 1, 1]),
                inv(p21).pow(2).unwrap() * &q3 * (Scalar::one() + inv(g2.p(1, 1).clone())),
            );
        assert_eq!(out, expected);
    }

    #[test]
    fn deconcat_examples() {
        let d = deconcat_coproduct(&ShuffleElement::comonomial(w(&[1, 2])));
        assert_eq!(d.len(), 3);
        assert!(d.coefficient(&(w(&[1]), w(&[2]))).is_one());
        let e = deconcat_coproduct(&ShuffleElement::one());
        assert_eq!(e, Linear::basis((Word::empty(), Word::empty())));
    }

    #[test]
    fn omega_examples() {
        let e = Engine::free(2);
        let x22 = Linear::basis(w(&[2, 2]));
        assert_eq!(
            e.omega(&x22),
            ShuffleElement::term(w(&[2, 2]), Scalar::one() + inv(p(2, 2)))
        );
        let b = e.serre_left(1, 2, 1).unwrap();
        let lam = p(1, 2) * p(2, 1);
        assert_eq!(
            e.omega(&b),
            ShuffleElement::term(w(&[2, 1]), inv(p(2, 1)) * (Scalar::one() - lam))
        );
        assert_eq!(e.omega(&Linear::basis(Word::empty())), ShuffleElement::one());
    }

    #[test]
    fn compat_on_small_elements() {
        let e = Engine::free(2);
        assert!(e.braided_compat_check(&e.x(1).unwrap()).unwrap());
        for n in 0..4 {
            assert!(e.braided_compat_check(&e.serre_left(1, 2, n).unwrap()).unwrap());
        }
    }
}
