//! Finite Scalar-weighted combinations over an ordered basis.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// A finite linear combination `Σ c_b · b` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for Linear<B> {
    fn default() -> Self {
        Linear {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> Linear<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, B, Scalar> {
        self.terms.keys()
    }

    pub fn coefficient(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Linear<B>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Linear {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    /// Applies a coefficient-wise map, dropping terms that become zero.
    pub fn try_map_coefficients<E>(
        &self,
        mut f: impl FnMut(&Scalar) -> Result<Scalar, E>,
    ) -> Result<Self, E> {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Extends `f` linearly: `Σ c_b b ↦ Σ c_b f(b)`.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Linear<C>) -> Linear<C> {
        let mut out = Linear::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Reindexes every basis element; colliding images are summed.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> (C, Scalar)) -> Linear<C> {
        let mut out = Linear::zero();
        for (b, c) in &self.terms {
            let (nb, k) = f(b);
            out.add_term(nb, c * &k);
        }
        out
    }

    /// Extends a basis-level product bilinearly.
    pub fn bilinear<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &Linear<C>,
        mut f: impl FnMut(&B, &C) -> Linear<D>,
    ) -> Linear<D> {
        let mut out = Linear::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = f(a, b);
                if !prod.is_zero() {
                    out.add_scaled(&prod, &(ca * cb));
                }
            }
        }
        out
    }

    /// First basis element (in map order) whose coefficients differ, with both values.
    pub fn first_difference(&self, other: &Linear<B>) -> Option<(B, Scalar, Scalar)> {
        let diff = self - other;
        diff.terms
            .keys()
            .next()
            .map(|b| (b.clone(), self.coefficient(b), other.coefficient(b)))
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for Linear<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<'a, B: Ord + Clone> IntoIterator for &'a Linear<B> {
    type Item = (&'a B, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + Clone> Add<&Linear<B>> for &Linear<B> {
    type Output = Linear<B>;
    fn add(self, rhs: &Linear<B>) -> Linear<B> {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl<B: Ord + Clone> Sub<&Linear<B>> for &Linear<B> {
    type Output = Linear<B>;
    fn sub(self, rhs: &Linear<B>) -> Linear<B> {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), -c);
        }
        out
    }
}

impl<B: Ord + Clone> Add for Linear<B> {
    type Output = Linear<B>;
    fn add(self, rhs: Linear<B>) -> Linear<B> {
        &self + &rhs
    }
}

impl<B: Ord + Clone> Sub for Linear<B> {
    type Output = Linear<B>;
    fn sub(self, rhs: Linear<B>) -> Linear<B> {
        &self - &rhs
    }
}

impl<B: Ord + Clone> Neg for &Linear<B> {
    type Output = Linear<B>;
    fn neg(self) -> Linear<B> {
        Linear {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }
}

impl<B: Ord + Clone> Neg for Linear<B> {
    type Output = Linear<B>;
    fn neg(self) -> Linear<B> {
        -&self
    }
}
