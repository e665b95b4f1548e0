use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Var};

/// A Laurent polynomial over ℚ in the quantization parameters.
///
/// Terms are kept in a `BTreeMap`, so iteration order is the canonical printing
/// order. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

/// Decomposition `p = unit · monomial · factor` produced by [`Poly::canonical_factor`].
#[derive(Clone, Debug)]
pub struct CanonicalFactor {
    pub unit: BigRational,
    pub monomial: Monomial,
    pub factor: Poly,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(m, BigRational::one())
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        match self.terms.len() {
            1 => self.terms.get(&Monomial::one()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Greatest monomial dividing every term (exponentwise minimum, absent = 0).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    /// Leading term in the pure lexicographic monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Splits `self = unit · monomial · factor` where `factor` has integer coprime
    /// coefficients, trivial monomial content, and a positive first coefficient in
    /// printing order.
    pub fn canonical_factor(&self) -> CanonicalFactor {
        assert!(!self.is_zero(), "canonical_factor of zero");
        let monomial = self.monomial_content();
        let shifted = self.mul_monomial(&monomial.inv());
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in shifted.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut scale = BigRational::new(den_lcm, num_gcd);
        let first_negative = shifted
            .terms
            .values()
            .next()
            .is_some_and(|c| c.is_negative());
        if first_negative {
            scale = -scale;
        }
        let factor = shifted.scale(&scale);
        CanonicalFactor {
            unit: scale.recip(),
            monomial,
            factor,
        }
    }

    /// Exact division by a polynomial with trivial monomial content.
    ///
    /// Returns `None` when `divisor` does not divide `self` in the Laurent ring.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        debug_assert!(divisor.monomial_content().is_one());
        let shift = self.monomial_content();
        let mut rem = self.mul_monomial(&shift.inv());
        let (lead_m, lead_c) = divisor.leading_term().expect("nonzero divisor");
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut quotient = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if !rm.is_multiple_of(&lead_m) {
                return None;
            }
            let qm = rm.div(&lead_m);
            let qc = rc / &lead_c;
            let step = Poly::term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.mul(&step));
            quotient.add_term(qm, qc);
        }
        Some(quotient.mul_monomial(&shift))
    }

    /// Groups terms by the exponent of `v`, returning the cofactor of each power.
    pub fn split_by_var(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = m.div(&Monomial::var_pow(v, e));
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.entries().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                s.push('-');
            } else if idx > 0 {
                s.push('+');
            }
            let a = c.abs();
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if m.is_one() {
                s.push_str(&coef);
            } else {
                if !a.is_one() {
                    s.push_str(&coef);
                }
                s.push_str(&m.latex());
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::var(Var::Q)
    }

    fn int(c: i64) -> Poly {
        Poly::from_int(c)
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let p = int(1).add(&q()).mul(&int(1).sub(&q()));
        assert_eq!(p, int(1).sub(&q().pow(2)));
        assert_eq!(p.to_string(), "1 - q^2");
    }

    #[test]
    fn canonical_factor_normalizes_sign_and_content() {
        // (q^3 - q) / 2 = -1/2 * q * (1 - q^2)
        let p = q().pow(3).sub(&q()).scale(&BigRational::new(1.into(), 2.into()));
        let cf = p.canonical_factor();
        assert_eq!(cf.factor, int(1).sub(&q().pow(2)));
        assert_eq!(cf.monomial, Monomial::var(Var::Q));
        assert_eq!(cf.unit, BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn canonical_factor_of_laurent() {
        // 1 - q^-2 = -q^-2 (1 - q^2)
        let p = int(1).sub(&Poly::monomial(Monomial::var_pow(Var::Q, -2)));
        let cf = p.canonical_factor();
        assert_eq!(cf.factor, int(1).sub(&q().pow(2)));
        assert_eq!(cf.monomial, Monomial::var_pow(Var::Q, -2));
        assert_eq!(cf.unit, -BigRational::one());
    }

    #[test]
    fn exact_division() {
        let a = int(1).sub(&q().pow(3));
        let b = int(1).sub(&q());
        assert_eq!(a.exact_div(&b), Some(int(1).add(&q()).add(&q().pow(2))));
        assert_eq!(b.exact_div(&a), None);
        let shifted = a.mul_monomial(&Monomial::var_pow(Var::Q, -4));
        assert_eq!(
            shifted.exact_div(&b),
            Some(int(1).add(&q()).add(&q().pow(2)).mul_monomial(&Monomial::var_pow(Var::Q, -4)))
        );
    }

    #[test]
    fn exact_division_multivariate() {
        let lam = Poly::var(Var::Lambda);
        let f = int(1).sub(&lam.mul(&q()));
        let g = int(1).add(&q()).add(&lam.pow(2));
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f), Some(g.clone()));
        assert_eq!(prod.add(&int(1)).exact_div(&f), None);
    }

    #[test]
    fn split_by_var_recovers_slices() {
        let lam = Poly::var(Var::Lambda);
        let p = int(1).add(&q()).sub(&lam.mul(&q().pow(2)));
        let slices = p.split_by_var(Var::Lambda);
        assert_eq!(slices[&0], int(1).add(&q()));
        assert_eq!(slices[&1], q().pow(2).neg());
    }
}
