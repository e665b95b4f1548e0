use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, Poly, Var};
use crate::error::{Error, Result};

/// An exact rational function over ℚ in the quantization parameters.
///
/// The denominator is stored as a product of canonical factors (integer, primitive,
/// trivial monomial content, positive first coefficient) with multiplicities; monomial
/// and integer content always live in the numerator. Factors are not irreducible, so
/// two equal scalars may carry different factor lists: equality is decided by
/// cross-multiplication, never structurally.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Scalar::from_poly(Poly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Scalar::from_poly(Poly::monomial(m))
    }

    /// `v^e` for a single variable.
    pub fn var_pow(v: Var, e: i32) -> Self {
        Scalar::monomial(Monomial::var_pow(v, e))
    }

    /// Builds `num / den`, failing when `den` is the zero polynomial.
    pub fn ratio(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Scalar::normalized(num, vec![(den, 1)]))
    }

    fn normalized(mut num: Poly, raw_den: Vec<(Poly, u32)>) -> Self {
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        if num.is_zero() {
            return Scalar { num, den };
        }
        for (f, k) in raw_den {
            let cf = f.canonical_factor();
            let k_i = k as i32;
            num = num
                .scale(&cf.unit.recip().pow(k_i))
                .mul_monomial(&cf.monomial.pow(-k_i));
            if cf.factor.as_constant().is_none() {
                *den.entry(cf.factor).or_insert(0) += k;
            }
        }
        let mut s = Scalar { num, den };
        s.cancel();
        s
    }

    /// Divides common factors out of the numerator by trial division.
    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        if self.den.is_empty() {
            return;
        }
        let factors: Vec<Poly> = self.den.keys().cloned().collect();
        for f in factors {
            loop {
                let k = self.den[&f];
                if k == 0 {
                    break;
                }
                match self.num.exact_div(&f) {
                    Some(quot) => {
                        self.num = quot;
                        if k == 1 {
                            self.den.remove(&f);
                            break;
                        }
                        self.den.insert(f.clone(), k - 1);
                    }
                    None => break,
                }
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, k)| (p, *k))
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> Poly {
        product(self.den.iter().map(|(p, k)| (p, *k)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The value as a plain rational number, if it is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_empty() {
            if self.num.is_zero() {
                return Some(BigRational::zero());
            }
            return self.num.as_constant().cloned();
        }
        None
    }

    /// The value as a single monomial with coefficient, if it is one.
    pub fn as_monomial(&self) -> Option<(Monomial, BigRational)> {
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_monomial().map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Least common multiple of two factored denominators.
    fn lcm_den(&self, other: &Scalar) -> BTreeMap<Poly, u32> {
        let mut out = self.den.clone();
        for (f, k) in &other.den {
            let e = out.entry(f.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        out
    }

    /// Numerator of `self` rewritten over the denominator `target` (a multiple of `self.den`).
    fn num_over(&self, target: &BTreeMap<Poly, u32>) -> Poly {
        let cofactor = product(
            target
                .iter()
                .map(|(f, k)| (f, k - self.den.get(f).copied().unwrap_or(0))),
        );
        self.num.mul(&cofactor)
    }

    fn add_impl(&self, other: &Scalar, negate_other: bool) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let (num, den) = if self.den == other.den {
            let num = if negate_other {
                self.num.sub(&other.num)
            } else {
                self.num.add(&other.num)
            };
            (num, self.den.clone())
        } else {
            let den = self.lcm_den(other);
            let a = self.num_over(&den);
            let b = other.num_over(&den);
            let num = if negate_other { a.sub(&b) } else { a.add(&b) };
            (num, den)
        };
        let mut s = Scalar { num, den };
        s.cancel();
        s
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let num = self.num.mul(&other.num);
        let mut den = self.den.clone();
        for (f, k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        let mut s = Scalar { num, den };
        if !self.den.is_empty() || !other.den.is_empty() {
            s.cancel();
        }
        s
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if let Some((m, c)) = self.as_monomial() {
            return Ok(Scalar::from_poly(Poly::term(m.inv(), c.recip())));
        }
        Ok(Scalar::normalized(self.denominator(), vec![(self.num.clone(), 1)]))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul_impl(&other.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        if let Some((m, c)) = base.as_monomial() {
            let k = e.unsigned_abs() as i32;
            return Ok(Scalar::from_poly(Poly::term(m.pow(k), c.pow(k))));
        }
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_impl(&base);
        }
        Ok(acc)
    }

    /// Applies the ring homomorphism sending each bound variable to its image.
    ///
    /// Unbound variables are left in place. Fails when a denominator factor maps to zero.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Scalar>) -> Result<Scalar> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, bindings)?;
        let mut out = num;
        for (f, k) in &self.den {
            let image = substitute_poly(f, bindings)?;
            if image.is_zero() {
                return Err(Error::SpecializationKillsDenominator(f.to_string()));
            }
            out = out.checked_div(&image.pow(*k as i32)?)?;
        }
        Ok(out)
    }

    pub fn latex(&self) -> String {
        if self.den.is_empty() {
            return self.num.latex();
        }
        let mut den = String::new();
        for (f, k) in &self.den {
            den.push('(');
            den.push_str(&f.latex());
            den.push(')');
            if *k > 1 {
                den.push_str(&format!("^{{{k}}}"));
            }
        }
        format!("\\frac{{{}}}{{{}}}", self.num.latex(), den)
    }

    /// True when the printed form needs parentheses as a multiplicative factor.
    pub fn needs_parens(&self) -> bool {
        self.num.len() > 1 || !self.den.is_empty()
    }

    /// True when the value is a single negatively signed term without denominator.
    pub fn is_negative_term(&self) -> bool {
        use num_traits::Signed;
        self.den.is_empty()
            && self
                .num
                .as_monomial()
                .is_some_and(|(_, c)| c.is_negative())
    }
}

fn product<'a>(factors: impl Iterator<Item = (&'a Poly, u32)>) -> Poly {
    let mut acc = Poly::one();
    for (f, k) in factors {
        for _ in 0..k {
            acc = acc.mul(f);
        }
    }
    acc
}

fn substitute_poly(p: &Poly, bindings: &BTreeMap<Var, Scalar>) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut term = Scalar::from_rational(c.clone());
        let mut kept = Vec::new();
        for &(v, e) in m.entries() {
            match bindings.get(&v) {
                Some(image) => term = term.mul_impl(&image.pow(e)?),
                None => kept.push((v, e)),
            }
        }
        if !kept.is_empty() {
            term = term.mul_impl(&Scalar::monomial(Monomial::from_entries(kept)));
        }
        acc = acc.add_impl(&term, false);
    }
    Ok(acc)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let den = self.lcm_den(other);
        self.num_over(&den) == other.num_over(&den)
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

impl From<BigInt> for Scalar {
    fn from(c: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(c))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})/", self.num)?;
        } else {
            write!(f, "{}/", self.num)?;
        }
        let single = self.den.len() == 1 && self.den.values().all(|k| *k == 1);
        if !single {
            write!(f, "(")?;
        }
        for (idx, (p, k)) in self.den.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "({p})")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if !single {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::var(Var::Q)
    }

    fn s(c: i64) -> Scalar {
        Scalar::from_int(c)
    }

    #[test]
    fn additive_cancellation() {
        let a = s(1) - q().pow(3).unwrap();
        assert_eq!(a + q().pow(3).unwrap(), s(1));
    }

    #[test]
    fn inverse_pair() {
        let a = s(1) - q();
        let inv = a.inv().unwrap();
        let prod = &inv * &a;
        assert!(prod.is_one());
        assert!(prod.is_polynomial());
    }

    #[test]
    fn distributivity_example() {
        assert_eq!((s(1) + q()) * (s(1) - q()), s(1) - q().pow(2).unwrap());
    }

    #[test]
    fn quotient_equals_factor() {
        let a = (s(1) - q().pow(2).unwrap()).checked_div(&(s(1) - q())).unwrap();
        assert_eq!(a, s(1) + q());
        // trial division already removed the denominator
        assert!(a.is_polynomial());
    }

    #[test]
    fn zero_divisor() {
        assert!(matches!(s(1).checked_div(&Scalar::zero()), Err(Error::ZeroDivisor)));
        assert!(matches!(Scalar::zero().inv(), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn distinct_polynomials_differ() {
        let p12 = Scalar::var(Var::p(1, 2));
        let p21 = Scalar::var(Var::p(2, 1));
        let x = s(1) - &(&p12 * &p21) * &q().pow(3).unwrap();
        assert_ne!(x, Scalar::zero());
    }

    #[test]
    fn display_fraction() {
        let p12 = Scalar::var(Var::p(1, 2));
        let p21 = Scalar::var(Var::p(2, 1));
        let num = s(1) - &(&p12 * &p21) * &q();
        let x = num.checked_div(&(s(1) - q())).unwrap();
        assert_eq!(x.to_string(), "(1 - p12*p21*q)/(1 - q)");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn denominators_with_different_factors_compare_equal() {
        // 1/((1-q)(1+q)) == 1/(1-q^2)
        let a = (s(1) - q()).inv().unwrap() * (s(1) + q()).inv().unwrap();
        let b = (s(1) - q().pow(2).unwrap()).inv().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn substitute_g2_kills_serre_factor() {
        let p12 = Scalar::var(Var::p(1, 2));
        let p21 = Scalar::var(Var::p(2, 1));
        let x = s(1) - &(&p12 * &p21) * &q().pow(3).unwrap();
        let mut b = BTreeMap::new();
        b.insert(Var::p(1, 1), q().pow(3).unwrap());
        b.insert(Var::p(2, 2), q());
        b.insert(
            Var::p(2, 1),
            q().pow(-3).unwrap() * p12.inv().unwrap(),
        );
        assert!(x.substitute(&b).unwrap().is_zero());
        assert_eq!(x.substitute(&BTreeMap::new()).unwrap(), x);
        let y = (s(1) - &(&p12 * &p21) * &q().pow(3).unwrap()).inv().unwrap();
        assert!(matches!(
            y.substitute(&b),
            Err(Error::SpecializationKillsDenominator(_))
        ));
    }

    #[test]
    fn substitute_g2_monomial() {
        let p12 = Scalar::var(Var::p(1, 2));
        let p21 = Scalar::var(Var::p(2, 1));
        let mut b = BTreeMap::new();
        b.insert(Var::p(2, 1), q().pow(-3).unwrap() * p12.inv().unwrap());
        let x = p21.inv().unwrap() * q().inv().unwrap();
        assert_eq!(x.substitute(&b).unwrap(), q().pow(2).unwrap() * p12);
    }
}
