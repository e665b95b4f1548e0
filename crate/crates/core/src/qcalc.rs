//! q-integers, q-factorials and Gauss polynomials.

use crate::scalar::Scalar;

/// `[n]_b = 1 + b + … + b^{n-1}`; `[0]_b = 0`.
pub fn q_int(n: u32, base: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut power = Scalar::one();
    for _ in 0..n {
        acc = &acc + &power;
        power = &power * base;
    }
    acc
}

/// `[n]_b! = [1]_b [2]_b … [n]_b`; `[0]_b! = 1`.
pub fn q_factorial(n: u32, base: &Scalar) -> Scalar {
    (1..=n).map(|k| q_int(k, base)).product()
}

/// Pascal triangle of Gauss polynomials for one base, filled by the first
/// q-Pascal identity `[n+1, k] = [n, k-1] + b^k [n, k]`.
#[derive(Clone, Debug)]
pub struct GaussTable {
    rows: Vec<Vec<Scalar>>,
}

impl GaussTable {
    pub fn new(max_n: u32, base: &Scalar) -> Self {
        let mut powers = vec![Scalar::one()];
        for k in 1..=max_n as usize {
            powers.push(&powers[k - 1] * base);
        }
        let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
        for n in 0..max_n as usize {
            let prev = &rows[n];
            let row = (0..=n + 1)
                .map(|k| {
                    let left = if k >= 1 { prev[k - 1].clone() } else { Scalar::zero() };
                    let right = if k <= n {
                        &powers[k] * &prev[k]
                    } else {
                        Scalar::zero()
                    };
                    left + right
                })
                .collect();
            rows.push(row);
        }
        GaussTable { rows }
    }

    pub fn max_n(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// `[n over k]`, zero outside `0 ≤ k ≤ n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: u32, k: i64) -> Scalar {
        let row = &self.rows[n as usize];
        if k < 0 || k as usize >= row.len() {
            Scalar::zero()
        } else {
            row[k as usize].clone()
        }
    }
}

/// The Gauss polynomial `[n over k]_b`, computed without division.
pub fn gauss_binomial(n: u32, k: i64, base: &Scalar) -> Scalar {
    if k < 0 || k > n as i64 {
        return Scalar::zero();
    }
    GaussTable::new(n, base).get(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Var;

    fn q() -> Scalar {
        Scalar::var(Var::Q)
    }

    fn poly(coeffs: &[i64]) -> Scalar {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| Scalar::from_int(c) * Scalar::var_pow(Var::Q, i as i32))
            .sum()
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0, &q()).is_zero());
        assert!(q_int(1, &q()).is_one());
        assert_eq!(q_int(3, &q()), poly(&[1, 1, 1]));
    }

    #[test]
    fn q_factorial_examples() {
        assert!(q_factorial(0, &q()).is_one());
        assert_eq!(q_factorial(2, &q()), poly(&[1, 1]));
        assert_eq!(q_factorial(3, &q()), poly(&[1, 1]) * poly(&[1, 1, 1]));
    }

    #[test]
    fn gauss_examples() {
        for n in 0..5 {
            assert!(gauss_binomial(n, 0, &q()).is_one());
            assert!(gauss_binomial(n, n as i64, &q()).is_one());
        }
        assert_eq!(gauss_binomial(2, 1, &q()), poly(&[1, 1]));
        assert_eq!(gauss_binomial(4, 2, &q()), poly(&[1, 1, 2, 1, 1]));
        assert!(gauss_binomial(3, -1, &q()).is_zero());
        assert!(gauss_binomial(3, 4, &q()).is_zero());
    }
}
