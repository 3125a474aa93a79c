//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `coeffs[k]` is the coefficient of `t^k`. The highest stored coefficient
/// is nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest-order nonzero coefficient.
    pub fn lowest(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Number of trailing zero coefficients at `t = 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        )
    }

    /// `self / content`, with nonnegative content.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// `t^deg * self(1/t)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Coefficients read both ways agree, i.e. `p(t) = t^deg p(1/t)`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut steps = match rem.degree() {
            Some(d) if d >= dd => d - dd + 1,
            _ => return rem,
        };
        while let Some(d) = rem.degree() {
            if d < dd {
                break;
            }
            let lr = rem.leading().unwrap().clone();
            let shifted = divisor.shift(d - dd).scale(&lr);
            rem = &rem.scale(&lc) - &shifted;
            steps -= 1;
        }
        if steps > 0 {
            rem = rem.scale(&lc.pow(steps as u32));
        }
        rem
    }

    /// Exact division over the integers; `None` if `divisor` does not divide
    /// `self` in `Z[t]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lc = divisor.leading().unwrap();
        let mut rem = self.clone();
        let Some(ds) = rem.degree() else {
            return Some(Self::zero());
        };
        if ds < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        while let Some(d) = rem.degree() {
            if d < dd {
                return None;
            }
            let (q, r) = rem.leading().unwrap().div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &divisor.shift(d - dd).scale(&q);
            quot[d - dd] = q;
        }
        Some(Self::new(quot))
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.leading().is_some_and(Signed::is_negative) {
            -a
        } else {
            a
        }
    }

    /// Exact evaluation at an integer.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl From<Vec<BigInt>> for IntPolynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    /// `1 + 2*t - t^3`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{magnitude}*{power}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn normalises_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 2, 2, 1]).to_string(), "1 + 2*t + 2*t^2 + t^3");
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + t");
        assert_eq!(p(&[0, -1, 0, -3]).to_string(), "-t - 3*t^3");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[1]).to_string(), "1");
    }

    #[test]
    fn gcd_examples() {
        // (1+t)(1-t) and (1+t)^2
        let a = &p(&[1, 1]) * &p(&[1, -1]);
        let b = &p(&[1, 1]) * &p(&[1, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[3, 6])), p(&[1, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])), p(&[1]));
        assert_eq!(p(&[]).gcd(&p(&[-2, -2])), p(&[1, 1]));
        // (1+t+t^2)(1+t^3) vs (1+t+t^2)(1-t)^2
        let c = &p(&[1, 1, 1]) * &p(&[1, 0, 0, 1]);
        let d = &p(&[1, 1, 1]) * &p(&[1, -2, 1]);
        assert_eq!(c.gcd(&d), p(&[1, 1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 1]) * &p(&[1, 2, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, 2, 2, 1])));
        assert_eq!(p(&[1, 2]).div_exact(&p(&[2, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[2])), None);
    }

    #[test]
    fn reverse_and_palindrome() {
        assert_eq!(p(&[1, 2, 3]).reversed(), p(&[3, 2, 1]));
        assert_eq!(p(&[0, 1, 2]).reversed(), p(&[2, 1]));
        assert!(p(&[1, 2, 2, 1]).is_palindromic());
        assert!(!p(&[1, 2, 1, 1]).is_palindromic());
    }
}
