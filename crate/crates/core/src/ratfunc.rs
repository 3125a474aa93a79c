//! Exact rational functions in one variable `t`, their power-series
//! expansions at `t = 0`, and the substitution `t -> 1/t`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A reduced quotient of integer polynomials.
///
/// Canonical form: numerator and denominator are coprime over the
/// rationals, the combined coefficient content is 1, and the lowest-order
/// nonzero coefficient of the denominator is positive. Zero is `0 / 1`.
/// Two values are equal iff their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.lowest().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntPolynomial::zero(),
            den: IntPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(c: i64) -> Self {
        Self::from_polynomial(IntPolynomial::constant(BigInt::from(c)))
    }

    pub fn from_polynomial(p: IntPolynomial) -> Self {
        Self::canonical(p, IntPolynomial::one())
    }

    /// `t^k`.
    pub fn t_power(k: usize) -> Self {
        Self::from_polynomial(IntPolynomial::monomial(BigInt::one(), k))
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator, if the denominator is the constant 1.
    pub fn as_polynomial(&self) -> Option<&IntPolynomial> {
        (self.den == IntPolynomial::one()).then_some(&self.num)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::canonical(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// `r(1/t)`, with powers of `t` cleared.
    pub fn substitute_t_inverse(&self) -> Self {
        let (Some(dn), Some(dd)) = (self.num.degree(), self.den.degree()) else {
            return Self::zero();
        };
        let num = self.num.reversed();
        let den = self.den.reversed();
        if dd >= dn {
            Self::canonical(num.shift(dd - dn), den)
        } else {
            Self::canonical(num, den.shift(dn - dd))
        }
    }

    /// Power-series coefficients `c_0..=c_n` at `t = 0`, by long division.
    pub fn series_expand(&self, n: usize) -> Result<SeriesTruncation> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NotPowerSeries);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs().len().saturating_sub(1)) {
                acc -= &self.den.coeffs()[j] * &out[k - j];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(Error::NonIntegralSeries { index: k });
            }
            out.push(q);
        }
        Ok(SeriesTruncation::new(out))
    }

    /// Exact evaluation at a rational point `p / q`; `None` at a pole.
    pub fn eval_ratio(&self, p: i64, q: i64) -> Option<(BigInt, BigInt)> {
        let homogeneous = |poly: &IntPolynomial| {
            let d = poly.degree().unwrap_or(0);
            let (p, q) = (BigInt::from(p), BigInt::from(q));
            poly.coeffs()
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (k, c)| {
                    acc + c * p.pow(k as u32) * q.pow((d - k) as u32)
                })
        };
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let mut a = homogeneous(&self.num);
        let mut b = homogeneous(&self.den);
        if b.is_zero() {
            return None;
        }
        // p^k q^(dn-k) / (p^k q^(dd-k)) leaves a factor q^(dd - dn).
        let q = BigInt::from(q);
        if dd >= dn {
            a *= q.pow((dd - dn) as u32);
        } else {
            b *= q.pow((dn - dd) as u32);
        }
        let g = a.gcd(&b);
        if !g.is_zero() {
            a /= &g;
            b /= &g;
        }
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        Some((a, b))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs.clone())
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] when
/// the divisor may vanish.
impl Div for &RationalFunction {
    type Output = RationalFunction;

    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl From<IntPolynomial> for RationalFunction {
    fn from(p: IntPolynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RationalFunction {
    /// `(num) / (den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Exact power-series coefficients `c_0..=c_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SeriesTruncation {
    coeffs: Vec<BigInt>,
}

impl SeriesTruncation {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        SeriesTruncation { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![BigInt::zero(); n + 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [BigInt] {
        &mut self.coeffs
    }

    /// The highest power kept, `N`.
    pub fn horizon(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Truncated product, kept to the shorter horizon.
    pub fn cauchy_product(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    (0..=k)
                        .map(|j| &self.coeffs[j] * &other.coeffs[k - j])
                        .sum()
                })
                .collect(),
        )
    }

    /// Coefficients that fit in `i64`, or `None`.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(num_traits::ToPrimitive::to_i64)
            .collect()
    }
}

impl fmt::Display for SeriesTruncation {
    /// `[c0, c1, ..., cN]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for SeriesTruncation {
    /// Coefficients as JSON integers where they fit in `i64`, else strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match num_traits::ToPrimitive::to_i64(c) {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let x = rf(&[1], &[1, 1]);
        assert_eq!(&x + &x, rf(&[2], &[1, 1]));
        assert_eq!(
            &rf(&[1, -1], &[1, 1]) * &rf(&[1, 1], &[1]),
            rf(&[1, -1], &[1])
        );
        let diff = &RationalFunction::one() - &rf(&[2], &[1, 1]);
        assert_eq!(diff, rf(&[-1, 1], &[1, 1]));
        assert_eq!(diff.to_string(), "(-1 + t) / (1 + t)");
    }

    #[test]
    fn canonical_form() {
        let r = rf(&[2, 2], &[-4, 4]);
        assert_eq!(r.numerator(), &p(&[-1, -1]));
        assert_eq!(r.denominator(), &p(&[2, -2]));
        assert_eq!(rf(&[0], &[5, 7]), RationalFunction::zero());
        assert_eq!(rf(&[3], &[6]), rf(&[1], &[2]));
        assert!(RationalFunction::new(p(&[1]), p(&[])).is_err());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            RationalFunction::one().checked_div(&RationalFunction::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn series_examples() {
        assert_eq!(
            rf(&[1, 1], &[1, -1]).series_expand(4).unwrap(),
            SeriesTruncation::from_i64s(&[1, 2, 2, 2, 2])
        );
        assert_eq!(
            RationalFunction::one().series_expand(3).unwrap(),
            SeriesTruncation::from_i64s(&[1, 0, 0, 0])
        );
        assert_eq!(
            rf(&[1, 2, 2, 1], &[1]).series_expand(5).unwrap(),
            SeriesTruncation::from_i64s(&[1, 2, 2, 1, 0, 0])
        );
        assert_eq!(
            rf(&[1], &[0, 1]).series_expand(2),
            Err(Error::NotPowerSeries)
        );
        assert_eq!(
            rf(&[1], &[2, 1]).series_expand(2),
            Err(Error::NonIntegralSeries { index: 0 })
        );
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            rf(&[1, 1], &[1]).substitute_t_inverse(),
            rf(&[1, 1], &[0, 1])
        );
        let r = rf(&[1, 1], &[1, -1]);
        let s = r.substitute_t_inverse();
        assert_eq!(s, rf(&[1, 1], &[-1, 1]));
        // r(1/2) = 3 and s(2) = 3.
        let three = (BigInt::from(3), BigInt::one());
        assert_eq!(r.eval_ratio(1, 2), Some(three.clone()));
        assert_eq!(s.eval_ratio(2, 1), Some(three));
        assert_eq!(s.substitute_t_inverse(), r);
    }

    #[test]
    fn eval_at_pole() {
        assert_eq!(rf(&[1], &[1, -1]).eval_ratio(1, 1), None);
    }
}
