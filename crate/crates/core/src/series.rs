//! Truncated formal series in an auxiliary variable `u`.
//!
//! Coefficients come from any ring implementing [`SeriesCoeff`]; the two
//! instantiations used are exact scalars and algebra elements. A series of
//! truncation order `N` stores exactly `N + 1` coefficients and no
//! operation ever reads beyond `u^N`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::scalar::{factorial, FieldTag, Scalar};

/// Ring operations required of series coefficients. `zero`/`one` take
/// `&self` so that context-carrying rings (algebra elements) can produce
/// constants of the right shape.
pub trait SeriesCoeff: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale_rat(&self, q: &BigRational) -> Self;
    fn is_zero_coeff(&self) -> bool;
}

impl SeriesCoeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_rat(&self, q: &BigRational) -> Self {
        match self.field() {
            FieldTag::Rationals => self * &Scalar::Rat(q.clone()),
            FieldTag::PrimeField(p) => {
                let s = crate::scalar::specialize_scalar(&Scalar::Rat(q.clone()), p)
                    .expect("non p-integral scale factor");
                self * &s
            }
        }
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
}

/// A series `sum_{r=0}^{N} c_r u^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<C: SeriesCoeff> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TruncSeries<C> {
    /// Series with the given coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize, like: &C) -> Self {
        TruncSeries { coeffs: vec![like.zero_like(); order + 1] }
    }

    pub fn one(order: usize, like: &C) -> Self {
        let mut s = Self::zero(order, like);
        s.coeffs[0] = like.one_like();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &C {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "truncation order mismatch");
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    /// Truncated product. Coefficient order is preserved (left factors of
    /// `self` stay to the left), so this is valid over noncommutative rings.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "truncation order mismatch");
        let n = self.order();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if b.is_zero_coeff() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.scale_rat(q)).collect() }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one(self.order(), &self.coeffs[0]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divided power `self^k / k!`.
    pub fn divided_power(&self, k: u64) -> Self {
        self.pow(k).scale(&BigRational::new(BigInt::one(), factorial(k)))
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero_coeff(), "exp needs zero constant term");
        let n = self.order();
        let mut acc = Self::one(n, &self.coeffs[0]);
        let mut term = Self::one(n, &self.coeffs[0]);
        for k in 1..=n as u64 {
            term = term.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(self)`; requires constant term one.
    pub fn log(&self) -> Self {
        assert!(
            self.coeffs[0].add_ref(&self.coeffs[0].one_like().neg_ref()).is_zero_coeff(),
            "log needs constant term one"
        );
        let n = self.order();
        // x = self - 1, log(1+x) = sum (-1)^{k+1} x^k / k
        let mut x = self.clone();
        x.coeffs[0] = x.coeffs[0].zero_like();
        let mut acc = Self::zero(n, &self.coeffs[0]);
        let mut xp = Self::one(n, &self.coeffs[0]);
        for k in 1..=n as u64 {
            xp = xp.mul(&x);
            let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            acc = acc.add(&xp.scale(&BigRational::new(sign, BigInt::from(k))));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTag;

    fn qs(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(n, d)
    }

    #[test]
    fn exp_log_round_trip() {
        // series t + t^2/3 - 2t^3 over Q, order 6
        let zero = Scalar::zero(FieldTag::Rationals);
        let mut c = vec![zero; 7];
        c[1] = qs(1, 1);
        c[2] = qs(1, 3);
        c[3] = qs(-2, 1);
        let s = TruncSeries::new(c);
        let round = s.exp().log();
        assert_eq!(round, s);
        let round2 = {
            let mut e = s.exp();
            e = e.log().exp();
            e
        };
        assert_eq!(round2, s.exp());
    }

    #[test]
    fn divided_powers() {
        let zero = Scalar::zero(FieldTag::Rationals);
        let mut c = vec![zero; 5];
        c[1] = qs(1, 1);
        let s = TruncSeries::new(c); // u
        let d = s.divided_power(3); // u^3/6
        assert_eq!(d.coeff(3), &qs(1, 6));
        assert!(d.coeff(2).is_zero());
    }
}
