//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! Every coefficient in the engine is a [`Scalar`]. There is no floating
//! point anywhere. Rationals are kept in lowest terms with positive
//! denominator (num-rational maintains this); prime-field residues live in
//! `[0, p)` with `p` a prime below `2^31`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Rationals,
    PrimeField(u64),
}

impl FieldTag {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rationals => 0,
            FieldTag::PrimeField(p) => *p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldTag::Rationals => Ok(()),
            FieldTag::PrimeField(p) => {
                if is_prime(*p) && *p <= (1 << 31) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(*p))
                }
            }
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element, either a rational or a residue mod a prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { p: u64, v: u64 },
}

impl Scalar {
    pub fn zero(field: FieldTag) -> Self {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::zero()),
            FieldTag::PrimeField(p) => Scalar::Mod { p, v: 0 },
        }
    }

    pub fn one(field: FieldTag) -> Self {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::one()),
            FieldTag::PrimeField(p) => Scalar::Mod { p, v: 1 % p },
        }
    }

    pub fn from_int(n: i64, field: FieldTag) -> Self {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldTag::PrimeField(p) => Scalar::Mod { p, v: mod_of_bigint(&BigInt::from(n), p) },
        }
    }

    pub fn from_bigint(n: &BigInt, field: FieldTag) -> Self {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldTag::PrimeField(p) => Scalar::Mod { p, v: mod_of_bigint(n, p) },
        }
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rat(_) => FieldTag::Rationals,
            Scalar::Mod { p, .. } => FieldTag::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { p, v } => *v == 1 % p,
        }
    }

    /// The underlying integer when the scalar is an integer; `None` for a
    /// proper fraction. Prime-field values are integers by definition.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    Some(r.numer().clone())
                } else {
                    None
                }
            }
            Scalar::Mod { v, .. } => Some(BigInt::from(*v)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { p, v } => Scalar::Mod { p: *p, v: mod_inverse(*v, *p) },
        })
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one(self.field());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    fn same_field(&self, other: &Scalar) -> (FieldTag, FieldTag) {
        (self.field(), other.field())
    }
}

fn check_fields(a: &Scalar, b: &Scalar) {
    let (fa, fb) = a.same_field(b);
    assert_eq!(fa, fb, "scalar field mismatch: {fa} vs {fb}");
}

pub fn mod_of_bigint(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

/// Inverse mod p via extended gcd. Panics if `v` is not invertible.
pub fn mod_inverse(v: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, v as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{v} is not invertible mod {p}");
    (t.rem_euclid(p as i128)) as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { p: *p, v: ((*a as u128 + *b as u128) % *p as u128) as u64 }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { p: *p, v: ((*a as u128 * *b as u128) % *p as u128) as u64 }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, v } => Scalar::Mod { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

// JSON form: {"num": "...", "den": "..."} or {"mod": p, "val": "..."}.
impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rat(r) => {
                let mut st = s.serialize_struct("Scalar", 2)?;
                st.serialize_field("num", &r.numer().to_string())?;
                st.serialize_field("den", &r.denom().to_string())?;
                st.end()
            }
            Scalar::Mod { p, v } => {
                let mut st = s.serialize_struct("Scalar", 2)?;
                st.serialize_field("mod", p)?;
                st.serialize_field("val", &v.to_string())?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        #[derive(Deserialize)]
        struct Raw {
            num: Option<String>,
            den: Option<String>,
            #[serde(rename = "mod")]
            modulus: Option<u64>,
            val: Option<String>,
        }
        let raw = Raw::deserialize(d)?;
        match (raw.num, raw.den, raw.modulus, raw.val) {
            (Some(n), Some(dd), None, None) => {
                let n: BigInt = n.parse().map_err(DeError::custom)?;
                let dd: BigInt = dd.parse().map_err(DeError::custom)?;
                if dd.is_zero() {
                    return Err(DeError::custom("zero denominator"));
                }
                Ok(Scalar::Rat(BigRational::new(n, dd)))
            }
            (None, None, Some(p), Some(v)) => {
                let v: u64 = v.parse().map_err(DeError::custom)?;
                if v >= p {
                    return Err(DeError::custom("residue out of range"));
                }
                Ok(Scalar::Mod { p, v })
            }
            _ => Err(DeError::custom("expected {num,den} or {mod,val}")),
        }
    }
}

/// Generalized binomial coefficient `m(m-1)...(m-k+1)/k!` for integer `m`
/// (possibly negative) and `k >= 0`, as an exact integer-valued rational.
pub fn binom_gen(m: i64, k: u64) -> Scalar {
    Scalar::Rat(BigRational::from_integer(binom_gen_int(&BigInt::from(m), k)))
}

/// Integer core of [`binom_gen`]: the product of `k` consecutive integers
/// ending at `m` is always divisible by `k!`.
pub fn binom_gen_int(m: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= m - BigInt::from(j);
    }
    let den = factorial(k);
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    acc
}

/// Signed Stirling numbers of the first kind: the coefficients of
/// `x(x-1)...(x-k+1) = sum_j s(k,j) x^j`.
pub fn stirling_first(k: u64) -> Vec<BigInt> {
    // row k of the triangle, indices 0..=k
    let mut row = vec![BigInt::one()];
    for m in 0..k {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        // x^{(m+1)} = x^{(m)} * (x - m)
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(m);
        }
        row = next;
    }
    row
}

/// Stirling numbers of the second kind S(m, k), row m.
pub fn stirling_second(m: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, c) in row.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * BigInt::from(k);
        }
        row = next;
    }
    row
}

/// Image of a rational in `F_p`; errors when the denominator is divisible
/// by `p` (the element does not lie in the `p`-integral subring).
pub fn specialize_scalar(q: &Scalar, p: u64) -> Result<Scalar> {
    FieldTag::PrimeField(p).validate()?;
    let r = match q {
        Scalar::Rat(r) => r,
        Scalar::Mod { .. } => return Err(Error::InvalidInput("expected a rational".into())),
    };
    let dm = mod_of_bigint(r.denom(), p);
    if dm == 0 {
        return Err(Error::NonIntegralDenominator { den: r.denom().to_string(), p });
    }
    let nm = mod_of_bigint(r.numer(), p);
    Ok(Scalar::Mod { p, v: (nm as u128 * mod_inverse(dm, p) as u128 % p as u128) as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_gen_examples() {
        assert_eq!(binom_gen(5, 2), Scalar::from_int(10, FieldTag::Rationals));
        for m in [-7, -1, 0, 3, 12] {
            assert_eq!(binom_gen(m, 0), Scalar::from_int(1, FieldTag::Rationals));
        }
        assert_eq!(binom_gen(-3, 2), Scalar::from_int(6, FieldTag::Rationals));
    }

    #[test]
    fn specialize_examples() {
        let q = Scalar::from_rational(10, 3);
        assert_eq!(specialize_scalar(&q, 5).unwrap(), Scalar::Mod { p: 5, v: 0 });
        let half = Scalar::from_rational(1, 2);
        assert!(matches!(
            specialize_scalar(&half, 2),
            Err(Error::NonIntegralDenominator { .. })
        ));
        let neg = Scalar::from_int(-7, FieldTag::Rationals);
        assert_eq!(specialize_scalar(&neg, 5).unwrap(), Scalar::Mod { p: 5, v: 3 });
    }

    #[test]
    fn mod_arithmetic() {
        let a = Scalar::Mod { p: 7, v: 5 };
        let b = Scalar::Mod { p: 7, v: 4 };
        assert_eq!(&a + &b, Scalar::Mod { p: 7, v: 2 });
        assert_eq!(&a * &b, Scalar::Mod { p: 7, v: 6 });
        assert_eq!(a.inv().unwrap(), Scalar::Mod { p: 7, v: 3 });
    }

    #[test]
    fn stirling_rows() {
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        let s = stirling_first(3);
        let expect: Vec<BigInt> =
            [0i64, 2, -3, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s, expect);
        // S(3, .) = [0, 1, 3, 1]
        let s2 = stirling_second(3);
        let expect2: Vec<BigInt> = [0i64, 1, 3, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s2, expect2);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(2147483647));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
