//! Monomials and sparse polynomials in `n` variables, in polynomial or
//! Laurent context. Exponent vectors are the workhorse type: the tensor
//! factors `t^s` of algebra generators are [`MultiExp`] values.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldTag, Scalar};

/// Polynomial (`C[t_1..t_n]`) vs Laurent (`C[t_1^±..t_n^±]`) context,
/// together with the variable count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarContext {
    Poly(usize),
    Laurent(usize),
}

impl VarContext {
    pub fn n(&self) -> usize {
        match self {
            VarContext::Poly(n) | VarContext::Laurent(n) => *n,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, VarContext::Laurent(_))
    }

    pub fn admits(&self, e: &MultiExp) -> bool {
        e.0.len() == self.n() && (self.is_laurent() || e.0.iter().all(|&x| x >= 0))
    }
}

/// An exponent vector: the monomial `t_1^{s_1} ... t_n^{s_n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiExp(pub Vec<i64>);

impl MultiExp {
    pub fn zero(n: usize) -> Self {
        MultiExp(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        MultiExp(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &MultiExp) -> MultiExp {
        assert_eq!(self.n(), other.n());
        MultiExp(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: i64) -> MultiExp {
        MultiExp(self.0.iter().map(|a| a * k).collect())
    }

    pub fn inv(&self) -> MultiExp {
        self.pow(-1)
    }

    /// Total height `sum |s_j|`.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn max_entry(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min_entry(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// gcd of the absolute exponents (0 for the unit monomial).
    pub fn exponent_gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x.abs()))
    }

    /// `true` iff the monomial is not a power of another basis monomial.
    pub fn is_primitive(&self) -> bool {
        self.exponent_gcd() == 1
    }

    /// Decompose as `c^k` with `c` primitive and `k >= 1`; `None` for the
    /// unit monomial.
    pub fn primitive_root(&self) -> Option<(MultiExp, i64)> {
        let g = self.exponent_gcd();
        if g == 0 {
            return None;
        }
        Some((MultiExp(self.0.iter().map(|x| x / g).collect()), g))
    }

    /// Evaluation `a_1^{s_1} ... a_n^{s_n}` at a point.
    pub fn eval(&self, a: &[Scalar]) -> Result<Scalar> {
        assert_eq!(self.n(), a.len(), "point dimension mismatch");
        let field = if a.is_empty() { FieldTag::Rationals } else { a[0].field() };
        if self.0.iter().zip(a).any(|(s, aj)| aj.is_zero() && *s < 0) {
            return Err(Error::ZeroAtNegativeExponent);
        }
        let mut acc = Scalar::one(field);
        for (s, aj) in self.0.iter().zip(a) {
            if aj.is_zero() && *s > 0 {
                return Ok(Scalar::zero(field));
            }
            if *s != 0 {
                acc = &acc * &aj.pow(*s)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &s) in self.0.iter().enumerate() {
            if s == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if s == 1 {
                write!(f, "t{}", j + 1)?;
            } else {
                write!(f, "t{}^{}", j + 1, s)?;
            }
        }
        Ok(())
    }
}

/// Sparse exact polynomial or Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPoly {
    pub context: VarContext,
    pub field: FieldTag,
    terms: BTreeMap<MultiExp, Scalar>,
}

impl LaurentPoly {
    pub fn zero(context: VarContext, field: FieldTag) -> Self {
        LaurentPoly { context, field, terms: BTreeMap::new() }
    }

    pub fn monomial(context: VarContext, e: MultiExp, c: Scalar) -> Result<Self> {
        if !context.admits(&e) {
            return Err(Error::ContextMismatch);
        }
        let mut p = LaurentPoly::zero(context, c.field());
        p.add_term(e, c);
        Ok(p)
    }

    pub fn add_term(&mut self, e: MultiExp, c: Scalar) {
        assert!(self.context.admits(&e), "exponent outside context");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiExp, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single monomial when the polynomial has exactly one term with
    /// coefficient one.
    pub fn as_monomial(&self) -> Result<&MultiExp> {
        if self.terms.len() != 1 {
            return Err(Error::NotAMonomial);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.is_one() {
            return Err(Error::NotAMonomial);
        }
        Ok(e)
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.context != other.context {
            return Err(Error::ContextMismatch);
        }
        let mut out = LaurentPoly::zero(self.context, self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `true` iff the polynomial vanishes at the origin (only meaningful in
    /// polynomial context): no constant term.
    pub fn vanishes_at_zero(&self) -> bool {
        !self.terms.keys().any(|e| e.is_unit())
    }

    /// `true` iff the polynomial has a term of positive degree.
    pub fn is_nonconstant(&self) -> bool {
        self.terms.keys().any(|e| !e.is_unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTag;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(n, d)
    }

    #[test]
    fn eval_monomial_examples() {
        // t1 * t2^-1 at (2, 4) -> 1/2
        let b = MultiExp(vec![1, -1]);
        let a = [q(2, 1), q(4, 1)];
        assert_eq!(b.eval(&a).unwrap(), q(1, 2));
        // unit monomial
        let one = MultiExp::zero(2);
        assert_eq!(one.eval(&a).unwrap(), q(1, 1));
        // t1^2 t2 at (2, 3) -> 12
        let b2 = MultiExp(vec![2, 1]);
        let a2 = [q(2, 1), q(3, 1)];
        assert_eq!(b2.eval(&a2).unwrap(), q(12, 1));
        // zero at negative exponent
        let a3 = [q(1, 1), q(0, 1)];
        assert!(matches!(b.eval(&a3), Err(Error::ZeroAtNegativeExponent)));
        // zero at a positive exponent is plain zero
        let a4 = [q(0, 1), q(2, 1)];
        assert_eq!(b.eval(&a4).unwrap(), q(0, 1));
    }

    #[test]
    fn primitivity() {
        assert!(!MultiExp(vec![2, -4]).is_primitive());
        assert!(MultiExp(vec![1, 3]).is_primitive());
        assert!(!MultiExp(vec![3]).is_primitive());
        assert!(!MultiExp(vec![0, 0]).is_primitive());
        let (root, k) = MultiExp(vec![2, -4]).primitive_root().unwrap();
        assert_eq!(root, MultiExp(vec![1, -2]));
        assert_eq!(k, 2);
    }

    #[test]
    fn poly_contexts() {
        let ctx = VarContext::Poly(2);
        assert!(ctx.admits(&MultiExp(vec![1, 0])));
        assert!(!ctx.admits(&MultiExp(vec![-1, 0])));
        assert!(VarContext::Laurent(2).admits(&MultiExp(vec![-1, 0])));
        let p = LaurentPoly::monomial(ctx, MultiExp(vec![1, 1]), q(3, 1)).unwrap();
        let r = p.mul(&p).unwrap();
        assert_eq!(r.terms().next().unwrap(), (&MultiExp(vec![2, 2]), &q(9, 1)));
        assert!(LaurentPoly::monomial(ctx, MultiExp(vec![-1, 0]), q(1, 1)).is_err());
    }
}
