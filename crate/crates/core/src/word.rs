//! The Chevalley-word model: elements of the enveloping algebra of a
//! multicurrent/multiloop algebra over Q, represented as rational linear
//! combinations of words in the Lie-algebra basis `x ⊗ t^s`.
//!
//! All straightening happens here. Divided powers enter as rational
//! multiples of ordinary powers and leave through the divided-power basis
//! conversion in `element`; integrality is asserted only at that boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{MultiExp, VarContext};
use crate::root_data::{ChevIdx, RootData};
use crate::series::SeriesCoeff;

/// The ambient algebra: a root system plus a variable context.
#[derive(Clone)]
pub struct AlgebraCtx {
    pub rd: Arc<RootData>,
    pub vars: VarContext,
}

impl AlgebraCtx {
    pub fn new(rd: Arc<RootData>, vars: VarContext) -> Self {
        AlgebraCtx { rd, vars }
    }

    pub fn n(&self) -> usize {
        self.vars.n()
    }

    pub fn same_as(&self, other: &AlgebraCtx) -> bool {
        self.rd.letter == other.rd.letter
            && self.rd.rank == other.rd.rank
            && self.vars == other.vars
    }
}

impl fmt::Debug for AlgebraCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}/{:?}", self.rd.letter, self.rd.rank, self.vars)
    }
}

/// One Lie-algebra basis letter `x ⊗ t^s`.
///
/// The derived `Ord` serves only as a map key; the PBW order is
/// [`Letter::cmp_in`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Low(usize, MultiExp),
    Car(usize, MultiExp),
    Rai(usize, MultiExp),
}

impl Letter {
    pub fn exp(&self) -> &MultiExp {
        match self {
            Letter::Low(_, e) | Letter::Car(_, e) | Letter::Rai(_, e) => e,
        }
    }

    pub fn chev(&self) -> ChevIdx {
        match self {
            Letter::Low(b, _) => ChevIdx::Lower(*b),
            Letter::Car(i, _) => ChevIdx::Cartan(*i),
            Letter::Rai(b, _) => ChevIdx::Raise(*b),
        }
    }

    fn block(&self) -> u8 {
        match self {
            Letter::Low(..) => 0,
            Letter::Car(..) => 1,
            Letter::Rai(..) => 2,
        }
    }

    /// Sort key implementing the global PBW order: lowering block, Cartan
    /// block, raising block; within a root block by (root height, root
    /// index, exponent vector).
    fn key(&self, rd: &RootData) -> (u8, i64, usize, Vec<i64>) {
        match self {
            Letter::Low(b, e) | Letter::Rai(b, e) => {
                (self.block(), rd.root_height(*b), *b, e.0.clone())
            }
            Letter::Car(i, e) => (self.block(), 0, *i, e.0.clone()),
        }
    }

    pub fn cmp_in(&self, other: &Letter, rd: &RootData) -> std::cmp::Ordering {
        self.key(rd).cmp(&other.key(rd))
    }
}

pub type Word = Vec<Letter>;

/// Work caps for straightening. `work` counts worklist pops.
#[derive(Debug, Clone, Copy)]
pub struct StraightenCaps {
    pub max_work: u64,
}

impl Default for StraightenCaps {
    fn default() -> Self {
        StraightenCaps { max_work: 50_000_000 }
    }
}

/// An element of U(g[n]) / U(g<n>) over Q in the word model.
#[derive(Clone)]
pub struct WordElement {
    pub ctx: AlgebraCtx,
    pub terms: BTreeMap<Word, BigRational>,
}

impl PartialEq for WordElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for WordElement {}

impl fmt::Debug for WordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordElement[{} terms]", self.terms.len())
    }
}

impl WordElement {
    pub fn zero(ctx: &AlgebraCtx) -> Self {
        WordElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &AlgebraCtx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigRational::one());
        WordElement { ctx: ctx.clone(), terms }
    }

    pub fn letter(ctx: &AlgebraCtx, l: Letter) -> Self {
        assert!(ctx.vars.admits(l.exp()), "letter exponent outside context");
        let mut terms = BTreeMap::new();
        terms.insert(vec![l], BigRational::one());
        WordElement { ctx: ctx.clone(), terms }
    }

    pub fn from_terms(ctx: &AlgebraCtx, terms: BTreeMap<Word, BigRational>) -> Self {
        WordElement { ctx: ctx.clone(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &WordElement) -> WordElement {
        assert!(self.ctx.same_as(&other.ctx));
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_assign_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WordElement) -> WordElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WordElement {
        WordElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> WordElement {
        if q.is_zero() {
            return WordElement::zero(&self.ctx);
        }
        WordElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect(),
        }
    }

    /// Free (concatenation) product; the result is generally unsorted.
    pub fn concat(&self, other: &WordElement) -> WordElement {
        assert!(self.ctx.same_as(&other.ctx));
        let mut out = WordElement::zero(&self.ctx);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                out.add_assign_term(w, ca * cb);
            }
        }
        out
    }

    /// Product followed by straightening into the PBW word basis.
    pub fn mul(&self, other: &WordElement, caps: &StraightenCaps) -> Result<WordElement> {
        self.concat(other).straighten(caps)
    }

    /// Straighten every term into sorted-word normal form.
    pub fn straighten(&self, caps: &StraightenCaps) -> Result<WordElement> {
        let mut out = WordElement::zero(&self.ctx);
        let mut work: u64 = 0;
        let mut stack: Vec<(Word, BigRational)> =
            self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = stack.pop() {
            work += 1;
            if work > caps.max_work {
                return Err(Error::CapExceeded { what: "straightening work".into() });
            }
            match first_inversion(&w, &self.ctx.rd) {
                None => out.add_assign_term(w, c),
                Some(i) => {
                    // w = u · a b · v with a > b: rewrite as u · b a · v + u · [a,b] · v
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    let bracket =
                        bracket_letters(&self.ctx, &w[i], &w[i + 1]);
                    stack.push((swapped, c.clone()));
                    for (z, k) in bracket {
                        let mut nw = Vec::with_capacity(w.len() - 1);
                        nw.extend(w[..i].iter().cloned());
                        nw.push(z);
                        nw.extend(w[i + 2..].iter().cloned());
                        stack.push((nw, &c * BigRational::from_integer(BigInt::from(k))));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The terms whose words consist only of Cartan letters.
    pub fn cartan_part(&self) -> WordElement {
        WordElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.iter().all(|l| matches!(l, Letter::Car(..))))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

/// First adjacent strict inversion, if any.
fn first_inversion(w: &Word, rd: &RootData) -> Option<usize> {
    (0..w.len().saturating_sub(1))
        .find(|&i| w[i].cmp_in(&w[i + 1], rd) == std::cmp::Ordering::Greater)
}

/// `[a, b] = [x, y] ⊗ t^{s_a + s_b}` expanded in basis letters.
pub fn bracket_letters(ctx: &AlgebraCtx, a: &Letter, b: &Letter) -> Vec<(Letter, i64)> {
    let e = a.exp().mul(b.exp());
    ctx.rd
        .bracket(a.chev(), b.chev())
        .iter()
        .map(|&(z, k)| {
            let l = match z {
                ChevIdx::Lower(r) => Letter::Low(r, e.clone()),
                ChevIdx::Cartan(i) => Letter::Car(i, e.clone()),
                ChevIdx::Raise(r) => Letter::Rai(r, e.clone()),
            };
            (l, k)
        })
        .collect()
}

impl SeriesCoeff for WordElement {
    fn zero_like(&self) -> Self {
        WordElement::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        WordElement::one(&self.ctx)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        // series arithmetic works in the free word algebra; straightening
        // happens once at the end of whatever computation uses the series
        self.concat(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn scale_rat(&self, q: &BigRational) -> Self {
        self.scale(q)
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_data, TypeLetter};

    fn ctx_a1() -> AlgebraCtx {
        AlgebraCtx::new(build_root_data(TypeLetter::A, 1).unwrap(), VarContext::Poly(1))
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sl2_commutator() {
        let ctx = ctx_a1();
        let e = WordElement::letter(&ctx, Letter::Rai(0, MultiExp::zero(1)));
        let f = WordElement::letter(&ctx, Letter::Low(0, MultiExp::zero(1)));
        let caps = StraightenCaps::default();
        // e f = f e + h
        let ef = e.mul(&f, &caps).unwrap();
        let mut expect = WordElement::zero(&ctx);
        expect.add_assign_term(
            vec![Letter::Low(0, MultiExp::zero(1)), Letter::Rai(0, MultiExp::zero(1))],
            rat(1),
        );
        expect.add_assign_term(vec![Letter::Car(0, MultiExp::zero(1))], rat(1));
        assert_eq!(ef, expect);
    }

    #[test]
    fn straighten_idempotent() {
        let ctx = ctx_a1();
        let caps = StraightenCaps::default();
        let e = WordElement::letter(&ctx, Letter::Rai(0, MultiExp(vec![1])));
        let f = WordElement::letter(&ctx, Letter::Low(0, MultiExp(vec![2])));
        let h = WordElement::letter(&ctx, Letter::Car(0, MultiExp(vec![0])));
        let p = e.mul(&f, &caps).unwrap().mul(&h, &caps).unwrap();
        let again = p.straighten(&caps).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn associativity_small() {
        let ctx = ctx_a1();
        let caps = StraightenCaps::default();
        let e = WordElement::letter(&ctx, Letter::Rai(0, MultiExp(vec![0])));
        let f = WordElement::letter(&ctx, Letter::Low(0, MultiExp(vec![1])));
        let h = WordElement::letter(&ctx, Letter::Car(0, MultiExp(vec![2])));
        let lhs = e.mul(&f, &caps).unwrap().mul(&h, &caps).unwrap();
        let rhs = e.mul(&f.mul(&h, &caps).unwrap(), &caps).unwrap();
        assert_eq!(lhs, rhs);
    }
}
