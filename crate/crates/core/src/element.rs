//! The divided-power PBW layer: generators, ordered monomials and algebra
//! elements with exact coefficients, plus the conversions to and from the
//! Chevalley-word model.
//!
//! An ordered monomial is a word of [`Generator`]s in the global order:
//! the lowering block, then the Cartan block (binomials before Λ
//! generators), then the raising block, with merge keys strictly
//! increasing inside each block. These monomials form the integral-form
//! basis; [`integral_coordinates`] certifies membership and
//! [`AlgebraElement::specialize`] reduces coordinates mod p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::cartan_basis::{self, PartMono};
use crate::error::{Error, Result};
use crate::laurent::MultiExp;
use crate::scalar::{factorial, FieldTag, Scalar};
use crate::word::{AlgebraCtx, Letter, StraightenCaps, Word, WordElement};

/// A divided-power generator of the integral form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `(x_b^- ⊗ t^s)^(k)`
    LowerDP { root: usize, exp: MultiExp, k: u64 },
    /// `binom(h_i ⊗ 1, k)`
    CartanBinom { i: usize, k: u64 },
    /// `Λ_{i, c, r}` with `c != 1`
    LambdaGen { i: usize, mono: MultiExp, r: u64 },
    /// `(x_b^+ ⊗ t^s)^(k)`
    RaiseDP { root: usize, exp: MultiExp, k: u64 },
}

// The derived order implements the global PBW order: positive roots are
// stored sorted by (height, index), so comparing root indices compares
// (height, index).

impl Generator {
    pub fn lower(root: usize, exp: MultiExp, k: u64) -> Self {
        Generator::LowerDP { root, exp, k }
    }

    pub fn raise(root: usize, exp: MultiExp, k: u64) -> Self {
        Generator::RaiseDP { root, exp, k }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Generator::LowerDP { k, .. } | Generator::RaiseDP { k, .. } => *k,
            _ => 0,
        }
    }

    /// Merge key: generators with equal keys in one block must be merged.
    fn merge_key(&self) -> (u8, usize, Option<&MultiExp>) {
        match self {
            Generator::LowerDP { root, exp, .. } => (0, *root, Some(exp)),
            Generator::CartanBinom { i, .. } => (1, *i, None),
            Generator::LambdaGen { i, mono, .. } => (2, *i, Some(mono)),
            Generator::RaiseDP { root, exp, .. } => (3, *root, Some(exp)),
        }
    }

    pub fn validate(&self, ctx: &AlgebraCtx) -> Result<()> {
        let ok = match self {
            Generator::LowerDP { root, exp, k } | Generator::RaiseDP { root, exp, k } => {
                *root < ctx.rd.num_positive_roots() && ctx.vars.admits(exp) && *k >= 1
            }
            Generator::CartanBinom { i, k } => *i < ctx.rd.rank && *k >= 1,
            Generator::LambdaGen { i, mono, r } => {
                *i < ctx.rd.rank && ctx.vars.admits(mono) && !mono.is_unit() && *r >= 1
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid generator {self}")))
        }
    }
}

fn root_name(ctx: &AlgebraCtx, root: usize) -> String {
    let coords = &ctx.rd.positive_roots[root];
    let mut parts = Vec::new();
    for (j, &c) in coords.iter().enumerate() {
        for _ in 0..c {
            parts.push(format!("a{}", j + 1));
        }
    }
    parts.join("+")
}

impl Generator {
    pub fn display(&self, ctx: &AlgebraCtx) -> String {
        match self {
            Generator::LowerDP { root, exp, k } => {
                let base = format!("xm[{}]({})", root_name(ctx, *root), exp);
                if *k == 1 {
                    base
                } else {
                    format!("{base}^({k})")
                }
            }
            Generator::RaiseDP { root, exp, k } => {
                let base = format!("xp[{}]({})", root_name(ctx, *root), exp);
                if *k == 1 {
                    base
                } else {
                    format!("{base}^({k})")
                }
            }
            Generator::CartanBinom { i, k } => format!("hbin[{},{}]", i + 1, k),
            Generator::LambdaGen { i, mono, r } => format!("L[{},{},{}]", i + 1, mono, r),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // context-free fallback used in error messages
        match self {
            Generator::LowerDP { root, exp, k } => write!(f, "xm[r{root}]({exp})^({k})"),
            Generator::RaiseDP { root, exp, k } => write!(f, "xp[r{root}]({exp})^({k})"),
            Generator::CartanBinom { i, k } => write!(f, "hbin[{},{}]", i + 1, k),
            Generator::LambdaGen { i, mono, r } => write!(f, "L[{},{},{}]", i + 1, mono, r),
        }
    }
}

/// An ordered monomial in the divided-power generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial(Vec<Generator>);

impl PBWMonomial {
    pub fn identity() -> Self {
        PBWMonomial(Vec::new())
    }

    /// Build from a sorted, merged factor list; validates the order.
    pub fn new(factors: Vec<Generator>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput("factors out of order".into()));
            }
            if w[0].merge_key() == w[1].merge_key() {
                return Err(Error::InvalidInput("unmerged adjacent factors".into()));
            }
        }
        Ok(PBWMonomial(factors))
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Total divided-power degree of the x-blocks.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|g| g.degree()).sum()
    }

    pub fn has_raising(&self) -> bool {
        self.0.iter().any(|g| matches!(g, Generator::RaiseDP { .. }))
    }

    pub fn has_lambda(&self) -> bool {
        self.0.iter().any(|g| matches!(g, Generator::LambdaGen { .. }))
    }

    pub fn has_lowering(&self) -> bool {
        self.0.iter().any(|g| matches!(g, Generator::LowerDP { .. }))
    }

    pub fn is_cartan_only(&self) -> bool {
        self.0.iter().all(|g| {
            matches!(g, Generator::CartanBinom { .. } | Generator::LambdaGen { .. })
        })
    }

    pub fn display(&self, ctx: &AlgebraCtx) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|g| g.display(ctx)).collect::<Vec<_>>().join(" ")
    }
}

/// An element of the hyperalgebra in the divided-power basis.
#[derive(Clone)]
pub struct AlgebraElement {
    pub ctx: AlgebraCtx,
    pub field: FieldTag,
    terms: BTreeMap<PBWMonomial, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.field == other.field && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[{}]", self.display())
    }
}

impl AlgebraElement {
    pub fn zero(ctx: &AlgebraCtx, field: FieldTag) -> Self {
        AlgebraElement { ctx: ctx.clone(), field, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &AlgebraCtx, field: FieldTag) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PBWMonomial::identity(), Scalar::one(field));
        AlgebraElement { ctx: ctx.clone(), field, terms }
    }

    pub fn generator(ctx: &AlgebraCtx, field: FieldTag, g: Generator) -> Result<Self> {
        g.validate(ctx)?;
        let mut terms = BTreeMap::new();
        terms.insert(PBWMonomial::new(vec![g])?, Scalar::one(field));
        Ok(AlgebraElement { ctx: ctx.clone(), field, terms })
    }

    pub fn from_terms(
        ctx: &AlgebraCtx,
        field: FieldTag,
        terms: BTreeMap<PBWMonomial, Scalar>,
    ) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AlgebraElement { ctx: ctx.clone(), field, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add_assign_term(&mut self, m: PBWMonomial, c: Scalar) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert!(self.ctx.same_as(&other.ctx) && self.field == other.field);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Scalar::one(other.field)))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(&self.ctx, self.field);
        }
        AlgebraElement {
            ctx: self.ctx.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Canonical textual form in the expression language.
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (sign_neg, mag) = scalar_sign_split(c);
            if idx == 0 {
                if sign_neg {
                    out.push('-');
                }
            } else if sign_neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coef_str = mag;
            if m.is_identity() {
                out.push_str(&coef_str);
            } else if coef_str == "1" {
                out.push_str(&m.display(&self.ctx));
            } else {
                out.push_str(&coef_str);
                out.push(' ');
                out.push_str(&m.display(&self.ctx));
            }
        }
        out
    }
}

/// Split a scalar into (is-negative, magnitude string). Prime-field
/// residues are never negative.
fn scalar_sign_split(c: &Scalar) -> (bool, String) {
    match c {
        Scalar::Rat(r) => {
            if r.is_negative() {
                (true, format!("{}", Scalar::Rat(-r)))
            } else {
                (false, format!("{c}"))
            }
        }
        Scalar::Mod { .. } => (false, format!("{c}")),
    }
}

/// Expand one generator into the word model over Q.
pub fn expand_generator(ctx: &AlgebraCtx, g: &Generator) -> Result<WordElement> {
    g.validate(ctx)?;
    Ok(match g {
        Generator::LowerDP { root, exp, k } => {
            let word: Word = (0..*k).map(|_| Letter::Low(*root, exp.clone())).collect();
            let mut terms = BTreeMap::new();
            terms.insert(word, BigRational::new(BigInt::one(), factorial(*k)));
            WordElement::from_terms(ctx, terms)
        }
        Generator::RaiseDP { root, exp, k } => {
            let word: Word = (0..*k).map(|_| Letter::Rai(*root, exp.clone())).collect();
            let mut terms = BTreeMap::new();
            terms.insert(word, BigRational::new(BigInt::one(), factorial(*k)));
            WordElement::from_terms(ctx, terms)
        }
        Generator::CartanBinom { i, k } => {
            let mut out = WordElement::zero(ctx);
            for (j, c) in cartan_basis::binomial_to_powers(*k) {
                let word: Word =
                    (0..j).map(|_| Letter::Car(*i, MultiExp::zero(ctx.n()))).collect();
                out.add_assign_term(word, c);
            }
            out
        }
        Generator::LambdaGen { i, mono, r } => {
            lambda_cartan_word(ctx, *i, mono, *r)
        }
    })
}

/// `Λ_{i, c, r}` expanded as a word-model polynomial in `h_i ⊗ c^s`.
pub fn lambda_cartan_word(ctx: &AlgebraCtx, i: usize, c: &MultiExp, r: u64) -> WordElement {
    let abstract_poly = cartan_basis::lambda_abstract(1, r as u32);
    let mut out = WordElement::zero(ctx);
    for (mono, coeff) in abstract_poly {
        let mut word: Word = Vec::new();
        for (s, mult) in mono {
            let e = c.pow(s as i64);
            for _ in 0..mult {
                word.push(Letter::Car(i, e.clone()));
            }
        }
        word.sort_by(|a, b| a.cmp_in(b, &ctx.rd));
        out.add_assign_term(word, coeff);
    }
    out
}

/// Convert a straightened word element into the divided-power basis over Q.
pub fn word_to_divided(w: &WordElement) -> Result<BTreeMap<PBWMonomial, BigRational>> {
    let ctx = &w.ctx;
    let mut out: BTreeMap<PBWMonomial, BigRational> = BTreeMap::new();
    for (word, coeff) in w.terms.iter() {
        for (m, c) in sorted_word_to_divided(ctx, word)? {
            let total = c * coeff;
            if total.is_zero() {
                continue;
            }
            match out.entry(m) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(total);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get() + total;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sorted_word_to_divided(
    _ctx: &AlgebraCtx,
    word: &Word,
) -> Result<Vec<(PBWMonomial, BigRational)>> {
    // split blocks
    let mut lower: Vec<(usize, MultiExp, u64)> = Vec::new();
    let mut cartan: BTreeMap<(usize, MultiExp), u64> = BTreeMap::new();
    let mut raise: Vec<(usize, MultiExp, u64)> = Vec::new();
    for l in word {
        match l {
            Letter::Low(b, e) => match lower.last_mut() {
                Some((lb, le, k)) if lb == b && le == e => *k += 1,
                _ => lower.push((*b, e.clone(), 1)),
            },
            Letter::Car(i, e) => *cartan.entry((*i, e.clone())).or_insert(0) += 1,
            Letter::Rai(b, e) => match raise.last_mut() {
                Some((rb, re, k)) if rb == b && re == e => *k += 1,
                _ => raise.push((*b, e.clone(), 1)),
            },
        }
    }
    let mut coeff = BigRational::one();
    let mut lower_gens = Vec::new();
    for (b, e, k) in lower {
        coeff *= BigRational::from_integer(factorial(k));
        lower_gens.push(Generator::LowerDP { root: b, exp: e, k });
    }
    let mut raise_gens = Vec::new();
    for (b, e, k) in raise {
        coeff *= BigRational::from_integer(factorial(k));
        raise_gens.push(Generator::RaiseDP { root: b, exp: e, k });
    }

    // Cartan block: group by (i, unit) and (i, primitive direction)
    #[derive(Default)]
    struct DirGroup {
        parts: BTreeMap<u32, u32>,
    }
    let mut unit_groups: BTreeMap<usize, u64> = BTreeMap::new();
    let mut dir_groups: BTreeMap<(usize, MultiExp), DirGroup> = BTreeMap::new();
    for ((i, e), mult) in cartan {
        if e.is_unit() {
            *unit_groups.entry(i).or_insert(0) += mult;
        } else {
            let (c0, s) = e.primitive_root().expect("nonunit monomial");
            let g = dir_groups.entry((i, c0)).or_default();
            *g.parts.entry(s as u32).or_insert(0) += mult as u32;
        }
    }

    // per-group alternative expansions, then the cross product
    // each alternative: (list of generators, rational coefficient)
    let mut group_options: Vec<Vec<(Vec<Generator>, BigRational)>> = Vec::new();
    for (i, m) in unit_groups {
        let opts = cartan_basis::power_to_binomials(m)
            .into_iter()
            .map(|(k, c)| {
                let gens = if k == 0 {
                    Vec::new()
                } else {
                    vec![Generator::CartanBinom { i, k }]
                };
                (gens, BigRational::from_integer(c))
            })
            .collect();
        group_options.push(opts);
    }
    for ((i, c0), g) in dir_groups {
        let sigma: PartMono = g.parts.into_iter().collect();
        let gr = cartan_basis::grade(&sigma);
        let table = cartan_basis::grade_table(gr);
        let si = *table.index.get(&sigma).expect("partition in its graded piece");
        let mut opts = Vec::new();
        for (pi_i, pi) in table.monos.iter().enumerate() {
            let c = &table.mono_in_lambda[si][pi_i];
            if c.is_zero() {
                continue;
            }
            let gens: Vec<Generator> = pi
                .iter()
                .map(|(k, r)| Generator::LambdaGen {
                    i,
                    mono: c0.pow(*k as i64),
                    r: *r as u64,
                })
                .collect();
            opts.push((gens, c.clone()));
        }
        group_options.push(opts);
    }

    // cross product across groups
    let mut combos: Vec<(Vec<Generator>, BigRational)> = vec![(Vec::new(), coeff)];
    for opts in group_options {
        let mut next = Vec::with_capacity(combos.len() * opts.len());
        for (gens, c) in &combos {
            for (og, oc) in &opts {
                let mut g2 = gens.clone();
                g2.extend(og.iter().cloned());
                next.push((g2, c * oc));
            }
        }
        combos = next;
    }

    let mut out = Vec::with_capacity(combos.len());
    for (cartan_gens, c) in combos {
        let mut factors = lower_gens.clone();
        let mut cg = cartan_gens;
        cg.sort();
        factors.extend(cg);
        factors.extend(raise_gens.iter().cloned());
        out.push((PBWMonomial::new(factors)?, c));
    }
    Ok(out)
}

/// Normal form of a free product of generators, over the requested field.
///
/// The computation runs over Q in the word model; for a prime field the
/// resulting coordinates are integral (the generators generate the
/// integral form) and are reduced mod p.
pub fn pbw_normal_form(
    ctx: &AlgebraCtx,
    field: FieldTag,
    gens: &[Generator],
    caps: &StraightenCaps,
) -> Result<AlgebraElement> {
    let mut acc = WordElement::one(ctx);
    for g in gens {
        acc = acc.concat(&expand_generator(ctx, g)?);
    }
    let nf = acc.straighten(caps)?;
    let divided = word_to_divided(&nf)?;
    rational_terms_into_field(ctx, field, divided)
}

/// Map exact rational divided coordinates into the target field.
pub fn rational_terms_into_field(
    ctx: &AlgebraCtx,
    field: FieldTag,
    terms: BTreeMap<PBWMonomial, BigRational>,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(ctx, field);
    for (m, c) in terms {
        let s = match field {
            FieldTag::Rationals => Scalar::Rat(c),
            FieldTag::PrimeField(p) => crate::scalar::specialize_scalar(&Scalar::Rat(c), p)
                .map_err(|_| Error::NonIntegral {
                    monomial: m.display(ctx),
                    coeff: "non p-integral".into(),
                })?,
        };
        out.add_assign_term(m, s);
    }
    Ok(out)
}

impl AlgebraElement {
    /// Expand into the word model. Only available over Q.
    pub fn to_word_element(&self) -> Result<WordElement> {
        let mut out = WordElement::zero(&self.ctx);
        for (m, c) in &self.terms {
            let q = c
                .as_rational()
                .ok_or(Error::CharPositiveUnsupported)?
                .clone();
            let mut acc = WordElement::one(&self.ctx);
            for g in m.factors() {
                acc = acc.concat(&expand_generator(&self.ctx, g)?);
            }
            out = out.add(&acc.scale(&q));
        }
        Ok(out)
    }

    /// Product in the hyperalgebra. Structure constants are computed over
    /// Q in the word model and are integral; coefficients multiply in the
    /// element field.
    pub fn multiply(&self, other: &AlgebraElement, caps: &StraightenCaps) -> Result<AlgebraElement> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        assert_eq!(self.field, other.field);
        let mut out = AlgebraElement::zero(&self.ctx, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let structure = monomial_product_structure(&self.ctx, ma, mb, caps)?;
                let cab = ca * cb;
                for (m, k) in structure {
                    out.add_assign_term(m, &cab * &Scalar::from_bigint(&k, self.field));
                }
            }
        }
        Ok(out)
    }

    /// Certified integral coordinates in the divided-power basis.
    pub fn integral_coordinates(&self) -> Result<BTreeMap<PBWMonomial, BigInt>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            match c.as_integer() {
                Some(z) => {
                    out.insert(m.clone(), z);
                }
                None => {
                    return Err(Error::NonIntegral {
                        monomial: m.display(&self.ctx),
                        coeff: format!("{c}"),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Reduce certified-integral coordinates mod p.
    pub fn specialize(&self, p: u64) -> Result<AlgebraElement> {
        FieldTag::PrimeField(p).validate()?;
        let coords = self.integral_coordinates()?;
        let field = FieldTag::PrimeField(p);
        let mut out = AlgebraElement::zero(&self.ctx, field);
        for (m, z) in coords {
            out.add_assign_term(m, Scalar::from_bigint(&z, field));
        }
        Ok(out)
    }
}

/// Product of two basis monomials expanded in the basis: always integer
/// coordinates (the basis spans the integral form, which is closed under
/// multiplication).
pub fn monomial_product_structure(
    ctx: &AlgebraCtx,
    a: &PBWMonomial,
    b: &PBWMonomial,
    caps: &StraightenCaps,
) -> Result<Vec<(PBWMonomial, BigInt)>> {
    let mut acc = WordElement::one(ctx);
    for g in a.factors().iter().chain(b.factors()) {
        acc = acc.concat(&expand_generator(ctx, g)?);
    }
    let nf = acc.straighten(caps)?;
    let divided = word_to_divided(&nf)?;
    let mut out = Vec::with_capacity(divided.len());
    for (m, c) in divided {
        if !c.denom().is_one() {
            return Err(Error::NonIntegral {
                monomial: m.display(ctx),
                coeff: format!("{c}"),
            });
        }
        out.push((m, c.numer().clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarContext;
    use crate::root_data::{build_root_data, TypeLetter};

    fn ctx_a1(n: usize) -> AlgebraCtx {
        AlgebraCtx::new(build_root_data(TypeLetter::A, 1).unwrap(), VarContext::Poly(n))
    }

    fn caps() -> StraightenCaps {
        StraightenCaps::default()
    }

    #[test]
    fn raise_lower_normal_form() {
        // x+ x- = x- x+ + binom(h, 1)
        let ctx = ctx_a1(1);
        let e0 = MultiExp::zero(1);
        let word = vec![
            Generator::raise(0, e0.clone(), 1),
            Generator::lower(0, e0.clone(), 1),
        ];
        let nf = pbw_normal_form(&ctx, FieldTag::Rationals, &word, &caps()).unwrap();
        let expect_m1 = PBWMonomial::new(vec![
            Generator::lower(0, e0.clone(), 1),
            Generator::raise(0, e0.clone(), 1),
        ])
        .unwrap();
        let expect_m2 = PBWMonomial::new(vec![Generator::CartanBinom { i: 0, k: 1 }]).unwrap();
        assert_eq!(nf.num_terms(), 2);
        assert!(nf.coeff(&expect_m1).is_one());
        assert!(nf.coeff(&expect_m2).is_one());
    }

    #[test]
    fn merge_divided_powers() {
        // x-(s) x-(s) = 2 (x-(s))^(2)
        let ctx = ctx_a1(1);
        let s = MultiExp(vec![1]);
        let word = vec![Generator::lower(0, s.clone(), 1), Generator::lower(0, s.clone(), 1)];
        let nf = pbw_normal_form(&ctx, FieldTag::Rationals, &word, &caps()).unwrap();
        let expect = PBWMonomial::new(vec![Generator::lower(0, s.clone(), 2)]).unwrap();
        assert_eq!(nf.num_terms(), 1);
        assert_eq!(nf.coeff(&expect), Scalar::from_int(2, FieldTag::Rationals));
    }

    #[test]
    fn empty_word_is_identity() {
        let ctx = ctx_a1(1);
        let nf = pbw_normal_form(&ctx, FieldTag::Rationals, &[], &caps()).unwrap();
        assert_eq!(nf, AlgebraElement::one(&ctx, FieldTag::Rationals));
    }

    #[test]
    fn lambda_generator_round_trip() {
        // the normal form of the single generator Λ_{i,c,r} is itself for
        // primitive c
        let ctx = AlgebraCtx::new(
            build_root_data(TypeLetter::A, 1).unwrap(),
            VarContext::Laurent(2),
        );
        let c = MultiExp(vec![2, -1]);
        assert!(c.is_primitive());
        let g = Generator::LambdaGen { i: 0, mono: c.clone(), r: 2 };
        let nf = pbw_normal_form(&ctx, FieldTag::Rationals, &[g.clone()], &caps()).unwrap();
        assert_eq!(nf.num_terms(), 1);
        assert!(nf.coeff(&PBWMonomial::new(vec![g]).unwrap()).is_one());
    }

    #[test]
    fn lambda_power_monomial_conversion() {
        // Λ_{i,c^2,1} = -(h⊗c^2) = Λ_{i,c,1}^2 ... as basis combination:
        // y_{c^2} = -Λ_{c^2,1}; y_c^2 = 2Λ_{c,2} - Λ_{c^2,1}
        let ctx = ctx_a1(2);
        let c = MultiExp(vec![1, 0]);
        let c2 = c.pow(2);
        let g = Generator::LambdaGen { i: 0, mono: c2.clone(), r: 1 };
        let nf = pbw_normal_form(&ctx, FieldTag::Rationals, &[g.clone()], &caps()).unwrap();
        // already a basis monomial
        assert_eq!(nf.num_terms(), 1);
        // and the ordinary square of Λ_{c,1} is 2Λ_{c,2} - Λ_{c^2,1}
        let l1 = Generator::LambdaGen { i: 0, mono: c.clone(), r: 1 };
        let sq = pbw_normal_form(&ctx, FieldTag::Rationals, &[l1.clone(), l1], &caps()).unwrap();
        let m_l2 = PBWMonomial::new(vec![Generator::LambdaGen { i: 0, mono: c, r: 2 }]).unwrap();
        let m_c2 = PBWMonomial::new(vec![g]).unwrap();
        assert_eq!(sq.coeff(&m_l2), Scalar::from_int(2, FieldTag::Rationals));
        assert_eq!(sq.coeff(&m_c2), Scalar::from_int(-1, FieldTag::Rationals));
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn specialize_examples() {
        let ctx = ctx_a1(1);
        let s = MultiExp(vec![0]);
        // 2 (x-)^(2) mod 2 = 0
        let g = Generator::lower(0, s.clone(), 2);
        let el = AlgebraElement::generator(&ctx, FieldTag::Rationals, g).unwrap();
        let doubled = el.scale(&Scalar::from_int(2, FieldTag::Rationals));
        assert!(doubled.specialize(2).unwrap().is_zero());
        // (1/2) identity is not integral
        let half = AlgebraElement::one(&ctx, FieldTag::Rationals)
            .scale(&Scalar::from_rational(1, 2));
        assert!(matches!(half.integral_coordinates(), Err(Error::NonIntegral { .. })));
    }
}
