//! n-Drinfeld polynomials: (I × n)-indexed families of polynomials with
//! constant term one, the monoid structure, and the highest-line Cartan
//! functionals they induce.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::MultiExp;
use crate::root_data::{RootData, Weight};
use crate::scalar::{binom_gen_int, FieldTag, Scalar};

/// An n-Drinfeld polynomial: `polys[i][j]` is the coefficient vector of
/// `ω_{i,j}(u)` (constant term first, always 1). For each `i` the degrees
/// agree across `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LWeight {
    pub rank: usize,
    pub n: usize,
    pub field: FieldTag,
    pub polys: Vec<Vec<Vec<Scalar>>>,
}

impl LWeight {
    pub fn new(rank: usize, n: usize, field: FieldTag, polys: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if polys.len() != rank || polys.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("drinfeld shape mismatch".into()));
        }
        for row in &polys {
            let d0 = row.first().map(|p| p.len()).unwrap_or(1);
            for p in row {
                if p.is_empty() || !p[0].is_one() {
                    return Err(Error::InvalidInput("constant term must be 1".into()));
                }
                if p.last().map(|c| c.is_zero()).unwrap_or(false) && p.len() > 1 {
                    return Err(Error::InvalidInput("trailing zero coefficient".into()));
                }
                if p.len() != d0 {
                    return Err(Error::InvalidInput(
                        "degrees must agree across variables for each node".into(),
                    ));
                }
                if p.iter().any(|c| c.field() != field) {
                    return Err(Error::InvalidInput("coefficient field mismatch".into()));
                }
            }
        }
        Ok(LWeight { rank, n, field, polys })
    }

    /// The identity l-weight (all polynomials 1).
    pub fn one(rank: usize, n: usize, field: FieldTag) -> Self {
        LWeight {
            rank,
            n,
            field,
            polys: vec![vec![vec![Scalar::one(field)]; n]; rank],
        }
    }

    pub fn degree(&self, i: usize) -> u64 {
        (self.polys[i][0].len() - 1) as u64
    }

    /// `wt(ω) = sum_i deg(ω_{i,j}) ω_i`.
    pub fn weight(&self) -> Weight {
        Weight((0..self.rank).map(|i| self.degree(i) as i64).collect())
    }

    /// Coordinatewise product.
    pub fn mul(&self, other: &LWeight) -> Result<LWeight> {
        if self.rank != other.rank || self.n != other.n || self.field != other.field {
            return Err(Error::InvalidInput("l-weight shape mismatch".into()));
        }
        let mut polys = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                row.push(poly_mul(&self.polys[i][j], &other.polys[i][j], self.field));
            }
            polys.push(row);
        }
        LWeight::new(self.rank, self.n, self.field, polys)
    }

    /// The l-weight of an evaluation module: `ω_{i,j}(u) = (1 - a_j u)^{λ(h_i)}`.
    pub fn evaluation(lam: &Weight, a: &[Scalar], field: FieldTag) -> Result<LWeight> {
        if a.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroEvalPoint);
        }
        let rank = lam.rank();
        let n = a.len();
        let mut polys = Vec::with_capacity(rank);
        for i in 0..rank {
            let d = lam.0[i];
            if d < 0 {
                return Err(Error::NotDominant);
            }
            let mut row = Vec::with_capacity(n);
            for aj in a {
                row.push(binomial_power(aj, d as u64, field));
            }
            polys.push(row);
        }
        LWeight::new(rank, n, field, polys)
    }

    /// Reconstruct a presentation as a product of evaluation characters:
    /// a list of `(weight, point)` factors with
    /// `ω_{i,j} = prod_m (1 - a_{m,j} u)^{μ_m(h_i)}`, verified by
    /// re-expansion. Requires every polynomial to split over the base
    /// field; point tuples are aligned by sorted root order per node.
    pub fn factor_evaluation_products(&self) -> Result<Vec<(Weight, Vec<Scalar>)>> {
        // roots (inverse roots of (1-γu) factors) per (i, j), sorted
        let mut roots: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut per_j = Vec::with_capacity(self.n);
            for j in 0..self.n {
                let mut r = inverse_roots(&self.polys[i][j], self.field)?;
                r.sort();
                per_j.push(r);
            }
            roots.push(per_j);
        }
        // zip across j per i to form point tuples with multiplicities
        let mut counts: std::collections::BTreeMap<Vec<Scalar>, Vec<i64>> =
            std::collections::BTreeMap::new();
        for i in 0..self.rank {
            let d = self.degree(i) as usize;
            for m in 0..d {
                let tuple: Vec<Scalar> =
                    (0..self.n).map(|j| roots[i][j][m].clone()).collect();
                counts.entry(tuple).or_insert_with(|| vec![0; self.rank])[i] += 1;
            }
        }
        let factors: Vec<(Weight, Vec<Scalar>)> = counts
            .into_iter()
            .map(|(pt, mult)| (Weight(mult), pt))
            .collect();
        // verify by re-expansion
        let regenerated = Self::from_factors(self.rank, self.n, self.field, &factors)?;
        if &regenerated != self {
            return Err(Error::UnsupportedLWeight(
                "no consistent evaluation-product presentation under sorted root alignment"
                    .into(),
            ));
        }
        Ok(factors)
    }

    pub fn from_factors(
        rank: usize,
        n: usize,
        field: FieldTag,
        factors: &[(Weight, Vec<Scalar>)],
    ) -> Result<LWeight> {
        let mut acc = LWeight::one(rank, n, field);
        for (w, pt) in factors {
            acc = acc.mul(&LWeight::evaluation(w, pt, field)?)?;
        }
        Ok(acc)
    }
}

/// `(1 - a u)^d` as a coefficient vector.
fn binomial_power(a: &Scalar, d: u64, field: FieldTag) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(d as usize + 1);
    for r in 0..=d {
        let c = binom_gen_int(&BigInt::from(d), r);
        let sign_a = (-a).pow(r as i64).expect("nonzero");
        out.push(&Scalar::from_bigint(&c, field) * &sign_a);
    }
    out
}

fn poly_mul(a: &[Scalar], b: &[Scalar], field: FieldTag) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// All inverse roots of a polynomial with constant term 1 over its base
/// field, with multiplicity; errors when the polynomial does not split.
pub fn inverse_roots(poly: &[Scalar], field: FieldTag) -> Result<Vec<Scalar>> {
    // ω(u) = prod (1 - γu): γ are the roots of P(z) = z^d ω(1/z)
    let d = poly.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    // P(z) = sum_k poly[k] z^{d-k}, monic
    let mut p: Vec<Scalar> = (0..=d).map(|k| poly[d - k].clone()).collect(); // ascending in z
    let mut roots = Vec::new();
    while p.len() > 1 {
        let gamma = find_root(&p, field)?;
        roots.push(gamma.clone());
        p = deflate(&p, &gamma);
    }
    Ok(roots)
}

fn eval_poly(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(x.field());
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn deflate(p: &[Scalar], root: &Scalar) -> Vec<Scalar> {
    // synthetic division by (z - root); p ascending
    let field = root.field();
    let mut out = vec![Scalar::zero(field); p.len() - 1];
    let mut carry = Scalar::zero(field);
    for k in (0..p.len() - 1).rev() {
        let c = &p[k + 1] + &(&carry * root);
        out[k] = c.clone();
        carry = c;
    }
    debug_assert!((&p[0] + &(&carry * root)).is_zero());
    out
}

fn find_root(p: &[Scalar], field: FieldTag) -> Result<Scalar> {
    match field {
        FieldTag::PrimeField(q) => {
            const TRIAL_CAP: u64 = 100_000;
            if q > TRIAL_CAP {
                return Err(Error::UnsupportedLWeight(format!(
                    "root extraction over F_{q} exceeds the trial cap"
                )));
            }
            for v in 0..q {
                let cand = Scalar::Mod { p: q, v };
                if eval_poly(p, &cand).is_zero() {
                    return Ok(cand);
                }
            }
            Err(Error::NoRootInField(format!("degree-{} polynomial over F_{q}", p.len() - 1)))
        }
        FieldTag::Rationals => {
            // clear denominators to an integer polynomial; candidates are
            // num/den with num | a_0, den | a_lead
            let mut lcm = BigInt::from(1);
            for c in p {
                let r = c.as_rational().unwrap();
                lcm = num_integer::lcm(lcm, r.denom().clone());
            }
            let ints: Vec<BigInt> = p
                .iter()
                .map(|c| {
                    let r = c.as_rational().unwrap();
                    (r * num_rational::BigRational::from_integer(lcm.clone()))
                        .to_integer()
                })
                .collect();
            let a0 = ints
                .iter()
                .find(|c| !num_traits::Zero::is_zero(*c))
                .cloned()
                .unwrap_or_else(|| BigInt::from(0));
            let alead = ints.last().cloned().unwrap();
            let nums = small_divisors(&a0)?;
            let dens = small_divisors(&alead)?;
            // zero root
            if num_traits::Zero::is_zero(&ints[0]) {
                return Ok(Scalar::zero(FieldTag::Rationals));
            }
            for nu in &nums {
                for de in &dens {
                    for sign in [1i64, -1] {
                        let cand = Scalar::Rat(num_rational::BigRational::new(
                            nu * BigInt::from(sign),
                            de.clone(),
                        ));
                        if eval_poly(p, &cand).is_zero() {
                            return Ok(cand);
                        }
                    }
                }
            }
            Err(Error::NoRootInField(format!(
                "degree-{} polynomial over Q",
                p.len() - 1
            )))
        }
    }
}

fn small_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    use num_traits::{Signed, ToPrimitive, Zero};
    if n.is_zero() {
        return Ok(vec![BigInt::from(1)]);
    }
    let abs = n.abs();
    let Some(small) = abs.to_u64() else {
        return Err(Error::UnsupportedLWeight(
            "root candidates exceed the divisor enumeration cap".into(),
        ));
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(small / d));
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The Cartan-block functional on the highest line of a module under
/// construction.
#[derive(Debug, Clone)]
pub enum CartanFunctional {
    /// Graded (and finite-type) case: `h` acts through `lam`, every Λ
    /// generator with a nonconstant monomial acts by zero.
    Graded { lam: Weight },
    /// Product of evaluation characters: `Λ_{β,c}(u)` acts through
    /// `prod_m (1 - c(a_m) u)^{μ_m(h_β)}`.
    EvalProduct { lam: Weight, factors: Vec<(Weight, Vec<Scalar>)> },
}

impl CartanFunctional {
    pub fn weight(&self) -> &Weight {
        match self {
            CartanFunctional::Graded { lam } => lam,
            CartanFunctional::EvalProduct { lam, .. } => lam,
        }
    }

    pub fn for_lweight(omega: &LWeight) -> Result<CartanFunctional> {
        let factors = omega.factor_evaluation_products()?;
        Ok(CartanFunctional::EvalProduct { lam: omega.weight(), factors })
    }

    /// Eigenvalue of `Λ_{β,c,r}` on the highest line, where `β` is given
    /// by its coroot coordinates.
    pub fn val_lambda_coroot(
        &self,
        rd: &RootData,
        coroot: &[i64],
        c: &MultiExp,
        r: u64,
        field: FieldTag,
    ) -> Result<Scalar> {
        if r == 0 {
            return Ok(Scalar::one(field));
        }
        match self {
            CartanFunctional::Graded { .. } => {
                if c.is_unit() {
                    // Λ_{β,1,r} = (-1)^r binom(h_β, r)
                    let lamb = pair_coroot_weight(self.weight(), coroot);
                    let b = binom_gen_int(&BigInt::from(lamb), r);
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    Ok(&Scalar::from_int(sign, field) * &Scalar::from_bigint(&b, field))
                } else {
                    Ok(Scalar::zero(field))
                }
            }
            CartanFunctional::EvalProduct { factors, .. } => {
                let _ = rd;
                // coefficient of u^r in prod_m (1 - c(a_m) u)^{μ_m(h_β)}
                let mut series = vec![Scalar::zero(field); r as usize + 1];
                series[0] = Scalar::one(field);
                for (mu, pt) in factors {
                    let d = pair_coroot_weight(mu, coroot);
                    if d == 0 {
                        continue;
                    }
                    assert!(d > 0, "dominant factor weights");
                    let ca = c.eval(pt)?;
                    // multiply by (1 - ca u)^d truncated
                    let mut factor_poly = Vec::with_capacity(r as usize + 1);
                    for k in 0..=r {
                        let b = binom_gen_int(&BigInt::from(d), k);
                        factor_poly
                            .push(&Scalar::from_bigint(&b, field) * &(-&ca).pow(k as i64)?);
                    }
                    series = truncated_mul(&series, &factor_poly, r as usize, field);
                }
                Ok(series[r as usize].clone())
            }
        }
    }

    /// Eigenvalue of a Cartan-only PBW monomial on the highest line.
    pub fn val_monomial(
        &self,
        rd: &RootData,
        m: &crate::element::PBWMonomial,
        field: FieldTag,
    ) -> Result<Scalar> {
        let mut acc = Scalar::one(field);
        for g in m.factors() {
            let v = match g {
                crate::element::Generator::CartanBinom { i, k } => {
                    let li = self.weight().0[*i];
                    Scalar::from_bigint(&binom_gen_int(&BigInt::from(li), *k), field)
                }
                crate::element::Generator::LambdaGen { i, mono, r } => {
                    let mut coroot = vec![0i64; rd.rank];
                    coroot[*i] = 1;
                    self.val_lambda_coroot(rd, &coroot, mono, *r, field)?
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "val_monomial expects a Cartan-only monomial".into(),
                    ))
                }
            };
            acc = &acc * &v;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        Ok(acc)
    }
}

fn pair_coroot_weight(w: &Weight, coroot: &[i64]) -> i64 {
    w.0.iter().zip(coroot).map(|(a, b)| a * b).sum()
}

fn truncated_mul(a: &[Scalar], b: &[Scalar], order: usize, field: FieldTag) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > order {
                break;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Scalar {
        Scalar::from_int(x, FieldTag::Rationals)
    }

    #[test]
    fn evaluation_lweight_shape() {
        let lam = Weight(vec![2]);
        let a = [q(3)];
        let om = LWeight::evaluation(&lam, &a, FieldTag::Rationals).unwrap();
        // (1 - 3u)^2 = 1 - 6u + 9u^2
        assert_eq!(om.polys[0][0], vec![q(1), q(-6), q(9)]);
        assert_eq!(om.weight(), lam);
    }

    #[test]
    fn factorization_round_trip() {
        let lam = Weight(vec![1, 2]);
        let a = [q(2), q(5)];
        let om = LWeight::evaluation(&lam, &a, FieldTag::Rationals).unwrap();
        let factors = om.factor_evaluation_products().unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0, lam);
        assert_eq!(factors[0].1, vec![q(2), q(5)]);
    }

    #[test]
    fn multi_point_factorization_n1() {
        let lam1 = Weight(vec![1]);
        let om1 = LWeight::evaluation(&lam1, &[q(2)], FieldTag::Rationals).unwrap();
        let om2 = LWeight::evaluation(&lam1, &[q(7)], FieldTag::Rationals).unwrap();
        let om = om1.mul(&om2).unwrap();
        let factors = om.factor_evaluation_products().unwrap();
        assert_eq!(factors.len(), 2);
        assert_eq!(om.weight(), Weight(vec![2]));
    }

    #[test]
    fn prime_field_roots() {
        let lam = Weight(vec![2]);
        let a = [Scalar::Mod { p: 7, v: 3 }];
        let om = LWeight::evaluation(&lam, &a, FieldTag::PrimeField(7)).unwrap();
        let factors = om.factor_evaluation_products().unwrap();
        assert_eq!(factors[0].1, vec![Scalar::Mod { p: 7, v: 3 }]);
    }

    #[test]
    fn eval_functional_values() {
        let rd = crate::root_data::build_root_data(crate::root_data::TypeLetter::A, 1).unwrap();
        let lam = Weight(vec![2]);
        let f = CartanFunctional::EvalProduct {
            lam: lam.clone(),
            factors: vec![(lam.clone(), vec![q(3)])],
        };
        // Λ_{α,t,1} value = -2*3 = -6 (coefficient of u in (1-3u)^2)
        let c = MultiExp(vec![1]);
        let v = f
            .val_lambda_coroot(&rd, &[1], &c, 1, FieldTag::Rationals)
            .unwrap();
        assert_eq!(v, q(-6));
        // order above the weight vanishes
        let v3 = f
            .val_lambda_coroot(&rd, &[1], &c, 3, FieldTag::Rationals)
            .unwrap();
        assert!(v3.is_zero());
    }
}
