//! Change of basis inside the commutative Cartan block.
//!
//! Per Cartan generator `h_i` and primitive monomial direction `c`, the
//! polynomial ring Q[h_i⊗c, h_i⊗c^2, ...] carries two bases: ordinary
//! monomials, and products of the divided generators (one Λ factor per
//! power of `c`, with the Λ order recording the multiplicity). The
//! transition matrices are universal: graded pieces are indexed by integer
//! partitions and the entries do not depend on `i`, `c` or the variable
//! count. They are computed once per grade and cached.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use crate::scalar::{factorial, stirling_first, stirling_second};

/// A monomial in abstract variables `z_1, z_2, ...` where `z_s` stands for
/// `h⊗c^s`; sorted `(s, multiplicity)` pairs. Interpreted as a partition
/// with parts `s`, each with the given multiplicity; the grade is
/// `sum s * mult`.
pub type PartMono = Vec<(u32, u32)>;

/// A polynomial in the abstract variables.
pub type AbstractPoly = BTreeMap<PartMono, BigRational>;

pub fn grade(m: &PartMono) -> u32 {
    m.iter().map(|(s, k)| s * k).sum()
}

fn poly_add_term(p: &mut AbstractPoly, m: PartMono, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match p.entry(m) {
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

fn mono_mul(a: &PartMono, b: &PartMono) -> PartMono {
    let mut map: BTreeMap<u32, u32> = a.iter().copied().collect();
    for (s, k) in b {
        *map.entry(*s).or_insert(0) += k;
    }
    map.into_iter().collect()
}

pub fn poly_mul(a: &AbstractPoly, b: &AbstractPoly) -> AbstractPoly {
    let mut out = AbstractPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            poly_add_term(&mut out, mono_mul(ma, mb), ca * cb);
        }
    }
    out
}

pub fn poly_one() -> AbstractPoly {
    let mut p = AbstractPoly::new();
    p.insert(Vec::new(), BigRational::one());
    p
}

/// `Λ_{c^k, r}` as a polynomial in the abstract variables: the coefficient
/// of `u^r` in `exp(-sum_s z_{ks} u^s / s)`, computed by the derivative
/// recursion `r Λ_r = -sum_{s=1}^{r} z_{ks} Λ_{r-s}`.
pub fn lambda_abstract(k: u32, r: u32) -> AbstractPoly {
    let mut lam: Vec<AbstractPoly> = vec![poly_one()];
    for rr in 1..=r {
        let mut acc = AbstractPoly::new();
        for s in 1..=rr {
            let var: PartMono = vec![(k * s, 1)];
            for (m, c) in &lam[(rr - s) as usize] {
                poly_add_term(&mut acc, mono_mul(m, &var), c.clone());
            }
        }
        let scale = BigRational::new(BigInt::from(-1), BigInt::from(rr));
        let acc: AbstractPoly = acc.into_iter().map(|(m, c)| (m, c * &scale)).collect();
        lam.push(acc);
    }
    lam.pop().unwrap()
}

/// All partitions of `g` as sorted `(part, mult)` vectors, in
/// lexicographic order of their expanded part lists.
pub fn partitions(g: u32) -> Vec<PartMono> {
    fn rec(g: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if g == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(g)).rev() {
            cur.push(p);
            rec(g - p, p, cur, out);
            cur.pop();
        }
    }
    let mut lists = Vec::new();
    rec(g, g, &mut Vec::new(), &mut lists);
    lists
        .into_iter()
        .map(|parts| {
            let mut map: BTreeMap<u32, u32> = BTreeMap::new();
            for p in parts {
                *map.entry(p).or_insert(0) += 1;
            }
            map.into_iter().collect()
        })
        .collect()
}

/// Transition data for one grade: ordinary monomials (partition-indexed)
/// expressed in the Λ-product basis (also partition-indexed: the partition
/// with multiplicity `r_k` on part `k` stands for `prod_k Λ_{c^k, r_k}`).
pub struct GradeTable {
    pub monos: Vec<PartMono>,
    pub index: BTreeMap<PartMono, usize>,
    /// `mono_in_lambda[σ][π]`: coefficient of Λ-product `π` in monomial `σ`.
    pub mono_in_lambda: Vec<Vec<BigRational>>,
}

static TABLES: OnceLock<Mutex<BTreeMap<u32, &'static GradeTable>>> = OnceLock::new();

/// The cached table for a grade. Tables are small (partition counts) and
/// leaked intentionally.
pub fn grade_table(g: u32) -> &'static GradeTable {
    let lock = TABLES.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut map = lock.lock().unwrap();
    if let Some(t) = map.get(&g) {
        return t;
    }
    let t: &'static GradeTable = Box::leak(Box::new(build_grade_table(g)));
    map.insert(g, t);
    t
}

/// Λ-product for a partition: `prod_k Λ_{c^k, r_k}` expanded in ordinary
/// monomials.
fn lambda_product(pi: &PartMono) -> AbstractPoly {
    let mut acc = poly_one();
    for (k, r) in pi {
        acc = poly_mul(&acc, &lambda_abstract(*k, *r));
    }
    acc
}

fn build_grade_table(g: u32) -> GradeTable {
    let monos = partitions(g);
    let idx: BTreeMap<&PartMono, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = monos.len();
    // M[pi][sigma] = coeff of monomial sigma in Λ-product pi
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (pi_i, pi) in monos.iter().enumerate() {
        for (mono, c) in lambda_product(pi) {
            let si = *idx.get(&mono).expect("graded piece closed under products");
            m[pi_i][si] = c;
        }
    }
    // invert by exact Gauss-Jordan: solve X * M = I, i.e. express each
    // monomial sigma as a combination of Λ-products.
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            let mut id = vec![BigRational::zero(); n];
            id[i] = BigRational::one();
            row.extend(id);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero()).expect("singular grade table");
        aug.swap(col, piv);
        let pv = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = &*x / &pv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for cidx in 0..2 * n {
                    let sub = &aug[col][cidx] * &f;
                    aug[r][cidx] = &aug[r][cidx] - &sub;
                }
            }
        }
    }
    // aug now holds M^{-1} on the right. With L[pi] = sum_sigma
    // M[pi][sigma] Z[sigma], the monomials are Z = M^{-1} L, so the
    // coefficient of Λ-product pi in monomial sigma is M^{-1}[sigma][pi].
    let mut mono_in_lambda = vec![vec![BigRational::zero(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for sigma in 0..n {
        for pi in 0..n {
            mono_in_lambda[sigma][pi] = aug[sigma][n + pi].clone();
        }
    }
    let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    GradeTable { monos, index, mono_in_lambda }
}

/// Transition data expressing grade-`g` monomials in the basis of products
/// of base-direction Λ's: the partition with multiplicity `n_s` on part `s`
/// stands for `prod_s Λ_{c, s}^{n_s}`.
pub struct PowerTable {
    pub monos: Vec<PartMono>,
    pub index: BTreeMap<PartMono, usize>,
    pub mono_in_epowers: Vec<Vec<BigRational>>,
}

static POWER_TABLES: OnceLock<Mutex<BTreeMap<u32, &'static PowerTable>>> = OnceLock::new();

pub fn power_table(g: u32) -> &'static PowerTable {
    let lock = POWER_TABLES.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut map = lock.lock().unwrap();
    if let Some(t) = map.get(&g) {
        return t;
    }
    let t: &'static PowerTable = Box::leak(Box::new(build_power_table(g)));
    map.insert(g, t);
    t
}

fn build_power_table(g: u32) -> PowerTable {
    let monos = partitions(g);
    let idx: BTreeMap<&PartMono, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = monos.len();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (pi_i, pi) in monos.iter().enumerate() {
        // prod_s Λ_{c,s}^{n_s}
        let mut acc = poly_one();
        for (s, mult) in pi {
            let base = lambda_abstract(1, *s);
            for _ in 0..*mult {
                acc = poly_mul(&acc, &base);
            }
        }
        for (mono, c) in acc {
            let si = *idx.get(&mono).expect("graded piece closed");
            m[pi_i][si] = c;
        }
    }
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            let mut id = vec![BigRational::zero(); n];
            id[i] = BigRational::one();
            row.extend(id);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero()).expect("singular power table");
        aug.swap(col, piv);
        let pv = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = &*x / &pv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for cidx in 0..2 * n {
                    let sub = &aug[col][cidx] * &f;
                    aug[r][cidx] = &aug[r][cidx] - &sub;
                }
            }
        }
    }
    let mut mono_in_epowers = vec![vec![BigRational::zero(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for sigma in 0..n {
        for pi in 0..n {
            mono_in_epowers[sigma][pi] = aug[sigma][n + pi].clone();
        }
    }
    let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    PowerTable { monos, index, mono_in_epowers }
}

/// Express `h^m` in the binomial basis: `h^m = sum_k S2(m,k) k! binom(h,k)`.
pub fn power_to_binomials(m: u64) -> Vec<(u64, BigInt)> {
    stirling_second(m)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u64, c * factorial(k as u64)))
        .collect()
}

/// Express `binom(h, k)` as a polynomial in `h`: coefficients of
/// `h^j` are `s1(k, j) / k!`.
pub fn binomial_to_powers(k: u64) -> Vec<(u64, BigRational)> {
    let den = factorial(k);
    stirling_first(k)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j as u64, BigRational::new(c, den.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lambda_abstract_small() {
        // Λ_{c,1} = -z_1
        let l1 = lambda_abstract(1, 1);
        assert_eq!(l1.len(), 1);
        assert_eq!(l1.get(&vec![(1u32, 1u32)]), Some(&rat(-1, 1)));
        // Λ_{c,2} = z_1^2/2 - z_2/2
        let l2 = lambda_abstract(1, 2);
        assert_eq!(l2.get(&vec![(1, 2)]), Some(&rat(1, 2)));
        assert_eq!(l2.get(&vec![(2, 1)]), Some(&rat(-1, 2)));
        // Λ_{c^2,1} = -z_2
        let l21 = lambda_abstract(2, 1);
        assert_eq!(l21.get(&vec![(2, 1)]), Some(&rat(-1, 1)));
    }

    #[test]
    fn grade_two_inverse() {
        let t = grade_table(2);
        // monomials: partitions of 2 in lex order of expanded lists,
        // [1,1] (z_1^2) and [2] (z_2) in some order
        let z11 = vec![(1u32, 2u32)];
        let z2 = vec![(2u32, 1u32)];
        let i11 = t.monos.iter().position(|m| *m == z11).unwrap();
        let i2 = t.monos.iter().position(|m| *m == z2).unwrap();
        // z_1^2 = 2 Λ_{c,2} - Λ_{c^2,1}: coefficient on partition [1,1]
        // (Λ_{c,2}) is 2, on [2] (Λ_{c^2,1}) is -1
        assert_eq!(t.mono_in_lambda[i11][i11], rat(2, 1));
        assert_eq!(t.mono_in_lambda[i11][i2], rat(-1, 1));
        // z_2 = -Λ_{c^2,1}
        assert_eq!(t.mono_in_lambda[i2][i2], rat(-1, 1));
        assert_eq!(t.mono_in_lambda[i2][i11], rat(0, 1));
    }

    #[test]
    fn round_trip_grade_four() {
        // expanding the claimed combination reproduces each monomial
        let t = grade_table(4);
        for (si, sigma) in t.monos.iter().enumerate() {
            let mut acc = AbstractPoly::new();
            for (pi_i, pi) in t.monos.iter().enumerate() {
                let c = &t.mono_in_lambda[si][pi_i];
                if c.is_zero() {
                    continue;
                }
                for (m, k) in lambda_product(pi) {
                    poly_add_term(&mut acc, m, k * c);
                }
            }
            assert_eq!(acc.len(), 1, "monomial {sigma:?}");
            assert_eq!(acc.get(sigma), Some(&BigRational::one()));
        }
    }

    #[test]
    fn binomial_conversions() {
        // h^2 = binom(h,1) + 2 binom(h,2)
        let p = power_to_binomials(2);
        assert_eq!(p, vec![(1, BigInt::from(1)), (2, BigInt::from(2))]);
        // binom(h,2) = (h^2 - h)/2
        let b = binomial_to_powers(2);
        assert_eq!(b, vec![(1, rat(-1, 2)), (2, rat(1, 2))]);
    }
}
