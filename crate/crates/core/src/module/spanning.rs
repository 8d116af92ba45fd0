//! Spanning labels: admissible monomials of lowering divided powers
//! applied to the cyclic vector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::MultiExp;
use crate::root_data::{RootData, Weight};

/// Which universal module is being built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    FiniteType,
    Graded,
    Loop,
}

/// One lowering factor `(x_β^- ⊗ t^s)^(k)`.
pub type LowerFactor = (usize, MultiExp, u64);

/// An admissible multiset of lowering factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpanningLabel(pub Vec<LowerFactor>);

impl SpanningLabel {
    pub fn empty() -> Self {
        SpanningLabel(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ - sum k_j β_j` in fundamental coordinates.
    pub fn weight(&self, rd: &RootData, lam: &Weight) -> Weight {
        let mut w = lam.clone();
        for (b, _, k) in &self.0 {
            let rw = rd.root_weight(*b);
            for i in 0..rd.rank {
                w.0[i] -= (*k as i64) * rw.0[i];
            }
        }
        w
    }

    /// Total t-degree (for the grading of graded modules).
    pub fn t_degree(&self, n: usize) -> MultiExp {
        let mut d = MultiExp::zero(n);
        for (_, s, k) in &self.0 {
            for (acc, &x) in d.0.iter_mut().zip(&s.0) {
                *acc += (*k as i64) * x;
            }
        }
        d
    }

    pub fn total_power(&self) -> u64 {
        self.0.iter().map(|(_, _, k)| *k).sum()
    }
}

/// Enumerate the admissible spanning labels for highest weight `lam`:
/// per factor `0 <= min(s) <= max(s) < λ(h_β)`, total
/// `sum k_j β_j <= λ - w0 λ` in the dominance order, and the last factor
/// in canonical order must survive direct application to the highest
/// vector (`k <= λ(h_β)`). Deterministic order.
pub fn enumerate_spanning(
    rd: &RootData,
    lam: &Weight,
    n: usize,
) -> Result<Vec<SpanningLabel>> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    let bound = rd.lam_minus_w0lam_root_coords(lam);
    // factor pool in canonical (root, exponent) order
    let mut pool: Vec<(usize, MultiExp)> = Vec::new();
    for b in 0..rd.num_positive_roots() {
        let lb = rd.pair_coroot(lam, b);
        if lb <= 0 {
            continue;
        }
        for s in exponent_box(n, lb) {
            pool.push((b, s));
        }
    }

    let mut out = Vec::new();
    let mut current: Vec<LowerFactor> = Vec::new();
    let mut budget = bound.clone();
    enumerate_rec(rd, lam, &pool, 0, &mut current, &mut budget, &mut out);
    out.sort();
    Ok(out)
}

fn exponent_box(n: usize, upper: i64) -> Vec<MultiExp> {
    // all s in [0, upper-1]^n, lexicographic
    let mut out = vec![MultiExp::zero(n)];
    for j in 0..n {
        let mut next = Vec::with_capacity(out.len() * upper as usize);
        for e in &out {
            for v in 0..upper {
                let mut e2 = e.clone();
                e2.0[j] = v;
                next.push(e2);
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn enumerate_rec(
    rd: &RootData,
    lam: &Weight,
    pool: &[(usize, MultiExp)],
    idx: usize,
    current: &mut Vec<LowerFactor>,
    budget: &mut Vec<i64>,
    out: &mut Vec<SpanningLabel>,
) {
    // the label formed so far is admissible if its last factor survives on
    // the highest vector
    let last_ok = match current.last() {
        None => true,
        Some((b, _, k)) => (*k as i64) <= rd.pair_coroot(lam, *b),
    };
    if last_ok {
        out.push(SpanningLabel(current.clone()));
    }
    if idx == pool.len() {
        return;
    }
    // skip this pool entry
    enumerate_rec(rd, lam, pool, idx + 1, current, budget, out);
    // or take it with power k >= 1 while the weight budget allows
    let (b, s) = &pool[idx];
    let coords = rd.positive_roots[*b].clone();
    let mut k = 0u64;
    loop {
        k += 1;
        for (bud, c) in budget.iter_mut().zip(&coords) {
            *bud -= c;
        }
        if budget.iter().any(|&x| x < 0) {
            // restore and stop
            for (bud, c) in budget.iter_mut().zip(&coords) {
                *bud += c;
            }
            for _ in 1..k {
                for (bud, c) in budget.iter_mut().zip(&coords) {
                    *bud += c;
                }
            }
            return;
        }
        current.push((*b, s.clone(), k));
        enumerate_rec(rd, lam, pool, idx + 1, current, budget, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_data, TypeLetter};

    #[test]
    fn a1_m1() {
        let rd = build_root_data(TypeLetter::A, 1).unwrap();
        let labels = enumerate_spanning(&rd, &Weight(vec![1]), 1).unwrap();
        assert_eq!(labels.len(), 2);
        assert!(labels.contains(&SpanningLabel::empty()));
        assert!(labels.contains(&SpanningLabel(vec![(0, MultiExp(vec![0]), 1)])));
    }

    #[test]
    fn zero_weight() {
        let rd = build_root_data(TypeLetter::A, 1).unwrap();
        let labels = enumerate_spanning(&rd, &Weight(vec![0]), 1).unwrap();
        assert_eq!(labels, vec![SpanningLabel::empty()]);
    }

    #[test]
    fn a1_m2() {
        let rd = build_root_data(TypeLetter::A, 1).unwrap();
        let labels = enumerate_spanning(&rd, &Weight(vec![2]), 1).unwrap();
        // multisets over exponents {0,1} of size <= 2
        assert_eq!(labels.len(), 6);
    }

    #[test]
    fn a2_fundamental() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        let labels = enumerate_spanning(&rd, &Weight(vec![1, 0]), 0).unwrap();
        // empty, x_{α1}^-, x_θ^- (α2 has pairing zero)
        assert_eq!(labels.len(), 3);
    }

    #[test]
    fn finite_type_no_variables() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        let labels = enumerate_spanning(&rd, &Weight(vec![1, 1]), 0).unwrap();
        assert_eq!(labels.len(), 10);
    }
}
