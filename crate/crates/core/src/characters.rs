//! Characters of the finite-type Weyl modules: Freudenthal's multiplicity
//! recursion in exact arithmetic, with the alternating-sum form (via the
//! Kostant partition function) retained as a cross-check, plus the Weyl
//! dimension formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::root_data::{RootData, Weight};

pub type Character = BTreeMap<Weight, u64>;

/// Invariant bilinear form, normalized so long roots have square length 2.
/// `nu` is given in simple-root coordinates (rational); `mu` in
/// fundamental-weight coordinates.
fn pair_weight_rootcoords(mu: &Weight, nu: &[BigRational]) -> BigRational {
    mu.0.iter()
        .zip(nu)
        .map(|(&m, c)| c * BigRational::from_integer(BigInt::from(m)))
        .sum()
}

fn to_root_coords(rd: &RootData, w: &Weight) -> Vec<BigRational> {
    let (nums, den) = rd.weight_in_root_coords(w);
    nums.iter()
        .map(|&n| BigRational::new(BigInt::from(n), BigInt::from(den)))
        .collect()
}

/// `(mu, nu)` for two weights in fundamental coordinates.
fn form(rd: &RootData, mu: &Weight, nu: &Weight) -> BigRational {
    pair_weight_rootcoords(mu, &to_root_coords(rd, nu))
}

fn rho(rd: &RootData) -> Weight {
    Weight(vec![1; rd.rank])
}

/// The dominant representative of a weight under the Weyl group.
pub fn dominant_representative(rd: &RootData, w: &Weight) -> Weight {
    for el in &rd.weyl_elements {
        let img = el.apply(w);
        if img.is_dominant() {
            return img;
        }
    }
    unreachable!("every orbit meets the dominant chamber")
}

/// Character of the Weyl module of highest weight `lam` via Freudenthal's
/// recursion.
pub fn weyl_character(rd: &RootData, lam: &Weight) -> Result<Character> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    // dominant weights mu <= lam
    let bound = rd.lam_minus_w0lam_root_coords(lam);
    let mut dominants: Vec<Weight> = Vec::new();
    let mut stack = vec![vec![0i64; rd.rank]];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(c) = stack.pop() {
        if !seen.insert(c.clone()) {
            continue;
        }
        let mut mu = lam.clone();
        for (j, &cj) in c.iter().enumerate() {
            let srw = rd.simple_root_weight(j);
            for i in 0..rd.rank {
                mu.0[i] -= cj * srw.0[i];
            }
        }
        if mu.is_dominant() {
            dominants.push(mu);
        }
        for j in 0..rd.rank {
            if c[j] < bound[j] {
                let mut c2 = c.clone();
                c2[j] += 1;
                stack.push(c2);
            }
        }
    }
    dominants.sort_by_key(|mu| {
        let diff = lam.sub(mu);
        let (nums, den) = rd.weight_in_root_coords(&diff);
        nums.iter().map(|n| n / den).sum::<i64>()
    });
    dominants.dedup();

    let rho_w = rho(rd);
    let lam_rho = lam.add(&rho_w);
    let c_lam = form(rd, &lam_rho, &lam_rho);

    let mut mult: BTreeMap<Weight, BigRational> = BTreeMap::new();
    let pos_root_weights: Vec<Weight> =
        (0..rd.num_positive_roots()).map(|b| rd.root_weight(b)).collect();
    let pos_root_coords: Vec<Vec<BigRational>> = (0..rd.num_positive_roots())
        .map(|b| {
            rd.positive_roots[b]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect()
        })
        .collect();

    for mu in &dominants {
        if mu == lam {
            mult.insert(mu.clone(), BigRational::one());
            continue;
        }
        let mu_rho = mu.add(&rho_w);
        let denom = &c_lam - &form(rd, &mu_rho, &mu_rho);
        let mut rhs = BigRational::zero();
        for (b, beta_w) in pos_root_weights.iter().enumerate() {
            let mut k = 1i64;
            loop {
                let mut nu = mu.clone();
                for i in 0..rd.rank {
                    nu.0[i] += k * beta_w.0[i];
                }
                if !rd.dominance_leq(&nu, lam) {
                    break;
                }
                let dom = dominant_representative(rd, &nu);
                let m_nu = mult.get(&dom).cloned().unwrap_or_else(BigRational::zero);
                if !m_nu.is_zero() {
                    // (mu + k beta, beta)
                    let val = pair_weight_rootcoords(&nu, &pos_root_coords[b]);
                    rhs += val * m_nu;
                }
                k += 1;
            }
        }
        let m = rhs * BigRational::from_integer(BigInt::from(2)) / denom;
        assert!(!m.is_negative() && m.denom().is_one(), "Freudenthal gave {m}");
        if !m.is_zero() {
            mult.insert(mu.clone(), m);
        }
    }

    // expand over Weyl orbits
    let mut out: Character = BTreeMap::new();
    for (mu, m) in mult {
        let m: u64 = m.numer().try_into().expect("multiplicity fits u64");
        if m == 0 {
            continue;
        }
        let mut orbit = std::collections::BTreeSet::new();
        for el in &rd.weyl_elements {
            orbit.insert(el.apply(&mu));
        }
        for nu in orbit {
            out.insert(nu, m);
        }
    }
    Ok(out)
}

/// Kostant partition function: the number of ways to write a vector in
/// simple-root coordinates as a nonnegative integer sum of positive roots.
pub fn kostant_partition(rd: &RootData, v: &[i64]) -> BigInt {
    fn rec(
        rd: &RootData,
        v: Vec<i64>,
        idx: usize,
        memo: &mut BTreeMap<(Vec<i64>, usize), BigInt>,
    ) -> BigInt {
        if v.iter().all(|&x| x == 0) {
            return BigInt::one();
        }
        if idx == rd.num_positive_roots() {
            return BigInt::zero();
        }
        if v.iter().any(|&x| x < 0) {
            return BigInt::zero();
        }
        if let Some(c) = memo.get(&(v.clone(), idx)) {
            return c.clone();
        }
        let beta = &rd.positive_roots[idx];
        let mut acc = BigInt::zero();
        let mut w = v.clone();
        loop {
            acc += rec(rd, w.clone(), idx + 1, memo);
            for (x, b) in w.iter_mut().zip(beta) {
                *x -= b;
            }
            if w.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert((v, idx), acc.clone());
        acc
    }
    rec(rd, v.to_vec(), 0, &mut BTreeMap::new())
}

fn weyl_sign(el: &crate::root_data::WeylElement) -> i64 {
    // determinant of the (rank x rank) integer matrix, rank <= 3
    let m = &el.matrix;
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unimplemented!("rank > 3"),
    }
}

/// Alternating-sum form of the multiplicity (Kostant's formula); the
/// independent cross-check for [`weyl_character`].
pub fn weight_multiplicity_alternating(
    rd: &RootData,
    lam: &Weight,
    mu: &Weight,
) -> Result<BigInt> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    let rho_w = rho(rd);
    let mut acc = BigInt::zero();
    for el in &rd.weyl_elements {
        let arg = el.apply(&lam.add(&rho_w)).sub(&mu.add(&rho_w));
        let (nums, den) = rd.weight_in_root_coords(&arg);
        if nums.iter().any(|&c| c % den != 0 || c / den < 0) {
            continue;
        }
        let v: Vec<i64> = nums.iter().map(|&c| c / den).collect();
        let p = kostant_partition(rd, &v);
        if weyl_sign(el) > 0 {
            acc += p;
        } else {
            acc -= p;
        }
    }
    Ok(acc)
}

/// Product formula for the dimension.
pub fn weyl_dimension(rd: &RootData, lam: &Weight) -> Result<BigInt> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    let rho_w = rho(rd);
    let lam_rho = lam.add(&rho_w);
    let mut num = BigRational::one();
    for b in 0..rd.num_positive_roots() {
        let coords: Vec<BigRational> = rd.positive_roots[b]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        num *= pair_weight_rootcoords(&lam_rho, &coords)
            / pair_weight_rootcoords(&rho_w, &coords);
    }
    assert!(num.denom().is_one());
    Ok(num.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_data, TypeLetter};

    #[test]
    fn sl2_string() {
        let rd = build_root_data(TypeLetter::A, 1).unwrap();
        let ch = weyl_character(&rd, &Weight(vec![2])).unwrap();
        let expect: Character = [
            (Weight(vec![2]), 1),
            (Weight(vec![0]), 1),
            (Weight(vec![-2]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(ch, expect);
    }

    #[test]
    fn a2_defining_rep() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        let ch = weyl_character(&rd, &Weight(vec![1, 0])).unwrap();
        assert_eq!(ch.len(), 3);
        assert!(ch.values().all(|&m| m == 1));
        assert_eq!(weyl_dimension(&rd, &Weight(vec![1, 0])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn a2_adjoint() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        let lam = Weight(vec![1, 1]);
        let ch = weyl_character(&rd, &lam).unwrap();
        let total: u64 = ch.values().sum();
        assert_eq!(total, 8);
        assert_eq!(ch.get(&Weight(vec![0, 0])), Some(&2));
        // alternating-sum oracle agrees on every weight
        for (mu, &m) in &ch {
            let alt = weight_multiplicity_alternating(&rd, &lam, mu).unwrap();
            assert_eq!(alt, BigInt::from(m), "mu = {mu}");
        }
    }

    #[test]
    fn weyl_invariance_and_support() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        let lam = Weight(vec![2, 1]);
        let ch = weyl_character(&rd, &lam).unwrap();
        for el in &rd.weyl_elements {
            for (mu, &m) in &ch {
                assert_eq!(ch.get(&el.apply(mu)), Some(&m));
            }
        }
        // dimension agrees with the product formula
        let total: u64 = ch.values().sum();
        let dim: u64 = weyl_dimension(&rd, &lam).unwrap().try_into().unwrap();
        assert_eq!(total, dim);
        // support characterization: mu in wt iff sigma mu <= lam for all sigma
        for (mu, _) in &ch {
            for el in &rd.weyl_elements {
                assert!(rd.dominance_leq(&el.apply(mu), &lam));
            }
        }
    }

    #[test]
    fn a3_dimension() {
        let rd = build_root_data(TypeLetter::A, 3).unwrap();
        let lam = Weight(vec![1, 0, 1]);
        let ch = weyl_character(&rd, &lam).unwrap();
        let total: u64 = ch.values().sum();
        assert_eq!(total, 15); // adjoint of sl4
    }
}
