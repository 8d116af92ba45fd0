//! Chevalley-basis data for a fixed simple Lie type: roots, Cartan
//! integers, structure constants, Weyl group, longest element and highest
//! root, plus weight-lattice arithmetic.
//!
//! The architecture is type-generic (everything downstream consumes the
//! tables stored here), the shipped builders cover types A1, A2, A3. The
//! structure constants come from the trace-zero matrix realization; the
//! resulting sign convention (`N = +1` on extraspecial pairs in
//! height-then-index root order) is frozen by golden tests. All invariants
//! — antisymmetry, the Jacobi identity, `[x_a^+, x_a^-] = h_a`, integrality
//! — are verified exhaustively at construction time.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Index into the Chevalley basis `{x_b^-, h_i, x_b^+}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChevIdx {
    Lower(usize),
    Cartan(usize),
    Raise(usize),
}

/// A weight in fundamental-weight coordinates: entry `i` is the value on
/// the simple coroot `h_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A Weyl group element stored as its integer matrix action on
/// fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(m, c)| m * c).sum())
                .collect(),
        )
    }

    fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.matrix.len();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] += self.matrix[i][k] * other.matrix[k][j];
                }
            }
        }
        WeylElement { matrix: out }
    }

    fn identity(n: usize) -> WeylElement {
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        WeylElement { matrix: m }
    }
}

/// Root data for one simple type.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootData {
    pub letter: TypeLetter,
    pub rank: usize,
    /// Positive roots as coordinate vectors over the simple roots, sorted
    /// by (height, coordinates).
    pub positive_roots: Vec<Vec<i64>>,
    /// Cartan matrix `a[i][j] = alpha_j(h_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// For each positive root, the coroot expansion `h_b = sum c_i h_i`.
    pub coroot_coords: Vec<Vec<i64>>,
    /// Full bracket table on the Chevalley basis.
    pub brackets: BTreeMap<(ChevIdx, ChevIdx), Vec<(ChevIdx, i64)>>,
    /// All Weyl group elements; index 0 is the identity.
    pub weyl_elements: Vec<WeylElement>,
    /// Index into `weyl_elements` of the longest element.
    pub w0: usize,
    /// Index into `positive_roots` of the highest root.
    pub theta: usize,
}

impl RootData {
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `alpha_j(h_i)` as a weight: the simple root `alpha_j` in
    /// fundamental-weight coordinates.
    pub fn simple_root_weight(&self, j: usize) -> Weight {
        Weight((0..self.rank).map(|i| self.cartan[i][j]).collect())
    }

    /// A positive root (by index) in fundamental-weight coordinates.
    pub fn root_weight(&self, b: usize) -> Weight {
        let coords = &self.positive_roots[b];
        let mut w = Weight::zero(self.rank);
        for (j, &c) in coords.iter().enumerate() {
            let rw = self.simple_root_weight(j);
            for i in 0..self.rank {
                w.0[i] += c * rw.0[i];
            }
        }
        w
    }

    /// `lam(h_b)` for a positive root index `b`.
    pub fn pair_coroot(&self, lam: &Weight, b: usize) -> i64 {
        self.coroot_coords[b].iter().zip(&lam.0).map(|(c, l)| c * l).sum()
    }

    pub fn root_height(&self, b: usize) -> i64 {
        self.positive_roots[b].iter().sum()
    }

    /// Express a weight in simple-root coordinates when it lies in the
    /// root lattice tensored with Q; returns numerator vector and common
    /// denominator > 0.
    pub fn weight_in_root_coords(&self, w: &Weight) -> (Vec<i64>, i64) {
        // Solve cartan * c = w exactly over Q by fraction-free elimination.
        let n = self.rank;
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                let mut row: Vec<i128> =
                    self.cartan[i].iter().map(|&x| x as i128).collect();
                row.push(w.0[i] as i128);
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != 0).expect("singular Cartan matrix");
            m.swap(col, piv);
            let p = m[col][col];
            for r in 0..n {
                if r != col && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..=n {
                        m[r][c] = m[r][c] * p - m[col][c] * f;
                    }
                }
            }
        }
        // after full elimination each row reads diag_i * c_i = rhs_i
        let mut lcm: i128 = 1;
        for (i, row) in m.iter().enumerate().take(n) {
            lcm = num_integer::lcm(lcm, row[i].abs());
        }
        let mut out = Vec::with_capacity(n);
        for (i, row) in m.iter().enumerate().take(n) {
            out.push((row[n] * (lcm / row[i])) as i64);
        }
        (out, lcm as i64)
    }

    /// Dominance order: `mu <= lam` iff `lam - mu` is a nonnegative integer
    /// combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        let diff = lam.sub(mu);
        let (nums, den) = self.weight_in_root_coords(&diff);
        nums.iter().all(|&c| c >= 0 && c % den == 0)
    }

    /// Bracket of two Chevalley basis elements as an integer combination.
    pub fn bracket(&self, x: ChevIdx, y: ChevIdx) -> &[(ChevIdx, i64)] {
        static EMPTY: &[(ChevIdx, i64)] = &[];
        self.brackets.get(&(x, y)).map(|v| v.as_slice()).unwrap_or(EMPTY)
    }

    pub fn w0_element(&self) -> &WeylElement {
        &self.weyl_elements[self.w0]
    }

    /// `lam - w0 lam` in simple-root coordinates (always a nonnegative
    /// integer vector for dominant `lam`).
    pub fn lam_minus_w0lam_root_coords(&self, lam: &Weight) -> Vec<i64> {
        let diff = lam.sub(&self.w0_element().apply(lam));
        let (nums, den) = self.weight_in_root_coords(&diff);
        nums.iter().map(|&c| {
            debug_assert!(c % den == 0);
            c / den
        }).collect()
    }

    /// Exhaustive verification of the Chevalley-basis invariants. Called at
    /// build time; public for the verification CLI.
    pub fn verify(&self) -> Result<()> {
        let basis = self.basis_indices();
        // antisymmetry and closure
        for &x in &basis {
            for &y in &basis {
                let mut sum: BTreeMap<ChevIdx, i64> = BTreeMap::new();
                for &(z, c) in self.bracket(x, y) {
                    *sum.entry(z).or_insert(0) += c;
                }
                for &(z, c) in self.bracket(y, x) {
                    *sum.entry(z).or_insert(0) += c;
                }
                if sum.values().any(|&c| c != 0) {
                    return Err(Error::InvalidInput(format!(
                        "antisymmetry fails on {x:?}, {y:?}"
                    )));
                }
            }
        }
        // [x_b^+, x_b^-] = h_b
        for b in 0..self.num_positive_roots() {
            let expect: BTreeMap<ChevIdx, i64> = self.coroot_coords[b]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (ChevIdx::Cartan(i), c))
                .collect();
            let got: BTreeMap<ChevIdx, i64> = self
                .bracket(ChevIdx::Raise(b), ChevIdx::Lower(b))
                .iter()
                .copied()
                .collect();
            if expect != got {
                return Err(Error::InvalidInput(format!("coroot bracket fails on root {b}")));
            }
        }
        // Jacobi identity on all triples
        for &x in &basis {
            for &y in &basis {
                for &z in &basis {
                    let mut acc: BTreeMap<ChevIdx, i64> = BTreeMap::new();
                    let add_double = |a: ChevIdx, b: ChevIdx, c: ChevIdx,
                                          acc: &mut BTreeMap<ChevIdx, i64>| {
                        let inner: Vec<(ChevIdx, i64)> = self.bracket(a, b).to_vec();
                        for (w, cw) in inner {
                            for &(v, cv) in self.bracket(w, c) {
                                *acc.entry(v).or_insert(0) += cw * cv;
                            }
                        }
                    };
                    add_double(x, y, z, &mut acc);
                    add_double(y, z, x, &mut acc);
                    add_double(z, x, y, &mut acc);
                    if acc.values().any(|&c| c != 0) {
                        return Err(Error::InvalidInput(format!(
                            "Jacobi fails on {x:?}, {y:?}, {z:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis_indices(&self) -> Vec<ChevIdx> {
        let mut v = Vec::new();
        for b in 0..self.num_positive_roots() {
            v.push(ChevIdx::Lower(b));
        }
        for i in 0..self.rank {
            v.push(ChevIdx::Cartan(i));
        }
        for b in 0..self.num_positive_roots() {
            v.push(ChevIdx::Raise(b));
        }
        v
    }
}

/// Build the root data for a shipped type. Only `A1`, `A2`, `A3` are
/// available at runtime.
pub fn build_root_data(letter: TypeLetter, rank: usize) -> Result<Arc<RootData>> {
    if letter != TypeLetter::A || !(1..=3).contains(&rank) {
        return Err(Error::UnsupportedType);
    }
    let rd = build_type_a(rank);
    rd.verify()?;
    Ok(Arc::new(rd))
}

/// Dense matrix in gl_{r+1} used only during construction.
type Mat = Vec<Vec<i64>>;

fn mat_zero(n: usize) -> Mat {
    vec![vec![0; n]; n]
}

fn mat_unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = mat_zero(n);
    m[i][j] = 1;
    m
}

fn mat_comm(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i64;
            for k in 0..n {
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

fn build_type_a(rank: usize) -> RootData {
    let n = rank + 1;
    // positive roots e_i - e_j, i < j, ordered by height then start index
    let mut roots: Vec<(usize, usize)> = Vec::new();
    for h in 1..=rank {
        for i in 0..n - h {
            roots.push((i, i + h));
        }
    }
    let positive_roots: Vec<Vec<i64>> = roots
        .iter()
        .map(|&(i, j)| {
            let mut c = vec![0i64; rank];
            for coord in c.iter_mut().take(j).skip(i) {
                *coord = 1;
            }
            c
        })
        .collect();

    // basis matrices
    let raise: Vec<Mat> = roots.iter().map(|&(i, j)| mat_unit(n, i, j)).collect();
    let lower: Vec<Mat> = roots.iter().map(|&(i, j)| mat_unit(n, j, i)).collect();
    let cartan_m: Vec<Mat> = (0..rank)
        .map(|i| {
            let mut m = mat_zero(n);
            m[i][i] = 1;
            m[i + 1][i + 1] = -1;
            m
        })
        .collect();

    let all: Vec<(ChevIdx, &Mat)> = (0..roots.len())
        .map(|b| (ChevIdx::Lower(b), &lower[b]))
        .chain((0..rank).map(|i| (ChevIdx::Cartan(i), &cartan_m[i])))
        .chain((0..roots.len()).map(|b| (ChevIdx::Raise(b), &raise[b])))
        .collect();

    // expand a trace-zero matrix in the basis
    let expand = |m: &Mat| -> Vec<(ChevIdx, i64)> {
        let mut out = Vec::new();
        for (b, &(i, j)) in roots.iter().enumerate() {
            if m[i][j] != 0 {
                out.push((ChevIdx::Raise(b), m[i][j]));
            }
            if m[j][i] != 0 {
                out.push((ChevIdx::Lower(b), m[j][i]));
            }
        }
        // diagonal part: coefficients of h_i are partial sums of the diagonal
        let mut partial = 0i64;
        for i in 0..rank {
            partial += m[i][i];
            if partial != 0 {
                out.push((ChevIdx::Cartan(i), partial));
            }
        }
        out.sort();
        out
    };

    let mut brackets = BTreeMap::new();
    for &(xi, xm) in &all {
        for &(yi, ym) in &all {
            let c = mat_comm(xm, ym);
            let e = expand(&c);
            if !e.is_empty() {
                brackets.insert((xi, yi), e);
            }
        }
    }

    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    if i == j {
                        2
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();

    // coroot coordinates from [x+, x-]
    let coroot_coords: Vec<Vec<i64>> = (0..roots.len())
        .map(|b| {
            let c = mat_comm(&raise[b], &lower[b]);
            let mut coords = vec![0i64; rank];
            let mut partial = 0i64;
            for (i, coord) in coords.iter_mut().enumerate() {
                partial += c[i][i];
                *coord = partial;
            }
            coords
        })
        .collect();

    // Weyl group generated by simple reflections acting on weight coords
    let simple_reflections: Vec<WeylElement> = (0..rank)
        .map(|i| {
            let mut m = WeylElement::identity(rank).matrix;
            for (j, row) in m.iter_mut().enumerate() {
                // s_i(lam)_j = lam_j - lam_i a_{ji}
                row[i] -= cartan[j][i];
            }
            WeylElement { matrix: m }
        })
        .collect();

    let mut weyl_elements = vec![WeylElement::identity(rank)];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let cur = weyl_elements[idx].clone();
        for s in &simple_reflections {
            let next = s.compose(&cur);
            if !weyl_elements.contains(&next) {
                weyl_elements.push(next);
                frontier.push(weyl_elements.len() - 1);
            }
        }
    }

    // root weights for w0 detection
    let rd_partial = RootData {
        letter: TypeLetter::A,
        rank,
        positive_roots: positive_roots.clone(),
        cartan: cartan.clone(),
        coroot_coords: coroot_coords.clone(),
        brackets,
        weyl_elements: weyl_elements.clone(),
        w0: 0,
        theta: 0,
    };
    let pos_weights: Vec<Weight> =
        (0..roots.len()).map(|b| rd_partial.root_weight(b)).collect();
    let neg_weights: Vec<Weight> = pos_weights.iter().map(|w| w.neg()).collect();
    let w0 = weyl_elements
        .iter()
        .position(|w| pos_weights.iter().all(|rw| neg_weights.contains(&w.apply(rw))))
        .expect("no longest element found");

    // highest root: maximal in dominance order
    let theta = (0..roots.len())
        .find(|&b| {
            (0..roots.len()).all(|c| {
                c == b
                    || rd_partial.dominance_leq(&pos_weights[c], &pos_weights[b])
            })
        })
        .expect("no highest root found");

    RootData { w0, theta, ..rd_partial }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_shape() {
        let rd = build_root_data(TypeLetter::A, 1).unwrap();
        assert_eq!(rd.num_positive_roots(), 1);
        assert_eq!(rd.theta, 0);
        assert_eq!(rd.weyl_elements.len(), 2);
        // [x+, x-] = h
        assert_eq!(
            rd.bracket(ChevIdx::Raise(0), ChevIdx::Lower(0)),
            &[(ChevIdx::Cartan(0), 1)]
        );
    }

    #[test]
    fn a2_shape() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        assert_eq!(rd.num_positive_roots(), 3);
        assert_eq!(rd.weyl_elements.len(), 6);
        // theta = alpha1 + alpha2
        assert_eq!(rd.positive_roots[rd.theta], vec![1, 1]);
        // Cartan action: [h_i, x_j^+] = a_{ij} x_j^+
        assert_eq!(
            rd.bracket(ChevIdx::Cartan(0), ChevIdx::Raise(1)),
            &[(ChevIdx::Raise(1), -1)]
        );
        // [x_theta^+, x_theta^+] = 0
        assert!(rd.bracket(ChevIdx::Raise(rd.theta), ChevIdx::Raise(rd.theta)).is_empty());
    }

    #[test]
    fn a3_shape() {
        let rd = build_root_data(TypeLetter::A, 3).unwrap();
        assert_eq!(rd.num_positive_roots(), 6);
        assert_eq!(rd.weyl_elements.len(), 24);
    }

    #[test]
    fn unsupported() {
        assert!(matches!(build_root_data(TypeLetter::A, 4), Err(Error::UnsupportedType)));
        assert!(matches!(build_root_data(TypeLetter::B, 2), Err(Error::UnsupportedType)));
    }

    #[test]
    fn dominance_examples() {
        let rd1 = build_root_data(TypeLetter::A, 1).unwrap();
        // 0 <= 2w since 2w - 0 = alpha
        assert!(rd1.dominance_leq(&Weight(vec![0]), &Weight(vec![2])));
        // w !<= 2w (difference is alpha/2)
        assert!(!rd1.dominance_leq(&Weight(vec![1]), &Weight(vec![2])));
        let rd2 = build_root_data(TypeLetter::A, 2).unwrap();
        assert!(!rd2.dominance_leq(&Weight(vec![1, 0]), &Weight(vec![0, 1])));
        let lam = Weight(vec![1, 1]);
        assert!(rd2.dominance_leq(&lam, &lam));
    }

    #[test]
    fn w0_and_coroots() {
        let rd = build_root_data(TypeLetter::A, 2).unwrap();
        let lam = Weight(vec![2, 1]);
        let w0lam = rd.w0_element().apply(&lam);
        assert_eq!(w0lam, Weight(vec![-1, -2]));
        // h_theta = h_1 + h_2
        assert_eq!(rd.coroot_coords[rd.theta], vec![1, 1]);
        assert_eq!(rd.pair_coroot(&lam, rd.theta), 3);
    }
}
