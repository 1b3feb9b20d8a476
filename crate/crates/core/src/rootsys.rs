//! Finite root systems generated from Cartan matrices.
//!
//! Convention: `A[i][j] = ⟨α_i, α_j^∨⟩ = 2(α_i, α_j)/(α_j, α_j)`, so for G₂
//! with a short first root the matrix is `[[2, -1], [-3, 2]]` and the highest
//! root is `3α₁ + 2α₂`. Roots are integer vectors in the simple-root basis and
//! positivity is lexicographic on those coordinates (for roots this is the
//! same as all coordinates being non-negative).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("Cartan matrix is not square or is empty")]
    Shape,
    #[error("diagonal entry A[{0}][{0}] is not 2")]
    Diagonal(usize),
    #[error("off-diagonal entry A[{0}][{1}] is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("A[{0}][{1}] and A[{1}][{0}] disagree on vanishing")]
    ZeroPattern(usize, usize),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    #[serde(skip)]
    half_lengths: Vec<ExactScalar>,
}

impl CartanMatrix {
    /// Validates the matrix and finds the symmetrizer `d_j = (α_j, α_j)/2`.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, RootSystemError> {
        let r = entries.len();
        if r == 0 || entries.iter().any(|row| row.len() != r) {
            return Err(RootSystemError::Shape);
        }
        for i in 0..r {
            if entries[i][i] != 2 {
                return Err(RootSystemError::Diagonal(i));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(RootSystemError::PositiveOffDiagonal(i, j));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(RootSystemError::ZeroPattern(i, j));
                }
            }
        }
        let half_lengths = symmetrizer(&entries)?;
        let cm = CartanMatrix {
            entries,
            half_lengths,
        };
        if !cm.positive_definite() {
            return Err(RootSystemError::NotFiniteType);
        }
        Ok(cm)
    }

    /// Built-in types: A1–A3, B2, C2, B3, C3, G2 (case-insensitive; `B2` and
    /// `C2` are the same algebra with the simple roots swapped).
    pub fn of_type(name: &str) -> Result<Self, RootSystemError> {
        let m: Vec<Vec<i64>> = match name.to_ascii_uppercase().as_str() {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B2" => vec![vec![2, -2], vec![-1, 2]],
            "C2" => vec![vec![2, -1], vec![-2, 2]],
            "B3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            "C3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            _ => return Err(RootSystemError::UnknownType(name.to_string())),
        };
        CartanMatrix::new(m)
    }

    pub const SHIPPED_TYPES: [&'static str; 8] = ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2"];

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// `(α_j, α_j)/2`, normalized so the first root of each component is 1.
    pub fn half_length(&self, j: usize) -> &ExactScalar {
        &self.half_lengths[j]
    }

    /// Symmetrized pairing `(α_i, α_j) = A[i][j]·d_j`.
    pub fn pairing(&self, i: usize, j: usize) -> ExactScalar {
        &ExactScalar::from_int(self.entries[i][j]) * &self.half_lengths[j]
    }

    fn positive_definite(&self) -> bool {
        let r = self.rank();
        let gram: Vec<Vec<ExactScalar>> = (0..r)
            .map(|i| (0..r).map(|j| self.pairing(i, j)).collect())
            .collect();
        (1..=r).all(|k| {
            let minor = crate::linalg::Matrix::from_rows(
                gram[..k].iter().map(|row| row[..k].to_vec()).collect(),
            );
            let d = minor.determinant();
            d.is_real() && d.re().is_positive()
        })
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<ExactScalar>, RootSystemError> {
    let r = a.len();
    let mut d: Vec<Option<ExactScalar>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(ExactScalar::from_int(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // A[i][j] d_j = A[j][i] d_i
                let want = &(&ExactScalar::from_int(a[j][i]) * &di) / &ExactScalar::from_int(a[i][j]);
                match &d[j] {
                    Some(dj) if *dj != want => return Err(RootSystemError::NotSymmetrizable),
                    Some(_) => {}
                    None => {
                        d[j] = Some(want);
                        stack.push(j);
                    }
                }
            }
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Root>,
    positive: Vec<usize>,
    highest: usize,
    #[serde(skip)]
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn of_type(name: &str) -> Result<Self, RootSystemError> {
        Ok(build_root_system(CartanMatrix::of_type(name)?))
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Positive roots first (by height, then coordinates descending), then
    /// their negatives in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn highest_index(&self) -> usize {
        self.highest
    }

    pub fn highest(&self) -> &Root {
        &self.roots[self.highest]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Index of `-roots[i]`.
    pub fn negative_of(&self, i: usize) -> usize {
        let n = self.positive.len();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    /// Symmetrized inner product of two integer combinations of simple roots.
    pub fn inner(&self, a: &Root, b: &Root) -> ExactScalar {
        let r = self.rank();
        let mut acc = ExactScalar::zero();
        for i in 0..r {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                if b.0[j] == 0 {
                    continue;
                }
                acc += &(&ExactScalar::from_int(a.0[i] * b.0[j]) * &self.cartan.pairing(i, j));
            }
        }
        acc
    }

    /// `⟨β, α_i^∨⟩ = Σ_k c_k A[k][i]`.
    pub fn coroot_pairing(&self, beta: &Root, i: usize) -> i64 {
        beta.0
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.cartan.get(k, i))
            .sum()
    }

    /// Largest `p` with `beta - p·alpha` a root (`beta ≠ ±alpha`).
    pub fn string_down(&self, alpha: &Root, beta: &Root) -> i64 {
        let mut p = 0;
        let mut cur = beta.sub(alpha);
        while self.contains(&cur) {
            p += 1;
            cur = cur.sub(alpha);
        }
        p
    }

    /// `2(α, ρ)/(ρ, ρ)`: the eigenvalue of `ad H_ρ` on the root space of `α`.
    pub fn rho_height(&self, alpha: &Root) -> Result<i64, RootSystemError> {
        if !self.contains(alpha) {
            return Err(RootSystemError::NotARoot(alpha.0.clone()));
        }
        let rho = self.highest();
        let v = &(&ExactScalar::from_int(2) * &self.inner(alpha, rho)) / &self.inner(rho, rho);
        Ok(v.to_i64().expect("root pairing with the highest root is integral"))
    }
}

/// Generates all roots by root strings: for each known positive root `β` and
/// simple root `α_i`, `β + α_i` is a root iff `p - ⟨β, α_i^∨⟩ > 0`, where `p`
/// is the length of the downward `α_i`-string through `β`.
pub fn build_root_system(cartan: CartanMatrix) -> RootSystem {
    let r = cartan.rank();
    let mut positive: BTreeSet<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut layer: Vec<Root> = positive.iter().cloned().collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..r {
                let alpha = Root::simple(r, i);
                if *beta == alpha {
                    continue;
                }
                let mut p = 0;
                let mut cur = beta.sub(&alpha);
                while positive.contains(&cur) {
                    p += 1;
                    cur = cur.sub(&alpha);
                }
                let pairing: i64 = beta.0.iter().enumerate().map(|(k, c)| c * cartan.get(k, i)).sum();
                if p - pairing > 0 {
                    next.insert(beta.add(&alpha));
                }
            }
        }
        layer = next.into_iter().filter(|x| !positive.contains(x)).collect();
        positive.extend(layer.iter().cloned());
    }
    let mut pos: Vec<Root> = positive.into_iter().collect();
    pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    let n = pos.len();
    let mut roots = pos.clone();
    roots.extend(pos.iter().map(Root::neg));
    let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let highest = (0..n).max_by_key(|&i| roots[i].height()).unwrap();
    RootSystem {
        cartan,
        roots,
        positive: (0..n).collect(),
        highest,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closure of the simple roots under simple reflections
    /// `s_i(β) = β − ⟨β, α_i^∨⟩ α_i`; independent of the string algorithm.
    fn reflection_closure(cm: &CartanMatrix) -> BTreeSet<Root> {
        let r = cm.rank();
        let mut set: BTreeSet<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
        loop {
            let mut added = false;
            for beta in set.clone() {
                for i in 0..r {
                    let k: i64 = (0..r).map(|j| beta.0[j] * cm.get(j, i)).sum();
                    let mut img = beta.clone();
                    img.0[i] -= k;
                    if set.insert(img) {
                        added = true;
                    }
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn matches_reflection_oracle() {
        for t in CartanMatrix::SHIPPED_TYPES {
            let cm = CartanMatrix::of_type(t).unwrap();
            let oracle = reflection_closure(&cm);
            let rs = build_root_system(cm);
            let got: BTreeSet<Root> = rs.roots().iter().cloned().collect();
            assert_eq!(got, oracle, "{t}");
            assert_eq!(rs.roots().len() % 2, 0);
        }
    }

    #[test]
    fn rank_one() {
        let rs = RootSystem::of_type("A1").unwrap();
        assert_eq!(rs.roots(), &[Root(vec![1]), Root(vec![-1])]);
        assert_eq!(rs.highest(), &Root(vec![1]));
    }

    #[test]
    fn a2_and_g2_highest() {
        let a2 = RootSystem::of_type("A2").unwrap();
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.highest(), &Root(vec![1, 1]));
        let g2 = RootSystem::of_type("G2").unwrap();
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.highest(), &Root(vec![3, 2]));
    }

    #[test]
    fn highest_root_dominates() {
        for t in CartanMatrix::SHIPPED_TYPES {
            let rs = RootSystem::of_type(t).unwrap();
            let rho = rs.highest().clone();
            for &i in rs.positive() {
                assert!(rho.sub(&rs.roots()[i]).0.iter().all(|&c| c >= 0), "{t}");
            }
        }
    }

    #[test]
    fn heights() {
        let a2 = RootSystem::of_type("A2").unwrap();
        assert_eq!(a2.rho_height(&Root(vec![1, 1])).unwrap(), 2);
        assert_eq!(a2.rho_height(&Root(vec![1, 0])).unwrap(), 1);
        let g2 = RootSystem::of_type("G2").unwrap();
        assert_eq!(g2.rho_height(&Root(vec![1, 0])).unwrap(), 0);
        assert_eq!(g2.rho_height(&Root(vec![0, 1])).unwrap(), 1);
        assert!(g2.rho_height(&Root(vec![1, 1, 0])).is_err());
        assert!(g2.rho_height(&Root(vec![2, 2])).is_err());
    }

    #[test]
    fn height_range_and_uniqueness() {
        for t in ["A1", "A2", "A3", "C2", "G2", "B2", "B3", "C3"] {
            let rs = RootSystem::of_type(t).unwrap();
            let hs: Vec<i64> = rs.roots().iter().map(|a| rs.rho_height(a).unwrap()).collect();
            assert!(hs.iter().all(|h| (-2..=2).contains(h)), "{t}");
            assert_eq!(hs.iter().filter(|&&h| h == 2).count(), 1, "{t}");
            assert_eq!(hs.iter().filter(|&&h| h == -2).count(), 1, "{t}");
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]), Err(RootSystemError::NotFiniteType));
        assert_eq!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]), Err(RootSystemError::ZeroPattern(0, 1)));
        assert_eq!(CartanMatrix::new(vec![vec![3]]), Err(RootSystemError::Diagonal(0)));
        assert_eq!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]), Err(RootSystemError::PositiveOffDiagonal(0, 1)));
        // affine A2^(1)
        let affine = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(CartanMatrix::new(affine), Err(RootSystemError::NotFiniteType));
        assert!(matches!(CartanMatrix::of_type("E8"), Err(RootSystemError::UnknownType(_))));
    }

    #[test]
    fn arbitrary_finite_matrix_accepted() {
        // D4 is not shipped by name but passes validation.
        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        let rs = build_root_system(CartanMatrix::new(d4).unwrap());
        assert_eq!(rs.roots().len(), 24);
    }
}
