//! Simple Lie algebras from root systems, in the normalization
//! `[e_α, e_{−α}] = −h_α` where `h_α` is the Killing dual of `α`.
//!
//! Construction: a Chevalley basis is built first (integral structure
//! constants `N_{α,β} = ±(p+1)`, signs fixed on extraspecial pairs and
//! propagated with the standard Chevalley identities), then every negative
//! root vector is rescaled by `−2/B(h_α^∨, h_α^∨)`. Positive root vectors and
//! the Cartan basis (simple coroots) are left untouched.
//!
//! The Killing form is always computed as `tr(ad x ∘ ad y)`, never looked up.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, Matrix, Vector};
use crate::rootsys::{Root, RootSystem};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Killing form is degenerate")]
    SingularKilling,
    #[error("ad H_ρ is not diagonal in the constructed basis")]
    NonDiagonalGrading,
    #[error("ad H_ρ has non-integer eigenvalue {0} on basis element {1}")]
    NonIntegerEigenvalue(String, String),
}

/// Labels `h1..hr`, then `e[c1,..,cr]` for each root in root-system order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieBasis {
    labels: Vec<String>,
    rank: usize,
}

impl LieBasis {
    fn new(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let mut labels: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
        labels.extend(rs.roots().iter().map(|a| format!("e{a}")));
        LieBasis { labels, rank: r }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

type SparseVec = Vec<(usize, ExactScalar)>;

#[derive(Debug, Clone)]
pub struct StructureConstants {
    rs: RootSystem,
    basis: LieBasis,
    table: Vec<Vec<SparseVec>>,
    chevalley: HashMap<(usize, usize), i64>,
}

impl StructureConstants {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn basis(&self) -> &LieBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Basis index of the root vector `e_{roots[i]}`.
    pub fn root_vector_index(&self, root_idx: usize) -> usize {
        self.rank() + root_idx
    }

    pub fn index_of_root(&self, alpha: &Root) -> Option<usize> {
        self.rs.index_of(alpha).map(|i| self.root_vector_index(i))
    }

    /// Root-space index of a basis element, `None` for Cartan elements.
    pub fn root_of_basis(&self, b: usize) -> Option<usize> {
        b.checked_sub(self.rank())
    }

    /// `[b_i, b_j]` as a sparse coefficient list.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, ExactScalar)] {
        &self.table[i][j]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![ExactScalar::zero(); self.dim()];
        v[i] = ExactScalar::one();
        v
    }

    pub fn bracket(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![ExactScalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.table[i][j] {
                    out[*k] += &(&c * v);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` (column `j` is `[x, b_j]`).
    pub fn ad(&self, x: &[ExactScalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, v) in &self.table[i][j] {
                    m[(*k, j)] += &(xi * v);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&self.unit(i))
    }

    /// `N_{α,β}` in the final basis (`[e_α, e_β] = N e_{α+β}`), zero when
    /// `α+β` is not a root.
    pub fn n_coefficient(&self, a: usize, b: usize) -> ExactScalar {
        let Some(s) = self.rs.index_of(&self.rs.roots()[a].add(&self.rs.roots()[b])) else {
            return ExactScalar::zero();
        };
        let target = self.root_vector_index(s);
        self.table[self.root_vector_index(a)][self.root_vector_index(b)]
            .iter()
            .find(|(k, _)| *k == target)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    /// Integral Chevalley constant `N_{α,β}` before rescaling.
    pub fn chevalley_coefficient(&self, a: usize, b: usize) -> Option<i64> {
        self.chevalley.get(&(a, b)).copied()
    }

    /// Structure-constant table as `(i, j, [(k, coeff)])` for `i < j`, with
    /// coefficients in textual form.
    pub fn table_entries(&self) -> Vec<(usize, usize, Vec<(usize, String)>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j].is_empty() {
                    continue;
                }
                out.push((
                    i,
                    j,
                    self.table[i][j].iter().map(|(k, v)| (*k, v.to_string())).collect(),
                ));
            }
        }
        out
    }
}

fn to_sparse(v: &[ExactScalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Chevalley structure constants for every ordered pair of roots whose sum
/// is a root, keyed by root indices.
fn chevalley_constants(rs: &RootSystem) -> HashMap<(usize, usize), i64> {
    let roots = rs.roots();
    let npos = rs.num_positive();
    let mut extraspecial: HashMap<usize, (usize, usize)> = HashMap::new();
    for xi in 0..npos {
        for a in 0..npos {
            if let Some(b) = rs.index_of(&roots[xi].sub(&roots[a])) {
                if b < npos {
                    extraspecial.insert(xi, (a, b));
                    break;
                }
            }
        }
    }
    let mut solver = ChevalleySolver {
        rs,
        extraspecial,
        memo: HashMap::new(),
    };
    let mut out = HashMap::new();
    for a in 0..roots.len() {
        for b in 0..roots.len() {
            if rs.contains(&roots[a].add(&roots[b])) {
                let v = solver.n(a, b);
                out.insert((a, b), v.to_i64().expect("Chevalley constants are integers"));
            }
        }
    }
    out
}

struct ChevalleySolver<'a> {
    rs: &'a RootSystem,
    extraspecial: HashMap<usize, (usize, usize)>,
    memo: HashMap<(usize, usize), ExactScalar>,
}

impl ChevalleySolver<'_> {
    fn root(&self, i: usize) -> &Root {
        &self.rs.roots()[i]
    }

    fn norm(&self, r: &Root) -> ExactScalar {
        self.rs.inner(r, r)
    }

    fn p_plus_one(&self, x: usize, y: usize) -> i64 {
        self.rs.string_down(self.root(x), self.root(y)) + 1
    }

    fn n(&mut self, x: usize, y: usize) -> ExactScalar {
        if let Some(v) = self.memo.get(&(x, y)) {
            return v.clone();
        }
        let v = self.compute(x, y);
        self.memo.insert((x, y), v.clone());
        v
    }

    fn compute(&mut self, x: usize, y: usize) -> ExactScalar {
        let npos = self.rs.num_positive();
        let (xp, yp) = (x < npos, y < npos);
        let rx = self.root(x).clone();
        let ry = self.root(y).clone();
        let sum = rx.add(&ry);
        let p1 = ExactScalar::from_int(self.p_plus_one(x, y));
        if xp && yp {
            let xi = self.rs.index_of(&sum).unwrap();
            let (r, s) = self.extraspecial[&xi];
            if (x, y) == (r, s) {
                return p1;
            }
            if (x, y) == (s, r) {
                return -self.n(r, s);
            }
            // four-root identity on (r, s, -x, -y)
            let (nx, ny) = (self.rs.negative_of(x), self.rs.negative_of(y));
            let rr = self.root(r).clone();
            let rs_ = self.root(s).clone();
            let mut acc = ExactScalar::zero();
            let s_minus_x = rs_.sub(&rx);
            if self.rs.contains(&s_minus_x) {
                let t = &self.n(s, nx) * &self.n(r, ny);
                acc += &(&t / &self.norm(&s_minus_x));
            }
            let r_minus_x = rr.sub(&rx);
            if self.rs.contains(&r_minus_x) {
                let t = &self.n(nx, r) * &self.n(s, ny);
                acc += &(&t / &self.norm(&r_minus_x));
            }
            let n_rs = self.n(r, s);
            let n_neg = -(&(&self.norm(&sum) / &n_rs) * &acc);
            let sq = &p1 * &p1;
            return -(&sq / &n_neg);
        }
        if !xp && !yp {
            let (nx, ny) = (self.rs.negative_of(x), self.rs.negative_of(y));
            let sq = &p1 * &p1;
            return -(&sq / &self.n(nx, ny));
        }
        // mixed signs: x + y + z = 0
        let z = self.rs.index_of(&sum.neg()).unwrap();
        let zz = self.norm(self.root(z));
        let y_z_same_sign = (y < npos) == (z < npos);
        if y_z_same_sign {
            let xx = self.norm(&rx);
            &(&zz / &xx) * &self.n(y, z)
        } else {
            let yy = self.norm(&ry);
            &(&zz / &yy) * &self.n(z, x)
        }
    }
}

/// Builds the algebra with `[e_α, e_{−α}] = −h_α`.
pub fn build_algebra(rs: &RootSystem) -> StructureConstants {
    let r = rs.rank();
    let roots = rs.roots();
    let npos = rs.num_positive();
    let n = r + roots.len();
    let chevalley = chevalley_constants(rs);
    let half = |root: &Root| &rs.inner(root, root) / &ExactScalar::from_int(2);

    let mut table: Vec<Vec<Vector>> = vec![vec![vec![ExactScalar::zero(); n]; n]; n];
    for i in 0..r {
        for (a, root) in roots.iter().enumerate() {
            let c = ExactScalar::from_int(rs.coroot_pairing(root, i));
            table[i][r + a][r + a] = c.clone();
            table[r + a][i][r + a] = -c;
        }
    }
    for (a, ra) in roots.iter().enumerate() {
        for (b, rb) in roots.iter().enumerate() {
            let s = ra.add(rb);
            if s.is_zero() {
                // coroot of α in simple coroots: c_k d_k / d_α
                let da = half(ra);
                for k in 0..r {
                    if ra.0[k] != 0 {
                        let dk = half(&Root::simple(r, k));
                        table[r + a][r + b][k] = &(&ExactScalar::from_int(ra.0[k]) * &dk) / &da;
                    }
                }
            } else if let Some(c) = rs.index_of(&s) {
                table[r + a][r + b][r + c] = ExactScalar::from_int(chevalley[&(a, b)]);
            }
        }
    }
    let chev = StructureConstants {
        rs: rs.clone(),
        basis: LieBasis::new(rs),
        table: table.iter().map(|row| row.iter().map(|v| to_sparse(v)).collect()).collect(),
        chevalley: chevalley.clone(),
    };

    // Rescale e_{−α} by −2/B(h_α^∨, h_α^∨).
    let gram = killing_gram(&chev);
    let mut scale = vec![ExactScalar::one(); n];
    for a in 0..npos {
        let mut coroot = vec![ExactScalar::zero(); n];
        let na = rs.negative_of(a);
        for (k, v) in chev.bracket_basis(r + a, r + na) {
            coroot[*k] = v.clone();
        }
        let bb = linalg::dot(&coroot, &gram.mul_vec(&coroot));
        scale[r + na] = -(&ExactScalar::from_int(2) / &bb);
    }
    let mut final_table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let f = &scale[i] * &scale[j];
            final_table[i][j] = chev.table[i][j]
                .iter()
                .map(|(k, v)| (*k, &(&f * v) / &scale[*k]))
                .collect();
        }
    }
    StructureConstants {
        table: final_table,
        ..chev
    }
}

fn killing_gram(sc: &StructureConstants) -> Matrix {
    let n = sc.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| sc.ad_basis(i)).collect();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let p = ads[i].mul(&ads[j]);
            let mut tr = ExactScalar::zero();
            for k in 0..n {
                tr += &p[(k, k)];
            }
            g[(i, j)] = tr.clone();
            g[(j, i)] = tr;
        }
    }
    g
}

#[derive(Debug, Clone)]
pub struct KillingData {
    gram: Matrix,
    gram_inverse: Matrix,
    coroots: Vec<Vector>,
    hrho: Vector,
}

impl KillingData {
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inverse
    }

    /// `h_α` for each root (full-length vector, supported on the Cartan part).
    pub fn coroot(&self, root_idx: usize) -> &Vector {
        &self.coroots[root_idx]
    }

    pub fn hrho(&self) -> &Vector {
        &self.hrho
    }

    pub fn form(&self, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        linalg::dot(x, &self.gram.mul_vec(y))
    }
}

/// Killing form by trace, `h_α` by solving `B(h_α, h_j) = α(h_j)`, and
/// `H_ρ = 2 h_ρ / B(h_ρ, h_ρ)`.
pub fn killing(sc: &StructureConstants) -> Result<KillingData, LieError> {
    let gram = killing_gram(sc);
    let gram_inverse = gram.inverse().ok_or(LieError::SingularKilling)?;
    let r = sc.rank();
    let rs = sc.root_system();
    let cartan_block = Matrix::from_rows((0..r).map(|i| gram.row(i)[..r].to_vec()).collect());
    let mut coroots = Vec::with_capacity(rs.roots().len());
    for root in rs.roots() {
        let rhs: Vector = (0..r)
            .map(|j| ExactScalar::from_int(rs.coroot_pairing(root, j)))
            .collect();
        let h = cartan_block.solve(&rhs).ok_or(LieError::SingularKilling)?;
        let mut full = h;
        full.resize(sc.dim(), ExactScalar::zero());
        coroots.push(full);
    }
    let h_rho = &coroots[rs.highest_index()];
    let b = linalg::dot(h_rho, &gram.mul_vec(h_rho));
    let c = &ExactScalar::from_int(2) / &b;
    let hrho = h_rho.iter().map(|x| x * &c).collect();
    Ok(KillingData {
        gram,
        gram_inverse,
        coroots,
        hrho,
    })
}

/// Eigenspace split of `ad H_ρ` with the subalgebras built from it.
#[derive(Debug, Clone)]
pub struct GradedDecomposition {
    /// `pieces[i + 2]` holds the basis indices of `𝒢_i`.
    pieces: [Vec<usize>; 5],
    eigenvalues: Vec<i64>,
    l: Vec<Vector>,
    l0: Vec<Vector>,
    g00: Vec<Vector>,
    g_minus: Vec<Vector>,
    nn: Vec<Vector>,
}

impl GradedDecomposition {
    pub fn piece(&self, i: i64) -> &[usize] {
        &self.pieces[(i + 2) as usize]
    }

    pub fn piece_dims(&self) -> [usize; 5] {
        [0, 1, 2, 3, 4].map(|k| self.pieces[k].len())
    }

    /// Eigenvalue of `ad H_ρ` on each basis vector.
    pub fn eigenvalues(&self) -> &[i64] {
        &self.eigenvalues
    }

    /// `ℒ = 𝒢₀ ⊕ 𝒢₁ ⊕ 𝒢₂`.
    pub fn l(&self) -> &[Vector] {
        &self.l
    }

    /// `ℒ₀ = {X | [X, e_ρ] = 0}` by kernel extraction.
    pub fn l0(&self) -> &[Vector] {
        &self.l0
    }

    /// `𝒢₀₀ = 𝒢₀ ∩ ℒ₀`.
    pub fn g00(&self) -> &[Vector] {
        &self.g00
    }

    /// `𝒢₋ = 𝒢₋₂ ⊕ 𝒢₋₁`.
    pub fn g_minus(&self) -> &[Vector] {
        &self.g_minus
    }

    /// `𝒩 = 𝒢₋ ⊕ ℂH_ρ`.
    pub fn n(&self) -> &[Vector] {
        &self.nn
    }

    pub fn dim_z(&self) -> usize {
        self.piece(1).len() + 1
    }

    pub fn dim_p(&self) -> usize {
        self.piece(1).len() + 2
    }
}

fn units(dim: usize, idx: &[usize]) -> Vec<Vector> {
    idx.iter()
        .map(|&i| {
            let mut v = vec![ExactScalar::zero(); dim];
            v[i] = ExactScalar::one();
            v
        })
        .collect()
}

/// Kernel of `ad e_ρ` restricted to the span of `space`.
fn kernel_of_ad_on(sc: &StructureConstants, x: &[ExactScalar], space: &[Vector]) -> Vec<Vector> {
    if space.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vector> = space.iter().map(|v| sc.bracket(x, v)).collect();
    let m = Matrix::from_columns(&images);
    m.kernel()
        .into_iter()
        .map(|coeffs| {
            let mut v = vec![ExactScalar::zero(); sc.dim()];
            for (c, b) in coeffs.iter().zip(space) {
                if c.is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &(c * bi);
                }
            }
            v
        })
        .collect()
}

pub fn grade(sc: &StructureConstants, kd: &KillingData) -> Result<GradedDecomposition, LieError> {
    let n = sc.dim();
    let ad_h = sc.ad(kd.hrho());
    let mut eigenvalues = Vec::with_capacity(n);
    for j in 0..n {
        for i in 0..n {
            if i != j && !ad_h[(i, j)].is_zero() {
                return Err(LieError::NonDiagonalGrading);
            }
        }
        let ev = &ad_h[(j, j)];
        match ev.to_i64() {
            Some(k) => eigenvalues.push(k),
            None => {
                return Err(LieError::NonIntegerEigenvalue(
                    ev.to_string(),
                    sc.basis().labels()[j].clone(),
                ))
            }
        }
    }
    let mut pieces: [Vec<usize>; 5] = Default::default();
    for (j, &k) in eigenvalues.iter().enumerate() {
        if !(-2..=2).contains(&k) {
            return Err(LieError::NonIntegerEigenvalue(k.to_string(), sc.basis().labels()[j].clone()));
        }
        pieces[(k + 2) as usize].push(j);
    }
    let rho = sc.unit(sc.root_vector_index(sc.root_system().highest_index()));
    let all = units(n, &(0..n).collect::<Vec<_>>());
    let l0 = kernel_of_ad_on(sc, &rho, &all);
    let g0 = units(n, &pieces[2]);
    let g00 = kernel_of_ad_on(sc, &rho, &g0);
    let l_idx: Vec<usize> = pieces[2..].iter().flatten().copied().collect();
    let gm_idx: Vec<usize> = pieces[..2].iter().flatten().copied().collect();
    let g_minus = units(n, &gm_idx);
    let mut nn = g_minus.clone();
    nn.push(kd.hrho().clone());
    Ok(GradedDecomposition {
        pieces,
        eigenvalues,
        l: units(n, &l_idx),
        l0,
        g00,
        g_minus,
        nn,
    })
}

fn bracket_pairs(gd: &GradedDecomposition, sc: &StructureConstants) -> Vec<Vector> {
    let mut out = Vec::new();
    for &x in gd.piece(-1) {
        for &y in gd.piece(1) {
            out.push(sc.bracket(&sc.unit(x), &sc.unit(y)));
        }
    }
    out
}

/// Span of all `[x, y]`, `x ∈ 𝒢₋₁`, `y ∈ 𝒢₁`, intersected with `𝒢₀`,
/// compared with the kernel description of `𝒢₀₀`.
///
/// Whenever `𝒢₁ ≠ 0` the bracket span already contains `H_ρ`, so this is
/// false for every type except `A₁`; see [`g00_tracefree_check`].
pub fn g00_span_check(gd: &GradedDecomposition, sc: &StructureConstants) -> bool {
    let g0 = units(sc.dim(), gd.piece(0));
    let brackets = bracket_pairs(gd, sc);
    let inside_g0 = brackets.iter().all(|b| linalg::in_span(&g0, b));
    inside_g0 && linalg::span_dim(&brackets) == gd.g00().len() && linalg::same_span(&brackets, gd.g00())
}

/// `𝒢₀₀` equals the sums `Σ [X₋ᵢ, X₊ᵢ]` with `Σ B(X₋ᵢ, X₊ᵢ) = 0`, i.e. the
/// bracket span cut down to the Killing complement of `H_ρ`.
pub fn g00_tracefree_check(gd: &GradedDecomposition, sc: &StructureConstants, kd: &KillingData) -> bool {
    let brackets = bracket_pairs(gd, sc);
    if brackets.iter().all(|b| b.iter().all(Zero::is_zero)) {
        return gd.g00().is_empty();
    }
    let funct: Vector = brackets.iter().map(|b| kd.form(b, kd.hrho())).collect();
    let constraint = Matrix::from_rows(vec![funct]);
    let cut: Vec<Vector> = constraint
        .kernel()
        .into_iter()
        .map(|c| {
            let mut v = vec![ExactScalar::zero(); sc.dim()];
            for (ci, b) in c.iter().zip(&brackets) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &(ci * bi);
                }
            }
            v
        })
        .collect();
    linalg::same_span(&cut, gd.g00())
}

/// `dχ_L(H_ρ) = B([H_ρ, e_ρ], −e_{−ρ})`.
pub fn chi_differential(kd: &KillingData, sc: &StructureConstants) -> ExactScalar {
    let rs = sc.root_system();
    let rho = sc.unit(sc.root_vector_index(rs.highest_index()));
    let neg = sc.unit(sc.root_vector_index(rs.negative_of(rs.highest_index())));
    let minus_neg: Vector = neg.iter().map(|x| -x).collect();
    kd.form(&sc.bracket(kd.hrho(), &rho), &minus_neg)
}

/// Basis triples `(i, j, k)`, `i < j < k`, violating the Jacobi identity.
pub fn jacobi_violations(sc: &StructureConstants) -> Vec<(usize, usize, usize)> {
    let n = sc.dim();
    let mut bad = Vec::new();
    let u: Vec<Vector> = (0..n).map(|i| sc.unit(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ij = sc.bracket(&u[i], &u[j]);
            for k in j + 1..n {
                let a = sc.bracket(&ij, &u[k]);
                let b = sc.bracket(&sc.bracket(&u[j], &u[k]), &u[i]);
                let c = sc.bracket(&sc.bracket(&u[k], &u[i]), &u[j]);
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// Pairs `(i, j)` where `[b_i, b_j] ≠ −[b_j, b_i]`.
pub fn antisymmetry_violations(sc: &StructureConstants) -> Vec<(usize, usize)> {
    let n = sc.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i..n {
            let a = sc.bracket(&sc.unit(i), &sc.unit(j));
            let b = sc.bracket(&sc.unit(j), &sc.unit(i));
            if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Basis triples violating `B([x,y],z) + B(y,[x,z]) = 0`.
pub fn killing_invariance_violations(sc: &StructureConstants, kd: &KillingData) -> Vec<(usize, usize, usize)> {
    let n = sc.dim();
    let u: Vec<Vector> = (0..n).map(|i| sc.unit(i)).collect();
    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy = sc.bracket(&u[x], &u[y]);
            for z in y..n {
                let xz = sc.bracket(&u[x], &u[z]);
                let s = &kd.form(&xy, &u[z]) + &kd.form(&u[y], &xz);
                if !s.is_zero() {
                    bad.push((x, y, z));
                }
            }
        }
    }
    bad
}

/// Outcome of the normalization checks, one flag per identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    /// `[e_α, e_{−α}] = −h_α` for every root.
    pub bracket_is_minus_coroot: bool,
    /// `B(h_α, H) = α(H)` on the Cartan basis.
    pub coroot_duality: bool,
    /// `[H, e_α] = α(H) e_α` on the Cartan basis.
    pub cartan_action: bool,
    /// `B(e_α, e_β) = 0` unless `β = −α`, and `B(e_α, e_{−α}) = −1`.
    pub root_pairing: bool,
    /// `B(H, e_α) = 0`.
    pub cartan_root_orthogonal: bool,
    /// `N_{α,β}·N_{−α,−β}` is a positive rational for every pair.
    pub n_product_positive: bool,
    /// `ρ(H_ρ) = 2`.
    pub rho_of_hrho_is_two: bool,
}

impl NormalizationReport {
    pub fn all_pass(&self) -> bool {
        self.bracket_is_minus_coroot
            && self.coroot_duality
            && self.cartan_action
            && self.root_pairing
            && self.cartan_root_orthogonal
            && self.n_product_positive
            && self.rho_of_hrho_is_two
    }
}

pub fn normalization_report(sc: &StructureConstants, kd: &KillingData) -> NormalizationReport {
    let rs = sc.root_system();
    let r = sc.rank();
    let nroots = rs.roots().len();
    let cartan_units: Vec<Vector> = (0..r).map(|i| sc.unit(i)).collect();
    let root_value = |a: usize, h: &[ExactScalar]| -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (i, hi) in h.iter().take(r).enumerate() {
            acc += &(hi * &ExactScalar::from_int(rs.coroot_pairing(&rs.roots()[a], i)));
        }
        acc
    };

    let bracket_is_minus_coroot = (0..nroots).all(|a| {
        let na = rs.negative_of(a);
        let br = sc.bracket(&sc.unit(sc.root_vector_index(a)), &sc.unit(sc.root_vector_index(na)));
        br.iter().zip(kd.coroot(a)).all(|(x, h)| (x + h).is_zero())
    });
    let coroot_duality = (0..nroots).all(|a| {
        cartan_units
            .iter()
            .all(|h| kd.form(kd.coroot(a), h) == root_value(a, h))
    });
    let cartan_action = (0..nroots).all(|a| {
        let ea = sc.unit(sc.root_vector_index(a));
        cartan_units.iter().all(|h| {
            let lhs = sc.bracket(h, &ea);
            let c = root_value(a, h);
            lhs.iter().zip(&ea).all(|(x, e)| *x == e * &c)
        })
    });
    let mut root_pairing = true;
    for a in 0..nroots {
        for b in 0..nroots {
            let v = kd.form(&sc.unit(sc.root_vector_index(a)), &sc.unit(sc.root_vector_index(b)));
            let expected = if b == rs.negative_of(a) {
                ExactScalar::from_int(-1)
            } else {
                ExactScalar::zero()
            };
            root_pairing &= v == expected;
        }
    }
    let cartan_root_orthogonal = (0..nroots).all(|a| {
        cartan_units
            .iter()
            .all(|h| kd.form(h, &sc.unit(sc.root_vector_index(a))).is_zero())
    });
    let mut n_product_positive = true;
    for a in 0..nroots {
        for b in 0..nroots {
            if !rs.contains(&rs.roots()[a].add(&rs.roots()[b])) {
                continue;
            }
            let p = &sc.n_coefficient(a, b) * &sc.n_coefficient(rs.negative_of(a), rs.negative_of(b));
            n_product_positive &= p.is_real() && num_traits::Signed::is_positive(p.re());
        }
    }
    let rho_of_hrho_is_two = root_value(rs.highest_index(), kd.hrho()) == ExactScalar::from_int(2);
    NormalizationReport {
        bracket_is_minus_coroot,
        coroot_duality,
        cartan_action,
        root_pairing,
        cartan_root_orthogonal,
        n_product_positive,
        rho_of_hrho_is_two,
    }
}

/// Everything about one algebra, built in one go.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    pub sc: StructureConstants,
    pub kd: KillingData,
    pub gd: GradedDecomposition,
}

impl GradedAlgebra {
    pub fn of_type(name: &str) -> Result<Self, crate::Error> {
        let rs = RootSystem::of_type(name)?;
        GradedAlgebra::from_root_system(&rs)
    }

    pub fn from_root_system(rs: &RootSystem) -> Result<Self, crate::Error> {
        let sc = build_algebra(rs);
        let kd = killing(&sc)?;
        let gd = grade(&sc, &kd)?;
        Ok(GradedAlgebra { sc, kd, gd })
    }

    /// `e_ρ` as a vector.
    pub fn e_rho(&self) -> Vector {
        self.sc.unit(self.sc.root_vector_index(self.sc.root_system().highest_index()))
    }

    pub fn e_minus_rho(&self) -> Vector {
        let rs = self.sc.root_system();
        self.sc.unit(self.sc.root_vector_index(rs.negative_of(rs.highest_index())))
    }
}
