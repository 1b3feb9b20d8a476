//! The adjoint variety: unipotent orbit points through `e_ρ`, the form θ_G,
//! the degree-one moment map and the embedding checks.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::liealg::{chi_differential, GradedAlgebra, StructureConstants};
use crate::linalg::{self, Matrix, Vector};
use crate::report::{IdentityCheck, IdentityReport};
use crate::rootsys::Root;
use crate::sample::Sampler;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjointError {
    #[error("{0:?} is not a root, so ad of it need not be nilpotent")]
    NotARoot(Vec<i64>),
    #[error("Killing form is singular")]
    SingularKilling,
    #[error("embedding check needs at least 2 sample words, got {0}")]
    TooFewSamples(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraAutomorphism {
    matrix: Matrix,
}

impl AlgebraAutomorphism {
    pub fn identity(dim: usize) -> Self {
        AlgebraAutomorphism {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraAutomorphism) -> Self {
        AlgebraAutomorphism {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        Some(AlgebraAutomorphism {
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Basis pairs `(i, j)` with `M[b_i, b_j] ≠ [M b_i, M b_j]`.
    pub fn bracket_violations(&self, sc: &StructureConstants) -> Vec<(usize, usize)> {
        let n = sc.dim();
        let cols: Vec<Vector> = (0..n).map(|i| self.matrix.column(i)).collect();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&sc.bracket(&sc.unit(i), &sc.unit(j)));
                if lhs != sc.bracket(&cols[i], &cols[j]) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// `Mᵀ G M = G`.
    pub fn preserves_form(&self, gram: &Matrix) -> bool {
        self.matrix.transpose().mul(gram).mul(&self.matrix) == *gram
    }
}

/// `exp(t · ad e_α)`; the series stops once a power of `ad e_α` vanishes.
pub fn exp_ad(sc: &StructureConstants, alpha: &Root, t: &ExactScalar) -> Result<AlgebraAutomorphism, AdjointError> {
    let idx = sc.index_of_root(alpha).ok_or_else(|| AdjointError::NotARoot(alpha.0.clone()))?;
    let ad = sc.ad_basis(idx).scale(t);
    let n = sc.dim();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(&ad).scale(&ExactScalar::from_frac(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    Ok(AlgebraAutomorphism { matrix: out })
}

/// A point of the cone `P_𝒢 = Ğ·e_ρ`, with the word that reaches it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint {
    pub vector: Vector,
    pub word: Vec<(Root, ExactScalar)>,
    /// Product of the word's exponentials, leftmost factor first.
    pub automorphism: AlgebraAutomorphism,
}

impl OrbitPoint {
    /// `c·pt`: the ℂ^×-action on the cone, kept rational.
    pub fn scaled(&self, c: &ExactScalar) -> Vector {
        self.vector.iter().map(|x| x * c).collect()
    }
}

/// `exp(t_1 ad e_{α_1}) ⋯ exp(t_k ad e_{α_k}) e_ρ`.
pub fn orbit_sample(ga: &GradedAlgebra, word: &[(Root, ExactScalar)]) -> Result<OrbitPoint, AdjointError> {
    let mut m = AlgebraAutomorphism::identity(ga.sc.dim());
    for (alpha, t) in word {
        m = m.compose(&exp_ad(&ga.sc, alpha, t)?);
    }
    Ok(OrbitPoint {
        vector: m.apply(&ga.e_rho()),
        word: word.to_vec(),
        automorphism: m,
    })
}

pub fn random_word(ga: &GradedAlgebra, sampler: &mut Sampler, len: usize) -> Vec<(Root, ExactScalar)> {
    let roots = ga.sc.root_system().roots();
    (0..len)
        .map(|_| (roots[sampler.index(roots.len())].clone(), sampler.nonzero_rational()))
        .collect()
}

/// One letter per root of `ρ`-height −1 or −2, so the word sweeps the big
/// cell of the adjoint variety and distinct parameters give distinct lines.
pub fn big_cell_word(ga: &GradedAlgebra, sampler: &mut Sampler) -> Vec<(Root, ExactScalar)> {
    let rs = ga.sc.root_system();
    rs.roots()
        .iter()
        .filter(|r| rs.rho_height(r).is_ok_and(|h| h < 0))
        .map(|r| (r.clone(), sampler.parameter()))
        .collect()
}

/// `⟨μ(pt), X_i⟩ = B(pt, X_i)` for each basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentVector {
    pub coefficients: Vector,
}

pub fn moment_map(ga: &GradedAlgebra, pt: &[ExactScalar]) -> MomentVector {
    MomentVector {
        coefficients: ga.kd.gram().mul_vec(pt),
    }
}

/// `κ = ♭⁻¹ ∘ μ`.
pub fn kappa(ga: &GradedAlgebra, mu: &MomentVector) -> Vector {
    ga.kd.gram_inverse().mul_vec(&mu.coefficients)
}

/// Matrix of `(X, Y) ↦ B(e_ρ, [X, Y])`.
pub fn theta_g_pairing(ga: &GradedAlgebra) -> Matrix {
    let n = ga.sc.dim();
    let mu = moment_map(ga, &ga.e_rho()).coefficients;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ExactScalar::zero();
            for (k, c) in ga.sc.bracket_basis(i, j) {
                acc += &(c * &mu[*k]);
            }
            m[(i, j)] = acc;
        }
    }
    m
}

/// Kernel of dθ_G equals ℒ₀, θ_G kills `H_ρ`, the infinitesimal scaling law,
/// `dχ(H_ρ) = 2`, the isotropy of `e_ρ` under grade ≥ 0 unipotents and
/// `(ad e_ρ)³ = 0`.
pub fn theta_g_checks(ga: &GradedAlgebra) -> IdentityReport {
    let mut r = IdentityReport::new();
    let (sc, kd) = (&ga.sc, &ga.kd);
    let e_rho = ga.e_rho();
    let omega = theta_g_pairing(ga);
    let ker = omega.kernel();
    let l0 = ga.gd.l0();
    r.push(IdentityCheck::check("ker dtheta_G = L0", ker.len() == l0.len() && linalg::same_span(&ker, l0), || {
        format!("kernel dim {}, L0 dim {}", ker.len(), l0.len())
    }));
    let b = kd.form(&e_rho, kd.hrho());
    r.push(IdentityCheck::check("B(e_rho, H_rho) = 0", b.is_zero(), || b.to_string()));
    let two = ExactScalar::from_int(2);
    let mut bad = None;
    for i in 0..sc.dim() {
        let x = sc.unit(i);
        let lhs = -kd.form(&e_rho, &sc.bracket(kd.hrho(), &x));
        if lhs != &two * &kd.form(&e_rho, &x) {
            bad = Some(sc.basis().labels()[i].clone());
        }
    }
    r.push(IdentityCheck::check("-B(e_rho, [H_rho, X]) = 2 B(e_rho, X)", bad.is_none(), || {
        format!("fails at {}", bad.clone().unwrap_or_default())
    }));
    let chi = chi_differential(kd, sc);
    r.push(IdentityCheck::check("dchi(H_rho) = 2", chi == two, || chi.to_string()));
    let rs = sc.root_system();
    let mut moved = Vec::new();
    for &p in rs.positive() {
        let m = exp_ad(sc, &rs.roots()[p], &ExactScalar::one()).expect("roots are accepted");
        if m.apply(&e_rho) != e_rho {
            moved.push(format!("{:?}", rs.roots()[p].0));
        }
    }
    r.push(IdentityCheck::check("positive unipotents fix e_rho", moved.is_empty(), || moved.join(", ")));
    let ad = sc.ad(&e_rho);
    r.push(IdentityCheck::check("(ad e_rho)^3 = 0", ad.mul(&ad).mul(&ad).is_zero(), || "nonzero cube".into()));
    r
}

/// `B(M pt, X) = B(pt, M⁻¹ X)` on the basis, and `(δg)∘♭ = ♭∘(dg)`, written as
/// `(M⁻¹)ᵀ G = G M`.
pub fn equivariance_checks(ga: &GradedAlgebra, m: &AlgebraAutomorphism, pt: &[ExactScalar]) -> Result<IdentityReport, AdjointError> {
    let mut r = IdentityReport::new();
    let inv = m.inverse().ok_or(AdjointError::SingularKilling)?;
    let moved = moment_map(ga, &m.apply(pt)).coefficients;
    let mut ok = true;
    for i in 0..ga.sc.dim() {
        ok &= moved[i] == ga.kd.form(pt, &inv.apply(&ga.sc.unit(i)));
    }
    r.push(IdentityCheck::check("mu equivariance", ok, || "B(M pt, X) ≠ B(pt, M^-1 X)".into()));
    let gram = ga.kd.gram();
    let flat = inv.matrix().transpose().mul(gram) == gram.mul(m.matrix());
    r.push(IdentityCheck::check("flat intertwines coadjoint and adjoint", flat, || "(M^-1)^T G ≠ G M".into()));
    let lhs = kappa(ga, &moment_map(ga, &m.apply(pt)));
    let rhs = m.apply(&kappa(ga, &moment_map(ga, pt)));
    r.push(IdentityCheck::check("kappa equivariance", lhs == rhs, || "κ(M pt) ≠ M κ(pt)".into()));
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingRow {
    pub word_index: usize,
    pub tangent_rank: usize,
    pub isotropic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub expected_rank: usize,
    pub rows: Vec<EmbeddingRow>,
    /// Pairs of sample indices with proportional coordinate vectors.
    pub coincident: Vec<(usize, usize)>,
}

impl EmbeddingReport {
    pub fn ranks_ok(&self) -> bool {
        self.rows.iter().all(|r| r.tangent_rank == self.expected_rank && r.isotropic)
    }
}

/// The tangent space of the orbit at `pt` is the image of `ad pt`.
pub fn embedding_check(ga: &GradedAlgebra, words: &[Vec<(Root, ExactScalar)>]) -> Result<EmbeddingReport, AdjointError> {
    if words.len() < 2 {
        return Err(AdjointError::TooFewSamples(words.len()));
    }
    let points: Vec<OrbitPoint> = words.iter().map(|w| orbit_sample(ga, w)).collect::<Result<_, _>>()?;
    let rows = points
        .iter()
        .enumerate()
        .map(|(i, p)| EmbeddingRow {
            word_index: i,
            tangent_rank: ga.sc.ad(&p.vector).rank(),
            isotropic: ga.kd.form(&p.vector, &p.vector).is_zero() && p.vector.iter().any(|x| !x.is_zero()),
        })
        .collect();
    let mut coincident = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if linalg::proportional(&points[i].vector, &points[j].vector) {
                coincident.push((i, j));
            }
        }
    }
    Ok(EmbeddingReport {
        expected_rank: ga.gd.dim_p(),
        rows,
        coincident,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointSummary {
    pub orbit_dim: usize,
    pub l0_kernel_dim: usize,
    pub moment_round_trip: bool,
    pub embedding: EmbeddingReport,
}

/// The whole adjoint suite on `samples` seeded words.
pub fn adjoint_suite(ga: &GradedAlgebra, sampler: &mut Sampler, samples: usize) -> Result<(IdentityReport, AdjointSummary), AdjointError> {
    let mut r = theta_g_checks(ga);
    let words: Vec<Vec<(Root, ExactScalar)>> = (0..samples.max(2))
        .map(|_| {
            let len = sampler.index(3);
            let mut w = random_word(ga, sampler, len);
            w.extend(big_cell_word(ga, sampler));
            w
        })
        .collect();
    let mut round_trip = true;
    for (i, w) in words.iter().enumerate() {
        let pt = orbit_sample(ga, w)?;
        let m = &pt.automorphism;
        let bv = m.bracket_violations(&ga.sc);
        r.push(IdentityCheck::check(format!("automorphism {i:02} preserves brackets"), bv.is_empty(), || {
            format!("{:?}", bv.first())
        }));
        r.push(IdentityCheck::check(format!("automorphism {i:02} preserves B"), m.preserves_form(ga.kd.gram()), || {
            "MᵀGM ≠ G".into()
        }));
        let back = kappa(ga, &moment_map(ga, &pt.vector));
        round_trip &= back == pt.vector;
        r.push(IdentityCheck::check(format!("kappa round trip {i:02}"), back == pt.vector, || {
            format!("{back:?}")
        }));
        for c in equivariance_checks(ga, m, &pt.vector)?.checks {
            r.push(IdentityCheck {
                name: format!("{} {i:02}", c.name),
                ..c
            });
        }
    }
    let embedding = embedding_check(ga, &words)?;
    r.push(IdentityCheck::check("embedding tangent rank", embedding.ranks_ok(), || {
        format!("{:?}", embedding.rows.iter().map(|r| r.tangent_rank).collect::<Vec<_>>())
    }));
    let summary = AdjointSummary {
        orbit_dim: embedding.expected_rank,
        l0_kernel_dim: theta_g_pairing(ga).kernel().len(),
        moment_round_trip: round_trip,
        embedding,
    };
    Ok((r, summary))
}
