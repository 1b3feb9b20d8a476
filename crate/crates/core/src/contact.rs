//! Principal contact bundles of degree δ on explicit charts.
//!
//! Two chart flavors: the Hopf model on `ℂ^{2n+2}∖0` (all coordinates of
//! scaling weight 1, `θ̃ = Σ ζ_k dζ_{k+n+1} − ζ_{k+n+1} dζ_k`, δ = 2) and the
//! fibered model `(z_1..z_{2n+1}, λ)` with `θ = λ^δ γ`, where
//! `γ = dz_{2n+1} + Σ_{k≤n} (z_k dz_{n+k} − z_{n+k} dz_k)`.
//!
//! Hamiltonian fields are the (1,0)-parts `X′_f` defined by `ι_X dθ = −df`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::error::AlgebraError;
use crate::exterior::{hopf_theta, poly_inverse, two_form_at, ChartSpace, ExteriorError, PolyForm, PolyVectorField, RationalForm};
use crate::linalg::{self, Matrix};
use crate::poly::{var_table, MultiPoly};
use crate::rational::{substitute_poly, RationalFunction};
use crate::report::{IdentityCheck, IdentityReport};
use crate::sample::Sampler;
use crate::scalar::ExactScalar;

/// Fresh parameter used by weighted scaling substitutions.
const SCALE_VAR: &str = "τ";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContactError {
    #[error("degree δ = 0 is rejected: dθ = d(λ^0 γ) cannot be symplectic")]
    ZeroDelta,
    #[error("θ is not homogeneous of weight {0} under the scaling weights")]
    NotHomogeneous(i64),
    #[error("dθ is degenerate on this chart")]
    Degenerate,
    #[error("Hamiltonian functions of degree 0 are rejected")]
    ZeroDegree,
    #[error("sample point has fiber coordinate 0")]
    FiberAtZero,
    #[error("section `{0}` is not a right inverse of the projection")]
    NotASection(String),
    #[error("overlap identity fails between charts `{0}` and `{1}`: {2}")]
    OverlapMismatch(String, String, String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hopf,
    Fibered,
}

#[derive(Debug, Clone)]
pub struct ContactChart {
    model: Model,
    n: usize,
    chart: ChartSpace,
    theta: PolyForm,
    dtheta: PolyForm,
    delta: i64,
    weights: Vec<i64>,
    dtheta_inverse: Vec<Vec<MultiPoly>>,
}

impl ContactChart {
    /// Hopf model on `ℂ^{2n+2}` with coordinates `ζ0..ζ{2n+1}`.
    pub fn hopf(n: usize) -> Result<Self, ContactError> {
        let theta = hopf_theta(n);
        let weights = vec![1; 2 * n + 2];
        ContactChart::new(Model::Hopf, n, theta, 2, weights)
    }

    /// Fibered model over `z1..z{2n+1}` with fiber `λ`.
    pub fn fibered(n: usize, delta: i64) -> Result<Self, ContactError> {
        if delta == 0 {
            return Err(ContactError::ZeroDelta);
        }
        let names: Vec<String> = (1..=2 * n + 1).map(|k| format!("z{k}")).collect();
        let chart = ChartSpace::new(&names, Some("λ"))?;
        let vars = chart.vars().clone();
        let lam_idx = 2 * n + 1;
        let mut lam = vec![0; vars.len()];
        lam[lam_idx] = delta as i32;
        let lam_delta = MultiPoly::monomial(&vars, lam, ExactScalar::one());
        let mut terms = vec![(vec![2 * n], lam_delta.clone())];
        for k in 0..n {
            terms.push((vec![n + k], lam_delta.mul(&MultiPoly::var_at(&vars, k))));
            terms.push((vec![k], lam_delta.mul(&MultiPoly::var_at(&vars, n + k)).neg()));
        }
        let theta = PolyForm::from_terms(&chart, 1, terms)?;
        let mut weights = vec![0; vars.len()];
        weights[lam_idx] = 1;
        ContactChart::new(Model::Fibered, n, theta, delta, weights)
    }

    /// Validates `δ ≠ 0`, weighted homogeneity of θ and invertibility of dθ.
    pub fn new(model: Model, n: usize, theta: PolyForm, delta: i64, weights: Vec<i64>) -> Result<Self, ContactError> {
        if delta == 0 {
            return Err(ContactError::ZeroDelta);
        }
        let chart = theta.chart().clone();
        if theta.degree() != 1 || weights.len() != chart.dim() || chart.dim() != 2 * n + 2 {
            return Err(ContactError::InvalidArgument("θ must be a 1-form on a (2n+2)-dimensional chart".into()));
        }
        for (idx, c) in theta.terms() {
            let slot: i64 = idx.iter().map(|&i| weights[i]).sum();
            if c.weighted_degrees(&weights).iter().any(|&w| w + slot != delta) {
                return Err(ContactError::NotHomogeneous(delta));
            }
        }
        let dtheta = theta.d();
        let dtheta_inverse = poly_inverse(&dtheta.two_form_matrix(), chart.vars()).map_err(|e| match e {
            ExteriorError::Degenerate => ContactError::Degenerate,
            other => other.into(),
        })?;
        Ok(ContactChart {
            model,
            n,
            chart,
            theta,
            dtheta,
            delta,
            weights,
            dtheta_inverse,
        })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chart(&self) -> &ChartSpace {
        &self.chart
    }

    pub fn theta(&self) -> &PolyForm {
        &self.theta
    }

    pub fn dtheta(&self) -> &PolyForm {
        &self.dtheta
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Infinitesimal generator `Σ w_k x_k ∂_k` of the ℂ^×-action.
    pub fn vertical_field(&self) -> PolyVectorField {
        let vars = self.chart.vars();
        PolyVectorField::new(
            &self.chart,
            self.weights
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != 0)
                .map(|(k, &w)| (k, MultiPoly::var_at(vars, k).scale(&ExactScalar::from_int(w)))),
        )
        .expect("coordinates live on the chart")
    }

    /// The unique `X` with `ι_X dθ = −v` for a 1-form `v`.
    pub fn dual_field(&self, v: &PolyForm) -> Result<PolyVectorField, ContactError> {
        let n = self.dim();
        let coeff: Vec<MultiPoly> = (0..n).map(|k| v.coefficient(&[k])).collect();
        let mut comps = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = MultiPoly::zero(self.chart.vars());
            for (k, vk) in coeff.iter().enumerate() {
                if !vk.is_zero() {
                    acc = acc.add(&vk.mul(&self.dtheta_inverse[k][i]));
                }
            }
            comps.push((i, acc.neg()));
        }
        Ok(PolyVectorField::new(&self.chart, comps)?)
    }

    /// `Ξ(θ)`, the field with `ι_Ξ dθ = −θ`.
    pub fn euler_field(&self) -> Result<PolyVectorField, ContactError> {
        self.dual_field(&self.theta)
    }

    /// `X′_f` with `ι_{X′_f} dθ = −df`.
    pub fn hamiltonian_field(&self, f: &MultiPoly) -> Result<PolyVectorField, ContactError> {
        let df = PolyForm::function(&self.chart, f)?.d();
        self.dual_field(&df)
    }

    /// `θ(X)`.
    pub fn theta_of(&self, x: &PolyVectorField) -> Result<MultiPoly, ContactError> {
        Ok(self.theta.interior(x)?.as_function())
    }

    /// `dθ(X, Y) = ι_Y ι_X dθ`.
    pub fn dtheta_pair(&self, x: &PolyVectorField, y: &PolyVectorField) -> Result<MultiPoly, ContactError> {
        Ok(self.dtheta.interior(x)?.interior(y)?.as_function())
    }

    /// Poisson bracket `{f, g} = dθ(X′_f, X′_g)`.
    pub fn poisson(&self, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, ContactError> {
        self.dtheta_pair(&self.hamiltonian_field(f)?, &self.hamiltonian_field(g)?)
    }

    /// `p(τ^{w}·x)`, over the chart variables plus the fresh parameter `τ`.
    pub fn scaled(&self, p: &MultiPoly) -> Result<MultiPoly, ContactError> {
        let p = self.chart.adopt(p)?;
        let mut names: Vec<String> = self.chart.vars().iter().cloned().collect();
        names.push(SCALE_VAR.to_string());
        let big = var_table(names);
        let tau = MultiPoly::var_at(&big, big.len() - 1);
        let mut bindings = HashMap::new();
        for (k, &w) in self.weights.iter().enumerate() {
            if w != 0 {
                let img = MultiPoly::var_at(&big, k).mul(&tau.powi(w as i32).expect("τ is a single term"));
                bindings.insert(big[k].clone(), img);
            }
        }
        Ok(p.substitute(&bindings)?)
    }

    /// `p(τ^w·x) = τ^k p(x)` exactly.
    pub fn scales_as(&self, p: &MultiPoly, k: i64) -> Result<bool, ContactError> {
        let lhs = self.scaled(p)?;
        let vars = lhs.vars().clone();
        let mut e = vec![0; vars.len()];
        e[vars.len() - 1] = k as i32;
        let rhs = self.chart.adopt(p)?.rebase(&vars)?.mul(&MultiPoly::monomial(&vars, e, ExactScalar::one()));
        Ok(lhs == rhs)
    }

    /// Degree by the Euler operator: `Ξ(θ) f = −(ℓ/δ) f`.
    pub fn degree_by_euler(&self, f: &MultiPoly) -> Result<Option<i64>, ContactError> {
        let f = self.chart.adopt(f)?;
        let Some((m, c)) = f.leading_term() else { return Ok(None) };
        let g = self.euler_field()?.apply(&f)?;
        let gm = g.terms().find(|(k, _)| *k == m).map(|(_, v)| v.clone()).unwrap_or_default();
        let ratio = &gm / c;
        if g != f.scale(&ratio) {
            return Ok(None);
        }
        let ell = -(&ratio * &ExactScalar::from_int(self.delta));
        Ok(ell.to_i64())
    }

    /// Degree by substitution: `f(τ^w·x) = τ^ℓ f(x)`.
    pub fn degree_by_scaling(&self, f: &MultiPoly) -> Result<Option<i64>, ContactError> {
        let f = self.chart.adopt(f)?;
        let Some((m, _)) = f.leading_term() else { return Ok(None) };
        let k: i64 = m.0.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum();
        Ok(self.scales_as(&f, k)?.then_some(k))
    }

    pub fn sample_point(&self, sampler: &mut Sampler) -> HashMap<String, ExactScalar> {
        loop {
            let vals: Vec<ExactScalar> = self
                .chart
                .vars()
                .iter()
                .map(|v| {
                    if Some(v.as_str()) == self.chart.fiber_var() {
                        sampler.nonzero_rational()
                    } else {
                        sampler.rational()
                    }
                })
                .collect();
            if vals.iter().any(|v| !v.is_zero()) {
                return self.chart.vars().iter().cloned().zip(vals).collect();
            }
        }
    }

    /// Random homogeneous function of degree `ell` (weighted, Laurent in the
    /// fiber where the model has one).
    pub fn sample_homogeneous(&self, sampler: &mut Sampler, ell: i64, max_terms: usize) -> Result<MultiPoly, ContactError> {
        let vars = self.chart.vars().clone();
        match self.model {
            Model::Hopf => {
                if ell < 0 {
                    return Err(ContactError::InvalidArgument("negative degree on the Hopf model".into()));
                }
                let active: Vec<usize> = (0..vars.len()).collect();
                Ok(sampler.homogeneous_poly(&vars, &active, ell as u32, max_terms))
            }
            Model::Fibered => {
                let base: Vec<usize> = (0..vars.len() - 1).collect();
                let g = sampler.poly(&vars, &base, 3, max_terms);
                let mut e = vec![0; vars.len()];
                e[vars.len() - 1] = ell as i32;
                Ok(g.mul(&MultiPoly::monomial(&vars, e, ExactScalar::one())))
            }
        }
    }
}

/// `f` together with its degree `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousFunction {
    f: MultiPoly,
    ell: i64,
}

impl HomogeneousFunction {
    /// Determines the degree; fails when `f` is not homogeneous or is zero.
    pub fn new(cc: &ContactChart, f: &MultiPoly) -> Result<Self, ContactError> {
        let ell = degree_of(cc, f)?.ok_or_else(|| ContactError::InvalidArgument(format!("{f} is not homogeneous")))?;
        Ok(HomogeneousFunction { f: cc.chart().adopt(f)?, ell })
    }

    /// `f` with a declared degree, verified by scaling (the zero function has
    /// every degree).
    pub fn with_degree(cc: &ContactChart, f: &MultiPoly, ell: i64) -> Result<Self, ContactError> {
        if !cc.scales_as(f, ell)? {
            return Err(ContactError::InvalidArgument(format!("{f} is not of degree {ell}")));
        }
        Ok(HomogeneousFunction { f: cc.chart().adopt(f)?, ell })
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }
}

/// `ℓ` when `Ξ(θ)f = −(ℓ/δ)f` for an integer `ℓ` and the scaling test agrees.
pub fn degree_of(cc: &ContactChart, f: &MultiPoly) -> Result<Option<i64>, ContactError> {
    let a = cc.degree_by_euler(f)?;
    let b = cc.degree_by_scaling(f)?;
    Ok(if a == b { a } else { None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// θ annihilates the generator of the ℂ^×-action.
    pub p1_vertical: bool,
    /// `R_λ^* θ = λ^δ θ` by weighted substitution.
    pub p2_scaling: bool,
    /// `(dθ)^{n+1}` has a nonzero coefficient.
    pub p3_top_power: bool,
    /// `dθ` has full rank at every sampled point.
    pub p3_pointwise: bool,
    pub points_checked: usize,
    pub top_coefficient: String,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.p1_vertical && self.p2_scaling && self.p3_top_power && self.p3_pointwise
    }

    pub fn to_identity_report(&self) -> IdentityReport {
        let mut r = IdentityReport::new();
        r.push(IdentityCheck::check("vertical annihilation", self.p1_vertical, || "θ(V) ≠ 0".into()));
        r.push(IdentityCheck::check("weighted scaling", self.p2_scaling, || "R^*θ ≠ λ^δ θ".into()));
        r.push(IdentityCheck::check("top power nonzero", self.p3_top_power, || self.top_coefficient.clone()));
        r.push(IdentityCheck::check("pointwise rank", self.p3_pointwise, || "dθ singular at a sample".into()));
        r
    }
}

pub fn verify_axioms(cc: &ContactChart, sampler: &mut Sampler, samples: usize) -> Result<AxiomReport, ContactError> {
    let p1_vertical = cc.theta_of(&cc.vertical_field())?.is_zero();
    let mut p2_scaling = true;
    for (idx, c) in cc.theta().terms() {
        let slot: i64 = idx.iter().map(|&i| cc.weights()[i]).sum();
        p2_scaling &= cc.scales_as(c, cc.delta() - slot)?;
    }
    let top = cc.dtheta().wedge_power(cc.n() + 1)?;
    let top_coefficient = top.coefficient(&(0..cc.dim()).collect::<Vec<_>>());
    let p3_top_power = !top_coefficient.is_zero();
    let mut p3_pointwise = true;
    for _ in 0..samples {
        let pt = cc.sample_point(sampler);
        p3_pointwise &= two_form_at(cc.dtheta(), &pt)?.rank() == cc.dim();
    }
    Ok(AxiomReport {
        p1_vertical,
        p2_scaling,
        p3_top_power,
        p3_pointwise,
        points_checked: samples,
        top_coefficient: top_coefficient.to_string(),
    })
}

fn frac(a: i64, b: i64) -> ExactScalar {
    ExactScalar::from_frac(a, b)
}

/// θ(X′_f) = (ℓ/δ) f, the bracket identity, the Poisson degree law and the
/// scaling law of the Hamiltonian field components.
pub fn check_lemma21(cc: &ContactChart, f: &HomogeneousFunction, g: &HomogeneousFunction) -> Result<IdentityReport, ContactError> {
    let mut r = IdentityReport::new();
    let delta = cc.delta();
    let xf = cc.hamiltonian_field(f.f())?;
    let xg = cc.hamiltonian_field(g.f())?;
    for (name, h, x) in [("f", f, &xf), ("g", g, &xg)] {
        let lhs = cc.theta_of(x)?;
        let rhs = h.f().scale(&frac(h.ell(), delta));
        r.push(IdentityCheck::check(format!("theta(X_{name}) = (l/delta) {name}"), lhs == rhs, || {
            format!("residual {}", lhs.sub(&rhs))
        }));
        let (a, b) = (cc.degree_by_euler(h.f())?, cc.degree_by_scaling(h.f())?);
        let ok = h.f().is_zero() || (a == b && a == Some(h.ell()));
        r.push(IdentityCheck::check(format!("degree of {name}: euler = scaling"), ok, || {
            format!("euler {a:?}, scaling {b:?}, declared {}", h.ell())
        }));
        let mut comps_ok = true;
        let mut bad = String::new();
        for (k, comp) in x.components() {
            let w = cc.weights()[*k] + h.ell() - delta;
            if !cc.scales_as(comp, w)? {
                comps_ok = false;
                bad = format!("component {k}: {comp} is not of weight {w}");
            }
        }
        r.push(IdentityCheck::check(format!("R-scaling of X_{name}"), comps_ok, || bad));
    }
    let pb = cc.dtheta_pair(&xf, &xg)?;
    let lhs = xf.bracket(&xg)?;
    let rhs = cc.hamiltonian_field(&pb)?;
    r.push(IdentityCheck::check("[X_f, X_g] = X_{dtheta(X_f, X_g)}", lhs == rhs, || {
        format!("residual {}", lhs.sub(&rhs).map(|x| x.to_string()).unwrap_or_default())
    }));
    let expected = f.ell() + g.ell() - delta;
    let law = pb.is_zero() || degree_of(cc, &pb)? == Some(expected);
    r.push(IdentityCheck::check("Poisson degree l + l' - delta", law, || {
        format!("{{f,g}} = {pb} is not of degree {expected}")
    }));
    Ok(r)
}

/// `L_{X′_f} θ`.
pub fn lie_theta_of_hamiltonian(cc: &ContactChart, f: &MultiPoly) -> Result<PolyForm, ContactError> {
    Ok(cc.theta().lie_derivative(&cc.hamiltonian_field(f)?)?)
}

/// For each degree-δ sample: `L_{X′_f}θ = 0`, and `Y = X′_f` is recovered
/// from `θ(Y)` as `X′_{θ(Y)}` with `θ(Y)` of degree δ.
pub fn check_lemma22(cc: &ContactChart, samples: &[HomogeneousFunction]) -> Result<IdentityReport, ContactError> {
    let mut r = IdentityReport::new();
    for (i, f) in samples.iter().enumerate() {
        if f.ell() != cc.delta() {
            return Err(ContactError::InvalidArgument(format!("sample {i} has degree {} ≠ δ", f.ell())));
        }
        let l = lie_theta_of_hamiltonian(cc, f.f())?;
        r.push(IdentityCheck::check(format!("L_(X_f) theta = 0 [{i}]"), l.is_zero(), || l.to_string()));
        let y = cc.hamiltonian_field(f.f())?;
        let h = cc.theta_of(&y)?;
        let deg_ok = h.is_zero() || degree_of(cc, &h)? == Some(cc.delta());
        let back = cc.hamiltonian_field(&h)?;
        let diff = y.sub(&back)?;
        r.push(IdentityCheck::check(format!("Y = X_(theta(Y)) [{i}]"), deg_ok && diff.is_zero(), || {
            format!("theta(Y) = {h}, Y - X = {diff}")
        }));
    }
    Ok(r)
}

/// A local section of the total space over a base chart, together with the
/// projection written as rational functions on the total chart.
#[derive(Debug, Clone)]
pub struct Section {
    pub label: String,
    pub base: ChartSpace,
    /// Total-chart coordinate ↦ polynomial on the base chart.
    pub images: HashMap<String, MultiPoly>,
    /// Base coordinate ↦ rational function of the total-chart coordinates.
    pub projection: HashMap<String, RationalFunction>,
}

/// The `n+1` affine sections `ζ_i = 1` of `ℂ^{2n+2}∖0 → P_{2n+1}`; chart `i`
/// has coordinates `u{i}_k = ζ_k/ζ_i`.
pub fn hopf_sections(cc: &ContactChart) -> Vec<Section> {
    let total = cc.chart().vars().clone();
    let m = total.len();
    (0..m)
        .map(|i| {
            let names: Vec<String> = (0..m).filter(|&k| k != i).map(|k| format!("u{i}_{k}")).collect();
            let base = ChartSpace::new(&names, None).unwrap();
            let mut images = HashMap::new();
            let mut projection = HashMap::new();
            for k in 0..m {
                if k == i {
                    images.insert(total[k].clone(), MultiPoly::one(base.vars()));
                    continue;
                }
                let u = format!("u{i}_{k}");
                images.insert(total[k].clone(), base.coordinate(&u).unwrap());
                let ratio = RationalFunction::new(MultiPoly::var_at(&total, k), MultiPoly::var_at(&total, i)).unwrap();
                projection.insert(u, ratio);
            }
            Section {
                label: format!("U{i}"),
                base,
                images,
                projection,
            }
        })
        .collect()
}

/// `σ(z) = (z, c)` on the fibered model.
pub fn fibered_constant_section(cc: &ContactChart, label: &str, c: ExactScalar) -> Section {
    let total = cc.chart().vars().clone();
    let names: Vec<String> = cc.chart().base_vars().to_vec();
    let base = ChartSpace::new(&names, None).unwrap();
    let mut images = HashMap::new();
    let mut projection = HashMap::new();
    for (k, v) in names.iter().enumerate() {
        images.insert(v.clone(), base.coordinate(v).unwrap());
        projection.insert(v.clone(), RationalFunction::from_poly(MultiPoly::var_at(&total, k)));
    }
    let fiber = cc.chart().fiber_var().expect("fibered chart").to_string();
    images.insert(fiber, MultiPoly::constant(base.vars(), c));
    Section {
        label: label.to_string(),
        base,
        images,
        projection,
    }
}

/// Local contact forms `γ_i` with transition functions `γ_i = f_ij γ_j`.
#[derive(Debug, Clone)]
pub struct CStructureData {
    pub labels: Vec<String>,
    pub gammas: Vec<PolyForm>,
    /// `(i, j)` ↦ chart-`j` coordinates as rational functions on chart `i`.
    pub changes: BTreeMap<(usize, usize), HashMap<String, RationalFunction>>,
    pub transitions: BTreeMap<(usize, usize), RationalFunction>,
    /// `g_ij` with `σ_i = R_{g_ij} σ_j`, when the data came from sections.
    pub gauges: BTreeMap<(usize, usize), RationalFunction>,
    pub report: IdentityReport,
}

impl CStructureData {
    /// Builds transitions as ratios `γ_i / φ_ij^* γ_j` and checks the contact condition and overlap proportionality.
    pub fn from_forms(
        labels: Vec<String>,
        gammas: Vec<PolyForm>,
        changes: BTreeMap<(usize, usize), HashMap<String, RationalFunction>>,
        n: usize,
    ) -> Result<Self, ContactError> {
        let mut report = IdentityReport::new();
        for (label, g) in labels.iter().zip(&gammas) {
            let top = g.wedge(&g.d().wedge_power(n)?)?;
            report.push(IdentityCheck::check(format!("contact condition on {label}"), !top.is_zero(), || "γ∧(dγ)^n = 0".into()));
        }
        let mut transitions = BTreeMap::new();
        for (&(i, j), phi) in &changes {
            let gi = RationalForm::from_poly_form(&gammas[i]);
            let gj = RationalForm::from_poly_form(&gammas[j]).pullback(gammas[i].chart(), phi)?;
            match gi.ratio_to(&gj) {
                Some(f) => {
                    report.push(IdentityCheck::pass(format!("overlap proportionality on {}∩{}", labels[i], labels[j])));
                    transitions.insert((i, j), f);
                }
                None => {
                    return Err(ContactError::OverlapMismatch(
                        labels[i].clone(),
                        labels[j].clone(),
                        format!("γ_i = {gi} is not a multiple of γ_j = {gj}"),
                    ))
                }
            }
        }
        Ok(CStructureData {
            labels,
            gammas,
            changes,
            transitions,
            gauges: BTreeMap::new(),
            report,
        })
    }
}

/// `γ_i = σ_i^* θ`, with `f_ij = g_ij^δ` checked against the gauge
/// `σ_i = R_{g_ij} σ_j`.
pub fn reconstruct_cstructure(cc: &ContactChart, sections: &[Section]) -> Result<CStructureData, ContactError> {
    for s in sections {
        let binds: HashMap<String, RationalFunction> = s
            .images
            .iter()
            .map(|(k, v)| (k.clone(), RationalFunction::from_poly(v.clone())))
            .collect();
        for v in s.base.vars().iter() {
            let proj = s.projection.get(v).ok_or_else(|| ContactError::NotASection(s.label.clone()))?;
            let back = proj.substitute(&binds)?;
            if back != RationalFunction::from_poly(s.base.coordinate(v)?) {
                return Err(ContactError::NotASection(s.label.clone()));
            }
        }
    }
    let gammas: Vec<PolyForm> = sections
        .iter()
        .map(|s| cc.theta().pullback(&s.base, &s.images))
        .collect::<Result<_, _>>()?;
    let mut changes = BTreeMap::new();
    for (i, si) in sections.iter().enumerate() {
        let binds: HashMap<String, RationalFunction> = si
            .images
            .iter()
            .map(|(k, v)| (k.clone(), RationalFunction::from_poly(v.clone())))
            .collect();
        for (j, sj) in sections.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut phi = HashMap::new();
            for v in sj.base.vars().iter() {
                phi.insert(v.clone(), sj.projection[v].substitute(&binds)?);
            }
            changes.insert((i, j), phi);
        }
    }
    let labels: Vec<String> = sections.iter().map(|s| s.label.clone()).collect();
    let mut data = CStructureData::from_forms(labels, gammas, changes, cc.n())?;

    let total = cc.chart().vars().clone();
    let mut gauges = BTreeMap::new();
    for (&(i, j), phi) in &data.changes {
        let (si, sj) = (&sections[i], &sections[j]);
        let pulled: Vec<RationalFunction> = total
            .iter()
            .map(|v| substitute_poly(&sj.images[v], phi))
            .collect::<Result<_, _>>()?;
        let own: Vec<RationalFunction> = total.iter().map(|v| RationalFunction::from_poly(si.images[v].clone())).collect();
        let k = (0..total.len())
            .find(|&k| cc.weights()[k] == 1 && !pulled[k].is_zero())
            .ok_or_else(|| ContactError::InvalidArgument("no weight-one coordinate to read the gauge from".into()))?;
        let g = own[k].div(&pulled[k]).ok_or(AlgebraError::ZeroDenominator)?;
        for kk in 0..total.len() {
            let gw = g.pow(cc.weights()[kk] as i32).ok_or(AlgebraError::ZeroDenominator)?;
            if own[kk] != gw.mul(&pulled[kk]) {
                return Err(ContactError::OverlapMismatch(
                    si.label.clone(),
                    sj.label.clone(),
                    format!("σ_i ≠ R_g σ_j in coordinate {}", total[kk]),
                ));
            }
        }
        let g_delta = g.pow(cc.delta() as i32).ok_or(AlgebraError::ZeroDenominator)?;
        let f = &data.transitions[&(i, j)];
        data.report.push(IdentityCheck::check(
            format!("f = g^delta on {}∩{}", si.label, sj.label),
            *f == g_delta,
            || format!("f = {f}, g^δ = {g_delta}"),
        ));
        gauges.insert((i, j), g);
    }
    data.gauges = gauges;
    Ok(data)
}

/// The K_Z cocycle against `f_ij^{n+1}`: with `γ_i∧(dγ_i)^n = c_i dx`,
/// `γ_j∧(dγ_j)^n = c_j dy` and `dy = J dx`, checks
/// `f_ij^{n+1} · J · (c_j∘φ) = c_i` and that `c_i / (c_j∘φ)` is constant, so
/// `f^{n+1}` equals the canonical-bundle transition `J^{-1}` up to a constant
/// coboundary.
pub fn canonical_cocycle_check(cs: &CStructureData, n: usize) -> Result<IdentityReport, ContactError> {
    let mut r = IdentityReport::new();
    let tops: Vec<RationalForm> = cs
        .gammas
        .iter()
        .map(|g| Ok(RationalForm::from_poly_form(&g.wedge(&g.d().wedge_power(n)?)?)))
        .collect::<Result<_, ContactError>>()?;
    for (&(i, j), phi) in &cs.changes {
        let src = cs.gammas[i].chart();
        let tgt = cs.gammas[j].chart();
        if src.dim() != 2 * n + 1 || tgt.dim() != 2 * n + 1 {
            return Err(ContactError::InvalidArgument(format!("base charts must have dimension {}", 2 * n + 1)));
        }
        let full: Vec<usize> = (0..src.dim()).collect();
        let vol_j = PolyForm::from_terms(tgt, tgt.dim(), [(full.clone(), MultiPoly::one(tgt.vars()))])?;
        let jac = RationalForm::from_poly_form(&vol_j).pullback(src, phi)?.coefficient(&full);
        let ci = tops[i].coefficient(&full);
        let cj = tops[j].coefficient(&full).substitute(phi)?;
        let f = &cs.transitions[&(i, j)];
        let fpow = f.pow(n as i32 + 1).ok_or(AlgebraError::ZeroDenominator)?;
        let lhs = fpow.mul(&jac).mul(&cj);
        let tag = format!("{}∩{}", cs.labels[i], cs.labels[j]);
        r.push(IdentityCheck::check(format!("top-form identity on {tag}"), lhs == ci, || {
            format!("f^(n+1)·J·c_j = {lhs}, c_i = {ci}")
        }));
        let cob = ci.div(&cj);
        let constant = cob.as_ref().is_some_and(RationalFunction::is_constant);
        r.push(IdentityCheck::check(format!("f^(n+1) = J^-1 up to constant on {tag}"), constant, || {
            format!("c_i/c_j = {cob:?}")
        }));
    }
    Ok(r)
}

/// The `P₁` data `γ_0 = dx`, `γ_1 = dy` with `y = 1/x`.
pub fn p1_cstructure() -> Result<CStructureData, ContactError> {
    let c0 = ChartSpace::new(&["x"], None)?;
    let c1 = ChartSpace::new(&["y"], None)?;
    let x = c0.coordinate("x")?;
    let y = c1.coordinate("y")?;
    let mut changes = BTreeMap::new();
    changes.insert(
        (0, 1),
        HashMap::from([("y".to_string(), RationalFunction::new(MultiPoly::one(c0.vars()), x)?)]),
    );
    changes.insert(
        (1, 0),
        HashMap::from([("x".to_string(), RationalFunction::new(MultiPoly::one(c1.vars()), y)?)]),
    );
    CStructureData::from_forms(
        vec!["V0".into(), "V1".into()],
        vec![PolyForm::dx(&c0, "x")?, PolyForm::dx(&c1, "y")?],
        changes,
        0,
    )
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim 𝒪^m(ℂ^{N+1}∖0) = C(N+m, N)`.
pub fn homogeneous_space_dim(big_n: usize, m: usize) -> Result<u64, ContactError> {
    if big_n == 0 {
        return Err(ContactError::InvalidArgument("N = 0: ℂ∖0 admits no such polynomial model".into()));
    }
    Ok(binomial((big_n + m) as u64, big_n as u64))
}

/// Exponent vectors of all degree-`m` monomials in `nvars` variables, in
/// lexicographic order.
pub fn monomial_exponents(nvars: usize, m: u32) -> Vec<Vec<u32>> {
    fn go(nvars: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(m);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=m).rev() {
            prefix.push(e);
            go(nvars, m - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(nvars, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Monomial basis of `𝒪^m(ℂ^{N+1}∖0)` over the given chart variables.
pub fn monomial_basis(vars: &crate::poly::Vars, m: u32) -> Vec<MultiPoly> {
    monomial_exponents(vars.len(), m)
        .into_iter()
        .map(|e| MultiPoly::monomial(vars, e.into_iter().map(|x| x as i32).collect(), ExactScalar::one()))
        .collect()
}

/// `⟨η^{⊗m}, φ⟩` for `φ` given by its coefficients on the monomial basis.
pub fn tautological_pairing(phi: &[ExactScalar], eta: &[ExactScalar], m: u32) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (c, e) in phi.iter().zip(monomial_exponents(eta.len(), m)) {
        let mut t = c.clone();
        for (x, k) in eta.iter().zip(e) {
            t = &t * &x.powi(k as i64).unwrap_or_else(ExactScalar::zero);
        }
        acc += &t;
    }
    acc
}

/// Descent through `ζ ↦ −ζ` on the Hopf model with δ = 2.
pub fn quotient_check_hopf(n: usize, sampler: &mut Sampler, monomials: usize, max_m: u32) -> Result<IdentityReport, ContactError> {
    let cc = ContactChart::hopf(n)?;
    let chart = cc.chart().clone();
    let vars = chart.vars().clone();
    let mut r = IdentityReport::new();

    let neg: HashMap<String, MultiPoly> = vars.iter().map(|v| (v.clone(), chart.coordinate(v).unwrap().neg())).collect();
    let pulled = cc.theta().pullback(&chart, &neg)?;
    r.push(IdentityCheck::check("theta parity invariance", pulled == *cc.theta(), || pulled.to_string()));

    let mut classification = true;
    let mut witness = String::new();
    for _ in 0..monomials {
        let d = sampler.int(0, 6) as u32;
        let active: Vec<usize> = (0..vars.len()).collect();
        let e = sampler.exponents(vars.len(), &active, d);
        let mono = MultiPoly::monomial(&vars, e, ExactScalar::one());
        let invariant = mono.substitute(&neg)?.rebase(&vars)? == mono;
        let scaled = cc.scaled(&mono)?;
        let tau = scaled.vars().len() - 1;
        let even_in_tau = scaled.terms().all(|(m, _)| m.0[tau] % 2 == 0);
        let descends = invariant && even_in_tau && cc.scales_as(&mono, d as i64)?;
        if descends != (d % 2 == 0) {
            classification = false;
            witness = format!("{mono}");
        }
    }
    r.push(IdentityCheck::check("even/odd descent classification", classification, || witness));

    for m in 1..=max_m {
        let upstairs = monomial_exponents(vars.len(), 2 * m).len() as u64;
        let formula = homogeneous_space_dim(2 * n + 1, 2 * m as usize)?;
        let quadratics = monomial_exponents(vars.len(), 2);
        let mut products: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; vars.len()]]);
        for _ in 0..m {
            let mut next = BTreeSet::new();
            for p in &products {
                for q in &quadratics {
                    next.insert(p.iter().zip(q).map(|(a, b)| a + b).collect::<Vec<_>>());
                }
            }
            products = next;
        }
        let downstairs = products.len() as u64;
        r.push(IdentityCheck::check(
            format!("dim even degree {} = dim O^{m} downstairs", 2 * m),
            upstairs == formula && upstairs == downstairs,
            || format!("monomials {upstairs}, binomial {formula}, products {downstairs}"),
        ));
    }

    let mut descended = true;
    for (_, c) in cc.theta().terms() {
        descended &= cc.scales_as(c, 1)?;
    }
    // coefficient weight 1 plus the dζ slot: θ̃ ↦ τ² θ̃ = μ θ̃
    r.push(IdentityCheck::check("descended form has degree 1 in mu", descended, || cc.theta().to_string()));
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub point: Vec<String>,
    pub jacobian_rank: usize,
    pub span_dim: usize,
    pub full: bool,
    pub image_nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub dim: usize,
    pub rows: Vec<RankRow>,
}

impl RankReport {
    /// Jacobian rank equals tangent-span dimension everywhere, and full rank
    /// comes with a nonzero image.
    pub fn consistent(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.jacobian_rank == r.span_dim && (!r.full || r.image_nonzero))
    }

    pub fn all_full(&self) -> bool {
        self.rows.iter().all(|r| r.full)
    }
}

/// Both sides of the immersion criterion at each point.
pub fn immersion_rank(
    cc: &ContactChart,
    fs: &[HomogeneousFunction],
    points: &[HashMap<String, ExactScalar>],
) -> Result<RankReport, ContactError> {
    if fs.iter().any(|f| f.ell() == 0) {
        return Err(ContactError::ZeroDegree);
    }
    if fs.windows(2).any(|w| w[0].ell() != w[1].ell()) {
        return Err(ContactError::InvalidArgument("functions must share one degree".into()));
    }
    let vars = cc.chart().vars().clone();
    let fields: Vec<PolyVectorField> = fs.iter().map(|f| cc.hamiltonian_field(f.f())).collect::<Result<_, _>>()?;
    let grads: Vec<Vec<MultiPoly>> = fs.iter().map(|f| (0..vars.len()).map(|k| f.f().partial_at(k)).collect()).collect();
    let mut rows = Vec::new();
    for pt in points {
        if let Some(fib) = cc.chart().fiber_var() {
            if pt.get(fib).is_none_or(Zero::is_zero) {
                return Err(ContactError::FiberAtZero);
            }
        }
        let jac = Matrix::from_rows(
            grads
                .iter()
                .map(|g| g.iter().map(|p| p.eval(pt)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?,
        );
        let vecs: Vec<Vec<ExactScalar>> = fields.iter().map(|x| x.evaluate(pt)).collect::<Result<_, _>>()?;
        let jacobian_rank = if fs.is_empty() { 0 } else { jac.rank() };
        let span_dim = linalg::span_dim(&vecs);
        let image_nonzero = fs.iter().map(|f| f.f().eval(pt)).collect::<Result<Vec<_>, _>>()?.iter().any(|v| !v.is_zero());
        rows.push(RankRow {
            point: vars.iter().map(|v| pt[v].to_string()).collect(),
            jacobian_rank,
            span_dim,
            full: jacobian_rank == vars.len(),
            image_nonzero,
        });
    }
    Ok(RankReport { dim: vars.len(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf0() -> (ContactChart, MultiPoly, MultiPoly) {
        let cc = ContactChart::hopf(0).unwrap();
        let v = cc.chart().vars().clone();
        (cc, MultiPoly::var_at(&v, 0), MultiPoly::var_at(&v, 1))
    }

    fn field(cc: &ContactChart, comps: Vec<(usize, MultiPoly)>) -> PolyVectorField {
        PolyVectorField::new(cc.chart(), comps).unwrap()
    }

    #[test]
    fn delta_zero_rejected() {
        assert_eq!(ContactChart::fibered(0, 0).unwrap_err(), ContactError::ZeroDelta);
    }

    #[test]
    fn axioms_pass_on_shipped_models() {
        let mut s = Sampler::new(1);
        for n in 0..3 {
            assert!(verify_axioms(&ContactChart::hopf(n).unwrap(), &mut s, 5).unwrap().all_pass());
        }
        for d in [-2, -1, 1, 2, 3] {
            assert!(verify_axioms(&ContactChart::fibered(1, d).unwrap(), &mut s, 5).unwrap().all_pass(), "δ={d}");
        }
    }

    #[test]
    fn euler_fields() {
        let (cc, z0, z1) = hopf0();
        let half = frac(-1, 2);
        assert_eq!(cc.euler_field().unwrap(), field(&cc, vec![(0, z0.scale(&half)), (1, z1.scale(&half))]));
        let cc1 = ContactChart::hopf(1).unwrap();
        let v = cc1.chart().vars().clone();
        let expected = field(&cc1, (0..4).map(|j| (j, MultiPoly::var_at(&v, j).scale(&half))).collect());
        assert_eq!(cc1.euler_field().unwrap(), expected);
        for d in [-2, 3] {
            let f = ContactChart::fibered(0, d).unwrap();
            let lam = f.chart().coordinate("λ").unwrap();
            let expected = field(&f, vec![(1, lam.scale(&frac(-1, d)))]);
            assert_eq!(f.euler_field().unwrap(), expected);
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let (cc, z0, z1) = hopf0();
        let x = cc.hamiltonian_field(&z0.mul(&z1)).unwrap();
        assert_eq!(x, field(&cc, vec![(0, z0.scale(&frac(-1, 2))), (1, z1.scale(&frac(1, 2)))]));
        assert_eq!(cc.hamiltonian_field(&z0.pow(2)).unwrap(), field(&cc, vec![(1, z0.clone())]));
        assert_eq!(cc.hamiltonian_field(&z1.pow(2)).unwrap(), field(&cc, vec![(0, z1.neg())]));
        let i = ExactScalar::i();
        let xi = cc.hamiltonian_field(&z0.mul(&z1).scale(&i)).unwrap();
        assert_eq!(xi, x.scale(&i));
    }

    #[test]
    fn fibered_hamiltonian() {
        let d = 3;
        let cc = ContactChart::fibered(0, d).unwrap();
        let z = cc.chart().coordinate("z1").unwrap();
        let lam = cc.chart().coordinate("λ").unwrap();
        let g = z.pow(2).add(&z.scale(&frac(5, 1)));
        let f = g.mul(&lam.pow(d as u32));
        let x = cc.hamiltonian_field(&f).unwrap();
        let gp = g.partial("z1").unwrap();
        let expected = field(&cc, vec![(0, g.clone()), (1, lam.mul(&gp).scale(&frac(-1, d)))]);
        assert_eq!(x, expected);
    }

    #[test]
    fn degrees() {
        let (cc, z0, z1) = hopf0();
        assert_eq!(degree_of(&cc, &z0.mul(&z1)).unwrap(), Some(2));
        assert_eq!(degree_of(&cc, &z0.add(&z0.pow(2))).unwrap(), None);
        let f = ContactChart::fibered(0, 3).unwrap();
        let z = f.chart().coordinate("z1").unwrap();
        let lam = f.chart().coordinate("λ").unwrap();
        assert_eq!(degree_of(&f, &lam.pow(3).mul(&z.pow(2))).unwrap(), Some(3));
        let inv = lam.powi(-2).unwrap();
        assert_eq!(degree_of(&f, &inv.mul(&z)).unwrap(), Some(-2));
    }

    #[test]
    fn lemma21_example() {
        let (cc, z0, z1) = hopf0();
        let f = HomogeneousFunction::new(&cc, &z0.pow(2)).unwrap();
        let g = HomogeneousFunction::new(&cc, &z1.pow(2)).unwrap();
        let pb = cc.poisson(f.f(), g.f()).unwrap();
        assert_eq!(pb, z0.mul(&z1).scale(&frac(2, 1)));
        let br = cc.hamiltonian_field(f.f()).unwrap().bracket(&cc.hamiltonian_field(g.f()).unwrap()).unwrap();
        assert_eq!(br, field(&cc, vec![(0, z0.neg()), (1, z1.clone())]));
        assert!(check_lemma21(&cc, &f, &g).unwrap().all_pass());
        let same = check_lemma21(&cc, &f, &f).unwrap();
        assert!(same.all_pass());
        assert!(cc.poisson(f.f(), f.f()).unwrap().is_zero());
    }

    #[test]
    fn quadratics_close_into_sl2() {
        let (cc, z0, z1) = hopf0();
        let quads = [z0.pow(2), z0.mul(&z1), z1.pow(2)];
        let mut brackets = Vec::new();
        for a in &quads {
            for b in &quads {
                let p = cc.poisson(a, b).unwrap();
                assert!(p.is_zero() || degree_of(&cc, &p).unwrap() == Some(2));
                brackets.push(p);
            }
        }
        let coords: Vec<Vec<ExactScalar>> = brackets
            .iter()
            .map(|p| {
                monomial_basis(cc.chart().vars(), 2)
                    .iter()
                    .map(|m| {
                        let (mono, _) = m.terms().next().unwrap();
                        p.terms().find(|(k, _)| *k == mono).map(|(_, c)| c.clone()).unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(linalg::span_dim(&coords), 3);
    }

    #[test]
    fn lemma22_examples() {
        let (cc, z0, z1) = hopf0();
        let f = HomogeneousFunction::new(&cc, &z0.mul(&z1)).unwrap();
        assert!(check_lemma22(&cc, &[f]).unwrap().all_pass());
        // degree 3 ≠ δ: L θ = ((ℓ−δ)/δ) df
        let g = z0.pow(3).add(&z0.mul(&z1.pow(2)));
        let l = lie_theta_of_hamiltonian(&cc, &g).unwrap();
        let dg = PolyForm::function(cc.chart(), &g).unwrap().d();
        assert_eq!(l, dg.scale(&frac(1, 2)));
        let zero = HomogeneousFunction::with_degree(&cc, &MultiPoly::zero(cc.chart().vars()), 2).unwrap();
        assert!(check_lemma22(&cc, &[zero]).unwrap().all_pass());
    }

    #[test]
    fn hopf_cstructure_p3() {
        let cc = ContactChart::hopf(1).unwrap();
        let cs = reconstruct_cstructure(&cc, &hopf_sections(&cc)).unwrap();
        assert!(cs.report.all_pass());
        let g0 = &cs.gammas[0];
        let v = g0.chart().vars().clone();
        let expected = PolyForm::from_terms(
            g0.chart(),
            1,
            [
                (vec![1], MultiPoly::one(&v)),
                (vec![2], MultiPoly::var_at(&v, 0)),
                (vec![0], MultiPoly::var_at(&v, 2).neg()),
            ],
        )
        .unwrap();
        assert_eq!(*g0, expected);
        // σ_0 = R_g σ_1 with g = ζ_1/ζ_0 = u0_1, so f_01 = u0_1^2
        let u = MultiPoly::var_at(&v, 0);
        assert_eq!(cs.transitions[&(0, 1)], RationalFunction::from_poly(u.pow(2)));
        assert!(canonical_cocycle_check(&cs, 1).unwrap().all_pass());
    }

    #[test]
    fn p1_cocycle() {
        let cs = p1_cstructure().unwrap();
        let x = MultiPoly::var_at(cs.gammas[0].chart().vars(), 0);
        assert_eq!(cs.transitions[&(0, 1)], RationalFunction::from_poly(x.pow(2).neg()));
        assert!(canonical_cocycle_check(&cs, 0).unwrap().all_pass());
        let cc = ContactChart::hopf(0).unwrap();
        let hopf = reconstruct_cstructure(&cc, &hopf_sections(&cc)).unwrap();
        assert!(canonical_cocycle_check(&hopf, 0).unwrap().all_pass());
    }

    #[test]
    fn fibered_sections() {
        let cc = ContactChart::fibered(0, 3).unwrap();
        let a = fibered_constant_section(&cc, "a", ExactScalar::one());
        let b = fibered_constant_section(&cc, "b", frac(2, 1));
        let cs = reconstruct_cstructure(&cc, &[a, b]).unwrap();
        assert_eq!(cs.gammas[0], PolyForm::dx(cs.gammas[0].chart(), "z1").unwrap());
        let v = cs.gammas[0].chart().vars().clone();
        assert_eq!(cs.transitions[&(1, 0)], RationalFunction::constant(&v, frac(8, 1)));
        assert!(cs.report.all_pass());
    }

    #[test]
    fn single_chart_cocycle_is_vacuous() {
        let cc = ContactChart::hopf(0).unwrap();
        let one = hopf_sections(&cc).into_iter().take(1).collect::<Vec<_>>();
        let cs = reconstruct_cstructure(&cc, &one).unwrap();
        assert!(canonical_cocycle_check(&cs, 0).unwrap().checks.is_empty());
    }

    #[test]
    fn bad_section_rejected() {
        let cc = ContactChart::hopf(0).unwrap();
        let mut s = hopf_sections(&cc);
        let base = s[0].base.clone();
        s[0].images.insert("ζ1".into(), base.coordinate("u0_1").unwrap().pow(2));
        assert!(matches!(reconstruct_cstructure(&cc, &s), Err(ContactError::NotASection(_))));
    }

    #[test]
    fn quotient() {
        let mut s = Sampler::new(3);
        for n in 0..3 {
            assert!(quotient_check_hopf(n, &mut s, 30, 3).unwrap().all_pass());
        }
    }

    #[test]
    fn homogeneous_dims() {
        assert_eq!(homogeneous_space_dim(1, 2).unwrap(), 3);
        assert_eq!(homogeneous_space_dim(3, 1).unwrap(), 4);
        assert_eq!(homogeneous_space_dim(3, 2).unwrap(), 10);
        assert_eq!(monomial_exponents(4, 2).len(), 10);
        assert!(homogeneous_space_dim(0, 2).is_err());
        let eta = [frac(2, 1), frac(3, 1)];
        let phi = [frac(1, 1), frac(0, 1), frac(-1, 1)];
        // ζ0² − ζ1² at (2, 3)
        assert_eq!(tautological_pairing(&phi, &eta, 2), frac(-5, 1));
    }

    #[test]
    fn immersion_examples() {
        let (cc, z0, z1) = hopf0();
        let pt = HashMap::from([("ζ0".to_string(), frac(1, 1)), ("ζ1".to_string(), frac(1, 1))]);
        let quads: Vec<HomogeneousFunction> = [z0.pow(2), z0.mul(&z1), z1.pow(2)]
            .iter()
            .map(|f| HomogeneousFunction::new(&cc, f).unwrap())
            .collect();
        let r = immersion_rank(&cc, &quads, &[pt.clone()]).unwrap();
        assert_eq!(r.rows[0].jacobian_rank, 2);
        assert!(r.all_full() && r.consistent());
        let r = immersion_rank(&cc, &quads[..1], &[pt.clone()]).unwrap();
        assert_eq!(r.rows[0].jacobian_rank, 1);
        assert!(r.consistent());
        let lin: Vec<HomogeneousFunction> = [z0, z1].iter().map(|f| HomogeneousFunction::new(&cc, f).unwrap()).collect();
        assert!(immersion_rank(&cc, &lin, &[pt.clone()]).unwrap().all_full());
        let c = HomogeneousFunction::new(&cc, &MultiPoly::one(cc.chart().vars()));
        assert!(c.is_err() || immersion_rank(&cc, &[c.unwrap()], &[pt]).is_err());
    }
}
