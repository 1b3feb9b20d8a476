//! One function per subcommand; each records checks and returns report data.

use std::collections::{BTreeMap, HashMap};

use contact_core::adjoint::adjoint_suite;
use contact_core::contact::{
    canonical_cocycle_check, check_lemma21, check_lemma22, fibered_constant_section, hopf_sections, immersion_rank,
    monomial_basis, p1_cstructure, quotient_check_hopf, reconstruct_cstructure, verify_axioms, ContactChart,
    ContactError, HomogeneousFunction, Model,
};
use contact_core::liealg::{
    antisymmetry_violations, chi_differential, g00_span_check, g00_tracefree_check, jacobi_violations,
    killing_invariance_violations, normalization_report, GradedAlgebra,
};
use contact_core::linalg::{self, Vector};
use contact_core::report::IdentityReport;
use contact_core::rootsys::RootSystem;
use contact_core::sample::Sampler;
use contact_core::{ExactScalar, MultiPoly};
use serde_json::{json, Value};

use crate::{contact_chart, model_name, root_system, ConfigError, ModelArg, Results, RunConfig, SUITE_TYPES};

/// Independent deterministic stream per suite, derived from the run seed.
fn sampler(seed: u64, tag: &str) -> Sampler {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    Sampler::new(seed ^ h)
}

fn chart_tag(cc: &ContactChart) -> String {
    match cc.model() {
        Model::Hopf => format!("hopf.n{}", cc.n()),
        Model::Fibered => format!("fibered.n{}.delta{}", cc.n(), cc.delta()),
    }
}

fn roots_suite(name: &str, rs: &RootSystem, results: &mut Results) -> Value {
    let p = format!("roots.{name}");
    let heights: Vec<i64> = rs.roots().iter().map(|r| rs.rho_height(r).expect("own roots")).collect();
    results.check(format!("{p}.closed_under_negation"), rs.roots().iter().all(|r| rs.contains(&r.neg())), || {
        "missing negative".into()
    });
    results.check(format!("{p}.highest_root_has_rho_height_2"), rs.rho_height(rs.highest()) == Ok(2), || {
        format!("{:?}", rs.rho_height(rs.highest()))
    });
    let bad: Vec<String> = rs
        .roots()
        .iter()
        .zip(&heights)
        .filter(|(r, &h)| h.abs() > 2 || (h.abs() == 2 && *r != rs.highest() && r.neg() != *rs.highest()))
        .map(|(r, h)| format!("{r}:{h}"))
        .collect();
    results.check(format!("{p}.rho_heights_in_range"), bad.is_empty(), || bad.join(" "));
    let positive: Vec<Value> = rs
        .positive()
        .iter()
        .map(|&i| json!({"root": rs.roots()[i].to_string(), "height": rs.roots()[i].height(), "rho_height": heights[i]}))
        .collect();
    json!({
        "type": name,
        "rank": rs.rank(),
        "cartan": rs.cartan().entries(),
        "num_roots": rs.roots().len(),
        "highest_root": rs.highest().to_string(),
        "positive_roots": positive,
    })
}

fn first<T: std::fmt::Debug>(v: &[T]) -> String {
    format!("{} violations, first {:?}", v.len(), v.first())
}

fn algebra_suite(name: &str, rs: &RootSystem, dump: bool, results: &mut Results) -> Value {
    let p = format!("algebra.{name}");
    let ga = match GradedAlgebra::from_root_system(rs) {
        Ok(ga) => ga,
        Err(e) => {
            results.error(&p, e);
            return Value::Null;
        }
    };
    let (sc, kd, gd) = (&ga.sc, &ga.kd, &ga.gd);
    let jac = jacobi_violations(sc);
    results.check(format!("{p}.jacobi"), jac.is_empty(), || first(&jac));
    let anti = antisymmetry_violations(sc);
    results.check(format!("{p}.antisymmetry"), anti.is_empty(), || first(&anti));
    let inv = killing_invariance_violations(sc, kd);
    results.check(format!("{p}.killing_invariance"), inv.is_empty(), || first(&inv));
    let norm = normalization_report(sc, kd);
    for (id, ok) in [
        ("bracket_is_minus_coroot", norm.bracket_is_minus_coroot),
        ("coroot_duality", norm.coroot_duality),
        ("cartan_action", norm.cartan_action),
        ("root_pairing", norm.root_pairing),
        ("cartan_root_orthogonal", norm.cartan_root_orthogonal),
        ("n_product_positive", norm.n_product_positive),
        ("rho_of_h_rho_is_2", norm.rho_of_hrho_is_two),
    ] {
        results.check(format!("{p}.normalization.{id}"), ok, || "identity fails".into());
    }
    let spectrum_ok = gd.eigenvalues().iter().all(|e| (-2..=2).contains(e));
    results.check(format!("{p}.grading.spectrum_in_range"), spectrum_ok, || format!("{:?}", gd.eigenvalues()));
    let dims = gd.piece_dims();
    results.check(format!("{p}.grading.extreme_pieces_are_lines"), dims[0] == 1 && dims[4] == 1, || {
        format!("{dims:?}")
    });
    let mut oracle = [0usize; 5];
    oracle[2] = rs.rank();
    for r in rs.roots() {
        if let Ok(h) = rs.rho_height(r) {
            if (-2..=2).contains(&h) {
                oracle[(h + 2) as usize] += 1;
            }
        }
    }
    results.check(format!("{p}.grading.matches_rho_height_count"), oracle == dims, || {
        format!("eigenspaces {dims:?}, root count {oracle:?}")
    });
    results.check(format!("{p}.g00.bracket_span"), g00_span_check(gd, sc), || {
        format!("span of [G-1, G1] is not G00 (dim G00 = {})", gd.g00().len())
    });
    results.check(format!("{p}.g00.tracefree_bracket_span"), g00_tracefree_check(gd, sc, kd), || {
        "tracefree bracket span is not G00".into()
    });
    let mut l0_expected: Vec<Vector> = gd.g00().to_vec();
    for i in [1, 2] {
        l0_expected.extend(gd.piece(i).iter().map(|&b| sc.unit(b)));
    }
    results.check(format!("{p}.l0_is_g00_plus_g1_plus_g2"), linalg::same_span(gd.l0(), &l0_expected), || {
        format!("dim L0 {}, dim G00+G1+G2 {}", gd.l0().len(), l0_expected.len())
    });
    let chi = chi_differential(kd, sc);
    results.check(format!("{p}.dchi_h_rho_is_2"), chi == ExactScalar::from_int(2), || chi.to_string());
    let mut data = json!({
        "type": name,
        "dim": sc.dim(),
        "rank": sc.rank(),
        "piece_dims": dims,
        "dim_g00": gd.g00().len(),
        "dim_l0": gd.l0().len(),
        "dim_z": gd.dim_z(),
        "dim_p": gd.dim_p(),
        "basis": sc.basis().labels(),
        "h_rho": kd.hrho().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if dump {
        let table: Vec<Value> = sc
            .table_entries()
            .into_iter()
            .map(|(i, j, terms)| json!({"i": i, "j": j, "bracket": terms}))
            .collect();
        data["structure_constants"] = json!(table);
        let gram: Vec<Vec<String>> = (0..sc.dim())
            .map(|i| kd.gram().row(i).iter().map(ToString::to_string).collect())
            .collect();
        data["killing_gram"] = json!(gram);
    }
    data
}

fn axioms_suite(cc: &ContactChart, seed: u64, samples: usize, dump: bool, results: &mut Results) -> Value {
    let tag = chart_tag(cc);
    let mut s = sampler(seed, &format!("axioms.{tag}"));
    let p = format!("verify-contact.{tag}");
    match verify_axioms(cc, &mut s, samples) {
        Ok(r) => {
            let mut ir = r.to_identity_report();
            if samples == 0 {
                ir.checks.retain(|c| c.name != "pointwise rank");
                results.skip(format!("{p}.pointwise_rank"), "no sample points requested");
            }
            results.report(&p, &ir);
            let mut data = json!({
                "model": model_name(cc.model()),
                "n": cc.n(),
                "delta": cc.delta(),
                "weights": cc.weights(),
                "points_checked": r.points_checked,
                "top_power_coefficient": r.top_coefficient,
            });
            if dump {
                data["theta"] = json!(cc.theta().to_string());
                data["dtheta"] = json!(cc.dtheta().to_string());
                if let Ok(e) = cc.euler_field() {
                    data["euler_field"] = json!(e.to_string());
                }
            }
            data
        }
        Err(e) => {
            results.error(&p, e);
            Value::Null
        }
    }
}

fn degree_range(cc: &ContactChart) -> (i64, i64) {
    match cc.model() {
        Model::Hopf => (0, 4),
        Model::Fibered => (-2, 4),
    }
}

/// Pass/fail per identity across many samples, keeping the first witness.
#[derive(Default)]
struct Tally {
    entries: BTreeMap<String, (usize, Option<String>)>,
}

impl Tally {
    fn add(&mut self, r: &IdentityReport, context: &str) {
        for c in &r.checks {
            let name = c.name.rsplit_once(" [").map_or(c.name.as_str(), |(a, _)| a).to_string();
            let e = self.entries.entry(name).or_default();
            e.0 += 1;
            if !c.passed && e.1.is_none() {
                e.1 = Some(format!("{context}: {}", c.witness.clone().unwrap_or_default()));
            }
        }
    }

    fn emit(self, prefix: &str, results: &mut Results) {
        for (name, (_, witness)) in self.entries {
            results.check(format!("{prefix}.{}", crate::slug(&name)), witness.is_none(), || witness.unwrap_or_default());
        }
    }
}

fn lemma21_suite(
    cc: &ContactChart,
    seed: u64,
    pairs: usize,
    fdeg: Option<i64>,
    gdeg: Option<i64>,
    results: &mut Results,
) -> Value {
    let tag = chart_tag(cc);
    let p = format!("verify-lemma21.{tag}");
    let mut s = sampler(seed, &p);
    let (lo, hi) = degree_range(cc);
    let mut tally = Tally::default();
    let mut degrees = BTreeMap::<String, usize>::new();
    for i in 0..pairs {
        let a = fdeg.unwrap_or_else(|| s.int(lo, hi));
        let b = gdeg.unwrap_or_else(|| s.int(lo, hi));
        let outcome = (|| -> Result<IdentityReport, ContactError> {
            let f = cc.sample_homogeneous(&mut s, a, 3)?;
            let g = cc.sample_homogeneous(&mut s, b, 3)?;
            let f = HomogeneousFunction::with_degree(cc, &f, a)?;
            let g = HomogeneousFunction::with_degree(cc, &g, b)?;
            check_lemma21(cc, &f, &g)
        })();
        match outcome {
            Ok(r) => tally.add(&r, &format!("pair {i} (l={a}, l'={b})")),
            Err(e) => results.error(&p, e),
        }
        *degrees.entry(format!("{a},{b}")).or_default() += 1;
    }
    if pairs == 0 {
        results.skip(format!("{p}.pairs"), "no pairs requested");
    }
    tally.emit(&p, results);
    json!({"chart": tag, "pairs": pairs, "degree_pairs": degrees})
}

fn lemma22_suite(cc: &ContactChart, seed: u64, samples: usize, results: &mut Results) -> Value {
    let tag = chart_tag(cc);
    let p = format!("verify-lemma22.{tag}");
    let mut s = sampler(seed, &p);
    let mut tally = Tally::default();
    for i in 0..samples {
        let outcome = (|| -> Result<IdentityReport, ContactError> {
            let f = cc.sample_homogeneous(&mut s, cc.delta(), 3)?;
            let f = HomogeneousFunction::with_degree(cc, &f, cc.delta())?;
            check_lemma22(cc, &[f])
        })();
        match outcome {
            Ok(r) => tally.add(&r, &format!("sample {i}")),
            Err(e) => results.error(&p, e),
        }
    }
    if samples == 0 {
        results.skip(format!("{p}.samples"), "no samples requested");
    }
    tally.emit(&p, results);
    json!({"chart": tag, "samples": samples})
}

fn cocycle_suite(cc: &ContactChart, results: &mut Results) -> Value {
    let n = cc.n();
    let tag = chart_tag(cc);
    let p = format!("cocycle.{tag}");
    let sections = match cc.model() {
        Model::Hopf => hopf_sections(cc),
        Model::Fibered => vec![
            fibered_constant_section(cc, "S1", ExactScalar::from_int(1)),
            fibered_constant_section(cc, "S2", ExactScalar::from_int(2)),
        ],
    };
    let mut data = json!({"chart": tag, "charts": sections.len()});
    match reconstruct_cstructure(cc, &sections).and_then(|cs| {
        let k = canonical_cocycle_check(&cs, n)?;
        Ok((cs, k))
    }) {
        Ok((cs, k)) => {
            results.report(&p, &cs.report);
            results.report(&p, &k);
            let f: BTreeMap<String, String> = cs
                .transitions
                .iter()
                .map(|((i, j), f)| (format!("{}->{}", cs.labels[i.to_owned()], cs.labels[j.to_owned()]), f.to_string()))
                .collect();
            data["transitions"] = json!(f);
        }
        Err(e) => results.error(&p, e),
    }
    if n == 0 && cc.model() == Model::Hopf {
        let p1 = "cocycle.p1_affine";
        match p1_cstructure().and_then(|cs| {
            let k = canonical_cocycle_check(&cs, 0)?;
            Ok((cs, k))
        }) {
            Ok((cs, k)) => {
                results.report(p1, &cs.report);
                results.report(p1, &k);
                data["p1_affine_transition"] = json!(cs.transitions.get(&(0, 1)).map(ToString::to_string));
            }
            Err(e) => results.error(p1, e),
        }
    }
    data
}

fn quotient_suite(n: usize, seed: u64, monomials: usize, results: &mut Results) -> Value {
    let p = format!("quotient.hopf.n{n}");
    let mut s = sampler(seed, &p);
    match quotient_check_hopf(n, &mut s, monomials, 3) {
        Ok(r) => results.report(&p, &r),
        Err(e) => results.error(&p, e),
    }
    json!({"n": n, "monomials": monomials, "max_m": 3})
}

fn immersion_functions(cc: &ContactChart) -> Result<Vec<HomogeneousFunction>, ContactError> {
    let vars = cc.chart().vars();
    let polys: Vec<MultiPoly> = match cc.model() {
        Model::Hopf => monomial_basis(vars, cc.delta() as u32),
        Model::Fibered => {
            let lam = cc.chart().coordinate(cc.chart().fiber_var().expect("fibered"))?;
            let lam_d = lam.powi(cc.delta() as i32).expect("monomial");
            let mut v = vec![lam_d.clone()];
            for b in cc.chart().base_vars() {
                v.push(lam_d.mul(&cc.chart().coordinate(b)?));
            }
            v
        }
    };
    polys.iter().map(|f| HomogeneousFunction::with_degree(cc, f, cc.delta())).collect()
}

fn immersion_suite(cc: &ContactChart, seed: u64, points: usize, results: &mut Results) -> Value {
    let tag = chart_tag(cc);
    let p = format!("immersion.{tag}");
    let mut s = sampler(seed, &p);
    let pts: Vec<HashMap<String, ExactScalar>> = (0..points).map(|_| cc.sample_point(&mut s)).collect();
    let outcome = immersion_functions(cc).and_then(|fs| {
        let full = immersion_rank(cc, &fs, &pts)?;
        let single = immersion_rank(cc, &fs[..1], &pts)?;
        Ok((fs.len(), full, single))
    });
    match outcome {
        Ok((count, full, single)) => {
            let ranks: Vec<usize> = full.rows.iter().map(|r| r.jacobian_rank).collect();
            results.check(format!("{p}.all_functions.full_rank"), full.all_full(), || format!("ranks {ranks:?}"));
            results.check(format!("{p}.all_functions.jacobian_equals_span"), full.consistent(), || {
                "Jacobian rank differs from Hamiltonian span".into()
            });
            let deficient = single.rows.iter().all(|r| r.jacobian_rank < single.dim);
            results.check(format!("{p}.single_function.deficient"), deficient, || "full rank with one function".into());
            results.check(format!("{p}.single_function.jacobian_equals_span"), single.consistent(), || {
                "Jacobian rank differs from Hamiltonian span".into()
            });
            json!({"chart": tag, "functions": count, "dim": full.dim, "rows": full.rows})
        }
        Err(e) => {
            results.error(&p, e);
            Value::Null
        }
    }
}

fn adjoint_type_suite(name: &str, rs: &RootSystem, seed: u64, samples: usize, results: &mut Results) -> Value {
    let p = format!("adjoint.{name}");
    let ga = match GradedAlgebra::from_root_system(rs) {
        Ok(ga) => ga,
        Err(e) => {
            results.error(&p, e);
            return Value::Null;
        }
    };
    let mut s = sampler(seed, &p);
    match adjoint_suite(&ga, &mut s, samples) {
        Ok((r, summary)) => {
            results.report(&p, &r);
            json!({
                "type": name,
                "orbit_dim": summary.orbit_dim,
                "l0_kernel_dim": summary.l0_kernel_dim,
                "moment_round_trip": summary.moment_round_trip,
                "embedding": summary.embedding,
            })
        }
        Err(e) => {
            results.error(&p, e);
            Value::Null
        }
    }
}

fn named_type(config: &RunConfig) -> Result<(String, RootSystem), ConfigError> {
    let rs = root_system(config)?;
    let name = config.type_name.as_deref().unwrap_or_default().to_ascii_uppercase();
    Ok((name, rs))
}

pub(crate) fn roots(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let (name, rs) = named_type(config)?;
    Ok(roots_suite(&name, &rs, results))
}

pub(crate) fn algebra(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let (name, rs) = named_type(config)?;
    Ok(algebra_suite(&name, &rs, config.dump_forms, results))
}

pub(crate) fn verify_contact(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let cc = contact_chart(config)?;
    Ok(axioms_suite(&cc, config.seed, config.samples.unwrap_or(10), config.dump_forms, results))
}

pub(crate) fn lemma21(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let cc = contact_chart(config)?;
    let (lo, _) = degree_range(&cc);
    for d in [config.fdeg, config.gdeg].into_iter().flatten() {
        if d < lo {
            return Err(ConfigError::Unsupported(format!("degree {d} has no polynomial functions on this model")));
        }
    }
    Ok(lemma21_suite(&cc, config.seed, config.samples.unwrap_or(200), config.fdeg, config.gdeg, results))
}

pub(crate) fn lemma22(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let cc = contact_chart(config)?;
    Ok(lemma22_suite(&cc, config.seed, config.samples.unwrap_or(50), results))
}

pub(crate) fn cocycle(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    if config.n > 2 {
        return Err(ConfigError::Unsupported("cocycle supports n ≤ 2".into()));
    }
    let cc = contact_chart(config)?;
    Ok(cocycle_suite(&cc, results))
}

pub(crate) fn quotient(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    if config.model != ModelArg::Hopf {
        return Err(ConfigError::Unsupported("quotient runs on the Hopf model".into()));
    }
    contact_chart(config)?;
    Ok(quotient_suite(config.n, config.seed, config.samples.unwrap_or(100), results))
}

pub(crate) fn immersion(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let cc = contact_chart(config)?;
    Ok(immersion_suite(&cc, config.seed, config.samples.unwrap_or(25), results))
}

pub(crate) fn adjoint(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let (name, rs) = named_type(config)?;
    Ok(adjoint_type_suite(&name, &rs, config.seed, config.samples.unwrap_or(20), results))
}

/// Every suite at the sizes the acceptance criteria ask for; `--samples`
/// overrides the per-suite sample counts.
pub(crate) fn all(config: &RunConfig, results: &mut Results) -> Result<Value, ConfigError> {
    let seed = config.seed;
    let k = |default: usize| config.samples.unwrap_or(default);
    let mut data = serde_json::Map::new();
    let mut types = serde_json::Map::new();
    for name in SUITE_TYPES {
        let rs = RootSystem::of_type(name).expect("shipped type");
        types.insert(
            name.to_string(),
            json!({
                "roots": roots_suite(name, &rs, results),
                "algebra": algebra_suite(name, &rs, false, results),
                "adjoint": adjoint_type_suite(name, &rs, seed, k(20), results),
            }),
        );
    }
    data.insert("types".into(), Value::Object(types));

    let mut charts = Vec::new();
    for n in 0..3 {
        charts.push(ContactChart::hopf(n)?);
    }
    for n in 0..2 {
        for d in [-2, -1, 1, 2, 3] {
            charts.push(ContactChart::fibered(n, d)?);
        }
    }
    let mut contact = serde_json::Map::new();
    for cc in &charts {
        contact.insert(chart_tag(cc), axioms_suite(cc, seed, k(10), false, results));
    }
    let rejected = matches!(ContactChart::fibered(1, 0), Err(ContactError::ZeroDelta));
    results.check("verify-contact.fibered.delta0_rejected".into(), rejected, || "δ = 0 was accepted".into());
    data.insert("contact".into(), Value::Object(contact));

    let lemma_charts: Vec<&ContactChart> = charts.iter().filter(|c| c.n() <= 1).collect();
    let mut l21 = serde_json::Map::new();
    let mut l22 = serde_json::Map::new();
    let pairs = k(200).div_ceil(lemma_charts.len());
    for cc in &lemma_charts {
        l21.insert(chart_tag(cc), lemma21_suite(cc, seed, pairs, None, None, results));
        l22.insert(chart_tag(cc), lemma22_suite(cc, seed, k(50), results));
    }
    data.insert("lemma21".into(), Value::Object(l21));
    data.insert("lemma22".into(), Value::Object(l22));

    let mut cocycles = serde_json::Map::new();
    for n in 0..2 {
        let cc = ContactChart::hopf(n)?;
        cocycles.insert(chart_tag(&cc), cocycle_suite(&cc, results));
    }
    data.insert("cocycle".into(), Value::Object(cocycles));

    let quotients: Vec<Value> = (0..3).map(|n| quotient_suite(n, seed, k(100), results)).collect();
    data.insert("quotient".into(), json!(quotients));

    let mut imm = serde_json::Map::new();
    for n in 0..2 {
        let cc = ContactChart::hopf(n)?;
        imm.insert(chart_tag(&cc), immersion_suite(&cc, seed, k(25), results));
    }
    data.insert("immersion".into(), Value::Object(imm));
    Ok(Value::Object(data))
}
