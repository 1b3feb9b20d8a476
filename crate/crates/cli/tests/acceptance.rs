//! One PASS/FAIL line per acceptance criterion. Every check is an exact
//! equality; the process exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use contact_core::adjoint::adjoint_suite;
use contact_core::contact::{
    canonical_cocycle_check, check_lemma21, check_lemma22, hopf_sections, immersion_rank, monomial_basis,
    p1_cstructure, quotient_check_hopf, reconstruct_cstructure, verify_axioms, ContactChart, ContactError,
    HomogeneousFunction, Model,
};
use contact_core::liealg::{
    g00_span_check, g00_tracefree_check, jacobi_violations, killing_invariance_violations, normalization_report,
    GradedAlgebra,
};
use contact_core::rootsys::RootSystem;
use contact_core::sample::Sampler;

const SEED: u64 = 20240917;

struct Outcome {
    ok: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            detail: String::new(),
            notes: Vec::new(),
        }
    }

    /// Records a sub-check; failing sub-checks are listed under the criterion.
    fn sub(&mut self, label: impl Into<String>, ok: bool) {
        let label = label.into();
        if !ok {
            self.ok = false;
            self.notes.push(format!("FAIL {label}"));
        }
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.sub(format!("time {:.1}s under {}s", t.as_secs_f64(), limit.as_secs()), t <= limit);
        self.detail.push_str(&format!(" [{:.1}s]", t.as_secs_f64()));
    }
}

fn lie_suite() -> Outcome {
    let start = Instant::now();
    let mut o = Outcome::new();
    for t in ["A1", "A2", "A3", "C2", "B3", "G2"] {
        let ga = GradedAlgebra::of_type(t).expect("shipped type");
        let (sc, kd, gd) = (&ga.sc, &ga.kd, &ga.gd);
        o.sub(format!("{t} Jacobi"), jacobi_violations(sc).is_empty());
        o.sub(format!("{t} Killing invariance"), killing_invariance_violations(sc, kd).is_empty());
        let norm = normalization_report(sc, kd);
        o.sub(format!("{t} [e_a, e_-a] = -h_a"), norm.bracket_is_minus_coroot);
        o.sub(format!("{t} rho(H_rho) = 2"), norm.rho_of_hrho_is_two);
        o.sub(format!("{t} spectrum in -2..2"), gd.eigenvalues().iter().all(|e| (-2..=2).contains(e)));
        let d = gd.piece_dims();
        o.sub(format!("{t} dim G_(+-2) = 1"), d[0] == 1 && d[4] == 1);
        o.sub(format!("{t} G00 kernel vs bracket span"), g00_span_check(gd, sc));
        if !g00_span_check(gd, sc) {
            let repaired = g00_tracefree_check(gd, sc, kd);
            o.notes.push(format!(
                "info {t}: bracket span of G-1 x G1 is all of G0 (dim {}), G00 has dim {}; tracefree sums give G00: {}",
                d[2],
                gd.g00().len(),
                if repaired { "yes" } else { "no" }
            ));
        }
    }
    o.within(start, Duration::from_secs(60));
    o
}

fn grading_dims() -> Outcome {
    let mut o = Outcome::new();
    for (t, expected) in [("A2", [1, 2, 2, 2, 1]), ("C2", [1, 2, 4, 2, 1]), ("G2", [1, 4, 4, 4, 1])] {
        let ga = GradedAlgebra::of_type(t).expect("shipped type");
        let rs = RootSystem::of_type(t).expect("shipped type");
        let mut oracle = [0usize; 5];
        oracle[2] = rs.rank();
        for r in rs.roots() {
            oracle[(rs.rho_height(r).expect("root") + 2) as usize] += 1;
        }
        let dims = ga.gd.piece_dims();
        o.sub(format!("{t} eigenspaces {dims:?} = {expected:?}"), dims == expected);
        o.sub(format!("{t} height oracle {oracle:?} = {expected:?}"), oracle == expected);
        o.detail.push_str(&format!(" {t}={dims:?}"));
    }
    o
}

fn contact_axioms() -> Outcome {
    let start = Instant::now();
    let mut o = Outcome::new();
    let mut s = Sampler::new(SEED);
    for n in 0..3 {
        let cc = ContactChart::hopf(n).expect("Hopf chart");
        let r = verify_axioms(&cc, &mut s, 10).expect("axioms run");
        o.sub(format!("Hopf n={n} vertical annihilation"), r.p1_vertical);
        o.sub(format!("Hopf n={n} scaling of weight 2"), r.p2_scaling);
        o.sub(format!("Hopf n={n} (dtheta)^(n+1) != 0"), r.p3_top_power);
        o.sub(format!("Hopf n={n} pointwise rank"), r.p3_pointwise);
    }
    for n in 0..2 {
        for d in [-2, -1, 1, 2, 3] {
            let cc = ContactChart::fibered(n, d).expect("fibered chart");
            let r = verify_axioms(&cc, &mut s, 10).expect("axioms run");
            o.sub(format!("fibered n={n} delta={d}"), r.all_pass());
        }
    }
    o.sub("delta = 0 rejected", matches!(ContactChart::fibered(1, 0), Err(ContactError::ZeroDelta)));
    o.within(start, Duration::from_secs(30));
    o
}

fn lemma_charts() -> Vec<ContactChart> {
    let mut v = vec![ContactChart::hopf(0).unwrap(), ContactChart::hopf(1).unwrap()];
    for n in 0..2 {
        for d in [-2, -1, 1, 2, 3] {
            v.push(ContactChart::fibered(n, d).unwrap());
        }
    }
    v
}

fn lemma21() -> Outcome {
    let mut o = Outcome::new();
    let mut s = Sampler::new(SEED + 21);
    let mut pairs = 0;
    let mut seen = std::collections::BTreeSet::new();
    for cc in lemma_charts() {
        let (lo, hi) = if cc.model() == Model::Hopf { (0, 4) } else { (-2, 4) };
        for _ in 0..18 {
            let (a, b) = (s.int(lo, hi), s.int(lo, hi));
            let f = cc.sample_homogeneous(&mut s, a, 3).unwrap();
            let g = cc.sample_homogeneous(&mut s, b, 3).unwrap();
            let f = HomogeneousFunction::with_degree(&cc, &f, a).unwrap();
            let g = HomogeneousFunction::with_degree(&cc, &g, b).unwrap();
            let r = check_lemma21(&cc, &f, &g).unwrap();
            for c in r.failures() {
                o.sub(format!("{:?} n={} l={a} l'={b}: {}", cc.model(), cc.n(), c.name), false);
            }
            seen.insert(a);
            seen.insert(b);
            pairs += 1;
        }
    }
    o.sub(format!("{pairs} pairs >= 200"), pairs >= 200);
    o.sub("degrees -2..4 all exercised", (-2..=4).all(|d| seen.contains(&d)));
    o.detail = format!(" {pairs} pairs");
    o
}

fn lemma22() -> Outcome {
    let mut o = Outcome::new();
    let mut s = Sampler::new(SEED + 22);
    let mut total = 0;
    for cc in [ContactChart::hopf(1).unwrap(), ContactChart::fibered(1, 3).unwrap(), ContactChart::fibered(1, -2).unwrap()] {
        let fs: Vec<HomogeneousFunction> = (0..50)
            .map(|_| {
                let f = cc.sample_homogeneous(&mut s, cc.delta(), 3).unwrap();
                HomogeneousFunction::with_degree(&cc, &f, cc.delta()).unwrap()
            })
            .collect();
        let r = check_lemma22(&cc, &fs).unwrap();
        for c in r.failures() {
            o.sub(format!("{:?} delta={}: {}", cc.model(), cc.delta(), c.name), false);
        }
        total += fs.len();
    }
    o.detail = format!(" {total} samples");
    o
}

fn cocycle() -> Outcome {
    let mut o = Outcome::new();
    let p1 = p1_cstructure().unwrap();
    o.sub("P1 affine charts contact condition and overlaps", p1.report.all_pass());
    o.sub("P1 affine charts f^1 = K_Z cocycle", canonical_cocycle_check(&p1, 0).unwrap().all_pass());
    for n in 0..2 {
        let cc = ContactChart::hopf(n).unwrap();
        let cs = reconstruct_cstructure(&cc, &hopf_sections(&cc)).unwrap();
        o.sub(format!("Hopf P{} c-structure", 2 * n + 1), cs.report.all_pass());
        let k = canonical_cocycle_check(&cs, n).unwrap();
        o.sub(format!("Hopf P{} f^(n+1) = K_Z cocycle", 2 * n + 1), k.all_pass() && !k.checks.is_empty());
    }
    o
}

fn quotient() -> Outcome {
    let mut o = Outcome::new();
    let mut s = Sampler::new(SEED + 7);
    for n in 0..3 {
        let r = quotient_check_hopf(n, &mut s, 100, 3).unwrap();
        for c in &r.checks {
            o.sub(format!("n={n} {}", c.name), c.passed);
        }
    }
    o
}

fn immersion() -> Outcome {
    let mut o = Outcome::new();
    let mut s = Sampler::new(SEED + 8);
    for n in 0..2 {
        let cc = ContactChart::hopf(n).unwrap();
        let fs: Vec<HomogeneousFunction> = monomial_basis(cc.chart().vars(), 2)
            .iter()
            .map(|f| HomogeneousFunction::with_degree(&cc, f, 2).unwrap())
            .collect();
        let pts: Vec<_> = (0..25).map(|_| cc.sample_point(&mut s)).collect();
        let full = immersion_rank(&cc, &fs, &pts).unwrap();
        let want = 2 * n + 2;
        o.sub(
            format!("n={n} rank {want} at 25 points"),
            full.rows.len() == 25 && full.rows.iter().all(|r| r.jacobian_rank == want && r.span_dim == want),
        );
        let single = immersion_rank(&cc, &fs[..1], &pts).unwrap();
        o.sub(
            format!("n={n} single function deficient"),
            single.consistent() && single.rows.iter().all(|r| r.jacobian_rank < want),
        );
    }
    o
}

fn adjoint() -> Outcome {
    let mut o = Outcome::new();
    for t in ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2"] {
        let start = Instant::now();
        let ga = GradedAlgebra::of_type(t).unwrap();
        let mut s = Sampler::new(SEED + 9);
        let (r, summary) = adjoint_suite(&ga, &mut s, 20).unwrap();
        for c in r.failures() {
            o.sub(format!("{t} {}", c.name), false);
        }
        let round_trips = r.named("kappa round trip").filter(|c| c.passed).count();
        o.sub(format!("{t} kappa round trip on 20 points"), round_trips == 20 && summary.moment_round_trip);
        o.sub(format!("{t} ker = L0 (dim {})", summary.l0_kernel_dim), summary.l0_kernel_dim == ga.gd.l0().len());
        o.sub(
            format!("{t} tangent rank dim G1 + 2 = {}", ga.gd.dim_p()),
            summary.embedding.rows.iter().all(|row| row.tangent_rank == ga.gd.dim_p()),
        );
        if t == "G2" {
            o.within(start, Duration::from_secs(120));
        }
    }
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_contactcheck"))
            .args(["all", "--seed", "7"])
            .env_remove("CONTACTCHECK_SEED")
            .output()
            .expect("binary runs")
            .stdout
    };
    let (a, b) = (run(), run());
    o.sub("report is non-empty JSON", serde_json::from_slice::<serde_json::Value>(&a).is_ok());
    o.sub("byte-identical reports", a == b);
    o.detail = format!(" {} bytes", a.len());
    o
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "Lie algebra suite", lie_suite),
        (2, "grading dimensions", grading_dims),
        (3, "contact axioms", contact_axioms),
        (4, "Hamiltonian bracket and degree identities", lemma21),
        (5, "Lie derivative of theta and field reconstruction", lemma22),
        (6, "canonical cocycle", cocycle),
        (7, "quotient by -1", quotient),
        (8, "immersion ranks", immersion),
        (9, "adjoint variety", adjoint),
        (10, "determinism", determinism),
    ];
    let mut failed = 0;
    for (k, title, f) in criteria {
        let o = f();
        println!("{} criterion {k}: {title}{}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        for n in &o.notes {
            println!("    {n}");
        }
        if !o.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
