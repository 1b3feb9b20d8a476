use std::collections::HashMap;

use contact_core::adjoint::{orbit_sample, random_word};
use contact_core::contact::{degree_of, ContactChart};
use contact_core::exterior::{ChartSpace, PolyForm, PolyVectorField};
use contact_core::liealg::GradedAlgebra;
use contact_core::sample::Sampler;
use contact_core::{ExactScalar, MultiPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn chart() -> ChartSpace {
    ChartSpace::new(&["x", "y", "z"], Some("λ")).unwrap()
}

fn random_form(s: &mut Sampler, chart: &ChartSpace, degree: usize) -> PolyForm {
    let n = chart.dim();
    let active: Vec<usize> = (0..n).collect();
    let mut terms = Vec::new();
    for _ in 0..s.int(1, 3) {
        let mut idx: Vec<usize> = Vec::new();
        while idx.len() < degree {
            let k = s.index(n);
            if !idx.contains(&k) {
                idx.push(k);
            }
        }
        terms.push((idx, s.poly(chart.vars(), &active, 3, 3)));
    }
    PolyForm::from_terms(chart, degree, terms).unwrap()
}

fn random_field(s: &mut Sampler, chart: &ChartSpace) -> PolyVectorField {
    let active: Vec<usize> = (0..chart.dim()).collect();
    let comps: Vec<(usize, MultiPoly)> = (0..chart.dim()).map(|k| (k, s.poly(chart.vars(), &active, 2, 2))).collect();
    PolyVectorField::new(chart, comps).unwrap()
}

fn sign(p: usize) -> ExactScalar {
    ExactScalar::from_int(if p % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_is_zero(seed in any::<u64>(), degree in 0usize..3) {
        let c = chart();
        let w = random_form(&mut Sampler::new(seed), &c, degree);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn leibniz(seed in any::<u64>(), p in 0usize..3, q in 0usize..2) {
        let c = chart();
        let mut s = Sampler::new(seed);
        let a = random_form(&mut s, &c, p);
        let b = random_form(&mut s, &c, q);
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = a.d().wedge(&b).unwrap().add(&a.wedge(&b.d()).unwrap().scale(&sign(p))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_commutes_with_d(seed in any::<u64>(), degree in 0usize..3) {
        let target = chart();
        let source = ChartSpace::new(&["u", "v"], Some("μ")).unwrap();
        let mut s = Sampler::new(seed);
        let w = random_form(&mut s, &target, degree);
        let base: Vec<usize> = vec![0, 1];
        let mut images = HashMap::new();
        for v in ["x", "y", "z"] {
            images.insert(v.to_string(), s.poly(source.vars(), &base, 2, 3));
        }
        // the fiber must map to a monomial so Laurent exponents stay legal
        let mu = source.coordinate("μ").unwrap().pow(s.int(1, 2) as u32);
        images.insert("λ".to_string(), mu.scale(&s.nonzero_rational()));
        let lhs = w.d().pullback(&source, &images).unwrap();
        let rhs = w.pullback(&source, &images).unwrap().d();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_wedge_dtheta_matches_naive_sum(seed in any::<u64>()) {
        let c = chart();
        let theta = random_form(&mut Sampler::new(seed), &c, 1);
        let a: Vec<MultiPoly> = (0..4).map(|k| theta.coefficient(&[k])).collect();
        let m = |j: usize, k: usize| a[k].partial_at(j).sub(&a[j].partial_at(k));
        let top = theta.wedge(&theta.d()).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    let naive = a[i].mul(&m(j, k)).sub(&a[j].mul(&m(i, k))).add(&a[k].mul(&m(i, j)));
                    prop_assert_eq!(top.coefficient(&[i, j, k]), naive);
                }
            }
        }
    }

    #[test]
    fn interior_twice_vanishes(seed in any::<u64>()) {
        let c = chart();
        let mut s = Sampler::new(seed);
        let w = random_form(&mut s, &c, 2);
        let x = random_field(&mut s, &c);
        prop_assert!(w.interior(&x).unwrap().interior(&x).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_commutes_with_d(seed in any::<u64>(), degree in 0usize..2) {
        let c = chart();
        let mut s = Sampler::new(seed);
        let w = random_form(&mut s, &c, degree);
        let x = random_field(&mut s, &c);
        let lhs = w.lie_derivative(&x).unwrap().d();
        let rhs = w.d().lie_derivative(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poisson_jacobi_hopf(seed in any::<u64>(), n in 0usize..2) {
        let cc = ContactChart::hopf(n).unwrap();
        let mut s = Sampler::new(seed);
        let degs: Vec<i64> = (0..3).map(|_| s.int(1, 3)).collect();
        let fs: Vec<MultiPoly> = degs.iter().map(|&d| cc.sample_homogeneous(&mut s, d, 2).unwrap()).collect();
        let pb = |a: &MultiPoly, b: &MultiPoly| cc.poisson(a, b).unwrap();
        let total = pb(&fs[0], &pb(&fs[1], &fs[2]))
            .add(&pb(&fs[1], &pb(&fs[2], &fs[0])))
            .add(&pb(&fs[2], &pb(&fs[0], &fs[1])));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn poisson_jacobi_fibered(seed in any::<u64>(), delta in prop::sample::select(vec![-2i64, -1, 1, 2, 3])) {
        let cc = ContactChart::fibered(1, delta).unwrap();
        let mut s = Sampler::new(seed);
        let fs: Vec<MultiPoly> = (0..3).map(|_| {
            let d = s.int(-2, 4);
            cc.sample_homogeneous(&mut s, d, 2).unwrap()
        }).collect();
        let pb = |a: &MultiPoly, b: &MultiPoly| cc.poisson(a, b).unwrap();
        let total = pb(&fs[0], &pb(&fs[1], &fs[2]))
            .add(&pb(&fs[1], &pb(&fs[2], &fs[0])))
            .add(&pb(&fs[2], &pb(&fs[0], &fs[1])));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn theta_of_hamiltonian(seed in any::<u64>(), delta in prop::sample::select(vec![-2i64, -1, 1, 2, 3]), ell in -2i64..5) {
        let cc = ContactChart::fibered(1, delta).unwrap();
        let mut s = Sampler::new(seed);
        let f = cc.sample_homogeneous(&mut s, ell, 3).unwrap();
        let x = cc.hamiltonian_field(&f).unwrap();
        prop_assert_eq!(cc.theta_of(&x).unwrap(), f.scale(&ExactScalar::from_frac(ell, delta)));
        prop_assert_eq!(degree_of(&cc, &f).unwrap(), Some(ell));
    }

    #[test]
    fn orbit_points_are_isotropic(seed in any::<u64>(), ty in prop::sample::select(vec!["A1", "A2", "B2"])) {
        let ga = GradedAlgebra::of_type(ty).unwrap();
        let mut s = Sampler::new(seed);
        let word = random_word(&ga, &mut s, 3);
        let pt = orbit_sample(&ga, &word).unwrap();
        prop_assert!(ga.kd.form(&pt.vector, &pt.vector).is_zero());
        prop_assert!(pt.automorphism.preserves_form(ga.kd.gram()));
    }
}
