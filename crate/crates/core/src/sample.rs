//! Seeded sampling of small exact scalars, points and polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{MultiPoly, Vars};
use crate::scalar::ExactScalar;

/// Bound on numerators and denominators of sampled rationals.
pub const MAX_ENTRY: i64 = 7;

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// `p/q` with `|p| ≤ 7`, `1 ≤ q ≤ 7`.
    pub fn rational(&mut self) -> ExactScalar {
        let p = self.int(-MAX_ENTRY, MAX_ENTRY);
        let q = self.int(1, MAX_ENTRY);
        ExactScalar::from_frac(p, q)
    }

    pub fn nonzero_rational(&mut self) -> ExactScalar {
        loop {
            let r = self.rational();
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    /// Wider-range rational `p/q` with `|p| ≤ 99`, `1 ≤ q ≤ 20`, used where
    /// collisions between samples should be rare.
    pub fn parameter(&mut self) -> ExactScalar {
        let p = self.int(-99, 99);
        let q = self.int(1, 20);
        ExactScalar::from_frac(p, q)
    }

    /// Nonzero Gaussian rational; the imaginary part is zero half the time.
    pub fn nonzero_scalar(&mut self) -> ExactScalar {
        loop {
            let re = self.rational();
            let im = if self.coin() { self.rational() } else { ExactScalar::from_int(0) };
            let z = &re + &(&im * &ExactScalar::i());
            if !num_traits::Zero::is_zero(&z) {
                return z;
            }
        }
    }

    /// Random exponent vector over the indices in `active` with the given
    /// total degree.
    pub fn exponents(&mut self, nvars: usize, active: &[usize], degree: u32) -> Vec<i32> {
        let mut e = vec![0; nvars];
        if active.is_empty() {
            return e;
        }
        for _ in 0..degree {
            let k = active[self.index(active.len())];
            e[k] += 1;
        }
        e
    }

    /// Sum of up to `max_terms` random monomials of total degree `degree` in
    /// the `active` variables, nonzero.
    pub fn homogeneous_poly(&mut self, vars: &Vars, active: &[usize], degree: u32, max_terms: usize) -> MultiPoly {
        loop {
            let terms = self.int(1, max_terms as i64) as usize;
            let mut p = MultiPoly::zero(vars);
            for _ in 0..terms {
                let e = self.exponents(vars.len(), active, degree);
                p = p.add(&MultiPoly::monomial(vars, e, self.nonzero_scalar()));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Polynomial of total degree at most `max_degree` in the `active`
    /// variables.
    pub fn poly(&mut self, vars: &Vars, active: &[usize], max_degree: u32, max_terms: usize) -> MultiPoly {
        loop {
            let terms = self.int(1, max_terms as i64) as usize;
            let mut p = MultiPoly::zero(vars);
            for _ in 0..terms {
                let d = self.int(0, max_degree as i64) as u32;
                let e = self.exponents(vars.len(), active, d);
                p = p.add(&MultiPoly::monomial(vars, e, self.nonzero_rational()));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }
}
