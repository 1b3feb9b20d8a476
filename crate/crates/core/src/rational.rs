//! Reduced rational functions and the multivariate gcd they rely on.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::poly::{MultiPoly, Vars};
use crate::scalar::ExactScalar;

/// Greatest common divisor of two polynomials (non-negative exponents),
/// normalized to leading coefficient one. `gcd(0, 0) = 0`.
///
/// Recursive: split off the first variable present, take contents in the
/// remaining variables and run a primitive pseudo-remainder sequence on the
/// primitive parts.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    let vars = a.merged_vars(b);
    let (a, b) = (a.rebase(&vars).unwrap(), b.rebase(&vars).unwrap());
    gcd_same(&a, &b)
}

fn gcd_same(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    let nv = a.vars().len();
    let main = (0..nv)
        .find(|&i| uses_var(a, i) || uses_var(b, i))
        .expect("non-constant polynomial uses some variable");
    let (ua, ub) = (uses_var(a, main), uses_var(b, main));
    if !ua {
        return gcd_same(a, &content(b, main));
    }
    if !ub {
        return gcd_same(&content(a, main), b);
    }
    let ca = content(a, main);
    let cb = content(b, main);
    let c = gcd_same(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if degree_in(&p, main) < degree_in(&q, main) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, main);
        if r.is_zero() {
            break;
        }
        if degree_in(&r, main) == 0 {
            q = MultiPoly::one(a.vars());
            break;
        }
        p = q;
        q = primitive_part(&r, main);
    }
    c.mul(&primitive_part(&q, main)).monic()
}

fn uses_var(p: &MultiPoly, idx: usize) -> bool {
    p.terms().any(|(m, _)| m.0[idx] != 0)
}

fn degree_in(p: &MultiPoly, idx: usize) -> i32 {
    p.exponent_range(idx).map(|(_, hi)| hi).unwrap_or(0)
}

/// gcd of the coefficients of `p` viewed as a polynomial in variable `idx`.
fn content(p: &MultiPoly, idx: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.vars());
    for c in p.coefficients_in(idx).values() {
        g = gcd_same(&g, c);
        if g.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    g
}

fn primitive_part(p: &MultiPoly, idx: usize) -> MultiPoly {
    let c = content(p, idx);
    p.div_exact(&c).expect("content divides")
}

fn pseudo_rem(p: &MultiPoly, q: &MultiPoly, idx: usize) -> MultiPoly {
    let dq = degree_in(q, idx);
    let lq = q.coefficients_in(idx).remove(&dq).unwrap();
    let mut r = p.clone();
    loop {
        let dr = degree_in(&r, idx);
        if r.is_zero() || dr < dq {
            return r;
        }
        let lr = r.coefficients_in(idx).remove(&dr).unwrap();
        let mut shift = vec![0; r.vars().len()];
        shift[idx] = dr - dq;
        r = r.mul(&lq).sub(&lr.mul(&q.shift(&shift)));
    }
}

/// `num / den`, kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let vars = num.merged_vars(&den);
        let num = num.rebase(&vars)?;
        let den = den.rebase(&vars)?;
        Ok(RationalFunction::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                den: MultiPoly::one(num.vars()),
                num,
            };
        }
        let g = gcd_same(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        let lc = d.leading_term().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.inv().unwrap();
        n = n.scale(&inv);
        d = d.scale(&inv);
        RationalFunction { num: n, den: d }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn constant(vars: &Vars, c: ExactScalar) -> Self {
        RationalFunction::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::aligned_reduce(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::aligned_reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RationalFunction::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Some(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    fn aligned_reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let vars = num.merged_vars(&den);
        RationalFunction::reduce(num.rebase(&vars).unwrap(), den.rebase(&vars).unwrap())
    }

    /// Quotient rule.
    pub fn partial(&self, var: &str) -> Result<Self, AlgebraError> {
        let vars = self.vars();
        if !vars.iter().any(|v| v == var) {
            return Ok(RationalFunction::constant(vars, ExactScalar::zero()));
        }
        let dn = self.num.partial(var)?;
        let dd = self.den.partial(var)?;
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Ok(Self::aligned_reduce(num, self.den.pow(2)))
    }

    /// Substitutes rational functions for variables.
    pub fn substitute(&self, bindings: &HashMap<String, RationalFunction>) -> Result<Self, AlgebraError> {
        let n = substitute_poly(&self.num, bindings)?;
        let d = substitute_poly(&self.den, bindings)?;
        n.div(&d).ok_or(AlgebraError::ZeroDenominator)
    }

    pub fn eval(&self, point: &HashMap<String, ExactScalar>) -> Result<ExactScalar, AlgebraError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(&self.num.eval(point)? / &d)
    }
}

/// Substitutes rational functions into a polynomial.
pub fn substitute_poly(
    p: &MultiPoly,
    bindings: &HashMap<String, RationalFunction>,
) -> Result<RationalFunction, AlgebraError> {
    let vars = p.vars().clone();
    let mut acc = RationalFunction::constant(&vars, ExactScalar::zero());
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(&vars, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = match bindings.get(&vars[i]) {
                Some(r) => r.clone(),
                None => RationalFunction::from_poly(MultiPoly::var_at(&vars, i)),
            };
            term = term.mul(&base.pow(e).ok_or(AlgebraError::ZeroDenominator)?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
