//! Sparse multivariate polynomials over ℚ(i).
//!
//! A polynomial carries its own ordered variable table. Binary operations on
//! polynomials with different tables first merge them by name (left table
//! first, then the names only the right operand knows), so callers never have
//! to align by hand. Equality is semantic: two polynomials with different
//! tables compare equal when they agree after alignment.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomials and
//! zero coefficients are never stored, which makes the representation
//! canonical.
//!
//! Exponents are signed. Ordinary polynomials only ever hold non-negative
//! exponents (see [`MultiPoly::is_polynomial`]); negative exponents appear only
//! through [`crate::laurent::LaurentPoly`], which restricts them to a single
//! fiber variable.
//!
//! # Textual form
//!
//! Terms are printed from the largest monomial down, joined with ` + ` / ` - `.
//! A term is `coeff*x^2*y` with the coefficient omitted when it is `1`
//! (printed as a leading `-` when it is `-1`) and `^1` omitted. Coefficients
//! use the [`ExactScalar`] format, e.g. `(1+i)*x*y^-1 - 3/2*i*z + 7`. The zero
//! polynomial prints as `0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::scalar::ExactScalar;

/// Shared, ordered variable table.
pub type Vars = Arc<Vec<String>>;

pub fn var_table<I, S>(names: I) -> Vars
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    Arc::new(names.into_iter().map(Into::into).collect())
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, ExactScalar>,
}

fn merge_tables(a: &Vars, b: &Vars) -> Vars {
    if Arc::ptr_eq(a, b) || a == b {
        return a.clone();
    }
    let mut names: Vec<String> = a.as_ref().clone();
    for v in b.iter() {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    Arc::new(names)
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: ExactScalar) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        MultiPoly::constant(vars, ExactScalar::one())
    }

    pub fn from_int(vars: &Vars, n: i64) -> Self {
        MultiPoly::constant(vars, ExactScalar::from_int(n))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        let idx = index_of(vars, name)?;
        Ok(MultiPoly::var_at(vars, idx))
    }

    pub fn var_at(vars: &Vars, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        MultiPoly::monomial(vars, e, ExactScalar::one())
    }

    pub fn monomial(vars: &Vars, exps: Vec<i32>, c: ExactScalar) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, ExactScalar)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant term (the value when the polynomial is constant).
    pub fn constant_term(&self) -> ExactScalar {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_default()
    }

    /// No negative exponents anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Distinct weighted degrees of the terms, `Σ wᵢ eᵢ`.
    pub fn weighted_degrees(&self, weights: &[i64]) -> Vec<i64> {
        assert_eq!(weights.len(), self.vars.len());
        let mut ds: Vec<i64> = self
            .terms
            .keys()
            .map(|m| m.0.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum())
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Highest and lowest exponent of variable `idx`, over all terms.
    pub fn exponent_range(&self, idx: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.0[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// This table followed by the names only `other` knows.
    pub fn merged_vars(&self, other: &MultiPoly) -> Vars {
        merge_tables(&self.vars, &other.vars)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        index_of(&self.vars, name)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable the polynomial actually uses.
    pub fn rebase(&self, vars: &Vars) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(&self.vars, vars) || self.vars == *vars {
            return Ok(MultiPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m.0[i] != 0) {
                        return Err(AlgebraError::UnknownVariable(v.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut out = MultiPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = x;
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let vars = merge_tables(&self.vars, &other.vars);
        (
            self.rebase(&vars).expect("merged table covers operand"),
            other.rebase(&vars).expect("merged table covers operand"),
        )
    }

    fn same_table(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        if !self.same_table(other) {
            let (a, b) = self.aligned(other);
            return a.add(&b);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if !self.same_table(other) {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[i32]) -> MultiPoly {
        assert_eq!(exps.len(), self.vars.len());
        let s = Monomial(exps.to_vec());
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(&s), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn partial(&self, name: &str) -> Result<MultiPoly, AlgebraError> {
        let idx = self.index_of(name)?;
        Ok(self.partial_at(idx))
    }

    pub fn partial_at(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, &(c * &ExactScalar::from_int(e as i64)));
        }
        out
    }

    /// Simultaneous substitution `var ↦ image`. Unbound variables are left in
    /// place; the result lives over the union of this table and the images'.
    /// A variable with a negative exponent may only be sent to a single
    /// nonzero term.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Result<MultiPoly, AlgebraError> {
        let mut vars = self.vars.clone();
        for img in bindings.values() {
            vars = merge_tables(&vars, img.vars());
        }
        let me = self.rebase(&vars)?;
        let mut images: Vec<Option<MultiPoly>> = Vec::with_capacity(vars.len());
        for v in vars.iter() {
            images.push(match bindings.get(v) {
                Some(img) => Some(img.rebase(&vars)?),
                None => None,
            });
        }
        let mut cache: HashMap<(usize, i32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(&vars);
        for (m, c) in &me.terms {
            let mut kept = vec![0; vars.len()];
            let mut term = MultiPoly::constant(&vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[i] {
                    None => kept[i] = e,
                    Some(img) => {
                        let p = match cache.get(&(i, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = img.powi(e).ok_or_else(|| {
                                    AlgebraError::NonInvertibleImage(vars[i].clone())
                                })?;
                                cache.insert((i, e), p.clone());
                                p
                            }
                        };
                        term = term.mul(&p);
                    }
                }
            }
            out = out.add(&term.shift(&kept));
        }
        Ok(out)
    }

    /// Integer power; negative powers exist only for single-term polynomials.
    pub fn powi(&self, k: i32) -> Option<MultiPoly> {
        if k >= 0 {
            return Some(self.pow(k as u32));
        }
        let inv = self.monomial_inverse()?;
        Some(inv.pow(k.unsigned_abs()))
    }

    /// Inverse of a single nonzero term.
    pub fn monomial_inverse(&self) -> Option<MultiPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(MultiPoly::monomial(
            &self.vars,
            m.0.iter().map(|e| -e).collect(),
            c.inv()?,
        ))
    }

    /// Evaluates at a point. Every variable the polynomial uses must be bound.
    pub fn eval(&self, point: &HashMap<String, ExactScalar>) -> Result<ExactScalar, AlgebraError> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            vals.push(point.get(v));
        }
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = vals[i].ok_or_else(|| AlgebraError::UnboundVariable(self.vars[i].clone()))?;
                let p = x
                    .powi(e as i64)
                    .ok_or_else(|| AlgebraError::PoleAtPoint(self.vars[i].clone()))?;
                t *= &p;
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact division by `d` when `d` divides `self` in the polynomial ring;
    /// `None` otherwise.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if !self.same_table(d) {
            let (a, b) = self.aligned(d);
            return a.div_exact(&b);
        }
        let (lm, lc) = d.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qe: Vec<i32> = rm.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&e| e < 0) {
                return None;
            }
            let q = MultiPoly::monomial(&self.vars, qe, rc / &lc);
            rem = rem.sub(&q.mul(d));
            quot = quot.add(&q);
        }
        Some(quot)
    }

    /// Multiplies through so the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Map from exponent of variable `idx` to the coefficient polynomial (with
    /// that variable removed, i.e. its exponent zeroed).
    pub fn coefficients_in(&self, idx: usize) -> BTreeMap<i32, MultiPoly> {
        let mut out: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut m2 = m.clone();
            m2.0[idx] = 0;
            out.entry(e)
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .add_term(m2, c);
        }
        out
    }
}

fn index_of(vars: &Vars, name: &str) -> Result<usize, AlgebraError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.same_table(other) {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = format_term(&self.vars, m, c);
            if k == 0 {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn format_term(vars: &[String], m: &Monomial, c: &ExactScalar) -> String {
    let factors: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], e)
            }
        })
        .collect();
    if factors.is_empty() {
        return c.to_string();
    }
    let mono = factors.join("*");
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Vars, MultiPoly, MultiPoly) {
        let v = var_table(["x", "y"]);
        let x = MultiPoly::var(&v, "x").unwrap();
        let y = MultiPoly::var(&v, "y").unwrap();
        (v, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, x.pow(2).sub(&y.pow(2)));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn absorbing_zero_and_inverse() {
        let (v, x, _) = xy();
        let p = x.add(&MultiPoly::one(&v));
        assert!(p.mul(&MultiPoly::zero(&v)).is_zero());
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn partials() {
        let (v, x, y) = xy();
        let p = x.pow(2).mul(&y);
        assert_eq!(p.partial("x").unwrap(), x.mul(&y).scale(&ExactScalar::from_int(2)));
        assert!(MultiPoly::from_int(&v, 5).partial("x").unwrap().is_zero());
        let q = x.pow(3).add(&x.mul(&y.pow(2)));
        assert_eq!(q.partial("y").unwrap(), x.mul(&y).scale(&ExactScalar::from_int(2)));
        assert!(matches!(p.partial("z"), Err(AlgebraError::UnknownVariable(_))));
    }

    #[test]
    fn substitution_examples() {
        let (_, x, y) = xy();
        let t = MultiPoly::var(&var_table(["t"]), "t").unwrap();
        let p = x.pow(2);
        let mut b = HashMap::new();
        b.insert("x".to_string(), t.mul(&x));
        assert_eq!(p.substitute(&b).unwrap(), t.pow(2).mul(&x.pow(2)));

        let mut swap = HashMap::new();
        swap.insert("x".to_string(), y.clone());
        swap.insert("y".to_string(), x.clone());
        assert_eq!(x.add(&y).substitute(&swap).unwrap(), x.add(&y));

        let lam = MultiPoly::var(&var_table(["λ"]), "λ").unwrap();
        let mut b = HashMap::new();
        b.insert("x".to_string(), lam.powi(-1).unwrap());
        let r = x.mul(&y).substitute(&b).unwrap();
        assert_eq!(r.to_string(), "y*λ^-1");
    }

    #[test]
    fn negative_exponent_needs_monomial_image() {
        let v = var_table(["x", "y"]);
        let xinv = MultiPoly::monomial(&v, vec![-1, 0], ExactScalar::one());
        let y = MultiPoly::var(&v, "y").unwrap();
        let mut b = HashMap::new();
        b.insert("x".to_string(), y.add(&MultiPoly::one(&v)));
        assert!(xinv.substitute(&b).is_err());
    }

    #[test]
    fn alignment_by_name() {
        let a = MultiPoly::var(&var_table(["x"]), "x").unwrap();
        let b = MultiPoly::var(&var_table(["y", "x"]), "x").unwrap();
        assert_eq!(a, b);
        let s = a.add(&MultiPoly::var(&var_table(["y"]), "y").unwrap());
        assert_eq!(s.vars().as_ref(), &vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let p = x.pow(2).sub(&y.pow(2));
        assert_eq!(p.div_exact(&x.sub(&y)).unwrap(), x.add(&y));
        assert!(p.div_exact(&x).is_none());
    }

    #[test]
    fn display_imaginary_and_fractions() {
        let (v, x, y) = xy();
        let p = x
            .scale(&(ExactScalar::one() + ExactScalar::i()))
            .sub(&y.scale(&ExactScalar::from_frac(3, 2)))
            .add(&MultiPoly::constant(&v, ExactScalar::i()));
        assert_eq!(p.to_string(), "(1+i)*x - 3/2*y + i");
    }
}
