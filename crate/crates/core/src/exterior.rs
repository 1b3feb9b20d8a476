//! Holomorphic (p,0)-forms and vector fields on a coordinate chart, with
//! polynomial coefficients that may carry negative powers of the fiber
//! variable only.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::error::AlgebraError;
use crate::linalg::{Matrix, Vector};
use crate::poly::{var_table, MultiPoly, Vars};
use crate::rational::RationalFunction;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("duplicate chart variable `{0}`")]
    DuplicateVariable(String),
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("no image given for target variable `{0}`")]
    MissingImage(String),
    #[error("matrix of the 2-form is not invertible over Laurent polynomials")]
    Degenerate,
}

/// Ordered coordinate names; the fiber variable (if any) comes last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpace {
    base: Vec<String>,
    fiber: Option<String>,
    vars: Vars,
}

impl ChartSpace {
    pub fn new<S: AsRef<str>>(base: &[S], fiber: Option<&str>) -> Result<Self, ExteriorError> {
        let base: Vec<String> = base.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in base.iter().map(String::as_str).chain(fiber) {
            if !seen.insert(v) {
                return Err(ExteriorError::DuplicateVariable(v.to_string()));
            }
        }
        let vars = var_table(base.iter().cloned().chain(fiber.map(str::to_string)));
        Ok(ChartSpace {
            base,
            fiber: fiber.map(str::to_string),
            vars,
        })
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base
    }

    pub fn fiber_var(&self) -> Option<&str> {
        self.fiber.as_deref()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ExteriorError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()).into())
    }

    pub fn coordinate(&self, name: &str) -> Result<MultiPoly, ExteriorError> {
        Ok(MultiPoly::var_at(&self.vars, self.index_of(name)?))
    }

    /// Brings a coefficient onto this chart and checks that only the fiber
    /// variable is inverted.
    pub fn adopt(&self, p: &MultiPoly) -> Result<MultiPoly, ExteriorError> {
        let q = p.rebase(&self.vars)?;
        for (m, _) in q.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && self.fiber.as_deref() != Some(self.vars[i].as_str()) {
                    return Err(AlgebraError::NegativeExponentOffFiber(self.vars[i].clone()).into());
                }
            }
        }
        Ok(q)
    }
}

/// Sign of sorting `idx` and the sorted tuple, `None` on a repeated index.
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, idx))
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    chart: ChartSpace,
    degree: usize,
    terms: BTreeMap<Vec<usize>, MultiPoly>,
}

impl PolyForm {
    pub fn zero(chart: &ChartSpace, degree: usize) -> Self {
        PolyForm {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(chart: &ChartSpace, f: &MultiPoly) -> Result<Self, ExteriorError> {
        PolyForm::from_terms(chart, 0, [(Vec::new(), f.clone())])
    }

    /// `d(name)`.
    pub fn dx(chart: &ChartSpace, name: &str) -> Result<Self, ExteriorError> {
        let i = chart.index_of(name)?;
        PolyForm::from_terms(chart, 1, [(vec![i], MultiPoly::one(chart.vars()))])
    }

    /// Terms may come in any index order; they are sorted with sign.
    pub fn from_terms<I>(chart: &ChartSpace, degree: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (Vec<usize>, MultiPoly)>,
    {
        let mut f = PolyForm::zero(chart, degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree, "index tuple length must equal the degree");
            assert!(idx.iter().all(|&i| i < chart.dim()), "index out of range");
            let c = chart.adopt(&c)?;
            if let Some((s, sorted)) = sort_with_sign(idx) {
                f.add_term(sorted, if s < 0 { c.neg() } else { c });
            }
        }
        Ok(f)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&idx) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    pub fn chart(&self) -> &ChartSpace {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> MultiPoly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.chart.vars()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_chart(&self, other_chart: &ChartSpace) -> Result<(), ExteriorError> {
        if self.chart.vars == other_chart.vars {
            Ok(())
        } else {
            Err(ExteriorError::ChartMismatch)
        }
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, ExteriorError> {
        self.same_chart(&other.chart)?;
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&ExactScalar::from_int(-1))
    }

    pub fn scale(&self, c: &ExactScalar) -> PolyForm {
        let mut out = PolyForm::zero(&self.chart, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scale(c));
        }
        out
    }

    /// Multiplication by a function.
    pub fn mul_fn(&self, f: &MultiPoly) -> Result<PolyForm, ExteriorError> {
        let f = self.chart.adopt(f)?;
        let mut out = PolyForm::zero(&self.chart, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul(&f));
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, ExteriorError> {
        self.same_chart(&other.chart)?;
        let mut out = PolyForm::zero(&self.chart, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((s, sorted)) = sort_with_sign(idx) {
                    let c = ca.mul(cb);
                    out.add_term(sorted, if s < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power (`k = 0` gives the constant 1).
    pub fn wedge_power(&self, k: usize) -> Result<PolyForm, ExteriorError> {
        let mut out = PolyForm::function(&self.chart, &MultiPoly::one(self.chart.vars()))?;
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.chart, self.degree + 1);
        for (idx, c) in &self.terms {
            for k in 0..self.chart.dim() {
                if idx.contains(&k) {
                    continue;
                }
                let dc = c.partial_at(k);
                if dc.is_zero() {
                    continue;
                }
                let mut full = vec![k];
                full.extend_from_slice(idx);
                let (s, sorted) = sort_with_sign(full).unwrap();
                out.add_term(sorted, if s < 0 { dc.neg() } else { dc });
            }
        }
        out
    }

    /// `ι_X`, alternating signs from the left slot.
    pub fn interior(&self, x: &PolyVectorField) -> Result<PolyForm, ExteriorError> {
        self.same_chart(&x.chart)?;
        if self.degree == 0 {
            return Ok(PolyForm::zero(&self.chart, 0));
        }
        let mut out = PolyForm::zero(&self.chart, self.degree - 1);
        for (idx, c) in &self.terms {
            for (s, &i) in idx.iter().enumerate() {
                let Some(xi) = x.components.get(&i) else { continue };
                let mut rest = idx.clone();
                rest.remove(s);
                let t = c.mul(xi);
                out.add_term(rest, if s % 2 == 1 { t.neg() } else { t });
            }
        }
        Ok(out)
    }

    /// Cartan's formula `L_X = d ι_X + ι_X d`.
    pub fn lie_derivative(&self, x: &PolyVectorField) -> Result<PolyForm, ExteriorError> {
        let a = self.interior(x)?.d();
        let b = self.d().interior(x)?;
        if self.degree == 0 {
            return Ok(b);
        }
        a.add(&b)
    }

    /// Value of a 0-form.
    pub fn as_function(&self) -> MultiPoly {
        assert_eq!(self.degree, 0, "not a 0-form");
        self.coefficient(&[])
    }

    /// Antisymmetric coefficient matrix `M` of a 2-form `Σ_{i<j} M_ij dx_i∧dx_j`.
    pub fn two_form_matrix(&self) -> Vec<Vec<MultiPoly>> {
        assert_eq!(self.degree, 2, "not a 2-form");
        let n = self.chart.dim();
        let zero = MultiPoly::zero(self.chart.vars());
        let mut m = vec![vec![zero; n]; n];
        for (idx, c) in &self.terms {
            m[idx[0]][idx[1]] = c.clone();
            m[idx[1]][idx[0]] = c.neg();
        }
        m
    }

    /// `φ^* ω` where `images` gives each target coordinate as a function on
    /// `source`. Negative powers can only be pulled back through single-term
    /// images.
    pub fn pullback(&self, source: &ChartSpace, images: &HashMap<String, MultiPoly>) -> Result<PolyForm, ExteriorError> {
        let mut diffs = Vec::with_capacity(self.chart.dim());
        for v in self.chart.vars.iter() {
            let img = images.get(v).ok_or_else(|| ExteriorError::MissingImage(v.clone()))?;
            diffs.push(PolyForm::function(source, img)?.d());
        }
        let mut out = PolyForm::zero(source, self.degree);
        for (idx, c) in &self.terms {
            let pulled = source.adopt(&c.substitute(images)?)?;
            let mut term = PolyForm::function(source, &pulled)?;
            for &i in idx {
                term = term.wedge(&diffs[i])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes and evaluates every coefficient.
    pub fn evaluate(&self, point: &HashMap<String, ExactScalar>) -> Result<BTreeMap<Vec<usize>, ExactScalar>, ExteriorError> {
        let mut out = BTreeMap::new();
        for (idx, c) in &self.terms {
            let v = c.eval(point)?;
            if !v.is_zero() {
                out.insert(idx.clone(), v);
            }
        }
        Ok(out)
    }

    /// Substitution in the coefficients only (the `dx` are kept), e.g. for
    /// weighted scaling tests where the new variable is a constant parameter.
    pub fn map_coefficients<F>(&self, chart: &ChartSpace, mut f: F) -> Result<PolyForm, ExteriorError>
    where
        F: FnMut(&MultiPoly) -> Result<MultiPoly, ExteriorError>,
    {
        let mut out = PolyForm::zero(chart, self.degree);
        for (idx, c) in &self.terms {
            let v = chart.adopt(&f(c)?)?;
            out.add_term(idx.clone(), v);
        }
        Ok(out)
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.chart.vars();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    return c.to_string();
                }
                let w: Vec<String> = idx.iter().map(|&i| format!("d{}", vars[i])).collect();
                format!("({c})*{}", w.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ X^i ∂_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    chart: ChartSpace,
    components: BTreeMap<usize, MultiPoly>,
}

impl PolyVectorField {
    pub fn zero(chart: &ChartSpace) -> Self {
        PolyVectorField {
            chart: chart.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn new<I>(chart: &ChartSpace, comps: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (usize, MultiPoly)>,
    {
        let mut x = PolyVectorField::zero(chart);
        for (i, c) in comps {
            assert!(i < chart.dim(), "component index out of range");
            let c = chart.adopt(&c)?;
            x.set(i, c);
        }
        Ok(x)
    }

    /// `∂/∂name`.
    pub fn coordinate(chart: &ChartSpace, name: &str) -> Result<Self, ExteriorError> {
        let i = chart.index_of(name)?;
        PolyVectorField::new(chart, [(i, MultiPoly::one(chart.vars()))])
    }

    fn set(&mut self, i: usize, c: MultiPoly) {
        let sum = match self.components.remove(&i) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.components.insert(i, sum);
        }
    }

    pub fn chart(&self) -> &ChartSpace {
        &self.chart
    }

    pub fn component(&self, i: usize) -> MultiPoly {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.chart.vars()))
    }

    pub fn components(&self) -> impl Iterator<Item = (&usize, &MultiPoly)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField, ExteriorError> {
        if self.chart.vars != other.chart.vars {
            return Err(ExteriorError::ChartMismatch);
        }
        let mut out = self.clone();
        for (i, c) in &other.components {
            out.set(*i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyVectorField) -> Result<PolyVectorField, ExteriorError> {
        self.add(&other.scale(&ExactScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &ExactScalar) -> PolyVectorField {
        let mut out = PolyVectorField::zero(&self.chart);
        for (i, v) in &self.components {
            out.set(*i, v.scale(c));
        }
        out
    }

    pub fn mul_fn(&self, f: &MultiPoly) -> Result<PolyVectorField, ExteriorError> {
        let f = self.chart.adopt(f)?;
        let mut out = PolyVectorField::zero(&self.chart);
        for (i, v) in &self.components {
            out.set(*i, v.mul(&f));
        }
        Ok(out)
    }

    /// `X(f) = Σ X^i ∂_i f`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, ExteriorError> {
        let f = self.chart.adopt(f)?;
        let mut acc = MultiPoly::zero(self.chart.vars());
        for (i, v) in &self.components {
            acc = acc.add(&v.mul(&f.partial_at(*i)));
        }
        Ok(acc)
    }

    /// `[X, Y]^k = X(Y^k) − Y(X^k)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField, ExteriorError> {
        if self.chart.vars != other.chart.vars {
            return Err(ExteriorError::ChartMismatch);
        }
        let mut out = PolyVectorField::zero(&self.chart);
        for k in 0..self.chart.dim() {
            let c = self.apply(&other.component(k))?.sub(&other.apply(&self.component(k))?);
            out.set(k, c);
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &HashMap<String, ExactScalar>) -> Result<Vector, ExteriorError> {
        let mut out = vec![ExactScalar::zero(); self.chart.dim()];
        for (i, v) in &self.components {
            out[*i] = v.eval(point)?;
        }
        Ok(out)
    }

    pub fn map_components<F>(&self, chart: &ChartSpace, mut f: F) -> Result<PolyVectorField, ExteriorError>
    where
        F: FnMut(&MultiPoly) -> Result<MultiPoly, ExteriorError>,
    {
        let mut out = PolyVectorField::zero(chart);
        for (i, v) in &self.components {
            let c = chart.adopt(&f(v)?)?;
            out.set(*i, c);
        }
        Ok(out)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let vars = self.chart.vars();
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(i, c)| format!("({c})*∂{}", vars[*i]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Determinant of a square polynomial matrix by Laplace expansion along rows,
/// memoized on the set of columns still in use.
pub fn poly_determinant(m: &[Vec<MultiPoly>], vars: &Vars) -> MultiPoly {
    fn go(m: &[Vec<MultiPoly>], row: usize, cols: u32, memo: &mut HashMap<(usize, u32), MultiPoly>, vars: &Vars) -> MultiPoly {
        let n = m.len();
        if row == n {
            return MultiPoly::one(vars);
        }
        if let Some(v) = memo.get(&(row, cols)) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(vars);
        let mut sign_pos = 0;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &m[row][c];
            if !e.is_zero() {
                let minor = go(m, row + 1, cols & !(1 << c), memo, vars);
                let t = e.mul(&minor);
                acc = if sign_pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            sign_pos += 1;
        }
        memo.insert((row, cols), acc.clone());
        acc
    }
    assert!(m.len() < 32, "matrix too large");
    let full = if m.is_empty() { 0 } else { (1u32 << m.len()) - 1 };
    go(m, 0, full, &mut HashMap::new(), vars)
}

/// Inverse of a polynomial matrix whose determinant is a single term, so
/// that the inverse again has Laurent-polynomial entries.
pub fn poly_inverse(m: &[Vec<MultiPoly>], vars: &Vars) -> Result<Vec<Vec<MultiPoly>>, ExteriorError> {
    let n = m.len();
    let det = poly_determinant(m, vars);
    let det_inv = det.monomial_inverse().ok_or(ExteriorError::Degenerate)?;
    let mut inv = vec![vec![MultiPoly::zero(vars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<MultiPoly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let cof = poly_determinant(&minor, vars);
            let cof = if (i + j) % 2 == 1 { cof.neg() } else { cof };
            inv[j][i] = cof.mul(&det_inv);
        }
    }
    Ok(inv)
}

/// Exact numeric matrix of a 2-form at a point.
pub fn two_form_at(form: &PolyForm, point: &HashMap<String, ExactScalar>) -> Result<Matrix, ExteriorError> {
    let m = form.two_form_matrix();
    let n = m.len();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[i][j].eval(point)?;
        }
    }
    Ok(out)
}

/// A form whose coefficients are rational functions of the chart variables;
/// the target of pullbacks along rational coordinate changes.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalForm {
    chart: ChartSpace,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RationalFunction>,
}

impl RationalForm {
    pub fn zero(chart: &ChartSpace, degree: usize) -> Self {
        RationalForm {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly_form(f: &PolyForm) -> Self {
        let mut out = RationalForm::zero(&f.chart, f.degree);
        for (idx, c) in &f.terms {
            out.add_term(idx.clone(), RationalFunction::from_poly(c.clone()));
        }
        out
    }

    fn add_term(&mut self, idx: Vec<usize>, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&idx) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn chart(&self) -> &ChartSpace {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &[usize]) -> RationalFunction {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| RationalFunction::constant(self.chart.vars(), ExactScalar::zero()))
    }

    pub fn add(&self, other: &RationalForm) -> RationalForm {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn mul_fn(&self, f: &RationalFunction) -> RationalForm {
        let mut out = RationalForm::zero(&self.chart, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul(f));
        }
        out
    }

    pub fn wedge(&self, other: &RationalForm) -> RationalForm {
        let mut out = RationalForm::zero(&self.chart, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((s, sorted)) = sort_with_sign(idx) {
                    let c = ca.mul(cb);
                    out.add_term(sorted, if s < 0 { c.neg() } else { c });
                }
            }
        }
        out
    }

    pub fn d(&self) -> Result<RationalForm, ExteriorError> {
        let mut out = RationalForm::zero(&self.chart, self.degree + 1);
        for (idx, c) in &self.terms {
            for k in 0..self.chart.dim() {
                if idx.contains(&k) {
                    continue;
                }
                let dc = c.partial(&self.chart.vars()[k])?;
                let mut full = vec![k];
                full.extend_from_slice(idx);
                let (s, sorted) = sort_with_sign(full).unwrap();
                out.add_term(sorted, if s < 0 { dc.neg() } else { dc });
            }
        }
        Ok(out)
    }

    /// `φ^* ω` along a rational map given by target-coordinate images.
    pub fn pullback(&self, source: &ChartSpace, images: &HashMap<String, RationalFunction>) -> Result<RationalForm, ExteriorError> {
        let mut diffs = Vec::with_capacity(self.chart.dim());
        for v in self.chart.vars.iter() {
            let img = images.get(v).ok_or_else(|| ExteriorError::MissingImage(v.clone()))?;
            let mut f = RationalForm::zero(source, 0);
            f.add_term(Vec::new(), img.clone());
            diffs.push(f.d()?);
        }
        let mut out = RationalForm::zero(source, self.degree);
        for (idx, c) in &self.terms {
            let mut term = RationalForm::zero(source, 0);
            term.add_term(Vec::new(), c.substitute(images)?);
            for &i in idx {
                term = term.wedge(&diffs[i]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `self = f · other` for a single function `f`, if such exists.
    pub fn ratio_to(&self, other: &RationalForm) -> Option<RationalFunction> {
        if self.degree != other.degree {
            return None;
        }
        let (idx, c) = other.terms.iter().next()?;
        let f = self.coefficient(idx).div(c)?;
        (other.mul_fn(&f) == *self).then_some(f)
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.chart.vars();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    return c.to_string();
                }
                let w: Vec<String> = idx.iter().map(|&i| format!("d{}", vars[i])).collect();
                format!("({c})*{}", w.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Standard Hopf form `θ̃ = Σ_k (ζ_k dζ_{k+n+1} − ζ_{k+n+1} dζ_k)` on
/// `ℂ^{2n+2}` with coordinates `ζ0..ζ{2n+1}`.
pub fn hopf_theta(n: usize) -> PolyForm {
    let names: Vec<String> = (0..2 * n + 2).map(|k| format!("ζ{k}")).collect();
    let chart = ChartSpace::new(&names, None).unwrap();
    let vars = chart.vars().clone();
    let mut terms = Vec::new();
    for k in 0..=n {
        let j = k + n + 1;
        terms.push((vec![j], MultiPoly::var_at(&vars, k)));
        terms.push((vec![k], MultiPoly::var_at(&vars, j).neg()));
    }
    PolyForm::from_terms(&chart, 1, terms).unwrap()
}

/// Point map from coordinate names.
pub fn point<S: AsRef<str>>(names: &[S], values: &[ExactScalar]) -> HashMap<String, ExactScalar> {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| (n.as_ref().to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn chart(names: &[&str], fiber: Option<&str>) -> ChartSpace {
        ChartSpace::new(names, fiber).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let c = chart(&["ζ0", "ζ1"], None);
        let z0 = c.coordinate("ζ0").unwrap();
        let dz0 = PolyForm::dx(&c, "ζ0").unwrap();
        let dz1 = PolyForm::dx(&c, "ζ1").unwrap();
        assert!(dz0.wedge(&dz0).unwrap().is_zero());
        let a = dz1.mul_fn(&z0).unwrap();
        let w = a.wedge(&dz0).unwrap();
        assert_eq!(w.coefficient(&[0, 1]), z0.neg());
    }

    #[test]
    fn hopf_differential() {
        for n in 0..3 {
            let th = hopf_theta(n);
            let d = th.d();
            // termwise: d(ζ_k dζ_j − ζ_j dζ_k) = 2 dζ_k∧dζ_j
            let vars = th.chart().vars().clone();
            let mut expected = Vec::new();
            for k in 0..=n {
                expected.push((vec![k, k + n + 1], MultiPoly::from_int(&vars, 2)));
            }
            assert_eq!(d, PolyForm::from_terms(th.chart(), 2, expected).unwrap());
            assert!(d.d().is_zero());
        }
    }

    #[test]
    fn fibered_differential() {
        let c = chart(&["z"], Some("λ"));
        let vars = c.vars().clone();
        let delta = 3;
        let th = PolyForm::from_terms(&c, 1, [(vec![0], MultiPoly::monomial(&vars, vec![0, delta], ExactScalar::one()))]).unwrap();
        let d = th.d();
        // δλ^{δ−1} dλ∧dz = −δλ^{δ−1} dz∧dλ
        assert_eq!(d.coefficient(&[0, 1]), MultiPoly::monomial(&vars, vec![0, delta - 1], ExactScalar::from_int(-delta as i64)));
    }

    #[test]
    fn interior_examples() {
        let c = chart(&["z"], Some("λ"));
        let dl = PolyForm::dx(&c, "λ").unwrap();
        let dz = PolyForm::dx(&c, "z").unwrap();
        let dl_dz = dl.wedge(&dz).unwrap();
        let dlam = PolyVectorField::coordinate(&c, "λ").unwrap();
        assert_eq!(dl_dz.interior(&dlam).unwrap(), dz);

        let th = hopf_theta(0);
        let hc = th.chart().clone();
        let e = PolyVectorField::new(&hc, (0..2).map(|i| (i, MultiPoly::var_at(hc.vars(), i)))).unwrap();
        assert_eq!(th.d().interior(&e).unwrap(), th.scale(&ExactScalar::from_int(2)));
        let f = PolyForm::function(&hc, &MultiPoly::var_at(hc.vars(), 0)).unwrap();
        assert!(f.interior(&e).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let c = chart(&["z"], None);
        let z = c.coordinate("z").unwrap();
        let zdz = PolyForm::dx(&c, "z").unwrap().mul_fn(&z).unwrap();
        let dz_field = PolyVectorField::coordinate(&c, "z").unwrap();
        assert_eq!(zdz.lie_derivative(&dz_field).unwrap(), PolyForm::dx(&c, "z").unwrap());

        let c = chart(&["z"], Some("λ"));
        let vars = c.vars().clone();
        let delta = 4;
        let th = PolyForm::from_terms(&c, 1, [(vec![0], MultiPoly::monomial(&vars, vec![0, delta], ExactScalar::one()))]).unwrap();
        let b = PolyVectorField::new(&c, [(1, c.coordinate("λ").unwrap())]).unwrap();
        assert_eq!(th.lie_derivative(&b).unwrap(), th.scale(&ExactScalar::from_int(delta as i64)));
    }

    #[test]
    fn pullback_to_affine_chart() {
        let th = hopf_theta(1);
        let src = chart(&["u1", "u2", "u3"], None);
        let mut images = HashMap::new();
        images.insert("ζ0".to_string(), MultiPoly::one(src.vars()));
        for k in 1..4 {
            images.insert(format!("ζ{k}"), src.coordinate(&format!("u{k}")).unwrap());
        }
        let g = th.pullback(&src, &images).unwrap();
        // substitution oracle: du2 + u1 du3 − u3 du1
        let v = src.vars().clone();
        let expected = PolyForm::from_terms(
            &src,
            1,
            [
                (vec![1], MultiPoly::one(&v)),
                (vec![2], MultiPoly::var_at(&v, 0)),
                (vec![0], MultiPoly::var_at(&v, 2).neg()),
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn scaling_pullback_is_degree_two() {
        let th = hopf_theta(1);
        let names: Vec<String> = th.chart().vars().iter().cloned().collect();
        let src = ChartSpace::new(&[names.clone(), vec!["t".to_string()]].concat(), None).unwrap();
        let t = src.coordinate("t").unwrap();
        let images: HashMap<String, MultiPoly> = names
            .iter()
            .map(|n| (n.clone(), src.coordinate(n).unwrap().mul(&t)))
            .collect();
        let pulled = th.pullback(&src, &images).unwrap();
        // drop the dt part: it cancels because θ̃(E) = 0
        let on_src = PolyForm::from_terms(&src, 1, th.terms().map(|(i, c)| (i.clone(), c.mul(&t.pow(2))))).unwrap();
        assert_eq!(pulled, on_src);
    }

    #[test]
    fn pullback_through_non_unit_fiber_image_rejected() {
        let c = chart(&["z"], Some("λ"));
        let vars = c.vars().clone();
        let th = PolyForm::from_terms(&c, 1, [(vec![0], MultiPoly::monomial(&vars, vec![0, -1], ExactScalar::one()))]).unwrap();
        let src = chart(&["z", "s"], Some("λ"));
        let mut images = HashMap::new();
        images.insert("z".to_string(), src.coordinate("z").unwrap());
        images.insert("λ".to_string(), src.coordinate("λ").unwrap().add(&src.coordinate("s").unwrap()));
        assert!(th.pullback(&src, &images).is_err());
    }

    #[test]
    fn evaluate_hopf() {
        let th = hopf_theta(0);
        let names: Vec<String> = th.chart().vars().iter().cloned().collect();
        let p = point(&names, &[ExactScalar::one(), ExactScalar::zero()]);
        let v = th.evaluate(&p).unwrap();
        assert_eq!(v.get(&vec![1]), Some(&ExactScalar::one()));
        assert_eq!(v.get(&vec![0]), None);
    }

    #[test]
    fn top_power_of_hopf_symplectic_form() {
        for n in 0..3usize {
            let dth = hopf_theta(n).d();
            let top = dth.wedge_power(n + 1).unwrap();
            let dim = 2 * n + 2;
            assert_eq!(top.terms().count(), 1);
            let c = top.coefficient(&(0..dim).collect::<Vec<_>>());
            let fact: i64 = (1..=(n as i64 + 1)).product();
            let expected = fact * 2i64.pow(n as u32 + 1);
            assert_eq!(c.constant_term().to_i64().map(i64::abs), Some(expected));
        }
    }

    #[test]
    fn inverse_of_laurent_matrix() {
        let c = chart(&["z"], Some("λ"));
        let v = c.vars().clone();
        let delta = 2;
        let th = PolyForm::from_terms(&c, 1, [(vec![0], MultiPoly::monomial(&v, vec![0, delta], ExactScalar::one()))]).unwrap();
        let m = th.d().two_form_matrix();
        let inv = poly_inverse(&m, &v).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = MultiPoly::zero(&v);
                for k in 0..2 {
                    acc = acc.add(&m[i][k].mul(&inv[k][j]));
                }
                let e = if i == j { MultiPoly::one(&v) } else { MultiPoly::zero(&v) };
                assert_eq!(acc, e);
            }
        }
    }

    #[test]
    fn rational_pullback_p1() {
        // dz₁ with z₁ = 1/z₀ pulls back to −dz₀/z₀²
        let c1 = chart(&["y"], None);
        let c0 = chart(&["x"], None);
        let dy = RationalForm::from_poly_form(&PolyForm::dx(&c1, "y").unwrap());
        let x = c0.coordinate("x").unwrap();
        let mut images = HashMap::new();
        images.insert("y".to_string(), RationalFunction::new(MultiPoly::one(c0.vars()), x.clone()).unwrap());
        let pulled = dy.pullback(&c0, &images).unwrap();
        let dx = RationalForm::from_poly_form(&PolyForm::dx(&c0, "x").unwrap());
        let f = pulled.ratio_to(&dx).unwrap();
        assert_eq!(f, RationalFunction::new(MultiPoly::from_int(c0.vars(), -1), x.pow(2)).unwrap());
    }
}
