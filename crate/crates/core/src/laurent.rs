//! Polynomials that may be inverted in one distinguished fiber variable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::AlgebraError;
use crate::poly::{MultiPoly, Vars};
use crate::scalar::ExactScalar;

/// A polynomial in the base variables with Laurent support in `fiber` only.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    poly: MultiPoly,
    fiber: Option<String>,
}

impl LaurentPoly {
    /// Validates that only `fiber` carries negative exponents.
    pub fn new(poly: MultiPoly, fiber: Option<&str>) -> Result<Self, AlgebraError> {
        let vars = poly.vars().clone();
        for (m, _) in poly.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && fiber != Some(vars[i].as_str()) {
                    return Err(AlgebraError::NegativeExponentOffFiber(vars[i].clone()));
                }
            }
        }
        Ok(LaurentPoly {
            poly,
            fiber: fiber.map(str::to_string),
        })
    }

    pub fn polynomial(poly: MultiPoly) -> Result<Self, AlgebraError> {
        LaurentPoly::new(poly, None)
    }

    /// `c · λ^k` over `vars`.
    pub fn fiber_power(vars: &Vars, fiber: &str, k: i32, c: ExactScalar) -> Result<Self, AlgebraError> {
        let idx = vars
            .iter()
            .position(|v| v == fiber)
            .ok_or_else(|| AlgebraError::UnknownVariable(fiber.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = k;
        LaurentPoly::new(MultiPoly::monomial(vars, e, c), Some(fiber))
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn fiber(&self) -> Option<&str> {
        self.fiber.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn fiber_index(&self) -> Option<usize> {
        let f = self.fiber.as_ref()?;
        self.poly.vars().iter().position(|v| v == f)
    }

    /// Coefficients indexed by the exponent of the fiber variable. Without a
    /// fiber variable everything sits at exponent 0.
    pub fn by_fiber_degree(&self) -> BTreeMap<i32, MultiPoly> {
        match self.fiber_index() {
            Some(idx) => self.poly.coefficients_in(idx),
            None => {
                let mut m = BTreeMap::new();
                if !self.poly.is_zero() {
                    m.insert(0, self.poly.clone());
                }
                m
            }
        }
    }

    /// Lowest and highest fiber exponent.
    pub fn fiber_degree_bounds(&self) -> Option<(i32, i32)> {
        let d = self.by_fiber_degree();
        Some((*d.keys().next()?, *d.keys().next_back()?))
    }

    fn join_fiber(&self, other: &LaurentPoly) -> Result<Option<String>, AlgebraError> {
        match (&self.fiber, &other.fiber) {
            (Some(a), Some(b)) if a != b => Err(AlgebraError::FiberMismatch(a.clone(), b.clone())),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        Ok(LaurentPoly {
            fiber: self.join_fiber(other)?,
            poly: self.poly.add(&other.poly),
        })
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        Ok(LaurentPoly {
            fiber: self.join_fiber(other)?,
            poly: self.poly.sub(&other.poly),
        })
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        Ok(LaurentPoly {
            fiber: self.join_fiber(other)?,
            poly: self.poly.mul(&other.poly),
        })
    }

    pub fn scale(&self, c: &ExactScalar) -> LaurentPoly {
        LaurentPoly {
            fiber: self.fiber.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn partial(&self, var: &str) -> Result<LaurentPoly, AlgebraError> {
        Ok(LaurentPoly {
            fiber: self.fiber.clone(),
            poly: self.poly.partial(var)?,
        })
    }

    /// Substitution; the result must again be Laurent in the same fiber only.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Result<LaurentPoly, AlgebraError> {
        let p = self.poly.substitute(bindings)?;
        LaurentPoly::new(p, self.fiber.as_deref())
    }

    /// Evaluation; the fiber value must be nonzero when negative powers occur.
    pub fn eval(&self, point: &HashMap<String, ExactScalar>) -> Result<ExactScalar, AlgebraError> {
        self.poly.eval(point)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::var_table;
    use num_traits::{One, Zero};

    #[test]
    fn laurent_lift_of_inverse() {
        let v = var_table(["y", "λ"]);
        let y = MultiPoly::var(&v, "y").unwrap();
        let inv = LaurentPoly::fiber_power(&v, "λ", -1, ExactScalar::one()).unwrap();
        let p = inv.mul(&LaurentPoly::polynomial(y).unwrap()).unwrap();
        assert_eq!(p.to_string(), "y*λ^-1");
        assert_eq!(p.fiber_degree_bounds(), Some((-1, -1)));
    }

    #[test]
    fn negative_off_fiber_rejected() {
        let v = var_table(["y", "λ"]);
        let p = MultiPoly::monomial(&v, vec![-1, 0], ExactScalar::one());
        assert!(LaurentPoly::new(p, Some("λ")).is_err());
    }

    #[test]
    fn derivative_of_lambda_power() {
        let v = var_table(["z", "λ"]);
        let p = LaurentPoly::fiber_power(&v, "λ", -2, ExactScalar::one()).unwrap();
        let d = p.partial("λ").unwrap();
        assert_eq!(d, LaurentPoly::fiber_power(&v, "λ", -3, ExactScalar::from_int(-2)).unwrap());
    }

    #[test]
    fn eval_pole() {
        let v = var_table(["λ"]);
        let p = LaurentPoly::fiber_power(&v, "λ", -1, ExactScalar::one()).unwrap();
        let mut pt = HashMap::new();
        pt.insert("λ".to_string(), ExactScalar::zero());
        assert!(p.eval(&pt).is_err());
        pt.insert("λ".to_string(), ExactScalar::from_int(4));
        assert_eq!(p.eval(&pt).unwrap(), ExactScalar::from_frac(1, 4));
    }

    #[test]
    fn by_degree_split() {
        let v = var_table(["z", "λ"]);
        let z = MultiPoly::var(&v, "z").unwrap();
        let p = z.shift(&[0, 2]).add(&z.pow(2).shift(&[0, -1]));
        let lp = LaurentPoly::new(p, Some("λ")).unwrap();
        let split = lp.by_fiber_degree();
        assert_eq!(split.keys().copied().collect::<Vec<_>>(), vec![-1, 2]);
        assert_eq!(split[&2], z);
    }
}
