//! Gaussian rationals: exact elements of ℚ(i).
//!
//! Every numeric quantity in the crate lives here. `BigRational` keeps the
//! real and imaginary parts in lowest terms with positive denominators, so
//! structural equality is mathematical equality.
//!
//! Textual form (stable): a purely real value prints as `p` or `p/q`, a purely
//! imaginary one as `i`, `-i` or `p/q*i`, and a mixed one as `(a+b*i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactScalar::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        ExactScalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|² = re² + im².
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ExactScalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Integer power; negative exponents invert. `None` for 0^k with k < 0.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ExactScalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// The value as an `i64` when it is a real integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if !self.im.is_zero() || !self.re.is_integer() {
            return None;
        }
        self.re.to_integer().to_i64()
    }

}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn fmt_imag(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_one() {
        write!(f, "i")
    } else if (-q).is_one() {
        write!(f, "-i")
    } else {
        fmt_rational(q, f)?;
        write!(f, "*i")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => fmt_imag(&self.im, f),
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(&self.re, f)?;
                if self.im.is_positive() {
                    write!(f, "+")?;
                }
                fmt_imag(&self.im, f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        ExactScalar::real(q)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::real(BigRational::one())
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactScalar::real(&self.re * &rhs.re);
        }
        ExactScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_lowest_terms() {
        let a = ExactScalar::from_frac(2, -4);
        let b = ExactScalar::from_frac(-1, 2);
        assert_eq!(a, b);
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = ExactScalar::i();
        assert_eq!(&i * &i, ExactScalar::from_int(-1));
        assert_eq!(i.inv().unwrap(), -ExactScalar::i());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactScalar::from_frac(3, 2).to_string(), "3/2");
        assert_eq!(ExactScalar::i().to_string(), "i");
        assert_eq!((-ExactScalar::i()).to_string(), "-i");
        let z = ExactScalar::from_int(1) + ExactScalar::from_frac(-1, 3) * ExactScalar::i();
        assert_eq!(z.to_string(), "(1-1/3*i)");
    }

    #[test]
    fn powi_negative() {
        let two = ExactScalar::from_int(2);
        assert_eq!(two.powi(-3).unwrap(), ExactScalar::from_frac(1, 8));
        assert!(ExactScalar::zero().powi(-1).is_none());
        assert_eq!(ExactScalar::zero().powi(0).unwrap(), ExactScalar::one());
    }
}
