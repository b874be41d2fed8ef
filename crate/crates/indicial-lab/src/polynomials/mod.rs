//! Exact polynomial arithmetic and certified complex root extraction.
//!
//! Coefficients are kept exact throughout: univariate polynomials over the
//! Gaussian rationals (needed for the ±i coefficients produced by the ∗₆
//! eigenvalue substitution in the harmonic 4-form sector), bivariate
//! polynomials in (s, λ) over the rationals for the 4×4 scalar-system
//! determinant. Floating point enters only at the root-finding boundary;
//! polished roots are re-certified by evaluating the exact polynomial at the
//! exact binary-rational value of the floating-point root.

mod bivariate;
mod solver;
mod unipoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bivariate::{determinant4, BivariatePoly};
pub use solver::{solve_roots, solve_roots_with, ComplexRoot, SolveError};
pub use unipoly::UniPoly;

/// Exact rational scalar. `BigRational` keeps the required invariants
/// (reduced form, positive denominator) by construction.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational n/d. Panics on d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Exact rational value of a finite `f64` (every finite double is a binary
/// rational). Panics on NaN/infinity.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(rat(n), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    /// Exact value of a complex double; both parts are binary rationals.
    pub fn from_complex_f64(z: Complex64) -> Self {
        Self::new(rational_from_f64(z.re), rational_from_f64(z.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Nearest-double approximation of each part.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Magnitude as a double, via the exact |z|².
    pub fn magnitude(&self) -> f64 {
        rational_sqrt_f64(&self.norm_sqr())
    }
}

/// √r as a double for a nonnegative rational, accurate to ~1 ulp even when
/// the rational over/underflows f64 (numerator and denominator rooted
/// separately after scaling by powers of four).
pub fn rational_sqrt_f64(r: &Rational) -> f64 {
    debug_assert!(!r.is_negative());
    if r.is_zero() {
        return 0.0;
    }
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    // keep the shifted value within f64 range
    let shift2 = ((num_bits - den_bits) / 2 - 500).max(-(1 << 20));
    let scaled = if shift2 > 0 {
        r / Rational::from_integer(num_bigint::BigInt::one() << (2 * shift2 as usize))
    } else {
        r * Rational::from_integer(num_bigint::BigInt::one() << (2 * (-shift2) as usize))
    };
    let x = scaled.to_f64().unwrap_or(f64::MAX);
    x.sqrt() * 2f64.powi(shift2 as i32)
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
