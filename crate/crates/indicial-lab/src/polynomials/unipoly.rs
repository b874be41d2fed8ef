//! Univariate polynomials over the Gaussian rationals.

use num_complex::Complex64;

use super::{GaussianRational, Rational};

/// Dense univariate polynomial in `s`; `coeffs[k]` multiplies `s^k`,
/// trailing zeros trimmed. The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Polynomial with integer coefficients, constant term first.
    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    /// Polynomial with real rational coefficients, constant term first.
    pub fn from_rational_coeffs(cs: Vec<Rational>) -> Self {
        Self::new(
            cs.into_iter()
                .map(GaussianRational::from_rational)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// All coefficients have zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_real)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussianRational::zero();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).unwrap_or(&zero);
            let b = rhs.coeffs.get(k).unwrap_or(&zero);
            out.push(a + b);
        }
        UniPoly::new(out)
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact Horner evaluation at an exact point.
    pub fn eval_exact(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Double-precision Horner evaluation.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    /// Coefficients rounded to complex doubles, constant term first.
    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(GaussianRational::to_complex)
            .collect()
    }

    /// Max coefficient magnitude; the scale ‖p‖ used for relative residuals.
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs
            .iter()
            .map(GaussianRational::magnitude)
            .fold(0.0, f64::max)
    }

    /// The polynomial with conjugated coefficients.
    pub fn conj(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(GaussianRational::conj).collect())
    }
}
