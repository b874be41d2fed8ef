//! Bivariate polynomials in (s, λ) over the rationals, and the exact 4×4
//! determinant used by the scalar-system sector.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{GaussianRational, Rational, UniPoly};

/// Sparse bivariate polynomial; the key `(i, j)` is the power of `s` and `λ`.
/// Zero coefficients are never stored, so iteration order (sorted by key)
/// and equality are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::rat(n))
    }

    /// Build from (s-power, λ-power, integer coefficient) triples.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, super::rat(c));
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, s: &Rational, lambda: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow(s, i) * pow(lambda, j);
        }
        acc
    }

    /// Specialize λ to an exact rational, producing a univariate polynomial
    /// in `s` (real coefficients).
    pub fn specialize_lambda(&self, lambda: &Rational) -> UniPoly {
        let deg_s = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg_s + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[i as usize] += c * pow(lambda, j);
        }
        UniPoly::new(
            coeffs
                .into_iter()
                .map(GaussianRational::from_rational)
                .collect(),
        )
    }

    /// Substitute s ↦ 6 − s; used to check the root symmetry at the exact level.
    pub fn reflect_s(&self) -> Self {
        // precompute (6 - s)^i by repeated multiplication
        let six_minus_s = Self::from_int_terms(&[(0, 0, 6), (1, 0, -1)]);
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_i as usize + 1);
        powers.push(Self::from_int(1));
        for i in 1..=max_i {
            let next = powers[(i - 1) as usize].mul(&six_minus_s);
            powers.push(next);
        }
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            for (&(pi, pj), pc) in &powers[i as usize].terms {
                out.add_term(pi, pj + j, c * pc);
            }
        }
        out
    }
}

fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest s-power first reads like the printed polynomials
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let (sign, mag) = if c < &Rational::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let unit = mag == Rational::from_integer(1.into());
            if !unit || (i == 0 && j == 0) {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{}", i)?,
            }
            match j {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{}", j)?,
            }
        }
        Ok(())
    }
}

/// Exact cofactor-expansion determinant of a 4×4 matrix of bivariate
/// polynomials.
pub fn determinant4(m: &[[BivariatePoly; 4]; 4]) -> BivariatePoly {
    let idx: Vec<usize> = (0..4).collect();
    det_rec(m, &idx, &idx)
}

fn det_rec(m: &[[BivariatePoly; 4]; 4], rows: &[usize], cols: &[usize]) -> BivariatePoly {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = BivariatePoly::zero();
    let sub_rows: Vec<usize> = rows[1..].to_vec();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let minor = det_rec(m, &sub_rows, &sub_cols);
        let term = entry.mul(&minor);
        acc = if k % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::rat;

    fn diag(a: i64, b: i64, c: i64, d: i64) -> [[BivariatePoly; 4]; 4] {
        let mut m: [[BivariatePoly; 4]; 4] = Default::default();
        for (k, v) in [a, b, c, d].into_iter().enumerate() {
            m[k][k] = BivariatePoly::from_int(v);
        }
        m
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(determinant4(&diag(1, 1, 1, 1)), BivariatePoly::from_int(1));
    }

    #[test]
    fn diagonal_determinant() {
        assert_eq!(
            determinant4(&diag(2, 3, 5, 7)),
            BivariatePoly::from_int(210)
        );
    }

    #[test]
    fn swap_changes_sign() {
        let mut m = diag(2, 3, 5, 7);
        m.swap(0, 1);
        assert_eq!(determinant4(&m), BivariatePoly::from_int(-210));
    }

    #[test]
    fn specialize_and_eval_agree() {
        // p = s²λ − 3s + λ² at λ = 2: 2s² − 3s + 4
        let p = BivariatePoly::from_int_terms(&[(2, 1, 1), (1, 0, -3), (0, 2, 1)]);
        let u = p.specialize_lambda(&rat(2));
        assert_eq!(u, UniPoly::from_int_coeffs(&[4, -3, 2]));
        assert_eq!(p.eval_rational(&rat(5), &rat(2)), rat(2 * 25 - 15 + 4));
    }

    #[test]
    fn reflect_is_involutive() {
        let p = BivariatePoly::from_int_terms(&[(3, 1, 2), (1, 0, -3), (0, 2, 7)]);
        assert_eq!(p.reflect_s().reflect_s(), p);
    }

    #[test]
    fn display_reads_highest_power_first() {
        let p = BivariatePoly::from_int_terms(&[(2, 0, 1), (1, 1, -24), (0, 0, 5)]);
        assert_eq!(p.to_string(), "s^2 - 24sλ + 5");
    }
}
