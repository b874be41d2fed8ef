//! Laplacian eigenvalues and multiplicities on the scaled 4-sphere
//! (metric ¼·g, eigenvalues four times the unit-sphere ones) and on the
//! unit 6-sphere, by form type. Everything is exact integer arithmetic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which eigenform family an eigenvalue belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// Functions on (𝕊⁴, ¼g): λ = 4k(k+3), k ≥ 0.
    Function4,
    /// Closed 1-forms on (𝕊⁴, ¼g): λ = 4k(k+3), k ≥ 1.
    Closed1Form4,
    /// Co-closed 1-forms on (𝕊⁴, ¼g): λ = 4(k+1)(k+2), k ≥ 1, so the
    /// smallest eigenvalue is 24 (the value the coclosed sector consumes).
    Coclosed1Form4,
    /// Functions on the unit 𝕊⁶: λ = k(k+5), k ≥ 0.
    Function6,
}

impl FormKind {
    pub const ALL: [FormKind; 4] = [
        FormKind::Function4,
        FormKind::Closed1Form4,
        FormKind::Coclosed1Form4,
        FormKind::Function6,
    ];

    /// Smallest admissible mode index.
    pub fn k_min(self) -> u32 {
        match self {
            FormKind::Function4 | FormKind::Function6 => 0,
            FormKind::Closed1Form4 | FormKind::Coclosed1Form4 => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormKind::Function4 => "function4",
            FormKind::Closed1Form4 => "closed1",
            FormKind::Coclosed1Form4 => "coclosed1",
            FormKind::Function6 => "function6",
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("mode index {k} below minimum {k_min} for {kind:?}")]
    IndexBelowMinimum { kind: FormKind, k: u32, k_min: u32 },
}

/// One spectral line: eigenvalue and eigenspace dimension for (kind, k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub kind: FormKind,
    pub k: u32,
    pub lambda: u64,
    pub multiplicity: u64,
}

fn check_k(kind: FormKind, k: u32) -> Result<(), SpectrumError> {
    let k_min = kind.k_min();
    if k < k_min {
        Err(SpectrumError::IndexBelowMinimum { kind, k, k_min })
    } else {
        Ok(())
    }
}

/// Exact eigenvalue for (kind, k).
pub fn eigenvalue(kind: FormKind, k: u32) -> Result<u64, SpectrumError> {
    check_k(kind, k)?;
    let k = k as u64;
    Ok(match kind {
        FormKind::Function4 | FormKind::Closed1Form4 => 4 * k * (k + 3),
        FormKind::Coclosed1Form4 => 4 * (k + 1) * (k + 2),
        FormKind::Function6 => k * (k + 5),
    })
}

/// Exact eigenspace dimension for (kind, k).
///
/// Functions on 𝕊⁴ are degree-k harmonics in five variables,
/// (2k+3)(k+1)(k+2)/6; closed 1-forms are their differentials (same
/// dimension, k ≥ 1). Functions on 𝕊⁶ are the two-binomial difference
/// C(k+6,6) − C(k+4,6). Co-closed 1-form dimensions k(k+3)(2k+3)/2 are
/// informational only (no root computation consumes them) and are
/// brute-force checked in the tests against the unsimplified Weyl product.
pub fn multiplicity(kind: FormKind, k: u32) -> Result<u64, SpectrumError> {
    check_k(kind, k)?;
    let k = k as u64;
    Ok(match kind {
        FormKind::Function4 | FormKind::Closed1Form4 => (2 * k + 3) * (k + 1) * (k + 2) / 6,
        FormKind::Coclosed1Form4 => k * (k + 3) * (2 * k + 3) / 2,
        FormKind::Function6 => binomial(k + 6, 6) - binomial(k + 4, 6),
    })
}

fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All entries with λ ≤ lambda_max, ascending in λ.
pub fn spectrum_table(kind: FormKind, lambda_max: u64) -> Vec<EigenEntry> {
    let mut out = Vec::new();
    let mut k = kind.k_min();
    loop {
        let lambda = eigenvalue(kind, k).expect("k >= k_min");
        if lambda > lambda_max {
            break;
        }
        out.push(EigenEntry {
            kind,
            k,
            lambda,
            multiplicity: multiplicity(kind, k).expect("k >= k_min"),
        });
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(FormKind::Function4, 1), Ok(16));
        assert_eq!(eigenvalue(FormKind::Function4, 0), Ok(0));
        assert_eq!(eigenvalue(FormKind::Coclosed1Form4, 1), Ok(24));
        assert_eq!(eigenvalue(FormKind::Function6, 1), Ok(6));
    }

    #[test]
    fn below_minimum_is_rejected() {
        assert_eq!(
            eigenvalue(FormKind::Closed1Form4, 0),
            Err(SpectrumError::IndexBelowMinimum {
                kind: FormKind::Closed1Form4,
                k: 0,
                k_min: 1
            })
        );
        assert!(multiplicity(FormKind::Coclosed1Form4, 0).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(FormKind::Closed1Form4, 1), Ok(5));
        assert_eq!(multiplicity(FormKind::Closed1Form4, 2), Ok(14));
        assert_eq!(multiplicity(FormKind::Function4, 0), Ok(1));
        assert_eq!(multiplicity(FormKind::Function4, 3), Ok(30));
        // degree-k harmonics in 7 variables
        assert_eq!(multiplicity(FormKind::Function6, 0), Ok(1));
        assert_eq!(multiplicity(FormKind::Function6, 1), Ok(7));
        assert_eq!(multiplicity(FormKind::Function6, 2), Ok(27));
    }

    #[test]
    fn coclosed_multiplicity_weyl_product_check() {
        // Unsimplified Weyl dimension product for the so(5) representation of
        // co-exact 1-eigenforms with highest weight (k, 1):
        //   dim = (k) · ((1 + 1/2)/(1/2)) · ((k + 3/2)/(3/2)) · ((k + 3)/2)
        // evaluated in exact rationals, against the collapsed closed form.
        use crate::polynomials::{rat, ratio, Rational};
        for k in 1..=12u32 {
            let kq = rat(k as i64);
            let dim: Rational = (&kq - rat(1) + rat(1))
                * (ratio(3, 2) / ratio(1, 2))
                * ((&kq + ratio(3, 2)) / ratio(3, 2))
                * ((&kq + rat(3)) / rat(2));
            assert_eq!(
                dim,
                rat(multiplicity(FormKind::Coclosed1Form4, k).unwrap() as i64),
                "k = {k}"
            );
        }
        // anchor: the k = 1 eigenspace is spanned by the Killing 1-forms,
        // dim so(5) = 10
        assert_eq!(multiplicity(FormKind::Coclosed1Form4, 1), Ok(10));
    }

    #[test]
    fn table_examples() {
        let t = spectrum_table(FormKind::Function4, 40);
        assert_eq!(
            t.iter().map(|e| (e.k, e.lambda)).collect::<Vec<_>>(),
            vec![(0, 0), (1, 16), (2, 40)]
        );
        assert!(spectrum_table(FormKind::Closed1Form4, 15).is_empty());
        let cc = spectrum_table(FormKind::Coclosed1Form4, 50);
        assert_eq!(
            cc.iter().map(|e| (e.k, e.lambda)).collect::<Vec<_>>(),
            vec![(1, 24), (2, 48)]
        );
    }

    #[test]
    fn eigenvalues_strictly_increasing() {
        for kind in FormKind::ALL {
            let mut prev = None;
            for k in kind.k_min()..kind.k_min() + 30 {
                let lam = eigenvalue(kind, k).unwrap();
                if let Some(p) = prev {
                    assert!(lam > p, "{kind:?} not increasing at k={k}");
                }
                prev = Some(lam);
            }
        }
    }

    #[test]
    fn sphere4_scaling_is_four_times_unit_sphere() {
        // unit 𝕊⁴ eigenvalues: functions k(k+3), coclosed 1-forms (k+1)(k+2)
        for k in 1..20u64 {
            assert_eq!(
                eigenvalue(FormKind::Function4, k as u32).unwrap(),
                4 * (k * (k + 3))
            );
            assert_eq!(
                eigenvalue(FormKind::Coclosed1Form4, k as u32).unwrap(),
                4 * ((k + 1) * (k + 2))
            );
        }
    }
}
