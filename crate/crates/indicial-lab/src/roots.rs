//! Root table over the full sector sweep: classification against the
//! L² line Re s = 3, the spectral-gap scan, the reflection-symmetry check,
//! and near-null-vector extraction for the scalar 4×4 system.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polynomials::{solve_roots_with, SolveError};
use crate::sectors::{self, SectorId, SectorPolynomial};

/// Distance-to-line threshold below which a root is classified as special.
pub const LINE_TOL: f64 = 1e-6;
/// Scaled residual target for polished roots.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance for root pairing (dedup, conjugation, reflection matching).
pub const PAIRING_TOL: f64 = 1e-9;
/// Smallest-singular-value threshold for accepting a null direction.
pub const SINGULAR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub line_tol: f64,
    pub root_residual_tol: f64,
    pub pairing_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            line_tol: LINE_TOL,
            root_residual_tol: ROOT_RESIDUAL_TOL,
            pairing_tol: PAIRING_TOL,
        }
    }
}

#[derive(Debug, Error)]
pub enum RootsError {
    #[error("lambda_max {0} is below 40; both special eigenvalues (16 and 40) must be included")]
    LambdaMaxTooSmall(u64),
    #[error("root extraction failed in sector {sector} at lambda {lambda}: {source}")]
    Solve {
        sector: SectorId,
        lambda: u64,
        source: SolveError,
    },
    #[error(
        "matrix is not singular at the given (lambda, s): smallest singular value {sigma_min:e}"
    )]
    NotSingular { sigma_min: f64 },
}

/// One indicial root with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub sector: SectorId,
    pub lambda: u64,
    pub re: f64,
    pub im: f64,
    pub dist_to_line: f64,
    pub special: bool,
    pub residual: f64,
}

impl RootRecord {
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// The full root table of a sweep, sorted by (sector, λ, Re s, Im s).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootTable {
    pub lambda_max: u64,
    pub tolerances: Tolerances,
    pub records: Vec<RootRecord>,
}

/// Solve every sector polynomial up to `lambda_max` and classify the roots.
/// Requires `lambda_max ≥ 40` so that both special eigenvalues are present.
pub fn build_table(lambda_max: u64, tolerances: Tolerances) -> Result<RootTable, RootsError> {
    if lambda_max < 40 {
        return Err(RootsError::LambdaMaxTooSmall(lambda_max));
    }
    let sweep = sectors::sector_sweep(lambda_max);
    let per_poly: Result<Vec<Vec<RootRecord>>, RootsError> = sweep
        .par_iter()
        .map(|sp| records_for(sp, &tolerances))
        .collect();
    let mut records: Vec<RootRecord> = per_poly?.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        (a.sector, a.lambda, a.re, a.im)
            .partial_cmp(&(b.sector, b.lambda, b.re, b.im))
            .expect("finite roots")
    });
    // dedup within a (sector, λ) group only
    records.dedup_by(|a, b| {
        a.sector == b.sector
            && a.lambda == b.lambda
            && (a.s() - b.s()).norm() <= tolerances.pairing_tol
    });
    Ok(RootTable {
        lambda_max,
        tolerances,
        records,
    })
}

fn records_for(sp: &SectorPolynomial, tol: &Tolerances) -> Result<Vec<RootRecord>, RootsError> {
    let roots = solve_roots_with(&sp.poly, tol.root_residual_tol, 100).map_err(|source| {
        RootsError::Solve {
            sector: sp.sector,
            lambda: sp.lambda,
            source,
        }
    })?;
    Ok(roots
        .into_iter()
        .map(|r| {
            let dist = (r.value.re - 3.0).abs();
            RootRecord {
                sector: sp.sector,
                lambda: sp.lambda,
                re: r.value.re,
                im: r.value.im,
                dist_to_line: dist,
                special: dist < tol.line_tol,
                residual: r.residual,
            }
        })
        .collect())
}

impl RootTable {
    pub fn special_records(&self) -> Vec<&RootRecord> {
        self.records.iter().filter(|r| r.special).collect()
    }

    /// A table containing only the records accepted by the predicate.
    pub fn filtered(&self, keep: impl Fn(&RootRecord) -> bool) -> RootTable {
        RootTable {
            lambda_max: self.lambda_max,
            tolerances: self.tolerances,
            records: self.records.iter().copied().filter(|r| keep(r)).collect(),
        }
    }
}

/// Result of the gap scan: the non-special record closest to the L² line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapScan {
    pub min_distance: f64,
    pub attained_by: RootRecord,
}

/// Minimum distance to Re s = 3 over non-special records.
pub fn gap_scan(table: &RootTable) -> Option<GapScan> {
    table
        .records
        .iter()
        .filter(|r| !r.special)
        .min_by(|a, b| a.dist_to_line.partial_cmp(&b.dist_to_line).expect("finite"))
        .map(|r| GapScan {
            min_distance: r.dist_to_line,
            attained_by: *r,
        })
}

/// A root whose reflection partner under s ↦ 6 − s is missing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryViolation {
    pub sector: SectorId,
    pub lambda: u64,
    pub re: f64,
    pub im: f64,
    /// Distance from 6 − s to the nearest available root.
    pub nearest: f64,
}

/// Verify that every conjugate-closed root multiset (sector branches with
/// ∗₆ signs are merged with their conjugate partner) maps to itself under
/// s ↦ 6 − s within the pairing tolerance. Empty result means symmetric.
pub fn symmetry_check(table: &RootTable) -> Vec<SymmetryViolation> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(SectorId, u64), Vec<RootRecord>> = BTreeMap::new();
    for r in &table.records {
        let canonical = r.sector.min(r.sector.conjugate_partner());
        groups.entry((canonical, r.lambda)).or_default().push(*r);
    }
    let tol = table.tolerances.pairing_tol;
    let mut violations = Vec::new();
    for ((_, _), members) in groups {
        let points: Vec<Complex64> = members.iter().map(|r| r.s()).collect();
        let mut taken = vec![false; points.len()];
        for rec in &members {
            let target = Complex64::new(6.0 - rec.re, rec.im); // 6 − s keeps Im
            let mut best: Option<(usize, f64)> = None;
            for (j, p) in points.iter().enumerate() {
                if taken[j] {
                    continue;
                }
                let d = (p - target).norm();
                if best.map_or(true, |(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
            match best {
                Some((j, d)) if d <= tol => taken[j] = true,
                other => violations.push(SymmetryViolation {
                    sector: rec.sector,
                    lambda: rec.lambda,
                    re: rec.re,
                    im: rec.im,
                    nearest: other.map_or(f64::INFINITY, |(_, d)| d),
                }),
            }
        }
    }
    violations
}

/// The three special exponents with positive imaginary part:
/// 3 + 6i (harmonic 4-form sector) and the on-line roots of the scalar
/// system at λ = 16 and λ = 40.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialRoots {
    pub theta1: Complex64,
    pub theta2: Complex64,
    pub theta3: Complex64,
}

impl SpecialRoots {
    pub fn compute() -> SpecialRoots {
        SpecialRoots {
            theta1: Complex64::new(3.0, 6.0),
            theta2: on_line_root(16),
            theta3: on_line_root(40),
        }
    }

    pub fn alphas(&self) -> [f64; 3] {
        [self.theta1.im, self.theta2.im, self.theta3.im]
    }
}

fn on_line_root(lambda: u64) -> Complex64 {
    let sp = sectors::indicial_poly(SectorId::ScalarSystem4x4, lambda)
        .expect("16 and 40 are closed 1-form eigenvalues");
    let roots = solve_roots_with(&sp.poly, ROOT_RESIDUAL_TOL, 100).expect("well-conditioned octic");
    roots
        .iter()
        .map(|r| r.value)
        .filter(|z| (z.re - 3.0).abs() < LINE_TOL && z.im > 0.0)
        .min_by(|a, b| a.im.partial_cmp(&b.im).expect("finite"))
        .expect("scalar system has an on-line pair at 16 and 40")
}

/// Near-null direction of the scalar 4×4 system at a numeric (λ, s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelVector {
    /// Unit-norm vector (σ, τ, ξ, δ_H w); phase fixed so the largest
    /// component is real positive.
    pub components: [Complex64; 4],
    pub sigma_min: f64,
}

impl KernelVector {
    /// Diagnostic ratios for the published null-vector relation 4σ = 7τ = ξ:
    /// returns (4σ/7τ, 4σ/ξ) where defined.
    pub fn relation_ratios(&self) -> (Option<Complex64>, Option<Complex64>) {
        let [sigma, tau, xi, _] = self.components;
        let r1 = (tau.norm() > 1e-12).then(|| 4.0 * sigma / (7.0 * tau));
        let r2 = (xi.norm() > 1e-12).then(|| 4.0 * sigma / xi);
        (r1, r2)
    }
}

/// Extract the smallest singular direction of the scalar system matrix at
/// (λ, s). Errors with [`RootsError::NotSingular`] when the smallest
/// singular value exceeds the acceptance threshold, i.e. (λ, s) is not a
/// root of the matrix determinant.
pub fn kernel_vector(lambda: u64, s: Complex64) -> Result<KernelVector, RootsError> {
    let m = sectors::scalar_system_matrix_at(lambda as f64, s);
    // Hermitian Gram matrix MᴴM; its smallest eigenpair gives σ_min².
    let mut a = [[Complex64::ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex64::ZERO;
            for k in 0..4 {
                acc += m[k][i].conj() * m[k][j];
            }
            a[i][j] = acc;
        }
    }
    let (eigvals, eigvecs) = hermitian_jacobi(a);
    let (idx, min_ev) = eigvals
        .iter()
        .copied()
        .enumerate()
        .min_by(|(_, x), (_, y)| x.partial_cmp(y).expect("finite"))
        .expect("4 eigenvalues");
    let sigma_min = min_ev.max(0.0).sqrt();
    if sigma_min > SINGULAR_TOL {
        return Err(RootsError::NotSingular { sigma_min });
    }
    let mut v = [
        eigvecs[0][idx],
        eigvecs[1][idx],
        eigvecs[2][idx],
        eigvecs[3][idx],
    ];
    // deterministic phase: largest component real positive
    let lead = (0..4)
        .max_by(|&i, &j| v[i].norm().partial_cmp(&v[j].norm()).expect("finite"))
        .expect("nonempty");
    let phase = v[lead] / v[lead].norm();
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c = *c / phase / norm;
    }
    Ok(KernelVector {
        components: v,
        sigma_min,
    })
}

/// Cyclic Jacobi eigensolver for a 4×4 Hermitian matrix. Returns real
/// eigenvalues (unsorted) and the unitary eigenvector matrix (columns).
fn hermitian_jacobi(mut a: [[Complex64; 4]; 4]) -> ([f64; 4], [[Complex64; 4]; 4]) {
    let mut v = [[Complex64::ZERO; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = Complex64::ONE;
    }
    let norm: f64 = a.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for _sweep in 0..30 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * norm.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let phase = apq / apq.norm();
                let tau = (a[q][q].re - a[p][p].re) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J differs from identity in the (p, q) plane
                let jpp = Complex64::new(c, 0.0);
                let jpq = phase * s;
                let jqp = -phase.conj() * s;
                let jqq = Complex64::new(c, 0.0);
                // A ← Jᴴ A J applied in place on rows/cols p, q
                for k in 0..4 {
                    let x = a[p][k];
                    let y = a[q][k];
                    a[p][k] = jpp.conj() * x + jqp.conj() * y;
                    a[q][k] = jpq.conj() * x + jqq.conj() * y;
                }
                for k in 0..4 {
                    let x = a[k][p];
                    let y = a[k][q];
                    a[k][p] = x * jpp + y * jqp;
                    a[k][q] = x * jpq + y * jqq;
                }
                for k in 0..4 {
                    let x = v[k][p];
                    let y = v[k][q];
                    v[k][p] = x * jpp + y * jqp;
                    v[k][q] = x * jpq + y * jqq;
                }
            }
        }
    }
    let evs = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    (evs, v)
}
