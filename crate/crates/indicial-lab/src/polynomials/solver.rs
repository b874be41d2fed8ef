//! Complex polynomial root extraction: companion-matrix eigenvalues via a
//! balanced Hessenberg QR iteration, followed by Newton polishing in which
//! the polynomial value is evaluated *exactly* (the floating root is a binary
//! rational, so `p(z)` carries no evaluation rounding at all). The reported
//! residual is therefore a certificate: it measures only how far the floating
//! root is from the true one.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use super::{GaussianRational, UniPoly};

/// Default scaled-residual target for polishing.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Newton iteration cap.
pub const MAX_POLISH_ITER: usize = 100;
/// Roots closer than this (absolute) are reported as one cluster.
const CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("polynomial has no roots to solve (degree < 1)")]
    DegreeTooSmall,
    #[error("leading coefficient magnitude {0:e} below 1e-300")]
    TinyLeadingCoefficient(f64),
    #[error("root {root_index} failed to reach the residual target (ill-conditioned input)")]
    NonConvergence { root_index: usize },
}

/// A polished root with its certified scaled residual |p(s)|/‖p‖ and the
/// size of the root cluster it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRoot {
    pub value: Complex64,
    pub residual: f64,
    pub multiplicity_hint: usize,
}

/// All roots of `p`, with multiplicity, sorted by (Re, Im).
pub fn solve_roots(p: &UniPoly) -> Result<Vec<ComplexRoot>, SolveError> {
    solve_roots_with(p, ROOT_RESIDUAL_TOL, MAX_POLISH_ITER)
}

/// As [`solve_roots`] with explicit residual target and iteration cap.
pub fn solve_roots_with(
    p: &UniPoly,
    residual_tol: f64,
    max_iter: usize,
) -> Result<Vec<ComplexRoot>, SolveError> {
    let Some(degree) = p.degree() else {
        return Err(SolveError::DegreeTooSmall);
    };
    if degree < 1 {
        return Err(SolveError::DegreeTooSmall);
    }
    let lead_mag = p.leading().expect("degree >= 1").magnitude();
    if lead_mag < 1e-300 {
        return Err(SolveError::TinyLeadingCoefficient(lead_mag));
    }

    // exact deflation of zero roots: coefficients are exact, so a vanishing
    // constant term means s = 0 is a root, with no numerics involved
    let mut reduced = p.coeffs().to_vec();
    let mut zero_mult = 0usize;
    while reduced.len() > 1 && reduced[0].is_zero() {
        reduced.remove(0);
        zero_mult += 1;
    }
    let work = UniPoly::new(reduced);

    let mut roots = Vec::with_capacity(degree);
    for _ in 0..zero_mult {
        roots.push(ComplexRoot {
            value: Complex64::ZERO,
            residual: 0.0,
            multiplicity_hint: 1,
        });
    }

    if let Some(n) = work.degree().filter(|&n| n >= 1) {
        // monic companion matrix, upper Hessenberg
        let coeffs = work.to_complex_coeffs();
        let lead = coeffs[n];
        let mut h = vec![vec![Complex64::ZERO; n]; n];
        for k in 0..n {
            h[k][n - 1] = -coeffs[k] / lead;
        }
        for k in 1..n {
            h[k][k - 1] = Complex64::ONE;
        }
        balance(&mut h);
        let raw = hessenberg_qr_eigenvalues(&mut h)
            .map_err(|root_index| SolveError::NonConvergence { root_index })?;

        let scale = p.max_coeff_magnitude();
        let dp = p.derivative();
        for (idx, z0) in raw.into_iter().enumerate() {
            let (value, residual) = polish(p, &dp, z0, residual_tol, max_iter, scale).ok_or(
                SolveError::NonConvergence {
                    root_index: zero_mult + idx,
                },
            )?;
            roots.push(ComplexRoot {
                value,
                residual,
                multiplicity_hint: 1,
            });
        }
    }
    assign_multiplicity_hints(&mut roots);
    roots.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .expect("roots are finite")
    });
    Ok(roots)
}

/// Exact |p(z)| and its complex value at a floating point.
fn exact_value(p: &UniPoly, z: Complex64) -> (Complex64, f64) {
    let v = p.eval_exact(&GaussianRational::from_complex_f64(z));
    (v.to_complex(), v.magnitude())
}

fn polish(
    p: &UniPoly,
    dp: &UniPoly,
    mut z: Complex64,
    residual_tol: f64,
    max_iter: usize,
    scale: f64,
) -> Option<(Complex64, f64)> {
    // iterate to the attainable floor (not merely to the tolerance): the
    // residual doubles as a certificate, so the smaller the better
    let mut best = (z, f64::INFINITY);
    let mut stale = 0;
    for iter in 0..=max_iter {
        let (pz, mag) = exact_value(p, z);
        let scaled = mag / scale;
        if scaled < best.1 {
            best = (z, scaled);
            stale = 0;
        } else {
            stale += 1;
        }
        if scaled == 0.0 || (stale >= 2 && best.1 <= residual_tol) || iter == max_iter {
            break;
        }
        let mut dpz = dp.eval_complex(z);
        if dpz.is_zero() {
            // exactly critical; nudge off the stationary point
            z += Complex64::new(1e-12 * (1.0 + z.norm()), 0.0);
            dpz = dp.eval_complex(z);
            if dpz.is_zero() {
                break;
            }
        }
        z -= pz / dpz;
        if !z.re.is_finite() || !z.im.is_finite() {
            break;
        }
    }
    (best.1 <= residual_tol).then_some(best)
}

fn assign_multiplicity_hints(roots: &mut [ComplexRoot]) {
    let n = roots.len();
    // union-find over pairwise closeness
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let tol = CLUSTER_TOL * (1.0 + roots[i].value.norm().max(roots[j].value.norm()));
            if (roots[i].value - roots[j].value).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut sizes = vec![0usize; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        sizes[r] += 1;
    }
    for i in 0..n {
        let r = find(&mut parent, i);
        roots[i].multiplicity_hint = sizes[r];
    }
}

/// Parlett–Reinsch balancing with powers of two (exact in binary floating
/// point, so it cannot perturb the eigenvalues' representable values).
/// A scaling is applied only when it shrinks the combined row/column norm
/// by at least 5%, which bounds the number of passes.
fn balance(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    r += h[i][j].norm();
                    c += h[j][i].norm();
                }
            }
            if r == 0.0 || c == 0.0 {
                continue;
            }
            let original = c + r;
            let mut f = 1.0;
            while c < r / 2.0 {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while c >= r * 2.0 {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if f != 1.0 && c + r < 0.95 * original {
                converged = false;
                for j in 0..n {
                    h[i][j] /= f;
                }
                for j in 0..n {
                    h[j][i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Eigenvalues of a complex upper-Hessenberg matrix by explicit single-shift
/// QR with Wilkinson shifts and deflation. Errors with the stalled index.
fn hessenberg_qr_eigenvalues(h: &mut [Vec<Complex64>]) -> Result<Vec<Complex64>, usize> {
    let n = h.len();
    let mut eigs = vec![Complex64::ZERO; n];
    let mut hi = n;
    let mut stall = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n;
    while hi > 0 {
        // deflate converged subdiagonals
        let lo = active_block_start(h, hi);
        if lo == hi - 1 {
            eigs[hi - 1] = h[hi - 1][hi - 1];
            hi -= 1;
            stall = 0;
            continue;
        }
        if lo == hi - 2 {
            let (e1, e2) = eig2(
                h[hi - 2][hi - 2],
                h[hi - 2][hi - 1],
                h[hi - 1][hi - 2],
                h[hi - 1][hi - 1],
            );
            eigs[hi - 2] = e1;
            eigs[hi - 1] = e2;
            hi -= 2;
            stall = 0;
            continue;
        }
        stall += 1;
        total += 1;
        if total > max_total {
            return Err(hi - 1);
        }
        let mu = if stall % 10 == 0 {
            // exceptional shift to break symmetric stalls (multiple roots
            // make the trailing cluster equidistant from Wilkinson shifts)
            h[hi - 1][hi - 1] + Complex64::new(h[hi - 1][hi - 2].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(h, hi)
        };
        qr_step(h, lo, hi, mu);
    }
    Ok(eigs)
}

fn active_block_start(h: &mut [Vec<Complex64>], hi: usize) -> usize {
    let mut lo = hi - 1;
    while lo > 0 {
        let sub = h[lo][lo - 1].norm();
        let local = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
        let tol = if local > 0.0 {
            f64::EPSILON * local
        } else {
            f64::MIN_POSITIVE
        };
        if sub <= tol {
            h[lo][lo - 1] = Complex64::ZERO;
            break;
        }
        lo -= 1;
    }
    lo
}

/// Eigenvalues of [[a, b], [c, d]].
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    (half_tr + root, half_tr - root)
}

fn wilkinson_shift(h: &[Vec<Complex64>], hi: usize) -> Complex64 {
    let (e1, e2) = eig2(
        h[hi - 2][hi - 2],
        h[hi - 2][hi - 1],
        h[hi - 1][hi - 2],
        h[hi - 1][hi - 1],
    );
    let d = h[hi - 1][hi - 1];
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// One explicit shifted QR sweep on the active block [lo, hi).
fn qr_step(h: &mut [Vec<Complex64>], lo: usize, hi: usize, mu: Complex64) {
    for i in lo..hi {
        h[i][i] -= mu;
    }
    // QR by Givens rotations zeroing the subdiagonal
    let mut rotations = Vec::with_capacity(hi - lo - 1);
    for j in lo..hi - 1 {
        let (c, s) = givens(h[j][j], h[j + 1][j]);
        for col in j..hi {
            let x = h[j][col];
            let y = h[j + 1][col];
            h[j][col] = c * x + s * y;
            h[j + 1][col] = -s.conj() * x + c * y;
        }
        rotations.push((j, c, s));
    }
    // RQ: apply the adjoint rotations on the right
    for &(j, c, s) in &rotations {
        for row in lo..(j + 2).min(hi) {
            let x = h[row][j];
            let y = h[row][j + 1];
            h[row][j] = c * x + s.conj() * y;
            h[row][j + 1] = -s * x + c * y;
        }
    }
    for i in lo..hi {
        h[i][i] += mu;
    }
}

/// Rotation [[c, s], [-conj(s), c]] (c real) sending (a, b) to (r, 0).
fn givens(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let na = a.norm();
    let r = (na * na + b.norm_sqr()).sqrt();
    if r == 0.0 {
        return (Complex64::ONE, Complex64::ZERO);
    }
    if na == 0.0 {
        return (Complex64::ZERO, Complex64::ONE);
    }
    let c = Complex64::new(na / r, 0.0);
    let s = a * b.conj() / (na * r);
    (c, s)
}
