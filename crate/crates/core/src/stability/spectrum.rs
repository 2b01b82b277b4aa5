//! Eigenvalues and stability verdicts.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// QR sweeps allowed per matrix dimension.
pub const SWEEPS_PER_DIMENSION: usize = 100;

/// All eigenvalues, sorted by real part descending (then imaginary part descending).
pub fn spectrum(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("matrix has non-finite entries".into()));
    }
    let cap = SWEEPS_PER_DIMENSION * m.nrows().max(1);
    let mut eigs = linalg::eigenvalues(m, cap).ok_or(Error::EigenNoConvergence(cap))?;
    sort_descending(&mut eigs);
    Ok(eigs)
}

pub fn sort_descending(eigs: &mut [Complex64]) {
    eigs.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
}

/// `||(M - lambda I) v|| / ||v||` minimized over `v`, i.e. the smallest
/// singular value of `M - lambda I`.
pub fn eigen_residual(m: &DMatrix<f64>, lambda: Complex64) -> f64 {
    let n = m.nrows();
    let shifted = DMatrix::from_fn(n, n, |i, j| {
        let v = Complex64::new(m[(i, j)], 0.0);
        if i == j {
            v - lambda
        } else {
            v
        }
    });
    shifted.singular_values().iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Stable,
    Unstable,
    Marginal,
}

/// Default marginal band: `1e-7 * max(1, spectral radius)`.
pub fn default_epsilon(eigs: &[Complex64]) -> f64 {
    1e-7 * eigs.iter().fold(1.0f64, |m, z| m.max(z.norm()))
}

/// Verdict plus the eigenvalues that witness it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub verdict: Verdict,
    pub epsilon: f64,
    #[serde(with = "super::complex_pairs")]
    pub positive_witnesses: Vec<Complex64>,
    #[serde(with = "super::complex_pairs")]
    pub marginal_witnesses: Vec<Complex64>,
}

pub fn verdict(eigs: &[Complex64], epsilon: f64) -> VerdictRecord {
    let positive_witnesses: Vec<Complex64> = eigs.iter().copied().filter(|z| z.re > epsilon).collect();
    let marginal_witnesses: Vec<Complex64> = eigs.iter().copied().filter(|z| z.re.abs() <= epsilon).collect();
    let verdict = if !positive_witnesses.is_empty() {
        Verdict::Unstable
    } else if !marginal_witnesses.is_empty() {
        Verdict::Marginal
    } else {
        Verdict::Stable
    };
    VerdictRecord { verdict, epsilon, positive_witnesses, marginal_witnesses }
}

/// Relative errors of `sum(lambda)` against the trace and `prod(lambda)`
/// against the determinant.
pub fn trace_determinant_errors(m: &DMatrix<f64>, eigs: &[Complex64]) -> (f64, f64) {
    let sum: Complex64 = eigs.iter().sum();
    let prod: Complex64 = eigs.iter().product();
    let trace = m.trace();
    let det = linalg::determinant(m);
    let rel = |a: Complex64, b: f64| (a - b).norm() / b.abs().max(f64::MIN_POSITIVE);
    let scale = eigs.iter().fold(1.0f64, |s, z| s.max(z.norm()));
    // Absolute fallbacks for traces or determinants that vanish.
    let trace_err = if trace.abs() > 1e-12 * scale { rel(sum, trace) } else { (sum - trace).norm() / scale };
    let det_scale = scale.powi(eigs.len() as i32);
    let det_err = if det.abs() > 1e-12 * det_scale { rel(prod, det) } else { (prod - det).norm() / det_scale };
    (trace_err, det_err)
}

/// Largest distance from an eigenvalue to the conjugate of its best match.
pub fn conjugate_closure_error(eigs: &[Complex64]) -> f64 {
    eigs.iter()
        .map(|z| eigs.iter().map(|w| (z.conj() - w).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}
