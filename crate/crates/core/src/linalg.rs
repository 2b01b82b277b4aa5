//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Singular values below `RANK_CUTOFF * sigma_max` count as zero.
pub const RANK_CUTOFF: f64 = 1e-10;

/// Result of a rank-revealing least-squares solve of `M z = rhs`.
#[derive(Debug, Clone)]
pub struct LstsqSolution {
    /// Minimum-norm least-squares solution.
    pub solution: DVector<f64>,
    /// Euclidean norm of `M z - rhs`.
    pub residual: f64,
    pub rank: usize,
    /// Orthonormal basis of `ker(M)`, one column per direction.
    pub null_space: DMatrix<f64>,
    /// Orthonormal basis of `ker(M^T)`; consistency requires `rhs` orthogonal to it.
    pub left_null_space: DMatrix<f64>,
}

/// Singular values (descending) and right singular vectors (as columns) of `m`,
/// always returning a full set of `ncols` right vectors.
fn right_svd(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let (rows, cols) = m.shape();
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sigma = order.iter().map(|&k| svd.singular_values[k]).collect();
    let v = DMatrix::from_fn(cols, cols, |i, j| v_t[(order[j], i)]);
    (sigma, v)
}

/// Numerical rank with cutoff `RANK_CUTOFF * sigma_max`.
pub fn rank(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sigma = m.singular_values();
    let max = sigma.iter().fold(0.0f64, |a, &b| a.max(b));
    if max == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > RANK_CUTOFF * max).count()
}

/// Orthonormal basis of `ker(m)` as columns.
pub fn null_space(m: &DMatrix<f64>) -> DMatrix<f64> {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    let (sigma, v) = right_svd(m);
    let max = sigma.first().copied().unwrap_or(0.0);
    let r = if max == 0.0 { 0 } else { sigma.iter().filter(|&&s| s > RANK_CUTOFF * max).count() };
    v.columns(r, cols - r).into_owned()
}

/// Rank-revealing least squares via the SVD.
pub fn lstsq(m: &DMatrix<f64>, rhs: &DVector<f64>) -> LstsqSolution {
    let (rows, cols) = m.shape();
    assert_eq!(rows, rhs.len(), "rhs length must match row count");
    if cols == 0 {
        return LstsqSolution {
            solution: DVector::zeros(0),
            residual: rhs.norm(),
            rank: 0,
            null_space: DMatrix::zeros(0, 0),
            left_null_space: DMatrix::identity(rows, rows),
        };
    }
    let svd = m.clone().svd(true, true);
    let max = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let eps = RANK_CUTOFF * max;
    let solution = if max == 0.0 {
        DVector::zeros(cols)
    } else {
        svd.solve(rhs, eps).expect("U and V^T were computed")
    };
    let rank = if max == 0.0 { 0 } else { svd.singular_values.iter().filter(|&&s| s > eps).count() };
    let residual = (m * &solution - rhs).norm();
    LstsqSolution {
        solution,
        residual,
        rank,
        null_space: null_space(m),
        left_null_space: null_space(&m.transpose()),
    }
}

/// Determinant through LU.
pub fn determinant(m: &DMatrix<f64>) -> f64 {
    m.clone().lu().determinant()
}

/// Least-squares fit of a polynomial of the given degree; coefficients in ascending powers.
pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() > degree, "need more samples than the degree");
    let vander = DMatrix::from_fn(xs.len(), degree + 1, |i, j| xs[i].powi(j as i32));
    let sol = lstsq(&vander, &DVector::from_column_slice(ys));
    sol.solution.iter().copied().collect()
}

/// Evaluates a polynomial with ascending coefficients.
pub fn polyval(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Multiplies two polynomials given in ascending powers.
pub fn polymul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Adds two polynomials given in ascending powers.
pub fn polyadd(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

/// Eigenvalues of a real matrix from its real Schur form, or `None` when the
/// QR iteration does not converge within `max_iterations` sweeps.
pub fn eigenvalues(m: &DMatrix<f64>, max_iterations: usize) -> Option<Vec<Complex64>> {
    if m.is_empty() {
        return Some(Vec::new());
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, max_iterations)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

/// Roots of a polynomial with ascending coefficients (leading coefficient nonzero),
/// from the eigenvalues of its companion matrix.
pub fn poly_roots(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let degree = coeffs.len().checked_sub(1)?;
    let lead = coeffs[degree];
    if degree == 0 || lead == 0.0 {
        return Some(Vec::new());
    }
    let mut companion = DMatrix::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -coeffs[i] / lead;
    }
    eigenvalues(&companion, 1000 * degree)
}
