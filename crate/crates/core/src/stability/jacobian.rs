//! Block Jacobian of the vector field.

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{CrnModel, SystemState};

/// `J = [[A, B], [C, D]]` with `A = d(x')/dx`, `B = d(x')/dr`,
/// `C = d(r')/dx`, `D = d(r')/dr`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianMatrix {
    /// Diagonal of `A`: `f_i - p * sum_j u_ji r_j`.
    pub a_diag: Vec<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub d: DMatrix<f64>,
    /// Assembled `2n x 2n` matrix.
    pub full: DMatrix<f64>,
}

impl JacobianMatrix {
    pub fn n(&self) -> usize {
        self.a_diag.len()
    }

    fn assemble(a_diag: Vec<f64>, b: DMatrix<f64>, c: DMatrix<f64>, d: DMatrix<f64>) -> Self {
        let n = a_diag.len();
        let mut full = DMatrix::zeros(2 * n, 2 * n);
        for (i, &a) in a_diag.iter().enumerate() {
            full[(i, i)] = a;
        }
        full.view_mut((0, n), (n, n)).copy_from(&b);
        full.view_mut((n, 0), (n, n)).copy_from(&c);
        full.view_mut((n, n), (n, n)).copy_from(&d);
        Self { a_diag, b, c, d, full }
    }
}

pub(crate) fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl Serialize for JacobianMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            a_diag: Vec<f64>,
            b: Vec<Vec<f64>>,
            c: Vec<Vec<f64>>,
            d: Vec<Vec<f64>>,
            full: Vec<Vec<f64>>,
        }
        Out {
            a_diag: self.a_diag.clone(),
            b: rows(&self.b),
            c: rows(&self.c),
            d: rows(&self.d),
            full: rows(&self.full),
        }
        .serialize(s)
    }
}

/// Analytic Jacobian at `state`.
///
/// With `S_j = sum_k v_jk r_k`, the stimulation block is
/// `C_ij = c v_ji r_i / S_j` and
/// `D_il = c sum_j x_j v_ji (delta_il / S_j - r_i v_jl / S_j^2) - b delta_il`.
/// Rows `j` with `S_j = 0` contribute nothing when `x_j = 0`; with `x_j > 0`
/// the derivative does not exist and an error is returned.
pub fn jacobian_at(model: &CrnModel, state: &SystemState) -> Result<JacobianMatrix> {
    let n = model.n();
    if state.n() != n {
        return Err(Error::DimensionMismatch { what: "state", expected: n, actual: state.n() });
    }
    let params = model.params();
    let (u, v) = (&model.matrices().u, &model.matrices().v);
    let (x, r) = (&state.x, &state.r);
    let s = model.stimulation_denominators(r);
    for j in 0..n {
        if s[j] == 0.0 && x[j] != 0.0 {
            return Err(Error::JacobianUndefined(format!(
                "antigen {} is present but every response it stimulates is zero",
                j + 1
            )));
        }
    }
    let a_diag = (0..n)
        .map(|i| params.f[i] - params.p * (0..n).map(|j| u[(j, i)] * r[j]).sum::<f64>())
        .collect();
    let b = DMatrix::from_fn(n, n, |i, j| -params.p * x[i] * u[(j, i)]);
    let c = DMatrix::from_fn(n, n, |i, j| if s[j] > 0.0 { params.c * v[(j, i)] * r[i] / s[j] } else { 0.0 });
    let mut d = DMatrix::zeros(n, n);
    for j in (0..n).filter(|&j| s[j] > 0.0 && x[j] != 0.0) {
        let w = params.c * x[j] / s[j];
        for i in 0..n {
            if v[(j, i)] == 0.0 {
                continue;
            }
            d[(i, i)] += w * v[(j, i)];
            for l in 0..n {
                d[(i, l)] -= w * v[(j, i)] * r[i] * v[(j, l)] / s[j];
            }
        }
    }
    for i in 0..n {
        d[(i, i)] -= params.b;
    }
    Ok(JacobianMatrix::assemble(a_diag, b, c, d))
}

/// Central-difference Jacobian of the vector field, step `h * max(1, |z_k|)`.
pub fn finite_difference_jacobian(model: &CrnModel, state: &SystemState, h: f64) -> DMatrix<f64> {
    let z = state.to_concat();
    let m = z.len();
    let mut out = DMatrix::zeros(m, m);
    let (mut plus, mut minus) = (vec![0.0; m], vec![0.0; m]);
    for k in 0..m {
        let step = h * z[k].abs().max(1.0);
        let mut zp = z.clone();
        let mut zm = z.clone();
        zp[k] += step;
        zm[k] -= step;
        model.rhs_into(&zp, &mut plus);
        model.rhs_into(&zm, &mut minus);
        for i in 0..m {
            out[(i, k)] = (plus[i] - minus[i]) / (2.0 * step);
        }
    }
    out
}
