//! Immune matrices and the right-hand side of the antigen/antibody equations
//!
//! ```text
//! dx_i/dt = f_i x_i - p x_i sum_j u_ji r_j
//! dr_i/dt = c sum_j x_j g_ji - b r_i,     g_ji = v_ji r_i / sum_k v_jk r_k
//! ```
//!
//! with `U = Id + beta A^T` and `V = Id + alpha A`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::CrNetwork;
use crate::params::ModelParameters;

/// Neutralization matrix `U` and stimulation matrix `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmuneMatrices {
    pub u: DMatrix<f64>,
    pub v: DMatrix<f64>,
}

impl ImmuneMatrices {
    pub fn n(&self) -> usize {
        self.u.nrows()
    }
}

/// `U = Id + beta A^T`, `V = Id + alpha A`.
pub fn build_matrices(network: &CrNetwork, params: &ModelParameters) -> Result<ImmuneMatrices> {
    params.validate_for(network.n())?;
    let n = network.n();
    let a = network.adjacency();
    let id = DMatrix::<f64>::identity(n, n);
    Ok(ImmuneMatrices {
        u: &id + a.transpose() * params.beta,
        v: id + a * params.alpha,
    })
}

/// Antigen populations `x` and antibody populations `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemState {
    pub x: Vec<f64>,
    pub r: Vec<f64>,
}

impl SystemState {
    /// Checks lengths, finiteness and nonnegativity.
    pub fn new(x: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        let state = Self { x, r };
        state.validate()?;
        Ok(state)
    }

    pub fn zeros(n: usize) -> Self {
        Self { x: vec![0.0; n], r: vec![0.0; n] }
    }

    /// Splits a `(x, r)` concatenation of length `2n`.
    pub fn from_concat(z: &[f64]) -> Self {
        assert!(z.len() % 2 == 0, "concatenated state must have even length");
        let n = z.len() / 2;
        Self { x: z[..n].to_vec(), r: z[n..].to_vec() }
    }

    pub fn to_concat(&self) -> Vec<f64> {
        let mut z = Vec::with_capacity(2 * self.n());
        z.extend_from_slice(&self.x);
        z.extend_from_slice(&self.r);
        z
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.len() != self.r.len() {
            return Err(Error::DimensionMismatch {
                what: "length of r vs length of x",
                expected: self.x.len(),
                actual: self.r.len(),
            });
        }
        for (name, v) in [("x", &self.x), ("r", &self.r)] {
            for (i, &value) in v.iter().enumerate() {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(Error::InvalidState(format!(
                        "{name}{} = {value} must be finite and >= 0",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Additionally rejects the all-zero state, which cannot seed dynamics.
    pub fn validate_initial(&self) -> Result<()> {
        self.validate()?;
        if self.is_zero() {
            return Err(Error::InvalidState(
                "antigen and antibody populations cannot all be zero".into(),
            ));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.r).all(|&v| v == 0.0)
    }

    /// Sup-norm distance.
    pub fn distance(&self, other: &SystemState) -> f64 {
        self.x
            .iter()
            .zip(&other.x)
            .chain(self.r.iter().zip(&other.r))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Stimulation probabilities `G[j][i] = v_ji r_i / sum_k v_jk r_k`.
///
/// Rows whose denominator vanishes are identically zero: a variant with no
/// reachable response stimulates nothing.
pub fn stimulation_probabilities(state: &SystemState, matrices: &ImmuneMatrices) -> DMatrix<f64> {
    let n = matrices.n();
    let v = &matrices.v;
    let mut g = DMatrix::zeros(n, n);
    for j in 0..n {
        let denom: f64 = (0..n).map(|k| v[(j, k)] * state.r[k]).sum();
        if denom > 0.0 {
            for i in 0..n {
                g[(j, i)] = v[(j, i)] * state.r[i] / denom;
            }
        }
    }
    g
}

/// Time derivatives `(dx/dt, dr/dt)` concatenated into a vector of length `2n`.
pub fn rhs(state: &SystemState, network: &CrNetwork, params: &ModelParameters) -> Result<Vec<f64>> {
    let model = CrnModel::new(network.clone(), params.clone())?;
    if state.n() != model.n() {
        return Err(Error::DimensionMismatch {
            what: "state size vs network size",
            expected: model.n(),
            actual: state.n(),
        });
    }
    Ok(model.rhs(state))
}

/// A network, its parameters and the derived immune matrices, validated once.
///
/// This is the form used by the integrator and the fixed-point machinery,
/// which evaluate the vector field many times.
#[derive(Debug, Clone)]
pub struct CrnModel {
    network: CrNetwork,
    params: ModelParameters,
    matrices: ImmuneMatrices,
}

impl CrnModel {
    pub fn new(network: CrNetwork, params: ModelParameters) -> Result<Self> {
        let matrices = build_matrices(&network, &params)?;
        Ok(Self { network, params, matrices })
    }

    pub fn n(&self) -> usize {
        self.network.n()
    }

    pub fn network(&self) -> &CrNetwork {
        &self.network
    }

    pub fn params(&self) -> &ModelParameters {
        &self.params
    }

    pub fn matrices(&self) -> &ImmuneMatrices {
        &self.matrices
    }

    pub fn with_params(&self, params: ModelParameters) -> Result<Self> {
        Self::new(self.network.clone(), params)
    }

    /// `sum_k v_jk r_k` for every `j`.
    pub fn stimulation_denominators(&self, r: &[f64]) -> Vec<f64> {
        let n = self.n();
        let v = &self.matrices.v;
        (0..n).map(|j| (0..n).map(|k| v[(j, k)] * r[k]).sum()).collect()
    }

    pub fn rhs(&self, state: &SystemState) -> Vec<f64> {
        let z = state.to_concat();
        let mut out = vec![0.0; z.len()];
        self.rhs_into(&z, &mut out);
        out
    }

    /// Evaluates the vector field at the concatenated state `z = (x, r)`.
    pub fn rhs_into(&self, z: &[f64], out: &mut [f64]) {
        let n = self.n();
        debug_assert_eq!(z.len(), 2 * n);
        debug_assert_eq!(out.len(), 2 * n);
        let (x, r) = z.split_at(n);
        let (dx, dr) = out.split_at_mut(n);
        let u = &self.matrices.u;
        let v = &self.matrices.v;
        let p = &self.params;

        for i in 0..n {
            let neutralization: f64 = (0..n).map(|j| u[(j, i)] * r[j]).sum();
            dx[i] = x[i] * (p.f[i] - p.p * neutralization);
            dr[i] = 0.0;
        }
        for j in 0..n {
            if x[j] == 0.0 {
                continue;
            }
            let denom: f64 = (0..n).map(|k| v[(j, k)] * r[k]).sum();
            if denom > 0.0 {
                let weight = x[j] / denom;
                for i in 0..n {
                    dr[i] += weight * v[(j, i)] * r[i];
                }
            }
        }
        for i in 0..n {
            dr[i] = p.c * dr[i] - p.b * r[i];
        }
    }

    /// Sup norm of the vector field.
    pub fn residual(&self, state: &SystemState) -> f64 {
        self.rhs(state).iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
