//! Forward integration of the antigen/antibody equations.
//!
//! The integrator is an embedded Dormand-Prince 5(4) pair with the usual
//! mixed absolute/relative error norm and FSAL reuse. Coordinate planes
//! `x_i = 0` and `r_i = 0` are invariant, so any negative component is
//! truncation error: undershoots smaller than `negative_tolerance` are clipped
//! to zero and larger ones reject the step and retry at half the step size.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CrnModel, SystemState};

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalReason {
    TEndReached,
    Converged,
    Diverged,
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratorOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; chosen automatically when `None`.
    pub initial_step: Option<f64>,
    pub max_step: Option<f64>,
    pub max_steps: usize,
    /// Undershoots in `(-negative_tolerance, 0)` are clipped to zero.
    pub negative_tolerance: f64,
    /// Any component above this magnitude ends the run as diverged.
    pub divergence_threshold: f64,
    /// Stop early once `||rhs||_inf < tol` has held for `window` time units.
    pub stop_on_convergence: Option<ConvergenceCriterion>,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-10,
            initial_step: None,
            max_step: None,
            max_steps: 5_000_000,
            negative_tolerance: 1e-12,
            divergence_threshold: 1e12,
            stop_on_convergence: None,
        }
    }
}

/// Stop once `||rhs||_inf < tol` has held for `window` time units.
///
/// Near a stable point the step size grows to the explicit stability limit,
/// where `||rhs||` stalls around `rtol * |y|`; smaller `tol` is never reached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCriterion {
    pub window: f64,
    pub tol: f64,
}

/// Default horizon: many antibody decay times.
pub fn default_t_end(b: f64) -> f64 {
    1000.0 / b
}

/// Default initial condition: every population at `0.1`.
pub fn default_initial_state(n: usize) -> SystemState {
    SystemState { x: vec![0.1; n], r: vec![0.1; n] }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    pub positivity_retries: usize,
    /// Largest negative excursion that was clipped (as a positive number).
    pub max_clipped_undershoot: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SystemState>,
    pub terminal_reason: TerminalReason,
    pub stats: IntegrationStats,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> &SystemState {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn last_time(&self) -> f64 {
        *self.times.last().expect("trajectory is never empty")
    }

    /// CSV with header `t,x1..xn,r1..rn`, keeping every `stride`-th sample and the last one.
    pub fn to_csv(&self, stride: usize) -> String {
        let stride = stride.max(1);
        let n = self.states.first().map_or(0, SystemState::n);
        let mut out = String::from("t");
        for i in 1..=n {
            write!(out, ",x{i}").unwrap();
        }
        for i in 1..=n {
            write!(out, ",r{i}").unwrap();
        }
        out.push('\n');
        let last = self.len().saturating_sub(1);
        for (k, (t, s)) in self.times.iter().zip(&self.states).enumerate() {
            if k % stride != 0 && k != last {
                continue;
            }
            write!(out, "{t:?}").unwrap();
            for v in s.x.iter().chain(&s.r) {
                write!(out, ",{v:?}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

// Dormand-Prince 5(4) tableau. The field is autonomous, so the nodes c_i are not needed.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Differences between the 5th and 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Integrates from `initial` over `[0, t_end]`, storing every accepted step.
pub fn integrate(
    model: &CrnModel,
    initial: &SystemState,
    t_end: f64,
    options: &IntegratorOptions,
) -> Result<Trajectory> {
    initial.validate_initial()?;
    if initial.n() != model.n() {
        return Err(Error::DimensionMismatch {
            what: "initial state size vs network size",
            expected: model.n(),
            actual: initial.n(),
        });
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::Integration(format!("t_end = {t_end} must be finite and > 0")));
    }
    if !(options.rtol > 0.0 && options.atol > 0.0) {
        return Err(Error::Integration("rtol and atol must be positive".into()));
    }

    let dim = 2 * model.n();
    let mut y = initial.to_concat();
    let mut t = 0.0;
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut k5 = vec![0.0; dim];
    let mut k6 = vec![0.0; dim];
    let mut k7 = vec![0.0; dim];
    let mut stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];

    model.rhs_into(&y, &mut k1);

    let mut times = vec![0.0];
    let mut states = vec![initial.clone()];
    let mut stats = IntegrationStats::default();
    let max_step = options.max_step.unwrap_or(t_end).min(t_end);
    let mut h = options
        .initial_step
        .unwrap_or_else(|| initial_step(model, &y, &k1, options))
        .min(max_step);
    let h_min = 1e-14 * t_end.max(1.0);
    let mut converged_since: Option<f64> = None;

    let terminal = loop {
        if t >= t_end {
            break TerminalReason::TEndReached;
        }
        if stats.accepted + stats.rejected + stats.positivity_retries >= options.max_steps {
            return Err(Error::Integration(format!(
                "step budget of {} exhausted at t = {t}",
                options.max_steps
            )));
        }
        if h < h_min {
            return Err(Error::Integration(format!("step size underflow (h = {h:e}) at t = {t}")));
        }
        let last_step = t + h >= t_end;
        if last_step {
            h = t_end - t;
        }

        for i in 0..dim {
            stage[i] = y[i] + h * A21 * k1[i];
        }
        model.rhs_into(&stage, &mut k2);
        for i in 0..dim {
            stage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        model.rhs_into(&stage, &mut k3);
        for i in 0..dim {
            stage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        model.rhs_into(&stage, &mut k4);
        for i in 0..dim {
            stage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        model.rhs_into(&stage, &mut k5);
        for i in 0..dim {
            stage[i] = y[i]
                + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        model.rhs_into(&stage, &mut k6);
        for i in 0..dim {
            y_new[i] = y[i]
                + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        model.rhs_into(&y_new, &mut k7);

        if y_new.iter().chain(&k7).any(|v| !v.is_finite()) {
            // A non-finite trial is usually a step that was far too long.
            if h > 1e3 * h_min {
                h *= 0.5;
                stats.rejected += 1;
                continue;
            }
            break TerminalReason::NonFinite;
        }

        let mut err = 0.0;
        for i in 0..dim {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = options.atol + options.rtol * y[i].abs().max(y_new[i].abs());
            err += (e / scale).powi(2);
        }
        let err = (err / dim as f64).sqrt();

        if err > 1.0 {
            stats.rejected += 1;
            h *= (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
            continue;
        }

        let undershoot = y_new.iter().fold(0.0f64, |m, &v| m.max(-v));
        if undershoot >= options.negative_tolerance {
            stats.positivity_retries += 1;
            h *= 0.5;
            continue;
        }

        t = if last_step { t_end } else { t + h };
        let mut clipped = false;
        for v in y_new.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
                clipped = true;
            }
        }
        stats.max_clipped_undershoot = stats.max_clipped_undershoot.max(undershoot);
        std::mem::swap(&mut y, &mut y_new);
        if clipped {
            model.rhs_into(&y, &mut k1);
        } else {
            std::mem::swap(&mut k1, &mut k7);
        }
        stats.accepted += 1;
        times.push(t);
        states.push(SystemState::from_concat(&y));

        if sup_norm(&y) > options.divergence_threshold {
            break TerminalReason::Diverged;
        }
        if let Some(criterion) = options.stop_on_convergence {
            if sup_norm(&k1) < criterion.tol {
                let since = *converged_since.get_or_insert(t);
                if t - since >= criterion.window {
                    break TerminalReason::Converged;
                }
            } else {
                converged_since = None;
            }
        }

        let factor = if err == 0.0 {
            MAX_FACTOR
        } else {
            (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
        };
        h = (h * factor).min(max_step);
    };

    Ok(Trajectory { times, states, terminal_reason: terminal, stats })
}

/// Starting step from the size of the state and its derivative.
fn initial_step(model: &CrnModel, y: &[f64], f0: &[f64], options: &IntegratorOptions) -> f64 {
    let dim = y.len();
    let scale: Vec<f64> = y.iter().map(|v| options.atol + options.rtol * v.abs()).collect();
    let rms = |v: &[f64]| -> f64 {
        (v.iter().zip(&scale).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / dim as f64).sqrt()
    };
    let d0 = rms(y);
    let d1 = rms(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1: Vec<f64> = y.iter().zip(f0).map(|(a, b)| a + h0 * b).collect();
    let mut f1 = vec![0.0; dim];
    model.rhs_into(&y1, &mut f1);
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

/// Returns the final state when the vector field stayed below `tol` in sup norm
/// at every sample of the trailing time `window`.
pub fn detect_convergence(
    trajectory: &Trajectory,
    model: &CrnModel,
    window: f64,
    tol: f64,
) -> Option<SystemState> {
    let t_last = *trajectory.times.last()?;
    if t_last - trajectory.times[0] < window {
        return None;
    }
    let start = t_last - window;
    let stationary = trajectory
        .times
        .iter()
        .zip(&trajectory.states)
        .rev()
        .take_while(|(t, _)| **t >= start)
        .all(|(_, s)| model.residual(s) < tol);
    stationary.then(|| trajectory.last_state().clone())
}
