//! Antigen/antibody dynamics on cross-immunoreactivity networks.
//!
//! The crate models a population of antigen variants `x_i` and the antibody
//! responses `r_i` they induce, coupled through a directed network whose
//! edges carry cross-reactive neutralization and stimulation. It provides
//!
//! - the vector field and an adaptive integrator ([`model`], [`dynamics`]),
//! - fixed points on prescribed support patterns, their classification into
//!   persistent / altruistic / neutral nodes and the A-D condition groups
//!   ([`fixed_points`]),
//! - Jacobians, spectra and characteristic-polynomial factor checks
//!   ([`stability`]),
//! - the named small networks and their closed-form fixed-point catalog
//!   ([`catalog`]),
//! - seeded parameter sweeps for robustness ([`robustness`]).
//!
//! With the default `parallel` feature, support enumeration and sweeps run on
//! rayon; without it every [`Execution`] mode falls back to a sequential loop.

pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod fixed_points;
pub mod linalg;
pub mod model;
pub mod network;
mod par;
pub mod params;
pub mod robustness;
pub mod stability;

pub use error::{Error, Result};
pub use model::{build_matrices, rhs, stimulation_probabilities, CrnModel, ImmuneMatrices, SystemState};
pub use network::{CrNetwork, NetworkFile};
pub use par::Execution;
pub use params::ModelParameters;
