use alloc::vec::Vec;

use crate::Vector16c;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// `ω_R = g = 0` leaves the mixing angle undefined.
    #[error("mixing angle undefined for omega_r = {omega_r}, g = {g}")]
    DegenerateAngle { omega_r: f64, g: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} requires a positive argument, got {value}")]
    Domain { what: &'static str, value: f64 },

    /// The generator kernel is not one-dimensional. Carries every null vector.
    #[error("steady state is not unique: null space has dimension {}", null_vectors.len())]
    DegenerateSteadyState { null_vectors: Vec<Vector16c> },

    #[error("no trace-one positive steady state: {reason}")]
    Infeasible { reason: &'static str },

    #[error("time step {dt} violates stability guard (dt * |S| = {product}, limit 0.1)")]
    StepSize { dt: f64, product: f64 },

    #[error("density matrix invalid: {reason} (deviation {deviation:e})")]
    InvalidState {
        reason: &'static str,
        deviation: f64,
    },

    #[error("heat current has imaginary part {imag:e}")]
    ComplexHeatCurrent { imag: f64 },

    #[error("rectification undefined: both currents vanish")]
    UndefinedRectification,

    #[error("{what} supports only local baths (kappa_lr = kappa_rl = 0)")]
    UnsupportedConfiguration { what: &'static str },
}
