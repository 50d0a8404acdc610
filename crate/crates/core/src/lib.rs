//! Two-qubit quantum thermal diode with an anisotropic `σ_L^z σ_R^x` coupling.
//!
//! The crate builds the dressed-state global Lindblad generator for two qubits
//! attached to two thermal baths, extracts its steady state and evaluates the
//! heat currents and rectification factor. Everything here is pure numerics on
//! fixed-size matrices (4×4 operators, 16×16 superoperators); IO, sweeps and the
//! command line live in the `qdiode-sweep` crate.
//!
//! Conventions used throughout:
//!
//! * `ħ = k_B = 1`, so energies, temperatures and rates share one frequency unit.
//! * Product basis order `|++⟩, |+−⟩, |−+⟩, |−−⟩` (left qubit major, excited first).
//! * Density matrices are vectorized by column stacking.
//! * All 4×4 operators, dressed ones included, are expressed in the bare product
//!   basis. The dressed Hamiltonian `H̃` is therefore the same matrix as the bare
//!   Hamiltonian; it is only diagonal in the dressed eigenbasis.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` style checks deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

use nalgebra::ComplexField;

pub mod error;
pub mod liouvillian;
pub mod observables;
pub mod operators;
pub mod solver;
pub mod spectrum;

pub use error::{Error, Result};
pub use liouvillian::{assemble, assemble_with, Channel, ChannelKind, Generator, GeneratorOptions};
pub use observables::{
    heat_current, heat_report, rectification, solve_point, solve_rectification, HeatReport,
    RectificationResult, SteadyStateReport,
};

pub use operators::{eigensystem, DressedFrame, Site, SystemSpec};
pub use solver::{evolve, gibbs, relaxation_horizon, steady_state, DensityMatrix, SteadySolution};
pub use spectrum::{Bath, BathSpec, CouplingRates, SpectralKind};

/// Complex scalar used for every operator entry.
pub type C64 = nalgebra::Complex<f64>;
/// Single-qubit operator.
pub type Matrix2c = nalgebra::SMatrix<C64, 2, 2>;
/// Two-qubit operator in the product basis.
pub type Matrix4c = nalgebra::SMatrix<C64, 4, 4>;
/// Two-qubit state vector.
pub type Vector4c = nalgebra::SVector<C64, 4>;
/// Superoperator acting on column-stacked 4×4 matrices.
pub type Superoperator = nalgebra::SMatrix<C64, 16, 16>;
/// Column-stacked 4×4 matrix.
pub type Vector16c = nalgebra::SVector<C64, 16>;

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff<const R: usize, const C: usize>(
    a: &nalgebra::SMatrix<C64, R, C>,
    b: &nalgebra::SMatrix<C64, R, C>,
) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).modulus())
        .fold(0.0, f64::max)
}
