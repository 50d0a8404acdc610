//! Steady states and time evolution.
//!
//! The steady state is the kernel of the 16×16 generator, found by a dense
//! singular-value decomposition. Singular values at or below `1e−10·σ_max`
//! count as null; anything other than a one-dimensional kernel is reported as
//! an error rather than resolved.
//!
//! Time evolution is fixed-step classical RK4 on `vec(ρ)' = S vec(ρ)`. For a
//! linear system one RK4 step is the matrix
//! `P = I + hS + (hS)²/2 + (hS)³/6 + (hS)⁴/24`, so `n` steps are applied as
//! `Pⁿ` by repeated squaring.

use alloc::vec::Vec;

use libm::{ceil, exp};
use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::liouvillian::{unvectorize, vectorize, Generator};
use crate::{Matrix4c, Superoperator, Vector16c, C64};

/// Relative singular-value cutoff for the null space.
pub const NULL_THRESHOLD: f64 = 1e-10;
/// Tolerance on Hermiticity, trace and positivity of a density matrix.
pub const STATE_TOL: f64 = 1e-10;
/// Largest allowed `dt · max|S_ij|` for RK4.
pub const STABILITY_LIMIT: f64 = 0.1;

/// A validated two-qubit density matrix in the product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix4c);

impl DensityMatrix {
    pub fn new(m: Matrix4c) -> Result<Self> {
        let skew = crate::max_abs_diff(&m, &m.adjoint());
        if skew > STATE_TOL {
            return Err(Error::InvalidState {
                reason: "not Hermitian",
                deviation: skew,
            });
        }
        let trace_err = (m.trace() - C64::new(1.0, 0.0)).modulus();
        if trace_err > STATE_TOL {
            return Err(Error::InvalidState {
                reason: "trace differs from one",
                deviation: trace_err,
            });
        }
        let rho = Self(hermitize(&m));
        let min = rho.min_eigenvalue();
        if min < -STATE_TOL {
            return Err(Error::InvalidState {
                reason: "negative eigenvalue",
                deviation: -min,
            });
        }
        Ok(rho)
    }

    /// Wraps `m` without checking it.
    pub fn new_unchecked(m: Matrix4c) -> Self {
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4c::identity() * C64::new(0.25, 0.0))
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    pub fn into_inner(self) -> Matrix4c {
        self.0
    }

    /// `Tr[ρ O]`.
    pub fn expectation(&self, op: &Matrix4c) -> C64 {
        (self.0 * op).trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.0)
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// `½ Σ |λ_k(ρ − σ)|`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        0.5 * hermitian_eigenvalues(&(self.0 - other.0))
            .into_iter()
            .map(f64::abs)
            .sum::<f64>()
    }
}

fn hermitize(m: &Matrix4c) -> Matrix4c {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn hermitian_eigenvalues(m: &Matrix4c) -> [f64; 4] {
    hermitize(m).symmetric_eigenvalues().into()
}

/// Null-space steady state of a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadySolution {
    pub rho: DensityMatrix,
    /// `‖S vec(ρ)‖₂`.
    pub residual: f64,
    pub nullspace_dim: usize,
}

/// Right singular vectors of `s` whose singular values fall under the cutoff,
/// plus the singular values in descending order.
pub fn null_space(s: &Superoperator) -> (Vec<Vector16c>, [f64; 16]) {
    let svd = s.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: [usize; 16] = core::array::from_fn(|k| k);
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sorted: [f64; 16] = order.map(|k| svd.singular_values[k]);
    let cutoff = NULL_THRESHOLD * sorted[0];
    let null = order
        .iter()
        .filter(|&&k| svd.singular_values[k] <= cutoff)
        .map(|&k| v_t.row(k).adjoint())
        .collect();
    (null, sorted)
}

pub fn steady_state(gen: &Generator) -> Result<SteadySolution> {
    let (mut null, _) = null_space(&gen.superoperator);
    if null.len() != 1 {
        return Err(Error::DegenerateSteadyState { null_vectors: null });
    }
    let v = null.pop().expect("one null vector");
    let m = unvectorize(&v);
    let trace = m.trace();
    if trace.modulus() < 1e-8 * m.norm() {
        return Err(Error::Infeasible {
            reason: "null vector is traceless",
        });
    }
    let rho = hermitize(&(m / trace));
    let rho = DensityMatrix(rho / rho.trace());
    if rho.min_eigenvalue() < -STATE_TOL {
        return Err(Error::Infeasible {
            reason: "null vector is not positive semidefinite",
        });
    }
    let residual = (gen.superoperator * vectorize(rho.matrix())).norm();
    Ok(SteadySolution {
        rho,
        residual,
        nullspace_dim: 1,
    })
}

/// Time after which evolution from any state is settled: 200 lifetimes of
/// the slowest non-negligible emission channel.
pub fn relaxation_horizon(gen: &Generator) -> f64 {
    let max = gen.max_rate();
    let slowest = gen
        .channels
        .iter()
        .filter(|ch| ch.frequency > 0.0 && ch.weight > 1e-9 * max)
        .map(|ch| ch.weight)
        .fold(f64::INFINITY, f64::min);
    200.0 / slowest
}

/// RK4 step that keeps `dt · max|S_ij|` a hundredth.
pub fn default_step(gen: &Generator) -> f64 {
    let m = gen.max_entry();
    if m > 0.0 {
        0.01 / m
    } else {
        1.0
    }
}

pub fn evolve(
    gen: &Generator,
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    let product = dt * gen.max_entry();
    if !(dt > 0.0) || !dt.is_finite() || !(product < STABILITY_LIMIT) {
        return Err(Error::StepSize { dt, product });
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::Domain {
            what: "evolve final time",
            value: t_final,
        });
    }
    if t_final == 0.0 {
        return Ok(*rho0);
    }
    let steps = ceil(t_final / dt);
    if steps > (u64::MAX >> 1) as f64 {
        return Err(Error::StepSize { dt, product });
    }
    let mut steps = steps as u64;
    let h = t_final / steps as f64;
    let mut power = rk4_propagator(&gen.superoperator, h);
    let mut v = vectorize(rho0.matrix());
    while steps > 0 {
        if steps & 1 == 1 {
            v = power * v;
        }
        steps >>= 1;
        if steps > 0 {
            power = power * power;
        }
    }
    Ok(DensityMatrix(hermitize(&unvectorize(&v))))
}

fn rk4_propagator(s: &Superoperator, h: f64) -> Superoperator {
    let hs = s * C64::new(h, 0.0);
    let hs2 = hs * hs;
    let hs3 = hs2 * hs;
    let hs4 = hs3 * hs;
    let c = |x: f64| C64::new(x, 0.0);
    Superoperator::identity() + hs + hs2 * c(0.5) + hs3 * c(1.0 / 6.0) + hs4 * c(1.0 / 24.0)
}

/// Thermal state `e^{−H/T}/Z` of a Hermitian operator.
pub fn gibbs(hamiltonian: &Matrix4c, temperature: f64) -> Result<DensityMatrix> {
    if !(temperature > 0.0) {
        return Err(Error::Domain {
            what: "gibbs temperature",
            value: temperature,
        });
    }
    let eig = hermitize(hamiltonian).symmetric_eigen();
    let e_min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let weights = eig
        .eigenvalues
        .map(|e| Complex::new(exp(-(e - e_min) / temperature), 0.0));
    let z: C64 = weights.sum();
    let v = eig.eigenvectors;
    let rho = v * Matrix4c::from_diagonal(&weights) * v.adjoint() / z;
    Ok(DensityMatrix(hermitize(&rho)))
}
