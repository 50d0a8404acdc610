//! Pauli algebra, the bare and dressed two-qubit Hamiltonians and the dressing
//! transformation.
//!
//! The coupled Hamiltonian
//!
//! ```text
//! H = (ω_L/2) σ_L^z + (ω_R/2) σ_R^z + g σ_L^z σ_R^x
//! ```
//!
//! is a right-qubit rotation about `y` whose sense is conditioned on `σ_L^z`.
//! With `U = exp(−i θ/2 σ_L^z σ_R^y)`, `tan θ = 2g/ω_R` and `Ω = √(ω_R² + 4g²)`,
//! the dressed operators `σ̃ = U σ U†` satisfy `H = (ω_L/2) σ̃_L^z + (Ω/2) σ̃_R^z`
//! as an operator identity, and `U† H U` is diagonal in the product basis.
//!
//! Sign convention: `σ̃_R^z = cos θ σ_R^z + sin θ σ_L^z σ_R^x`. This is the sign
//! that makes `σ̃_R^z` a conjugation by the same `U` as `σ̃_R^x`, and the one that
//! makes the bare-form right heat current carry `+ sin θ ⟨σ_L^z σ_R^x⟩`. The
//! dressed eigenstates follow the same convention, `|k⟩ = U |bare k⟩`, e.g.
//! `|1⟩ = cos(θ/2)|++⟩ + sin(θ/2)|+−⟩`. Writing the opposite sign on the
//! `sin(θ/2)` terms describes the `g → −g` Hamiltonian instead; observables
//! are unaffected, but eigenvector residuals are not.

use libm::{atan2, cos, hypot, sin};
use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::{Matrix2c, Matrix4c, Vector4c, C64};

const ZERO: C64 = Complex { re: 0.0, im: 0.0 };
const ONE: C64 = Complex { re: 1.0, im: 0.0 };
const I: C64 = Complex { re: 0.0, im: 1.0 };

fn re(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

/// Single-qubit operator selector. `Plus` raises, `Minus` lowers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

/// Which qubit an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Left,
    Right,
}

impl Site {
    pub const BOTH: [Site; 2] = [Site::Left, Site::Right];
}

/// Sign of a ladder operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    Raise,
    Lower,
}

/// Pauli or ladder matrix in the `(|+⟩, |−⟩)` basis, excited state first.
pub fn pauli(axis: Axis) -> Matrix2c {
    match axis {
        Axis::X => Matrix2c::new(ZERO, ONE, ONE, ZERO),
        Axis::Y => Matrix2c::new(ZERO, -I, I, ZERO),
        Axis::Z => Matrix2c::new(ONE, ZERO, ZERO, -ONE),
        Axis::Plus => Matrix2c::new(ZERO, ONE, ZERO, ZERO),
        Axis::Minus => Matrix2c::new(ZERO, ZERO, ONE, ZERO),
    }
}

/// Kronecker product of two single-qubit operators, left factor first.
pub fn kron(left: &Matrix2c, right: &Matrix2c) -> Matrix4c {
    Matrix4c::from_fn(|r, c| left[(r / 2, c / 2)] * right[(r % 2, c % 2)])
}

/// `op ⊗ I` for the left site, `I ⊗ op` for the right.
pub fn embed(op: &Matrix2c, site: Site) -> Matrix4c {
    let id = Matrix2c::identity();
    match site {
        Site::Left => kron(op, &id),
        Site::Right => kron(&id, op),
    }
}

fn sigma(site: Site, axis: Axis) -> Matrix4c {
    embed(&pauli(axis), site)
}

/// Qubit frequencies and Raman coupling, all in one frequency unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub omega_l: f64,
    pub omega_r: f64,
    pub g: f64,
}

impl SystemSpec {
    pub fn new(omega_l: f64, omega_r: f64, g: f64) -> Result<Self> {
        let spec = Self {
            omega_l,
            omega_r,
            g,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("omega_l", self.omega_l),
            ("omega_r", self.omega_r),
            ("g", self.g),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and nonnegative",
                });
            }
        }
        if self.omega_l == 0.0 && self.omega_r == 0.0 && self.g == 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega_l",
                value: 0.0,
                reason: "omega_l, omega_r and g cannot all vanish",
            });
        }
        Ok(())
    }

    /// `Ω = √(ω_R² + 4g²)`.
    pub fn omega_big(&self) -> f64 {
        dressed_frequency(self.omega_r, self.g)
    }
}

pub fn dressed_frequency(omega_r: f64, g: f64) -> f64 {
    hypot(omega_r, 2.0 * g)
}

/// `(ω_L/2) σ_L^z + (ω_R/2) σ_R^z + g σ_L^z σ_R^x`.
pub fn bare_hamiltonian(spec: &SystemSpec) -> Matrix4c {
    sigma(Site::Left, Axis::Z) * re(spec.omega_l / 2.0)
        + sigma(Site::Right, Axis::Z) * re(spec.omega_r / 2.0)
        + sigma(Site::Left, Axis::Z) * sigma(Site::Right, Axis::X) * re(spec.g)
}

/// Mixing angle with `sin θ = 2g/Ω`, `cos θ = ω_R/Ω`.
///
/// Lies in `[0, π/2]` for nonnegative inputs; other quadrants follow `atan2`.
pub fn mixing_angle(omega_r: f64, g: f64) -> Result<f64> {
    if omega_r == 0.0 && g == 0.0 {
        return Err(Error::DegenerateAngle { omega_r, g });
    }
    Ok(atan2(2.0 * g, omega_r))
}

/// `U(θ) = exp(−i θ/2 σ_L^z σ_R^y) = cos(θ/2) I − i sin(θ/2) σ_L^z σ_R^y`.
pub fn dressing_unitary(theta: f64) -> Matrix4c {
    let generator = sigma(Site::Left, Axis::Z) * sigma(Site::Right, Axis::Y);
    Matrix4c::identity() * re(cos(theta / 2.0)) - generator * (I * sin(theta / 2.0))
}

/// `diag(ω_1, ω_2, ω_3, ω_4)`: the Hamiltonian in the dressed eigenbasis.
pub fn dressed_hamiltonian(spec: &SystemSpec) -> Matrix4c {
    let [w1, w2, w3, w4] = dressed_eigenvalues(spec.omega_l, spec.omega_big());
    Matrix4c::from_diagonal(&Vector4c::new(re(w1), re(w2), re(w3), re(w4)))
}

fn dressed_eigenvalues(omega_l: f64, omega_big: f64) -> [f64; 4] {
    [
        0.5 * (omega_l + omega_big),
        0.5 * (omega_l - omega_big),
        0.5 * (-omega_l + omega_big),
        0.5 * (-omega_l - omega_big),
    ]
}

/// Dressed Pauli operator `U σ U†` written out in closed form.
///
/// `axis` must be `X`, `Y` or `Z`; ladder axes are built by [`ladder`].
pub fn dressed_sigma(site: Site, axis: Axis, theta: f64) -> Matrix4c {
    let (c, s) = (re(cos(theta)), re(sin(theta)));
    let p = |site, axis| sigma(site, axis);
    use Axis::*;
    use Site::*;
    match (site, axis) {
        (Left, X) => p(Left, X) * c + p(Left, Y) * p(Right, Y) * s,
        (Left, Y) => p(Left, Y) * c - p(Left, X) * p(Right, Y) * s,
        (Left, Z) => p(Left, Z),
        (Right, X) => p(Right, X) * c - p(Left, Z) * p(Right, Z) * s,
        (Right, Y) => p(Right, Y),
        (Right, Z) => p(Right, Z) * c + p(Left, Z) * p(Right, X) * s,
        (_, Plus) => ladder(site, Ladder::Raise, theta),
        (_, Minus) => ladder(site, Ladder::Lower, theta),
    }
}

/// Dressed ladder operator `σ̃^± = (σ̃^x ± i σ̃^y)/2`.
pub fn ladder(site: Site, sign: Ladder, theta: f64) -> Matrix4c {
    let x = dressed_sigma(site, Axis::X, theta);
    let y = dressed_sigma(site, Axis::Y, theta);
    let phase = match sign {
        Ladder::Raise => I,
        Ladder::Lower => -I,
    };
    (x + y * phase) * re(0.5)
}

/// Transition frequencies `ω_ij = ω_i − ω_j` between dressed levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionFrequencies {
    pub w13: f64,
    pub w24: f64,
    pub w14: f64,
    pub w23: f64,
    pub w12: f64,
    pub w34: f64,
}

/// Everything derived from diagonalizing one [`SystemSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct DressedFrame {
    pub spec: SystemSpec,
    pub theta: f64,
    pub omega_big: f64,
    pub unitary: Matrix4c,
    /// `|1⟩..|4⟩` in the product basis.
    pub eigenstates: [Vector4c; 4],
    pub eigenvalues: [f64; 4],
    pub transitions: TransitionFrequencies,
    /// `H̃` in the product basis (numerically the bare Hamiltonian).
    pub hamiltonian: Matrix4c,
}

impl DressedFrame {
    pub fn cos2(&self) -> f64 {
        let c = cos(self.theta);
        c * c
    }

    pub fn sin2(&self) -> f64 {
        let s = sin(self.theta);
        s * s
    }

    pub fn ladder(&self, site: Site, sign: Ladder) -> Matrix4c {
        ladder(site, sign, self.theta)
    }

    pub fn sigma(&self, site: Site, axis: Axis) -> Matrix4c {
        dressed_sigma(site, axis, self.theta)
    }

    /// Smallest gap between distinct dressed levels.
    pub fn min_level_spacing(&self) -> f64 {
        let mut min = f64::INFINITY;
        for i in 0..4 {
            for j in (i + 1)..4 {
                min = min.min((self.eigenvalues[i] - self.eigenvalues[j]).abs());
            }
        }
        min
    }
}

pub fn eigensystem(spec: &SystemSpec) -> Result<DressedFrame> {
    let theta = mixing_angle(spec.omega_r, spec.g)?;
    let omega_big = spec.omega_big();
    let (c, s) = (re(cos(theta / 2.0)), re(sin(theta / 2.0)));
    let eigenstates = [
        Vector4c::new(c, s, ZERO, ZERO),
        Vector4c::new(-s, c, ZERO, ZERO),
        Vector4c::new(ZERO, ZERO, c, -s),
        Vector4c::new(ZERO, ZERO, s, c),
    ];
    let eigenvalues = dressed_eigenvalues(spec.omega_l, omega_big);
    let w = |i: usize, j: usize| eigenvalues[i - 1] - eigenvalues[j - 1];
    let transitions = TransitionFrequencies {
        w13: w(1, 3),
        w24: w(2, 4),
        w14: w(1, 4),
        w23: w(2, 3),
        w12: w(1, 2),
        w34: w(3, 4),
    };
    Ok(DressedFrame {
        spec: *spec,
        theta,
        omega_big,
        unitary: dressing_unitary(theta),
        eigenstates,
        eigenvalues,
        transitions,
        hamiltonian: bare_hamiltonian(spec),
    })
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &Matrix4c, b: &Matrix4c) -> Matrix4c {
    a * b - b * a
}

#[cfg(test)]
mod tests {
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use proptest::prelude::*;

    use nalgebra::ComplexField;

    use super::*;
    use crate::max_abs_diff;

    const TOL: f64 = 1e-12;

    fn spec(l: f64, r: f64, g: f64) -> SystemSpec {
        SystemSpec::new(l, r, g).unwrap()
    }

    fn diag(d: [f64; 4]) -> Matrix4c {
        Matrix4c::from_diagonal(&Vector4c::new(re(d[0]), re(d[1]), re(d[2]), re(d[3])))
    }

    fn basis(k: usize) -> Vector4c {
        let mut v = Vector4c::zeros();
        v[k] = ONE;
        v
    }

    #[test]
    fn pauli_basics() {
        let z = pauli(Axis::Z);
        assert_eq!(z, Matrix2c::new(ONE, ZERO, ZERO, -ONE));
        let ground = nalgebra::Vector2::new(ZERO, ONE);
        let excited = nalgebra::Vector2::new(ONE, ZERO);
        assert_eq!(pauli(Axis::Plus) * ground, excited);
        assert_eq!(pauli(Axis::Minus) * excited, ground);
        assert_eq!(pauli(Axis::X) * pauli(Axis::X), Matrix2c::identity());
        let ladder_sum = (pauli(Axis::X) + pauli(Axis::Y) * I) * re(0.5);
        assert_eq!(ladder_sum, pauli(Axis::Plus));
    }

    #[test]
    fn embedding() {
        assert_eq!(sigma(Site::Left, Axis::Z), diag([1.0, 1.0, -1.0, -1.0]));
        assert_eq!(
            embed(&Matrix2c::identity(), Site::Right),
            Matrix4c::identity()
        );
        let zx = kron(&pauli(Axis::Z), &pauli(Axis::X));
        assert_eq!(sigma(Site::Left, Axis::Z) * sigma(Site::Right, Axis::X), zx);
    }

    #[test]
    fn bare_hamiltonian_examples() {
        assert_eq!(
            bare_hamiltonian(&spec(1.0, 1.0, 0.0)),
            diag([1.0, 0.0, 0.0, -1.0])
        );
        let zx = kron(&pauli(Axis::Z), &pauli(Axis::X));
        assert_eq!(bare_hamiltonian(&spec(0.0, 0.0, 1.0)), zx);

        // Dense Hermitian eigensolve against the closed-form levels ±(ω_L ± Ω)/2.
        let h = bare_hamiltonian(&spec(1.0, 1.0, 1.0));
        let mut numeric: [f64; 4] = h.symmetric_eigen().eigenvalues.into();
        numeric.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let om = 5f64.sqrt();
        let mut expected = [
            (1.0 + om) / 2.0,
            (-1.0 + om) / 2.0,
            (1.0 - om) / 2.0,
            (-1.0 - om) / 2.0,
        ];
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (n, e) in numeric.iter().zip(expected) {
            assert!((n - e).abs() < TOL, "{n} vs {e}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(SystemSpec::new(0.0, 0.0, 0.0).is_err());
        assert!(SystemSpec::new(-1.0, 1.0, 0.0).is_err());
        assert!(SystemSpec::new(f64::NAN, 1.0, 0.0).is_err());
        assert!(SystemSpec::new(1.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn mixing_angle_examples() {
        assert_eq!(mixing_angle(1.0, 0.0).unwrap(), 0.0);
        assert!((mixing_angle(1.0, 0.5).unwrap() - FRAC_PI_4).abs() < TOL);
        assert!((mixing_angle(0.0, 1.0).unwrap() - FRAC_PI_2).abs() < TOL);
        assert_eq!(
            mixing_angle(0.0, 0.0),
            Err(Error::DegenerateAngle {
                omega_r: 0.0,
                g: 0.0
            })
        );
    }

    #[test]
    fn dressing_unitary_examples() {
        assert!(max_abs_diff(&dressing_unitary(0.0), &Matrix4c::identity()) < TOL);
        let prod = dressing_unitary(0.7) * dressing_unitary(-0.7);
        assert!(max_abs_diff(&prod, &Matrix4c::identity()) < TOL);
    }

    #[test]
    fn unitary_diagonalizes_bare_hamiltonian() {
        // Reference built independently from bare Pauli matrices.
        let s = spec(1.0, 1.0, 1.0);
        let om = s.omega_big();
        let reference =
            sigma(Site::Left, Axis::Z) * re(0.5) + sigma(Site::Right, Axis::Z) * re(om / 2.0);
        let u = dressing_unitary(mixing_angle(1.0, 1.0).unwrap());
        let rotated = u.adjoint() * bare_hamiltonian(&s) * u;
        assert!(max_abs_diff(&rotated, &reference) < TOL);
        assert!(max_abs_diff(&rotated, &dressed_hamiltonian(&s)) < TOL);
    }

    #[test]
    fn dressed_hamiltonian_examples() {
        assert_eq!(
            dressed_hamiltonian(&spec(1.0, 1.0, 0.0)),
            bare_hamiltonian(&spec(1.0, 1.0, 0.0))
        );
        let om = 5f64.sqrt();
        let expected = diag([
            (1.0 + om) / 2.0,
            (1.0 - om) / 2.0,
            (-1.0 + om) / 2.0,
            (-1.0 - om) / 2.0,
        ]);
        assert!(max_abs_diff(&dressed_hamiltonian(&spec(1.0, 1.0, 1.0)), &expected) < TOL);
        assert!(dressed_hamiltonian(&spec(0.3, 2.0, 0.7)).trace().modulus() < TOL);
    }

    #[test]
    fn hamiltonian_in_dressed_operators() {
        let s = spec(0.8, 1.3, 0.6);
        let f = eigensystem(&s).unwrap();
        let rebuilt = f.sigma(Site::Left, Axis::Z) * re(s.omega_l / 2.0)
            + f.sigma(Site::Right, Axis::Z) * re(f.omega_big / 2.0);
        assert!(max_abs_diff(&rebuilt, &bare_hamiltonian(&s)) < TOL);
    }

    #[test]
    fn dressed_sigma_fixed_components() {
        for theta in [0.0, 0.4, 1.1, 2.5] {
            assert_eq!(
                dressed_sigma(Site::Left, Axis::Z, theta),
                sigma(Site::Left, Axis::Z)
            );
            assert_eq!(
                dressed_sigma(Site::Right, Axis::Y, theta),
                sigma(Site::Right, Axis::Y)
            );
        }
    }

    #[test]
    fn dressed_sigma_matches_conjugation() {
        for theta in [0.0, 0.3, FRAC_PI_2, 2.0, -1.2] {
            let u = dressing_unitary(theta);
            for site in Site::BOTH {
                for axis in [Axis::X, Axis::Y, Axis::Z, Axis::Plus, Axis::Minus] {
                    let conj = u * sigma(site, axis) * u.adjoint();
                    let closed = dressed_sigma(site, axis, theta);
                    assert!(
                        max_abs_diff(&conj, &closed) < TOL,
                        "{site:?} {axis:?} θ={theta}"
                    );
                }
            }
        }
    }

    #[test]
    fn eigensystem_examples() {
        let f = eigensystem(&spec(1.0, 1.0, 0.0)).unwrap();
        for k in 0..4 {
            assert!(max_abs_diff(&f.eigenstates[k], &basis(k)) < TOL);
        }
        assert_eq!(f.transitions.w23, 0.0);

        let f = eigensystem(&spec(1.0, 1.0, 1.0)).unwrap();
        let om = 5f64.sqrt();
        assert!((f.transitions.w14 - (1.0 + om)).abs() < TOL);
        assert!((f.transitions.w23 - (1.0 - om)).abs() < TOL);
        assert_eq!(f.transitions.w13, 1.0);
        assert_eq!(f.transitions.w24, 1.0);
        assert!((f.transitions.w12 - om).abs() < TOL);
        assert!((f.transitions.w34 - om).abs() < TOL);

        assert!(matches!(
            eigensystem(&spec(1.0, 0.0, 0.0)),
            Err(Error::DegenerateAngle { .. })
        ));
    }

    #[test]
    fn eigenstates_are_rotated_product_states() {
        let f = eigensystem(&spec(1.0, 0.4, 0.9)).unwrap();
        for k in 0..4 {
            assert!(max_abs_diff(&f.eigenstates[k], &(f.unitary * basis(k))) < TOL);
        }
    }

    #[test]
    fn eigenvalue_ordering() {
        let f = eigensystem(&spec(0.7, 1.5, 0.2)).unwrap();
        let w = f.eigenvalues;
        assert!(w[0] >= w[1] && w[0] >= w[2] && w[2] >= w[3]);
    }

    #[test]
    fn ladder_examples() {
        assert_eq!(
            ladder(Site::Right, Ladder::Lower, 0.0),
            sigma(Site::Right, Axis::Minus)
        );
        for site in Site::BOTH {
            let lo = ladder(site, Ladder::Lower, 0.9);
            let hi = ladder(site, Ladder::Raise, 0.9);
            assert!(max_abs_diff(&lo.adjoint(), &hi) < TOL);
        }
        let f = eigensystem(&spec(1.0, 1.0, 1.0)).unwrap();
        let lo = f.ladder(Site::Right, Ladder::Lower);
        let comm = commutator(&f.hamiltonian, &lo);
        assert!(max_abs_diff(&comm, &(lo * re(-f.omega_big))) < TOL);
        let lo = f.ladder(Site::Left, Ladder::Lower);
        let comm = commutator(&f.hamiltonian, &lo);
        assert!(max_abs_diff(&comm, &(lo * re(-1.0))) < TOL);
    }

    /// Closed-form transformation with the dressed and bare roles swapped.
    fn back_transform(site: Site, axis: Axis, theta: f64) -> Matrix4c {
        let (c, s) = (re(cos(-theta)), re(sin(-theta)));
        let d = |site, axis| dressed_sigma(site, axis, theta);
        use Axis::*;
        use Site::*;
        match (site, axis) {
            (Left, X) => d(Left, X) * c + d(Left, Y) * d(Right, Y) * s,
            (Left, Y) => d(Left, Y) * c - d(Left, X) * d(Right, Y) * s,
            (Left, Z) => d(Left, Z),
            (Right, X) => d(Right, X) * c - d(Left, Z) * d(Right, Z) * s,
            (Right, Y) => d(Right, Y),
            (Right, Z) => d(Right, Z) * c + d(Left, Z) * d(Right, X) * s,
            _ => unreachable!(),
        }
    }

    proptest! {
        #[test]
        fn unitarity(theta in 0.0..(2.0 * PI)) {
            let u = dressing_unitary(theta);
            prop_assert!(max_abs_diff(&(u * u.adjoint()), &Matrix4c::identity()) < TOL);
        }

        #[test]
        fn diagonalization(l in 0.0..5.0f64, r in 0.0..5.0f64, g in 0.0..5.0f64) {
            prop_assume!(r > 0.0 || g > 0.0);
            let s = spec(l, r, g);
            let f = eigensystem(&s).unwrap();
            let rotated = f.unitary.adjoint() * bare_hamiltonian(&s) * f.unitary;
            prop_assert!(max_abs_diff(&rotated, &dressed_hamiltonian(&s)) < TOL);
        }

        #[test]
        fn eigenstate_residuals(l in 0.0..5.0f64, r in 0.0..5.0f64, g in 0.0..5.0f64) {
            prop_assume!(r > 0.0 || g > 0.0);
            let f = eigensystem(&spec(l, r, g)).unwrap();
            for k in 0..4 {
                let v = f.eigenstates[k];
                let residual = f.hamiltonian * v - v * re(f.eigenvalues[k]);
                prop_assert!(residual.norm() < TOL);
                for m in 0..4 {
                    let overlap = f.eigenstates[m].dotc(&v);
                    let expected = if m == k { 1.0 } else { 0.0 };
                    prop_assert!((overlap - re(expected)).modulus() < TOL);
                }
            }
        }

        #[test]
        fn back_transformation_recovers_bare(theta in -PI..PI) {
            for site in Site::BOTH {
                for axis in [Axis::X, Axis::Y, Axis::Z] {
                    let back = back_transform(site, axis, theta);
                    prop_assert!(max_abs_diff(&back, &sigma(site, axis)) < TOL);
                }
            }
        }

        #[test]
        fn dressed_paulis_square_to_identity(theta in -PI..PI) {
            for site in Site::BOTH {
                for axis in [Axis::X, Axis::Y, Axis::Z] {
                    let m = dressed_sigma(site, axis, theta);
                    prop_assert!(max_abs_diff(&(m * m), &Matrix4c::identity()) < TOL);
                }
            }
        }
    }
}
