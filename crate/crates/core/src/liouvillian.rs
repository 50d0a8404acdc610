//! Global (dressed-state) Lindblad generator.
//!
//! Each qubit–bath pair `(i, j)` contributes a block `L_ij` of weighted
//! dissipators on the dressed ladder operators. The left-qubit block carries
//! six channels (local `±ω_L`, flip-flop `±ω_23`, Raman `±ω_14`) and the
//! right-qubit block two (local `±Ω`). Local baths are the special case
//! `κ_LR = κ_RL = 0`; overlapping baths reuse the same channel structure with
//! `G_ij` evaluated at bath `j`'s temperature.
//!
//! Superoperators act on column-stacked density matrices:
//! `vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ)`.

use alloc::vec::Vec;

use nalgebra::{Complex, ComplexField};

use crate::error::Result;
use crate::operators::{eigensystem, DressedFrame, Ladder, Site, SystemSpec};
use crate::spectrum::{Bath, BathSpec};
use crate::{Matrix4c, Superoperator, Vector16c, C64};

/// Which of the eight dressed jump operators a channel uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// `σ̃_L^−` at `+ω_L`.
    LeftLower,
    /// `σ̃_L^+` at `−ω_L`.
    LeftRaise,
    /// `σ̃_L^− σ̃_R^+` at `+ω_23`.
    FlipFlopLower,
    /// `σ̃_L^+ σ̃_R^−` at `−ω_23`.
    FlipFlopRaise,
    /// `σ̃_L^− σ̃_R^−` at `+ω_14`.
    RamanLower,
    /// `σ̃_L^+ σ̃_R^+` at `−ω_14`.
    RamanRaise,
    /// `σ̃_R^−` at `+Ω`.
    RightLower,
    /// `σ̃_R^+` at `−Ω`.
    RightRaise,
}

impl ChannelKind {
    /// Channels that move energy between the two baths.
    pub fn is_global(self) -> bool {
        matches!(
            self,
            Self::FlipFlopLower | Self::FlipFlopRaise | Self::RamanLower | Self::RamanRaise
        )
    }
}

/// One weighted dissipator `weight · D[jump]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub jump: Matrix4c,
    pub weight: f64,
    pub kind: ChannelKind,
    pub qubit: Site,
    pub bath: Bath,
    /// Signed frequency at which the response function was evaluated.
    pub frequency: f64,
}

/// `A ρ A† − ½ (A†A ρ + ρ A†A)`.
pub fn dissipator(jump: &Matrix4c, rho: &Matrix4c) -> Matrix4c {
    let ada = jump.adjoint() * jump;
    jump * rho * jump.adjoint() - (ada * rho + rho * ada) * Complex::new(0.5, 0.0)
}

/// Column-stacking Kronecker product `a ⊗ b` of two 4×4 operators.
fn kron4(a: &Matrix4c, b: &Matrix4c) -> Superoperator {
    Superoperator::from_fn(|r, c| a[(r / 4, c / 4)] * b[(r % 4, c % 4)])
}

/// Superoperator of [`dissipator`]: `Ā ⊗ A − ½ I ⊗ A†A − ½ (A†A)ᵀ ⊗ I`.
pub fn dissipator_superoperator(jump: &Matrix4c) -> Superoperator {
    let id = Matrix4c::identity();
    let ada = jump.adjoint() * jump;
    let half = Complex::new(0.5, 0.0);
    kron4(&jump.conjugate(), jump) - (kron4(&id, &ada) + kron4(&ada.transpose(), &id)) * half
}

/// Superoperator of `ρ ↦ −i [H, ρ]`.
pub fn commutator_superoperator(hamiltonian: &Matrix4c) -> Superoperator {
    let id = Matrix4c::identity();
    let minus_i = Complex::new(0.0, -1.0);
    (kron4(&id, hamiltonian) - kron4(&hamiltonian.transpose(), &id)) * minus_i
}

pub fn vectorize(rho: &Matrix4c) -> Vector16c {
    Vector16c::from_column_slice(rho.as_slice())
}

pub fn unvectorize(v: &Vector16c) -> Matrix4c {
    Matrix4c::from_column_slice(v.as_slice())
}

fn channel(
    frame: &DressedFrame,
    baths: &BathSpec,
    qubit: Site,
    bath: Bath,
    kind: ChannelKind,
) -> Channel {
    use ChannelKind::*;
    use Ladder::{Lower, Raise};
    let t = &frame.transitions;
    let lad = |site, sign| frame.ladder(site, sign);
    let (jump, frequency, trig) = match kind {
        LeftLower => (lad(Site::Left, Lower), t.w13, frame.cos2()),
        LeftRaise => (lad(Site::Left, Raise), -t.w13, frame.cos2()),
        FlipFlopLower => (
            lad(Site::Left, Lower) * lad(Site::Right, Raise),
            t.w23,
            frame.sin2(),
        ),
        FlipFlopRaise => (
            lad(Site::Left, Raise) * lad(Site::Right, Lower),
            -t.w23,
            frame.sin2(),
        ),
        RamanLower => (
            lad(Site::Left, Lower) * lad(Site::Right, Lower),
            t.w14,
            frame.sin2(),
        ),
        RamanRaise => (
            lad(Site::Left, Raise) * lad(Site::Right, Raise),
            -t.w14,
            frame.sin2(),
        ),
        RightLower => (lad(Site::Right, Lower), frame.omega_big, frame.cos2()),
        RightRaise => (lad(Site::Right, Raise), -frame.omega_big, frame.cos2()),
    };
    let weight = baths.response(qubit, bath, frequency) * trig;
    Channel {
        jump,
        weight,
        kind,
        qubit,
        bath,
        frequency,
    }
}

/// The six left-qubit channels `L_Lj` coupling to bath `bath`.
pub fn left_qubit_channels(frame: &DressedFrame, baths: &BathSpec, bath: Bath) -> [Channel; 6] {
    use ChannelKind::*;
    [
        LeftLower,
        LeftRaise,
        FlipFlopLower,
        FlipFlopRaise,
        RamanLower,
        RamanRaise,
    ]
    .map(|kind| channel(frame, baths, Site::Left, bath, kind))
}

/// The two right-qubit channels `L_Rj` coupling to bath `bath`.
pub fn right_qubit_channels(frame: &DressedFrame, baths: &BathSpec, bath: Bath) -> [Channel; 2] {
    use ChannelKind::*;
    [RightLower, RightRaise].map(|kind| channel(frame, baths, Site::Right, bath, kind))
}

/// Assembly switches.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeneratorOptions {
    /// Add `−i[H̃, ·]` to the total superoperator (Schrödinger picture).
    pub coherent: bool,
    /// Drop channels whose weight is below this value.
    pub prune_below: Option<f64>,
}

/// Assembled master-equation generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    /// Total generator, including the coherent part when requested.
    pub superoperator: Superoperator,
    /// Dissipative part contributed by each bath, indexed by [`Bath::index`].
    pub per_bath: [Superoperator; 2],
    pub channels: Vec<Channel>,
    pub frame: DressedFrame,
    pub spec: SystemSpec,
    pub baths: BathSpec,
    pub options: GeneratorOptions,
}

impl Generator {
    pub fn bath_part(&self, bath: Bath) -> &Superoperator {
        &self.per_bath[bath.index()]
    }

    pub fn apply(&self, rho: &Matrix4c) -> Matrix4c {
        unvectorize(&(self.superoperator * vectorize(rho)))
    }

    pub fn apply_bath(&self, bath: Bath, rho: &Matrix4c) -> Matrix4c {
        unvectorize(&(self.bath_part(bath) * vectorize(rho)))
    }

    /// Largest channel weight.
    pub fn max_rate(&self) -> f64 {
        self.channels.iter().map(|c| c.weight).fold(0.0, f64::max)
    }

    /// `|ω_23|` is small against the coupling rates, where the secular
    /// approximation behind the generator is questionable.
    pub fn near_degenerate(&self) -> bool {
        self.frame.transitions.w23.abs() < 10.0 * self.baths.kappa.max()
    }

    /// Largest absolute entry of the total superoperator.
    pub fn max_entry(&self) -> f64 {
        self.superoperator
            .iter()
            .map(|z| z.modulus())
            .fold(0.0, f64::max)
    }
}

pub fn assemble(spec: &SystemSpec, baths: &BathSpec) -> Result<Generator> {
    assemble_with(spec, baths, GeneratorOptions::default())
}

pub fn assemble_with(
    spec: &SystemSpec,
    baths: &BathSpec,
    options: GeneratorOptions,
) -> Result<Generator> {
    spec.validate()?;
    baths.validate()?;
    let frame = eigensystem(spec)?;
    let mut channels = Vec::with_capacity(16);
    let mut per_bath = [Superoperator::zeros(), Superoperator::zeros()];
    for bath in Bath::BOTH {
        let left = left_qubit_channels(&frame, baths, bath);
        let right = right_qubit_channels(&frame, baths, bath);
        for ch in left.into_iter().chain(right) {
            debug_assert!(ch.weight >= 0.0);
            if options.prune_below.is_some_and(|floor| ch.weight < floor) {
                continue;
            }
            if ch.weight != 0.0 {
                per_bath[bath.index()] +=
                    dissipator_superoperator(&ch.jump) * C64::new(ch.weight, 0.0);
            }
            channels.push(ch);
        }
    }
    let mut superoperator = per_bath[0] + per_bath[1];
    if options.coherent {
        superoperator += commutator_superoperator(&frame.hamiltonian);
    }
    Ok(Generator {
        superoperator,
        per_bath,
        channels,
        frame,
        spec: *spec,
        baths: *baths,
        options,
    })
}
