//! Named runs for the standard current and rectification maps.
//!
//! | preset      | axes                      | fixed                                   |
//! |-------------|---------------------------|-----------------------------------------|
//! | fig4a/fig4b | `t_l`, `t_r` ∈ [0.01, 10] | g = 0.01 / 1, currents                  |
//! | fig4c/fig4d | `t_l`, `t_r` ∈ [0.01, 10] | g = 0.01 / 1, rectification             |
//! | fig5a/fig5b | `omega_l`, `omega_r` ∈ [0.05, 2] | g = 0.5 / 1, T_L = 2, T_R = 1    |
//! | fig5c/fig5d | `omega_l`, `omega_r` ∈ [0.05, 2] | g = 0.5 / 1, T_L = 10, T_R = 0.5 |
//! | fig6a–c     | `omega_l`, `omega_r` ∈ [0.05, 2] | g = 1, T_L = 10, T_R = 0.5; κ_LR = κ_RL = 0, 0.005, 0.01 |
//!
//! Unless listed, ω_L = ω_R = 1, κ_LL = κ_RR = 0.01, no cross couplings and a
//! flat spectrum.

use std::fmt;

use qdiode_core::{BathSpec, CouplingRates, SpectralKind, SystemSpec};

use crate::config::{Mode, OutputSpec, Param, RunSpec, SweepAxis};

pub const DEFAULT_GRID: usize = 101;

pub const PRESET_NAMES: [&str; 11] = [
    "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b", "fig5c", "fig5d", "fig6a", "fig6b",
    "fig6c",
];

/// Temperature axes start above zero so absorption rates stay well defined.
pub const T_RANGE: (f64, f64) = (0.01, 10.0);
pub const OMEGA_RANGE: (f64, f64) = (0.05, 2.0);
pub const KAPPA: f64 = 0.01;

const FIG5_G_WARNING: &str = "fig5: the left-column maps (a, c) are quoted with both g = 0.5 and \
g = 0.01; this preset uses g = 0.5";

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub spec: RunSpec,
    pub warnings: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct UnknownPreset(pub String);

impl fmt::Display for UnknownPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown preset `{}` (expected one of {})",
            self.0,
            PRESET_NAMES.join(", ")
        )
    }
}

fn spec(
    g: f64,
    t: (f64, f64),
    kappa: CouplingRates,
    axes: [Param; 2],
    range: (f64, f64),
    mode: Mode,
) -> RunSpec {
    RunSpec {
        system: SystemSpec {
            omega_l: 1.0,
            omega_r: 1.0,
            g,
        },
        baths: BathSpec {
            t_left: t.0,
            t_right: t.1,
            kind: SpectralKind::Flat,
            kappa,
        },
        axes: axes
            .map(|p| SweepAxis::new(p, range.0, range.1, DEFAULT_GRID))
            .to_vec(),
        mode,
        output: OutputSpec::default(),
    }
}

fn temperature_map(g: f64, mode: Mode) -> RunSpec {
    let t = (f64::NAN, f64::NAN);
    spec(
        g,
        t,
        CouplingRates::local(KAPPA, KAPPA),
        [Param::TLeft, Param::TRight],
        T_RANGE,
        mode,
    )
}

fn frequency_map(g: f64, t: (f64, f64), cross: f64) -> RunSpec {
    let kappa = CouplingRates {
        ll: KAPPA,
        lr: cross,
        rl: cross,
        rr: KAPPA,
    };
    spec(
        g,
        t,
        kappa,
        [Param::OmegaL, Param::OmegaR],
        OMEGA_RANGE,
        Mode::RectificationMap,
    )
}

/// Looks up a preset with `grid` points per axis.
pub fn preset(name: &str, grid: usize) -> Result<Preset, UnknownPreset> {
    use Mode::{RectificationMap, Sweep};
    let (name, spec) = match name {
        "fig4a" => ("fig4a", temperature_map(0.01, Sweep)),
        "fig4b" => ("fig4b", temperature_map(1.0, Sweep)),
        "fig4c" => ("fig4c", temperature_map(0.01, RectificationMap)),
        "fig4d" => ("fig4d", temperature_map(1.0, RectificationMap)),
        "fig5a" => ("fig5a", frequency_map(0.5, (2.0, 1.0), 0.0)),
        "fig5b" => ("fig5b", frequency_map(1.0, (2.0, 1.0), 0.0)),
        "fig5c" => ("fig5c", frequency_map(0.5, (10.0, 0.5), 0.0)),
        "fig5d" => ("fig5d", frequency_map(1.0, (10.0, 0.5), 0.0)),
        "fig6a" => ("fig6a", frequency_map(1.0, (10.0, 0.5), 0.0)),
        "fig6b" => ("fig6b", frequency_map(1.0, (10.0, 0.5), KAPPA / 2.0)),
        "fig6c" => ("fig6c", frequency_map(1.0, (10.0, 0.5), KAPPA)),
        other => return Err(UnknownPreset(other.to_owned())),
    };
    let warnings = if name.starts_with("fig5") {
        vec![FIG5_G_WARNING]
    } else {
        vec![]
    };
    Ok(Preset {
        name,
        spec: spec.with_grid(grid),
        warnings,
    })
}
