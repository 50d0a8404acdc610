//! Thermal occupations and bath spectral response functions.

use libm::expm1;

use crate::error::{Error, Result};
use crate::operators::Site;

/// How the qubit–bath rate scales with transition frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SpectralKind {
    /// `κ(ω) = κ`.
    #[default]
    Flat,
    /// `κ(ω) = κ ω`.
    Ohmic,
}

/// One of the two thermal reservoirs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bath {
    Left,
    Right,
}

impl Bath {
    pub const BOTH: [Bath; 2] = [Bath::Left, Bath::Right];

    pub fn index(self) -> usize {
        match self {
            Bath::Left => 0,
            Bath::Right => 1,
        }
    }
}

/// Coupling rates `κ_ij` of qubit `i` to bath `j`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CouplingRates {
    pub ll: f64,
    pub lr: f64,
    pub rl: f64,
    pub rr: f64,
}

impl CouplingRates {
    /// Each qubit sees only its own bath.
    pub fn local(kappa_ll: f64, kappa_rr: f64) -> Self {
        Self {
            ll: kappa_ll,
            lr: 0.0,
            rl: 0.0,
            rr: kappa_rr,
        }
    }

    pub fn get(&self, qubit: Site, bath: Bath) -> f64 {
        match (qubit, bath) {
            (Site::Left, Bath::Left) => self.ll,
            (Site::Left, Bath::Right) => self.lr,
            (Site::Right, Bath::Left) => self.rl,
            (Site::Right, Bath::Right) => self.rr,
        }
    }

    pub fn is_local(&self) -> bool {
        self.lr == 0.0 && self.rl == 0.0
    }

    pub fn max(&self) -> f64 {
        self.ll.max(self.lr).max(self.rl).max(self.rr)
    }
}

/// Bath temperatures, spectral shape and coupling map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    pub t_left: f64,
    pub t_right: f64,
    pub kind: SpectralKind,
    pub kappa: CouplingRates,
}

impl BathSpec {
    pub fn new(
        t_left: f64,
        t_right: f64,
        kind: SpectralKind,
        kappa: CouplingRates,
    ) -> Result<Self> {
        let spec = Self {
            t_left,
            t_right,
            kind,
            kappa,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("t_l", self.t_left),
            ("t_r", self.t_right),
            ("kappa_ll", self.kappa.ll),
            ("kappa_lr", self.kappa.lr),
            ("kappa_rl", self.kappa.rl),
            ("kappa_rr", self.kappa.rr),
        ];
        for (name, value) in checks {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and nonnegative",
                });
            }
        }
        Ok(())
    }

    pub fn temperature(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Left => self.t_left,
            Bath::Right => self.t_right,
        }
    }

    /// Same baths with the two temperatures exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            t_left: self.t_right,
            t_right: self.t_left,
            ..*self
        }
    }

    /// `G_ij(ω)` for qubit `i`, bath `j`.
    pub fn response(&self, qubit: Site, bath: Bath, omega: f64) -> f64 {
        response(
            self.kappa.get(qubit, bath),
            omega,
            self.temperature(bath),
            self.kind,
        )
    }
}

/// Bose–Einstein occupation `1/(e^{ω/T} − 1)`; exactly zero at `T = 0`.
pub fn mean_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain {
            what: "mean_occupation frequency",
            value: omega,
        });
    }
    if !(temperature >= 0.0) {
        return Err(Error::Domain {
            what: "mean_occupation temperature",
            value: temperature,
        });
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    // expm1 overflows to +inf for ω/T beyond ~709, giving exactly 0.
    Ok(1.0 / expm1(omega / temperature))
}

/// Frequency-dependent rate `κ(ω)` for a positive frequency.
pub fn rate(kappa_base: f64, omega: f64, kind: SpectralKind) -> f64 {
    match kind {
        SpectralKind::Flat => kappa_base,
        SpectralKind::Ohmic => kappa_base * omega,
    }
}

/// Spectral response `G(ω)`: emission `κ(ω)(1 + n̄(ω))` for `ω > 0`,
/// absorption `κ(|ω|) n̄(|ω|)` for `ω < 0`, and zero at `ω = 0`.
pub fn response(kappa_base: f64, omega: f64, temperature: f64, kind: SpectralKind) -> f64 {
    if omega == 0.0 || kappa_base == 0.0 {
        return 0.0;
    }
    let w = omega.abs();
    let n = occupation_or_zero(w, temperature);
    let k = rate(kappa_base, w, kind);
    if omega > 0.0 {
        k * (1.0 + n)
    } else {
        k * n
    }
}

fn occupation_or_zero(omega: f64, temperature: f64) -> f64 {
    mean_occupation(omega, temperature).unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    const NBAR_1_1: f64 = 0.581_976_706_869_326_4; // 1/(e − 1)

    #[test]
    fn occupation_examples() {
        assert_eq!(mean_occupation(1.0, 0.0).unwrap(), 0.0);
        assert!((mean_occupation(1.0, 1.0).unwrap() - NBAR_1_1).abs() < 1e-15);
        let classical = mean_occupation(1.0, 100.0).unwrap();
        assert!((classical - 100.0).abs() / 100.0 < 0.01);
        assert!(mean_occupation(0.0, 1.0).is_err());
        assert!(mean_occupation(-1.0, 1.0).is_err());
        assert_eq!(mean_occupation(3.2, 0.001).unwrap(), 0.0);
    }

    #[test]
    fn rate_examples() {
        assert_eq!(rate(0.01, 2.236, SpectralKind::Flat), 0.01);
        assert!((rate(0.01, 2.236, SpectralKind::Ohmic) - 0.02236).abs() < 1e-15);
        assert_eq!(rate(0.0, 2.236, SpectralKind::Ohmic), 0.0);
        assert_eq!(rate(0.0, 2.236, SpectralKind::Flat), 0.0);
    }

    #[test]
    fn response_examples() {
        let up = response(0.01, 1.0, 1.0, SpectralKind::Flat);
        let down = response(0.01, -1.0, 1.0, SpectralKind::Flat);
        assert!((up - 0.01 * (1.0 + NBAR_1_1)).abs() < 1e-16);
        assert!((down - 0.01 * NBAR_1_1).abs() < 1e-16);
        for kind in [SpectralKind::Flat, SpectralKind::Ohmic] {
            assert_eq!(response(0.3, 0.0, 2.0, kind), 0.0);
            assert_eq!(response(0.3, -0.0, 0.0, kind), 0.0);
        }
        assert!(response(0.01, -3.2, 0.01, SpectralKind::Flat) < 1e-100);
        assert_eq!(response(0.01, 3.2, 0.01, SpectralKind::Flat), 0.01);
    }

    #[test]
    fn coupling_lookup() {
        let k = CouplingRates {
            ll: 1.0,
            lr: 2.0,
            rl: 3.0,
            rr: 4.0,
        };
        assert_eq!(k.get(Site::Left, Bath::Right), 2.0);
        assert_eq!(k.get(Site::Right, Bath::Left), 3.0);
        assert!(!k.is_local());
        assert!(CouplingRates::local(0.01, 0.02).is_local());
        assert!(BathSpec::new(1.0, -0.5, SpectralKind::Flat, k).is_err());
    }

    proptest! {
        #[test]
        fn kms_detailed_balance(w in 0.1..10.0f64, t in 0.1..20.0f64, k in 1e-4..1.0f64, ohmic: bool) {
            let kind = if ohmic { SpectralKind::Ohmic } else { SpectralKind::Flat };
            let ratio = response(k, w, t, kind) / response(k, -w, t, kind);
            let expected = (w / t).exp();
            prop_assert!((ratio - expected).abs() / expected < 1e-12);
        }

        #[test]
        fn zero_temperature_absorption(w in 1e-3..50.0f64, k in 0.0..1.0f64) {
            prop_assert_eq!(response(k, -w, 0.0, SpectralKind::Flat), 0.0);
            prop_assert_eq!(response(k, -w, 0.0, SpectralKind::Ohmic), 0.0);
        }

        #[test]
        fn absorption_increases_with_temperature(w in 0.1..5.0f64, t in 0.05..20.0f64, dt in 0.01..5.0f64) {
            let k = 0.01;
            prop_assert!(response(k, -w, t + dt, SpectralKind::Flat) > response(k, -w, t, SpectralKind::Flat));
        }

        #[test]
        fn nonnegative(w in -20.0..20.0f64, t in 0.0..20.0f64, k in 0.0..1.0f64, ohmic: bool) {
            let kind = if ohmic { SpectralKind::Ohmic } else { SpectralKind::Flat };
            prop_assert!(response(k, w, t, kind) >= 0.0);
        }
    }
}
