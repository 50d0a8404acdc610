//! Grid execution. Points are solved independently (in parallel) and merged
//! back in grid order, so output never depends on scheduling.

use rayon::prelude::*;

use qdiode_core::liouvillian::assemble;
use qdiode_core::solver::null_space;
use qdiode_core::{
    solve_point, solve_rectification, BathSpec, Error, SteadyStateReport, SystemSpec,
};

use crate::config::{Mode, Param, RunSpec};

/// Tolerance for the per-row first- and second-law diagnostics.
pub const LAW_TOL: f64 = 1e-10;

/// One grid point's results. Currents are `None` when no steady state was
/// found; the failure is then described in `flags`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub params: Vec<(Param, f64)>,
    pub j_left: Option<f64>,
    pub j_right: Option<f64>,
    /// Right-bath current with the right bath hot (rectification maps only).
    pub j_forward: Option<f64>,
    /// Right-bath current with the left bath hot (rectification maps only).
    pub j_backward: Option<f64>,
    pub r: Option<f64>,
    pub first_law_residual: Option<f64>,
    pub entropy_production: Option<f64>,
    pub nullspace_dim: usize,
    pub flags: Vec<String>,
}

impl ResultRow {
    fn empty(params: Vec<(Param, f64)>) -> Self {
        Self {
            params,
            j_left: None,
            j_right: None,
            j_forward: None,
            j_backward: None,
            r: None,
            first_law_residual: None,
            entropy_production: None,
            nullspace_dim: 0,
            flags: Vec::new(),
        }
    }

    fn fill(&mut self, report: &SteadyStateReport) {
        let heat = &report.heat;
        self.j_left = Some(heat.j_left);
        self.j_right = Some(heat.j_right);
        self.first_law_residual = Some(heat.first_law_residual);
        self.entropy_production = heat.entropy_production;
        self.nullspace_dim = report.solution.nullspace_dim;
        self.check_laws(report);
    }

    fn check_laws(&mut self, report: &SteadyStateReport) {
        let heat = &report.heat;
        // Below the current floor the residual is pure rounding.
        let scale = heat.j_left.abs().max(heat.j_right.abs());
        if heat.first_law_residual > LAW_TOL * scale + report.current_floor {
            self.flag("first_law_violated");
        }
        if heat.entropy_production.is_some_and(|s| s < -LAW_TOL) {
            self.flag("second_law_violated");
        }
        if report.near_degenerate {
            self.flag("near_degenerate");
        }
    }

    fn flag(&mut self, flag: &str) {
        if !self.flags.iter().any(|f| f == flag) {
            self.flags.push(flag.to_owned());
        }
    }

    fn fail(&mut self, system: &SystemSpec, baths: &BathSpec, error: &Error) {
        self.nullspace_dim = match error {
            Error::DegenerateSteadyState { null_vectors } => null_vectors.len(),
            _ => assemble(system, baths)
                .map(|g| null_space(&g.superoperator).0.len())
                .unwrap_or(0),
        };
        let kind = match error {
            Error::DegenerateSteadyState { .. } => "degenerate_steady_state",
            Error::Infeasible { .. } => "infeasible",
            Error::InvalidParameter { .. } | Error::DegenerateAngle { .. } => "invalid_parameters",
            _ => "solver_error",
        };
        self.flag(kind);
        self.flags.push(format!("error: {error}"));
    }
}

pub fn run(spec: &RunSpec) -> Vec<ResultRow> {
    spec.grid()
        .par_iter()
        .map(|values| run_point(spec, values))
        .collect()
}

/// Evaluates a single grid point exactly as [`run`] does.
pub fn run_point(spec: &RunSpec, values: &[f64]) -> ResultRow {
    let params = spec
        .axes
        .iter()
        .map(|a| a.param)
        .zip(values.iter().copied())
        .collect();
    let (system, baths) = spec.at(values);
    let mut row = ResultRow::empty(params);
    match spec.mode {
        Mode::Single | Mode::Sweep => match solve_point(&system, &baths) {
            Ok(report) => row.fill(&report),
            Err(e) => row.fail(&system, &baths, &e),
        },
        Mode::RectificationMap => match solve_rectification(&system, &baths) {
            Ok(rect) => {
                let as_given = if baths.t_right >= baths.t_left {
                    &rect.forward
                } else {
                    &rect.backward
                };
                let other = if baths.t_right >= baths.t_left {
                    &rect.backward
                } else {
                    &rect.forward
                };
                row.fill(as_given);
                row.check_laws(other);
                row.nullspace_dim = row.nullspace_dim.max(other.solution.nullspace_dim);
                row.j_forward = Some(rect.j_forward);
                row.j_backward = Some(rect.j_backward);
                row.r = rect.r;
                if rect.r.is_none() {
                    row.flag("currents_below_floor");
                }
            }
            Err(e) => row.fail(&system, &baths, &e),
        },
    }
    row
}

#[cfg(test)]
mod tests {
    use qdiode_core::{CouplingRates, SpectralKind};

    use super::*;
    use crate::config::{OutputSpec, SweepAxis};

    fn base(mode: Mode, axes: Vec<SweepAxis>) -> RunSpec {
        RunSpec {
            system: SystemSpec {
                omega_l: 1.0,
                omega_r: 1.0,
                g: 1.0,
            },
            baths: BathSpec {
                t_left: 3.0,
                t_right: 0.5,
                kind: SpectralKind::Flat,
                kappa: CouplingRates::local(0.01, 0.01),
            },
            axes,
            mode,
            output: OutputSpec::default(),
        }
    }

    #[test]
    fn single_point_is_a_steady_state_report() {
        let spec = base(Mode::Single, vec![]);
        let rows = run(&spec);
        assert_eq!(rows.len(), 1);
        let report = solve_point(&spec.system, &spec.baths).unwrap();
        assert_eq!(rows[0].j_right, Some(report.heat.j_right));
        assert_eq!(rows[0].j_left, Some(report.heat.j_left));
        assert_eq!(rows[0].nullspace_dim, 1);
        assert!(rows[0].flags.is_empty(), "{:?}", rows[0].flags);
        assert!(rows[0].r.is_none());
    }

    #[test]
    fn symmetric_point_has_no_rectification() {
        let axes = vec![
            SweepAxis::new(Param::TLeft, 2.0, 2.0, 1),
            SweepAxis::new(Param::TRight, 2.0, 2.0, 1),
        ];
        let rows = run(&base(Mode::RectificationMap, axes));
        let row = &rows[0];
        assert!(row.j_right.unwrap().abs() < 1e-12);
        assert!(row.r.is_none());
        assert!(row.flags.contains(&"currents_below_floor".to_string()));
    }

    #[test]
    fn rectification_row_orientation() {
        let axes = vec![
            SweepAxis::new(Param::TLeft, 0.5, 3.0, 2),
            SweepAxis::new(Param::TRight, 0.5, 3.0, 2),
        ];
        let rows = run(&base(Mode::RectificationMap, axes));
        // (T_L, T_R) = (0.5, 3.0): right bath hot, as-given is the forward run.
        let hot_right = &rows[1];
        assert_eq!(hot_right.j_right, hot_right.j_forward);
        // (3.0, 0.5): left bath hot.
        let hot_left = &rows[2];
        assert_eq!(hot_left.j_right, hot_left.j_backward);
        assert_eq!(hot_left.r, hot_right.r);
        let r = hot_left.r.unwrap();
        assert!((0.0..=1.0).contains(&r));
    }

    #[test]
    fn degenerate_point_is_recorded_not_fatal() {
        let mut spec = base(Mode::Sweep, vec![SweepAxis::new(Param::TLeft, 1.0, 2.0, 2)]);
        spec.baths.kappa = CouplingRates::default();
        let rows = run(&spec);
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert!(row.j_right.is_none());
            assert_eq!(row.nullspace_dim, 16);
            assert!(row.flags.contains(&"degenerate_steady_state".to_string()));
        }
    }

    #[test]
    fn near_degenerate_flag() {
        let spec = base(Mode::Single, vec![]);
        let mut spec = spec;
        spec.system = SystemSpec {
            omega_l: 1.0,
            omega_r: 1.0,
            g: 0.01,
        };
        let row = &run(&spec)[0];
        assert!(row.flags.contains(&"near_degenerate".to_string()));
    }

    #[test]
    fn grid_rows_match_single_points() {
        let axes = vec![
            SweepAxis::new(Param::G, 0.0, 2.0, 3),
            SweepAxis::new(Param::OmegaR, 0.5, 1.5, 3),
        ];
        let spec = base(Mode::RectificationMap, axes);
        let rows = run(&spec);
        for (row, values) in rows.iter().zip(spec.grid()) {
            let mut single = spec.clone();
            let (system, baths) = spec.at(&values);
            single.system = system;
            single.baths = baths;
            single.axes.clear();
            let lone = run_point(&single, &[]);
            assert_eq!(
                row.j_right.map(f64::to_bits),
                lone.j_right.map(f64::to_bits)
            );
            assert_eq!(row.r.map(f64::to_bits), lone.r.map(f64::to_bits));
        }
    }
}
