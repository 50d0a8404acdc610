//! Run descriptions and the flat `key = value` configuration format.
//!
//! ```text
//! # resonant qubits, strong coupling
//! omega_l  = 1
//! omega_r  = 1
//! g        = 1
//! t_l      = 3
//! t_r      = 0.5
//! kappa_ll = 0.01
//! kappa_rr = 0.01
//! spectrum = flat
//! sweep    = t_l 0.1 10 100
//! output   = currents.csv
//! ```
//!
//! See `docs/config.md` for the full schema.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qdiode_core::{BathSpec, CouplingRates, SpectralKind, SystemSpec};

/// A parameter that can be swept along a grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    TLeft,
    TRight,
    OmegaL,
    OmegaR,
    G,
    KappaLr,
    KappaRl,
}

impl Param {
    pub const ALL: [Param; 7] = [
        Param::TLeft,
        Param::TRight,
        Param::OmegaL,
        Param::OmegaR,
        Param::G,
        Param::KappaLr,
        Param::KappaRl,
    ];

    /// Config key and output column name.
    pub fn name(self) -> &'static str {
        match self {
            Param::TLeft => "t_l",
            Param::TRight => "t_r",
            Param::OmegaL => "omega_l",
            Param::OmegaR => "omega_r",
            Param::G => "g",
            Param::KappaLr => "kappa_lr",
            Param::KappaRl => "kappa_rl",
        }
    }

    pub fn get(self, system: &SystemSpec, baths: &BathSpec) -> f64 {
        match self {
            Param::TLeft => baths.t_left,
            Param::TRight => baths.t_right,
            Param::OmegaL => system.omega_l,
            Param::OmegaR => system.omega_r,
            Param::G => system.g,
            Param::KappaLr => baths.kappa.lr,
            Param::KappaRl => baths.kappa.rl,
        }
    }

    pub fn set(self, system: &mut SystemSpec, baths: &mut BathSpec, value: f64) {
        match self {
            Param::TLeft => baths.t_left = value,
            Param::TRight => baths.t_right = value,
            Param::OmegaL => system.omega_l = value,
            Param::OmegaR => system.omega_r = value,
            Param::G => system.g = value,
            Param::KappaLr => baths.kappa.lr = value,
            Param::KappaRl => baths.kappa.rl = value,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("`{s}` cannot be swept (expected one of t_l, t_r, omega_l, omega_r, g, kappa_lr, kappa_rl)"))
    }
}

/// One grid axis: `points` evenly spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl SweepAxis {
    pub fn new(param: Param, min: f64, max: f64, points: usize) -> Self {
        Self {
            param,
            min,
            max,
            points,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last)
                }
            })
            .collect()
    }

    fn check(&self) -> Result<(), String> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err("axis bounds must be finite".into());
        }
        if self.points == 0 {
            return Err("points must be at least 1".into());
        }
        if self.min > self.max {
            return Err(format!("min {} exceeds max {}", self.min, self.max));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// One steady state.
    #[default]
    Single,
    /// One steady state per grid point.
    Sweep,
    /// Both bias orientations and the rectification factor per grid point.
    RectificationMap,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(Mode::Single),
            "sweep" => Ok(Mode::Sweep),
            "rectification_map" => Ok(Mode::RectificationMap),
            _ => Err(format!(
                "unknown mode `{s}` (expected single, sweep or rectification_map)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

pub fn parse_spectrum(s: &str) -> Result<SpectralKind, String> {
    match s {
        "flat" => Ok(SpectralKind::Flat),
        "ohmic" => Ok(SpectralKind::Ohmic),
        _ => Err(format!("unknown spectrum `{s}` (expected flat or ohmic)")),
    }
}

/// Where results go. `None` means standard output.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// A complete, validated simulation request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    /// Base system; swept parameters are overwritten per grid point.
    pub system: SystemSpec,
    pub baths: BathSpec,
    pub axes: Vec<SweepAxis>,
    pub mode: Mode,
    pub output: OutputSpec,
}

impl RunSpec {
    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    /// Parameter values of every grid point, first axis slowest.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let values = axis.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    /// System and baths at one grid point.
    pub fn at(&self, values: &[f64]) -> (SystemSpec, BathSpec) {
        let mut system = self.system;
        let mut baths = self.baths;
        for (axis, &v) in self.axes.iter().zip(values) {
            axis.param.set(&mut system, &mut baths, v);
        }
        (system, baths)
    }

    pub fn with_spectrum(mut self, kind: SpectralKind) -> Self {
        self.baths.kind = kind;
        self
    }

    /// Resets every axis to `points` points.
    pub fn with_grid(mut self, points: usize) -> Self {
        for axis in &mut self.axes {
            axis.points = points;
        }
        self
    }

    pub fn columns(&self) -> Vec<Param> {
        self.axes.iter().map(|a| a.param).collect()
    }
}

/// Parse failure, located by line (1-based) when the key appears in the text.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: `{}`: {}", self.key, self.message),
            None => write!(f, "`{}`: {}", self.key, self.message),
        }
    }
}

const SCALAR_KEYS: [&str; 9] = [
    "omega_l", "omega_r", "g", "t_l", "t_r", "kappa_ll", "kappa_rr", "kappa_lr", "kappa_rl",
];
const MAX_AXES: usize = 2;

pub fn parse_config(text: &str) -> Result<RunSpec, ConfigError> {
    let mut scalars: HashMap<&'static str, (f64, usize)> = HashMap::new();
    let mut axes: Vec<(SweepAxis, usize)> = Vec::new();
    let mut spectrum = None;
    let mut mode = None;
    let mut path = None;
    let mut format = None;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |key: &str, message: String| ConfigError {
            line: Some(line),
            key: key.into(),
            message,
        };
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(content, "expected `key = value`".into()));
        };
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(err(key, "missing value".into()));
        }
        if let Some(&name) = SCALAR_KEYS.iter().find(|&&k| k == key) {
            if scalars.contains_key(name) {
                return Err(err(key, "given more than once".into()));
            }
            let v = parse_number(value).map_err(|m| err(key, m))?;
            scalars.insert(name, (v, line));
            continue;
        }
        let once = |slot: bool| {
            if slot {
                Err(err(key, "given more than once".into()))
            } else {
                Ok(())
            }
        };
        match key {
            "spectrum" => {
                once(spectrum.is_some())?;
                spectrum = Some(parse_spectrum(value).map_err(|m| err(key, m))?);
            }
            "mode" => {
                once(mode.is_some())?;
                mode = Some((value.parse::<Mode>().map_err(|m| err(key, m))?, line));
            }
            "output" => {
                once(path.is_some())?;
                path = Some(PathBuf::from(value));
            }
            "format" => {
                once(format.is_some())?;
                format = Some(value.parse::<Format>().map_err(|m| err(key, m))?);
            }
            "sweep" => {
                if axes.len() == MAX_AXES {
                    return Err(err(key, format!("at most {MAX_AXES} sweep axes")));
                }
                let axis = parse_axis(value).map_err(|m| err(key, m))?;
                if axes.iter().any(|(a, _)| a.param == axis.param) {
                    return Err(err(key, format!("`{}` is already swept", axis.param)));
                }
                axes.push((axis, line));
            }
            _ => return Err(err(key, "unknown key".into())),
        }
    }

    let swept = |name: &str| axes.iter().any(|(a, _)| a.param.name() == name);
    let value = |name: &'static str| -> Result<f64, ConfigError> {
        match scalars.get(name) {
            Some(&(v, _)) => Ok(v),
            None if swept(name) => Ok(f64::NAN),
            None if name == "kappa_lr" || name == "kappa_rl" => Ok(0.0),
            None => Err(ConfigError {
                line: None,
                key: name.into(),
                message: "required key missing".into(),
            }),
        }
    };
    let system = SystemSpec {
        omega_l: value("omega_l")?,
        omega_r: value("omega_r")?,
        g: value("g")?,
    };
    let baths = BathSpec {
        t_left: value("t_l")?,
        t_right: value("t_r")?,
        kind: spectrum.unwrap_or_default(),
        kappa: CouplingRates {
            ll: value("kappa_ll")?,
            lr: value("kappa_lr")?,
            rl: value("kappa_rl")?,
            rr: value("kappa_rr")?,
        },
    };

    let mode_value = match mode {
        Some((Mode::Single, line)) if !axes.is_empty() => {
            return Err(ConfigError {
                line: Some(line),
                key: "mode".into(),
                message: "single mode cannot have sweep axes".into(),
            })
        }
        Some((m, _)) => m,
        None if axes.is_empty() => Mode::Single,
        None => Mode::Sweep,
    };
    let format = format.unwrap_or_else(|| match &path {
        Some(p) if p.extension().is_some_and(|e| e == "json") => Format::Json,
        _ => Format::Csv,
    });

    let spec = RunSpec {
        system,
        baths,
        axes: axes.iter().map(|(a, _)| *a).collect(),
        mode: mode_value,
        output: OutputSpec { path, format },
    };
    check_corners(&spec, &scalars, &axes)?;
    Ok(spec)
}

fn parse_number(value: &str) -> Result<f64, String> {
    let v: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{value}` is not finite"));
    }
    Ok(v)
}

fn parse_axis(value: &str) -> Result<SweepAxis, String> {
    let fields: Vec<&str> = value.split_whitespace().collect();
    let [param, min, max, points] = fields[..] else {
        return Err("expected `<parameter> <min> <max> <points>`".into());
    };
    let points: usize = points
        .parse()
        .map_err(|_| format!("`{points}` is not a point count"))?;
    let axis = SweepAxis::new(
        param.parse()?,
        parse_number(min)?,
        parse_number(max)?,
        points,
    );
    axis.check()?;
    Ok(axis)
}

/// Validates the model at every corner of the grid, which bounds every
/// parameter the grid can reach.
fn check_corners(
    spec: &RunSpec,
    scalars: &HashMap<&'static str, (f64, usize)>,
    axes: &[(SweepAxis, usize)],
) -> Result<(), ConfigError> {
    let corners = axes.iter().fold(vec![Vec::new()], |acc, (axis, _)| {
        acc.into_iter()
            .flat_map(|c: Vec<f64>| {
                [axis.min, axis.max].map(|v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect()
    });
    let line_of = |key: &str| {
        axes.iter()
            .find(|(a, _)| a.param.name() == key)
            .map(|&(_, l)| l)
            .or_else(|| scalars.get(key).map(|&(_, l)| l))
    };
    for corner in corners {
        let (system, baths) = spec.at(&corner);
        let result = system.validate().and_then(|_| baths.validate());
        if let Err(e) = result {
            let key = match &e {
                qdiode_core::Error::InvalidParameter { name, .. } => *name,
                _ => "config",
            };
            return Err(ConfigError {
                line: line_of(key),
                key: key.into(),
                message: e.to_string(),
            });
        }
    }
    Ok(())
}
