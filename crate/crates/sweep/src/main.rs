use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use qdiode::checks;
use qdiode::config::Format;
use qdiode::{emit, parse_config, preset, run, RunSpec, DEFAULT_GRID};
use qdiode_core::SpectralKind;

#[derive(Parser)]
#[command(
    name = "qdiode",
    version,
    about = "Two-qubit quantum thermal diode simulator"
)]
struct Cli {
    /// Override the bath spectral density.
    #[arg(long, global = true, value_enum)]
    spectrum: Option<Spectrum>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the simulation described by a config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Write here instead of the config's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Compute one of the preset parameter maps.
    Sweep {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Points per axis.
        #[arg(long, default_value_t = DEFAULT_GRID as u32, value_parser = clap::value_parser!(u32).range(1..))]
        grid: u32,
    },
    /// Run the invariant and reproduction checks.
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Spectrum {
    Flat,
    Ohmic,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

fn apply_spectrum(spec: RunSpec, spectrum: Option<Spectrum>) -> RunSpec {
    match spectrum {
        Some(Spectrum::Flat) => spec.with_spectrum(SpectralKind::Flat),
        Some(Spectrum::Ohmic) => spec.with_spectrum(SpectralKind::Ohmic),
        None => spec,
    }
}

fn report_flags(rows: &[qdiode::ResultRow]) {
    let flagged = rows.iter().filter(|r| r.j_right.is_none()).count();
    if flagged > 0 {
        eprintln!(
            "warning: {flagged} of {} points have no steady state; see the flags column",
            rows.len()
        );
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            format,
        } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let spec = parse_config(&text).with_context(|| format!("in {}", config.display()))?;
            let spec = apply_spectrum(spec, cli.spectrum);
            let rows = run(&spec);
            report_flags(&rows);
            let path = out.or(spec.output.path.clone());
            let format = format.map(Format::from).unwrap_or(spec.output.format);
            emit(&rows, &spec.columns(), format, path.as_deref())?;
        }
        Command::Sweep {
            preset: name,
            out,
            format,
            grid,
        } => {
            let preset = preset(&name, grid as usize)?;
            for warning in &preset.warnings {
                eprintln!("warning: {warning}");
            }
            let spec = apply_spectrum(preset.spec, cli.spectrum);
            let rows = run(&spec);
            report_flags(&rows);
            emit(&rows, &spec.columns(), format.into(), out.as_deref())?;
        }
        Command::Check => {
            let outcomes = checks::run_all_with(|outcome| println!("{outcome}"));
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;

    const CONFIG: &str = "\
# golden point
omega_l  = 1
omega_r  = 1
g        = 1
t_l      = 3
t_r      = 0.5
kappa_ll = 0.01
kappa_rr = 0.01
";

    fn qdiode(args: &[&str]) -> anyhow::Result<ExitCode> {
        let cli = Cli::try_parse_from(std::iter::once("qdiode").chain(args.iter().copied()))?;
        execute(cli)
    }

    fn path_str(p: &Path) -> &str {
        p.to_str().unwrap()
    }

    #[test]
    fn simulate_single_point() {
        let dir = tempfile::tempdir().unwrap();
        let (cfg, out) = (dir.path().join("run.cfg"), dir.path().join("point.csv"));
        fs::write(&cfg, CONFIG).unwrap();
        qdiode(&[
            "simulate",
            "--config",
            path_str(&cfg),
            "--out",
            path_str(&out),
        ])
        .unwrap();
        let text = fs::read_to_string(&out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("j_left,j_right,"));
        let j_right: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert!((j_right + 0.001_306_252_720_161_007_6).abs() < 1e-12);
    }

    #[test]
    fn simulate_writes_configured_output() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("sweep.json");
        let cfg = dir.path().join("run.cfg");
        fs::write(
            &cfg,
            format!("{CONFIG}sweep = t_l 0.5 3 4\noutput = {}\n", out.display()),
        )
        .unwrap();
        qdiode(&[
            "--spectrum",
            "ohmic",
            "simulate",
            "--config",
            path_str(&cfg),
        ])
        .unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        let rows = json.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["t_l"], 0.5);
        assert_eq!(rows[3]["t_l"], 3.0);
        assert!(rows[0]["r"].is_null());
    }

    #[test]
    fn config_errors_name_line_and_key() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("bad.cfg");
        fs::write(&cfg, format!("{CONFIG}spectrum = lorentzian\n")).unwrap();
        let err = format!(
            "{:#}",
            qdiode(&["simulate", "--config", path_str(&cfg)]).unwrap_err()
        );
        assert!(err.contains("line 9") && err.contains("spectrum"), "{err}");
    }

    #[test]
    fn sweep_preset_small_grid() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("fig4d.csv");
        qdiode(&[
            "sweep",
            "--preset",
            "fig4d",
            "--grid",
            "5",
            "--out",
            path_str(&out),
        ])
        .unwrap();
        let text = fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().count(), 26);
        assert!(!text.contains('\r'));
        assert!(text.starts_with("t_l,t_r,j_left,j_right,j_forward,j_backward,r,"));
    }

    #[test]
    fn fig5_presets_carry_the_coupling_warning() {
        let warnings = preset("fig5c", 2).unwrap().warnings;
        assert!(
            warnings.iter().any(|w| w.contains("g = 0.01")),
            "{warnings:?}"
        );
    }

    #[test]
    fn unknown_preset_and_bad_arguments_fail() {
        assert!(qdiode(&["sweep", "--preset", "fig9z"]).is_err());
        assert!(qdiode(&["sweep", "--preset", "fig4d", "--grid", "0"]).is_err());
        assert!(qdiode(&["sweep", "--preset", "fig4d", "--format", "xml"]).is_err());
        assert!(qdiode(&["simulate"]).is_err());
    }

    #[test]
    fn unwritable_destination_is_an_error() {
        let err = qdiode(&[
            "sweep",
            "--preset",
            "fig4a",
            "--grid",
            "2",
            "--out",
            "/nonexistent/dir/out.csv",
        ])
        .unwrap_err();
        assert!(format!("{err:#}").contains("/nonexistent/dir/out.csv"));
    }
}
