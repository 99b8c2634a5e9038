use std::path::{Path, PathBuf};

use jcpurity::oracle::{run_verification, VerifyConfig};
use jcpurity::{
    bloch_from_density, purity_report, reduce_to_atom, run_sweep, scan_evolution, BlochFourVector, Evolution,
    PurityReport, ScanRecord, SweepParam,
};
use serde::Serialize;

use crate::args::{Cli, Command, PointArgs, QuantifyArgs, SimulateArgs, SweepArgs, VerifyArgs};
use crate::error::{CliError, Result};
use crate::output::{emit, format_number, render, write_records, Format};
use crate::plot::{render_svg, PlotError};

/// Per-record oracle tolerance for `simulate --verify`.
pub const RECORD_TOLERANCE: f64 = 1e-10;

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => simulate(&a),
        Command::Sweep(a) => sweep(&a),
        Command::Quantify(a) => quantify(&a),
        Command::Point(a) => point(&a),
        Command::Verify(a) => verify(&a),
    }
}

fn write_plot(svg: Option<String>, path: Option<&Path>) -> Result<()> {
    if let (Some(svg), Some(path)) = (svg, path) {
        std::fs::write(path, svg).map_err(|source| PlotError::Io {
            path: path.into(),
            source,
        })?;
    }
    Ok(())
}

pub fn simulate(a: &SimulateArgs) -> Result<()> {
    let params = a.model.params()?;
    let grid = a.grid.grid()?;
    let evolution = Evolution::new(params, a.model.tail_bound)?;
    let records = scan_evolution(&evolution, &grid)?;
    if a.verify {
        check_records(&evolution, &records)?;
    }
    let svg = a
        .output
        .plot
        .as_ref()
        .map(|_| render_svg(&records, &a.output.series))
        .transpose()?;
    emit(&render(&records, a.output.format)?, a.output.out.as_deref())?;
    write_plot(svg, a.output.plot.as_deref())
}

/// Compares every record with the partial trace of the joint state.
pub fn check_records(evolution: &Evolution, records: &[ScanRecord]) -> Result<()> {
    let mut bad = Vec::new();
    for rec in records {
        let traced = bloch_from_density(&reduce_to_atom(&evolution.joint_amplitudes(rec.tau)?))?;
        let dev = rec
            .bloch
            .components()
            .iter()
            .zip(traced.components())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        if dev > RECORD_TOLERANCE {
            bad.push(format!("tau={} deviation={dev:e}", format_number(rec.tau)));
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(bad.join("\n")))
    }
}

/// `<dir>/<stem>_<param>_<value>.<ext>`
pub fn sweep_path(base: &Path, param: SweepParam, value: f64, ext: &str) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("run");
    base.with_file_name(format!("{stem}_{param}_{}.{ext}", format_number(value)))
}

pub fn sweep(a: &SweepArgs) -> Result<()> {
    let base = a.model.params()?;
    let grid = a.grid.grid()?;
    let (param, values) = match (&a.alpha_list, &a.beta_list, &a.f_list) {
        (Some(v), None, None) => (SweepParam::Alpha, v),
        (None, Some(v), None) => (SweepParam::Beta, v),
        (None, None, Some(v)) => (SweepParam::F, v),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --alpha-list, --beta-list, --f-list".into(),
            ))
        }
    };
    for &v in values {
        param
            .apply(&base, v)
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let series = run_sweep(&base, param, values, &grid, a.model.tail_bound)?;
    for s in &series {
        let svg = a.plot.as_ref().map(|_| render_svg(&s.records, &a.series)).transpose()?;
        let out = sweep_path(&a.out, param, s.value, a.format.extension());
        write_records(&s.records, a.format, &out)?;
        eprintln!("wrote {}", out.display());
        if let Some(plot) = &a.plot {
            let path = sweep_path(plot, param, s.value, "svg");
            write_plot(svg, Some(&path))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct Quantified {
    r0: f64,
    r1: f64,
    r2: f64,
    r3: f64,
    r_norm: f64,
    #[serde(flatten)]
    report: PurityReport,
    nonclassicality: f64,
}

impl Quantified {
    fn new(b: &BlochFourVector) -> Self {
        let report = purity_report(b);
        Quantified {
            r0: b.r0(),
            r1: b.r1(),
            r2: b.r2(),
            r3: b.r3(),
            r_norm: b.norm(),
            report,
            nonclassicality: report.nonclassicality(),
        }
    }

    fn pairs(&self) -> Vec<(&'static str, f64)> {
        let r = &self.report;
        vec![
            ("r0", self.r0),
            ("r1", self.r1),
            ("r2", self.r2),
            ("r3", self.r3),
            ("r_norm", self.r_norm),
            ("mixed_measure", r.mixed_measure),
            ("purity", r.purity),
            ("concurrence", r.concurrence),
            ("tangle", r.tangle),
            ("tan_phi", r.tan_phi),
            ("phi", r.phi),
            ("eps_minus", r.eps_minus),
            ("eps_plus", r.eps_plus),
            ("lambda_minus", r.lambda_minus),
            ("lambda_plus", r.lambda_plus),
            ("amp_mag", r.amp_mag),
            ("amp_phase", r.amp_phase),
            ("entropy_vn", r.entropy_vn),
            ("entropy_binary", r.entropy_binary),
            ("excitation", r.excitation),
            ("nonclassicality", self.nonclassicality),
        ]
    }
}

pub fn quantify(a: &QuantifyArgs) -> Result<()> {
    let bloch = BlochFourVector::new(a.r0, a.r1, a.r2, a.r3).map_err(|e| CliError::Usage(e.to_string()))?;
    let q = Quantified::new(&bloch);
    let bytes = match a.format {
        Format::Csv => {
            let (names, values): (Vec<_>, Vec<_>) = q.pairs().into_iter().unzip();
            let values: Vec<String> = values.into_iter().map(format_number).collect();
            format!("{}\n{}\n", names.join(","), values.join(",")).into_bytes()
        }
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&q)?;
            v.push(b'\n');
            v
        }
    };
    emit(&bytes, a.out.as_deref())
}

pub fn point(a: &PointArgs) -> Result<()> {
    if a.tau < 0.0 {
        return Err(CliError::Usage(format!("--tau must be >= 0, got {}", a.tau)));
    }
    let evolution = Evolution::new(a.model.params()?, a.model.tail_bound)?;
    let record = ScanRecord::new(a.tau, evolution.bloch(a.tau)?);
    emit(&render(&[record], a.format)?, a.out.as_deref())
}

pub fn verify(a: &VerifyArgs) -> Result<()> {
    let mut cfg = VerifyConfig {
        samples: a.samples,
        seed: a.seed,
        tail_bound: a.tail_bound,
        ..Default::default()
    };
    if let Some(tol) = a.tolerance {
        cfg.bloch_tolerance = tol;
        cfg.eigen_tolerance = tol;
    }
    let report = run_verification(&cfg)?;
    println!(
        "checks: {}  max bloch deviation: {:e} (tol {:e})  max eigen deviation: {:e} (tol {:e})",
        report.checks, report.max_bloch_deviation, cfg.bloch_tolerance, report.max_eigen_deviation, cfg.eigen_tolerance
    );
    if report.passed() {
        println!("ok");
        return Ok(());
    }
    const SHOWN: usize = 20;
    let mut lines: Vec<String> = report
        .mismatches
        .iter()
        .take(SHOWN)
        .map(|m| format!("  {}: {:e} > {:e}", m.label, m.deviation, m.tolerance))
        .collect();
    if report.mismatches.len() > SHOWN {
        lines.push(format!("  ... and {} more", report.mismatches.len() - SHOWN));
    }
    Err(CliError::VerifyFailed(format!(
        "{} of {} checks failed\n{}",
        report.mismatches.len(),
        report.checks,
        lines.join("\n")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::parse_args;

    fn run_args(args: &[&str]) -> Result<()> {
        run(parse_args(std::iter::once("jcpurity").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn sweep_names() {
        let p = sweep_path(Path::new("out/run.csv"), SweepParam::Beta, 60.0, "csv");
        assert_eq!(p, Path::new("out/run_beta_60.csv"));
        let p = sweep_path(Path::new("fig.svg"), SweepParam::F, 1e-7, "svg");
        assert_eq!(p, Path::new("fig_f_1e-7.svg"));
    }

    #[test]
    fn simulate_writes_data_and_plot() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.csv");
        let plot = dir.path().join("run.svg");
        run_args(&[
            "simulate",
            "--tau-max",
            "2",
            "--steps",
            "20",
            "--verify",
            "--out",
            out.to_str().unwrap(),
            "--plot",
            plot.to_str().unwrap(),
        ])
        .unwrap();
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().count(), 22);
        let svg = std::fs::read_to_string(&plot).unwrap();
        let pts = crate::plot::polyline_points(&svg, "tan_phi").unwrap();
        assert_eq!(pts.len(), 21);
        assert_eq!(
            pts[0].1,
            format!("{:.2}", crate::plot::y_pixel(1.0)).parse::<f64>().unwrap()
        );
    }

    #[test]
    fn bad_series_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.csv");
        let plot = dir.path().join("run.svg");
        let err = run_args(&[
            "simulate",
            "--tau-max",
            "1",
            "--steps",
            "4",
            "--series",
            "nope",
            "--out",
            out.to_str().unwrap(),
            "--plot",
            plot.to_str().unwrap(),
        ])
        .unwrap_err();
        assert!(matches!(err, CliError::Plot(PlotError::EmptySeries(_))));
        assert_eq!(err.exit_code(), 1);
        assert!(!out.exists() && !plot.exists());
    }

    #[test]
    fn sweep_writes_one_file_per_value() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.json");
        run_args(&[
            "sweep",
            "--tau-max",
            "1",
            "--steps",
            "5",
            "--format",
            "json",
            "--beta-list",
            "0,60",
            "--out",
            out.to_str().unwrap(),
        ])
        .unwrap();
        for v in ["0", "60"] {
            let rows = crate::output::read_json(&dir.path().join(format!("run_beta_{v}.json"))).unwrap();
            assert_eq!(rows.len(), 6);
        }
    }

    #[test]
    fn invalid_model_values_are_usage_errors() {
        let err = run_args(&["simulate", "--alpha", "-1", "--steps", "2"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run_args(&["quantify", "--r0", "1", "--r1", "2", "--r2", "0", "--r3", "0"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_paths() {
        assert!(run_args(&["verify", "--samples", "4"]).is_ok());
        let err = run_args(&["verify", "--samples", "4", "--tolerance", "1e-30"]).unwrap_err();
        assert!(matches!(err, CliError::VerifyFailed(_)));
        assert_eq!(err.exit_code(), 1);
    }
}
