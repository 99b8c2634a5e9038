//! Time-grid scans and parameter sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{poisson_weights, Evolution, FockTruncation, ModelParams};
use crate::error::{Error, Result};
use crate::measures::{purity_report, PurityReport};
use crate::qubit::BlochFourVector;

/// Inclusive uniform grid `tau_i = i * tau_max / steps`, `i = 0 ..= steps`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    tau_max: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(tau_max: f64, steps: usize) -> Result<Self> {
        if !(tau_max.is_finite() && tau_max > 0.0) {
            return Err(Error::OutOfRange {
                name: "tau_max",
                value: tau_max,
                range: "(0, inf)",
            });
        }
        if steps == 0 {
            return Err(Error::OutOfRange {
                name: "steps",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        Ok(Self { tau_max, steps })
    }

    pub fn tau_max(&self) -> f64 {
        self.tau_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tau(&self, i: usize) -> f64 {
        if i == self.steps {
            self.tau_max
        } else {
            i as f64 * self.tau_max / self.steps as f64
        }
    }

    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(move |i| self.tau(i))
    }
}

/// One time point of a scan.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub tau: f64,
    pub bloch: BlochFourVector,
    pub report: PurityReport,
}

impl ScanRecord {
    pub fn new(tau: f64, bloch: BlochFourVector) -> Self {
        Self {
            tau,
            bloch,
            report: purity_report(&bloch),
        }
    }
}

/// Evaluates a prepared [`Evolution`] on every grid point. Points are computed
/// in parallel but always returned in ascending `tau`.
pub fn scan_evolution(evolution: &Evolution, grid: &TimeGrid) -> Result<Vec<ScanRecord>> {
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let tau = grid.tau(i);
            evolution.bloch(tau).map(|b| ScanRecord::new(tau, b))
        })
        .collect()
}

pub fn run_scan(params: &ModelParams, grid: &TimeGrid, trunc: FockTruncation) -> Result<Vec<ScanRecord>> {
    scan_evolution(&Evolution::with_truncation(*params, trunc)?, grid)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Alpha,
    Beta,
    F,
}

impl SweepParam {
    pub fn apply(self, base: &ModelParams, value: f64) -> ModelParams {
        let mut p = *base;
        match self {
            SweepParam::Alpha => p.alpha = value,
            SweepParam::Beta => p.beta = value,
            SweepParam::F => p.f = value,
        }
        p
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::F => "f",
        })
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(SweepParam::Alpha),
            "beta" => Ok(SweepParam::Beta),
            "f" => Ok(SweepParam::F),
            other => Err(Error::InvalidParams(format!("unknown sweep parameter '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSeries {
    pub value: f64,
    pub params: ModelParams,
    pub records: Vec<ScanRecord>,
}

/// One independent scan per value, in the order given.
///
/// The field is truncated at `tail_bound` for each `alpha`; the weight table
/// is only rebuilt when `alpha` actually changes between consecutive values.
pub fn run_sweep(
    base: &ModelParams,
    param: SweepParam,
    values: &[f64],
    grid: &TimeGrid,
    tail_bound: f64,
) -> Result<Vec<SweepSeries>> {
    if values.is_empty() {
        return Err(Error::InvalidParams("sweep needs at least one value".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParams(format!("non-finite sweep value {bad}")));
    }
    let mut cached: Option<(f64, Vec<f64>, FockTruncation)> = None;
    let mut out = Vec::with_capacity(values.len());
    for &value in values {
        let params = param.apply(base, value);
        params.validate()?;
        let (weights, trunc) = match &cached {
            Some((alpha, w, t)) if *alpha == params.alpha => (w.clone(), *t),
            _ => {
                let (w, t) = poisson_weights(params.alpha, tail_bound)?;
                cached = Some((params.alpha, w.clone(), t));
                (w, t)
            }
        };
        let evolution = Evolution::from_weights(params, weights, trunc);
        out.push(SweepSeries {
            value,
            params,
            records: scan_evolution(&evolution, grid)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ModelKind, DEFAULT_TAIL_BOUND};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn params(model: ModelKind, alpha: f64, beta: f64, f: f64) -> ModelParams {
        ModelParams::new(model, alpha, beta, f, 1.0).unwrap()
    }

    fn trunc_for(alpha: f64) -> FockTruncation {
        poisson_weights(alpha, DEFAULT_TAIL_BOUND).unwrap().1
    }

    #[test]
    fn grid_is_inclusive() {
        let g = TimeGrid::new(50.0, 5000).unwrap();
        assert_eq!(g.len(), 5001);
        let taus: Vec<f64> = g.taus().collect();
        assert_eq!(taus[0], 0.0);
        assert_eq!(*taus.last().unwrap(), 50.0);
        assert!(taus.windows(2).all(|w| w[1] > w[0]));
        assert!(TimeGrid::new(0.0, 10).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
    }

    #[test]
    fn two_point_scan() {
        let p = params(ModelKind::Jc, 2.0, 0.0, 1e-7);
        let recs = run_scan(&p, &TimeGrid::new(1.0, 1).unwrap(), trunc_for(2.0)).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!((recs[0].tau, recs[1].tau), (0.0, 1.0));
        assert_abs_diff_eq!(recs[0].report.tan_phi, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(recs[0].report.excitation, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn vacuum_ajc_scan_reaches_excited_state() {
        let p = params(ModelKind::Ajc, 0.0, 0.0, 0.0);
        let recs = run_scan(&p, &TimeGrid::new(PI, 4).unwrap(), trunc_for(0.0)).unwrap();
        assert_abs_diff_eq!(recs[2].tau, PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(recs[2].report.excitation, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn scan_reports_offending_tau() {
        let p = params(ModelKind::Jc, 7.0, 0.0, 1e-7);
        let short = FockTruncation {
            n_max: 40,
            tail_bound: 1e-12,
        };
        match run_scan(&p, &TimeGrid::new(2.0, 4).unwrap(), short) {
            Err(Error::Truncation { tau, .. }) => assert_eq!(tau, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_value_sweep_equals_scan() {
        let base = params(ModelKind::Jc, 3.0, 0.0, 1e-7);
        let grid = TimeGrid::new(10.0, 200).unwrap();
        let sweep = run_sweep(&base, SweepParam::Beta, &[0.0], &grid, DEFAULT_TAIL_BOUND).unwrap();
        let scan = run_scan(&base, &grid, trunc_for(3.0)).unwrap();
        assert_eq!(sweep.len(), 1);
        assert_eq!(sweep[0].records, scan);
    }

    #[test]
    fn sweep_validation() {
        let base = params(ModelKind::Jc, 1.0, 0.0, 1e-7);
        let grid = TimeGrid::new(1.0, 2).unwrap();
        assert!(run_sweep(&base, SweepParam::Beta, &[], &grid, 1e-12).is_err());
        assert!(run_sweep(&base, SweepParam::Beta, &[f64::NAN], &grid, 1e-12).is_err());
        assert!(run_sweep(&base, SweepParam::Alpha, &[-1.0], &grid, 1e-12).is_err());
        assert_eq!("f".parse::<SweepParam>().unwrap(), SweepParam::F);
        assert!("g".parse::<SweepParam>().is_err());
    }

    #[test]
    fn alpha_sweep_rebuilds_truncation() {
        let base = params(ModelKind::Ajc, 1.0, 0.0, 1e-7);
        let grid = TimeGrid::new(1.0, 2).unwrap();
        let out = run_sweep(&base, SweepParam::Alpha, &[1.0, 9.0, 9.0], &grid, 1e-12).unwrap();
        assert_eq!(out[1].records, out[2].records);
        for s in &out {
            assert_abs_diff_eq!(s.records[2].bloch.r0(), 1.0, epsilon = 1e-11);
        }
    }
}
