//! Closed-form atom dynamics for the Jaynes-Cummings (JC) and
//! anti-Jaynes-Cummings (aJC) interactions.
//!
//! The atom starts in `|g>` and the field in a real coherent state `|alpha>`.
//! Both interactions conserve an excitation number, so the joint state splits
//! into independent two-level sectors:
//!
//! * JC sector `k` couples `|g,k> <-> |e,k-1>` at Rabi frequency
//!   `R_k = g sqrt(k + beta^2/4)`.
//! * aJC sector `k` couples `|g,k> <-> |e,k+1>` at Rabi frequency
//!   `Rbar_{k+1} = g sqrt(k + 1 + (beta + 2f)^2/4)`.
//!
//! Each sector carries Poisson weight `P_k = e^{-alpha^2} alpha^{2k} / k!` and the
//! reduced atomic Bloch vector is a weighted sum over sectors. Time is always
//! taken as the scaled `tau = g t`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{AtomLevel, JointStateTable};
use crate::qubit::BlochFourVector;

pub const DEFAULT_TAIL_BOUND: f64 = 1e-12;
/// Upper limit on `n_max` accepted by [`poisson_weights`].
pub const FOCK_CAP: usize = 4096;
/// Smallest `n_max` ever used, however narrow the distribution.
pub const MIN_N_MAX: usize = 32;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Jc,
    Ajc,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Jc => write!(f, "jc"),
            ModelKind::Ajc => write!(f, "ajc"),
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jc" => Ok(ModelKind::Jc),
            "ajc" => Ok(ModelKind::Ajc),
            other => Err(Error::InvalidParams(format!(
                "unknown model '{other}' (expected jc or ajc)"
            ))),
        }
    }
}

/// One dynamics instance.
///
/// `beta = delta / g` is the red-sideband detuning ratio, `f = omega / g` the
/// field frequency ratio and `g` the coupling rate.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub model: ModelKind,
    pub alpha: f64,
    pub beta: f64,
    pub f: f64,
    pub g: f64,
}

impl ModelParams {
    pub fn new(model: ModelKind, alpha: f64, beta: f64, f: f64, g: f64) -> Result<Self> {
        let params = Self {
            model,
            alpha,
            beta,
            f,
            g,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha, self.beta, self.f, self.g].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.g <= 0.0 {
            return Err(Error::InvalidParams(format!("g must be positive, got {}", self.g)));
        }
        if self.alpha < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha must be non-negative, got {}",
                self.alpha
            )));
        }
        if self.f < 0.0 {
            return Err(Error::InvalidParams(format!("f must be non-negative, got {}", self.f)));
        }
        Ok(())
    }

    /// Blue-sideband detuning ratio `beta + 2f`.
    pub fn blue_detuning(&self) -> f64 {
        self.beta + 2.0 * self.f
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockTruncation {
    pub n_max: usize,
    pub tail_bound: f64,
}

/// Rabi frequency and the mixing cosine/sine of one sector.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RabiCoefficients {
    pub rabi: f64,
    pub c: f64,
    pub s: f64,
}

fn rabi_coefficients(photons: usize, detuning: f64, g: f64) -> RabiCoefficients {
    let n = photons as f64;
    let rabi = g * (n + 0.25 * detuning * detuning).sqrt();
    if rabi == 0.0 {
        return RabiCoefficients {
            rabi: 0.0,
            c: 1.0,
            s: 0.0,
        };
    }
    RabiCoefficients {
        rabi,
        c: detuning * g / (2.0 * rabi),
        s: g * n.sqrt() / rabi,
    }
}

/// `R_n = g sqrt(n + beta^2/4)`, `c_n = beta g / (2 R_n)`, `s_n = g sqrt(n) / R_n`.
pub fn jc_coefficients(n: usize, params: &ModelParams) -> RabiCoefficients {
    rabi_coefficients(n, params.beta, params.g)
}

/// `Rbar_m = g sqrt(m + (beta+2f)^2/4)` with `cbar_m = (beta+2f) g / (2 Rbar_m)`.
pub fn ajc_coefficients(m: usize, params: &ModelParams) -> RabiCoefficients {
    rabi_coefficients(m, params.blue_detuning(), params.g)
}

/// `ln Gamma(n + 1) - (n + 1/2) ln n + n - ln sqrt(2 pi)`, the Stirling remainder.
fn stirling_error(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
    if n <= 15.0 {
        return statrs::function::gamma::ln_gamma(n + 1.0) - (n + 0.5) * n.ln() + n - LN_SQRT_2PI;
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x / mean) + mean - x`, evaluated without cancellation
/// when `x` is close to `mean`.
fn deviance(x: f64, mean: f64) -> f64 {
    if (x - mean).abs() < 0.1 * (x + mean) {
        let mut v = (x - mean) / (x + mean);
        let mut sum = (x - mean) * v;
        let mut term = 2.0 * x * v;
        v *= v;
        for j in 1.. {
            term *= v;
            let next = sum + term / (2 * j + 1) as f64;
            if next == sum {
                break;
            }
            sum = next;
        }
        sum
    } else {
        x * (x / mean).ln() + mean - x
    }
}

/// Saddle-point Poisson probability, accurate to a few ulps even when
/// `exp(-mean)` underflows.
fn poisson_pmf_saddle(n: usize, mean: f64) -> f64 {
    if n == 0 {
        return (-mean).exp();
    }
    let x = n as f64;
    (-stirling_error(x) - deviance(x, mean)).exp() / (std::f64::consts::TAU * x).sqrt()
}

/// Iterator over the Poisson probabilities `P_0, P_1, ...` of mean `alpha^2`.
///
/// Small means use the upward recurrence `P_{n+1} = P_n mean / (n + 1)`; once
/// `exp(-mean)` would leave the normal range each term is evaluated directly.
struct PoissonSeries {
    n: usize,
    mean: f64,
    current: f64,
    direct: bool,
}

impl PoissonSeries {
    const RECURRENCE_LIMIT: f64 = 700.0;

    fn new(alpha: f64) -> Self {
        let mean = alpha * alpha;
        Self {
            n: 0,
            mean,
            current: (-mean).exp(),
            direct: mean >= Self::RECURRENCE_LIMIT,
        }
    }
}

impl Iterator for PoissonSeries {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let n = self.n;
        let value = if self.mean == 0.0 {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        } else if self.direct {
            poisson_pmf_saddle(n, self.mean)
        } else {
            let value = self.current;
            self.current *= self.mean / (n + 1) as f64;
            value
        };
        self.n += 1;
        Some(value)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            range: "[0, inf)",
        });
    }
    Ok(())
}

/// Photon-number probabilities truncated where the neglected tail mass drops
/// below `tail_bound` (never before [`MIN_N_MAX`]).
pub fn poisson_weights(alpha: f64, tail_bound: f64) -> Result<(Vec<f64>, FockTruncation)> {
    poisson_weights_capped(alpha, tail_bound, FOCK_CAP)
}

pub fn poisson_weights_capped(alpha: f64, tail_bound: f64, cap: usize) -> Result<(Vec<f64>, FockTruncation)> {
    check_alpha(alpha)?;
    if !(tail_bound > 0.0 && tail_bound < 1.0) {
        return Err(Error::OutOfRange {
            name: "tail_bound",
            value: tail_bound,
            range: "(0, 1)",
        });
    }
    let mut weights = Vec::new();
    let mut mass = 0.0;
    for (n, p) in PoissonSeries::new(alpha).enumerate() {
        if n > cap {
            return Err(Error::NonConvergent { alpha, cap });
        }
        weights.push(p);
        mass += p;
        if mass >= 1.0 - tail_bound && n >= MIN_N_MAX {
            break;
        }
    }
    let n_max = weights.len() - 1;
    Ok((weights, FockTruncation { n_max, tail_bound }))
}

/// `P_0 ..= P_{n_max}` without any tail check.
pub fn poisson_weights_upto(alpha: f64, n_max: usize) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    Ok(PoissonSeries::new(alpha).take(n_max + 1).collect())
}

/// Per-sector amplitudes at one instant.
///
/// Sector `n` holds `|g,n>` and its partner (`|e,n-1>` for JC, `|e,n+1>` for
/// aJC). Its state is `weight * (xi |g,n> - i eta |e,partner>)`, where `weight`
/// combines `sqrt(P_n)` with the free-evolution phase.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorAmplitude {
    pub n: usize,
    pub xi: C64,
    pub eta: f64,
    pub weight: C64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QubitAmplitudes {
    pub model: ModelKind,
    pub sectors: Vec<SectorAmplitude>,
}

impl QubitAmplitudes {
    pub fn to_joint_table(&self) -> JointStateTable {
        let mut entries = Vec::with_capacity(2 * self.sectors.len());
        for sec in &self.sectors {
            entries.push((AtomLevel::Ground, sec.n, sec.weight * sec.xi));
            let partner = match self.model {
                ModelKind::Jc if sec.n == 0 => continue,
                ModelKind::Jc => sec.n - 1,
                ModelKind::Ajc => sec.n + 1,
            };
            entries.push((AtomLevel::Excited, partner, sec.weight * C64::new(0.0, -sec.eta)));
        }
        JointStateTable::new(entries)
    }
}

#[derive(Copy, Clone, Debug)]
struct Sector {
    sqrt_weight: f64,
    /// Rabi frequency in units of `g`, so the phase is `rabi * tau`.
    rabi: f64,
    c: f64,
    s: f64,
}

/// Precomputed series for one [`ModelParams`]: Poisson weights and the Rabi
/// coefficients of every retained sector. Cheap to evaluate at many `tau`.
#[derive(Clone, Debug)]
pub struct Evolution {
    params: ModelParams,
    trunc: FockTruncation,
    weights: Vec<f64>,
    /// JC: sector `n` uses `(R_n, c_n, s_n)`.
    /// aJC: sector `n` uses `(Rbar_{n+1}, cbar_{n+1}, sbar_{n+1})`.
    sectors: Vec<Sector>,
    /// `sqrt(P_{n+1} P_n)` for `n = 0 .. n_max`.
    cross_weights: Vec<f64>,
}

impl Evolution {
    /// Truncates the field at `tail_bound` via [`poisson_weights`].
    pub fn new(params: ModelParams, tail_bound: f64) -> Result<Self> {
        params.validate()?;
        let (weights, trunc) = poisson_weights(params.alpha, tail_bound)?;
        Ok(Self::from_weights(params, weights, trunc))
    }

    pub fn with_truncation(params: ModelParams, trunc: FockTruncation) -> Result<Self> {
        params.validate()?;
        if trunc.n_max < 1 {
            return Err(Error::OutOfRange {
                name: "n_max",
                value: trunc.n_max as f64,
                range: "[1, inf)",
            });
        }
        let weights = poisson_weights_upto(params.alpha, trunc.n_max)?;
        Ok(Self::from_weights(params, weights, trunc))
    }

    /// Reuses a weight table computed for the same `alpha`.
    pub fn from_weights(params: ModelParams, weights: Vec<f64>, trunc: FockTruncation) -> Self {
        debug_assert_eq!(weights.len(), trunc.n_max + 1);
        let g = params.g;
        let sectors = (0..weights.len())
            .map(|n| {
                let co = match params.model {
                    ModelKind::Jc => jc_coefficients(n, &params),
                    ModelKind::Ajc => ajc_coefficients(n + 1, &params),
                };
                Sector {
                    sqrt_weight: weights[n].sqrt(),
                    rabi: co.rabi / g,
                    c: co.c,
                    s: co.s,
                }
            })
            .collect();
        let cross_weights = weights.windows(2).map(|w| (w[0] * w[1]).sqrt()).collect();
        Self {
            params,
            trunc,
            weights,
            sectors,
            cross_weights,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn truncation(&self) -> FockTruncation {
        self.trunc
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn check_tau(tau: f64) -> Result<()> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::OutOfRange {
                name: "tau",
                value: tau,
                range: "[0, inf)",
            });
        }
        Ok(())
    }

    fn check_norm(&self, tau: f64, norm: f64) -> Result<()> {
        let allowed = 10.0 * self.trunc.tail_bound;
        if (norm - 1.0).abs() > allowed || norm.is_nan() {
            return Err(Error::Truncation { tau, norm, allowed });
        }
        Ok(())
    }

    /// Bloch four-vector of the reduced atomic state at scaled time `tau`.
    pub fn bloch(&self, tau: f64) -> Result<BlochFourVector> {
        Self::check_tau(tau)?;
        let trig: Vec<(f64, f64)> = self.sectors.iter().map(|s| (s.rabi * tau).sin_cos()).collect();
        let (sin_w, cos_w) = (self.params.f * tau).sin_cos();

        let components = match self.params.model {
            ModelKind::Jc => self.jc_components(&trig, sin_w, cos_w),
            ModelKind::Ajc => self.ajc_components(&trig, sin_w, cos_w),
        };
        let [r0, r1, r2, r3] = components;
        self.check_norm(tau, r0)?;
        BlochFourVector::new(r0, r1, r2, r3)
    }

    fn jc_components(&self, trig: &[(f64, f64)], sin_w: f64, cos_w: f64) -> [f64; 4] {
        let w = &self.weights;
        let sec = &self.sectors;
        let mut ground = 0.0;
        let mut excited = 0.0;
        for n in 0..sec.len() {
            let (sn, cn) = trig[n];
            ground += w[n] * (cn * cn + sec[n].c * sec[n].c * sn * sn);
            if n > 0 {
                let flip = sec[n].s * sn;
                excited += w[n] * flip * flip;
            }
        }
        // Coherence between |e,n> (sector n+1) and |g,n> (sector n):
        // r1 = -2 (sin wt A + cos wt B), r2 = 2 (cos wt A - sin wt B).
        let mut a = 0.0;
        let mut b = 0.0;
        for n in 0..self.cross_weights.len() {
            let k = self.cross_weights[n] * sec[n + 1].s * trig[n + 1].0;
            a += k * trig[n].1;
            b += k * sec[n].c * trig[n].0;
        }
        [
            excited + ground,
            -2.0 * (sin_w * a + cos_w * b),
            2.0 * (cos_w * a - sin_w * b),
            excited - ground,
        ]
    }

    fn ajc_components(&self, trig: &[(f64, f64)], sin_w: f64, cos_w: f64) -> [f64; 4] {
        let w = &self.weights;
        let sec = &self.sectors;
        let mut ground = 0.0;
        let mut excited = 0.0;
        for n in 0..sec.len() {
            let (sn, cn) = trig[n];
            ground += w[n] * (cn * cn + sec[n].c * sec[n].c * sn * sn);
            let flip = sec[n].s * sn;
            excited += w[n] * flip * flip;
        }
        // Coherence between |e,n> (sector n-1) and |g,n> (sector n), n >= 1:
        // r1 = 2 (sin wt A - cos wt B), r2 = 2 (cos wt A + sin wt B).
        let mut a = 0.0;
        let mut b = 0.0;
        for n in 1..sec.len() {
            let k = self.cross_weights[n - 1] * sec[n - 1].s * trig[n - 1].0;
            a += k * trig[n].1;
            b += k * sec[n].c * trig[n].0;
        }
        [
            excited + ground,
            2.0 * (sin_w * a - cos_w * b),
            2.0 * (cos_w * a + sin_w * b),
            excited - ground,
        ]
    }

    /// Sector amplitudes `xi`, `eta` and phase-carrying weights at `tau`.
    pub fn qubit_amplitudes(&self, tau: f64) -> Result<QubitAmplitudes> {
        Self::check_tau(tau)?;
        let wt = self.params.f * tau;
        let offset = match self.params.model {
            ModelKind::Jc => 0.0,
            ModelKind::Ajc => 1.0,
        };
        let sectors = self
            .sectors
            .iter()
            .enumerate()
            .map(|(n, sec)| {
                let (sn, cn) = (sec.rabi * tau).sin_cos();
                SectorAmplitude {
                    n,
                    xi: C64::new(cn, sec.c * sn),
                    eta: sec.s * sn,
                    weight: C64::from_polar(sec.sqrt_weight, -wt * (n as f64 + offset)),
                }
            })
            .collect();
        Ok(QubitAmplitudes {
            model: self.params.model,
            sectors,
        })
    }

    /// Joint atom-field amplitudes `<a, n | Psi(tau)>`.
    pub fn joint_amplitudes(&self, tau: f64) -> Result<JointStateTable> {
        let table = self.qubit_amplitudes(tau)?.to_joint_table();
        self.check_norm(tau, table.norm_sq())?;
        Ok(table)
    }
}

fn require_model(params: &ModelParams, model: ModelKind) -> Result<()> {
    if params.model != model {
        return Err(Error::InvalidParams(format!(
            "expected a {model} model, got {}",
            params.model
        )));
    }
    Ok(())
}

/// JC Bloch vector at `tau` with the given truncation.
pub fn bloch_jc(params: &ModelParams, tau: f64, trunc: FockTruncation) -> Result<BlochFourVector> {
    require_model(params, ModelKind::Jc)?;
    Evolution::with_truncation(*params, trunc)?.bloch(tau)
}

/// aJC Bloch vector at `tau` with the given truncation.
pub fn bloch_ajc(params: &ModelParams, tau: f64, trunc: FockTruncation) -> Result<BlochFourVector> {
    require_model(params, ModelKind::Ajc)?;
    Evolution::with_truncation(*params, trunc)?.bloch(tau)
}

pub fn joint_amplitudes(params: &ModelParams, tau: f64, trunc: FockTruncation) -> Result<JointStateTable> {
    Evolution::with_truncation(*params, trunc)?.joint_amplitudes(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn params(model: ModelKind, alpha: f64, beta: f64, f: f64) -> ModelParams {
        ModelParams::new(model, alpha, beta, f, 1.0).unwrap()
    }

    #[test]
    fn poisson_examples() {
        let (w, trunc) = poisson_weights(0.0, 1e-12).unwrap();
        assert_eq!(w[0], 1.0);
        assert!(w[1..].iter().all(|&p| p == 0.0));
        assert_eq!(trunc.n_max, MIN_N_MAX);

        let (w, _) = poisson_weights(1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(w[0], 0.36787944117144233, epsilon = 1e-16);

        // Frozen from a lgamma-based cumulative Poisson(49) sum: the first
        // index with CDF >= 1 - 1e-12 is 106 (survival 5.5e-13 there).
        let (w, trunc) = poisson_weights(7.0, 1e-12).unwrap();
        assert_eq!(trunc.n_max, 106);
        assert_eq!(w.len(), 107);
        assert!(w.iter().sum::<f64>() >= 1.0 - 1e-12);
    }

    #[test]
    fn poisson_errors() {
        assert!(poisson_weights(60.0, 1e-12).is_ok());
        assert!(matches!(poisson_weights(70.0, 1e-12), Err(Error::NonConvergent { .. })));
        assert!(matches!(
            poisson_weights_capped(7.0, 1e-12, 50),
            Err(Error::NonConvergent { .. })
        ));
        assert!(poisson_weights(-1.0, 1e-12).is_err());
        assert!(poisson_weights(1.0, 0.0).is_err());
        assert!(poisson_weights(1.0, 1.0).is_err());
    }

    #[test]
    fn saddle_point_matches_recurrence() {
        // Both routes are valid for mean 49; the saddle point must agree to ulps.
        let (w, _) = poisson_weights(7.0, 1e-12).unwrap();
        for (n, p) in w.iter().enumerate().skip(1) {
            let q = poisson_pmf_saddle(n, 49.0);
            assert!((p - q).abs() <= 1e-13 * p.max(1e-300), "n={n}: {p} vs {q}");
        }
        // Near the switch-over the two evaluations still agree.
        let mean: f64 = 699.0;
        let mut p = (-mean).exp();
        for n in 0..900usize {
            if n > 0 {
                p *= mean / n as f64;
            }
            if p > 1e-20 {
                assert!((p - poisson_pmf_saddle(n, mean)).abs() <= 1e-12 * p, "n={n}");
            }
        }
    }

    #[test]
    fn poisson_large_alpha_uses_log_domain() {
        // alpha^2 = 2500: exp(-2500) underflows, the log route must still normalize.
        let (w, trunc) = poisson_weights(50.0, 1e-12).unwrap();
        let total: f64 = w.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-11);
        assert!(trunc.n_max > 2500 && trunc.n_max < FOCK_CAP);
        let mode = w
            .iter()
            .cloned()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
            .0;
        assert!((2499..=2500).contains(&mode));
    }

    #[test]
    fn jc_coefficient_examples() {
        let p = params(ModelKind::Jc, 1.0, 0.0, 1.0);
        assert_eq!(
            jc_coefficients(4, &p),
            RabiCoefficients {
                rabi: 2.0,
                c: 0.0,
                s: 1.0
            }
        );
        let p = params(ModelKind::Jc, 1.0, 3.0, 1.0);
        let co = jc_coefficients(4, &p);
        assert_abs_diff_eq!(co.rabi, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(co.c, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(co.s, 0.8, epsilon = 1e-15);
        let p = params(ModelKind::Jc, 1.0, 2.0, 1.0);
        assert_eq!(
            jc_coefficients(0, &p),
            RabiCoefficients {
                rabi: 1.0,
                c: 1.0,
                s: 0.0
            }
        );
        let p = params(ModelKind::Jc, 1.0, 0.0, 1.0);
        assert_eq!(
            jc_coefficients(0, &p),
            RabiCoefficients {
                rabi: 0.0,
                c: 1.0,
                s: 0.0
            }
        );
    }

    #[test]
    fn ajc_coefficient_examples() {
        let p = params(ModelKind::Ajc, 1.0, 1.0, 1.0);
        let co = ajc_coefficients(1, &p);
        assert_abs_diff_eq!(co.rabi, 3.25f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(co.rabi, 1.802776, epsilon = 1e-6);
        assert_abs_diff_eq!(co.c, 0.832050, epsilon = 1e-6);
        assert_abs_diff_eq!(co.s, 0.554700, epsilon = 1e-6);
        assert_abs_diff_eq!(co.c * co.c + co.s * co.s, 1.0, epsilon = 1e-15);

        let p = params(ModelKind::Ajc, 1.0, 0.0, 0.0);
        assert_eq!(
            ajc_coefficients(1, &p),
            RabiCoefficients {
                rabi: 1.0,
                c: 0.0,
                s: 1.0
            }
        );
        assert_eq!(
            ajc_coefficients(0, &p),
            RabiCoefficients {
                rabi: 0.0,
                c: 1.0,
                s: 0.0
            }
        );
    }

    #[test]
    fn coefficients_are_normalized() {
        for (beta, f) in [(0.0, 1e-7), (3.0, 0.5), (-40.0, 2.0), (175.0, 100.0)] {
            let p = params(ModelKind::Jc, 1.0, beta, f);
            for n in 0..300 {
                for co in [jc_coefficients(n, &p), ajc_coefficients(n, &p)] {
                    if co.rabi > 0.0 {
                        assert_abs_diff_eq!(co.c * co.c + co.s * co.s, 1.0, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn initial_state_is_ground() {
        for model in [ModelKind::Jc, ModelKind::Ajc] {
            let evo = Evolution::new(params(model, 7.0, 13.0, 2.0), 1e-12).unwrap();
            let b = evo.bloch(0.0).unwrap();
            assert_abs_diff_eq!(b.r0(), 1.0, epsilon = 1e-11);
            assert_eq!((b.r1(), b.r2()), (0.0, 0.0));
            assert_abs_diff_eq!(b.r3(), -1.0, epsilon = 1e-11);

            let table = evo.joint_amplitudes(0.0).unwrap();
            for &(level, n, amp) in table.entries() {
                match level {
                    AtomLevel::Ground => assert_abs_diff_eq!(amp.re, evo.weights()[n].sqrt(), epsilon = 1e-16),
                    AtomLevel::Excited => assert_eq!(amp.norm(), 0.0),
                }
            }
        }
    }

    #[test]
    fn vacuum_jc_is_inert() {
        let evo = Evolution::new(params(ModelKind::Jc, 0.0, 0.0, 1.0), 1e-12).unwrap();
        for tau in [0.3, 1.0, 17.5] {
            assert_eq!(evo.bloch(tau).unwrap().components(), [1.0, 0.0, 0.0, -1.0]);
        }
    }

    #[test]
    fn vacuum_ajc_rabi_cycle() {
        let p = params(ModelKind::Ajc, 0.0, 0.0, 0.0);
        let evo = Evolution::new(p, 1e-12).unwrap();
        for tau in [0.1, 0.7, 2.3, 9.0] {
            let b = evo.bloch(tau).unwrap();
            assert_abs_diff_eq!(b.r3(), -(2.0 * tau).cos(), epsilon = 1e-14);
            assert_abs_diff_eq!(b.r0(), 1.0, epsilon = 1e-15);
        }
        let mid = evo.bloch(FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(crate::measures::concurrence(&mid), 1.0, epsilon = 1e-7);
        let top = evo.bloch(FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(top.r3(), 1.0, epsilon = 1e-15);

        let tau = 0.9;
        let table = evo.joint_amplitudes(tau).unwrap();
        let e1 = table.amplitude(AtomLevel::Excited, 1);
        assert_abs_diff_eq!(e1.re, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(e1.im, -tau.sin(), epsilon = 1e-16);
    }

    #[test]
    fn joint_norm_at_alpha_seven() {
        for model in [ModelKind::Jc, ModelKind::Ajc] {
            let evo = Evolution::new(params(model, 7.0, 0.0, 1e-7), 1e-12).unwrap();
            let table = evo.joint_amplitudes(30.0).unwrap();
            assert_abs_diff_eq!(table.norm_sq(), 1.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn short_truncation_is_an_error() {
        let p = params(ModelKind::Jc, 7.0, 0.0, 1e-7);
        let trunc = FockTruncation {
            n_max: 40,
            tail_bound: 1e-12,
        };
        assert!(matches!(bloch_jc(&p, 1.0, trunc), Err(Error::Truncation { .. })));
        let ok = FockTruncation {
            n_max: 106,
            tail_bound: 1e-12,
        };
        assert!(bloch_jc(&p, 1.0, ok).is_ok());
        assert!(matches!(bloch_ajc(&p, 1.0, ok), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn bad_inputs() {
        assert!(ModelParams::new(ModelKind::Jc, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(ModelKind::Jc, -1.0, 0.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(ModelKind::Jc, 1.0, 0.0, -1.0, 1.0).is_err());
        assert!(ModelParams::new(ModelKind::Jc, 1.0, f64::INFINITY, 0.0, 1.0).is_err());
        let evo = Evolution::new(params(ModelKind::Jc, 1.0, 0.0, 0.0), 1e-12).unwrap();
        assert!(evo.bloch(-1.0).is_err());
        assert!(evo.bloch(f64::NAN).is_err());
        assert_eq!("AJC".parse::<ModelKind>().unwrap(), ModelKind::Ajc);
        assert!("xyz".parse::<ModelKind>().is_err());
    }

    #[test]
    fn coupling_rate_only_rescales_time() {
        // tau = g t is the only time variable, so g itself drops out.
        let a = Evolution::new(ModelParams::new(ModelKind::Ajc, 3.0, 2.0, 0.5, 1.0).unwrap(), 1e-12).unwrap();
        let b = Evolution::new(ModelParams::new(ModelKind::Ajc, 3.0, 2.0, 0.5, 4.0).unwrap(), 1e-12).unwrap();
        for tau in [0.5, 3.0, 11.0] {
            let (x, y) = (a.bloch(tau).unwrap(), b.bloch(tau).unwrap());
            for (u, v) in x.components().iter().zip(y.components()) {
                assert_abs_diff_eq!(*u, v, epsilon = 1e-13);
            }
        }
    }
}
