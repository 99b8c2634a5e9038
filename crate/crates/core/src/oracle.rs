//! Brute-force reference paths used to cross-check the closed forms.
//!
//! Nothing here shares code with the Bloch-sum evaluation in
//! [`crate::dynamics`] or the Bloch-angle eigensystem in [`crate::qubit`]:
//! the reduced state is obtained by an explicit partial trace over the joint
//! amplitudes, and eigenvalues come from the characteristic polynomial of the
//! raw matrix entries.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{Evolution, ModelKind, ModelParams, DEFAULT_TAIL_BOUND};
use crate::error::{Error, Result};
use crate::qubit::{bloch_from_density, eigensystem, BlochFourVector, QubitDensityMatrix};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum AtomLevel {
    Excited,
    Ground,
}

impl AtomLevel {
    /// Row/column index in `(e, g)` order.
    pub fn index(self) -> usize {
        match self {
            AtomLevel::Excited => 0,
            AtomLevel::Ground => 1,
        }
    }
}

/// Sparse list of joint amplitudes `<level, n | Psi>`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JointStateTable {
    entries: Vec<(AtomLevel, usize, C64)>,
}

impl JointStateTable {
    pub fn new(entries: Vec<(AtomLevel, usize, C64)>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[(AtomLevel, usize, C64)] {
        &self.entries
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|(_, _, a)| a.norm_sqr()).sum()
    }

    /// Sum of all amplitudes stored for `(level, n)`; zero when absent.
    pub fn amplitude(&self, level: AtomLevel, n: usize) -> C64 {
        self.entries
            .iter()
            .filter(|(l, m, _)| *l == level && *m == n)
            .map(|(_, _, a)| *a)
            .sum()
    }
}

/// `rho[a][b] = sum_n <a,n|Psi> conj(<b,n|Psi>)`.
pub fn reduce_to_atom(state: &JointStateTable) -> QubitDensityMatrix {
    let max_n = state.entries.iter().map(|(_, n, _)| *n).max().unwrap_or(0);
    let mut columns = vec![[C64::new(0.0, 0.0); 2]; max_n + 1];
    for &(level, n, amp) in &state.entries {
        columns[n][level.index()] += amp;
    }
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for col in &columns {
        for a in 0..2 {
            for b in 0..2 {
                rho[a][b] += col[a] * col[b].conj();
            }
        }
    }
    QubitDensityMatrix::new(rho)
}

/// Eigenvalues of a Hermitian 2x2 matrix as roots of
/// `x^2 - Tr(rho) x + det(rho)`, sorted ascending.
pub fn eigen_bruteforce(rho: &QubitDensityMatrix) -> Result<(f64, f64)> {
    let a = rho.get(0, 0).re;
    let d = rho.get(1, 1).re;
    let trace = a + d;
    let det = a * d - (rho.get(0, 1) * rho.get(1, 0)).re;
    let discriminant = trace * trace - 4.0 * det;
    if discriminant < -1e-12 {
        return Err(Error::ComplexRoots { discriminant });
    }
    let root = discriminant.max(0.0).sqrt();
    // q = (trace + sign(trace) root) / 2 avoids cancellation; the other root is det / q.
    let q = 0.5 * (trace + trace.signum() * root);
    let (x1, x2) = if q == 0.0 {
        (0.5 * root, -0.5 * root)
    } else {
        (q, det / q)
    };
    Ok(if x1 <= x2 { (x1, x2) } else { (x2, x1) })
}

/// Draw for one closed-form vs partial-trace comparison.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct OracleCase {
    pub params: ModelParams,
    pub tau: f64,
}

/// Random configurations over `alpha in [0,8]`, `beta in [-200,200]`,
/// `f in [0,100]`, `tau in [0,50]`, alternating models.
pub fn random_cases(samples: usize, seed: u64) -> Vec<OracleCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let model = if i % 2 == 0 { ModelKind::Jc } else { ModelKind::Ajc };
            let params = ModelParams {
                model,
                alpha: rng.gen_range(0.0..=8.0),
                beta: rng.gen_range(-200.0..=200.0),
                f: rng.gen_range(0.0..=100.0),
                g: 1.0,
            };
            OracleCase {
                params,
                tau: rng.gen_range(0.0..=50.0),
            }
        })
        .collect()
}

/// Uniform random valid Bloch vectors with `r0 = 1` (`|r|` uniform in `[0, 1]`).
pub fn random_bloch_vectors(samples: usize, seed: u64) -> Vec<BlochFourVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let radius: f64 = rng.gen_range(0.0..=1.0);
            let cos_t: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let sin_t = (1.0 - cos_t * cos_t).sqrt();
            BlochFourVector::new(
                1.0,
                radius * sin_t * phi.cos(),
                radius * sin_t * phi.sin(),
                radius * cos_t,
            )
            .expect("radius <= 1")
        })
        .collect()
}

/// Compares the closed-form Bloch vector with the partial trace of the joint
/// state. Returns the largest componentwise deviation.
pub fn closed_form_deviation(case: &OracleCase, tail_bound: f64) -> Result<f64> {
    let evo = Evolution::new(case.params, tail_bound)?;
    let closed = evo.bloch(case.tau)?;
    let traced = bloch_from_density(&reduce_to_atom(&evo.joint_amplitudes(case.tau)?))?;
    Ok(closed
        .components()
        .iter()
        .zip(traced.components())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Largest eigenvalue deviation between [`eigensystem`] and [`eigen_bruteforce`].
pub fn eigen_deviation(bloch: &BlochFourVector) -> Result<f64> {
    let es = eigensystem(bloch);
    let (lo, hi) = eigen_bruteforce(&crate::qubit::density_from_bloch(bloch))?;
    Ok((es.eps_minus - lo).abs().max((es.eps_plus - hi).abs()))
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub eigen_samples: usize,
    pub seed: u64,
    pub bloch_tolerance: f64,
    pub eigen_tolerance: f64,
    pub tail_bound: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 64,
            eigen_samples: 1000,
            seed: 20220410,
            bloch_tolerance: 1e-10,
            eigen_tolerance: 1e-11,
            tail_bound: DEFAULT_TAIL_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub label: String,
    pub deviation: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: usize,
    pub max_bloch_deviation: f64,
    pub max_eigen_deviation: f64,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs both oracle comparisons over seeded random draws.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for case in random_cases(cfg.samples, cfg.seed) {
        let dev = closed_form_deviation(&case, cfg.tail_bound)?;
        report.checks += 1;
        report.max_bloch_deviation = report.max_bloch_deviation.max(dev);
        if dev > cfg.bloch_tolerance {
            let p = case.params;
            report.mismatches.push(Mismatch {
                label: format!(
                    "bloch {} alpha={} beta={} f={} tau={}",
                    p.model, p.alpha, p.beta, p.f, case.tau
                ),
                deviation: dev,
                tolerance: cfg.bloch_tolerance,
            });
        }
    }
    for (i, bloch) in random_bloch_vectors(cfg.eigen_samples, cfg.seed ^ 0x5eed)
        .iter()
        .enumerate()
    {
        let dev = eigen_deviation(bloch)?;
        report.checks += 1;
        report.max_eigen_deviation = report.max_eigen_deviation.max(dev);
        if dev > cfg.eigen_tolerance {
            report.mismatches.push(Mismatch {
                label: format!("eigen #{i} {:?}", bloch.components()),
                deviation: dev,
                tolerance: cfg.eigen_tolerance,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn reduce_examples() {
        let rho = reduce_to_atom(&JointStateTable::new(vec![(AtomLevel::Ground, 0, c(1.0, 0.0))]));
        assert_eq!(rho, QubitDensityMatrix::from_real([[0.0, 0.0], [0.0, 1.0]]));

        let rho = reduce_to_atom(&JointStateTable::new(vec![
            (AtomLevel::Ground, 0, c(FRAC_1_SQRT_2, 0.0)),
            (AtomLevel::Excited, 1, c(0.0, -FRAC_1_SQRT_2)),
        ]));
        assert!(rho.sub(&QubitDensityMatrix::identity().scale(0.5)).max_abs() < 1e-15);

        let rho = reduce_to_atom(&JointStateTable::new(vec![
            (AtomLevel::Ground, 0, c(FRAC_1_SQRT_2, 0.0)),
            (AtomLevel::Excited, 0, c(FRAC_1_SQRT_2, 0.0)),
        ]));
        assert!(
            rho.sub(&QubitDensityMatrix::from_real([[0.5, 0.5], [0.5, 0.5]]))
                .max_abs()
                < 1e-15
        );
    }

    #[test]
    fn bruteforce_eigen_examples() {
        assert_eq!(
            eigen_bruteforce(&QubitDensityMatrix::identity().scale(0.5)).unwrap(),
            (0.5, 0.5)
        );
        assert_eq!(
            eigen_bruteforce(&QubitDensityMatrix::from_real([[0.0, 0.0], [0.0, 1.0]])).unwrap(),
            (0.0, 1.0)
        );
        // (1, 0.6, 0, 0.8): trace 1, det = 0.9*0.1 - 0.09 = 0, discriminant 1.
        let rho = QubitDensityMatrix::from_real([[0.9, 0.3], [0.3, 0.1]]);
        let (lo, hi) = eigen_bruteforce(&rho).unwrap();
        assert_abs_diff_eq!(lo, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bruteforce_rejects_complex_roots() {
        // Not Hermitian: trace 0, det 1 -> discriminant -4.
        let m = QubitDensityMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]]);
        assert!(matches!(eigen_bruteforce(&m), Err(Error::ComplexRoots { .. })));
        let zero = QubitDensityMatrix::from_real([[0.0, 0.0], [0.0, 0.0]]);
        assert_eq!(eigen_bruteforce(&zero).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        assert_eq!(random_cases(8, 3), random_cases(8, 3));
        assert_ne!(random_cases(8, 3), random_cases(8, 4));
        let v = random_bloch_vectors(50, 1);
        assert!(v.iter().all(|b| b.norm() <= 1.0));
    }

    #[test]
    fn small_verification_passes() {
        let cfg = VerifyConfig {
            samples: 8,
            eigen_samples: 50,
            ..VerifyConfig::default()
        };
        let report = run_verification(&cfg).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        assert_eq!(report.checks, 58);
    }

    #[test]
    fn absurd_tolerance_fails() {
        let cfg = VerifyConfig {
            samples: 4,
            eigen_samples: 10,
            bloch_tolerance: 1e-30,
            eigen_tolerance: 1e-30,
            ..VerifyConfig::default()
        };
        assert!(!run_verification(&cfg).unwrap().passed());
    }
}
