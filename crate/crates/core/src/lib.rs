//! Reduced-state purity and entanglement of a two-level atom driven by a
//! coherent field under the Jaynes-Cummings (JC) and anti-Jaynes-Cummings
//! (aJC) interactions.
//!
//! The atom's reduced density operator is carried as a Bloch four-vector
//! `(r0, r1, r2, r3)`. [`dynamics`] evaluates that vector in closed form at any
//! scaled time `tau = g t`, [`measures`] turns it into purity, concurrence,
//! degree of purity and entropies, and [`scan`] sweeps time grids and
//! parameter lists. [`oracle`] holds independent brute-force checks.
//!
//! ```
//! use jcpurity::{Evolution, ModelKind, ModelParams, purity_report};
//!
//! let params = ModelParams::new(ModelKind::Jc, 7.0, 0.0, 1e-7, 1.0).unwrap();
//! let evo = Evolution::new(params, 1e-12).unwrap();
//! let report = purity_report(&evo.bloch(21.7).unwrap());
//! assert!(report.tan_phi > 0.9);
//! assert!((report.tan_phi.powi(2) + report.concurrence.powi(2) - 1.0).abs() < 1e-10);
//! ```

pub mod dynamics;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod qubit;
pub mod scan;

pub use dynamics::{
    ajc_coefficients, bloch_ajc, bloch_jc, jc_coefficients, joint_amplitudes, poisson_weights, Evolution,
    FockTruncation, ModelKind, ModelParams, QubitAmplitudes, RabiCoefficients, SectorAmplitude, DEFAULT_TAIL_BOUND,
};
pub use error::{Error, Result};
pub use measures::{
    binary_entropy_of_formation, concurrence, covariant_concurrence_sq, degree_of_purity, mixed_state_measure,
    purity_measure, purity_report, von_neumann_entropy, PurityReport,
};
pub use oracle::{eigen_bruteforce, reduce_to_atom, AtomLevel, JointStateTable};
pub use qubit::{
    bloch_from_density, density_from_bloch, eigensystem, purity_decomposition, BlochFourVector, EigenSystem,
    QubitDensityMatrix,
};
pub use scan::{run_scan, run_sweep, scan_evolution, ScanRecord, SweepParam, SweepSeries, TimeGrid};
