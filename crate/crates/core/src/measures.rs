//! Scalar purity and entanglement quantifiers of a reduced qubit state.
//!
//! Every quantity is a function of the Bloch four-vector alone and accepts an
//! un-normalized trace `r0 > 0`; for `r0 = 1` they reduce to the usual
//! textbook forms. All are built on the mixed state measure
//! `M = det(rho) = (r0^2 - r^2) / 4`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::BlochFourVector;

/// Eigenvalues below this are reported as [`Error::NegativeEigenvalue`].
pub const EIGENVALUE_FLOOR: f64 = -1e-12;

/// `M = (r0^2 - r^2) / 4`, the coefficient of the completely mixed part of `rho^2`.
pub fn mixed_state_measure(bloch: &BlochFourVector) -> f64 {
    let r0 = bloch.r0();
    let r = bloch.norm();
    // (r0 - r)(r0 + r) keeps relative accuracy near pure states.
    (0.25 * (r0 - r) * (r0 + r)).max(0.0)
}

/// `P = Tr(rho^2) = r0^2 - 2M`.
pub fn purity_measure(bloch: &BlochFourVector) -> f64 {
    let r0 = bloch.r0();
    r0 * r0 - 2.0 * mixed_state_measure(bloch)
}

/// `C = 2 sqrt(M) = sqrt(r0^2 - r^2)`.
pub fn concurrence(bloch: &BlochFourVector) -> f64 {
    2.0 * mixed_state_measure(bloch).sqrt()
}

/// Degree of purity `tan(phi) = |r| / r0` and its principal angle in `[0, pi/4]`.
pub fn degree_of_purity(bloch: &BlochFourVector) -> (f64, f64) {
    let tan_phi = (bloch.norm() / bloch.r0()).min(1.0);
    (tan_phi, tan_phi.atan())
}

/// Covariant squared length `R_mu R^mu = r0^2 - r1^2 - r2^2 - r3^2`.
pub fn covariant_concurrence_sq(bloch: &BlochFourVector) -> f64 {
    let [r0, r1, r2, r3] = bloch.components();
    r0 * r0 - r1 * r1 - r2 * r2 - r3 * r3
}

fn neg_xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Base-2 von Neumann entropy of the eigenvalue pair, with `0 log 0 = 0`.
pub fn von_neumann_entropy(eps_minus: f64, eps_plus: f64) -> Result<f64> {
    for value in [eps_minus, eps_plus] {
        if value < EIGENVALUE_FLOOR || value.is_nan() {
            return Err(Error::NegativeEigenvalue { value });
        }
    }
    Ok(neg_xlog2x(eps_minus) + neg_xlog2x(eps_plus))
}

/// Binary entropy `H((1 + tan phi)/2)` written in terms of the degree of purity.
pub fn binary_entropy_of_formation(tan_phi: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&tan_phi) {
        return Err(Error::OutOfRange {
            name: "tan_phi",
            value: tan_phi,
            range: "[0, 1]",
        });
    }
    let t = tan_phi.clamp(0.0, 1.0);
    Ok(neg_xlog2x(0.5 * (1.0 + t)) + neg_xlog2x(0.5 * (1.0 - t)))
}

/// All quantifiers derived from one Bloch four-vector.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PurityReport {
    pub mixed_measure: f64,
    pub purity: f64,
    pub concurrence: f64,
    pub tangle: f64,
    pub tan_phi: f64,
    pub phi: f64,
    /// `(r0 -+ C)/2`; `lambda_minus` is the skew-information nonclassicality.
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    /// Eigenvalues of `rho`, `(r0 -+ |r|)/2`.
    pub eps_minus: f64,
    pub eps_plus: f64,
    /// Polar form of the complex amplitude `(r0 + i|r|)/sqrt(2)`.
    pub amp_mag: f64,
    pub amp_phase: f64,
    pub entropy_vn: f64,
    pub entropy_binary: f64,
    /// Probability of the excited level, `(1 + r3)/2`.
    pub excitation: f64,
}

impl PurityReport {
    /// Nonclassicality quantifier `N(rho)`.
    pub fn nonclassicality(&self) -> f64 {
        self.lambda_minus
    }
}

pub fn purity_report(bloch: &BlochFourVector) -> PurityReport {
    let r0 = bloch.r0();
    let r = bloch.norm();
    let mixed_measure = mixed_state_measure(bloch);
    let concurrence = 2.0 * mixed_measure.sqrt();
    let (tan_phi, phi) = degree_of_purity(bloch);
    let eps_minus = (0.5 * (r0 - r)).max(0.0);
    let eps_plus = 0.5 * (r0 + r);
    let purity = r0 * r0 - 2.0 * mixed_measure;

    PurityReport {
        mixed_measure,
        purity,
        concurrence,
        tangle: concurrence * concurrence,
        tan_phi,
        phi,
        lambda_minus: 0.5 * (r0 - concurrence),
        lambda_plus: 0.5 * (r0 + concurrence),
        eps_minus,
        eps_plus,
        amp_mag: std::f64::consts::FRAC_1_SQRT_2 * r0.hypot(r),
        amp_phase: r.atan2(r0),
        // Both arguments are non-negative and in range by construction.
        entropy_vn: neg_xlog2x(eps_minus) + neg_xlog2x(eps_plus),
        entropy_binary: neg_xlog2x(0.5 * (1.0 + tan_phi)) + neg_xlog2x(0.5 * (1.0 - tan_phi)),
        excitation: 0.5 * (1.0 + bloch.r3()),
    }
}
