//! Bloch-parameterized algebra of a single qubit density operator.
//!
//! A reduced atomic state is carried as a four-vector `R = (r0, r1, r2, r3)`
//! with `rho = (r0 I + r1 s1 + r2 s2 + r3 s3) / 2`. Matrices are always laid out
//! in the atomic basis order `(e, g)`, so `s3 = diag(1, -1)`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack allowed for `|r|` beyond `r0` before a vector is rejected.
/// Vectors inside the slack are rescaled onto the Bloch sphere.
pub const CLAMP_TOL: f64 = 1e-9;

/// Hermiticity slack accepted by [`bloch_from_density`].
pub const HERMITIAN_TOL: f64 = 1e-9;

/// The Bloch radius four-vector `(r0, r1, r2, r3)`.
///
/// Construction enforces `r0 > 0` and `|r| <= r0`; see [`BlochFourVector::new`].
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochFourVector {
    r0: f64,
    r1: f64,
    r2: f64,
    r3: f64,
}

impl BlochFourVector {
    /// Validates and, when `|r|` overshoots `r0` by no more than a relative
    /// [`CLAMP_TOL`], rescales the spatial part to length `r0`.
    pub fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> Result<Self> {
        let norm = (r1 * r1 + r2 * r2 + r3 * r3).sqrt();
        if !(r0.is_finite() && r1.is_finite() && r2.is_finite() && r3.is_finite()) {
            return Err(Error::InvalidBloch {
                r0,
                norm,
                reason: "non-finite component",
            });
        }
        if r0 <= 0.0 {
            return Err(Error::InvalidBloch {
                r0,
                norm,
                reason: "r0 must be positive",
            });
        }
        if norm <= r0 {
            return Ok(Self { r0, r1, r2, r3 });
        }
        if norm <= r0 * (1.0 + CLAMP_TOL) {
            let scale = r0 / norm;
            return Ok(Self {
                r0,
                r1: r1 * scale,
                r2: r2 * scale,
                r3: r3 * scale,
            });
        }
        Err(Error::InvalidBloch {
            r0,
            norm,
            reason: "|r| exceeds r0",
        })
    }

    /// The pure ground state `|g><g|`, i.e. `(1, 0, 0, -1)`.
    pub fn ground() -> Self {
        Self {
            r0: 1.0,
            r1: 0.0,
            r2: 0.0,
            r3: -1.0,
        }
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn r3(&self) -> f64 {
        self.r3
    }

    pub fn components(&self) -> [f64; 4] {
        [self.r0, self.r1, self.r2, self.r3]
    }

    /// `|r|`, the length of the spatial part.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }

    /// Length of the transverse part `sqrt(r1^2 + r2^2)`.
    pub fn transverse(&self) -> f64 {
        self.r1.hypot(self.r2)
    }
}

/// A 2x2 complex matrix in `(e, g)` order. Used for reduced density operators.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QubitDensityMatrix {
    pub elements: [[C64; 2]; 2],
}

impl QubitDensityMatrix {
    pub fn new(elements: [[C64; 2]; 2]) -> Self {
        Self { elements }
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new([
            [C64::new(m[0][0], 0.0), C64::new(m[0][1], 0.0)],
            [C64::new(m[1][0], 0.0), C64::new(m[1][1], 0.0)],
        ])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.elements[row][col]
    }

    pub fn trace(&self) -> C64 {
        self.elements[0][0] + self.elements[1][1]
    }

    pub fn det(&self) -> C64 {
        let m = &self.elements;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Largest `|m[i][j] - conj(m[j][i])|` over all index pairs.
    pub fn hermiticity_error(&self) -> f64 {
        let m = &self.elements;
        let diag = m[0][0].im.abs().max(m[1][1].im.abs()) * 2.0;
        diag.max((m[0][1] - m[1][0].conj()).norm())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let a = &self.elements;
        let b = &rhs.elements;
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.elements;
        out.iter_mut().flatten().for_each(|z| *z *= s);
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.elements;
        for (o, r) in out.iter_mut().flatten().zip(rhs.elements.iter().flatten()) {
            *o -= r;
        }
        Self::new(out)
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.elements.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[C64; 2]) -> [C64; 2] {
        let m = &self.elements;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }
}

/// `rho = 1/2 [[r0 + r3, r1 - i r2], [r1 + i r2, r0 - r3]]`.
pub fn density_from_bloch(bloch: &BlochFourVector) -> QubitDensityMatrix {
    let [r0, r1, r2, r3] = bloch.components();
    QubitDensityMatrix::new([
        [C64::new(0.5 * (r0 + r3), 0.0), C64::new(0.5 * r1, -0.5 * r2)],
        [C64::new(0.5 * r1, 0.5 * r2), C64::new(0.5 * (r0 - r3), 0.0)],
    ])
}

/// `r_j = Tr(s_j rho)`.
pub fn bloch_from_density(rho: &QubitDensityMatrix) -> Result<BlochFourVector> {
    let deviation = rho.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let m = &rho.elements;
    let ee = m[0][0].re;
    let gg = m[1][1].re;
    // Average the two off-diagonal entries so tiny anti-Hermitian noise cancels.
    let eg = 0.5 * (m[0][1] + m[1][0].conj());
    BlochFourVector::new(ee + gg, 2.0 * eg.re, -2.0 * eg.im, ee - gg)
}

/// Splits the purity operator as `rho^2 = coef * rho - M * I`; returns `(coef, M)`
/// with `coef = r0` and `M = (r0^2 - r^2) / 4`.
pub fn purity_decomposition(bloch: &BlochFourVector) -> (f64, f64) {
    let r0 = bloch.r0();
    (r0, 0.25 * (r0 * r0 - bloch.norm_sq()))
}

/// Eigen-decomposition of `rho` expressed through the Bloch angles.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub eps_minus: f64,
    pub eps_plus: f64,
    /// Eigenvector of `eps_minus`, `(e, g)` components.
    pub psi_minus: [C64; 2],
    /// Eigenvector of `eps_plus`, `(e, g)` components.
    pub psi_plus: [C64; 2],
    /// Polar angle of `r`, in `[0, pi]`.
    pub theta: f64,
    /// Azimuth of `r` in the `(r1, r2)` plane, in `(-pi, pi]`.
    pub phi_az: f64,
}

impl EigenSystem {
    /// `max(|rho psi_- - eps_- psi_-|, |rho psi_+ - eps_+ psi_+|)`.
    pub fn max_residual(&self, rho: &QubitDensityMatrix) -> f64 {
        let res = |psi: &[C64; 2], eps: f64| {
            let v = rho.apply(psi);
            ((v[0] - psi[0] * eps).norm_sqr() + (v[1] - psi[1] * eps).norm_sqr()).sqrt()
        };
        res(&self.psi_minus, self.eps_minus).max(res(&self.psi_plus, self.eps_plus))
    }
}

/// Eigenvalues `(r0 -+ |r|)/2` and eigenvectors of `rho`.
///
/// The transition operator `r.s` maps `|g>` to `|r| |phi_g>` with
/// `|phi_g> = -cos(theta)|g> + sin(theta) e^{-i phi}|e>`; the eigenvectors are the
/// combinations `|g> +- |phi_g>`. Normalizing them gives
///
/// ```text
/// psi_+ = sin(theta/2)|g> + cos(theta/2) e^{-i phi}|e>
/// psi_- = cos(theta/2)|g> - sin(theta/2) e^{-i phi}|e>
/// ```
///
/// which stays well conditioned everywhere. When `r` lies on the `s3` axis
/// (or vanishes) the computational basis is returned instead, with
/// `psi_+ = |e>` for `r3 > 0` and `psi_+ = |g>` otherwise.
pub fn eigensystem(bloch: &BlochFourVector) -> EigenSystem {
    let r0 = bloch.r0();
    let norm = bloch.norm();
    let perp = bloch.transverse();
    let eps_minus = 0.5 * (r0 - norm);
    let eps_plus = 0.5 * (r0 + norm);
    let theta = perp.atan2(bloch.r3());
    let phi_az = if perp == 0.0 { 0.0 } else { bloch.r2().atan2(bloch.r1()) };

    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let (psi_minus, psi_plus) = if perp == 0.0 {
        if bloch.r3() > 0.0 {
            ([zero, one], [one, zero])
        } else {
            ([one, zero], [zero, one])
        }
    } else {
        let (s, c) = (0.5 * theta).sin_cos();
        let phase = C64::from_polar(1.0, -phi_az);
        ([-phase * s, C64::new(c, 0.0)], [phase * c, C64::new(s, 0.0)])
    };

    EigenSystem {
        eps_minus,
        eps_plus,
        psi_minus,
        psi_plus,
        theta,
        phi_az,
    }
}
