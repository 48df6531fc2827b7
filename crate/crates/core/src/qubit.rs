//! Coin-probability triples, density matrices, spinors, and the maps between them.
//!
//! A qubit state is carried by three classical coins. Coin `i` lands "up" with
//! probability `p_i`; for a spin-1/2 state these are the probabilities of the
//! `+1/2` projection along x, y and z. The density matrix is
//!
//! ```text
//!     | p3                         (p1 - 1/2) - i(p2 - 1/2) |
//! ρ = |                                                     |
//!     | (p1 - 1/2) + i(p2 - 1/2)   1 - p3                   |
//! ```
//!
//! which is a legitimate state exactly when the triple lies in the ball
//! `(p1-1/2)² + (p2-1/2)² + (p3-1/2)² ≤ 1/4`, and pure on its surface.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Ket, Matrix2};

/// Tolerance for the pure / mixed / classical classification and for
/// orthogonality decisions.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Tolerance on Hermiticity and unit trace of a density matrix.
pub const MATRIX_TOL: f64 = 1e-12;

/// Below this value of `p3 (1 - p3)` the spinor phase is undefined and is set to 0.
pub const POLE_TOL: f64 = 1e-24;

/// Slack allowed when rounding pushes a computed probability just outside [0, 1].
const ROUNDING_SLACK: f64 = 1e-9;

/// Probabilities `(p1, p2, p3)` of "up" for the x, y and z coins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "CoinState", try_from = "CoinState")]
pub struct ProbabilityTriple {
    p1: f64,
    p2: f64,
    p3: f64,
}

/// Persistence form: `{"kind":"coin-state","p1":..,"p2":..,"p3":..}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinState {
    pub kind: CoinStateKind,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoinStateKind {
    #[serde(rename = "coin-state")]
    CoinState,
}

impl From<ProbabilityTriple> for CoinState {
    fn from(p: ProbabilityTriple) -> Self {
        CoinState {
            kind: CoinStateKind::CoinState,
            p1: p.p1,
            p2: p.p2,
            p3: p.p3,
        }
    }
}

impl TryFrom<CoinState> for ProbabilityTriple {
    type Error = Error;
    fn try_from(s: CoinState) -> Result<Self> {
        ProbabilityTriple::new(s.p1, s.p2, s.p3)
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ProbabilityOutOfRange { name, value })
    }
}

fn snap_probability(name: &'static str, value: f64) -> Result<f64> {
    if (-ROUNDING_SLACK..=1.0 + ROUNDING_SLACK).contains(&value) {
        Ok(value.clamp(0.0, 1.0))
    } else {
        Err(Error::ProbabilityOutOfRange { name, value })
    }
}

impl ProbabilityTriple {
    /// Any point of the unit cube. Classical (uncorrelated) triples are allowed.
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        Ok(Self {
            p1: check_probability("p1", p1)?,
            p2: check_probability("p2", p2)?,
            p3: check_probability("p3", p3)?,
        })
    }

    /// Like [`ProbabilityTriple::new`], but values within 1e-9 outside [0, 1]
    /// (accumulated rounding) are clamped onto the interval.
    pub fn new_clamped(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        Ok(Self {
            p1: snap_probability("p1", p1)?,
            p2: snap_probability("p2", p2)?,
            p3: snap_probability("p3", p3)?,
        })
    }

    /// Triple from the offsets `p_i - 1/2`.
    pub fn from_offsets(offsets: [f64; 3]) -> Result<Self> {
        Self::new_clamped(0.5 + offsets[0], 0.5 + offsets[1], 0.5 + offsets[2])
    }

    pub fn from_array(p: [f64; 3]) -> Result<Self> {
        Self::new(p[0], p[1], p[2])
    }

    #[inline]
    pub fn p1(&self) -> f64 {
        self.p1
    }

    #[inline]
    pub fn p2(&self) -> f64 {
        self.p2
    }

    #[inline]
    pub fn p3(&self) -> f64 {
        self.p3
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    /// `p_i - 1/2`, the Bloch vector scaled by 1/2.
    pub fn offsets(&self) -> [f64; 3] {
        [self.p1 - 0.5, self.p2 - 0.5, self.p3 - 0.5]
    }

    /// Off-diagonal density-matrix entry `(p1 - 1/2) - i(p2 - 1/2)`.
    pub fn coherence(&self) -> Complex64 {
        Complex64::new(self.p1 - 0.5, -(self.p2 - 0.5))
    }

    /// `(p1-1/2)² + (p2-1/2)² + (p3-1/2)²`.
    pub fn radius2(&self) -> f64 {
        self.offsets().iter().map(|d| d * d).sum()
    }

    pub fn classify(&self) -> Classification {
        is_quantum(self)
    }

    pub fn is_quantum(&self) -> bool {
        self.radius2() <= 0.25 + CLASSIFY_TOL
    }

    pub fn is_pure(&self) -> bool {
        (self.radius2() - 0.25).abs() <= CLASSIFY_TOL
    }

    pub(crate) fn require_quantum(&self) -> Result<()> {
        if self.is_quantum() {
            Ok(())
        } else {
            Err(Error::NotQuantum {
                radius2: self.radius2(),
            })
        }
    }

    pub(crate) fn require_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::NotPure {
                radius2: self.radius2(),
            })
        }
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateClass {
    /// Outside the ball: the coins exist, the qubit state does not.
    Classical,
    /// Strictly inside the ball.
    Mixed,
    /// On the sphere, within [`CLASSIFY_TOL`].
    Pure,
}

impl StateClass {
    pub fn is_quantum(self) -> bool {
        !matches!(self, StateClass::Classical)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: StateClass,
    pub radius2: f64,
}

/// Whether the matrix built from a triple has nonnegative spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Positivity {
    pub nonnegative: bool,
    pub min_eigenvalue: f64,
}

/// Hermitian, unit-trace complex 2x2 matrix.
///
/// Nonnegativity is not enforced, since classical triples map to matrices with
/// a negative eigenvalue; query it with [`DensityMatrix2::positivity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    matrix: Matrix2,
}

impl DensityMatrix2 {
    /// Validates Hermiticity and unit trace to within [`MATRIX_TOL`].
    pub fn new(matrix: Matrix2) -> Result<Self> {
        let deviation = matrix.hermiticity_defect();
        if !(deviation <= MATRIX_TOL) {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if !((trace - 1.0).abs() <= MATRIX_TOL) {
            return Err(Error::TraceNotUnit { trace });
        }
        Ok(Self { matrix })
    }

    /// `|ψ><ψ| / <ψ|ψ>`; `None` when the ket has (numerically) zero norm.
    pub fn projector(ket: &Ket, min_norm2: f64) -> Option<(Self, f64)> {
        let norm2 = crate::matrix::norm_sqr(ket);
        if !(norm2 > min_norm2) {
            return None;
        }
        let matrix = Matrix2::outer(ket, ket).scale(1.0 / norm2);
        Some((Self { matrix }, norm2))
    }

    pub fn from_probabilities(p: &ProbabilityTriple) -> Self {
        let c = p.coherence();
        let matrix = Matrix2::new([
            [Complex64::new(p.p3, 0.0), c],
            [c.conj(), Complex64::new(1.0 - p.p3, 0.0)],
        ]);
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.matrix.hermitian_eigenvalues()
    }

    pub fn positivity(&self) -> Positivity {
        let min_eigenvalue = self.eigenvalues()[0];
        Positivity {
            nonnegative: self.matrix.det().re >= -MATRIX_TOL && min_eigenvalue >= -MATRIX_TOL,
            min_eigenvalue,
        }
    }

    /// `Tr ρ²` from the entries.
    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }
}

/// Normalized spinor `(a, b e^{iγ})` with `a, b ≥ 0` and global phase fixed
/// so that the first component is real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpinor")]
pub struct Spinor2 {
    amplitude0: f64,
    amplitude1: f64,
    phase: f64,
}

#[derive(Deserialize)]
struct RawSpinor {
    amplitude0: f64,
    amplitude1: f64,
    phase: f64,
}

impl TryFrom<RawSpinor> for Spinor2 {
    type Error = Error;
    fn try_from(r: RawSpinor) -> Result<Self> {
        Spinor2::new(r.amplitude0, r.amplitude1, r.phase)
    }
}

impl Spinor2 {
    pub fn new(amplitude0: f64, amplitude1: f64, phase: f64) -> Result<Self> {
        if !(amplitude0 >= 0.0 && amplitude1 >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "spinor amplitudes must be nonnegative, got ({amplitude0}, {amplitude1})"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "spinor phase {phase} is not finite"
            )));
        }
        let norm2 = amplitude0 * amplitude0 + amplitude1 * amplitude1;
        if !((norm2 - 1.0).abs() <= MATRIX_TOL) {
            return Err(Error::SpinorNotNormalized { norm2 });
        }
        Ok(Self {
            amplitude0,
            amplitude1,
            phase: normalize_phase(phase),
        })
    }

    pub fn amplitude0(&self) -> f64 {
        self.amplitude0
    }

    pub fn amplitude1(&self) -> f64 {
        self.amplitude1
    }

    /// Relative phase in `[0, 2π)`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn ket(&self) -> Ket {
        [
            Complex64::new(self.amplitude0, 0.0),
            Complex64::from_polar(self.amplitude1, self.phase),
        ]
    }
}

/// Maps any angle into `[0, 2π)`.
pub fn normalize_phase(angle: f64) -> f64 {
    let t = angle.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Phase of `re + i im` in `[0, 2π)`, with the origin mapped to 0.
pub(crate) fn phase_of(re: f64, im: f64) -> f64 {
    if re == 0.0 && im == 0.0 {
        0.0
    } else {
        normalize_phase(im.atan2(re))
    }
}

/// Phase `γ` with `cos γ ∝ p1 - 1/2`, `sin γ ∝ p2 - 1/2`; 0 at the poles.
pub(crate) fn coin_phase(p: &ProbabilityTriple) -> f64 {
    if p.p3 * (1.0 - p.p3) <= POLE_TOL {
        0.0
    } else {
        phase_of(p.p1 - 0.5, p.p2 - 0.5)
    }
}

/// Builds the density matrix of a triple and reports whether it is nonnegative.
pub fn prob_to_density(p: &ProbabilityTriple) -> (DensityMatrix2, Positivity) {
    let rho = DensityMatrix2::from_probabilities(p);
    let positivity = rho.positivity();
    (rho, positivity)
}

/// Reads `p3 = ρ00`, `p1 = 1/2 + Re ρ01`, `p2 = 1/2 - Im ρ01`.
pub fn density_to_prob(rho: &DensityMatrix2) -> Result<ProbabilityTriple> {
    let rho01 = rho.get(0, 1);
    ProbabilityTriple::new_clamped(0.5 + rho01.re, 0.5 - rho01.im, rho.get(0, 0).re)
}

pub fn is_quantum(p: &ProbabilityTriple) -> Classification {
    let radius2 = p.radius2();
    let class = if (radius2 - 0.25).abs() <= CLASSIFY_TOL {
        StateClass::Pure
    } else if radius2 < 0.25 {
        StateClass::Mixed
    } else {
        StateClass::Classical
    };
    Classification { class, radius2 }
}

/// `Tr ρ² = 2 (1 + |p|² - p1 - p2 - p3)`, in `[1/2, 1]` for quantum triples.
pub fn purity(p: &ProbabilityTriple) -> Result<f64> {
    p.require_quantum()?;
    let [p1, p2, p3] = p.to_array();
    Ok(2.0 * (1.0 + p1 * p1 + p2 * p2 + p3 * p3 - p1 - p2 - p3))
}

/// Overlap `Tr(ρ_p ρ_q) = 2 + 2 p·q - Σp_i - Σq_i`.
pub fn fidelity(p: &ProbabilityTriple, q: &ProbabilityTriple) -> Result<f64> {
    p.require_quantum()?;
    q.require_quantum()?;
    let a = p.to_array();
    let b = q.to_array();
    let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    // summed so that swapping p and q gives a bit-identical result
    Ok(2.0 + 2.0 * dot - (a.iter().sum::<f64>() + b.iter().sum::<f64>()))
}

/// Spinor `(√p3, √(1-p3) e^{iγ})` of a pure triple.
pub fn prob_to_spinor(p: &ProbabilityTriple) -> Result<Spinor2> {
    p.require_pure()?;
    Ok(Spinor2 {
        amplitude0: p.p3.sqrt(),
        amplitude1: (1.0 - p.p3).sqrt(),
        phase: coin_phase(p),
    })
}

pub fn spinor_to_prob(s: &Spinor2) -> ProbabilityTriple {
    let p3 = s.amplitude0 * s.amplitude0;
    let r = (p3 * (1.0 - p3)).max(0.0).sqrt();
    ProbabilityTriple::new_clamped(0.5 + r * s.phase.cos(), 0.5 + r * s.phase.sin(), p3)
        .expect("a normalized spinor always yields probabilities in [0, 1]")
}

/// Coin triple of a complex number in the closed unit disk: `p3 = |z|²` and the
/// x, y coins carry `cos φ(z)`, `sin φ(z)` scaled by `√(p3 (1 - p3))`.
pub fn complex_to_coins(z: Complex64) -> Result<ProbabilityTriple> {
    let modulus = z.norm();
    if !(modulus <= 1.0 + MATRIX_TOL) {
        return Err(Error::OutsideUnitDisk { modulus });
    }
    let p3 = z.norm_sqr().min(1.0);
    let r = (p3 * (1.0 - p3)).sqrt();
    let phi = phase_of(z.re, z.im);
    ProbabilityTriple::new_clamped(0.5 + r * phi.cos(), 0.5 + r * phi.sin(), p3)
}

pub fn coins_to_complex(p: &ProbabilityTriple) -> Result<Complex64> {
    p.require_pure()?;
    Ok(Complex64::from_polar(p.p3.sqrt(), coin_phase(p)))
}
