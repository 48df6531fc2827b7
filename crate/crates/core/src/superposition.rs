//! Superposition of two pure qubit states, expressed as a nonlinear rule on
//! coin probabilities.
//!
//! Given pure triples `p` (state `|ψ1>`) and `q` (state `|ψ2>`) and a pure
//! weight triple `w = (Π1, Π2, Π3)`, the superposition is
//!
//! ```text
//! |χ> ∝ c1 |ψ1> + c2 |ψ2>,    c1 = √Π3,   c2 = √(1 - Π3) e^{iα}
//! ```
//!
//! where `α` is the phase carried by the x and y coins of `w`. Each spinor has
//! its global phase fixed so that the first component is real and nonnegative.
//!
//! Four computation paths are provided and must agree:
//!
//! * [`superpose_oracle`]: builds `|χ>` from spinors and takes `|χ><χ| / <χ|χ>`.
//!   This is the reference.
//! * [`superpose_general`]: closed-form probability rule for arbitrary
//!   (nonorthogonal) inputs, with normalization
//!   `𝒯 = 1 + 2 Re[Π (p3 q3 + p* q)] / √(p3 q3)`.
//! * [`superpose_orthogonal`]: the projector addition rule
//!   `ρ = λ1 ρ1 + λ2 ρ2 + √(λ1 λ2) (ρ1 ρ0 ρ2 + ρ2 ρ0 ρ1) / √Tr(ρ1 ρ0 ρ2 ρ0)`
//!   for orthogonal inputs, evaluated with explicit 2x2 products.
//! * [`superpose_spinor`]: the column vector `√Π3 |ψ1> + √(1-Π3) e^{iδ} |ψ2>`
//!   written out in amplitudes and phases, for orthogonal inputs.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Ket, Matrix2};
use crate::qubit::{
    coin_phase, density_to_prob, fidelity, prob_to_spinor, spinor_to_prob, DensityMatrix2,
    ProbabilityTriple, Spinor2, CLASSIFY_TOL,
};

/// `<χ|χ>` (or `𝒯`) at or below this value means the superposition vanishes.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// `Tr(ρ1 ρ0 ρ2 ρ0)` at or below this value leaves the interference term undefined.
pub const DEGENERATE_TRACE: f64 = 1e-14;

/// `p3` or `q3` at or below this value puts a state on the pole where the
/// general closed form divides by zero.
pub const CLOSED_FORM_POLE: f64 = 1e-12;

/// Componentwise agreement required between computation paths.
pub const PATH_AGREEMENT_TOL: f64 = 1e-9;

/// Weight and relative phase of a superposition, stored as a pure coin triple.
///
/// `λ1 = Π3`, `λ2 = 1 - Π3`, and the relative phase `α` satisfies
/// `cos α ∝ Π1 - 1/2`, `sin α ∝ Π2 - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "ProbabilityTriple", try_from = "ProbabilityTriple")]
pub struct SuperpositionWeights {
    triple: ProbabilityTriple,
}

impl TryFrom<ProbabilityTriple> for SuperpositionWeights {
    type Error = Error;
    fn try_from(triple: ProbabilityTriple) -> Result<Self> {
        Self::new(triple)
    }
}

impl From<SuperpositionWeights> for ProbabilityTriple {
    fn from(w: SuperpositionWeights) -> Self {
        w.triple
    }
}

impl SuperpositionWeights {
    pub fn new(triple: ProbabilityTriple) -> Result<Self> {
        triple.require_pure()?;
        Ok(Self { triple })
    }

    /// Weights with `λ1 = lambda1` and relative phase `alpha`.
    pub fn from_weight_and_phase(lambda1: f64, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda1) {
            return Err(Error::ProbabilityOutOfRange {
                name: "lambda1",
                value: lambda1,
            });
        }
        let spinor = Spinor2::new(lambda1.sqrt(), (1.0 - lambda1).sqrt(), alpha)?;
        Self::new(spinor_to_prob(&spinor))
    }

    pub fn triple(&self) -> ProbabilityTriple {
        self.triple
    }

    pub fn lambda1(&self) -> f64 {
        self.triple.p3()
    }

    pub fn lambda2(&self) -> f64 {
        1.0 - self.triple.p3()
    }

    /// Relative phase `α` in `[0, 2π)`; 0 when one weight vanishes.
    pub fn phase(&self) -> f64 {
        coin_phase(&self.triple)
    }

    /// `(c1, c2)` with `c1` real and nonnegative.
    pub fn coefficients(&self) -> (f64, Complex64) {
        (
            self.lambda1().sqrt(),
            Complex64::from_polar(self.lambda2().sqrt(), self.phase()),
        )
    }

    /// Weights describing the same state when the two inputs are exchanged:
    /// `λ1 ↔ λ2` and `α → -α`, i.e. `(Π1, 1 - Π2, 1 - Π3)`.
    pub fn swapped(&self) -> Self {
        let [w1, w2, w3] = self.triple.to_array();
        Self {
            triple: ProbabilityTriple::new_clamped(w1, 1.0 - w2, 1.0 - w3)
                .expect("swapping a valid triple stays in range"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    MatrixOracle,
    GeneralClosedForm,
    OrthogonalRule,
    SpinorPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionResult {
    pub state: ProbabilityTriple,
    /// `<χ|χ>` before normalization (`𝒯` in the closed form); 1 for orthogonal inputs.
    pub normalization: f64,
    pub path: Path,
    /// The closed form was bypassed because an input sits on the `p3 = 0` pole.
    pub fallback_used: bool,
}

impl SuperpositionResult {
    fn new(state: ProbabilityTriple, normalization: f64, path: Path) -> Self {
        debug_assert!(
            state.is_pure(),
            "superposition of pure states must be pure: {state:?}"
        );
        Self {
            state,
            normalization,
            path,
            fallback_used: false,
        }
    }
}

fn spinor_ket(p: &ProbabilityTriple) -> Result<Ket> {
    Ok(prob_to_spinor(p)?.ket())
}

fn require_orthogonal(p: &ProbabilityTriple, q: &ProbabilityTriple) -> Result<()> {
    let overlap = fidelity(p, q)?;
    if overlap.abs() < CLASSIFY_TOL {
        Ok(())
    } else {
        Err(Error::NotOrthogonal { overlap })
    }
}

fn projector_to_result(ket: &Ket, path: Path) -> Result<SuperpositionResult> {
    let (rho, norm2) =
        DensityMatrix2::projector(ket, DEGENERATE_NORM).ok_or(Error::DegenerateSuperposition {
            norm2: crate::matrix::norm_sqr(ket),
        })?;
    Ok(SuperpositionResult::new(
        density_to_prob(&rho)?,
        norm2,
        path,
    ))
}

/// Reference path: `ρ_χ = |χ><χ| / <χ|χ>` with `|χ> = c1 |ψ1> + c2 |ψ2>`.
pub fn superpose_oracle(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<SuperpositionResult> {
    let a = spinor_ket(p)?;
    let b = spinor_ket(q)?;
    let (c1, c2) = w.coefficients();
    let chi = [a[0] * c1 + b[0] * c2, a[1] * c1 + b[1] * c2];
    projector_to_result(&chi, Path::MatrixOracle)
}

/// Closed-form probability rule for arbitrary pure inputs.
///
/// When either input has `p3 = 0` (within [`CLOSED_FORM_POLE`]) the prefactor
/// `1/√(p3 q3)` is singular even though the superposition is well defined;
/// the call then delegates to [`superpose_oracle`] and sets `fallback_used`.
pub fn superpose_general(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<SuperpositionResult> {
    p.require_pure()?;
    q.require_pure()?;
    let (p3, q3) = (p.p3(), q.p3());
    if p3 <= CLOSED_FORM_POLE || q3 <= CLOSED_FORM_POLE {
        let mut result = superpose_oracle(p, q, w)?;
        result.fallback_used = true;
        return Ok(result);
    }

    let [pr, pi, _] = p.offsets();
    let [qr, qi, _] = q.offsets();
    let [wr, wi, _] = w.triple().offsets();
    let w3 = w.lambda1();
    let root = (p3 * q3).sqrt();

    let normalization =
        1.0 + 2.0 / root * (wr * (pr * qr + qi * pi + p3 * q3) + wi * (pi * qr - pr * qi));
    if !(normalization > DEGENERATE_NORM) {
        return Err(Error::DegenerateSuperposition {
            norm2: normalization,
        });
    }

    let q_over_p = (q3 / p3).sqrt();
    let p_over_q = (p3 / q3).sqrt();
    let out3 = (w3 * p3 + (1.0 - w3) * q3 + 2.0 * root * wr) / normalization;
    let out1 = (w3 * pr
        + qr * (1.0 - w3)
        + (wr * pr + wi * pi) * q_over_p
        + (wr * qr - wi * qi) * p_over_q)
        / normalization;
    let out2 = ((pi * w3 + qi * (1.0 - w3))
        + q_over_p * (wr * pi - wi * pr)
        + p_over_q * (wi * qr + wr * qi))
        / normalization;

    let state = ProbabilityTriple::new_clamped(0.5 + out1, 0.5 + out2, out3)?;
    Ok(SuperpositionResult::new(
        state,
        normalization,
        Path::GeneralClosedForm,
    ))
}

/// Relative phase `α` (modulo π) for which the closed-form normalization `𝒯`
/// equals 1, from `tan α = [p3 q3 / √(p3(1-p3) q3(1-q3)) + cos(φ1 - φ2)] / sin(φ2 - φ1)`.
///
/// `None` when either state is on a pole or the two phases coincide modulo π,
/// where the relation does not single out an angle.
pub fn unit_normalization_phase(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
) -> Result<Option<f64>> {
    p.require_pure()?;
    q.require_pure()?;
    let (p3, q3) = (p.p3(), q.p3());
    let k = (p3 * (1.0 - p3) * q3 * (1.0 - q3)).sqrt();
    let (phi1, phi2) = (coin_phase(p), coin_phase(q));
    let s = (phi2 - phi1).sin();
    if k <= CLOSED_FORM_POLE || s.abs() <= CLASSIFY_TOL {
        return Ok(None);
    }
    let tan_alpha = (p3 * q3 / k + (phi1 - phi2).cos()) / s;
    Ok(Some(tan_alpha.atan().rem_euclid(PI)))
}

/// Whether the weights' phase satisfies the unit-normalization condition,
/// checked in the denominator-free form
/// `sin α · K sin(φ2 - φ1) = cos α · (p3 q3 + K cos(φ1 - φ2))`.
pub fn has_unit_normalization(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<bool> {
    p.require_pure()?;
    q.require_pure()?;
    let (p3, q3) = (p.p3(), q.p3());
    let k = (p3 * (1.0 - p3) * q3 * (1.0 - q3)).sqrt();
    let (phi1, phi2) = (coin_phase(p), coin_phase(q));
    let alpha = w.phase();
    let residual =
        alpha.sin() * k * (phi2 - phi1).sin() - alpha.cos() * (p3 * q3 + k * (phi1 - phi2).cos());
    Ok(residual.abs() <= CLASSIFY_TOL)
}

/// Phase-reference projector `ρ0` for orthogonal inputs.
///
/// `ρ0` is the coin-triple matrix of `w` carried into the frame spanned by
/// `(|ψ1>, |ψ2>)`: `ρ0 = U ρ(w) U†` with `U = [ψ1 ψ2]`. Then
/// `<ψ1|ψ0> = √Π3` and `<ψ2|ψ0> = √(1-Π3) e^{iα}`, so the phase of `ψ1` is
/// gauged to 0 and the relative phase of the addition rule is `α`. For
/// `(ψ1, ψ2) = (|0>, |1>)`, `ρ0` is exactly `ρ(w)`.
pub fn phase_reference(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<DensityMatrix2> {
    let frame = Matrix2::from_columns(&spinor_ket(p)?, &spinor_ket(q)?);
    let rho_w = DensityMatrix2::from_probabilities(&w.triple());
    DensityMatrix2::new(frame * *rho_w.matrix() * frame.adjoint())
}

struct ProjectorSum {
    matrix: Matrix2,
    trace: f64,
}

fn projector_sum(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<ProjectorSum> {
    p.require_pure()?;
    q.require_pure()?;
    require_orthogonal(p, q)?;

    let rho1 = *DensityMatrix2::from_probabilities(p).matrix();
    let rho2 = *DensityMatrix2::from_probabilities(q).matrix();
    let rho0 = *phase_reference(p, q, w)?.matrix();

    let trace = (rho1 * rho0 * rho2 * rho0).trace().re;
    if !(trace > DEGENERATE_TRACE) {
        return Err(Error::DegeneratePhaseReference { trace });
    }
    let (l1, l2) = (w.lambda1(), w.lambda2());
    let cross = (rho1 * rho0 * rho2 + rho2 * rho0 * rho1).scale((l1 * l2).sqrt() / trace.sqrt());
    Ok(ProjectorSum {
        matrix: rho1.scale(l1) + rho2.scale(l2) + cross,
        trace,
    })
}

/// The matrix `λ1 ρ1 + λ2 ρ2 + √(λ1 λ2)(ρ1 ρ0 ρ2 + ρ2 ρ0 ρ1)/√Tr(ρ1 ρ0 ρ2 ρ0)`.
pub fn orthogonal_rule_matrix(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<Matrix2> {
    Ok(projector_sum(p, q, w)?.matrix)
}

/// Projector addition rule for orthogonal pure inputs.
pub fn superpose_orthogonal(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<SuperpositionResult> {
    let sum = projector_sum(p, q, w)?;
    let normalization = sum.matrix.trace().re;
    let rho = DensityMatrix2::new(sum.matrix)?;
    Ok(SuperpositionResult::new(
        density_to_prob(&rho)?,
        normalization,
        Path::OrthogonalRule,
    ))
}

/// Split of the output triple into its linear and nonlinear parts:
/// `P_ψ = (λ1 p + λ2 q) + √(λ1 λ2) Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaDecomposition {
    pub linear: [f64; 3],
    pub delta: [f64; 3],
    /// `Tr(ρ1 ρ0 ρ2 ρ0)^{-1/2}`.
    pub t: f64,
    /// `P_ψ` read straight off the assembled matrix.
    pub output: [f64; 3],
    pub lambda1: f64,
    pub lambda2: f64,
}

impl DeltaDecomposition {
    pub fn reconstruct(&self) -> [f64; 3] {
        let s = (self.lambda1 * self.lambda2).sqrt();
        std::array::from_fn(|i| self.linear[i] + s * self.delta[i])
    }
}

pub fn delta_decomposition(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<DeltaDecomposition> {
    let (lambda1, lambda2) = (w.lambda1(), w.lambda2());
    let product = lambda1 * lambda2;
    if product < DEGENERATE_TRACE {
        return Err(Error::DegenerateWeights { product });
    }
    let sum = projector_sum(p, q, w)?;
    let rho01 = sum.matrix.get(0, 1);
    let output = [0.5 + rho01.re, 0.5 - rho01.im, sum.matrix.get(0, 0).re];
    let (a, b) = (p.to_array(), q.to_array());
    let linear: [f64; 3] = std::array::from_fn(|i| lambda1 * a[i] + lambda2 * b[i]);
    let s = product.sqrt();
    let delta = std::array::from_fn(|i| (output[i] - linear[i]) / s);
    Ok(DeltaDecomposition {
        linear,
        delta,
        t: 1.0 / sum.trace.sqrt(),
        output,
        lambda1,
        lambda2,
    })
}

/// Explicit column vector
/// `(√(Π3 p3) + e^{iδ} √(q3(1-Π3)),  e^{iβ} √(Π3(1-p3)) + e^{i(δ+μ)} √((1-Π3)(1-q3)))`
/// for orthogonal inputs with phases `β` (of `p`), `μ` (of `q`) and `δ` (of `w`).
pub fn superpose_spinor(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<SuperpositionResult> {
    p.require_pure()?;
    q.require_pure()?;
    require_orthogonal(p, q)?;
    let (p3, q3, w3) = (p.p3(), q.p3(), w.lambda1());
    let (beta, mu, delta) = (coin_phase(p), coin_phase(q), w.phase());
    let psi = [
        Complex64::new((w3 * p3).sqrt(), 0.0)
            + Complex64::from_polar((q3 * (1.0 - w3)).sqrt(), delta),
        Complex64::from_polar((w3 * (1.0 - p3)).sqrt(), beta)
            + Complex64::from_polar(((1.0 - w3) * (1.0 - q3)).sqrt(), delta + mu),
    ];
    projector_to_result(&psi, Path::SpinorPath)
}

/// Which of the two equivalent phase shifts `μ = β ± π` builds the partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// Pure state orthogonal to `p`: amplitude `√(1 - p3)` on `|0>` and phase
/// `μ = β ± π`. Both branches land on the antipode `(1-p1, 1-p2, 1-p3)`.
pub fn orthogonal_partner(p: &ProbabilityTriple, branch: Branch) -> Result<ProbabilityTriple> {
    let spinor = prob_to_spinor(p)?;
    let shift = match branch {
        Branch::Plus => PI,
        Branch::Minus => -PI,
    };
    let partner = Spinor2::new(
        spinor.amplitude1(),
        spinor.amplitude0(),
        spinor.phase() + shift,
    )?;
    Ok(spinor_to_prob(&partner))
}

/// Every applicable path evaluated on the same inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionReport {
    /// Result of the general closed form (or its oracle fallback).
    pub result: SuperpositionResult,
    pub oracle: SuperpositionResult,
    pub orthogonal: Option<SuperpositionResult>,
    pub spinor: Option<SuperpositionResult>,
    /// Largest componentwise deviation of any path from the oracle.
    pub max_deviation: f64,
    pub paths_agree: bool,
}

/// Runs the oracle and the general closed form, plus the orthogonal rule and
/// the spinor path when the inputs are orthogonal (and the phase reference is
/// not degenerate), and checks that they agree within [`PATH_AGREEMENT_TOL`].
pub fn superpose(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &SuperpositionWeights,
) -> Result<SuperpositionReport> {
    let oracle = superpose_oracle(p, q, w)?;
    let result = superpose_general(p, q, w)?;
    let orthogonal_inputs = require_orthogonal(p, q).is_ok();
    let (orthogonal, spinor) = if orthogonal_inputs {
        let rule = match superpose_orthogonal(p, q, w) {
            Ok(r) => Some(r),
            Err(Error::DegeneratePhaseReference { .. }) => None,
            Err(e) => return Err(e),
        };
        (rule, Some(superpose_spinor(p, q, w)?))
    } else {
        (None, None)
    };
    let max_deviation = [Some(result), orthogonal, spinor]
        .iter()
        .flatten()
        .map(|r| r.state.max_abs_diff(&oracle.state))
        .fold(0.0, f64::max);
    Ok(SuperpositionReport {
        result,
        oracle,
        orthogonal,
        spinor,
        max_deviation,
        paths_agree: max_deviation <= PATH_AGREEMENT_TOL,
    })
}
