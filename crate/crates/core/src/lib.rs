//! Qubit states as triples of classical coin probabilities.
//!
//! A spin-1/2 state is determined by three probabilities `(p1, p2, p3)` of the
//! "up" outcome along x, y and z. This crate provides the bijection between
//! such triples, density matrices and spinors; the classical random variables
//! attached to the coins; the nonlinear probability rules that realize
//! superposition of pure states (checked against a direct complex-matrix
//! computation); the triada of Malevich squares; and a seeded Monte-Carlo
//! simulation of the coin measurements.
//!
//! ```
//! use coin_qubit::{superpose_general, ProbabilityTriple, SuperpositionWeights};
//!
//! let up = ProbabilityTriple::new(0.5, 0.5, 1.0).unwrap();
//! let down = ProbabilityTriple::new(0.5, 0.5, 0.0).unwrap();
//! let equal = SuperpositionWeights::new(ProbabilityTriple::new(1.0, 0.5, 0.5).unwrap()).unwrap();
//! let plus = superpose_general(&up, &down, &equal).unwrap();
//! assert!((plus.state.p1() - 1.0).abs() < 1e-12);
//! ```

// `!(x > tol)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod malevich;
pub mod matrix;
pub mod observables;
pub mod qubit;
pub mod superposition;
pub mod tomography;

pub use error::{Error, Result};
pub use malevich::{render_svg, triada_sides, MalevichTriada};
pub use matrix::Matrix2;
pub use observables::{classical_means, quantum_mean, second_moments, CoinObservable, PerCoin};
pub use qubit::{
    coins_to_complex, complex_to_coins, density_to_prob, fidelity, is_quantum, prob_to_density,
    prob_to_spinor, purity, spinor_to_prob, Classification, DensityMatrix2, Positivity,
    ProbabilityTriple, Spinor2, StateClass,
};
pub use superposition::{
    delta_decomposition, orthogonal_partner, superpose, superpose_general, superpose_oracle,
    superpose_orthogonal, superpose_spinor, Branch, DeltaDecomposition, Path, SuperpositionReport,
    SuperpositionResult, SuperpositionWeights,
};
pub use tomography::{estimate, reconstruct, sample_flips, EstimateReport, FlipRecord, FlipSample};
