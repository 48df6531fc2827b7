//! Dichotomic random variables attached to the three coins.
//!
//! The x coin carries the values `(x, -x)`, the y coin `(y, -y)` and the z coin
//! `(z1, z2)`. The same four numbers are the entries of the Hermitian observable
//!
//! ```text
//! H = | z1       x - i y |
//!     | x + i y  z2      |
//! ```
//!
//! and the quantum mean `Tr(ρ H)` equals the sum of the three classical means.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::Matrix2;
use crate::qubit::{DensityMatrix2, ProbabilityTriple};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinObservable {
    pub x: f64,
    pub y: f64,
    pub z1: f64,
    pub z2: f64,
}

/// One value per coin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerCoin {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PerCoin {
    pub fn sum(&self) -> f64 {
        self.x + self.y + self.z
    }
}

impl CoinObservable {
    pub fn new(x: f64, y: f64, z1: f64, z2: f64) -> Self {
        Self { x, y, z1, z2 }
    }

    pub fn matrix(&self) -> Matrix2 {
        Matrix2::new([
            [
                Complex64::new(self.z1, 0.0),
                Complex64::new(self.x, -self.y),
            ],
            [Complex64::new(self.x, self.y), Complex64::new(self.z2, 0.0)],
        ])
    }
}

impl std::ops::Add for CoinObservable {
    type Output = CoinObservable;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.x + rhs.x,
            self.y + rhs.y,
            self.z1 + rhs.z1,
            self.z2 + rhs.z2,
        )
    }
}

impl std::ops::Mul<CoinObservable> for f64 {
    type Output = CoinObservable;
    fn mul(self, rhs: CoinObservable) -> CoinObservable {
        CoinObservable::new(self * rhs.x, self * rhs.y, self * rhs.z1, self * rhs.z2)
    }
}

/// `<X> = x(2p1 - 1)`, `<Y> = y(2p2 - 1)`, `<Z> = z1 p3 + z2 (1 - p3)`.
pub fn classical_means(obs: &CoinObservable, p: &ProbabilityTriple) -> PerCoin {
    PerCoin {
        x: obs.x * (2.0 * p.p1() - 1.0),
        y: obs.y * (2.0 * p.p2() - 1.0),
        z: obs.z1 * p.p3() + obs.z2 * (1.0 - p.p3()),
    }
}

/// The x and y second moments do not depend on the probabilities.
pub fn second_moments(obs: &CoinObservable, p: &ProbabilityTriple) -> PerCoin {
    PerCoin {
        x: obs.x * obs.x,
        y: obs.y * obs.y,
        z: (obs.z1 * obs.z1 - obs.z2 * obs.z2) * p.p3() + obs.z2 * obs.z2,
    }
}

/// `Tr(ρ H)` from the matrix entries.
pub fn quantum_mean(obs: &CoinObservable, p: &ProbabilityTriple) -> Result<f64> {
    p.require_quantum()?;
    let rho = DensityMatrix2::from_probabilities(p);
    let mean = (*rho.matrix() * obs.matrix()).trace().re;
    debug_assert!(
        (mean - classical_means(obs, p).sum()).abs() <= 1e-9 * (1.0 + mean.abs()),
        "quantum and classical means disagree"
    );
    Ok(mean)
}
