//! Monte-Carlo simulation of the three-coin measurement scheme.
//!
//! Each axis gets its own ChaCha20 stream: the generator is seeded from the
//! 64-bit user seed and the stream id is `axis index + 1`, so the x, y and z
//! draws are independent, reproducible on every platform, and can be produced
//! on separate threads without changing the result.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::{
    is_quantum, prob_to_density, Classification, DensityMatrix2, Positivity, ProbabilityTriple,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Up,
    Down,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Up => "up",
            Outcome::Down => "down",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipRecord {
    pub trial: u64,
    pub axis: Axis,
    pub outcome: Outcome,
}

/// Flips for all three axes, in axis order, plus the seed that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSample {
    pub seed: u64,
    pub records: Vec<FlipRecord>,
}

/// One value per axis, serialized as `{"x":..,"y":..,"z":..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisValues<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Copy> AxisValues<T> {
    pub fn from_array(a: [T; 3]) -> Self {
        Self {
            x: a[0],
            y: a[1],
            z: a[2],
        }
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate: ProbabilityTriple,
    pub counts: AxisValues<u64>,
    /// `√(p̂(1 - p̂)/N)` per axis.
    pub standard_errors: AxisValues<f64>,
    pub seed: u64,
}

/// Density matrix rebuilt from an estimate. The estimate is never projected
/// back into the quantum ball; if sampling noise pushed it outside, that is
/// what `classification` and `positivity` say.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    pub density: DensityMatrix2,
    pub positivity: Positivity,
    pub classification: Classification,
}

fn axis_rng(seed: u64, axis: Axis) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(axis.index() as u64 + 1);
    rng
}

fn flip_axis(probability: f64, axis: Axis, n: u64, seed: u64) -> Vec<FlipRecord> {
    let mut rng = axis_rng(seed, axis);
    (0..n)
        .map(|trial| FlipRecord {
            trial,
            axis,
            outcome: if rng.gen::<f64>() < probability {
                Outcome::Up
            } else {
                Outcome::Down
            },
        })
        .collect()
}

/// Draws `n_per_axis` independent flips per coin, with `P(up) = p_i`.
pub fn sample_flips(p: &ProbabilityTriple, n_per_axis: u64, seed: u64) -> Result<FlipSample> {
    p.require_quantum()?;
    if n_per_axis == 0 {
        return Err(Error::InvalidArgument("n_per_axis must be positive".into()));
    }
    let probs = p.to_array();
    let per_axis: Vec<Vec<FlipRecord>> = thread::scope(|s| {
        let handles: Vec<_> = Axis::ALL
            .iter()
            .map(|&axis| s.spawn(move || flip_axis(probs[axis.index()], axis, n_per_axis, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    Ok(FlipSample {
        seed,
        records: per_axis.into_iter().flatten().collect(),
    })
}

/// Frequency of "up" per axis.
pub fn estimate(sample: &FlipSample) -> Result<EstimateReport> {
    let mut ups = [0u64; 3];
    let mut counts = [0u64; 3];
    for r in &sample.records {
        let i = r.axis.index();
        counts[i] += 1;
        if r.outcome == Outcome::Up {
            ups[i] += 1;
        }
    }
    for axis in Axis::ALL {
        if counts[axis.index()] == 0 {
            return Err(Error::InsufficientData { axis: axis.name() });
        }
    }
    let freq: [f64; 3] = std::array::from_fn(|i| ups[i] as f64 / counts[i] as f64);
    let se: [f64; 3] =
        std::array::from_fn(|i| (freq[i] * (1.0 - freq[i]) / counts[i] as f64).sqrt());
    Ok(EstimateReport {
        estimate: ProbabilityTriple::from_array(freq)?,
        counts: AxisValues::from_array(counts),
        standard_errors: AxisValues::from_array(se),
        seed: sample.seed,
    })
}

pub fn reconstruct(report: &EstimateReport) -> Reconstruction {
    let (density, positivity) = prob_to_density(&report.estimate);
    Reconstruction {
        density,
        positivity,
        classification: is_quantum(&report.estimate),
    }
}
