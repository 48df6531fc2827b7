//! Shared fixtures and an independent matrix oracle for the integration tests.
//!
//! The oracle below works on raw `[[Complex64; 2]; 2]` arrays and builds
//! spinors straight from the coin triple; it does not call into the crate's
//! conversion or superposition code.

#![allow(dead_code)]

use std::f64::consts::TAU;

use coin_qubit::{ProbabilityTriple, SuperpositionWeights};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type M2 = [[Complex64; 2]; 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn triple(p: [f64; 3]) -> ProbabilityTriple {
    ProbabilityTriple::from_array(p).unwrap()
}

/// Uniform point of the unit cube (classical triples included).
pub fn random_cube(rng: &mut impl Rng) -> ProbabilityTriple {
    triple([rng.gen(), rng.gen(), rng.gen()])
}

/// Uniform point of the quantum ball, by rejection from the cube.
pub fn random_quantum(rng: &mut impl Rng) -> ProbabilityTriple {
    loop {
        let p = random_cube(rng);
        if p.radius2() <= 0.25 {
            return p;
        }
    }
}

/// Pure triple from a point on the sphere with the given z offset and phase.
pub fn pure_from(z: f64, phase: f64) -> ProbabilityTriple {
    let r = (1.0 - z * z).max(0.0).sqrt();
    triple([
        0.5 + 0.5 * r * phase.cos(),
        0.5 + 0.5 * r * phase.sin(),
        0.5 + 0.5 * z,
    ])
}

/// Uniform on the sphere of pure states.
pub fn random_pure(rng: &mut impl Rng) -> ProbabilityTriple {
    pure_from(rng.gen_range(-1.0..=1.0), rng.gen_range(0.0..TAU))
}

/// Pure triple with `p3` drawn uniformly from `(lo, hi)`.
pub fn random_pure_p3(rng: &mut impl Rng, lo: f64, hi: f64) -> ProbabilityTriple {
    let p3: f64 = rng.gen_range(lo..hi);
    pure_from(2.0 * p3 - 1.0, rng.gen_range(0.0..TAU))
}

pub fn random_weights(rng: &mut impl Rng, lo: f64, hi: f64) -> SuperpositionWeights {
    SuperpositionWeights::new(random_pure_p3(rng, lo, hi)).unwrap()
}

pub fn antipode(p: &ProbabilityTriple) -> ProbabilityTriple {
    triple(p.to_array().map(|x| 1.0 - x))
}

// ---- oracle ------------------------------------------------------------

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn density(p: &ProbabilityTriple) -> M2 {
    let [p1, p2, p3] = p.to_array();
    [
        [c(p3, 0.0), c(p1 - 0.5, -(p2 - 0.5))],
        [c(p1 - 0.5, p2 - 0.5), c(1.0 - p3, 0.0)],
    ]
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn trace(a: &M2) -> Complex64 {
    a[0][0] + a[1][1]
}

/// `Tr(a_1 a_2 ... a_n)`.
pub fn trace_of_product(ms: &[M2]) -> Complex64 {
    let prod = ms[1..].iter().fold(ms[0], |acc, m| mul(&acc, m));
    trace(&prod)
}

/// Gauge-fixed spinor `(√p3, √(1-p3) e^{iγ})`, phase read with atan2 and set
/// to 0 when the coherence vanishes.
pub fn spinor(p: &ProbabilityTriple) -> [Complex64; 2] {
    let [p1, p2, p3] = p.to_array();
    let (x, y) = (p1 - 0.5, p2 - 0.5);
    let gamma = if x == 0.0 && y == 0.0 {
        0.0
    } else {
        y.atan2(x)
    };
    [
        c(p3.sqrt(), 0.0),
        Complex64::from_polar((1.0 - p3).sqrt(), gamma),
    ]
}

/// Coin triple of `c1 ψ(p) + c2 ψ(q)` with `c1 = √w3`, `c2 = √(1-w3) e^{iα(w)}`.
pub fn oracle_superposition(
    p: &ProbabilityTriple,
    q: &ProbabilityTriple,
    w: &ProbabilityTriple,
) -> [f64; 3] {
    let a = spinor(p);
    let b = spinor(q);
    let cw = spinor(w);
    // spinor(w) = (√w3, √(1-w3) e^{iα}) is exactly (c1, c2)
    let chi = [cw[0] * a[0] + cw[1] * b[0], cw[0] * a[1] + cw[1] * b[1]];
    let n = chi[0].norm_sqr() + chi[1].norm_sqr();
    let rho01 = chi[0] * chi[1].conj() / n;
    [0.5 + rho01.re, 0.5 - rho01.im, chi[0].norm_sqr() / n]
}

pub fn max_diff(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
