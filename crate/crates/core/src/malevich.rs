//! Triada of Malevich squares: three squares whose sides are functions of the
//! coin probabilities, and a deterministic SVG rendering of them.
//!
//! `L1 = √(2 + 2p1² - 4p1 - 2p2 + 2p2² + 2p1p2)`, and cyclically `L2` from
//! `(p2, p3)`, `L3` from `(p3, p1)`. The radicand is a convex quadratic on the
//! unit square with minimum 0 at `(1, 0)` and maximum 2 at the corners
//! `(0, 0)`, `(0, 1)`, `(1, 1)`, so every side lies in `[0, √2]`.
//!
//! Colors are fixed by position: `L1` black, `L2` red, `L3` white.

use std::f64::consts::SQRT_2;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::ProbabilityTriple;

/// Largest side length attainable from a triple.
pub const MAX_SIDE: f64 = SQRT_2;

const RADICAND_SLACK: f64 = 1e-12;
const MARGIN: f64 = 10.0;
const LABEL_BAND: f64 = 24.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MalevichTriada {
    #[serde(rename = "L1")]
    l1: f64,
    #[serde(rename = "L2")]
    l2: f64,
    #[serde(rename = "L3")]
    l3: f64,
}

impl MalevichTriada {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        for (name, side) in [("L1", l1), ("L2", l2), ("L3", l3)] {
            if !(0.0..=MAX_SIDE + RADICAND_SLACK).contains(&side) {
                return Err(Error::InvalidArgument(format!(
                    "side {name} = {side} outside [0, sqrt 2]"
                )));
            }
        }
        Ok(Self { l1, l2, l3 })
    }

    pub fn sides(&self) -> [f64; 3] {
        [self.l1, self.l2, self.l3]
    }
}

fn side(a: f64, b: f64) -> f64 {
    let radicand = 2.0 + 2.0 * a * a - 4.0 * a - 2.0 * b + 2.0 * b * b + 2.0 * a * b;
    assert!(
        radicand >= -RADICAND_SLACK,
        "side radicand {radicand} is negative beyond rounding for ({a}, {b})"
    );
    radicand.max(0.0).sqrt()
}

/// Side lengths for any triple in the unit cube, classical or quantum.
pub fn triada_sides(p: &ProbabilityTriple) -> MalevichTriada {
    let [p1, p2, p3] = p.to_array();
    MalevichTriada {
        l1: side(p1, p2),
        l2: side(p2, p3),
        l3: side(p3, p1),
    }
}

const FILLS: [&str; 3] = ["#000000", "#ff0000", "#ffffff"];

/// Renders the squares left to right (black, red, white) on a common baseline,
/// separated by `0.25 * max(L) * scale`. Zero-size squares are omitted. The
/// white square gets a 1px black outline. Output depends only on the inputs.
pub fn render_svg(triada: &MalevichTriada, scale: f64, labels: bool) -> Result<String> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "scale must be positive, got {scale}"
        )));
    }
    let sides = triada.sides();
    let largest = sides.iter().copied().fold(0.0, f64::max) * scale;
    let gap = 0.25 * largest;
    let baseline = MARGIN + largest;

    let mut x = MARGIN;
    let mut body = String::new();
    for (i, &len) in sides.iter().enumerate() {
        let size = len * scale;
        if size <= 0.0 {
            continue;
        }
        let stroke = if i == 2 {
            r##" stroke="#000000" stroke-width="1""##
        } else {
            ""
        };
        writeln!(
            body,
            r##"  <rect id="L{n}" x="{x:.3}" y="{y:.3}" width="{size:.3}" height="{size:.3}" fill="{fill}"{stroke}/>"##,
            n = i + 1,
            y = baseline - size,
            fill = FILLS[i],
        )
        .unwrap();
        if labels {
            writeln!(
                body,
                r##"  <text x="{cx:.3}" y="{ty:.3}" font-family="sans-serif" font-size="12" text-anchor="middle">L{n} = {len:.5}</text>"##,
                cx = x + 0.5 * size,
                ty = baseline + 16.0,
                n = i + 1,
            )
            .unwrap();
        }
        x += size + gap;
    }
    let drawn = sides.iter().filter(|&&l| l * scale > 0.0).count();
    let content_width = if drawn == 0 { 0.0 } else { x - gap - MARGIN };
    let width = content_width + 2.0 * MARGIN;
    let height = largest + 2.0 * MARGIN + if labels { LABEL_BAND } else { 0.0 };

    let mut svg = String::new();
    writeln!(svg, r##"<?xml version="1.0" encoding="UTF-8"?>"##).unwrap();
    writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"##
    )
    .unwrap();
    writeln!(svg, "  <title>Triada of Malevich squares</title>").unwrap();
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    Ok(svg)
}
