//! Decision vectors shared by all optimizers and the binary chromosome codec
//! used by the genetic algorithm.
//!
//! A decision vector holds the interleaved `(x, y)` coordinates of the
//! intermediate waypoints only; start and target are fixed by the
//! environment. Coordinates are continuous and clamped into the world.

use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridEnvironment, Point};
use crate::objective::Path;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DecisionVector(pub Vec<f64>);

impl Deref for DecisionVector {
    type Target = Vec<f64>;
    fn deref(&self) -> &Vec<f64> {
        &self.0
    }
}

impl DerefMut for DecisionVector {
    fn deref_mut(&mut self) -> &mut Vec<f64> {
        &mut self.0
    }
}

impl From<Vec<f64>> for DecisionVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Per-coordinate box constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Dimension {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower
            .iter()
            .zip(&upper)
            .any(|(l, u)| !(l <= u) || !l.is_finite() || !u.is_finite())
        {
            return Err(Error::InvalidConfig(
                "bounds must be finite with lower <= upper".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    /// Same interval on every coordinate.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    /// `[0, width] x [0, height]` for each intermediate waypoint.
    pub fn for_world(env: &GridEnvironment, n_points: usize) -> Self {
        let count = n_points.saturating_sub(2);
        let (w, h) = (env.width() as f64, env.height() as f64);
        let lower = vec![0.0; 2 * count];
        let upper = (0..count).flat_map(|_| [w, h]).collect();
        Self { lower, upper }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn clamp(&self, j: usize, value: f64) -> f64 {
        value.clamp(self.lower[j], self.upper[j])
    }

    pub fn clamp_all(&self, v: &mut [f64]) {
        for (j, x) in v.iter_mut().enumerate() {
            *x = self.clamp(j, *x);
        }
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        v.len() == self.dim()
            && v.iter()
                .enumerate()
                .all(|(j, x)| *x >= self.lower[j] && *x <= self.upper[j])
    }
}

/// `[start, (v0, v1), (v2, v3), ..., target]` with coordinates clamped into
/// the world.
pub fn vector_to_path(v: &[f64], env: &GridEnvironment, n_points: usize) -> Result<Path> {
    let expected = 2 * n_points.saturating_sub(2);
    if v.len() != expected || n_points < 2 {
        return Err(Error::Dimension {
            expected,
            actual: v.len(),
        });
    }
    let (w, h) = (env.width() as f64, env.height() as f64);
    let mut pts = Vec::with_capacity(n_points);
    pts.push(env.start());
    pts.extend(
        v.chunks_exact(2)
            .map(|c| Point::new(c[0].clamp(0.0, w), c[1].clamp(0.0, h))),
    );
    pts.push(env.target());
    Path::new(pts)
}

/// Intermediate waypoints of a path, flattened.
pub fn path_to_vector(path: &Path) -> DecisionVector {
    let pts = path.waypoints();
    DecisionVector(
        pts[1..pts.len() - 1]
            .iter()
            .flat_map(|p| [p.x, p.y])
            .collect(),
    )
}

/// Fixed-length chromosome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitstring(pub Vec<bool>);

impl Bitstring {
    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl std::fmt::Display for Bitstring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Bitstring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidConfig(format!("invalid bit '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bitstring)
    }
}

fn max_code(bits_per_coord: usize) -> f64 {
    ((1u64 << bits_per_coord) - 1) as f64
}

fn check_bits(bits_per_coord: usize) -> Result<()> {
    if bits_per_coord == 0 || bits_per_coord > 52 {
        return Err(Error::InvalidConfig(format!(
            "bits_per_coord must be in 1..=52, got {bits_per_coord}"
        )));
    }
    Ok(())
}

fn group_value(group: &[bool]) -> u64 {
    group.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// Decodes MSB-first groups to `lo + u / (2^b - 1) * (hi - lo)`.
pub fn decode_bits(
    b: &Bitstring,
    bits_per_coord: usize,
    lo: f64,
    hi: f64,
) -> Result<DecisionVector> {
    let dim = b.len() / bits_per_coord.max(1);
    decode_bits_in(b, bits_per_coord, &Bounds::uniform(dim, lo, hi)?)
}

/// Like [`decode_bits`] with an interval per coordinate.
pub fn decode_bits_in(
    b: &Bitstring,
    bits_per_coord: usize,
    bounds: &Bounds,
) -> Result<DecisionVector> {
    check_bits(bits_per_coord)?;
    if !b.len().is_multiple_of(bits_per_coord) {
        return Err(Error::Dimension {
            expected: (b.len() / bits_per_coord + 1) * bits_per_coord,
            actual: b.len(),
        });
    }
    if b.len() / bits_per_coord != bounds.dim() {
        return Err(Error::Dimension {
            expected: bounds.dim() * bits_per_coord,
            actual: b.len(),
        });
    }
    let max = max_code(bits_per_coord);
    Ok(DecisionVector(
        b.0.chunks_exact(bits_per_coord)
            .enumerate()
            .map(|(j, g)| {
                let (lo, hi) = (bounds.lower[j], bounds.upper[j]);
                lo + group_value(g) as f64 / max * (hi - lo)
            })
            .collect(),
    ))
}

/// Nearest-code quantization, MSB first.
pub fn encode_bits(v: &[f64], bits_per_coord: usize, lo: f64, hi: f64) -> Result<Bitstring> {
    encode_bits_in(v, bits_per_coord, &Bounds::uniform(v.len(), lo, hi)?)
}

pub fn encode_bits_in(v: &[f64], bits_per_coord: usize, bounds: &Bounds) -> Result<Bitstring> {
    check_bits(bits_per_coord)?;
    if v.len() != bounds.dim() {
        return Err(Error::Dimension {
            expected: bounds.dim(),
            actual: v.len(),
        });
    }
    let max = max_code(bits_per_coord);
    let mut bits = Vec::with_capacity(v.len() * bits_per_coord);
    for (j, &x) in v.iter().enumerate() {
        let (lo, hi) = (bounds.lower[j], bounds.upper[j]);
        if !(x >= lo && x <= hi) {
            return Err(Error::CoordinateOutOfRange { value: x, lo, hi });
        }
        let code = if hi > lo {
            ((x - lo) / (hi - lo) * max).round() as u64
        } else {
            0
        };
        bits.extend((0..bits_per_coord).rev().map(|k| (code >> k) & 1 == 1));
    }
    Ok(Bitstring(bits))
}
