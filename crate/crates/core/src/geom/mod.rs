//! Geometry of the flat torus `T^d = R^d / Z^d` and of small point sets in a
//! local Euclidean chart.
//!
//! All toroidal coordinates live in `[0, 1)^d`. Metric facts used throughout:
//! the per-axis representative in `(-1/2, 1/2]` minimizes each coordinate
//! independently, so the Euclidean norm of the wrapped difference *is* the
//! toroidal distance; any set within toroidal distance `< 1/2` of an anchor
//! embeds isometrically in one chart.

mod circumsphere;
mod miniball;
mod simplex;
mod volumes;

pub use circumsphere::{circumsphere, contains_center, phi_and_nearest_face, Circumsphere};
pub use miniball::min_enclosing_ball;
pub use simplex::simplex_volume;
pub use volumes::{cap_volume, diff_volume, lens_volume, unit_ball_volume};

use crate::error::Error;
use crate::fmath;
use crate::Coord;
use alloc::vec::Vec;

/// Relative tolerance below which pivots and test quantities are treated as
/// degenerate rather than resolved by sign.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Wraps a coordinate difference into `(-1/2, 1/2]`.
#[inline(always)]
pub fn wrap_diff(x: f64) -> f64 {
    x - fmath::ceil(x - 0.5)
}

/// Toroidal distance between two points of `[0, 1)^d`.
#[inline]
pub fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    fmath::sqrt(torus_distance_sq(a, b))
}

/// Squared toroidal distance; cheaper for comparisons.
#[inline]
pub fn torus_distance_sq(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        let w = wrap_diff(a[i] - b[i]);
        s += w * w;
    }
    s
}

/// Euclidean coordinates of a point set in the chart centered at `anchor`.
///
/// Coordinates are relative to the anchor (the anchor lifts to the origin).
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanLift {
    pub coords: Vec<Coord>,
    pub dim: usize,
}

/// Lifts `points` into the Euclidean chart centered at `anchor`.
///
/// Each coordinate difference is wrapped into `(-1/2, 1/2]`; the lift is an
/// isometry on the set as long as every point is within toroidal distance
/// `< 1/2` of the anchor, which is enforced.
pub fn local_lift(anchor: &[f64], points: &[&[f64]], dim: usize) -> Result<EuclideanLift, Error> {
    let mut coords = Vec::with_capacity(points.len());
    for p in points {
        let mut c: Coord = [0.0; crate::MAX_DIM];
        let mut norm_sq = 0.0;
        for i in 0..dim {
            let w = wrap_diff(p[i] - anchor[i]);
            c[i] = w;
            norm_sq += w * w;
        }
        if norm_sq >= 0.25 {
            return Err(Error::LiftOutOfRange);
        }
        coords.push(c);
    }
    Ok(EuclideanLift { coords, dim })
}

/// Wraps chart coordinates (relative to `anchor`) back onto the torus.
#[inline]
pub fn wrap_to_torus(anchor: &[f64], rel: &Coord, dim: usize) -> Coord {
    let mut out: Coord = [0.0; crate::MAX_DIM];
    for i in 0..dim {
        let mut x = anchor[i] + rel[i];
        x -= fmath::floor(x);
        // floor can return exactly 1.0 - eps sums; normalize the closed end
        if x >= 1.0 {
            x -= 1.0;
        }
        out[i] = x;
    }
    out
}

#[inline]
pub(crate) fn dot(a: &Coord, b: &Coord, dim: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        s += a[i] * b[i];
    }
    s
}

#[inline]
pub(crate) fn dist_sq(a: &Coord, b: &Coord, dim: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        let d = a[i] - b[i];
        s += d * d;
    }
    s
}

/// Solves a small `k x k` linear system by Gaussian elimination with partial
/// pivoting. `a` is row-major and consumed as scratch. Fails if the relative
/// pivot falls below [`DEGENERACY_TOL`].
pub(crate) fn solve_small(
    a: &mut [[f64; crate::MAX_DIM]],
    b: &mut [f64],
    k: usize,
) -> Result<(), Error> {
    let mut scale = 0.0f64;
    for row in a.iter().take(k) {
        for &v in row.iter().take(k) {
            scale = scale.max(fmath::abs(v));
        }
    }
    if scale == 0.0 {
        return Err(Error::DegenerateInput("zero matrix in linear solve"));
    }
    for col in 0..k {
        let mut piv = col;
        for r in col + 1..k {
            if fmath::abs(a[r][col]) > fmath::abs(a[piv][col]) {
                piv = r;
            }
        }
        if fmath::abs(a[piv][col]) < DEGENERACY_TOL * scale {
            return Err(Error::DegenerateInput("pivot below tolerance"));
        }
        if piv != col {
            a.swap(piv, col);
            b.swap(piv, col);
        }
        let inv = 1.0 / a[col][col];
        for r in col + 1..k {
            let f = a[r][col] * inv;
            if f != 0.0 {
                for c in col..k {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    for col in (0..k).rev() {
        let mut s = b[col];
        for c in col + 1..k {
            s -= a[col][c] * b[c];
        }
        b[col] = s / a[col][col];
    }
    Ok(())
}
