//! Minimum enclosing balls of small chart point sets.

use super::{circumsphere, dist_sq};
use crate::fmath;
use crate::Coord;
use crate::MAX_DIM;

/// Computes the minimum enclosing ball of `points[..len]` in chart
/// coordinates, returning `(center, radius)`.
///
/// The optimal center is the circumcenter of some affinely independent
/// support subset of at most `dim + 1` points, so with at most `MAX_DIM + 2`
/// inputs it suffices to scan every subset, take its circumcenter as a
/// candidate, and minimize the enclosing radius measured from that candidate.
/// The scan needs no tolerance: the true support subset is among the
/// candidates and realizes the optimum exactly.
pub fn min_enclosing_ball(points: &[Coord], len: usize, dim: usize) -> (Coord, f64) {
    debug_assert!(len >= 1 && len <= MAX_DIM + 2);
    if len == 1 {
        return (points[0], 0.0);
    }
    let mut buf = [[0.0f64; MAX_DIM]; MAX_DIM + 2];
    let mut best_center = points[0];
    let mut best_r2 = f64::INFINITY;
    for mask in 1u32..(1 << len) {
        let m = mask.count_ones() as usize;
        if m > dim + 1 {
            continue;
        }
        let mut w = 0;
        for (i, p) in points.iter().enumerate().take(len) {
            if mask & (1 << i) != 0 {
                buf[w] = *p;
                w += 1;
            }
        }
        // Affinely dependent subsets have no unique circumcenter in their
        // hull; an independent subset of the same points does better anyway.
        let Ok(cs) = circumsphere(&buf, m, dim) else {
            continue;
        };
        let mut enclosing_r2 = 0.0f64;
        for p in points.iter().take(len) {
            let d2 = dist_sq(&cs.center, p, dim);
            if d2 > enclosing_r2 {
                enclosing_r2 = d2;
            }
        }
        if enclosing_r2 < best_r2 {
            best_r2 = enclosing_r2;
            best_center = cs.center;
        }
    }
    (best_center, fmath::sqrt(best_r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Coord {
        [x, y, 0.0, 0.0]
    }

    #[test]
    fn two_points_gives_midpoint_ball() {
        let pts = [pt(0.1, 0.2), pt(0.3, 0.2)];
        let (c, r) = min_enclosing_ball(&pts, 2, 2);
        assert!((c[0] - 0.2).abs() < 1e-15);
        assert!((c[1] - 0.2).abs() < 1e-15);
        assert!((r - 0.1).abs() < 1e-15);
    }

    #[test]
    fn obtuse_triangle_supported_by_longest_edge() {
        // Circumradius 0.26 but the diameter ball of the long edge encloses.
        let pts = [pt(0.0, 0.0), pt(0.2, 0.0), pt(0.1, 0.02)];
        let (c, r) = min_enclosing_ball(&pts, 3, 2);
        assert!((r - 0.1).abs() < 1e-15);
        assert!((c[0] - 0.1).abs() < 1e-15);
        assert!(c[1].abs() < 1e-15);
    }

    #[test]
    fn acute_triangle_supported_by_all_three() {
        let s = 0.2;
        let pts = [
            pt(0.0, 0.0),
            pt(s, 0.0),
            pt(s / 2.0, s * 3f64.sqrt() / 2.0),
        ];
        let (_, r) = min_enclosing_ball(&pts, 3, 2);
        assert!((r - 0.11547005383792516).abs() < 1e-14);
    }

    #[test]
    fn interior_point_does_not_change_the_ball() {
        let pts = [pt(0.0, 0.0), pt(0.2, 0.0), pt(0.1, 0.02), pt(0.1, 0.01)];
        let (_, r) = min_enclosing_ball(&pts, 4, 2);
        assert!((r - 0.1).abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_vertices_all_on_boundary() {
        let pts = [
            [0.01, 0.02, 0.03, 0.0],
            [0.11, 0.05, 0.02, 0.0],
            [0.04, 0.12, 0.01, 0.0],
            [0.06, 0.04, 0.13, 0.0],
        ];
        let (c, r) = min_enclosing_ball(&pts, 4, 3);
        for p in &pts {
            let d = dist_sq(&c, p, 3).sqrt();
            assert!(d <= r * (1.0 + 1e-12));
        }
    }
}
