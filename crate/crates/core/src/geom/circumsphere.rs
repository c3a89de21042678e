//! Circumspheres of small point sets in a Euclidean chart.

use super::{dist_sq, dot, solve_small, DEGENERACY_TOL};
use crate::error::Error;
use crate::fmath;
use crate::Coord;
use crate::MAX_DIM;

/// The unique sphere through `k+1` affinely independent chart points whose
/// center lies in their affine hull.
#[derive(Debug, Clone)]
pub struct Circumsphere {
    /// Center in the same chart as the input points.
    pub center: Coord,
    pub radius: f64,
    /// Barycentric coordinates of the center with respect to the vertices.
    pub barycentric: [f64; MAX_DIM + 1],
    /// Number of vertices (`k + 1`).
    pub len: usize,
}

/// Computes the circumsphere of `points[..len]` (chart coordinates, `len-1 <=
/// dim`). Solves the `k x k` Gram system `G beta = b` in the affine frame at
/// `points[0]`, where `G_ij = v_i . v_j`, `b_i = |v_i|^2 / 2`, and the center
/// is `p_0 + sum beta_i v_i`.
pub fn circumsphere(points: &[Coord], len: usize, dim: usize) -> Result<Circumsphere, Error> {
    debug_assert!(len >= 1 && len <= dim + 1);
    let k = len - 1;
    let p0 = &points[0];
    if k == 0 {
        let mut bary = [0.0; MAX_DIM + 1];
        bary[0] = 1.0;
        return Ok(Circumsphere {
            center: *p0,
            radius: 0.0,
            barycentric: bary,
            len,
        });
    }
    let mut basis = [[0.0f64; MAX_DIM]; MAX_DIM];
    for i in 0..k {
        for c in 0..dim {
            basis[i][c] = points[i + 1][c] - p0[c];
        }
    }
    let mut gram = [[0.0f64; MAX_DIM]; MAX_DIM];
    let mut rhs = [0.0f64; MAX_DIM];
    for i in 0..k {
        for j in i..k {
            let g = dot(&basis[i], &basis[j], dim);
            gram[i][j] = g;
            gram[j][i] = g;
        }
        rhs[i] = gram[i][i] * 0.5;
    }
    solve_small(&mut gram, &mut rhs, k)?;

    let mut center = *p0;
    let mut bary = [0.0; MAX_DIM + 1];
    let mut beta_sum = 0.0;
    for i in 0..k {
        let beta = rhs[i];
        bary[i + 1] = beta;
        beta_sum += beta;
        for c in 0..dim {
            center[c] += beta * basis[i][c];
        }
    }
    bary[0] = 1.0 - beta_sum;
    let radius = fmath::sqrt(dist_sq(&center, p0, dim));
    Ok(Circumsphere {
        center,
        radius,
        barycentric: bary,
        len,
    })
}

/// Whether the circumcenter lies strictly inside the open simplex spanned by
/// the vertices, i.e. every barycentric coordinate is strictly positive.
///
/// Coordinates within `tol` of zero make the test ambiguous; callers resolve
/// such measure-zero configurations by resampling.
pub fn contains_center(cs: &Circumsphere, tol: f64) -> Result<bool, Error> {
    let mut all_positive = true;
    for &b in cs.barycentric.iter().take(cs.len) {
        if fmath::abs(b) <= tol {
            return Err(Error::AmbiguousBoundary("barycentric coordinate near zero"));
        }
        if b < 0.0 {
            all_positive = false;
        }
    }
    Ok(all_positive)
}

/// Distances from the circumcenter to each facet's affine hull, normalized by
/// the circumradius.
///
/// Returns `(phi, nearest, nearest_facet_radius)` where `phi` is the minimum
/// normalized distance over the `len` facets, `nearest` is the index of the
/// omitted vertex of the minimizing facet, and `nearest_facet_radius` is that
/// facet's own circumradius. The foot of the perpendicular from the center to
/// a facet's hull is the facet's circumcenter (it is equidistant from the
/// facet vertices), which gives both quantities from one facet circumsphere.
///
/// Fails with [`Error::TieDetected`] when two facet distances agree within
/// relative tolerance: the minimizing facet would not be well defined.
pub fn phi_and_nearest_face(
    points: &[Coord],
    len: usize,
    dim: usize,
    cs: &Circumsphere,
) -> Result<(f64, usize, f64), Error> {
    debug_assert!(len >= 2);
    let mut facet = [[0.0f64; MAX_DIM]; MAX_DIM + 1];
    let mut best = f64::INFINITY;
    let mut second = f64::INFINITY;
    let mut best_idx = 0usize;
    let mut best_facet_radius = 0.0f64;
    for omit in 0..len {
        let mut m = 0;
        for (i, p) in points.iter().enumerate().take(len) {
            if i != omit {
                facet[m] = *p;
                m += 1;
            }
        }
        let fcs = circumsphere(&facet, m, dim)?;
        let h = fmath::sqrt(dist_sq(&cs.center, &fcs.center, dim));
        if h < best {
            second = best;
            best = h;
            best_idx = omit;
            best_facet_radius = fcs.radius;
        } else if h < second {
            second = h;
        }
    }
    if cs.radius <= 0.0 {
        return Err(Error::DegenerateInput("zero circumradius"));
    }
    if second.is_finite() && second - best <= DEGENERACY_TOL * cs.radius {
        return Err(Error::TieDetected("two facets equally near the center"));
    }
    Ok((best / cs.radius, best_idx, best_facet_radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Coord {
        [x, y, 0.0, 0.0]
    }

    #[test]
    fn equilateral_triangle_circumradius() {
        let s = 0.2;
        let pts = [
            pt(0.0, 0.0),
            pt(s, 0.0),
            pt(s / 2.0, s * 3f64.sqrt() / 2.0),
        ];
        let cs = circumsphere(&pts, 3, 2).unwrap();
        assert!((cs.radius - 0.11547005383792516).abs() < 1e-15);
        assert!(contains_center(&cs, 1e-12).unwrap());
        for b in &cs.barycentric[..3] {
            assert!((b - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn right_triangle_center_sits_on_hypotenuse() {
        let pts = [pt(0.0, 0.0), pt(0.3, 0.0), pt(0.0, 0.4)];
        let cs = circumsphere(&pts, 3, 2).unwrap();
        assert!((cs.radius - 0.25).abs() < 1e-15);
        // center = hypotenuse midpoint: barycentric (0, 1/2, 1/2)
        assert_eq!(contains_center(&cs, 1e-12), Err(Error::AmbiguousBoundary("barycentric coordinate near zero")));
    }

    #[test]
    fn obtuse_triangle_center_falls_outside() {
        let pts = [pt(0.0, 0.0), pt(0.2, 0.0), pt(0.1, 0.02)];
        let cs = circumsphere(&pts, 3, 2).unwrap();
        assert!((cs.radius - 0.26000000000000006).abs() < 1e-12);
        assert!(!contains_center(&cs, 1e-12).unwrap());
    }

    #[test]
    fn equidistance_holds_for_a_tetrahedron() {
        let pts = [
            [0.01, 0.02, 0.03, 0.0],
            [0.11, 0.05, 0.02, 0.0],
            [0.04, 0.12, 0.01, 0.0],
            [0.06, 0.04, 0.13, 0.0],
        ];
        let cs = circumsphere(&pts, 4, 3).unwrap();
        for p in &pts {
            let d = dist_sq(&cs.center, p, 3).sqrt();
            assert!((d - cs.radius).abs() <= 1e-9 * cs.radius);
        }
        let sum: f64 = cs.barycentric[..4].iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn edge_circumsphere_is_the_midpoint_ball() {
        let pts = [pt(0.1, 0.1), pt(0.3, 0.1)];
        let cs = circumsphere(&pts, 2, 2).unwrap();
        assert!((cs.center[0] - 0.2).abs() < 1e-15);
        assert!((cs.radius - 0.1).abs() < 1e-15);
        assert!(contains_center(&cs, 1e-12).unwrap());
    }

    #[test]
    fn collinear_triangle_is_degenerate() {
        let pts = [pt(0.0, 0.0), pt(0.1, 0.0), pt(0.2, 0.0)];
        assert!(matches!(
            circumsphere(&pts, 3, 2),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn nearest_facet_lies_opposite_the_largest_angle() {
        // Scalene acute triangle; the widest angle sits at vertex 2, so the
        // facet omitting it (the long base on the x-axis) is nearest.
        let pts = [pt(0.0, 0.0), pt(0.2, 0.0), pt(0.05, 0.12)];
        let cs = circumsphere(&pts, 3, 2).unwrap();
        let (phi, nearest, facet_rho) = phi_and_nearest_face(&pts, 3, 2, &cs).unwrap();
        assert!(phi > 0.0 && phi < 1.0);
        assert_eq!(nearest, 2);
        assert!((facet_rho - 0.1).abs() < 1e-15);
        // phi * radius equals the center height above the base
        assert!((phi * cs.radius - cs.center[1]).abs() < 1e-12);
    }

    #[test]
    fn symmetric_triangles_report_facet_ties() {
        let s = 0.2;
        let pts = [
            pt(0.0, 0.0),
            pt(s, 0.0),
            pt(s / 2.0, s * 3f64.sqrt() / 2.0),
        ];
        let cs = circumsphere(&pts, 3, 2).unwrap();
        assert!(matches!(
            phi_and_nearest_face(&pts, 3, 2, &cs),
            Err(Error::TieDetected(_))
        ));
    }
}
