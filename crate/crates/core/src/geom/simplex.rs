//! Euclidean simplex volumes via Gram determinants.

use super::dot;
use crate::fmath;
use crate::Coord;
use crate::MAX_DIM;

/// Computes the `k`-dimensional volume of the simplex on `points[..len]`
/// (`k = len - 1`), embedded in a `dim`-dimensional chart:
/// `sqrt(det G) / k!` with `G_ij = (p_i - p_0) . (p_j - p_0)`.
///
/// Degenerate (affinely dependent) vertex sets yield 0. A single vertex has
/// volume 1 by the empty-product convention.
pub fn simplex_volume(points: &[Coord], len: usize, dim: usize) -> f64 {
    debug_assert!(len >= 1 && len <= dim + 1);
    let k = len - 1;
    if k == 0 {
        return 1.0;
    }
    let mut basis = [[0.0f64; MAX_DIM]; MAX_DIM];
    for i in 0..k {
        for c in 0..dim {
            basis[i][c] = points[i + 1][c] - points[0][c];
        }
    }
    let mut gram = [[0.0f64; MAX_DIM]; MAX_DIM];
    for i in 0..k {
        for j in i..k {
            let g = dot(&basis[i], &basis[j], dim);
            gram[i][j] = g;
            gram[j][i] = g;
        }
    }
    // Gaussian elimination with partial pivoting; det = product of pivots.
    let mut det = 1.0f64;
    for col in 0..k {
        let mut piv = col;
        for row in col + 1..k {
            if fmath::abs(gram[row][col]) > fmath::abs(gram[piv][col]) {
                piv = row;
            }
        }
        if piv != col {
            gram.swap(piv, col);
            det = -det;
        }
        let p = gram[col][col];
        if p == 0.0 {
            return 0.0;
        }
        det *= p;
        for row in col + 1..k {
            let f = gram[row][col] / p;
            for c in col..k {
                gram[row][c] -= f * gram[col][c];
            }
        }
    }
    if det <= 0.0 {
        // Gram matrices are positive semidefinite; a negative value is float
        // noise from a near-degenerate configuration.
        return 0.0;
    }
    let mut kfact = 1.0f64;
    for i in 2..=k {
        kfact *= i as f64;
    }
    fmath::sqrt(det) / kfact
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Coord {
        [x, y, 0.0, 0.0]
    }

    #[test]
    fn segment_length() {
        let pts = [pt(0.1, 0.1), pt(0.4, 0.5)];
        assert!((simplex_volume(&pts, 2, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn right_triangle_area() {
        let pts = [pt(0.0, 0.0), pt(0.3, 0.0), pt(0.0, 0.4)];
        assert!((simplex_volume(&pts, 3, 2) - 0.06).abs() < 1e-15);
    }

    #[test]
    fn equilateral_triangle_area() {
        let s = 0.2f64;
        let pts = [
            pt(0.0, 0.0),
            pt(s, 0.0),
            pt(s / 2.0, s * 3f64.sqrt() / 2.0),
        ];
        let expect = 3f64.sqrt() / 4.0 * s * s;
        assert!((simplex_volume(&pts, 3, 2) - expect).abs() < 1e-15);
    }

    #[test]
    fn regular_tetrahedron_volume() {
        let h = 3f64.sqrt();
        let pts = [
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.5, h / 2.0, 0.0, 0.0],
            [0.5, h / 6.0, (2f64 / 3.0).sqrt(), 0.0],
        ];
        assert!((simplex_volume(&pts, 4, 3) - 0.11785113019775793).abs() < 1e-15);
    }

    #[test]
    fn collinear_points_have_zero_area() {
        let pts = [pt(0.0, 0.0), pt(0.1, 0.1), pt(0.2, 0.2)];
        assert!(simplex_volume(&pts, 3, 2) == 0.0);
    }

    proptest! {
        #[test]
        fn translation_invariant(
            coords in proptest::array::uniform6(-0.2f64..0.2),
            tx in -0.3f64..0.3,
            ty in -0.3f64..0.3,
        ) {
            let pts = [
                pt(coords[0], coords[1]),
                pt(coords[2], coords[3]),
                pt(coords[4], coords[5]),
            ];
            let moved = [
                pt(coords[0] + tx, coords[1] + ty),
                pt(coords[2] + tx, coords[3] + ty),
                pt(coords[4] + tx, coords[5] + ty),
            ];
            let a = simplex_volume(&pts, 3, 2);
            let b = simplex_volume(&moved, 3, 2);
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }

        #[test]
        fn scaling_a_triangle_scales_area_quadratically(
            coords in proptest::array::uniform6(-0.2f64..0.2),
            s in 0.1f64..2.0,
        ) {
            let pts = [
                pt(coords[0], coords[1]),
                pt(coords[2], coords[3]),
                pt(coords[4], coords[5]),
            ];
            let scaled = [
                pt(coords[0] * s, coords[1] * s),
                pt(coords[2] * s, coords[3] * s),
                pt(coords[4] * s, coords[5] * s),
            ];
            let a = simplex_volume(&pts, 3, 2);
            let b = simplex_volume(&scaled, 3, 2);
            prop_assert!((b - s * s * a).abs() <= 1e-10 * (1.0 + b.abs()));
        }
    }
}
