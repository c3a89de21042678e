//! Ball, cap, lens, and ball-difference volumes in dimension `d`.

use crate::error::Error;
use crate::fmath;

/// Volume of the unit ball in `R^d`: `w(0) = 1`, `w(1) = 2`,
/// `w(d) = w(d-2) * 2 pi / d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * core::f64::consts::PI / d as f64,
    }
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (symmetric halves).
const XK: [f64; 8] = [
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
];
const WK: [f64; 8] = [
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299785,
    0.0229353220105292,
];
// Gauss-7 uses the even Kronrod nodes (indices 0, 2, 4, 6).
const WG: [f64; 4] = [
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
];

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut k = WK[0] * fc;
    let mut g = WG[0] * fc;
    for i in 1..8 {
        let dx = half * XK[i];
        let s = f(mid - dx) + f(mid + dx);
        k += WK[i] * s;
        if i % 2 == 0 {
            g += WG[i / 2] * s;
        }
    }
    (k * half, fmath::abs((k - g) * half))
}

/// Adaptive Gauss-Kronrod integration to absolute tolerance `tol`.
fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = kronrod_panel(f, a, b);
    if err <= tol || depth == 0 {
        return v;
    }
    let mid = 0.5 * (a + b);
    integrate(f, a, mid, 0.5 * tol, depth - 1) + integrate(f, mid, b, 0.5 * tol, depth - 1)
}

/// Cap volume for a signed height in [-1, 1]; `delta < 0` caps exceed the
/// hemisphere. Substituting `t = cos(theta)` turns the integrand into
/// `sin(theta)^d`, which is smooth up to the pole, so the quadrature
/// converges far below the 1e-10 budget.
pub(crate) fn cap_signed(d: usize, delta: f64) -> f64 {
    let delta = delta.clamp(-1.0, 1.0);
    let theta = fmath::acos(delta);
    let f = |t: f64| fmath::powi(fmath::sin(t), d as i32);
    unit_ball_volume(d - 1) * integrate(&f, 0.0, theta, 1e-12, 40)
}

/// Volume of the cap of the unit ball in `R^d` lying above height `delta`,
/// i.e. `vol{x in B^d : x_1 >= delta}` for `delta` in [0, 1].
pub fn cap_volume(d: usize, delta: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&delta));
    cap_signed(d, delta)
}

/// Volume of the intersection of balls of radii `r1`, `r2` in `R^d` whose
/// centers are `dist` apart. Disjoint and nested cases included; otherwise the
/// lens splits along the radical hyperplane into one cap per ball.
pub fn lens_volume(d: usize, r1: f64, r2: f64, dist: f64) -> f64 {
    debug_assert!(r1 >= 0.0 && r2 >= 0.0 && dist >= 0.0);
    if dist >= r1 + r2 {
        return 0.0;
    }
    let rmin = if r1 < r2 { r1 } else { r2 };
    if dist <= fmath::abs(r1 - r2) {
        return unit_ball_volume(d) * fmath::powi(rmin, d as i32);
    }
    // Signed distance from each center to the radical hyperplane; one may be
    // negative when the smaller ball reaches past the larger center.
    let h1 = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    let h2 = dist - h1;
    let piece = |r: f64, h: f64| {
        let t = (h / r).clamp(-1.0, 1.0);
        fmath::powi(r, d as i32) * cap_signed(d, t)
    };
    piece(r1, h1) + piece(r2, h2)
}

/// Volume of `B_{1-alpha*eps}(x2) \ B_1(x1)` for `|x1 - x2| = eps`, computed
/// as a difference of two caps split along the circle where the spheres meet.
/// Requires `eps <= 2*alpha / (1 + alpha^2)`, the regime in which the small
/// ball still pokes out of the large one on one side only.
pub fn diff_volume(d: usize, eps: f64, alpha: f64) -> Result<f64, Error> {
    if !(0.0 < eps && eps < 1.0 && 0.0 < alpha && alpha < 1.0) {
        return Err(Error::ParameterOutOfRange("diff_volume needs eps, alpha in (0,1)"));
    }
    if eps > 2.0 * alpha / (1.0 + alpha * alpha) {
        return Err(Error::ParameterOutOfRange("diff_volume needs eps <= 2a/(1+a^2)"));
    }
    let delta = alpha - 0.5 * eps * (1.0 + alpha * alpha);
    let shrunk = 1.0 - alpha * eps;
    let v1 = fmath::powi(shrunk, d as i32) * cap_signed(d, delta / shrunk);
    let v2 = cap_signed(d, delta + eps);
    Ok((v1 - v2).max(0.0))
}
