//! Critical faces of the toroidal distance function, persistence signs,
//! counters, isolation tests, and hitting times.
//!
//! A `k`-face (`k >= 1`) is critical when its circumcenter lies strictly
//! inside the open face and the open circumball contains no other cloud
//! point; every vertex is critical. Homology of the ball union changes only
//! at critical faces, and whether a critical face creates or destroys a
//! class is read off the Z/2 persistence reduction.

use alloc::vec::Vec;

use crate::cech::{Filtration, MAX_VERTS};
use crate::error::Error;
use crate::geom::{
    circumsphere, contains_center, local_lift, phi_and_nearest_face, torus_distance_sq,
    wrap_to_torus, DEGENERACY_TOL,
};
use crate::poisson::TorusPointCloud;
use crate::reduce::{reduce_z2, Reduction, UNPAIRED};
use crate::Coord;

/// Binomial coefficient, exact for the small arguments used here.
pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Whether a simplex creates a cycle (positive) or destroys one (negative).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// A critical face of the distance function.
#[derive(Debug, Clone)]
pub struct CriticalFace {
    /// Position of the underlying simplex in the filtration.
    pub position: u32,
    pub dim: u8,
    /// Circumcenter, wrapped to torus coordinates.
    pub center: Coord,
    /// Critical radius; equals the simplex's filtration value.
    pub rho: f64,
    /// Distance from the center to the nearest facet hull, normalized by
    /// `rho`; 1 for vertices and edges.
    pub phi: f64,
    /// Index of the vertex omitted by the nearest facet.
    pub nearest_omitted: u8,
    /// Circumradius of that nearest facet.
    pub nearest_facet_rho: f64,
}

/// One persistence class: created at `birth`, destroyed at `death` (`None`
/// for classes alive at `r_max`), in homology degree `degree`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: u32,
    pub death: Option<u32>,
    pub degree: u8,
}

/// Finds all critical faces of the filtration.
///
/// Vertices are reported unconditionally with `rho = 0`. Higher faces are
/// tested by the two-part criterion; configurations inside the tolerance
/// band of either test (a barycentric coordinate at zero, a point exactly on
/// a circumsphere, a facet-distance tie) are degenerate and reported as
/// errors so the trial driver can resample.
pub fn detect_critical_faces(
    filtration: &Filtration,
    cloud: &TorusPointCloud,
) -> Result<Vec<CriticalFace>, Error> {
    let d = cloud.dim;
    let mut out = Vec::new();
    let mut chart = [[0.0f64; crate::MAX_DIM]; MAX_VERTS];
    for (pos, s) in filtration.simplices.iter().enumerate() {
        let m = s.dim as usize + 1;
        if s.dim == 0 {
            out.push(CriticalFace {
                position: pos as u32,
                dim: 0,
                center: cloud.points[s.vertices[0] as usize],
                rho: 0.0,
                phi: 1.0,
                nearest_omitted: 0,
                nearest_facet_rho: 0.0,
            });
            continue;
        }
        // Faces above the ambient dimension have no circumcenter in their
        // hull's interior relative to a full-rank Gram system; they are never
        // critical.
        if s.dim as usize > d {
            continue;
        }
        let anchor = &cloud.points[s.vertices[0] as usize][..d];
        let refs: Vec<&[f64]> = s
            .verts()
            .iter()
            .map(|&v| &cloud.points[v as usize][..d])
            .collect();
        let lift = local_lift(anchor, &refs, d)?;
        for (slot, c) in chart.iter_mut().zip(lift.coords.iter()) {
            *slot = *c;
        }
        let cs = circumsphere(&chart, m, d)?;
        if !contains_center(&cs, DEGENERACY_TOL)? {
            continue;
        }
        let center = wrap_to_torus(anchor, &cs.center, d);
        let rho = cs.radius;
        let ids = cloud.points_in_ball(&center[..d], rho * (1.0 + 1e-12))?;
        let lo = rho * (1.0 - 1e-12);
        let mut blocked = false;
        for id in ids {
            if s.verts().contains(&id) {
                continue;
            }
            let dsq = torus_distance_sq(&center[..d], &cloud.points[id as usize][..d]);
            if dsq < lo * lo {
                blocked = true;
                break;
            }
            return Err(Error::AmbiguousBoundary("cloud point on a circumsphere"));
        }
        if blocked {
            continue;
        }
        let (phi, omit, facet_rho) = if m == 2 {
            // Both facets of an edge are vertices at distance exactly rho;
            // phi = 1 and the lower-id vertex stands in as the nearest facet.
            (1.0, 1u8, 0.0)
        } else {
            let (phi, omit, facet_rho) = phi_and_nearest_face(&chart, m, d, &cs)?;
            (phi, omit as u8, facet_rho)
        };
        out.push(CriticalFace {
            position: pos as u32,
            dim: s.dim,
            center,
            rho,
            phi,
            nearest_omitted: omit,
            nearest_facet_rho: facet_rho,
        });
    }
    Ok(out)
}

/// Runs the Z/2 persistence reduction of the filtration and extracts the
/// pairs. The returned [`Reduction`] doubles as the sign map: a simplex is
/// positive exactly when its reduced boundary column vanished.
pub fn reduce_persistence(filtration: &Filtration) -> (Vec<PersistencePair>, Reduction) {
    let m = filtration.len();
    let mut dims = Vec::with_capacity(m);
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut facet = [0u32; MAX_VERTS];
    for s in &filtration.simplices {
        dims.push(s.dim);
        let verts = s.verts();
        let mut col = Vec::with_capacity(verts.len());
        if s.dim > 0 {
            for omit in 0..verts.len() {
                let mut w = 0;
                for (v, &id) in verts.iter().enumerate() {
                    if v != omit {
                        facet[w] = id;
                        w += 1;
                    }
                }
                col.push(filtration.position_of(&facet[..w]).expect("facet present"));
            }
            col.sort_unstable();
        }
        cols.push(col);
    }
    let reduction = reduce_z2(&dims, cols);
    let mut pairs = Vec::new();
    for j in 0..m {
        if reduction.positive[j] {
            let partner = reduction.partner[j];
            pairs.push(PersistencePair {
                birth: j as u32,
                death: (partner != UNPAIRED).then_some(partner),
                degree: dims[j],
            });
        }
    }
    (pairs, reduction)
}

pub fn sign_of(reduction: &Reduction, position: u32) -> Sign {
    if reduction.positive[position as usize] {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Betti numbers of the complex at radius `r`, from the persistence pairs.
pub fn betti_at(filtration: &Filtration, reduction: &Reduction, r: f64) -> [usize; MAX_VERTS] {
    let mut betti = [0usize; MAX_VERTS];
    for (j, s) in filtration.simplices.iter().enumerate() {
        if s.value > r || !reduction.positive[j] {
            continue;
        }
        let partner = reduction.partner[j];
        let dead = partner != UNPAIRED
            && filtration.simplices[partner as usize].value <= r;
        if !dead {
            betti[s.dim as usize] += 1;
        }
    }
    betti
}

/// Betti numbers of the full bounded filtration (classes alive at `r_max`).
pub fn essential_betti(filtration: &Filtration, reduction: &Reduction) -> [usize; MAX_VERTS] {
    let mut betti = [0usize; MAX_VERTS];
    for p in reduction.essential_positions() {
        betti[filtration.simplices[p as usize].dim as usize] += 1;
    }
    betti
}

/// Betti numbers of the torus itself: `binom(d, k)`.
pub fn torus_betti(d: usize) -> [usize; MAX_VERTS] {
    let mut betti = [0usize; MAX_VERTS];
    for (k, b) in betti.iter_mut().enumerate().take(d + 1) {
        *b = binom(d, k);
    }
    betti
}

/// Whether the bounded filtration reaches the torus's homology in degrees
/// `0..=d`. Degrees above `d` are truncation artifacts and are ignored.
pub fn is_covered(filtration: &Filtration, reduction: &Reduction, d: usize) -> bool {
    essential_betti(filtration, reduction)[..=d] == torus_betti(d)[..=d]
}

/// Step-function counters over a radius grid: `f[i][k]` counts critical
/// `k`-faces with `rho` in `(r_grid[i], r_max]`, split by sign in `f_pos`
/// and `f_neg`.
#[derive(Debug, Clone)]
pub struct CounterCurves {
    pub r_grid: Vec<f64>,
    pub f: Vec<[u32; MAX_VERTS]>,
    pub f_pos: Vec<[u32; MAX_VERTS]>,
    pub f_neg: Vec<[u32; MAX_VERTS]>,
}

pub fn classify_and_count(
    criticals: &[CriticalFace],
    reduction: &Reduction,
    r_grid: &[f64],
) -> CounterCurves {
    let mut curves = CounterCurves {
        r_grid: r_grid.to_vec(),
        f: alloc::vec![[0; MAX_VERTS]; r_grid.len()],
        f_pos: alloc::vec![[0; MAX_VERTS]; r_grid.len()],
        f_neg: alloc::vec![[0; MAX_VERTS]; r_grid.len()],
    };
    for c in criticals {
        let positive = reduction.positive[c.position as usize];
        for (i, &r) in r_grid.iter().enumerate() {
            if c.rho > r {
                curves.f[i][c.dim as usize] += 1;
                if positive {
                    curves.f_pos[i][c.dim as usize] += 1;
                } else {
                    curves.f_neg[i][c.dim as usize] += 1;
                }
            }
        }
    }
    curves
}

/// Critical `k`-face counts in the window `(r, r_max]`: `(all, positive,
/// negative)`.
pub fn window_counts(
    criticals: &[CriticalFace],
    reduction: &Reduction,
    k: usize,
    r: f64,
) -> (u32, u32, u32) {
    let (mut f, mut pos) = (0u32, 0u32);
    for c in criticals {
        if c.dim as usize == k && c.rho > r {
            f += 1;
            if reduction.positive[c.position as usize] {
                pos += 1;
            }
        }
    }
    (f, pos, f - pos)
}

/// For every negative critical `(k+1)`-face in the window `(r, r_max]`,
/// checks whether its nearest facet is itself a positive critical `k`-face.
/// Returns the matching count and the fraction among the negatives (1 when
/// the window holds none).
pub fn pairing_fraction(
    filtration: &Filtration,
    criticals: &[CriticalFace],
    reduction: &Reduction,
    k: usize,
    r: f64,
) -> (u32, f64) {
    let mut positive_critical = alloc::vec![false; filtration.len()];
    for c in criticals {
        if reduction.positive[c.position as usize] {
            positive_critical[c.position as usize] = true;
        }
    }
    let mut negatives = 0u32;
    let mut matched = 0u32;
    let mut facet = [0u32; MAX_VERTS];
    for c in criticals {
        if c.dim as usize != k + 1
            || c.rho <= r
            || reduction.positive[c.position as usize]
        {
            continue;
        }
        negatives += 1;
        let verts = filtration.simplices[c.position as usize].verts();
        let mut w = 0;
        for (v, &id) in verts.iter().enumerate() {
            if v != c.nearest_omitted as usize {
                facet[w] = id;
                w += 1;
            }
        }
        let fpos = filtration
            .position_of(&facet[..w])
            .expect("facet present in filtration");
        if positive_critical[fpos as usize] {
            matched += 1;
        }
    }
    if negatives == 0 {
        (0, 1.0)
    } else {
        (matched, matched as f64 / negatives as f64)
    }
}

/// Projects `p` onto the intersection of balls of radius `rho` centered at
/// `centers` (chart coordinates) by Dykstra's alternating scheme, which
/// converges to the true projection for convex sets.
fn project_onto_ball_intersection(
    p: &Coord,
    centers: &[Coord],
    rho: f64,
    dim: usize,
) -> Coord {
    let mut x = *p;
    let mut corrections = [[0.0f64; crate::MAX_DIM]; MAX_VERTS];
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for (c, corr) in centers.iter().zip(corrections.iter_mut()) {
            let mut z = [0.0f64; crate::MAX_DIM];
            let mut dist_sq = 0.0;
            for i in 0..dim {
                z[i] = x[i] + corr[i];
                let dv = z[i] - c[i];
                dist_sq += dv * dv;
            }
            let dist = crate::fmath::sqrt(dist_sq);
            let mut proj = z;
            if dist > rho {
                let scale = rho / dist;
                for i in 0..dim {
                    proj[i] = c[i] + (z[i] - c[i]) * scale;
                }
            }
            for i in 0..dim {
                corr[i] = z[i] - proj[i];
                shift += (x[i] - proj[i]) * (x[i] - proj[i]);
                x[i] = proj[i];
            }
        }
        if shift < 1e-22 {
            break;
        }
    }
    x
}

/// Whether the positive critical face `facet_verts` stays isolated when its
/// destroyer arrives: true iff no cloud point outside `coface_verts` lies in
/// the open `rho`-neighborhood of the intersection of `rho`-balls around the
/// facet's vertices.
pub fn isolation_check(
    cloud: &TorusPointCloud,
    facet_verts: &[u32],
    coface_verts: &[u32],
    rho: f64,
) -> Result<bool, Error> {
    let d = cloud.dim;
    let anchor = &cloud.points[facet_verts[0] as usize][..d];
    let refs: Vec<&[f64]> = facet_verts
        .iter()
        .map(|&v| &cloud.points[v as usize][..d])
        .collect();
    let lift = local_lift(anchor, &refs, d)?;
    // Any point within rho of the intersection sits within 2*rho of the
    // anchor vertex, which is inside the grid's reach.
    let candidates = cloud.points_in_ball(anchor, (2.0 * rho).min(2.0 * crate::R_MAX))?;
    for id in candidates {
        if coface_verts.contains(&id) {
            continue;
        }
        let p_lift = local_lift(anchor, &[&cloud.points[id as usize][..d]], d)?;
        let p = p_lift.coords[0];
        let proj = project_onto_ball_intersection(&p, &lift.coords, rho, d);
        let mut dist_sq = 0.0;
        for i in 0..d {
            let dv = p[i] - proj[i];
            dist_sq += dv * dv;
        }
        if crate::fmath::sqrt(dist_sq) < rho - 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The hitting times of torus-equal homology per degree, the isolation-free
/// times, and the coverage radius.
#[derive(Debug, Clone)]
pub struct HittingTimes {
    /// `t[k]` = smallest radius from which degree-`k` homology stays that of
    /// the torus, for `k = 0..=d`.
    pub t: [f64; MAX_VERTS],
    /// `t_iso[k]` = smallest radius from which no positive critical `k`-face
    /// is isolated (`k = 1..=d`); infinite when some face never gains a
    /// coface within the bounded filtration.
    pub t_iso: [f64; MAX_VERTS],
    /// Largest critical `d`-face radius = max over the torus of the distance
    /// to the cloud.
    pub coverage: f64,
}

/// Computes hitting times from the persistence pairs and critical faces.
/// Fails with [`Error::NotCovered`] when the bounded filtration never reaches
/// the torus's homology (so the times are undefined).
pub fn hitting_times(
    filtration: &Filtration,
    criticals: &[CriticalFace],
    reduction: &Reduction,
    pairs: &[PersistencePair],
    d: usize,
) -> Result<HittingTimes, Error> {
    if !is_covered(filtration, reduction, d) {
        return Err(Error::NotCovered);
    }
    let value_of = |pos: u32| filtration.simplices[pos as usize].value;
    let mut t = [0.0f64; MAX_VERTS];
    for p in pairs {
        let k = p.degree as usize;
        if k > d {
            continue;
        }
        // A class that dies pins T_k at its death; a class alive at r_max
        // pins T_k at its birth. Zero-length pairs (birth and death at the
        // same value) never alter homology at any radius and pin nothing.
        let pin = match p.death {
            Some(death) => {
                let dv = value_of(death);
                if dv <= value_of(p.birth) {
                    continue;
                }
                dv
            }
            None => value_of(p.birth),
        };
        if pin > t[k] {
            t[k] = pin;
        }
    }

    let mut coverage = 0.0f64;
    for c in criticals {
        if c.dim as usize == d && c.rho > coverage {
            coverage = c.rho;
        }
    }

    // Earliest coface value per simplex position.
    let mut min_coface = alloc::vec![f64::INFINITY; filtration.len()];
    let mut facet = [0u32; MAX_VERTS];
    for s in &filtration.simplices {
        if s.dim == 0 {
            continue;
        }
        let verts = s.verts();
        for omit in 0..verts.len() {
            let mut w = 0;
            for (v, &id) in verts.iter().enumerate() {
                if v != omit {
                    facet[w] = id;
                    w += 1;
                }
            }
            let fpos = filtration
                .position_of(&facet[..w])
                .expect("facet present in filtration") as usize;
            if s.value < min_coface[fpos] {
                min_coface[fpos] = s.value;
            }
        }
    }
    let mut t_iso = [0.0f64; MAX_VERTS];
    for c in criticals {
        let k = c.dim as usize;
        if k == 0 || !reduction.positive[c.position as usize] {
            continue;
        }
        let end = min_coface[c.position as usize];
        if end > t_iso[k] {
            t_iso[k] = end;
        }
    }
    Ok(HittingTimes {
        t,
        t_iso,
        coverage,
    })
}

/// Alternating sum of critical-face counts over the whole filtration; equals
/// the torus's Euler characteristic (zero) on covered trials, which is the
/// only case in which it is defined.
pub fn euler_alternating_sum(
    criticals: &[CriticalFace],
    filtration: &Filtration,
    reduction: &Reduction,
    d: usize,
) -> Result<i64, Error> {
    if !is_covered(filtration, reduction, d) {
        return Err(Error::NotCovered);
    }
    let mut sum = 0i64;
    for c in criticals {
        if c.dim % 2 == 0 {
            sum += 1;
        } else {
            sum -= 1;
        }
    }
    Ok(sum)
}
