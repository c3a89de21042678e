//! Čech filtrations over toroidal point clouds, bounded in radius and
//! dimension.
//!
//! A set of `k+1` points enters the complex once balls of radius `r` around
//! all of them share a point, which happens exactly at the radius of their
//! minimum enclosing ball. Radii are capped at `r_max`, so every simplex has
//! diameter `<= 2*r_max < 1/2` and lives in one isometric chart.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::{local_lift, min_enclosing_ball, torus_distance};
use crate::poisson::TorusPointCloud;
use crate::Coord;
use crate::R_MAX;

/// Vertex capacity of one simplex (`dim <= MAX_DIM + 1`).
pub const MAX_VERTS: usize = crate::MAX_DIM + 2;

/// Padding value for unused vertex slots.
const NO_VERT: u32 = u32::MAX;

/// One simplex of the filtration: sorted vertex ids and the radius at which
/// the common ball intersection first becomes non-empty.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationSimplex {
    /// Ascending vertex ids in the first `dim + 1` slots, `NO_VERT` beyond.
    pub vertices: [u32; MAX_VERTS],
    pub value: f64,
    pub dim: u8,
}

impl FiltrationSimplex {
    pub fn verts(&self) -> &[u32] {
        &self.vertices[..self.dim as usize + 1]
    }
}

/// A Čech filtration sorted by `(value, dim, lexicographic vertices)`, so
/// every facet precedes its cofaces (facets never have larger value, and at
/// equal value they have smaller dimension).
#[derive(Debug, Clone, Default)]
pub struct Filtration {
    pub simplices: Vec<FiltrationSimplex>,
    index: BTreeMap<[u32; MAX_VERTS], u32>,
}

impl Filtration {
    /// Position of the simplex with exactly these vertices (sorted), if any.
    pub fn position_of(&self, verts: &[u32]) -> Option<u32> {
        self.index.get(&key_of(verts)).copied()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

fn key_of(verts: &[u32]) -> [u32; MAX_VERTS] {
    let mut key = [NO_VERT; MAX_VERTS];
    key[..verts.len()].copy_from_slice(verts);
    key
}

/// Builds the Čech filtration of `cloud` restricted to simplexes of dimension
/// `<= max_dim` and entry radius `<= r_max`.
///
/// Candidates come from lexicographic clique expansion of the neighbor graph
/// at threshold `2*r_max` (the Čech complex embeds in the Rips complex at
/// doubled radius, so nothing is missed), each gated by its enclosing-ball
/// radius. Gating also prunes the expansion: enclosing radii only grow along
/// cofaces.
pub fn build_filtration(
    cloud: &TorusPointCloud,
    max_dim: usize,
    r_max: f64,
) -> Result<Filtration, Error> {
    debug_assert!(max_dim <= cloud.dim + 1);
    let n = cloud.len();
    let dim = cloud.dim;

    // Symmetric adjacency at threshold 2*r_max, ascending within each list.
    let mut adj: Vec<Vec<u32>> = Vec::with_capacity(n);
    if 2.0 * r_max <= 2.0 * R_MAX {
        for i in 0..n {
            let mut ids = cloud.points_in_ball(&cloud.points[i][..dim], 2.0 * r_max)?;
            ids.retain(|&j| j != i as u32);
            adj.push(ids);
        }
    } else {
        // Radii beyond the grid reach only occur in tiny diagnostic clouds.
        adj = alloc::vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let d = torus_distance(&cloud.points[i][..dim], &cloud.points[j][..dim]);
                if d <= 2.0 * r_max {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
    }

    let mut simplices: Vec<FiltrationSimplex> = Vec::with_capacity(n * 2);
    for i in 0..n {
        simplices.push(FiltrationSimplex {
            vertices: key_of(&[i as u32]),
            value: 0.0,
            dim: 0,
        });
    }

    if max_dim >= 1 {
        let mut verts = [0u32; MAX_VERTS];
        let mut chart = [[0.0f64; crate::MAX_DIM]; MAX_VERTS];
        for i in 0..n {
            verts[0] = i as u32;
            let cands: Vec<u32> = adj[i].iter().copied().filter(|&j| j > i as u32).collect();
            expand(
                cloud, &adj, r_max, max_dim, &mut verts, &mut chart, 1, &cands,
                &mut simplices,
            )?;
        }
    }

    // Clamp each value up to its facets before sorting: mathematically the
    // enclosing radius is already monotone, this only absorbs float noise so
    // the sorted order always places facets first.
    let mut key_index: BTreeMap<[u32; MAX_VERTS], u32> = BTreeMap::new();
    for (pos, s) in simplices.iter().enumerate() {
        key_index.insert(s.vertices, pos as u32);
    }
    for pos in 0..simplices.len() {
        let s = &simplices[pos];
        let m = s.dim as usize + 1;
        if m == 1 {
            continue;
        }
        let mut value = s.value;
        let mut facet = [0u32; MAX_VERTS];
        for omit in 0..m {
            let mut w = 0;
            for v in 0..m {
                if v != omit {
                    facet[w] = s.vertices[v];
                    w += 1;
                }
            }
            let fpos = key_index[&key_of(&facet[..w])] as usize;
            value = value.max(simplices[fpos].value);
        }
        simplices[pos].value = value;
    }

    simplices.sort_unstable_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.dim.cmp(&b.dim))
            .then(a.vertices.cmp(&b.vertices))
    });
    let mut index = BTreeMap::new();
    for (pos, s) in simplices.iter().enumerate() {
        index.insert(s.vertices, pos as u32);
    }
    Ok(Filtration { simplices, index })
}

/// Depth-first clique expansion: `verts[..m]` is an accepted simplex, `cands`
/// its common later neighbors; tries every extension and recurses.
#[allow(clippy::too_many_arguments)]
fn expand(
    cloud: &TorusPointCloud,
    adj: &[Vec<u32>],
    r_max: f64,
    max_dim: usize,
    verts: &mut [u32; MAX_VERTS],
    chart: &mut [[f64; crate::MAX_DIM]; MAX_VERTS],
    m: usize,
    cands: &[u32],
    out: &mut Vec<FiltrationSimplex>,
) -> Result<(), Error> {
    let dim = cloud.dim;
    for (ci, &w) in cands.iter().enumerate() {
        verts[m] = w;
        // Lift anchored at the first vertex; diameter <= 2*r_max keeps it in
        // range.
        let anchor = &cloud.points[verts[0] as usize][..dim];
        let refs: Vec<&[f64]> = verts[..=m]
            .iter()
            .map(|&v| &cloud.points[v as usize][..dim])
            .collect();
        let lift = local_lift(anchor, &refs, dim)?;
        for (slot, c) in chart.iter_mut().zip(lift.coords.iter()) {
            *slot = *c;
        }
        let (_, radius) = min_enclosing_ball(chart, m + 1, dim);
        if radius > r_max {
            continue;
        }
        out.push(FiltrationSimplex {
            vertices: key_of(&verts[..=m]),
            value: radius,
            dim: m as u8,
        });
        if m < max_dim {
            let next: Vec<u32> = cands[ci + 1..]
                .iter()
                .copied()
                .filter(|c| adj[w as usize].binary_search(c).is_ok())
                .collect();
            if !next.is_empty() {
                expand(cloud, adj, r_max, max_dim, verts, chart, m + 1, &next, out)?;
            }
        }
    }
    Ok(())
}

/// The sub-complex at radius `r`: the prefix of simplexes with `value <= r`.
pub fn complex_at(filtration: &Filtration, r: f64) -> &[FiltrationSimplex] {
    let end = filtration
        .simplices
        .partition_point(|s| s.value <= r);
    &filtration.simplices[..end]
}

/// Simplex counts per dimension in a slice of the filtration.
pub fn counts_by_dim(simplices: &[FiltrationSimplex]) -> [usize; MAX_VERTS] {
    let mut counts = [0usize; MAX_VERTS];
    for s in simplices {
        counts[s.dim as usize] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud_of(points: &[[f64; 2]]) -> TorusPointCloud {
        let coords: Vec<Coord> = points.iter().map(|p| [p[0], p[1], 0.0, 0.0]).collect();
        TorusPointCloud::from_points(coords, points.len() as f64, 2, 0)
    }

    #[test]
    fn lone_point_is_a_zero_valued_vertex() {
        let cloud = cloud_of(&[[0.4, 0.4]]);
        let f = build_filtration(&cloud, 3, 0.125).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.simplices[0].dim, 0);
        assert_eq!(f.simplices[0].value, 0.0);
    }

    #[test]
    fn wide_pair_enters_at_half_distance() {
        // Toroidal distance 0.3 exceeds the grid reach at this r_max, which
        // exercises the pairwise fallback.
        let cloud = cloud_of(&[[0.1, 0.5], [0.4, 0.5]]);
        let f = build_filtration(&cloud, 3, 0.2).unwrap();
        assert_eq!(f.len(), 3);
        let edge = &f.simplices[2];
        assert_eq!(edge.verts(), &[0, 1]);
        assert!((edge.value - 0.15).abs() < 1e-15);
    }

    #[test]
    fn tight_triple_with_large_enclosing_ball_stays_a_graph() {
        // Pairwise distances ~0.2 < 2*r_max but enclosing radius > r_max = 0.11.
        let s = 0.2;
        let cloud = cloud_of(&[[0.4, 0.4], [0.4 + s, 0.4], [0.4 + s / 2.0, 0.4 + s * 0.866]]);
        let f = build_filtration(&cloud, 3, 0.11).unwrap();
        let counts = counts_by_dim(&f.simplices);
        assert_eq!(counts[0], 3);
        assert_eq!(counts[1], 3);
        assert_eq!(counts[2], 0);
    }

    #[test]
    fn equilateral_triangle_enters_at_its_circumradius() {
        let s = 0.2;
        let cloud = cloud_of(&[[0.4, 0.4], [0.4 + s, 0.4], [0.4 + s / 2.0, 0.4 + s * 0.866]]);
        let f = build_filtration(&cloud, 3, 0.125).unwrap();
        let counts = counts_by_dim(&f.simplices);
        assert_eq!(counts[2], 1);
        let tri = f.simplices.last().unwrap();
        assert_eq!(tri.dim, 2);
        assert!((tri.value - 0.11546836027713625).abs() < 1e-12);
    }

    #[test]
    fn facet_values_never_exceed_coface_values() {
        let cloud = TorusPointCloud::sample(150.0, 2, 5);
        let f = build_filtration(&cloud, 3, 0.125).unwrap();
        let mut facet = [0u32; MAX_VERTS];
        for s in &f.simplices {
            let m = s.dim as usize + 1;
            for omit in 0..m {
                let mut w = 0;
                for v in 0..m {
                    if v != omit {
                        facet[w] = s.vertices[v];
                        w += 1;
                    }
                }
                if w == 0 {
                    continue;
                }
                let fpos = f.position_of(&facet[..w]).expect("facet present") as usize;
                assert!(f.simplices[fpos].value <= s.value);
                assert!(fpos < f.position_of(s.verts()).unwrap() as usize);
            }
        }
    }

    #[test]
    fn one_skeleton_is_the_doubled_radius_geometric_graph() {
        let cloud = TorusPointCloud::sample(180.0, 2, 13);
        let f = build_filtration(&cloud, 1, 0.125).unwrap();
        let mut edges: Vec<(u32, u32)> = f
            .simplices
            .iter()
            .filter(|s| s.dim == 1)
            .map(|s| (s.vertices[0], s.vertices[1]))
            .collect();
        edges.sort_unstable();
        let mut brute = Vec::new();
        for i in 0..cloud.len() {
            for j in i + 1..cloud.len() {
                if torus_distance(&cloud.points[i][..2], &cloud.points[j][..2]) <= 0.25 {
                    brute.push((i as u32, j as u32));
                }
            }
        }
        assert_eq!(edges, brute);
    }

    #[test]
    fn prefixes_are_nested_and_end_at_the_extremes() {
        let cloud = TorusPointCloud::sample(120.0, 2, 21);
        let f = build_filtration(&cloud, 3, 0.125).unwrap();
        assert_eq!(complex_at(&f, 0.0).len(), cloud.len());
        assert_eq!(complex_at(&f, 0.125).len(), f.len());
        let mut prev = 0;
        for i in 0..=100 {
            let r = 0.125 * i as f64 / 100.0;
            let len = complex_at(&f, r).len();
            assert!(len >= prev);
            prev = len;
        }
    }

    #[test]
    fn seam_spanning_simplexes_use_the_wrapped_metric() {
        let cloud = cloud_of(&[[0.98, 0.5], [0.08, 0.5], [0.03, 0.58]]);
        let f = build_filtration(&cloud, 2, 0.125).unwrap();
        let counts = counts_by_dim(&f.simplices);
        assert_eq!(counts[1], 3);
        assert_eq!(counts[2], 1);
        // against the unwrapped reading, vertex 0 would be ~0.9 away
        let edge01 = f.position_of(&[0, 1]).unwrap();
        assert!((f.simplices[edge01 as usize].value - 0.05).abs() < 1e-12);
    }
}
