//! Homogeneous Poisson processes on the torus with a periodic lookup grid.

use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::torus_distance_sq;
use crate::rng;
use crate::Coord;
use crate::R_MAX;

/// Cells per axis; the side `1/GRID_CELLS = 2 * R_MAX` guarantees that any
/// pair within distance `2 * R_MAX` lies in the same or adjacent cells.
const GRID_CELLS: usize = 4;

/// A sampled point set on `[0, 1)^d` with a coarse periodic grid for
/// fixed-radius neighbor queries. Immutable after construction.
#[derive(Debug, Clone)]
pub struct TorusPointCloud {
    pub points: Vec<Coord>,
    /// Intensity of the generating process (`E[count] = intensity`).
    pub intensity: f64,
    pub seed: u64,
    pub dim: usize,
    cells: Vec<Vec<u32>>,
}

impl TorusPointCloud {
    /// Draws `N ~ Pois(n)` points i.i.d. uniform on `[0, 1)^d`. The same
    /// `(n, d, seed)` always yields the same cloud.
    pub fn sample(n: f64, d: usize, seed: u64) -> Self {
        debug_assert!(n > 0.0 && (1..=crate::MAX_DIM).contains(&d));
        let mut stream = rng::derive_stream(seed, &[]);
        let count = rng::poisson_count(&mut stream, n);
        let mut points = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let mut p: Coord = [0.0; crate::MAX_DIM];
            for c in p.iter_mut().take(d) {
                *c = rng::uniform01(&mut stream);
            }
            points.push(p);
        }
        Self::from_points(points, n, d, seed)
    }

    /// Wraps an existing point list (coordinates in `[0, 1)`) in a cloud.
    pub fn from_points(points: Vec<Coord>, intensity: f64, dim: usize, seed: u64) -> Self {
        let mut cells = Vec::new();
        cells.resize(GRID_CELLS.pow(dim as u32), Vec::new());
        let mut cloud = TorusPointCloud {
            points,
            intensity,
            seed,
            dim,
            cells,
        };
        for (id, p) in cloud.points.iter().enumerate() {
            cloud.cells[cell_index(p, cloud.dim)].push(id as u32);
        }
        cloud
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ids of all points within closed toroidal distance `r` of `center`,
    /// ascending. The grid reaches exactly one cell ring, so `r` may not
    /// exceed `2 * R_MAX`.
    pub fn points_in_ball(&self, center: &[f64], r: f64) -> Result<Vec<u32>, Error> {
        if !(0.0..=2.0 * R_MAX).contains(&r) {
            return Err(Error::ParameterOutOfRange("query radius beyond grid reach"));
        }
        let center = &center[..self.dim];
        let r_sq = r * r;
        let mut out = Vec::new();
        let mut base = [0usize; crate::MAX_DIM];
        for (i, b) in base.iter_mut().enumerate().take(self.dim) {
            *b = axis_cell(center[i]);
        }
        // Walk the 3^d ring of cells around the center cell.
        let mut offsets = [-1i32; crate::MAX_DIM];
        loop {
            let mut idx = 0usize;
            for axis in (0..self.dim).rev() {
                let c =
                    (base[axis] as i32 + offsets[axis]).rem_euclid(GRID_CELLS as i32) as usize;
                idx = idx * GRID_CELLS + c;
            }
            for &id in &self.cells[idx] {
                if torus_distance_sq(center, &self.points[id as usize][..self.dim]) <= r_sq {
                    out.push(id);
                }
            }
            // odometer over {-1, 0, 1}^d, starting from all -1
            let mut axis = 0;
            loop {
                if axis == self.dim {
                    out.sort_unstable();
                    return Ok(out);
                }
                offsets[axis] += 1;
                if offsets[axis] <= 1 {
                    break;
                }
                offsets[axis] = -1;
                axis += 1;
            }
        }
    }
}

fn axis_cell(x: f64) -> usize {
    let c = (x * GRID_CELLS as f64) as usize;
    if c >= GRID_CELLS {
        GRID_CELLS - 1
    } else {
        c
    }
}

fn cell_index(p: &[f64], dim: usize) -> usize {
    let mut idx = 0usize;
    for axis in (0..dim).rev() {
        idx = idx * GRID_CELLS + axis_cell(p[axis]);
    }
    idx
}
