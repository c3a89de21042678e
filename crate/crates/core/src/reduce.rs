//! Boundary-matrix column reduction over Z/2 in filtration order.
//!
//! The classification it produces drives everything downstream: a simplex
//! whose reduced column vanishes creates a cycle in its own dimension
//! (positive), any other simplex destroys a cycle one dimension down
//! (negative) and is paired with the creator it cancels.

use alloc::vec::Vec;

/// Marker for positions without a partner.
pub const UNPAIRED: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Reduction {
    /// Partner position per simplex (`UNPAIRED` for essential creators).
    pub partner: Vec<u32>,
    /// Whether the reduced column was zero (cycle creator).
    pub positive: Vec<bool>,
}

impl Reduction {
    /// Positions of creators never cancelled, i.e. essential classes.
    pub fn essential_positions(&self) -> impl Iterator<Item = u32> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|(p, &m)| m == UNPAIRED && self.positive[*p])
            .map(|(p, _)| p as u32)
    }
}

/// Reduces the boundary columns of a filtration-ordered complex.
///
/// `columns[j]` lists the positions of the facets of simplex `j`, ascending;
/// `dims[j]` is its dimension. Dimensions are processed top-down so that the
/// clearing rule applies: once a column's low identifies a creator, that
/// creator's own column is known to vanish and is never reduced.
pub fn reduce_z2(dims: &[u8], mut columns: Vec<Vec<u32>>) -> Reduction {
    let m = columns.len();
    debug_assert_eq!(dims.len(), m);
    let mut partner = alloc::vec![UNPAIRED; m];
    let mut positive = alloc::vec![false; m];
    let mut low_owner = alloc::vec![UNPAIRED; m];
    let mut cleared = alloc::vec![false; m];

    let max_dim = dims.iter().copied().max().unwrap_or(0);
    let mut scratch: Vec<u32> = Vec::new();
    for dim in (1..=max_dim).rev() {
        for j in 0..m {
            if dims[j] != dim || cleared[j] {
                continue;
            }
            loop {
                let Some(&low) = columns[j].last() else {
                    positive[j] = true;
                    break;
                };
                let owner = low_owner[low as usize];
                if owner == UNPAIRED {
                    low_owner[low as usize] = j as u32;
                    partner[j] = low;
                    partner[low as usize] = j as u32;
                    positive[low as usize] = true;
                    cleared[low as usize] = true;
                    break;
                }
                // add the owning column (Z/2) and keep going
                symmetric_difference(&mut columns, j, owner as usize, &mut scratch);
            }
        }
    }
    for j in 0..m {
        if dims[j] == 0 {
            positive[j] = true;
        }
    }
    Reduction { partner, positive }
}

fn symmetric_difference(columns: &mut [Vec<u32>], target: usize, source: usize, scratch: &mut Vec<u32>) {
    scratch.clear();
    let (a, b) = (&columns[target], &columns[source]);
    let (mut i, mut k) = (0, 0);
    while i < a.len() && k < b.len() {
        match a[i].cmp(&b[k]) {
            core::cmp::Ordering::Less => {
                scratch.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                scratch.push(b[k]);
                k += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                k += 1;
            }
        }
    }
    scratch.extend_from_slice(&a[i..]);
    scratch.extend_from_slice(&b[k..]);
    core::mem::swap(&mut columns[target], scratch);
}
