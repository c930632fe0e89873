//! Simplicial homology over GF(2).
//!
//! Betti numbers are computed by sparse column reduction of the boundary
//! matrices with the clearing optimization: dimensions are processed top
//! down, and a column whose index appeared as a pivot row one dimension up
//! is known to reduce to zero, so it is skipped outright. For Rips-scale
//! inputs this removes the bulk of the reduction work.

use crate::complex::SimplicialComplex;

/// Betti numbers of a complex together with exactness flags.
///
/// When the complex was constructed with a dimension cap, the top Betti
/// number misses the rank of the absent next boundary map and is only an
/// upper bound; `exact` records this per dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HomologyReport {
    /// Simplex counts per dimension.
    pub counts: Vec<usize>,
    /// `boundary_ranks[d]` is the rank of the d-th boundary map; index 0 is
    /// always zero.
    pub boundary_ranks: Vec<usize>,
    /// Betti numbers b_0, b_1, ...
    pub betti: Vec<u64>,
    /// `exact[i]` is false when b_i is an upper bound only.
    pub exact: Vec<bool>,
    /// Euler characteristic of the stored simplices.
    pub euler: i64,
}

impl HomologyReport {
    /// Compares Betti numbers up to trailing zeros.
    pub fn betti_equals(&self, expected: &[u64]) -> bool {
        let n = self.betti.len().max(expected.len());
        (0..n).all(|i| {
            self.betti.get(i).copied().unwrap_or(0) == expected.get(i).copied().unwrap_or(0)
        })
    }
}

/// Computes all Betti numbers of the stored simplices.
pub fn betti_numbers(k: &SimplicialComplex) -> HomologyReport {
    let counts = k.counts();
    let top = counts.len() - 1;
    let mut ranks = vec![0usize; counts.len() + 1];
    // Columns of the current dimension to skip because they reduced to zero
    // by clearing (their index was a pivot row one dimension up).
    let mut skip: Vec<bool> = vec![false; counts[top]];
    for d in (1..=top).rev() {
        let (rank, pivot_rows) = reduce_boundary(k, d, &skip);
        ranks[d] = rank;
        skip = pivot_rows;
    }
    let mut betti = Vec::with_capacity(counts.len());
    let mut exact = Vec::with_capacity(counts.len());
    for i in 0..counts.len() {
        let b = counts[i] as i64 - ranks[i] as i64 - ranks[i + 1] as i64;
        debug_assert!(b >= 0);
        betti.push(b as u64);
        exact.push(match k.cap() {
            None => true,
            Some(c) => (i as u32) < c,
        });
    }
    HomologyReport { counts, boundary_ranks: ranks[..top + 1].to_vec(), betti, exact, euler: euler_characteristic(k) }
}

/// Alternating sum of simplex counts. For a capped complex this is the
/// Euler characteristic of the truncation.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.counts()
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Reduces the boundary matrix from dimension `d` to `d - 1`, skipping
/// cleared columns. Returns the rank and the pivot-row mask (rows are
/// (d-1)-simplices, which index the columns of the next reduction).
fn reduce_boundary(k: &SimplicialComplex, d: usize, skip: &[bool]) -> (usize, Vec<bool>) {
    let n_rows = k.simplices(d - 1).len();
    let cols = k.simplices(d);
    let mut owner: Vec<Option<usize>> = vec![None; n_rows];
    let mut stored: Vec<Vec<u32>> = vec![Vec::new(); cols.len()];
    let mut rank = 0usize;
    let mut face = Vec::with_capacity(d);
    for (j, simplex) in cols.iter().enumerate() {
        if skip[j] {
            continue;
        }
        let mut col: Vec<u32> = (0..=d)
            .map(|omit| {
                face.clear();
                face.extend(simplex.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v));
                k.index_of(d - 1, &face).expect("closure invariant") as u32
            })
            .collect();
        col.sort_unstable();
        loop {
            let Some(&low) = col.last() else { break };
            match owner[low as usize] {
                None => {
                    owner[low as usize] = Some(j);
                    stored[j] = col;
                    rank += 1;
                    break;
                }
                Some(o) => col = sym_diff(&col, &stored[o]),
            }
        }
    }
    let pivot_rows = owner.iter().map(Option::is_some).collect();
    (rank, pivot_rows)
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
