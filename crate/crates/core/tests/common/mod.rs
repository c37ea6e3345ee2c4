//! Shared fixtures and an independent homology oracle for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wildlab::mesh_core::voxel::{voxel_solid, Cell, VoxelSolid};
use wildlab::mesh_core::{manifold_check, Complex, Simplex};
use wildlab::towers::unit_grid;

/// Betti numbers by dense elimination on boundary matrices built here from
/// vertex lists, sharing nothing with the library's reduction.
pub fn oracle_betti(c: &Complex) -> [usize; 4] {
    let cells: Vec<Vec<Vec<u32>>> = (0..4).map(|d| c.simplices(d).iter().map(|s| s.vertices().to_vec()).collect()).collect();
    let index: Vec<HashMap<&[u32], usize>> =
        cells.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let mut ranks = [0usize; 5];
    for d in 1..4 {
        let words = cells[d - 1].len().div_ceil(64);
        let mut rows: Vec<Vec<u64>> = cells[d]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for skip in 0..s.len() {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let f = index[d - 1][face.as_slice()];
                    row[f / 64] ^= 1 << (f % 64);
                }
                row
            })
            .collect();
        ranks[d] = dense_rank(&mut rows, words);
    }
    std::array::from_fn(|d| cells[d].len() - ranks[d] - ranks[d + 1])
}

fn dense_rank(rows: &mut [Vec<u64>], words: usize) -> usize {
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][w] & bit != 0 {
                for k in 0..words {
                    rows[r][k] ^= pivot[k];
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn euler(c: &Complex) -> i64 {
    (0..4).map(|d| if d % 2 == 0 { c.count(d) as i64 } else { -(c.count(d) as i64) }).sum()
}

/// Random tetrahedra on a small vertex set plus a few loose triangles and
/// edges: arbitrary (usually non-manifold) complexes.
pub fn random_complex(seed: u64, max_tets: usize) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv: u32 = rng.gen_range(5..=24);
    let tets = rng.gen_range(1..=max_tets);
    let mut out = Vec::new();
    let verts: Vec<u32> = (0..nv).collect();
    for _ in 0..tets {
        let mut s: Vec<u32> = verts.choose_multiple(&mut rng, 4).copied().collect();
        s.sort_unstable();
        out.push(Simplex::new(&s));
    }
    for k in [3, 2] {
        for _ in 0..rng.gen_range(0..6) {
            let mut s: Vec<u32> = verts.choose_multiple(&mut rng, k).copied().collect();
            s.sort_unstable();
            out.push(Simplex::new(&s));
        }
    }
    Complex::from_simplices(out)
}

/// Connected sets of 2×2×2 blocks (so every block has an interior vertex)
/// that triangulate a 3-manifold, with their complements.
pub fn random_block_solids(seed: u64, count: usize) -> Vec<(VoxelSolid, Cell)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let target = rng.gen_range(1..=7);
        let mut blocks: BTreeSet<Cell> = BTreeSet::from([[0, 0, 0]]);
        while blocks.len() < target {
            let b = *blocks.iter().nth(rng.gen_range(0..blocks.len())).unwrap();
            let axis = rng.gen_range(0..3);
            let mut n = b;
            n[axis] += if rng.gen_bool(0.5) { 1 } else { -1 };
            if n.iter().all(|&x| (-1..=1).contains(&x)) {
                blocks.insert(n);
            }
        }
        let cells: BTreeSet<Cell> = blocks
            .iter()
            .flat_map(|b| (0..8).map(move |m| [2 * b[0] + (m & 1), 2 * b[1] + ((m >> 1) & 1), 2 * b[2] + ((m >> 2) & 1)]))
            .collect();
        let s = voxel_solid(&cells, &unit_grid());
        if manifold_check(&s.mesh).map(|r| r.is_3_manifold).unwrap_or(false) {
            let b = blocks.iter().next().unwrap();
            out.push((s, [2 * b[0] + 1, 2 * b[1] + 1, 2 * b[2] + 1]));
        }
    }
    out
}

/// Random face-connected unions of frame cells near the plane, kept when
/// they triangulate a 3-manifold.
pub fn random_frame_cells(seed: u64, size: usize) -> BTreeSet<Cell> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut cells: BTreeSet<Cell> = BTreeSet::from([[0, 0, 0]]);
        while cells.len() < size {
            let c = *cells.iter().nth(rng.gen_range(0..cells.len())).unwrap();
            let axis = rng.gen_range(0..3);
            let mut n = c;
            n[axis] += if rng.gen_bool(0.5) { 1 } else { -1 };
            if n[0].abs() <= 4 && n[1].abs() <= 4 && n[2].abs() <= 2 {
                cells.insert(n);
            }
        }
        let m = wildlab::splitting::fixtures::frame_mesh(&cells);
        if manifold_check(&m).map(|r| r.is_3_manifold).unwrap_or(false) {
            return cells;
        }
    }
}
