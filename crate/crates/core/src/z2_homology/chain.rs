//! Sparse GF(2) chain complexes and column reduction.
//!
//! Chains are sorted lists of simplex ids. Boundary matrices are reduced
//! column by column with lowest-one pivots; after reducing `∂_{d+1}`, the
//! `d`-columns whose index is a pivot row are known to reduce to zero and are
//! skipped (clearing).

use super::gf2::Gf2Matrix;
use crate::mesh_core::{Complex, Subcomplex};
use crate::{Error, Result};

pub type Chain = Vec<u32>;

/// Symmetric difference of two sorted chains.
pub fn add_chains(a: &[u32], b: &[u32]) -> Chain {
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

/// Boundary matrices over GF(2) of a complex or of a pair (complex, subcomplex).
///
/// For a pair, the chain groups are spanned by the simplices outside the
/// subcomplex and `ids[d][k]` is the parent id of relative generator `k`.
#[derive(Clone, Debug)]
pub struct ChainComplexZ2 {
    counts: [usize; 4],
    /// `boundary[d][j]`: the boundary of `d`-cell `j` (empty for `d = 0`).
    boundary: [Vec<Chain>; 4],
    ids: [Vec<usize>; 4],
}

impl ChainComplexZ2 {
    pub fn from_complex(c: &Complex) -> Self {
        Self::build(c, None)
    }

    /// Relative chain complex `C(c) / C(sub)`.
    pub fn relative(c: &Complex, sub: &Subcomplex) -> Result<Self> {
        sub.check_face_closed(c)?;
        Ok(Self::build(c, Some(sub)))
    }

    fn build(c: &Complex, sub: Option<&Subcomplex>) -> Self {
        let keep = |d: usize, i: usize| sub.is_none_or(|s| !s.contains(d, i));
        let ids: [Vec<usize>; 4] = std::array::from_fn(|d| (0..c.count(d)).filter(|&i| keep(d, i)).collect());
        let mut local: [Vec<Option<u32>>; 4] = std::array::from_fn(|d| vec![None; c.count(d)]);
        for d in 0..4 {
            for (k, &i) in ids[d].iter().enumerate() {
                local[d][i] = Some(k as u32);
            }
        }
        let boundary: [Vec<Chain>; 4] = std::array::from_fn(|d| {
            if d == 0 {
                return vec![Vec::new(); ids[0].len()];
            }
            let simplices = c.simplices(d);
            ids[d]
                .iter()
                .map(|&i| {
                    let mut col: Chain = simplices[i]
                        .boundary()
                        .filter_map(|f| local[d - 1][c.index_of(&f).expect("face-closed")])
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect()
        });
        Self {
            counts: std::array::from_fn(|d| ids[d].len()),
            boundary,
            ids,
        }
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts[d]
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    /// Parent ids of the cells of dimension `d`.
    pub fn cell_ids(&self, d: usize) -> &[usize] {
        &self.ids[d]
    }

    pub fn boundary_columns(&self, d: usize) -> &[Chain] {
        &self.boundary[d]
    }

    /// `∂_d` as a dense matrix (rows: `d-1` cells, columns: `d` cells).
    pub fn boundary_matrix(&self, d: usize) -> Gf2Matrix {
        assert!((1..4).contains(&d), "boundary dimension out of range");
        Gf2Matrix::from_sparse_columns(self.counts[d - 1], &self.boundary[d])
    }

    /// Boundary of a `d`-chain.
    pub fn boundary_of(&self, d: usize, chain: &[u32]) -> Chain {
        if d == 0 {
            return Vec::new();
        }
        chain.iter().fold(Vec::new(), |acc, &j| add_chains(&acc, &self.boundary[d][j as usize]))
    }

    /// Whether `∂_d ∘ ∂_{d+1} = 0` for all `d`.
    pub fn boundary_squared_is_zero(&self) -> bool {
        (2..4).all(|d| self.boundary[d].iter().all(|col| self.boundary_of(d - 1, col).is_empty()))
    }

    /// Betti numbers `b_0..b_3` of this complex (relative ones for a pair).
    pub fn betti(&self) -> [usize; 4] {
        let mut rank = [0usize; 5];
        let mut cleared: Vec<bool> = Vec::new();
        for d in (1..4).rev() {
            let red = reduce(&self.boundary[d], self.counts[d - 1], Some(&cleared), false);
            rank[d] = red.rank;
            cleared = red.pivot_rows();
        }
        std::array::from_fn(|d| self.counts[d] - rank[d] - rank[d + 1])
    }
}

/// Result of reducing a list of columns.
pub struct Reduction {
    pub reduced: Vec<Chain>,
    /// `pivot[row]`: the column whose lowest one sits in `row`.
    pub pivot: Vec<Option<u32>>,
    /// Column operations: `reduced[j] = ∂ v[j]` (only when tracked).
    pub v: Option<Vec<Chain>>,
    pub rank: usize,
}

impl Reduction {
    fn pivot_rows(&self) -> Vec<bool> {
        self.pivot.iter().map(Option::is_some).collect()
    }
}

/// Standard lowest-one column reduction. Columns `j` with `skip[j]` set are
/// taken to reduce to zero without work; this is only valid when `j` is a
/// pivot row one dimension up.
pub fn reduce(columns: &[Chain], rows: usize, skip: Option<&[bool]>, track: bool) -> Reduction {
    let mut pivot: Vec<Option<u32>> = vec![None; rows];
    let mut reduced: Vec<Chain> = Vec::with_capacity(columns.len());
    let mut v: Vec<Chain> = Vec::new();
    let mut rank = 0;
    for (j, col) in columns.iter().enumerate() {
        let skipped = skip.is_some_and(|s| s.get(j).copied().unwrap_or(false));
        let mut cur = if skipped { Vec::new() } else { col.clone() };
        let mut ops = vec![j as u32];
        while let Some(&low) = cur.last() {
            match pivot[low as usize] {
                Some(k) => {
                    cur = add_chains(&cur, &reduced[k as usize]);
                    if track {
                        ops = add_chains(&ops, &v[k as usize]);
                    }
                }
                None => break,
            }
        }
        if let Some(&low) = cur.last() {
            pivot[low as usize] = Some(j as u32);
            rank += 1;
        }
        reduced.push(cur);
        if track {
            v.push(ops);
        }
    }
    Reduction {
        reduced,
        pivot,
        v: track.then_some(v),
        rank,
    }
}

/// Homology of one dimension with the data needed to express cycles in the
/// chosen basis.
#[derive(Clone, Debug)]
pub struct HomologyData {
    /// Generator cycles, listed by increasing lowest simplex.
    pub generators: Vec<Chain>,
    /// Reduced boundary columns with distinct lows: a basis of `B_d`.
    boundaries: Vec<Chain>,
    boundary_by_low: Vec<Option<u32>>,
    generator_by_low: Vec<Option<u32>>,
}

impl HomologyData {
    pub fn new(cc: &ChainComplexZ2, d: usize) -> Result<Self> {
        if d > 3 {
            return Err(Error::DimensionOutOfRange(d));
        }
        let n = cc.count(d);
        let (boundaries, boundary_by_low) = if d < 3 {
            let red = reduce(cc.boundary_columns(d + 1), n, None, false);
            (red.reduced, red.pivot)
        } else {
            (Vec::new(), vec![None; n])
        };
        let paired: Vec<bool> = boundary_by_low.iter().map(Option::is_some).collect();
        let candidates: Vec<Chain> = if d == 0 {
            (0..n as u32).map(|j| vec![j]).collect()
        } else {
            let red = reduce(cc.boundary_columns(d), cc.count(d - 1), Some(&paired), true);
            let v = red.v.expect("tracked");
            red.reduced.iter().zip(v).map(|(r, v)| if r.is_empty() { v } else { Vec::new() }).collect()
        };
        let mut generators = Vec::new();
        let mut generator_by_low = vec![None; n];
        for (j, cycle) in candidates.into_iter().enumerate() {
            if !cycle.is_empty() && !paired[j] {
                generator_by_low[j] = Some(generators.len() as u32);
                generators.push(cycle);
            }
        }
        Ok(Self {
            generators,
            boundaries,
            boundary_by_low,
            generator_by_low,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Reduces `chain` against boundaries (and generators if asked);
    /// returns the remainder and the generator coefficients used.
    fn reduce_chain(&self, chain: &[u32], with_generators: bool) -> (Chain, Vec<bool>) {
        let mut cur = chain.to_vec();
        let mut coeffs = vec![false; self.generators.len()];
        while let Some(&low) = cur.last() {
            if let Some(k) = self.boundary_by_low[low as usize] {
                cur = add_chains(&cur, &self.boundaries[k as usize]);
            } else if let (true, Some(g)) = (with_generators, self.generator_by_low[low as usize]) {
                cur = add_chains(&cur, &self.generators[g as usize]);
                coeffs[g as usize] ^= true;
            } else {
                break;
            }
        }
        (cur, coeffs)
    }

    /// Coordinates of the class of a cycle in the generator basis.
    pub fn coordinates(&self, cycle: &[u32]) -> Result<Vec<bool>> {
        let (rest, coeffs) = self.reduce_chain(cycle, true);
        if rest.is_empty() {
            Ok(coeffs)
        } else {
            Err(Error::NotACycle)
        }
    }

    /// Whether a cycle bounds. The caller must have checked it is a cycle.
    pub fn is_boundary(&self, cycle: &[u32]) -> bool {
        self.reduce_chain(cycle, false).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::Simplex;

    #[test]
    fn chain_addition_cancels() {
        assert_eq!(add_chains(&[1, 3, 5], &[3, 4]), vec![1, 4, 5]);
        assert!(add_chains(&[2, 7], &[2, 7]).is_empty());
    }

    #[test]
    fn tetrahedron_boundary_is_a_sphere() {
        let c = Complex::from_simplices([Simplex::new(&[0, 1, 2, 3])]);
        let tri: Vec<Simplex> = c.simplices(2).to_vec();
        let sphere = Complex::from_simplices(tri);
        let cc = ChainComplexZ2::from_complex(&sphere);
        assert!(cc.boundary_squared_is_zero());
        assert_eq!(cc.boundary_matrix(2).rank(), 3);
        assert_eq!(cc.betti(), [1, 0, 1, 0]);
        let h2 = HomologyData::new(&cc, 2).unwrap();
        assert_eq!(h2.generators, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn relative_tetrahedron() {
        let c = Complex::from_simplices([Simplex::new(&[0, 1, 2, 3])]);
        let bd = Subcomplex::from_simplices(&c, c.simplices(2)).unwrap();
        let cc = ChainComplexZ2::relative(&c, &bd).unwrap();
        assert_eq!(cc.betti(), [0, 0, 0, 1]);
    }
}
