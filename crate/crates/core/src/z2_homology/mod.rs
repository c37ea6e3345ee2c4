//! Homology with GF(2) coefficients.
//!
//! Betti numbers come from sparse column reduction of the boundary
//! matrices. Generators and induced maps use the same reduction with the
//! column operations recorded, so bases are deterministic: generator `k` is
//! the cycle created when reducing the `k`-th simplex (in id order) that
//! starts a new class.

mod chain;
mod gf2;

pub use chain::{add_chains, Chain, ChainComplexZ2};
pub use gf2::{rank_gf2, Gf2Matrix};

use chain::HomologyData;

use crate::mesh_core::{manifold_check, Complex, MeshComplex, Simplex, Subcomplex, VertexId};
use crate::{Error, Result};

pub fn betti_complex(c: &Complex) -> [usize; 4] {
    ChainComplexZ2::from_complex(c).betti()
}

/// Betti numbers `b_0..b_3` of `mesh`.
pub fn betti(mesh: &MeshComplex) -> [usize; 4] {
    betti_complex(mesh.complex())
}

/// Reduced Betti numbers: `b_0 - 1` in degree zero. The empty complex is rejected.
pub fn reduced_betti_complex(c: &Complex) -> Result<[usize; 4]> {
    if c.is_empty() {
        return Err(Error::EmptyReduced);
    }
    let mut b = betti_complex(c);
    b[0] -= 1;
    Ok(b)
}

pub fn reduced_betti(mesh: &MeshComplex) -> Result<[usize; 4]> {
    reduced_betti_complex(mesh.complex())
}

/// Absolute or reduced Betti numbers.
pub fn betti_with(mesh: &MeshComplex, reduced: bool) -> Result<[usize; 4]> {
    if reduced {
        reduced_betti(mesh)
    } else {
        Ok(betti(mesh))
    }
}

/// Betti numbers of the pair `(c, sub)`.
pub fn relative_betti_complex(c: &Complex, sub: &Subcomplex) -> Result<[usize; 4]> {
    Ok(ChainComplexZ2::relative(c, sub)?.betti())
}

pub fn relative_betti(mesh: &MeshComplex, sub: &Subcomplex) -> Result<[usize; 4]> {
    relative_betti_complex(mesh.complex(), sub)
}

/// Euler characteristic from Betti numbers.
pub fn euler_from_betti(b: &[usize; 4]) -> i64 {
    b.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// A basis of `H_d` given by explicit cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub dim: usize,
    /// Each generator is a sorted list of `d`-simplex ids.
    pub generators: Vec<Chain>,
    pub rank: usize,
    data: HomologyData,
}

impl HomologyBasis {
    fn new(c: &Complex, d: usize) -> Result<Self> {
        if d > 3 {
            return Err(Error::DimensionOutOfRange(d));
        }
        let cc = ChainComplexZ2::from_complex(c);
        let data = HomologyData::new(&cc, d)?;
        Ok(Self {
            dim: d,
            generators: data.generators.clone(),
            rank: data.rank(),
            data,
        })
    }

    /// Coordinates of the class of `cycle` in this basis.
    pub fn coordinates(&self, cycle: &[u32]) -> Result<Vec<bool>> {
        self.data.coordinates(cycle)
    }

    /// A generator as a list of simplices of `c`.
    pub fn generator_simplices(&self, c: &Complex, k: usize) -> Vec<Simplex> {
        self.generators[k].iter().map(|&i| c.simplices(self.dim)[i as usize]).collect()
    }
}

pub fn homology_generators_complex(c: &Complex, d: usize) -> Result<HomologyBasis> {
    HomologyBasis::new(c, d)
}

pub fn homology_generators(mesh: &MeshComplex, d: usize) -> Result<HomologyBasis> {
    HomologyBasis::new(mesh.complex(), d)
}

/// Sorted simplex ids of a bit-vector chain.
pub fn chain_from_bits(bits: &[bool]) -> Chain {
    bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect()
}

/// Sorted `d`-simplex ids of a list of simplices of `c`; `None` if one is missing.
pub fn chain_from_simplices(c: &Complex, simplices: &[Simplex]) -> Option<Chain> {
    let mut out: Chain = Vec::new();
    for s in simplices {
        out = add_chains(&out, &[c.index_of(s)? as u32]);
    }
    Some(out)
}

fn check_cycle(cc: &ChainComplexZ2, d: usize, chain: &[u32]) -> Result<()> {
    if chain.windows(2).any(|w| w[0] >= w[1]) || chain.last().is_some_and(|&j| j as usize >= cc.count(d)) {
        return Err(Error::NotACycle);
    }
    if !cc.boundary_of(d, chain).is_empty() {
        return Err(Error::NotACycle);
    }
    Ok(())
}

pub fn is_boundary_complex(cycle: &[u32], c: &Complex, d: usize) -> Result<bool> {
    if d > 3 {
        return Err(Error::DimensionOutOfRange(d));
    }
    let cc = ChainComplexZ2::from_complex(c);
    check_cycle(&cc, d, cycle)?;
    Ok(HomologyData::new(&cc, d)?.is_boundary(cycle))
}

/// Whether the `d`-cycle (sorted simplex ids) bounds in `mesh`.
pub fn is_boundary(cycle: &[u32], mesh: &MeshComplex, d: usize) -> Result<bool> {
    is_boundary_complex(cycle, mesh.complex(), d)
}

/// How a source mesh maps into a target mesh.
#[derive(Clone, Debug)]
pub enum Inclusion {
    /// Source simplices are found in the target by vertex coordinates.
    ByCoordinates,
    /// Explicit vertex map, source id to target id.
    VertexMap(Vec<VertexId>),
}

/// Matrix of `H_d(source) → H_d(target)`: column `j` holds the target
/// coordinates of the image of source generator `j`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyBasis,
    pub target: HomologyBasis,
    pub matrix: Gf2Matrix,
}

impl InducedMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Induced map of the simplicial map given by `vmap` on vertex ids.
/// Simplices whose image is degenerate contribute nothing; an image
/// missing from the target makes the map non-simplicial.
pub fn induced_map_complex(
    source: &Complex,
    target: &Complex,
    vmap: impl Fn(VertexId) -> Option<VertexId>,
    d: usize,
) -> Result<InducedMap> {
    let src = HomologyBasis::new(source, d)?;
    let tgt = HomologyBasis::new(target, d)?;
    let mut matrix = Gf2Matrix::zeros(tgt.rank, src.rank);
    for (j, g) in src.generators.iter().enumerate() {
        let mut image: Chain = Vec::new();
        for &i in g {
            let s = &source.simplices(d)[i as usize];
            let mut vs = Vec::with_capacity(d + 1);
            for &v in s.vertices() {
                vs.push(vmap(v).ok_or_else(|| Error::NotSimplicial(format!("vertex {v} has no image")))?);
            }
            vs.sort_unstable();
            vs.dedup();
            if vs.len() < d + 1 {
                continue;
            }
            let t = Simplex::new(&vs);
            let k = target
                .index_of(&t)
                .ok_or_else(|| Error::NotSimplicial(format!("image {t:?} of {s:?} is not in the target")))?;
            image = add_chains(&image, &[k as u32]);
        }
        let coords = tgt.coordinates(&image)?;
        for (r, &bit) in coords.iter().enumerate() {
            matrix.set(r, j, bit);
        }
    }
    Ok(InducedMap { source: src, target: tgt, matrix })
}

/// Induced map of an inclusion or vertex map between meshes.
pub fn induced_map(source: &MeshComplex, target: &MeshComplex, inclusion: &Inclusion, d: usize) -> Result<InducedMap> {
    match inclusion {
        Inclusion::ByCoordinates => {
            let index = target.point_index();
            let vmap: Vec<Option<VertexId>> = source.points().iter().map(|p| index.get(p).copied()).collect();
            induced_map_complex(source.complex(), target.complex(), |v| vmap[v as usize], d)
        }
        Inclusion::VertexMap(m) => {
            if m.len() < source.num_vertices() {
                return Err(Error::NotSimplicial(format!(
                    "vertex map has {} entries for {} vertices",
                    m.len(),
                    source.num_vertices()
                )));
            }
            let n = target.num_vertices() as VertexId;
            induced_map_complex(source.complex(), target.complex(), |v| Some(m[v as usize]).filter(|&w| w < n), d)
        }
    }
}

/// Whether a connected compact 3-manifold mesh with `b_1 = b_2 = 0` (hence a ball).
pub fn ball_criterion(mesh: &MeshComplex) -> Result<bool> {
    let components = mesh.complex().vertex_components().len();
    if components != 1 {
        return Err(Error::Disconnected(components));
    }
    let report = manifold_check(mesh)?;
    if !report.is_3_manifold {
        return Err(Error::NotManifold(format!("{} offending simplices", report.offending_simplices.len())));
    }
    let b = betti(mesh);
    Ok(b[1] == 0 && b[2] == 0)
}

/// Rank bookkeeping for a union `A ∪ B` of two subcomplexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvReport {
    pub a: [usize; 4],
    pub b: [usize; 4],
    pub intersection: [usize; 4],
    pub union: [usize; 4],
    /// Whether `H_0(A∩B) → H_0(A) ⊕ H_0(B)` is injective.
    pub h0_injective: bool,
    /// `b_1(A) + b_1(B) ≤ b_1(A∪B)`, checked when `b_1(A∩B) = 0`.
    pub lower_bound: Option<bool>,
    /// `b_1(A∪B) ≤ b_1(A) + b_1(B)`, checked when `h0_injective`.
    pub upper_bound: Option<bool>,
    pub violations: Vec<String>,
}

impl MvReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        if self.is_consistent() {
            Ok(())
        } else {
            Err(Error::Inconsistent(self.violations.join("; ")))
        }
    }
}

/// Mayer–Vietoris bookkeeping for subcomplexes `a`, `b` of `union` that cover it.
pub fn mayer_vietoris_complex(union: &Complex, a: &Subcomplex, b: &Subcomplex) -> Result<MvReport> {
    a.check_face_closed(union)?;
    b.check_face_closed(union)?;
    let masks: [Vec<bool>; 4] =
        std::array::from_fn(|d| a.masks()[d].iter().zip(&b.masks()[d]).map(|(x, y)| *x && *y).collect());
    if (0..4).any(|d| (0..union.count(d)).any(|i| !a.contains(d, i) && !b.contains(d, i))) {
        return Err(Error::Inconsistent("the two pieces do not cover the union".into()));
    }
    let ac = a.to_complex(union);
    let bc = b.to_complex(union);
    let ic = Subcomplex::from_masks(union, masks)?.to_complex(union);
    let report_b = [betti_complex(&ac), betti_complex(&bc), betti_complex(&ic), betti_complex(union)];
    let [ba, bb, bi, bu] = report_b;

    let to_a = induced_map_complex(&ic, &ac, Some, 0)?;
    let to_b = induced_map_complex(&ic, &bc, Some, 0)?;
    let h0_injective = to_a.matrix.stack(&to_b.matrix).rank() == bi[0];

    let mut violations = Vec::new();
    let chi = |x: &[usize; 4]| euler_from_betti(x);
    if chi(&ba) + chi(&bb) != chi(&bu) + chi(&bi) {
        violations.push("Euler characteristics do not add up".to_string());
    }
    let lower_bound = (bi[1] == 0).then(|| ba[1] + bb[1] <= bu[1]);
    let upper_bound = h0_injective.then(|| bu[1] <= ba[1] + bb[1]);
    if lower_bound == Some(false) {
        violations.push(format!("b1(A) + b1(B) = {} exceeds b1(A∪B) = {}", ba[1] + bb[1], bu[1]));
    }
    if upper_bound == Some(false) {
        violations.push(format!("b1(A∪B) = {} exceeds b1(A) + b1(B) = {}", bu[1], ba[1] + bb[1]));
    }
    Ok(MvReport {
        a: ba,
        b: bb,
        intersection: bi,
        union: bu,
        h0_injective,
        lower_bound,
        upper_bound,
        violations,
    })
}

/// Mayer–Vietoris bookkeeping for two meshes glued along their common simplices.
pub fn mayer_vietoris_check(a: &MeshComplex, b: &MeshComplex) -> Result<MvReport> {
    let union = crate::mesh_core::merge(&[a, b])?;
    let sa = a.as_subcomplex_of(&union)?;
    let sb = b.as_subcomplex_of(&union)?;
    mayer_vietoris_complex(union.complex(), &sa, &sb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::voxel::{block, voxel_mesh, VoxelGrid};
    use std::collections::BTreeSet;

    /// Dense oracle: `b_d = n_d - rk ∂_d - rk ∂_{d+1}` by plain elimination.
    fn dense_betti(c: &Complex) -> [usize; 4] {
        let cc = ChainComplexZ2::from_complex(c);
        let rk = |d: usize| if (1..4).contains(&d) { cc.boundary_matrix(d).rank() } else { 0 };
        std::array::from_fn(|d| c.count(d) - rk(d) - rk(d + 1))
    }

    fn ring() -> MeshComplex {
        let mut cells: BTreeSet<[i64; 3]> = block([0, 0, 0], [3, 3, 1]);
        cells.remove(&[1, 1, 0]);
        voxel_mesh(&cells, &VoxelGrid::default())
    }

    #[test]
    fn ring_is_a_solid_torus() {
        let m = ring();
        assert_eq!(betti(&m), [1, 1, 0, 0]);
        assert_eq!(dense_betti(m.complex()), [1, 1, 0, 0]);
        let h1 = homology_generators(&m, 1).unwrap();
        assert_eq!(h1.rank, 1);
        assert!(!is_boundary(&h1.generators[0], &m, 1).unwrap());
        assert!(!ball_criterion(&m).unwrap());
    }

    #[test]
    fn core_loop_dies_in_the_filled_block() {
        let m = ring();
        let full = voxel_mesh(&block([0, 0, 0], [3, 3, 1]), &VoxelGrid::default());
        let f = induced_map(&m, &full, &Inclusion::ByCoordinates, 1).unwrap();
        assert_eq!((f.matrix.rows(), f.matrix.cols()), (0, 1));
        let id = induced_map(&m, &m, &Inclusion::ByCoordinates, 1).unwrap();
        assert_eq!(id.matrix, Gf2Matrix::identity(1));
        assert!(ball_criterion(&full).unwrap());
    }

    #[test]
    fn tetrahedron_boundary_bounds() {
        let c = Complex::from_simplices([Simplex::new(&[0, 1, 2, 3])]);
        let cyc: Chain = (0..4).collect();
        assert!(is_boundary_complex(&cyc, &c, 2).unwrap());
        assert!(matches!(is_boundary_complex(&[0], &c, 2), Err(Error::NotACycle)));
        assert!(matches!(homology_generators_complex(&c, 4), Err(Error::DimensionOutOfRange(4))));
    }

    #[test]
    fn reduced_and_relative() {
        let c = Complex::from_simplices([Simplex::new(&[0, 1, 2, 3])]);
        assert_eq!(reduced_betti_complex(&c).unwrap(), [0, 0, 0, 0]);
        assert!(matches!(reduced_betti_complex(&Complex::default()), Err(Error::EmptyReduced)));
        let none = Subcomplex::empty(&c);
        assert_eq!(relative_betti_complex(&c, &none).unwrap(), betti_complex(&c));
    }

    #[test]
    fn torus_ring_split_into_two_blocks() {
        let m = ring();
        let left: Vec<Simplex> = m
            .tetrahedra()
            .iter()
            .filter(|t| m.simplex_points(t).iter().all(|p| p.x <= crate::mesh_core::int(1) || p.y <= crate::mesh_core::int(1)))
            .copied()
            .collect();
        let right: Vec<Simplex> = m.tetrahedra().iter().filter(|t| !left.contains(t)).copied().collect();
        let sa = Subcomplex::from_simplices(m.complex(), left.iter()).unwrap();
        let sb = Subcomplex::from_simplices(m.complex(), right.iter()).unwrap();
        let r = mayer_vietoris_complex(m.complex(), &sa, &sb).unwrap();
        assert_eq!(r.union[1], 1);
        assert!(r.is_consistent(), "{:?}", r.violations);
    }
}
