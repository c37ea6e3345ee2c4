//! Solids assembled from axis-aligned voxels.
//!
//! Every voxel is cut into the six Kuhn tetrahedra along its main diagonal.
//! The rule is the same in every cell, so any set of voxels is a valid
//! triangulation, and the complement of a voxel set inside a larger block
//! of voxels shares its boundary triangle for triangle.

use std::collections::BTreeSet;

use super::complex::{MeshBuilder, MeshComplex};
use super::geometry::{int, AxisBox, Rational, RationalPoint3};

pub type Cell = [i64; 3];

/// Affine placement of the integer lattice: cell `c` occupies
/// `origin + step * [c, c + 1]` componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoxelGrid {
    pub origin: RationalPoint3,
    pub step: [Rational; 3],
}

impl Default for VoxelGrid {
    fn default() -> Self {
        Self {
            origin: RationalPoint3::from_ints(0, 0, 0),
            step: [int(1), int(1), int(1)],
        }
    }
}

impl VoxelGrid {
    pub fn new(origin: RationalPoint3, step: [Rational; 3]) -> Self {
        Self { origin, step }
    }

    pub fn point(&self, c: Cell) -> RationalPoint3 {
        let f = |a: usize| self.origin.coord(a) + &self.step[a] * int(c[a]);
        RationalPoint3::new(f(0), f(1), f(2))
    }
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn add_cell(builder: &mut MeshBuilder, grid: &VoxelGrid, c: Cell) {
    for perm in PERMS {
        let mut cur = c;
        let mut pts = vec![grid.point(cur)];
        for axis in perm {
            cur[axis] += 1;
            pts.push(grid.point(cur));
        }
        builder.add_simplex(&pts);
    }
}

/// Kuhn triangulation of the union of `cells`.
pub fn voxel_mesh<'a, I: IntoIterator<Item = &'a Cell>>(cells: I, grid: &VoxelGrid) -> MeshComplex {
    let mut builder = MeshBuilder::default();
    for &c in cells {
        add_cell(&mut builder, grid, c);
    }
    builder.build()
}

/// A voxel solid together with a triangulation of the rest of a box around it.
#[derive(Clone, Debug)]
pub struct VoxelSolid {
    pub mesh: MeshComplex,
    /// Closure of `bounding_box` minus the solid, sharing the solid's boundary.
    pub complement: MeshComplex,
    pub bounding_box: AxisBox,
}

/// The solid of `cells` and its complement in the cell block padded by one
/// layer on every side.
pub fn voxel_solid(cells: &BTreeSet<Cell>, grid: &VoxelGrid) -> VoxelSolid {
    assert!(!cells.is_empty(), "empty voxel set");
    let lo: Cell = std::array::from_fn(|a| cells.iter().map(|c| c[a]).min().expect("nonempty") - 1);
    let hi: Cell = std::array::from_fn(|a| cells.iter().map(|c| c[a]).max().expect("nonempty") + 2);
    let mut rest = Vec::new();
    for x in lo[0]..hi[0] {
        for y in lo[1]..hi[1] {
            for z in lo[2]..hi[2] {
                if !cells.contains(&[x, y, z]) {
                    rest.push([x, y, z]);
                }
            }
        }
    }
    VoxelSolid {
        mesh: voxel_mesh(cells, grid),
        complement: voxel_mesh(&rest, grid),
        bounding_box: AxisBox::new(grid.point(lo), grid.point(hi)),
    }
}

/// All cells of the half-open block `[lo, hi)`.
pub fn block(lo: Cell, hi: Cell) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for x in lo[0]..hi[0] {
        for y in lo[1]..hi[1] {
            for z in lo[2]..hi[2] {
                out.insert([x, y, z]);
            }
        }
    }
    out
}

/// The boundary of one grid cell with the triangles the Kuhn rule puts on
/// it, coned from `apex` (a point inside the cell).
pub fn coned_cell(grid: &VoxelGrid, c: Cell, apex: &RationalPoint3) -> MeshComplex {
    let cell = voxel_mesh(&[c], grid);
    let lo = grid.point(c);
    let hi = grid.point([c[0] + 1, c[1] + 1, c[2] + 1]);
    let bbox = AxisBox::new(lo, hi);
    assert!(bbox.strictly_contains(apex), "apex must be inside the cell");
    let mut builder = MeshBuilder::default();
    for t in cell.complex().simplices(2) {
        let mut pts = cell.simplex_points(t);
        if pts.iter().all(|p| bbox.on_boundary(p)) && (0..3).any(|a| pts.iter().all(|p| p.coord(a) == pts[0].coord(a)))
        {
            pts.push(apex.clone());
            builder.add_simplex(&pts);
        }
    }
    builder.build()
}
