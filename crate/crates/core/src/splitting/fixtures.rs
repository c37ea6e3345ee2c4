//! Voxel neighbourhoods in the frame, for tests, examples and the CLI.
//!
//! Cells have side 1/10 and are centred on the points `(i, j, k)/10`, so
//! the layer `k` spans `[(2k-1)/20, (2k+1)/20]` and no vertex lies on
//! `z = 0`. Indices stay within `±9`, keeping every section inside the
//! open square.

use std::collections::BTreeSet;

use crate::mesh_core::voxel::{voxel_mesh, Cell, VoxelGrid};
use crate::mesh_core::{rat, MeshComplex, RationalPoint3};

pub fn frame_grid() -> VoxelGrid {
    let h = rat(-1, 20);
    VoxelGrid::new(RationalPoint3::new(h.clone(), h.clone(), h), [rat(1, 10), rat(1, 10), rat(1, 10)])
}

pub fn frame_mesh(cells: &BTreeSet<Cell>) -> MeshComplex {
    voxel_mesh(cells, &frame_grid())
}

#[derive(Clone, Debug)]
pub struct SplitFixture {
    pub name: String,
    pub cells: BTreeSet<Cell>,
    /// First Betti number of the solid.
    pub b1: usize,
    /// Hole counts of the section components, sorted.
    pub section_holes: Vec<usize>,
}

impl SplitFixture {
    pub fn mesh(&self) -> MeshComplex {
        frame_mesh(&self.cells)
    }
}

fn cells(pred: impl Fn(i64, i64, i64) -> bool) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for i in -9..=9 {
        for j in -9..=9 {
            for k in -9..=9 {
                if pred(i, j, k) {
                    out.insert([i, j, k]);
                }
            }
        }
    }
    out
}

fn cheb(a: i64, b: i64) -> i64 {
    a.abs().max(b.abs())
}

/// A box `|i| ≤ rx, |j| ≤ ry, |k| ≤ rz` around the centre `(cx, cy, 0)`.
pub fn ball(rx: i64, ry: i64, rz: i64, cx: i64, cy: i64) -> SplitFixture {
    SplitFixture {
        name: format!("ball_{rx}_{ry}_{rz}_at_{cx}_{cy}"),
        cells: cells(|i, j, k| (i - cx).abs() <= rx && (j - cy).abs() <= ry && k.abs() <= rz),
        b1: 0,
        section_holes: vec![0],
    }
}

/// A square ring in the xz plane, `ρ < max(|i|, |k|) ≤ R`, one to several
/// cells thick in y. Its section is two disks.
pub fn vertical_ring(outer: i64, inner: i64, half_thickness: i64) -> SplitFixture {
    SplitFixture {
        name: format!("vertical_ring_{outer}_{inner}_{half_thickness}"),
        cells: cells(|i, j, k| j.abs() <= half_thickness && (inner + 1..=outer).contains(&cheb(i, k))),
        b1: 1,
        section_holes: vec![0, 0],
    }
}

/// A square ring in the xy plane straddling `z = 0`. Its section is an annulus.
pub fn horizontal_ring(outer: i64, inner: i64, half_height: i64) -> SplitFixture {
    SplitFixture {
        name: format!("horizontal_ring_{outer}_{inner}_{half_height}"),
        cells: cells(|i, j, k| k.abs() <= half_height && (inner + 1..=outer).contains(&cheb(i, j))),
        b1: 1,
        section_holes: vec![1],
    }
}

/// Two concentric horizontal rings: nested annuli in the section.
pub fn concentric_rings() -> SplitFixture {
    SplitFixture {
        name: "concentric_rings".into(),
        cells: cells(|i, j, k| k.abs() <= 1 && [2, 3, 6, 7].contains(&cheb(i, j))),
        b1: 2,
        section_holes: vec![1, 1],
    }
}

/// A slab with two square holes: its section is a disk with two holes.
pub fn two_holed_slab() -> SplitFixture {
    SplitFixture {
        name: "two_holed_slab".into(),
        cells: cells(|i, j, k| {
            let hole = j.abs() <= 1 && ((-4..=-2).contains(&i) || (2..=4).contains(&i));
            k.abs() <= 1 && i.abs() <= 6 && j.abs() <= 3 && !hole
        }),
        b1: 2,
        section_holes: vec![2],
    }
}

/// Two horizontal rings, one above and one below the plane, joined by a
/// vertical bar through it. A genus-2 handlebody whose section is one disk.
pub fn genus_two() -> SplitFixture {
    SplitFixture {
        name: "genus_two".into(),
        cells: cells(|i, j, k| {
            let ring = (2..=3).contains(&cheb(i, j)) && (2..=3).contains(&k.abs());
            let bar = i == 3 && j == 0 && k.abs() <= 1;
            ring || bar
        }),
        b1: 2,
        section_holes: vec![0],
    }
}

/// A ball and a ring side by side: indifferent section components.
pub fn ball_beside_ring() -> SplitFixture {
    SplitFixture {
        name: "ball_beside_ring".into(),
        cells: cells(|i, j, k| {
            let ball = (-7..=-5).contains(&i) && j.abs() <= 1 && k.abs() <= 1;
            let ring = (2..=3).contains(&cheb(i - 4, j)) && k.abs() <= 1;
            ball || ring
        }),
        b1: 1,
        section_holes: vec![0, 1],
    }
}

/// One layer of cells whose section is a disk, a disk, an annulus and a
/// disk with two holes, nested as two disks and an annulus inside the
/// holes of the last component, with a disk inside the annulus.
pub fn corte1() -> SplitFixture {
    let inside = |i: i64, j: i64, i0: i64, i1: i64, j0: i64, j1: i64| (i0..i1).contains(&i) && (j0..j1).contains(&j);
    let member = |i: i64, j: i64| {
        let c4 = inside(i, j, 0, 17, 0, 9) && !inside(i, j, 1, 6, 1, 8) && !inside(i, j, 7, 16, 1, 8);
        let c2 = inside(i, j, 2, 5, 2, 7);
        let c3 = inside(i, j, 8, 15, 2, 7) && !inside(i, j, 9, 14, 3, 6);
        let c1 = inside(i, j, 10, 13, 4, 5);
        c1 || c2 || c3 || c4
    };
    SplitFixture {
        name: "corte1".into(),
        cells: cells(|i, j, k| k == 0 && member(i + 8, j + 4)),
        b1: 3,
        section_holes: vec![0, 0, 1, 2],
    }
}

/// Twenty-one deterministic fixtures covering disks, pairs of disks,
/// annuli, nested and indifferent components and a genus-2 body.
pub fn fixture_family() -> Vec<SplitFixture> {
    let mut out = vec![
        ball(1, 1, 1, 0, 0),
        ball(2, 2, 2, 0, 0),
        ball(3, 1, 2, 0, 0),
        ball(1, 3, 1, 0, 0),
        ball(2, 1, 1, 4, -3),
    ];
    for (r, p, t) in [(3, 1, 0), (3, 1, 1), (4, 2, 0), (4, 1, 1), (5, 2, 1)] {
        out.push(vertical_ring(r, p, t));
    }
    for (r, p, h) in [(3, 1, 0), (3, 1, 1), (4, 2, 1), (5, 3, 2), (6, 1, 1)] {
        out.push(horizontal_ring(r, p, h));
    }
    out.extend([concentric_rings(), two_holed_slab(), genus_two(), ball_beside_ring(), corte1(), ball(1, 1, 3, -5, 5)]);
    out
}
