//! Fixture meshes and towers on the unit voxel grid.

use std::collections::BTreeSet;

use super::{Link, Stage, Tower};
use crate::mesh_core::voxel::{block, coned_cell, voxel_mesh, voxel_solid, Cell, VoxelGrid, VoxelSolid};
use crate::mesh_core::{int, rat, AxisBox, MeshComplex, RationalPoint3};
use crate::z2_homology::Gf2Matrix;
use crate::{Error, Result};

/// Largest genus or hole count the generators accept.
pub const MAX_GENERATOR_PARAM: i64 = 64;

pub fn unit_grid() -> VoxelGrid {
    VoxelGrid::new(RationalPoint3::from_ints(0, 0, 0), [int(1), int(1), int(1)])
}

fn check_param(name: &str, v: i64) -> Result<usize> {
    if !(0..=MAX_GENERATOR_PARAM).contains(&v) {
        return Err(Error::Tower(format!("{name} = {v} is outside 0..={MAX_GENERATOR_PARAM}")));
    }
    Ok(v as usize)
}

fn solid(cells: BTreeSet<Cell>) -> VoxelSolid {
    let s = voxel_solid(&cells, &unit_grid());
    VoxelSolid {
        mesh: s.mesh.canonical(),
        complement: s.complement.canonical(),
        bounding_box: s.bounding_box,
    }
}

/// A 2×2×2 block of cells. Betti `(1, 0, 0, 0)`.
pub fn gen_ball() -> MeshComplex {
    gen_ball_solid().mesh
}

pub fn gen_ball_solid() -> VoxelSolid {
    solid(block([0, 0, 0], [2, 2, 2]))
}

/// The cube `[-1, 1]³` coned from the off-centre point `(1/3, 1/5, 1/7)`.
/// Betti `(1, 0, 0, 0)`.
pub fn gen_box() -> MeshComplex {
    gen_box_solid().mesh
}

pub fn gen_box_solid() -> VoxelSolid {
    let grid = VoxelGrid::new(RationalPoint3::from_ints(-1, -1, -1), [int(2), int(2), int(2)]);
    let apex = RationalPoint3::new(rat(1, 3), rat(1, 5), rat(1, 7));
    let rest: Vec<Cell> = block([-1, -1, -1], [2, 2, 2]).into_iter().filter(|c| c != &[0, 0, 0]).collect();
    VoxelSolid {
        mesh: coned_cell(&grid, [0, 0, 0], &apex).canonical(),
        complement: voxel_mesh(&rest, &grid).canonical(),
        bounding_box: AxisBox::new(grid.point([-1, -1, -1]), grid.point([2, 2, 2])),
    }
}

/// A 6×6 square ring around a 2×2 hole, two cells high. Betti `(1, 1, 0, 0)`.
pub fn gen_solid_torus() -> MeshComplex {
    gen_solid_torus_solid().mesh
}

pub fn gen_solid_torus_solid() -> VoxelSolid {
    let cells = block([0, 0, 0], [6, 6, 2]).into_iter().filter(|c| !((2..4).contains(&c[0]) && (2..4).contains(&c[1])));
    solid(cells.collect())
}

/// A `3 × (2g+1) × 1` slab with `g` punched holes. Betti `(1, g, 0, 0)`.
pub fn gen_handlebody(g: i64) -> Result<MeshComplex> {
    Ok(gen_handlebody_solid(g)?.mesh)
}

pub fn gen_handlebody_solid(g: i64) -> Result<VoxelSolid> {
    let g = check_param("g", g)? as i64;
    let cells = block([0, 0, 0], [3, 2 * g + 1, 1]).into_iter().filter(|c| !(c[0] == 1 && c[1] % 2 == 1));
    Ok(solid(cells.collect()))
}

/// A `(2m+1) × 3 × 3` block with `m` interior cavities. Betti `(1, 0, m, 0)`.
pub fn gen_perforated_ball(m: i64) -> Result<MeshComplex> {
    Ok(gen_perforated_ball_solid(m)?.mesh)
}

pub fn gen_perforated_ball_solid(m: i64) -> Result<VoxelSolid> {
    let m = check_param("m", m)? as i64;
    let cells = block([0, 0, 0], [2 * m + 1, 3, 3]).into_iter().filter(|c| !(c[0] % 2 == 1 && c[1] == 1 && c[2] == 1));
    Ok(solid(cells.collect()))
}

fn check_depth(depth: usize) -> Result<()> {
    if depth < 2 {
        return Err(Error::Tower(format!("depth {depth} is below 2")));
    }
    Ok(())
}

fn algebraic_tower(depth: usize, notes: impl Fn(usize) -> String) -> Result<Tower> {
    check_depth(depth)?;
    Ok(Tower {
        stages: vec![Stage::Rank(1); depth],
        links: vec![Link::Algebraic(Gf2Matrix::zeros(1, 1)); depth - 1],
        notes: (0..depth).map(|k| (k, notes(k))).collect(),
    })
}

/// Nested solid tori, each winding twice inside the previous one. On `H_1`
/// every link is multiplication by 2, which is zero over GF(2).
pub fn gen_solenoid_tower(depth: usize) -> Result<Tower> {
    algebraic_tower(depth, |k| {
        if k == 0 {
            "algebraic: dyadic solenoid; each solid torus winds twice inside the previous one, so H1 links are 2 = 0 mod 2; \
             K is not cellular (known fact, not computed)"
                .into()
        } else {
            format!("algebraic: solid torus {k}, winding twice inside torus {}", k - 1)
        }
    })
}

/// Nested solid tori in the Whitehead pattern: each core is nullhomotopic
/// in the previous torus, so every `H_1` link is zero.
pub fn gen_whitehead_tower(depth: usize) -> Result<Tower> {
    algebraic_tower(depth, |k| {
        if k == 0 {
            "algebraic: Whitehead continuum; each core is nullhomotopic inside the previous torus, so H1 links are 0; \
             K is not cellular (known fact, not computed)"
                .into()
        } else {
            format!("algebraic: solid torus {k}, Whitehead-embedded in torus {}", k - 1)
        }
    })
}

fn nested(stages: Vec<VoxelSolid>, note: &str) -> Tower {
    Tower {
        links: vec![Link::Subcomplex(None); stages.len() - 1],
        notes: vec![(0, note.to_string())],
        stages: stages.into_iter().map(|s| Stage::with_complement(s.mesh, s.complement)).collect(),
    }
}

/// Concentric cubes `[k, 2·depth - k)³`, each inside the interior of the last.
pub fn gen_ball_tower(depth: usize) -> Result<Tower> {
    check_depth(depth)?;
    let n = depth as i64;
    let stages = (0..n).map(|k| solid(block([k, k, k], [2 * n - k; 3]))).collect();
    Ok(nested(stages, "shrinking concentric cubes"))
}

/// The solid torus repeated, joined by identity vertex maps.
pub fn gen_identity_torus_tower(depth: usize) -> Result<Tower> {
    check_depth(depth)?;
    let s = gen_solid_torus_solid();
    let id = (0..s.mesh.num_vertices() as u32).collect::<Vec<_>>();
    Ok(Tower {
        stages: vec![Stage::with_complement(s.mesh, s.complement); depth],
        links: vec![Link::Simplicial(id); depth - 1],
        notes: vec![(0, "identity maps on one solid torus".into())],
    })
}

fn perforated_box(lo: Cell, hi: Cell, cavity: Cell) -> VoxelSolid {
    let mut cells = block(lo, hi);
    cells.remove(&cavity);
    solid(cells)
}

/// Three nested perforated balls, each with one cavity filled by the
/// previous stage, so the `H_2` links vanish.
pub fn gen_nullity_tower() -> Tower {
    let stages = vec![
        perforated_box([-4, 0, 0], [10, 7, 7], [-2, 3, 3]),
        perforated_box([0, 1, 1], [9, 6, 6], [2, 3, 3]),
        perforated_box([4, 2, 2], [7, 5, 5], [5, 3, 3]),
    ];
    nested(stages, "nested perforated balls")
}

/// A ball, then a cube with a one-cell cavity, then a shell whose cavity
/// swallows that one. The shell's inner sphere survives in stage 1, so the
/// `H_2` link between stages 1 and 2 is nonzero.
pub fn gen_persistent_sphere_tower() -> Tower {
    let mut shell = block([2, 2, 2], [7, 7, 7]);
    for c in block([3, 3, 3], [6, 6, 6]) {
        shell.remove(&c);
    }
    let stages = vec![
        solid(block([0, 0, 0], [9, 9, 9])),
        perforated_box([1, 1, 1], [8, 8, 8], [4, 4, 4]),
        solid(shell),
    ];
    nested(stages, "persistent inner sphere")
}
