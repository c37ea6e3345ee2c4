//! Split a neighbourhood along z = 0 and check both halves.
//!
//! ```bash
//! cargo run --release --example split
//! ```

use wildlab::mesh_core::voxel::{voxel_mesh, VoxelGrid};
use wildlab::mesh_core::{rat, RationalPoint3};
use wildlab::splitting::fixtures::horizontal_ring;
use wildlab::splitting::{choose_epsilon, split, verify_s1, verify_s2, SplitFrame, SplitParams};

fn main() -> wildlab::Result<()> {
    let n = horizontal_ring(3, 1, 1).mesh();

    // W: a slab around the plane; epsilon is chosen to keep the thickened disks inside it.
    let grid = VoxelGrid::new(RationalPoint3::new(rat(-1, 1), rat(-1, 1), rat(-1, 4)), [rat(2, 1), rat(2, 1), rat(1, 2)]);
    let w = voxel_mesh(&[[0, 0, 0]], &grid);
    let eps = choose_epsilon(&n, &[&w])?;
    let res = split(&n, &SplitFrame::default(), &SplitParams::with_epsilon(eps))?;
    print!("{}", res.report_text());
    println!("{}", verify_s1(&res)?.summary());
    let s2 = verify_s2(&res, &[&res.m1, &w], &[&res.m2, &w]);
    println!("S2 containment: {}", s2.is_contained());
    Ok(())
}
