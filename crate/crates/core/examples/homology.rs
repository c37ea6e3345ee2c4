//! Betti numbers, generators and an induced map over GF(2).
//!
//! ```bash
//! cargo run --example homology
//! ```

use wildlab::mesh_core::voxel::{block, voxel_mesh};
use wildlab::towers::{gen_solid_torus, unit_grid};
use wildlab::z2_homology::{betti, homology_generators, induced_map, Inclusion};

fn main() -> wildlab::Result<()> {
    let torus = gen_solid_torus();
    println!("solid torus: b = {:?}", betti(&torus));

    let core = homology_generators(&torus, 1)?;
    println!("H1 has rank {}; its generator uses {} edges", core.rank, core.generator_simplices(torus.complex(), 0).len());

    // Filling the hole kills the core loop.
    let slab = voxel_mesh(&block([0, 0, 0], [6, 6, 2]), &unit_grid());
    let map = induced_map(&torus, &slab, &Inclusion::ByCoordinates, 1)?;
    println!("H1(torus) -> H1(slab) has rank {}", map.rank());
    Ok(())
}
