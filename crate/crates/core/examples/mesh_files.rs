//! MESH3/1 files, compactification into S^3 and hole filling.
//!
//! ```bash
//! cargo run --example mesh_files
//! ```

use wildlab::mesh_core::io::{read_mesh, write_mesh};
use wildlab::mesh_core::{compactify, fill_holes};
use wildlab::towers::gen_perforated_ball_solid;
use wildlab::z2_homology::{betti, betti_complex};

fn main() -> wildlab::Result<()> {
    let p = gen_perforated_ball_solid(2)?;
    let text = write_mesh(&p.mesh);
    println!("{}", text.lines().take(2).collect::<Vec<_>>().join("\n"));
    let mesh = read_mesh(&text)?;
    println!("round trip equal: {}", mesh == p.mesh);

    let comp = compactify(&mesh, &p.bounding_box, Some(&p.complement))?;
    println!("sphere: b = {:?}", betti_complex(&comp.sphere));
    let filled = fill_holes(&mesh, &comp)?;
    println!("perforated: b = {:?}, filled: b = {:?}", betti(&mesh), betti(&filled));
    Ok(())
}
