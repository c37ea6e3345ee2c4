//! Validate a mesh, cut it along a plane and glue the halves back together.
//!
//! ```bash
//! cargo run --example clip_and_merge
//! ```

use wildlab::mesh_core::{cut_halfspace, merge, rat, validate_triangulation, Plane, Side};
use wildlab::towers::gen_box;
use wildlab::z2_homology::betti;

fn main() -> wildlab::Result<()> {
    let cube = gen_box();
    println!("coned cube: {} tetrahedra, valid {}", cube.tetrahedra().len(), validate_triangulation(&cube).is_valid());

    let plane = Plane::z(rat(1, 3));
    let below = cut_halfspace(&cube, &plane, Side::Below)?;
    let above = cut_halfspace(&cube, &plane, Side::Above)?;
    println!("below: {} tets, above: {} tets", below.tetrahedra().len(), above.tetrahedra().len());

    let glued = merge(&[&below, &above])?;
    println!("betti before {:?}, after {:?}", betti(&cube), betti(&glued));
    Ok(())
}
