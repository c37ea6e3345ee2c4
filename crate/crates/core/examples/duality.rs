//! Lefschetz, Alexander and relative Alexander duality, plus the two sides of a torus.
//!
//! ```bash
//! cargo run --release --example duality
//! ```

use wildlab::duality::{alexander_check, boundary_domains, lefschetz_check, relative_alexander_check};
use wildlab::mesh_core::{boundary_surface, compactify};
use wildlab::towers::{gen_ball_tower, gen_handlebody_solid, gen_solid_torus_solid};

fn main() -> wildlab::Result<()> {
    let body = gen_handlebody_solid(2)?;
    print!("{}", lefschetz_check(&body.mesh)?.to_text());
    let comp = compactify(&body.mesh, &body.bounding_box, Some(&body.complement))?;
    print!("{}", alexander_check(&body.mesh, Some(&comp))?.to_text());

    // An inner sphere in a ball: one component of N - S misses the boundary.
    let t = gen_ball_tower(2)?;
    let (outer, inner) = (t.stages[0].as_mesh().expect("mesh"), t.stages[1].as_mesh().expect("mesh"));
    let s = boundary_surface(inner)?.as_subcomplex_of(outer)?;
    print!("{}", relative_alexander_check(outer, &s)?.to_text());

    let torus = gen_solid_torus_solid();
    let comp = compactify(&torus.mesh, &torus.bounding_box, Some(&torus.complement))?;
    print!("{}", boundary_domains(&comp)?.to_text());
    Ok(())
}
