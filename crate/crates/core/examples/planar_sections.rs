//! Decompose the section of a solid into disks with holes and order the components.
//!
//! ```bash
//! cargo run --example planar_sections
//! ```

use wildlab::mesh_core::{plane_section, Plane};
use wildlab::planar_surface::{decompose, respects_interiority};
use wildlab::splitting::fixtures::corte1;

fn main() -> wildlab::Result<()> {
    let solid = corte1().mesh();
    let section = plane_section(&solid, &Plane::default())?;
    let d = decompose(&section)?;
    print!("{}", d.report_text());
    println!("order respects interiority: {}", respects_interiority(&d, &d.order));
    for (i, &c) in d.order.iter().enumerate() {
        println!("C{} has {} holes", i + 1, d.components[c].holes());
    }
    Ok(())
}
