//! Fill the holes of nested perforated balls, and see the obstruction when a sphere persists.
//!
//! ```bash
//! cargo run --release --example nullity
//! ```

use wildlab::towers::{cellularity_certificate, gen_nullity_tower, gen_persistent_sphere_tower, nullity_upgrade};
use wildlab::z2_homology::betti;

fn main() -> wildlab::Result<()> {
    let t = gen_nullity_tower();
    let cert = cellularity_certificate(&t)?;
    println!("stages are balls: {:?}", cert.balls);
    let balls = nullity_upgrade(&t)?;
    for (k, s) in balls.stages.iter().enumerate() {
        println!("filled stage {k}: b = {:?}", betti(s.as_mesh().expect("geometric")));
    }
    match nullity_upgrade(&gen_persistent_sphere_tower()) {
        Ok(_) => println!("unexpected: persistent sphere was filled"),
        Err(e) => println!("persistent sphere: {e}"),
    }
    Ok(())
}
