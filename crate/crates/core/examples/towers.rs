//! Rank bounds for finite neighbourhood towers, including a TOWER/1 round trip.
//!
//! ```bash
//! cargo run --example towers
//! ```

use wildlab::towers::{
    crookedness_report, gen_identity_torus_tower, gen_solenoid_tower, gen_whitehead_tower, read_tower_file,
    write_tower,
};

fn main() -> wildlab::Result<()> {
    for (name, t) in [
        ("solenoid", gen_solenoid_tower(4)?),
        ("whitehead", gen_whitehead_tower(4)?),
        ("identity torus", gen_identity_torus_tower(3)?),
    ] {
        println!("== {name}");
        print!("{}", crookedness_report(&t, 2)?.to_text());
    }

    let dir = std::env::temp_dir().join("wildlab-towers-example");
    let path = dir.join("solenoid.tower");
    write_tower(&gen_solenoid_tower(3)?, &path)?;
    let back = read_tower_file(&path)?;
    println!("reread {} stages from {}", back.len(), path.display());
    Ok(())
}
