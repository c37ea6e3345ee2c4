//! Batch front-end. Exit codes: 0 success, 1 a check failed, 2 bad usage or input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wildlab::duality::{alexander_check, boundary_domains, lefschetz_check, relative_alexander_check, DualityReport};
use wildlab::mesh_core::io::{read_mesh_file, read_mesh_records, read_subcomplex, write_mesh_file};
use wildlab::mesh_core::{
    compactify, fill_holes, parse_rational, plane_section, validate_triangulation, AxisBox, MeshComplex, Plane,
    Rational,
};
use wildlab::planar_surface::decompose;
use wildlab::splitting::{fixtures, split, verify_s1, P2Reading, SplitFrame, SplitParams};
use wildlab::towers::{self, cellularity_certificate, crookedness_report, read_tower_file, write_tower};
use wildlab::z2_homology::{betti_with, relative_betti};
use wildlab::{Error, Result};

#[derive(Parser)]
#[command(name = "wildlab", version, about = "Exact Z2 topology of polyhedral neighbourhoods in R^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a mesh is a valid embedded triangulation.
    Validate { mesh: PathBuf },
    /// Print Betti numbers over GF(2).
    Homology {
        mesh: PathBuf,
        #[arg(long)]
        reduced: bool,
        /// Subcomplex sidecar: print relative Betti numbers instead.
        #[arg(long, conflicts_with = "reduced")]
        relative: Option<PathBuf>,
    },
    /// Rank-level duality checks.
    Duality {
        #[command(subcommand)]
        check: DualityCommand,
    },
    /// Decompose a planar surface (or the z = c section of a solid).
    Planar {
        mesh: PathBuf,
        /// Section height for a 3-dimensional input.
        #[arg(long, default_value = "0")]
        z: String,
    },
    /// Split a neighbourhood along z = 0 inside [-1, 1]^3.
    Split {
        mesh: PathBuf,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, value_enum, default_value_t = Reading::Mirrored)]
        reading: Reading,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank bounds for a TOWER/1 manifest.
    Tower {
        manifest: PathBuf,
        #[arg(long, default_value_t = 2)]
        window: usize,
        /// Also run the cellularity certificate.
        #[arg(long)]
        cellularity: bool,
    },
    /// Write a generated fixture.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Genus, hole count or tower depth.
        #[arg(long, default_value_t = 2)]
        param: i64,
        /// Output mesh file, or manifest path for towers.
        #[arg(long)]
        out: PathBuf,
        /// Also write the complement triangulation here.
        #[arg(long)]
        complement: Option<PathBuf>,
    },
    /// Fill the bounded holes of a perforated ball.
    FillHoles {
        mesh: PathBuf,
        /// Triangulation of a box minus the mesh.
        #[arg(long)]
        complement: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum DualityCommand {
    /// H_d(N, dN) = H_{3-d}(N).
    Lefschetz { mesh: PathBuf },
    /// Reduced H_d(S3 - N) = reduced H_{2-d}(N); the surface-domain relation for dN too.
    Alexander {
        mesh: PathBuf,
        #[arg(long)]
        complement: PathBuf,
    },
    /// H_d(N, S) = H_{3-d}(N - S, dN) for a sidecar S.
    Relative { mesh: PathBuf, subcomplex: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    Mirrored,
    AsPrinted,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Ball,
    Box,
    SolidTorus,
    Handlebody,
    PerforatedBall,
    TorusInFrame,
    Corte1,
    Solenoid,
    Whitehead,
    BallTower,
    NullityTower,
    PersistentTower,
}

/// A finished command: report text and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, pass: true }
    }
}

fn bbox_of(m: &MeshComplex) -> Result<AxisBox> {
    let pts = m.points();
    let first = pts.first().ok_or_else(|| Error::Tower("empty complement".into()))?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for p in pts {
        for a in 0..3 {
            if p.coord(a) < lo.coord(a) {
                *lo.coord_mut(a) = p.coord(a).clone();
            }
            if p.coord(a) > hi.coord(a) {
                *hi.coord_mut(a) = p.coord(a).clone();
            }
        }
    }
    Ok(AxisBox::new(lo, hi))
}

fn load_sidecar(mesh: &Path, sidecar: &Path) -> Result<(MeshComplex, wildlab::mesh_core::Subcomplex)> {
    let (m, records) = read_mesh_records(&std::fs::read_to_string(mesh)?)?;
    let sub = read_subcomplex(&std::fs::read_to_string(sidecar)?, &m, &records)?;
    Ok((m, sub))
}

fn duality_outcome(reports: &[DualityReport], extra: String) -> Outcome {
    let mut text: String = reports.iter().map(DualityReport::to_text).collect();
    text.push_str(&extra);
    Outcome {
        pass: reports.iter().all(|r| r.pass) && !extra.contains("FAIL"),
        text,
    }
}

fn parse_epsilon(s: &str) -> Result<Rational> {
    let e = parse_rational(s)?;
    if e <= Rational::from_integer(0.into()) || e >= Rational::from_integer(1.into()) {
        return Err(Error::Split(format!("epsilon {s} is not in (0, 1)")));
    }
    Ok(e)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate { mesh } => {
            let m = read_mesh_file(&mesh)?;
            let r = validate_triangulation(&m);
            let text = format!(
                "valid {}\noffending_pairs {}\ndegenerate {}\n",
                r.is_valid(),
                r.offending_pairs.len(),
                r.degenerate.len()
            );
            Ok(Outcome { text, pass: r.is_valid() })
        }
        Command::Homology { mesh, reduced, relative } => {
            let b = match relative {
                Some(side) => {
                    let (m, sub) = load_sidecar(&mesh, &side)?;
                    relative_betti(&m, &sub)?
                }
                None => betti_with(&read_mesh_file(&mesh)?, reduced)?,
            };
            Ok(Outcome::ok(format!("b: {} {} {} {}\n", b[0], b[1], b[2], b[3])))
        }
        Command::Duality { check } => match check {
            DualityCommand::Lefschetz { mesh } => {
                Ok(duality_outcome(&[lefschetz_check(&read_mesh_file(&mesh)?)?], String::new()))
            }
            DualityCommand::Alexander { mesh, complement } => {
                let (m, c) = (read_mesh_file(&mesh)?, read_mesh_file(&complement)?);
                let comp = compactify(&m, &bbox_of(&c)?, Some(&c))?;
                let report = alexander_check(&m, Some(&comp))?;
                let extra = match boundary_domains(&comp) {
                    Ok(d) => d.to_text(),
                    Err(e) => format!("domains skipped: {e}\n"),
                };
                Ok(duality_outcome(&[report], extra))
            }
            DualityCommand::Relative { mesh, subcomplex } => {
                let (m, sub) = load_sidecar(&mesh, &subcomplex)?;
                Ok(duality_outcome(&[relative_alexander_check(&m, &sub)?], String::new()))
            }
        },
        Command::Planar { mesh, z } => {
            let m = read_mesh_file(&mesh)?;
            let surface = if m.complex().count(3) > 0 {
                plane_section(&m, &Plane::z(parse_rational(&z)?))?
            } else {
                m
            };
            Ok(Outcome::ok(decompose(&surface)?.report_text()))
        }
        Command::Split { mesh, epsilon, reading, out } => {
            let n = read_mesh_file(&mesh)?;
            let mut params = SplitParams::default();
            if let Some(e) = epsilon {
                params.epsilon = parse_epsilon(&e)?;
            }
            params.p2_reading = match reading {
                Reading::Mirrored => P2Reading::Mirrored,
                Reading::AsPrinted => P2Reading::AsPrinted,
            };
            let res = split(&n, &SplitFrame::default(), &params)?;
            let s1 = verify_s1(&res)?;
            let mut text = res.report_text();
            text.push_str(&s1.summary());
            text.push('\n');
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                for (name, m) in res.meshes() {
                    write_mesh_file(dir.join(format!("{name}.mesh3")), m)?;
                }
                std::fs::write(dir.join("report.txt"), &text)?;
            }
            Ok(Outcome { pass: s1.holds, text })
        }
        Command::Tower { manifest, window, cellularity } => {
            let t = read_tower_file(&manifest)?;
            let mut text = crookedness_report(&t, window)?.to_text();
            let mut pass = true;
            if cellularity {
                let c = cellularity_certificate(&t)?;
                let balls: Vec<&str> = c.balls.iter().map(|&b| if b { "1" } else { "0" }).collect();
                text.push_str(&format!(
                    "balls {}\nfilled {}\ncertified {}\n",
                    balls.join(" "),
                    c.filled.is_some(),
                    c.certified
                ));
                if let Some(e) = &c.upgrade_error {
                    text.push_str(&format!("upgrade_error {e}\n"));
                }
                pass = c.certified;
            }
            Ok(Outcome { text, pass })
        }
        Command::Gen { kind, param, out, complement } => {
            let depth = || usize::try_from(param).map_err(|_| Error::Tower(format!("depth {param} is negative")));
            let tower = match kind {
                GenKind::Solenoid => Some(towers::gen_solenoid_tower(depth()?)?),
                GenKind::Whitehead => Some(towers::gen_whitehead_tower(depth()?)?),
                GenKind::BallTower => Some(towers::gen_ball_tower(depth()?)?),
                GenKind::NullityTower => Some(towers::gen_nullity_tower()),
                GenKind::PersistentTower => Some(towers::gen_persistent_sphere_tower()),
                _ => None,
            };
            if let Some(t) = tower {
                write_tower(&t, &out)?;
                return Ok(Outcome::ok(format!("wrote {}\n", out.display())));
            }
            let (mesh, comp) = match kind {
                GenKind::Ball => split_solid(towers::gen_ball_solid()),
                GenKind::Box => split_solid(towers::gen_box_solid()),
                GenKind::SolidTorus => split_solid(towers::gen_solid_torus_solid()),
                GenKind::Handlebody => split_solid(towers::gen_handlebody_solid(param)?),
                GenKind::PerforatedBall => split_solid(towers::gen_perforated_ball_solid(param)?),
                GenKind::TorusInFrame => (fixtures::vertical_ring(3, 1, 0).mesh().canonical(), None),
                GenKind::Corte1 => (fixtures::corte1().mesh().canonical(), None),
                _ => unreachable!("towers handled above"),
            };
            write_mesh(&out, &mesh)?;
            let mut text = format!("wrote {}\n", out.display());
            if let Some(path) = complement {
                let c = comp.ok_or_else(|| Error::Tower("this fixture has no complement triangulation".into()))?;
                write_mesh(&path, &c)?;
                text.push_str(&format!("wrote {}\n", path.display()));
            }
            Ok(Outcome::ok(text))
        }
        Command::FillHoles { mesh, complement, out } => {
            let (m, c) = (read_mesh_file(&mesh)?, read_mesh_file(&complement)?);
            let comp = compactify(&m, &bbox_of(&c)?, Some(&c))?;
            let filled = fill_holes(&m, &comp)?;
            write_mesh(&out, &filled)?;
            let b = wildlab::z2_homology::betti(&filled);
            Ok(Outcome::ok(format!("b: {} {} {} {}\n", b[0], b[1], b[2], b[3])))
        }
    }
}

fn write_mesh(path: &Path, m: &MeshComplex) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(write_mesh_file(path, m)?)
}

fn split_solid(s: wildlab::mesh_core::voxel::VoxelSolid) -> (MeshComplex, Option<MeshComplex>) {
    (s.mesh, Some(s.complement))
}

/// Failed checks exit 1; everything else that goes wrong is bad input.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconsistent(_) | Error::H2Obstruction { .. } | Error::ContainmentFailed { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    wildlab::init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.text);
            if o.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
