//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Every comparison is exact (ranks are integers); the only tolerance is the
//! wall-clock budget of the homology oracle run.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use wildlab::duality::{alexander_check, boundary_domains, lefschetz_check, relative_alexander_check};
use wildlab::mesh_core::voxel::{voxel_mesh, VoxelGrid, VoxelSolid};
use wildlab::mesh_core::{
    boundary_surface, compactify, cut_halfspace, int, merge, plane_section, rat, Complex, MeshComplex, Plane,
    RationalPoint3, Side, Simplex, Subcomplex,
};
use wildlab::planar_surface::{decompose, respects_interiority};
use wildlab::splitting::fixtures::{corte1, fixture_family, SplitFixture};
use wildlab::splitting::{choose_epsilon, split, verify_s1, verify_s2, InequalityReport, SplitFrame, SplitParams, SplitResult};
use wildlab::towers::*;
use wildlab::z2_homology::{betti, betti_complex, euler_from_betti};
use wildlab::Error;

/// Exact rank equality everywhere.
const RANK_TOLERANCE: usize = 0;
/// Upper bound on the homology oracle run.
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const MIN_ORACLE_COMPLEXES: usize = 50;
const MIN_SPLIT_FIXTURES: usize = 20;
const RANDOM_DUALITY_FIXTURES: usize = 20;
const MAX_RANDOM_TETS: usize = 300;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// The tolerance is pinned at zero; the comparison stays general.
#[allow(clippy::absurd_extreme_comparisons)]
fn ranks_equal(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.abs_diff(*y) <= RANK_TOLERANCE)
}

/// A slab `[-1, 1]² × [-3/8, 3/8]` around the splitting plane, playing `W`.
fn slab_w() -> MeshComplex {
    let grid = VoxelGrid::new(RationalPoint3::new(int(-1), int(-1), rat(-3, 8)), [int(2), int(2), rat(3, 4)]);
    voxel_mesh(&[[0, 0, 0]], &grid)
}

struct FamilyRun {
    fixture: SplitFixture,
    result: Result<(SplitResult, InequalityReport), Error>,
}

fn family_runs() -> &'static Vec<FamilyRun> {
    static RUNS: OnceLock<Vec<FamilyRun>> = OnceLock::new();
    RUNS.get_or_init(|| {
        let w = slab_w();
        fixture_family()
            .into_par_iter()
            .map(|fixture| {
                let result = (|| {
                    let n = fixture.mesh();
                    let eps = choose_epsilon(&n, &[&w])?;
                    let res = split(&n, &SplitFrame::default(), &SplitParams::with_epsilon(eps))?;
                    let s1 = verify_s1(&res)?;
                    Ok((res, s1))
                })();
                FamilyRun { fixture, result }
            })
            .collect()
    })
}

fn generator_meshes() -> Vec<(String, MeshComplex)> {
    let mut out = vec![
        ("ball".to_string(), gen_ball()),
        ("box".to_string(), gen_box()),
        ("solid_torus".to_string(), gen_solid_torus()),
    ];
    for g in 0..=3 {
        out.push((format!("handlebody_{g}"), gen_handlebody(g).unwrap()));
    }
    for m in 0..=3 {
        out.push((format!("perforated_ball_{m}"), gen_perforated_ball(m).unwrap()));
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut complexes: Vec<(String, Complex)> =
        generator_meshes().into_iter().map(|(n, m)| (n, m.complex().clone())).collect();
    for f in [wildlab::splitting::fixtures::ball(1, 1, 1, 0, 0), wildlab::splitting::fixtures::vertical_ring(3, 1, 0)] {
        let res = split(&f.mesh(), &SplitFrame::default(), &SplitParams::default()).unwrap();
        for (name, m) in res.meshes() {
            complexes.push((format!("{}:{name}", f.name), m.complex().clone()));
        }
    }
    for s in [gen_ball_solid(), gen_solid_torus_solid()] {
        let comp = compactify(&s.mesh, &s.bounding_box, Some(&s.complement)).unwrap();
        complexes.push(("compactified".into(), comp.sphere.clone()));
        complexes.push(("complement".into(), comp.complement_complex()));
    }
    for seed in 0..30 {
        complexes.push((format!("random_{seed}"), common::random_complex(seed, MAX_RANDOM_TETS)));
    }
    let failures: Vec<String> = complexes
        .par_iter()
        .filter_map(|(name, c)| {
            let b = betti_complex(c);
            let ok = ranks_equal(&b, &common::oracle_betti(c)) && euler_from_betti(&b) == common::euler(c);
            (!ok).then(|| name.clone())
        })
        .collect();
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && complexes.len() >= MIN_ORACLE_COMPLEXES && elapsed < ORACLE_BUDGET,
        format!(
            "{} complexes, {} mismatches {:?}, {:.1}s (budget {}s)",
            complexes.len(),
            failures.len(),
            failures,
            elapsed.as_secs_f64(),
            ORACLE_BUDGET.as_secs()
        ),
    )
}

fn interior_vertex(m: &MeshComplex) -> Option<u32> {
    let bd = boundary_surface(m).ok()?;
    let on_boundary: std::collections::HashSet<&RationalPoint3> = bd.points().iter().collect();
    (0..m.num_vertices() as u32).find(|&v| !on_boundary.contains(m.point(v)))
}

fn duality_suite(name: &str, s: &VoxelSolid) -> Result<(), String> {
    let fail = |what: &str, e: &dyn std::fmt::Display| format!("{name} {what}: {e}");
    let l = lefschetz_check(&s.mesh).map_err(|e| fail("lefschetz", &e))?;
    let comp = compactify(&s.mesh, &s.bounding_box, Some(&s.complement)).map_err(|e| fail("compactify", &e))?;
    let a = alexander_check(&s.mesh, Some(&comp)).map_err(|e| fail("alexander", &e))?;
    let c = s.mesh.complex();
    let sub = match interior_vertex(&s.mesh) {
        Some(v) => Subcomplex::from_simplices(c, [Simplex::vertex(v)].iter()).unwrap(),
        None => Subcomplex::empty(c),
    };
    let r = relative_alexander_check(&s.mesh, &sub).map_err(|e| fail("relative", &e))?;
    for rep in [&l, &a, &r] {
        if !(rep.pass && ranks_equal(&rep.left, &rep.right)) {
            return Err(format!("{name}: {} left {:?} right {:?}", rep.name, rep.left, rep.right));
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let mut solids: Vec<(String, VoxelSolid)> = vec![
        ("ball".into(), gen_ball_solid()),
        ("solid_torus".into(), gen_solid_torus_solid()),
        ("handlebody_2".into(), gen_handlebody_solid(2).unwrap()),
    ];
    for m in 1..=3 {
        solids.push((format!("perforated_ball_{m}"), gen_perforated_ball_solid(m).unwrap()));
    }
    for (i, (s, _)) in common::random_block_solids(7, RANDOM_DUALITY_FIXTURES).into_iter().enumerate() {
        solids.push((format!("random_{i}"), s));
    }
    let errors: Vec<String> = solids.par_iter().filter_map(|(n, s)| duality_suite(n, s).err()).collect();
    outcome(errors.is_empty(), format!("{} solids x 3 identities, failures {:?}", solids.len(), errors))
}

fn criterion_3() -> Outcome {
    let runs = family_runs();
    let mut profiles = std::collections::BTreeSet::new();
    let mut bad = Vec::new();
    for r in runs {
        profiles.insert(r.fixture.section_holes.clone());
        match &r.result {
            Ok((res, s1)) if s1.holds && res.annuli.iter().all(|a| a.holds()) => {}
            Ok((_, s1)) => bad.push(format!("{}: {}", r.fixture.name, s1.summary())),
            Err(e) => bad.push(format!("{}: {e}", r.fixture.name)),
        }
    }
    let required = [vec![0], vec![0, 0], vec![1], vec![0, 0, 1, 2]];
    let covered = required.iter().all(|p| profiles.contains(p));
    outcome(
        bad.is_empty() && covered && runs.len() >= MIN_SPLIT_FIXTURES,
        format!("{} fixtures, profiles covered {covered}, failures {:?}", runs.len(), bad),
    )
}

fn criterion_4() -> Outcome {
    let section = plane_section(&corte1().mesh(), &Plane::default()).unwrap();
    let d = decompose(&section).unwrap();
    let holes: Vec<usize> = d.order.iter().map(|&c| d.components[c].holes()).collect();
    let ordered = respects_interiority(&d, &d.order);
    outcome(holes == [0, 0, 1, 2] && ordered, format!("hole counts in order {holes:?}, interiority respected {ordered}"))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for depth in 3..=6 {
        for (name, t) in [("solenoid", gen_solenoid_tower(depth).unwrap()), ("whitehead", gen_whitehead_tower(depth).unwrap())] {
            let r = crookedness_report(&t, 2).unwrap();
            let text = r.to_text();
            let ok = (r.r_upper, r.cech_lower, r.c_estimate) == (1, 0, 1)
                && text.contains("CAVEAT: finite tower")
                && text.contains("non-cellularity");
            pass &= ok;
            if !ok {
                lines.push(format!("{name}@{depth}"));
            }
        }
    }
    outcome(pass, format!("solenoid and whitehead at depth 3..=6 give (1, 0, 1); failures {lines:?}"))
}

fn criterion_6() -> Outcome {
    let t = gen_nullity_tower();
    let upgraded = nullity_upgrade(&t);
    let balls_ok = match &upgraded {
        Ok(u) => u.stages.iter().enumerate().all(|(k, s)| {
            let m = s.as_mesh().unwrap();
            wildlab::z2_homology::ball_criterion(m).unwrap()
                && (k == 0 || wildlab::mesh_core::contained_in(m, t.stages[k - 1].as_mesh().unwrap()).is_empty())
        }),
        Err(_) => false,
    };
    let obstruction = nullity_upgrade(&gen_persistent_sphere_tower());
    let obstruction_ok = matches!(obstruction, Err(Error::H2Obstruction { stage: 1, .. }));
    outcome(
        balls_ok && obstruction_ok,
        format!(
            "filled tower of balls with containments {balls_ok}; persistent sphere -> {}",
            match obstruction {
                Err(e) => e.to_string(),
                Ok(_) => "no error".into(),
            }
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, s, expected) in [
        ("torus", gen_solid_torus_solid(), [1, 1]),
        ("genus-2", gen_handlebody_solid(2).unwrap(), [2, 2]),
    ] {
        let comp = compactify(&s.mesh, &s.bounding_box, Some(&s.complement)).unwrap();
        match boundary_domains(&comp) {
            Ok(d) => {
                let mut b = d.b1_closures;
                b.sort_unstable();
                let ok = d.rank_relation_holds() && d.frontiers_agree && d.mv.is_consistent() && b == expected;
                pass &= ok;
                details.push(format!("{name}: b1(N) = {} = {} + {}", d.b1_neighbourhood, b[0], b[1]));
            }
            Err(e) => {
                pass = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(pass, details.join("; "))
}

fn criterion_8() -> Outcome {
    let mut meshes: Vec<(String, MeshComplex, Plane)> =
        generator_meshes().into_iter().map(|(n, m)| (n, m, Plane::z(rat(1, 3)))).collect();
    meshes.extend(fixture_family().into_iter().map(|f| (f.name.clone(), f.mesh(), Plane::default())));
    let cut_failures: Vec<String> = meshes
        .par_iter()
        .filter_map(|(name, m, plane)| {
            let ok = (|| {
                let below = cut_halfspace(m, plane, Side::Below)?;
                let above = cut_halfspace(m, plane, Side::Above)?;
                Ok::<_, wildlab::MeshError>(betti(&merge(&[&below, &above])?) == betti(m))
            })();
            (!matches!(ok, Ok(true))).then(|| name.clone())
        })
        .collect();
    let w = slab_w();
    let s2_failures: Vec<String> = family_runs()
        .iter()
        .filter_map(|r| match &r.result {
            Ok((res, _)) if verify_s2(res, &[&res.m1, &w], &[&res.m2, &w]).is_contained() => None,
            _ => Some(r.fixture.name.clone()),
        })
        .collect();
    outcome(
        cut_failures.is_empty() && s2_failures.is_empty(),
        format!(
            "cut+merge on {} meshes, failures {:?}; S2 on {} splits, failures {:?}",
            meshes.len(),
            cut_failures,
            family_runs().len(),
            s2_failures
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    wildlab::init_thread_pool();
    let criteria: [Criterion; 8] = [
        ("homology oracle equivalence", criterion_1),
        ("duality suite", criterion_2),
        ("splitting inequality and annuli", criterion_3),
        ("corte1 planar decomposition", criterion_4),
        ("solenoid and Whitehead reports", criterion_5),
        ("nullity upgrade", criterion_6),
        ("surface-domain rank relation", criterion_7),
        ("round-trip stability", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        println!(
            "criterion {} {}: {} ({}; {:.1}s)",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
