//! Property tests for the stated invariants of each module.

mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wildlab::mesh_core::io::{read_mesh, write_mesh};
use wildlab::mesh_core::voxel::{voxel_mesh, VoxelGrid};
use wildlab::mesh_core::{
    barycentric_subdivision_complex, int, plane_section, rat, Complex, Plane, Rational, RationalPoint3, Simplex,
    Subcomplex,
};
use wildlab::planar_surface::{decompose, order_components, respects_interiority};
use wildlab::splitting::fixtures::frame_mesh;
use wildlab::splitting::{choose_epsilon, split, verify_s1, verify_s2, SplitFrame, SplitParams};
use wildlab::towers::{composite_maps, crookedness_report, eventual_rank, tower_ranks, Link, Stage, Tower};
use wildlab::z2_homology::{
    betti_complex, euler_from_betti, induced_map_complex, relative_betti_complex, Gf2Matrix,
};

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(rows, cols);
    let density = rng.gen_range(0.1..0.9);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Closure of a random subset of the maximal simplices.
fn random_subcomplex(c: &Complex, rng: &mut ChaCha8Rng, keep: f64) -> Complex {
    let picked: Vec<Simplex> = c.maximal_simplices().into_iter().filter(|_| rng.gen_bool(keep)).collect();
    Complex::from_simplices(picked)
}

fn num_vertices(c: &Complex) -> u32 {
    c.simplices(0).iter().map(|v| v.vertices()[0] + 1).max().unwrap_or(0)
}

fn slab_w() -> wildlab::mesh_core::MeshComplex {
    let grid = VoxelGrid::new(RationalPoint3::new(int(-1), int(-1), rat(-3, 8)), [int(2), int(2), rat(3, 4)]);
    voxel_mesh(&[[0, 0, 0]], &grid)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn betti_matches_oracle_and_euler(seed in any::<u64>()) {
        let c = common::random_complex(seed, 40);
        let b = betti_complex(&c);
        prop_assert_eq!(b, common::oracle_betti(&c));
        prop_assert_eq!(euler_from_betti(&b), common::euler(&c));
    }

    #[test]
    fn betti_invariant_under_relabelling(seed in any::<u64>()) {
        let c = common::random_complex(seed, 40);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<u32> = (0..num_vertices(&c)).map(|v| v * 3 + 7).collect();
        perm.shuffle(&mut rng);
        let relabelled = c.relabel(|v| perm[v as usize]).unwrap();
        prop_assert_eq!(betti_complex(&relabelled), betti_complex(&c));
    }

    #[test]
    fn disjoint_union_adds(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (common::random_complex(a, 20), common::random_complex(b, 20));
        let shift = num_vertices(&x);
        let y_shifted = y.relabel(|v| v + shift).unwrap();
        let union = Complex::from_simplices(x.all_simplices().chain(y_shifted.all_simplices()).copied());
        let (bx, by) = (betti_complex(&x), betti_complex(&y));
        prop_assert_eq!(betti_complex(&union), std::array::from_fn(|d| bx[d] + by[d]));
    }

    #[test]
    fn relative_homology_euler_telescopes(seed in any::<u64>()) {
        let n = common::random_complex(seed, 40);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let a = random_subcomplex(&n, &mut rng, 0.4);
        let sub = Subcomplex::from_simplices(&n, a.all_simplices()).unwrap();
        let (ba, bn, brel) = (betti_complex(&a), betti_complex(&n), relative_betti_complex(&n, &sub).unwrap());
        let alternating: i64 = (0..4)
            .map(|d| {
                let t = ba[d] as i64 - bn[d] as i64 + brel[d] as i64;
                if d % 2 == 0 { t } else { -t }
            })
            .sum();
        prop_assert_eq!(alternating, 0);
    }

    #[test]
    fn gf2_rank_is_transpose_and_permutation_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rows, cols) = (rng.gen_range(0..40), rng.gen_range(0..140));
        let m = random_matrix(&mut rng, rows, cols);
        let r = m.rank();
        prop_assert!(r <= rows.min(cols));
        prop_assert_eq!(m.transpose().rank(), r);
        let mut order: Vec<usize> = (0..rows).collect();
        order.shuffle(&mut rng);
        let mut permuted = Gf2Matrix::zeros(rows, cols);
        for (i, &src) in order.iter().enumerate() {
            for c in 0..cols {
                permuted.set(i, c, m.get(src, c));
            }
        }
        prop_assert_eq!(permuted.rank(), r);
    }

    #[test]
    fn random_algebraic_towers_respect_bounds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let depth = rng.gen_range(2..7);
        let ranks: Vec<usize> = (0..depth).map(|_| rng.gen_range(0..5)).collect();
        let links = (0..depth - 1).map(|k| Link::Algebraic(random_matrix(&mut rng, ranks[k], ranks[k + 1]))).collect();
        let t = Tower { stages: ranks.iter().map(|&r| Stage::Rank(r)).collect(), links, notes: Vec::new() };
        prop_assert_eq!(tower_ranks(&t).unwrap(), ranks.clone());
        let window = rng.gen_range(1..4);
        let ev = eventual_rank(&t, 1, window).unwrap();
        // Bounded by the tail the maximising stage ranges over; an early
        // trivial stage says nothing about later ones.
        let tail = (window + 1).min(depth);
        prop_assert!(ev.rank <= *ranks[depth - tail..].iter().min().unwrap());
        for row in &ev.ranks {
            prop_assert!(row.windows(2).all(|w| w[0] >= w[1]));
        }
        let report = crookedness_report(&t, window).unwrap();
        prop_assert!(report.r_upper >= report.cech_lower);
        // Composites agree with multiplying out the links directly.
        let maps = composite_maps(&t, 1).unwrap();
        for k in 0..depth - 1 {
            let direct = maps[k][0].mul(&t.link_map(k, 1).unwrap());
            prop_assert_eq!(&maps[k][1], &direct);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn betti_invariant_under_subdivision(seed in any::<u64>()) {
        let c = common::random_complex(seed, 12);
        let (sd, _) = barycentric_subdivision_complex(&c);
        prop_assert_eq!(betti_complex(&sd), betti_complex(&c));
    }

    #[test]
    fn induced_maps_are_functorial(seed in any::<u64>()) {
        let c = common::random_complex(seed, 30);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf00d);
        let a = random_subcomplex(&c, &mut rng, 0.6);
        let m = rng.gen_range(4..num_vertices(&c).max(5));
        let collapse = |v: u32| v % m;
        let images: Vec<Simplex> = c
            .all_simplices()
            .map(|s| {
                let mut vs: Vec<u32> = s.vertices().iter().map(|&v| collapse(v)).collect();
                vs.sort_unstable();
                vs.dedup();
                Simplex::new(&vs)
            })
            .collect();
        let target = Complex::from_simplices(images);
        for d in 0..3 {
            let f = induced_map_complex(&a, &c, Some, d).unwrap();
            let g = induced_map_complex(&c, &target, |v| Some(collapse(v)), d).unwrap();
            let gf = induced_map_complex(&a, &target, |v| Some(collapse(v)), d).unwrap();
            prop_assert_eq!(&gf.matrix, &g.matrix.mul(&f.matrix));
            prop_assert!(gf.rank() <= f.rank().min(g.rank()));
        }
    }

    #[test]
    fn mesh3_round_trip(seed in any::<u64>()) {
        let (solid, _) = common::random_block_solids(seed, 1).pop().unwrap();
        let text = write_mesh(&solid.mesh);
        let back = read_mesh(&text).unwrap();
        prop_assert_eq!(write_mesh(&back), text);
        prop_assert_eq!(&back, &solid.mesh);
    }

    #[test]
    fn planar_order_respects_interiority(seed in any::<u64>(), size in 3usize..14) {
        let cells = common::random_frame_cells(seed, size);
        let section = plane_section(&frame_mesh(&cells), &Plane::z(Rational::from_integer(0.into()))).unwrap();
        let d = decompose(&section).unwrap();
        let order = order_components(&d);
        prop_assert!(respects_interiority(&d, &order));
        prop_assert!(respects_interiority(&d, &d.order));
        for (i, p) in d.parent.iter().enumerate() {
            if let Some(j) = *p {
                prop_assert!(d.is_interior(i, j));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn splitting_inequality_on_random_frames(seed in any::<u64>(), size in 2usize..8) {
        let n = frame_mesh(&common::random_frame_cells(seed, size));
        let res = split(&n, &SplitFrame::default(), &SplitParams::default());
        prop_assume!(res.is_ok());
        let report = verify_s1(&res.unwrap()).unwrap();
        prop_assert!(report.holds && report.chain_holds);
    }

    #[test]
    fn s2_survives_halving_epsilon(seed in any::<u64>(), size in 2usize..6) {
        let n = frame_mesh(&common::random_frame_cells(seed, size));
        let w = slab_w();
        let eps = choose_epsilon(&n, &[&w]);
        prop_assume!(eps.is_ok());
        let eps = eps.unwrap();
        let res = split(&n, &SplitFrame::default(), &SplitParams::with_epsilon(eps.clone())).unwrap();
        prop_assume!(verify_s2(&res, &[&res.m1, &w], &[&res.m2, &w]).is_contained());
        let half = split(&n, &SplitFrame::default(), &SplitParams::with_epsilon(eps / Rational::from_integer(2.into())))
            .unwrap();
        prop_assert!(verify_s2(&half, &[&half.m1, &w], &[&half.m2, &w]).is_contained());
    }
}
