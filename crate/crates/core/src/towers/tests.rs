use super::*;

#[test]
fn generator_betti_numbers() {
    assert_eq!(betti(&gen_ball()), [1, 0, 0, 0]);
    assert_eq!(betti(&gen_box()), [1, 0, 0, 0]);
    assert_eq!(betti(&gen_solid_torus()), [1, 1, 0, 0]);
    assert_eq!(betti(&gen_handlebody(2).unwrap()), [1, 2, 0, 0]);
    assert_eq!(betti(&gen_handlebody(0).unwrap()), [1, 0, 0, 0]);
    assert_eq!(betti(&gen_perforated_ball(2).unwrap()), [1, 0, 2, 0]);
    assert!(gen_handlebody(-1).is_err());
    assert!(gen_perforated_ball(MAX_GENERATOR_PARAM + 1).is_err());
    assert!(gen_solenoid_tower(1).is_err());
    for m in [gen_ball(), gen_box(), gen_solid_torus()] {
        assert!(m.is_canonical());
    }
}

#[test]
fn algebraic_towers() {
    for t in [gen_solenoid_tower(4).unwrap(), gen_whitehead_tower(4).unwrap()] {
        assert_eq!(tower_ranks(&t).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(r_upper_bound(&t, None).unwrap().0, 1);
        assert!(t.links.iter().all(|l| matches!(l, Link::Algebraic(m) if m.rank() == 0)));
        let ev = eventual_rank(&t, 1, 2).unwrap();
        assert_eq!(ev.rank, 0);
        assert!(ev.stabilized);
        let r = crookedness_report(&t, 2).unwrap();
        assert_eq!((r.r_upper, r.cech_lower, r.c_estimate), (1, 0, 1));
        let text = r.to_text();
        assert!(text.contains("CAVEAT: finite tower"));
        assert!(text.contains("non-cellularity"));
        assert!(matches!(cellularity_certificate(&t), Err(Error::Tower(_))));
        assert!(eventual_rank(&t, 2, 2).is_err());
    }
}

#[test]
fn identity_torus_tower() {
    let t = gen_identity_torus_tower(3).unwrap();
    assert_eq!(tower_ranks(&t).unwrap(), vec![1, 1, 1]);
    let ev = eventual_rank(&t, 1, 2).unwrap();
    assert_eq!(ev.rank, 1);
    assert_eq!(ev.ranks, vec![vec![1, 1, 1], vec![1, 1], vec![1]]);
    let r = crookedness_report(&t, 2).unwrap();
    assert_eq!(r.c_estimate, 0);
    let cert = cellularity_certificate(&t).unwrap();
    assert!(!cert.certified && cert.filled.is_none());
}

#[test]
fn ball_tower_is_certified() {
    let t = gen_ball_tower(3).unwrap();
    assert_eq!(tower_ranks(&t).unwrap(), vec![0, 0, 0]);
    let r = crookedness_report(&t, 2).unwrap();
    assert_eq!((r.r_upper, r.cech_lower, r.c_estimate), (0, 0, 0));
    assert!(cellularity_certificate(&t).unwrap().certified);
    let up = nullity_upgrade(&t).unwrap();
    for (a, b) in up.stages.iter().zip(&t.stages) {
        assert_eq!(a.as_mesh(), b.as_mesh());
    }
}

#[test]
fn link_must_stay_inside_interior() {
    let s = gen_ball_solid();
    let t = Tower {
        stages: vec![Stage::mesh(s.mesh.clone()), Stage::mesh(s.mesh)],
        links: vec![Link::Subcomplex(None)],
        notes: Vec::new(),
    };
    assert!(matches!(t.validate(), Err(Error::Tower(_))));
    let bad = Tower {
        stages: vec![Stage::Rank(2), Stage::Rank(1)],
        links: vec![Link::Algebraic(Gf2Matrix::zeros(1, 1))],
        notes: Vec::new(),
    };
    assert!(bad.validate().is_err());
}

#[test]
fn nullity_upgrade_fills_holes() {
    let t = gen_nullity_tower();
    assert_eq!(tower_ranks(&t).unwrap(), vec![0, 0, 0]);
    let cert = cellularity_certificate(&t).unwrap();
    assert_eq!(cert.balls, vec![false; 3]);
    assert!(!cert.certified && cert.filled.is_some());
    let up = nullity_upgrade(&t).unwrap();
    for (k, s) in up.stages.iter().enumerate() {
        let m = s.as_mesh().unwrap();
        assert!(ball_criterion(m).unwrap());
        if k > 0 {
            assert!(contained_in(m, t.stages[k - 1].as_mesh().unwrap()).is_empty());
        }
    }
}

#[test]
fn persistent_sphere_is_an_obstruction() {
    let t = gen_persistent_sphere_tower();
    t.validate().unwrap();
    assert_eq!(t.link_map(0, 2).unwrap().rank(), 0);
    assert_eq!(t.link_map(1, 2).unwrap().rank(), 1);
    assert!(matches!(nullity_upgrade(&t), Err(Error::H2Obstruction { stage: 1, rank: 1 })));
}

#[test]
fn manifest_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, t) in [
        ("solenoid", gen_solenoid_tower(3).unwrap()),
        ("torus", gen_identity_torus_tower(2).unwrap()),
        ("balls", gen_ball_tower(2).unwrap()),
    ] {
        let path = write_tower_dir(&t, dir.path().join(name)).unwrap();
        let back = read_tower_file(&path).unwrap();
        assert_eq!(tower_ranks(&back).unwrap(), tower_ranks(&t).unwrap());
        assert_eq!(back.notes, t.notes);
        assert_eq!(
            eventual_rank(&back, 1, 2).unwrap().rank,
            eventual_rank(&t, 1, 2).unwrap().rank
        );
    }
    let err = read_tower("TOWER 1\nstage 0 rank 1\nstage 1 rank 1\n", dir.path()).unwrap_err();
    assert!(matches!(err, Error::Format { .. }));
    assert!(read_tower("TOWER 2\n", dir.path()).is_err());
}
