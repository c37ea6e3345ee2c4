//! Exact point-set containment of solid meshes.
//!
//! A closed tetrahedron `T` lies in the polyhedron `|W|` of a pure
//! 3-dimensional mesh iff no boundary triangle of `W` meets the open
//! tetrahedron and the centroid of `T` lies in `|W|`: the open tetrahedron
//! is connected and misses the frontier, so it is inside or outside as a
//! whole.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::complex::{MeshComplex, Simplex};
use super::geometry::{FloatBox, Rational, RationalPoint3};
use super::manifold::boundary_triangles;
use super::predicates::{self as pred, HomPoint};
use super::spatial::BoxIndex;

/// Affine constraint `a·s + b·t + c > 0` (strict) or `>= 0`.
#[derive(Clone)]
struct Constraint {
    a: Rational,
    b: Rational,
    c: Rational,
    strict: bool,
}

/// Fourier–Motzkin feasibility of a system in the two unknowns `s`, `t`.
fn feasible(mut cons: Vec<Constraint>) -> bool {
    for var in 0..2 {
        let coef = |k: &Constraint| if var == 0 { k.a.clone() } else { k.b.clone() };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for k in cons {
            let c = coef(&k);
            if c.is_positive() {
                pos.push(k);
            } else if c.is_negative() {
                neg.push(k);
            } else {
                rest.push(k);
            }
        }
        for p in &pos {
            for n in &neg {
                let (wp, wn) = (-coef(n), coef(p));
                rest.push(Constraint {
                    a: &p.a * &wp + &n.a * &wn,
                    b: &p.b * &wp + &n.b * &wn,
                    c: &p.c * &wp + &n.c * &wn,
                    strict: p.strict || n.strict,
                });
            }
        }
        cons = rest;
    }
    cons.iter().all(|k| if k.strict { k.c.is_positive() } else { !k.c.is_negative() })
}

fn sub(p: &RationalPoint3, q: &RationalPoint3) -> [Rational; 3] {
    [&p.x - &q.x, &p.y - &q.y, &p.z - &q.z]
}

fn det3(u: &[Rational; 3], v: &[Rational; 3], w: &[Rational; 3]) -> Rational {
    &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0])
}

/// Whether the closed triangle `f` meets the open tetrahedron `t`.
fn triangle_meets_open_tet(f: &[RationalPoint3; 3], t: &[RationalPoint3; 4]) -> bool {
    let zero = Rational::zero;
    let one = super::geometry::one();
    let mut cons = vec![
        Constraint { a: one.clone(), b: zero(), c: zero(), strict: false },
        Constraint { a: zero(), b: one.clone(), c: zero(), strict: false },
        Constraint { a: -one.clone(), b: -one.clone(), c: one, strict: false },
    ];
    let d1 = sub(&f[1], &f[0]);
    let d2 = sub(&f[2], &f[0]);
    for j in 0..4 {
        let face: Vec<&RationalPoint3> = (0..4).filter(|&i| i != j).map(|i| &t[i]).collect();
        let (u, v) = (sub(face[1], face[0]), sub(face[2], face[0]));
        let sign = det3(&u, &v, &sub(&t[j], face[0]));
        let flip = sign.is_negative();
        let orient = |x: Rational| if flip { -x } else { x };
        cons.push(Constraint {
            a: orient(det3(&u, &v, &d1)),
            b: orient(det3(&u, &v, &d2)),
            c: orient(det3(&u, &v, &sub(&f[0], face[0]))),
            strict: true,
        });
    }
    feasible(cons)
}

struct Target<'a> {
    mesh: &'a MeshComplex,
    hom: Vec<HomPoint>,
    tets: HashSet<Vec<RationalPoint3>>,
    tet_index: BoxIndex,
    boundary: Vec<Simplex>,
    boundary_index: BoxIndex,
}

impl<'a> Target<'a> {
    fn new(mesh: &'a MeshComplex) -> Self {
        let boundary = boundary_triangles(mesh.complex());
        Self {
            mesh,
            hom: mesh.points().iter().map(HomPoint::new).collect(),
            tets: mesh.tetrahedra().iter().map(|t| mesh.simplex_points(t)).collect(),
            tet_index: BoxIndex::new(mesh.tetrahedra().iter().map(|t| mesh.float_box(t)).collect()),
            boundary_index: BoxIndex::new(boundary.iter().map(|t| mesh.float_box(t)).collect()),
            boundary,
        }
    }

    fn contains_point(&self, p: &RationalPoint3) -> bool {
        let h = HomPoint::new(p);
        let b = FloatBox::of([p]);
        self.tet_index.query(&b).into_iter().any(|i| {
            let t = self.mesh.tetrahedra()[i].vertices();
            pred::in_closed_tetrahedron(&h, std::array::from_fn(|k| &self.hom[t[k] as usize]))
        })
    }

    fn contains_tet(&self, pts: &[RationalPoint3; 4]) -> bool {
        let mut sorted = pts.to_vec();
        sorted.sort();
        if self.tets.contains(&sorted) {
            return true;
        }
        if !self.contains_point(&RationalPoint3::centroid(pts.iter())) {
            return false;
        }
        let b = FloatBox::of(pts.iter());
        !self.boundary_index.query(&b).into_iter().any(|i| {
            let f = self.mesh.simplex_points(&self.boundary[i]);
            triangle_meets_open_tet(&[f[0].clone(), f[1].clone(), f[2].clone()], pts)
        })
    }
}

fn tet_points(mesh: &MeshComplex, t: &Simplex) -> [RationalPoint3; 4] {
    let p = mesh.simplex_points(t);
    [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()]
}

/// Tetrahedra of `source` that do not lie in `|target|`. Empty means the
/// solid part of `source` is contained in `target`.
pub fn contained_in(source: &MeshComplex, target: &MeshComplex) -> Vec<Simplex> {
    contained_in_any(source, &[target])
}

/// Tetrahedra of `source` not contained in any single member of `targets`.
/// A tetrahedron that only fits in the union of several members is
/// reported, so the test is conservative for unions.
pub fn contained_in_any(source: &MeshComplex, targets: &[&MeshComplex]) -> Vec<Simplex> {
    let prepared: Vec<Target> = targets.iter().map(|m| Target::new(m)).collect();
    source
        .tetrahedra()
        .par_iter()
        .filter(|t| {
            let pts = tet_points(source, t);
            !prepared.iter().any(|w| w.contains_tet(&pts))
        })
        .copied()
        .collect()
}
