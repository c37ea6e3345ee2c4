//! Exact triangulation validity.
//!
//! A face-closed collection of simplices is a geometric simplicial complex
//! iff the relative interiors of distinct simplices are pairwise disjoint.
//! If two relative interiors meet, a vertex of their intersection polytope
//! lies in the relative interiors of faces whose affine hulls meet in a
//! single point, so it is enough to test the transversal pairs
//! vertex/simplex, edge/edge (coplanar) and edge/triangle.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::complex::{MeshComplex, Simplex};
use super::predicates::{self as pred, HomPoint};
use super::spatial::BoxIndex;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    /// Pairs of maximal simplices whose intersection is not a common face.
    pub offending_pairs: Vec<(Simplex, Simplex)>,
    /// Simplices whose vertices are affinely dependent.
    pub degenerate: Vec<Simplex>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.offending_pairs.is_empty() && self.degenerate.is_empty()
    }
}

fn hom(mesh: &MeshComplex) -> Vec<HomPoint> {
    mesh.points().iter().map(HomPoint::new).collect()
}

fn is_degenerate(h: &[HomPoint], s: &Simplex) -> bool {
    let p = |i: usize| &h[s.vertices()[i] as usize];
    match s.dim() {
        2 => pred::collinear(p(0), p(1), p(2)),
        3 => pred::orient3d(p(0), p(1), p(2), p(3)) == 0,
        _ => false,
    }
}

/// Transversal relative-interior intersection of `a` (lower dimension) and `b`.
fn relints_cross(h: &[HomPoint], a: &Simplex, b: &Simplex) -> bool {
    if a.vertices().iter().any(|&v| b.contains_vertex(v)) {
        return false;
    }
    let pa = |i: usize| &h[a.vertices()[i] as usize];
    let pb = |i: usize| &h[b.vertices()[i] as usize];
    match (a.dim(), b.dim()) {
        (0, 1) => pred::in_open_segment(pa(0), pb(0), pb(1)),
        (0, 2) => pred::in_open_triangle(pa(0), pb(0), pb(1), pb(2)),
        (0, 3) => pred::in_open_tetrahedron(pa(0), [pb(0), pb(1), pb(2), pb(3)]),
        (1, 1) => pred::open_segments_cross(pa(0), pa(1), pb(0), pb(1)),
        (1, 2) => pred::open_segment_crosses_open_triangle(pa(0), pa(1), pb(0), pb(1), pb(2)),
        _ => false,
    }
}

/// Checks that the mesh is a geometric triangulation, using exact predicates.
pub fn validate_triangulation(mesh: &MeshComplex) -> ValidityReport {
    let c = mesh.complex();
    let h = hom(mesh);

    let mut degenerate: Vec<Simplex> = (2..4)
        .flat_map(|d| c.simplices(d).iter().filter(|s| is_degenerate(&h, s)).copied().collect::<Vec<_>>())
        .collect();
    degenerate.sort();

    // Witness pairs (lower-dimensional first).
    let mut witnesses: Vec<(Simplex, Simplex)> = Vec::new();

    // Coincident vertices.
    let mut by_point: Vec<u32> = (0..mesh.num_vertices() as u32).collect();
    by_point.sort_by(|a, b| mesh.point(*a).cmp(mesh.point(*b)));
    for w in by_point.windows(2) {
        if mesh.point(w[0]) == mesh.point(w[1]) {
            witnesses.push((Simplex::vertex(w[0]), Simplex::vertex(w[1])));
        }
    }

    let targets: Vec<Simplex> = (1..4).flat_map(|d| c.simplices(d).iter().copied()).collect();
    let target_index = BoxIndex::new(targets.iter().map(|s| mesh.float_box(s)).collect());
    let queries: Vec<Simplex> = (0..2).flat_map(|d| c.simplices(d).iter().copied()).collect();
    let found: Vec<(Simplex, Simplex)> = queries
        .par_iter()
        .flat_map_iter(|q| {
            let b = mesh.float_box(q);
            let h = &h;
            let targets = &targets;
            target_index.query(&b).into_iter().filter_map(move |i| {
                let t = targets[i];
                let wanted = match q.dim() {
                    0 => true,
                    // Edge/edge pairs are visited twice; keep one orientation.
                    1 => t.dim() == 2 || (t.dim() == 1 && *q < t),
                    _ => false,
                };
                (wanted && relints_cross(h, q, &t)).then_some((*q, t))
            })
        })
        .collect();
    witnesses.extend(found);

    let offending_pairs = maximal_pairs(mesh, &witnesses);
    ValidityReport {
        offending_pairs,
        degenerate,
    }
}

fn maximal_pairs(mesh: &MeshComplex, witnesses: &[(Simplex, Simplex)]) -> Vec<(Simplex, Simplex)> {
    if witnesses.is_empty() {
        return Vec::new();
    }
    let c = mesh.complex();
    let maximal = c.maximal_simplices();
    let mut cofaces: Vec<Vec<Vec<usize>>> = (0..4).map(|d| vec![Vec::new(); c.count(d)]).collect();
    for (mi, m) in maximal.iter().enumerate() {
        for f in m.faces() {
            cofaces[f.dim()][c.index_of(&f).expect("face-closed")].push(mi);
        }
    }
    let mut out = BTreeSet::new();
    for (f, g) in witnesses {
        let fi = &cofaces[f.dim()][c.index_of(f).expect("face-closed")];
        let gi = &cofaces[g.dim()][c.index_of(g).expect("face-closed")];
        for &a in fi {
            for &b in gi {
                if a != b {
                    let (x, y) = if maximal[a] <= maximal[b] { (a, b) } else { (b, a) };
                    out.insert((maximal[x], maximal[y]));
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::geometry::{rat, RationalPoint3};

    fn tet_points(dx: num_rational::BigRational) -> Vec<RationalPoint3> {
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
            .iter()
            .map(|&(x, y, z)| RationalPoint3::from_ints(x, y, z))
            .map(|p| {
                let x = &p.x + &dx;
                p.with_coord(0, x)
            })
            .collect()
    }

    #[test]
    fn single_tetrahedron_is_valid() {
        let m = MeshComplex::new(tet_points(rat(0, 1)), [Simplex::new(&[0, 1, 2, 3])]).unwrap();
        assert!(validate_triangulation(&m).is_valid());
    }

    #[test]
    fn tetrahedra_sharing_a_triangle_are_valid() {
        let mut pts = tet_points(rat(0, 1));
        pts.push(RationalPoint3::from_ints(1, 1, 1));
        let m = MeshComplex::new(pts, [Simplex::new(&[0, 1, 2, 3]), Simplex::new(&[1, 2, 3, 4])]).unwrap();
        assert!(validate_triangulation(&m).is_valid());
    }

    #[test]
    fn translated_overlap_gives_one_pair() {
        let mut pts = tet_points(rat(0, 1));
        pts.extend(tet_points(rat(1, 2)));
        let m = MeshComplex::new(pts, [Simplex::new(&[0, 1, 2, 3]), Simplex::new(&[4, 5, 6, 7])]).unwrap();
        let r = validate_triangulation(&m);
        assert_eq!(r.offending_pairs.len(), 1);
        assert!(r.degenerate.is_empty());
    }

    #[test]
    fn flat_tetrahedron_is_degenerate() {
        let pts = vec![
            RationalPoint3::from_ints(0, 0, 0),
            RationalPoint3::from_ints(1, 0, 0),
            RationalPoint3::from_ints(0, 1, 0),
            RationalPoint3::from_ints(1, 1, 0),
        ];
        let m = MeshComplex::new(pts, [Simplex::new(&[0, 1, 2, 3])]).unwrap();
        let r = validate_triangulation(&m);
        assert!(!r.is_valid());
        assert!(r.degenerate.contains(&Simplex::new(&[0, 1, 2, 3])));
    }
}
