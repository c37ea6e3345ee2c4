//! Half-space clipping against an axis-aligned plane.
//!
//! A tetrahedron crossing the plane is clipped to a convex cell whose faces
//! are the clipped triangles plus a cap on the plane. Each cell is
//! triangulated by pulling from its lexicographically least vertex, and
//! every polygonal face by a fan from its own least vertex. Both choices
//! depend only on the geometry of the shared face, so neighbouring cells
//! agree on their common faces.

use num_traits::Zero;
use rayon::prelude::*;

use super::complex::{MeshBuilder, MeshComplex, Simplex};
use super::geometry::{Plane, Rational, RationalPoint3, Side};
use super::MeshError;

/// Translates `mesh` by `-delta` along the plane axis so that no vertex lies
/// on the plane. `delta` is half the smallest positive distance from a vertex
/// coordinate to the plane, zero when the mesh is already in general
/// position, and one when every vertex lies on the plane.
pub fn general_position_shift(mesh: &MeshComplex, plane: &Plane) -> (MeshComplex, Rational) {
    let axis = plane.axis;
    let coords = mesh.points().iter().map(|p| p.coord(axis) - &plane.offset);
    let mut touching = false;
    let mut gap: Option<Rational> = None;
    for c in coords {
        if c.is_zero() {
            touching = true;
        } else if c > Rational::zero() && gap.as_ref().is_none_or(|g| &c < g) {
            gap = Some(c);
        }
    }
    if !touching {
        return (mesh.clone(), Rational::zero());
    }
    let delta = gap.map_or_else(super::geometry::one, |g| g * super::geometry::half());
    (mesh.translated(axis, &-delta.clone()), delta)
}

fn crossing_point(p: &RationalPoint3, q: &RationalPoint3, plane: &Plane) -> RationalPoint3 {
    let a = plane.axis;
    let t = (&plane.offset - p.coord(a)) / (q.coord(a) - p.coord(a));
    let mut x = p.lerp(q, &t);
    // Exact already; this keeps the representation canonical on the plane.
    *x.coord_mut(a) = plane.offset.clone();
    x
}

/// Fan triangulation of a convex polygon from its least vertex.
fn fan(poly: &[RationalPoint3]) -> Vec<[RationalPoint3; 3]> {
    let start = (0..poly.len()).min_by(|&i, &j| poly[i].cmp(&poly[j])).expect("nonempty polygon");
    let n = poly.len();
    (1..n - 1)
        .map(|k| {
            [
                poly[start].clone(),
                poly[(start + k) % n].clone(),
                poly[(start + k + 1) % n].clone(),
            ]
        })
        .collect()
}

/// Orders the cap vertices from the segments each clipped face contributes.
fn chain(segments: &[(RationalPoint3, RationalPoint3)]) -> Vec<RationalPoint3> {
    let mut out = vec![segments[0].0.clone(), segments[0].1.clone()];
    let mut used = vec![false; segments.len()];
    used[0] = true;
    while out.len() < segments.len() {
        let last = out.last().expect("nonempty").clone();
        let (i, next) = segments
            .iter()
            .enumerate()
            .find_map(|(i, (a, b))| {
                if used[i] {
                    None
                } else if *a == last {
                    Some((i, b.clone()))
                } else if *b == last {
                    Some((i, a.clone()))
                } else {
                    None
                }
            })
            .expect("cap segments form a cycle");
        used[i] = true;
        out.push(next);
    }
    out
}

/// Pieces of one tetrahedron on the kept side, as point quadruples.
fn clip_tet(pts: &[RationalPoint3], sides: &[i8], keep: i8, plane: &Plane) -> Vec<[RationalPoint3; 4]> {
    if sides.iter().all(|&s| s == keep) {
        return vec![[pts[0].clone(), pts[1].clone(), pts[2].clone(), pts[3].clone()]];
    }
    if sides.iter().all(|&s| s != keep) {
        return Vec::new();
    }
    let mut faces: Vec<Vec<RationalPoint3>> = Vec::new();
    let mut cap_segments = Vec::new();
    for skip in 0..4 {
        let tri: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
        let mut poly = Vec::new();
        let mut crossings = Vec::new();
        for k in 0..3 {
            let (p, q) = (tri[k], tri[(k + 1) % 3]);
            if sides[p] == keep {
                poly.push(pts[p].clone());
            }
            if sides[p] != sides[q] {
                let x = crossing_point(&pts[p], &pts[q], plane);
                crossings.push(x.clone());
                poly.push(x);
            }
        }
        if crossings.len() == 2 {
            cap_segments.push((crossings[0].clone(), crossings[1].clone()));
        }
        if poly.len() >= 3 {
            faces.push(poly);
        }
    }
    faces.push(chain(&cap_segments));

    let apex = faces.iter().flatten().min().expect("nonempty cell").clone();
    let mut out = Vec::new();
    for face in &faces {
        if face.contains(&apex) {
            continue;
        }
        for [a, b, c] in fan(face) {
            out.push([apex.clone(), a, b, c]);
        }
    }
    out
}

fn check_general_position(mesh: &MeshComplex, plane: &Plane) -> Result<Vec<i8>, MeshError> {
    let sides: Vec<i8> = mesh.points().iter().map(|p| plane.side_of(p)).collect();
    if let Some(v) = sides.iter().position(|&s| s == 0) {
        return Err(MeshError::VertexOnPlane { vertex: v as u32 });
    }
    Ok(sides)
}

/// Triangulated intersection of a pure 3-dimensional mesh with the closed
/// half-space on `side` of `plane`.
pub fn cut_halfspace(mesh: &MeshComplex, plane: &Plane, side: Side) -> Result<MeshComplex, MeshError> {
    if mesh.is_empty() {
        return Ok(MeshComplex::empty());
    }
    if !mesh.complex().is_pure3() {
        return Err(MeshError::NotPure("cut_halfspace expects a solid mesh".into()));
    }
    let sides = check_general_position(mesh, plane)?;
    let keep = side.sign();
    let pieces: Vec<Vec<[RationalPoint3; 4]>> = mesh
        .tetrahedra()
        .par_iter()
        .map(|t| {
            let pts = mesh.simplex_points(t);
            let s: Vec<i8> = t.vertices().iter().map(|&v| sides[v as usize]).collect();
            clip_tet(&pts, &s, keep, plane)
        })
        .collect();
    let mut builder = MeshBuilder::default();
    for tet in pieces.iter().flatten() {
        builder.add_simplex(tet);
    }
    Ok(builder.build())
}

/// The triangulated 2-complex `mesh ∩ plane`, with the same triangulation
/// that both halves of [`cut_halfspace`] induce on the plane.
pub fn plane_section(mesh: &MeshComplex, plane: &Plane) -> Result<MeshComplex, MeshError> {
    let below = cut_halfspace(mesh, plane, Side::Below)?;
    let on_plane = |s: &Simplex| s.vertices().iter().all(|&v| plane.side_of(below.point(v)) == 0);
    let tris: Vec<Simplex> = below.complex().simplices(2).iter().copied().filter(on_plane).collect();
    Ok(below.restrict(tris))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::geometry::{int, rat};
    use crate::mesh_core::validate::validate_triangulation;

    fn tet(coords: [(i64, i64, i64); 4]) -> MeshComplex {
        let pts = coords.iter().map(|&(x, y, z)| RationalPoint3::from_ints(x, y, z)).collect();
        MeshComplex::new(pts, [Simplex::new(&[0, 1, 2, 3])]).unwrap()
    }

    #[test]
    fn shift_examples() {
        let m = tet([(0, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 2)]);
        let (s, d) = general_position_shift(&m, &Plane::default());
        assert!(d.is_zero());
        assert_eq!(s, m);

        let m = tet([(0, 0, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]);
        let (s, d) = general_position_shift(&m, &Plane::default());
        assert_eq!(d, rat(1, 2));
        assert!(s.points().iter().all(|p| !p.z.is_zero()));

        let pts = vec![
            RationalPoint3::new(int(0), int(0), int(0)),
            RationalPoint3::new(int(1), int(0), rat(1, 4)),
            RationalPoint3::new(int(0), int(1), int(1)),
            RationalPoint3::new(int(0), int(0), int(-2)),
        ];
        let m = MeshComplex::new(pts, [Simplex::new(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(general_position_shift(&m, &Plane::default()).1, rat(1, 8));
    }

    #[test]
    fn vertex_on_plane_is_rejected() {
        let m = tet([(0, 0, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]);
        assert!(matches!(
            cut_halfspace(&m, &Plane::default(), Side::Below),
            Err(MeshError::VertexOnPlane { .. })
        ));
    }

    #[test]
    fn one_vertex_above() {
        let m = tet([(0, 0, -1), (2, 0, -1), (0, 2, -1), (0, 0, 1)]);
        let below = cut_halfspace(&m, &Plane::default(), Side::Below).unwrap();
        assert!(validate_triangulation(&below).is_valid());
        assert_eq!(below.tetrahedra().len(), 3);
        let above = cut_halfspace(&m, &Plane::default(), Side::Above).unwrap();
        assert_eq!(above.tetrahedra().len(), 1);
        let sec = plane_section(&m, &Plane::default()).unwrap();
        assert_eq!(sec.complex().counts(), [3, 3, 1, 0]);
    }

    #[test]
    fn untouched_when_below() {
        let m = tet([(0, 0, -1), (2, 0, -1), (0, 2, -1), (0, 0, -3)]);
        let below = cut_halfspace(&m, &Plane::default(), Side::Below).unwrap();
        assert_eq!(below, m.canonical());
        assert!(plane_section(&m, &Plane::default()).unwrap().is_empty());
    }
}
