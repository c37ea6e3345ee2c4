//! Combinatorial manifold checks through vertex and edge links.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::complex::{Complex, MeshComplex, Simplex, UnionFind, VertexId};
use super::MeshError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldReport {
    pub is_3_manifold: bool,
    pub is_closed: bool,
    pub boundary_triangle_count: usize,
    pub offending_simplices: Vec<Simplex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub is_2_manifold: bool,
    pub boundary_edge_count: usize,
    pub offending_simplices: Vec<Simplex>,
}

/// True when the graph given by `edges` is a single path or cycle.
fn is_arc_or_circle(edges: &[(VertexId, VertexId)]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut degree: HashMap<VertexId, usize> = HashMap::new();
    for &(a, b) in edges {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    if degree.values().any(|&d| d > 2) {
        return false;
    }
    let ids: Vec<VertexId> = degree.keys().copied().collect();
    let pos: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind::new(ids.len());
    let mut components = ids.len();
    for &(a, b) in edges {
        if uf.union(pos[&a], pos[&b]) {
            components -= 1;
        }
    }
    components == 1
}

/// Link of a vertex in a 3-complex given as triangles; true if it is a disk or a 2-sphere.
/// Edge links are checked separately, so the link is already known to be a surface.
fn is_disk_or_sphere(triangles: &[[VertexId; 3]]) -> bool {
    if triangles.is_empty() {
        return false;
    }
    let mut edge_use: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    let mut verts = HashSet::new();
    for (i, t) in triangles.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            edge_use.entry((a.min(b), a.max(b))).or_default().push(i);
        }
        verts.extend(t.iter().copied());
    }
    if edge_use.values().any(|u| u.len() > 2) {
        return false;
    }
    let mut uf = UnionFind::new(triangles.len());
    let mut components = triangles.len();
    for u in edge_use.values() {
        if u.len() == 2 && uf.union(u[0], u[1]) {
            components -= 1;
        }
    }
    if components != 1 {
        return false;
    }
    let chi = verts.len() as i64 - edge_use.len() as i64 + triangles.len() as i64;
    let has_boundary = edge_use.values().any(|u| u.len() == 1);
    if has_boundary {
        chi == 1
    } else {
        chi == 2
    }
}

fn opposite(t: &Simplex, s: &Simplex) -> Vec<VertexId> {
    t.vertices().iter().copied().filter(|v| !s.contains_vertex(*v)).collect()
}

pub fn manifold_check(mesh: &MeshComplex) -> Result<ManifoldReport, MeshError> {
    complex_manifold_check(mesh.complex())
}

pub(crate) fn complex_manifold_check(c: &Complex) -> Result<ManifoldReport, MeshError> {
    if !c.is_pure3() {
        return Err(MeshError::NotPure("every simplex must be a face of a tetrahedron".into()));
    }
    let tets = c.simplices(3);
    let mut vertex_tets: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (i, t) in tets.iter().enumerate() {
        for &v in t.vertices() {
            vertex_tets.entry(v).or_default().push(i);
        }
    }

    let tri_counts = c.coface_counts(2);
    let mut offending: Vec<Simplex> = c
        .simplices(2)
        .iter()
        .zip(&tri_counts)
        .filter(|(_, &n)| n > 2)
        .map(|(s, _)| *s)
        .collect();

    let bad_edges: Vec<Simplex> = c
        .simplices(1)
        .par_iter()
        .filter(|e| {
            let v = e.vertices();
            let around: Vec<(VertexId, VertexId)> = vertex_tets[&v[0]]
                .iter()
                .map(|&i| &tets[i])
                .filter(|t| t.contains_vertex(v[1]))
                .map(|t| {
                    let o = opposite(t, e);
                    (o[0], o[1])
                })
                .collect();
            !is_arc_or_circle(&around)
        })
        .copied()
        .collect();
    offending.extend(bad_edges);

    let bad_vertices: Vec<Simplex> = c
        .simplices(0)
        .par_iter()
        .filter(|s| {
            let v = s.vertices()[0];
            let link: Vec<[VertexId; 3]> = vertex_tets[&v]
                .iter()
                .map(|&i| {
                    let o = opposite(&tets[i], s);
                    [o[0], o[1], o[2]]
                })
                .collect();
            !is_disk_or_sphere(&link)
        })
        .copied()
        .collect();
    offending.extend(bad_vertices);
    offending.sort();
    offending.dedup();

    let boundary_triangle_count = tri_counts.iter().filter(|&&n| n == 1).count();
    let is_3_manifold = offending.is_empty();
    Ok(ManifoldReport {
        is_3_manifold,
        is_closed: is_3_manifold && boundary_triangle_count == 0,
        boundary_triangle_count,
        offending_simplices: offending,
    })
}

/// Triangles lying in exactly one tetrahedron, as a closed surface mesh.
pub fn boundary_surface(mesh: &MeshComplex) -> Result<MeshComplex, MeshError> {
    let report = manifold_check(mesh)?;
    if !report.is_3_manifold {
        return Err(MeshError::NotManifold(format!(
            "{} offending simplices",
            report.offending_simplices.len()
        )));
    }
    Ok(mesh.restrict(boundary_triangles(mesh.complex())))
}

pub(crate) fn boundary_triangles(c: &Complex) -> Vec<Simplex> {
    let counts = c.coface_counts(2);
    c.simplices(2).iter().zip(counts).filter(|(_, n)| *n == 1).map(|(s, _)| *s).collect()
}

/// 2-manifold check for a pure 2-dimensional complex: every edge in at most
/// two triangles and every vertex link an arc or a circle. The empty
/// complex passes.
pub fn surface_check(mesh: &MeshComplex) -> SurfaceReport {
    complex_surface_check(mesh.complex())
}

pub(crate) fn complex_surface_check(c: &Complex) -> SurfaceReport {
    let mut offending: Vec<Simplex> = c.maximal_simplices().into_iter().filter(|s| s.dim() != 2).collect();
    let edge_counts = c.coface_counts(1);
    offending.extend(c.simplices(1).iter().zip(&edge_counts).filter(|(_, &n)| n > 2).map(|(s, _)| *s));
    let mut vertex_tris: HashMap<VertexId, Vec<(VertexId, VertexId)>> = HashMap::new();
    for t in c.simplices(2) {
        let v = t.vertices();
        vertex_tris.entry(v[0]).or_default().push((v[1], v[2]));
        vertex_tris.entry(v[1]).or_default().push((v[0], v[2]));
        vertex_tris.entry(v[2]).or_default().push((v[0], v[1]));
    }
    for (v, link) in &vertex_tris {
        if !is_arc_or_circle(link) {
            offending.push(Simplex::vertex(*v));
        }
    }
    offending.sort();
    offending.dedup();
    SurfaceReport {
        is_2_manifold: offending.is_empty(),
        boundary_edge_count: edge_counts.iter().filter(|&&n| n == 1).count(),
        offending_simplices: offending,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::geometry::RationalPoint3;

    fn pts(coords: &[(i64, i64, i64)]) -> Vec<RationalPoint3> {
        coords.iter().map(|&(x, y, z)| RationalPoint3::from_ints(x, y, z)).collect()
    }

    #[test]
    fn one_tetrahedron() {
        let m = MeshComplex::new(pts(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]), [Simplex::new(&[0, 1, 2, 3])])
            .unwrap();
        let r = manifold_check(&m).unwrap();
        assert!(r.is_3_manifold && !r.is_closed);
        assert_eq!(r.boundary_triangle_count, 4);
        let b = boundary_surface(&m).unwrap();
        assert_eq!(b.complex().counts(), [4, 6, 4, 0]);
    }

    #[test]
    fn glued_pair() {
        let m = MeshComplex::new(
            pts(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
            [Simplex::new(&[0, 1, 2, 3]), Simplex::new(&[1, 2, 3, 4])],
        )
        .unwrap();
        let r = manifold_check(&m).unwrap();
        assert!(r.is_3_manifold);
        assert_eq!(r.boundary_triangle_count, 6);
    }

    #[test]
    fn bowtie_vertex_is_not_a_manifold() {
        let m = MeshComplex::new(
            pts(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]),
            [Simplex::new(&[0, 1, 2, 3]), Simplex::new(&[0, 4, 5, 6])],
        )
        .unwrap();
        let r = manifold_check(&m).unwrap();
        assert!(!r.is_3_manifold);
        assert_eq!(r.offending_simplices, vec![Simplex::vertex(0)]);
    }

    #[test]
    fn non_pure_is_an_error() {
        let m = MeshComplex::new(
            pts(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (5, 5, 5)]),
            [Simplex::new(&[0, 1, 2, 3]), Simplex::new(&[3, 4])],
        )
        .unwrap();
        assert!(matches!(manifold_check(&m), Err(MeshError::NotPure(_))));
    }
}
