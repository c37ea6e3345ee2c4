//! Barycentric subdivision.

use std::collections::HashMap;

use super::complex::{Complex, MeshComplex, Simplex, VertexId};
use super::geometry::RationalPoint3;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// First barycentric subdivision of an abstract complex. Vertex `i` of the
/// result is the barycentre of `labels[i]`; labels are listed by dimension
/// and then in the complex's order.
pub fn barycentric_subdivision_complex(c: &Complex) -> (Complex, Vec<Simplex>) {
    let labels: Vec<Simplex> = (0..4).flat_map(|d| c.simplices(d).iter().copied()).collect();
    let id: HashMap<Simplex, VertexId> = labels.iter().enumerate().map(|(i, s)| (*s, i as VertexId)).collect();
    let mut flags = Vec::new();
    for s in c.maximal_simplices() {
        let vs = s.vertices();
        for perm in permutations(vs.len()) {
            let chain: Vec<VertexId> = (1..=vs.len())
                .map(|k| {
                    let face: Vec<VertexId> = perm[..k].iter().map(|&i| vs[i]).collect();
                    id[&Simplex::new(&face)]
                })
                .collect();
            flags.push(Simplex::new(&chain));
        }
    }
    (Complex::from_simplices(flags), labels)
}

/// Barycentric subdivision of an embedded mesh, with exact barycentres.
pub fn barycentric_subdivision(mesh: &MeshComplex) -> MeshComplex {
    let (sd, labels) = barycentric_subdivision_complex(mesh.complex());
    let points: Vec<RationalPoint3> =
        labels.iter().map(|s| RationalPoint3::centroid(mesh.simplex_points(s).iter())).collect();
    MeshComplex::new(points, sd.maximal_simplices()).expect("labels are in range").canonical()
}
