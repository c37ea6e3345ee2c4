//! Prisms over planar regions, and coordinate-exact unions of meshes.

use super::complex::{MeshBuilder, MeshComplex};
use super::geometry::{Rational, RationalPoint3};
use super::manifold::surface_check;
use super::validate::validate_triangulation;
use super::MeshError;

/// `region × [z_lo, z_hi]` for a region lying in a horizontal plane.
///
/// Each prism is cut into three tetrahedra by the staircase rule: over an
/// edge `p < q` (lexicographic order of the base points) the side quad gets
/// the diagonal from `(p, z_lo)` to `(q, z_hi)`. The rule only looks at the
/// edge, so prisms sharing a side agree, also across separately extruded
/// regions.
pub fn extrude(region: &MeshComplex, z_lo: &Rational, z_hi: &Rational) -> Result<MeshComplex, MeshError> {
    extrude_layers(region, &[z_lo.clone(), z_hi.clone()])
}

/// Stacked extrusion with a vertex layer at every given height.
pub fn extrude_layers(region: &MeshComplex, heights: &[Rational]) -> Result<MeshComplex, MeshError> {
    if heights.len() < 2 || heights.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MeshError::BadInterval("heights must be strictly increasing".into()));
    }
    if region.is_empty() {
        return Ok(MeshComplex::empty());
    }
    let z0 = &region.points()[0].z;
    if region.points().iter().any(|p| &p.z != z0) {
        return Err(MeshError::InvalidTriangulation("region must lie in a plane z = const".into()));
    }
    let report = surface_check(region);
    if !report.is_2_manifold {
        return Err(MeshError::NotManifold(format!(
            "region has {} offending simplices",
            report.offending_simplices.len()
        )));
    }
    let lift = |v: u32, z: &Rational| {
        let p = region.point(v);
        RationalPoint3::new(p.x.clone(), p.y.clone(), z.clone())
    };
    let mut builder = MeshBuilder::default();
    for tri in region.complex().simplices(2) {
        let mut vs = tri.vertices().to_vec();
        vs.sort_by(|&a, &b| region.point(a).cmp(region.point(b)));
        let (a, b, c) = (vs[0], vs[1], vs[2]);
        for w in heights.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            builder.add_simplex(&[lift(a, lo), lift(b, lo), lift(c, lo), lift(c, hi)]);
            builder.add_simplex(&[lift(a, lo), lift(b, lo), lift(b, hi), lift(c, hi)]);
            builder.add_simplex(&[lift(a, lo), lift(a, hi), lift(b, hi), lift(c, hi)]);
        }
    }
    Ok(builder.build())
}

/// Union by exact vertex identification without a validity check.
pub fn merge_unchecked(meshes: &[&MeshComplex]) -> MeshComplex {
    let mut builder = MeshBuilder::default();
    for m in meshes {
        for s in m.complex().all_simplices() {
            builder.add_simplex(&m.simplex_points(s));
        }
    }
    builder.build()
}

/// Union by exact vertex identification; fails unless the result is a valid
/// triangulation, i.e. the inputs overlap only in shared subcomplexes.
pub fn merge(meshes: &[&MeshComplex]) -> Result<MeshComplex, MeshError> {
    let out = merge_unchecked(meshes);
    let report = validate_triangulation(&out);
    if !report.is_valid() {
        return Err(MeshError::InvalidTriangulation(format!(
            "{} overlapping pairs, {} degenerate simplices",
            report.offending_pairs.len(),
            report.degenerate.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::complex::Simplex;
    use crate::mesh_core::geometry::{int, rat};
    use crate::mesh_core::manifold::manifold_check;

    fn triangle(dx: i64) -> MeshComplex {
        let pts = vec![
            RationalPoint3::from_ints(dx, 0, 0),
            RationalPoint3::from_ints(dx + 1, 0, 0),
            RationalPoint3::from_ints(dx, 1, 0),
        ];
        MeshComplex::new(pts, [Simplex::new(&[0, 1, 2])]).unwrap()
    }

    #[test]
    fn single_prism() {
        let p = extrude(&triangle(0), &int(0), &int(1)).unwrap();
        assert_eq!(p.tetrahedra().len(), 3);
        assert!(validate_triangulation(&p).is_valid());
        assert!(manifold_check(&p).unwrap().is_3_manifold);
    }

    #[test]
    fn bad_interval() {
        assert!(extrude(&triangle(0), &int(1), &int(1)).is_err());
        let layered = extrude_layers(&triangle(0), &[int(0), rat(1, 3), int(1)]).unwrap();
        assert_eq!(layered.tetrahedra().len(), 6);
    }

    #[test]
    fn merge_is_idempotent_and_rejects_overlap() {
        let p = extrude(&triangle(0), &int(0), &int(1)).unwrap();
        assert_eq!(merge(&[&p, &p]).unwrap(), p);
        let q = p.translated(0, &rat(1, 3));
        assert!(merge(&[&p, &q]).is_err());
        let two = merge(&[&triangle(0), &triangle(5)]).unwrap();
        assert_eq!(two.complex().vertex_components().len(), 2);
    }
}
