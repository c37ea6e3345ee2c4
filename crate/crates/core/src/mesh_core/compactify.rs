//! One-point compactification of a boxed mesh into a triangulated 3-sphere,
//! and filling the bounded holes of a perforated ball.

use super::complex::{Complex, MeshComplex, Simplex, Subcomplex, VertexId};
use super::extrude::merge;
use super::geometry::AxisBox;
use super::manifold::boundary_triangles;
use super::MeshError;
use crate::z2_homology::{ball_criterion, betti, betti_complex};

/// `mesh ∪ complement` coned off at infinity.
#[derive(Clone, Debug)]
pub struct Compactification {
    /// The triangulated box: mesh and complement glued along the mesh boundary.
    pub finite: MeshComplex,
    /// `finite` plus the cone from `infinity` over the boundary of the box.
    pub sphere: Complex,
    /// The cone point; it is the only vertex without coordinates.
    pub infinity: VertexId,
    pub mesh: Subcomplex,
    /// Closure of the sphere minus the mesh: complement solid plus the cone.
    pub complement: Subcomplex,
    pub bounding_box: AxisBox,
}

impl Compactification {
    /// The complement as a complex on sphere vertex ids.
    pub fn complement_complex(&self) -> Complex {
        self.complement.to_complex(&self.sphere)
    }

    pub fn mesh_complex(&self) -> Complex {
        self.mesh.to_complex(&self.sphere)
    }
}

fn lies_on_box_face(bbox: &AxisBox, pts: &[super::geometry::RationalPoint3]) -> bool {
    (0..3).any(|a| {
        pts.iter().all(|p| p.coord(a) == bbox.min.coord(a)) || pts.iter().all(|p| p.coord(a) == bbox.max.coord(a))
    })
}

/// Builds the 3-sphere `box ∪ {∞}` from `mesh` and a triangulation of the
/// closure of `box ∖ mesh`. Constrained tetrahedralization is not attempted,
/// so the complement has to be supplied; the voxel generators produce one.
pub fn compactify(
    mesh: &MeshComplex,
    bounding_box: &AxisBox,
    complement: Option<&MeshComplex>,
) -> Result<Compactification, MeshError> {
    let complement = complement.ok_or_else(|| {
        MeshError::Compactify(
            "no complement triangulation supplied; pass a mesh of the closure of box minus mesh \
             that shares the mesh boundary (voxel solids provide one)"
                .into(),
        )
    })?;
    if let Some(p) = mesh.points().iter().find(|p| !bounding_box.strictly_contains(p)) {
        return Err(MeshError::Compactify(format!("mesh vertex {p} is not strictly inside the box")));
    }
    if let Some(p) = complement.points().iter().find(|p| !bounding_box.contains(p)) {
        return Err(MeshError::Compactify(format!("complement vertex {p} is outside the box")));
    }
    let mesh_boundary = boundary_triangles(mesh.complex());
    let shared = mesh.common_subcomplex(complement);
    if shared.complex().count(2) != mesh_boundary.len() || shared.complex().count(3) != 0 {
        return Err(MeshError::Compactify(
            "complement must meet the mesh exactly in its boundary surface".into(),
        ));
    }
    let finite = merge(&[mesh, complement])?;
    let outer = boundary_triangles(finite.complex());
    for t in &outer {
        if !lies_on_box_face(bounding_box, &finite.simplex_points(t)) {
            return Err(MeshError::Compactify("mesh and complement do not fill the box".into()));
        }
    }

    let infinity = finite.num_vertices() as VertexId;
    let cone = outer.iter().map(|t| t.join(&Simplex::vertex(infinity)).expect("triangle plus apex"));
    let sphere = Complex::from_simplices(finite.complex().all_simplices().copied().chain(cone.clone()));

    let mesh_sub = mesh.as_subcomplex_of(&finite)?;
    let comp_sub = complement.as_subcomplex_of(&finite)?;
    let mesh_part: Vec<Simplex> = mesh_sub.simplices(finite.complex()).collect();
    let comp_part: Vec<Simplex> = comp_sub.simplices(finite.complex()).chain(cone).collect();
    let result = Compactification {
        mesh: Subcomplex::from_simplices(&sphere, mesh_part.iter())?,
        complement: Subcomplex::from_simplices(&sphere, comp_part.iter())?,
        sphere,
        infinity,
        finite,
        bounding_box: bounding_box.clone(),
    };
    let b = betti_complex(&result.sphere);
    if b != [1, 0, 0, 1] {
        return Err(MeshError::Compactify(format!("result has Betti numbers {b:?}, not those of S^3")));
    }
    Ok(result)
}

/// `mesh` together with every complement component not containing infinity.
pub fn fill_holes(mesh: &MeshComplex, comp: &Compactification) -> Result<MeshComplex, MeshError> {
    let b = betti(mesh);
    if b[0] != 1 || b[1] != 0 {
        return Err(MeshError::FillHoles(format!(
            "not a perforated ball candidate: Betti numbers {b:?} need b0 = 1 and b1 = 0"
        )));
    }
    let complement = comp.complement_complex();
    let mut tets: Vec<Simplex> = comp.mesh.simplices(&comp.sphere).filter(|s| s.dim() == 3).collect();
    for component in complement.vertex_components() {
        if component.binary_search(&comp.infinity).is_ok() {
            continue;
        }
        let hole = complement.induced(|v| component.binary_search(&v).is_ok());
        let hole_tets: Vec<Simplex> = hole.simplices(3).to_vec();
        let hole_mesh = comp.finite.restrict(hole_tets.iter().copied());
        match ball_criterion(&hole_mesh) {
            Ok(true) => tets.extend(hole_tets),
            Ok(false) => {
                return Err(MeshError::FillHoles(format!(
                    "a bounded complement component has Betti numbers {:?}",
                    betti(&hole_mesh)
                )))
            }
            Err(e) => return Err(MeshError::FillHoles(e.to_string())),
        }
    }
    Ok(comp.finite.restrict(tets))
}
