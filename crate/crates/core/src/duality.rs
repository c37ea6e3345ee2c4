//! Duality identities checked as equalities of GF(2) ranks on explicit
//! complexes.
//!
//! Open complements are replaced by closed combinatorial models: the
//! complement subcomplex of a compactification, or, after one barycentric
//! subdivision, the full subcomplex on barycentres of simplices outside the
//! removed set. Both are deformation retracts of the open set; each report
//! records this assumption.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::mesh_core::{
    barycentric_subdivision_complex, boundary_surface, manifold_check, Compactification, Complex, MeshComplex,
    Simplex, Subcomplex, UnionFind,
};
use crate::z2_homology::{betti_complex, mayer_vietoris_complex, reduced_betti_complex, relative_betti_complex, MvReport};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub name: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub pass: bool,
    pub notes: Vec<String>,
    /// The complexes whose ranks were compared.
    pub witnesses: Vec<(String, Complex)>,
}

impl DualityReport {
    fn new(name: &str, left: Vec<usize>, right: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            pass: left == right,
            left,
            right,
            notes: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = format!(
            "{}\nleft {}\nright {}\n{}\n",
            self.name,
            join(&self.left),
            join(&self.right),
            if self.pass { "PASS" } else { "FAIL" }
        );
        for n in &self.notes {
            writeln!(out, "note {n}").unwrap();
        }
        out
    }
}

fn require_manifold(n: &MeshComplex) -> Result<()> {
    let report = manifold_check(n)?;
    if !report.is_3_manifold {
        return Err(Error::NotManifold(format!(
            "{} offending simplices",
            report.offending_simplices.len()
        )));
    }
    Ok(())
}

fn boundary_sub(n: &MeshComplex) -> Result<Subcomplex> {
    Ok(boundary_surface(n)?.as_subcomplex_of(n)?)
}

/// `rk H_d(N, ∂N) = rk H_{3-d}(N)` for `d = 0..3`.
pub fn lefschetz_check(n: &MeshComplex) -> Result<DualityReport> {
    require_manifold(n)?;
    let boundary = boundary_sub(n)?;
    let (rel, abs) = rayon::join(
        || relative_betti_complex(n.complex(), &boundary),
        || betti_complex(n.complex()),
    );
    let rel = rel?;
    let mut report = DualityReport::new("lefschetz: H_d(N, dN) = H_{3-d}(N)", rel.to_vec(), abs.iter().rev().copied().collect());
    report.witnesses.push(("N".into(), n.complex().clone()));
    report.witnesses.push(("dN".into(), boundary.to_complex(n.complex())));
    Ok(report)
}

/// `rk H̃_d(S³ - N) = rk H̃_{2-d}(N)` for `d = 0, 1, 2`.
pub fn alexander_check(n: &MeshComplex, comp: Option<&Compactification>) -> Result<DualityReport> {
    let comp = comp.ok_or_else(|| Error::Duality("alexander duality needs a compactification of N".into()))?;
    if comp.mesh.count(3) != n.complex().count(3) || comp.mesh.count(0) != n.num_vertices() {
        return Err(Error::Duality("compactification is not of this mesh".into()));
    }
    let complement = comp.complement_complex();
    let (left, b) = rayon::join(|| reduced_betti_complex(&complement), || reduced_betti_complex(n.complex()));
    let (left, b) = (left?, b?);
    let mut report = DualityReport::new(
        "alexander: reduced H_d(S3 - N) = reduced H_{2-d}(N)",
        left[..3].to_vec(),
        (0..3).map(|d| b[2 - d]).collect(),
    );
    report
        .notes
        .push("assumption: the closed complement is a deformation retract of the open complement (collar)".into());
    report.witnesses.push(("complement".into(), complement));
    Ok(report)
}

/// `rk H_d(N, S) = rk H_{3-d}(N - S, ∂N)` for `S` in the interior of `N`.
pub fn relative_alexander_check(n: &MeshComplex, s: &Subcomplex) -> Result<DualityReport> {
    require_manifold(n)?;
    let c = n.complex();
    s.check_face_closed(c)?;
    let boundary = boundary_sub(n)?;
    if (0..c.count(0)).any(|i| s.contains(0, i) && boundary.contains(0, i)) {
        return Err(Error::Duality("S meets the boundary of N".into()));
    }
    let left = relative_betti_complex(c, s)?;

    let (sd, labels) = barycentric_subdivision_complex(c);
    let in_s = |l: &Simplex| s.contains_simplex(c, l);
    let in_boundary = |l: &Simplex| boundary.contains_simplex(c, l);
    let outside = sd.induced(|v| !in_s(&labels[v as usize]));
    let sd_boundary = sd.induced(|v| in_boundary(&labels[v as usize]));
    let sub = Subcomplex::from_simplices(&outside, sd_boundary.all_simplices())?;
    let right = relative_betti_complex(&outside, &sub)?;
    let mut report = DualityReport::new(
        "relative alexander: H_d(N, S) = H_{3-d}(N - S, dN)",
        left.to_vec(),
        right.iter().rev().copied().collect(),
    );
    report.notes.push(
        "N - S is modelled by the full subcomplex of sd N on barycentres of simplices outside S".into(),
    );
    report.witnesses.push(("N - S".into(), outside));
    Ok(report)
}

/// The two sides of a closed surface in a triangulated 3-sphere.
#[derive(Clone, Debug)]
pub struct DomainsReport {
    /// Closures of the complementary domains.
    pub closures: [Complex; 2],
    pub b1_closures: [usize; 2],
    /// Closed simplicial neighbourhood of the surface in the derived complex.
    pub neighbourhood: Complex,
    pub b1_neighbourhood: usize,
    /// Mayer–Vietoris for `N_i = Ū_i ∪ N`, meeting in `N` and covering the sphere.
    pub mv: MvReport,
    /// Each closure's boundary is exactly the surface.
    pub frontiers_agree: bool,
    /// Stellar moves needed to make the surface full before subdividing.
    pub stellar_moves: usize,
}

impl DomainsReport {
    /// `b₁(N) = b₁(Ū₁) + b₁(Ū₂)`.
    pub fn rank_relation_holds(&self) -> bool {
        self.b1_neighbourhood == self.b1_closures[0] + self.b1_closures[1]
    }

    pub fn to_text(&self) -> String {
        format!(
            "domains 2\nb1_closures {} {}\nb1_neighbourhood {}\nfrontiers_agree {}\nmv_consistent {}\nrank_relation {}\n",
            self.b1_closures[0],
            self.b1_closures[1],
            self.b1_neighbourhood,
            self.frontiers_agree,
            self.mv.is_consistent(),
            if self.rank_relation_holds() { "OK" } else { "FAIL" }
        )
    }
}

fn check_closed_surface(c: &Complex) -> Result<()> {
    if c.count(3) != 0 || c.count(2) == 0 {
        return Err(Error::Duality("surface must be a nonempty pure 2-complex".into()));
    }
    let cofaces = c.coface_counts(1);
    if cofaces.iter().any(|&k| k != 2) {
        return Err(Error::Duality("surface has an edge not in exactly two triangles".into()));
    }
    if c.vertex_components().len() != 1 {
        return Err(Error::Duality("surface is not connected".into()));
    }
    for v in c.simplices(0) {
        let star: Vec<&Simplex> = c.simplices(2).iter().filter(|t| t.vertices().contains(&v.vertices()[0])).collect();
        let link = Complex::from_simplices(star.iter().map(|t| {
            let rest: Vec<u32> = t.vertices().iter().copied().filter(|&u| u != v.vertices()[0]).collect();
            Simplex::new(&rest)
        }));
        if link.vertex_components().len() != 1 {
            return Err(Error::Duality(format!("surface is pinched at vertex {}", v.vertices()[0])));
        }
    }
    Ok(())
}

/// Stellar moves at simplices spanned by surface vertices but not in the
/// surface, until the surface is a full subcomplex. Surface simplices are
/// never touched, so they survive unchanged.
fn make_full(sphere: &Complex, surface: &HashSet<Simplex>) -> (Complex, usize) {
    let on: HashSet<u32> = surface.iter().filter(|s| s.dim() == 0).map(|s| s.vertices()[0]).collect();
    let mut tets: Vec<Vec<u32>> = sphere.simplices(3).iter().map(|t| t.vertices().to_vec()).collect();
    let mut next = sphere.simplices(0).iter().map(|v| v.vertices()[0]).max().map_or(0, |v| v + 1);
    let mut moves = 0;
    loop {
        let bad = (2..=4).find_map(|k| {
            tets.iter().find_map(|t| {
                let inside: Vec<u32> = t.iter().copied().filter(|v| on.contains(v)).collect();
                (0u32..1 << inside.len()).filter(|m| m.count_ones() == k).find_map(|m| {
                    let face: Vec<u32> = (0..inside.len()).filter(|&i| m >> i & 1 == 1).map(|i| inside[i]).collect();
                    (!surface.contains(&Simplex::new(&face))).then_some(face)
                })
            })
        });
        let Some(sigma) = bad else { break };
        let b = next;
        next += 1;
        moves += 1;
        let mut out = Vec::with_capacity(tets.len() + 8);
        for t in tets {
            if sigma.iter().all(|v| t.contains(v)) {
                for &v in &sigma {
                    let mut n: Vec<u32> = t.iter().copied().filter(|&u| u != v).collect();
                    n.push(b);
                    n.sort_unstable();
                    out.push(n);
                }
            } else {
                out.push(t);
            }
        }
        tets = out;
    }
    (Complex::from_simplices(tets.iter().map(|t| Simplex::new(t))), moves)
}

/// Splits a closed 3-manifold `sphere` along `surface` and compares `b₁`
/// of the two closures with `b₁` of a regular neighbourhood of the surface:
/// the simplicial neighbourhood of the surface in the first derived of a
/// triangulation where the surface is full.
pub fn surface_domains(sphere: &Complex, surface: &Subcomplex) -> Result<DomainsReport> {
    let b = betti_complex(sphere);
    if b != [1, 0, 0, 1] || !sphere.is_pure3() {
        return Err(Error::Duality(format!("ambient complex has Betti numbers {b:?}, not those of S^3")));
    }
    check_closed_surface(&surface.to_complex(sphere))?;

    let s_set: HashSet<Simplex> = surface.simplices(sphere).collect();
    let (full, stellar_moves) = make_full(sphere, &s_set);
    let (work, labels) = barycentric_subdivision_complex(&full);
    let sd_surface = work.induced(|v| s_set.contains(&labels[v as usize]));
    let surf = Subcomplex::from_simplices(&work, sd_surface.all_simplices())?;

    // Domains: tetrahedra joined across triangles off the surface.
    let tets = work.simplices(3);
    let mut uf = UnionFind::new(tets.len());
    let mut by_triangle: std::collections::HashMap<Simplex, usize> = Default::default();
    for (i, t) in tets.iter().enumerate() {
        for f in t.boundary() {
            if surf.contains_simplex(&work, &f) {
                continue;
            }
            if let Some(j) = by_triangle.insert(f, i) {
                uf.union(i, j);
            }
        }
    }
    let mut roots: Vec<usize> = (0..tets.len()).map(|i| uf.find(i)).collect();
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 2 {
        return Err(Error::Duality(format!(
            "surface has {} complementary domains, expected 2",
            distinct.len()
        )));
    }
    for r in &mut roots {
        *r = usize::from(*r == distinct[1]);
    }
    let side_tets: [Vec<Simplex>; 2] =
        std::array::from_fn(|s| tets.iter().zip(&roots).filter(|(_, &r)| r == s).map(|(t, _)| *t).collect());
    let closures: [Complex; 2] = std::array::from_fn(|s| Complex::from_simplices(side_tets[s].iter().copied()));

    let surface_triangles: std::collections::BTreeSet<Simplex> = surf.simplices(&work).filter(|t| t.dim() == 2).collect();
    let frontiers_agree = closures.iter().all(|u| {
        let counts = u.coface_counts(2);
        let frontier: std::collections::BTreeSet<Simplex> =
            u.simplices(2).iter().zip(&counts).filter(|(_, &k)| k == 1).map(|(t, _)| *t).collect();
        frontier == surface_triangles
    });

    // Closed simplicial neighbourhood: every simplex meeting the surface.
    let on_surface = |v: u32| surf.contains_simplex(&work, &Simplex::vertex(v));
    let star: Vec<Simplex> = tets.iter().filter(|t| t.vertices().iter().any(|&v| on_surface(v))).copied().collect();
    let neighbourhood = Complex::from_simplices(star.iter().copied().chain(surf.simplices(&work)));
    let n_sides: [Vec<Simplex>; 2] = std::array::from_fn(|s| {
        side_tets[s].iter().chain(&star).copied().chain(surf.simplices(&work)).collect()
    });
    let n1 = Subcomplex::from_simplices(&work, n_sides[0].iter())?;
    let n2 = Subcomplex::from_simplices(&work, n_sides[1].iter())?;

    let b1: Vec<usize> =
        [&closures[0], &closures[1], &neighbourhood].par_iter().map(|c| betti_complex(c)[1]).collect();
    let mv = mayer_vietoris_complex(&work, &n1, &n2)?;
    Ok(DomainsReport {
        b1_closures: [b1[0], b1[1]],
        b1_neighbourhood: b1[2],
        closures,
        neighbourhood,
        mv,
        frontiers_agree,
        stellar_moves,
    })
}

/// `surface_domains` for the boundary of a compactified 3-manifold.
pub fn boundary_domains(comp: &Compactification) -> Result<DomainsReport> {
    let mesh = comp.mesh_complex();
    let counts = mesh.coface_counts(2);
    let triangles: Vec<Simplex> =
        mesh.simplices(2).iter().zip(&counts).filter(|(_, &k)| k == 1).map(|(t, _)| *t).collect();
    let surface = Subcomplex::from_simplices(&comp.sphere, triangles.iter())?;
    surface_domains(&comp.sphere, &surface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::compactify;
    use crate::mesh_core::voxel::VoxelSolid;
    use crate::towers::*;

    fn compactified(s: &VoxelSolid) -> Compactification {
        compactify(&s.mesh, &s.bounding_box, Some(&s.complement)).unwrap()
    }

    #[test]
    fn lefschetz_on_generators() {
        let ball = lefschetz_check(&gen_ball()).unwrap();
        assert_eq!((ball.left.as_slice(), ball.right.as_slice()), (&[0, 0, 0, 1][..], &[0, 0, 0, 1][..]));
        let torus = lefschetz_check(&gen_solid_torus()).unwrap();
        assert!(torus.pass && torus.left[2] == 1);
        let perforated = lefschetz_check(&gen_perforated_ball(1).unwrap()).unwrap();
        assert!(perforated.pass && perforated.left[1] == 1);
        assert!(perforated.to_text().contains("PASS"));
    }

    #[test]
    fn alexander_on_generators() {
        let ball = gen_ball_solid();
        let r = alexander_check(&ball.mesh, Some(&compactified(&ball))).unwrap();
        assert_eq!((r.left.clone(), r.pass), (vec![0, 0, 0], true));
        let torus = gen_solid_torus_solid();
        let r = alexander_check(&torus.mesh, Some(&compactified(&torus))).unwrap();
        assert!(r.pass && r.left[1] == 1);
        let p = gen_perforated_ball_solid(2).unwrap();
        let r = alexander_check(&p.mesh, Some(&compactified(&p))).unwrap();
        assert!(r.pass && r.left[0] == 2);
        assert!(matches!(alexander_check(&p.mesh, None), Err(Error::Duality(_))));
    }

    #[test]
    fn relative_alexander_cases() {
        let ball = gen_ball_tower(2).unwrap().stages[0].as_mesh().unwrap().clone();
        let c = ball.complex();
        let centre = ball.point_index()[&crate::mesh_core::RationalPoint3::from_ints(2, 2, 2)];
        let pt = Subcomplex::from_simplices(c, [Simplex::vertex(centre)].iter()).unwrap();
        let r = relative_alexander_check(&ball, &pt).unwrap();
        assert!(r.pass && r.left[3] == 0, "{r:?}");

        let inner = gen_ball_tower(2).unwrap().stages[1].as_mesh().unwrap().clone();
        let sphere = boundary_surface(&inner).unwrap().as_subcomplex_of(&ball).unwrap();
        let r = relative_alexander_check(&ball, &sphere).unwrap();
        assert!(r.pass && r.left[3] == 1 && r.right[3] == 1);

        let corner = Subcomplex::from_simplices(c, [Simplex::vertex(0)].iter()).unwrap();
        assert!(matches!(relative_alexander_check(&ball, &corner), Err(Error::Duality(_))));
    }

    #[test]
    fn tetrahedral_sphere_domains() {
        let sphere = Complex::from_simplices((0..5u32).map(|skip| {
            let vs: Vec<u32> = (0..5).filter(|&v| v != skip).collect();
            Simplex::new(&vs)
        }));
        let tet = Simplex::new(&[0, 1, 2, 3]);
        let surface = Subcomplex::from_simplices(&sphere, tet.boundary().collect::<Vec<_>>().iter()).unwrap();
        let r = surface_domains(&sphere, &surface).unwrap();
        assert!(r.stellar_moves > 0 && r.frontiers_agree);
        assert_eq!((r.b1_closures, r.b1_neighbourhood), ([0, 0], 0));
        assert!(r.mv.is_consistent());
    }

    #[test]
    fn torus_domains() {
        let r = boundary_domains(&compactified(&gen_solid_torus_solid())).unwrap();
        let mut b = r.b1_closures;
        b.sort_unstable();
        assert_eq!((b, r.b1_neighbourhood), ([1, 1], 2));
        assert!(r.frontiers_agree && r.rank_relation_holds() && r.mv.is_consistent());
    }
}
