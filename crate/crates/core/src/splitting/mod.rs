//! Cutting a neighbourhood along the plane `z = 0` into two neighbourhoods.
//!
//! The frame is the cube `Q = [-1,1]^3`, the square `S = Q ∩ {z = 0}` and
//! the plane `H: z = 0`. Given a neighbourhood `N` whose section `N ∩ S`
//! lies in the open square, [`split`] builds
//!
//! * `M₁ = N ∩ {z ≤ 0}` and `M₂ = N ∩ {z ≥ 0}`,
//! * the components `C_1..C_r` of `N ∩ S`, interior ones first,
//! * `M̂₁ = M₁ ∪ ⋃ C_i × [0, ε i/r]` and `P₁ = ⋃ C_i* × [ε(i/r - 1/2r), ε i/r]`,
//! * the mirror images `M̂₂`, `P₂` below the plane,
//!
//! and returns `N₁ = M̂₁ ∪ P₁`, `N₂ = M̂₂ ∪ P₂` with their reports.
//! [`verify_s1`] and [`verify_s2`] check the rank inequality and the
//! containment property.

pub mod fixtures;
mod verify;

pub use verify::{
    choose_epsilon, choose_epsilon_with_floor, enclosing_disks, epsilon_for_region, verify_s1, verify_s2, ContainmentReport, ContainmentViolation,
    IdentifiedDouble, InequalityReport, Origin, DEFAULT_EPSILON_FLOOR,
};

use crate::mesh_core::{
    boundary_surface, cut_halfspace, extrude, extrude_layers, manifold_check, merge, plane_section, rat,
    validate_triangulation, AxisBox, MeshComplex, Plane, Rational, RationalPoint3, Side, Simplex,
};
use crate::planar_surface::{decompose, PlanarDecomposition};
use crate::z2_homology::{ball_criterion, betti};
use crate::{Error, Result};
use num_traits::{One, Zero};

/// The prototype tame frame.
#[derive(Clone, Debug)]
pub struct SplitFrame {
    pub cube: AxisBox,
    pub plane: Plane,
}

impl Default for SplitFrame {
    fn default() -> Self {
        Self {
            cube: AxisBox::new(RationalPoint3::from_ints(-1, -1, -1), RationalPoint3::from_ints(1, 1, 1)),
            plane: Plane::z(Rational::zero()),
        }
    }
}

impl SplitFrame {
    /// Whether `p` lies in the open square `Ṡ` (the plane coordinate is not checked).
    pub fn in_open_square(&self, p: &RationalPoint3) -> bool {
        (0..2).all(|a| self.cube.min.coord(a) < p.coord(a) && p.coord(a) < self.cube.max.coord(a))
    }
}

/// How to read the thickened caps below the plane.
///
/// The printed interval for `P₂` is `C_i* × [-ε i/r, -ε(i/r + 1/2r)]`,
/// which places the cap beneath the extrusion of `C_i` instead of inside
/// it. [`P2Reading::AsPrinted`] builds exactly that set; the caps then meet
/// `M̂₂` in circles, and the annulus check reports it. The default
/// [`P2Reading::Mirrored`] reflects the upper side: `C_i* × [-ε i/r, -ε(i/r - 1/2r)]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum P2Reading {
    #[default]
    Mirrored,
    AsPrinted,
}

#[derive(Clone, Debug)]
pub struct SplitParams {
    pub epsilon: Rational,
    pub p2_reading: P2Reading,
}

impl Default for SplitParams {
    fn default() -> Self {
        Self {
            epsilon: rat(1, 2),
            p2_reading: P2Reading::default(),
        }
    }
}

impl SplitParams {
    pub fn with_epsilon(epsilon: Rational) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }
}

/// Violations of the tameness conditions in the frame.
#[derive(Clone, Debug, Default)]
pub struct TamenessReport {
    /// Vertices lying on `H`.
    pub vertices_on_plane: Vec<u32>,
    /// Edges crossing `H` outside the open square.
    pub edges_outside_square: Vec<Simplex>,
}

impl TamenessReport {
    pub fn is_tame(&self) -> bool {
        self.vertices_on_plane.is_empty() && self.edges_outside_square.is_empty()
    }
}

/// Checks `N ∩ S ⊆ Ṡ` and general position of `N` with respect to `H`.
/// The section is the convex hull of edge crossings per tetrahedron, so it
/// suffices to test the crossing points of edges.
pub fn check_prototype_tame(n: &MeshComplex, frame: &SplitFrame) -> TamenessReport {
    let plane = &frame.plane;
    let sides: Vec<i8> = n.points().iter().map(|p| plane.side_of(p)).collect();
    let mut report = TamenessReport {
        vertices_on_plane: (0..sides.len() as u32).filter(|&v| sides[v as usize] == 0).collect(),
        ..Default::default()
    };
    for e in n.complex().simplices(1) {
        let [a, b] = [e.vertices()[0], e.vertices()[1]];
        if sides[a as usize] * sides[b as usize] >= 0 {
            continue;
        }
        let (pa, pb) = (n.point(a), n.point(b));
        let (za, zb) = (pa.coord(plane.axis) - &plane.offset, pb.coord(plane.axis) - &plane.offset);
        let t = &za / (&za - &zb);
        if !frame.in_open_square(&pa.lerp(pb, &t)) {
            report.edges_outside_square.push(*e);
        }
    }
    report
}

/// Validity and homology of one output mesh.
#[derive(Clone, Debug)]
pub struct PieceReport {
    pub name: &'static str,
    pub valid: bool,
    pub is_3_manifold: bool,
    pub betti: [usize; 4],
}

/// `P ∩ M̂` on one side: one annulus per capping disk is expected.
#[derive(Clone, Debug)]
pub struct AnnuliReport {
    pub components: usize,
    pub expected: usize,
    /// Betti numbers of each component of the intersection.
    pub component_betti: Vec<[usize; 4]>,
    pub pure_2d: bool,
}

impl AnnuliReport {
    pub fn holds(&self) -> bool {
        self.pure_2d && self.components == self.expected && self.component_betti.iter().all(|b| *b == [1, 1, 0, 0])
    }
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub frame: SplitFrame,
    pub params: SplitParams,
    pub n: MeshComplex,
    pub m1: MeshComplex,
    pub m2: MeshComplex,
    pub m1_hat: MeshComplex,
    pub m2_hat: MeshComplex,
    pub p1: MeshComplex,
    pub p2: MeshComplex,
    pub n1: MeshComplex,
    pub n2: MeshComplex,
    pub section: MeshComplex,
    pub decomposition: PlanarDecomposition,
    /// `(a_i, b_i) = (ε(i/r - 1/2r), ε i/r)` for `i = 1..r`.
    pub heights: Vec<(Rational, Rational)>,
    /// Extrusions of `C_i` above and below the plane, by `i - 1`.
    pub extrusions: [Vec<MeshComplex>; 2],
    /// Thickened capping sets above and below the plane, by `i - 1`.
    pub caps: [Vec<MeshComplex>; 2],
    pub pieces: Vec<PieceReport>,
    pub annuli: [AnnuliReport; 2],
}

impl SplitResult {
    /// Number of section components `r`.
    pub fn r(&self) -> usize {
        self.heights.len()
    }

    /// Component id of `C_i` (1-based `i`).
    pub fn component(&self, i: usize) -> usize {
        self.decomposition.order[i - 1]
    }

    /// The eight meshes with their file names.
    pub fn meshes(&self) -> [(&'static str, &MeshComplex); 8] {
        [
            ("M1", &self.m1),
            ("M2", &self.m2),
            ("M1_hat", &self.m1_hat),
            ("M2_hat", &self.m2_hat),
            ("P1", &self.p1),
            ("P2", &self.p2),
            ("N1", &self.n1),
            ("N2", &self.n2),
        ]
    }

    /// `M₁ ∪ M₂` reproduces `N` (after the cut's subdivision) and `M₁ ∩ M₂` is the section.
    pub fn halves_reassemble(&self) -> Result<bool> {
        let union = merge(&[&self.m1, &self.m2])?;
        let shared = self.m1.common_subcomplex(&self.m2);
        let same_section = shared.complex().count(3) == 0 && shared.complex().simplices(2).len()
            == self.section.complex().count(2)
            && betti(&shared) == betti(&self.section);
        Ok(same_section && betti(&union) == betti(&self.n) && crate::mesh_core::contained_in(&union, &self.n).is_empty()
            && crate::mesh_core::contained_in(&self.n, &union).is_empty())
    }

    /// Human-readable summary.
    pub fn report_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let e = &self.params.epsilon;
        writeln!(out, "epsilon {}", crate::mesh_core::format_rational(e)).unwrap();
        writeln!(out, "p2_reading {:?}", self.params.p2_reading).unwrap();
        writeln!(out, "r {}", self.r()).unwrap();
        for i in 1..=self.r() {
            let c = &self.decomposition.components[self.component(i)];
            writeln!(out, "C{i} component {} holes {}", self.component(i), c.holes()).unwrap();
        }
        for p in &self.pieces {
            writeln!(
                out,
                "{} valid {} manifold {} b {} {} {} {}",
                p.name, p.valid, p.is_3_manifold, p.betti[0], p.betti[1], p.betti[2], p.betti[3]
            )
            .unwrap();
        }
        for (side, a) in self.annuli.iter().enumerate() {
            writeln!(out, "annuli{} {} of {} {}", side + 1, a.components, a.expected, if a.holds() { "OK" } else { "FAIL" })
                .unwrap();
        }
        out
    }
}

fn piece(name: &'static str, m: &MeshComplex) -> Result<PieceReport> {
    let is_3_manifold = m.is_empty() || manifold_check(m)?.is_3_manifold;
    Ok(PieceReport {
        name,
        valid: validate_triangulation(m).is_valid(),
        is_3_manifold,
        betti: betti(m),
    })
}

fn annuli(p: &MeshComplex, m_hat: &MeshComplex, expected: usize) -> AnnuliReport {
    let shared = p.common_subcomplex(m_hat);
    let c = shared.complex();
    let pure_2d = c.maximal_simplices().iter().all(|s| s.dim() == 2);
    let component_betti: Vec<[usize; 4]> = c
        .vertex_components()
        .into_iter()
        .map(|vs| crate::z2_homology::betti_complex(&c.induced(|v| vs.binary_search(&v).is_ok())))
        .collect();
    AnnuliReport {
        components: component_betti.len(),
        expected,
        component_betti,
        pure_2d,
    }
}

/// Runs the construction for a tame `N` in the frame.
pub fn split(n: &MeshComplex, frame: &SplitFrame, params: &SplitParams) -> Result<SplitResult> {
    let eps = &params.epsilon;
    if !(eps > &Rational::zero() && eps < &Rational::one()) {
        return Err(Error::Split("epsilon must lie in (0, 1)".into()));
    }
    let tame = check_prototype_tame(n, frame);
    if !tame.is_tame() {
        return Err(Error::NotTame(format!(
            "{} vertices on the plane, {} edges crossing outside the open square",
            tame.vertices_on_plane.len(),
            tame.edges_outside_square.len()
        )));
    }
    let plane = &frame.plane;
    let m1 = cut_halfspace(n, plane, Side::Below)?;
    let m2 = cut_halfspace(n, plane, Side::Above)?;
    let section = plane_section(n, plane)?;
    if section.is_empty() {
        return Err(Error::Split("the section N ∩ S is empty".into()));
    }
    let decomposition = decompose(&section)?;
    let r = decomposition.len() as i64;
    let heights: Vec<(Rational, Rational)> =
        (1..=r).map(|i| (eps * rat(2 * i - 1, 2 * r), eps * rat(i, r))).collect();
    let zero = Rational::zero();

    let mut ext = [Vec::new(), Vec::new()];
    let mut caps = [Vec::new(), Vec::new()];
    for (k, (a, b)) in heights.iter().enumerate() {
        let comp = &decomposition.components[decomposition.order[k]];
        ext[0].push(extrude_layers(&comp.surface, &[zero.clone(), a.clone(), b.clone()])?);
        caps[0].push(extrude(&comp.caps, a, b)?);
        match params.p2_reading {
            P2Reading::Mirrored => {
                ext[1].push(extrude_layers(&comp.surface, &[-b, -a, zero.clone()])?);
                caps[1].push(extrude(&comp.caps, &-b, &-a)?);
            }
            P2Reading::AsPrinted => {
                let below = -(eps * rat(2 * (k as i64 + 1) + 1, 2 * r));
                ext[1].push(extrude_layers(&comp.surface, &[-b, zero.clone()])?);
                caps[1].push(extrude(&comp.caps, &below, &-b)?);
            }
        }
    }
    let union = |base: &MeshComplex, parts: &[MeshComplex]| -> Result<MeshComplex> {
        let mut all: Vec<&MeshComplex> = vec![base];
        all.extend(parts.iter().filter(|m| !m.is_empty()));
        merge(&all).map_err(|e| Error::Inconsistent(format!("pieces of the split do not conform: {e}")))
    };
    let empty = MeshComplex::empty();
    let m1_hat = union(&m1, &ext[0])?;
    let m2_hat = union(&m2, &ext[1])?;
    let p1 = union(&empty, &caps[0])?;
    let p2 = union(&empty, &caps[1])?;
    let n1 = union(&m1_hat, std::slice::from_ref(&p1))?;
    let n2 = union(&m2_hat, std::slice::from_ref(&p2))?;

    let total_caps: usize = decomposition.components.iter().map(|c| c.holes()).sum();
    let annuli = [annuli(&p1, &m1_hat, total_caps), annuli(&p2, &m2_hat, total_caps)];
    let mut pieces = Vec::new();
    for (name, m) in [
        ("M1", &m1),
        ("M2", &m2),
        ("M1_hat", &m1_hat),
        ("M2_hat", &m2_hat),
        ("P1", &p1),
        ("P2", &p2),
        ("N1", &n1),
        ("N2", &n2),
    ] {
        pieces.push(piece(name, m)?);
    }
    Ok(SplitResult {
        frame: frame.clone(),
        params: params.clone(),
        n: n.clone(),
        m1,
        m2,
        m1_hat,
        m2_hat,
        p1,
        p2,
        n1,
        n2,
        section,
        decomposition,
        heights,
        extrusions: ext,
        caps,
        pieces,
        annuli,
    })
}

/// Homology-level comparison of `M_j` and `M̂_j`: Betti numbers of the
/// solids and of their boundary surfaces agree.
pub fn extension_preserves_homology(res: &SplitResult) -> Result<[bool; 2]> {
    let same = |a: &MeshComplex, b: &MeshComplex| -> Result<bool> {
        Ok(betti(a) == betti(b) && betti(&boundary_surface(a)?) == betti(&boundary_surface(b)?))
    };
    Ok([same(&res.m1, &res.m1_hat)?, same(&res.m2, &res.m2_hat)?])
}

/// Each component of `P₁` and `P₂` is a ball.
pub fn caps_are_balls(res: &SplitResult) -> Result<bool> {
    for cap in res.caps.iter().flatten() {
        let c = cap.complex();
        for comp in c.vertex_components() {
            let tets: Vec<Simplex> =
                c.simplices(3).iter().filter(|t| comp.binary_search(&t.vertices()[0]).is_ok()).copied().collect();
            if !ball_criterion(&cap.restrict(tets))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
