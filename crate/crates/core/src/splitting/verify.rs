//! The rank inequality and the containment property of a split.

use std::collections::HashMap;

use super::SplitResult;
use crate::mesh_core::{
    contained_in_any, extrude, merge_unchecked, plane_section, rat, Complex, MeshBuilder, MeshComplex, Rational,
    RationalPoint3, Simplex, Subcomplex, VertexId,
};
use crate::planar_surface::decompose;
use crate::z2_homology::{betti, betti_complex, induced_map_complex, mayer_vietoris_complex};
use crate::{Error, Result};

/// `N₁ ⊔ N₂` with `(p, b_i) ∈ Ĉ_i × {b_i}` identified with `(p, -b_i)`.
/// This cannot be embedded in general, so it is a bare complex.
#[derive(Clone, Debug)]
pub struct IdentifiedDouble {
    pub complex: Complex,
    pub n1: Subcomplex,
    pub n2: Subcomplex,
    pub m_hat: Subcomplex,
    pub p: Subcomplex,
}

struct Gluing<'a> {
    res: &'a SplitResult,
    index: [HashMap<&'a RationalPoint3, VertexId>; 2],
    side2: Vec<VertexId>,
}

impl<'a> Gluing<'a> {
    fn new(res: &'a SplitResult) -> Self {
        let index = [res.n1.point_index(), res.n2.point_index()];
        let offset = res.n1.num_vertices() as VertexId;
        let mut side2: Vec<VertexId> = (0..res.n2.num_vertices() as VertexId).map(|v| v + offset).collect();
        for (k, (_, b)) in res.heights.iter().enumerate() {
            let disk = &res.decomposition.components[res.component(k + 1)].disk;
            for q in disk.points() {
                let up = RationalPoint3::new(q.x.clone(), q.y.clone(), b.clone());
                let down = RationalPoint3::new(q.x.clone(), q.y.clone(), -b);
                if let (Some(&u), Some(&d)) = (index[0].get(&up), index[1].get(&down)) {
                    side2[d as usize] = u;
                }
            }
        }
        Self { res, index, side2 }
    }

    /// Maximal simplices of a piece of side `s` (0 or 1) on glued ids.
    fn image(&self, s: usize, piece: &MeshComplex) -> Vec<Simplex> {
        piece
            .complex()
            .maximal_simplices()
            .iter()
            .map(|t| {
                let vs: Vec<VertexId> = piece
                    .simplex_points(t)
                    .iter()
                    .map(|p| {
                        let v = self.index[s][p];
                        if s == 0 {
                            v
                        } else {
                            self.side2[v as usize]
                        }
                    })
                    .collect();
                let mut vs = vs;
                vs.sort_unstable();
                vs.dedup();
                Simplex::new(&vs)
            })
            .collect()
    }

    fn build(&self) -> Result<IdentifiedDouble> {
        let res = self.res;
        let n1 = self.image(0, &res.n1);
        let n2 = self.image(1, &res.n2);
        let complex = Complex::from_simplices(n1.iter().chain(&n2).copied());
        let mut m_hat = self.image(0, &res.m1_hat);
        m_hat.extend(self.image(1, &res.m2_hat));
        let mut p = self.image(0, &res.p1);
        p.extend(self.image(1, &res.p2));
        Ok(IdentifiedDouble {
            n1: Subcomplex::from_simplices(&complex, n1.iter())?,
            n2: Subcomplex::from_simplices(&complex, n2.iter())?,
            m_hat: Subcomplex::from_simplices(&complex, m_hat.iter())?,
            p: Subcomplex::from_simplices(&complex, p.iter())?,
            complex,
        })
    }
}

impl IdentifiedDouble {
    pub fn build(res: &SplitResult) -> Result<Self> {
        Gluing::new(res).build()
    }
}

/// First Betti numbers along the chain
/// `b₁(N₁) + b₁(N₂) ≤ b₁(N′) ≤ b₁(M̂) = b₁(N)`.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub b1_n: usize,
    pub b1_n1: usize,
    pub b1_n2: usize,
    pub b1_double: usize,
    pub b1_m_hat: usize,
    /// `b₁(N₁ ∩ N₂) = 0` inside the double.
    pub intersection_acyclic: bool,
    /// `H₀(M̂ ∩ P) → H₀(P)` is injective.
    pub h0_injective: bool,
    pub holds: bool,
    pub chain_holds: bool,
}

impl InequalityReport {
    /// `S1: b1 + b2 <= b OK`
    pub fn summary(&self) -> String {
        format!(
            "S1: {} + {} <= {} {}",
            self.b1_n1,
            self.b1_n2,
            self.b1_n,
            if self.holds { "OK" } else { "FAIL" }
        )
    }
}

/// Checks `b₁(N₁) + b₁(N₂) ≤ b₁(N)` and replays the chain of rank facts
/// behind it on the identified double. A failure of the main inequality is
/// an error: it means the construction is broken.
pub fn verify_s1(res: &SplitResult) -> Result<InequalityReport> {
    let b1_n = betti(&res.n)[1];
    let b1_n1 = betti(&res.n1)[1];
    let b1_n2 = betti(&res.n2)[1];
    let double = IdentifiedDouble::build(res)?;
    let c = &double.complex;
    let b1_double = betti_complex(c)[1];
    let b1_m_hat = betti_complex(&double.m_hat.to_complex(c))[1];
    let mv = mayer_vietoris_complex(c, &double.n1, &double.n2)?;
    let p = double.p.to_complex(c);
    let masks: [Vec<bool>; 4] = std::array::from_fn(|d| {
        (0..c.count(d)).map(|i| double.m_hat.contains(d, i) && double.p.contains(d, i)).collect()
    });
    let meet = Subcomplex::from_masks(c, masks)?.to_complex(c);
    let h0 = induced_map_complex(&meet, &p, Some, 0)?;
    let h0_injective = h0.rank() == h0.source.rank;
    let holds = b1_n1 + b1_n2 <= b1_n;
    let chain_holds = b1_n1 + b1_n2 <= b1_double && b1_double <= b1_m_hat && b1_m_hat == b1_n;
    let report = InequalityReport {
        b1_n,
        b1_n1,
        b1_n2,
        b1_double,
        b1_m_hat,
        intersection_acyclic: mv.intersection[1] == 0,
        h0_injective,
        holds,
        chain_holds,
    };
    if !holds {
        return Err(Error::Inconsistent(report.summary()));
    }
    Ok(report)
}

pub const DEFAULT_EPSILON_FLOOR: u32 = 32;

/// Largest `ε = 2^-k` (`1 ≤ k ≤ floor`) with `E × [-ε, ε] ⊆ W`.
pub fn epsilon_for_region(e: &MeshComplex, w: &[&MeshComplex], floor: u32) -> Result<Rational> {
    let mut eps = rat(1, 2);
    for _ in 0..floor {
        if e.is_empty() {
            return Ok(eps);
        }
        let prism = extrude(e, &-&eps, &eps)?;
        if contained_in_any(&prism, w).is_empty() {
            return Ok(eps);
        }
        eps /= rat(2, 1);
    }
    Err(Error::WTooTight(floor))
}

/// The disks `Ĉ_i` of the outermost section components: a finite union of
/// disjoint disks containing the whole section.
pub fn enclosing_disks(n: &MeshComplex) -> Result<MeshComplex> {
    let section = plane_section(n, &super::SplitFrame::default().plane)?;
    let d = decompose(&section)?;
    let mut b = MeshBuilder::default();
    for i in d.roots() {
        b.add_mesh(&d.components[i].disk);
    }
    Ok(b.build())
}

/// An `ε` for which `Ĉ × [-ε, ε] ⊆ W` for every root disk `Ĉ`; then
/// `N₁ ⊆ M₁ ∪ W` and `N₂ ⊆ M₂ ∪ W`.
pub fn choose_epsilon(n: &MeshComplex, w: &[&MeshComplex]) -> Result<Rational> {
    choose_epsilon_with_floor(n, w, DEFAULT_EPSILON_FLOOR)
}

pub fn choose_epsilon_with_floor(n: &MeshComplex, w: &[&MeshComplex], floor: u32) -> Result<Rational> {
    epsilon_for_region(&enclosing_disks(n)?, w, floor)
}

/// Where a tetrahedron of `N_j` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Origin {
    /// `M_j`.
    Half,
    /// The extruded `C_i` (1-based `i`).
    Extrusion(usize),
    /// The thickened `C_i*`.
    Cap(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentViolation {
    /// 1 or 2.
    pub side: usize,
    pub origin: Origin,
    pub tetrahedra: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ContainmentReport {
    pub violations: Vec<ContainmentViolation>,
}

impl ContainmentReport {
    pub fn is_contained(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn side_contained(&self, side: usize) -> bool {
        self.violations.iter().all(|v| v.side != side)
    }
}

/// Checks `N₁ ⊆ |V₁|` and `N₂ ⊆ |V₂|` piece by piece. Each `V_j` is a
/// list of meshes and every tetrahedron must fit in one of them.
pub fn verify_s2(res: &SplitResult, v1: &[&MeshComplex], v2: &[&MeshComplex]) -> ContainmentReport {
    let mut report = ContainmentReport::default();
    for (s, v) in [v1, v2].into_iter().enumerate() {
        let half = if s == 0 { &res.m1 } else { &res.m2 };
        let mut pieces = vec![(Origin::Half, half)];
        for i in 0..res.r() {
            pieces.push((Origin::Extrusion(i + 1), &res.extrusions[s][i]));
            pieces.push((Origin::Cap(i + 1), &res.caps[s][i]));
        }
        for (origin, m) in pieces {
            let bad = contained_in_any(m, v).len();
            if bad > 0 {
                report.violations.push(ContainmentViolation {
                    side: s + 1,
                    origin,
                    tetrahedra: bad,
                });
            }
        }
    }
    report
}

/// `N_j` as one mesh, given its pieces.
#[allow(dead_code)]
pub(crate) fn reassemble(res: &SplitResult, side: usize) -> MeshComplex {
    let half = if side == 0 { &res.m1 } else { &res.m2 };
    let mut all = vec![half];
    all.extend(res.extrusions[side].iter());
    all.extend(res.caps[side].iter());
    merge_unchecked(&all)
}
