//! Finite towers of nested neighbourhoods `N_0 ⊇ N_1 ⊇ …`, outermost first.
//!
//! A stage is a mesh (optionally with a triangulated complement, used to
//! fill holes) or a bare declared rank. Consecutive stages are joined by a
//! link: the inner mesh as a subcomplex of the outer one, an explicit
//! vertex map, or a declared GF(2) matrix for `H_1(N_{k+1}) → H_1(N_k)`.
//!
//! Only finite evidence is available, so every bound derived here says
//! what it assumes.

mod generators;
mod manifest;

pub use generators::*;
pub use manifest::{read_tower, read_tower_file, write_tower, write_tower_dir};

use rayon::prelude::*;

use crate::mesh_core::{
    compactify, contained_in, fill_holes, manifold_check, AxisBox, MeshComplex, RationalPoint3, Subcomplex, VertexId,
};
use crate::z2_homology::{ball_criterion, betti, induced_map, Gf2Matrix, Inclusion};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum Stage {
    Mesh {
        mesh: MeshComplex,
        /// Closure of a box minus `mesh`, sharing its boundary.
        complement: Option<MeshComplex>,
    },
    /// A stage known only through the rank of its `H_1`.
    Rank(usize),
}

impl Stage {
    pub fn mesh(mesh: MeshComplex) -> Self {
        Stage::Mesh { mesh, complement: None }
    }

    pub fn with_complement(mesh: MeshComplex, complement: MeshComplex) -> Self {
        Stage::Mesh {
            mesh,
            complement: Some(complement),
        }
    }

    pub fn as_mesh(&self) -> Option<&MeshComplex> {
        match self {
            Stage::Mesh { mesh, .. } => Some(mesh),
            Stage::Rank(_) => None,
        }
    }
}

/// How stage `k + 1` sits in stage `k`.
#[derive(Clone, Debug)]
pub enum Link {
    /// Stage `k + 1` is a subcomplex of stage `k` (matched by coordinates),
    /// optionally checked against an explicit selection of stage `k`'s simplices.
    Subcomplex(Option<Subcomplex>),
    /// Vertex map from stage `k + 1` to stage `k`.
    Simplicial(Vec<VertexId>),
    /// Declared `H_1(N_{k+1}) → H_1(N_k)` (rows: rank of stage `k`).
    Algebraic(Gf2Matrix),
}

#[derive(Clone, Debug, Default)]
pub struct Tower {
    pub stages: Vec<Stage>,
    /// `links[k]` joins stage `k + 1` to stage `k`.
    pub links: Vec<Link>,
    /// Free-form provenance per stage.
    pub notes: Vec<(usize, String)>,
}

impl Tower {
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn is_geometric(&self) -> bool {
        self.stages.iter().all(|s| s.as_mesh().is_some())
    }

    fn stage_mesh(&self, k: usize) -> Result<&MeshComplex> {
        self.stages[k]
            .as_mesh()
            .ok_or_else(|| Error::Tower(format!("stage {k} has no mesh")))
    }

    /// Structural checks on every link.
    pub fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Tower("empty tower".into()));
        }
        if self.links.len() + 1 != self.stages.len() {
            return Err(Error::Tower(format!(
                "{} stages need {} links, found {}",
                self.len(),
                self.len() - 1,
                self.links.len()
            )));
        }
        let ranks = tower_ranks_unchecked(self);
        for (k, link) in self.links.iter().enumerate() {
            match link {
                Link::Algebraic(m) => {
                    if (m.rows(), m.cols()) != (ranks[k], ranks[k + 1]) {
                        return Err(Error::Tower(format!(
                            "link {k} is {}x{} but the ranks are {} and {}",
                            m.rows(),
                            m.cols(),
                            ranks[k],
                            ranks[k + 1]
                        )));
                    }
                }
                Link::Subcomplex(sel) => {
                    let (outer, inner) = (self.stage_mesh(k)?, self.stage_mesh(k + 1)?);
                    let sub = inner
                        .as_subcomplex_of(outer)
                        .map_err(|e| Error::Tower(format!("link {k}: stage {} is not a subcomplex: {e}", k + 1)))?;
                    if let Some(sel) = sel {
                        if sel != &sub {
                            return Err(Error::Tower(format!("link {k}: sidecar does not select stage {}", k + 1)));
                        }
                    }
                    let surface = crate::mesh_core::boundary_surface(outer)?;
                    let boundary: std::collections::HashSet<&RationalPoint3> = surface.points().iter().collect();
                    if inner.points().iter().any(|p| boundary.contains(p)) {
                        return Err(Error::Tower(format!("link {k}: stage {} touches the boundary of stage {k}", k + 1)));
                    }
                }
                Link::Simplicial(map) => {
                    let (outer, inner) = (self.stage_mesh(k)?, self.stage_mesh(k + 1)?);
                    induced_map(inner, outer, &Inclusion::VertexMap(map.clone()), 0)?;
                }
            }
        }
        Ok(())
    }

    /// `φ_k : H_d(N_{k+1}) → H_d(N_k)`.
    pub fn link_map(&self, k: usize, d: usize) -> Result<Gf2Matrix> {
        match &self.links[k] {
            Link::Algebraic(m) if d == 1 => Ok(m.clone()),
            Link::Algebraic(_) => Err(Error::Tower(format!("link {k} declares H_1 only, not H_{d}"))),
            Link::Subcomplex(_) => {
                Ok(induced_map(self.stage_mesh(k + 1)?, self.stage_mesh(k)?, &Inclusion::ByCoordinates, d)?.matrix)
            }
            Link::Simplicial(map) => Ok(induced_map(
                self.stage_mesh(k + 1)?,
                self.stage_mesh(k)?,
                &Inclusion::VertexMap(map.clone()),
                d,
            )?
            .matrix),
        }
    }
}

fn tower_ranks_unchecked(t: &Tower) -> Vec<usize> {
    t.stages
        .par_iter()
        .map(|s| match s {
            Stage::Mesh { mesh, .. } => betti(mesh)[1],
            Stage::Rank(r) => *r,
        })
        .collect()
}

/// `b_1` of every stage (declared for rank-only stages).
pub fn tower_ranks(t: &Tower) -> Result<Vec<usize>> {
    t.validate()?;
    Ok(tower_ranks_unchecked(t))
}

pub const FINITE_TOWER_CAVEAT: &str =
    "finite tower: the bound holds for r(K) only if the tower extends to a neighbourhood basis of K";

/// Minimum rank over the last `window` stages (all stages by default),
/// with the caveat that always applies to it.
pub fn r_upper_bound(t: &Tower, window: Option<usize>) -> Result<(usize, String)> {
    let ranks = tower_ranks(t)?;
    let w = window.unwrap_or(ranks.len()).clamp(1, ranks.len());
    let r = *ranks[ranks.len() - w..].iter().min().expect("nonempty");
    Ok((r, FINITE_TOWER_CAVEAT.to_string()))
}

/// All composites `φ_{kℓ} : H_d(N_ℓ) → H_d(N_k)` for `k ≤ ℓ`; `[k][ℓ - k]`.
pub fn composite_maps(t: &Tower, d: usize) -> Result<Vec<Vec<Gf2Matrix>>> {
    t.validate()?;
    let n = t.len();
    let links: Vec<Gf2Matrix> = (0..n - 1).into_par_iter().map(|k| t.link_map(k, d)).collect::<Result<_>>()?;
    let dims: Vec<usize> = if d == 1 {
        tower_ranks_unchecked(t)
    } else {
        (0..n).map(|k| Ok(betti(t.stage_mesh(k)?)[d])).collect::<Result<_>>()?
    };
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = vec![Gf2Matrix::identity(dims[k])];
        for l in k + 1..n {
            let next = row.last().expect("nonempty").mul(&links[l - 1]);
            row.push(next);
        }
        out.push(row);
    }
    Ok(out)
}

/// Finite-depth stabilised rank of the direct system in dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualRank {
    pub rank: usize,
    /// `rank φ_{kℓ}` for the maximising `k` was constant over the last `window` values of `ℓ`.
    pub stabilized: bool,
    /// `rank φ_{kℓ}` as `[k][ℓ - k]`.
    pub ranks: Vec<Vec<usize>>,
}

/// Max over `k ≤ n - 1 - window` of `rank φ_{k,n-1}` (just `k = 0` if the
/// tower is too short). Since ranks drop along `ℓ`, `rank φ_{k,n-1}` is the
/// minimum over `ℓ ≥ k`; keeping `k` at least `window` stages from the end
/// stops the trivially full-rank `φ_{kk}` from dominating.
pub fn eventual_rank(t: &Tower, d: usize, window: usize) -> Result<EventualRank> {
    let maps = composite_maps(t, d)?;
    let ranks: Vec<Vec<usize>> = maps.iter().map(|row| row.iter().map(Gf2Matrix::rank).collect()).collect();
    let n = t.len();
    let last_k = (n - 1).saturating_sub(window);
    let (best_k, rank) = (0..=last_k)
        .map(|k| (k, *ranks[k].last().expect("nonempty")))
        .max_by_key(|&(k, r)| (r, std::cmp::Reverse(k)))
        .expect("nonempty range");
    let tail = &ranks[best_k];
    let w = window.max(1).min(tail.len());
    let stabilized = tail.len() > window && tail[tail.len() - w..].iter().all(|&r| r == rank);
    Ok(EventualRank { rank, stabilized, ranks })
}

#[derive(Clone, Debug)]
pub struct CrookednessReport {
    pub ranks: Vec<usize>,
    pub r_upper: usize,
    pub cech_lower: usize,
    pub c_estimate: usize,
    pub stabilized: bool,
    pub caveats: Vec<String>,
}

impl CrookednessReport {
    pub fn to_text(&self) -> String {
        let ranks: Vec<String> = self.ranks.iter().map(usize::to_string).collect();
        let mut out = format!(
            "ranks {}\nr_upper {}\ncech_lower {}\nc_estimate {}\nstabilized {}\n",
            ranks.join(" "),
            self.r_upper,
            self.cech_lower,
            self.c_estimate,
            self.stabilized
        );
        for c in &self.caveats {
            out.push_str("CAVEAT: ");
            out.push_str(c);
            out.push('\n');
        }
        out
    }
}

/// Ranks, the upper bound for `r(K)`, the eventual `H_1` rank as a lower
/// bound and their difference. Both read only the last stages: an outer
/// stage says nothing about a liminf.
pub fn crookedness_report(t: &Tower, window: usize) -> Result<CrookednessReport> {
    let (r_upper, caveat) = r_upper_bound(t, Some(window))?;
    let ranks = tower_ranks(t)?;
    let ev = eventual_rank(t, 1, window)?;
    if r_upper < ev.rank {
        return Err(Error::Inconsistent(format!(
            "upper bound {r_upper} is below the eventual rank {}",
            ev.rank
        )));
    }
    let mut caveats = vec![caveat];
    if !ev.stabilized {
        caveats.push(format!("composite ranks have not been constant over the last {window} stages"));
    }
    if t.links.iter().any(|l| matches!(l, Link::Algebraic(_))) {
        caveats.push("some links are declared matrices, not maps computed from meshes".into());
    }
    if r_upper > ev.rank {
        caveats.push(
            "c_estimate is the gap between the two bounds; reading it as c(K) relies on facts about K \
             (such as non-cellularity) that are not computed here"
                .into(),
        );
    }
    caveats.extend(t.notes.iter().map(|(k, s)| format!("stage {k}: {s}")));
    Ok(CrookednessReport {
        ranks,
        r_upper,
        cech_lower: ev.rank,
        c_estimate: r_upper - ev.rank,
        stabilized: ev.stabilized,
        caveats,
    })
}

#[derive(Clone, Debug)]
pub struct CellularityCertificate {
    /// Ball criterion per stage.
    pub balls: Vec<bool>,
    /// The tower after filling holes, when that was possible.
    pub filled: Option<Tower>,
    /// `N̂_{k+1} ⊆ N_k` for the filled tower.
    pub containments: Vec<bool>,
    pub certified: bool,
    /// Why the nullity upgrade was not possible, when it was attempted.
    pub upgrade_error: Option<String>,
}

/// Per-stage ball criterion. If some stage is not a ball but every stage
/// is a connected `b_1 = 0` region, the nullity upgrade is attempted too.
pub fn cellularity_certificate(t: &Tower) -> Result<CellularityCertificate> {
    t.validate()?;
    if !t.is_geometric() {
        return Err(Error::Tower("cellularity needs meshes at every stage".into()));
    }
    let balls: Vec<bool> = t
        .stages
        .par_iter()
        .map(|s| ball_criterion(s.as_mesh().expect("geometric")))
        .collect::<Result<_>>()?;
    if balls.iter().all(|&b| b) {
        return Ok(CellularityCertificate {
            containments: vec![true; t.len() - 1],
            balls,
            filled: None,
            certified: true,
            upgrade_error: None,
        });
    }
    let candidates = t.stages.iter().all(|s| {
        let b = betti(s.as_mesh().expect("geometric"));
        b[0] == 1 && b[1] == 0
    });
    let (filled, containments, upgrade_error) = match candidates.then(|| nullity_upgrade(t)) {
        Some(Ok(u)) => {
            let c = vec![true; u.len() - 1];
            (Some(u), c, None)
        }
        Some(Err(e)) => (None, Vec::new(), Some(e.to_string())),
        None => (None, Vec::new(), None),
    };
    Ok(CellularityCertificate {
        balls,
        filled,
        containments,
        certified: false,
        upgrade_error,
    })
}

fn bounding_box(m: &MeshComplex) -> Option<AxisBox> {
    let pts = m.points();
    let first = pts.first()?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for p in pts {
        for a in 0..3 {
            if p.coord(a) < lo.coord(a) {
                *lo.coord_mut(a) = p.coord(a).clone();
            }
            if p.coord(a) > hi.coord(a) {
                *hi.coord_mut(a) = p.coord(a).clone();
            }
        }
    }
    Some(AxisBox::new(lo, hi))
}

/// Fills the holes of every stage of a tower of perforated balls whose
/// `H_2` links are zero, checking `N̂_{k+1} ⊆ N_k`.
pub fn nullity_upgrade(t: &Tower) -> Result<Tower> {
    t.validate()?;
    let n = t.len();
    for k in 0..n {
        let m = t.stage_mesh(k)?;
        if !manifold_check(m)?.is_3_manifold {
            return Err(Error::NotManifold(format!("stage {k}")));
        }
        let b = betti(m);
        if b[0] != 1 || b[1] != 0 {
            return Err(Error::Tower(format!("stage {k} has Betti numbers {b:?}; b0 = 1 and b1 = 0 are required")));
        }
    }
    for k in 0..n - 1 {
        let f = t.link_map(k, 2)?;
        if !f.is_zero() {
            return Err(Error::H2Obstruction { stage: k, rank: f.rank() });
        }
    }
    let filled: Vec<MeshComplex> = t
        .stages
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            let Stage::Mesh { mesh, complement } = s else { unreachable!("geometric") };
            if betti(mesh)[2] == 0 {
                return Ok(mesh.clone());
            }
            let comp_mesh = complement
                .as_ref()
                .ok_or_else(|| Error::Tower(format!("stage {k} has holes but no complement to fill them from")))?;
            let bbox = bounding_box(comp_mesh).expect("nonempty complement");
            let comp = compactify(mesh, &bbox, Some(comp_mesh))?;
            Ok(fill_holes(mesh, &comp)?)
        })
        .collect::<Result<_>>()?;
    for k in 0..n - 1 {
        let outside = contained_in(&filled[k + 1], t.stage_mesh(k)?);
        if !outside.is_empty() {
            return Err(Error::ContainmentFailed {
                stage: k + 1,
                count: outside.len(),
            });
        }
    }
    let links = filled
        .windows(2)
        .map(|w| match w[1].as_subcomplex_of(&w[0]) {
            Ok(_) => Link::Subcomplex(None),
            Err(_) => Link::Simplicial(Vec::new()),
        })
        .collect::<Vec<_>>();
    if links.iter().any(|l| matches!(l, Link::Simplicial(_))) {
        return Err(Error::Tower("filled stages are not nested as subcomplexes".into()));
    }
    let upgraded = Tower {
        stages: filled.into_iter().map(Stage::mesh).collect(),
        links,
        notes: t.notes.clone(),
    };
    for (k, s) in upgraded.stages.iter().enumerate() {
        if !ball_criterion(s.as_mesh().expect("mesh"))? {
            return Err(Error::Inconsistent(format!("filled stage {k} is not a ball")));
        }
    }
    Ok(upgraded)
}

#[cfg(test)]
mod tests;
