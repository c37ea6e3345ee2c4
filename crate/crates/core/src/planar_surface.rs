//! Compact surfaces lying in a coordinate plane.
//!
//! A compact connected surface in the plane is a disk with holes. Each
//! component `C` is reported with its boundary loops, its outer loop, the
//! capping set `C*` (one triangulated disk per hole) and the disk
//! `Ĉ = C ∪ C*`. Components are nested by containment of their outer loops.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::mesh_core::predicates::{in_open_segment, orient2d, HomPoint};
use crate::mesh_core::{surface_check, Complex, MeshBuilder, MeshComplex, Rational, RationalPoint3, UnionFind, VertexId};
use crate::z2_homology::betti;
use crate::{Error, Result};

/// A closed polygonal loop, starting at its lexicographically least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub points: Vec<RationalPoint3>,
}

impl Loop {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn least(&self) -> &RationalPoint3 {
        &self.points[0]
    }
}

#[derive(Clone, Debug)]
pub struct PlanarComponent {
    /// The component `C` itself.
    pub surface: MeshComplex,
    pub loops: Vec<Loop>,
    /// Index into `loops` of the outermost boundary loop.
    pub outer: usize,
    /// One triangulated disk per hole, in the order of the hole loops.
    pub cap_disks: Vec<MeshComplex>,
    /// Union of `cap_disks`.
    pub caps: MeshComplex,
    /// `C ∪ C*`.
    pub disk: MeshComplex,
}

impl PlanarComponent {
    pub fn holes(&self) -> usize {
        self.loops.len() - 1
    }

    pub fn outer_loop(&self) -> &Loop {
        &self.loops[self.outer]
    }

    /// Lexicographically least vertex; it lies on the outer loop.
    pub fn least(&self) -> &RationalPoint3 {
        self.outer_loop().least()
    }
}

#[derive(Clone, Debug)]
pub struct PlanarDecomposition {
    /// The axis normal to the plane of the surface.
    pub axis: usize,
    pub offset: Rational,
    /// Sorted by least vertex.
    pub components: Vec<PlanarComponent>,
    /// Immediately enclosing component, if any.
    pub parent: Vec<Option<usize>>,
    /// Children before parents, ties broken by least vertex.
    pub order: Vec<usize>,
}

impl PlanarDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether component `i` lies inside the disk of component `j`.
    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        let mut cur = self.parent[i];
        while let Some(p) = cur {
            if p == j {
                return true;
            }
            cur = self.parent[p];
        }
        false
    }

    /// Components with no enclosing component.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parent[i].is_none()).collect()
    }

    /// One line per component: id, hole count, parent (or `-`), order index.
    pub fn report_text(&self) -> String {
        let mut out = String::from("component holes parent order\n");
        for (i, c) in self.components.iter().enumerate() {
            let parent = self.parent[i].map_or("-".to_string(), |p| p.to_string());
            let pos = self.order.iter().position(|&k| k == i).expect("order is a permutation");
            writeln!(out, "{i} {} {parent} {pos}", c.holes()).unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Location {
    Inside,
    Outside,
    On,
}

/// Exact point-in-polygon by crossing parity with half-open edges.
fn locate(p: &HomPoint, poly: &[HomPoint], axis: usize) -> Location {
    let v = (axis + 2) % 3;
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        if (0..3).all(|k| a.cmp_coord(p, k) == Ordering::Equal) || in_open_segment(p, a, b) {
            return Location::On;
        }
        let (ca, cb) = (a.cmp_coord(p, v), b.cmp_coord(p, v));
        let up = ca != Ordering::Greater && cb == Ordering::Greater;
        let down = cb != Ordering::Greater && ca == Ordering::Greater;
        let o = orient2d(a, b, p, axis);
        if (up && o > 0) || (down && o < 0) {
            inside = !inside;
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// The axis along which all vertices share one coordinate (z preferred).
fn plane_axis(surface: &MeshComplex) -> Option<(usize, Rational)> {
    let first = surface.points().first()?;
    [2, 0, 1]
        .into_iter()
        .find(|&a| surface.points().iter().all(|p| p.coord(a) == first.coord(a)))
        .map(|a| (a, first.coord(a).clone()))
}

/// Traces the boundary edges (those in exactly one triangle) into loops.
fn trace_loops(c: &Complex) -> Result<Vec<Vec<VertexId>>> {
    let counts = c.coface_counts(1);
    let mut adj: std::collections::BTreeMap<VertexId, Vec<VertexId>> = Default::default();
    for (e, _) in c.simplices(1).iter().zip(&counts).filter(|(_, &n)| n == 1) {
        let v = e.vertices();
        adj.entry(v[0]).or_default().push(v[1]);
        adj.entry(v[1]).or_default().push(v[0]);
    }
    if let Some((v, _)) = adj.iter().find(|(_, n)| n.len() != 2) {
        return Err(Error::Planar(format!("boundary vertex {v} does not have exactly two boundary edges")));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut loops = Vec::new();
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut lp = vec![start];
        let (mut prev, mut cur) = (start, adj[&start][0]);
        while cur != start {
            if !seen.insert(cur) {
                return Err(Error::Planar(format!("loop tracing revisited vertex {cur}")));
            }
            lp.push(cur);
            let nb = &adj[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            (prev, cur) = (cur, next);
        }
        if lp.len() < 3 {
            return Err(Error::Planar("boundary loop with fewer than three vertices".into()));
        }
        loops.push(lp);
    }
    Ok(loops)
}

/// Rotates a loop to start at its least vertex.
fn normalize_loop(mut pts: Vec<RationalPoint3>) -> Loop {
    let k = (0..pts.len()).min_by(|&i, &j| pts[i].cmp(&pts[j])).expect("nonempty loop");
    pts.rotate_left(k);
    Loop { points: pts }
}

/// Triangulates the disk bounded by a simple loop: a fan from its least
/// vertex when every fan triangle is strictly oriented, otherwise ear clipping.
fn triangulate_loop(lp: &Loop, axis: usize) -> Result<Vec<[usize; 3]>> {
    let h: Vec<HomPoint> = lp.points.iter().map(HomPoint::new).collect();
    let n = h.len();
    let sign = orient2d(&h[n - 1], &h[0], &h[1], axis);
    if sign == 0 {
        return Err(Error::Planar("degenerate loop at its least vertex".into()));
    }
    if (1..n - 1).all(|i| orient2d(&h[0], &h[i], &h[i + 1], axis) == sign) {
        return Ok((1..n - 1).map(|i| [0, i, i + 1]).collect());
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut tris = Vec::with_capacity(n - 2);
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&k| {
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            if orient2d(&h[a], &h[b], &h[c], axis) != sign {
                return false;
            }
            idx.iter().filter(|&&q| q != a && q != b && q != c).all(|&q| {
                let s = [orient2d(&h[a], &h[b], &h[q], axis), orient2d(&h[b], &h[c], &h[q], axis), orient2d(&h[c], &h[a], &h[q], axis)];
                s.iter().any(|&x| x == -sign)
            })
        });
        let k = ear.ok_or_else(|| Error::Planar("ear clipping found no ear; loop is not simple".into()))?;
        tris.push([idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]]);
        idx.remove(k);
    }
    if orient2d(&h[idx[0]], &h[idx[1]], &h[idx[2]], axis) != sign {
        return Err(Error::Planar("ear clipping left a degenerate triangle".into()));
    }
    tris.push([idx[0], idx[1], idx[2]]);
    Ok(tris)
}

fn disk_from_loop(lp: &Loop, axis: usize) -> Result<MeshComplex> {
    let mut b = MeshBuilder::default();
    for t in triangulate_loop(lp, axis)? {
        b.add_simplex(&t.map(|i| lp.points[i].clone()));
    }
    Ok(b.build())
}

fn analyse_component(surface: MeshComplex, axis: usize) -> Result<PlanarComponent> {
    let raw = trace_loops(surface.complex())?;
    if raw.is_empty() {
        return Err(Error::Planar("a compact planar component must have boundary".into()));
    }
    let loops: Vec<Loop> =
        raw.iter().map(|l| normalize_loop(l.iter().map(|&v| surface.point(v).clone()).collect())).collect();
    let least = surface.points().iter().min().expect("nonempty component");
    let outer = loops
        .iter()
        .position(|l| l.points.contains(least))
        .ok_or_else(|| Error::Planar("least vertex is not on a boundary loop".into()))?;
    let outer_h: Vec<HomPoint> = loops[outer].points.iter().map(HomPoint::new).collect();
    for (k, l) in loops.iter().enumerate().filter(|(k, _)| *k != outer) {
        if locate(&HomPoint::new(l.least()), &outer_h, axis) != Location::Inside {
            return Err(Error::Planar(format!("boundary loop {k} is not enclosed by the outer loop")));
        }
    }
    let cap_disks: Vec<MeshComplex> = loops
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != outer)
        .map(|(_, l)| disk_from_loop(l, axis))
        .collect::<Result<_>>()?;
    let mut caps = MeshBuilder::default();
    let mut disk = MeshBuilder::default();
    disk.add_mesh(&surface);
    for d in &cap_disks {
        caps.add_mesh(d);
        disk.add_mesh(d);
    }
    let (caps, disk) = (caps.build(), disk.build());

    let holes = loops.len() - 1;
    let bc = betti(&surface);
    let bd = betti(&disk);
    if bc[0] != 1 || bc[1] != holes {
        return Err(Error::Planar(format!("component has Betti numbers {bc:?} but {holes} holes")));
    }
    if bd[0] != 1 || bd[1] != 0 || bd[2] != 0 {
        return Err(Error::Planar(format!("component plus caps has Betti numbers {bd:?}, not a disk")));
    }
    Ok(PlanarComponent {
        surface,
        loops,
        outer,
        cap_disks,
        caps,
        disk,
    })
}

/// Splits a planar compact surface into disks with holes, nests them and
/// orders them so that interior components come first.
pub fn decompose(surface: &MeshComplex) -> Result<PlanarDecomposition> {
    let Some((axis, offset)) = plane_axis(surface) else {
        if surface.is_empty() {
            return Ok(PlanarDecomposition {
                axis: 2,
                offset: Rational::default(),
                components: Vec::new(),
                parent: Vec::new(),
                order: Vec::new(),
            });
        }
        return Err(Error::Planar("surface does not lie in a coordinate plane".into()));
    };
    let report = surface_check(surface);
    if !report.is_2_manifold {
        return Err(Error::Planar(format!(
            "not a 2-manifold: {} offending simplices",
            report.offending_simplices.len()
        )));
    }
    let c = surface.complex();
    let tris = c.simplices(2);
    let mut uf = UnionFind::new(tris.len());
    let mut first_on_edge: std::collections::HashMap<(VertexId, VertexId), usize> = Default::default();
    for (i, t) in tris.iter().enumerate() {
        let v = t.vertices();
        for e in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
            if let Some(&j) = first_on_edge.get(&e) {
                uf.union(i, j);
            } else {
                first_on_edge.insert(e, i);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..tris.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let pieces: Vec<MeshComplex> =
        groups.into_values().map(|g| surface.restrict(g.into_iter().map(|i| tris[i]))).collect();
    let mut components: Vec<PlanarComponent> =
        pieces.into_iter().map(|p| analyse_component(p, axis)).collect::<Result<_>>()?;
    components.sort_by(|a, b| a.least().cmp(b.least()));

    let n = components.len();
    let outers: Vec<Vec<HomPoint>> =
        components.iter().map(|c| c.outer_loop().points.iter().map(HomPoint::new).collect()).collect();
    let mut encloses = vec![vec![false; n]; n];
    for i in 0..n {
        let p = HomPoint::new(components[i].least());
        for j in (0..n).filter(|&j| j != i) {
            match locate(&p, &outers[j], axis) {
                Location::Inside => encloses[j][i] = true,
                Location::Outside => {}
                Location::On => return Err(Error::Planar(format!("components {i} and {j} touch"))),
            }
        }
    }
    let depth: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| encloses[j][i]).count()).collect();
    let parent: Vec<Option<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| encloses[j][i]).max_by_key(|&j| (depth[j], std::cmp::Reverse(j)))).collect();
    for i in 0..n {
        if let Some(p) = parent[i] {
            if depth[p] + 1 != depth[i] {
                return Err(Error::Planar("containment of outer loops is not a nesting".into()));
            }
        }
    }
    let mut d = PlanarDecomposition {
        axis,
        offset,
        components,
        parent,
        order: Vec::new(),
    };
    d.order = order_components(&d);
    debug_assert!(respects_interiority(&d, &d.order));
    Ok(d)
}

/// Topological order of the nesting forest, children first; among
/// available components the one with the least vertex goes first.
pub fn order_components(d: &PlanarDecomposition) -> Vec<usize> {
    let n = d.len();
    let mut pending_children = vec![0usize; n];
    for p in d.parent.iter().flatten() {
        pending_children[*p] += 1;
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| pending_children[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        if let Some(p) = d.parent[i] {
            pending_children[p] -= 1;
            if pending_children[p] == 0 {
                ready.insert(p);
            }
        }
    }
    order
}

/// Whether every component interior to another precedes it in `order`.
pub fn respects_interiority(d: &PlanarDecomposition, order: &[usize]) -> bool {
    let mut pos = vec![usize::MAX; d.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    (0..d.len()).all(|i| (0..d.len()).all(|j| !d.is_interior(i, j) || pos[i] < pos[j]))
}

/// The capping set `C*` of component `i`.
pub fn capping_set(d: &PlanarDecomposition, i: usize) -> Result<MeshComplex> {
    let c = d
        .components
        .get(i)
        .ok_or_else(|| Error::Planar(format!("component {i} out of range 0..{}", d.len())))?;
    Ok(c.caps.clone())
}
