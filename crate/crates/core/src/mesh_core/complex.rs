//! Abstract simplicial complexes, subcomplexes and embedded meshes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::geometry::{FloatBox, Rational, RationalPoint3};
use super::MeshError;

pub type VertexId = u32;

/// A simplex of dimension 0..=3 stored as a sorted vertex tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    len: u8,
    verts: [VertexId; 4],
}

impl Simplex {
    /// Sorts and stores `vs`. Panics on an empty slice, more than four
    /// vertices or a repeated vertex.
    pub fn new(vs: &[VertexId]) -> Self {
        Self::try_new(vs).unwrap_or_else(|| panic!("invalid simplex {vs:?}"))
    }

    pub fn try_new(vs: &[VertexId]) -> Option<Self> {
        if vs.is_empty() || vs.len() > 4 {
            return None;
        }
        let mut verts = [0; 4];
        verts[..vs.len()].copy_from_slice(vs);
        verts[..vs.len()].sort_unstable();
        if verts[..vs.len()].windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self {
            len: vs.len() as u8,
            verts,
        })
    }

    pub fn vertex(v: VertexId) -> Self {
        Self::new(&[v])
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts[..self.len as usize]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices().binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices().iter().all(|&v| other.contains_vertex(v))
    }

    /// Codimension-one faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.len as usize;
        (0..if n > 1 { n } else { 0 }).map(move |skip| {
            let mut vs = [0; 4];
            let mut k = 0;
            for (i, &v) in self.vertices().iter().enumerate() {
                if i != skip {
                    vs[k] = v;
                    k += 1;
                }
            }
            Simplex {
                len: (n - 1) as u8,
                verts: vs,
            }
        })
    }

    /// All nonempty faces including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.len as usize;
        let mut out = Vec::with_capacity((1 << n) - 1);
        for mask in 1u32..(1 << n) {
            let vs: Vec<VertexId> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.verts[i]).collect();
            out.push(Simplex::new(&vs));
        }
        out
    }

    /// Simplex with the vertices of `self` and `other` (join), if disjoint and small enough.
    pub fn join(&self, other: &Simplex) -> Option<Simplex> {
        let mut vs: Vec<VertexId> = self.vertices().to_vec();
        vs.extend_from_slice(other.vertices());
        Simplex::try_new(&vs)
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Option<Simplex> {
        let vs: Vec<VertexId> = self.vertices().iter().map(|&v| f(v)).collect();
        Simplex::try_new(&vs)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices())
    }
}

/// Finite, face-closed abstract simplicial complex of dimension at most 3.
///
/// Simplices of each dimension are kept sorted; the position of a simplex in
/// its dimension's list is its id.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Complex {
    simplices: [Vec<Simplex>; 4],
    index: [HashMap<Simplex, usize>; 4],
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{:?}", self.counts())
    }
}

impl Complex {
    /// Face closure of the given simplices.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut sets: [BTreeSet<Simplex>; 4] = Default::default();
        for s in simplices {
            if sets[s.dim()].contains(&s) {
                continue;
            }
            for f in s.faces() {
                sets[f.dim()].insert(f);
            }
        }
        Self::from_sorted_sets(sets)
    }

    fn from_sorted_sets(sets: [BTreeSet<Simplex>; 4]) -> Self {
        let simplices: [Vec<Simplex>; 4] = sets.map(|s| s.into_iter().collect());
        let index = std::array::from_fn(|d| simplices[d].iter().enumerate().map(|(i, s)| (*s, i)).collect());
        Self { simplices, index }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices[0].is_empty()
    }

    /// Highest dimension present (0 for an empty complex).
    pub fn dim(&self) -> usize {
        (0..4).rev().find(|&d| !self.simplices[d].is_empty()).unwrap_or(0)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> [usize; 4] {
        std::array::from_fn(|d| self.count(d))
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index[s.dim()].get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index[s.dim()].contains_key(s)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.simplices[0].iter().map(|s| s.vertices()[0])
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..4).map(|d| if d % 2 == 0 { 1 } else { -1 } * self.count(d) as i64).sum()
    }

    /// Simplices not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: [Vec<bool>; 4] = std::array::from_fn(|d| vec![false; self.count(d)]);
        for d in 1..4 {
            for s in &self.simplices[d] {
                for f in s.boundary() {
                    covered[d - 1][self.index[d - 1][&f]] = true;
                }
            }
        }
        (0..4)
            .flat_map(|d| {
                let covered = &covered[d];
                self.simplices[d].iter().enumerate().filter(move |(i, _)| !covered[*i]).map(|(_, s)| *s)
            })
            .collect()
    }

    /// Every simplex is a face of some 3-simplex.
    pub fn is_pure3(&self) -> bool {
        !self.is_empty() && self.maximal_simplices().iter().all(|s| s.dim() == 3)
    }

    /// Number of `d+1`-simplices containing each `d`-simplex.
    pub fn coface_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(d)];
        for s in self.simplices(d + 1) {
            for f in s.boundary() {
                counts[self.index[d][&f]] += 1;
            }
        }
        counts
    }

    /// Union of two complexes on the same vertex id space.
    pub fn union(&self, other: &Complex) -> Complex {
        Complex::from_simplices(self.all_simplices().chain(other.all_simplices()).copied())
    }

    /// Image under a vertex relabelling that must be injective on every simplex.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Option<Complex> {
        let mut out = Vec::new();
        for s in self.all_simplices() {
            out.push(s.map(&f)?);
        }
        Some(Complex::from_simplices(out))
    }

    /// Connected components as lists of vertex ids (sorted), ordered by least vertex.
    pub fn vertex_components(&self) -> Vec<Vec<VertexId>> {
        let ids: Vec<VertexId> = self.vertex_ids().collect();
        let pos: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for e in self.simplices(1) {
            let v = e.vertices();
            uf.union(pos[&v[0]], pos[&v[1]]);
        }
        let mut groups: HashMap<usize, Vec<VertexId>> = HashMap::new();
        for (i, v) in ids.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(*v);
        }
        let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
        for g in &mut out {
            g.sort_unstable();
        }
        out.sort();
        out
    }

    /// The subcomplex spanned by simplices all of whose vertices satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(VertexId) -> bool) -> Complex {
        Complex::from_simplices(self.all_simplices().filter(|s| s.vertices().iter().all(|&v| keep(v))).copied())
    }
}

/// Disjoint-set forest.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Face-closed subset of a parent complex, stored as per-dimension id masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    members: [Vec<bool>; 4],
}

impl Subcomplex {
    pub fn empty(parent: &Complex) -> Self {
        Self {
            members: std::array::from_fn(|d| vec![false; parent.count(d)]),
        }
    }

    pub fn full(parent: &Complex) -> Self {
        Self {
            members: std::array::from_fn(|d| vec![true; parent.count(d)]),
        }
    }

    /// Face closure of `simplices` inside `parent`; unknown simplices are an error.
    pub fn from_simplices<'a, I: IntoIterator<Item = &'a Simplex>>(
        parent: &Complex,
        simplices: I,
    ) -> Result<Self, MeshError> {
        let mut sub = Self::empty(parent);
        for s in simplices {
            if !parent.contains(s) {
                return Err(MeshError::UnknownSimplex(format!("{s:?}")));
            }
            for f in s.faces() {
                let i = parent.index_of(&f).expect("parent is face-closed");
                sub.members[f.dim()][i] = true;
            }
        }
        Ok(sub)
    }

    /// Wraps raw masks after checking sizes and face-closure.
    pub fn from_masks(parent: &Complex, members: [Vec<bool>; 4]) -> Result<Self, MeshError> {
        for d in 0..4 {
            if members[d].len() != parent.count(d) {
                return Err(MeshError::NotFaceClosed("mask size does not match the parent".into()));
            }
        }
        let sub = Self { members };
        sub.check_face_closed(parent)?;
        Ok(sub)
    }

    pub fn check_face_closed(&self, parent: &Complex) -> Result<(), MeshError> {
        for d in 1..4 {
            for (i, s) in parent.simplices(d).iter().enumerate() {
                if !self.members[d][i] {
                    continue;
                }
                for f in s.boundary() {
                    let j = parent.index_of(&f).expect("parent is face-closed");
                    if !self.members[d - 1][j] {
                        return Err(MeshError::NotFaceClosed(format!("{s:?} present without face {f:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, d: usize, id: usize) -> bool {
        self.members[d][id]
    }

    pub fn contains_simplex(&self, parent: &Complex, s: &Simplex) -> bool {
        parent.index_of(s).is_some_and(|i| self.members[s.dim()][i])
    }

    pub fn count(&self, d: usize) -> usize {
        self.members[d].iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count(0) == 0
    }

    pub fn masks(&self) -> &[Vec<bool>; 4] {
        &self.members
    }

    pub fn simplices<'a>(&'a self, parent: &'a Complex) -> impl Iterator<Item = Simplex> + 'a {
        (0..4).flat_map(move |d| {
            parent.simplices(d).iter().enumerate().filter(move |(i, _)| self.members[d][*i]).map(|(_, s)| *s)
        })
    }

    /// The subcomplex as a complex on the parent's vertex ids.
    pub fn to_complex(&self, parent: &Complex) -> Complex {
        Complex::from_simplices(self.simplices(parent))
    }
}

/// Embedded simplicial complex in R^3: vertex `i` sits at `points[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct MeshComplex {
    points: Vec<RationalPoint3>,
    complex: Complex,
}

impl fmt::Debug for MeshComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MeshComplex(v={}, counts={:?})", self.points.len(), self.complex.counts())
    }
}

impl MeshComplex {
    pub fn empty() -> Self {
        Self {
            points: Vec::new(),
            complex: Complex::default(),
        }
    }

    /// Builds the face closure of `simplices` over `points`. Every point
    /// becomes a vertex; labels outside `0..points.len()` are rejected.
    pub fn new(points: Vec<RationalPoint3>, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self, MeshError> {
        let n = points.len() as VertexId;
        let mut all = Vec::new();
        for s in simplices {
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= n) {
                return Err(MeshError::DanglingVertex(v));
            }
            all.push(s);
        }
        all.extend((0..n).map(Simplex::vertex));
        Ok(Self {
            points,
            complex: Complex::from_simplices(all),
        })
    }

    /// Builds a mesh from tuples of coordinates, identifying equal points.
    pub fn from_geometric_simplices<'a, I>(simplices: I) -> Self
    where
        I: IntoIterator<Item = &'a [RationalPoint3]>,
    {
        let mut builder = MeshBuilder::default();
        for pts in simplices {
            builder.add_simplex(pts);
        }
        builder.build()
    }

    pub fn points(&self) -> &[RationalPoint3] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> &RationalPoint3 {
        &self.points[v as usize]
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tetrahedra(&self) -> &[Simplex] {
        self.complex.simplices(3)
    }

    pub fn simplex_points(&self, s: &Simplex) -> Vec<RationalPoint3> {
        s.vertices().iter().map(|&v| self.points[v as usize].clone()).collect()
    }

    /// Lookup table from coordinates to vertex ids.
    pub fn point_index(&self) -> HashMap<&RationalPoint3, VertexId> {
        self.points.iter().enumerate().map(|(i, p)| (p, i as VertexId)).collect()
    }

    /// Looks up a simplex given by coordinates.
    pub fn find_simplex(&self, index: &HashMap<&RationalPoint3, VertexId>, pts: &[RationalPoint3]) -> Option<Simplex> {
        let vs: Option<Vec<VertexId>> = pts.iter().map(|p| index.get(p).copied()).collect();
        let s = Simplex::try_new(&vs?)?;
        self.complex.contains(&s).then_some(s)
    }

    /// Same geometry with vertices relabelled in lexicographic coordinate order.
    pub fn canonical(&self) -> Self {
        let mut order: Vec<VertexId> = (0..self.points.len() as VertexId).collect();
        order.sort_by(|&a, &b| self.points[a as usize].cmp(&self.points[b as usize]));
        let mut new_id = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old as usize] = new as VertexId;
        }
        let points = order.iter().map(|&v| self.points[v as usize].clone()).collect();
        let complex = self.complex.relabel(|v| new_id[v as usize]).expect("bijective relabel");
        Self { points, complex }
    }

    /// True when the vertex order is the lexicographic coordinate order.
    pub fn is_canonical(&self) -> bool {
        self.points.windows(2).all(|w| w[0] < w[1])
    }

    /// The mesh restricted to a subcomplex, with vertices renumbered densely.
    pub fn submesh(&self, sub: &Subcomplex) -> Self {
        self.restrict(sub.simplices(&self.complex))
    }

    /// Face closure of the given simplices of `self`, with dense vertex ids.
    pub fn restrict<I: IntoIterator<Item = Simplex>>(&self, simplices: I) -> Self {
        let mut builder = MeshBuilder::default();
        for s in simplices {
            let pts = self.simplex_points(&s);
            builder.add_simplex(&pts);
        }
        builder.build()
    }

    /// Translates every vertex by `delta` along `axis`.
    pub fn translated(&self, axis: usize, delta: &Rational) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                let c = p.coord(axis) + delta;
                p.with_coord(axis, c)
            })
            .collect();
        Self {
            points,
            complex: self.complex.clone(),
        }
    }

    /// Applies an arbitrary exact map to the coordinates.
    pub fn map_points(&self, f: impl Fn(&RationalPoint3) -> RationalPoint3) -> Self {
        let mut builder = MeshBuilder::default();
        for s in self.complex.all_simplices() {
            let pts: Vec<RationalPoint3> = s.vertices().iter().map(|&v| f(&self.points[v as usize])).collect();
            builder.add_simplex(&pts);
        }
        builder.build()
    }

    pub(crate) fn float_box(&self, s: &Simplex) -> FloatBox {
        FloatBox::of(s.vertices().iter().map(|&v| &self.points[v as usize]))
    }

    /// Subcomplex of `self` consisting of simplices that also appear (by
    /// coordinates) in `other`.
    pub fn common_subcomplex(&self, other: &MeshComplex) -> MeshComplex {
        let idx = other.point_index();
        self.restrict(
            self.complex
                .all_simplices()
                .filter(|s| other.find_simplex(&idx, &self.simplex_points(s)).is_some())
                .copied(),
        )
    }

    /// The simplices of `self` found in `parent`, as a subcomplex of `parent`.
    pub fn as_subcomplex_of(&self, parent: &MeshComplex) -> Result<Subcomplex, MeshError> {
        let idx = parent.point_index();
        let mut found = Vec::new();
        for s in self.complex.all_simplices() {
            match parent.find_simplex(&idx, &self.simplex_points(s)) {
                Some(t) => found.push(t),
                None => return Err(MeshError::UnknownSimplex(format!("{:?}", self.simplex_points(s)))),
            }
        }
        Subcomplex::from_simplices(parent.complex(), found.iter())
    }
}

/// Incremental mesh construction with exact vertex identification.
#[derive(Default)]
pub struct MeshBuilder {
    points: Vec<RationalPoint3>,
    lookup: HashMap<RationalPoint3, VertexId>,
    simplices: Vec<Simplex>,
}

impl MeshBuilder {
    pub fn vertex(&mut self, p: &RationalPoint3) -> VertexId {
        if let Some(&v) = self.lookup.get(p) {
            return v;
        }
        let v = self.points.len() as VertexId;
        self.points.push(p.clone());
        self.lookup.insert(p.clone(), v);
        v
    }

    /// Adds the simplex spanned by `pts`; coincident points are merged, so a
    /// tuple with repeated coordinates is skipped.
    pub fn add_simplex(&mut self, pts: &[RationalPoint3]) {
        let vs: Vec<VertexId> = pts.iter().map(|p| self.vertex(p)).collect();
        if let Some(s) = Simplex::try_new(&vs) {
            self.simplices.push(s);
        }
    }

    pub fn add_mesh(&mut self, mesh: &MeshComplex) {
        for s in mesh.complex().maximal_simplices() {
            let pts = mesh.simplex_points(&s);
            self.add_simplex(&pts);
        }
    }

    /// Canonical (lexicographically labelled) mesh.
    pub fn build(self) -> MeshComplex {
        MeshComplex::new(self.points, self.simplices).expect("builder ids are in range").canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_is_sorted_and_faces_closed() {
        let s = Simplex::new(&[3, 1, 2]);
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert_eq!(s.faces().len(), 7);
        assert!(Simplex::try_new(&[1, 1]).is_none());
        let c = Complex::from_simplices([Simplex::new(&[0, 1, 2, 3])]);
        assert_eq!(c.counts(), [4, 6, 4, 1]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn subcomplex_closure_checks() {
        let c = Complex::from_simplices([Simplex::new(&[0, 1, 2])]);
        let sub = Subcomplex::from_simplices(&c, [Simplex::new(&[0, 1])].iter()).unwrap();
        assert_eq!(sub.count(0), 2);
        let mut masks = sub.masks().clone();
        masks[0][0] = false;
        assert!(Subcomplex::from_masks(&c, masks).is_err());
    }

    #[test]
    fn dangling_vertex_is_structural_error() {
        let pts = vec![RationalPoint3::from_ints(0, 0, 0)];
        assert!(matches!(
            MeshComplex::new(pts, [Simplex::new(&[0, 5])]),
            Err(MeshError::DanglingVertex(5))
        ));
    }
}
