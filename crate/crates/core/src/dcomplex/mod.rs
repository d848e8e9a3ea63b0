//! Δ-complexes: ordered tetrahedra (or triangles) with face identifications.
//!
//! Every simplex carries its local vertex order `0 < 1 < 2 < 3`. Face `f` of
//! a tetrahedron is the triangle opposite vertex `f`, with its three vertices
//! listed in increasing order. Gluings are required to respect these orders,
//! so a gluing is determined by the two faces alone and every edge class has
//! a well-defined direction (from its lower to its higher local vertex).

mod presets;
mod surface;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::groups::Presentation;

pub use presets::*;
pub use surface::{glue_surfaces, side_vertices, BoundarySurface, DeltaComplex2, SideRef};

/// Local edges of a tetrahedron, indexed `0..6`.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    TET_EDGES
        .iter()
        .position(|&e| e == (i, j))
        .expect("distinct vertices 0..4")
}

/// Vertices of face `f` (the face opposite vertex `f`) in increasing order.
pub fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceRef {
    pub tet: usize,
    pub face: usize,
}

impl FaceRef {
    pub const fn new(tet: usize, face: usize) -> Self {
        FaceRef { tet, face }
    }
}

/// An oriented edge path. Each step is an edge class traversed forwards
/// (tail to head) or backwards.
pub type Loop = Vec<(usize, bool)>;

/// The part of a complex the gauge field sees: vertex classes, directed edge
/// classes, and one flatness constraint `g(e02) = g(e01)·g(e12)` per
/// triangle class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub num_vertices: usize,
    pub edge_ends: Vec<(usize, usize)>,
    /// `[e01, e12, e02]`.
    pub triangles: Vec<[usize; 3]>,
}

impl Skeleton {
    pub fn num_edges(&self) -> usize {
        self.edge_ends.len()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so representatives are lowest-first
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class ids numbered by first occurrence.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        self.classes_in_order(0..n)
    }

    /// Class ids numbered by first occurrence along `order`, which must visit every element.
    pub(crate) fn classes_in_order(&mut self, order: impl IntoIterator<Item = usize>) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for x in order {
            let r = self.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = count;
                count += 1;
            }
            out[x] = id_of_root[r];
        }
        (out, count)
    }
}

#[derive(Clone, Debug)]
pub struct DeltaComplex3 {
    name: Option<String>,
    partner: Vec<[Option<FaceRef>; 4]>,
    eps: Vec<i8>,
    vertex_of: Vec<[usize; 4]>,
    edge_of: Vec<[usize; 6]>,
    tri_of: Vec<[usize; 4]>,
    num_vertices: usize,
    num_edges: usize,
    tri_faces: Vec<Vec<FaceRef>>,
    skeleton: Skeleton,
    loops: Vec<Loop>,
    presentation: Option<Presentation>,
}

impl PartialEq for DeltaComplex3 {
    fn eq(&self, other: &Self) -> bool {
        self.partner == other.partner && self.eps == other.eps
    }
}

impl DeltaComplex3 {
    /// Builds a complex from face pairings; orientation is found by
    /// propagation, with the lowest tetrahedron of each component positive.
    pub fn from_gluings(num_tets: usize, gluings: &[(FaceRef, FaceRef)]) -> Result<Self, ComplexError> {
        Self::build(partner_table(num_tets, gluings)?, None)
    }

    /// As [`from_gluings`](Self::from_gluings) but with prescribed signs,
    /// which must make every gluing orientation reversing.
    pub fn from_gluings_oriented(
        num_tets: usize,
        gluings: &[(FaceRef, FaceRef)],
        eps: Vec<i8>,
    ) -> Result<Self, ComplexError> {
        Self::build(partner_table(num_tets, gluings)?, Some(eps))
    }

    fn build(partner: Vec<[Option<FaceRef>; 4]>, eps: Option<Vec<i8>>) -> Result<Self, ComplexError> {
        let n = partner.len();
        for t in 0..n {
            for f in 0..4 {
                if let Some(p) = partner[t][f] {
                    if p.tet >= n || p.face >= 4 {
                        return Err(ComplexError::DanglingFace(format!(
                            "tetrahedron {t} face {f} points at tetrahedron {} face {}",
                            p.tet, p.face
                        )));
                    }
                    if p == FaceRef::new(t, f) || partner[p.tet][p.face] != Some(FaceRef::new(t, f)) {
                        return Err(ComplexError::NotInvolution { tet: t, face: f });
                    }
                }
            }
        }

        let mut vuf = UnionFind::new(4 * n);
        let mut euf = UnionFind::new(6 * n);
        let mut tuf = UnionFind::new(4 * n);
        for t in 0..n {
            for f in 0..4 {
                let Some(p) = partner[t][f] else { continue };
                let (a, b) = (face_vertices(f), face_vertices(p.face));
                for i in 0..3 {
                    vuf.union(4 * t + a[i], 4 * p.tet + b[i]);
                }
                for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                    euf.union(6 * t + edge_index(a[i], a[j]), 6 * p.tet + edge_index(b[i], b[j]));
                }
                tuf.union(4 * t + f, 4 * p.tet + p.face);
            }
        }
        let (vclass, num_vertices) = vuf.classes();
        let (eclass, num_edges) = euf.classes();
        let (tclass, num_tris) = tuf.classes();
        let vertex_of: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|v| vclass[4 * t + v])).collect();
        let edge_of: Vec<[usize; 6]> = (0..n).map(|t| std::array::from_fn(|e| eclass[6 * t + e])).collect();
        let tri_of: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|f| tclass[4 * t + f])).collect();

        let eps = match eps {
            Some(eps) => {
                if eps.len() != n || eps.iter().any(|&e| e != 1 && e != -1) {
                    return Err(ComplexError::DanglingFace(format!(
                        "orientation has {} entries for {n} tetrahedra",
                        eps.len()
                    )));
                }
                for t in 0..n {
                    for f in 0..4 {
                        if let Some(p) = partner[t][f] {
                            if eps[p.tet] != induced_sign(eps[t], f, p.face) {
                                return Err(ComplexError::NonOrientable { tet: t, face: f });
                            }
                        }
                    }
                }
                eps
            }
            None => orient(&partner)?,
        };

        let mut edge_ends = vec![(usize::MAX, usize::MAX); num_edges];
        for t in (0..n).rev() {
            for (k, &(i, j)) in TET_EDGES.iter().enumerate() {
                edge_ends[edge_of[t][k]] = (vertex_of[t][i], vertex_of[t][j]);
            }
        }
        let mut tri_faces = vec![Vec::new(); num_tris];
        for t in 0..n {
            for f in 0..4 {
                tri_faces[tri_of[t][f]].push(FaceRef::new(t, f));
            }
        }
        let triangles = tri_faces
            .iter()
            .map(|faces| {
                let FaceRef { tet, face } = faces[0];
                let [a, b, c] = face_vertices(face);
                let e = |i, j| edge_of[tet][edge_index(i, j)];
                [e(a, b), e(b, c), e(a, c)]
            })
            .collect();

        Ok(DeltaComplex3 {
            name: None,
            partner,
            eps,
            vertex_of,
            edge_of,
            tri_of,
            num_vertices,
            num_edges,
            tri_faces,
            skeleton: Skeleton {
                num_vertices,
                edge_ends,
                triangles,
            },
            loops: Vec::new(),
            presentation: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn with_loops(mut self, loops: Vec<Loop>, presentation: Option<Presentation>) -> Self {
        self.loops = loops;
        self.presentation = presentation;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("complex({} tets)", self.num_tets()))
    }

    pub fn num_tets(&self) -> usize {
        self.partner.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_triangles(&self) -> usize {
        self.tri_faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges as i64 + self.num_triangles() as i64 - self.num_tets() as i64
    }

    pub fn partner(&self, face: FaceRef) -> Option<FaceRef> {
        self.partner[face.tet][face.face]
    }

    pub fn orientation(&self, tet: usize) -> i8 {
        self.eps[tet]
    }

    pub fn orientations(&self) -> &[i8] {
        &self.eps
    }

    pub fn vertex(&self, tet: usize, v: usize) -> usize {
        self.vertex_of[tet][v]
    }

    /// Edge class of the local edge `(i, j)` of `tet`.
    pub fn edge(&self, tet: usize, i: usize, j: usize) -> usize {
        self.edge_of[tet][edge_index(i, j)]
    }

    pub fn tet_edges(&self, tet: usize) -> &[usize; 6] {
        &self.edge_of[tet]
    }

    pub fn triangle_class(&self, face: FaceRef) -> usize {
        self.tri_of[face.tet][face.face]
    }

    pub fn triangle_faces(&self, class: usize) -> &[FaceRef] {
        &self.tri_faces[class]
    }

    /// Edge classes `[e01, e12, e02]` of a face, in its vertex order.
    pub fn face_edges(&self, face: FaceRef) -> [usize; 3] {
        let [a, b, c] = face_vertices(face.face);
        [
            self.edge(face.tet, a, b),
            self.edge(face.tet, b, c),
            self.edge(face.tet, a, c),
        ]
    }

    pub fn face_vertex_classes(&self, face: FaceRef) -> [usize; 3] {
        face_vertices(face.face).map(|v| self.vertex_of[face.tet][v])
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// Each gluing once, as `(a, b)` with `a < b`.
    pub fn gluings(&self) -> Vec<(FaceRef, FaceRef)> {
        let mut out = Vec::new();
        for t in 0..self.num_tets() {
            for f in 0..4 {
                let a = FaceRef::new(t, f);
                if let Some(b) = self.partner[t][f] {
                    if a < b {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    pub fn boundary_faces(&self) -> Vec<FaceRef> {
        (0..self.num_tets())
            .flat_map(|t| (0..4).map(move |f| FaceRef::new(t, f)))
            .filter(|&x| self.partner(x).is_none())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.partner.iter().all(|p| p.iter().all(Option::is_some))
    }

    /// Boundary edge classes in increasing order.
    pub fn boundary_edges(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .boundary_faces()
            .into_iter()
            .flat_map(|f| self.face_edges(f))
            .collect();
        set.into_iter().collect()
    }

    /// Boundary vertex classes in increasing order.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .boundary_faces()
            .into_iter()
            .flat_map(|f| self.face_vertex_classes(f))
            .collect();
        set.into_iter().collect()
    }

    pub fn num_interior_vertices(&self) -> usize {
        self.num_vertices - self.boundary_vertices().len()
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.num_tets());
        for (a, b) in self.gluings() {
            uf.union(a.tet, b.tet);
        }
        uf.classes().1
    }

    /// Checks that every vertex link is a sphere (interior) or a disk
    /// (boundary), using link Euler characteristics.
    pub fn check_manifold(&self) -> Result<(), ComplexError> {
        let v = self.num_vertices;
        let mut link_v = vec![0i64; v];
        let mut link_e = vec![0i64; v];
        let mut link_t = vec![0i64; v];
        for &(a, b) in &self.skeleton.edge_ends {
            link_v[a] += 1;
            link_v[b] += 1;
        }
        for faces in &self.tri_faces {
            for c in self.face_vertex_classes(faces[0]) {
                link_e[c] += 1;
            }
        }
        for row in &self.vertex_of {
            for &c in row {
                link_t[c] += 1;
            }
        }
        let on_boundary: BTreeSet<usize> = self.boundary_vertices().into_iter().collect();
        for c in 0..v {
            let chi = link_v[c] - link_e[c] + link_t[c];
            let want = if on_boundary.contains(&c) { 1 } else { 2 };
            if chi != want {
                return Err(ComplexError::NotManifold(format!(
                    "vertex class {c} has link Euler characteristic {chi}, expected {want}"
                )));
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> DeltaComplex3 {
        let mut out = self.clone();
        out.eps.iter_mut().for_each(|e| *e = -*e);
        out
    }

    /// Same complex with the given orientation signs.
    pub fn with_orientation(&self, eps: Vec<i8>) -> Result<DeltaComplex3, ComplexError> {
        let mut out = Self::build(self.partner.clone(), Some(eps))?;
        out.name = self.name.clone();
        out.loops = self.loops.clone();
        out.presentation = self.presentation.clone();
        Ok(out)
    }

    /// Induced orientation sign of a face in the boundary of its tetrahedron.
    pub fn face_sign(&self, face: FaceRef) -> i8 {
        if face.face.is_multiple_of(2) {
            self.eps[face.tet]
        } else {
            -self.eps[face.tet]
        }
    }

    /// Boundary as a closed surface with the induced orientation.
    pub fn boundary_surface(&self) -> Result<BoundarySurface, ComplexError> {
        surface::boundary_of(self)
    }

    /// Maps boundary edge classes of `self` to those of `other` through
    /// matched faces, failing if the induced map is not a well-defined bijection.
    pub(crate) fn matched_edge_map(
        &self,
        other: &DeltaComplex3,
        matching: &[(FaceRef, FaceRef)],
    ) -> Result<BTreeMap<usize, usize>, ComplexError> {
        let mut fwd = BTreeMap::new();
        let mut back = BTreeMap::new();
        for &(a, b) in matching {
            for (x, y) in self.face_edges(a).into_iter().zip(other.face_edges(b)) {
                if *fwd.entry(x).or_insert(y) != y || *back.entry(y).or_insert(x) != x {
                    return Err(ComplexError::IncompatibleMatching(format!(
                        "edge class {x} would be identified with two different edges"
                    )));
                }
            }
        }
        Ok(fwd)
    }
}

/// `ε'` making the gluing of face `f` (sign `ε`) to face `f'` orientation reversing.
fn induced_sign(eps: i8, f: usize, f2: usize) -> i8 {
    if (f + f2).is_multiple_of(2) {
        -eps
    } else {
        eps
    }
}

fn orient(partner: &[[Option<FaceRef>; 4]]) -> Result<Vec<i8>, ComplexError> {
    let n = partner.len();
    let mut eps = vec![0i8; n];
    for start in 0..n {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for f in 0..4 {
                let Some(p) = partner[t][f] else { continue };
                let want = induced_sign(eps[t], f, p.face);
                if eps[p.tet] == 0 {
                    eps[p.tet] = want;
                    stack.push(p.tet);
                } else if eps[p.tet] != want {
                    return Err(ComplexError::NonOrientable { tet: t, face: f });
                }
            }
        }
    }
    Ok(eps)
}

fn partner_table(num_tets: usize, gluings: &[(FaceRef, FaceRef)]) -> Result<Vec<[Option<FaceRef>; 4]>, ComplexError> {
    let mut partner = vec![[None; 4]; num_tets];
    for &(a, b) in gluings {
        for x in [a, b] {
            if x.tet >= num_tets || x.face >= 4 {
                return Err(ComplexError::DanglingFace(format!(
                    "tetrahedron {} face {} does not exist",
                    x.tet, x.face
                )));
            }
        }
        if a == b {
            return Err(ComplexError::NotInvolution {
                tet: a.tet,
                face: a.face,
            });
        }
        for (x, y) in [(a, b), (b, a)] {
            match partner[x.tet][x.face] {
                None => partner[x.tet][x.face] = Some(y),
                Some(z) if z == y => {}
                Some(_) => {
                    return Err(ComplexError::NotInvolution {
                        tet: x.tet,
                        face: x.face,
                    })
                }
            }
        }
    }
    Ok(partner)
}

pub fn disjoint_union(a: &DeltaComplex3, b: &DeltaComplex3) -> DeltaComplex3 {
    let off = a.num_tets();
    let mut gluings = a.gluings();
    gluings.extend(
        b.gluings()
            .into_iter()
            .map(|(x, y)| (FaceRef::new(x.tet + off, x.face), FaceRef::new(y.tet + off, y.face))),
    );
    let mut eps = a.eps.clone();
    eps.extend_from_slice(&b.eps);
    DeltaComplex3::from_gluings_oriented(off + b.num_tets(), &gluings, eps).expect("union of valid complexes is valid")
}

/// `X1 ∪ X2` along boundary faces, keeping both orientations.
pub fn glue_along_boundary(
    x1: &DeltaComplex3,
    x2: &DeltaComplex3,
    matching: &[(FaceRef, FaceRef)],
) -> Result<DeltaComplex3, ComplexError> {
    check_matching_faces(x1, x2, matching)?;
    x1.matched_edge_map(x2, matching)?;
    let off = x1.num_tets();
    let shifted: Vec<(FaceRef, FaceRef)> = matching
        .iter()
        .map(|&(a, b)| (a, FaceRef::new(b.tet + off, b.face)))
        .collect();
    glue_self(&disjoint_union(x1, x2), &shifted)
}

/// Glues pairs of boundary faces of a single complex.
pub fn glue_self(x: &DeltaComplex3, matching: &[(FaceRef, FaceRef)]) -> Result<DeltaComplex3, ComplexError> {
    check_matching_faces(x, x, matching)?;
    let mut seen = BTreeSet::new();
    for &(a, b) in matching {
        if !seen.insert(a) || !seen.insert(b) {
            return Err(ComplexError::IncompatibleMatching(format!(
                "face {}:{} matched twice",
                a.tet, a.face
            )));
        }
    }
    x.matched_edge_map(x, matching)?;
    let mut gluings = x.gluings();
    gluings.extend_from_slice(matching);
    DeltaComplex3::from_gluings_oriented(x.num_tets(), &gluings, x.eps.clone()).map_err(|e| match e {
        ComplexError::NonOrientable { tet, face } => {
            ComplexError::OrientationClash(format!("tetrahedron {tet} face {face}"))
        }
        other => other,
    })
}

fn check_matching_faces(
    x1: &DeltaComplex3,
    x2: &DeltaComplex3,
    matching: &[(FaceRef, FaceRef)],
) -> Result<(), ComplexError> {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for &(a, b) in matching {
        for (x, f) in [(x1, a), (x2, b)] {
            if f.tet >= x.num_tets() || f.face >= 4 || x.partner(f).is_some() {
                return Err(ComplexError::IncompatibleMatching(format!(
                    "face {}:{} is not a boundary face",
                    f.tet, f.face
                )));
            }
        }
        if !left.insert(a) || !right.insert(b) {
            return Err(ComplexError::IncompatibleMatching("matching is not a bijection".into()));
        }
        if x1.face_sign(a) == x2.face_sign(b) {
            return Err(ComplexError::OrientationClash(format!(
                "faces {}:{} and {}:{}",
                a.tet, a.face, b.tet, b.face
            )));
        }
    }
    Ok(())
}

/// Result of cutting: the cut complex and the matching that reglues it.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub complex: DeltaComplex3,
    pub matching: Vec<(FaceRef, FaceRef)>,
}

/// Cuts along a closed surface made of interior triangle classes.
pub fn cut_along(x: &DeltaComplex3, triangles: &[usize]) -> Result<CutResult, ComplexError> {
    let set: BTreeSet<usize> = triangles.iter().copied().collect();
    let mut edge_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut matching = Vec::new();
    for &c in &set {
        if c >= x.num_triangles() {
            return Err(ComplexError::NotASurface(format!("no triangle class {c}")));
        }
        let faces = x.triangle_faces(c);
        if faces.len() != 2 {
            return Err(ComplexError::NotASurface(format!(
                "triangle class {c} is on the boundary"
            )));
        }
        matching.push((faces[0], faces[1]));
        for e in x.face_edges(faces[0]) {
            *edge_count.entry(e).or_default() += 1;
        }
    }
    if let Some((e, k)) = edge_count.iter().find(|(_, &k)| k != 2) {
        return Err(ComplexError::NotASurface(format!(
            "edge class {e} meets {k} of the triangles"
        )));
    }
    let cut: BTreeSet<FaceRef> = matching.iter().flat_map(|&(a, b)| [a, b]).collect();
    let gluings: Vec<(FaceRef, FaceRef)> = x.gluings().into_iter().filter(|(a, _)| !cut.contains(a)).collect();
    let complex = if set.is_empty() {
        x.clone()
    } else {
        DeltaComplex3::from_gluings_oriented(x.num_tets(), &gluings, x.eps.clone())?
    };
    Ok(CutResult { complex, matching })
}

/// A complex together with a global orientation sign, for forming `−Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedManifoldLabel {
    pub complex: DeltaComplex3,
    pub sign: i8,
}

impl OrientedManifoldLabel {
    pub fn new(complex: DeltaComplex3) -> Self {
        OrientedManifoldLabel { complex, sign: 1 }
    }

    pub fn flipped(&self) -> Self {
        OrientedManifoldLabel {
            complex: self.complex.clone(),
            sign: -self.sign,
        }
    }

    pub fn resolve(&self) -> DeltaComplex3 {
        if self.sign > 0 {
            self.complex.clone()
        } else {
            self.complex.reversed()
        }
    }
}
