use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{face_vertices, DeltaComplex3, FaceRef, Skeleton, UnionFind};
use crate::error::ComplexError;

/// Side `side` of triangle `tri`: the edge opposite local vertex `side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SideRef {
    pub tri: usize,
    pub side: usize,
}

impl SideRef {
    pub const fn new(tri: usize, side: usize) -> Self {
        SideRef { tri, side }
    }
}

/// Endpoints of side `k` in increasing order.
pub fn side_vertices(k: usize) -> [usize; 2] {
    match k {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// A 2-dimensional Δ-complex with order-respecting side gluings.
#[derive(Clone, Debug)]
pub struct DeltaComplex2 {
    partner: Vec<[Option<SideRef>; 3]>,
    signs: Vec<i8>,
    vertex_of: Vec<[usize; 3]>,
    edge_of: Vec<[usize; 3]>,
    num_vertices: usize,
    num_edges: usize,
    edge_sides: Vec<Vec<SideRef>>,
    skeleton: Skeleton,
}

impl PartialEq for DeltaComplex2 {
    fn eq(&self, other: &Self) -> bool {
        self.partner == other.partner && self.signs == other.signs
    }
}

fn induced_sign(s: i8, k: usize, k2: usize) -> i8 {
    if (k + k2).is_multiple_of(2) {
        -s
    } else {
        s
    }
}

impl DeltaComplex2 {
    pub fn from_gluings(num_tris: usize, gluings: &[(SideRef, SideRef)]) -> Result<Self, ComplexError> {
        Self::build(num_tris, gluings, None)
    }

    pub fn from_gluings_oriented(
        num_tris: usize,
        gluings: &[(SideRef, SideRef)],
        signs: Vec<i8>,
    ) -> Result<Self, ComplexError> {
        Self::build(num_tris, gluings, Some(signs))
    }

    fn build(n: usize, gluings: &[(SideRef, SideRef)], signs: Option<Vec<i8>>) -> Result<Self, ComplexError> {
        let mut partner = vec![[None; 3]; n];
        for &(a, b) in gluings {
            for x in [a, b] {
                if x.tri >= n || x.side >= 3 {
                    return Err(ComplexError::DanglingFace(format!(
                        "triangle {} side {} does not exist",
                        x.tri, x.side
                    )));
                }
            }
            if a == b {
                return Err(ComplexError::NotInvolution {
                    tet: a.tri,
                    face: a.side,
                });
            }
            for (x, y) in [(a, b), (b, a)] {
                match partner[x.tri][x.side] {
                    None => partner[x.tri][x.side] = Some(y),
                    Some(z) if z == y => {}
                    Some(_) => {
                        return Err(ComplexError::NotInvolution {
                            tet: x.tri,
                            face: x.side,
                        })
                    }
                }
            }
        }

        let mut vuf = UnionFind::new(3 * n);
        let mut euf = UnionFind::new(3 * n);
        for t in 0..n {
            for k in 0..3 {
                let Some(p) = partner[t][k] else { continue };
                let (a, b) = (side_vertices(k), side_vertices(p.side));
                for i in 0..2 {
                    vuf.union(3 * t + a[i], 3 * p.tri + b[i]);
                }
                euf.union(3 * t + k, 3 * p.tri + p.side);
            }
        }
        let (vclass, num_vertices) = vuf.classes();
        // local edge order (0,1),(0,2),(1,2) is sides 2,1,0
        let (eclass, num_edges) = euf.classes_in_order((0..n).flat_map(|t| [3 * t + 2, 3 * t + 1, 3 * t]));
        let vertex_of: Vec<[usize; 3]> = (0..n).map(|t| std::array::from_fn(|v| vclass[3 * t + v])).collect();
        let edge_of: Vec<[usize; 3]> = (0..n).map(|t| std::array::from_fn(|k| eclass[3 * t + k])).collect();

        let signs = match signs {
            Some(s) => {
                if s.len() != n || s.iter().any(|&e| e != 1 && e != -1) {
                    return Err(ComplexError::DanglingFace(format!(
                        "orientation has {} entries for {n} triangles",
                        s.len()
                    )));
                }
                for t in 0..n {
                    for k in 0..3 {
                        if let Some(p) = partner[t][k] {
                            if s[p.tri] != induced_sign(s[t], k, p.side) {
                                return Err(ComplexError::NonOrientable { tet: t, face: k });
                            }
                        }
                    }
                }
                s
            }
            None => {
                let mut s = vec![0i8; n];
                for start in 0..n {
                    if s[start] != 0 {
                        continue;
                    }
                    s[start] = 1;
                    let mut stack = vec![start];
                    while let Some(t) = stack.pop() {
                        for k in 0..3 {
                            let Some(p) = partner[t][k] else { continue };
                            let want = induced_sign(s[t], k, p.side);
                            if s[p.tri] == 0 {
                                s[p.tri] = want;
                                stack.push(p.tri);
                            } else if s[p.tri] != want {
                                return Err(ComplexError::NonOrientable { tet: t, face: k });
                            }
                        }
                    }
                }
                s
            }
        };

        let mut edge_sides = vec![Vec::new(); num_edges];
        let mut edge_ends = vec![(0, 0); num_edges];
        for t in (0..n).rev() {
            for k in (0..3).rev() {
                let [u, w] = side_vertices(k);
                edge_ends[edge_of[t][k]] = (vertex_of[t][u], vertex_of[t][w]);
            }
        }
        for t in 0..n {
            for k in [2, 1, 0] {
                edge_sides[edge_of[t][k]].push(SideRef::new(t, k));
            }
        }
        let triangles = edge_of.iter().map(|e| [e[2], e[0], e[1]]).collect();
        Ok(DeltaComplex2 {
            partner,
            signs,
            vertex_of,
            edge_of,
            num_vertices,
            num_edges,
            edge_sides,
            skeleton: Skeleton {
                num_vertices,
                edge_ends,
                triangles,
            },
        })
    }

    pub fn num_triangles(&self) -> usize {
        self.partner.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges as i64 + self.num_triangles() as i64
    }

    pub fn sign(&self, tri: usize) -> i8 {
        self.signs[tri]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn partner(&self, s: SideRef) -> Option<SideRef> {
        self.partner[s.tri][s.side]
    }

    pub fn vertex(&self, tri: usize, v: usize) -> usize {
        self.vertex_of[tri][v]
    }

    pub fn edge(&self, s: SideRef) -> usize {
        self.edge_of[s.tri][s.side]
    }

    pub fn edge_sides(&self, e: usize) -> &[SideRef] {
        &self.edge_sides[e]
    }

    /// Coefficient of side `s` in the oriented boundary of its triangle.
    pub fn side_coefficient(&self, s: SideRef) -> i8 {
        if s.side.is_multiple_of(2) {
            self.signs[s.tri]
        } else {
            -self.signs[s.tri]
        }
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn gluings(&self) -> Vec<(SideRef, SideRef)> {
        let mut out = Vec::new();
        for t in 0..self.num_triangles() {
            for k in 0..3 {
                let a = SideRef::new(t, k);
                if let Some(b) = self.partner[t][k] {
                    if a < b {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    pub fn boundary_sides(&self) -> Vec<SideRef> {
        (0..self.num_triangles())
            .flat_map(|t| (0..3).map(move |k| SideRef::new(t, k)))
            .filter(|&s| self.partner(s).is_none())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.partner.iter().all(|p| p.iter().all(Option::is_some))
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.num_triangles());
        for (a, b) in self.gluings() {
            uf.union(a.tri, b.tri);
        }
        uf.classes().1
    }

    /// Genus of a closed connected surface.
    pub fn genus(&self) -> Option<usize> {
        if !self.is_closed() || self.num_components() != 1 {
            return None;
        }
        usize::try_from((2 - self.euler_characteristic()) / 2).ok()
    }

    pub fn reversed(&self) -> DeltaComplex2 {
        let mut out = self.clone();
        out.signs.iter_mut().for_each(|s| *s = -*s);
        out
    }

    /// Boundary sides grouped into circles, each listed in the direction of
    /// the induced boundary orientation. Circles are ordered by their lowest side.
    pub fn boundary_circles(&self) -> Result<Vec<Vec<SideRef>>, ComplexError> {
        let sides = self.boundary_sides();
        // directed (from, to) vertex classes per side
        let dir = |s: SideRef| {
            let [u, w] = side_vertices(s.side);
            let (a, b) = (self.vertex(s.tri, u), self.vertex(s.tri, w));
            if self.side_coefficient(s) > 0 {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut out_of: BTreeMap<usize, Vec<SideRef>> = BTreeMap::new();
        for &s in &sides {
            out_of.entry(dir(s).0).or_default().push(s);
        }
        if out_of.values().any(|v| v.len() != 1) {
            return Err(ComplexError::NotManifold(
                "boundary is not a disjoint union of circles".into(),
            ));
        }
        let mut used = BTreeSet::new();
        let mut circles = Vec::new();
        for &start in &sides {
            if used.contains(&start) {
                continue;
            }
            let mut circle = Vec::new();
            let mut s = start;
            loop {
                if !used.insert(s) {
                    return Err(ComplexError::NotManifold("boundary walk revisits a side".into()));
                }
                circle.push(s);
                let next = out_of.get(&dir(s).1).map(|v| v[0]);
                match next {
                    Some(n) if n == start => break,
                    Some(n) => s = n,
                    None => return Err(ComplexError::NotManifold("boundary walk is not closed".into())),
                }
            }
            circles.push(circle);
        }
        Ok(circles)
    }
}

/// Glues two oriented surfaces along boundary sides, keeping both orientations.
pub fn glue_surfaces(
    a: &DeltaComplex2,
    b: &DeltaComplex2,
    matching: &[(SideRef, SideRef)],
) -> Result<DeltaComplex2, ComplexError> {
    let off = a.num_triangles();
    let mut gluings = a.gluings();
    gluings.extend(
        b.gluings()
            .into_iter()
            .map(|(x, y)| (SideRef::new(x.tri + off, x.side), SideRef::new(y.tri + off, y.side))),
    );
    for &(x, y) in matching {
        if x.tri >= a.num_triangles() || y.tri >= b.num_triangles() || a.partner(x).is_some() || b.partner(y).is_some()
        {
            return Err(ComplexError::IncompatibleMatching(format!(
                "sides {}:{} and {}:{} are not both boundary sides",
                x.tri, x.side, y.tri, y.side
            )));
        }
        if a.side_coefficient(x) == b.side_coefficient(y) {
            return Err(ComplexError::OrientationClash(format!(
                "sides {}:{} and {}:{}",
                x.tri, x.side, y.tri, y.side
            )));
        }
        gluings.push((x, SideRef::new(y.tri + off, y.side)));
    }
    let mut signs = a.signs.clone();
    signs.extend_from_slice(&b.signs);
    DeltaComplex2::from_gluings_oriented(off + b.num_triangles(), &gluings, signs)
}

/// Boundary of a 3-complex with the induced orientation, and how its cells
/// sit in the 3-complex.
#[derive(Clone, Debug)]
pub struct BoundarySurface {
    pub surface: DeltaComplex2,
    /// Boundary face for each surface triangle.
    pub faces: Vec<FaceRef>,
    /// 3-complex edge class for each surface edge class.
    pub edge_map: Vec<usize>,
    /// 3-complex vertex class for each surface vertex class.
    pub vertex_map: Vec<usize>,
}

pub(super) fn boundary_of(x: &DeltaComplex3) -> Result<BoundarySurface, ComplexError> {
    let faces = x.boundary_faces();
    let mut by_edge: BTreeMap<usize, Vec<SideRef>> = BTreeMap::new();
    let side_edge = |f: FaceRef, k: usize| {
        let fv = face_vertices(f.face);
        let [u, w] = side_vertices(k);
        x.edge(f.tet, fv[u], fv[w])
    };
    for (i, &f) in faces.iter().enumerate() {
        for k in 0..3 {
            by_edge.entry(side_edge(f, k)).or_default().push(SideRef::new(i, k));
        }
    }
    let mut gluings = Vec::new();
    for (e, sides) in &by_edge {
        if sides.len() != 2 {
            return Err(ComplexError::NotManifold(format!(
                "boundary edge class {e} lies on {} boundary triangles",
                sides.len()
            )));
        }
        gluings.push((sides[0], sides[1]));
    }
    let signs = faces.iter().map(|&f| x.face_sign(f)).collect();
    let surface = DeltaComplex2::from_gluings_oriented(faces.len(), &gluings, signs)?;
    let mut edge_map = vec![0; surface.num_edges()];
    let mut vertex_map = vec![0; surface.num_vertices()];
    for (i, &f) in faces.iter().enumerate() {
        let fv = face_vertices(f.face);
        for k in 0..3 {
            edge_map[surface.edge(SideRef::new(i, k))] = side_edge(f, k);
            vertex_map[surface.vertex(i, k)] = x.vertex(f.tet, fv[k]);
        }
    }
    Ok(BoundarySurface {
        surface,
        faces,
        edge_map,
        vertex_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangle_sphere() -> DeltaComplex2 {
        let g: Vec<_> = (0..3).map(|k| (SideRef::new(0, k), SideRef::new(1, k))).collect();
        DeltaComplex2::from_gluings(2, &g).unwrap()
    }

    #[test]
    fn sphere_and_disk() {
        let s = two_triangle_sphere();
        assert_eq!(s.euler_characteristic(), 2);
        assert_eq!(s.signs(), &[1, -1]);
        assert_eq!(s.genus(), Some(0));
        let d = DeltaComplex2::from_gluings(1, &[]).unwrap();
        let circles = d.boundary_circles().unwrap();
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].len(), 3);
    }

    #[test]
    fn edge_numbering_follows_local_edge_order() {
        let d = DeltaComplex2::from_gluings(1, &[]).unwrap();
        assert_eq!(d.edge(SideRef::new(0, 2)), 0);
        assert_eq!(d.edge(SideRef::new(0, 1)), 1);
        assert_eq!(d.edge(SideRef::new(0, 0)), 2);
        assert_eq!(d.skeleton().triangles, vec![[0, 2, 1]]);
    }

    #[test]
    fn two_disks_make_a_sphere() {
        let d = DeltaComplex2::from_gluings(1, &[]).unwrap();
        let m: Vec<_> = (0..3).map(|k| (SideRef::new(0, k), SideRef::new(0, k))).collect();
        assert!(matches!(
            glue_surfaces(&d, &d, &m),
            Err(ComplexError::OrientationClash(_))
        ));
        let s = glue_surfaces(&d, &d.reversed(), &m).unwrap();
        assert_eq!(s, two_triangle_sphere());
    }
}
