//! Named triangulations.
//!
//! Products with an interval use three tetrahedra per surface triangle. For a
//! triangle with vertices `a < b < c` the prism `[abc] × I` is cut into
//!
//! ```text
//! T0 = [a0 b0 c0 c1]   T1 = [a0 b0 b1 c1]   T2 = [a0 a1 b1 c1]
//! ```
//!
//! which all respect the order `a0 < b0 < c0 < a1 < b1 < c1`. The square over
//! the side between surface vertices `x < y` is split into a lower triangle
//! `[x0 y0 y1]` and an upper triangle `[x0 x1 y1]`.

use super::{DeltaComplex2, DeltaComplex3, FaceRef, Loop, SideRef};
use crate::error::ComplexError;
use crate::groups::Presentation;

/// Lower and upper boundary triangles of the solid torus preset.
pub const SOLID_TORUS_LOWER: FaceRef = FaceRef::new(1, 3);
pub const SOLID_TORUS_UPPER: FaceRef = FaceRef::new(2, 3);

pub const PRESET_MANIFOLD_NAMES: &[&str] = &[
    "Ball",
    "S3_2tet",
    "S3_bd4simplex",
    "S2xS1",
    "T3_6tet",
    "L(2,1)",
    "L(3,1)",
    "L(4,1)",
    "L(5,1)",
    "L(6,1)",
    "L(7,1)",
    "L(8,1)",
    "SolidTorus",
    "T2xI",
];

pub fn preset_manifold(name: &str) -> Result<DeltaComplex3, ComplexError> {
    match name {
        "Ball" => Ok(ball()),
        "S3_2tet" => Ok(s3_two_tet()),
        "S3_bd4simplex" => Ok(s3_boundary_4simplex()),
        "S2xS1" => Ok(s2_times_s1()),
        "T3_6tet" => Ok(three_torus()),
        "SolidTorus" => Ok(solid_torus()),
        "T2xI" => Ok(torus_times_interval()),
        _ => match parse_lens(name) {
            Some(k) if (2..=8).contains(&k) => Ok(lens_space(k)),
            _ => Err(ComplexError::UnknownName(name.to_string())),
        },
    }
}

fn parse_lens(name: &str) -> Option<usize> {
    name.strip_prefix("L(")?.strip_suffix(",1)")?.parse().ok()
}

#[derive(Default)]
struct Builder {
    tets: usize,
    gluings: Vec<(FaceRef, FaceRef)>,
}

impl Builder {
    fn add(&mut self, k: usize) -> usize {
        self.tets += k;
        self.tets - k
    }

    fn glue(&mut self, a: FaceRef, b: FaceRef) {
        self.gluings.push((a, b));
    }

    fn finish(self) -> DeltaComplex3 {
        DeltaComplex3::from_gluings(self.tets, &self.gluings).expect("preset gluings are valid")
    }
}

#[derive(Clone, Copy)]
struct Prism(usize);

impl Prism {
    fn lower(self, side: usize) -> FaceRef {
        match side {
            0 => FaceRef::new(self.0, 0),
            1 => FaceRef::new(self.0, 1),
            _ => FaceRef::new(self.0 + 1, 3),
        }
    }

    fn upper(self, side: usize) -> FaceRef {
        match side {
            0 => FaceRef::new(self.0 + 1, 0),
            1 => FaceRef::new(self.0 + 2, 2),
            _ => FaceRef::new(self.0 + 2, 3),
        }
    }

    fn bottom(self) -> FaceRef {
        FaceRef::new(self.0, 3)
    }

    fn top(self) -> FaceRef {
        FaceRef::new(self.0 + 2, 0)
    }
}

/// `Σ × I`, optionally closed up into the mapping torus of the identity.
fn prism_over(b: &mut Builder, tris: usize, sides: &[(SideRef, SideRef)], close: bool) -> Vec<Prism> {
    let prisms: Vec<Prism> = (0..tris).map(|_| Prism(b.add(3))).collect();
    for p in &prisms {
        let t = p.0;
        b.glue(FaceRef::new(t, 2), FaceRef::new(t + 1, 2));
        b.glue(FaceRef::new(t + 1, 1), FaceRef::new(t + 2, 1));
        if close {
            b.glue(p.top(), p.bottom());
        }
    }
    for &(x, y) in sides {
        let (p, q) = (prisms[x.tri], prisms[y.tri]);
        b.glue(p.lower(x.side), q.lower(y.side));
        b.glue(p.upper(x.side), q.upper(y.side));
    }
    prisms
}

fn edge_loop(x: &DeltaComplex3, tet: usize, i: usize, j: usize) -> Loop {
    vec![(x.edge(tet, i, j), true)]
}

pub fn ball() -> DeltaComplex3 {
    DeltaComplex3::from_gluings(1, &[])
        .unwrap()
        .with_name("Ball")
        .with_loops(Vec::new(), Some(Presentation::trivial()))
}

/// Two tetrahedra glued along all four faces by the identity.
pub fn s3_two_tet() -> DeltaComplex3 {
    let mut b = Builder::default();
    b.add(2);
    for f in 0..4 {
        b.glue(FaceRef::new(0, f), FaceRef::new(1, f));
    }
    b.finish()
        .with_name("S3_2tet")
        .with_loops(Vec::new(), Some(Presentation::trivial()))
}

/// The five facets of the 4-simplex.
pub fn s3_boundary_4simplex() -> DeltaComplex3 {
    let mut b = Builder::default();
    b.add(5);
    for i in 0..5 {
        for j in i + 1..5 {
            // facet i omits vertex i; its face opposite vertex j has local index j - 1
            b.glue(FaceRef::new(i, j - 1), FaceRef::new(j, i));
        }
    }
    b.finish()
        .with_name("S3_bd4simplex")
        .with_loops(Vec::new(), Some(Presentation::trivial()))
}

fn sphere_sides() -> Vec<(SideRef, SideRef)> {
    (0..3).map(|k| (SideRef::new(0, k), SideRef::new(1, k))).collect()
}

/// One-vertex torus: triangles with edges `(x, y; d)` and `(y, x; d)`.
fn torus_sides() -> Vec<(SideRef, SideRef)> {
    vec![
        (SideRef::new(0, 2), SideRef::new(1, 0)),
        (SideRef::new(0, 0), SideRef::new(1, 2)),
        (SideRef::new(0, 1), SideRef::new(1, 1)),
    ]
}

pub fn s2_times_s1() -> DeltaComplex3 {
    let mut b = Builder::default();
    let prisms = prism_over(&mut b, 2, &sphere_sides(), true);
    let x = b.finish();
    let loops = vec![edge_loop(&x, prisms[0].0 + 2, 0, 1)];
    x.with_name("S2xS1").with_loops(loops, Some(Presentation::free(1)))
}

/// One vertex, six tetrahedra. Named loops are the two torus directions and
/// the circle direction.
pub fn three_torus() -> DeltaComplex3 {
    let mut b = Builder::default();
    let prisms = prism_over(&mut b, 2, &torus_sides(), true);
    let x = b.finish();
    let t = prisms[0].0;
    let loops = vec![edge_loop(&x, t, 0, 1), edge_loop(&x, t, 1, 2), edge_loop(&x, t, 2, 3)];
    x.with_name("T3_6tet")
        .with_loops(loops, Some(Presentation::free_abelian(3)))
}

pub fn torus_times_interval() -> DeltaComplex3 {
    let mut b = Builder::default();
    let prisms = prism_over(&mut b, 2, &torus_sides(), false);
    let x = b.finish();
    let t = prisms[0].0;
    let loops = vec![edge_loop(&x, t, 0, 1), edge_loop(&x, t, 1, 2)];
    x.with_name("T2xI")
        .with_loops(loops, Some(Presentation::free_abelian(2)))
}

/// The fiber `T² × {0}` inside the 3-torus preset, as triangle classes.
pub fn three_torus_fiber(x: &DeltaComplex3) -> Vec<usize> {
    vec![x.triangle_class(Prism(0).bottom()), x.triangle_class(Prism(3).bottom())]
}

/// Circle times a cone disk (one triangle with sides 0 and 1 glued). The
/// boundary torus is `SOLID_TORUS_LOWER ∪ SOLID_TORUS_UPPER`; the meridian is
/// edge `(0,1)` of the lower triangle and the longitude is edge `(1,2)`.
fn add_solid_torus(b: &mut Builder) -> Prism {
    prism_over(b, 1, &[(SideRef::new(0, 0), SideRef::new(0, 1))], true)[0]
}

pub fn solid_torus() -> DeltaComplex3 {
    let mut b = Builder::default();
    let p = add_solid_torus(&mut b);
    let x = b.finish();
    let loops = vec![edge_loop(&x, p.0 + 2, 0, 1)];
    x.with_name("SolidTorus").with_loops(loops, Some(Presentation::free(1)))
}

/// Glues the lower boundary triangle of one solid torus to the upper one of
/// the other and vice versa, exchanging meridian and longitude.
pub fn meridian_longitude_matching() -> Vec<(FaceRef, FaceRef)> {
    vec![
        (SOLID_TORUS_LOWER, SOLID_TORUS_UPPER),
        (SOLID_TORUS_UPPER, SOLID_TORUS_LOWER),
    ]
}

/// `L(k,1)`: a solid torus, `k` layered tetrahedra, and a second solid
/// torus. Each layer replaces the boundary curves `(X, Y)` by `(X − Y, Y)`,
/// so the second meridian is glued to `meridian − k·longitude`.
pub fn lens_space(k: usize) -> DeltaComplex3 {
    let mut b = Builder::default();
    let first = add_solid_torus(&mut b);
    let (mut lower, mut upper) = (first.lower(2), first.upper(2));
    for _ in 0..k {
        let t = b.add(1);
        b.glue(FaceRef::new(t, 1), lower);
        b.glue(FaceRef::new(t, 2), upper);
        lower = FaceRef::new(t, 0);
        upper = FaceRef::new(t, 3);
    }
    let second = add_solid_torus(&mut b);
    b.glue(lower, second.lower(2));
    b.glue(upper, second.upper(2));
    let x = b.finish();
    let presentation = match k {
        0 => Presentation::free(1),
        _ => Presentation::cyclic(k),
    };
    let loops = vec![edge_loop(&x, first.0 + 2, 0, 1)];
    x.with_name(format!("L({k},1)")).with_loops(loops, Some(presentation))
}

pub fn sphere_surface() -> DeltaComplex2 {
    DeltaComplex2::from_gluings(2, &sphere_sides()).unwrap()
}

pub fn torus_surface() -> DeltaComplex2 {
    DeltaComplex2::from_gluings(2, &torus_sides()).unwrap()
}

pub fn disk_surface() -> DeltaComplex2 {
    DeltaComplex2::from_gluings(1, &[]).unwrap()
}

/// An annulus of `k ≥ 1` squares. Square `i` is split into `L_i = [a0 b0 b1]`
/// (triangle `2i`) and `U_i = [a0 a1 b1]` (triangle `2i + 1`). The bottom
/// circle is the sides 2 of the `L_i`, the top circle the sides 0 of the `U_i`.
pub fn annulus_surface(k: usize) -> DeltaComplex2 {
    assert!(k >= 1);
    let mut g = Vec::new();
    for i in 0..k {
        g.push((SideRef::new(2 * i, 1), SideRef::new(2 * i + 1, 1)));
        g.push((SideRef::new(2 * i, 0), SideRef::new(2 * ((i + 1) % k) + 1, 2)));
    }
    DeltaComplex2::from_gluings(2 * k, &g).unwrap()
}

pub fn annulus_bottom(i: usize) -> SideRef {
    SideRef::new(2 * i, 2)
}

pub fn annulus_top(i: usize) -> SideRef {
    SideRef::new(2 * i + 1, 0)
}
