//! Euler numbers of line bundles with connection over triangulated surfaces.
//!
//! A bundle is given by a rational curvature `F_t` per triangle and a
//! holonomy in `R/Z` per edge, with `Σ_k c(t,k)·hol(e_k) ≡ F_t (mod 1)` where
//! `c(t,k) = ±1` is the signed incidence of side `k`. Over a closed surface
//! `Σ F_t` is the Euler number. With boundary, each boundary circle has a
//! holonomy, a boundary trivialization is a real lift `f` of it, and
//! `e(L, f) = Σ F_t − Σ f` is an integer. The lifts form a `Z`-torsor and
//! so do the relative Euler numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::dcomplex::{
    annulus_bottom, annulus_surface, annulus_top, disk_surface, glue_surfaces, sphere_surface, DeltaComplex2, SideRef,
};
use crate::error::EulerError;
use crate::phase::{fmt_rational, ratio_to_i64, PhaseQ};

type Result<T> = std::result::Result<T, EulerError>;

#[derive(Clone, Debug, PartialEq)]
pub struct LineBundleConn {
    base: DeltaComplex2,
    curvature: Vec<BigRational>,
    holonomy: Vec<PhaseQ>,
}

impl LineBundleConn {
    pub fn new(base: DeltaComplex2, curvature: Vec<BigRational>, holonomy: Vec<PhaseQ>) -> Result<Self> {
        if curvature.len() != base.num_triangles() {
            return Err(EulerError::Shape(format!(
                "{} curvature values for {} triangles",
                curvature.len(),
                base.num_triangles()
            )));
        }
        if holonomy.len() != base.num_edges() {
            return Err(EulerError::Shape(format!(
                "{} holonomy values for {} edges",
                holonomy.len(),
                base.num_edges()
            )));
        }
        let l = LineBundleConn {
            base,
            curvature,
            holonomy,
        };
        if let Some(t) =
            (0..l.base.num_triangles()).find(|&t| l.boundary_holonomy(t) != PhaseQ::from_ratio(&l.curvature[t]))
        {
            return Err(EulerError::Incompatible(t));
        }
        Ok(l)
    }

    pub fn base(&self) -> &DeltaComplex2 {
        &self.base
    }

    pub fn curvature(&self) -> &[BigRational] {
        &self.curvature
    }

    pub fn holonomy(&self) -> &[PhaseQ] {
        &self.holonomy
    }

    fn side_holonomy(&self, s: SideRef) -> PhaseQ {
        self.holonomy[self.base.edge(s)].times(self.base.side_coefficient(s) as i64)
    }

    /// Holonomy around the boundary of triangle `t`.
    pub fn boundary_holonomy(&self, t: usize) -> PhaseQ {
        (0..3).map(|k| self.side_holonomy(SideRef::new(t, k))).sum()
    }

    pub fn total_curvature(&self) -> BigRational {
        self.curvature.iter().sum()
    }

    /// The same bundle over the surface with opposite orientation.
    pub fn reversed(&self) -> LineBundleConn {
        LineBundleConn {
            base: self.base.reversed(),
            curvature: self.curvature.iter().map(|f| -f).collect(),
            holonomy: self.holonomy.clone(),
        }
    }

    /// Shifts the holonomy of `edge` by `delta` and each adjacent curvature
    /// by the matching amount, leaving the connection class unchanged.
    pub fn gauge_move(&self, edge: usize, delta: &BigRational) -> LineBundleConn {
        let mut out = self.clone();
        out.holonomy[edge] += PhaseQ::from_ratio(delta);
        for &s in self.base.edge_sides(edge) {
            let c = BigRational::from_integer(self.base.side_coefficient(s).into());
            out.curvature[s.tri] += c * delta;
        }
        out
    }

    /// Holonomy of each boundary circle, in the order of
    /// [`DeltaComplex2::boundary_circles`].
    fn circle_holonomies(&self) -> Result<Vec<PhaseQ>> {
        Ok(self
            .base
            .boundary_circles()?
            .iter()
            .map(|c| c.iter().map(|&s| self.side_holonomy(s)).sum())
            .collect())
    }
}

pub fn euler_closed(l: &LineBundleConn) -> Result<i64> {
    if !l.base.is_closed() {
        return Err(EulerError::NotClosed);
    }
    let total = l.total_curvature();
    ratio_to_i64(&total).ok_or_else(|| EulerError::NonIntegerTotal(fmt_rational(&total)))
}

/// A real lift of the holonomy of each boundary circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLift {
    pub lifts: Vec<BigRational>,
}

/// The torsor of boundary lifts, identified by the circle holonomies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsorDescriptor {
    pub holonomies: Vec<PhaseQ>,
}

impl TorsorDescriptor {
    /// The lift in `[0, 1)` on every circle.
    pub fn reference(&self) -> BoundaryLift {
        BoundaryLift {
            lifts: self.holonomies.iter().map(PhaseQ::to_ratio).collect(),
        }
    }

    pub fn contains(&self, f: &BoundaryLift) -> bool {
        f.lifts.len() == self.holonomies.len()
            && f.lifts
                .iter()
                .zip(&self.holonomies)
                .all(|(x, h)| PhaseQ::from_ratio(x) == *h)
    }

    /// `Σ (f − f')`, an integer for two lifts in this torsor.
    pub fn difference(&self, f: &BoundaryLift, f2: &BoundaryLift) -> Result<i64> {
        for x in [f, f2] {
            if !self.contains(x) {
                return Err(EulerError::TorsorMismatch(
                    "lift does not cover the boundary holonomy".into(),
                ));
            }
        }
        let d: BigRational = f.lifts.iter().zip(&f2.lifts).map(|(a, b)| a - b).sum();
        Ok(ratio_to_i64(&d).expect("lifts of the same holonomy differ by integers"))
    }

    /// The torsor of the same boundary with opposite orientation.
    pub fn reversed(&self) -> TorsorDescriptor {
        TorsorDescriptor {
            holonomies: self.holonomies.iter().map(|&h| -h).collect(),
        }
    }
}

pub fn boundary_torsor(l: &LineBundleConn) -> Result<TorsorDescriptor> {
    Ok(TorsorDescriptor {
        holonomies: l.circle_holonomies()?,
    })
}

/// An element of a `Z`-torsor, stored as its offset from `e(L, reference)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZTorsorElem {
    pub torsor: TorsorDescriptor,
    pub offset: i64,
}

impl ZTorsorElem {
    pub fn shift(&self, k: i64) -> ZTorsorElem {
        ZTorsorElem {
            torsor: self.torsor.clone(),
            offset: self.offset + k,
        }
    }

    pub fn difference(&self, other: &ZTorsorElem) -> Result<i64> {
        if self.torsor != other.torsor {
            return Err(EulerError::TorsorMismatch(format!(
                "{:?} vs {:?}",
                self.torsor.holonomies, other.torsor.holonomies
            )));
        }
        Ok(self.offset - other.offset)
    }

    /// The integer `e(L, f)` for a chosen boundary lift.
    pub fn evaluate(&self, f: &BoundaryLift) -> Result<i64> {
        Ok(self.offset + self.torsor.difference(&self.torsor.reference(), f)?)
    }
}

pub fn relative_euler(l: &LineBundleConn) -> Result<ZTorsorElem> {
    if l.base.is_closed() {
        return Err(EulerError::NotRelative);
    }
    let torsor = boundary_torsor(l)?;
    let reference: BigRational = torsor.reference().lifts.iter().sum();
    let raw = l.total_curvature() - reference;
    let offset = ratio_to_i64(&raw).ok_or_else(|| EulerError::NonIntegerRelative(fmt_rational(&raw)))?;
    Ok(ZTorsorElem { torsor, offset })
}

/// `e(L, f) = Σ F_t − Σ f` computed directly.
pub fn e_with_lift(l: &LineBundleConn, f: &BoundaryLift) -> Result<i64> {
    let torsor = boundary_torsor(l)?;
    if !torsor.contains(f) {
        return Err(EulerError::TorsorMismatch(
            "lift does not cover the boundary holonomy".into(),
        ));
    }
    let raw = l.total_curvature() - f.lifts.iter().sum::<BigRational>();
    ratio_to_i64(&raw).ok_or_else(|| EulerError::NonIntegerRelative(fmt_rational(&raw)))
}

/// `T_Y × T_{−Y} → Z`. Circles of `b` must be listed in the order of `a`'s.
pub fn torsor_pair(a: &ZTorsorElem, b: &ZTorsorElem) -> Result<i64> {
    if b.torsor != a.torsor.reversed() {
        return Err(EulerError::TorsorMismatch(format!(
            "{:?} is not the reverse of {:?}",
            b.torsor.holonomies, a.torsor.holonomies
        )));
    }
    let correction: BigRational = a
        .torsor
        .reference()
        .lifts
        .iter()
        .chain(&b.torsor.reference().lifts)
        .sum();
    Ok(
        a.offset
            + b.offset
            + ratio_to_i64(&correction).expect("reference lifts of opposite holonomies sum to integers"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerGlueReport {
    pub glued: i64,
    pub first: ZTorsorElem,
    pub second: ZTorsorElem,
    pub paired: i64,
    pub equal: bool,
}

/// The bundle over `X1 ∪ X2`, whose triangles are those of `X1` followed by
/// those of `X2`.
pub fn glue_bundles(
    l1: &LineBundleConn,
    l2: &LineBundleConn,
    matching: &[(SideRef, SideRef)],
) -> Result<LineBundleConn> {
    let base = glue_surfaces(&l1.base, &l2.base, matching)?;
    let off = l1.base.num_triangles();
    let mut hol: Vec<Option<PhaseQ>> = vec![None; base.num_edges()];
    let sources = [(l1, 0), (l2, off)];
    for (l, shift) in sources {
        for t in 0..l.base.num_triangles() {
            for k in 0..3 {
                let s = SideRef::new(t, k);
                let h = l.holonomy[l.base.edge(s)];
                let slot = &mut hol[base.edge(SideRef::new(t + shift, k))];
                match slot {
                    Some(old) if *old != h => {
                        return Err(EulerError::TorsorMismatch(format!(
                            "matched edges carry holonomies {old} and {h}"
                        )))
                    }
                    _ => *slot = Some(h),
                }
            }
        }
    }
    let holonomy = hol
        .into_iter()
        .map(|h| h.expect("every edge lies on a triangle"))
        .collect();
    let curvature = l1.curvature.iter().chain(&l2.curvature).cloned().collect();
    LineBundleConn::new(base, curvature, holonomy)
}

/// `e(X1 ∪ X2)` against the pairing of the relative Euler numbers.
pub fn euler_glue(
    l1: &LineBundleConn,
    l2: &LineBundleConn,
    matching: &[(SideRef, SideRef)],
) -> Result<EulerGlueReport> {
    let glued = euler_closed(&glue_bundles(l1, l2, matching)?)?;
    let first = relative_euler(l1)?;
    let raw = relative_euler(l2)?;
    let partner: BTreeMap<SideRef, SideRef> = matching.iter().copied().collect();
    let circles1 = l1.base.boundary_circles()?;
    let circles2 = l2.base.boundary_circles()?;
    let order: Vec<usize> = circles1
        .iter()
        .map(|c| {
            let s = partner[&c[0]];
            circles2
                .iter()
                .position(|d| d.contains(&s))
                .expect("matched side lies on a circle")
        })
        .collect();
    let second = ZTorsorElem {
        torsor: TorsorDescriptor {
            holonomies: order.iter().map(|&i| raw.torsor.holonomies[i]).collect(),
        },
        offset: raw.offset,
    };
    let paired = torsor_pair(&first, &second)?;
    Ok(EulerGlueReport {
        equal: glued == paired,
        glued,
        first,
        second,
        paired,
    })
}

fn half(d: i64) -> BigRational {
    BigRational::new(d.into(), 2.into())
}

/// The sphere of two triangles with curvature `d/2` on each.
pub fn clutched_sphere(d: i64) -> LineBundleConn {
    let base = sphere_surface();
    let mut hol = vec![PhaseQ::ZERO; base.num_edges()];
    hol[base.edge(SideRef::new(0, 2))] = PhaseQ::from_ratio(&half(d));
    LineBundleConn::new(base, vec![half(d), half(d)], hol).expect("clutching data is compatible")
}

/// A one-triangle disk with curvature `f` and the holonomy of side 2 set to match.
pub fn disk_bundle(f: &BigRational, reversed: bool) -> LineBundleConn {
    let base = if reversed {
        disk_surface().reversed()
    } else {
        disk_surface()
    };
    let s = SideRef::new(0, 2);
    let mut hol = vec![PhaseQ::ZERO; base.num_edges()];
    hol[base.edge(s)] = PhaseQ::from_ratio(f).times(base.side_coefficient(s) as i64);
    LineBundleConn::new(base, vec![f.clone()], hol).expect("disk data is compatible")
}

/// Side `k` of one disk to side `k` of the other.
pub fn disk_matching() -> Vec<(SideRef, SideRef)> {
    (0..3).map(|k| (SideRef::new(0, k), SideRef::new(0, k))).collect()
}

/// Tops of the first annulus to bottoms of the second and vice versa; the
/// union is a torus.
pub fn annulus_matching(k: usize) -> Vec<(SideRef, SideRef)> {
    (0..k)
        .flat_map(|i| [(annulus_top(i), annulus_bottom(i)), (annulus_bottom(i), annulus_top(i))])
        .collect()
}

fn random_phase<R: Rng>(rng: &mut R) -> PhaseQ {
    let den = [1u64, 2, 3, 4, 6][rng.gen_range(0..5)];
    PhaseQ::new(rng.gen_range(0..den as i128), den)
}

/// A compatible bundle with the given edge holonomies and random integer
/// parts of the curvature.
fn with_random_curvature<R: Rng>(base: DeltaComplex2, holonomy: Vec<PhaseQ>, rng: &mut R) -> LineBundleConn {
    let curvature = (0..base.num_triangles())
        .map(|t| {
            let lift: BigRational = (0..3)
                .map(|k| {
                    let s = SideRef::new(t, k);
                    holonomy[base.edge(s)].to_ratio() * BigRational::from_integer(base.side_coefficient(s).into())
                })
                .sum();
            lift + BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2)))
        })
        .collect();
    LineBundleConn::new(base, curvature, holonomy).expect("curvature built from holonomy")
}

pub fn random_bundle<R: Rng>(base: DeltaComplex2, rng: &mut R) -> LineBundleConn {
    let holonomy = (0..base.num_edges()).map(|_| random_phase(rng)).collect();
    with_random_curvature(base, holonomy, rng)
}

/// Random bundles on two annuli of `k` squares that agree along
/// [`annulus_matching`].
pub fn random_annulus_pair<R: Rng>(k: usize, rng: &mut R) -> (LineBundleConn, LineBundleConn) {
    let l1 = random_bundle(annulus_surface(k), rng);
    let base = annulus_surface(k);
    let mut hol: Vec<PhaseQ> = (0..base.num_edges()).map(|_| random_phase(rng)).collect();
    for (a, b) in annulus_matching(k) {
        hol[base.edge(b)] = l1.holonomy[l1.base.edge(a)];
    }
    (l1, with_random_curvature(base, hol, rng))
}

/// A gauge move on a random interior edge with a random shift.
pub fn random_gauge_move<R: Rng>(l: &LineBundleConn, rng: &mut R) -> LineBundleConn {
    let interior: Vec<usize> = (0..l.base.num_edges())
        .filter(|&e| l.base.edge_sides(e).len() == 2)
        .collect();
    if interior.is_empty() {
        return l.clone();
    }
    let e = interior[rng.gen_range(0..interior.len())];
    let delta = BigRational::new(rng.gen_range(-12..=12).into(), 12.into());
    l.gauge_move(e, &delta)
}
