//! The state sum `Z_X`, relative amplitudes, Hilbert spaces of surfaces and
//! the gluing identities that tie them together.
//!
//! Each tetrahedron with local order `v0 < v1 < v2 < v3` and orientation sign
//! `ε` contributes `ε·ω(g01, g12, g23)` to the action, and
//!
//! ```text
//! Z_X = |G|^(-#vertex classes) · Σ_{flat colorings} exp(2πi·action).
//! ```
//!
//! With boundary, only interior vertex classes enter the normalization.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cochains::{cocycle_witness, transgress_unchecked, Cochain};
use crate::dcomplex::{glue_along_boundary, glue_self, lens_space, s2_times_s1, three_torus, DeltaComplex3, FaceRef};
use crate::error::{CochainError, GaugeError, PathIntegralError};
use crate::gauge::{check_flat, enumerate_flat_colorings, for_each_flat_coloring, gauge_orbits, Coloring};
use crate::groups::{centralizer, enumerate_homs, hom_orbits, FiniteGroup, Presentation};
use crate::phase::{PhaseQ, PhaseSum};

pub type ActionValue = PhaseQ;

type Result<T> = std::result::Result<T, PathIntegralError>;

fn require_cocycle(omega: &Cochain, g: &FiniteGroup) -> Result<()> {
    if omega.arity() != 3 {
        return Err(CochainError::ArityMismatch {
            expected: 3,
            found: omega.arity(),
        }
        .into());
    }
    if omega.group_order() != g.order() {
        return Err(CochainError::GroupMismatch {
            expected: g.order(),
            found: omega.group_order(),
        }
        .into());
    }
    match cocycle_witness(omega, g) {
        Some(w) => Err(CochainError::NotCocycle(w).into()),
        None => Ok(()),
    }
}

fn group_power(g: &FiniteGroup, k: usize) -> BigInt {
    BigInt::from(g.order()).pow(k as u32)
}

/// `Σ_t ε_t ω(g01, g12, g23)` without any checks.
pub(crate) fn state_phase(x: &DeltaComplex3, omega: &Cochain, col: &[usize]) -> PhaseQ {
    (0..x.num_tets())
        .map(|t| {
            let e = x.tet_edges(t);
            // local edges (0,1), (1,2), (2,3)
            let v = omega.get3(col[e[0]], col[e[3]], col[e[5]]);
            if x.orientation(t) > 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

pub fn action_phase(x: &DeltaComplex3, g: &FiniteGroup, omega: &Cochain, col: &[usize]) -> Result<ActionValue> {
    if !x.is_closed() {
        return Err(PathIntegralError::NotClosed);
    }
    check_flat(x.skeleton(), g, col).map_err(|e| match e {
        GaugeError::NotFlat(t) => PathIntegralError::NotFlat(t),
        other => other.into(),
    })?;
    if omega.arity() != 3 || omega.group_order() != g.order() {
        return Err(CochainError::GroupMismatch {
            expected: g.order(),
            found: omega.group_order(),
        }
        .into());
    }
    Ok(state_phase(x, omega, col))
}

pub fn partition_closed(x: &DeltaComplex3, g: &FiniteGroup, omega: &Cochain) -> Result<PhaseSum> {
    partition_closed_capped(x, g, omega, crate::gauge::DEFAULT_NODE_CAP)
}

pub fn partition_closed_capped(x: &DeltaComplex3, g: &FiniteGroup, omega: &Cochain, cap: u64) -> Result<PhaseSum> {
    if !x.is_closed() {
        return Err(PathIntegralError::NotClosed);
    }
    require_cocycle(omega, g)?;
    let mut hist: BTreeMap<PhaseQ, u64> = BTreeMap::new();
    for_each_flat_coloring(x.skeleton(), g, &[], cap, |c| {
        *hist.entry(state_phase(x, omega, c)).or_default() += 1;
    })?;
    Ok(PhaseSum::from_counts(&hist, &group_power(g, x.num_vertices())))
}

/// One bundle class of a closed complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSummary {
    pub representative: Coloring,
    pub orbit_size: u128,
    pub aut: u128,
    pub phase: PhaseQ,
}

/// `Z` computed both as a normalized coloring sum and as a sum over bundle
/// classes weighted by `1/#Aut`.
#[derive(Clone, Debug)]
pub struct ClosedReport {
    pub z: PhaseSum,
    pub z_groupoid: PhaseSum,
    pub num_colorings: usize,
    pub num_vertices: usize,
    pub classes: Vec<ClassSummary>,
}

pub fn partition_report(x: &DeltaComplex3, g: &FiniteGroup, omega: &Cochain, cap: u64) -> Result<ClosedReport> {
    if !x.is_closed() {
        return Err(PathIntegralError::NotClosed);
    }
    require_cocycle(omega, g)?;
    let cols = enumerate_flat_colorings(x.skeleton(), g, &[], cap)?;
    let mut hist: BTreeMap<PhaseQ, u64> = BTreeMap::new();
    for c in &cols {
        *hist.entry(state_phase(x, omega, c)).or_default() += 1;
    }
    let z = PhaseSum::from_counts(&hist, &group_power(g, x.num_vertices()));
    let mut z_groupoid = PhaseSum::zero();
    let classes: Vec<ClassSummary> = gauge_orbits(x.skeleton(), g, &cols, &[])?
        .into_iter()
        .map(|b| {
            let phase = state_phase(x, omega, &b.representative);
            z_groupoid.add_term(phase, BigRational::new(BigInt::one(), BigInt::from(b.stabilizer)));
            ClassSummary {
                representative: b.representative,
                orbit_size: b.orbit_size,
                aut: b.stabilizer,
                phase,
            }
        })
        .collect();
    Ok(ClosedReport {
        z,
        z_groupoid,
        num_colorings: cols.len(),
        num_vertices: x.num_vertices(),
        classes,
    })
}

/// `|Hom(π, G)| / |G|`.
pub fn partition_counting_oracle(p: &Presentation, g: &FiniteGroup, cap: u64) -> Result<BigRational> {
    let homs = enumerate_homs(p, g, cap)?;
    Ok(BigRational::new(BigInt::from(homs.len()), BigInt::from(g.order())))
}

/// `Z_{X'}(Q)` for one boundary coloring `Q`, listed over
/// [`DeltaComplex3::boundary_edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeAmplitude {
    pub boundary_edges: Vec<usize>,
    pub coloring: Vec<usize>,
    pub value: PhaseSum,
}

fn check_boundary_coloring(x: &DeltaComplex3, g: &FiniteGroup, edges: &[usize], q: &[usize]) -> Result<()> {
    if q.len() != edges.len() || q.iter().any(|&v| v >= g.order()) {
        return Err(GaugeError::BadColoring.into());
    }
    let val: BTreeMap<usize, usize> = edges.iter().copied().zip(q.iter().copied()).collect();
    for (i, f) in x.boundary_faces().into_iter().enumerate() {
        let [a, b, c] = x.face_edges(f);
        if g.mul(val[&a], val[&b]) != val[&c] {
            return Err(PathIntegralError::NotFlatBoundary(i));
        }
    }
    Ok(())
}

pub fn relative_partition(
    x: &DeltaComplex3,
    g: &FiniteGroup,
    omega: &Cochain,
    q: &[usize],
) -> Result<RelativeAmplitude> {
    relative_partition_capped(x, g, omega, q, crate::gauge::DEFAULT_NODE_CAP)
}

pub fn relative_partition_capped(
    x: &DeltaComplex3,
    g: &FiniteGroup,
    omega: &Cochain,
    q: &[usize],
    cap: u64,
) -> Result<RelativeAmplitude> {
    if x.is_closed() {
        return Err(PathIntegralError::NoBoundary);
    }
    require_cocycle(omega, g)?;
    let edges = x.boundary_edges();
    check_boundary_coloring(x, g, &edges, q)?;
    let fixed: Vec<(usize, usize)> = edges.iter().copied().zip(q.iter().copied()).collect();
    let mut hist: BTreeMap<PhaseQ, u64> = BTreeMap::new();
    for_each_flat_coloring(x.skeleton(), g, &fixed, cap, |c| {
        *hist.entry(state_phase(x, omega, c)).or_default() += 1;
    })?;
    Ok(RelativeAmplitude {
        boundary_edges: edges,
        coloring: q.to_vec(),
        value: PhaseSum::from_counts(&hist, &group_power(g, x.num_interior_vertices())),
    })
}

/// All nonzero relative amplitudes of a complex, keyed by boundary coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmplitudeTable {
    pub boundary_edges: Vec<usize>,
    pub values: BTreeMap<Vec<usize>, PhaseSum>,
}

impl AmplitudeTable {
    pub fn get(&self, q: &[usize]) -> PhaseSum {
        self.values.get(q).cloned().unwrap_or_default()
    }

    /// Re-expresses the keys over `edges`, where `source[e]` names the edge
    /// of this table that `e` corresponds to.
    pub fn transport(&self, edges: Vec<usize>, source: &BTreeMap<usize, usize>) -> Result<AmplitudeTable> {
        let pos: BTreeMap<usize, usize> = self.boundary_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let picks: Vec<usize> = edges
            .iter()
            .map(|e| source.get(e).and_then(|s| pos.get(s)).copied())
            .collect::<Option<_>>()
            .ok_or(PathIntegralError::SectorMismatch)?;
        if picks.iter().collect::<BTreeSet<_>>().len() != self.boundary_edges.len() {
            return Err(PathIntegralError::SectorMismatch);
        }
        let values = self
            .values
            .iter()
            .map(|(q, v)| (picks.iter().map(|&i| q[i]).collect(), v.clone()))
            .collect();
        Ok(AmplitudeTable {
            boundary_edges: edges,
            values,
        })
    }
}

pub fn relative_amplitudes(x: &DeltaComplex3, g: &FiniteGroup, omega: &Cochain, cap: u64) -> Result<AmplitudeTable> {
    if x.is_closed() {
        return Err(PathIntegralError::NoBoundary);
    }
    require_cocycle(omega, g)?;
    let edges = x.boundary_edges();
    let mut hists: BTreeMap<Vec<usize>, BTreeMap<PhaseQ, u64>> = BTreeMap::new();
    for_each_flat_coloring(x.skeleton(), g, &[], cap, |c| {
        let q: Vec<usize> = edges.iter().map(|&e| c[e]).collect();
        *hists.entry(q).or_default().entry(state_phase(x, omega, c)).or_default() += 1;
    })?;
    let denom = group_power(g, x.num_interior_vertices());
    let values = hists
        .into_iter()
        .map(|(q, h)| (q, PhaseSum::from_counts(&h, &denom)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(AmplitudeTable {
        boundary_edges: edges,
        values,
    })
}

/// One sector of a Hilbert space: a line with weight `μ`, possibly killed
/// by a nontrivial automorphism action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub label: Vec<usize>,
    pub weight: BigRational,
    pub survives: bool,
}

/// `E(Y)` as an orthogonal sum of weighted lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSum {
    pub sectors: Vec<Sector>,
}

impl HilbertSum {
    pub fn dim(&self) -> usize {
        self.sectors.iter().filter(|s| s.survives).count()
    }

    /// `⟨v, w⟩ = Σ μ v̄ w` over surviving sectors, for vectors listed in sector order.
    pub fn inner(&self, v: &[PhaseSum], w: &[PhaseSum]) -> PhaseSum {
        let mut out = PhaseSum::zero();
        for ((s, a), b) in self.sectors.iter().zip(v).zip(w) {
            if s.survives {
                out += (&a.conj() * b).scale(&s.weight);
            }
        }
        out
    }
}

/// Boundary colorings of `∂X`, each with the measure `|G|^(-#boundary vertex classes)`.
/// Labels are listed over [`DeltaComplex3::boundary_edges`].
pub fn boundary_hilbert_space(x: &DeltaComplex3, g: &FiniteGroup, cap: u64) -> Result<HilbertSum> {
    let bs = x.boundary_surface()?;
    let edges = x.boundary_edges();
    let pos: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let weight = BigRational::new(BigInt::one(), group_power(g, bs.surface.num_vertices()));
    let mut sectors = Vec::new();
    for_each_flat_coloring(bs.surface.skeleton(), g, &[], cap, |c| {
        let mut label = vec![0; edges.len()];
        for (se, &v) in c.iter().enumerate() {
            label[pos[&bs.edge_map[se]]] = v;
        }
        sectors.push(Sector {
            label,
            weight: weight.clone(),
            survives: true,
        });
    })?;
    sectors.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(HilbertSum { sectors })
}

/// `Σ_Q μ(Q) v(Q) conj(w(Q))`.
pub fn trace_pair(e: &HilbertSum, v: &AmplitudeTable, w: &AmplitudeTable) -> Result<PhaseSum> {
    if v.boundary_edges.len() != w.boundary_edges.len() {
        return Err(PathIntegralError::SectorMismatch);
    }
    let labels: BTreeSet<&Vec<usize>> = e.sectors.iter().map(|s| &s.label).collect();
    if v.values.keys().chain(w.values.keys()).any(|q| !labels.contains(q)) {
        return Err(PathIntegralError::SectorMismatch);
    }
    let mut out = PhaseSum::zero();
    for s in e.sectors.iter().filter(|s| s.survives) {
        if let (Some(a), Some(b)) = (v.values.get(&s.label), w.values.get(&s.label)) {
            out += (a * &b.conj()).scale(&s.weight);
        }
    }
    Ok(out)
}

/// Both sides of a gluing identity.
#[derive(Clone, Debug)]
pub struct GlueReport {
    pub glued: PhaseSum,
    pub pieces: PhaseSum,
    pub equal: bool,
    pub boundary_colorings: usize,
}

/// `Z(X1 ∪ X2)` against the L² pairing of the pieces' amplitudes.
pub fn glue_identity_check(
    x1: &DeltaComplex3,
    x2: &DeltaComplex3,
    matching: &[(FaceRef, FaceRef)],
    g: &FiniteGroup,
    omega: &Cochain,
    cap: u64,
) -> Result<GlueReport> {
    let glued = glue_along_boundary(x1, x2, matching)?;
    let lhs = partition_closed_capped(&glued, g, omega, cap)?;
    let v = relative_amplitudes(x1, g, omega, cap)?;
    let w_raw = relative_amplitudes(&x2.reversed(), g, omega, cap)?;
    let w = w_raw.transport(v.boundary_edges.clone(), &x1.matched_edge_map(x2, matching)?)?;
    let e = boundary_hilbert_space(x1, g, cap)?;
    let rhs = trace_pair(&e, &v, &w)?;
    Ok(GlueReport {
        equal: lhs == rhs,
        glued: lhs,
        pieces: rhs,
        boundary_colorings: e.sectors.len(),
    })
}

/// `Z` of the reglued complex against the partial trace of the cut one.
pub fn glue_self_identity_check(
    x: &DeltaComplex3,
    matching: &[(FaceRef, FaceRef)],
    g: &FiniteGroup,
    omega: &Cochain,
    cap: u64,
) -> Result<GlueReport> {
    let glued = glue_self(x, matching)?;
    let lhs = partition_closed_capped(&glued, g, omega, cap)?;
    let table = relative_amplitudes(x, g, omega, cap)?;
    let pos: BTreeMap<usize, usize> = table.boundary_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let pairs: Vec<(usize, usize)> = x
        .matched_edge_map(x, matching)?
        .into_iter()
        .map(|(a, b)| (pos[&a], pos[&b]))
        .collect();
    let v_y = glued.num_vertices() - x.num_interior_vertices();
    let mut rhs = PhaseSum::zero();
    let mut count = 0;
    for (q, z) in &table.values {
        if pairs.iter().all(|&(a, b)| q[a] == q[b]) {
            rhs += z;
            count += 1;
        }
    }
    let rhs = rhs.scale(&BigRational::new(BigInt::one(), group_power(g, v_y)));
    Ok(GlueReport {
        equal: lhs == rhs,
        glued: lhs,
        pieces: rhs,
        boundary_colorings: count,
    })
}

/// `β_a`-regularity of the commuting pair `(a, b)`.
fn torus_sector_survives(omega: &Cochain, g: &FiniteGroup, a: usize, b: usize) -> bool {
    let (z, beta) = transgress_unchecked(omega, g, a);
    let lb = z.local_index(b).expect("b commutes with a");
    centralizer(g, &[a, b]).into_iter().all(|c| {
        let lc = z.local_index(c).expect("c commutes with a");
        beta.get(&[lb, lc]) == beta.get(&[lc, lb])
    })
}

/// `E(Σ_g)`: sectors are conjugation classes of `Hom(π₁Σ_g, G)`, each a line
/// of weight `1/#Aut`. On the torus a twisted `ω` kills the sectors `(a, b)`
/// that are not `β_a`-regular.
pub fn hilbert_space(genus: usize, g: &FiniteGroup, omega: &Cochain, cap: u64) -> Result<HilbertSum> {
    require_cocycle(omega, g)?;
    if genus != 1 && !omega.is_zero() {
        return Err(PathIntegralError::TwistedGenusUnsupported(genus));
    }
    let homs = enumerate_homs(&Presentation::surface(genus), g, cap)?;
    let table = hom_orbits(g, &homs)?;
    let sectors = table
        .orbits
        .iter()
        .zip(&table.stabilizer_sizes)
        .map(|(orbit, &stab)| {
            let label = table.homs[orbit[0]].clone();
            let survives = genus != 1 || torus_sector_survives(omega, g, label[0], label[1]);
            Sector {
                label,
                weight: BigRational::new(BigInt::one(), BigInt::from(stab)),
                survives,
            }
        })
        .collect();
    Ok(HilbertSum { sectors })
}

#[derive(Clone, Debug)]
pub struct VerlindeReport {
    pub genus: usize,
    pub dim: usize,
    /// `(method, Z(Σ × S¹))` pairs.
    pub paths: Vec<(String, PhaseSum)>,
    pub equal: bool,
}

/// `dim E(Σ_g) = Z(Σ_g × S¹)`, through the state sum for `g ≤ 1` and through
/// homomorphism counting when `ω = 0`.
pub fn verlinde_check(genus: usize, g: &FiniteGroup, omega: &Cochain, cap: u64) -> Result<VerlindeReport> {
    if genus >= 2 && !omega.is_zero() {
        return Err(PathIntegralError::UnsupportedSurface(format!(
            "genus {genus} with a twisted cocycle"
        )));
    }
    let dim = hilbert_space(genus, g, omega, cap)?.dim();
    let mut paths = Vec::new();
    match genus {
        0 => paths.push((
            "state sum S2xS1".to_string(),
            partition_closed_capped(&s2_times_s1(), g, omega, cap)?,
        )),
        1 => paths.push((
            "state sum T3_6tet".to_string(),
            partition_closed_capped(&three_torus(), g, omega, cap)?,
        )),
        _ => {}
    }
    if omega.is_zero() {
        let z = partition_counting_oracle(&Presentation::surface_times_circle(genus), g, cap)?;
        paths.push(("counting".to_string(), PhaseSum::from_rational(z)));
    }
    let target = PhaseSum::from_int(dim as i64);
    let equal = paths.iter().all(|(_, z)| *z == target);
    Ok(VerlindeReport {
        genus,
        dim,
        paths,
        equal,
    })
}

/// Closed-form lens space value `(1/n) Σ_{ka ≡ 0} exp(2πi·p·k·a²/n²)` for
/// `Z/n` with the cyclic cocycle `ω_p`, used as an independent oracle.
pub fn lens_space_closed_form(k: usize, n: usize, p: i64) -> PhaseSum {
    let mut out = PhaseSum::zero();
    let nn = (n * n) as u64;
    for a in 0..n {
        if (k * a).is_multiple_of(n) {
            let ph = PhaseQ::new(p as i128 * (k * a * a) as i128, nn);
            out.add_term(ph, BigRational::new(BigInt::one(), BigInt::from(n)));
        }
    }
    out
}

/// State-sum value of `Z(L(k,1); Z/n, ω_p)`.
pub fn lens_space_state_sum(k: usize, n: usize, p: i64, cap: u64) -> Result<PhaseSum> {
    let g = crate::groups::cyclic_group(n);
    partition_closed_capped(&lens_space(k), &g, &crate::cochains::cyclic_cocycle(n, p), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::cyclic_cocycle;
    use crate::dcomplex::preset_manifold;
    use crate::gauge::DEFAULT_NODE_CAP;
    use crate::groups::preset_group;
    use crate::phase::rational;

    fn zero(g: &FiniteGroup) -> Cochain {
        Cochain::zero(g.order(), 3)
    }

    #[test]
    fn anchors() {
        for name in ["Z/2", "Z/5", "S3", "Q8"] {
            let g = preset_group(name).unwrap();
            let w = zero(&g);
            let n = g.order() as i64;
            assert_eq!(
                partition_closed(&preset_manifold("S3_2tet").unwrap(), &g, &w).unwrap(),
                PhaseSum::from_rational(rational(1, n))
            );
            assert_eq!(
                partition_closed(&preset_manifold("S2xS1").unwrap(), &g, &w).unwrap(),
                PhaseSum::one()
            );
        }
    }

    #[test]
    fn trivial_coloring_has_zero_action() {
        let g = preset_group("Z/4").unwrap();
        let x = preset_manifold("S3_2tet").unwrap();
        let col = vec![0; x.num_edges()];
        assert!(action_phase(&x, &g, &cyclic_cocycle(4, 1), &col).unwrap().is_zero());
        let ball = preset_manifold("Ball").unwrap();
        assert_eq!(
            action_phase(&ball, &g, &zero(&g), &[0; 6]),
            Err(PathIntegralError::NotClosed)
        );
    }

    #[test]
    fn lens_space_l21_twisted() {
        let z0 = lens_space_state_sum(2, 2, 0, DEFAULT_NODE_CAP).unwrap();
        let z1 = lens_space_state_sum(2, 2, 1, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(z0, PhaseSum::one());
        assert_eq!(z1, PhaseSum::zero());
        let g = preset_group("Z/2").unwrap();
        let x = lens_space(2);
        let r = partition_report(&x, &g, &cyclic_cocycle(2, 1), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.classes[1].phase, PhaseQ::new(1, 2));
    }

    #[test]
    fn lens_space_matches_closed_form() {
        for k in 0..=5 {
            for n in 2..=5 {
                for p in 0..n as i64 {
                    assert_eq!(
                        lens_space_state_sum(k, n, p, DEFAULT_NODE_CAP).unwrap(),
                        lens_space_closed_form(k, n, p),
                        "k={k} n={n} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn relative_ball() {
        let g = preset_group("Z/2").unwrap();
        let ball = preset_manifold("Ball").unwrap();
        let q = vec![0; 6];
        let a = relative_partition(&ball, &g, &zero(&g), &q).unwrap();
        assert_eq!(a.value, PhaseSum::one());
        // all six edges are on the boundary; (0,1)=1, others 0 breaks face [0,1,2]
        let mut bad = vec![0; 6];
        bad[0] = 1;
        assert!(matches!(
            relative_partition(&ball, &g, &zero(&g), &bad),
            Err(PathIntegralError::NotFlatBoundary(_))
        ));
        assert_eq!(
            relative_partition(&three_torus(), &g, &zero(&g), &[]),
            Err(PathIntegralError::NoBoundary)
        );
    }

    #[test]
    fn hilbert_spaces() {
        let s3 = preset_group("S3").unwrap();
        assert_eq!(hilbert_space(1, &s3, &zero(&s3), DEFAULT_NODE_CAP).unwrap().dim(), 8);
        let z5 = preset_group("Z/5").unwrap();
        let e = hilbert_space(0, &z5, &zero(&z5), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.sectors[0].weight, rational(1, 5));
        let z2 = preset_group("Z/2").unwrap();
        assert_eq!(hilbert_space(2, &z2, &zero(&z2), DEFAULT_NODE_CAP).unwrap().dim(), 16);
        assert_eq!(
            hilbert_space(2, &z2, &cyclic_cocycle(2, 1), DEFAULT_NODE_CAP),
            Err(PathIntegralError::TwistedGenusUnsupported(2))
        );
    }

    #[test]
    fn trace_pair_basics() {
        let g = preset_group("Z/2").unwrap();
        let st = preset_manifold("SolidTorus").unwrap();
        let v = relative_amplitudes(&st, &g, &cyclic_cocycle(2, 1), DEFAULT_NODE_CAP).unwrap();
        let e = boundary_hilbert_space(&st, &g, DEFAULT_NODE_CAP).unwrap();
        let self_pair = trace_pair(&e, &v, &v).unwrap();
        assert!(self_pair.as_rational().unwrap() > rational(0, 1));
        let empty = AmplitudeTable {
            boundary_edges: v.boundary_edges.clone(),
            values: BTreeMap::new(),
        };
        assert!(trace_pair(&e, &v, &empty).unwrap().is_zero());
    }
}
