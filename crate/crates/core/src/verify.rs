//! Verification suites: exact identities checked over fixed and seeded
//! random instances. Each check records the instance it ran on so that a
//! failure can be dumped and replayed.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cochains::{coboundary, cohomologous, cyclic_cocycle, Cochain, CohomologyResult};
use crate::dcomplex::{
    ball, cut_along, glue_along_boundary, lens_space, meridian_longitude_matching, preset_manifold, solid_torus,
    three_torus, three_torus_fiber, FaceRef, PRESET_MANIFOLD_NAMES,
};
use crate::error::Error;
use crate::euler::{
    annulus_matching, clutched_sphere, disk_bundle, disk_matching, e_with_lift, euler_closed, euler_glue,
    random_annulus_pair, random_bundle, random_gauge_move, relative_euler,
};
use crate::groups::{cyclic_group, group_from_table, is_homomorphism, preset_group, FiniteGroup, Presentation};
use crate::io::{bundle_to_json, cocycle_to_json, group_to_json};
use crate::pathintegral::{
    glue_identity_check, glue_self_identity_check, hilbert_space, lens_space_closed_form, partition_closed_capped,
    partition_counting_oracle, partition_report, verlinde_check, GlueReport,
};
use crate::phase::{PhaseQ, PhaseSum};

type Result<T> = std::result::Result<T, Error>;

pub const SUITE_NAMES: &[&str] = &["gluing", "coboundary", "triangulation", "verlinde", "euler"];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Counts per suite, with the failing instances in full.
    pub fn to_json(&self) -> Value {
        let mut suites = serde_json::Map::new();
        for c in &self.checks {
            let entry = suites
                .entry(c.suite.clone())
                .or_insert_with(|| json!({"checks": 0, "failed": 0, "failures": []}));
            entry["checks"] = (entry["checks"].as_u64().unwrap() + 1).into();
            if !c.passed {
                entry["failed"] = (entry["failed"].as_u64().unwrap() + 1).into();
                entry["failures"]
                    .as_array_mut()
                    .unwrap()
                    .push(json!({"name": c.name, "instance": c.instance}));
            }
        }
        json!({"passed": self.passed(), "seed": self.seed, "suites": suites})
    }
}

struct Recorder<'a> {
    suite: &'a str,
    checks: Vec<CheckRecord>,
}

impl Recorder<'_> {
    fn check(&mut self, name: impl Into<String>, passed: bool, instance: impl FnOnce() -> Value) {
        self.checks.push(CheckRecord {
            suite: self.suite.to_string(),
            name: name.into(),
            passed,
            // instances are only serialized for failures
            instance: if passed { Value::Null } else { instance() },
        });
    }
}

fn z_json(z: &PhaseSum) -> Value {
    json!(z.exact_pairs())
}

/// `Z/2 × Z/2 × Z/2` with element bits as coordinates.
fn elementary_abelian_8() -> FiniteGroup {
    let table: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| a ^ b).collect()).collect();
    group_from_table(&table)
        .expect("xor table is a group")
        .with_name("Z/2^3")
}

/// `a_0 b_1 c_2 / 2` on `(Z/2)^3`.
fn type_three_cocycle() -> Cochain {
    Cochain::from_fn(8, 3, |a| {
        PhaseQ::new(((a[0] & 1) * ((a[1] >> 1) & 1) * ((a[2] >> 2) & 1)) as i128, 2)
    })
    .expect("normalized")
}

fn sign_map(g: &FiniteGroup) -> Option<Vec<usize>> {
    let z2 = cyclic_group(2);
    (1u32..1 << g.order())
        .map(|bits| (0..g.order()).map(|i| ((bits >> i) & 1) as usize).collect::<Vec<_>>())
        .find(|m| is_homomorphism(g, &z2, m))
}

/// The trivial cocycle and one twisted cocycle per group.
fn cocycles(g: &FiniteGroup) -> Vec<(String, Cochain)> {
    let mut out = vec![("trivial".to_string(), Cochain::zero(g.order(), 3))];
    if g.elements()
        .all(|a| g.elements().all(|b| g.mul(a, b) == (a + b) % g.order()))
    {
        out.push((format!("cyclic:{}:1", g.order()), cyclic_cocycle(g.order(), 1)));
    } else if let Some(m) = sign_map(g) {
        out.push((
            "sign pullback of cyclic:2:1".to_string(),
            cyclic_cocycle(2, 1).pullback(&m),
        ));
    }
    out
}

fn small_groups() -> Vec<FiniteGroup> {
    ["Z/2", "Z/3", "Z/4", "S3"]
        .iter()
        .map(|n| preset_group(n).expect("preset"))
        .collect()
}

fn glue_instance(label: &str, g: &FiniteGroup, w: &Cochain, r: &GlueReport) -> Value {
    json!({
        "gluing": label,
        "group": group_to_json(g),
        "cocycle": cocycle_to_json(g, w),
        "glued": z_json(&r.glued),
        "pieces": z_json(&r.pieces),
    })
}

pub fn gluing_suite(cap: u64) -> Result<Vec<CheckRecord>> {
    let mut rec = Recorder {
        suite: "gluing",
        checks: Vec::new(),
    };
    let b = ball();
    let st = solid_torus();
    let ball_id: Vec<(FaceRef, FaceRef)> = (0..4).map(|f| (FaceRef::new(0, f), FaceRef::new(0, f))).collect();
    let st_id: Vec<(FaceRef, FaceRef)> = meridian_longitude_matching().iter().map(|&(a, _)| (a, a)).collect();
    let t3 = three_torus();
    let cut = cut_along(&t3, &three_torus_fiber(&t3))?;
    let clash = glue_along_boundary(&b, &b, &ball_id).is_err();
    rec.check(
        "Ball u Ball without reversal is rejected",
        clash,
        || json!({"gluing": "Ball u Ball"}),
    );
    for g in small_groups() {
        for (wname, w) in cocycles(&g) {
            let tag = format!("{} {}", g.label(), wname);
            let cases: Vec<(&str, GlueReport)> = vec![
                (
                    "Ball u -Ball",
                    glue_identity_check(&b, &b.reversed(), &ball_id, &g, &w, cap)?,
                ),
                (
                    "SolidTorus u SolidTorus, meridian to longitude",
                    glue_identity_check(&st, &st, &meridian_longitude_matching(), &g, &w, cap)?,
                ),
                (
                    "SolidTorus u -SolidTorus",
                    glue_identity_check(&st, &st.reversed(), &st_id, &g, &w, cap)?,
                ),
                (
                    "T3 cut along a fiber torus and reglued",
                    glue_self_identity_check(&cut.complex, &cut.matching, &g, &w, cap)?,
                ),
            ];
            for (label, r) in cases {
                rec.check(format!("{label} [{tag}]"), r.equal, || glue_instance(label, &g, &w, &r));
            }
        }
    }
    Ok(rec.checks)
}

fn base_cocycle<R: Rng>(g: &FiniteGroup, rng: &mut R) -> Cochain {
    if g.order() == 4 {
        cyclic_cocycle(4, rng.gen_range(0..4))
    } else {
        match sign_map(g) {
            Some(m) if rng.gen_bool(0.5) => cyclic_cocycle(2, 1).pullback(&m),
            _ => Cochain::zero(g.order(), 3),
        }
    }
}

/// `ω` and `ω + δβ` give the same partition functions, and the solver finds a
/// witness for `ω + δβ ~ ω`.
pub fn coboundary_suite(seed: u64, cap: u64) -> Result<Vec<CheckRecord>> {
    let mut rec = Recorder {
        suite: "coboundary",
        checks: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let manifolds = [preset_manifold("S3_2tet")?, lens_space(2), lens_space(3), three_torus()];
    for g in [preset_group("Z/4")?, preset_group("S3")?] {
        for i in 0..50 {
            let w = base_cocycle(&g, &mut rng);
            let beta = Cochain::random(g.order(), 2, &[2, 3, 4, 6], &mut rng);
            let w2 = w.add(&coboundary(&beta, &g)?)?;
            let instance = || {
                json!({
                    "group": group_to_json(&g),
                    "omega": cocycle_to_json(&g, &w),
                    "beta": beta.nonzero_entries().iter().map(|(a, v)| json!([a, v.to_string()])).collect::<Vec<_>>(),
                })
            };
            for x in &manifolds {
                let z1 = partition_closed_capped(x, &g, &w, cap)?;
                let z2 = partition_closed_capped(x, &g, &w2, cap)?;
                rec.check(
                    format!("{} {} #{i}: Z unchanged", g.label(), x.label()),
                    z1 == z2,
                    instance,
                );
            }
            let bound = beta
                .denominator_lcm()
                .lcm(&w.denominator_lcm())
                .lcm(&w2.denominator_lcm());
            let found = match cohomologous(&w2, &w, &g, bound)? {
                CohomologyResult::Witness(b) => coboundary(&b, &g)? == w2.sub(&w)?,
                CohomologyResult::NotFoundWithinCap => false,
            };
            rec.check(format!("{} #{i}: witness found", g.label()), found, instance);
        }
    }
    Ok(rec.checks)
}

pub fn triangulation_suite(cap: u64) -> Result<Vec<CheckRecord>> {
    let mut rec = Recorder {
        suite: "triangulation",
        checks: Vec::new(),
    };
    for &name in PRESET_MANIFOLD_NAMES {
        let x = preset_manifold(name)?;
        let ok = x.check_manifold().is_ok();
        rec.check(format!("{name} is a manifold"), ok, || json!({"manifold": name}));
    }
    let s3a = preset_manifold("S3_2tet")?;
    let s3b = preset_manifold("S3_bd4simplex")?;
    let b = ball();
    let ball_id: Vec<(FaceRef, FaceRef)> = (0..4).map(|f| (FaceRef::new(0, f), FaceRef::new(0, f))).collect();
    let s3c = glue_along_boundary(&b, &b.reversed(), &ball_id)?;
    let closed: Vec<&str> = PRESET_MANIFOLD_NAMES
        .iter()
        .copied()
        .filter(|n| preset_manifold(n).map(|x| x.is_closed()).unwrap_or(false))
        .collect();
    for g in small_groups() {
        for (wname, w) in cocycles(&g) {
            let tag = format!("{} {}", g.label(), wname);
            let inv = PhaseSum::from_rational(num_rational::BigRational::new(1.into(), g.order().into()));
            let za = partition_closed_capped(&s3a, &g, &w, cap)?;
            let zb = partition_closed_capped(&s3b, &g, &w, cap)?;
            let zc = partition_closed_capped(&s3c, &g, &w, cap)?;
            rec.check(
                format!("three triangulations of S3 give 1/|G| [{tag}]"),
                [&za, &zb, &zc].iter().all(|z| **z == inv),
                || {
                    json!({
                        "S3_2tet": z_json(&za),
                        "S3_bd4simplex": z_json(&zb),
                        "Ball u -Ball": z_json(&zc),
                        "group": g.label(),
                        "cocycle": wname,
                    })
                },
            );
            for &name in &closed {
                let x = preset_manifold(name)?;
                let r = partition_report(&x, &g, &w, cap)?;
                rec.check(format!("{name}: coloring sum equals bundle sum [{tag}]"), r.z == r.z_groupoid, || {
                    json!({"manifold": name, "z": z_json(&r.z), "z_groupoid": z_json(&r.z_groupoid), "cocycle": wname})
                });
                if w.is_zero() {
                    let p = x.presentation().cloned().unwrap_or_else(Presentation::trivial);
                    let oracle = PhaseSum::from_rational(partition_counting_oracle(&p, &g, cap)?);
                    rec.check(
                        format!("{name}: Z counts homomorphisms [{}]", g.label()),
                        r.z == oracle,
                        || json!({"manifold": name, "z": z_json(&r.z), "oracle": z_json(&oracle)}),
                    );
                }
            }
        }
    }
    for k in 0..=6 {
        for n in 2..=5usize {
            for p in 0..n as i64 {
                let z = partition_closed_capped(&lens_space(k), &cyclic_group(n), &cyclic_cocycle(n, p), cap)?;
                let want = lens_space_closed_form(k, n, p);
                rec.check(
                    format!("L({k},1) with Z/{n} and cyclic:{n}:{p}"),
                    z == want,
                    || json!({"k": k, "n": n, "p": p, "z": z_json(&z), "closed_form": z_json(&want)}),
                );
            }
        }
    }
    Ok(rec.checks)
}

pub fn verlinde_suite(cap: u64) -> Result<Vec<CheckRecord>> {
    let mut rec = Recorder {
        suite: "verlinde",
        checks: Vec::new(),
    };
    let mut cases: Vec<(usize, FiniteGroup, String, Cochain)> = Vec::new();
    for g in small_groups() {
        for genus in 0..=2 {
            cases.push((genus, g.clone(), "trivial".into(), Cochain::zero(g.order(), 3)));
        }
        for (wname, w) in cocycles(&g).into_iter().skip(1) {
            cases.push((1, g.clone(), wname, w));
        }
    }
    for n in [2usize, 3, 4, 5] {
        for p in 1..n as i64 {
            cases.push((1, cyclic_group(n), format!("cyclic:{n}:{p}"), cyclic_cocycle(n, p)));
        }
    }
    cases.push((1, elementary_abelian_8(), "a0 b1 c2 / 2".into(), type_three_cocycle()));
    for (genus, g, wname, w) in cases {
        let r = verlinde_check(genus, &g, &w, cap)?;
        rec.check(format!("genus {genus} [{} {wname}]", g.label()), r.equal, || {
            json!({
                "genus": genus,
                "group": group_to_json(&g),
                "cocycle": wname,
                "dim": r.dim,
                "paths": r.paths.iter().map(|(m, z)| json!({"method": m, "z": z_json(z)})).collect::<Vec<_>>(),
            })
        });
    }
    let g = elementary_abelian_8();
    let e = hilbert_space(1, &g, &type_three_cocycle(), cap)?;
    rec.check(
        "type III twist keeps 22 of 64 torus sectors",
        e.dim() == 22 && e.sectors.len() == 64,
        || json!({"dim": e.dim(), "sectors": e.sectors.len()}),
    );
    Ok(rec.checks)
}

pub fn euler_suite(seed: u64) -> Result<Vec<CheckRecord>> {
    let mut rec = Recorder {
        suite: "euler",
        checks: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in -2..=2 {
        let l = clutched_sphere(d);
        let e = euler_closed(&l)?;
        let er = euler_closed(&l.reversed())?;
        rec.check(
            format!("clutched sphere d={d}"),
            e == d && er == -d,
            || json!({"bundle": bundle_to_json(&l), "e": e, "reversed": er}),
        );
        let half = num_rational::BigRational::new(d.into(), 2.into());
        let r = euler_glue(&disk_bundle(&half, false), &disk_bundle(&half, true), &disk_matching())?;
        rec.check(
            format!("disk u disk d={d}"),
            r.equal && r.glued == d,
            || json!({"glued": r.glued, "paired": r.paired}),
        );
    }
    for i in 0..100 {
        let k = 1 + i % 3;
        let (a, b) = random_annulus_pair(k, &mut rng);
        let r = euler_glue(&a, &b, &annulus_matching(k))?;
        rec.check(
            format!("annulus gluing #{i}"),
            r.equal,
            || json!({"first": bundle_to_json(&a), "second": bundle_to_json(&b), "glued": r.glued, "paired": r.paired}),
        );
        let moved = random_gauge_move(&a, &mut rng);
        let same = relative_euler(&moved)? == relative_euler(&a)?;
        rec.check(
            format!("gauge move #{i}"),
            same,
            || json!({"before": bundle_to_json(&a), "after": bundle_to_json(&moved)}),
        );
        let e = relative_euler(&a)?;
        let mut f = e.torsor.reference();
        let (s0, s1) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        f.lifts[0] += num_rational::BigRational::from_integer(s0.into());
        f.lifts[1] += num_rational::BigRational::from_integer(s1.into());
        let lhs = e_with_lift(&a, &f)? - e_with_lift(&a, &e.torsor.reference())?;
        let rhs = e.torsor.difference(&e.torsor.reference(), &f)?;
        rec.check(
            format!("difference law #{i}"),
            lhs == rhs,
            || json!({"bundle": bundle_to_json(&a), "shifts": [s0, s1], "lhs": lhs, "rhs": rhs}),
        );
        let t = random_bundle(crate::dcomplex::torus_surface(), &mut rng);
        let (et, er) = (euler_closed(&t)?, euler_closed(&t.reversed())?);
        rec.check(
            format!("reversal #{i}"),
            et == -er,
            || json!({"bundle": bundle_to_json(&t)}),
        );
    }
    Ok(rec.checks)
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, seed: u64, cap: u64) -> Result<SuiteReport> {
    let names: Vec<&str> = match name {
        "all" => SUITE_NAMES.to_vec(),
        n if SUITE_NAMES.contains(&n) => vec![n],
        n => {
            return Err(crate::error::ParseError::Format(format!(
                "unknown suite {n:?}; expected one of {}, all",
                SUITE_NAMES.join(", ")
            ))
            .into())
        }
    };
    let mut checks = Vec::new();
    for n in names {
        checks.extend(match n {
            "gluing" => gluing_suite(cap)?,
            "coboundary" => coboundary_suite(seed, cap)?,
            "triangulation" => triangulation_suite(cap)?,
            "verlinde" => verlinde_suite(cap)?,
            _ => euler_suite(seed)?,
        });
    }
    Ok(SuiteReport { seed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::DEFAULT_NODE_CAP;

    #[test]
    fn every_suite_passes() {
        let r = run_suite("all", 0, DEFAULT_NODE_CAP).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0, DEFAULT_NODE_CAP).is_err());
    }
}
