//! JSON file formats and result rendering.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cochains::{cyclic_cocycle, Cochain};
use crate::dcomplex::{
    annulus_surface, disk_surface, face_vertices, preset_manifold, sphere_surface, torus_surface, DeltaComplex2,
    DeltaComplex3, FaceRef, SideRef,
};
use crate::error::{CochainError, ComplexError, Error, ParseError};
use crate::euler::LineBundleConn;
use crate::groups::{cyclic_group, group_from_table, preset_group, FiniteGroup};
use crate::phase::{fmt_rational, parse_rational, PhaseQ, PhaseSum};

type Result<T> = std::result::Result<T, Error>;

fn format_err(msg: impl Into<String>) -> Error {
    ParseError::Format(msg.into()).into()
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| ParseError::Json(e.to_string()).into())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| format_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ParseError::Json(format!("{}: {e}", path.display())).into())
}

/// Preset name, or a path to a JSON file when the argument names one.
fn preset_or_file<T>(arg: &str, preset: impl Fn(&str) -> Result<T>, parse: impl Fn(&Value) -> Result<T>) -> Result<T> {
    let path = Path::new(arg);
    if path.is_file() {
        parse(&read_json(path)?)
    } else {
        preset(arg)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    order: usize,
    table: Vec<Vec<usize>>,
}

pub fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    if let Some(name) = v.as_str() {
        return Ok(preset_group(name)?);
    }
    let f: GroupFile = from_value(v)?;
    if f.table.len() != f.order {
        return Err(format_err(format!(
            "order {} but table has {} rows",
            f.order,
            f.table.len()
        )));
    }
    let g = group_from_table(&f.table)?;
    Ok(match f.name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    serde_json::to_value(GroupFile {
        name: g.name().map(str::to_string),
        order: g.order(),
        table: g.table_rows(),
    })
    .expect("group serializes")
}

pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    preset_or_file(arg, |s| Ok(preset_group(s)?), group_from_json)
}

/// True when `g` is `Z/n` with element `i` standing for `i mod n`.
fn is_standard_cyclic(g: &FiniteGroup) -> bool {
    let n = g.order();
    g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == (a + b) % n))
}

fn cyclic_on(g: &FiniteGroup, n: usize, p: i64) -> Result<Cochain> {
    if g.order() != n {
        return Err(CochainError::GroupMismatch {
            expected: g.order(),
            found: n,
        }
        .into());
    }
    if !is_standard_cyclic(g) {
        return Err(format_err(format!("{} is not Z/{n} in standard labeling", g.label())));
    }
    Ok(cyclic_cocycle(n, p))
}

/// A cocycle file, with the group it names if any.
pub fn cocycle_from_json(v: &Value, group: Option<&FiniteGroup>) -> Result<(FiniteGroup, Cochain)> {
    if let Some(c) = v.get("cyclic") {
        let n = c
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| format_err("cyclic form needs integer n"))? as usize;
        let p = c
            .get("p")
            .and_then(Value::as_i64)
            .ok_or_else(|| format_err("cyclic form needs integer p"))?;
        let g = match group {
            Some(g) => g.clone(),
            None => cyclic_group(n),
        };
        let w = cyclic_on(&g, n, p)?;
        return Ok((g, w));
    }
    let g = match (v.get("group"), group) {
        (Some(gv), _) => {
            let named = group_from_json(gv)?;
            if let Some(given) = group {
                if given.table_rows() != named.table_rows() {
                    return Err(format_err("cocycle file names a different group"));
                }
            }
            named
        }
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(format_err("cocycle file names no group")),
    };
    let arity = v.get("arity").and_then(Value::as_u64).unwrap_or(3) as usize;
    let mut w = Cochain::zero(g.order(), arity);
    let entries = v.get("entries").and_then(Value::as_array).cloned().unwrap_or_default();
    for e in entries {
        let row = e
            .as_array()
            .ok_or_else(|| format_err("cocycle entry is not an array"))?;
        if row.len() != arity + 1 {
            return Err(format_err(format!("cocycle entry {e} needs {} fields", arity + 1)));
        }
        let args: Vec<usize> = row[..arity]
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).filter(|&x| x < g.order()))
            .collect::<Option<_>>()
            .ok_or_else(|| format_err(format!("cocycle entry {e} has a bad group element")))?;
        let val: PhaseQ = row[arity]
            .as_str()
            .ok_or_else(|| format_err(format!("cocycle entry {e} needs a \"num/den\" value")))?
            .parse()?;
        w.set(&args, val)?;
    }
    Ok((g, w))
}

pub fn cocycle_to_json(g: &FiniteGroup, w: &Cochain) -> Value {
    let entries: Vec<Value> = w
        .nonzero_entries()
        .into_iter()
        .map(|(args, v)| {
            let mut row: Vec<Value> = args.into_iter().map(Value::from).collect();
            row.push(Value::from(v.to_string()));
            Value::Array(row)
        })
        .collect();
    json!({"group": group_to_json(g), "arity": w.arity(), "entries": entries})
}

/// `trivial`, `cyclic:n:p`, or a cocycle file, over `g`.
pub fn parse_cocycle_arg(arg: &str, g: &FiniteGroup) -> Result<Cochain> {
    if arg == "trivial" {
        return Ok(Cochain::zero(g.order(), 3));
    }
    if let Some(rest) = arg.strip_prefix("cyclic:") {
        let (n, p) = rest
            .split_once(':')
            .and_then(|(n, p)| Some((n.parse::<usize>().ok()?, p.parse::<i64>().ok()?)))
            .ok_or_else(|| format_err(format!("expected cyclic:n:p, got {arg:?}")))?;
        return cyclic_on(g, n, p);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(format_err(format!(
            "cocycle {arg:?} is neither a known form nor a file"
        )));
    }
    Ok(cocycle_from_json(&read_json(path)?, Some(g))?.1)
}

#[derive(Serialize, Deserialize)]
struct TriangulationFile {
    tets: usize,
    gluings: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| format_err(format!("{what} must be a nonnegative integer, got {v}")))
}

/// `{"tets": n, "gluings": [[t, f, t', f', [p0, p1, p2]], ...]}` where `p`
/// sends the vertices of face `f` in increasing order to vertices of `t'`.
/// Only gluings that preserve vertex order are accepted; `p` may be omitted.
pub fn triangulation_from_json(v: &Value) -> Result<DeltaComplex3> {
    let f: TriangulationFile = from_value(v)?;
    let mut gluings = Vec::new();
    for row in &f.gluings {
        if row.len() != 4 && row.len() != 5 {
            return Err(format_err(format!("gluing {row:?} needs 4 or 5 fields")));
        }
        let a = FaceRef::new(as_index(&row[0], "tet")?, as_index(&row[1], "face")?);
        let b = FaceRef::new(as_index(&row[2], "tet")?, as_index(&row[3], "face")?);
        if a.face >= 4 || b.face >= 4 {
            return Err(ComplexError::DanglingFace(format!("face index in {row:?}")).into());
        }
        if let Some(p) = row.get(4) {
            let perm: Vec<usize> = from_value(p)?;
            if perm != face_vertices(b.face) {
                return Err(ComplexError::NotOrderRespecting {
                    tet: a.tet,
                    face: a.face,
                }
                .into());
            }
        }
        gluings.push((a, b));
    }
    let x = DeltaComplex3::from_gluings(f.tets, &gluings)?;
    Ok(match f.name {
        Some(n) => x.with_name(n),
        None => x,
    })
}

pub fn triangulation_to_json(x: &DeltaComplex3) -> Value {
    let gluings = x
        .gluings()
        .into_iter()
        .map(|(a, b)| {
            vec![
                a.tet.into(),
                a.face.into(),
                b.tet.into(),
                b.face.into(),
                json!(face_vertices(b.face)),
            ]
        })
        .collect();
    serde_json::to_value(TriangulationFile {
        tets: x.num_tets(),
        gluings,
        name: x.name().map(str::to_string),
    })
    .expect("triangulation serializes")
}

pub fn load_manifold(arg: &str) -> Result<DeltaComplex3> {
    preset_or_file(arg, |s| Ok(preset_manifold(s)?), triangulation_from_json)
}

/// `sphere`, `torus`, `disk`, `annulus:k`, or `{"triangles": n, "gluings": [[t, s, t', s'], ...]}`.
pub fn surface_from_json(v: &Value) -> Result<DeltaComplex2> {
    if let Some(name) = v.as_str() {
        return match name {
            "sphere" => Ok(sphere_surface()),
            "torus" => Ok(torus_surface()),
            "disk" => Ok(disk_surface()),
            _ => match name.strip_prefix("annulus:").and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k >= 1 => Ok(annulus_surface(k)),
                _ => Err(ComplexError::UnknownName(name.to_string()).into()),
            },
        };
    }
    let n = v
        .get("triangles")
        .map(|t| as_index(t, "triangles"))
        .transpose()?
        .ok_or_else(|| format_err("surface needs \"triangles\""))?;
    let rows: Vec<[usize; 4]> = from_value(v.get("gluings").unwrap_or(&json!([])))?;
    let gluings: Vec<(SideRef, SideRef)> = rows
        .iter()
        .map(|r| (SideRef::new(r[0], r[1]), SideRef::new(r[2], r[3])))
        .collect();
    Ok(DeltaComplex2::from_gluings(n, &gluings)?)
}

fn indexed_rationals(v: Option<&Value>, len: usize, what: &str) -> Result<Vec<BigRational>> {
    let mut out = vec![BigRational::from_integer(0.into()); len];
    let Some(v) = v else { return Ok(out) };
    let map: BTreeMap<String, String> = from_value(v)?;
    for (k, s) in map {
        let i: usize = k
            .parse()
            .map_err(|_| format_err(format!("{what} id {k:?} is not an index")))?;
        if i >= len {
            return Err(format_err(format!("{what} id {i} out of range ({len} present)")));
        }
        out[i] = parse_rational(&s)?;
    }
    Ok(out)
}

/// `{"surface": ..., "F": {"t": "a/b"}, "hol": {"e": "a/b"}}`; missing
/// entries are zero.
pub fn bundle_from_json(v: &Value) -> Result<LineBundleConn> {
    let base = surface_from_json(v.get("surface").ok_or_else(|| format_err("bundle needs \"surface\""))?)?;
    let f = indexed_rationals(v.get("F"), base.num_triangles(), "triangle")?;
    let hol = indexed_rationals(v.get("hol"), base.num_edges(), "edge")?
        .iter()
        .map(PhaseQ::from_ratio)
        .collect();
    Ok(LineBundleConn::new(base, f, hol)?)
}

pub fn bundle_to_json(l: &LineBundleConn) -> Value {
    let b = l.base();
    let gluings: Vec<[usize; 4]> = b
        .gluings()
        .into_iter()
        .map(|(x, y)| [x.tri, x.side, y.tri, y.side])
        .collect();
    let f: Map<String, Value> = l
        .curvature()
        .iter()
        .enumerate()
        .map(|(i, r)| (i.to_string(), fmt_rational(r).into()))
        .collect();
    let hol: Map<String, Value> = l
        .holonomy()
        .iter()
        .enumerate()
        .map(|(i, h)| (i.to_string(), h.to_string().into()))
        .collect();
    json!({
        "surface": {"triangles": b.num_triangles(), "gluings": gluings},
        "F": f,
        "hol": hol,
    })
}

pub fn load_bundle(path: &Path) -> Result<LineBundleConn> {
    bundle_from_json(&read_json(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputMode {
    Exact,
    Approx,
    #[default]
    Both,
}

/// `{"exact": [["coef", "phase"], ...], "approx": [re, im]}`, restricted to the mode.
pub fn value_json(z: &PhaseSum, mode: OutputMode) -> Map<String, Value> {
    let mut m = Map::new();
    if mode != OutputMode::Approx {
        let pairs: Vec<Value> = z.exact_pairs().into_iter().map(|(c, p)| json!([c, p])).collect();
        m.insert("exact".into(), pairs.into());
    }
    if mode != OutputMode::Exact {
        let (re, im) = z.to_complex();
        m.insert("approx".into(), json!([re, im]));
    }
    m
}

pub fn result_json(z: &PhaseSum, mode: OutputMode, meta: Map<String, Value>) -> Value {
    let mut m = value_json(z, mode);
    m.insert("meta".into(), Value::Object(meta));
    Value::Object(m)
}

/// Edge id to group element.
pub fn coloring_json(col: &[usize]) -> Value {
    Value::Object(
        col.iter()
            .enumerate()
            .map(|(e, &g)| (e.to_string(), g.into()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::PRESET_MANIFOLD_NAMES;
    use crate::euler::clutched_sphere;
    use crate::phase::rational;

    #[test]
    fn groups_round_trip() {
        for name in ["Z/6", "S3", "Q8"] {
            let g = preset_group(name).unwrap();
            let back = group_from_json(&group_to_json(&g)).unwrap();
            assert_eq!(back.table_rows(), g.table_rows());
            assert_eq!(back.name(), Some(name));
        }
        let bad = json!({"order": 3, "table": [[0, 1], [1, 0]]});
        assert!(group_from_json(&bad).is_err());
    }

    #[test]
    fn triangulations_round_trip() {
        for &name in PRESET_MANIFOLD_NAMES {
            let x = preset_manifold(name).unwrap();
            let y = triangulation_from_json(&triangulation_to_json(&x)).unwrap();
            assert_eq!(y.gluings(), x.gluings());
            assert_eq!(y.num_vertices(), x.num_vertices());
            assert_eq!(y.num_edges(), x.num_edges());
        }
    }

    #[test]
    fn twisted_gluing_rejected() {
        let v = json!({"tets": 2, "gluings": [[0, 0, 1, 0, [2, 1, 3]]]});
        assert!(matches!(
            triangulation_from_json(&v),
            Err(Error::Complex(ComplexError::NotOrderRespecting { tet: 0, face: 0 }))
        ));
    }

    #[test]
    fn cocycle_forms() {
        let g = preset_group("Z/4").unwrap();
        assert_eq!(parse_cocycle_arg("cyclic:4:1", &g).unwrap(), cyclic_cocycle(4, 1));
        assert!(parse_cocycle_arg("cyclic:3:1", &g).is_err());
        assert!(parse_cocycle_arg("cyclic:6:1", &preset_group("S3").unwrap()).is_err());
        let w = cyclic_cocycle(4, 3);
        let (h, back) = cocycle_from_json(&cocycle_to_json(&g, &w), None).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(back, w);
        let (_, c) = cocycle_from_json(&json!({"cyclic": {"n": 3, "p": 2}}), None).unwrap();
        assert_eq!(c, cyclic_cocycle(3, 2));
    }

    #[test]
    fn bundles_round_trip() {
        let l = clutched_sphere(2);
        assert_eq!(bundle_from_json(&bundle_to_json(&l)).unwrap(), l);
        let v = json!({"surface": "disk", "F": {"0": "1/2"}, "hol": {"0": "1/2"}});
        assert!(bundle_from_json(&v).is_ok());
        let corrupt = json!({"surface": "sphere", "F": {"0": "1", "1": "1"}, "hol": {"0": "1/2"}});
        assert!(matches!(
            bundle_from_json(&corrupt),
            Err(Error::Euler(crate::error::EulerError::Incompatible(0)))
        ));
    }

    #[test]
    fn result_shape() {
        let z = PhaseSum::from_rational(rational(1, 6));
        let v = result_json(&z, OutputMode::Both, Map::new());
        assert_eq!(v["exact"], json!([["1/6", "0/1"]]));
        assert_eq!(v["approx"][1], json!(0.0));
        assert!(value_json(&z, OutputMode::Exact).get("approx").is_none());
    }
}
