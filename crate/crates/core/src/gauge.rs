//! Flat colorings (fields), gauge transformations and bundle classes.

use std::collections::HashMap;

use crate::dcomplex::{DeltaComplex3, Loop, Skeleton};
use crate::error::GaugeError;
use crate::groups::{class_index, conjugacy_classes, generating_set, FiniteGroup};

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

/// Group element per edge class, for the edge's own direction.
pub type Coloring = Vec<usize>;

pub fn check_flat(skel: &Skeleton, g: &FiniteGroup, col: &[usize]) -> Result<(), GaugeError> {
    if col.len() != skel.num_edges() || col.iter().any(|&x| x >= g.order()) {
        return Err(GaugeError::BadColoring);
    }
    for (i, &[a, b, c]) in skel.triangles.iter().enumerate() {
        if g.mul(col[a], col[b]) != col[c] {
            return Err(GaugeError::NotFlat(i));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Free(usize),
    /// Edge `edge` sits at position `pos` of triangle `tri` and is forced by the other two.
    Derive {
        edge: usize,
        tri: usize,
        pos: usize,
    },
}

/// Static search order: free choices interleaved with edges forced by
/// flatness, and the triangles that become checkable after each step.
struct Plan {
    initial_checks: Vec<usize>,
    steps: Vec<(Step, Vec<usize>)>,
}

fn make_plan(skel: &Skeleton, known_init: &[bool]) -> Plan {
    let ne = skel.num_edges();
    let mut incident = vec![Vec::new(); ne];
    for (t, tri) in skel.triangles.iter().enumerate() {
        for &e in tri {
            if !incident[e].contains(&t) {
                incident[e].push(t);
            }
        }
    }
    let mut known = known_init.to_vec();
    let mut checked = vec![false; skel.triangles.len()];
    let full = |known: &[bool], t: usize| skel.triangles[t].iter().all(|&e| known[e]);
    let initial_checks: Vec<usize> = (0..skel.triangles.len()).filter(|&t| full(&known, t)).collect();
    for &t in &initial_checks {
        checked[t] = true;
    }
    let mut steps = Vec::new();
    loop {
        let derivable = (0..skel.triangles.len()).find_map(|t| {
            if checked[t] {
                return None;
            }
            let tri = skel.triangles[t];
            let unknown: Vec<usize> = (0..3).filter(|&p| !known[tri[p]]).collect();
            (unknown.len() == 1).then(|| (t, unknown[0]))
        });
        let step = match derivable {
            Some((tri, pos)) => Step::Derive {
                edge: skel.triangles[tri][pos],
                tri,
                pos,
            },
            None => {
                let score = |e: usize| {
                    incident[e]
                        .iter()
                        .filter(|&&t| skel.triangles[t].iter().any(|&x| known[x]))
                        .count()
                };
                match (0..ne)
                    .filter(|&e| !known[e])
                    .max_by_key(|&e| (score(e), std::cmp::Reverse(e)))
                {
                    Some(e) => Step::Free(e),
                    None => break,
                }
            }
        };
        let e = match step {
            Step::Free(e) => e,
            Step::Derive { edge, tri, .. } => {
                checked[tri] = true;
                edge
            }
        };
        known[e] = true;
        let mut checks = Vec::new();
        for &t in &incident[e] {
            if !checked[t] && full(&known, t) {
                checked[t] = true;
                checks.push(t);
            }
        }
        steps.push((step, checks));
    }
    Plan { initial_checks, steps }
}

struct Search<'a, F> {
    skel: &'a Skeleton,
    g: &'a FiniteGroup,
    plan: Plan,
    vals: Vec<usize>,
    nodes: u64,
    cap: u64,
    found: u64,
    visit: F,
}

impl<F: FnMut(&[usize])> Search<'_, F> {
    fn flat_at(&self, t: usize) -> bool {
        let [a, b, c] = self.skel.triangles[t];
        self.g.mul(self.vals[a], self.vals[b]) == self.vals[c]
    }

    fn run(&mut self, i: usize) -> Result<(), GaugeError> {
        if i == self.plan.steps.len() {
            self.found += 1;
            (self.visit)(&self.vals);
            return Ok(());
        }
        let (step, n_checks) = (self.plan.steps[i].0, self.plan.steps[i].1.len());
        let (edge, first, count) = match step {
            Step::Free(e) => (e, 0, self.g.order()),
            Step::Derive { edge, tri, pos } => {
                let [a, b, c] = self.skel.triangles[tri];
                let (g, v) = (self.g, &self.vals);
                let x = match pos {
                    0 => g.mul(v[c], g.inv(v[b])),
                    1 => g.mul(g.inv(v[a]), v[c]),
                    _ => g.mul(v[a], v[b]),
                };
                (edge, x, 1)
            }
        };
        for x in first..first + count {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(GaugeError::SizeLimit(self.cap));
            }
            self.vals[edge] = x;
            if (0..n_checks).all(|k| self.flat_at(self.plan.steps[i].1[k])) {
                self.run(i + 1)?;
            }
        }
        Ok(())
    }
}

/// Calls `visit` on every flat coloring extending `fixed`, in a fixed
/// deterministic order. Returns the number of colorings visited.
pub fn for_each_flat_coloring(
    skel: &Skeleton,
    g: &FiniteGroup,
    fixed: &[(usize, usize)],
    cap: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<u64, GaugeError> {
    let ne = skel.num_edges();
    let mut known = vec![false; ne];
    let mut vals = vec![0; ne];
    for &(e, x) in fixed {
        if e >= ne || x >= g.order() || (known[e] && vals[e] != x) {
            return Err(GaugeError::BadColoring);
        }
        known[e] = true;
        vals[e] = x;
    }
    let mut search = Search {
        skel,
        g,
        plan: make_plan(skel, &known),
        vals,
        nodes: 0,
        cap,
        found: 0,
        visit: &mut visit,
    };
    if search.plan.initial_checks.iter().all(|&t| search.flat_at(t)) {
        search.run(0)?;
    }
    Ok(search.found)
}

pub fn enumerate_flat_colorings(
    skel: &Skeleton,
    g: &FiniteGroup,
    fixed: &[(usize, usize)],
    cap: u64,
) -> Result<Vec<Coloring>, GaugeError> {
    let mut out = Vec::new();
    for_each_flat_coloring(skel, g, fixed, cap, |c| out.push(c.to_vec()))?;
    Ok(out)
}

/// `g(uv) ↦ h(u)·g(uv)·h(v)⁻¹`.
pub fn gauge_transform(skel: &Skeleton, g: &FiniteGroup, col: &[usize], h: &[usize]) -> Coloring {
    skel.edge_ends
        .iter()
        .zip(col)
        .map(|(&(u, v), &x)| g.mul(g.mul(h[u], x), g.inv(h[v])))
        .collect()
}

/// Gauge transformation by `x` at the single vertex `v`.
fn act_at_vertex(skel: &Skeleton, g: &FiniteGroup, col: &[usize], v: usize, x: usize) -> Coloring {
    let xi = g.inv(x);
    skel.edge_ends
        .iter()
        .zip(col)
        .map(|(&(a, b), &c)| {
            let c = if a == v { g.mul(x, c) } else { c };
            if b == v {
                g.mul(c, xi)
            } else {
                c
            }
        })
        .collect()
}

/// A gauge orbit of colorings: a bundle up to isomorphism, with `#Aut`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    pub representative: Coloring,
    pub orbit_size: u128,
    pub stabilizer: u128,
}

/// Splits `colorings` into gauge orbits. Vertices listed in `frozen` carry
/// the identity transformation (boundary vertices in the relative case).
/// Classes are ordered by their first member in `colorings`.
pub fn gauge_orbits(
    skel: &Skeleton,
    g: &FiniteGroup,
    colorings: &[Coloring],
    frozen: &[usize],
) -> Result<Vec<BundleClass>, GaugeError> {
    let index: HashMap<&[usize], usize> = colorings.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let free: Vec<usize> = (0..skel.num_vertices).filter(|v| !frozen.contains(v)).collect();
    let gens = generating_set(g);
    let group_size = (g.order() as u128).pow(free.len() as u32);
    let mut seen = vec![false; colorings.len()];
    let mut classes = Vec::new();
    for start in 0..colorings.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let c = &colorings[queue[head]];
            head += 1;
            for &v in &free {
                for &x in &gens {
                    let img = act_at_vertex(skel, g, c, v, x);
                    let j = *index.get(img.as_slice()).ok_or(GaugeError::NotClosed)?;
                    if !seen[j] {
                        seen[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
        let orbit = queue.len() as u128;
        classes.push(BundleClass {
            representative: colorings[start].clone(),
            orbit_size: orbit,
            stabilizer: group_size / orbit,
        });
    }
    Ok(classes)
}

pub fn holonomy(g: &FiniteGroup, col: &[usize], path: &Loop) -> usize {
    path.iter()
        .fold(0, |acc, &(e, fwd)| g.mul(acc, if fwd { col[e] } else { g.inv(col[e]) }))
}

/// Conjugacy class index (in [`conjugacy_classes`] order) of the holonomy
/// along each named loop of `x`.
pub fn holonomy_class_invariants(
    x: &DeltaComplex3,
    g: &FiniteGroup,
    class: &BundleClass,
) -> Result<Vec<usize>, GaugeError> {
    if x.loops().is_empty() {
        return Err(GaugeError::UnknownLoops);
    }
    let classes = conjugacy_classes(g);
    Ok(x.loops()
        .iter()
        .map(|l| class_index(&classes, holonomy(g, &class.representative, l)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::{preset_manifold, three_torus};
    use crate::groups::preset_group;

    #[test]
    fn ball_has_one_class() {
        let x = preset_manifold("Ball").unwrap();
        let g = preset_group("Z/2").unwrap();
        let cols = enumerate_flat_colorings(x.skeleton(), &g, &[], DEFAULT_NODE_CAP).unwrap();
        // a flat coloring of a simplex is fixed by the three edges out of vertex 0
        assert_eq!(cols.len(), 8);
        let classes = gauge_orbits(x.skeleton(), &g, &cols, &[]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].stabilizer, 2);
    }

    #[test]
    fn three_torus_z2() {
        let x = three_torus();
        let g = preset_group("Z/2").unwrap();
        let cols = enumerate_flat_colorings(x.skeleton(), &g, &[], DEFAULT_NODE_CAP).unwrap();
        let classes = gauge_orbits(x.skeleton(), &g, &cols, &[]).unwrap();
        assert_eq!(classes.len(), 8);
        assert!(classes.iter().all(|c| c.stabilizer == 2));
        let inv = holonomy_class_invariants(&x, &g, &classes[3]).unwrap();
        assert_eq!(inv.len(), 3);
    }

    #[test]
    fn contradictory_fixing_gives_nothing() {
        let x = preset_manifold("Ball").unwrap();
        let g = preset_group("Z/2").unwrap();
        let [a, b, c] = x.skeleton().triangles[0];
        let fixed = [(a, 1), (b, 0), (c, 0)];
        assert!(enumerate_flat_colorings(x.skeleton(), &g, &fixed, 1000)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn node_cap() {
        let x = preset_manifold("S3_bd4simplex").unwrap();
        let g = preset_group("S3").unwrap();
        assert_eq!(
            enumerate_flat_colorings(x.skeleton(), &g, &[], 10),
            Err(GaugeError::SizeLimit(10))
        );
    }

    #[test]
    fn gauge_orbits_need_closed_input() {
        let x = preset_manifold("Ball").unwrap();
        let g = preset_group("Z/3").unwrap();
        let cols = enumerate_flat_colorings(x.skeleton(), &g, &[], DEFAULT_NODE_CAP).unwrap();
        assert_eq!(
            gauge_orbits(x.skeleton(), &g, &cols[..2], &[]),
            Err(GaugeError::NotClosed)
        );
        assert!(gauge_orbits(x.skeleton(), &g, &[], &[]).unwrap().is_empty());
    }
}
