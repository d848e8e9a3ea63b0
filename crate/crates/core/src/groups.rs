//! Finite groups given by multiplication tables, presentations, and
//! homomorphism enumeration.
//!
//! Elements are indices `0..n` with `0` the identity. Preset groups use a
//! fixed element ordering so that everything downstream is byte-stable:
//!
//! * `Z/n`: residues `0, 1, …, n-1`;
//! * `S3`, `S4`: permutations in lexicographic one-line order, composed as
//!   functions (`(στ)(x) = σ(τ(x))`);
//! * `D4`: rotations `r^0..r^3`, then reflections `r^k s` for `k = 0..3`;
//! * `Q8`: `1, -1, i, -i, j, -j, k, -k`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Default cap on candidate generator tuples for [`enumerate_homs`].
pub const DEFAULT_HOM_CAP: u64 = 100_000_000;

pub const MAX_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: Option<String>,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G{}", self.order))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commutes(a, b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Relabels elements by `perm` (new index of old element `i` is `perm[i]`).
    /// `perm` must fix 0.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteGroup, GroupError> {
        let n = self.order;
        let mut rows = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                rows[perm[a]][perm[b]] = perm[self.mul(a, b)];
            }
        }
        let g = group_from_table(&rows)?;
        Ok(FiniteGroup {
            name: self.name.clone(),
            ..g
        })
    }
}

/// Validates a multiplication table and builds the group.
///
/// Checks run in this order, reporting the first failure: shape, rows are
/// permutations, identity, inverses, associativity, columns are
/// permutations.
pub fn group_from_table(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(GroupError::Malformed);
    }
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    for (a, row) in table.iter().enumerate() {
        if !is_permutation(row.iter().copied(), n) {
            return Err(GroupError::NotLatinSquare(format!("row {a}")));
        }
    }
    for a in 0..n {
        if table[0][a] != a || table[a][0] != a {
            return Err(GroupError::NoIdentity(a));
        }
    }
    let mut inverses = vec![0; n];
    for a in 0..n {
        match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
            Some(b) => inverses[a] = b,
            None => return Err(GroupError::NoInverse(a)),
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::NonAssociative(a, b, c));
                }
            }
        }
    }
    for b in 0..n {
        if !is_permutation((0..n).map(|a| table[a][b]), n) {
            return Err(GroupError::NotLatinSquare(format!("column {b}")));
        }
    }
    Ok(FiniteGroup {
        name: None,
        order: n,
        table: table.iter().flatten().copied().collect(),
        inverses,
    })
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in it {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    true
}

pub const PRESET_GROUP_NAMES: &[&str] = &["S3", "S4", "D4", "Q8"];

/// All preset names, cyclic ones included.
pub fn preset_group_names() -> Vec<String> {
    let mut v: Vec<String> = (2..=16).map(|n| format!("Z/{n}")).collect();
    v.extend(PRESET_GROUP_NAMES.iter().map(|s| s.to_string()));
    v
}

pub fn preset_group(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownName(name.to_string());
    let table = if let Some(n) = name.strip_prefix("Z/") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if !(2..=16).contains(&n) {
            return Err(unknown());
        }
        cyclic_table(n)
    } else {
        match name {
            "S3" => symmetric_table(3),
            "S4" => symmetric_table(4),
            "D4" => dihedral_table(4),
            "Q8" => quaternion_table(),
            _ => return Err(unknown()),
        }
    };
    Ok(group_from_table(&table)?.with_name(name))
}

pub fn cyclic_group(n: usize) -> FiniteGroup {
    group_from_table(&cyclic_table(n))
        .expect("cyclic table is a group")
        .with_name(format!("Z/{n}"))
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn symmetric_table(n: usize) -> Vec<Vec<usize>> {
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                    index[&st]
                })
                .collect()
        })
        .collect()
}

fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    // index k -> r^k, index n + k -> r^k s;  r^a s^f · r^b s^g = r^{a + (-1)^f b} s^{f+g}
    let decode = |i: usize| (i % n, i / n);
    let encode = |k: usize, f: usize| k + n * f;
    (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (a, f) = decode(x);
                    let (b, g) = decode(y);
                    let k = if f == 0 { a + b } else { a + n - b } % n;
                    encode(k, (f + g) % 2)
                })
                .collect()
        })
        .collect()
}

fn quaternion_table() -> Vec<Vec<usize>> {
    // unit u in {1,i,j,k} = 0..4 with sign; index = 2*u + (sign < 0)
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (ux, sx) = (x / 2, x % 2 == 1);
                    let (uy, sy) = (y / 2, y % 2 == 1);
                    let (u, s) = UNIT[ux][uy];
                    2 * u + usize::from(s ^ sx ^ sy)
                })
                .collect()
        })
        .collect()
}

/// Partition of the elements into conjugacy classes, ordered by smallest member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes = Vec::new();
    for a in g.elements() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|h| g.conj(h, a)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    classes
}

/// Index of the conjugacy class containing `a`.
pub fn class_index(classes: &[Vec<usize>], a: usize) -> usize {
    classes
        .iter()
        .position(|c| c.binary_search(&a).is_ok())
        .expect("classes partition the group")
}

/// All elements commuting with every element of `subset`.
pub fn centralizer(g: &FiniteGroup, subset: &[usize]) -> Vec<usize> {
    g.elements()
        .filter(|&h| subset.iter().all(|&a| g.commutes(h, a)))
        .collect()
}

/// A small generating set, chosen greedily in element order.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[0] = true;
    for a in g.elements() {
        if span[a] {
            continue;
        }
        gens.push(a);
        let mut members: Vec<usize> = vec![0];
        span.iter_mut().for_each(|s| *s = false);
        span[0] = true;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if !span[y] {
                    span[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

/// A finitely presented group. Relator letters are 1-based signed generator
/// indices: `k + 1` stands for generator `k` and `-(k + 1)` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Vec<i32>>) -> Result<Self, GroupError> {
        for w in &relators {
            for &l in w {
                let index = l.unsigned_abs() as usize;
                if l == 0 || index > num_generators {
                    return Err(GroupError::BadGenerator {
                        index: index.saturating_sub(1),
                        count: num_generators,
                    });
                }
            }
        }
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    pub fn trivial() -> Self {
        Presentation::new(0, vec![]).unwrap()
    }

    pub fn free(n: usize) -> Self {
        Presentation::new(n, vec![]).unwrap()
    }

    /// `⟨x | x^k⟩`.
    pub fn cyclic(k: usize) -> Self {
        Presentation::new(1, vec![vec![1; k]]).unwrap()
    }

    /// Free abelian group of rank `n`.
    pub fn free_abelian(n: usize) -> Self {
        let mut rels = Vec::new();
        for i in 0..n as i32 {
            for j in i + 1..n as i32 {
                rels.push(commutator(i + 1, j + 1));
            }
        }
        Presentation::new(n, rels).unwrap()
    }

    /// Fundamental group of the closed oriented surface of genus `g`:
    /// generators `a1, b1, …, ag, bg` and the relator `Π [ai, bi]`.
    pub fn surface(g: usize) -> Self {
        let rel: Vec<i32> = (0..g as i32).flat_map(|i| commutator(2 * i + 1, 2 * i + 2)).collect();
        let rels = if g == 0 { vec![] } else { vec![rel] };
        Presentation::new(2 * g, rels).unwrap()
    }

    /// Fundamental group of `Σ_g × S¹`: the surface group plus a central generator.
    pub fn surface_times_circle(g: usize) -> Self {
        let mut p = Presentation::surface(g);
        let t = (2 * g + 1) as i32;
        for k in 1..t {
            p.relators.push(commutator(k, t));
        }
        p.num_generators += 1;
        p
    }

    fn eval(&self, g: &FiniteGroup, images: &[usize], word: &[i32]) -> usize {
        word.iter().fold(0, |acc, &l| {
            let x = images[l.unsigned_abs() as usize - 1];
            g.mul(acc, if l < 0 { g.inv(x) } else { x })
        })
    }

    pub fn is_hom(&self, g: &FiniteGroup, images: &[usize]) -> bool {
        images.len() == self.num_generators && self.relators.iter().all(|w| self.eval(g, images, w) == 0)
    }
}

fn commutator(a: i32, b: i32) -> Vec<i32> {
    vec![a, b, -a, -b]
}

/// All homomorphisms from the presented group to `g`, as generator-image
/// tuples in lexicographic order.
pub fn enumerate_homs(p: &Presentation, g: &FiniteGroup, cap: u64) -> Result<Vec<Vec<usize>>, GroupError> {
    let candidates = (g.order() as u128).checked_pow(p.num_generators as u32);
    match candidates {
        Some(c) if c <= cap as u128 => {}
        _ => {
            return Err(GroupError::SizeLimit {
                candidates: candidates.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    // a relator is checked as soon as its largest generator is assigned
    let mut check_at: Vec<Vec<&Vec<i32>>> = vec![Vec::new(); p.num_generators + 1];
    for w in &p.relators {
        let depth = w.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        check_at[depth].push(w);
    }
    let mut out = Vec::new();
    let mut images = vec![0; p.num_generators];
    fn rec(
        depth: usize,
        p: &Presentation,
        g: &FiniteGroup,
        check_at: &[Vec<&Vec<i32>>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == p.num_generators {
            out.push(images.clone());
            return;
        }
        for x in g.elements() {
            images[depth] = x;
            if check_at[depth + 1].iter().all(|w| p.eval(g, images, w) == 0) {
                rec(depth + 1, p, g, check_at, images, out);
            }
        }
    }
    rec(0, p, g, &check_at, &mut images, &mut out);
    Ok(out)
}

/// Homomorphisms grouped into simultaneous-conjugation orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClassTable {
    pub homs: Vec<Vec<usize>>,
    /// Indices into `homs`; each orbit sorted, orbits ordered by first member.
    pub orbits: Vec<Vec<usize>>,
    pub stabilizer_sizes: Vec<usize>,
}

impl HomClassTable {
    /// `Σ_orbits 1/|stabilizer|`, which equals `#homs / |G|`.
    pub fn groupoid_cardinality(&self) -> num_rational::BigRational {
        use num_bigint::BigInt;
        self.stabilizer_sizes
            .iter()
            .map(|&s| num_rational::BigRational::new(BigInt::from(1), BigInt::from(s)))
            .sum()
    }
}

pub fn hom_orbits(g: &FiniteGroup, homs: &[Vec<usize>]) -> Result<HomClassTable, GroupError> {
    let index: HashMap<&[usize], usize> = homs.iter().enumerate().map(|(i, h)| (h.as_slice(), i)).collect();
    let mut seen = vec![false; homs.len()];
    let mut orbits = Vec::new();
    let mut stabilizer_sizes = Vec::new();
    for (i, h) in homs.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stab = 0;
        for x in g.elements() {
            let image: Vec<usize> = h.iter().map(|&a| g.conj(x, a)).collect();
            let j = *index.get(image.as_slice()).ok_or(GroupError::NotClosed)?;
            if j == i {
                stab += 1;
            }
            if !seen[j] {
                seen[j] = true;
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        debug_assert_eq!(orbit.len() * stab, g.order());
        orbits.push(orbit);
        stabilizer_sizes.push(stab);
    }
    Ok(HomClassTable {
        homs: homs.to_vec(),
        orbits,
        stabilizer_sizes,
    })
}

/// Checks that `map` (indexed by elements of `from`) is a homomorphism into `to`.
pub fn is_homomorphism(from: &FiniteGroup, to: &FiniteGroup, map: &[usize]) -> bool {
    map.len() == from.order()
        && map.iter().all(|&x| x < to.order())
        && from
            .elements()
            .all(|a| from.elements().all(|b| map[from.mul(a, b)] == to.mul(map[a], map[b])))
}
