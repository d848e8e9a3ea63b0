//! Normalized inhomogeneous group cochains with values in Q/Z.
//!
//! A k-cochain is a function `G^k → Q/Z` that vanishes whenever one of its
//! arguments is the identity. The coboundary is the bar-complex formula
//!
//! ```text
//! (δc)(g1,…,g_{k+1}) = c(g2,…,g_{k+1})
//!                      + Σ_{i=1..k} (-1)^i c(…, g_i g_{i+1}, …)
//!                      + (-1)^{k+1} c(g1,…,gk)
//! ```

use rand::Rng;

use crate::error::CochainError;
use crate::groups::{centralizer, group_from_table, FiniteGroup};
use crate::phase::PhaseQ;

pub const MAX_ARITY: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    order: usize,
    values: Vec<PhaseQ>,
}

impl Cochain {
    pub fn zero(order: usize, arity: usize) -> Self {
        assert!(arity <= MAX_ARITY);
        Cochain {
            arity,
            order,
            values: vec![PhaseQ::ZERO; order.pow(arity as u32)],
        }
    }

    /// Tabulates `f`; fails if `f` is not normalized.
    pub fn from_fn(order: usize, arity: usize, mut f: impl FnMut(&[usize]) -> PhaseQ) -> Result<Self, CochainError> {
        let mut c = Cochain::zero(order, arity);
        let mut args = vec![0; arity];
        for idx in 0..c.values.len() {
            c.decode(idx, &mut args);
            let v = f(&args);
            if !v.is_zero() && args.contains(&0) {
                return Err(CochainError::NotNormalized(args));
            }
            c.values[idx] = v;
        }
        Ok(c)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    #[inline]
    fn encode(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.order + a)
    }

    fn decode(&self, mut idx: usize, args: &mut [usize]) {
        for slot in args.iter_mut().rev() {
            *slot = idx % self.order;
            idx /= self.order;
        }
    }

    #[inline]
    pub fn get(&self, args: &[usize]) -> PhaseQ {
        debug_assert_eq!(args.len(), self.arity);
        self.values[self.encode(args)]
    }

    pub fn get3(&self, a: usize, b: usize, c: usize) -> PhaseQ {
        self.values[(a * self.order + b) * self.order + c]
    }

    /// Sets a value; setting a nonzero value on an identity argument fails.
    pub fn set(&mut self, args: &[usize], v: PhaseQ) -> Result<(), CochainError> {
        if !v.is_zero() && args.contains(&0) {
            return Err(CochainError::NotNormalized(args.to_vec()));
        }
        let i = self.encode(args);
        self.values[i] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(PhaseQ::is_zero)
    }

    /// Nonzero entries in lexicographic argument order.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, PhaseQ)> {
        let mut args = vec![0; self.arity];
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| {
                self.decode(i, &mut args);
                (args.clone(), *v)
            })
            .collect()
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(PhaseQ, PhaseQ) -> PhaseQ) -> Result<Cochain, CochainError> {
        self.check_compatible(other)?;
        Ok(Cochain {
            arity: self.arity,
            order: self.order,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    fn check_compatible(&self, other: &Cochain) -> Result<(), CochainError> {
        if self.arity != other.arity {
            return Err(CochainError::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.order != other.order {
            return Err(CochainError::GroupMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            values: self.values.iter().map(|&v| -v).collect(),
            ..self.clone()
        }
    }

    /// Pulls back along a homomorphism `φ: H → G` given as `map[h] = φ(h)`.
    pub fn pullback(&self, map: &[usize]) -> Cochain {
        let h_order = map.len();
        Cochain::from_fn(h_order, self.arity, |args| {
            let img: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            self.get(&img)
        })
        .expect("pullback of a normalized cochain along a homomorphism is normalized")
    }

    /// Random normalized cochain whose values have denominators drawn from `dens`.
    pub fn random<R: Rng>(order: usize, arity: usize, dens: &[u64], rng: &mut R) -> Cochain {
        Cochain::from_fn(order, arity, |args| {
            if args.contains(&0) {
                return PhaseQ::ZERO;
            }
            let d = dens[rng.gen_range(0..dens.len())];
            PhaseQ::new(rng.gen_range(0..d) as i128, d)
        })
        .unwrap()
    }

    /// Least common multiple of the value denominators.
    pub fn denominator_lcm(&self) -> u64 {
        use num_integer::Integer;
        self.values.iter().fold(1, |acc, v| acc.lcm(&v.den()))
    }
}

fn check_group(c: &Cochain, g: &FiniteGroup) -> Result<(), CochainError> {
    if c.order != g.order() {
        return Err(CochainError::GroupMismatch {
            expected: g.order(),
            found: c.order,
        });
    }
    Ok(())
}

/// Evaluates `(δc)(args)` for `args` of length `arity + 1`.
fn coboundary_at(c: &Cochain, g: &FiniteGroup, args: &[usize]) -> PhaseQ {
    let k = c.arity;
    let mut buf = vec![0; k];
    let mut total = PhaseQ::ZERO;
    // i = 0: drop the first argument
    buf.copy_from_slice(&args[1..]);
    total += c.get(&buf);
    for i in 1..=k {
        buf[..i - 1].copy_from_slice(&args[..i - 1]);
        buf[i - 1] = g.mul(args[i - 1], args[i]);
        buf[i..].copy_from_slice(&args[i + 1..]);
        let v = c.get(&buf);
        total += if i % 2 == 1 { -v } else { v };
    }
    buf.copy_from_slice(&args[..k]);
    let v = c.get(&buf);
    total += if (k + 1) % 2 == 1 { -v } else { v };
    total
}

pub fn coboundary(c: &Cochain, g: &FiniteGroup) -> Result<Cochain, CochainError> {
    if c.arity > 3 {
        return Err(CochainError::ArityTooHigh(c.arity));
    }
    check_group(c, g)?;
    Cochain::from_fn(g.order(), c.arity + 1, |args| coboundary_at(c, g, args))
}

/// First tuple (in lexicographic order) where `δc` is nonzero, if any.
pub fn cocycle_witness(c: &Cochain, g: &FiniteGroup) -> Option<Vec<usize>> {
    if c.arity >= MAX_ARITY || c.order != g.order() {
        return Some(vec![]);
    }
    let n = g.order();
    let k = c.arity + 1;
    let mut args = vec![0; k];
    for idx in 0..n.pow(k as u32) {
        let mut r = idx;
        for slot in args.iter_mut().rev() {
            *slot = r % n;
            r /= n;
        }
        if !coboundary_at(c, g, &args).is_zero() {
            return Some(args);
        }
    }
    None
}

pub fn is_cocycle(c: &Cochain, g: &FiniteGroup) -> bool {
    cocycle_witness(c, g).is_none()
}

fn require_cocycle3(c: &Cochain, g: &FiniteGroup) -> Result<(), CochainError> {
    if c.arity != 3 {
        return Err(CochainError::ArityMismatch {
            expected: 3,
            found: c.arity,
        });
    }
    check_group(c, g)?;
    match cocycle_witness(c, g) {
        Some(w) => Err(CochainError::NotCocycle(w)),
        None => Ok(()),
    }
}

/// `ω_p(a,b,c) = p·a·(b + c − [(b+c) mod n]) / n²` on `Z/n`.
pub fn cyclic_cocycle(n: usize, p: i64) -> Cochain {
    assert!(n >= 2, "cyclic cocycles need n >= 2");
    let n2 = (n * n) as u64;
    Cochain::from_fn(n, 3, |args| {
        let (a, b, c) = (args[0] as i128, args[1] as i128, args[2] as i128);
        let carry = b + c - (b + c) % n as i128;
        PhaseQ::new(p as i128 * a * carry, n2)
    })
    .expect("cyclic cocycle is normalized")
}

/// Outcome of the bounded cohomology search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyResult {
    /// `ω1 − ω2 = δβ`.
    Witness(Cochain),
    NotFoundWithinCap,
}

/// Looks for a normalized 2-cochain `β` with values in `(1/bound)Z/Z` and
/// `ω1 − ω2 = δβ`.
///
/// With the denominator bounded the question is a linear system over
/// `Z/bound`, which is solved exactly (elimination over each prime-power
/// factor, then CRT). A `NotFoundWithinCap` answer is therefore a proof that
/// no witness with that denominator exists.
pub fn cohomologous(w1: &Cochain, w2: &Cochain, g: &FiniteGroup, bound: u64) -> Result<CohomologyResult, CochainError> {
    require_cocycle3(w1, g)?;
    require_cocycle3(w2, g)?;
    let diff = w1.sub(w2)?;
    if diff.is_zero() {
        return Ok(CohomologyResult::Witness(Cochain::zero(g.order(), 2)));
    }
    if bound == 0 || diff.values.iter().any(|v| !bound.is_multiple_of(v.den())) {
        return Ok(CohomologyResult::NotFoundWithinCap);
    }
    let n = g.order();
    // unknowns β(x,y) for x,y != e
    let var = |x: usize, y: usize| (x - 1) * (n - 1) + (y - 1);
    let nvars = (n - 1) * (n - 1);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let mut row = vec![0i64; nvars];
                let mut add = |x: usize, y: usize, s: i64| {
                    if x != 0 && y != 0 {
                        row[var(x, y)] += s;
                    }
                };
                add(b, c, 1);
                add(g.mul(a, b), c, -1);
                add(a, g.mul(b, c), 1);
                add(a, b, -1);
                let v = diff.get(&[a, b, c]);
                rhs.push((v.num() * (bound / v.den())) as i64);
                rows.push(row);
            }
        }
    }
    let Some(x) = solve_mod(&rows, &rhs, bound as i64) else {
        return Ok(CohomologyResult::NotFoundWithinCap);
    };
    let beta = Cochain::from_fn(n, 2, |args| {
        if args[0] == 0 || args[1] == 0 {
            PhaseQ::ZERO
        } else {
            PhaseQ::new(x[var(args[0], args[1])] as i128, bound)
        }
    })?;
    debug_assert_eq!(coboundary(&beta, g)?, diff);
    Ok(CohomologyResult::Witness(beta))
}

fn factorize(mut m: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m)
}

/// Solves `A x ≡ b (mod m)`.
fn solve_mod(a: &[Vec<i64>], b: &[i64], m: i64) -> Option<Vec<i64>> {
    let nvars = a.first().map_or(0, Vec::len);
    let mut x = vec![0i64; nvars];
    let mut modulus = 1i64;
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        let xq = solve_prime_power(a, b, p, e)?;
        // CRT merge: x ≡ x (mod modulus), x ≡ xq (mod q)
        let inv = inv_mod(modulus % q, q);
        for (xi, &yi) in x.iter_mut().zip(&xq) {
            let t = ((yi - *xi).rem_euclid(q) as i128 * inv as i128 % q as i128) as i64;
            *xi += modulus * t;
        }
        modulus *= q;
        for xi in x.iter_mut() {
            *xi = xi.rem_euclid(modulus);
        }
    }
    Some(x)
}

fn valuation(mut v: i64, p: i64, e: u32) -> u32 {
    if v == 0 {
        return e;
    }
    let mut k = 0;
    while v % p == 0 {
        v /= p;
        k += 1;
    }
    k
}

/// Smith-style elimination over the local ring `Z/p^e` with full pivoting on
/// the entry of least p-adic valuation.
fn solve_prime_power(a: &[Vec<i64>], b: &[i64], p: i64, e: u32) -> Option<Vec<i64>> {
    let q = p.pow(e);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|v| v.rem_euclid(q)).collect()).collect();
    let mut r: Vec<i64> = b.iter().map(|v| v.rem_euclid(q)).collect();
    // x = transform · y
    let mut transform: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut pivots: Vec<i64> = Vec::new();
    let mulq = |x: i64, y: i64| ((x as i128 * y as i128).rem_euclid(q as i128)) as i64;

    for s in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in s..rows {
            for j in s..cols {
                let v = m[i][j];
                if v != 0 {
                    let val = valuation(v, p, e);
                    if best.is_none_or(|(bv, _, _)| val < bv) {
                        best = Some((val, i, j));
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        m.swap(s, pi);
        r.swap(s, pi);
        for row in m.iter_mut() {
            row.swap(s, pj);
        }
        for row in transform.iter_mut() {
            row.swap(s, pj);
        }
        col_perm.swap(s, pj);
        let pv = p.pow(val);
        let unit_inv = inv_mod(m[s][s] / pv, q);
        for i in s + 1..rows {
            if m[i][s] != 0 {
                let f = mulq(m[i][s] / pv, unit_inv);
                for j in s..cols {
                    m[i][j] = (m[i][j] - mulq(f, m[s][j])).rem_euclid(q);
                }
                r[i] = (r[i] - mulq(f, r[s])).rem_euclid(q);
            }
        }
        for j in s + 1..cols {
            if m[s][j] != 0 {
                let f = mulq(m[s][j] / pv, unit_inv);
                for row in m.iter_mut() {
                    let t = mulq(f, row[s]);
                    row[j] = (row[j] - t).rem_euclid(q);
                }
                for row in transform.iter_mut() {
                    let t = mulq(f, row[s]);
                    row[j] = (row[j] - t).rem_euclid(q);
                }
            }
        }
        pivots.push(m[s][s]);
    }
    let rank = pivots.len();
    if r[rank..].iter().any(|&v| v != 0) {
        return None;
    }
    let mut y = vec![0i64; cols];
    for s in 0..rank {
        let d = pivots[s];
        let val = valuation(d, p, e);
        let pv = p.pow(val);
        if r[s] % pv != 0 {
            return None;
        }
        y[s] = mulq(r[s] / pv, inv_mod(d / pv, q));
    }
    let x = (0..cols)
        .map(|i| (0..cols).fold(0i64, |acc, j| (acc + mulq(transform[i][j], y[j])).rem_euclid(q)))
        .collect();
    Some(x)
}

/// A subgroup re-indexed as a group in its own right.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// `embedding[i]` is the ambient element for local index `i`; index 0 is the identity.
    pub embedding: Vec<usize>,
}

impl Subgroup {
    pub fn from_elements(g: &FiniteGroup, elements: &[usize]) -> Subgroup {
        let mut embedding: Vec<usize> = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        debug_assert_eq!(embedding[0], 0);
        let local = |x: usize| embedding.binary_search(&x).expect("subset closed under product");
        let table: Vec<Vec<usize>> = embedding
            .iter()
            .map(|&a| embedding.iter().map(|&b| local(g.mul(a, b))).collect())
            .collect();
        Subgroup {
            group: group_from_table(&table).expect("subgroup table is a group"),
            embedding,
        }
    }

    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }
}

/// `β_a(h,k) = ω(a,h,k) + ω(h,k,a) − ω(h,a,k)` on the centralizer of `a`.
pub fn transgress_torus(omega: &Cochain, g: &FiniteGroup, a: usize) -> Result<(Subgroup, Cochain), CochainError> {
    require_cocycle3(omega, g)?;
    Ok(transgress_unchecked(omega, g, a))
}

pub(crate) fn transgress_unchecked(omega: &Cochain, g: &FiniteGroup, a: usize) -> (Subgroup, Cochain) {
    let z = Subgroup::from_elements(g, &centralizer(g, &[a]));
    let beta = Cochain::from_fn(z.group.order(), 2, |args| {
        let (h, k) = (z.embedding[args[0]], z.embedding[args[1]]);
        omega.get3(a, h, k) + omega.get3(h, k, a) - omega.get3(h, a, k)
    })
    .expect("transgression of a normalized cocycle is normalized");
    (z, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::preset_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const DENS: &[u64] = &[2, 3, 4, 6, 12];

    #[test]
    fn zero_and_double_coboundary() {
        let z4 = preset_group("Z/4").unwrap();
        let z = Cochain::zero(4, 2);
        assert!(coboundary(&z, &z4).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..=2 {
            for _ in 0..10 {
                let c = Cochain::random(4, k, DENS, &mut rng);
                let dc = coboundary(&c, &z4).unwrap();
                assert!(coboundary(&dc, &z4).unwrap().is_zero());
            }
        }
        assert_eq!(
            coboundary(&Cochain::zero(4, 4), &z4),
            Err(CochainError::ArityTooHigh(4))
        );
    }

    #[test]
    fn double_coboundary_on_nonabelian_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for name in ["S3", "D4", "Q8"] {
            let g = preset_group(name).unwrap();
            for k in 0..=2 {
                let c = Cochain::random(g.order(), k, DENS, &mut rng);
                let dc = coboundary(&c, &g).unwrap();
                assert!(is_cocycle(&dc, &g), "{name} arity {k}");
            }
        }
    }

    #[test]
    fn cyclic_cocycle_values() {
        assert!(cyclic_cocycle(5, 0).is_zero());
        let w = cyclic_cocycle(2, 1);
        assert_eq!(w.get3(1, 1, 1), PhaseQ::new(1, 2));
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    if a * b * c == 0 {
                        assert!(w.get3(a, b, c).is_zero());
                    }
                }
            }
        }
        for n in 2..6 {
            for p in 0..(n * n) as i64 {
                assert_eq!(cyclic_cocycle(n, p), cyclic_cocycle(n, p + (n * n) as i64));
            }
        }
    }

    #[test]
    fn cyclic_cocycles_are_cocycles_exhaustively() {
        for n in 2..=8 {
            let g = preset_group(&format!("Z/{n}")).unwrap();
            for p in 0..(n * n) as i64 {
                assert!(is_cocycle(&cyclic_cocycle(n, p), &g), "n={n} p={p}");
            }
        }
        // brute force the identity on Z/4 for p = 1 without going through coboundary_at
        let w = cyclic_cocycle(4, 1);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let s = w.get3(b, c, d) - w.get3((a + b) % 4, c, d) + w.get3(a, (b + c) % 4, d)
                            - w.get3(a, b, (c + d) % 4)
                            + w.get3(a, b, c);
                        assert!(s.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn non_cocycle_witness_on_z2() {
        // exhaustively find a normalized 3-cochain on Z/2 failing the identity
        let g = preset_group("Z/2").unwrap();
        let mut c = Cochain::zero(2, 3);
        c.set(&[1, 1, 1], PhaseQ::new(1, 3)).unwrap();
        let w = cocycle_witness(&c, &g).expect("1/3 at (1,1,1) is not a cocycle");
        assert_eq!(w, vec![1, 1, 1, 1]);
        assert!(is_cocycle(&Cochain::zero(2, 3), &g));
        // the value 1/2 is the nontrivial class and passes
        c.set(&[1, 1, 1], PhaseQ::new(1, 2)).unwrap();
        assert!(is_cocycle(&c, &g));
    }

    #[test]
    fn cohomology_search() {
        let z4 = preset_group("Z/4").unwrap();
        let w = cyclic_cocycle(4, 1);
        assert_eq!(
            cohomologous(&w, &w, &z4, 16).unwrap(),
            CohomologyResult::Witness(Cochain::zero(4, 2))
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let b0 = Cochain::random(4, 2, &[2, 4, 8, 16], &mut rng);
            let w2 = w.add(&coboundary(&b0, &z4).unwrap()).unwrap();
            match cohomologous(&w2, &w, &z4, 16).unwrap() {
                CohomologyResult::Witness(beta) => {
                    assert_eq!(coboundary(&beta, &z4).unwrap(), w2.sub(&w).unwrap())
                }
                CohomologyResult::NotFoundWithinCap => panic!("witness exists"),
            }
        }
        assert_eq!(
            cohomologous(&w, &cyclic_cocycle(4, 0), &z4, 16).unwrap(),
            CohomologyResult::NotFoundWithinCap
        );
        assert_eq!(
            cohomologous(&cyclic_cocycle(4, 2), &cyclic_cocycle(4, 1), &z4, 48).unwrap(),
            CohomologyResult::NotFoundWithinCap
        );
        let mut bad = Cochain::zero(4, 3);
        bad.set(&[1, 1, 1], PhaseQ::new(1, 5)).unwrap();
        assert!(matches!(
            cohomologous(&bad, &w, &z4, 16),
            Err(CochainError::NotCocycle(_))
        ));
    }

    #[test]
    fn cohomology_on_s3() {
        let s3 = preset_group("S3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b0 = Cochain::random(6, 2, &[2, 3, 6], &mut rng);
        let w = coboundary(&b0, &s3).unwrap();
        let zero = Cochain::zero(6, 3);
        assert!(matches!(
            cohomologous(&w, &zero, &s3, 6).unwrap(),
            CohomologyResult::Witness(_)
        ));
    }

    #[test]
    fn transgression() {
        let z4 = preset_group("Z/4").unwrap();
        let (z, beta) = transgress_torus(&Cochain::zero(4, 3), &z4, 1).unwrap();
        assert_eq!(z.group.order(), 4);
        assert!(beta.is_zero());
        let w = cyclic_cocycle(4, 3);
        let (_, beta0) = transgress_torus(&w, &z4, 0).unwrap();
        assert!(beta0.is_zero());
        for n in 2..=6 {
            let g = preset_group(&format!("Z/{n}")).unwrap();
            for p in 0..(n * n) as i64 {
                let w = cyclic_cocycle(n, p);
                for a in 0..n {
                    let (z, beta) = transgress_torus(&w, &g, a).unwrap();
                    assert!(is_cocycle(&beta, &z.group));
                }
            }
        }
    }

    #[test]
    fn transgression_of_pullbacks_and_coboundaries() {
        // sign homomorphisms onto Z/2 give nontrivial cocycles on non-abelian groups
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z2w = cyclic_cocycle(2, 1);
        for name in ["S3", "D4", "Q8", "Z/4", "Z/6", "Z/8"] {
            let g = preset_group(name).unwrap();
            let z2 = preset_group("Z/2").unwrap();
            let n = g.order();
            let sign: Vec<Vec<usize>> = (1..1usize << n)
                .map(|m| (0..n).map(|i| (m >> i) & 1).collect::<Vec<_>>())
                .filter(|map| crate::groups::is_homomorphism(&g, &z2, map))
                .collect();
            let mut omegas = vec![coboundary(&Cochain::random(g.order(), 2, DENS, &mut rng), &g).unwrap()];
            for s in sign {
                omegas.push(z2w.pullback(&s));
            }
            for w in &omegas {
                assert!(is_cocycle(w, &g));
                for a in g.elements() {
                    let (z, beta) = transgress_torus(w, &g, a).unwrap();
                    assert!(is_cocycle(&beta, &z.group), "{name} a={a}");
                }
            }
        }
    }
}
