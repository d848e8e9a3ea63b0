//! Exact phases in Q/Z and exact rational combinations of roots of unity.
//!
//! [`PhaseQ`] is an element of Q/Z, i.e. the exponent of a root of unity
//! `exp(2πi·p)`. [`PhaseSum`] is a finite formal sum `Σ c_k exp(2πi p_k)` with
//! rational coefficients. Formal sums are not unique (for example
//! `1 + exp(2πi/2) = 0`), so equality is decided by reducing both sides in the
//! cyclotomic field `Q(ζ_N)` modulo the N-th cyclotomic polynomial, and
//! [`PhaseSum::canonical`] produces a unique normal form in the smallest
//! cyclotomic field that contains the value.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ParseError;

/// A rational number modulo 1, stored reduced with `0 <= num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PhaseQ {
    num: u64,
    den: u64,
}

impl PhaseQ {
    pub const ZERO: PhaseQ = PhaseQ { num: 0, den: 1 };

    /// Builds `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let d = den as i128;
        let r = num.rem_euclid(d);
        let g = r.gcd(&d).max(1);
        PhaseQ {
            num: (r / g) as u64,
            den: (d / g) as u64,
        }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        let den = r.denom().to_u64().expect("phase denominator exceeds u64");
        let num = r.numer().mod_floor(&BigInt::from(den));
        PhaseQ::new(num.to_i128().unwrap(), den)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Representative in `[0, 1)` as an exact rational.
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Integer multiple `k·p` in Q/Z.
    pub fn times(&self, k: i64) -> PhaseQ {
        PhaseQ::new(self.num as i128 * k as i128, self.den)
    }
}

impl Default for PhaseQ {
    fn default() -> Self {
        PhaseQ::ZERO
    }
}

impl Ord for PhaseQ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128)
            .cmp(&(other.num as u128 * self.den as u128))
            .then(self.den.cmp(&other.den))
    }
}

impl PartialOrd for PhaseQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for PhaseQ {
    type Output = PhaseQ;
    fn add(self, rhs: PhaseQ) -> PhaseQ {
        let l = self.den.lcm(&rhs.den);
        let num = self.num as i128 * (l / self.den) as i128 + rhs.num as i128 * (l / rhs.den) as i128;
        PhaseQ::new(num, l)
    }
}

impl AddAssign for PhaseQ {
    fn add_assign(&mut self, rhs: PhaseQ) {
        *self = *self + rhs;
    }
}

impl Neg for PhaseQ {
    type Output = PhaseQ;
    fn neg(self) -> PhaseQ {
        PhaseQ::new(-(self.num as i128), self.den)
    }
}

impl Sub for PhaseQ {
    type Output = PhaseQ;
    fn sub(self, rhs: PhaseQ) -> PhaseQ {
        self + (-rhs)
    }
}

impl std::iter::Sum for PhaseQ {
    fn sum<I: Iterator<Item = PhaseQ>>(iter: I) -> PhaseQ {
        iter.fold(PhaseQ::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for PhaseQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for PhaseQ {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = parse_rational(s)?;
        Ok(PhaseQ::from_ratio(&r))
    }
}

/// Parses `"a/b"` or `"a"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as `"a/b"` (always with a denominator).
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact element of a cyclotomic field written as `Σ c · exp(2πi·p)`.
#[derive(Clone, Debug, Default)]
pub struct PhaseSum {
    terms: BTreeMap<PhaseQ, BigRational>,
}

impl PhaseSum {
    pub fn zero() -> Self {
        PhaseSum::default()
    }

    pub fn one() -> Self {
        PhaseSum::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut s = PhaseSum::zero();
        s.add_term(PhaseQ::ZERO, c);
        s
    }

    pub fn from_int(n: i64) -> Self {
        PhaseSum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `exp(2πi·p)`.
    pub fn phase(p: PhaseQ) -> Self {
        let mut s = PhaseSum::zero();
        s.add_term(p, BigRational::one());
        s
    }

    /// Builds `Σ count · exp(2πi·p) / denom` from a histogram of phases.
    pub fn from_counts<'a, I>(counts: I, denom: &BigInt) -> Self
    where
        I: IntoIterator<Item = (&'a PhaseQ, &'a u64)>,
    {
        let mut s = PhaseSum::zero();
        for (p, &c) in counts {
            s.add_term(*p, BigRational::new(BigInt::from(c), denom.clone()));
        }
        s
    }

    pub fn add_term(&mut self, p: PhaseQ, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    /// Formal terms (not canonical; see [`PhaseSum::canonical`]).
    pub fn terms(&self) -> impl Iterator<Item = (&PhaseQ, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &BigRational) -> PhaseSum {
        if c.is_zero() {
            return PhaseSum::zero();
        }
        PhaseSum {
            terms: self.terms.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }

    /// Complex conjugate: every phase is negated.
    pub fn conj(&self) -> PhaseSum {
        let mut s = PhaseSum::zero();
        for (p, c) in &self.terms {
            s.add_term(-*p, c.clone());
        }
        s
    }

    fn conductor(&self) -> u64 {
        self.terms.keys().fold(1u64, |acc, p| acc.lcm(&p.den))
    }

    /// Exact test for the value being zero.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let n = self.conductor();
        reduce_mod_cyclotomic(self.dense(n), n).iter().all(Zero::is_zero)
    }

    fn dense(&self, n: u64) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); n as usize];
        for (p, c) in &self.terms {
            let k = (p.num * (n / p.den)) as usize;
            v[k] += c;
        }
        v
    }

    /// Unique normal form: the value written in the power basis
    /// `1, ζ_m, …, ζ_m^{φ(m)-1}` of the smallest cyclotomic field `Q(ζ_m)`
    /// containing it. Two sums are equal iff their canonical forms have the
    /// same terms.
    pub fn canonical(&self) -> PhaseSum {
        if self.terms.is_empty() {
            return PhaseSum::zero();
        }
        let n = self.conductor();
        let v = reduce_mod_cyclotomic(self.dense(n), n);
        if v.iter().all(Zero::is_zero) {
            return PhaseSum::zero();
        }
        for m in divisors(n) {
            let phi_m = euler_phi(m) as usize;
            let basis: Vec<Vec<BigRational>> = (0..phi_m)
                .map(|j| {
                    let mut e = vec![BigRational::zero(); n as usize];
                    e[j * (n / m) as usize] = BigRational::one();
                    reduce_mod_cyclotomic(e, n)
                })
                .collect();
            if let Some(coeffs) = solve_in_span(&basis, &v) {
                let mut out = PhaseSum::zero();
                for (j, c) in coeffs.into_iter().enumerate() {
                    out.add_term(PhaseQ::new(j as i128, m), c);
                }
                return out;
            }
        }
        unreachable!("the full basis always spans")
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        let c = self.canonical();
        match c.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (p, v) = c.terms.iter().next().unwrap();
                p.is_zero().then(|| v.clone())
            }
            _ => None,
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (p, c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * p.to_f64();
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }

    /// `[["coef", "phase"], ...]` pairs of the canonical form.
    pub fn exact_pairs(&self) -> Vec<(String, String)> {
        self.canonical()
            .terms
            .iter()
            .map(|(p, c)| (fmt_rational(c), p.to_string()))
            .collect()
    }
}

impl PartialEq for PhaseSum {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for PhaseSum {}

impl Add for PhaseSum {
    type Output = PhaseSum;
    fn add(mut self, rhs: PhaseSum) -> PhaseSum {
        self += rhs;
        self
    }
}

impl AddAssign for PhaseSum {
    fn add_assign(&mut self, rhs: PhaseSum) {
        for (p, c) in rhs.terms {
            self.add_term(p, c);
        }
    }
}

impl<'a> AddAssign<&'a PhaseSum> for PhaseSum {
    fn add_assign(&mut self, rhs: &'a PhaseSum) {
        for (p, c) in &rhs.terms {
            self.add_term(*p, c.clone());
        }
    }
}

impl Neg for PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        PhaseSum {
            terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for PhaseSum {
    type Output = PhaseSum;
    fn sub(self, rhs: PhaseSum) -> PhaseSum {
        self + (-rhs)
    }
}

impl<'a> Mul<&'a PhaseSum> for &'a PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: &'a PhaseSum) -> PhaseSum {
        let mut out = PhaseSum::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(*p + *q, a * b);
            }
        }
        out
    }
}

impl Mul for PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: PhaseSum) -> PhaseSum {
        &self * &rhs
    }
}

impl std::iter::Sum for PhaseSum {
    fn sum<I: Iterator<Item = PhaseSum>>(iter: I) -> PhaseSum {
        iter.fold(PhaseSum::zero(), |a, b| a + b)
    }
}

impl fmt::Display for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = c
            .terms
            .iter()
            .map(|(p, v)| {
                if p.is_zero() {
                    v.to_string()
                } else {
                    format!("{}*e({})", v, p)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

thread_local! {
    static CYCLOTOMIC_CACHE: RefCell<HashMap<u64, Vec<i64>>> = RefCell::new(HashMap::new());
}

/// Integer coefficients (low degree first) of the n-th cyclotomic polynomial.
pub(crate) fn cyclotomic_poly(n: u64) -> Vec<i64> {
    if let Some(p) = CYCLOTOMIC_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_poly(d);
        num = poly_div_exact(&num, &div);
    }
    CYCLOTOMIC_CACHE.with(|c| c.borrow_mut().insert(n, num.clone()));
    num
}

fn poly_div_exact(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dj) in div.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduces `Σ v[k] x^k` modulo Φ_n; result has length φ(n).
fn reduce_mod_cyclotomic(mut v: Vec<BigRational>, n: u64) -> Vec<BigRational> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = v[i].clone();
        // Φ monic: x^deg = -Σ_{j<deg} φ_j x^j
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                v[i - deg + j] -= &c * BigInt::from(pj);
            }
        }
        v[i] = BigRational::zero();
    }
    v.truncate(deg);
    v
}

/// Solves `Σ c_j basis[j] = target` over Q; `None` when target is outside the span.
fn solve_in_span(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let cols = basis.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=cols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][cols].clone();
    }
    Some(sol)
}

/// Rounds an exact rational to an integer, if it is one.
pub fn ratio_to_i64(r: &BigRational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}
