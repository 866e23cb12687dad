//! Normalized octics, permutation tests, the scaling action of `F_q^*`, and
//! the per-field classification searches.
//!
//! Tuples cross the public boundary in print order `(a6, a5, a4, a3, a2, a1)`;
//! [`NormalizedPoly`] stores them internally as `(a1, ..., a6)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Felt};
use crate::hermite::HermiteSpec;
use crate::mpoly::MPoly;

/// `f(x) = x^8 + a6 x^6 + a5 x^5 + a4 x^4 + a3 x^3 + a2 x^2 + a1 x` over `F_q`.
#[derive(Clone)]
pub struct NormalizedPoly {
    field: Arc<FieldCtx>,
    /// `a1, ..., a6`
    a: [Felt; 6],
}

impl PartialEq for NormalizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.field.order() == other.field.order()
    }
}

impl Eq for NormalizedPoly {}

impl PartialOrd for NormalizedPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(a6, a5, a4, a3, a2, a1)`.
impl Ord for NormalizedPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field.order().cmp(&other.field.order()).then_with(|| self.print_order().cmp(&other.print_order()))
    }
}

impl std::hash::Hash for NormalizedPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.a.hash(state);
    }
}

impl fmt::Debug for NormalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `(a6,a5,a4,a3,a2,a1)` with elements in the field's text form.
impl fmt::Display for NormalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.print_order().iter().map(|&c| self.field.format(c)).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl NormalizedPoly {
    /// From `(a1, ..., a6)`.
    pub fn new(field: Arc<FieldCtx>, a: [Felt; 6]) -> Result<Self> {
        if let Some(bad) = a.iter().find(|c| !field.contains(**c)) {
            return Err(Error::Precondition(format!("{bad:?} is not an element of {field}")));
        }
        Ok(NormalizedPoly { field, a })
    }

    /// From print order `(a6, a5, a4, a3, a2, a1)`.
    pub fn from_print_order(field: Arc<FieldCtx>, t: [Felt; 6]) -> Result<Self> {
        Self::new(field, [t[5], t[4], t[3], t[2], t[1], t[0]])
    }

    /// Parses `a6,a5,a4,a3,a2,a1` (parentheses optional), each entry in any
    /// accepted element form.
    pub fn parse(field: Arc<FieldCtx>, s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner.split(',').map(|e| field.parse(e)).collect::<Result<Vec<_>>>()?;
        let t: [Felt; 6] = parts
            .try_into()
            .map_err(|v: Vec<Felt>| Error::LengthMismatch { expected: 6, got: v.len() })?;
        Self::from_print_order(field, t)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// `(a1, ..., a6)`.
    pub fn coeffs(&self) -> &[Felt; 6] {
        &self.a
    }

    /// `a_i` for `1 <= i <= 6`.
    pub fn a(&self, i: usize) -> Felt {
        self.a[i - 1]
    }

    /// `(a6, a5, a4, a3, a2, a1)`.
    pub fn print_order(&self) -> [Felt; 6] {
        let a = &self.a;
        [a[5], a[4], a[3], a[2], a[1], a[0]]
    }

    pub fn eval(&self, x: Felt) -> Felt {
        eval_octic(&self.field, &self.a, x)
    }

    /// The degree-8 polynomial as an element of `F_q[x1..x6]`'s field, i.e.
    /// `(a1, ..., a6)` as an evaluation point.
    pub fn point(&self) -> Vec<Felt> {
        self.a.to_vec()
    }
}

#[inline]
fn eval_octic(field: &FieldCtx, a: &[Felt; 6], x: Felt) -> Felt {
    // ((((((x*x + a6) x + a5) x + a4) x + a3) x + a2) x + a1) x
    let mut acc = field.add(field.mul(x, x), a[5]);
    for i in (0..5).rev() {
        acc = field.add(field.mul(acc, x), a[i]);
    }
    field.mul(acc, x)
}

/// Number of leading elements whose images must be distinct for a degree-8
/// polynomial to permute `F_q`: `floor(q - (q-1)/8) + 1`.
pub fn wan_sample_size(q: u32) -> u32 {
    q - (q - 1).div_ceil(8) + 1
}

/// Brute force: the value set has exactly `q` elements.
pub fn is_pp_full(f: &NormalizedPoly) -> bool {
    let q = f.q() as usize;
    let mut seen = vec![false; q];
    for x in f.field.all_elements() {
        let v = f.eval(x).value() as usize;
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Wan's value-set bound: checks the first [`wan_sample_size`] elements of
/// the fixed element order for a repeated value.
pub fn is_pp_wan(f: &NormalizedPoly) -> bool {
    let q = f.q();
    let mut seen = vec![false; q as usize];
    for raw in 0..wan_sample_size(q) {
        let v = f.eval(Felt(raw)).value() as usize;
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// `a_i -> t^{8-i} a_i`, i.e. `t^8 f(x / t)`.
pub fn scale(f: &NormalizedPoly, t: Felt) -> Result<NormalizedPoly> {
    if t.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = &*f.field;
    let mut a = f.a;
    for (i, c) in a.iter_mut().enumerate() {
        *c = field.mul(*c, field.pow(t, 7 - i as u64));
    }
    Ok(NormalizedPoly { field: f.field.clone(), a })
}

/// Scaling with precomputed `t^2, ..., t^7` (indexed by `8 - i`).
#[inline]
fn scale_raw(field: &FieldCtx, a: &[Felt; 6], tp: &[Felt; 8]) -> [Felt; 6] {
    let mut r = *a;
    for (i, c) in r.iter_mut().enumerate() {
        *c = field.mul(*c, tp[7 - i]);
    }
    r
}

fn powers_of(field: &FieldCtx, t: Felt) -> [Felt; 8] {
    let mut tp = [Felt::ONE; 8];
    for i in 1..8 {
        tp[i] = field.mul(tp[i - 1], t);
    }
    tp
}

/// Minimum of the orbit under lexicographic order of `(a6, ..., a1)`.
pub fn canonicalize(f: &NormalizedPoly) -> NormalizedPoly {
    let field = &*f.field;
    let mut best = f.a;
    let mut best_key = print_key(&best);
    for t in field.nonzero_elements() {
        let cand = scale_raw(field, &f.a, &powers_of(field, t));
        let key = print_key(&cand);
        if key < best_key {
            best = cand;
            best_key = key;
        }
    }
    NormalizedPoly { field: f.field.clone(), a: best }
}

#[inline]
fn print_key(a: &[Felt; 6]) -> [Felt; 6] {
    [a[5], a[4], a[3], a[2], a[1], a[0]]
}

/// The full orbit `{scale(f, t) : t in F_q^*}`.
pub fn orbit(f: &NormalizedPoly) -> BTreeSet<NormalizedPoly> {
    let field = &*f.field;
    field
        .nonzero_elements()
        .into_iter()
        .map(|t| NormalizedPoly { field: f.field.clone(), a: scale_raw(field, &f.a, &powers_of(field, t)) })
        .collect()
}

/// One linear-equivalence class of normalized permutation octics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub rep: NormalizedPoly,
    pub orbit: BTreeSet<NormalizedPoly>,
}

impl OrbitClass {
    pub fn from_member(f: &NormalizedPoly) -> Self {
        OrbitClass { rep: canonicalize(f), orbit: orbit(f) }
    }

    /// `(q-1) / |stabilizer|`.
    pub fn size(&self) -> usize {
        self.orbit.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Replays the per-field pinning of the published searches.
    Paper,
    /// No pinning; filters the full coefficient space with Hermite equations.
    Generic,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(SearchMode::Paper),
            "generic" => Ok(SearchMode::Generic),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Fast permutation testing over one field.
pub struct PpTester {
    field: Arc<FieldCtx>,
    /// `x^i` for `i = 1..=8`, per element of the Wan sample.
    pows: Vec<[u32; 9]>,
    sample: usize,
    prime: bool,
}

impl PpTester {
    pub fn new(field: Arc<FieldCtx>) -> Self {
        let q = field.order();
        let sample = wan_sample_size(q) as usize;
        let pows = (0..q)
            .map(|raw| {
                let x = Felt(raw);
                let mut row = [0u32; 9];
                let mut cur = Felt::ONE;
                for slot in row.iter_mut() {
                    *slot = cur.value();
                    cur = field.mul(cur, x);
                }
                row
            })
            .collect();
        let prime = field.degree() == 1;
        PpTester { field, pows, sample, prime }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    #[inline]
    fn value(&self, a: &[Felt; 6], x: usize) -> u32 {
        let row = &self.pows[x];
        if self.prime {
            let p = self.field.characteristic() as u64;
            let mut s = row[8] as u64;
            for i in 0..6 {
                s += a[i].value() as u64 * row[i + 1] as u64;
            }
            (s % p) as u32
        } else {
            let f = &*self.field;
            let mut s = Felt(row[8]);
            for i in 0..6 {
                s = f.add(s, f.mul(a[i], Felt(row[i + 1])));
            }
            s.value()
        }
    }

    /// Wan test on raw coefficients `(a1, ..., a6)`. `seen` must hold `q`
    /// slots; `stamp` must differ from every value previously written.
    #[inline]
    pub fn is_pp_with(&self, a: &[Felt; 6], seen: &mut [u32], stamp: u32) -> bool {
        for x in 0..self.sample {
            let v = self.value(a, x) as usize;
            if seen[v] == stamp {
                return false;
            }
            seen[v] = stamp;
        }
        true
    }

    pub fn is_pp(&self, a: &[Felt; 6]) -> bool {
        let mut seen = vec![0u32; self.field.order() as usize];
        self.is_pp_with(a, &mut seen, 1)
    }
}

/// Scratch state for a search shard.
struct Scanner<'a> {
    tester: &'a PpTester,
    seen: Vec<u32>,
    stamp: u32,
    hits: Vec<[Felt; 6]>,
}

impl<'a> Scanner<'a> {
    fn new(tester: &'a PpTester) -> Self {
        Scanner { tester, seen: vec![0; tester.field.order() as usize], stamp: 0, hits: Vec::new() }
    }

    /// Takes print order `(a6, ..., a1)`.
    #[inline]
    fn test(&mut self, t: [Felt; 6]) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let a = [t[5], t[4], t[3], t[2], t[1], t[0]];
        if self.tester.is_pp_with(&a, &mut self.seen, self.stamp) {
            self.hits.push(a);
        }
    }
}

/// Representatives of `F_q^* / {t^k}`: the first element of each coset in the
/// fixed element order.
pub fn coset_representatives(field: &FieldCtx, k: u64) -> Vec<Felt> {
    let powers: BTreeSet<Felt> = field.nonzero_elements().into_iter().map(|t| field.pow(t, k)).collect();
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for a in field.nonzero_elements() {
        if covered.contains(&a) {
            continue;
        }
        reps.push(a);
        for &h in &powers {
            covered.insert(field.mul(a, h));
        }
    }
    reps
}

/// Outcome of a classification run.
#[derive(Clone, Debug)]
pub struct Classification {
    pub q: u32,
    pub mode: SearchMode,
    /// Permutation tuples printed by the search, `(a1, ..., a6)` order.
    pub hits: Vec<NormalizedPoly>,
    pub classes: Vec<OrbitClass>,
}

const PAPER_ORDERS: [u32; 7] = [11, 13, 19, 23, 27, 29, 31];

/// Classifies normalized permutation octics over `F_q` up to scaling.
pub fn classify(q: u32, mode: SearchMode, threads: usize) -> Result<Vec<OrbitClass>> {
    Ok(classify_detailed(q, mode, threads)?.classes)
}

pub fn classify_detailed(q: u32, mode: SearchMode, threads: usize) -> Result<Classification> {
    match mode {
        SearchMode::Paper if !PAPER_ORDERS.contains(&q) => return Err(Error::UnsupportedOrder(q as u64)),
        SearchMode::Generic if q <= 8 || q > 31 || !crate::field::is_odd_prime_power(q as u64) => {
            return Err(Error::UnsupportedOrder(q as u64))
        }
        _ => {}
    }
    let field = Arc::new(FieldCtx::with_order(q as u64)?);
    let tester = PpTester::new(field.clone());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let raw_hits = pool.install(|| match mode {
        SearchMode::Paper => paper_search(&tester),
        SearchMode::Generic => generic_search(&tester),
    })?;
    let hits: Vec<NormalizedPoly> =
        raw_hits.into_iter().map(|a| NormalizedPoly { field: field.clone(), a }).collect();
    let mut reps: BTreeMap<NormalizedPoly, ()> = BTreeMap::new();
    for h in &hits {
        reps.insert(canonicalize(h), ());
    }
    let classes = reps.into_keys().map(|rep| OrbitClass { orbit: orbit(&rep), rep }).collect();
    Ok(Classification { q, mode, hits, classes })
}

/// Runs `body` for every value of the outermost loop variable in parallel and
/// concatenates the shard outputs in shard order.
fn shard<F>(tester: &PpTester, outer: Vec<Felt>, body: F) -> Vec<[Felt; 6]>
where
    F: Fn(&mut Scanner<'_>, Felt) + Sync,
{
    let parts: Vec<Vec<[Felt; 6]>> = outer
        .into_par_iter()
        .map(|o| {
            let mut sc = Scanner::new(tester);
            body(&mut sc, o);
            sc.hits
        })
        .collect();
    parts.into_iter().flatten().collect()
}

fn paper_search(tester: &PpTester) -> Result<Vec<[Felt; 6]>> {
    let f = &**tester.field();
    let q = f.order();
    let all = f.all_elements();
    let el = |n: i64| f.from_int(n);
    let hits = match q {
        31 => {
            // a6 = 0, a1 = 1, a2^5 = a3^6 = a4^15 = 1
            let roots = |k: u64| all.iter().copied().filter(|&x| f.pow(x, k) == Felt::ONE).collect::<Vec<_>>();
            let (r15, r6, r5) = (roots(15), roots(6), roots(5));
            shard(tester, all.clone(), |sc, a5| {
                for &a4 in &r15 {
                    for &a3 in &r6 {
                        for &a2 in &r5 {
                            sc.test([el(0), a5, a4, a3, a2, el(1)]);
                        }
                    }
                }
            })
        }
        29 => {
            // a4 = a6^2/9, a5 in {0,1}, a2^15 = a2, a1^8 + 4 a1^4 = 5
            let inv9 = f.inv(el(9))?;
            let a2s: Vec<Felt> = all.iter().copied().filter(|&x| f.pow(x, 15) == x).collect();
            let a1s: Vec<Felt> = all
                .iter()
                .copied()
                .filter(|&x| f.add(f.pow(x, 8), f.mul(el(4), f.pow(x, 4))) == el(5))
                .collect();
            shard(tester, all.clone(), |sc, a6| {
                let a4 = f.mul(f.mul(a6, a6), inv9);
                for a5 in [el(0), el(1)] {
                    for &a3 in &all {
                        for &a2 in &a2s {
                            for &a1 in &a1s {
                                sc.test([a6, a5, a4, a3, a2, a1]);
                            }
                        }
                    }
                }
            })
        }
        27 => {
            // (a3, a1) in {(1,0)} + {(a3,1)}, a2 = -a6^3
            let mut pins = vec![(el(1), el(0))];
            pins.extend(all.iter().map(|&a3| (a3, el(1))));
            let parts: Vec<Vec<[Felt; 6]>> = pins
                .into_par_iter()
                .map(|(a3, a1)| {
                    let mut sc = Scanner::new(tester);
                    for &a5 in &all {
                        for &a6 in &all {
                            let a2 = f.neg(f.pow(a6, 3));
                            for &a4 in &all {
                                sc.test([a6, a5, a4, a3, a2, a1]);
                            }
                        }
                    }
                    sc.hits
                })
                .collect();
            parts.into_iter().flatten().collect()
        }
        23 => {
            // a6 = 0, a5 = 1, a1 = -a4 + 11 a3^2 - a2 a4, a3 != 0 != a4
            let nz = f.nonzero_elements();
            shard(tester, nz.clone(), |sc, a4| {
                for &a3 in &nz {
                    for &a2 in &all {
                        let a1 = f.sub(f.mul(el(11), f.mul(a3, a3)), f.add(a4, f.mul(a2, a4)));
                        sc.test([el(0), el(1), a4, a3, a2, a1]);
                    }
                }
            })
        }
        19 => {
            // (a3, a1) in {(1,0)} + {(a3,1)}, a2 = -a6^3/3 - a5^2 - 2 a4 a6
            let inv3 = f.inv(el(3))?;
            let mut pins = vec![(el(1), el(0))];
            pins.extend(all.iter().map(|&a3| (a3, el(1))));
            let parts: Vec<Vec<[Felt; 6]>> = pins
                .into_par_iter()
                .map(|(a3, a1)| {
                    let mut sc = Scanner::new(tester);
                    for &a6 in &all {
                        for &a5 in &all {
                            for &a4 in &all {
                                let a2 = f.neg(f.add(
                                    f.mul(f.pow(a6, 3), inv3),
                                    f.add(f.mul(a5, a5), f.mul(el(2), f.mul(a4, a6))),
                                ));
                                sc.test([a6, a5, a4, a3, a2, a1]);
                            }
                        }
                    }
                    sc.hits
                })
                .collect();
            parts.into_iter().flatten().collect()
        }
        13 => {
            // a4 = -a6^2/2; (a3, a1) in {(0,0),(1,0)} + {(a3,1)}; a5 in cube-coset reps when a1 = a3 = 0
            let reps = coset_representatives(f, 3);
            if reps != [el(1), el(2), el(4)] {
                return Err(Error::Precondition(format!("unexpected cube coset representatives {reps:?}")));
            }
            let inv2 = f.inv(el(2))?;
            let mut pins = vec![(el(0), el(0)), (el(1), el(0))];
            pins.extend(all.iter().map(|&a3| (a3, el(1))));
            let parts: Vec<Vec<[Felt; 6]>> = pins
                .into_par_iter()
                .map(|(a3, a1)| {
                    let mut sc = Scanner::new(tester);
                    let a5s: Vec<Felt> = if (a3, a1) == (el(0), el(0)) {
                        std::iter::once(el(0)).chain(reps.iter().copied()).collect()
                    } else {
                        all.clone()
                    };
                    for &a5 in &a5s {
                        for &a6 in &all {
                            let a4 = f.neg(f.mul(f.mul(a6, a6), inv2));
                            for &a2 in &all {
                                sc.test([a6, a5, a4, a3, a2, a1]);
                            }
                        }
                    }
                    sc.hits
                })
                .collect();
            parts.into_iter().flatten().collect()
        }
        11 => {
            // a2 = -a5^2/2 - a4 a6; (a5, a1) in {(0,0),(1,0)} + {(a5,1)}; a6 in square-coset reps when a1 = a5 = 0
            let reps = coset_representatives(f, 2);
            if reps != [el(1), el(2)] {
                return Err(Error::Precondition(format!("unexpected square coset representatives {reps:?}")));
            }
            let inv2 = f.inv(el(2))?;
            let mut pins = vec![(el(0), el(0)), (el(1), el(0))];
            pins.extend(all.iter().map(|&a5| (a5, el(1))));
            let parts: Vec<Vec<[Felt; 6]>> = pins
                .into_par_iter()
                .map(|(a5, a1)| {
                    let mut sc = Scanner::new(tester);
                    let a6s: Vec<Felt> = if (a5, a1) == (el(0), el(0)) {
                        std::iter::once(el(0)).chain(reps.iter().copied()).collect()
                    } else {
                        all.clone()
                    };
                    for &a6 in &a6s {
                        for &a4 in &all {
                            let a2 = f.neg(f.add(f.mul(f.mul(a5, a5), inv2), f.mul(a4, a6)));
                            for &a3 in &all {
                                sc.test([a6, a5, a4, a3, a2, a1]);
                            }
                        }
                    }
                    sc.hits
                })
                .collect();
            parts.into_iter().flatten().collect()
        }
        _ => return Err(Error::UnsupportedOrder(q as u64)),
    };
    Ok(hits)
}

/// A Hermite equation solved for one variable: `x_pivot = -(rest) / c`.
struct Pivot {
    /// zero-based variable index
    var: usize,
    inv_neg_c: Felt,
    rest: CompiledPoly,
}

/// Term list for fast evaluation at many points.
struct CompiledPoly {
    terms: Vec<([u8; 6], Felt)>,
}

impl CompiledPoly {
    fn new(p: &MPoly) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = [0u8; 6];
                for (i, slot) in e.iter_mut().enumerate() {
                    *slot = m.exp(i).min(255) as u8;
                }
                (e, *c)
            })
            .collect();
        CompiledPoly { terms }
    }

    #[inline]
    fn eval(&self, f: &FieldCtx, a: &[Felt; 6]) -> Felt {
        let mut s = Felt::ZERO;
        for (e, c) in &self.terms {
            let mut t = *c;
            for i in 0..6 {
                if e[i] > 0 {
                    t = f.mul(t, f.pow(a[i], e[i] as u64));
                }
            }
            s = f.add(s, t);
        }
        s
    }
}

/// Finds a variable that occurs in `p` only as `c * x_i` with `c` constant.
fn find_pivot(field: &FieldCtx, p: &MPoly) -> Option<Pivot> {
    for var in (0..6).rev() {
        let occurrences: Vec<_> = p.terms().iter().filter(|(m, _)| m.exp(var) > 0).collect();
        if occurrences.len() == 1 && occurrences[0].0 == crate::mpoly::Monomial::var_pow(var, 1) {
            let c = occurrences[0].1;
            let rest = p.ring().from_terms(p.terms().iter().filter(|(m, _)| m.exp(var) == 0).copied());
            let inv_neg_c = field.neg(field.inv(c).ok()?);
            return Some(Pivot { var, inv_neg_c, rest: CompiledPoly::new(&rest) });
        }
    }
    None
}

/// Number of nonzero Hermite equations (after the pivot) used as filters.
const GENERIC_FILTERS: usize = 1;

fn generic_search(tester: &PpTester) -> Result<Vec<[Felt; 6]>> {
    let field = tester.field().clone();
    let f = &*field;
    let q = f.order();
    let spec = HermiteSpec::with_field(8, field.clone())?;
    let mut nonzero = Vec::new();
    for m in 1..=q - 2 {
        let p = spec.hc(m)?;
        if p.is_unit() {
            // A nonzero constant Hermite condition rules out every candidate.
            return Ok(Vec::new());
        }
        if !p.is_zero() {
            nonzero.push(p);
        }
        if nonzero.len() > GENERIC_FILTERS {
            break;
        }
    }
    let pivot = nonzero.first().and_then(|p| find_pivot(f, p));
    let filters: Vec<CompiledPoly> = match &pivot {
        Some(_) => nonzero.iter().skip(1).map(CompiledPoly::new).collect(),
        None => nonzero.iter().map(CompiledPoly::new).collect(),
    };
    let all = f.all_elements();
    let free: Vec<usize> = (0..6).filter(|&i| pivot.as_ref().map_or(true, |p| p.var != i)).collect();
    // Outermost loop over the highest-index free variable.
    let outer_var = *free.last().expect("at least one free variable");
    let inner: Vec<usize> = free.iter().copied().filter(|&i| i != outer_var).collect();
    let parts: Vec<Vec<[Felt; 6]>> = all
        .clone()
        .into_par_iter()
        .map(|o| {
            let mut sc = Scanner::new(tester);
            let mut a = [Felt::ZERO; 6];
            a[outer_var] = o;
            let n = inner.len();
            let total = (q as u64).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                for &i in &inner {
                    a[i] = Felt((c % q as u64) as u32);
                    c /= q as u64;
                }
                if let Some(pv) = &pivot {
                    a[pv.var] = f.mul(pv.rest.eval(f, &a), pv.inv_neg_c);
                }
                if filters.iter().any(|p| !p.eval(f, &a).is_zero()) {
                    continue;
                }
                sc.test([a[5], a[4], a[3], a[2], a[1], a[0]]);
            }
            sc.hits
        })
        .collect();
    let _ = all;
    Ok(parts.into_iter().flatten().collect())
}
