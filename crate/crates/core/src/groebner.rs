//! Buchberger's algorithm over `F_q` with Gebauer–Möller pair management,
//! reduced-basis output, and the variety queries built on it.
//!
//! Questions about `F_q`-points are answered through `I + <x_i^q - x_i>`,
//! which is radical and has the same `F_q`-variety as `I`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};
use std::marker::PhantomData;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Felt};
use crate::mpoly::{Grevlex, Grlex, Lex, MPoly, Monomial, MonomialOrder, PolyRing, TermOrder, MAX_VARS};

/// Limits on a single Buchberger run. Exceeding either one yields
/// [`Error::Inconclusive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_time: Option<Duration>,
    pub max_pairs: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_time: None, max_pairs: None };

    pub fn seconds(s: u64) -> Self {
        Budget { max_time: Some(Duration::from_secs(s)), max_pairs: None }
    }

    pub fn pairs(n: u64) -> Self {
        Budget { max_time: None, max_pairs: Some(n) }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::seconds(600)
    }
}

/// S-pair selection rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Smallest lcm of leading monomials first.
    #[default]
    Normal,
    /// Smallest sugar degree first, ties broken by lcm.
    Sugar,
}

/// Counters from a Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub pairs_reduced: u64,
    pub pairs_skipped: u64,
    pub zero_reductions: u64,
    pub elapsed: Duration,
}

/// A reduced Gröbner basis together with the generators it came from.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: PolyRing,
    gens: Vec<MPoly>,
    source: Vec<MPoly>,
    stats: Stats,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Monic generators sorted by ascending leading monomial.
    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn source(&self) -> &[MPoly] {
        &self.source
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn contains_one(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        crate::mpoly::normal_form(f, &self.gens, self.order)
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Leading monomials of the generators.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.leading_term(self.order).expect("nonzero").0).collect()
    }

    /// Checks the Gröbner property (every S-polynomial reduces to zero),
    /// reducedness, and that every source generator lies in the ideal.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let order = self.order;
        let field = self.ring.field();
        let lts: Vec<(Monomial, Felt)> =
            self.gens.iter().map(|g| g.leading_term(order).map_err(|e| e.to_string())).collect::<std::result::Result<_, _>>()?;
        for (i, g) in self.gens.iter().enumerate() {
            if lts[i].1 != Felt::ONE {
                return Err(format!("generator {i} is not monic: {g}"));
            }
            for (j, (lm, _)) in lts.iter().enumerate() {
                if i != j && g.terms().iter().any(|(t, _)| lm.divides(t)) {
                    return Err(format!("generator {i} has a term divisible by leading monomial {j}"));
                }
            }
        }
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let s = spoly_public(&self.gens[i], &self.gens[j], order, field).map_err(|e| e.to_string())?;
                let r = self.normal_form(&s).map_err(|e| e.to_string())?;
                if !r.is_zero() {
                    return Err(format!("S-polynomial of {i} and {j} reduces to {r}"));
                }
            }
        }
        for (k, f) in self.source.iter().enumerate() {
            if !self.contains(f).map_err(|e| e.to_string())? {
                return Err(format!("source generator {k} is not in the ideal"));
            }
        }
        Ok(())
    }
}

fn spoly_public(f: &MPoly, g: &MPoly, order: MonomialOrder, field: &FieldCtx) -> Result<MPoly> {
    let (lf, cf) = f.leading_term(order)?;
    let (lg, cg) = g.leading_term(order)?;
    let l = lf.lcm(&lg);
    let a = f.mul_term(&lf.quotient(&l).expect("divides"), field.inv(cf)?);
    let b = g.mul_term(&lg.quotient(&l).expect("divides"), field.inv(cg)?);
    a.sub(&b)
}

/// Reduced Gröbner basis with the normal strategy.
pub fn buchberger(generators: &[MPoly], order: MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    buchberger_with(generators, order, budget, Strategy::Normal)
}

pub fn buchberger_with(
    generators: &[MPoly],
    order: MonomialOrder,
    budget: Budget,
    strategy: Strategy,
) -> Result<GroebnerBasis> {
    let ring = generators.first().ok_or_else(|| Error::Precondition("empty generator list".into()))?.ring().clone();
    if generators.iter().any(|g| *g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let start = Instant::now();
    let (polys, mut stats) = match order {
        MonomialOrder::Lex => Engine::<Lex>::new(&ring, order, budget, strategy, start).run(generators)?,
        MonomialOrder::Grlex => Engine::<Grlex>::new(&ring, order, budget, strategy, start).run(generators)?,
        MonomialOrder::Grevlex => Engine::<Grevlex>::new(&ring, order, budget, strategy, start).run(generators)?,
    };
    stats.elapsed = start.elapsed();
    let gens = polys.into_iter().map(|t| ring.from_terms(t)).collect();
    Ok(GroebnerBasis { order, ring, gens, source: generators.to_vec(), stats })
}

/// Whether `generators` have no common zero in `F_q^v`.
pub fn empty_over_fq(generators: &[MPoly], budget: Budget) -> Result<bool> {
    Ok(buchberger(&with_field_equations(generators)?, MonomialOrder::Grevlex, budget)?.contains_one())
}

/// Whether `f` lies in the ideal of `generators`, optionally enlarged by the
/// field equations.
pub fn membership(f: &MPoly, generators: &[MPoly], include_field_eqs: bool, budget: Budget) -> Result<bool> {
    let gens = if include_field_eqs { with_field_equations(generators)? } else { generators.to_vec() };
    buchberger(&gens, MonomialOrder::Grevlex, budget)?.contains(f)
}

/// `generators` followed by `x_i^q - x_i` for every variable of their ring.
pub fn with_field_equations(generators: &[MPoly]) -> Result<Vec<MPoly>> {
    let ring = generators.first().ok_or_else(|| Error::Precondition("empty generator list".into()))?.ring();
    let mut out = generators.to_vec();
    out.extend(ring.field_equations());
    Ok(out)
}

/// Common zeros in `F_q^v` by exhaustive enumeration; `q^v` must be small.
pub fn brute_force_variety(generators: &[MPoly]) -> Result<Vec<Vec<Felt>>> {
    let ring = generators.first().ok_or_else(|| Error::Precondition("empty generator list".into()))?.ring();
    let field = ring.field();
    let v = ring.nvars();
    let q = field.order() as u64;
    let total = q.checked_pow(v as u32).filter(|&t| t <= 1 << 24).ok_or_else(|| {
        Error::Precondition(format!("{q}^{v} points is too many to enumerate"))
    })?;
    let mut out = Vec::new();
    let mut point = vec![Felt::ZERO; v];
    for code in 0..total {
        let mut c = code;
        for slot in point.iter_mut() {
            *slot = field.element((c % q) as u32).expect("in range");
            c /= q;
        }
        let mut ok = true;
        for g in generators {
            if !g.evaluate(&point)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(point.clone());
        }
    }
    Ok(out)
}

type Terms = Vec<(Monomial, Felt)>;

/// Heap key ordered by `T`.
struct Key<T>(Monomial, PhantomData<T>);

impl<T: TermOrder> PartialEq for Key<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<T: TermOrder> Eq for Key<T> {}
impl<T: TermOrder> PartialOrd for Key<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: TermOrder> Ord for Key<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        T::cmp(&self.0, &other.0)
    }
}

/// Critical pair, ordered by `(sugar, lcm, j, i)`.
#[derive(Clone)]
struct PairKey {
    sugar: u32,
    lcm_key: (u32, [u16; MAX_VARS]),
    j: usize,
    i: usize,
    lcm: Monomial,
}

impl PairKey {
    fn rank(&self) -> (u32, &(u32, [u16; MAX_VARS]), usize, usize) {
        (self.sugar, &self.lcm_key, self.j, self.i)
    }
}

impl PartialEq for PairKey {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank()
    }
}
impl Eq for PairKey {}
impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

struct Engine<'a, T> {
    field: &'a FieldCtx,
    order: MonomialOrder,
    budget: Budget,
    strategy: Strategy,
    start: Instant,
    /// Every polynomial ever added, monic and sorted by `T`.
    polys: Vec<Arc<Terms>>,
    sugar: Vec<u32>,
    /// Indices into `polys` that currently form the basis.
    active: Vec<usize>,
    /// `(sev, leading monomial, index)` of `active`, in insertion order.
    divisors: Vec<(u32, Monomial, usize)>,
    pairs: BTreeSet<PairKey>,
    stats: Stats,
    _order: PhantomData<T>,
}

impl<'a, T: TermOrder> Engine<'a, T> {
    fn new(ring: &'a PolyRing, order: MonomialOrder, budget: Budget, strategy: Strategy, start: Instant) -> Self {
        Engine {
            field: ring.field(),
            order,
            budget,
            strategy,
            start,
            polys: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            divisors: Vec::new(),
            pairs: BTreeSet::new(),
            stats: Stats::default(),
            _order: PhantomData,
        }
    }

    fn lm(&self, i: usize) -> Monomial {
        self.polys[i][0].0
    }

    fn check_budget(&self) -> Result<()> {
        if let Some(t) = self.budget.max_time {
            if self.start.elapsed() > t {
                return Err(Error::Inconclusive(format!("time limit of {}s exceeded", t.as_secs_f64())));
            }
        }
        if let Some(n) = self.budget.max_pairs {
            if self.stats.pairs_reduced > n {
                return Err(Error::Inconclusive(format!("S-pair limit of {n} exceeded")));
            }
        }
        Ok(())
    }

    fn run(mut self, generators: &[MPoly]) -> Result<(Vec<Terms>, Stats)> {
        // Inputs are reduced against the basis built so far, smallest first.
        let mut inputs: Vec<Terms> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let mut t = g.terms().to_vec();
                t.sort_unstable_by(|a, b| T::cmp(&b.0, &a.0));
                t
            })
            .collect();
        inputs.sort_by(|a, b| T::cmp(&a[0].0, &b[0].0));
        for t in inputs {
            let deg = t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let r = self.reduce(t)?;
            if let Some(unit) = self.absorb(r, deg)? {
                return Ok((vec![unit], self.stats));
            }
        }
        while let Some(key) = self.pairs.pop_first() {
            self.check_budget()?;
            let s = self.spoly(key.i, key.j, &key.lcm);
            self.stats.pairs_reduced += 1;
            let r = self.reduce(s)?;
            if r.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if let Some(unit) = self.absorb(r, key.sugar)? {
                return Ok((vec![unit], self.stats));
            }
        }
        Ok((self.finish()?, self.stats))
    }

    /// Adds a nonzero reduced polynomial to the basis. Returns the unit basis
    /// when the polynomial is constant.
    fn absorb(&mut self, r: Terms, sugar: u32) -> Result<Option<Terms>> {
        if r.is_empty() {
            return Ok(None);
        }
        if r[0].0.is_one() {
            return Ok(Some(vec![(Monomial::ONE, Felt::ONE)]));
        }
        let r = self.make_monic(r)?;
        self.update(r, sugar);
        Ok(None)
    }

    fn make_monic(&self, mut r: Terms) -> Result<Terms> {
        let inv = self.field.inv(r[0].1)?;
        if inv != Felt::ONE {
            for t in r.iter_mut() {
                t.1 = self.field.mul(t.1, inv);
            }
        }
        Ok(r)
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Terms {
        let f = self.field;
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let sa = a[0].0.quotient(lcm).expect("divides");
        let sb = b[0].0.quotient(lcm).expect("divides");
        // Both are monic, so the leading terms cancel exactly.
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (1, 1);
        while x < a.len() || y < b.len() {
            let ta = a.get(x).map(|&(m, c)| (m.mul(&sa), c));
            let tb = b.get(y).map(|&(m, c)| (m.mul(&sb), c));
            match (ta, tb) {
                (Some((ma, ca)), Some((mb, cb))) => match T::cmp(&ma, &mb) {
                    Ordering::Greater => {
                        out.push((ma, ca));
                        x += 1;
                    }
                    Ordering::Less => {
                        out.push((mb, f.neg(cb)));
                        y += 1;
                    }
                    Ordering::Equal => {
                        let c = f.sub(ca, cb);
                        if !c.is_zero() {
                            out.push((ma, c));
                        }
                        x += 1;
                        y += 1;
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma, ca));
                    x += 1;
                }
                (None, Some((mb, cb))) => {
                    out.push((mb, f.neg(cb)));
                    y += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    fn find_divisor(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let sev = m.sev();
        self.divisors
            .iter()
            .find(|(s, lm, idx)| Some(*idx) != skip && s & !sev == 0 && lm.divides(m))
            .map(|&(_, _, idx)| idx)
    }

    /// Full reduction modulo the active basis.
    fn reduce(&mut self, f: Terms) -> Result<Terms> {
        self.reduce_skipping(f, None)
    }

    fn reduce_skipping(&mut self, f: Terms, skip: Option<usize>) -> Result<Terms> {
        let field = self.field;
        let mut acc: FxHashMap<Monomial, Felt> = FxHashMap::default();
        let mut heap: BinaryHeap<Key<T>> = BinaryHeap::with_capacity(f.len());
        for (m, c) in f {
            acc.insert(m, c);
            heap.push(Key(m, PhantomData));
        }
        let mut out = Vec::new();
        let mut steps = 0u64;
        while let Some(Key(m, _)) = heap.pop() {
            let c = acc.remove(&m).expect("tracked");
            if c.is_zero() {
                continue;
            }
            match self.find_divisor(&m, skip) {
                Some(idx) => {
                    steps += 1;
                    if steps % 4096 == 0 {
                        self.check_budget()?;
                    }
                    let g = &self.polys[idx];
                    let shift = g[0].0.quotient(&m).expect("divides");
                    let factor = field.neg(c);
                    for &(t, a) in &g[1..] {
                        let tm = t.mul(&shift);
                        let v = field.mul(a, factor);
                        match acc.entry(tm) {
                            std::collections::hash_map::Entry::Occupied(mut e) => {
                                let s = field.add(*e.get(), v);
                                e.insert(s);
                            }
                            std::collections::hash_map::Entry::Vacant(e) => {
                                e.insert(v);
                                heap.push(Key(tm, PhantomData));
                            }
                        }
                    }
                }
                None => out.push((m, c)),
            }
        }
        Ok(out)
    }

    /// Gebauer–Möller update with the new monic polynomial `h`.
    fn update(&mut self, h: Terms, sugar: u32) {
        let hi = self.polys.len();
        let lh = h[0].0;
        self.polys.push(Arc::new(h));
        self.sugar.push(sugar);

        // Candidate pairs (g, h), pruned by the chain criterion among themselves.
        let cands: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, self.lm(g).lcm(&lh))).collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            let (ga, la) = cands[a];
            if self.lm(ga).coprime(&lh) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = cands[b].1;
                if lb.divides(&la) && (lb != la || b > a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut new_pairs = Vec::new();
        for (a, &(g, l)) in cands.iter().enumerate() {
            if !keep[a] {
                self.stats.pairs_skipped += 1;
                continue;
            }
            if self.lm(g).coprime(&lh) {
                // Buchberger's first criterion.
                self.stats.pairs_skipped += 1;
                continue;
            }
            new_pairs.push((g, l));
        }

        // Old pairs made redundant by h.
        let order = self.order;
        let before = self.pairs.len();
        let sev = lh.sev();
        let polys = &self.polys;
        self.pairs.retain(|key| {
            let l = &key.lcm;
            !(sev & !l.sev() == 0
                && lh.divides(l)
                && polys[key.i][0].0.lcm(&lh) != *l
                && polys[key.j][0].0.lcm(&lh) != *l)
        });
        self.stats.pairs_skipped += (before - self.pairs.len()) as u64;

        for (g, l) in new_pairs {
            let s = match self.strategy {
                Strategy::Normal => 0,
                Strategy::Sugar => {
                    let d = l.degree();
                    (self.sugar[g] + d - self.lm(g).degree()).max(sugar + d - lh.degree())
                }
            };
            self.pairs.insert(PairKey { sugar: s, lcm_key: order.sort_key(&l), j: hi, i: g, lcm: l });
        }

        // Basis elements whose leading monomial is a multiple of lh leave the basis.
        self.active.retain(|&g| !lh.divides(&self.polys[g][0].0));
        self.active.push(hi);
        self.divisors = self.active.iter().map(|&g| (self.lm(g).sev(), self.lm(g), g)).collect();
    }

    /// Minimal, then fully interreduced, basis sorted by ascending leading monomial.
    fn finish(&mut self) -> Result<Vec<Terms>> {
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| T::cmp(&self.lm(a), &self.lm(b)));
        let mut out = Vec::with_capacity(idx.len());
        for &g in &idx {
            let poly = self.polys[g].clone();
            let mut tail = self.reduce_skipping(poly[1..].to_vec(), Some(g))?;
            let mut r = vec![poly[0]];
            r.append(&mut tail);
            out.push(r);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: usize) -> PolyRing {
        PolyRing::new(Arc::new(FieldCtx::prime(p).unwrap()), n).unwrap()
    }

    fn polys(r: &PolyRing, src: &[&str]) -> Vec<MPoly> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    fn basis(r: &PolyRing, src: &[&str]) -> Vec<String> {
        let gb = buchberger(&polys(r, src), MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        gb.audit().unwrap();
        gb.gens().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn trivial_bases() {
        let r = ring(7, 2);
        assert_eq!(basis(&r, &["x1"]), ["x1"]);
        assert_eq!(basis(&r, &["x1^2 + x2", "x2"]), ["x2", "x1^2"]);
        assert_eq!(basis(&r, &["x1 - 1", "x1"]), ["1"]);
    }

    #[test]
    fn cyclic_three_agrees_across_strategies() {
        let r = ring(101, 3);
        let g = polys(&r, &["x1 + x2 + x3", "x1*x2 + x2*x3 + x1*x3", "x1*x2*x3 - 1"]);
        let a = buchberger_with(&g, MonomialOrder::Grevlex, Budget::UNLIMITED, Strategy::Normal).unwrap();
        let b = buchberger_with(&g, MonomialOrder::Grevlex, Budget::UNLIMITED, Strategy::Sugar).unwrap();
        a.audit().unwrap();
        b.audit().unwrap();
        assert_eq!(a.gens(), b.gens());
        let lex = buchberger(&g, MonomialOrder::Lex, Budget::UNLIMITED).unwrap();
        lex.audit().unwrap();
        assert!(lex.gens().iter().any(|p| p.to_string() == "x3^3 + 100"));
    }

    #[test]
    fn variety_queries() {
        let r = ring(11, 2);
        assert!(!empty_over_fq(&[r.parse("x1 - 3").unwrap()], Budget::UNLIMITED).unwrap());
        // x^2 + 1 has no root mod 11
        assert!(empty_over_fq(&[r.parse("x1^2 + 1").unwrap()], Budget::UNLIMITED).unwrap());
        assert!(!membership(&r.var(0), &[r.var(1)], true, Budget::UNLIMITED).unwrap());
        assert!(membership(&r.var(0), &polys(&r, &["x1^2"]), true, Budget::UNLIMITED).unwrap());
        assert!(!membership(&r.var(0), &polys(&r, &["x1^2"]), false, Budget::UNLIMITED).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = ring(31, 4);
        let g = polys(
            &r,
            &["x1 + x2 + x3 + x4", "x1*x2 + x2*x3 + x3*x4 + x4*x1", "x1*x2*x3 + x2*x3*x4 + x3*x4*x1 + x4*x1*x2", "x1*x2*x3*x4 - 1"],
        );
        let err = buchberger(&g, MonomialOrder::Grevlex, Budget::pairs(2)).unwrap_err();
        assert!(matches!(err, Error::Inconclusive(_)));
    }

    #[test]
    fn rejects_mixed_rings() {
        let a = ring(7, 2);
        let b = ring(11, 2);
        assert_eq!(buchberger(&[a.var(0), b.var(0)], MonomialOrder::Lex, Budget::UNLIMITED).unwrap_err(), Error::RingMismatch);
        assert!(buchberger(&[], MonomialOrder::Lex, Budget::UNLIMITED).is_err());
    }
}
