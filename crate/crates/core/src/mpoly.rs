//! Sparse multivariate polynomials over `F_q`.
//!
//! An [`MPoly`] keeps its terms sorted in descending graded reverse
//! lexicographic order with no zero coefficients, so two polynomials are equal
//! exactly when their term lists are equal. Other monomial orders are applied
//! on demand through [`MonomialOrder`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Felt};

/// Maximum number of variables in a polynomial ring.
pub const MAX_VARS: usize = 8;

/// A power product `x1^e1 * ... * xv^ev`. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| Error::Precondition(format!("exponent {e} too large")))?;
        }
        Ok(m)
    }

    /// `x_{i+1}^e` (zero-based index `i`).
    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e as u16;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        let mut r = Monomial::ONE;
        for i in 0..MAX_VARS {
            r.exps[i] = other.exps[i].checked_sub(self.exps[i])?;
        }
        Some(r)
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        r
    }

    /// True when the two monomials share no variable.
    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask with bit `i` set when `x_{i+1}` occurs at all, and bit `8 + i`
    /// when it occurs to a power of at least 2, and so on for 4 and 8. If `a`
    /// divides `b` then `sev(a) & !sev(b) == 0`.
    #[inline]
    pub(crate) fn sev(&self) -> u32 {
        let mut s = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e >= 1 {
                s |= 1 << i;
            }
            if e >= 2 {
                s |= 1 << (8 + i);
            }
            if e >= 4 {
                s |= 1 << (16 + i);
            }
            if e >= 8 {
                s |= 1 << (24 + i);
            }
        }
        s
    }

    fn write(&self, f: &mut impl fmt::Write, nvars: usize) -> fmt::Result {
        let mut first = true;
        for i in 0..nvars {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = MAX_VARS - self.exps.iter().rev().take_while(|&&e| e == 0).count();
        self.write(f, n)
    }
}

/// Monomial order. Variables are ranked `x1 > x2 > ... > xv`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    Lex,
    Grlex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => Lex::cmp(a, b),
            MonomialOrder::Grlex => Grlex::cmp(a, b),
            MonomialOrder::Grevlex => Grevlex::cmp(a, b),
        }
    }

    /// A key whose natural ordering agrees with this monomial order.
    pub fn sort_key(&self, m: &Monomial) -> (u32, [u16; MAX_VARS]) {
        match self {
            MonomialOrder::Lex => (0, m.exps),
            MonomialOrder::Grlex => (m.degree(), m.exps),
            MonomialOrder::Grevlex => {
                let mut k = [0u16; MAX_VARS];
                for i in 0..MAX_VARS {
                    k[i] = u16::MAX - m.exps[MAX_VARS - 1 - i];
                }
                (m.degree(), k)
            }
        }
    }
}

/// Statically dispatched monomial order, used by the hot loops.
pub(crate) trait TermOrder: Copy + Send + Sync + 'static {
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering;
}

#[derive(Clone, Copy)]
pub(crate) struct Lex;
#[derive(Clone, Copy)]
pub(crate) struct Grlex;
#[derive(Clone, Copy)]
pub(crate) struct Grevlex;

impl TermOrder for Lex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        a.exps.cmp(&b.exps)
    }
}

impl TermOrder for Grlex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| a.exps.cmp(&b.exps))
    }
}

impl TermOrder for Grevlex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {
                for i in (0..MAX_VARS).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            o => o,
        }
    }
}

/// `F_q[x1, ..., xv]`.
#[derive(Clone)]
pub struct PolyRing(Arc<RingInner>);

struct RingInner {
    field: Arc<FieldCtx>,
    nvars: usize,
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[x1..x{}]", self.0.field, self.0.nvars)
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.nvars == other.0.nvars && *self.0.field == *other.0.field)
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(field: Arc<FieldCtx>, nvars: usize) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        Ok(PolyRing(Arc::new(RingInner { field, nvars })))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.0.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    pub fn zero(&self) -> MPoly {
        MPoly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> MPoly {
        self.constant(Felt::ONE)
    }

    pub fn constant(&self, c: Felt) -> MPoly {
        self.monomial(Monomial::ONE, c)
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(&self, i: usize) -> MPoly {
        assert!(i < self.nvars(), "variable index out of range");
        self.monomial(Monomial::var_pow(i, 1), Felt::ONE)
    }

    pub fn monomial(&self, m: Monomial, c: Felt) -> MPoly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MPoly { ring: self.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Felt)>) -> MPoly {
        let field = self.field();
        let mut acc: HashMap<Monomial, Felt> = HashMap::new();
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(Felt::ZERO);
            *slot = field.add(*slot, c);
        }
        MPoly::from_map(self.clone(), acc)
    }

    /// `x_{i+1}^q - x_{i+1}` for every variable.
    pub fn field_equations(&self) -> Vec<MPoly> {
        let q = self.field().order();
        let minus_one = self.field().neg(Felt::ONE);
        (0..self.nvars())
            .map(|i| {
                self.from_terms([(Monomial::var_pow(i, q), Felt::ONE), (Monomial::var_pow(i, 1), minus_one)])
            })
            .collect()
    }

    /// Parses the text grammar, e.g. `x6^3 + 3*x5^2 + 6*x4*x6 + 3*x2`.
    pub fn parse(&self, s: &str) -> Result<MPoly> {
        let field = self.field();
        let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut sign_neg = false;
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        for (idx, &(pos, ch)) in chars.iter().enumerate() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' | '-' | '−' if depth == 0 => {
                    let prev = chars[..idx].iter().rev().find(|(_, c)| !c.is_whitespace()).map(|(_, c)| *c);
                    if prev == Some('^') || prev == Some('*') {
                        continue;
                    }
                    let piece = s[start..pos].trim();
                    if !piece.is_empty() {
                        pieces.push((sign_neg, piece));
                    } else if prev.is_some() && prev != Some('+') && prev != Some('-') && prev != Some('−') {
                        return Err(err("empty term"));
                    }
                    sign_neg = match ch {
                        '+' => false,
                        _ => true,
                    };
                    start = pos + ch.len_utf8();
                }
                _ => {}
            }
        }
        let piece = s[start..].trim();
        if piece.is_empty() {
            if !pieces.is_empty() || sign_neg {
                return Err(err("trailing operator"));
            }
            return Err(err("empty polynomial"));
        }
        pieces.push((sign_neg, piece));

        for (neg, piece) in pieces {
            let mut coef = Felt::ONE;
            let mut mono = Monomial::ONE;
            for factor in piece.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.trim().parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let i: usize = idx.trim().parse().map_err(|_| err("bad variable"))?;
                    if i == 0 || i > self.nvars() {
                        return Err(err("variable out of range"));
                    }
                    mono = mono.mul(&Monomial::var_pow(i - 1, pow));
                } else {
                    coef = field.mul(coef, field.parse(factor)?);
                }
            }
            if neg {
                coef = field.neg(coef);
            }
            terms.push((mono, coef));
        }
        Ok(self.from_terms(terms))
    }
}

/// A polynomial in some [`PolyRing`].
#[derive(Clone)]
pub struct MPoly {
    ring: PolyRing,
    /// Descending grevlex, no zero coefficients.
    terms: Vec<(Monomial, Felt)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let coef = if field.in_prime_subfield(*c) { c.value().to_string() } else { field.format(*c) };
            if m.is_one() {
                f.write_str(&coef)?;
            } else {
                if *c != Felt::ONE {
                    write!(f, "{coef}*")?;
                }
                m.write(f, self.ring.nvars())?;
            }
        }
        Ok(())
    }
}

impl MPoly {
    fn from_map(ring: PolyRing, map: HashMap<Monomial, Felt>) -> MPoly {
        let mut terms: Vec<(Monomial, Felt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| Grevlex::cmp(&b.0, &a.0));
        MPoly { ring, terms }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, Felt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1 == Felt::ONE
    }

    pub fn coeff(&self, m: &Monomial) -> Felt {
        self.terms
            .binary_search_by(|(t, _)| Grevlex::cmp(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(Felt::ZERO)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn check_ring(&self, other: &MPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match Grevlex::cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].1, b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(MPoly { ring: self.ring.clone(), terms: out })
    }

    pub fn neg(&self) -> MPoly {
        let field = self.ring.field();
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, c)| (m, field.neg(c))).collect() }
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Felt) -> MPoly {
        let field = self.ring.field();
        if c.is_zero() {
            return self.ring.zero();
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, a)| (m, field.mul(a, c))).collect() }
    }

    /// Product with the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: Felt) -> MPoly {
        let field = self.ring.field();
        if c.is_zero() {
            return self.ring.zero();
        }
        // Multiplication by a monomial preserves every monomial order.
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), field.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, Felt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(Felt::ZERO);
                *slot = field.add(*slot, field.mul(*ca, *cb));
            }
        }
        Ok(MPoly::from_map(self.ring.clone(), acc))
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Felt]) -> Result<Felt> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: point.len() });
        }
        let field = self.ring.field();
        let mut sum = Felt::ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &a) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = field.mul(t, field.pow(a, e as u64));
                }
            }
            sum = field.add(sum, t);
        }
        Ok(sum)
    }

    /// Substitutes zero for the listed (zero-based) variables.
    pub fn zero_vars(&self, vars: &[usize]) -> MPoly {
        let terms = self.terms.iter().filter(|(m, _)| vars.iter().all(|&i| m.exp(i) == 0)).copied().collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Monomial, Felt)> {
        let first = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        Ok(*self.terms.iter().skip(1).fold(first, |best, t| {
            if order.cmp(&t.0, &best.0) == Ordering::Greater {
                t
            } else {
                best
            }
        }))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Result<MPoly> {
        let (_, c) = self.leading_term(order)?;
        Ok(self.scale(self.ring.field().inv(c)?))
    }
}

/// Remainder of `f` under multivariate division by `basis`. Among basis
/// elements whose leading monomial divides the current term, the one with the
/// lowest index is used.
pub fn normal_form(f: &MPoly, basis: &[MPoly], order: MonomialOrder) -> Result<MPoly> {
    for g in basis {
        f.check_ring(g)?;
    }
    let field = f.ring.field();
    let mut divisors = Vec::with_capacity(basis.len());
    for g in basis {
        let (lm, lc) = g.leading_term(order)?;
        divisors.push((lm, field.inv(lc)?, g));
    }
    // Work list keyed by the order so the maximum term is always last.
    let mut work: BTreeMap<(u32, [u16; MAX_VARS]), (Monomial, Felt)> = BTreeMap::new();
    let insert = |work: &mut BTreeMap<_, (Monomial, Felt)>, m: Monomial, c: Felt| {
        let key = order.sort_key(&m);
        match work.get_mut(&key) {
            Some(slot) => {
                slot.1 = field.add(slot.1, c);
                if slot.1.is_zero() {
                    work.remove(&key);
                }
            }
            None => {
                if !c.is_zero() {
                    work.insert(key, (m, c));
                }
            }
        }
    };
    for &(m, c) in &f.terms {
        insert(&mut work, m, c);
    }
    let mut rem: HashMap<Monomial, Felt> = HashMap::new();
    while let Some((_, (m, c))) = work.pop_last() {
        match divisors.iter().find(|(lm, _, _)| lm.divides(&m)) {
            Some((lm, lc_inv, g)) => {
                let shift = lm.quotient(&m).expect("divides");
                let factor = field.neg(field.mul(c, *lc_inv));
                for &(t, a) in &g.terms {
                    if t == *lm {
                        continue;
                    }
                    insert(&mut work, t.mul(&shift), field.mul(a, factor));
                }
            }
            None => {
                rem.insert(m, c);
            }
        }
    }
    Ok(MPoly::from_map(f.ring.clone(), rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: usize) -> PolyRing {
        PolyRing::new(Arc::new(FieldCtx::prime(p).unwrap()), n).unwrap()
    }

    #[test]
    fn frobenius_cube() {
        let r = ring(3, 6);
        let s = r.var(0).add(&r.var(1)).unwrap();
        assert_eq!(s.pow(3), r.parse("x1^3 + x2^3").unwrap());
    }

    #[test]
    fn add_mul_cancel() {
        let r = ring(13, 6);
        let x6 = r.var(5);
        let f = x6.mul(&x6).unwrap().add(&r.var(3).scale(Felt(2))).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x6^2 + 2*x4");
        let z = f.add(&f.neg()).unwrap();
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn evaluation_examples() {
        let r = ring(13, 6);
        let f = r.parse("x6^2 + 2*x4").unwrap();
        assert_eq!(f.evaluate(&[Felt(0); 6]).unwrap(), Felt(0));
        let r29 = ring(29, 6);
        let g = r29.parse("x6^2 - 9*x4").unwrap();
        let pt = [Felt(0), Felt(0), Felt(0), Felt(1), Felt(0), Felt(26)];
        assert_eq!(g.evaluate(&pt).unwrap(), Felt(0));
        assert!(g.evaluate(&pt[..5]).is_err());
    }

    #[test]
    fn leading_terms() {
        let r = ring(13, 6);
        let f = r.parse("x6^2 + 2*x4").unwrap();
        assert_eq!(f.leading_term(MonomialOrder::Grevlex).unwrap(), (Monomial::var_pow(5, 2), Felt(1)));
        let g = r.parse("x1 + x2").unwrap();
        assert_eq!(g.leading_term(MonomialOrder::Lex).unwrap(), (Monomial::var_pow(0, 1), Felt(1)));
        let h = r.parse("x4*x6 - 10*x2").unwrap();
        let lm = Monomial::var_pow(3, 1).mul(&Monomial::var_pow(5, 1));
        assert_eq!(h.leading_term(MonomialOrder::Grevlex).unwrap(), (lm, Felt(1)));
        assert_eq!(r.zero().leading_term(MonomialOrder::Grevlex), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn orders_differ_where_expected() {
        // x1*x3^2 vs x2^3: grlex and grevlex disagree, lex agrees with grlex.
        let a = Monomial::new(&[1, 0, 2]).unwrap();
        let b = Monomial::new(&[0, 3, 0]).unwrap();
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grlex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
        // lex is not degree compatible
        let c = Monomial::new(&[0, 5]).unwrap();
        assert_eq!(MonomialOrder::Lex.cmp(&Monomial::var_pow(0, 1), &c), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&Monomial::var_pow(0, 1), &c), Ordering::Less);
    }

    #[test]
    fn sort_key_matches_cmp() {
        let ms: Vec<Monomial> = [[0, 0, 1], [1, 1, 0], [2, 0, 0], [0, 2, 1], [1, 0, 2], [0, 0, 0]]
            .iter()
            .map(|e| Monomial::new(e).unwrap())
            .collect();
        for order in [MonomialOrder::Lex, MonomialOrder::Grlex, MonomialOrder::Grevlex] {
            for a in &ms {
                for b in &ms {
                    assert_eq!(order.cmp(a, b), order.sort_key(a).cmp(&order.sort_key(b)));
                }
            }
        }
    }

    #[test]
    fn division_examples() {
        let r = ring(13, 6);
        let x1sq = r.parse("x1^2").unwrap();
        assert!(normal_form(&x1sq, &[r.var(0)], MonomialOrder::Grevlex).unwrap().is_zero());
        let f = r.parse("x1^2 + x2").unwrap();
        assert_eq!(normal_form(&f, &[r.var(1)], MonomialOrder::Grevlex).unwrap(), x1sq);
    }

    #[test]
    fn ring_mismatch() {
        let a = ring(13, 6).var(0);
        let b = ring(11, 6).var(0);
        assert_eq!(a.add(&b).unwrap_err(), Error::RingMismatch);
        assert_eq!(a.mul(&b).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn parse_print() {
        let r = ring(19, 6);
        let s = "x6^3 + 3*x5^2 + 6*x4*x6 + 3*x2";
        let f = r.parse(s).unwrap();
        assert_eq!(f.to_string(), s);
        assert_eq!(r.parse("x4*x6 - 10*x2").unwrap().to_string(), "x4*x6 + 9*x2");
        assert_eq!(r.parse("-x1 − 2").unwrap().to_string(), "18*x1 + 17");
        assert_eq!(r.parse("0").unwrap().to_string(), "0");
        assert!(r.parse("x7").is_err());
        assert!(r.parse("x1 +").is_err());
        assert!(r.parse("").is_err());
        let f27 = PolyRing::new(Arc::new(FieldCtx::with_order(27).unwrap()), 6).unwrap();
        let g = f27.parse("e^5*x1 + 2*x2").unwrap();
        assert_eq!(f27.parse(&g.to_string()).unwrap(), g);
    }
}
