//! Certificates that no permutation polynomial of degree 8 exists over
//! `F_q` for odd `q > 31`.
//!
//! Every certificate records the steps that led to its conclusion so that
//! [`replay`] can redo them from scratch.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_odd_prime_power, FieldCtx, Felt};
use crate::groebner::{buchberger_with, with_field_equations, Budget, GroebnerBasis, Strategy};
use crate::hermite::{hc_restricted, HermiteSpec};
use crate::mpoly::{MPoly, Monomial, MonomialOrder};
use crate::ppsearch::{is_pp_full, NormalizedPoly};

/// Above this order, degree-8 permutation polynomials over odd-order fields
/// are excluded by the Carlitz–Wan bound.
pub const CARLITZ_WAN_BOUND: u32 = 919;

/// Smallest order handled by [`certify`]; smaller fields do carry degree-8
/// permutation polynomials.
pub const MIN_ORDER: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "hermite-unit")]
    HermiteUnit,
    #[serde(rename = "variety-empty")]
    VarietyEmpty,
    #[serde(rename = "variety-zero-only")]
    VarietyZeroOnly,
    #[serde(rename = "q7-argument")]
    Q7Argument,
    #[serde(rename = "q35-restricted-argument")]
    Q35RestrictedArgument,
    #[serde(rename = "carlitz-wan-bound")]
    CarlitzWanBound,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::HermiteUnit => "hermite-unit",
            Method::VarietyEmpty => "variety-empty",
            Method::VarietyZeroOnly => "variety-zero-only",
            Method::Q7Argument => "q7-argument",
            Method::Q35RestrictedArgument => "q35-restricted-argument",
            Method::CarlitzWanBound => "carlitz-wan-bound",
            Method::Inconclusive => "inconclusive",
        }
    }
}

/// Method-specific evidence. Absent fields are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// `m` with `HC_8(q, m) = 1`, or the index of the restricted condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Inclusive range of `m` whose Hermite polynomials generate the ideal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hc_range: Option<(u32, u32)>,
    /// Variables shown to lie in the ideal plus field equations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    /// Size of the reduced Gröbner basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_size: Option<usize>,
    /// The restricted Hermite polynomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted: Option<String>,
    /// Variables in the enlarged ideal of the restricted argument.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_members: Option<Vec<String>>,
    /// Whether the restricted ideal turned out to be the unit ideal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_unit: Option<bool>,
    /// Result of the exhaustive check that `x^8` permutes `F_q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x8_is_pp: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonexistenceCertificate {
    pub q: u32,
    pub method: Method,
    pub witness: Witness,
    /// Wall-clock seconds.
    pub budget_spent: f64,
}

impl NonexistenceCertificate {
    pub fn is_conclusive(&self) -> bool {
        self.method != Method::Inconclusive
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Tuning for [`certify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Total wall-clock budget for the certificate.
    pub budget: Duration,
    /// Number of Hermite polynomials; `None` uses [`default_k`].
    pub k: Option<u32>,
    /// Largest `k` tried when the starting value is not enough.
    pub k_cap: u32,
    /// Pair selection for the Gröbner runs.
    pub strategy: Strategy,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { budget: Duration::from_secs(1800), k: None, k_cap: 24, strategy: Strategy::Sugar }
    }
}

impl CertifyOptions {
    pub fn with_budget(budget: Duration) -> Self {
        CertifyOptions { budget, ..Default::default() }
    }
}

/// Number of consecutive Hermite polynomials used by default for `q`.
pub fn default_k(q: u32) -> u32 {
    match q {
        37 => 8,
        125 => 9,
        243 => 19,
        _ => 7,
    }
}

/// First index whose Hermite polynomial can be nonconstant: `floor(q/8) + 1`.
pub fn first_index(q: u32) -> u32 {
    q / 8 + 1
}

/// Nonzero `HC_8(q, m)` for `m` in `lo..=hi`.
pub fn hermite_ideal(field: &Arc<FieldCtx>, lo: u32, hi: u32) -> Result<Vec<MPoly>> {
    let spec = HermiteSpec::with_field(8, field.clone())?;
    let mut out = Vec::new();
    for m in lo..=hi.min(field.order() - 2) {
        let p = spec.hc(m)?;
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

fn var_name(i: usize) -> String {
    format!("x{}", i + 1)
}

fn parse_var(s: &str) -> Result<usize> {
    s.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| (1..=6).contains(&i))
        .map(|i| i - 1)
        .ok_or_else(|| Error::Parse(format!("bad variable {s:?}")))
}

fn x8_is_pp(field: &Arc<FieldCtx>) -> bool {
    is_pp_full(&NormalizedPoly::new(field.clone(), [Felt::ZERO; 6]).expect("zero tuple"))
}

fn members(gb: &GroebnerBasis) -> Result<Vec<usize>> {
    let ring = gb.ring();
    let mut out = Vec::new();
    for i in 0..ring.nvars() {
        if gb.contains(&ring.var(i))? {
            out.push(i);
        }
    }
    Ok(out)
}

struct Clock {
    start: Instant,
    limit: Duration,
}

impl Clock {
    fn budget(&self) -> Budget {
        Budget { max_time: Some(self.limit.saturating_sub(self.start.elapsed())), max_pairs: None }
    }

    fn spent(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

/// `(restricted polynomial, nonzero coefficient c)` when it equals `c * x4`.
fn q7_restriction(q: u32) -> Result<(MPoly, Option<Felt>)> {
    let m = q / 4 + 1;
    let p = hc_restricted(q as u64, m, &[0, 1, 2, 4, 5])?;
    let x4 = Monomial::var_pow(3, 1);
    let c = match p.terms() {
        [(mono, c)] if *mono == x4 => Some(*c),
        _ => None,
    };
    Ok((p, c))
}

fn q35_ideal(field: &Arc<FieldCtx>, base: &[MPoly]) -> Result<(Vec<MPoly>, MPoly)> {
    let q = field.order();
    let restricted = hc_restricted(q as u64, q / 4 + 1, &[0, 2, 4])?;
    let ring = restricted.ring().clone();
    let mut gens = base.to_vec();
    gens.extend([0, 2, 4].iter().map(|&i| ring.var(i)));
    if !restricted.is_zero() {
        gens.push(restricted.clone());
    }
    Ok((with_field_equations(&gens)?, restricted))
}

fn check_order(q: u32) -> Result<()> {
    if q % 2 == 0 {
        return Err(Error::EvenCharacteristic(q as u64));
    }
    if q < MIN_ORDER || !is_odd_prime_power(q as u64) {
        return Err(Error::UnsupportedOrder(q as u64));
    }
    Ok(())
}

/// Certifies that no degree-8 permutation polynomial exists over `F_q`.
pub fn certify(q: u32, opts: CertifyOptions) -> Result<NonexistenceCertificate> {
    check_order(q)?;
    let clock = Clock { start: Instant::now(), limit: opts.budget };
    let done = |method, witness| Ok(NonexistenceCertificate { q, method, witness, budget_spent: clock.spent() });

    if q > CARLITZ_WAN_BOUND {
        return done(Method::CarlitzWanBound, Witness { bound: Some(CARLITZ_WAN_BOUND), ..Default::default() });
    }
    let field = Arc::new(FieldCtx::with_order(q as u64)?);
    if q % 8 == 1 {
        let m = (q - 1) / 8;
        if HermiteSpec::with_field(8, field.clone())?.hc(m)?.is_one() {
            return done(Method::HermiteUnit, Witness { m: Some(m), ..Default::default() });
        }
    }

    let lo = first_index(q);
    let mut k = opts.k.unwrap_or_else(|| default_k(q)).max(1);
    let mut last;
    loop {
        let hi = lo + k - 1;
        match attempt(&field, lo, hi, &clock, opts.strategy) {
            Ok(Some((method, w))) => return done(method, w),
            Ok(None) => {
                last = Witness {
                    hc_range: Some((lo, hi)),
                    reason: Some(format!("k = {k} leaves candidates other than x^8")),
                    ..Default::default()
                };
            }
            Err(Error::Inconclusive(why)) => {
                return done(
                    Method::Inconclusive,
                    Witness { hc_range: Some((lo, hi)), reason: Some(why), ..Default::default() },
                );
            }
            Err(e) => return Err(e),
        }
        if k >= opts.k_cap || hi >= q - 2 {
            return done(Method::Inconclusive, last);
        }
        k += 1;
    }
}

/// One pass with a fixed generator range. `Ok(None)` means the basis was too
/// weak to conclude.
fn attempt(
    field: &Arc<FieldCtx>,
    lo: u32,
    hi: u32,
    clock: &Clock,
    strategy: Strategy,
) -> Result<Option<(Method, Witness)>> {
    let q = field.order();
    let base = hermite_ideal(field, lo, hi)?;
    if base.is_empty() {
        return Ok(None);
    }
    let gb = buchberger_with(&with_field_equations(&base)?, MonomialOrder::Grevlex, clock.budget(), strategy)?;
    let mut w = Witness { hc_range: Some((lo, hi)), basis_size: Some(gb.gens().len()), ..Default::default() };
    if gb.contains_one() {
        return Ok(Some((Method::VarietyEmpty, w)));
    }
    let mem = members(&gb)?;
    w.members = Some(mem.iter().map(|&i| var_name(i)).collect());
    let has = |vars: &[usize]| vars.iter().all(|v| mem.contains(v));

    if has(&[0, 1, 2, 3, 4, 5]) {
        w.x8_is_pp = Some(x8_is_pp(field));
        return Ok((w.x8_is_pp == Some(false)).then_some((Method::VarietyZeroOnly, w)));
    }
    if q % 8 == 7 && has(&[0, 1, 2, 4, 5]) {
        let (p, c) = q7_restriction(q)?;
        w.m = Some(q / 4 + 1);
        w.restricted = Some(p.to_string());
        if c.is_none() {
            return Ok(None);
        }
        w.x8_is_pp = Some(x8_is_pp(field));
        return Ok((w.x8_is_pp == Some(false)).then_some((Method::Q7Argument, w)));
    }
    if matches!(q % 8, 3 | 5) && has(&[0, 2, 4]) {
        let (gens, restricted) = q35_ideal(field, &base)?;
        w.m = Some(q / 4 + 1);
        w.restricted = Some(restricted.to_string());
        let gb2 = buchberger_with(&gens, MonomialOrder::Grevlex, clock.budget(), strategy)?;
        let unit = gb2.contains_one();
        w.restricted_unit = Some(unit);
        if !unit {
            let mem2 = members(&gb2)?;
            w.restricted_members = Some(mem2.iter().map(|&i| var_name(i)).collect());
            if mem2.len() < 6 {
                return Ok(None);
            }
        }
        w.x8_is_pp = Some(x8_is_pp(field));
        return Ok((w.x8_is_pp == Some(false)).then_some((Method::Q35RestrictedArgument, w)));
    }
    Ok(None)
}

/// Re-derives a certificate's conclusion from its witness. Returns `false`
/// when any step fails to reproduce, and for inconclusive certificates.
/// Gröbner steps are recomputed with the normal strategy, so a replay does
/// not retrace the original run.
pub fn replay(cert: &NonexistenceCertificate, budget: Budget) -> Result<bool> {
    let q = cert.q;
    check_order(q)?;
    let w = &cert.witness;
    if cert.method == Method::Inconclusive {
        return Ok(false);
    }
    if cert.method == Method::CarlitzWanBound {
        return Ok(w.bound == Some(CARLITZ_WAN_BOUND) && q > CARLITZ_WAN_BOUND);
    }
    let field = Arc::new(FieldCtx::with_order(q as u64)?);
    if cert.method == Method::HermiteUnit {
        let m = w.m.ok_or_else(|| Error::Parse("missing m".into()))?;
        return Ok(m >= 1 && m <= q - 2 && HermiteSpec::with_field(8, field)?.hc(m)?.is_one());
    }
    let (lo, hi) = w.hc_range.ok_or_else(|| Error::Parse("missing hc_range".into()))?;
    let base = hermite_ideal(&field, lo, hi)?;
    if base.is_empty() {
        return Ok(false);
    }
    let gb = buchberger_with(&with_field_equations(&base)?, MonomialOrder::Grevlex, budget, Strategy::Normal)?;
    if cert.method == Method::VarietyEmpty {
        return Ok(gb.contains_one());
    }
    let claimed: Vec<usize> =
        w.members.iter().flatten().map(|s| parse_var(s)).collect::<Result<_>>()?;
    let ring = gb.ring();
    for &i in &claimed {
        if !gb.contains(&ring.var(i))? {
            return Ok(false);
        }
    }
    let has = |vars: &[usize]| vars.iter().all(|v| claimed.contains(v));
    let not_pp = !x8_is_pp(&field);
    match cert.method {
        Method::VarietyZeroOnly => Ok(has(&[0, 1, 2, 3, 4, 5]) && not_pp),
        Method::Q7Argument => {
            let (_, c) = q7_restriction(q)?;
            Ok(q % 8 == 7 && has(&[0, 1, 2, 4, 5]) && c.is_some() && not_pp)
        }
        Method::Q35RestrictedArgument => {
            if !(matches!(q % 8, 3 | 5) && has(&[0, 2, 4])) {
                return Ok(false);
            }
            let (gens, _) = q35_ideal(&field, &base)?;
            let gb2 = buchberger_with(&gens, MonomialOrder::Grevlex, budget, Strategy::Normal)?;
            if gb2.contains_one() {
                return Ok(not_pp);
            }
            let r = gb2.ring();
            for i in 0..6 {
                if !gb2.contains(&r.var(i))? {
                    return Ok(false);
                }
            }
            Ok(not_pp)
        }
        _ => unreachable!("handled above"),
    }
}

/// Odd prime powers in `lo..=hi`.
pub fn odd_prime_powers(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&q| is_odd_prime_power(q as u64)).collect()
}

/// Certificates for every odd prime power in `lo..=hi`, ordered by `q`.
pub fn sweep(lo: u32, hi: u32, opts: CertifyOptions, threads: usize) -> Result<Vec<NonexistenceCertificate>> {
    if lo < MIN_ORDER || lo > hi {
        return Err(Error::Precondition(format!("invalid range {lo}..{hi}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    pool.install(|| odd_prime_powers(lo, hi).into_par_iter().map(|q| certify(q, opts)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_unit_cases() {
        for q in [41u32, 73, 81, 89] {
            let c = certify(q, CertifyOptions::default()).unwrap();
            assert_eq!(c.method, Method::HermiteUnit, "{q}");
            assert_eq!(c.witness.m, Some((q - 1) / 8));
            assert!(replay(&c, Budget::UNLIMITED).unwrap());
        }
    }

    #[test]
    fn rejects_small_or_even_orders() {
        assert!(certify(31, CertifyOptions::default()).is_err());
        assert!(certify(64, CertifyOptions::default()).is_err());
        assert!(certify(45, CertifyOptions::default()).is_err());
    }

    #[test]
    fn large_orders_use_the_bound() {
        let c = certify(929, CertifyOptions::default()).unwrap();
        assert_eq!(c.method, Method::CarlitzWanBound);
        assert!(replay(&c, Budget::UNLIMITED).unwrap());
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = certify(47, CertifyOptions::default()).unwrap();
        assert_eq!(c.method, Method::VarietyZeroOnly);
        let json = c.to_json();
        assert!(json.contains("\"method\":\"variety-zero-only\""));
        assert_eq!(NonexistenceCertificate::from_json(&json).unwrap(), c);
    }

    #[test]
    fn tampered_witness_fails_replay() {
        let mut c = certify(47, CertifyOptions::default()).unwrap();
        c.method = Method::VarietyEmpty;
        assert!(!replay(&c, Budget::UNLIMITED).unwrap());
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let c = certify(43, CertifyOptions::with_budget(Duration::from_millis(1))).unwrap();
        assert_eq!(c.method, Method::Inconclusive);
        assert!(c.witness.reason.is_some());
        assert!(!replay(&c, Budget::UNLIMITED).unwrap());
    }
}
