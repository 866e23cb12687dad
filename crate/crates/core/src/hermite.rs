//! Hermite's criterion in coefficient form.
//!
//! For a normalized polynomial `f = x^d + a_{d-2} x^{d-2} + ... + a_1 x` the
//! coefficient of `x^n` in `f^m` is a sum of multinomial coefficients times
//! monomials in the `a_i`, over exponent tuples with
//! `sum (d-i) j_i = dm - n` and `sum j_i <= m`. Collecting those sums over
//! `n = w(q-1)` gives the polynomial `HC_d(q,m)` in `d-2` variables, whose
//! vanishing at `(a_1, ..., a_{d-2})` is the `m`-th Hermite condition.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Felt};
use crate::mpoly::{MPoly, Monomial, PolyRing, MAX_VARS};
use crate::ppsearch::NormalizedPoly;

/// Exact multinomial coefficient `m! / (j_1! ... j_r!)`, or zero when the
/// parts do not sum to `m`.
pub fn multinomial(parts: &[u32], m: u32) -> BigUint {
    let total: u64 = parts.iter().map(|&j| j as u64).sum();
    if total != m as u64 {
        return BigUint::zero();
    }
    // Product of binomials C(j_1 + ... + j_i, j_i).
    let mut acc = BigUint::one();
    let mut running = 0u32;
    for &j in parts {
        for t in 1..=j {
            acc *= running + t;
            acc /= t;
        }
        running += j;
    }
    acc
}

/// Multinomial coefficient reduced mod `p` via Lucas' theorem: the base-`p`
/// digits of the parts must add up to those of `m` without carries, and the
/// result is the product of the digit-wise multinomials.
pub fn multinomial_mod_p(parts: &[u32], m: u32, p: u32) -> u32 {
    let total: u64 = parts.iter().map(|&j| j as u64).sum();
    if total != m as u64 {
        return 0;
    }
    let p64 = p as u64;
    let mut fact = vec![1u64; p as usize];
    for i in 1..p as usize {
        fact[i] = fact[i - 1] * i as u64 % p64;
    }
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a % p64, p64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p64;
            }
            base = base * base % p64;
            e >>= 1;
        }
        acc
    };
    let mut rest: Vec<u32> = parts.to_vec();
    let mut mm = m;
    let mut acc = 1u64;
    while mm > 0 || rest.iter().any(|&j| j > 0) {
        let md = mm % p;
        let mut s = 0u32;
        let mut denom = 1u64;
        for j in rest.iter_mut() {
            let d = *j % p;
            s += d;
            denom = denom * fact[d as usize] % p64;
            *j /= p;
        }
        if s != md {
            return 0;
        }
        acc = acc * fact[md as usize] % p64 * inv(denom) % p64;
        mm /= p;
    }
    acc as u32
}

/// Degree `d` and field `F_q` for the Hermite polynomials `HC_d(q, m)`.
#[derive(Clone, Debug)]
pub struct HermiteSpec {
    d: u32,
    ring: PolyRing,
}

impl HermiteSpec {
    /// Uses the default modulus for `F_q`.
    pub fn new(d: u32, q: u64) -> Result<Self> {
        Self::with_field(d, Arc::new(FieldCtx::with_order(q)?))
    }

    pub fn with_field(d: u32, field: Arc<FieldCtx>) -> Result<Self> {
        if d < 3 || (d - 2) as usize > MAX_VARS {
            return Err(Error::Precondition(format!("degree {d} outside 3..={}", MAX_VARS + 2)));
        }
        if d % field.characteristic() == 0 {
            return Err(Error::Precondition(format!("gcd({d}, {}) != 1", field.order())));
        }
        let ring = PolyRing::new(field, (d - 2) as usize)?;
        Ok(HermiteSpec { d, ring })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> u32 {
        self.ring.field().order()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &FieldCtx {
        self.ring.field()
    }

    /// `HC_d(q, m)`.
    pub fn hc(&self, m: u32) -> Result<MPoly> {
        if m < 1 {
            return Err(Error::Precondition("m must be at least 1".into()));
        }
        if self.d == 8 {
            Ok(self.hc8_loops(m))
        } else {
            self.hc_restricted(m, &[])
        }
    }

    /// `HC_d(q, m)` with the listed variables (zero-based) set to zero,
    /// enumerating only tuples whose zeroed exponents vanish.
    pub fn hc_restricted(&self, m: u32, zeroed: &[usize]) -> Result<MPoly> {
        if m < 1 {
            return Err(Error::Precondition("m must be at least 1".into()));
        }
        let v = self.ring.nvars();
        if let Some(&bad) = zeroed.iter().find(|&&i| i >= v) {
            return Err(Error::Precondition(format!("variable index {bad} out of range")));
        }
        let free: Vec<bool> = (0..v).map(|i| !zeroed.contains(&i)).collect();
        let field = self.ring.field();
        let d = self.d;
        let step = self.q() - 1;
        let mut terms = Vec::new();
        let mut js = vec![0u32; v];
        let mut n = step;
        while n <= d * m {
            let u = d * m - n;
            enumerate_tuples(d, u, m, &free, 0, &mut js, &mut |js| {
                let c = exact_coeff(js, m, field);
                if !c.is_zero() {
                    terms.push((monomial_of(js), c));
                }
            });
            n += step;
        }
        Ok(self.ring.from_terms(terms))
    }

    /// Algorithm-1 shaped enumeration for `d = 8`: loop over `n = w(q-1)`, then
    /// `j1, ..., j5` with `j6` determined by parity.
    fn hc8_loops(&self, m: u32) -> MPoly {
        let field = self.ring.field();
        let q = self.q();
        let mut terms = Vec::new();
        let mut n = q - 1;
        while n <= 8 * m {
            let u = 8 * m - n;
            for j1 in 0..=u / 7 {
                let u1 = u - 7 * j1;
                for j2 in 0..=u1 / 6 {
                    let u2 = u1 - 6 * j2;
                    for j3 in 0..=u2 / 5 {
                        let u3 = u2 - 5 * j3;
                        for j4 in 0..=u3 / 4 {
                            let u4 = u3 - 4 * j4;
                            for j5 in 0..=u4 / 3 {
                                let rest = u4 - 3 * j5;
                                if rest % 2 == 1 {
                                    continue;
                                }
                                let j6 = rest / 2;
                                let js = [j1, j2, j3, j4, j5, j6];
                                if js.iter().sum::<u32>() > m {
                                    continue;
                                }
                                let c = exact_coeff(&js, m, field);
                                if !c.is_zero() {
                                    terms.push((monomial_of(&js), c));
                                }
                            }
                        }
                    }
                }
            }
            n += q - 1;
        }
        self.ring.from_terms(terms)
    }
}

/// Convenience wrapper: `HC_d(q, m)` over `F_q` with its default modulus.
pub fn hc(d: u32, q: u64, m: u32) -> Result<MPoly> {
    HermiteSpec::new(d, q)?.hc(m)
}

/// `HC_8(q, m)` with the listed variables (zero-based) set to zero.
pub fn hc_restricted(q: u64, m: u32, zeroed: &[usize]) -> Result<MPoly> {
    HermiteSpec::new(8, q)?.hc_restricted(m, zeroed)
}

fn monomial_of(js: &[u32]) -> Monomial {
    Monomial::new(js).expect("at most MAX_VARS exponents")
}

fn exact_coeff(js: &[u32], m: u32, field: &FieldCtx) -> Felt {
    let s: u32 = js.iter().sum();
    let mut parts = js.to_vec();
    parts.push(m - s);
    let c = multinomial(&parts, m) % BigUint::from(field.characteristic());
    field.from_u64(c.to_u64().expect("residue fits"))
}

/// Visits every `(j_1, ..., j_v)` with `sum (d-i) j_i = u`, `sum j_i <= m`,
/// `j_i = 0` where `free[i-1]` is false. Outer loops run over `j_1` first.
fn enumerate_tuples(
    d: u32,
    u: u32,
    m: u32,
    free: &[bool],
    i: usize,
    js: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    let v = free.len();
    if i == v {
        if u == 0 && js.iter().sum::<u32>() <= m {
            visit(js);
        }
        return;
    }
    let weight = d - (i as u32 + 1);
    let used: u32 = js[..i].iter().sum();
    if used > m {
        return;
    }
    let max = if free[i] { (u / weight).min(m - used) } else { 0 };
    for j in 0..=max {
        js[i] = j;
        enumerate_tuples(d, u - weight * j, m, free, i + 1, js, visit);
    }
    js[i] = 0;
}

/// `[x^n : f^m]` for normalized `f` of degree 8, via the multinomial sum.
/// Returns zero when `n > 8m`.
pub fn coeff_of_power(f: &NormalizedPoly, m: u32, n: u32) -> Felt {
    let field = f.field();
    let table = PowerTable::new(field, f.coeffs(), m);
    coeff_with_table(field, 8, &table, m, n)
}

/// Powers `a_i^j` for `0 <= j <= max`.
struct PowerTable {
    stride: usize,
    pows: Vec<Felt>,
}

impl PowerTable {
    fn new(field: &FieldCtx, coeffs: &[Felt], max: u32) -> Self {
        let stride = max as usize + 1;
        let mut pows = Vec::with_capacity(coeffs.len() * stride);
        for &a in coeffs {
            let mut cur = Felt::ONE;
            for _ in 0..stride {
                pows.push(cur);
                cur = field.mul(cur, a);
            }
        }
        PowerTable { stride, pows }
    }

    #[inline]
    fn get(&self, i: usize, j: u32) -> Felt {
        self.pows[i * self.stride + j as usize]
    }
}

fn coeff_with_table(field: &FieldCtx, d: u32, table: &PowerTable, m: u32, n: u32) -> Felt {
    if n > d * m {
        return Felt::ZERO;
    }
    let v = (d - 2) as usize;
    let free = vec![true; v];
    let mut js = vec![0u32; v];
    let mut sum = Felt::ZERO;
    let p = field.characteristic();
    enumerate_tuples(d, d * m - n, m, &free, 0, &mut js, &mut |js| {
        let s: u32 = js.iter().sum();
        let mut parts = js.to_vec();
        parts.push(m - s);
        let c = multinomial_mod_p(&parts, m, p);
        if c == 0 {
            return;
        }
        let mut t = field.from_u64(c as u64);
        for (i, &j) in js.iter().enumerate() {
            if j > 0 {
                t = field.mul(t, table.get(i, j));
            }
        }
        sum = field.add(sum, t);
    });
    sum
}

/// The `m`-th Hermite sum `sum_w [x^{w(q-1)} : f^m]`.
pub fn hermite_sum(f: &NormalizedPoly, m: u32) -> Felt {
    let field = f.field();
    let q = field.order();
    let table = PowerTable::new(field, f.coeffs(), m);
    let mut sum = Felt::ZERO;
    for w in 1..=(8 * m) / (q - 1) {
        sum = field.add(sum, coeff_with_table(field, 8, &table, m, w * (q - 1)));
    }
    sum
}

/// Hermite's criterion: the sums vanish for `1 <= m <= q-2` and not for
/// `m = q-1`. Stops at the first failing `m`.
pub fn hermite_check(f: &NormalizedPoly) -> bool {
    let q = f.field().order();
    for m in 1..=q - 2 {
        if !hermite_sum(f, m).is_zero() {
            return false;
        }
    }
    !hermite_sum(f, q - 1).is_zero()
}

/// All `HC_8(q, m)`, `1 <= m <= q-1`, precomputed for repeated evaluation.
pub struct HermiteSystem {
    field: Arc<FieldCtx>,
    /// Per `m`: terms as (exponents, coefficient).
    polys: Vec<Vec<([u32; 6], Felt)>>,
}

impl HermiteSystem {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self> {
        let spec = HermiteSpec::with_field(8, field.clone())?;
        let q = field.order();
        let mut polys = Vec::with_capacity(q as usize - 1);
        for m in 1..q {
            let poly = spec.hc(m)?;
            polys.push(
                poly.terms()
                    .iter()
                    .map(|(mono, c)| {
                        let mut e = [0u32; 6];
                        for (i, slot) in e.iter_mut().enumerate() {
                            *slot = mono.exp(i);
                        }
                        (e, *c)
                    })
                    .collect(),
            );
        }
        Ok(HermiteSystem { field, polys })
    }

    /// `HC_8(q, m)` evaluated at `(a_1, ..., a_6)`.
    pub fn eval(&self, m: u32, a: &[Felt; 6]) -> Felt {
        let field = &*self.field;
        let mut sum = Felt::ZERO;
        for (e, c) in &self.polys[m as usize - 1] {
            let mut t = *c;
            for i in 0..6 {
                if e[i] > 0 {
                    t = field.mul(t, field.pow(a[i], e[i] as u64));
                }
            }
            sum = field.add(sum, t);
        }
        sum
    }

    /// Hermite's criterion through the precomputed polynomials.
    pub fn check(&self, a: &[Felt; 6]) -> bool {
        let q = self.field.order();
        (1..=q - 2).all(|m| self.eval(m, a).is_zero()) && !self.eval(q - 1, a).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * i)
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&[1, 1], 2), BigUint::from(2u32));
        assert_eq!(multinomial(&[0, 0, 0], 0), BigUint::one());
        // 6!/(2! 3! 1!) computed directly
        let direct = factorial(6) / (factorial(2) * factorial(3) * factorial(1));
        assert_eq!(direct, BigUint::from(60u32));
        assert_eq!(multinomial(&[2, 3, 1], 6), direct);
        assert_eq!(multinomial(&[2, 3], 6), BigUint::zero());
    }

    #[test]
    fn lucas_agrees_with_exact() {
        for p in [3u32, 5, 7, 11, 13] {
            for m in 0..40u32 {
                for a in 0..=m {
                    for b in 0..=m - a {
                        let parts = [a, b, m - a - b];
                        let exact = multinomial(&parts, m) % BigUint::from(p);
                        assert_eq!(exact.to_u32().unwrap(), multinomial_mod_p(&parts, m, p));
                    }
                }
            }
        }
    }

    #[test]
    fn paper_hc_polynomials() {
        assert_eq!(hc(8, 13, 2).unwrap().to_string(), "x6^2 + 2*x4");
        assert_eq!(hc(8, 11, 2).unwrap().to_string(), "x5^2 + 2*x4*x6 + 2*x2");
        assert_eq!(hc(8, 19, 3).unwrap().to_string(), "x6^3 + 3*x5^2 + 6*x4*x6 + 3*x2");
        assert_eq!(hc(8, 27, 4).unwrap().to_string(), "x6^3 + x2");
        assert!(hc(8, 17, 2).unwrap().is_one());
        assert!(hc(8, 19, 2).unwrap().is_zero());
    }

    #[test]
    fn generic_enumeration_matches_loops() {
        for q in [11u64, 13, 19, 23, 27, 29, 31, 37] {
            let spec = HermiteSpec::new(8, q).unwrap();
            for m in 1..q as u32 {
                assert_eq!(spec.hc(m).unwrap(), spec.hc_restricted(m, &[]).unwrap(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn restriction_equals_substitution() {
        let spec = HermiteSpec::new(8, 43).unwrap();
        for m in 6..12 {
            let full = spec.hc(m).unwrap();
            for zeroed in [vec![0, 2, 4], vec![0, 1, 2, 4, 5], vec![]] {
                assert_eq!(spec.hc_restricted(m, &zeroed).unwrap(), full.zero_vars(&zeroed));
            }
        }
        let r = hc_restricted(27, 4, &[0, 2, 4]).unwrap();
        assert_eq!(r.to_string(), "x6^3 + x2");
    }

    #[test]
    fn q7_restricted_identity_small() {
        for q in [71u64, 79, 103] {
            let m = (q / 4 + 1) as u32;
            let r = hc_restricted(q, m, &[0, 1, 2, 4, 5]).unwrap();
            assert_eq!(r.to_string(), format!("{}*x4", (q + 1) / 4 % q));
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(HermiteSpec::new(8, 2u64.pow(4)).is_err());
        assert!(HermiteSpec::new(9, 27).is_err());
        assert!(HermiteSpec::new(8, 13).unwrap().hc(0).is_err());
        assert!(hc_restricted(13, 2, &[6]).is_err());
    }

    #[test]
    fn generic_degree() {
        // d = 5 over F_7: q = 7 = 5 + 2, HC_5(7, 2) from the definition.
        let spec = HermiteSpec::new(5, 7).unwrap();
        let p = spec.hc(2).unwrap();
        // u = 10 - 6 = 4: j3 = 2 -> C(2;2,0) = 1 and j2 = ... weight 3 no; j1 weight 4 -> C(2;1,1) = 2
        assert_eq!(p.to_string(), "x3^2 + 2*x1");
    }
}
