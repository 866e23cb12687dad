//! Finite fields `F_q`, `q = p^k` with `p` an odd prime.
//!
//! Elements are stored in canonical form as a single integer: a residue in
//! `[0, p)` for prime fields, and the base-`p` numeral `c0 + c1 p + ... +
//! c_{k-1} p^{k-1}` of the power-basis coordinates for extension fields.
//! Multiplication goes through discrete log tables built from a fixed
//! generator, so every field is limited to `q < 2^16`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Extension fields up to this order get a full addition table.
const ADD_TABLE_MAX: u32 = 1024;

/// Conway polynomials (coefficients low to high, monic) used as default
/// moduli. Each entry is re-checked for irreducibility at construction.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

/// An element of some [`FieldCtx`], in canonical encoding.
///
/// Equality is representation equality. The derived ordering is the fixed
/// element order used throughout the crate (the order of
/// [`FieldCtx::all_elements`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Felt(pub(crate) u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// The raw canonical encoding.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Description of `F_{p^k}` together with its arithmetic tables.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    gen: Felt,
    /// `exp[i] = gen^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("gen", &self.gen)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds `F_{p^k}`. When `modulus` is omitted for `k > 1` the Conway
/// polynomial is used where known, otherwise the first primitive polynomial in
/// lexicographic order.
pub fn make_field(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    FieldCtx::new(p, k, modulus)
}

impl FieldCtx {
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q >= MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let q = q as u32;

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let m = match modulus {
                Some(m) => m.to_vec(),
                None => default_modulus(p, k),
            };
            if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::BadModulus(k));
            }
            if !upoly::is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus(p));
            }
            m
        };

        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            gen: Felt::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        if k > 1 && q <= ADD_TABLE_MAX {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = ctx.add_digits(a, b) as u16;
                }
            }
            ctx.add_table = Some(table);
        }
        ctx.gen = ctx.find_generator();
        ctx.build_log_tables();
        Ok(ctx)
    }

    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_q` for an odd prime power `q`, with the default modulus.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        Self::new(p, k, None)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients low to high. For prime fields this is `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed multiplicative generator.
    #[inline]
    pub fn generator(&self) -> Felt {
        self.gen
    }

    #[inline]
    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    #[inline]
    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    #[inline]
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn from_u64(&self, n: u64) -> Felt {
        Felt((n % self.p as u64) as u32)
    }

    /// Element with the given power-basis coordinates (`c0, c1, ...`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Felt> {
        if coeffs.len() > self.k as usize {
            return Err(Error::LengthMismatch { expected: self.k as usize, got: coeffs.len() });
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::Parse(format!("coordinate {c} is not reduced mod {}", self.p)));
            }
            v = v * self.p + c;
        }
        Ok(Felt(v))
    }

    /// Power-basis coordinates of `a`, length `k`.
    pub fn coeffs(&self, a: Felt) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Element from its raw encoding, if in range.
    pub fn element(&self, raw: u32) -> Option<Felt> {
        (raw < self.q).then_some(Felt(raw))
    }

    /// True for elements of the prime subfield `F_p`.
    #[inline]
    pub fn in_prime_subfield(&self, a: Felt) -> bool {
        a.0 < self.p
    }

    #[inline]
    pub fn contains(&self, a: Felt) -> bool {
        a.0 < self.q
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.k == 1 {
            let s = a.0 + b.0;
            Felt(if s >= self.p { s - self.p } else { s })
        } else if let Some(t) = &self.add_table {
            Felt(t[(a.0 * self.q + b.0) as usize] as u32)
        } else {
            Felt(self.add_digits(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        if a.0 == 0 {
            return a;
        }
        if self.k == 1 {
            return Felt(self.p - a.0);
        }
        let (mut v, mut r, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.k {
            let c = v % self.p;
            v /= self.p;
            if c != 0 {
                r += (self.p - c) * place;
            }
            place *= self.p;
        }
        Felt(r)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        if self.k == 1 {
            Felt(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        if self.k == 1 {
            return Felt(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Felt(self.exp[i as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(Felt(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.0 == 0 {
            return Felt::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        let n = (l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        Felt(self.exp[n as usize])
    }

    /// `gen^n`.
    pub fn gen_pow(&self, n: u64) -> Felt {
        Felt(self.exp[(n % (self.q as u64 - 1)) as usize])
    }

    /// Discrete log to the base of the fixed generator.
    pub fn log(&self, a: Felt) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Felt) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q as u64 - 1;
        let l = self.log[a.0 as usize] as u64;
        Some(n / gcd(n, l))
    }

    /// All `q` elements: zero first, then ascending encoding (residue order for
    /// prime fields, base-`p` numeral order of the coordinates otherwise).
    pub fn all_elements(&self) -> Vec<Felt> {
        (0..self.q).map(Felt).collect()
    }

    /// Nonzero elements in the same order as [`all_elements`](Self::all_elements).
    pub fn nonzero_elements(&self) -> Vec<Felt> {
        (1..self.q).map(Felt).collect()
    }

    /// Decimal residue for prime fields; `0` or `e^n` otherwise.
    pub fn format(&self, a: Felt) -> String {
        if self.k == 1 || a.0 == 0 {
            a.0.to_string()
        } else {
            format!("e^{}", self.log[a.0 as usize])
        }
    }

    /// Coordinate-vector form `[c0,c1,...]`.
    pub fn format_vector(&self, a: Felt) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses an element. Accepted forms: an integer (reduced mod `p`), `e`,
    /// `e^n`, a coefficient-prefixed power such as `2e^3` or `2*e^3`, and the
    /// vector form `[c0,c1,...]`.
    pub fn parse(&self, s: &str) -> Result<Felt> {
        let s = s.trim();
        let err = || Error::Parse(format!("bad field element {s:?}"));
        if s.is_empty() {
            return Err(err());
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coords = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| err()))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coords);
        }
        let (neg, body) = match s.strip_prefix('-').or_else(|| s.strip_prefix('−')) {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let value = match body.find('e') {
            None => {
                let n: i64 = body.parse().map_err(|_| err())?;
                self.from_int(n)
            }
            Some(pos) => {
                if self.k == 1 {
                    return Err(err());
                }
                let coef = body[..pos].trim_end_matches('*').trim();
                let c = if coef.is_empty() {
                    Felt::ONE
                } else {
                    self.from_int(coef.parse::<i64>().map_err(|_| err())?)
                };
                let rest = &body[pos + 1..];
                let n: u64 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                };
                let e = self.element(self.p).ok_or_else(err)?;
                self.mul(c, self.pow(e, n))
            }
        };
        Ok(if neg { self.neg(value) } else { value })
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut r, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            let s = (a % self.p + b % self.p) % self.p;
            r += s * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        r
    }

    /// Multiplication without log tables; used while building them.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let ca = self.coeffs(Felt(a));
        let cb = self.coeffs(Felt(b));
        let prod = upoly::mul_mod(&ca, &cb, &self.modulus, self.p);
        self.from_coeffs(&prod).expect("reduced product").0
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> Felt {
        let n = (self.q - 1) as u64;
        let primes = prime_factors(n);
        let is_gen = |g: u32| primes.iter().all(|&r| self.pow_slow(g, n / r) != 1);
        // For extension fields prefer the residue of x.
        if self.k > 1 && is_gen(self.p) {
            return Felt(self.p);
        }
        let g = (2..self.q).find(|&g| is_gen(g)).unwrap_or(1);
        Felt(g)
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(n) {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, self.gen.0);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        self.exp = exp;
        self.log = log;
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    if let Some((_, _, m)) = CONWAY.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return m.to_vec();
    }
    // First primitive monic polynomial, coefficients compared from the top.
    let q = (p as u64).pow(k);
    let n = q - 1;
    let primes = prime_factors(n);
    for code in 0..q {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut v = code;
        let mut digits = Vec::with_capacity(k as usize);
        for _ in 0..k {
            digits.push((v % p as u64) as u32);
            v /= p as u64;
        }
        m.extend(digits);
        m.push(1);
        if m[0] == 0 || !upoly::is_irreducible(&m, p) {
            continue;
        }
        let x = {
            let mut x = vec![0u32; k as usize];
            x[1] = 1;
            x
        };
        let is_primitive = primes.iter().all(|&r| {
            let t = upoly::pow_mod(&x, n / r, &m, p);
            !(t[0] == 1 && t[1..].iter().all(|&c| c == 0))
        });
        if is_primitive {
            return m;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k` with `p` an odd prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 3 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1 && p != 2).then_some((p, k))
}

/// True for odd prime powers.
pub fn is_odd_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dense univariate polynomials over `F_p` (coefficients low to high), enough
/// for modulus validation.
mod upoly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo a monic `m`.
    fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let k = m.len() - 1;
        let mut r = a.to_vec();
        let lead_inv = inv_mod(m[k], p) as u64;
        let mut d = r.len();
        while d > k {
            d -= 1;
            let c = (r[d] as u64 * lead_inv % p as u64) as u32;
            if c != 0 {
                for t in 0..=k {
                    let idx = d - k + t;
                    r[idx] = ((r[idx] as u64 + (p - c) as u64 * m[t] as u64) % p as u64) as u32;
                }
            }
        }
        r.truncate(k);
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let mut r = rem(&prod, m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    pub fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let k = m.len() - 1;
        let mut acc = vec![0u32; k];
        acc[0] = 1;
        let mut base = a.to_vec();
        base.resize(k, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let inv = inv_mod(*b.last().unwrap(), p) as u64;
            let monic: Vec<u32> = b.iter().map(|&c| (c as u64 * inv % p as u64) as u32).collect();
            let r = trim(rem(&a, &monic, p));
            a = monic;
            b = r;
        }
        a
    }

    /// Rabin's test: `m` monic of degree `k` is irreducible iff
    /// `x^(p^k) = x mod m` and `gcd(x^(p^i) - x, m) = 1` for every `i <= k/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let k = m.len() - 1;
        if k == 1 {
            return true;
        }
        let mut x = vec![0u32; k];
        x[1] = 1;
        let mut frob = x.clone();
        for i in 1..=k {
            frob = pow_mod(&frob, p as u64, m, p);
            let mut diff = frob.clone();
            diff[1] = (diff[1] + p - 1) % p;
            if i == k {
                return trim(diff).is_empty();
            }
            if i <= k / 2 && gcd(m, &diff, p).len() != 1 {
                return false;
            }
        }
        unreachable!()
    }
}
