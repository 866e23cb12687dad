#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use octoperm::ppsearch::orbit;
use octoperm::{Felt, FieldCtx, NormalizedPoly};
use rand::Rng;

/// Seed for randomized tests; `OCTOPERM_SEED` (decimal or 0x hex) overrides `default`.
pub fn seed(default: u64) -> u64 {
    let Ok(raw) = std::env::var("OCTOPERM_SEED") else { return default };
    let parsed = match raw.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => raw.parse(),
    };
    let s = parsed.unwrap_or_else(|_| panic!("bad OCTOPERM_SEED {raw:?}"));
    eprintln!("using seed {s:#x}");
    s
}

/// Published tuples for `q`, one `a6,a5,a4,a3,a2,a1` per line. The `q = 23`
/// table lists `a4,a3,a2,a1` with `a6 = 0`, `a5 = 1`.
pub fn published(field: &Arc<FieldCtx>) -> Vec<NormalizedPoly> {
    let q = field.order();
    let path = format!("{}/tests/data/prop{q}.txt", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let line = if q == 23 { format!("0,1,{l}") } else { l.to_string() };
            NormalizedPoly::parse(field.clone(), &line).unwrap_or_else(|e| panic!("{line}: {e}"))
        })
        .collect()
}

pub fn orbit_union<'a>(polys: impl IntoIterator<Item = &'a NormalizedPoly>) -> BTreeSet<NormalizedPoly> {
    polys.into_iter().flat_map(orbit).collect()
}

pub fn random_elem(field: &FieldCtx, rng: &mut impl Rng) -> Felt {
    field.element(rng.gen_range(0..field.order())).unwrap()
}

pub fn random_nonzero(field: &FieldCtx, rng: &mut impl Rng) -> Felt {
    field.element(rng.gen_range(1..field.order())).unwrap()
}

pub fn random_octic(field: &Arc<FieldCtx>, rng: &mut impl Rng) -> NormalizedPoly {
    let a = std::array::from_fn(|_| random_elem(field, rng));
    NormalizedPoly::new(field.clone(), a).unwrap()
}

/// Plain univariate `[x^n : f^m]` by repeated multiplication.
pub fn univariate_power_coeffs(f: &NormalizedPoly, m: u32) -> Vec<Felt> {
    let field = f.field();
    let a = f.coeffs();
    let mut base = vec![Felt::ZERO; 9];
    base[8] = Felt::ONE;
    for i in 1..=6 {
        base[i] = a[i - 1];
    }
    let mut acc = vec![Felt::ONE];
    for _ in 0..m {
        let mut next = vec![Felt::ZERO; acc.len() + 8];
        for (i, &x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in base.iter().enumerate() {
                next[i + j] = field.add(next[i + j], field.mul(x, y));
            }
        }
        acc = next;
    }
    acc
}

/// Hermite test through univariate expansion.
pub fn hermite_by_expansion(f: &NormalizedPoly) -> bool {
    let field = f.field();
    let q = field.order() as usize;
    let sum_at = |m: u32| {
        let c = univariate_power_coeffs(f, m);
        let mut s = Felt::ZERO;
        let mut n = q - 1;
        while n < c.len() {
            s = field.add(s, c[n]);
            n += q - 1;
        }
        s
    };
    (1..=q as u32 - 2).all(|m| sum_at(m).is_zero()) && !sum_at(q as u32 - 1).is_zero()
}
