//! Hermite-criterion polynomials and the Hermite test on single octics.
//!
//! Usage: `hermite_polynomials [q]` (default 19).

use std::sync::Arc;

use octoperm::hermite::{hc, hc_restricted, hermite_check, HermiteSpec};
use octoperm::ppsearch::{is_pp_full, is_pp_wan};
use octoperm::{FieldCtx, NormalizedPoly};

fn main() -> octoperm::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(19);
    let field = Arc::new(FieldCtx::with_order(q)?);
    let spec = HermiteSpec::with_field(8, field.clone())?;
    for m in 1..=(q as u32 / 8 + 2) {
        let p = spec.hc(m)?;
        let shown = if p.num_terms() > 8 { format!("{} terms", p.num_terms()) } else { p.to_string() };
        println!("HC_8({q},{m}) = {shown}");
    }

    // Setting every coefficient but a4 to zero collapses the first
    // non-trivial condition to a multiple of x4 when q = 7 mod 8.
    for q7 in [71u64, 79, 103] {
        println!("q = {q7}: {}", hc_restricted(q7, q7 as u32 / 4 + 1, &[0, 1, 2, 4, 5])?);
    }
    println!("degree 5 over F_7, m = 2: {}", hc(5, 7, 2)?);

    for tuple in ["0,0,0,0,0,0", "0,0,0,0,0,1", "1,2,3,4,5,6"] {
        let f = NormalizedPoly::parse(field.clone(), tuple)?;
        println!("{f}: wan {} full {} hermite {}", is_pp_wan(&f), is_pp_full(&f), hermite_check(&f));
    }
    Ok(())
}
