//! Reduced Gröbner bases and F_q-point questions.

use std::sync::Arc;

use octoperm::groebner::{buchberger, empty_over_fq, membership, Budget};
use octoperm::nonexistence::hermite_ideal;
use octoperm::{FieldCtx, MonomialOrder, PolyRing};

fn main() -> octoperm::Result<()> {
    let ring = PolyRing::new(Arc::new(FieldCtx::prime(101)?), 3)?;
    let cyclic = ["x1 + x2 + x3", "x1*x2 + x2*x3 + x1*x3", "x1*x2*x3 - 1"]
        .iter()
        .map(|s| ring.parse(s))
        .collect::<octoperm::Result<Vec<_>>>()?;
    let gb = buchberger(&cyclic, MonomialOrder::Lex, Budget::UNLIMITED)?;
    println!("lex basis of cyclic-3 over F_101:");
    for g in gb.gens() {
        println!("  {g}");
    }
    gb.audit().expect("Gröbner property");

    let r11 = PolyRing::new(Arc::new(FieldCtx::prime(11)?), 2)?;
    let no_root = r11.parse("x1^2 + 1")?;
    println!("x1^2 + 1 has no zero in F_11: {}", empty_over_fq(&[no_root], Budget::UNLIMITED)?);

    // Over F_47 the Hermite conditions with m = 6..12 force every coefficient to vanish.
    let f47 = Arc::new(FieldCtx::prime(47)?);
    let gens = hermite_ideal(&f47, 6, 12)?;
    let ring47 = gens[0].ring().clone();
    for i in 0..6 {
        let x = ring47.var(i);
        println!("x{} in the ideal: {}", i + 1, membership(&x, &gens, true, Budget::seconds(120))?);
    }
    Ok(())
}
