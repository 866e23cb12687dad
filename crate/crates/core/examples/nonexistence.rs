//! Non-existence certificates for larger fields.
//!
//! Usage: `nonexistence [q ...]` (default 41 47 71).

use std::time::Duration;

use octoperm::groebner::Budget;
use octoperm::nonexistence::{certify, replay, CertifyOptions};

fn main() -> octoperm::Result<()> {
    let mut qs: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if qs.is_empty() {
        qs = vec![41, 47, 71];
    }
    for q in qs {
        let cert = certify(q, CertifyOptions::with_budget(Duration::from_secs(600)))?;
        println!("{}", cert.to_json());
        if cert.is_conclusive() {
            println!("  replays: {}", replay(&cert, Budget::seconds(600))?);
        }
    }
    Ok(())
}
