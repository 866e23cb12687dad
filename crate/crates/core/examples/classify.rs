//! Classification of permutation octics over a small field.
//!
//! Usage: `classify [q] [paper|generic]` (defaults 13, paper).

use octoperm::ppsearch::{classify_detailed, SearchMode};

fn main() -> octoperm::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(13);
    let mode: SearchMode = args.next().as_deref().unwrap_or("paper").parse()?;
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let result = classify_detailed(q, mode, threads)?;
    println!("q = {q}: {} search hits, {} classes", result.hits.len(), result.classes.len());
    for c in &result.classes {
        println!("  {}  orbit size {}", c.rep, c.size());
    }
    Ok(())
}
