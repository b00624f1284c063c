//! Enumerates admissible collections of subgroups for a preset scenario, up
//! to conjugacy, and keeps only those that split the Jacobian completely.
//!
//! Run with `cargo run --example admissible_search -- 'd2q?q=3' 3`.

use jacdecomp::decomposition::{Decomposition, SearchOptions};
use jacdecomp::scenario::{compile, load_scenario};

fn main() -> jacdecomp::Result<()> {
    let mut args = std::env::args().skip(1);
    let source = args.next().unwrap_or_else(|| "d2q?q=3".to_string());
    let max_t = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);

    let scenario = compile(&load_scenario(&source)?, None)?;
    let d = Decomposition::new(scenario.action()?)?;
    println!("{}: {}", scenario.file.name, d.statement());

    let results = d.search(&SearchOptions {
        max_t,
        require_full: true,
        dedupe_conjugates: true,
    })?;
    for r in &results {
        println!("  {{{}}} genera {:?}", r.subgroups.join(", "), r.genera);
    }
    println!("{} collections up to conjugacy with t <= {max_t}", results.len());
    Ok(())
}
