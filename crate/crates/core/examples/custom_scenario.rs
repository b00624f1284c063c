//! Loads a scenario file with explicit permutation generators and prints the
//! full text report, as the command line tool would.
//!
//! Run with `cargo run --example custom_scenario -- data/s3-generators.json`.

use jacdecomp::scenario::{render_text, run_command, Command, Request};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/s3-generators.json").to_string());
    let outcome = run_command(&Request::new(Command::Analyze, Some(&path)));
    if let Some(doc) = &outcome.document {
        print!("{}", render_text(doc));
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    std::process::exit(outcome.exit_code);
}
