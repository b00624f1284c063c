//! Fiber products of hyperelliptic curves as Z_2^t actions, compared with the
//! closed genus and complement formulas. Also builds the plan that carries
//! several elliptic curves at once.
//!
//! Run with `cargo run --example fiber_product -- 1 2 3`.

use jacdecomp::decomposition::{cor3_plan, elliptic_genus_formula, fiber_product_action};

fn main() -> jacdecomp::Result<()> {
    let genera: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let genera = if genera.len() < 2 { vec![1, 1, 1] } else { genera };

    let plan = fiber_product_action(&genera)?;
    println!("inputs {:?}: signature {}", plan.genera, plan.action.signature());
    println!("  genus {} (closed formula {})", plan.genus, plan.predicted_genus);
    println!("  complement dim {} (closed formula {})", plan.dim_p, plan.predicted_dim_p);
    println!("  kernel genera {:?}, admissible {}", plan.subgroup_genera, plan.admissible);

    for t in 2..=6 {
        let plan = cor3_plan(t)?;
        println!(
            "{t} elliptic curves: inputs {:?}, genus {} (formula {}), complement {}",
            plan.genera,
            plan.genus,
            elliptic_genus_formula(t as u64)?,
            plan.dim_p
        );
    }
    Ok(())
}
