//! Prints the character table of a small group together with its rational
//! classes, and checks the orthogonality relations exactly.
//!
//! Run with `cargo run --example character_table -- 'd2q?q=5'`.

use std::collections::BTreeMap;
use std::sync::Arc;

use jacdecomp::characters::{character_table, inner_product, rational_classes};
use jacdecomp::scenario::preset_group;

fn main() -> jacdecomp::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "d2q?q=3".to_string());
    let group = Arc::new(preset_group(&spec)?);
    let table = character_table(group.clone())?;
    println!("{spec}: order {}, {} classes, modular prime {}", group.order(), table.len(), table.prime());

    for (i, chi) in table.irreducibles().iter().enumerate() {
        let row: Vec<String> = chi.values().iter().map(|v| v.to_poly_string()).collect();
        println!("  chi_{} = [{}]", i + 1, row.join(", "));
    }

    // <chi_i, chi_j> is the Kronecker delta, computed over Q(zeta_e).
    for (i, a) in table.irreducibles().iter().enumerate() {
        for (j, b) in table.irreducibles().iter().enumerate() {
            let ip = inner_product(&group, a, b)?;
            assert_eq!(ip, jacdecomp::cyclotomic::rational_int((i == j) as i64));
        }
    }
    let sum_sq: u64 = table.degrees().iter().map(|d| d * d).sum();
    println!("sum of squared degrees {sum_sq} = |G| = {}", group.order());

    for (l, class) in rational_classes(&table, &BTreeMap::new())?.iter().enumerate() {
        println!(
            "  W_{}: characters {:?}, field degree {}, Schur index {}, dim W = {}",
            l + 1,
            class.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
            class.field_degree,
            class.schur_index,
            class.dim_w()
        );
    }
    Ok(())
}
