//! Partition identities: for a partition of G into subgroups, the weighted
//! permutation characters and the Jacobian dimensions balance exactly.
//!
//! Run with `cargo run --example theorem_b_partition -- 3`.

use std::sync::Arc;

use jacdecomp::covering::CoveringAction;
use jacdecomp::decomposition::Decomposition;
use jacdecomp::group::{is_partition, preset_dihedral, subgroup_generate};

fn main() -> jacdecomp::Result<()> {
    let q: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let group = Arc::new(preset_dihedral(q)?);
    let w = |s: &str| group.parse_word(s);
    let vector = vec![w("s")?, w("s")?, w("s*r")?, w("s*r")?, w("r")?, w("r^-1")?];
    let d = Decomposition::new(&CoveringAction::spherical(group.clone(), vector)?)?;

    // the rotations together with every reflection subgroup
    let mut parts = vec![subgroup_generate(&group, &[w("r")?])?];
    for k in 0..2 * q {
        parts.push(subgroup_generate(&group, &[w(&format!("s*r^{k}"))?])?);
    }
    is_partition(&group, &parts).map_err(jacdecomp::Error::NotAPartition)?;

    let r = d.partition_identities(&parts)?;
    println!("{}", r.statement);
    println!("characters agree: {} ({:?})", r.character_identity, r.weighted_sum);
    println!("per-class: {:?}", r.class_identities);
    println!("dimensions: {} = {}", r.dimension_lhs, r.dimension_rhs);
    Ok(())
}
