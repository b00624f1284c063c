//! The dihedral group of order 4q acting with signature (0; 2, 2, 2, 2, 2q, 2q):
//! factor dimensions, quotient genera and the decomposition along
//! <s>, <sr>, <r>.
//!
//! Run with `cargo run --example dihedral_decomposition -- 5`.

use std::sync::Arc;

use jacdecomp::covering::{validate_action, CoveringAction};
use jacdecomp::decomposition::Decomposition;
use jacdecomp::group::{preset_dihedral, subgroup_generate};

fn main() -> jacdecomp::Result<()> {
    let q: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let group = Arc::new(preset_dihedral(q)?);
    let w = |s: &str| group.parse_word(s);
    let vector = vec![w("s")?, w("s")?, w("s*r")?, w("s*r")?, w("r")?, w("r^-1")?];
    let action = CoveringAction::spherical(group.clone(), vector)?;
    let certificate = validate_action(&action)?;
    println!("signature {}, genus {}", action.signature(), certificate.total_genus);

    let d = Decomposition::new(&action)?;
    println!("{}", d.statement());
    println!("dims {:?}, exponents {:?}", d.dims(), d.exponents());

    let hs = vec![
        subgroup_generate(&group, &[w("s")?])?,
        subgroup_generate(&group, &[w("s*r")?])?,
        subgroup_generate(&group, &[w("r")?])?,
    ];
    for h in &hs {
        let p = d.profile(h)?;
        println!("{}: genus {}, fixed dims {:?}, {}", p.label, p.genus, p.fixed_dims, p.statement);
    }
    let report = d.decompose(&hs)?;
    println!("{} (dim P = {}, full: {})", report.statement, report.dim_p, report.full);

    let h4 = subgroup_generate(&group, &[w(&format!("r^{q}"))?])?;
    let pair = [hs[0].clone(), h4];
    println!(
        "{{<s>, <r^{q}>}} admissible: acting group {}, join {}",
        d.check_admissible(&pair)?.verdict,
        d.check_admissible_in_join(&pair)?.verdict
    );
    Ok(())
}
