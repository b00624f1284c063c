//! Pairs of subgroups and Prym varieties on the dihedral genus 11 example:
//! every pair decomposition has a non-negative complement.

use jacdecomp::decomposition::Decomposition;
use jacdecomp::group::enumerate_subgroups;
use jacdecomp::scenario::{compile, preset_scenario};

fn main() -> jacdecomp::Result<()> {
    let scenario = compile(&preset_scenario("d2q?q=3")?, None)?;
    let d = Decomposition::new(scenario.action()?)?;
    let subgroups = enumerate_subgroups(&scenario.group)?;

    let mut smallest = u64::MAX;
    for (i, a) in subgroups.iter().enumerate() {
        for b in &subgroups[i..] {
            let r = d.pair_decomposition(a, b)?;
            smallest = smallest.min(r.dim_p);
        }
    }
    println!("{} subgroups, smallest pair complement {smallest}", subgroups.len());

    let main = &scenario.collection("main")?.subgroups;
    let r = d.pair_decomposition(&main[0], &main[1])?;
    println!("{} with dim P = {}", r.statement, r.dim_p);
    for k in 0..main.len() {
        let p = d.prym_containment(main, k)?;
        println!(
            "Prym of C -> C/{}: dim {}, other quotients {}, contained {}",
            p.subgroup, p.prym_dim, p.others_genus, p.holds
        );
    }
    Ok(())
}
