#![allow(dead_code)]

use std::sync::Arc;

use jacdecomp::covering::{validate_action, CoveringAction};
use jacdecomp::group::{enumerate_subgroups, FiniteGroup, Subgroup};
use jacdecomp::scenario::{compile, preset_group, preset_scenario, CompiledScenario};
use rand::seq::SliceRandom;
use rand::Rng;

/// Preset groups of order at most 40.
pub const LIBRARY: &[&str] = &[
    "d2q?q=1",
    "d2q?q=3",
    "d2q?q=5",
    "d2q?q=7",
    "dihedral?n=3",
    "dihedral?n=4",
    "dihedral?n=5",
    "dihedral?n=8",
    "dihedral?n=10",
    "dihedral?n=20",
    "z2?t=2",
    "z2?t=3",
    "z2?t=4",
    "z2?t=5",
    "cyclic?n=2",
    "cyclic?n=6",
    "cyclic?n=9",
    "cyclic?n=12",
    "cyclic?n=40",
    "quaternion",
    "symmetric?n=3",
    "symmetric?n=4",
    "alternating?n=4",
];

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(preset_group(spec).expect("library preset"))
}

pub fn scenario(spec: &str) -> CompiledScenario {
    compile(&preset_scenario(spec).expect("preset"), None).expect("preset compiles")
}

/// A random valid generating vector: a spherical action with 3 to 5 branch
/// points or, about one time in four, an action with one handle pair.
pub fn random_action<R: Rng>(rng: &mut R, group: &Arc<FiniteGroup>) -> Option<CoveringAction> {
    let g = &**group;
    let n = g.order();
    let non_identity = |rng: &mut R| rng.gen_range(1..n);
    for _ in 0..500 {
        let torus = n > 1 && rng.gen_bool(0.25);
        let r = if torus { rng.gen_range(0..=2) } else { rng.gen_range(3..=5) };
        let handles = if torus {
            vec![(rng.gen_range(0..n), rng.gen_range(0..n))]
        } else {
            Vec::new()
        };
        let mut prefix = handles.iter().fold(0, |acc, &(a, b)| g.mul(acc, g.commutator(a, b)));
        let mut elements = Vec::new();
        for _ in 1..r {
            let c = non_identity(rng);
            prefix = g.mul(prefix, c);
            elements.push(c);
        }
        if r > 0 {
            let last = g.inverse(prefix);
            if last == 0 {
                continue;
            }
            elements.push(last);
        } else if prefix != 0 {
            continue;
        }
        let periods = elements.iter().map(|&c| g.element_order(c) as u64).collect();
        let Ok(action) = CoveringAction::new(group.clone(), handles.len() as u64, periods, handles, elements)
        else {
            continue;
        };
        if validate_action(&action).is_ok() {
            return Some(action);
        }
    }
    None
}

/// A random collection of `t` subgroups drawn from the lattice.
pub fn random_collection<R: Rng>(rng: &mut R, lattice: &[Subgroup], t: usize) -> Vec<Subgroup> {
    (0..t).map(|_| lattice.choose(rng).expect("nonempty lattice").clone()).collect()
}

pub fn lattice(group: &FiniteGroup) -> Vec<Subgroup> {
    enumerate_subgroups(group).expect("lattice")
}
