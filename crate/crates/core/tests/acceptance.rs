//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line; the process fails if any
//! criterion fails.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use jacdecomp::characters::{
    central_idempotent, character_table, fixed_dim, fixed_dim_by_average, inner_product,
    permutation_character, rational_classes, ClassFunction, GroupAlgebraElement,
};
use jacdecomp::covering::{quotient_genus, validate_action};
use jacdecomp::cyclotomic::{rational_int, Cyclotomic};
use jacdecomp::decomposition::{cor3_plan, fiber_product_action, Decomposition};
use jacdecomp::group::{enumerate_subgroups, join, subgroup_generate, Subgroup};
use jacdecomp::scenario::{run_command, Ambient, Command, CompiledScenario, NoteKind, Request};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: jacdecomp::Error) -> String {
    e.to_string()
}

fn dihedral(q: usize) -> (CompiledScenario, Decomposition) {
    let s = common::scenario(&format!("d2q?q={q}"));
    let d = Decomposition::new(s.action().expect("action")).expect("decomposition");
    (s, d)
}

fn subgroups(s: &CompiledScenario, name: &str) -> Vec<Subgroup> {
    s.collection(name).expect("collection").subgroups.clone()
}

// 1. orthogonality, sum of squares and class count, exactly
fn character_engine() -> Check {
    let specs = ["d2q?q=3", "d2q?q=5", "d2q?q=7", "z2?t=1", "z2?t=2", "z2?t=3", "z2?t=4", "quaternion"];
    for spec in specs {
        let g = common::group(spec);
        let table = character_table(g.clone()).map_err(err)?;
        let classes = g.classes();
        ensure!(table.len() == classes.len(), "{spec}: {} characters for {} classes", table.len(), classes.len());
        let sum: u64 = table.degrees().iter().map(|d| d * d).sum();
        ensure!(sum as usize == g.order(), "{spec}: sum of squares {sum}");
        for (i, a) in table.irreducibles().iter().enumerate() {
            for (j, b) in table.irreducibles().iter().enumerate() {
                let ip = inner_product(&g, a, b).map_err(err)?;
                ensure!(ip == rational_int((i == j) as i64), "{spec}: <chi_{i}, chi_{j}> = {ip}");
            }
        }
        let e = table.irreducible(0).value(0).conductor();
        for x in 0..classes.len() {
            for y in 0..classes.len() {
                let mut acc = Cyclotomic::zero(e).map_err(err)?;
                for chi in table.irreducibles() {
                    let term = chi.value(x).checked_mul(&chi.value(y).conj()).map_err(err)?;
                    acc = acc.checked_add(&term).map_err(err)?;
                }
                let expected = if x == y { (g.order() / classes.size(x)) as i64 } else { 0 };
                ensure!(
                    acc == Cyclotomic::from_integer(expected, e).map_err(err)?,
                    "{spec}: column orthogonality fails at ({x}, {y})"
                );
            }
        }
    }
    Ok(())
}

// 2. first fixed-subspace table, both routes
fn fixed_subspace_table() -> Check {
    let expected = [[0, 1, 0, 1, 1], [0, 0, 1, 1, 1], [1, 0, 0, 0, 0]];
    for q in [3, 5, 7] {
        let (s, d) = dihedral(q);
        let g = s.group.clone();
        for (h, row) in subgroups(&s, "main").iter().zip(expected) {
            let dims = d.fixed_dims(h).map_err(err)?;
            ensure!(dims[1..] == row, "q={q}: {} gives {:?}", d.subgroup_label(h), &dims[1..]);
            for f in &d.factors()[1..] {
                let chi = d.table().irreducible(f.class.representative());
                let by_average = fixed_dim_by_average(&g, chi, h).map_err(err)?;
                let by_reciprocity = inner_product(&g, &permutation_character(&g, h).map_err(err)?, chi).map_err(err)?;
                ensure!(
                    rational_int(by_average as i64) == by_reciprocity,
                    "q={q}: routes disagree on class {}",
                    f.label
                );
                ensure!(by_average == fixed_dim(&g, chi, h).map_err(err)?, "q={q}: fixed_dim disagrees");
            }
        }
    }
    Ok(())
}

// 3. factor dimensions, exponents and conservation
fn factor_data() -> Check {
    for q in [3u64, 5, 7] {
        let (_, d) = dihedral(q as usize);
        ensure!(d.dims() == vec![0, 1, 1, 1, q - 1, q - 1], "q={q}: dims {:?}", d.dims());
        ensure!(d.exponents() == vec![1, 1, 1, 1, 2, 2], "q={q}: exponents {:?}", d.exponents());
        let total: u64 = d.factors().iter().map(|f| f.exponent() * f.dim_b).sum();
        ensure!(total == 4 * q - 1 && d.total_genus() == 4 * q - 1, "q={q}: conservation gives {total}");
    }
    Ok(())
}

// 4. quotient genera by coset Riemann-Hurwitz and by factors
fn quotient_genera() -> Check {
    for q in [3u64, 5, 7] {
        let (s, d) = dihedral(q as usize);
        let action = s.action().map_err(err)?;
        for (h, want) in subgroups(&s, "main").iter().zip([2 * q - 1, 2 * q - 1, 1]) {
            let by_cosets = quotient_genus(action, h).map_err(err)?;
            let p = d.profile(h).map_err(err)?;
            let by_factors: u64 = p.exponents.iter().zip(d.dims()).map(|(n, b)| n * b).sum();
            ensure!(
                by_cosets == want && by_factors == want,
                "q={q}: {} gives {by_cosets} and {by_factors}, expected {want}",
                p.label
            );
        }
    }
    Ok(())
}

// 5. end-to-end decompositions
fn main_decompositions() -> Check {
    for q in [3u64, 5, 7] {
        let (s, d) = dihedral(q as usize);
        let full = d.decompose(&subgroups(&s, "main")).map_err(err)?;
        ensure!(full.full && full.dim_p == 0, "q={q}: main collection leaves dim P = {}", full.dim_p);
        let partial = d.decompose(&subgroups(&s, "h1h3")).map_err(err)?;
        ensure!(partial.dim_p == 2 * q - 1, "q={q}: {{H1, H3}} gives dim P = {}", partial.dim_p);
    }
    Ok(())
}

// 6. the two equivalent forms agree on random collections
fn equivalence_forms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for spec in ["d2q?q=3", "fiber?genera=1,1"] {
        let s = common::scenario(spec);
        let d = Decomposition::new(s.action().map_err(err)?).map_err(err)?;
        let lattice = common::lattice(&s.group);
        for _ in 0..75 {
            let t = rng.gen_range(1..=4);
            let coll = common::random_collection(&mut rng, &lattice, t);
            let r = d.equivalence(&coll).map_err(err)?;
            ensure!(r.statement2 == r.statement3, "{spec}: forms disagree on {:?}", r.subgroups);
            checked += 1;
        }
        // the known full decompositions must be among the positive cases
        let name = if spec.starts_with("d2q") { "main" } else { "partition" };
        let r = d.equivalence(&subgroups(&s, name)).map_err(err)?;
        ensure!(r.statement2 && r.statement3, "{spec}: {name} should satisfy both forms");
    }
    ensure!(checked >= 100, "only {checked} collections checked");

    let (s, _) = dihedral(3);
    let g = &s.group;
    let mut sum = ClassFunction::from_integers(g, &vec![0; g.classes().len()]).map_err(err)?;
    for h in subgroups(&s, "main") {
        sum = sum.add(&permutation_character(g, &h).map_err(err)?).map_err(err)?;
    }
    let expected = ClassFunction::regular(g)
        .add(&ClassFunction::trivial(g).scale(&rational_int(2)))
        .map_err(err)?;
    ensure!(sum == expected, "sum of permutation characters is not rho_reg + 2 W_1");
    Ok(())
}

// 7. partition identities
fn partition_identities() -> Check {
    let (s, d) = dihedral(3);
    let parts = subgroups(&s, "partition");
    ensure!(parts.len() == 7, "dihedral partition has {} parts", parts.len());
    let r = d.partition_identities(&parts).map_err(err)?;
    ensure!(r.character_identity && r.class_identity, "dihedral character identity fails");
    ensure!(r.dimension_lhs == 66 && r.dimension_rhs == 66, "dimensions {} = {}", r.dimension_lhs, r.dimension_rhs);

    let f = common::scenario("fiber?genera=1,1");
    let d = Decomposition::new(f.action().map_err(err)?).map_err(err)?;
    let r = d.partition_identities(&subgroups(&f, "partition")).map_err(err)?;
    ensure!(
        r.character_identity && r.class_identity && r.dimension_identity,
        "Z_2^2 partition identities fail"
    );
    Ok(())
}

// 8. fiber products against the closed formulas
fn fiber_products() -> Check {
    let mut cases: Vec<Vec<u64>> = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            cases.push(vec![a, b]);
            for c in 1..=3 {
                cases.push(vec![a, b, c]);
            }
        }
    }
    for genera in cases {
        let t = genera.len() as i64;
        let sum: i64 = genera.iter().map(|&g| g as i64).sum();
        let genus = 1 - (1 << t) + (1 << (t - 1)) * (t + sum);
        let complement = genus - sum;
        let plan = fiber_product_action(&genera).map_err(err)?;
        let certified = validate_action(&plan.action).map_err(err)?.total_genus as i64;
        ensure!(certified == genus, "{genera:?}: Riemann-Hurwitz {certified}, formula {genus}");
        let d = Decomposition::new(&plan.action).map_err(err)?;
        let adm = d.check_admissible(&plan.subgroups).map_err(err)?;
        ensure!(adm.verdict, "{genera:?}: kernels not admissible");
        ensure!(
            adm.genera.iter().copied().eq(genera.iter().copied()),
            "{genera:?}: kernel quotients have genera {:?}",
            adm.genera
        );
        let dim_p = d.decompose(&plan.subgroups).map_err(err)?.dim_p as i64;
        ensure!(dim_p == complement, "{genera:?}: dim P {dim_p}, formula {complement}");
    }
    Ok(())
}

// 9. elliptic plans
fn elliptic_plans() -> Check {
    for (t, genus, dim_p) in [(2, 2, 0), (3, 7, 4), (4, 9, 5), (5, 25, 20)] {
        let plan = cor3_plan(t).map_err(err)?;
        let certified = validate_action(&plan.action).map_err(err)?.total_genus;
        ensure!(
            plan.genus == genus && certified == genus && plan.dim_p == dim_p,
            "t={t}: got (g, dim P) = ({}, {}), certificate {certified}",
            plan.genus,
            plan.dim_p
        );
        let d = Decomposition::new(&plan.action).map_err(err)?;
        ensure!(d.total_genus() == genus, "t={t}: decomposition genus {}", d.total_genus());
    }
    Ok(())
}

// 10. every pair on the genus 11 example
fn pair_decompositions() -> Check {
    let (s, d) = dihedral(3);
    let g = &s.group;
    let action = s.action().map_err(err)?;
    let lattice = enumerate_subgroups(g).map_err(err)?;
    let genus = d.total_genus() as i64;
    for (i, a) in lattice.iter().enumerate() {
        for b in &lattice[i..] {
            let r = d.pair_decomposition(a, b).map_err(err)?;
            ensure!(r.reduced_slacks.iter().all(|&x| x >= 0), "negative slack for {:?}", r.subgroups);
            let k = join(g, a, b);
            let expected = genus + quotient_genus(action, &k).map_err(err)? as i64
                - quotient_genus(action, a).map_err(err)? as i64
                - quotient_genus(action, b).map_err(err)? as i64;
            ensure!(expected >= 0 && r.dim_p as i64 == expected, "{:?}: dim P {} vs {expected}", r.subgroups, r.dim_p);
        }
    }
    let main = subgroups(&s, "main");
    let r = d.pair_decomposition(&main[0], &main[1]).map_err(err)?;
    ensure!(r.dim_p == 1, "(H1, H2) gives dim P = {}", r.dim_p);
    Ok(())
}

// 11. central idempotents
fn idempotents() -> Check {
    for spec in ["d2q?q=3", "z2?t=3"] {
        let g = common::group(spec);
        ensure!(g.order() == if spec == "z2?t=3" { 8 } else { 12 }, "{spec}: wrong order");
        let table = character_table(g.clone()).map_err(err)?;
        let classes = rational_classes(&table, &BTreeMap::new()).map_err(err)?;
        let es = classes
            .iter()
            .map(|c| central_idempotent(&table, c))
            .collect::<jacdecomp::Result<Vec<_>>>()
            .map_err(err)?;
        let mut sum = GroupAlgebraElement::zero(&g);
        for (i, e) in es.iter().enumerate() {
            ensure!(&e.mul(&g, e) == e, "{spec}: e_{} is not idempotent", i + 1);
            for (j, f) in es.iter().enumerate().filter(|&(j, _)| j != i) {
                ensure!(e.mul(&g, f).is_zero(), "{spec}: e_{} e_{} != 0", i + 1, j + 1);
            }
            sum = sum.add(e);
        }
        ensure!(sum == GroupAlgebraElement::identity(&g), "{spec}: idempotents do not sum to 1");
    }
    Ok(())
}

// 12. the pinned discrepancy
fn discrepancy_regression() -> Check {
    for q in [3, 5, 7] {
        let (s, d) = dihedral(q);
        let g = &s.group;
        let rq = g.parse_word(&format!("r^{q}")).map_err(err)?;
        let h4 = subgroup_generate(g, &[rq]).map_err(err)?;
        let dims = d.fixed_dims(&h4).map_err(err)?;
        ensure!(dims[5] == 2, "q={q}: d_V6 for <r^q> is {}", dims[5]);
        ensure!(!d.check_admissible(&subgroups(&s, "h1h4")).map_err(err)?.verdict, "q={q}: {{H1, H4}} admissible");

        let mut request = Request::new(Command::Analyze, Some(&format!("d2q?q={q}")));
        request.collections = Some(vec!["h1h4".into()]);
        request.ambient = Ambient::Join;
        let outcome = run_command(&request);
        ensure!(outcome.exit_code == 2, "q={q}: exit code {}", outcome.exit_code);
        let doc = outcome.document.ok_or("no report")?;
        ensure!(
            doc.notes
                .iter()
                .any(|n| n.kind == NoteKind::Discrepancy && n.message.contains("fixed dimensions")),
            "q={q}: no fixed-dimension discrepancy note"
        );
    }
    Ok(())
}

// 13. properties on random generating vectors
fn random_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let groups: Vec<(&str, Arc<_>, Vec<Subgroup>)> = common::LIBRARY
        .iter()
        .map(|&spec| {
            let g = common::group(spec);
            let lattice = common::lattice(&g);
            (spec, g, lattice)
        })
        .collect();
    let mut vectors = 0;
    let mut with_handles = 0;
    while vectors < 200 {
        let (spec, g, lattice) = &groups[rng.gen_range(0..groups.len())];
        ensure!(g.order() <= 40, "{spec} too large");
        let Some(action) = common::random_action(&mut rng, g) else {
            continue;
        };
        vectors += 1;
        with_handles += (action.orbit_genus() > 0) as usize;
        let d = Decomposition::new(&action).map_err(|e| format!("{spec} {}: {e}", action.signature()))?;
        let total: u64 = d.factors().iter().map(|f| f.exponent() * f.dim_b).sum();
        ensure!(total == d.total_genus(), "{spec}: conservation {total} vs {}", d.total_genus());

        for _ in 0..4 {
            let h = &lattice[rng.gen_range(0..lattice.len())];
            let p = d.profile(h).map_err(err)?;
            let by_factors: u64 = p.exponents.iter().zip(d.dims()).map(|(n, b)| n * b).sum();
            ensure!(
                by_factors == quotient_genus(&action, h).map_err(err)?,
                "{spec}: profile conservation fails for {}",
                p.label
            );
        }
        for _ in 0..3 {
            let t = rng.gen_range(2..=3);
            let coll = common::random_collection(&mut rng, lattice, t);
            let verdict = d.check_admissible(&coll).map_err(err)?.verdict;
            let x = rng.gen_range(0..g.order());
            let conj: Vec<Subgroup> = coll.iter().map(|h| h.conjugate(g, x)).collect();
            ensure!(
                verdict == d.check_admissible(&conj).map_err(err)?.verdict,
                "{spec}: verdict changes under conjugation"
            );
            ensure!(!verdict || action.orbit_genus() == 0, "{spec}: admissible with positive orbit genus");
        }
    }
    ensure!(with_handles > 0, "no vectors with positive orbit genus were drawn");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("character engine orthogonality", character_engine),
        ("fixed-subspace table, two routes", fixed_subspace_table),
        ("factor dimensions and conservation", factor_data),
        ("quotient genera, two routes", quotient_genera),
        ("main decompositions", main_decompositions),
        ("equivalent admissibility forms", equivalence_forms),
        ("partition identities", partition_identities),
        ("fiber product formulas", fiber_products),
        ("elliptic plans", elliptic_plans),
        ("pair decompositions", pair_decompositions),
        ("central idempotents", idempotents),
        ("pinned fixed-dimension discrepancy", discrepancy_regression),
        ("randomized property suite", random_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
