//! Property tests for the cyclotomic field and the Galois action on
//! character tables.

mod common;

use jacdecomp::characters::character_table;
use jacdecomp::cyclotomic::Cyclotomic;
use num_integer::Integer;
use proptest::prelude::*;

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20];

fn element(e: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-5i64..=5, e as usize)
        .prop_map(move |m| Cyclotomic::from_multiplicities(&m, e).unwrap())
}

fn triple() -> impl Strategy<Value = (u32, Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS)
        .prop_flat_map(|e| (Just(e), element(e), element(e), element(e)))
}

fn unit(e: u32) -> impl Strategy<Value = i64> {
    (1..=e as i64).prop_filter("coprime", move |k| k.gcd(&(e as i64)) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((_e, a, b, c) in triple()) {
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_add(&b).unwrap().checked_add(&c).unwrap(),
            a.checked_add(&b.checked_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn inverses((e, a, _b, _c) in triple()) {
        let one = Cyclotomic::one(e).unwrap();
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.checked_mul(&inv).unwrap(), one),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn galois_is_a_field_automorphism(
        (e, a, b, k) in prop::sample::select(CONDUCTORS)
            .prop_flat_map(|e| (Just(e), element(e), element(e), unit(e)))
    ) {
        let sigma = |x: &Cyclotomic| x.galois(k).unwrap();
        prop_assert_eq!(sigma(&a.checked_add(&b).unwrap()), sigma(&a).checked_add(&sigma(&b)).unwrap());
        prop_assert_eq!(sigma(&a.checked_mul(&b).unwrap()), sigma(&a).checked_mul(&sigma(&b)).unwrap());
        prop_assert_eq!(a.galois(-1).unwrap(), a.conj());
        prop_assert_eq!(a.galois(1).unwrap(), a.clone());
        let z = Cyclotomic::root_of_unity(1, e).unwrap();
        prop_assert_eq!(sigma(&z), Cyclotomic::root_of_unity(k, e).unwrap());
    }

    #[test]
    fn galois_permutes_table_rows(
        spec in prop::sample::select(vec!["d2q?q=5", "d2q?q=7", "cyclic?n=9", "cyclic?n=12", "quaternion", "alternating?n=4"]),
        k in 1i64..60,
    ) {
        let g = common::group(spec);
        let e = g.exponent() as i64;
        prop_assume!(k.gcd(&e) == 1);
        let table = character_table(g.clone()).unwrap();
        let mut image: Vec<usize> = table
            .irreducibles()
            .iter()
            .map(|chi| table.position(&chi.galois(k).unwrap()).expect("Galois conjugate is irreducible"))
            .collect();
        for (chi, &j) in table.irreducibles().iter().zip(&image) {
            // chi^sigma(x) = chi(x^k)
            for x in 0..g.order() {
                prop_assert_eq!(table.irreducible(j).at(&g, x), chi.at(&g, g.pow(x, k)));
            }
        }
        image.sort_unstable();
        prop_assert_eq!(image, (0..table.len()).collect::<Vec<_>>());
    }
}
