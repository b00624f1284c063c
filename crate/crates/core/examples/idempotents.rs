//! Central idempotents of the rational group algebra, checked by exact
//! convolution: each is idempotent, distinct ones annihilate each other and
//! together they sum to the identity.

use std::collections::BTreeMap;
use std::sync::Arc;

use jacdecomp::characters::{central_idempotent, character_table, rational_classes, GroupAlgebraElement};
use jacdecomp::scenario::preset_group;

fn main() -> jacdecomp::Result<()> {
    for spec in ["dihedral?n=6", "z2?t=3", "quaternion"] {
        let group = Arc::new(preset_group(spec)?);
        let table = character_table(group.clone())?;
        let classes = rational_classes(&table, &BTreeMap::new())?;
        let es: Vec<GroupAlgebraElement> = classes
            .iter()
            .map(|c| central_idempotent(&table, c))
            .collect::<jacdecomp::Result<_>>()?;

        let mut sum = GroupAlgebraElement::zero(&group);
        for (i, e) in es.iter().enumerate() {
            assert_eq!(&e.mul(&group, e), e);
            for f in &es[i + 1..] {
                assert!(e.mul(&group, f).is_zero());
            }
            sum = sum.add(e);
        }
        assert_eq!(sum, GroupAlgebraElement::identity(&group));
        println!("{spec}: {} central idempotents verified", es.len());
    }
    Ok(())
}
