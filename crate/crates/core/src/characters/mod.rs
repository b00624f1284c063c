//! Complex irreducible characters, permutation characters, fixed-subspace
//! dimensions and the Galois (rational) classes of irreducibles.

mod modular;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rational_int, rational_to_i64, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{coset_action, FiniteGroup, Subgroup};

/// A function on conjugacy classes with cyclotomic values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    group_id: u64,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: &FiniteGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.classes().len() {
            return Err(Error::GroupMismatch);
        }
        let e = group.exponent() as u32;
        if let Some(v) = values.iter().find(|v| v.conductor() != e) {
            return Err(Error::ConductorMismatch(v.conductor(), e));
        }
        Ok(Self {
            group_id: group.id(),
            values,
        })
    }

    pub fn from_integers(group: &FiniteGroup, values: &[i64]) -> Result<Self> {
        let e = group.exponent() as u32;
        let values = values
            .iter()
            .map(|&v| Cyclotomic::from_integer(v, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, values)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_integers(group, &vec![1; group.classes().len()]).expect("valid trivial character")
    }

    /// `|G|` at the identity, zero elsewhere.
    pub fn regular(group: &FiniteGroup) -> Self {
        let mut values = vec![0; group.classes().len()];
        values[0] = group.order() as i64;
        Self::from_integers(group, &values).expect("valid regular character")
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn at(&self, group: &FiniteGroup, element: usize) -> &Cyclotomic {
        &self.values[group.classes().class_of(element)]
    }

    /// Value at the identity as an integer, when it is one.
    pub fn degree(&self) -> Option<i64> {
        self.values[0].to_rational().as_ref().and_then(rational_to_i64)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_rational)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.group_id != other.group_id {
            Err(Error::GroupMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            group_id: self.group_id,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            group_id: self.group_id,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            group_id: self.group_id,
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    pub fn galois(&self, k: i64) -> Result<Self> {
        Ok(Self {
            group_id: self.group_id,
            values: self
                .values
                .iter()
                .map(|v| v.galois(k))
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

/// `(1/|G|) sum_g a(g) conj(b(g))`
pub fn inner_product(group: &FiniteGroup, a: &ClassFunction, b: &ClassFunction) -> Result<Rational> {
    a.check(b)?;
    if a.group_id != group.id() {
        return Err(Error::GroupMismatch);
    }
    let e = group.exponent() as u32;
    let mut acc = Cyclotomic::zero(e)?;
    for (c, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        let term = (x * &y.conj()).scale(&rational_int(group.classes().size(c) as i64));
        acc = &acc + &term;
    }
    let acc = acc.scale(&Rational::new(1.into(), (group.order() as i64).into()));
    acc.to_rational()
        .ok_or_else(|| Error::IrrationalInnerProduct(acc.to_string()))
}

/// Complex irreducible characters of a group, trivial character first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    prime: u64,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// The prime used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Index of an irreducible equal to `chi`, if any.
    pub fn position(&self, chi: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|x| x == chi)
    }
}

/// Computes the character table by Dixon's modular method.
///
/// Class sums act on the centre of the group algebra; their common
/// eigenvectors modulo a prime `p = 1 (mod e)` are the central characters.
/// Each value `chi(g)` is then recovered exactly from the multiplicities of
/// the `e`-th roots of unity among the eigenvalues of `g`, which are integers
/// in `0..=chi(1) < p` and so are determined by their residues.
pub fn character_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    use modular as m;

    let g = &*group;
    let n = g.order() as u64;
    let e = g.exponent() as u64;
    let classes = g.classes();
    let k = classes.len();

    let bound = (2 * n + e + 2) * 10_000;
    let p = m::prime_one_mod(e, 2 * n, bound).ok_or(Error::NoSuitablePrime {
        exponent: e,
        bound,
    })?;

    // structure constants: K_j K_i = sum_l c[j][i][l] K_l
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for (j, matrix) in structure.iter_mut().enumerate() {
        for l in 0..k {
            let z = classes.representative(l);
            for &x in classes.class(j) {
                let y = g.mul(g.inverse(x), z);
                matrix[classes.class_of(y)][l] += 1;
            }
        }
    }
    for matrix in structure.iter_mut() {
        for row in matrix.iter_mut() {
            for c in row.iter_mut() {
                *c %= p;
            }
        }
    }

    // Simultaneous eigenspaces, each stored as reduced echelon rows.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    for matrix in structure.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&space, matrix, p)?);
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(Error::CharacterTableFailure(format!(
            "found {} simultaneous eigenvectors for {k} classes",
            spaces.len()
        )));
    }

    let inverse_class: Vec<usize> = (0..k)
        .map(|c| classes.class_of(g.inverse(classes.representative(c))))
        .collect();
    // class of rep^j for j in 0..e
    let power_classes: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let rep = classes.representative(c);
            let mut x = 0;
            (0..e)
                .map(|_| {
                    let cl = classes.class_of(x);
                    x = g.mul(x, rep);
                    cl
                })
                .collect()
        })
        .collect();
    let z = m::root_of_unity(e, p);
    let e_inv = m::inv(e % p, p);
    let conductor = e as u32;

    let mut irreducibles = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for space in &spaces {
        let w0 = space[0][0];
        if w0 == 0 {
            return Err(Error::CharacterTableFailure("eigenvector vanishes at the identity".into()));
        }
        let scale = m::inv(w0, p);
        let w: Vec<u64> = space[0].iter().map(|&x| m::mul(x, scale, p)).collect();

        let mut norm = 0;
        for c in 0..k {
            let t = m::mul(w[c], w[inverse_class[c]], p);
            norm = m::add(norm, m::mul(t, m::inv(classes.size(c) as u64 % p, p), p), p);
        }
        if norm == 0 {
            return Err(Error::CharacterTableFailure("degenerate central character".into()));
        }
        let d_sq = m::mul(n % p, m::inv(norm, p), p);
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d == d_sq)
            .ok_or_else(|| Error::CharacterTableFailure("degree is not a square root".into()))?;

        let theta: Vec<u64> = (0..k)
            .map(|c| m::mul(m::mul(w[c], degree % p, p), m::inv(classes.size(c) as u64 % p, p), p))
            .collect();

        let mut values = Vec::with_capacity(k);
        for power_class in &power_classes {
            let mut mult = vec![0i64; e as usize];
            for (r, slot) in mult.iter_mut().enumerate() {
                // m_r = (1/e) sum_j theta(g^j) z^(-jr)
                let mut acc = 0;
                for (j, &cl) in power_class.iter().enumerate() {
                    let exp = (e - (j as u64 * r as u64) % e) % e;
                    acc = m::add(acc, m::mul(theta[cl], m::pow(z, exp, p), p), p);
                }
                let mr = m::mul(acc, e_inv, p);
                if mr > degree {
                    return Err(Error::CharacterTableFailure(format!(
                        "eigenvalue multiplicity {mr} exceeds degree {degree}"
                    )));
                }
                *slot = mr as i64;
            }
            values.push(Cyclotomic::from_multiplicities(&mult, conductor)?);
        }
        irreducibles.push(ClassFunction {
            group_id: g.id(),
            values,
        });
        degrees.push(degree);
    }

    // degree ascending, value tuples descending, trivial first
    let mut order: Vec<usize> = (0..k).collect();
    let trivial = ClassFunction::trivial(g);
    order.sort_by(|&a, &b| {
        let ta = irreducibles[a] == trivial;
        let tb = irreducibles[b] == trivial;
        tb.cmp(&ta)
            .then(degrees[a].cmp(&degrees[b]))
            .then_with(|| {
                for (x, y) in irreducibles[a].values.iter().zip(&irreducibles[b].values) {
                    let o = y.cmp_coeffs(x);
                    if o != std::cmp::Ordering::Equal {
                        return o;
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
    let irreducibles: Vec<ClassFunction> = order.iter().map(|&i| irreducibles[i].clone()).collect();
    let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();

    let table = CharacterTable {
        group: group.clone(),
        irreducibles,
        degrees,
        prime: p,
    };
    verify_table(&table)?;
    Ok(table)
}

fn split_space(space: &[Vec<u64>], matrix: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    use modular as m;
    let k = matrix.len();
    let dim = space.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("echelon rows are nonzero"))
        .collect();
    // coords[i][l] = coordinate l of matrix * b_i
    let coords: Vec<Vec<u64>> = space
        .iter()
        .map(|b| {
            let image: Vec<u64> = (0..k)
                .map(|r| {
                    (0..k).fold(0, |acc, l| m::add(acc, m::mul(matrix[r][l], b[l], p), p))
                })
                .collect();
            pivots.iter().map(|&pc| image[pc]).collect()
        })
        .collect();
    // eigenvectors u of coords^T, i.e. u * coords = lambda * u
    let transposed: Vec<Vec<u64>> = (0..dim)
        .map(|i| (0..dim).map(|j| coords[j][i]).collect())
        .collect();
    let poly = modular::charpoly(&transposed, p);
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        if m::eval(&poly, lambda, p) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = transposed
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { m::sub(x, lambda, p) } else { x })
                    .collect()
            })
            .collect();
        let null = m::nullspace(&shifted, p);
        total += null.len();
        let mut vectors: Vec<Vec<u64>> = null
            .iter()
            .map(|u| {
                (0..k)
                    .map(|c| {
                        u.iter()
                            .zip(space)
                            .fold(0, |acc, (&ui, b)| m::add(acc, m::mul(ui, b[c], p), p))
                    })
                    .collect()
            })
            .collect();
        m::rref(&mut vectors, p);
        pieces.push(vectors);
        if total == dim {
            break;
        }
    }
    if total != dim {
        return Err(Error::CharacterTableFailure(
            "class matrix is not diagonalizable modulo p".into(),
        ));
    }
    Ok(pieces)
}

fn verify_table(table: &CharacterTable) -> Result<()> {
    let g = &*table.group;
    let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sum_sq != g.order() as u64 {
        return Err(Error::CharacterTableFailure(format!(
            "sum of squared degrees {sum_sq} != |G| = {}",
            g.order()
        )));
    }
    for (i, a) in table.irreducibles.iter().enumerate() {
        for (j, b) in table.irreducibles.iter().enumerate().skip(i) {
            let ip = inner_product(g, a, b)?;
            let expected = if i == j { Rational::one() } else { Rational::zero() };
            if ip != expected {
                return Err(Error::CharacterTableFailure(format!(
                    "rows {i} and {j} have inner product {ip}"
                )));
            }
        }
    }
    Ok(())
}

/// Value at `g` is the number of right cosets `Hx` fixed by `g`.
pub fn permutation_character(group: &FiniteGroup, h: &Subgroup) -> Result<ClassFunction> {
    let action = coset_action(group, h)?;
    let values: Vec<i64> = (0..group.classes().len())
        .map(|c| action.permutation(group.classes().representative(c)).fixed_points() as i64)
        .collect();
    ClassFunction::from_integers(group, &values)
}

/// Number of elements of `h` in each conjugacy class.
pub fn class_counts(group: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut counts = vec![0; group.classes().len()];
    for &x in h.members() {
        counts[group.classes().class_of(x)] += 1;
    }
    counts
}

/// `dim V^H` by averaging the character over `H`.
pub fn fixed_dim_by_average(group: &FiniteGroup, chi: &ClassFunction, h: &Subgroup) -> Result<u64> {
    let counts = class_counts(group, h);
    average_counts(group, chi, &counts, h.order())
}

pub(crate) fn average_counts(
    group: &FiniteGroup,
    chi: &ClassFunction,
    counts: &[usize],
    order: usize,
) -> Result<u64> {
    let e = group.exponent() as u32;
    let mut acc = Cyclotomic::zero(e)?;
    for (c, &count) in counts.iter().enumerate() {
        if count > 0 {
            acc = &acc + &chi.values[c].scale(&rational_int(count as i64));
        }
    }
    let avg = acc
        .to_rational()
        .map(|q| q / rational_int(order as i64))
        .ok_or(Error::NonIntegralAverage)?;
    match rational_to_i64(&avg) {
        Some(v) if v >= 0 => Ok(v as u64),
        _ => Err(Error::NonIntegralAverage),
    }
}

/// `dim V^H`, computed both by averaging over `H` and as
/// `<rho_H, chi>` (Frobenius reciprocity); the two must agree.
pub fn fixed_dim(group: &FiniteGroup, chi: &ClassFunction, h: &Subgroup) -> Result<u64> {
    let by_average = fixed_dim_by_average(group, chi, h)?;
    let rho = permutation_character(group, h)?;
    let by_reciprocity = inner_product(group, &rho, chi)?;
    if rational_to_i64(&by_reciprocity) != Some(by_average as i64) {
        return Err(Error::IdentityViolated(format!(
            "fixed dimension by averaging ({by_average}) differs from Frobenius reciprocity ({by_reciprocity})"
        )));
    }
    if let Some(d) = chi.degree() {
        if by_average as i64 > d {
            return Err(Error::NonIntegralAverage);
        }
    }
    Ok(by_average)
}

/// `(1/|G|) sum_g chi(g^2)`
pub fn frobenius_schur(group: &FiniteGroup, chi: &ClassFunction) -> Result<i64> {
    if inner_product(group, chi, chi)? != Rational::one() {
        return Err(Error::NotIrreducible);
    }
    let classes = group.classes();
    let e = group.exponent() as u32;
    let mut acc = Cyclotomic::zero(e)?;
    for c in 0..classes.len() {
        let rep = classes.representative(c);
        let sq = group.mul(rep, rep);
        acc = &acc + &chi.at(group, sq).scale(&rational_int(classes.size(c) as i64));
    }
    let value = acc
        .to_rational()
        .map(|q| q / rational_int(group.order() as i64))
        .as_ref()
        .and_then(rational_to_i64);
    match value {
        Some(v @ -1..=1) => Ok(v),
        _ => Err(Error::NotIrreducible),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchurProvenance {
    /// 2 when the Frobenius-Schur indicator is -1, otherwise 1
    Heuristic,
    Override,
}

/// A Galois orbit of complex irreducibles: the complexification of one
/// rational irreducible representation is `s` copies of the orbit sum.
#[derive(Clone, Debug)]
pub struct RationalClass {
    pub members: Vec<usize>,
    pub degree: u64,
    pub field_degree: u64,
    pub schur_index: u64,
    pub provenance: SchurProvenance,
    pub rational_character: ClassFunction,
    /// `degree / schur_index`
    pub n: u64,
}

impl RationalClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    /// Dimension of the rational irreducible representation.
    pub fn dim_w(&self) -> u64 {
        self.schur_index * self.degree * self.field_degree
    }
}

/// Groups irreducibles into Galois orbits. `overrides` maps an orbit
/// representative (smallest irreducible index in its orbit) to a Schur index.
pub fn rational_classes(
    table: &CharacterTable,
    overrides: &BTreeMap<usize, u64>,
) -> Result<Vec<RationalClass>> {
    let g = &**table.group();
    let e = g.exponent() as i64;
    let k = table.len();
    let units: Vec<i64> = (1..=e.max(1)).filter(|u| u.gcd(&e) == 1).collect();

    let mut orbit_of = vec![usize::MAX; k];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut members = vec![i];
        for &u in &units {
            let image = table.irreducibles[i].galois(u)?;
            let j = table.position(&image).ok_or_else(|| {
                Error::CharacterTableFailure(format!("Galois image of row {i} is not a row"))
            })?;
            if !members.contains(&j) {
                members.push(j);
            }
        }
        members.sort_unstable();
        for &j in &members {
            orbit_of[j] = orbits.len();
        }
        orbits.push(members);
    }

    for &idx in overrides.keys() {
        if idx >= k || orbits[orbit_of[idx]][0] != idx {
            return Err(Error::OverrideNotRepresentative(idx));
        }
    }

    orbits
        .into_iter()
        .map(|members| {
            let rep = members[0];
            let degree = table.degrees[rep];
            let (schur_index, provenance) = match overrides.get(&rep) {
                Some(&s) => (s, SchurProvenance::Override),
                None => {
                    let fs = frobenius_schur(g, &table.irreducibles[rep])?;
                    (if fs == -1 { 2 } else { 1 }, SchurProvenance::Heuristic)
                }
            };
            if schur_index == 0 || !degree.is_multiple_of(schur_index) {
                return Err(Error::NonIntegralN {
                    degree,
                    schur: schur_index,
                });
            }
            let mut sum = table.irreducibles[members[0]].clone();
            for &j in &members[1..] {
                sum = sum.add(&table.irreducibles[j])?;
            }
            let rational_character = sum.scale(&rational_int(schur_index as i64));
            if !rational_character.is_rational() {
                return Err(Error::CharacterTableFailure(
                    "orbit sum is not rational-valued".into(),
                ));
            }
            Ok(RationalClass {
                field_degree: members.len() as u64,
                members,
                degree,
                schur_index,
                provenance,
                rational_character,
                n: degree / schur_index,
            })
        })
        .collect()
}

/// An element of the rational group algebra, as a dense coefficient vector
/// indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    coefficients: Vec<Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &FiniteGroup) -> Self {
        Self {
            coefficients: vec![Rational::zero(); group.order()],
        }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        let mut e = Self::zero(group);
        e.coefficients[0] = Rational::one();
        e
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, element: usize) -> &Rational {
        &self.coefficients[element]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Convolution product in `Q[G]`.
    pub fn mul(&self, group: &FiniteGroup, other: &Self) -> Self {
        let mut out = Self::zero(group);
        for (a, x) in self.coefficients.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coefficients.iter().enumerate() {
                if !y.is_zero() {
                    out.coefficients[group.mul(a, b)] += x * y;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// `e_W = (d/|G|) sum_{chi in orbit} sum_g chi(g^-1) g`
pub fn central_idempotent(table: &CharacterTable, class: &RationalClass) -> Result<GroupAlgebraElement> {
    let g = &**table.group();
    let e = g.exponent() as u32;
    let factor = Rational::new((class.degree as i64).into(), (g.order() as i64).into());
    let mut coefficients = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let xi = g.inverse(x);
        let mut acc = Cyclotomic::zero(e)?;
        for &m in &class.members {
            acc = &acc + table.irreducibles[m].at(g, xi);
        }
        let q = acc.to_rational().ok_or_else(|| {
            Error::IdentityViolated("idempotent coefficient is not rational".into())
        })?;
        coefficients.push(q * &factor);
    }
    Ok(GroupAlgebraElement { coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        preset_cyclic, preset_dihedral, preset_elementary_abelian_2, preset_quaternion,
        subgroup_generate,
    };

    fn table(g: FiniteGroup) -> CharacterTable {
        character_table(Arc::new(g)).unwrap()
    }

    #[test]
    fn z2_table() {
        let t = table(preset_cyclic(2).unwrap());
        let g = t.group().clone();
        assert_eq!(t.irreducible(0), &ClassFunction::from_integers(&g, &[1, 1]).unwrap());
        assert_eq!(t.irreducible(1), &ClassFunction::from_integers(&g, &[1, -1]).unwrap());
    }

    #[test]
    fn dihedral_degrees() {
        let t = table(preset_dihedral(3).unwrap());
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2, 2]);
        let t = table(preset_elementary_abelian_2(3).unwrap());
        assert_eq!(t.len(), 8);
        for chi in t.irreducibles() {
            for v in chi.values() {
                let q = v.to_rational().unwrap();
                assert!(q == rational_int(1) || q == rational_int(-1));
            }
        }
    }

    #[test]
    fn cyclic_tables_have_root_of_unity_values() {
        for n in [3, 4, 5, 7, 9] {
            let t = table(preset_cyclic(n).unwrap());
            assert_eq!(t.len(), n);
            let g = t.group().clone();
            let a = g.generator("a").unwrap();
            let mut images: Vec<Cyclotomic> =
                t.irreducibles().iter().map(|chi| chi.at(&g, a).clone()).collect();
            images.sort_by(|x, y| x.cmp_coeffs(y));
            let mut roots: Vec<Cyclotomic> = (0..n as i64)
                .map(|k| Cyclotomic::root_of_unity(k, n as u32).unwrap())
                .collect();
            roots.sort_by(|x, y| x.cmp_coeffs(y));
            assert_eq!(images, roots);
        }
    }

    #[test]
    fn frobenius_schur_indicators() {
        let t = table(preset_dihedral(3).unwrap());
        let g = t.group().clone();
        assert_eq!(frobenius_schur(&g, t.irreducible(0)).unwrap(), 1);
        for i in 4..6 {
            assert_eq!(frobenius_schur(&g, t.irreducible(i)).unwrap(), 1);
        }
        let q = table(preset_quaternion().unwrap());
        let g = q.group().clone();
        let two = q.degrees().iter().position(|&d| d == 2).unwrap();
        assert_eq!(frobenius_schur(&g, q.irreducible(two)).unwrap(), -1);
        let reducible = q.irreducible(0).add(q.irreducible(1)).unwrap();
        assert_eq!(frobenius_schur(&g, &reducible).unwrap_err(), Error::NotIrreducible);
        // Z_3 has complex characters
        let c = table(preset_cyclic(3).unwrap());
        assert_eq!(frobenius_schur(&c.group().clone(), c.irreducible(1)).unwrap(), 0);
    }

    #[test]
    fn permutation_characters() {
        let t = table(preset_dihedral(3).unwrap());
        let g = t.group().clone();
        let r = g.generator("r").unwrap();
        let rot = subgroup_generate(&g, &[r]).unwrap();
        let rho = permutation_character(&g, &rot).unwrap();
        // 2 on rotations, 0 on reflections
        for c in 0..g.classes().len() {
            let rep = g.classes().representative(c);
            let expected = if rot.contains(rep) { 2 } else { 0 };
            assert_eq!(rho.value(c).to_rational().unwrap(), rational_int(expected));
        }
        assert_eq!(permutation_character(&g, &g.full_subgroup()).unwrap(), ClassFunction::trivial(&g));
        assert_eq!(
            permutation_character(&g, &g.trivial_subgroup()).unwrap(),
            ClassFunction::regular(&g)
        );
        assert_eq!(
            inner_product(&g, &rho, &ClassFunction::trivial(&g)).unwrap(),
            rational_int(1)
        );
    }

    #[test]
    fn regular_character_inner_products() {
        let t = table(preset_dihedral(5).unwrap());
        let g = t.group().clone();
        let reg = ClassFunction::regular(&g);
        for (chi, &d) in t.irreducibles().iter().zip(t.degrees()) {
            assert_eq!(inner_product(&g, &reg, chi).unwrap(), rational_int(d as i64));
        }
        let other = table(preset_cyclic(2).unwrap());
        assert_eq!(
            inner_product(&g, &reg, other.irreducible(0)).unwrap_err(),
            Error::GroupMismatch
        );
    }

    #[test]
    fn rational_class_counts() {
        let t = table(preset_dihedral(3).unwrap());
        let rc = rational_classes(&t, &BTreeMap::new()).unwrap();
        assert_eq!(rc.len(), 6);
        assert!(rc.iter().all(|c| c.members.len() == 1));

        let t = table(preset_dihedral(5).unwrap());
        let rc = rational_classes(&t, &BTreeMap::new()).unwrap();
        assert_eq!(rc.len(), 6);
        let sizes: Vec<usize> = rc.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 1, 2, 2]);

        let t = table(preset_elementary_abelian_2(3).unwrap());
        let rc = rational_classes(&t, &BTreeMap::new()).unwrap();
        assert!(rc.iter().all(|c| c.schur_index == 1 && c.n == 1 && c.members.len() == 1));

        let q = table(preset_quaternion().unwrap());
        let rc = rational_classes(&q, &BTreeMap::new()).unwrap();
        let last = rc.last().unwrap();
        assert_eq!((last.degree, last.schur_index, last.n, last.dim_w()), (2, 2, 1, 4));
    }

    #[test]
    fn schur_overrides() {
        let t = table(preset_dihedral(3).unwrap());
        let mut bad = BTreeMap::new();
        bad.insert(1usize, 2u64);
        assert_eq!(
            rational_classes(&t, &bad).unwrap_err(),
            Error::NonIntegralN { degree: 1, schur: 2 }
        );
        let mut ok = BTreeMap::new();
        ok.insert(4usize, 2u64);
        let rc = rational_classes(&t, &ok).unwrap();
        assert_eq!(rc[4].provenance, SchurProvenance::Override);
        assert_eq!(rc[4].n, 1);

        let t5 = table(preset_dihedral(5).unwrap());
        let rc = rational_classes(&t5, &BTreeMap::new()).unwrap();
        let non_rep = rc[4].members[1];
        let mut wrong = BTreeMap::new();
        wrong.insert(non_rep, 1u64);
        assert_eq!(
            rational_classes(&t5, &wrong).unwrap_err(),
            Error::OverrideNotRepresentative(non_rep)
        );
    }

    #[test]
    fn trivial_idempotent() {
        let t = table(preset_dihedral(3).unwrap());
        let g = t.group().clone();
        let rc = rational_classes(&t, &BTreeMap::new()).unwrap();
        let e1 = central_idempotent(&t, &rc[0]).unwrap();
        assert!(e1.coefficients().iter().all(|c| *c == Rational::new(1.into(), 12.into())));
        let e5 = central_idempotent(&t, &rc[4]).unwrap();
        assert_eq!(e5.mul(&g, &e5), e5);
        let total = rc
            .iter()
            .map(|c| central_idempotent(&t, c).unwrap())
            .fold(GroupAlgebraElement::zero(&g), |acc, x| acc.add(&x));
        assert_eq!(total, GroupAlgebraElement::identity(&g));
    }

    #[test]
    fn fixed_dims_trivial_subgroup() {
        let t = table(preset_dihedral(5).unwrap());
        let g = t.group().clone();
        for (chi, &d) in t.irreducibles().iter().zip(t.degrees()) {
            assert_eq!(fixed_dim(&g, chi, &g.trivial_subgroup()).unwrap(), d);
        }
        let not_char = t.irreducible(0).scale(&Rational::new(1.into(), 3.into()));
        let s = subgroup_generate(&g, &[g.generator("s").unwrap()]).unwrap();
        assert!(fixed_dim(&g, &not_char, &s).is_err());
    }
}
