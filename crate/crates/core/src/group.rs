//! Finite permutation groups.
//!
//! Every group is stored fully enumerated: a list of permutations with the
//! identity at index 0, a dense product table and the conjugacy classes.
//! Products are read left to right: `a * b` applies `a` first, then `b`.
//! Cosets are right cosets `Hx`, and the group acts on them by right
//! multiplication.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, PartitionWitness, Result};

/// Default cap on the order of a group built by closure.
pub const DEFAULT_ORDER_CAP: usize = 2048;
/// Default cap on the order of a group whose subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 512;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// A bijection of `{0, .., degree - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || seen[i] {
                return Err(Error::NotAPermutation { degree });
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                if point >= degree || touched[point] {
                    return Err(Error::NotAPermutation { degree });
                }
                touched[point] = true;
                images[point] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// The product `self * other`: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, j)| i == *j).count()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut count = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
            }
        }
        count
    }
}

/// Partition of a group into conjugacy classes. Classes are ordered by their
/// smallest element index, so the identity class comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }
}

/// A finite group of permutations, fully enumerated.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    id: u64,
    degree: usize,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    exponent: usize,
    generators: Vec<(String, usize)>,
    words: Vec<Vec<(usize, i64)>>,
    classes: ConjugacyClasses,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id || (self.elements == other.elements && self.generators == other.generators)
    }
}

/// Builds the group generated by named permutations, with the default order cap.
pub fn build_group(generators: Vec<(String, Permutation)>) -> Result<FiniteGroup> {
    build_group_with_cap(generators, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(
    generators: Vec<(String, Permutation)>,
    cap: usize,
) -> Result<FiniteGroup> {
    let first = generators.first().ok_or(Error::EmptyGeneratorList)?;
    let degree = first.1.degree();
    if let Some((_, p)) = generators.iter().find(|(_, p)| p.degree() != degree) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: p.degree(),
        });
    }

    // Letters are the generators together with their inverses; words use
    // signed powers so that shortest words read naturally.
    let mut letters: Vec<(usize, i64, Permutation)> = Vec::new();
    for (g, (_, p)) in generators.iter().enumerate() {
        letters.push((g, 1, p.clone()));
        let inv = p.inverse();
        if inv != *p {
            letters.push((g, -1, inv));
        }
    }

    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut lookup = HashMap::new();
    lookup.insert(identity, 0usize);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); letters.len()];

    let mut cursor = 0;
    while cursor < elements.len() {
        for (l, (_, _, p)) in letters.iter().enumerate() {
            let y = elements[cursor].then(p);
            let idx = match lookup.get(&y) {
                Some(&idx) => idx,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    let idx = elements.len();
                    lookup.insert(y.clone(), idx);
                    elements.push(y);
                    parent.push(Some((cursor, l)));
                    idx
                }
            };
            right[l].push(idx);
        }
        cursor += 1;
    }

    let n = elements.len();
    // table[a][b] = table[a][parent(b)] * letter(b)
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        table[a * n] = a as u32;
        for b in 1..n {
            let (pb, l) = parent[b].expect("non-identity has a parent");
            let ab_parent = table[a * n + pb] as usize;
            table[a * n + b] = right[l][ab_parent] as u32;
        }
    }

    let mut inverses = vec![0; n];
    for a in 0..n {
        inverses[a] = (0..n)
            .find(|&b| table[a * n + b] == 0)
            .expect("every element has an inverse");
    }

    let mut orders = vec![1; n];
    for a in 1..n {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = table[x * n + a] as usize;
            k += 1;
        }
        orders[a] = k;
    }
    let exponent = orders.iter().fold(1usize, |acc, &o| acc.lcm(&o));

    let mut words: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for b in 1..n {
        let (pb, l) = parent[b].unwrap();
        let (g, sign, _) = &letters[l];
        let mut w = words[pb].clone();
        match w.last_mut() {
            Some((lg, pow)) if lg == g && pow.signum() == *sign => *pow += sign,
            _ => w.push((*g, *sign)),
        }
        words[b] = w;
    }

    let gen_indices: Vec<(String, usize)> = generators
        .iter()
        .map(|(name, p)| (name.clone(), lookup[p]))
        .collect();

    let classes = compute_classes(n, &table, &inverses, &gen_indices);

    Ok(FiniteGroup {
        id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
        degree,
        elements,
        lookup,
        table,
        inverses,
        orders,
        exponent,
        generators: gen_indices,
        words,
        classes,
    })
}

fn compute_classes(
    n: usize,
    table: &[u32],
    inverses: &[usize],
    generators: &[(String, usize)],
) -> ConjugacyClasses {
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![x];
        class_of[x] = c;
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            for &(_, g) in generators {
                let z = mul(mul(inverses[g], y), g);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    members.push(z);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    ConjugacyClasses { classes, class_of }
}

impl FiniteGroup {
    /// Identifier shared by clones of the same group.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidElementIndex {
                index,
                order: self.order(),
            })
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x^-1 * a * x`
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverses[x], a), x)
    }

    /// `a^-1 * b^-1 * a * b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverses[ba], ab)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverses[a] } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, g)| g)
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = self.generators.iter().map(|&(_, g)| g).collect();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Shortest word for an element in the named generators, e.g. `s*r^2`.
    pub fn word(&self, index: usize) -> String {
        let w = &self.words[index];
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&(g, pow)| {
                let name = &self.generators[g].0;
                if pow == 1 {
                    name.clone()
                } else {
                    format!("{name}^{pow}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses a word in the named generators: tokens joined by `*`, each a
    /// generator name with an optional integer power (`r^-1`), `1` for the
    /// identity, or `#k` / a bare integer for the element with index `k`.
    pub fn parse_word(&self, word: &str) -> Result<usize> {
        let word = word.trim();
        if word.is_empty() {
            return Err(Error::Parse {
                location: "word".into(),
                message: "empty word".into(),
            });
        }
        let mut acc = 0;
        for token in word.split('*') {
            let token = token.trim();
            let (base, power) = match token.split_once('^') {
                Some((b, p)) => {
                    let p: i64 = p.trim().parse().map_err(|_| Error::Parse {
                        location: format!("word `{word}`"),
                        message: format!("bad exponent in `{token}`"),
                    })?;
                    (b.trim(), p)
                }
                None => (token, 1),
            };
            let element = if let Some(lit) = base.strip_prefix('#') {
                let idx: usize = lit.parse().map_err(|_| Error::Parse {
                    location: format!("word `{word}`"),
                    message: format!("bad element literal `{base}`"),
                })?;
                self.check_index(idx)?;
                idx
            } else if let Ok(idx) = base.parse::<usize>() {
                // `1` is the identity, other integers are element indices
                if idx == 1 {
                    0
                } else {
                    self.check_index(idx)?;
                    idx
                }
            } else {
                self.generator(base)
                    .ok_or_else(|| Error::UnknownGenerator(base.to_string()))?
            };
            acc = self.mul(acc, self.pow(element, power));
        }
        Ok(acc)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
            generators: self.generators.iter().map(|&(_, g)| g).collect(),
        }
    }

    /// `<g1, g2>` rendering of a subgroup. The generators are chosen from
    /// the member set alone, so equal subgroups get equal labels.
    pub fn subgroup_label(&self, h: &Subgroup) -> String {
        let gens = small_generating_set(self, &h.members);
        if gens.is_empty() {
            return "<1>".to_string();
        }
        let words: Vec<String> = gens.iter().map(|&g| self.word(g)).collect();
        format!("<{}>", words.join(", "))
    }

    /// The subgroup as a standalone permutation group, with generators named
    /// `k1, k2, ..`. Elements keep their permutations, so indices translate
    /// through [`FiniteGroup::index_of`].
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        let gens: Vec<(String, Permutation)> = if h.generators.is_empty() {
            vec![("k1".to_string(), Permutation::identity(self.degree))]
        } else {
            h.generators
                .iter()
                .enumerate()
                .map(|(i, &g)| (format!("k{}", i + 1), self.elements[g].clone()))
                .collect()
        };
        build_group_with_cap(gens, self.order().max(1))
    }
}

/// A subgroup of a [`FiniteGroup`], canonicalized by its sorted member set.
/// The generator list only serves labeling.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgroup of order {}", self.order())
    }
}

impl Subgroup {
    /// Checks that `members` form a subgroup of `group`.
    pub fn from_members(group: &FiniteGroup, members: &[usize]) -> Result<Subgroup> {
        for &m in members {
            group.check_index(m)?;
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let set: HashSet<usize> = sorted.iter().copied().collect();
        if !set.contains(&0)
            || sorted
                .iter()
                .any(|&a| sorted.iter().any(|&b| !set.contains(&group.mul(a, b))))
        {
            return Err(Error::NotASubgroup);
        }
        let generated = subgroup_generate(group, &sorted)?;
        Ok(Subgroup {
            members: sorted,
            generators: small_generating_set(group, &generated.members),
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.order()
    }

    /// `x^-1 H x`
    pub fn conjugate(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| group.conjugate(h, x)).collect();
        members.sort_unstable();
        Subgroup {
            members,
            generators: self.generators.iter().map(|&h| group.conjugate(h, x)).collect(),
        }
    }

    /// Whether `self` and `other` are conjugate in `group`.
    pub fn is_conjugate_to(&self, group: &FiniteGroup, other: &Subgroup) -> bool {
        self.order() == other.order()
            && (0..group.order()).any(|x| self.conjugate(group, x) == *other)
    }

    fn check_in(&self, group: &FiniteGroup) -> Result<()> {
        if self.members.first() != Some(&0)
            || self.members.last().is_some_and(|&m| m >= group.order())
        {
            return Err(Error::NotASubgroup);
        }
        Ok(())
    }
}

fn closure(group: &FiniteGroup, generators: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; group.order()];
    inside[0] = true;
    let mut members = vec![0];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in generators {
            let y = group.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

/// Greedy generating set: scan members by increasing index and keep those not
/// yet generated.
fn small_generating_set(group: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = vec![0];
    for &m in members {
        if current.binary_search(&m).is_err() {
            gens.push(m);
            current = closure(group, &gens);
        }
    }
    gens
}

/// The smallest subgroup containing `seed`.
pub fn subgroup_generate(group: &FiniteGroup, seed: &[usize]) -> Result<Subgroup> {
    for &s in seed {
        group.check_index(s)?;
    }
    let mut gens: Vec<usize> = Vec::new();
    for &s in seed {
        if s != 0 && !gens.contains(&s) {
            gens.push(s);
        }
    }
    Ok(Subgroup {
        members: closure(group, &gens),
        generators: gens,
    })
}

/// `<H1, H2>`
pub fn join(group: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut seed = a.generators.clone();
    seed.extend_from_slice(&b.generators);
    let mut joined = subgroup_generate(group, &seed).expect("indices come from subgroups");
    joined.generators = small_generating_set(group, &joined.members);
    if joined == *a {
        return a.clone();
    }
    if joined == *b {
        return b.clone();
    }
    joined
}

/// Whether the product set `AB` equals `BA`.
pub fn permute(group: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    let ab: HashSet<usize> = a
        .members
        .iter()
        .flat_map(|&x| b.members.iter().map(move |&y| (x, y)))
        .map(|(x, y)| group.mul(x, y))
        .collect();
    b.members
        .iter()
        .all(|&y| a.members.iter().all(|&x| ab.contains(&group.mul(y, x))))
}

pub fn enumerate_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with_cap(group, DEFAULT_SUBGROUP_CAP)
}

/// Complete subgroup list, sorted by order then member set.
///
/// Layers are grown by cyclic extension: every subgroup found so far is
/// joined with one element of prime-power order from each of its right
/// cosets. Every subgroup is reached this way because it is generated by
/// elements of prime-power order.
pub fn enumerate_subgroups_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if group.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let n = group.order();
    let candidates: Vec<usize> = (1..n)
        .filter(|&g| is_prime_power(group.element_order(g)))
        .collect();

    let mut found: Vec<Subgroup> = vec![group.trivial_subgroup()];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(vec![0]);
    let mut i = 0;
    while i < found.len() {
        let base = found[i].clone();
        let mut covered = vec![false; n];
        for &m in &base.members {
            covered[m] = true;
        }
        for &g in &candidates {
            if covered[g] {
                continue;
            }
            for &s in &base.members {
                covered[group.mul(s, g)] = true;
            }
            let mut gens = base.generators.clone();
            gens.push(g);
            let members = closure(group, &gens);
            if seen.insert(members.clone()) {
                found.push(Subgroup {
                    generators: small_generating_set(group, &members),
                    members,
                });
            }
        }
        i += 1;
    }
    found.sort();
    Ok(found)
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        return true;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// The action of a group on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
    permutations: Vec<Permutation>,
}

impl CosetAction {
    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    pub fn permutation(&self, element: usize) -> &Permutation {
        &self.permutations[element]
    }
}

pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> Result<CosetAction> {
    h.check_in(group)?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut transversal = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = transversal.len();
        transversal.push(x);
        for &m in &h.members {
            let y = group.mul(m, x);
            if coset_of[y] != usize::MAX {
                return Err(Error::NotASubgroup);
            }
            coset_of[y] = c;
        }
    }
    if transversal.len() * h.order() != n {
        return Err(Error::NotASubgroup);
    }
    let permutations = (0..n)
        .map(|g| Permutation {
            images: transversal
                .iter()
                .map(|&x| coset_of[group.mul(x, g)])
                .collect(),
        })
        .collect();
    Ok(CosetAction {
        transversal,
        coset_of,
        permutations,
    })
}

/// Checks that the subgroups cover the group and meet pairwise trivially.
pub fn is_partition(
    group: &FiniteGroup,
    collection: &[Subgroup],
) -> std::result::Result<(), PartitionWitness> {
    let mut owner: Vec<Option<usize>> = vec![None; group.order()];
    for (i, h) in collection.iter().enumerate() {
        for &m in h.members.iter().filter(|&&m| m != 0) {
            if let Some(first) = owner[m] {
                return Err(PartitionWitness::Overlap {
                    first,
                    second: i,
                    element: m,
                });
            }
            owner[m] = Some(i);
        }
    }
    if let Some(element) = (1..group.order()).find(|&g| owner[g].is_none()) {
        return Err(PartitionWitness::Uncovered { element });
    }
    if group.order() == 1 && collection.is_empty() {
        return Err(PartitionWitness::Uncovered { element: 0 });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Dihedral group `<r, s | r^n = s^2 = (sr)^2 = 1>` of order `2n`, acting on
/// the vertices of an `n`-gon. For `n = 2` the Klein group acts on 4 points.
pub fn preset_dihedral_order(n: usize) -> Result<FiniteGroup> {
    match n {
        0 | 1 => Err(Error::InvalidPreset(format!(
            "dihedral group needs n >= 2, got {n}"
        ))),
        2 => build_group(vec![
            ("r".into(), Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?),
            ("s".into(), Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?),
        ]),
        _ => {
            let r = Permutation::new((0..n).map(|i| (i + 1) % n).collect())?;
            let s = Permutation::new((0..n).map(|i| (n - i) % n).collect())?;
            build_group(vec![("r".into(), r), ("s".into(), s)])
        }
    }
}

/// `<r, s | r^(2q) = s^2 = (sr)^2 = 1>` of order `4q`, for odd `q`.
pub fn preset_dihedral(q: usize) -> Result<FiniteGroup> {
    if q == 0 || q.is_multiple_of(2) {
        return Err(Error::InvalidPreset(format!(
            "dihedral preset needs odd q >= 1, got {q}"
        )));
    }
    preset_dihedral_order(2 * q)
}

/// `Z_2^t` with generators `e1..et`, each a transposition of its own pair of points.
pub fn preset_elementary_abelian_2(t: usize) -> Result<FiniteGroup> {
    if t == 0 {
        return Err(Error::InvalidPreset("t must be at least 1".into()));
    }
    if t > 11 {
        return Err(Error::OrderCapExceeded {
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let gens = (0..t)
        .map(|i| {
            Permutation::from_cycles(2 * t, &[&[2 * i, 2 * i + 1]])
                .map(|p| (format!("e{}", i + 1), p))
        })
        .collect::<Result<Vec<_>>>()?;
    build_group(gens)
}

/// Cyclic group of order `n` with generator `a`.
pub fn preset_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidPreset("cyclic group needs n >= 1".into()));
    }
    let a = Permutation::new((0..n).map(|i| (i + 1) % n).collect())?;
    build_group(vec![("a".into(), a)])
}

/// Quaternion group of order 8 in its regular representation, generators `i`, `j`.
pub fn preset_quaternion() -> Result<FiniteGroup> {
    // point = 4 * sign + unit, units ordered 1, i, j, k
    fn unit_mul(a: usize, b: usize) -> (usize, usize) {
        const TABLE: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        TABLE[a][b]
    }
    let right_by = |u: usize| {
        Permutation::new(
            (0..8)
                .map(|p| {
                    let (sign, unit) = (p / 4, p % 4);
                    let (s2, unit2) = unit_mul(unit, u);
                    4 * ((sign + s2) % 2) + unit2
                })
                .collect(),
        )
    };
    build_group(vec![("i".into(), right_by(1)?), ("j".into(), right_by(2)?)])
}

/// Symmetric group on `n` points, generators `a = (0 1)` and `b = (0 1 .. n-1)`.
pub fn preset_symmetric(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidPreset("symmetric group needs n >= 2".into()));
    }
    let a = Permutation::from_cycles(n, &[&[0, 1]])?;
    let cycle: Vec<usize> = (0..n).collect();
    let b = Permutation::from_cycles(n, &[&cycle])?;
    build_group(vec![("a".into(), a), ("b".into(), b)])
}

/// Alternating group on `n >= 3` points, generated by the 3-cycles `(0 1 i)`.
pub fn preset_alternating(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidPreset("alternating group needs n >= 3".into()));
    }
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).map(|p| (format!("a{}", i - 1), p)))
        .collect::<Result<Vec<_>>>()?;
    build_group(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_subgroups(g: &FiniteGroup) -> usize {
        // every subgroup is generated by at most log2|G| elements; for tiny
        // groups just close every subset of size <= 2 and 3.
        let n = g.order();
        let mut all: HashSet<Vec<usize>> = HashSet::new();
        for mask in 0u64..(1u64 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
            if closed {
                all.insert(members);
            }
        }
        all.len()
    }

    #[test]
    fn dihedral_twelve_by_brute_force_closure() {
        let r = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let s = Permutation::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let g = build_group(vec![("r".into(), r), ("s".into(), s)]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn trivial_and_klein() {
        let g = build_group(vec![("e".into(), Permutation::new(vec![]).unwrap())]).unwrap();
        assert_eq!(g.order(), 1);
        let a = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[2, 3]]).unwrap();
        let k = build_group(vec![("a".into(), a), ("b".into(), b)]).unwrap();
        assert_eq!(k.order(), 4);
        assert_eq!(k.exponent(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_group(vec![]).unwrap_err(), Error::EmptyGeneratorList);
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            build_group(vec![("a".into(), a), ("b".into(), b)]),
            Err(Error::DegreeMismatch { .. })
        ));
        let s = preset_symmetric(5).unwrap();
        assert_eq!(s.order(), 120);
        let gens = vec![
            ("a".into(), s.element(s.generator("a").unwrap()).clone()),
            ("b".into(), s.element(s.generator("b").unwrap()).clone()),
        ];
        assert_eq!(
            build_group_with_cap(gens, 100).unwrap_err(),
            Error::OrderCapExceeded { cap: 100 }
        );
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn dihedral_presets() {
        for (q, order, exp) in [(3, 12, 6), (5, 20, 10), (1, 4, 2)] {
            let g = preset_dihedral(q).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.exponent(), exp);
            let r = g.generator("r").unwrap();
            let s = g.generator("s").unwrap();
            assert_eq!(g.element_order(r), 2 * q);
            assert_eq!(g.element_order(s), 2);
            assert_eq!(g.element_order(g.mul(s, r)), 2);
        }
        let klein = preset_dihedral(1).unwrap();
        assert!((1..4).all(|x| klein.element_order(x) == 2));
        assert!(preset_dihedral(4).is_err());
    }

    #[test]
    fn elementary_abelian() {
        for t in 1..=3 {
            let g = preset_elementary_abelian_2(t).unwrap();
            assert_eq!(g.order(), 1 << t);
            assert_eq!(g.exponent(), if t == 0 { 1 } else { 2 });
            assert!(g.is_abelian());
        }
        assert_eq!(preset_elementary_abelian_2(3).unwrap().classes().len(), 8);
        assert!(preset_elementary_abelian_2(12).is_err());
    }

    #[test]
    fn group_axioms_small() {
        for g in [
            preset_dihedral(3).unwrap(),
            preset_quaternion().unwrap(),
            preset_alternating(4).unwrap(),
        ] {
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, 0), a);
                assert_eq!(g.mul(a, g.inverse(a)), 0);
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
                assert_eq!(g.exponent() % g.element_order(a), 0);
            }
        }
    }

    #[test]
    fn classes_by_brute_force() {
        let brute = |g: &FiniteGroup| {
            let mut sizes: Vec<usize> = Vec::new();
            let mut done = vec![false; g.order()];
            for x in 0..g.order() {
                if done[x] {
                    continue;
                }
                let orbit: HashSet<usize> = (0..g.order()).map(|y| g.conjugate(x, y)).collect();
                for &o in &orbit {
                    done[o] = true;
                }
                sizes.push(orbit.len());
            }
            sizes.sort();
            sizes
        };
        let d12 = preset_dihedral(3).unwrap();
        let mut sizes = d12.classes().sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 3, 3]);
        assert_eq!(sizes, brute(&d12));
        let d20 = preset_dihedral(5).unwrap();
        assert_eq!(d20.classes().len(), 8);
        let mut s20 = d20.classes().sizes();
        s20.sort();
        assert_eq!(s20, brute(&d20));
        let z = preset_cyclic(7).unwrap();
        assert_eq!(z.classes().len(), 7);
        assert_eq!(d12.classes().class(0), &[0]);
    }

    #[test]
    fn subgroup_generation() {
        let g = preset_dihedral(3).unwrap();
        let r = g.generator("r").unwrap();
        let s = g.generator("s").unwrap();
        let sr = g.mul(s, r);
        assert_eq!(subgroup_generate(&g, &[s, sr]).unwrap().order(), 12);
        assert!(subgroup_generate(&g, &[]).unwrap().is_trivial());
        assert_eq!(subgroup_generate(&g, &[r]).unwrap().order(), 6);
        assert_eq!(
            subgroup_generate(&g, &[99]).unwrap_err(),
            Error::InvalidElementIndex {
                index: 99,
                order: 12
            }
        );
        let h = subgroup_generate(&g, &[s, r]).unwrap();
        let again = subgroup_generate(&g, h.members()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn subgroup_counts() {
        let d12 = preset_dihedral(3).unwrap();
        let subs = enumerate_subgroups(&d12).unwrap();
        assert_eq!(subs.len(), 16);
        assert_eq!(subs.len(), brute_force_subgroups(&d12));
        assert!(subs.first().unwrap().is_trivial());
        assert_eq!(subs.last().unwrap().order(), 12);

        let v4 = preset_elementary_abelian_2(2).unwrap();
        assert_eq!(enumerate_subgroups(&v4).unwrap().len(), 5);
        assert_eq!(brute_force_subgroups(&v4), 5);

        let one = build_group(vec![("e".into(), Permutation::identity(1))]).unwrap();
        assert_eq!(enumerate_subgroups(&one).unwrap().len(), 1);

        for g in [preset_quaternion().unwrap(), preset_alternating(4).unwrap()] {
            assert_eq!(enumerate_subgroups(&g).unwrap().len(), brute_force_subgroups(&g));
        }
        let s5 = preset_symmetric(5).unwrap();
        assert_eq!(enumerate_subgroups(&s5).unwrap().len(), 156);
        assert!(enumerate_subgroups_with_cap(&s5, 100).is_err());
    }

    #[test]
    fn coset_actions() {
        let g = preset_dihedral(3).unwrap();
        let full = coset_action(&g, &g.full_subgroup()).unwrap();
        assert_eq!(full.degree(), 1);
        let regular = coset_action(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(regular.degree(), 12);
        let s = g.generator("s").unwrap();
        let h = subgroup_generate(&g, &[s]).unwrap();
        let act = coset_action(&g, &h).unwrap();
        assert_eq!(act.degree(), 6);
        // transitive: orbit of coset 0 covers everything
        let orbit: HashSet<usize> = (0..12).map(|x| act.permutation(x).apply(0)).collect();
        assert_eq!(orbit.len(), 6);
        // stabilizer of the coset H is H
        let stab: Vec<usize> = (0..12).filter(|&x| act.permutation(x).apply(0) == 0).collect();
        assert_eq!(stab, h.members());
        for x in 0..12 {
            let direct = act
                .transversal()
                .iter()
                .filter(|&&t| h.contains(g.mul(g.mul(t, x), g.inverse(t))))
                .count();
            assert_eq!(act.permutation(x).fixed_points(), direct);
        }
    }

    #[test]
    fn partitions() {
        let q = 3;
        let g = preset_dihedral(q).unwrap();
        let r = g.generator("r").unwrap();
        let s = g.generator("s").unwrap();
        let mut parts = vec![subgroup_generate(&g, &[r]).unwrap()];
        for i in 0..2 * q as i64 {
            parts.push(subgroup_generate(&g, &[g.mul(s, g.pow(r, i))]).unwrap());
        }
        assert!(is_partition(&g, &parts).is_ok());
        assert!(is_partition(&g, &[g.full_subgroup()]).is_ok());
        let r2 = subgroup_generate(&g, &[g.pow(r, 2)]).unwrap();
        let rr = subgroup_generate(&g, &[r]).unwrap();
        assert!(matches!(
            is_partition(&g, &[rr, r2]),
            Err(PartitionWitness::Overlap { first: 0, second: 1, .. })
        ));
    }

    #[test]
    fn words_round_trip() {
        let g = preset_dihedral(3).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.parse_word(&g.word(x)).unwrap(), x);
        }
        let s = g.generator("s").unwrap();
        let r = g.generator("r").unwrap();
        assert_eq!(g.parse_word("s*r^2").unwrap(), g.mul(s, g.pow(r, 2)));
        assert_eq!(g.parse_word("r^-1").unwrap(), g.inverse(r));
        assert_eq!(g.parse_word("1").unwrap(), 0);
        assert_eq!(g.parse_word("#3").unwrap(), 3);
        assert_eq!(g.parse_word("x").unwrap_err(), Error::UnknownGenerator("x".into()));
    }

    #[test]
    fn quaternion_structure() {
        let g = preset_quaternion().unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.classes().len(), 5);
        // unique involution
        assert_eq!((1..8).filter(|&x| g.element_order(x) == 2).count(), 1);
    }
}
