//! Isotypical decomposition of the Jacobian of a surface with a group action,
//! the admissibility test for collections of subgroups and the reports built
//! on top of it.
//!
//! For the rational irreducibles `W_1, .., W_r` of `G` (with `W_1` trivial)
//! the Jacobian splits up to isogeny as `B_1^{n_1} x .. x B_r^{n_r}` and, for
//! every subgroup `H`, the Jacobian of `C/H` as the product of the
//! `B_l^{n_l^H}` with `n_l^H = dim V_l^H / s_l`. Everything below is integer
//! bookkeeping with these exponents and the dimensions `dim B_l`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{
    character_table, fixed_dim, inner_product, permutation_character, rational_classes,
    CharacterTable, ClassFunction, RationalClass,
};
use crate::covering::{validate_action, BranchData, CoveringAction, RestrictedAction};
use crate::cyclotomic::{rational, rational_int, rational_to_i64, Rational};
use crate::error::{Error, Result};
use crate::group::{
    enumerate_subgroups, is_partition, join, permute, preset_elementary_abelian_2,
    subgroup_generate, FiniteGroup, Subgroup,
};

/// One factor `B_l` of the group algebra decomposition.
#[derive(Clone, Debug)]
pub struct IsotypicalFactor {
    /// 1-based position among the rational classes
    pub label: usize,
    pub class: RationalClass,
    pub dim_b: u64,
}

impl IsotypicalFactor {
    /// The exponent `n_l` of `B_l` in the decomposition of `JC`.
    pub fn exponent(&self) -> u64 {
        self.class.n
    }
}

/// How the Jacobian of `C/H` decomposes in terms of the factors `B_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupProfile {
    pub label: String,
    pub subgroup: Subgroup,
    pub genus: u64,
    /// `dim V_l^H` for the representative of each rational class
    pub fixed_dims: Vec<u64>,
    /// `n_l^H`
    pub exponents: Vec<u64>,
    /// e.g. `JC_<s> ~ B_3 x B_5 x B_6`
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub ambient: String,
    pub subgroups: Vec<String>,
    pub genera: Vec<u64>,
    /// `sum_i dim V_l^{H_i}` per class
    pub sums: Vec<u64>,
    /// `d_l - sum_i dim V_l^{H_i}` on classes with `B_l != 0`
    pub slacks: Vec<Option<i64>>,
    pub verdict: bool,
}

impl AdmissibilityReport {
    pub fn genus_sum(&self) -> u64 {
        self.genera.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub subgroups: Vec<String>,
    pub total_genus: u64,
    pub genera: Vec<u64>,
    /// `delta_l / s_l` on classes with `B_l != 0`
    pub reduced_slacks: Vec<Option<i64>>,
    pub dim_p: u64,
    pub full: bool,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub subgroups: [String; 2],
    pub join: String,
    pub total_genus: u64,
    pub genera: [u64; 2],
    pub join_genus: u64,
    /// `n_l + n_l^{join} - n_l^{H_1} - n_l^{H_2}` for every class
    pub reduced_slacks: Vec<i64>,
    pub dim_p: u64,
    /// the join has genus zero and `g_C = g_{H_1} + g_{H_2}`
    pub full: bool,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrymContainmentReport {
    pub index: usize,
    pub subgroup: String,
    pub prym_dim: u64,
    pub others_genus: u64,
    pub holds: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularFormReport {
    /// multiplicity of the trivial representation in the sum
    pub trivial_multiplicity: u64,
    /// `1 + |G| (-1 + sum 1/|H_i|)`
    pub formula: String,
    /// whether the sum equals `rho_reg + (t-1) W_1` as class functions
    pub regular_form: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub subgroups: Vec<String>,
    /// `sum_i dim V_l^{H_i} = d_l` on the support
    pub statement2: bool,
    /// multiplicity of `W_l` in the sum of permutation representations,
    /// obtained by inner products
    pub multiplicities: Vec<u64>,
    /// multiplicities equal `n_l` on the support
    pub statement3: bool,
    /// present when `B_l = 0` exactly for the trivial class
    pub regular_form: Option<RegularFormReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub first: usize,
    pub second: usize,
    pub permute: bool,
    /// genus of `C/(H_i H_j)`, when the product is a subgroup
    pub product_genus: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutingReport {
    pub subgroups: Vec<String>,
    pub pairs: Vec<PairCheck>,
    pub pairwise_permute: bool,
    pub products_genus_zero: bool,
    pub genus_sum_matches: bool,
    pub applies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub subgroups: Vec<String>,
    /// `sum_i |H_i| rho_{H_i}` on conjugacy classes
    pub weighted_sum: Vec<i64>,
    /// `(t-1) rho_reg + |G| W_1` on conjugacy classes
    pub expected: Vec<i64>,
    pub character_identity: bool,
    /// `(sum_i |H_i| dim V_l^{H_i}, (t-1) d_l)` for classes `l >= 2`
    pub class_identities: Vec<(u64, u64)>,
    pub class_identity: bool,
    /// `(t-1) g_C + |G| gamma`
    pub dimension_lhs: u64,
    /// `sum_i |H_i| g_{H_i}`
    pub dimension_rhs: u64,
    pub dimension_identity: bool,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepProfile {
    /// multiplicity of `W_l` in the rational representation
    pub multiplicities: Vec<u64>,
    pub dims_w: Vec<u64>,
    pub total_degree: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_t: usize,
    pub require_full: bool,
    /// keep one collection per multiset of subgroup conjugacy classes
    pub dedupe_conjugates: bool,
}

/// The group algebra decomposition of one action, with cached per-subgroup
/// data.
#[derive(Debug)]
pub struct Decomposition {
    data: BranchData,
    table: CharacterTable,
    factors: Vec<IsotypicalFactor>,
    total_genus: u64,
    profiles: Mutex<HashMap<Subgroup, SubgroupProfile>>,
}

impl Decomposition {
    /// Validates the action and computes the factors with heuristic Schur
    /// indices.
    pub fn new(action: &CoveringAction) -> Result<Self> {
        Self::with_schur(action, &BTreeMap::new())
    }

    /// `overrides` maps an orbit representative (index of the irreducible
    /// character) to its Schur index.
    pub fn with_schur(action: &CoveringAction, overrides: &BTreeMap<usize, u64>) -> Result<Self> {
        validate_action(action)?;
        Self::from_branch_data(action.branch_data(), overrides)
    }

    pub fn from_branch_data(data: BranchData, overrides: &BTreeMap<usize, u64>) -> Result<Self> {
        let table = character_table(data.group().clone())?;
        let classes = rational_classes(&table, overrides)?;
        let total_genus = data.total_genus()?;
        let gamma = data.orbit_genus() as i64;
        let g = data.group().clone();
        let cyclic: Vec<Subgroup> = data
            .branch_elements()
            .iter()
            .map(|&c| subgroup_generate(&g, &[c]))
            .collect::<Result<_>>()?;

        let mut factors = Vec::with_capacity(classes.len());
        for (l, class) in classes.into_iter().enumerate() {
            let dim_b = if l == 0 {
                data.orbit_genus()
            } else {
                // s [K:Q] (d (gamma - 1) + 1/2 sum_k (d - dim V^{<c_k>}))
                let chi = table.irreducible(class.representative());
                let d = class.degree as i64;
                let mut inner = rational_int(d * (gamma - 1));
                for h in &cyclic {
                    let fixed = fixed_dim(&g, chi, h)? as i64;
                    inner += rational(d - fixed, 2);
                }
                let value = inner * rational_int((class.schur_index * class.field_degree) as i64);
                match rational_to_i64(&value) {
                    Some(v) if v >= 0 => v as u64,
                    _ => {
                        return Err(Error::NonIntegralDimension {
                            class: l + 1,
                            value: value.to_string(),
                        })
                    }
                }
            };
            factors.push(IsotypicalFactor {
                label: l + 1,
                class,
                dim_b,
            });
        }

        let conserved: u64 = factors.iter().map(|f| f.exponent() * f.dim_b).sum();
        if conserved != total_genus {
            return Err(Error::IdentityViolated(format!(
                "sum of n_l dim B_l is {conserved}, but Riemann-Hurwitz gives genus {total_genus}"
            )));
        }
        Ok(Self {
            data,
            table,
            factors,
            total_genus,
            profiles: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.data.group()
    }

    pub fn branch_data(&self) -> &BranchData {
        &self.data
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn factors(&self) -> &[IsotypicalFactor] {
        &self.factors
    }

    pub fn factor(&self, label: usize) -> &IsotypicalFactor {
        &self.factors[label - 1]
    }

    pub fn total_genus(&self) -> u64 {
        self.total_genus
    }

    pub fn orbit_genus(&self) -> u64 {
        self.data.orbit_genus()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.dim_b).collect()
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.factors.iter().map(IsotypicalFactor::exponent).collect()
    }

    /// Classes with `B_l != 0`.
    pub fn support(&self) -> Vec<bool> {
        self.factors.iter().map(|f| f.dim_b != 0).collect()
    }

    /// `JC ~_G B_1^{n_1} x ..`, listing every factor.
    pub fn statement(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| power("B", f.label, f.exponent()))
            .collect();
        format!("JC ~ {}", parts.join(" x "))
    }

    pub fn subgroup_label(&self, h: &Subgroup) -> String {
        self.group().subgroup_label(h)
    }

    /// `dim V_l^H` for every rational class, both routes checked.
    pub fn fixed_dims(&self, h: &Subgroup) -> Result<Vec<u64>> {
        Ok(self.profile(h)?.fixed_dims)
    }

    pub fn profile(&self, h: &Subgroup) -> Result<SubgroupProfile> {
        if let Some(p) = self.profiles.lock().expect("profile cache poisoned").get(h) {
            return Ok(p.clone());
        }
        let profile = self.compute_profile(h)?;
        self.profiles
            .lock()
            .expect("profile cache poisoned")
            .insert(h.clone(), profile.clone());
        Ok(profile)
    }

    fn compute_profile(&self, h: &Subgroup) -> Result<SubgroupProfile> {
        let g = self.group();
        if h.members().iter().any(|&m| m >= g.order()) {
            return Err(Error::NotASubgroup);
        }
        let genus = self.data.quotient_genus(h)?;
        let mut fixed_dims = Vec::with_capacity(self.factors.len());
        let mut exponents = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let d = fixed_dim(g, self.table.irreducible(f.class.representative()), h)?;
            if d % f.class.schur_index != 0 {
                return Err(Error::NonIntegralMultiplicity { class: f.label });
            }
            let n = d / f.class.schur_index;
            if n > f.exponent() {
                return Err(Error::IdentityViolated(format!(
                    "n_{}^H = {n} exceeds n_{} = {}",
                    f.label,
                    f.label,
                    f.exponent()
                )));
            }
            fixed_dims.push(d);
            exponents.push(n);
        }
        let by_factors: u64 = exponents
            .iter()
            .zip(&self.factors)
            .map(|(n, f)| n * f.dim_b)
            .sum();
        if by_factors != genus {
            return Err(Error::IdentityViolated(format!(
                "quotient by {} has genus {genus} by Riemann-Hurwitz but {by_factors} by factors",
                self.subgroup_label(h)
            )));
        }
        let label = self.subgroup_label(h);
        let statement = format!("JC_{label} ~ {}", self.render_product(&exponents));
        Ok(SubgroupProfile {
            label,
            subgroup: h.clone(),
            genus,
            fixed_dims,
            exponents,
            statement,
        })
    }

    /// Product of the nonzero factors with the given exponents.
    fn render_product(&self, exponents: &[u64]) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(exponents)
            .filter(|(f, &n)| n > 0 && f.dim_b > 0)
            .map(|(f, &n)| power("B", f.label, n))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" x ")
        }
    }

    pub fn quotient_genus(&self, h: &Subgroup) -> Result<u64> {
        Ok(self.profile(h)?.genus)
    }

    /// Dimension of the Prym variety of `C -> C/H`.
    pub fn prym_dim(&self, h: &Subgroup) -> Result<u64> {
        Ok(self.total_genus - self.quotient_genus(h)?)
    }

    pub fn check_admissible(&self, collection: &[Subgroup]) -> Result<AdmissibilityReport> {
        if collection.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let profiles: Vec<SubgroupProfile> =
            collection.iter().map(|h| self.profile(h)).collect::<Result<_>>()?;
        let mut sums = vec![0u64; self.factors.len()];
        for p in &profiles {
            for (s, d) in sums.iter_mut().zip(&p.fixed_dims) {
                *s += d;
            }
        }
        let slacks: Vec<Option<i64>> = self
            .factors
            .iter()
            .zip(&sums)
            .map(|(f, &s)| (f.dim_b != 0).then(|| f.class.degree as i64 - s as i64))
            .collect();
        let verdict = slacks.iter().flatten().all(|&d| d >= 0);
        Ok(AdmissibilityReport {
            ambient: self.subgroup_label(&self.group().full_subgroup()),
            subgroups: profiles.iter().map(|p| p.label.clone()).collect(),
            genera: profiles.iter().map(|p| p.genus).collect(),
            sums,
            slacks,
            verdict,
        })
    }

    /// Admissibility with the join of the collection as the acting group.
    pub fn check_admissible_in_join(&self, collection: &[Subgroup]) -> Result<AdmissibilityReport> {
        let (inner, local) = self.restrict_to_join(collection)?;
        let mut report = inner.check_admissible(&local)?;
        let ambient = self.join_of(collection)?;
        report.ambient = self.subgroup_label(&ambient);
        report.subgroups = collection.iter().map(|h| self.subgroup_label(h)).collect();
        Ok(report)
    }

    fn join_of(&self, collection: &[Subgroup]) -> Result<Subgroup> {
        let g = self.group();
        let first = collection.first().ok_or(Error::EmptyCollection)?;
        Ok(collection[1..]
            .iter()
            .fold(first.clone(), |acc, h| join(g, &acc, h)))
    }

    /// The decomposition for the join `K` of the collection acting on the
    /// same surface, together with the collection transported into `K`.
    pub fn restrict_to_join(&self, collection: &[Subgroup]) -> Result<(Decomposition, Vec<Subgroup>)> {
        let k = self.join_of(collection)?;
        let restricted: RestrictedAction = self.data.restrict_to(&k)?;
        let local: Vec<Subgroup> = collection
            .iter()
            .map(|h| restricted.pull_back(self.group(), h))
            .collect::<Result<_>>()?;
        let inner = Decomposition::from_branch_data(restricted.data, &BTreeMap::new())?;
        if inner.total_genus != self.total_genus {
            return Err(Error::IdentityViolated(
                "restricted action changed the genus".into(),
            ));
        }
        Ok((inner, local))
    }

    /// `JC ~ JC_{H_1} x .. x JC_{H_t} x P` for an admissible collection.
    pub fn decompose(&self, collection: &[Subgroup]) -> Result<DecompositionReport> {
        let report = self.check_admissible(collection)?;
        if !report.verdict {
            return Err(Error::NotAdmissible);
        }
        let mut reduced_slacks = Vec::with_capacity(self.factors.len());
        let mut dim_p: i64 = 0;
        for (f, slack) in self.factors.iter().zip(&report.slacks) {
            match slack {
                Some(delta) => {
                    let s = f.class.schur_index as i64;
                    if delta % s != 0 {
                        return Err(Error::IdentityViolated(format!(
                            "slack {delta} of class {} is not divisible by its Schur index {s}",
                            f.label
                        )));
                    }
                    reduced_slacks.push(Some(delta / s));
                    dim_p += delta / s * f.dim_b as i64;
                }
                None => reduced_slacks.push(None),
            }
        }
        let by_genus = self.total_genus as i64 - report.genus_sum() as i64;
        if dim_p != by_genus {
            return Err(Error::IdentityViolated(format!(
                "dim P is {dim_p} from the factors but {by_genus} from the genera"
            )));
        }
        let full = dim_p == 0;
        let mut parts: Vec<String> = report.subgroups.iter().map(|l| format!("JC_{l}")).collect();
        if !full {
            parts.push("P".into());
        }
        Ok(DecompositionReport {
            subgroups: report.subgroups.clone(),
            total_genus: self.total_genus,
            genera: report.genera.clone(),
            reduced_slacks,
            dim_p: dim_p as u64,
            full,
            statement: format!("JC ~ {}", parts.join(" x ")),
        })
    }

    /// `JC x JC_{<H_1, H_2>} ~ JC_{H_1} x JC_{H_2} x P`, no admissibility needed.
    pub fn pair_decomposition(&self, h1: &Subgroup, h2: &Subgroup) -> Result<PairReport> {
        let g = self.group();
        let k = join(g, h1, h2);
        let (p1, p2, pk) = (self.profile(h1)?, self.profile(h2)?, self.profile(&k)?);
        let mut reduced_slacks = Vec::with_capacity(self.factors.len());
        let mut dim_p: i64 = 0;
        for (l, f) in self.factors.iter().enumerate() {
            let delta = f.exponent() as i64 + pk.exponents[l] as i64
                - p1.exponents[l] as i64
                - p2.exponents[l] as i64;
            if delta < 0 {
                return Err(Error::IdentityViolated(format!(
                    "subspace-sum slack of class {} is negative ({delta})",
                    f.label
                )));
            }
            reduced_slacks.push(delta);
            dim_p += delta * f.dim_b as i64;
        }
        let by_genus =
            self.total_genus as i64 + pk.genus as i64 - p1.genus as i64 - p2.genus as i64;
        if dim_p != by_genus {
            return Err(Error::IdentityViolated(format!(
                "dim P is {dim_p} from the factors but {by_genus} from the genera"
            )));
        }
        let full = pk.genus == 0 && dim_p == 0;
        let mut rhs = vec![format!("JC_{}", p1.label), format!("JC_{}", p2.label)];
        if dim_p != 0 {
            rhs.push("P".into());
        }
        let lhs = if pk.genus == 0 {
            "JC".to_string()
        } else {
            format!("JC x JC_{}", pk.label)
        };
        Ok(PairReport {
            subgroups: [p1.label.clone(), p2.label.clone()],
            join: pk.label.clone(),
            total_genus: self.total_genus,
            genera: [p1.genus, p2.genus],
            join_genus: pk.genus,
            reduced_slacks,
            dim_p: dim_p as u64,
            full,
            statement: format!("{lhs} ~ {}", rhs.join(" x ")),
        })
    }

    /// The other quotients of an admissible collection sit inside the Prym
    /// variety of `C -> C/H_k`.
    pub fn prym_containment(&self, collection: &[Subgroup], k: usize) -> Result<PrymContainmentReport> {
        if k >= collection.len() {
            return Err(Error::CollectionIndex {
                index: k,
                len: collection.len(),
            });
        }
        let report = self.decompose(collection)?;
        let prym_dim = self.prym_dim(&collection[k])?;
        let others_genus: u64 = report
            .genera
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g)
            .sum();
        let holds = others_genus <= prym_dim;
        let equality = others_genus == prym_dim;
        if !holds || equality != report.full {
            return Err(Error::IdentityViolated(format!(
                "Prym containment fails: {others_genus} against {prym_dim}"
            )));
        }
        Ok(PrymContainmentReport {
            index: k,
            subgroup: report.subgroups[k].clone(),
            prym_dim,
            others_genus,
            holds,
            equality,
        })
    }

    /// Sum of the permutation characters of the collection.
    fn permutation_sum(&self, collection: &[Subgroup]) -> Result<ClassFunction> {
        let g = self.group();
        let mut sum = ClassFunction::from_integers(g, &vec![0; g.classes().len()])?;
        for h in collection {
            sum = sum.add(&permutation_character(g, h)?)?;
        }
        Ok(sum)
    }

    /// Multiplicity of each `W_l` in a rational-valued character.
    fn rational_multiplicities(&self, chi: &ClassFunction) -> Result<Vec<u64>> {
        let g = self.group();
        self.factors
            .iter()
            .map(|f| {
                let ip = inner_product(g, chi, self.table.irreducible(f.class.representative()))?
                    / rational_int(f.class.schur_index as i64);
                match rational_to_i64(&ip) {
                    Some(v) if v >= 0 => Ok(v as u64),
                    _ => Err(Error::NonIntegralMultiplicity { class: f.label }),
                }
            })
            .collect()
    }

    /// Statements (2) and (3) of the equivalence, evaluated independently:
    /// (2) from fixed dimensions and the factor dimensions, (3) from inner
    /// products of permutation characters and the rational representation.
    pub fn equivalence(&self, collection: &[Subgroup]) -> Result<EquivalenceReport> {
        if collection.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let admissibility = self.check_admissible(collection)?;
        let statement2 = admissibility.slacks.iter().flatten().all(|&d| d == 0);

        let rac = self.rational_rep()?;
        let sum = self.permutation_sum(collection)?;
        let multiplicities = self.rational_multiplicities(&sum)?;
        let statement3 = self
            .factors
            .iter()
            .zip(&multiplicities)
            .zip(&rac.multiplicities)
            .filter(|(_, &m_rac)| m_rac != 0)
            .all(|((f, &a), _)| a == f.exponent());
        if statement2 != statement3 {
            return Err(Error::IdentityViolated(format!(
                "equivalence fails: statement (2) is {statement2}, statement (3) is {statement3}"
            )));
        }

        let only_trivial_vanishes = self
            .factors
            .iter()
            .all(|f| (f.dim_b == 0) == (f.label == 1));
        let regular_form_check = if only_trivial_vanishes {
            let g = self.group();
            let t = collection.len() as i64;
            let reciprocal_sum = collection
                .iter()
                .fold(Rational::zero(), |acc, h| acc + rational(1, h.order() as i64));
            let formula = Rational::one()
                + rational_int(g.order() as i64) * (reciprocal_sum - Rational::one());
            let regular = ClassFunction::regular(g);
            let target = regular.add(&ClassFunction::trivial(g).scale(&rational_int(t - 1)))?;
            let regular_form = sum == target;
            if regular_form != statement3 {
                return Err(Error::IdentityViolated(
                    "regular-representation form disagrees with statement (3)".into(),
                ));
            }
            if regular_form && (multiplicities[0] as i64 != t || formula != rational_int(t)) {
                return Err(Error::IdentityViolated(format!(
                    "trivial multiplicity {} and formula {formula} should both equal t = {t}",
                    multiplicities[0]
                )));
            }
            Some(RegularFormReport {
                trivial_multiplicity: multiplicities[0],
                formula: formula.to_string(),
                regular_form,
            })
        } else {
            None
        };

        Ok(EquivalenceReport {
            subgroups: admissibility.subgroups,
            statement2,
            multiplicities,
            statement3,
            regular_form: regular_form_check,
        })
    }

    /// Checks the three hypotheses of the pairwise-permuting criterion.
    pub fn permuting_criterion(&self, collection: &[Subgroup]) -> Result<PermutingReport> {
        let g = self.group();
        let mut pairs = Vec::new();
        for i in 0..collection.len() {
            for j in i + 1..collection.len() {
                let commute = permute(g, &collection[i], &collection[j]);
                let product_genus = if commute {
                    Some(self.quotient_genus(&join(g, &collection[i], &collection[j]))?)
                } else {
                    None
                };
                pairs.push(PairCheck {
                    first: i,
                    second: j,
                    permute: commute,
                    product_genus,
                });
            }
        }
        let pairwise_permute = pairs.iter().all(|p| p.permute);
        let products_genus_zero = pairwise_permute && pairs.iter().all(|p| p.product_genus == Some(0));
        let genera: Vec<u64> = collection
            .iter()
            .map(|h| self.quotient_genus(h))
            .collect::<Result<_>>()?;
        let genus_sum_matches = genera.iter().sum::<u64>() == self.total_genus;
        Ok(PermutingReport {
            subgroups: collection.iter().map(|h| self.subgroup_label(h)).collect(),
            pairs,
            pairwise_permute,
            products_genus_zero,
            genus_sum_matches,
            applies: pairwise_permute && products_genus_zero && genus_sum_matches,
        })
    }

    /// Identities attached to a partition of the group into subgroups.
    pub fn partition_identities(&self, collection: &[Subgroup]) -> Result<PartitionReport> {
        let g = self.group();
        is_partition(g, collection).map_err(Error::NotAPartition)?;
        let t = collection.len() as i64;
        let n = g.order() as i64;
        let classes = g.classes().len();

        let mut weighted_sum = vec![0i64; classes];
        for h in collection {
            let rho = permutation_character(g, h)?;
            for (c, slot) in weighted_sum.iter_mut().enumerate() {
                let v = rho.value(c).to_rational().and_then(|q| rational_to_i64(&q)).ok_or_else(
                    || Error::IdentityViolated("permutation character is not integral".into()),
                )?;
                *slot += h.order() as i64 * v;
            }
        }
        let expected: Vec<i64> = (0..classes)
            .map(|c| if c == 0 { (t - 1) * n + n } else { n })
            .collect();
        let character_identity = weighted_sum == expected;

        let mut class_identities = Vec::new();
        for (l, f) in self.factors.iter().enumerate().skip(1) {
            let mut lhs = 0u64;
            for h in collection {
                lhs += self.profile(h)?.fixed_dims[l] * h.order() as u64;
            }
            class_identities.push((lhs, (t as u64 - 1) * f.class.degree));
        }
        let class_identity = class_identities.iter().all(|(a, b)| a == b);

        let dimension_lhs = (t as u64 - 1) * self.total_genus + n as u64 * self.orbit_genus();
        let mut dimension_rhs = 0;
        for h in collection {
            dimension_rhs += h.order() as u64 * self.quotient_genus(h)?;
        }
        let dimension_identity = dimension_lhs == dimension_rhs;

        let mut rhs: Vec<String> = Vec::new();
        for h in collection {
            rhs.push(power_str(&format!("JC_{}", self.subgroup_label(h)), h.order() as u64));
        }
        let statement = format!(
            "{} x {} ~ {}",
            power_str("JC", t as u64 - 1),
            power_str("JC_G", n as u64),
            rhs.join(" x ")
        );
        Ok(PartitionReport {
            subgroups: collection.iter().map(|h| self.subgroup_label(h)).collect(),
            weighted_sum,
            expected,
            character_identity,
            class_identities,
            class_identity,
            dimension_lhs,
            dimension_rhs,
            dimension_identity,
            statement,
        })
    }

    /// Multiplicities of the rational irreducibles in the rational
    /// representation, computed from the character
    /// `2 + 2(gamma - 1) rho_reg + sum_k (rho_reg - rho_{<c_k>})` and checked
    /// against `2 n_l dim B_l / dim W_l`.
    pub fn rational_rep(&self) -> Result<RationalRepProfile> {
        let g = self.group();
        let regular = ClassFunction::regular(g);
        let gamma = self.orbit_genus() as i64;
        let mut chi = ClassFunction::trivial(g)
            .scale(&rational_int(2))
            .add(&regular.scale(&rational_int(2 * (gamma - 1))))?;
        for &c in self.data.branch_elements() {
            let cyclic = subgroup_generate(g, &[c])?;
            chi = chi.add(&regular)?.sub(&permutation_character(g, &cyclic)?)?;
        }
        let multiplicities = self.rational_multiplicities(&chi)?;
        let dims_w: Vec<u64> = self.factors.iter().map(|f| f.class.dim_w()).collect();
        for ((f, &m), &w) in self.factors.iter().zip(&multiplicities).zip(&dims_w) {
            if m * w != 2 * f.exponent() * f.dim_b {
                return Err(Error::IdentityViolated(format!(
                    "class {}: multiplicity {m} in the rational representation, but dim B = {}",
                    f.label, f.dim_b
                )));
            }
        }
        let total_degree: u64 = multiplicities.iter().zip(&dims_w).map(|(m, w)| m * w).sum();
        if total_degree != 2 * self.total_genus {
            return Err(Error::IdentityViolated(format!(
                "rational representation has degree {total_degree}, expected {}",
                2 * self.total_genus
            )));
        }
        Ok(RationalRepProfile {
            multiplicities,
            dims_w,
            total_degree,
        })
    }

    /// All admissible collections of distinct subgroups of size at most
    /// `max_t`, ordered by size and then by position in the subgroup list.
    pub fn search(&self, options: &SearchOptions) -> Result<Vec<AdmissibilityReport>> {
        let g = self.group();
        let subgroups = enumerate_subgroups(g)?;
        let classes = subgroup_classes(g, &subgroups);
        let fixed: Vec<Vec<u64>> = subgroups
            .iter()
            .map(|h| self.fixed_dims(h))
            .collect::<Result<_>>()?;
        let genera: Vec<u64> = subgroups
            .iter()
            .map(|h| self.quotient_genus(h))
            .collect::<Result<_>>()?;
        let support = self.support();
        let degrees: Vec<u64> = self.factors.iter().map(|f| f.class.degree).collect();
        let fits = |sums: &[u64]| {
            sums.iter()
                .zip(&degrees)
                .zip(&support)
                .all(|((s, d), &on)| !on || s <= d)
        };

        // admissibility is inherited by subcollections, so every admissible
        // collection extends an admissible one with one subgroup fewer
        let mut layer: Vec<(Vec<usize>, Vec<u64>)> = vec![(Vec::new(), vec![0; degrees.len()])];
        let mut found: Vec<Vec<usize>> = Vec::new();
        for _ in 0..options.max_t {
            let mut next = Vec::new();
            for (members, sums) in &layer {
                let start = members.last().map_or(0, |&i| i + 1);
                for j in start..subgroups.len() {
                    let extended: Vec<u64> = sums.iter().zip(&fixed[j]).map(|(a, b)| a + b).collect();
                    if fits(&extended) {
                        let mut m = members.clone();
                        m.push(j);
                        next.push((m, extended));
                    }
                }
            }
            found.extend(next.iter().map(|(m, _)| m.clone()));
            layer = next;
        }

        let mut seen = std::collections::HashSet::new();
        let mut reports = Vec::new();
        for members in found {
            if options.require_full
                && members.iter().map(|&i| genera[i]).sum::<u64>() != self.total_genus
            {
                continue;
            }
            if options.dedupe_conjugates {
                let mut key: Vec<usize> = members.iter().map(|&i| classes[i]).collect();
                key.sort_unstable();
                if !seen.insert(key) {
                    continue;
                }
            }
            let collection: Vec<Subgroup> = members.iter().map(|&i| subgroups[i].clone()).collect();
            let report = self.check_admissible(&collection)?;
            debug_assert!(report.verdict);
            reports.push(report);
        }
        Ok(reports)
    }
}

/// For each subgroup, the position of the first conjugate in the list.
fn subgroup_classes(g: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<usize> {
    let mut class = vec![usize::MAX; subgroups.len()];
    for i in 0..subgroups.len() {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = i;
        for x in 0..g.order() {
            let conj = subgroups[i].conjugate(g, x);
            if let Ok(j) = subgroups.binary_search(&conj) {
                class[j] = i;
            }
        }
    }
    class
}

fn power(symbol: &str, label: usize, exponent: u64) -> String {
    power_str(&format!("{symbol}_{label}"), exponent)
}

fn power_str(base: &str, exponent: u64) -> String {
    if exponent == 1 {
        base.to_string()
    } else {
        format!("{base}^{exponent}")
    }
}

pub fn factor_dimensions(action: &CoveringAction) -> Result<Vec<IsotypicalFactor>> {
    Ok(Decomposition::new(action)?.factors)
}

pub fn subgroup_profile(action: &CoveringAction, h: &Subgroup) -> Result<SubgroupProfile> {
    Decomposition::new(action)?.profile(h)
}

pub fn check_admissible(action: &CoveringAction, collection: &[Subgroup]) -> Result<AdmissibilityReport> {
    Decomposition::new(action)?.check_admissible(collection)
}

pub fn theorem1_report(action: &CoveringAction, collection: &[Subgroup]) -> Result<DecompositionReport> {
    Decomposition::new(action)?.decompose(collection)
}

pub fn prop2_report(action: &CoveringAction, h1: &Subgroup, h2: &Subgroup) -> Result<PairReport> {
    Decomposition::new(action)?.pair_decomposition(h1, h2)
}

pub fn prym_dim(action: &CoveringAction, h: &Subgroup) -> Result<u64> {
    Decomposition::new(action)?.prym_dim(h)
}

pub fn corollary1_check(
    action: &CoveringAction,
    collection: &[Subgroup],
    k: usize,
) -> Result<PrymContainmentReport> {
    Decomposition::new(action)?.prym_containment(collection, k)
}

pub fn prop1_equivalence(action: &CoveringAction, collection: &[Subgroup]) -> Result<EquivalenceReport> {
    Decomposition::new(action)?.equivalence(collection)
}

pub fn theorem_b_report(action: &CoveringAction, collection: &[Subgroup]) -> Result<PartitionReport> {
    Decomposition::new(action)?.partition_identities(collection)
}

pub fn theorem_c_check(action: &CoveringAction, collection: &[Subgroup]) -> Result<PermutingReport> {
    Decomposition::new(action)?.permuting_criterion(collection)
}

pub fn rational_rep_profile(action: &CoveringAction) -> Result<RationalRepProfile> {
    Decomposition::new(action)?.rational_rep()
}

pub fn search_admissible(
    action: &CoveringAction,
    max_t: usize,
    require_full: bool,
    dedupe_conjugates: bool,
) -> Result<Vec<AdmissibilityReport>> {
    Decomposition::new(action)?.search(&SearchOptions {
        max_t,
        require_full,
        dedupe_conjugates,
    })
}

/// A fiber product of hyperelliptic curves as a `Z_2^t` action, together
/// with everything predicted about it and everything computed.
#[derive(Clone, Debug)]
pub struct FiberPlan {
    pub genera: Vec<u64>,
    pub action: CoveringAction,
    /// `K_i = <e_j : j != i>`, with `C/K_i` the i-th input curve
    pub subgroups: Vec<Subgroup>,
    pub subgroup_genera: Vec<u64>,
    pub predicted_genus: u64,
    pub genus: u64,
    pub predicted_dim_p: u64,
    pub dim_p: u64,
    pub admissible: bool,
    /// For plans built from elliptic curves: the elliptic factors carried by
    /// each input curve, 1-based.
    pub pairing: Vec<Vec<usize>>,
}

/// `1 - 2^t + 2^{t-1}(t + sum g_i)`
pub fn fiber_genus_formula(genera: &[u64]) -> u64 {
    let t = genera.len() as u32;
    let sum: u64 = genera.iter().sum();
    1 + (1u64 << (t - 1)) * (t as u64 + sum) - (1u64 << t)
}

/// `1 + 2^{t-1} t - 2^t + (2^{t-1} - 1) sum g_i`
pub fn fiber_prym_formula(genera: &[u64]) -> u64 {
    let t = genera.len() as u32;
    let sum: u64 = genera.iter().sum();
    1 + (1u64 << (t - 1)) * t as u64 + ((1u64 << (t - 1)) - 1) * sum - (1u64 << t)
}

/// Genus of the fiber product built from `t` elliptic curves, paired into
/// genus-2 curves: `1 - 2^{t/2} + 3t 2^{t/2 - 2}` for even `t` and
/// `1 - 2^{(t+1)/2} + (3t+1) 2^{(t-3)/2}` for odd `t`.
pub fn elliptic_genus_formula(t: u64) -> Result<u64> {
    if t < 2 {
        return Err(Error::TooFewFactors(t as usize));
    }
    let two_pow = |k: i64| -> Rational {
        if k >= 0 {
            rational_int(1i64 << k)
        } else {
            rational(1, 1i64 << -k)
        }
    };
    let t = t as i64;
    let value = if t % 2 == 0 {
        Rational::one() - two_pow(t / 2) + rational_int(3 * t) * two_pow(t / 2 - 2)
    } else {
        Rational::one() - two_pow((t + 1) / 2) + rational_int(3 * t + 1) * two_pow((t - 3) / 2)
    };
    rational_to_i64(&value)
        .map(|v| v as u64)
        .ok_or_else(|| Error::NonIntegralGenus(value.to_string()))
}

/// The fiber product of hyperelliptic curves of the given genera.
pub fn fiber_product_action(genera: &[u64]) -> Result<FiberPlan> {
    if genera.len() < 2 {
        return Err(Error::TooFewFactors(genera.len()));
    }
    build_fiber(genera)
}

fn build_fiber(genera: &[u64]) -> Result<FiberPlan> {
    let t = genera.len();
    if t == 0 {
        return Err(Error::TooFewFactors(0));
    }
    if genera.contains(&0) {
        return Err(Error::InvalidGenus);
    }
    if t > 11 {
        return Err(Error::OrderCapExceeded {
            cap: crate::group::DEFAULT_ORDER_CAP,
        });
    }
    let group = Arc::new(preset_elementary_abelian_2(t)?);
    let basis: Vec<usize> = (1..=t)
        .map(|i| group.generator(&format!("e{i}")).expect("preset names its generators"))
        .collect();
    let mut vector = Vec::new();
    for (i, &g) in genera.iter().enumerate() {
        vector.extend(std::iter::repeat_n(basis[i], 2 * g as usize + 2));
    }
    let action = CoveringAction::spherical(group.clone(), vector)?;
    let decomposition = Decomposition::new(&action)?;
    let subgroups: Vec<Subgroup> = (0..t)
        .map(|i| {
            let others: Vec<usize> = (0..t).filter(|&j| j != i).map(|j| basis[j]).collect();
            subgroup_generate(&group, &others)
        })
        .collect::<Result<_>>()?;
    let subgroup_genera: Vec<u64> = subgroups
        .iter()
        .map(|k| decomposition.quotient_genus(k))
        .collect::<Result<_>>()?;
    if subgroup_genera != genera {
        return Err(Error::IdentityViolated(format!(
            "quotients have genera {subgroup_genera:?}, expected {genera:?}"
        )));
    }
    let predicted_genus = fiber_genus_formula(genera);
    let genus = decomposition.total_genus();
    if genus != predicted_genus {
        return Err(Error::IdentityViolated(format!(
            "fiber product has genus {genus}, the closed formula gives {predicted_genus}"
        )));
    }
    let admissibility = decomposition.check_admissible(&subgroups)?;
    let dim_p = decomposition.decompose(&subgroups)?.dim_p;
    let predicted_dim_p = fiber_prym_formula(genera);
    if dim_p != predicted_dim_p {
        return Err(Error::IdentityViolated(format!(
            "complement has dimension {dim_p}, the closed formula gives {predicted_dim_p}"
        )));
    }
    Ok(FiberPlan {
        genera: genera.to_vec(),
        action,
        subgroups,
        subgroup_genera,
        predicted_genus,
        genus,
        predicted_dim_p,
        dim_p,
        admissible: admissibility.verdict,
        pairing: Vec::new(),
    })
}

/// The fiber product carrying `t` elliptic curves: pairs `E_j, E_{j+s}` are
/// carried by a genus-2 curve, and for odd `t` the last curve is elliptic.
pub fn cor3_plan(t: usize) -> Result<FiberPlan> {
    if t < 2 {
        return Err(Error::TooFewFactors(t));
    }
    let s = t / 2;
    let mut genera = vec![2u64; s];
    let mut pairing: Vec<Vec<usize>> = (1..=s).map(|j| vec![j, j + s]).collect();
    if t % 2 == 1 {
        genera.push(1);
        pairing.push(vec![t]);
    }
    let mut plan = build_fiber(&genera)?;
    let predicted = elliptic_genus_formula(t as u64)?;
    if predicted != plan.genus || plan.dim_p != plan.genus - t as u64 {
        return Err(Error::IdentityViolated(format!(
            "elliptic plan for t = {t}: genus {} against {predicted}, dim P {}",
            plan.genus, plan.dim_p
        )));
    }
    plan.predicted_genus = predicted;
    plan.pairing = pairing;
    Ok(plan)
}
