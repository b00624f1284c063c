//! Group actions on compact Riemann surfaces, given as generating vectors.
//!
//! An action of `G` on a surface `C` with quotient `C/G` of genus `gamma` and
//! `s` branch points is encoded by elements
//! `a_1, b_1, .., a_gamma, b_gamma, c_1, .., c_s` of `G` that generate `G`,
//! satisfy `prod [a_i, b_i] * prod c_k = 1`, and where `c_k` has order `m_k`.
//! Everything here is exact integer bookkeeping on top of Riemann-Hurwitz.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rational, rational_int, Rational};
use crate::error::{Error, Result};
use crate::group::{coset_action, subgroup_generate, FiniteGroup, Subgroup};

/// Monodromy data of a group action on a compact Riemann surface.
#[derive(Clone, Debug)]
pub struct CoveringAction {
    group: Arc<FiniteGroup>,
    orbit_genus: u64,
    periods: Vec<u64>,
    handles: Vec<(usize, usize)>,
    branch_elements: Vec<usize>,
}

impl CoveringAction {
    /// Checks the shape of the data only. Use [`validate_action`] for the
    /// group-theoretic conditions.
    pub fn new(
        group: Arc<FiniteGroup>,
        orbit_genus: u64,
        periods: Vec<u64>,
        handles: Vec<(usize, usize)>,
        branch_elements: Vec<usize>,
    ) -> Result<Self> {
        if periods.len() != branch_elements.len() {
            return Err(Error::SignatureLength {
                periods: periods.len(),
                elements: branch_elements.len(),
            });
        }
        if handles.len() as u64 != orbit_genus {
            return Err(Error::HandleCount {
                genus: orbit_genus,
                found: handles.len(),
            });
        }
        if let Some((index, &period)) = periods.iter().enumerate().find(|(_, &m)| m < 2) {
            return Err(Error::PeriodTooSmall { index, period });
        }
        for &(a, b) in &handles {
            group.check_index(a)?;
            group.check_index(b)?;
        }
        for &c in &branch_elements {
            group.check_index(c)?;
        }
        Ok(Self {
            group,
            orbit_genus,
            periods,
            handles,
            branch_elements,
        })
    }

    /// Action with `gamma = 0` whose periods are read off the element orders.
    pub fn spherical(group: Arc<FiniteGroup>, branch_elements: Vec<usize>) -> Result<Self> {
        for &c in &branch_elements {
            group.check_index(c)?;
        }
        let periods = branch_elements
            .iter()
            .map(|&c| group.element_order(c) as u64)
            .collect();
        Self::new(group, 0, periods, Vec::new(), branch_elements)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn orbit_genus(&self) -> u64 {
        self.orbit_genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn handles(&self) -> &[(usize, usize)] {
        &self.handles
    }

    pub fn branch_elements(&self) -> &[usize] {
        &self.branch_elements
    }

    /// Signature written as `(gamma; m_1, .., m_s)`.
    pub fn signature(&self) -> String {
        let periods: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        format!("({}; {})", self.orbit_genus, periods.join(", "))
    }

    /// The data needed downstream: `gamma` and the cyclic stabilizers.
    pub fn branch_data(&self) -> BranchData {
        BranchData {
            group: self.group.clone(),
            orbit_genus: self.orbit_genus,
            branch_elements: self.branch_elements.clone(),
        }
    }
}

/// Riemann-Hurwitz evidence for a validated action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCertificate {
    pub total_genus: u64,
    /// `R = sum_k (1 - 1/m_k)`
    #[serde(with = "rational_string")]
    pub branch_number: Rational,
    #[serde(with = "rational_vec_string")]
    pub contributions: Vec<Rational>,
}

/// Checks orders, the long relation and generation, then computes the genus.
pub fn validate_action(action: &CoveringAction) -> Result<GenusCertificate> {
    let g = &*action.group;
    for (index, (&c, &period)) in action.branch_elements.iter().zip(&action.periods).enumerate() {
        let order = g.element_order(c);
        if order as u64 != period {
            return Err(Error::PeriodMismatch {
                index,
                order,
                period,
            });
        }
    }

    let mut product = 0;
    for &(a, b) in &action.handles {
        product = g.mul(product, g.commutator(a, b));
    }
    for &c in &action.branch_elements {
        product = g.mul(product, c);
    }
    if product != 0 {
        return Err(Error::RelationFails);
    }

    let mut seed: Vec<usize> = action.handles.iter().flat_map(|&(a, b)| [a, b]).collect();
    seed.extend_from_slice(&action.branch_elements);
    let generated = subgroup_generate(g, &seed)?;
    if generated.order() != g.order() {
        return Err(Error::NotGenerating {
            generated: generated.order(),
        });
    }

    let contributions: Vec<Rational> = action
        .periods
        .iter()
        .map(|&m| Rational::one() - rational(1, m as i64))
        .collect();
    let branch_number = contributions.iter().fold(Rational::zero(), |acc, x| acc + x);
    let total_genus = action.branch_data().total_genus()?;

    // the certificate identity, evaluated over the rationals
    let order = rational_int(g.order() as i64);
    let lhs = rational_int(2 * total_genus as i64 - 2);
    let rhs = &order * rational_int(2 * action.orbit_genus as i64 - 2) + &order * &branch_number;
    if lhs != rhs {
        return Err(Error::NonIntegralGenus(format!("{lhs} != {rhs}")));
    }
    Ok(GenusCertificate {
        total_genus,
        branch_number,
        contributions,
    })
}

/// Genus of `C` for a validated action.
pub fn total_genus(action: &CoveringAction) -> Result<u64> {
    action.branch_data().total_genus()
}

/// Genus of `C/H` for a validated action.
pub fn quotient_genus(action: &CoveringAction, h: &Subgroup) -> Result<u64> {
    action.branch_data().quotient_genus(h)
}

/// Orbit genus and cyclic point stabilizers of an action, without handles.
///
/// This is all the genus and dimension formulas depend on, and unlike a full
/// generating vector it restricts cleanly to subgroups.
#[derive(Clone, Debug)]
pub struct BranchData {
    group: Arc<FiniteGroup>,
    orbit_genus: u64,
    branch_elements: Vec<usize>,
}

/// Branch data of the action of a subgroup `K`, with `K` as a group in its
/// own right. `embedding[i]` is the index in the ambient group of element `i`
/// of `K`.
#[derive(Clone, Debug)]
pub struct RestrictedAction {
    pub data: BranchData,
    pub embedding: Vec<usize>,
}

impl RestrictedAction {
    /// Transports a subgroup of the ambient group contained in `K`.
    pub fn pull_back(&self, ambient: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
        let k = &*self.data.group;
        let members: Vec<usize> = h
            .members()
            .iter()
            .map(|&x| k.index_of(ambient.element(x)))
            .collect::<Option<_>>()
            .ok_or(Error::NotASubgroup)?;
        Subgroup::from_members(k, &members)
    }
}

impl BranchData {
    pub fn new(group: Arc<FiniteGroup>, orbit_genus: u64, branch_elements: Vec<usize>) -> Result<Self> {
        for &c in &branch_elements {
            group.check_index(c)?;
        }
        Ok(Self {
            group,
            orbit_genus,
            branch_elements,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn orbit_genus(&self) -> u64 {
        self.orbit_genus
    }

    pub fn branch_elements(&self) -> &[usize] {
        &self.branch_elements
    }

    pub fn periods(&self) -> Vec<u64> {
        self.branch_elements
            .iter()
            .map(|&c| self.group.element_order(c) as u64)
            .collect()
    }

    /// `2g - 2 = |G|(2 gamma - 2) + sum_k (|G| - |G|/m_k)`
    pub fn total_genus(&self) -> Result<u64> {
        let n = self.group.order() as i64;
        let mut twice = n * (2 * self.orbit_genus as i64 - 2);
        for &c in &self.branch_elements {
            twice += n - n / self.group.element_order(c) as i64;
        }
        genus_from_twice(twice)
    }

    /// `2g_H - 2 = [G:H](2 gamma - 2) + sum_k ([G:H] - #orbits of <c_k> on G/H)`
    pub fn quotient_genus(&self, h: &Subgroup) -> Result<u64> {
        let action = coset_action(&self.group, h)?;
        let index = action.degree() as i64;
        let mut twice = index * (2 * self.orbit_genus as i64 - 2);
        for &c in &self.branch_elements {
            twice += index - action.permutation(c).cycle_count() as i64;
        }
        genus_from_twice(twice)
    }

    /// The action of `K` on the same surface. Its orbit genus is the genus of
    /// `C/K`, and each orbit of `<c_k>` on the cosets `Kx`, of length `l`,
    /// contributes the stabilizer generator `x c_k^l x^-1`.
    pub fn restrict_to(&self, k: &Subgroup) -> Result<RestrictedAction> {
        let g = &*self.group;
        let sub = Arc::new(g.subgroup_as_group(k)?);
        let embedding: Vec<usize> = sub
            .elements()
            .iter()
            .map(|p| g.index_of(p))
            .collect::<Option<_>>()
            .ok_or(Error::NotASubgroup)?;
        let action = coset_action(g, k)?;
        let mut branch_elements = Vec::new();
        for &c in &self.branch_elements {
            let perm = action.permutation(c);
            let mut seen = vec![false; action.degree()];
            for start in 0..action.degree() {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = perm.apply(i);
                    len += 1;
                }
                let x = action.transversal()[start];
                let stabilizer = g.mul(g.mul(x, g.pow(c, len)), g.inverse(x));
                if stabilizer != 0 {
                    let local = sub
                        .index_of(g.element(stabilizer))
                        .ok_or_else(|| Error::IdentityViolated("stabilizer outside subgroup".into()))?;
                    branch_elements.push(local);
                }
            }
        }
        let data = BranchData {
            group: sub,
            orbit_genus: self.quotient_genus(k)?,
            branch_elements,
        };
        let (before, after) = (self.total_genus()?, data.total_genus()?);
        if before != after {
            return Err(Error::IdentityViolated(format!(
                "restricted action has genus {after}, expected {before}"
            )));
        }
        Ok(RestrictedAction { data, embedding })
    }
}

fn genus_from_twice(twice_minus_two: i64) -> Result<u64> {
    let twice = twice_minus_two + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::NonIntegralGenus(format!("2g = {twice}")));
    }
    Ok((twice / 2) as u64)
}

pub(crate) mod rational_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

pub(crate) mod rational_vec_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(D::Error::custom))
            .collect()
    }
}
