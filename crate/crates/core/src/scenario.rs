//! Scenario files, presets, report documents and the command runner behind
//! the `jacdecomp` binary.
//!
//! A scenario is a JSON document naming a group, an action on a surface and
//! collections of subgroups, each optionally carrying claims to be checked.
//! Commands turn a scenario into a [`ReportDocument`], which renders either
//! as deterministic text or as JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::characters::{character_table, rational_classes, SchurProvenance};
use crate::covering::{validate_action, CoveringAction, GenusCertificate};
use crate::decomposition::{
    cor3_plan, fiber_product_action, AdmissibilityReport, Decomposition, DecompositionReport,
    EquivalenceReport, FiberPlan, PairReport, PartitionReport, PermutingReport,
    PrymContainmentReport, RationalRepProfile, SearchOptions, SubgroupProfile,
};
use crate::error::{Error, Result};
use crate::group::{
    build_group_with_cap, is_partition, preset_alternating, preset_cyclic, preset_dihedral,
    preset_dihedral_order, preset_elementary_abelian_2, preset_quaternion, preset_symmetric,
    subgroup_generate, FiniteGroup, Permutation, Subgroup, DEFAULT_ORDER_CAP,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

// ---------------------------------------------------------------------------
// Scenario schema
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collections: Vec<CollectionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<ScenarioClaims>,
    #[serde(default, skip_serializing_if = "ScenarioOptions::is_empty")]
    pub options: ScenarioOptions,
}

/// Either a preset such as `d2q?q=3`, or named permutation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    /// images of `0, 1, ..` under the permutation
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    #[serde(default)]
    pub orbit_genus: u64,
    pub periods: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub handles: Vec<[String; 2]>,
    /// branch elements as words, e.g. `s*r^2`
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionSpec {
    pub name: String,
    /// each subgroup is given by a list of generator words
    pub subgroups: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<CollectionClaims>,
}

/// Statements about a collection that the engine checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionClaims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible_join: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genera: Option<Vec<u64>>,
    /// one row per subgroup, over the rational classes `2..r`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_dims: Option<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioClaims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    /// Schur index overrides keyed by the 1-based rational class label
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub schur: BTreeMap<usize, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
}

impl ScenarioOptions {
    fn is_empty(&self) -> bool {
        self.schur.is_empty() && self.max_order.is_none()
    }
}

/// A scenario with every word resolved and the action validated.
#[derive(Clone, Debug)]
pub struct CompiledScenario {
    pub file: ScenarioFile,
    pub group: Arc<FiniteGroup>,
    pub action: Option<CoveringAction>,
    pub certificate: Option<GenusCertificate>,
    pub collections: Vec<CompiledCollection>,
}

#[derive(Clone, Debug)]
pub struct CompiledCollection {
    pub name: String,
    pub subgroups: Vec<Subgroup>,
    pub claims: Option<CollectionClaims>,
}

impl CompiledScenario {
    pub fn collection(&self, name: &str) -> Result<&CompiledCollection> {
        self.collections
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCollection(name.to_string()))
    }

    pub fn action(&self) -> Result<&CoveringAction> {
        self.action.as_ref().ok_or_else(|| Error::Parse {
            location: "action".into(),
            message: format!("scenario `{}` has no action", self.file.name),
        })
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    compile(&file, None)?;
    Ok(file)
}

/// A preset name (`d2q?q=3`, `fiber?genera=1,1`, `elliptic?t=4`, or a bare
/// group preset such as `dihedral?n=6`) or the path of a JSON file.
pub fn load_scenario(source: &str) -> Result<ScenarioFile> {
    let path = std::path::Path::new(source);
    if source.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{source}: {e}")))?;
        return parse_scenario(&text);
    }
    preset_scenario(source)
}

fn parse_preset(spec: &str) -> (String, BTreeMap<String, String>) {
    let (name, query) = spec.split_once('?').unwrap_or((spec, ""));
    let params = query
        .split('&')
        .filter(|kv| !kv.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap_or((kv, ""));
            (k.trim().to_string(), v.trim().to_string())
        })
        .collect();
    (name.trim().to_string(), params)
}

fn param<T: std::str::FromStr>(params: &BTreeMap<String, String>, key: &str, spec: &str) -> Result<T> {
    params
        .get(key)
        .ok_or_else(|| Error::InvalidPreset(format!("`{spec}` needs parameter `{key}`")))?
        .parse()
        .map_err(|_| Error::InvalidPreset(format!("`{spec}`: bad value for `{key}`")))
}

fn param_list(params: &BTreeMap<String, String>, key: &str, spec: &str) -> Result<Vec<u64>> {
    let raw = params
        .get(key)
        .ok_or_else(|| Error::InvalidPreset(format!("`{spec}` needs parameter `{key}`")))?;
    raw.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::InvalidPreset(format!("`{spec}`: bad entry `{x}` in `{key}`")))
        })
        .collect()
}

/// Builds a group from a preset string.
pub fn preset_group(spec: &str) -> Result<FiniteGroup> {
    let (name, params) = parse_preset(spec);
    match name.as_str() {
        "d2q" => preset_dihedral(param(&params, "q", spec)?),
        "dihedral" => preset_dihedral_order(param(&params, "n", spec)?),
        "z2" => preset_elementary_abelian_2(param(&params, "t", spec)?),
        "cyclic" => preset_cyclic(param(&params, "n", spec)?),
        "quaternion" => preset_quaternion(),
        "symmetric" => preset_symmetric(param(&params, "n", spec)?),
        "alternating" => preset_alternating(param(&params, "n", spec)?),
        other => Err(Error::InvalidPreset(format!("unknown group preset `{other}`"))),
    }
}

/// Scenario presets. Group presets without an action are accepted too, for
/// commands that only need the group.
pub fn preset_scenario(spec: &str) -> Result<ScenarioFile> {
    let (name, params) = parse_preset(spec);
    match name.as_str() {
        "d2q" => {
            let q: usize = param(&params, "q", spec)?;
            preset_dihedral(q)?;
            Ok(dihedral_scenario(q))
        }
        "fiber" => {
            let genera = param_list(&params, "genera", spec)?;
            if genera.len() < 2 {
                return Err(Error::TooFewFactors(genera.len()));
            }
            fiber_scenario(&genera, &format!("fiber-{}", join_numbers(&genera, "-")))
        }
        "elliptic" => {
            let t: usize = param(&params, "t", spec)?;
            let plan = cor3_plan(t)?;
            fiber_scenario(&plan.genera, &format!("elliptic-t{t}"))
        }
        _ => {
            preset_group(spec)?;
            Ok(ScenarioFile {
                name: spec.to_string(),
                description: None,
                group: GroupSpec {
                    preset: Some(spec.to_string()),
                    generators: Vec::new(),
                },
                action: None,
                collections: Vec::new(),
                claims: None,
                options: ScenarioOptions::default(),
            })
        }
    }
}

fn join_numbers(xs: &[u64], sep: &str) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn reflection_word(k: usize) -> String {
    match k {
        0 => "s".into(),
        1 => "s*r".into(),
        k => format!("s*r^{k}"),
    }
}

/// The dihedral group of order `4q` acting with signature
/// `(0; 2, 2, 2, 2, 2q, 2q)`, with the published claims about it.
pub fn dihedral_scenario(q: usize) -> ScenarioFile {
    let qq = q as u64;
    let single = |w: &str| vec![w.to_string()];
    let first_table = vec![vec![0, 1, 0, 1, 1], vec![0, 0, 1, 1, 1], vec![1, 0, 0, 0, 0]];
    let mut partition = vec![single("r")];
    partition.extend((0..2 * q).map(|k| single(&reflection_word(k))));
    ScenarioFile {
        name: format!("d2q-q{q}"),
        description: Some(format!(
            "dihedral group of order {} acting on a surface of genus {} with quotient of genus 0",
            4 * q,
            4 * q - 1
        )),
        group: GroupSpec {
            preset: Some(format!("d2q?q={q}")),
            generators: Vec::new(),
        },
        action: Some(ActionSpec {
            orbit_genus: 0,
            periods: vec![2, 2, 2, 2, 2 * qq, 2 * qq],
            handles: Vec::new(),
            vector: ["s", "s", "s*r", "s*r", "r", "r^-1"].map(String::from).to_vec(),
        }),
        collections: vec![
            CollectionSpec {
                name: "main".into(),
                subgroups: vec![single("s"), single("s*r"), single("r")],
                claims: Some(CollectionClaims {
                    admissible: Some(true),
                    dim_p: Some(0),
                    full: Some(true),
                    genera: Some(vec![2 * qq - 1, 2 * qq - 1, 1]),
                    fixed_dims: Some(first_table.clone()),
                    ..Default::default()
                }),
            },
            CollectionSpec {
                name: "h1h3".into(),
                subgroups: vec![single("s"), single("r")],
                claims: Some(CollectionClaims {
                    admissible: Some(true),
                    dim_p: Some(2 * qq - 1),
                    full: Some(false),
                    genera: Some(vec![2 * qq - 1, 1]),
                    ..Default::default()
                }),
            },
            CollectionSpec {
                name: "h1h4".into(),
                subgroups: vec![single("s"), single(&format!("r^{q}"))],
                claims: Some(CollectionClaims {
                    admissible: Some(true),
                    admissible_join: Some(false),
                    fixed_dims: Some(vec![first_table[0].clone(), vec![1, 0, 0, 0, 1]]),
                    ..Default::default()
                }),
            },
            CollectionSpec {
                name: "partition".into(),
                subgroups: partition,
                claims: None,
            },
        ],
        claims: Some(ScenarioClaims {
            genus: Some(4 * qq - 1),
            dims: Some(vec![0, 1, 1, 1, qq - 1, qq - 1]),
            exponents: Some(vec![1, 1, 1, 1, 2, 2]),
        }),
        options: ScenarioOptions::default(),
    }
}

/// The fiber product of hyperelliptic curves of the given genera, as an
/// action of `Z_2^t`.
pub fn fiber_scenario(genera: &[u64], name: &str) -> Result<ScenarioFile> {
    let t = genera.len();
    if t == 0 {
        return Err(Error::TooFewFactors(0));
    }
    let basis: Vec<String> = (1..=t).map(|i| format!("e{i}")).collect();
    let mut vector = Vec::new();
    for (i, &g) in genera.iter().enumerate() {
        vector.extend(std::iter::repeat_n(basis[i].clone(), 2 * g as usize + 2));
    }
    let kernels: Vec<Vec<String>> = (0..t)
        .map(|i| {
            let others: Vec<String> = (0..t).filter(|&j| j != i).map(|j| basis[j].clone()).collect();
            if others.is_empty() {
                vec!["1".to_string()]
            } else {
                others
            }
        })
        .collect();
    let genus = crate::decomposition::fiber_genus_formula(genera);
    let dim_p = crate::decomposition::fiber_prym_formula(genera);
    let mut collections = vec![CollectionSpec {
        name: "kernels".into(),
        subgroups: kernels,
        claims: Some(CollectionClaims {
            admissible: Some(true),
            dim_p: Some(dim_p),
            full: Some(dim_p == 0),
            genera: Some(genera.to_vec()),
            ..Default::default()
        }),
    }];
    if t == 2 {
        collections.push(CollectionSpec {
            name: "partition".into(),
            subgroups: vec![vec!["e1".into()], vec!["e2".into()], vec!["e1*e2".into()]],
            claims: None,
        });
    }
    Ok(ScenarioFile {
        name: name.to_string(),
        description: Some(format!(
            "fiber product of hyperelliptic curves of genera ({}) with deck group Z_2^{t}",
            join_numbers(genera, ", ")
        )),
        group: GroupSpec {
            preset: Some(format!("z2?t={t}")),
            generators: Vec::new(),
        },
        action: Some(ActionSpec {
            orbit_genus: 0,
            periods: vec![2; vector.len()],
            handles: Vec::new(),
            vector,
        }),
        collections,
        claims: Some(ScenarioClaims {
            genus: Some(genus),
            ..Default::default()
        }),
        options: ScenarioOptions::default(),
    })
}

fn locate(err: Error, location: String) -> Error {
    match err {
        Error::Parse { message, .. } => Error::Parse { location, message },
        Error::InvalidElementIndex { index, order } => Error::Parse {
            location,
            message: format!("element index {index} out of range for order {order}"),
        },
        other => other,
    }
}

/// Resolves every word, builds the group and validates the action.
pub fn compile(file: &ScenarioFile, max_order: Option<usize>) -> Result<CompiledScenario> {
    let cap = max_order.or(file.options.max_order).unwrap_or(DEFAULT_ORDER_CAP);
    let group = match (&file.group.preset, file.group.generators.is_empty()) {
        (Some(spec), true) => preset_group(spec)?,
        (None, false) => {
            let gens = file
                .group
                .generators
                .iter()
                .map(|g| {
                    Permutation::new(g.images.clone())
                        .map(|p| (g.name.clone(), p))
                        .map_err(|e| locate(e, format!("group.generators[{}]", g.name)))
                })
                .collect::<Result<Vec<_>>>()?;
            build_group_with_cap(gens, cap)?
        }
        _ => {
            return Err(Error::Parse {
                location: "group".into(),
                message: "give exactly one of `preset` or `generators`".into(),
            })
        }
    };
    if group.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let group = Arc::new(group);
    let word = |w: &str, location: String| group.parse_word(w).map_err(|e| locate(e, location));

    let (action, certificate) = match &file.action {
        Some(spec) => {
            let vector = spec
                .vector
                .iter()
                .enumerate()
                .map(|(i, w)| word(w, format!("action.vector[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let handles = spec
                .handles
                .iter()
                .enumerate()
                .map(|(i, [a, b])| {
                    Ok((
                        word(a, format!("action.handles[{i}][0]"))?,
                        word(b, format!("action.handles[{i}][1]"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let action = CoveringAction::new(
                group.clone(),
                spec.orbit_genus,
                spec.periods.clone(),
                handles,
                vector,
            )
            .map_err(|e| Error::Validation(Box::new(e)))?;
            let certificate = validate_action(&action).map_err(|e| Error::Validation(Box::new(e)))?;
            (Some(action), Some(certificate))
        }
        None => (None, None),
    };

    let mut collections = Vec::new();
    for c in &file.collections {
        if collections.iter().any(|x: &CompiledCollection| x.name == c.name) {
            return Err(Error::Parse {
                location: format!("collections[{}]", c.name),
                message: "duplicate collection name".into(),
            });
        }
        let subgroups = c
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                let elements = gens
                    .iter()
                    .enumerate()
                    .map(|(j, w)| word(w, format!("collections[{}].subgroups[{i}][{j}]", c.name)))
                    .collect::<Result<Vec<_>>>()?;
                subgroup_generate(&group, &elements)
            })
            .collect::<Result<Vec<_>>>()?;
        collections.push(CompiledCollection {
            name: c.name.clone(),
            subgroups,
            claims: c.claims.clone(),
        });
    }
    Ok(CompiledScenario {
        file: file.clone(),
        group,
        action,
        certificate,
        collections,
    })
}

// ---------------------------------------------------------------------------
// Report document
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub engine_version: String,
    pub command: String,
    pub scenario: Option<ScenarioFile>,
    pub group: Option<GroupRecord>,
    pub character_table: Option<TableRecord>,
    pub rational_classes: Vec<ClassRecord>,
    pub action: Option<ActionRecord>,
    pub decomposition: Option<String>,
    pub rational_representation: Option<RationalRepProfile>,
    pub profiles: Vec<SubgroupProfile>,
    pub collections: Vec<CollectionRecord>,
    pub search: Option<SearchRecord>,
    pub fiber: Option<FiberRecord>,
    pub partitions: Vec<PartitionRecord>,
    pub notes: Vec<Note>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub order: usize,
    pub degree: usize,
    pub exponent: usize,
    pub generators: Vec<String>,
    pub classes: Vec<ConjugacyClassRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClassRecord {
    pub representative: String,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    /// `z` in the rendered values is `exp(2 pi i / conductor)`
    pub conductor: usize,
    pub prime: u64,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub label: usize,
    /// 1-based indices of the irreducible characters in the Galois orbit
    pub members: Vec<usize>,
    pub degree: u64,
    pub field_degree: u64,
    pub schur_index: u64,
    pub schur_provenance: SchurProvenance,
    pub n: u64,
    pub dim_w: u64,
    pub dim_b: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub signature: String,
    pub vector: Vec<String>,
    pub handles: Vec<[String; 2]>,
    pub certificate: GenusCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Acting,
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionRecord {
    pub name: String,
    pub subgroups: Vec<String>,
    pub ambient: Ambient,
    pub admissibility: AdmissibilityReport,
    pub join_admissibility: Option<AdmissibilityReport>,
    /// present when the collection is admissible for the chosen ambient group
    pub decomposition: Option<DecompositionReport>,
    pub prym_containment: Vec<PrymContainmentReport>,
    pub equivalence: EquivalenceReport,
    pub permuting: PermutingReport,
    /// present for collections of two subgroups
    pub pair: Option<PairReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub max_t: usize,
    pub require_full: bool,
    pub dedupe_conjugates: bool,
    pub results: Vec<AdmissibilityReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    pub genera: Vec<u64>,
    pub elliptic_count: Option<usize>,
    pub kernels: Vec<String>,
    pub kernel_genera: Vec<u64>,
    pub predicted_genus: u64,
    pub genus: u64,
    pub predicted_dim_p: u64,
    pub dim_p: u64,
    pub admissible: bool,
    pub pairing: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub name: String,
    pub report: PartitionReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoteKind {
    Discrepancy,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub kind: NoteKind,
    pub scope: String,
    pub message: String,
}

impl ReportDocument {
    fn new(command: Command) -> Self {
        Self {
            engine_version: ENGINE_VERSION.to_string(),
            command: command.name().to_string(),
            scenario: None,
            group: None,
            character_table: None,
            rational_classes: Vec::new(),
            action: None,
            decomposition: None,
            rational_representation: None,
            profiles: Vec::new(),
            collections: Vec::new(),
            search: None,
            fiber: None,
            partitions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn has_discrepancies(&self) -> bool {
        self.notes.iter().any(|n| n.kind == NoteKind::Discrepancy)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Search,
    Fiber,
    Chartable,
    TheoremB,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Search => "search",
            Command::Fiber => "fiber",
            Command::Chartable => "chartable",
            Command::TheoremB => "theorem-b",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    /// preset name or path; unused by `fiber`
    pub scenario: Option<String>,
    pub collections: Option<Vec<String>>,
    pub ambient: Ambient,
    /// `(label, schur index)` overrides, labels 1-based
    pub schur: Vec<(usize, u64)>,
    pub max_order: Option<usize>,
    pub max_t: usize,
    pub require_full: bool,
    pub dedupe_conjugates: bool,
    pub genera: Option<Vec<u64>>,
    pub elliptic: Option<usize>,
}

impl Request {
    pub fn new(command: Command, scenario: Option<&str>) -> Self {
        Self {
            command,
            scenario: scenario.map(str::to_string),
            collections: None,
            ambient: Ambient::Acting,
            schur: Vec::new(),
            max_order: None,
            max_t: 3,
            require_full: false,
            dedupe_conjugates: false,
            genera: None,
            elliptic: None,
        }
    }
}

/// Result of one command: the report (when one could be produced), the exit
/// code (0 clean, 1 usage or input error, 2 failed identity or contradicted
/// claim) and the error, if any.
#[derive(Debug)]
pub struct Outcome {
    pub document: Option<ReportDocument>,
    pub exit_code: i32,
    pub error: Option<Error>,
}

pub fn exit_code_for(error: &Error) -> i32 {
    if error.is_identity_failure() {
        2
    } else {
        1
    }
}

pub fn run_command(request: &Request) -> Outcome {
    match execute(request) {
        Ok(document) => Outcome {
            exit_code: if document.has_discrepancies() { 2 } else { 0 },
            document: Some(document),
            error: None,
        },
        Err(error) => Outcome {
            document: None,
            exit_code: exit_code_for(&error),
            error: Some(error),
        },
    }
}

fn execute(request: &Request) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(request.command);
    if request.command == Command::Fiber {
        return run_fiber(request, doc);
    }
    let source = request.scenario.as_deref().ok_or_else(|| Error::Parse {
        location: "arguments".into(),
        message: format!("`{}` needs a scenario", request.command.name()),
    })?;
    let file = load_scenario(source)?;
    let compiled = compile(&file, request.max_order)?;
    doc.scenario = Some(file);
    doc.group = Some(group_record(&compiled.group));

    match request.command {
        Command::Chartable => {
            let table = character_table(compiled.group.clone())?;
            let classes = rational_classes(&table, &BTreeMap::new())?;
            doc.character_table = Some(table_record(&table));
            doc.rational_classes = classes
                .iter()
                .enumerate()
                .map(|(l, c)| class_record(l + 1, c, None))
                .collect();
        }
        Command::Analyze => {
            let d = build_decomposition(&compiled, &request.schur)?;
            fill_decomposition(&mut doc, &compiled, &d)?;
            let selected = select(&compiled, request.collections.as_deref(), |_| true)?;
            for c in &selected {
                add_profiles(&mut doc, &d, &c.subgroups)?;
                let record = analyze_collection(&d, c, &request.ambient, &mut doc.notes)?;
                doc.collections.push(record);
            }
        }
        Command::Search => {
            let d = build_decomposition(&compiled, &request.schur)?;
            fill_decomposition(&mut doc, &compiled, &d)?;
            let results = d.search(&SearchOptions {
                max_t: request.max_t,
                require_full: request.require_full,
                dedupe_conjugates: request.dedupe_conjugates,
            })?;
            doc.search = Some(SearchRecord {
                max_t: request.max_t,
                require_full: request.require_full,
                dedupe_conjugates: request.dedupe_conjugates,
                results,
            });
        }
        Command::TheoremB => {
            let d = build_decomposition(&compiled, &request.schur)?;
            fill_decomposition(&mut doc, &compiled, &d)?;
            let group = compiled.group.clone();
            let explicit = request.collections.is_some();
            let selected = select(&compiled, request.collections.as_deref(), |c| {
                is_partition(&group, &c.subgroups).is_ok()
            })?;
            if selected.is_empty() && !explicit {
                doc.notes.push(Note {
                    kind: NoteKind::Info,
                    scope: compiled.file.name.clone(),
                    message: "no collection in the scenario partitions the group".into(),
                });
            }
            for c in &selected {
                add_profiles(&mut doc, &d, &c.subgroups)?;
                let report = d.partition_identities(&c.subgroups)?;
                for (ok, what) in [
                    (report.character_identity, "character identity"),
                    (report.class_identity, "per-class identity"),
                    (report.dimension_identity, "dimension identity"),
                ] {
                    if !ok {
                        doc.notes.push(Note {
                            kind: NoteKind::Discrepancy,
                            scope: c.name.clone(),
                            message: format!("partition {what} fails"),
                        });
                    }
                }
                doc.partitions.push(PartitionRecord {
                    name: c.name.clone(),
                    report,
                });
            }
        }
        Command::Fiber => unreachable!("handled above"),
    }
    Ok(doc)
}

fn run_fiber(request: &Request, mut doc: ReportDocument) -> Result<ReportDocument> {
    let (plan, file): (FiberPlan, ScenarioFile) = match (&request.genera, request.elliptic) {
        (Some(genera), None) => {
            let plan = fiber_product_action(genera)?;
            let name = format!("fiber-{}", join_numbers(genera, "-"));
            (plan, fiber_scenario(genera, &name)?)
        }
        (None, Some(t)) => {
            let plan = cor3_plan(t)?;
            let file = fiber_scenario(&plan.genera, &format!("elliptic-t{t}"))?;
            (plan, file)
        }
        _ => {
            return Err(Error::Parse {
                location: "arguments".into(),
                message: "`fiber` needs exactly one of --genera or --elliptic".into(),
            })
        }
    };
    let compiled = compile(&file, request.max_order)?;
    let d = build_decomposition(&compiled, &request.schur)?;
    doc.scenario = Some(file);
    doc.group = Some(group_record(&compiled.group));
    fill_decomposition(&mut doc, &compiled, &d)?;
    for c in &compiled.collections {
        add_profiles(&mut doc, &d, &c.subgroups)?;
        let record = analyze_collection(&d, c, &request.ambient, &mut doc.notes)?;
        doc.collections.push(record);
    }
    doc.fiber = Some(FiberRecord {
        genera: plan.genera.clone(),
        elliptic_count: request.elliptic,
        kernels: plan.subgroups.iter().map(|k| d.subgroup_label(k)).collect(),
        kernel_genera: plan.subgroup_genera.clone(),
        predicted_genus: plan.predicted_genus,
        genus: plan.genus,
        predicted_dim_p: plan.predicted_dim_p,
        dim_p: plan.dim_p,
        admissible: plan.admissible,
        pairing: plan.pairing.clone(),
    });
    Ok(doc)
}

fn select<'a>(
    compiled: &'a CompiledScenario,
    names: Option<&[String]>,
    default_filter: impl Fn(&CompiledCollection) -> bool,
) -> Result<Vec<&'a CompiledCollection>> {
    match names {
        Some(names) => names.iter().map(|n| compiled.collection(n)).collect(),
        None => Ok(compiled.collections.iter().filter(|c| default_filter(c)).collect()),
    }
}

/// Maps 1-based class labels to orbit representatives for the engine.
fn build_decomposition(compiled: &CompiledScenario, schur: &[(usize, u64)]) -> Result<Decomposition> {
    let action = compiled.action()?;
    let mut labels: BTreeMap<usize, u64> = compiled.file.options.schur.clone();
    labels.extend(schur.iter().copied());
    if labels.is_empty() {
        return Decomposition::new(action);
    }
    let table = character_table(compiled.group.clone())?;
    let classes = rational_classes(&table, &BTreeMap::new())?;
    let mut overrides = BTreeMap::new();
    for (&label, &s) in &labels {
        let class = label
            .checked_sub(1)
            .and_then(|i| classes.get(i))
            .ok_or_else(|| Error::Parse {
                location: "schur".into(),
                message: format!("no rational class with label {label}"),
            })?;
        overrides.insert(class.representative(), s);
    }
    Decomposition::with_schur(action, &overrides)
}

fn group_record(g: &FiniteGroup) -> GroupRecord {
    let classes = g.classes();
    GroupRecord {
        order: g.order(),
        degree: g.degree(),
        exponent: g.exponent(),
        generators: g.generators().iter().map(|(n, _)| n.clone()).collect(),
        classes: (0..classes.len())
            .map(|c| {
                let rep = classes.representative(c);
                ConjugacyClassRecord {
                    representative: g.word(rep),
                    size: classes.size(c),
                    element_order: g.element_order(rep),
                }
            })
            .collect(),
    }
}

fn table_record(table: &crate::characters::CharacterTable) -> TableRecord {
    TableRecord {
        conductor: table.group().exponent(),
        prime: table.prime(),
        degrees: table.degrees().to_vec(),
        rows: table
            .irreducibles()
            .iter()
            .map(|chi| chi.values().iter().map(|v| v.to_poly_string()).collect())
            .collect(),
    }
}

fn class_record(label: usize, c: &crate::characters::RationalClass, dim_b: Option<u64>) -> ClassRecord {
    ClassRecord {
        label,
        members: c.members.iter().map(|m| m + 1).collect(),
        degree: c.degree,
        field_degree: c.field_degree,
        schur_index: c.schur_index,
        schur_provenance: c.provenance,
        n: c.n,
        dim_w: c.dim_w(),
        dim_b,
    }
}

fn fill_decomposition(doc: &mut ReportDocument, compiled: &CompiledScenario, d: &Decomposition) -> Result<()> {
    let action = compiled.action()?;
    let g = &compiled.group;
    doc.character_table = Some(table_record(d.table()));
    doc.rational_classes = d
        .factors()
        .iter()
        .map(|f| class_record(f.label, &f.class, Some(f.dim_b)))
        .collect();
    doc.action = Some(ActionRecord {
        signature: action.signature(),
        vector: action.branch_elements().iter().map(|&c| g.word(c)).collect(),
        handles: action
            .handles()
            .iter()
            .map(|&(a, b)| [g.word(a), g.word(b)])
            .collect(),
        certificate: compiled
            .certificate
            .clone()
            .expect("compiled actions carry certificates"),
    });
    doc.decomposition = Some(d.statement());
    doc.rational_representation = Some(d.rational_rep()?);

    if let Some(claims) = &compiled.file.claims {
        let scope = compiled.file.name.clone();
        if let Some(genus) = claims.genus {
            check_claim(&mut doc.notes, &scope, "genus", &genus, &d.total_genus());
        }
        if let Some(dims) = &claims.dims {
            check_claim(&mut doc.notes, &scope, "factor dimensions", dims, &d.dims());
        }
        if let Some(exponents) = &claims.exponents {
            check_claim(&mut doc.notes, &scope, "factor exponents", exponents, &d.exponents());
        }
    }
    Ok(())
}

fn add_profiles(doc: &mut ReportDocument, d: &Decomposition, subgroups: &[Subgroup]) -> Result<()> {
    for h in subgroups {
        if !doc.profiles.iter().any(|p| &p.subgroup == h) {
            doc.profiles.push(d.profile(h)?);
        }
    }
    Ok(())
}

fn check_claim<T: PartialEq + std::fmt::Debug>(
    notes: &mut Vec<Note>,
    scope: &str,
    what: &str,
    claimed: &T,
    computed: &T,
) {
    if claimed != computed {
        notes.push(Note {
            kind: NoteKind::Discrepancy,
            scope: scope.to_string(),
            message: format!("{what}: claimed {claimed:?}, computed {computed:?}"),
        });
    }
}

fn analyze_collection(
    d: &Decomposition,
    c: &CompiledCollection,
    ambient: &Ambient,
    notes: &mut Vec<Note>,
) -> Result<CollectionRecord> {
    let hs = &c.subgroups;
    let acting = d.check_admissible(hs)?;
    let wants_join = *ambient == Ambient::Join
        || c.claims.as_ref().is_some_and(|cl| cl.admissible_join.is_some());
    let join_admissibility = if wants_join {
        Some(d.check_admissible_in_join(hs)?)
    } else {
        None
    };

    let decomposition = match ambient {
        Ambient::Acting if acting.verdict => Some(d.decompose(hs)?),
        Ambient::Join if join_admissibility.as_ref().is_some_and(|r| r.verdict) => {
            let (inner, local) = d.restrict_to_join(hs)?;
            let mut report = inner.decompose(&local)?;
            report.subgroups = acting.subgroups.clone();
            Some(report)
        }
        _ => None,
    };
    let prym_containment = if acting.verdict {
        (0..hs.len())
            .map(|k| d.prym_containment(hs, k))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let pair = if hs.len() == 2 {
        Some(d.pair_decomposition(&hs[0], &hs[1])?)
    } else {
        None
    };

    if let Some(claims) = &c.claims {
        let scope = c.name.as_str();
        if let Some(claimed) = claims.admissible {
            check_claim(notes, scope, "admissible for the acting group", &claimed, &acting.verdict);
        }
        if let (Some(claimed), Some(report)) = (claims.admissible_join, &join_admissibility) {
            check_claim(notes, scope, "admissible for the join", &claimed, &report.verdict);
        }
        if let Some(genera) = &claims.genera {
            check_claim(notes, scope, "quotient genera", genera, &acting.genera);
        }
        if let Some(rows) = &claims.fixed_dims {
            let computed: Vec<Vec<u64>> = hs
                .iter()
                .map(|h| Ok(d.fixed_dims(h)?[1..].to_vec()))
                .collect::<Result<_>>()?;
            for (i, (claimed, row)) in rows.iter().zip(&computed).enumerate() {
                if claimed != row {
                    notes.push(Note {
                        kind: NoteKind::Discrepancy,
                        scope: scope.to_string(),
                        message: format!(
                            "fixed dimensions of {} on classes 2..{}: claimed {claimed:?}, computed {row:?} (averaging and reciprocity agree)",
                            acting.subgroups[i],
                            row.len() + 1
                        ),
                    });
                }
            }
        }
        let primary = decomposition.as_ref();
        for (claimed, computed, what) in [
            (claims.dim_p.map(|x| x.to_string()), primary.map(|r| r.dim_p.to_string()), "dim P"),
            (claims.full.map(|x| x.to_string()), primary.map(|r| r.full.to_string()), "full decomposition"),
        ] {
            if let Some(claimed) = claimed {
                match computed {
                    Some(computed) => check_claim(notes, scope, what, &claimed, &computed),
                    None => notes.push(Note {
                        kind: NoteKind::Discrepancy,
                        scope: scope.to_string(),
                        message: format!("{what}: claimed {claimed}, but the collection is not admissible"),
                    }),
                }
            }
        }
    }

    Ok(CollectionRecord {
        name: c.name.clone(),
        subgroups: acting.subgroups.clone(),
        ambient: ambient.clone(),
        equivalence: d.equivalence(hs)?,
        permuting: d.permuting_criterion(hs)?,
        admissibility: acting,
        join_admissibility,
        decomposition,
        prym_containment,
        pair,
    })
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn opt_tuple(xs: &[Option<i64>]) -> String {
    tuple(
        &xs.iter()
            .map(|x| x.map_or("-".to_string(), |v| v.to_string()))
            .collect::<Vec<_>>(),
    )
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_admissibility(out: &mut String, label: &str, r: &AdmissibilityReport) {
    let _ = writeln!(
        out,
        "  {label} ({}): {}",
        r.ambient,
        if r.verdict { "admissible" } else { "not admissible" }
    );
    let _ = writeln!(out, "    fixed-dimension sums {}", tuple(&r.sums));
    let _ = writeln!(out, "    slacks {}", opt_tuple(&r.slacks));
}

/// Deterministic plain-text rendering of a report.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let name = doc.scenario.as_ref().map_or("-", |s| s.name.as_str());
    let _ = writeln!(out, "jacdecomp {} {} {}", doc.engine_version, doc.command, name);

    if let Some(g) = &doc.group {
        let _ = writeln!(
            out,
            "\ngroup: order {}, degree {}, exponent {}, generators {}",
            g.order,
            g.degree,
            g.exponent,
            g.generators.join(", ")
        );
        let _ = writeln!(out, "conjugacy classes:");
        for (i, c) in g.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  C{}: {} (size {}, order {})",
                i + 1,
                c.representative,
                c.size,
                c.element_order
            );
        }
    }

    if let Some(t) = &doc.character_table {
        let _ = writeln!(
            out,
            "\ncharacter table (z = exp(2 pi i/{}), modular prime {}):",
            t.conductor, t.prime
        );
        let width = t
            .rows
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1)
            .max(3);
        let mut header = format!("  {:<6}", "");
        for c in 0..t.rows.first().map_or(0, Vec::len) {
            let _ = write!(header, " {:>width$}", format!("C{}", c + 1));
        }
        let _ = writeln!(out, "{}", header.trim_end());
        for (i, row) in t.rows.iter().enumerate() {
            let mut line = format!("  {:<6}", format!("chi_{}", i + 1));
            for v in row {
                let _ = write!(line, " {v:>width$}");
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }

    if !doc.rational_classes.is_empty() {
        let _ = writeln!(out, "\nrational classes:");
        for c in &doc.rational_classes {
            let members: Vec<String> = c.members.iter().map(|m| format!("chi_{m}")).collect();
            let provenance = match c.schur_provenance {
                SchurProvenance::Heuristic => "indicator",
                SchurProvenance::Override => "override",
            };
            let mut line = format!(
                "  W_{}: {} degree {}, [K:Q] = {}, Schur index {} ({}), n = {}, dim W = {}",
                c.label,
                members.join("+"),
                c.degree,
                c.field_degree,
                c.schur_index,
                provenance,
                c.n,
                c.dim_w
            );
            if let Some(b) = c.dim_b {
                let _ = write!(line, ", dim B = {b}");
            }
            let _ = writeln!(out, "{line}");
        }
    }

    if let Some(a) = &doc.action {
        let _ = writeln!(out, "\naction: signature {}", a.signature);
        if !a.handles.is_empty() {
            let handles: Vec<String> = a.handles.iter().map(|[x, y]| format!("[{x}, {y}]")).collect();
            let _ = writeln!(out, "  handles {}", handles.join(", "));
        }
        let _ = writeln!(out, "  vector {}", tuple(&a.vector));
        let _ = writeln!(
            out,
            "  genus {}, branch number {}",
            a.certificate.total_genus, a.certificate.branch_number
        );
    }
    if let Some(s) = &doc.decomposition {
        let _ = writeln!(out, "  decomposition: {s}");
    }
    if let Some(r) = &doc.rational_representation {
        let _ = writeln!(
            out,
            "  rational representation: multiplicities {}, degree {}",
            tuple(&r.multiplicities),
            r.total_degree
        );
    }

    if !doc.profiles.is_empty() {
        let _ = writeln!(out, "\nsubgroup profiles:");
        for p in &doc.profiles {
            let _ = writeln!(
                out,
                "  {}: order {}, genus {}, fixed dims {}, exponents {}",
                p.label,
                p.subgroup.order(),
                p.genus,
                tuple(&p.fixed_dims),
                tuple(&p.exponents)
            );
            let _ = writeln!(out, "    {}", p.statement);
        }
    }

    for c in &doc.collections {
        let _ = writeln!(out, "\ncollection {}: {}", c.name, c.subgroups.join(", "));
        let _ = writeln!(out, "  genera {}", tuple(&c.admissibility.genera));
        render_admissibility(&mut out, "acting group", &c.admissibility);
        if let Some(j) = &c.join_admissibility {
            render_admissibility(&mut out, "join", j);
        }
        let ambient = match c.ambient {
            Ambient::Acting => "acting group",
            Ambient::Join => "join",
        };
        match &c.decomposition {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "  decomposition over the {ambient}: {} with dim P = {}{}",
                    r.statement,
                    r.dim_p,
                    if r.full { " (full)" } else { "" }
                );
                let _ = writeln!(out, "    reduced slacks {}", opt_tuple(&r.reduced_slacks));
            }
            None => {
                let _ = writeln!(out, "  decomposition over the {ambient}: not available");
            }
        }
        for p in &c.prym_containment {
            let _ = writeln!(
                out,
                "  Prym of C -> C/{}: dimension {}, other quotients {}{}",
                p.subgroup,
                p.prym_dim,
                p.others_genus,
                if p.equality { " (equal)" } else { "" }
            );
        }
        let e = &c.equivalence;
        let _ = writeln!(
            out,
            "  equivalence: fixed-dimension form {}, character form {}, multiplicities {}",
            yes_no(e.statement2),
            yes_no(e.statement3),
            tuple(&e.multiplicities)
        );
        if let Some(r) = &e.regular_form {
            let _ = writeln!(
                out,
                "    regular form: {}, trivial multiplicity {}, formula {}",
                yes_no(r.regular_form),
                r.trivial_multiplicity,
                r.formula
            );
        }
        let p = &c.permuting;
        let _ = writeln!(
            out,
            "  permuting pairs: permute {}, products of genus 0 {}, genus sum matches {}, criterion applies {}",
            yes_no(p.pairwise_permute),
            yes_no(p.products_genus_zero),
            yes_no(p.genus_sum_matches),
            yes_no(p.applies)
        );
        if let Some(r) = &c.pair {
            let _ = writeln!(
                out,
                "  pair: {} with join {} of genus {}, dim P = {}{}",
                r.statement,
                r.join,
                r.join_genus,
                r.dim_p,
                if r.full { " (full)" } else { "" }
            );
            let _ = writeln!(out, "    reduced slacks {}", tuple(&r.reduced_slacks));
        }
    }

    if let Some(s) = &doc.search {
        let _ = writeln!(
            out,
            "\nsearch: max t {}, require full {}, dedupe conjugates {}: {} collections",
            s.max_t,
            yes_no(s.require_full),
            yes_no(s.dedupe_conjugates),
            s.results.len()
        );
        for r in &s.results {
            let _ = writeln!(
                out,
                "  {{{}}} genera {} sum {}",
                r.subgroups.join(", "),
                tuple(&r.genera),
                r.genus_sum()
            );
        }
    }

    if let Some(f) = &doc.fiber {
        let _ = writeln!(out, "\nfiber product of genera {}", tuple(&f.genera));
        if let Some(t) = f.elliptic_count {
            let pairs: Vec<String> = f
                .pairing
                .iter()
                .map(|p| tuple(&p.iter().map(|j| format!("E_{j}")).collect::<Vec<_>>()))
                .collect();
            let _ = writeln!(out, "  {t} elliptic curves carried as {}", pairs.join(", "));
        }
        let _ = writeln!(out, "  kernels {} with genera {}", f.kernels.join(", "), tuple(&f.kernel_genera));
        let _ = writeln!(out, "  genus {} (closed formula {})", f.genus, f.predicted_genus);
        let _ = writeln!(out, "  dim P {} (closed formula {})", f.dim_p, f.predicted_dim_p);
        let _ = writeln!(out, "  kernels admissible {}", yes_no(f.admissible));
    }

    for p in &doc.partitions {
        let r = &p.report;
        let _ = writeln!(out, "\npartition {}: {}", p.name, r.subgroups.join(", "));
        let _ = writeln!(
            out,
            "  weighted permutation characters {} against {}: {}",
            tuple(&r.weighted_sum),
            tuple(&r.expected),
            yes_no(r.character_identity)
        );
        let pairs: Vec<String> = r.class_identities.iter().map(|(a, b)| format!("{a}={b}")).collect();
        let _ = writeln!(out, "  per-class identities {}: {}", pairs.join(", "), yes_no(r.class_identity));
        let _ = writeln!(
            out,
            "  dimensions {} = {}: {}",
            r.dimension_lhs,
            r.dimension_rhs,
            yes_no(r.dimension_identity)
        );
        let _ = writeln!(out, "  {}", r.statement);
    }

    if !doc.notes.is_empty() {
        let _ = writeln!(out, "\nnotes:");
        for n in &doc.notes {
            let kind = match n.kind {
                NoteKind::Discrepancy => "DISCREPANCY",
                NoteKind::Info => "info",
            };
            let _ = writeln!(out, "  {kind} [{}]: {}", n.scope, n.message);
        }
    }
    out
}
