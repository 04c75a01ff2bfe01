//! JSON documents: explicit inductive systems, Bratteli diagrams and finite
//! transformation groups, each with an optional action block.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::dimgroup::InductiveSystem;
use crate::json::{self, At};
use crate::kaction::{K0Action, StageMap};
use crate::linalg::matrix::IntMatrix;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

/// Bratteli diagram given by edge multiplicities; `multiplicities[k]` is
/// `vertex_counts[k+1] × vertex_counts[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub vertex_counts: Vec<usize>,
    pub multiplicities: Vec<IntMatrix>,
    pub stationary: bool,
}

impl BratteliDiagram {
    pub fn levels(&self) -> usize {
        self.vertex_counts.len()
    }
}

/// `n` points permuted by `r` generators; `permutations[j][y−1] = s_j(y)`
/// (one-based images).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSystem {
    pub points: usize,
    pub permutations: Vec<Vec<usize>>,
}

impl FiniteSystem {
    pub fn new(points: usize, permutations: Vec<Vec<usize>>) -> Result<Self> {
        let fs = FiniteSystem { points, permutations };
        fs.validate("$.finite_system")?;
        Ok(fs)
    }

    fn validate(&self, prefix: &str) -> Result<()> {
        if self.points == 0 {
            return Err(Error::invalid(
                format!("{prefix}.points"),
                "at least one point is required",
            ));
        }
        for (j, perm) in self.permutations.iter().enumerate() {
            let path = format!("{prefix}.permutations[{j}]");
            if perm.len() != self.points {
                return Err(Error::invalid(
                    path,
                    format!("has {} images, expected {}", perm.len(), self.points),
                ));
            }
            let mut seen = vec![false; self.points];
            for (i, &y) in perm.iter().enumerate() {
                if y == 0 || y > self.points {
                    return Err(Error::invalid(
                        format!("{path}[{i}]"),
                        format!("image {y} is not in 1..={}", self.points),
                    ));
                }
                if std::mem::replace(&mut seen[y - 1], true) {
                    return Err(Error::invalid(
                        format!("{path}[{i}]"),
                        format!("image {y} repeats; not a bijection"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `M e_y = e_{s(y)}`: the class of the indicator of `{y}` moves to
    /// that of `{s(y)}` under `f ↦ f∘s⁻¹`.
    pub fn permutation_matrix(&self, j: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.points, self.points);
        for (y, &sy) in self.permutations[j].iter().enumerate() {
            m[(sy - 1, y)] = BigInt::one();
        }
        m
    }
}

/// Where the ordered group comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    System(InductiveSystem),
    Diagram(BratteliDiagram),
    Finite(FiniteSystem),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub description: Option<String>,
}

/// A validated document with its resolved system and action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDocument {
    pub metadata: Metadata,
    source: Source,
    declared_action: Option<K0Action>,
    system: InductiveSystem,
    action: K0Action,
}

impl SystemDocument {
    /// `action` must be `None` for finite systems, whose action is derived
    /// from the permutations; elsewhere `None` means zero generators.
    pub fn new(metadata: Metadata, source: Source, action: Option<K0Action>) -> Result<Self> {
        let (system, derived) = resolve(&source)?;
        let resolved = match (&derived, &action) {
            (Some(_), Some(_)) => {
                return Err(Error::invalid(
                    "$.action",
                    "a finite_system document derives its action from the permutations",
                ))
            }
            (Some(d), None) => d.clone(),
            (None, Some(a)) => {
                // Re-validate against this system.
                K0Action::new(&system, a.forward_maps().to_vec(), a.inverse_maps().to_vec())?
            }
            (None, None) => K0Action::new(&system, vec![], vec![])?,
        };
        Ok(SystemDocument {
            metadata,
            source,
            declared_action: action,
            system,
            action: resolved,
        })
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn system(&self) -> &InductiveSystem {
        &self.system
    }

    pub fn action(&self) -> &K0Action {
        &self.action
    }

    /// Same source with `action` in place of the declared one.
    pub fn with_action(&self, action: K0Action) -> Result<Self> {
        let source = match &self.source {
            Source::Finite(_) => Source::System(self.system.clone()),
            s => s.clone(),
        };
        SystemDocument::new(self.metadata.clone(), source, Some(action))
    }
}

fn resolve(source: &Source) -> Result<(InductiveSystem, Option<K0Action>)> {
    match source {
        Source::System(s) => Ok((s.clone(), None)),
        Source::Diagram(d) => Ok((diagram_to_system(d)?, None)),
        Source::Finite(f) => {
            let (s, a) = finite_system_to_k0(f)?;
            Ok((s, Some(a)))
        }
    }
}

/// Stage ranks are the vertex counts, connecting maps the multiplicity
/// matrices, and the unit is all-ones at level 0.
pub fn diagram_to_system(d: &BratteliDiagram) -> Result<InductiveSystem> {
    let prefix = "$.diagram";
    if d.vertex_counts.len() != d.multiplicities.len() + 1 {
        return Err(Error::invalid(
            format!("{prefix}.multiplicities"),
            format!(
                "{} matrices for {} levels (need one fewer than levels)",
                d.multiplicities.len(),
                d.levels()
            ),
        ));
    }
    for (k, m) in d.multiplicities.iter().enumerate() {
        let path = format!("{prefix}.multiplicities[{k}]");
        if m.rows() != d.vertex_counts[k + 1] || m.cols() != d.vertex_counts[k] {
            return Err(Error::invalid(
                path,
                format!(
                    "shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    d.vertex_counts[k + 1],
                    d.vertex_counts[k]
                ),
            ));
        }
        if let Some((i, j, v)) = m.first_negative() {
            return Err(Error::invalid(
                format!("{path}[{i}][{j}]"),
                format!("negative multiplicity {v}"),
            ));
        }
        if let Some(j) = m.zero_column() {
            return Err(Error::invalid(path, format!("vertex {j} of level {k} emits no edges")));
        }
        if let Some(i) = m.zero_row() {
            return Err(Error::invalid(
                path,
                format!("vertex {i} of level {} receives no edges", k + 1),
            ));
        }
    }
    let unit = vec![BigInt::one(); d.vertex_counts.first().copied().unwrap_or(0)];
    InductiveSystem::build(
        prefix,
        d.vertex_counts.clone(),
        d.multiplicities.clone(),
        unit,
        d.stationary,
    )
}

/// One-stage system `Zⁿ` with unit all-ones; generator `j` acts by the
/// permutation matrix of `s_j` and its inverse by the transpose.
pub fn finite_system_to_k0(fs: &FiniteSystem) -> Result<(InductiveSystem, K0Action)> {
    fs.validate("$.finite_system")?;
    let n = fs.points;
    let system = InductiveSystem::new(vec![n], vec![], vec![BigInt::one(); n], false)?;
    let forward: Vec<IntMatrix> = (0..fs.permutations.len()).map(|j| fs.permutation_matrix(j)).collect();
    let inverse = forward.iter().map(IntMatrix::transpose).collect();
    let action = K0Action::one_stage(&system, forward, inverse)?;
    Ok((system, action))
}

pub fn parse(bytes: &[u8]) -> Result<SystemDocument> {
    let value = json::parse_bytes(bytes)?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<SystemDocument> {
    let root = At::root(value);
    root.only_keys(&[
        "schema_version",
        "metadata",
        "system",
        "diagram",
        "finite_system",
        "action",
    ])?;
    let version = root.get("schema_version")?;
    if version.usize()? as u64 != SCHEMA_VERSION {
        return Err(Error::invalid(
            &version.path,
            format!("unsupported schema version (expected {SCHEMA_VERSION})"),
        ));
    }
    let metadata = match root.opt("metadata")? {
        Some(m) => {
            m.only_keys(&["name", "description"])?;
            Metadata {
                name: m.opt("name")?.map(|v| v.str().map(str::to_string)).transpose()?,
                description: m.opt("description")?.map(|v| v.str().map(str::to_string)).transpose()?,
            }
        }
        None => Metadata::default(),
    };
    let present: Vec<&str> = ["system", "diagram", "finite_system"]
        .into_iter()
        .filter(|k| value.get(*k).is_some())
        .collect();
    let source = match present.as_slice() {
        ["system"] => Source::System(parse_system(&root.get("system")?)?),
        ["diagram"] => Source::Diagram(parse_diagram(&root.get("diagram")?)?),
        ["finite_system"] => Source::Finite(parse_finite(&root.get("finite_system")?)?),
        [] => {
            return Err(Error::invalid(
                "$",
                "one of system, diagram or finite_system is required",
            ))
        }
        _ => {
            return Err(Error::invalid(
                "$",
                format!("only one source allowed, found {}", present.join(", ")),
            ))
        }
    };
    let action_node = root.opt("action")?;
    if let (Source::Finite(_), Some(a)) = (&source, &action_node) {
        return Err(Error::invalid(
            &a.path,
            "a finite_system document derives its action from the permutations",
        ));
    }
    let (system, _) = resolve(&source)?;
    let action = action_node.map(|a| parse_action(&a, &system)).transpose()?;
    SystemDocument::new(metadata, source, action)
}

fn parse_system(node: &At) -> Result<InductiveSystem> {
    node.only_keys(&["stationary", "stage_ranks", "connecting_maps", "unit"])?;
    let stationary = node.opt("stationary")?.map(|v| v.bool()).transpose()?.unwrap_or(false);
    let ranks = node.get("stage_ranks")?.usize_vector()?;
    let maps_node = node.get("connecting_maps")?;
    let maps = maps_node
        .array()?
        .iter()
        .enumerate()
        .map(|(k, m)| m.int_matrix(ranks.get(k).copied()))
        .collect::<Result<Vec<_>>>()?;
    let unit = node.get("unit")?.int_vector()?;
    InductiveSystem::build(&node.path, ranks, maps, unit, stationary)
}

fn parse_diagram(node: &At) -> Result<BratteliDiagram> {
    node.only_keys(&["levels", "vertex_counts", "multiplicities", "stationary"])?;
    let vertex_counts = node.get("vertex_counts")?.usize_vector()?;
    if let Some(levels) = node.opt("levels")? {
        if levels.usize()? != vertex_counts.len() {
            return Err(Error::invalid(
                &levels.path,
                format!(
                    "{} levels declared, {} vertex counts given",
                    levels.usize()?,
                    vertex_counts.len()
                ),
            ));
        }
    }
    if let Some(k) = vertex_counts.iter().position(|&c| c == 0) {
        return Err(Error::invalid(
            format!("{}.vertex_counts[{k}]", node.path),
            "a level needs at least one vertex",
        ));
    }
    let multiplicities = node
        .get("multiplicities")?
        .array()?
        .iter()
        .enumerate()
        .map(|(k, m)| m.int_matrix(vertex_counts.get(k).copied()))
        .collect::<Result<Vec<_>>>()?;
    let stationary = node.opt("stationary")?.map(|v| v.bool()).transpose()?.unwrap_or(false);
    Ok(BratteliDiagram {
        vertex_counts,
        multiplicities,
        stationary,
    })
}

fn parse_finite(node: &At) -> Result<FiniteSystem> {
    node.only_keys(&["points", "permutations"])?;
    let fs = FiniteSystem {
        points: node.get("points")?.usize()?,
        permutations: node
            .get("permutations")?
            .array()?
            .iter()
            .map(At::usize_vector)
            .collect::<Result<_>>()?,
    };
    fs.validate(&node.path)?;
    Ok(fs)
}

fn parse_action(node: &At, system: &InductiveSystem) -> Result<K0Action> {
    node.only_keys(&["generators", "forward", "inverse"])?;
    let generators = node.get("generators")?;
    let r = generators.usize()?;
    let family = |key: &str| -> Result<Vec<Vec<StageMap>>> {
        let list = node.get(key)?;
        let items = list.array()?;
        if items.len() != r {
            return Err(Error::invalid(
                &list.path,
                format!("{} entries, expected {r} (one per generator)", items.len()),
            ));
        }
        items
            .iter()
            .map(|maps| {
                maps.array()?
                    .iter()
                    .map(|m| {
                        m.only_keys(&["from_stage", "to_stage", "matrix"])?;
                        let from_stage = m.get("from_stage")?.usize()?;
                        let cols = system.rank(from_stage).ok();
                        Ok(StageMap {
                            from_stage,
                            to_stage: m.get("to_stage")?.usize()?,
                            matrix: m.get("matrix")?.int_matrix(cols)?,
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let forward = family("forward")?;
    let inverse = family("inverse")?;
    K0Action::build(&node.path, system, forward, inverse)
}

fn system_value(s: &InductiveSystem) -> Value {
    json::object([
        ("stationary", Value::Bool(s.is_stationary())),
        (
            "stage_ranks",
            Value::Array(s.declared_ranks().iter().map(|&p| Value::from(p)).collect()),
        ),
        (
            "connecting_maps",
            Value::Array(s.declared_maps().iter().map(json::int_matrix).collect()),
        ),
        ("unit", json::int_vector(&s.unit(0).expect("stage 0 exists"))),
    ])
}

fn action_value(a: &K0Action) -> Value {
    let family = |maps: &[Vec<StageMap>]| -> Value {
        Value::Array(
            maps.iter()
                .map(|ms| {
                    Value::Array(
                        ms.iter()
                            .map(|m| {
                                json::object([
                                    ("from_stage", Value::from(m.from_stage)),
                                    ("to_stage", Value::from(m.to_stage)),
                                    ("matrix", json::int_matrix(&m.matrix)),
                                ])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    json::object([
        ("generators", Value::from(a.generators())),
        ("forward", family(a.forward_maps())),
        ("inverse", family(a.inverse_maps())),
    ])
}

pub fn to_value(doc: &SystemDocument) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    let mut meta = Map::new();
    if let Some(n) = &doc.metadata.name {
        meta.insert("name".into(), Value::String(n.clone()));
    }
    if let Some(d) = &doc.metadata.description {
        meta.insert("description".into(), Value::String(d.clone()));
    }
    if !meta.is_empty() {
        m.insert("metadata".into(), Value::Object(meta));
    }
    match &doc.source {
        Source::System(s) => {
            m.insert("system".into(), system_value(s));
        }
        Source::Diagram(d) => {
            m.insert(
                "diagram".into(),
                json::object([
                    ("levels", Value::from(d.levels())),
                    (
                        "vertex_counts",
                        Value::Array(d.vertex_counts.iter().map(|&c| Value::from(c)).collect()),
                    ),
                    (
                        "multiplicities",
                        Value::Array(d.multiplicities.iter().map(json::int_matrix).collect()),
                    ),
                    ("stationary", Value::Bool(d.stationary)),
                ]),
            );
        }
        Source::Finite(f) => {
            m.insert(
                "finite_system".into(),
                json::object([
                    ("points", Value::from(f.points)),
                    (
                        "permutations",
                        Value::Array(
                            f.permutations
                                .iter()
                                .map(|p| Value::Array(p.iter().map(|&y| Value::from(y)).collect()))
                                .collect(),
                        ),
                    ),
                ]),
            );
        }
    }
    if let Some(a) = &doc.declared_action {
        m.insert("action".into(), action_value(a));
    }
    Value::Object(m)
}

/// Canonical bytes: sorted keys, no floats, trailing newline.
pub fn serialize(doc: &SystemDocument) -> String {
    json::to_canonical_string(&to_value(doc))
}

/// True when every entry of `m` is `0` or `1` with exactly one `1` per row
/// and per column.
pub fn is_permutation_matrix(m: &IntMatrix) -> bool {
    m.is_square()
        && m.entries().iter().all(|x| x.is_zero() || x.is_one())
        && (0..m.rows()).all(|i| m.row(i).iter().filter(|x| x.is_one()).count() == 1)
        && (0..m.cols()).all(|j| m.column(j).iter().filter(|x| x.is_one()).count() == 1)
}
