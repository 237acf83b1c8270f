//! Scenario files (JSON, `"schema": 1`).
//!
//! ```json
//! {
//!   "schema": 1,
//!   "id": "chain",
//!   "type": "sup",
//!   "space": { "dim": 2, "tolerance": 1e-9 },
//!   "functional": { "weights": [0.7, 0.3] },
//!   "family": { "kind": "stream", "name": "chain_to",
//!               "params": { "target": [1, 1], "rate": 0.5 } },
//!   "expected_sup": [1, 1],
//!   "config": { "eps": 1e-8 }
//! }
//! ```
//!
//! `type` is one of `sup` (default), `normal` (needs `map`) and `parseval`
//! (needs `projections`, 0-based coordinate indices). Family kinds are
//! `finite` (`elements`), `join_closure` (`generators`) and `stream`
//! (`name` + `params`).

use std::path::Path;

use serde::Deserialize;

use monosel_core::{
    stream_family, DirectedFamily, Element, PositiveMap, SelectionConfig, Space, StreamPreset,
    SubspacePredicate, WeightFunctional,
};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Stream prefix inspected when neither the family nor the config sets one.
pub const DEFAULT_SCAN_BUDGET: usize = 256;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    #[default]
    Sup,
    Normal,
    Parseval,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub id: String,
    #[serde(rename = "type", default)]
    pub kind: ScenarioKind,
    pub space: SpaceSpec,
    pub functional: FunctionalSpec,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub bound: Option<Vec<f64>>,
    #[serde(default)]
    pub expected_sup: Option<Vec<f64>>,
    #[serde(default)]
    pub subspace: Option<String>,
    #[serde(default)]
    pub map: Option<MapSpec>,
    #[serde(default)]
    pub projections: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub config: ConfigSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub dim: usize,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalSpec {
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Finite {
        elements: Vec<Vec<f64>>,
    },
    JoinClosure {
        generators: Vec<Vec<f64>>,
    },
    Stream {
        name: String,
        #[serde(default)]
        params: serde_json::Value,
        #[serde(default)]
        scan_budget: Option<usize>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub matrix: Vec<Vec<f64>>,
    pub codomain_weights: Vec<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub scan_budget: Option<usize>,
    #[serde(default)]
    pub force_nonfaithful: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainToParams {
    target: Vec<f64>,
    rate: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxApproachParams {
    target: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomDirectedParams {
    seed: u64,
    count: usize,
}

fn params<T: for<'de> Deserialize<'de>>(name: &str, value: &serde_json::Value) -> Result<T> {
    serde_json::from_value(value.clone())
        .map_err(|e| CliError::Schema(format!("family.params for {name}: {e}")))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario =
            serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        if s.schema != SCHEMA_VERSION {
            return Err(CliError::Schema(format!(
                "schema: unsupported version {}, expected {SCHEMA_VERSION}",
                s.schema
            )));
        }
        if s.functional.weights.len() != s.space.dim {
            return Err(CliError::Schema(format!(
                "functional.weights: length {} does not match space.dim {}",
                s.functional.weights.len(),
                s.space.dim
            )));
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    pub fn space(&self) -> Result<Space> {
        let space = Space::coordinate(self.space.dim)?;
        Ok(match self.space.tolerance {
            Some(t) => space.with_tolerance(t)?,
            None => space,
        })
    }

    pub fn functional(&self) -> Result<WeightFunctional> {
        Ok(WeightFunctional::new(self.functional.weights.clone())?)
    }

    pub fn selection_config(&self) -> SelectionConfig {
        let d = SelectionConfig::default();
        SelectionConfig {
            eps: self.config.eps.unwrap_or(d.eps),
            max_iters: self.config.max_iters.unwrap_or(d.max_iters),
            scan_budget: self.config.scan_budget,
            force_nonfaithful: self.config.force_nonfaithful,
        }
    }

    pub fn family(&self) -> Result<DirectedFamily> {
        let space = self.space()?;
        let spec = self
            .family
            .as_ref()
            .ok_or_else(|| CliError::Schema("family: required for this scenario type".into()))?;
        let vectors = |xs: &[Vec<f64>]| -> Result<Vec<Element>> {
            xs.iter()
                .map(|x| Element::vector(x.clone()).map_err(CliError::from))
                .collect()
        };
        let fam = match spec {
            FamilySpec::Finite { elements } => DirectedFamily::finite(space, vectors(elements)?)?,
            FamilySpec::JoinClosure { generators } => {
                monosel_core::join_closure(vectors(generators)?, space)?
            }
            FamilySpec::Stream {
                name,
                params: value,
                scan_budget,
            } => {
                let preset = match name.as_str() {
                    "chain_to" => {
                        let p: ChainToParams = params(name, value)?;
                        StreamPreset::ChainTo {
                            target: p.target,
                            rate: p.rate,
                        }
                    }
                    "box_approach" => {
                        let p: BoxApproachParams = params(name, value)?;
                        StreamPreset::BoxApproach { target: p.target }
                    }
                    "random_directed" => {
                        let p: RandomDirectedParams = params(name, value)?;
                        StreamPreset::RandomDirected {
                            dim: self.space.dim,
                            seed: p.seed,
                            count: p.count,
                        }
                    }
                    other => {
                        return Err(CliError::Schema(format!(
                            "family.name: unknown stream family {other:?} \
                             (expected chain_to, box_approach or random_directed)"
                        )))
                    }
                };
                let budget = scan_budget
                    .or(self.config.scan_budget)
                    .unwrap_or(DEFAULT_SCAN_BUDGET);
                stream_family(&preset, space, budget)?
            }
        };
        match &self.bound {
            Some(b) => Ok(fam.with_bound(Element::vector(b.clone())?)?),
            None => Ok(fam),
        }
    }

    pub fn subspace(&self) -> Result<Option<SubspacePredicate>> {
        self.subspace.as_deref().map(named_subspace).transpose()
    }

    pub fn map(&self) -> Result<(PositiveMap, WeightFunctional)> {
        let spec = self
            .map
            .as_ref()
            .ok_or_else(|| CliError::Schema("map: required for type \"normal\"".into()))?;
        let phi = PositiveMap::new(spec.matrix.clone())?;
        if phi.domain_dim() != self.space.dim {
            return Err(CliError::Schema(format!(
                "map.matrix: {} columns, space.dim is {}",
                phi.domain_dim(),
                self.space.dim
            )));
        }
        Ok((phi, WeightFunctional::new(spec.codomain_weights.clone())?))
    }

    pub fn expected_sup(&self) -> Result<Option<Element>> {
        match &self.expected_sup {
            Some(x) => {
                let e = Element::vector(x.clone())?;
                self.space()?.check(&e)?;
                Ok(Some(e))
            }
            None => Ok(None),
        }
    }
}

/// `whole`, `nonnegative`, `constant` or `zero:<coordinate>`.
pub fn named_subspace(name: &str) -> Result<SubspacePredicate> {
    match name {
        "whole" => Ok(SubspacePredicate::whole()),
        "nonnegative" => Ok(SubspacePredicate::nonnegative()),
        "constant" => Ok(SubspacePredicate::constant()),
        other => match other.strip_prefix("zero:").map(str::parse::<usize>) {
            Some(Ok(i)) => Ok(SubspacePredicate::zero_coordinate(i)),
            _ => Err(CliError::Schema(format!(
                "subspace: unknown predicate {other:?} \
                 (expected whole, nonnegative, constant or zero:<i>)"
            ))),
        },
    }
}
