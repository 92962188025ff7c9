//! JSON file formats for datasets, queries and command output.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use monoext::{Alun, ExtendedReal, SRegions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub k: usize,
    pub samples: Vec<VectorSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSample {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub samples: Vec<PosetSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSample {
    pub e: String,
    pub value: f64,
}

/// A query is a coordinate list in vector mode or an element id in poset mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Query {
    Point(Vec<f64>),
    Element(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub queries: Vec<Query>,
}

/// One sample of a witness pair, echoed in the input's own terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub query: Query,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub lo: WitnessSample,
    pub hi: WitnessSample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub strictly_increasing: bool,
    pub separably_increasing: bool,
    pub pareto_set: bool,
    pub sample_count: usize,
    /// Samples `lo < hi` with `f(hi) <= f(lo)`; present when validation fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Poset mode only: whether every `≈`-class touching the samples is
    /// fully sampled with one value, so the extension respects `≈`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx_consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub query: Query,
    pub f: f64,
    pub a: ExtendedReal,
    pub b: ExtendedReal,
    pub alun: Alun,
    pub s: SRegions,
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub query: Query,
    pub a: ExtendedReal,
    pub b: ExtendedReal,
    pub alun: Alun,
    pub s: SRegions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Results<T> {
    pub results: Vec<T>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
