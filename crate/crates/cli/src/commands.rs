use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use monoext::bounds;
use monoext::{
    ArctanSum, BaseUtility, Domain, Error, Extension, Point, PosetDepth, PosetDomain, FinitePoset,
    UtilityDataset, VectorDomain,
};

use crate::format::{
    read_json, ClassifyRecord, EvalRecord, PosetFile, Query, QueryFile, Results, ValidationReport,
    VectorFile, Witness, WitnessSample,
};
use crate::{BaseKind, Mode, RunManifest, EXIT_OK, EXIT_REJECTED};

enum Loaded {
    Vector(UtilityDataset<VectorDomain>),
    Poset(UtilityDataset<PosetDomain>),
}

fn load(m: &RunManifest) -> Result<Loaded> {
    let context = || format!("loading dataset {}", m.data.display());
    match m.mode {
        Mode::Vector => {
            let file: VectorFile = read_json(&m.data)?;
            let samples = file
                .samples
                .into_iter()
                .map(|s| Ok((Point::new(s.x)?, s.value)))
                .collect::<monoext::Result<Vec<_>>>()
                .with_context(context)?;
            let ds = UtilityDataset::from_points(file.k, samples).with_context(context)?;
            Ok(Loaded::Vector(ds))
        }
        Mode::Poset => {
            let file: PosetFile = read_json(&m.data)?;
            let poset = FinitePoset::build(&file.elements, &file.edges).with_context(context)?;
            let samples: Vec<(String, f64)> = file.samples.into_iter().map(|s| (s.e, s.value)).collect();
            let ds = UtilityDataset::from_ids(PosetDomain::new(poset), &samples).with_context(context)?;
            Ok(Loaded::Poset(ds))
        }
    }
}

fn point_query(p: &Point) -> Query {
    Query::Point(p.coords().to_vec())
}

fn write_output<T: Serialize>(m: &RunManifest, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &m.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report<D: Domain>(ds: &UtilityDataset<D>, echo: impl Fn(&D::Elem) -> Query) -> ValidationReport {
    let violation = ds.strict_increase_violation();
    let witness = ds.separability_violation().map(|v| {
        let sample = |i: usize| WitnessSample { query: echo(&ds.points()[i]), value: ds.values()[i] };
        Witness { lo: sample(v.lo), hi: sample(v.hi) }
    });
    ValidationReport {
        strictly_increasing: violation.is_none(),
        separably_increasing: witness.is_none(),
        pareto_set: ds.is_pareto_set(),
        sample_count: ds.len(),
        witness,
        approx_consistent: None,
    }
}

pub fn validate(m: &RunManifest) -> Result<u8> {
    let report = match load(m)? {
        Loaded::Vector(ds) => report(&ds, point_query),
        Loaded::Poset(ds) => {
            let mut r = report(&ds, |&i| Query::Element(ds.poset().id(i).to_owned()));
            r.approx_consistent = Some(ds.approx_conflict().is_none());
            r
        }
    };
    write_output(m, &report)?;
    Ok(if report.separably_increasing { EXIT_OK } else { EXIT_REJECTED })
}

fn vector_base(m: &RunManifest) -> Result<ArctanSum> {
    match m.base.unwrap_or(BaseKind::Arctan) {
        BaseKind::Arctan => Ok(ArctanSum::new(m.alpha, m.beta)?),
        BaseKind::PosetDepth => bail!("base `poset-depth` requires --mode poset"),
    }
}

fn poset_base(m: &RunManifest, poset: &FinitePoset) -> Result<PosetDepth> {
    match m.base.unwrap_or(BaseKind::PosetDepth) {
        BaseKind::PosetDepth => Ok(PosetDepth::new(poset, m.alpha, m.beta)?),
        BaseKind::Arctan => bail!("base `arctan` requires --mode vector"),
    }
}

fn read_queries(m: &RunManifest) -> Result<Vec<Query>> {
    let path = m.queries.as_ref().ok_or_else(|| anyhow!("--queries is required"))?;
    Ok(read_json::<QueryFile>(path)?.queries)
}

fn vector_queries(queries: &[Query]) -> Result<Vec<Point>> {
    queries
        .iter()
        .enumerate()
        .map(|(i, q)| match q {
            Query::Point(c) => Point::new(c.clone()).with_context(|| format!("query {i}")),
            Query::Element(id) => bail!("query {i}: expected coordinates, found element `{id}`"),
        })
        .collect()
}

fn poset_queries(queries: &[Query], domain: &PosetDomain) -> Result<Vec<usize>> {
    queries
        .iter()
        .enumerate()
        .map(|(i, q)| match q {
            Query::Element(id) => domain.element(id).with_context(|| format!("query {i}")),
            Query::Point(_) => bail!("query {i}: expected an element id, found coordinates"),
        })
        .collect()
}

/// `Ok(None)` when the dataset is rejected; the reason goes to stderr.
fn extension<D, U>(ds: UtilityDataset<D>, base: U, m: &RunManifest) -> Result<Option<Extension<D, U>>>
where
    D: Domain,
    U: BaseUtility<D::Elem>,
{
    match Extension::new(ds, base, m.form.into()) {
        Ok(ext) => Ok(Some(ext)),
        Err(e @ Error::NotSeparablyIncreasing { .. }) => {
            eprintln!("error: {e}");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn eval_records<D, U>(ext: &Extension<D, U>, xs: &[D::Elem], queries: Vec<Query>) -> Result<Vec<EvalRecord>>
where
    D: Domain,
    U: BaseUtility<D::Elem> + Sync,
{
    ext.eval_batch(xs)
        .into_iter()
        .zip(queries)
        .enumerate()
        .map(|(i, (r, query))| {
            let r = r.with_context(|| format!("evaluating query {i}"))?;
            Ok(EvalRecord { query, f: r.f, a: r.a, b: r.b, alun: r.region.alun, s: r.region.s, u: r.u })
        })
        .collect()
}

pub fn eval(m: &RunManifest) -> Result<u8> {
    let queries = read_queries(m)?;
    let records = match load(m)? {
        Loaded::Vector(ds) => {
            let base = vector_base(m)?;
            let xs = vector_queries(&queries)?;
            let Some(ext) = extension(ds, base, m)? else { return Ok(EXIT_REJECTED) };
            eval_records(&ext, &xs, queries)?
        }
        Loaded::Poset(ds) => {
            let base = poset_base(m, ds.poset())?;
            let xs = poset_queries(&queries, ds.domain())?;
            let Some(ext) = extension(ds, base, m)? else { return Ok(EXIT_REJECTED) };
            eval_records(&ext, &xs, queries)?
        }
    };
    write_output(m, &Results { results: records })?;
    Ok(EXIT_OK)
}

fn classify_records<D: Domain>(
    ds: &UtilityDataset<D>,
    xs: &[D::Elem],
    queries: Vec<Query>,
    m: &RunManifest,
) -> Result<Vec<ClassifyRecord>> {
    xs.iter()
        .zip(queries)
        .enumerate()
        .map(|(i, (x, query))| {
            let (bounds, label) =
                bounds::classify(ds, x, m.alpha, m.beta).with_context(|| format!("classifying query {i}"))?;
            Ok(ClassifyRecord { query, a: bounds.a, b: bounds.b, alun: label.alun, s: label.s })
        })
        .collect()
}

fn reject<D: Domain>(ds: &UtilityDataset<D>) -> bool {
    match ds.separability_violation() {
        Some(v) => {
            let d = |i: usize| ds.domain().describe(&ds.points()[i]);
            eprintln!(
                "error: partial utility is not separably increasing: {} < {} but f({}) <= f({})",
                d(v.lo),
                d(v.hi),
                d(v.hi),
                d(v.lo)
            );
            true
        }
        None => false,
    }
}

pub fn classify(m: &RunManifest) -> Result<u8> {
    let queries = read_queries(m)?;
    let records = match load(m)? {
        Loaded::Vector(ds) => {
            let xs = vector_queries(&queries)?;
            if reject(&ds) {
                return Ok(EXIT_REJECTED);
            }
            classify_records(&ds, &xs, queries, m)?
        }
        Loaded::Poset(ds) => {
            let xs = poset_queries(&queries, ds.domain())?;
            if reject(&ds) {
                return Ok(EXIT_REJECTED);
            }
            classify_records(&ds, &xs, queries, m)?
        }
    };
    write_output(m, &Results { results: records })?;
    Ok(EXIT_OK)
}
