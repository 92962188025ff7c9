//! The strictly increasing extension of a separably increasing partial utility.
//!
//! With `a`, `b` the sample envelopes at `x`, `u` a base utility in
//! `(alpha, beta)` and `u1` its normalization, the canonical form is
//!
//! ```text
//! f = max{a, min{b, beta} - beta + alpha} (1 - u1) + min{b, max{a, alpha} - alpha + beta} u1
//! ```
//!
//! The other forms are algebraically equal rewrites used for speed and as
//! cross-checks:
//!
//! * `Prime`: the same expression written through `u` instead of `u1`.
//! * `Piecewise`: dispatch on [`Alun`]; `u` shifted by the nearest bound on
//!   `L`/`U`, `u` alone on `N`, the prime form on `A`.
//! * `Regions`: dispatch on the S-regions; an interpolation between `a` and `b`
//!   on `S1`, `u` shifted by `b` or `a` on `S2`/`S3`, `u` on `S4`.
//! * `Pareto`: for antichains only, where `A` is empty.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::BaseUtility;
use crate::bounds::{check_alpha_beta, s_regions, Alun, RegionLabel, SRegion, Scan};
use crate::dataset::{Domain, UtilityDataset};
use crate::error::{Error, Result};
use crate::order::{ext_max, ext_min, ExtendedReal};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    #[default]
    Canonical,
    Prime,
    Piecewise,
    Regions,
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub f: f64,
    pub a: ExtendedReal,
    pub b: ExtendedReal,
    pub region: RegionLabel,
    pub u: f64,
}

/// Per-query ingredients shared by every form.
#[derive(Debug, Clone, Copy)]
struct Inputs {
    scan: Scan,
    u: f64,
    u1: f64,
}

fn finite(v: ExtendedReal) -> Result<f64> {
    v.finite().ok_or(Error::NonFiniteExtension)
}

/// A validated partial utility together with a base utility and a form.
#[derive(Debug, Clone)]
pub struct Extension<D: Domain, U> {
    dataset: UtilityDataset<D>,
    base: U,
    form: Form,
    pareto: bool,
}

impl<D, U> Extension<D, U>
where
    D: Domain,
    U: BaseUtility<D::Elem>,
{
    /// Fails unless the dataset is separably increasing, `alpha < beta`, and
    /// (for [`Form::Pareto`]) the samples form an antichain.
    pub fn new(dataset: UtilityDataset<D>, base: U, form: Form) -> Result<Self> {
        if let Some(v) = dataset.separability_violation() {
            let describe = |i: usize| dataset.domain().describe(&dataset.points()[i]);
            return Err(Error::NotSeparablyIncreasing {
                lo: v.lo,
                hi: v.hi,
                lo_point: describe(v.lo),
                hi_point: describe(v.hi),
            });
        }
        check_alpha_beta(base.alpha(), base.beta())?;
        let pareto = dataset.is_pareto_set();
        if form == Form::Pareto && !pareto {
            return Err(Error::NotParetoSet);
        }
        Ok(Extension { dataset, base, form, pareto })
    }

    pub fn dataset(&self) -> &UtilityDataset<D> {
        &self.dataset
    }

    pub fn base(&self) -> &U {
        &self.base
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn with_form(mut self, form: Form) -> Result<Self> {
        if form == Form::Pareto && !self.pareto {
            return Err(Error::NotParetoSet);
        }
        self.form = form;
        Ok(self)
    }

    fn alpha(&self) -> f64 {
        self.base.alpha()
    }

    fn beta(&self) -> f64 {
        self.base.beta()
    }

    fn inputs(&self, x: &D::Elem) -> Result<Inputs> {
        let scan = crate::bounds::scan(&self.dataset, x)?;
        let u = self.base.eval_u(x)?;
        let u1 = crate::base::normalize(u, self.alpha(), self.beta());
        Ok(Inputs { scan, u, u1 })
    }

    /// Evaluates the configured form. Sample points return their stored value
    /// without any arithmetic.
    pub fn eval(&self, x: &D::Elem) -> Result<EvalResult> {
        let inp = self.inputs(x)?;
        let bounds = inp.scan.bounds;
        let region = RegionLabel { alun: inp.scan.alun(), s: s_regions(bounds, self.alpha(), self.beta())? };
        let f = match inp.scan.sample {
            Some(i) => self.dataset.values()[i],
            None => self.value(self.form, &inp)?,
        };
        Ok(EvalResult { f, a: bounds.a, b: bounds.b, region, u: inp.u })
    }

    /// Evaluates a batch in parallel; results keep input order.
    pub fn eval_batch(&self, xs: &[D::Elem]) -> Vec<Result<EvalResult>>
    where
        U: Sync,
    {
        xs.par_iter().map(|x| self.eval(x)).collect()
    }

    fn value(&self, form: Form, inp: &Inputs) -> Result<f64> {
        match form {
            Form::Canonical => self.canonical(inp),
            Form::Prime => self.prime(inp),
            Form::Piecewise => self.piecewise(inp),
            Form::Regions => {
                let s = s_regions(inp.scan.bounds, self.alpha(), self.beta())?;
                let region = s.first().expect("S-regions cover every point");
                self.region_branch(region, inp)
            }
            Form::Pareto => self.pareto(inp),
        }
    }

    /// The canonical expression evaluated verbatim, sample points included.
    pub fn eval_canonical(&self, x: &D::Elem) -> Result<f64> {
        self.canonical(&self.inputs(x)?)
    }

    /// The form written through `u`, evaluated verbatim.
    pub fn eval_prime(&self, x: &D::Elem) -> Result<f64> {
        self.prime(&self.inputs(x)?)
    }

    pub fn eval_piecewise(&self, x: &D::Elem) -> Result<f64> {
        self.piecewise(&self.inputs(x)?)
    }

    /// S-region dispatch using the first region containing `x`.
    pub fn eval_regions(&self, x: &D::Elem) -> Result<f64> {
        self.value(Form::Regions, &self.inputs(x)?)
    }

    pub fn eval_pareto(&self, x: &D::Elem) -> Result<f64> {
        self.pareto(&self.inputs(x)?)
    }

    fn canonical(&self, inp: &Inputs) -> Result<f64> {
        let (alpha, beta) = (self.alpha(), self.beta());
        let crate::bounds::Bounds { a, b } = inp.scan.bounds;
        let lower = ext_max(a, ext_min(b, beta.into()).sub_const(beta).add_const(alpha));
        let upper = ext_min(b, ext_max(a, alpha.into()).sub_const(alpha).add_const(beta));
        Ok(finite(lower)? * (1.0 - inp.u1) + finite(upper)? * inp.u1)
    }

    fn prime(&self, inp: &Inputs) -> Result<f64> {
        let (alpha, beta, u) = (self.alpha(), self.beta(), inp.u);
        let crate::bounds::Bounds { a, b } = inp.scan.bounds;
        let (da, db) = (a.sub_const(alpha), b.sub_const(beta));
        let lower = ext_max(da, ext_min(db, ExtendedReal::ZERO));
        let upper = ext_min(db, ext_max(da, ExtendedReal::ZERO));
        Ok((finite(lower)? * (beta - u) + finite(upper)? * (u - alpha)) / (beta - alpha) + u)
    }

    fn piecewise(&self, inp: &Inputs) -> Result<f64> {
        let crate::bounds::Bounds { a, b } = inp.scan.bounds;
        let u = inp.u;
        match inp.scan.alun() {
            Alun::P => Ok(self.dataset.values()[inp.scan.sample.expect("P has a sample")]),
            Alun::L => Ok(finite(ext_min(b.sub_const(self.beta()), ExtendedReal::ZERO))? + u),
            Alun::U => Ok(finite(ext_max(a.sub_const(self.alpha()), ExtendedReal::ZERO))? + u),
            Alun::N => Ok(u),
            Alun::A => self.prime(inp),
        }
    }

    fn region_branch(&self, region: SRegion, inp: &Inputs) -> Result<f64> {
        let crate::bounds::Bounds { a, b } = inp.scan.bounds;
        let Inputs { u, u1, .. } = *inp;
        match region {
            SRegion::S1 => Ok(finite(a)? * (1.0 - u1) + finite(b)? * u1),
            SRegion::S2 => Ok(finite(b)? + u - self.beta()),
            SRegion::S3 => Ok(finite(a)? + u - self.alpha()),
            SRegion::S4 => Ok(u),
        }
    }

    fn pareto(&self, inp: &Inputs) -> Result<f64> {
        if !self.pareto {
            return Err(Error::NotParetoSet);
        }
        let crate::bounds::Bounds { a, b } = inp.scan.bounds;
        let (alpha, beta, u) = (self.alpha(), self.beta(), inp.u);
        match inp.scan.alun() {
            Alun::P => Ok(self.dataset.values()[inp.scan.sample.expect("P has a sample")]),
            Alun::L => Ok(finite(ext_min(b, beta.into()))? - (beta - u)),
            Alun::U => Ok(finite(ext_max(a, alpha.into()))? + u - alpha),
            Alun::N => Ok(u),
            // an antichain has nothing strictly between two samples
            Alun::A => Err(Error::NotParetoSet),
        }
    }

    /// Every applicable form at `x`: canonical, prime, piecewise, each S-region
    /// branch containing `x`, and the Pareto form for antichains.
    pub fn all_forms(&self, x: &D::Elem) -> Result<Vec<(FormValue, f64)>> {
        let inp = self.inputs(x)?;
        let mut out = vec![
            (FormValue::Canonical, self.canonical(&inp)?),
            (FormValue::Prime, self.prime(&inp)?),
            (FormValue::Piecewise, self.piecewise(&inp)?),
        ];
        for region in s_regions(inp.scan.bounds, self.alpha(), self.beta())?.iter() {
            out.push((FormValue::Region(region), self.region_branch(region, &inp)?));
        }
        if self.pareto {
            out.push((FormValue::Pareto, self.pareto(&inp)?));
        }
        Ok(out)
    }

    /// Largest spread between applicable forms at each query; queries whose
    /// spread exceeds `tolerance` are listed.
    pub fn check_form_agreement(&self, xs: &[D::Elem], tolerance: f64) -> Result<FormAgreement> {
        let spreads = xs
            .par_iter()
            .map(|x| {
                let values = self.all_forms(x)?;
                let (lo, hi) = values
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)));
                Ok(hi - lo)
            })
            .collect::<Result<Vec<f64>>>()?;
        let offenders: Vec<(usize, f64)> =
            spreads.iter().copied().enumerate().filter(|&(_, d)| !(d <= tolerance)).collect();
        Ok(FormAgreement {
            queries: xs.len(),
            max_discrepancy: spreads.iter().copied().fold(0.0, f64::max),
            tolerance,
            offenders,
        })
    }
}

/// Which expression produced a value in [`Extension::all_forms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormValue {
    Canonical,
    Prime,
    Piecewise,
    Region(SRegion),
    Pareto,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormAgreement {
    pub queries: usize,
    pub max_discrepancy: f64,
    pub tolerance: f64,
    /// `(query index, spread)` for every query above tolerance.
    pub offenders: Vec<(usize, f64)>,
}

impl FormAgreement {
    pub fn passed(&self) -> bool {
        self.offenders.is_empty()
    }
}
