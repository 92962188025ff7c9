//! Partial utility functions on a finite sample set, and their validation.
//!
//! A dataset lives in a [`Domain`]: either criteria space `R^k` under the
//! Paretian order, or a [`FinitePoset`]. Every predicate here is exact.
//!
//! For finite samples, "separably increasing" coincides with "strictly
//! increasing on the samples": a failure `b(x') <= a(x)` with `x < x'` needs
//! samples `y <= x < x' <= z` with `f(z) <= f(y)`, and `y < z` then follows by
//! transitivity. This breaks down for infinite sample sets whose bounds are
//! not attained, e.g. `f(t) = t` on `t <= 0` and `f(t) = t - 1` on `t > 1`,
//! where `b(1) = 0 = a(0)` although `f` is strictly increasing.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;

use crate::bounds;
use crate::error::{Error, Result};
use crate::order::Point;
use crate::poset::{ExtendedIndex, FinitePoset};

/// The ordered space a dataset lives in.
pub trait Domain: Sync + Send {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Key: Hash + Eq;

    /// Rejects elements that do not belong to the domain.
    fn check(&self, x: &Self::Elem) -> Result<()>;

    /// Partial-order comparison: `Some(Less)` iff `x < y`.
    fn compare(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Ordering>;

    /// Identity key used to detect repeated samples.
    fn key(&self, x: &Self::Elem) -> Self::Key;

    fn describe(&self, x: &Self::Elem) -> String;

    fn lt(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.compare(x, y) == Some(Ordering::Less)
    }
}

/// `R^k` under the Paretian order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorDomain {
    pub k: usize,
}

impl Domain for VectorDomain {
    type Elem = Point;
    type Key = Vec<u64>;

    fn check(&self, x: &Point) -> Result<()> {
        x.ensure_dim(self.k)
    }

    fn compare(&self, x: &Point, y: &Point) -> Option<Ordering> {
        x.partial_cmp_pareto(y)
    }

    fn key(&self, x: &Point) -> Vec<u64> {
        // +0.0 and -0.0 are the same point under exact comparison.
        x.coords().iter().map(|&c| (c + 0.0).to_bits()).collect()
    }

    fn describe(&self, x: &Point) -> String {
        x.to_string()
    }
}

/// The elements of a finite poset, addressed by index.
#[derive(Debug, Clone)]
pub struct PosetDomain {
    pub poset: Arc<FinitePoset>,
}

impl PosetDomain {
    pub fn new(poset: FinitePoset) -> Self {
        PosetDomain { poset: Arc::new(poset) }
    }

    pub fn element(&self, id: &str) -> Result<usize> {
        self.poset.index_of(id)
    }
}

impl Domain for PosetDomain {
    type Elem = usize;
    type Key = usize;

    fn check(&self, x: &usize) -> Result<()> {
        if *x < self.poset.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{x}")))
        }
    }

    fn compare(&self, x: &usize, y: &usize) -> Option<Ordering> {
        if x == y {
            Some(Ordering::Equal)
        } else if self.poset.lt(*x, *y) {
            Some(Ordering::Less)
        } else if self.poset.gt(*x, *y) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    fn key(&self, x: &usize) -> usize {
        *x
    }

    fn describe(&self, x: &usize) -> String {
        self.poset.id(*x).to_owned()
    }
}

/// Two samples `lo < hi` with `f(hi) <= f(lo)`, by sample index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub lo: usize,
    pub hi: usize,
}

/// A partial utility function: finitely many `(element, value)` samples.
#[derive(Debug, Clone)]
pub struct UtilityDataset<D: Domain> {
    domain: D,
    points: Vec<D::Elem>,
    values: Vec<f64>,
}

impl<D: Domain> UtilityDataset<D> {
    /// Validates and deduplicates samples. Exact repeats with equal values
    /// collapse to one sample; repeats with different values are rejected.
    pub fn new(domain: D, samples: impl IntoIterator<Item = (D::Elem, f64)>) -> Result<Self> {
        let mut seen: HashMap<D::Key, usize> = HashMap::new();
        let mut points = Vec::new();
        let mut values = Vec::new();
        for (index, (x, v)) in samples.into_iter().enumerate() {
            domain.check(&x)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteValue(v));
            }
            match seen.get(&domain.key(&x)) {
                Some(&j) if values[j] == v => {}
                Some(&j) => {
                    return Err(Error::ConflictingSample { index, first: values[j], second: v })
                }
                None => {
                    seen.insert(domain.key(&x), points.len());
                    points.push(x);
                    values.push(v);
                }
            }
        }
        Ok(UtilityDataset { domain, points, values })
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[D::Elem] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn samples(&self) -> impl Iterator<Item = (&D::Elem, f64)> {
        self.points.iter().zip(self.values.iter().copied())
    }

    /// Index of the sample equal to `x`, if any.
    pub fn position(&self, x: &D::Elem) -> Option<usize> {
        self.points.iter().position(|p| self.domain.compare(p, x) == Some(Ordering::Equal))
    }

    /// First pair of samples `lo < hi` with `f(hi) <= f(lo)`.
    pub fn strict_increase_violation(&self) -> Option<Violation> {
        let n = self.len();
        for lo in 0..n {
            for hi in 0..n {
                if self.values[hi] <= self.values[lo] && self.domain.lt(&self.points[lo], &self.points[hi]) {
                    return Some(Violation { lo, hi });
                }
            }
        }
        None
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.strict_increase_violation().is_none()
    }

    /// Decides `x < x' ⇒ b(x') > a(x)` for all `x, x'` of the domain.
    ///
    /// For finite samples this is equivalent to strict increase on the samples
    /// (see the module docs), and a violating sample pair `(lo, hi)` is itself a
    /// witness: `b(hi) <= f(hi) <= f(lo) <= a(lo)`.
    pub fn separability_violation(&self) -> Option<Violation> {
        self.strict_increase_violation()
    }

    pub fn is_separably_increasing(&self) -> bool {
        self.separability_violation().is_none()
    }

    /// True iff no two samples are comparable.
    pub fn is_pareto_set(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.domain.compare(&self.points[i], &self.points[j]).is_none()))
    }

    /// Upper bounds on lower sets and lower bounds on upper sets: every
    /// restriction of a finite set of finite values is bounded, so this holds
    /// for every valid dataset.
    pub fn is_bounded_on_sets(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Checks `b(x') > a(x)` directly on the given pairs with `x < x'`.
    /// Pairs that are not strictly ordered are skipped.
    pub fn separation_violation_on<'a, I>(&self, pairs: I) -> Option<(D::Elem, D::Elem)>
    where
        I: IntoIterator<Item = (&'a D::Elem, &'a D::Elem)>,
        D::Elem: 'a,
    {
        pairs.into_iter().find_map(|(x, x2)| {
            if !self.domain.lt(x, x2) {
                return None;
            }
            let a = bounds::bounds_unchecked(self, x).a;
            let b = bounds::bounds_unchecked(self, x2).b;
            (b <= a).then(|| (x.clone(), x2.clone()))
        })
    }
}

impl UtilityDataset<VectorDomain> {
    pub fn from_points(k: usize, samples: impl IntoIterator<Item = (Point, f64)>) -> Result<Self> {
        UtilityDataset::new(VectorDomain { k }, samples)
    }

    /// Randomized check of `x < x' ⇒ b(x') > a(x)` on `pairs` sampled pairs.
    ///
    /// Pairs mix comparable sample points, perturbed sample points and uniform
    /// draws from the samples' bounding box widened by one unit.
    pub fn separability_oracle<R: Rng>(&self, rng: &mut R, pairs: usize) -> Option<(Point, Point)> {
        let sampled = sample_ordered_pairs(self, rng, pairs);
        self.separation_violation_on(sampled.iter().map(|(x, y)| (x, y)))
    }
}

impl UtilityDataset<PosetDomain> {
    pub fn from_ids<S: AsRef<str>>(domain: PosetDomain, samples: &[(S, f64)]) -> Result<Self> {
        let resolved = samples
            .iter()
            .map(|(id, v)| Ok((domain.element(id.as_ref())?, *v)))
            .collect::<Result<Vec<_>>>()?;
        UtilityDataset::new(domain, resolved)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.domain.poset
    }

    /// Exhaustive check of `x < x' ⇒ b(x') > a(x)` over `X ∪ {-inf, +inf}`
    /// with `a(-inf) = -inf` and `b(+inf) = +inf`.
    pub fn separability_oracle(&self) -> Option<(ExtendedIndex, ExtendedIndex)> {
        let n = self.poset().len();
        let mut all: Vec<ExtendedIndex> = vec![ExtendedIndex::Bottom, ExtendedIndex::Top];
        all.extend((0..n).map(ExtendedIndex::Element));
        for &x in &all {
            for &x2 in &all {
                if self.poset().ext_gt_index(x2, x) {
                    let a = bounds::extended_bounds(self, x).a;
                    let b = bounds::extended_bounds(self, x2).b;
                    if b <= a {
                        return Some((x, x2));
                    }
                }
            }
        }
        None
    }

    /// A pair `x ≈ y` of poset elements with `x` sampled where `y` is either
    /// unsampled or sampled with a different value.
    ///
    /// The extension satisfies `x ≈ y ⇒ f(x) = f(y)` only when no such pair
    /// exists: an unsampled `y` sees neither `x` in its lower set nor in its
    /// upper set, so its bounds can differ from `f(x)`.
    pub fn approx_conflict(&self) -> Option<(usize, usize)> {
        let mut value_of = vec![None; self.poset().len()];
        for (&e, v) in self.samples() {
            value_of[e] = Some(v);
        }
        for class in self.poset().approx_classes() {
            for &x in &class {
                let Some(vx) = value_of[x] else { continue };
                if let Some(&y) = class.iter().find(|&&y| value_of[y] != Some(vx)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

fn sample_ordered_pairs<R: Rng>(
    ds: &UtilityDataset<VectorDomain>,
    rng: &mut R,
    pairs: usize,
) -> Vec<(Point, Point)> {
    let k = ds.domain().k;
    let mut lo = vec![-1.0; k];
    let mut hi = vec![1.0; k];
    for p in ds.points() {
        for (i, &c) in p.coords().iter().enumerate() {
            lo[i] = f64::min(lo[i], c - 1.0);
            hi[i] = f64::max(hi[i], c + 1.0);
        }
    }
    let n = ds.len();
    let mut out = Vec::with_capacity(pairs);

    // every comparable sample pair first
    'outer: for i in 0..n {
        for j in 0..n {
            if out.len() >= pairs / 2 {
                break 'outer;
            }
            if ds.domain().lt(&ds.points()[i], &ds.points()[j]) {
                out.push((ds.points()[i].clone(), ds.points()[j].clone()));
            }
        }
    }
    while out.len() < pairs {
        let base: Vec<f64> = if n > 0 && rng.gen_bool(0.5) {
            let p = &ds.points()[rng.gen_range(0..n)];
            if rng.gen_bool(0.5) {
                p.coords().to_vec()
            } else {
                p.coords().iter().enumerate().map(|(i, &c)| c + rng.gen_range(-0.5..0.5) * (hi[i] - lo[i]) * 0.1).collect()
            }
        } else {
            (0..k).map(|i| rng.gen_range(lo[i]..hi[i])).collect()
        };
        let mut upper = base.clone();
        for (i, c) in upper.iter_mut().enumerate() {
            if rng.gen_bool(0.6) {
                *c += rng.gen_range(0.0..(hi[i] - lo[i]) * 0.5);
            }
        }
        if upper == base {
            let i = rng.gen_range(0..k);
            upper[i] += rng.gen_range(0.01..1.0) * (hi[i] - lo[i]) * 0.5;
        }
        let (Ok(x), Ok(x2)) = (Point::new(base), Point::new(upper)) else { continue };
        if ds.domain().lt(&x, &x2) {
            out.push((x, x2));
        }
    }
    out
}
