//! Lower and upper envelopes of the samples at a query point, and the two
//! region systems used to pick a closed form of the extension.
//!
//! `a(x)` is the largest sample value at or below `x` (`-inf` when there is
//! none), `b(x)` the smallest sample value at or above `x` (`+inf` when there
//! is none). Both use the reflexive order, so a sample point counts for itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::{Domain, PosetDomain, UtilityDataset};
use crate::error::{Error, Result};
use crate::order::ExtendedReal;
use crate::poset::ExtendedIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub a: ExtendedReal,
    pub b: ExtendedReal,
}

/// Everything one pass over the samples learns about a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scan {
    pub bounds: Bounds,
    /// Index of the sample equal to the query.
    pub sample: Option<usize>,
    /// Some sample lies strictly below the query.
    pub has_below: bool,
    /// Some sample lies strictly above the query.
    pub has_above: bool,
}

impl Scan {
    pub fn alun(&self) -> Alun {
        match (self.sample, self.has_below, self.has_above) {
            (Some(_), _, _) => Alun::P,
            (None, true, true) => Alun::A,
            (None, false, true) => Alun::L,
            (None, true, false) => Alun::U,
            (None, false, false) => Alun::N,
        }
    }
}

pub(crate) fn scan_unchecked<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Scan {
    use std::cmp::Ordering::*;
    let mut a = ExtendedReal::NegInf;
    let mut b = ExtendedReal::PosInf;
    let mut sample = None;
    let mut has_below = false;
    let mut has_above = false;
    for (i, (y, v)) in ds.samples().enumerate() {
        match ds.domain().compare(y, x) {
            Some(Less) => {
                has_below = true;
                a = a.max(ExtendedReal::Finite(v));
            }
            Some(Greater) => {
                has_above = true;
                b = b.min(ExtendedReal::Finite(v));
            }
            Some(Equal) => {
                sample = Some(i);
                a = a.max(ExtendedReal::Finite(v));
                b = b.min(ExtendedReal::Finite(v));
            }
            None => {}
        }
    }
    Scan { bounds: Bounds { a, b }, sample, has_below, has_above }
}

pub fn scan<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Result<Scan> {
    ds.domain().check(x)?;
    Ok(scan_unchecked(ds, x))
}

pub(crate) fn bounds_unchecked<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Bounds {
    scan_unchecked(ds, x).bounds
}

pub fn bounds<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Result<Bounds> {
    Ok(scan(ds, x)?.bounds)
}

/// `sup { f(y) : y <= x, y sampled }`.
pub fn bound_a<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Result<ExtendedReal> {
    Ok(bounds(ds, x)?.a)
}

/// `inf { f(z) : z >= x, z sampled }`.
pub fn bound_b<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Result<ExtendedReal> {
    Ok(bounds(ds, x)?.b)
}

/// Bounds on `X ∪ {-inf, +inf}`: the bottom sits below every sample, the top
/// above every sample.
pub fn extended_bounds(ds: &UtilityDataset<PosetDomain>, x: ExtendedIndex) -> Bounds {
    let all_min = ds.values().iter().fold(ExtendedReal::PosInf, |m, &v| m.min(ExtendedReal::Finite(v)));
    let all_max = ds.values().iter().fold(ExtendedReal::NegInf, |m, &v| m.max(ExtendedReal::Finite(v)));
    match x {
        ExtendedIndex::Bottom => Bounds { a: ExtendedReal::NegInf, b: all_min },
        ExtendedIndex::Top => Bounds { a: all_max, b: ExtendedReal::PosInf },
        ExtendedIndex::Element(i) => bounds_unchecked(ds, &i),
    }
}

/// Position of a query relative to the samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alun {
    /// A sample point.
    P,
    /// Strictly between two samples.
    A,
    /// Only samples above.
    L,
    /// Only samples below.
    U,
    /// Comparable to no sample.
    N,
}

impl fmt::Display for Alun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Alun::P => "P",
            Alun::A => "A",
            Alun::L => "L",
            Alun::U => "U",
            Alun::N => "N",
        };
        f.write_str(s)
    }
}

pub fn classify_alun<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem) -> Result<Alun> {
    Ok(scan(ds, x)?.alun())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SRegion {
    S1,
    S2,
    S3,
    S4,
}

impl SRegion {
    pub const ALL: [SRegion; 4] = [SRegion::S1, SRegion::S2, SRegion::S3, SRegion::S4];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// The set of S-regions containing a point; regions overlap on their borders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SRegions(u8);

impl SRegions {
    pub fn contains(self, r: SRegion) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn insert(&mut self, r: SRegion) {
        self.0 |= r.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = SRegion> {
        SRegion::ALL.into_iter().filter(move |&r| self.contains(r))
    }

    pub fn first(self) -> Option<SRegion> {
        self.iter().next()
    }
}

impl FromIterator<SRegion> for SRegions {
    fn from_iter<I: IntoIterator<Item = SRegion>>(iter: I) -> Self {
        let mut s = SRegions::default();
        for r in iter {
            s.insert(r);
        }
        s
    }
}

impl Serialize for SRegions {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SRegions {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<SRegion>::deserialize(deserializer)?.into_iter().collect())
    }
}

pub(crate) fn check_alpha_beta(alpha: f64, beta: f64) -> Result<()> {
    if alpha.is_finite() && beta.is_finite() && alpha < beta {
        Ok(())
    } else {
        Err(Error::InvalidBounds { alpha, beta })
    }
}

/// Every S-region whose defining inequalities hold for these bounds.
pub fn s_regions(bounds: Bounds, alpha: f64, beta: f64) -> Result<SRegions> {
    check_alpha_beta(alpha, beta)?;
    let Bounds { a, b } = bounds;
    let gap = b.checked_sub(a).ok_or_else(|| Error::UndefinedBounds { a: a.to_string(), b: b.to_string() })?;
    let width = ExtendedReal::Finite(beta - alpha);
    let (alpha, beta) = (ExtendedReal::Finite(alpha), ExtendedReal::Finite(beta));
    let mut s = SRegions::default();
    if gap <= width {
        s.insert(SRegion::S1);
    }
    if gap >= width && b <= beta {
        s.insert(SRegion::S2);
    }
    if gap >= width && a >= alpha {
        s.insert(SRegion::S3);
    }
    if a <= alpha && b >= beta {
        s.insert(SRegion::S4);
    }
    Ok(s)
}

pub fn classify_s<D: Domain>(ds: &UtilityDataset<D>, x: &D::Elem, alpha: f64, beta: f64) -> Result<SRegions> {
    s_regions(bounds(ds, x)?, alpha, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub alun: Alun,
    pub s: SRegions,
}

pub fn classify<D: Domain>(
    ds: &UtilityDataset<D>,
    x: &D::Elem,
    alpha: f64,
    beta: f64,
) -> Result<(Bounds, RegionLabel)> {
    let scan = scan(ds, x)?;
    let s = s_regions(scan.bounds, alpha, beta)?;
    Ok((scan.bounds, RegionLabel { alun: scan.alun(), s }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::VectorDomain;
    use crate::order::Point;
    use ExtendedReal::{Finite, NegInf, PosInf};

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn d1() -> UtilityDataset<VectorDomain> {
        UtilityDataset::from_points(2, [(p(&[0.0, 0.0]), 0.0), (p(&[2.0, 2.0]), 10.0)]).unwrap()
    }

    #[test]
    fn bound_a_examples() {
        let d = d1();
        assert_eq!(bound_a(&d, &p(&[1.0, 1.0])).unwrap(), Finite(0.0));
        assert_eq!(bound_a(&d, &p(&[-1.0, -1.0])).unwrap(), NegInf);
        assert_eq!(bound_a(&d, &p(&[2.0, 2.0])).unwrap(), Finite(10.0));
    }

    #[test]
    fn bound_b_examples() {
        let d = d1();
        assert_eq!(bound_b(&d, &p(&[1.0, 1.0])).unwrap(), Finite(10.0));
        assert_eq!(bound_b(&d, &p(&[3.0, 3.0])).unwrap(), PosInf);
        assert_eq!(bound_b(&d, &p(&[0.0, 0.0])).unwrap(), Finite(0.0));
    }

    #[test]
    fn domain_mismatch() {
        assert!(matches!(bound_a(&d1(), &p(&[1.0])), Err(Error::DimensionMismatch { .. })));
        assert!(classify_alun(&d1(), &p(&[1.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn alun_examples() {
        let d = d1();
        assert_eq!(classify_alun(&d, &p(&[1.0, 1.0])).unwrap(), Alun::A);
        assert_eq!(classify_alun(&d, &p(&[1.0, -5.0])).unwrap(), Alun::L);
        assert_eq!(classify_alun(&d, &p(&[3.0, 3.0])).unwrap(), Alun::U);
        assert_eq!(classify_alun(&d, &p(&[5.0, -5.0])).unwrap(), Alun::N);
        assert_eq!(classify_alun(&d, &p(&[0.0, 0.0])).unwrap(), Alun::P);
    }

    #[test]
    fn s_region_examples() {
        let d = d1();
        // a = 0 = alpha puts (1,1) on the S3/S4 border
        let s = classify_s(&d, &p(&[1.0, 1.0]), 0.0, 1.0).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![SRegion::S3, SRegion::S4]);
        let s = classify_s(&d, &p(&[1.0, 1.0]), -1.0, 1.0).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![SRegion::S3]);
        let s = classify_s(&d, &p(&[5.0, -5.0]), 0.0, 1.0).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![SRegion::S4]);
        let s = classify_s(&d, &p(&[0.0, 0.0]), 0.0, 1.0).unwrap();
        assert!(s.contains(SRegion::S1));
        let s = classify_s(&d, &p(&[1.0, -5.0]), 0.0, 1.0).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![SRegion::S4]);
    }

    #[test]
    fn s_region_borders_report_every_member() {
        // a = alpha, b = beta: all four regions meet
        let s = s_regions(Bounds { a: Finite(0.0), b: Finite(1.0) }, 0.0, 1.0).unwrap();
        assert_eq!(s.iter().count(), 4);
    }

    #[test]
    fn s_region_errors() {
        let d = d1();
        assert_eq!(
            classify_s(&d, &p(&[1.0, 1.0]), 1.0, 1.0).unwrap_err(),
            Error::InvalidBounds { alpha: 1.0, beta: 1.0 }
        );
        assert!(s_regions(Bounds { a: PosInf, b: PosInf }, 0.0, 1.0).is_err());
    }

    #[test]
    fn s_regions_serialize_as_list() {
        let s: SRegions = [SRegion::S1, SRegion::S3].into_iter().collect();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"["S1","S3"]"#);
        assert_eq!(serde_json::from_str::<SRegions>(&json).unwrap(), s);
    }

    #[test]
    fn poset_bounds_use_reflexive_order() {
        use crate::poset::FinitePoset;
        let poset = FinitePoset::build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c")]).unwrap();
        let ds = UtilityDataset::from_ids(PosetDomain::new(poset), &[("a", 0.0), ("c", 1.0)]).unwrap();
        let b = ds.domain().element("b").unwrap();
        let d = ds.domain().element("d").unwrap();
        assert_eq!(bounds(&ds, &b).unwrap(), Bounds { a: Finite(0.0), b: Finite(1.0) });
        assert_eq!(bounds(&ds, &d).unwrap(), Bounds { a: NegInf, b: PosInf });
        assert_eq!(classify_alun(&ds, &b).unwrap(), Alun::A);
        assert_eq!(classify_alun(&ds, &d).unwrap(), Alun::N);
        assert_eq!(extended_bounds(&ds, ExtendedIndex::Top), Bounds { a: Finite(1.0), b: PosInf });
        assert_eq!(extended_bounds(&ds, ExtendedIndex::Bottom), Bounds { a: NegInf, b: Finite(0.0) });
        assert!(bounds(&ds, &17).is_err());
    }
}
