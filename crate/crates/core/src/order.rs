//! Paretian order on criteria vectors and arithmetic on the extended real line.
//!
//! `x <= y` holds when every coordinate of `x` is at most the matching
//! coordinate of `y`; `x < y` additionally requires `x != y`. Comparisons are
//! exact: any tolerance would break transitivity of the order.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// An alternative in criteria space: `k >= 1` finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index, value });
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn ensure_dim(&self, k: usize) -> Result<()> {
        if self.dim() == k {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: k, found: self.dim() })
        }
    }

    /// Single pass over both vectors reporting `(self <= other, self >= other)`.
    /// Dimensions are assumed equal.
    pub(crate) fn dominance(&self, other: &Point) -> (bool, bool) {
        let mut le = true;
        let mut ge = true;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a > b {
                le = false;
            } else if a < b {
                ge = false;
            }
            if !le && !ge {
                break;
            }
        }
        (le, ge)
    }

    /// Partial-order comparison; `None` for incomparable points.
    pub(crate) fn partial_cmp_pareto(&self, other: &Point) -> Option<Ordering> {
        match self.dominance(other) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn check_dims(x: &Point, y: &Point) -> Result<()> {
    y.ensure_dim(x.dim())
}

/// `x <= y` componentwise (reflexive).
pub fn pareto_leq(x: &Point, y: &Point) -> Result<bool> {
    check_dims(x, y)?;
    Ok(x.dominance(y).0)
}

/// `x < y`: `x <= y` and `x != y`.
pub fn pareto_lt(x: &Point, y: &Point) -> Result<bool> {
    check_dims(x, y)?;
    Ok(matches!(x.dominance(y), (true, false)))
}

/// A value in `R ∪ {-inf, +inf}` with `-inf < finite < +inf`.
///
/// The `Finite` payload is never NaN and never infinite; use
/// [`ExtendedReal::from_f64`] to convert from raw floats.
#[derive(Debug, Clone, Copy)]
pub enum ExtendedReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal::Finite(0.0);

    /// Maps IEEE infinities to the matching tag; `None` for NaN.
    pub fn from_f64(v: f64) -> Option<Self> {
        if v.is_nan() {
            None
        } else if v == f64::INFINITY {
            Some(ExtendedReal::PosInf)
        } else if v == f64::NEG_INFINITY {
            Some(ExtendedReal::NegInf)
        } else {
            Some(ExtendedReal::Finite(v))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedReal::NegInf => f64::NEG_INFINITY,
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Adds a finite constant; infinities absorb it.
    pub fn add_const(self, c: f64) -> Self {
        debug_assert!(c.is_finite());
        match self {
            ExtendedReal::Finite(v) => ExtendedReal::Finite(v + c),
            inf => inf,
        }
    }

    /// Subtracts a finite constant: `-inf - c = -inf`, `+inf - c = +inf`.
    pub fn sub_const(self, c: f64) -> Self {
        self.add_const(-c)
    }

    /// `self - other`, or `None` when both are the same infinity.
    pub fn checked_sub(self, other: Self) -> Option<Self> {
        use ExtendedReal::*;
        match (self, other) {
            (Finite(x), Finite(y)) => Some(Finite(x - y)),
            (PosInf, PosInf) | (NegInf, NegInf) => None,
            (PosInf, _) | (_, NegInf) => Some(PosInf),
            (NegInf, _) | (_, PosInf) => Some(NegInf),
        }
    }

    fn rank(self) -> u8 {
        match self {
            ExtendedReal::NegInf => 0,
            ExtendedReal::Finite(_) => 1,
            ExtendedReal::PosInf => 2,
        }
    }
}

pub fn ext_min(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    a.min(b)
}

pub fn ext_max(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    a.max(b)
}

pub fn ext_sub_const(a: ExtendedReal, c: f64) -> ExtendedReal {
    a.sub_const(c)
}

impl PartialEq for ExtendedReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // -0.0 and 0.0 compare equal, matching f64 semantics.
            (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => {
                x.partial_cmp(y).expect("finite payload is never NaN")
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialEq<f64> for ExtendedReal {
    fn eq(&self, other: &f64) -> bool {
        matches!(self, ExtendedReal::Finite(v) if v == other)
    }
}

impl From<f64> for ExtendedReal {
    /// Panics on NaN.
    fn from(v: f64) -> Self {
        ExtendedReal::from_f64(v).expect("ExtendedReal cannot hold NaN")
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInf => f.write_str("-inf"),
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInf => f.write_str("+inf"),
        }
    }
}

// Infinities travel as the strings "-inf" / "+inf"; finite values as numbers.
impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::NegInf => serializer.serialize_str("-inf"),
            ExtendedReal::Finite(v) => serializer.serialize_f64(*v),
            ExtendedReal::PosInf => serializer.serialize_str("+inf"),
        }
    }
}

struct ExtendedRealVisitor;

impl<'de> Visitor<'de> for ExtendedRealVisitor {
    type Value = ExtendedReal;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a finite number or one of \"-inf\", \"+inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtendedReal, E> {
        if v.is_finite() {
            Ok(ExtendedReal::Finite(v))
        } else {
            Err(E::custom("non-finite number"))
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtendedReal, E> {
        Ok(ExtendedReal::Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtendedReal, E> {
        Ok(ExtendedReal::Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtendedReal, E> {
        match v {
            "-inf" => Ok(ExtendedReal::NegInf),
            "+inf" => Ok(ExtendedReal::PosInf),
            other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(ExtendedRealVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(pareto_leq(&p(&[0.0, 0.0]), &p(&[1.0, 1.0])).unwrap());
        assert!(pareto_leq(&p(&[1.0, 1.0]), &p(&[1.0, 1.0])).unwrap());
        assert!(!pareto_leq(&p(&[0.0, 1.0]), &p(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn lt_examples() {
        assert!(pareto_lt(&p(&[0.0, 0.0]), &p(&[0.0, 1.0])).unwrap());
        assert!(!pareto_lt(&p(&[0.0, 0.0]), &p(&[0.0, 0.0])).unwrap());
        assert!(!pareto_lt(&p(&[0.0, 1.0]), &p(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = pareto_leq(&p(&[0.0]), &p(&[0.0, 1.0])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 2 });
        assert!(pareto_lt(&p(&[0.0, 0.0]), &p(&[0.0])).is_err());
    }

    #[test]
    fn point_rejects_nan_and_empty() {
        assert!(matches!(Point::new(vec![0.0, f64::NAN]), Err(Error::NonFiniteCoordinate { index: 1, .. })));
        assert!(Point::new(vec![f64::INFINITY]).is_err());
        assert_eq!(Point::new(vec![]), Err(Error::EmptyPoint));
    }

    #[test]
    fn extended_real_examples() {
        use ExtendedReal::*;
        assert_eq!(ext_sub_const(PosInf, 1.0), PosInf);
        assert_eq!(ext_sub_const(NegInf, 1.0), NegInf);
        assert_eq!(ext_min(Finite(10.0), PosInf), Finite(10.0));
        assert_eq!(ext_max(NegInf, Finite(0.0)), Finite(0.0));
        assert!(PosInf > NegInf);
        assert_eq!(PosInf.checked_sub(Finite(3.0)), Some(PosInf));
        assert_eq!(Finite(1.0).checked_sub(NegInf), Some(PosInf));
        assert_eq!(NegInf.checked_sub(Finite(3.0)), Some(NegInf));
        assert_eq!(PosInf.checked_sub(PosInf), None);
        assert_eq!(ExtendedReal::from_f64(f64::NAN), None);
    }

    #[test]
    fn extended_real_serde_round_trip() {
        let xs = vec![ExtendedReal::NegInf, ExtendedReal::Finite(0.1), ExtendedReal::PosInf];
        let s = serde_json::to_string(&xs).unwrap();
        assert_eq!(s, r#"["-inf",0.1,"+inf"]"#);
        let back: Vec<ExtendedReal> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xs);
        assert!(serde_json::from_str::<ExtendedReal>("\"inf\"").is_err());
    }

    fn ext_strategy() -> impl Strategy<Value = ExtendedReal> {
        prop_oneof![
            Just(ExtendedReal::NegInf),
            Just(ExtendedReal::PosInf),
            (-1e6f64..1e6).prop_map(ExtendedReal::Finite),
        ]
    }

    fn point_pair(k: usize) -> impl Strategy<Value = (Point, Point, Point)> {
        let coord = -3i32..=3;
        (
            proptest::collection::vec(coord.clone(), k),
            proptest::collection::vec(coord.clone(), k),
            proptest::collection::vec(coord, k),
        )
            .prop_map(|(a, b, c)| {
                let f = |v: Vec<i32>| Point::new(v.into_iter().map(f64::from).collect()).unwrap();
                (f(a), f(b), f(c))
            })
    }

    proptest! {
        #[test]
        fn extended_order_is_total(a in ext_strategy(), b in ext_strategy()) {
            let n = [a < b, a == b, a > b].iter().filter(|&&t| t).count();
            prop_assert_eq!(n, 1);
        }

        #[test]
        fn strict_order_axioms((x, y, z) in point_pair(3)) {
            prop_assert!(!pareto_lt(&x, &x).unwrap());
            if pareto_lt(&x, &y).unwrap() && pareto_lt(&y, &z).unwrap() {
                prop_assert!(pareto_lt(&x, &z).unwrap());
            }
            if pareto_lt(&x, &y).unwrap() {
                prop_assert!(pareto_leq(&x, &y).unwrap());
                prop_assert!(!pareto_lt(&y, &x).unwrap());
            }
        }

        #[test]
        fn weak_order_axioms((x, y, z) in point_pair(2)) {
            prop_assert!(pareto_leq(&x, &x).unwrap());
            if pareto_leq(&x, &y).unwrap() && pareto_leq(&y, &x).unwrap() {
                prop_assert_eq!(&x, &y);
            }
            if pareto_leq(&x, &y).unwrap() && pareto_leq(&y, &z).unwrap() {
                prop_assert!(pareto_leq(&x, &z).unwrap());
            }
        }
    }
}
