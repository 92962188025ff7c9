//! Strictly monotone extensions of partial utility functions.
//!
//! Given finitely many samples `f(x)` on points of `R^k` (Paretian order) or
//! on elements of a finite strict partial order, this crate decides whether a
//! strictly increasing extension to the whole space exists and evaluates one
//! in closed form at arbitrary queries.
//!
//! ```
//! use monoext::{ArctanSum, Extension, Form, Point, UtilityDataset};
//!
//! let p = |c: &[f64]| Point::new(c.to_vec()).unwrap();
//! let data = UtilityDataset::from_points(2, [(p(&[0.0, 0.0]), 0.0), (p(&[2.0, 2.0]), 10.0)]).unwrap();
//! let ext = Extension::new(data, ArctanSum::default(), Form::Canonical).unwrap();
//! assert_eq!(ext.eval(&p(&[0.0, 0.0])).unwrap().f, 0.0);
//! assert!((ext.eval(&p(&[5.0, -5.0])).unwrap().f - 0.5).abs() < 1e-12);
//! ```

// `!(a < b)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod base;
pub mod bounds;
pub mod dataset;
pub mod error;
pub mod extension;
pub mod order;
pub mod poset;

pub use base::{ArctanSum, BaseUtility, CustomUtility, PosetDepth};
pub use bounds::{Alun, Bounds, RegionLabel, SRegion, SRegions};
pub use dataset::{Domain, PosetDomain, UtilityDataset, VectorDomain, Violation};
pub use error::{Error, Result};
pub use extension::{EvalResult, Extension, Form, FormAgreement};
pub use order::{ExtendedReal, Point};
pub use poset::{ExtendedElement, FinitePoset};
