//! Bounded strictly increasing base utilities `u` with `alpha < u < beta`, and
//! their normalization `u1 = (u - alpha) / (beta - alpha)` into `(0, 1)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::Rng;

use crate::bounds::check_alpha_beta;
use crate::dataset::Domain;
use crate::error::{Error, Result};
use crate::order::Point;
use crate::poset::FinitePoset;

pub trait BaseUtility<E>: Send + Sync {
    fn alpha(&self) -> f64;

    fn beta(&self) -> f64;

    /// Unchecked value of `u`.
    fn raw(&self, x: &E) -> f64;

    /// `u(x)`, rejected unless strictly inside `(alpha, beta)`.
    fn eval_u(&self, x: &E) -> Result<f64> {
        let (alpha, beta) = (self.alpha(), self.beta());
        let value = self.raw(x);
        if value > alpha && value < beta {
            Ok(value)
        } else {
            Err(Error::UtilityOutOfRange { value, alpha, beta })
        }
    }

    fn eval_u1(&self, x: &E) -> Result<f64> {
        Ok(normalize(self.eval_u(x)?, self.alpha(), self.beta()))
    }
}

pub fn normalize(u: f64, alpha: f64, beta: f64) -> f64 {
    (u - alpha) / (beta - alpha)
}

/// `u(x) = (beta - alpha) / pi * (atan(sum x_i) + pi/2) + alpha`.
///
/// Saturates in `f64` once `|sum x_i|` exceeds roughly `1e16`; evaluation
/// then fails the range check instead of returning `alpha` or `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArctanSum {
    alpha: f64,
    beta: f64,
}

impl ArctanSum {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_alpha_beta(alpha, beta)?;
        Ok(ArctanSum { alpha, beta })
    }
}

impl Default for ArctanSum {
    fn default() -> Self {
        ArctanSum { alpha: 0.0, beta: 1.0 }
    }
}

impl BaseUtility<Point> for ArctanSum {
    fn alpha(&self) -> f64 {
        self.alpha
    }

    fn beta(&self) -> f64 {
        self.beta
    }

    fn raw(&self, x: &Point) -> f64 {
        let sum: f64 = x.coords().iter().sum();
        (self.beta - self.alpha) / PI * (sum.atan() + FRAC_PI_2) + self.alpha
    }
}

/// `u = alpha + (beta - alpha) * u1` where `u1` is the depth-based utility
/// representation of the poset.
#[derive(Debug, Clone, PartialEq)]
pub struct PosetDepth {
    alpha: f64,
    beta: f64,
    u1: Vec<f64>,
}

impl PosetDepth {
    pub fn new(poset: &FinitePoset, alpha: f64, beta: f64) -> Result<Self> {
        check_alpha_beta(alpha, beta)?;
        Ok(PosetDepth { alpha, beta, u1: poset.utility_representation() })
    }

    pub fn table(&self) -> &[f64] {
        &self.u1
    }
}

impl BaseUtility<usize> for PosetDepth {
    fn alpha(&self) -> f64 {
        self.alpha
    }

    fn beta(&self) -> f64 {
        self.beta
    }

    fn raw(&self, x: &usize) -> f64 {
        self.alpha + (self.beta - self.alpha) * self.u1[*x]
    }
}

/// A user-supplied utility, accepted only after a sampled check of range and
/// strict monotonicity.
pub struct CustomUtility<F> {
    alpha: f64,
    beta: f64,
    f: F,
}

impl<F> fmt::Debug for CustomUtility<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomUtility").field("alpha", &self.alpha).field("beta", &self.beta).finish()
    }
}

impl<F> CustomUtility<F> {
    /// Checks `alpha < f < beta` on every sampled element and `f(x) < f(y)` for
    /// every sampled pair with `x < y`. Unordered pairs are ignored.
    pub fn checked<D, E>(f: F, alpha: f64, beta: f64, domain: &D, pairs: &[(E, E)]) -> Result<Self>
    where
        D: Domain<Elem = E>,
        F: Fn(&E) -> f64 + Send + Sync,
        E: Clone + PartialEq + fmt::Debug + Send + Sync,
    {
        check_alpha_beta(alpha, beta)?;
        let custom = CustomUtility { alpha, beta, f };
        for (x, y) in pairs {
            domain.check(x)?;
            domain.check(y)?;
            let ux = custom.eval_u(x)?;
            let uy = custom.eval_u(y)?;
            if domain.lt(x, y) && !(ux < uy) {
                return Err(Error::UtilityNotIncreasing { lo: domain.describe(x), hi: domain.describe(y) });
            }
        }
        Ok(custom)
    }
}

impl<E, F: Fn(&E) -> f64 + Send + Sync> BaseUtility<E> for CustomUtility<F> {
    fn alpha(&self) -> f64 {
        self.alpha
    }

    fn beta(&self) -> f64 {
        self.beta
    }

    fn raw(&self, x: &E) -> f64 {
        (self.f)(x)
    }
}

/// `n` random pairs `x < x'` in `[-scale, scale]^k` (the upper point may leave
/// the box by up to `scale`). Each coordinate of `x'` is raised with
/// probability one half, and at least one is always raised.
pub fn sample_vector_pairs<R: Rng>(k: usize, n: usize, scale: f64, rng: &mut R) -> Vec<(Point, Point)> {
    assert!(k >= 1 && scale > 0.0);
    (0..n)
        .map(|_| {
            let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-scale..scale)).collect();
            let mut y = x.clone();
            let forced = rng.gen_range(0..k);
            for (i, c) in y.iter_mut().enumerate() {
                if i == forced || rng.gen_bool(0.5) {
                    *c += rng.gen_range(1e-3..scale);
                }
            }
            (Point::new(x).unwrap(), Point::new(y).unwrap())
        })
        .collect()
}
