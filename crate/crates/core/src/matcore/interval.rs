//! Closed real intervals with outward rounding.
//!
//! Every arithmetic result is widened by one ulp on each side, so an
//! enclosure stays an enclosure after the operation even though the
//! endpoints themselves were rounded.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn down(x: f64) -> f64 {
    if x == 0.0 {
        // keep exact zeros exact; 0 * anything and 0 + 0 are exact in IEEE arithmetic
        x
    } else {
        x.next_down()
    }
}

#[inline]
fn up(x: f64) -> f64 {
    if x == 0.0 {
        x
    } else {
        x.next_up()
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval lower end {lo} exceeds upper end {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate interval holding an exactly representable value.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "interval point must be finite");
        Self { lo: x, hi: x }
    }

    /// Smallest interval of floats that certainly contains a value that was
    /// itself produced by one correctly rounded operation (e.g. `1/sqrt(2)`).
    pub fn enclose(x: f64) -> Self {
        assert!(x.is_finite(), "interval point must be finite");
        Self { lo: down(x), hi: up(x) }
    }

    /// `[center - pad, center + pad]`, rounded outward.
    pub fn around(center: f64, pad: f64) -> Self {
        assert!(center.is_finite() && pad.is_finite() && pad >= 0.0);
        Self {
            lo: down(center - pad),
            hi: up(center + pad),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn widen(&self, pad: f64) -> Self {
        assert!(pad.is_finite() && pad >= 0.0);
        Self {
            lo: down(self.lo - pad),
            hi: up(self.hi + pad),
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Interval) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Intersection with `[0, inf)`, for quantities known to be non-negative.
    pub fn clamp_nonneg(&self) -> Self {
        Self {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }

    /// Enclosure of `|x|` for `x` in the interval.
    pub fn abs(&self) -> Self {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            Self {
                lo: -self.hi,
                hi: -self.lo,
            }
        } else {
            Self {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    /// Square of a non-negative enclosure.
    pub fn square(&self) -> Self {
        let a = self.clamp_nonneg();
        Self {
            lo: down(a.lo * a.lo),
            hi: up(a.hi * a.hi),
        }
    }

    pub fn sqrt(&self) -> Self {
        let a = self.clamp_nonneg();
        Self {
            lo: down(a.lo.sqrt()),
            hi: up(a.hi.sqrt()),
        }
    }

    /// Multiplication by an exactly representable scalar.
    pub fn scale(&self, c: f64) -> Self {
        let (a, b) = (c * self.lo, c * self.hi);
        Self {
            lo: down(a.min(b)),
            hi: up(a.max(b)),
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo + rhs.lo),
            hi: up(self.hi + rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo - rhs.hi),
            hi: up(self.hi - rhs.lo),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let products = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = products.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = products.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_and_non_finite() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 0.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn arithmetic_encloses_exact_result() {
        let third = Interval::enclose(1.0 / 3.0);
        let sum = third + third + third;
        assert!(sum.contains(1.0));
        let prod = Interval::enclose(std::f64::consts::SQRT_2) * Interval::enclose(std::f64::consts::SQRT_2);
        assert!(prod.contains(2.0));
        let root = Interval::point(2.0).sqrt();
        assert!(root.lo() < std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 < root.hi());
    }

    #[test]
    fn square_of_straddling_interval_is_clamped() {
        let a = Interval::new(-1e-20, 0.5).unwrap();
        let sq = a.square();
        assert_eq!(sq.lo(), 0.0);
        assert!(sq.contains(0.25));
    }

    #[test]
    fn sub_and_mul_signs() {
        let a = Interval::new(1.0, 2.0).unwrap();
        let b = Interval::new(-3.0, 0.5).unwrap();
        let d = a - b;
        assert!(d.contains(0.5) && d.contains(5.0));
        let p = a * b;
        assert!(p.contains(-6.0) && p.contains(1.0));
        assert!(a.scale(-2.0).contains(-4.0));
    }
}
