//! Length arithmetic shared by every module.
//!
//! Two implementations exist: plain `f64`, compared with a per-instance
//! tolerance, and [`HalfInt`], an exact integer representation that stores
//! doubled values so that every `x / 2` produced by the algorithms stays
//! integral.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Default relative tolerance used by the algorithms in floating-point mode.
pub const DEFAULT_REL_TOL: f64 = 1e-12;
/// Absolute floor added to every floating-point tolerance.
pub const ABS_TOL: f64 = 1e-12;

pub trait Scalar:
    Copy
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    /// True when comparisons need no tolerance.
    const EXACT: bool;

    /// Converts an input value, failing if it is not representable.
    fn from_input(x: f64) -> Option<Self>;
    fn to_f64(self) -> f64;
    fn half(self) -> Self;

    fn twice(self) -> Self {
        self + self
    }

    /// Comparison slack for an instance whose lengths are of order `scale`.
    fn tolerance(scale: Self, rel: f64) -> Self;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn abs_val(self) -> Self {
        if self < Self::ZERO {
            -self
        } else {
            self
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const EXACT: bool = false;

    fn from_input(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn half(self) -> Self {
        self * 0.5
    }

    fn tolerance(scale: Self, rel: f64) -> Self {
        ABS_TOL + rel * scale.abs().max(1.0)
    }
}

/// An exact length stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(pub i64);

impl HalfInt {
    /// Largest magnitude accepted from input, keeping sums of 10^6 lengths
    /// far away from overflow.
    const INPUT_LIMIT: f64 = (1u64 << 40) as f64;

    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfInt({})", self.to_f64())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Scalar for HalfInt {
    const ZERO: Self = HalfInt(0);
    const EXACT: bool = true;

    fn from_input(x: f64) -> Option<Self> {
        if x.is_finite() && x.fract() == 0.0 && x.abs() <= Self::INPUT_LIMIT {
            Some(HalfInt(2 * x as i64))
        } else {
            None
        }
    }

    fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Halving is exact whenever the value is an integer, which covers every
    /// radius formula used here (sums of input distances halved once).
    fn half(self) -> Self {
        debug_assert!(self.0 % 2 == 0, "halving a half-integer {self:?}");
        HalfInt(self.0.div_euclid(2))
    }

    fn tolerance(_scale: Self, _rel: f64) -> Self {
        HalfInt(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_round_trip() {
        let x = HalfInt::from_input(7.0).unwrap();
        assert_eq!(x.doubled(), 14);
        assert_eq!(x.half().to_f64(), 3.5);
        assert_eq!(x.half().to_string(), "3.5");
        assert_eq!(x.to_string(), "7");
        assert!(HalfInt::from_input(0.5).is_none());
        assert!(HalfInt::from_input(f64::NAN).is_none());
    }

    #[test]
    fn float_tolerance_scales() {
        assert!(f64::tolerance(1e6, 1e-12) > f64::tolerance(1.0, 1e-12));
        assert_eq!(HalfInt::tolerance(HalfInt(100), 1e-9), HalfInt(0));
    }

    #[test]
    fn min_max_helpers() {
        assert_eq!(2.0f64.max_of(3.0), 3.0);
        assert_eq!(HalfInt(4).min_of(HalfInt(-2)), HalfInt(-2));
        assert_eq!((-2.5f64).abs_val(), 2.5);
    }
}
