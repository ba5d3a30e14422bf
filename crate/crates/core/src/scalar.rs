//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All spline and blossom algorithms only need field arithmetic and an
//! ordering, so they run unchanged on `f32`, `f64` and exact rationals.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A real-like scalar: ordered field arithmetic plus conversions used for
/// tolerance checks and reporting.
pub trait Scalar: Copy + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Nearest `f64`. Exact for floats, rounded for rationals.
    fn to_f64(self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_u64(v: u64) -> Self {
        Self::from_i64(i64::try_from(v).expect("combinatorial factor overflows i64"))
    }

    fn powi(self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn powi(self, exp: usize) -> Self {
        f64::powi(self, exp as i32)
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn powi(self, exp: usize) -> Self {
        f32::powi(self, exp as i32)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_conversions() {
        let r = <Ratio<i128> as Scalar>::from_ratio(3, 4);
        assert_eq!(r, Ratio::new(3, 4));
        assert_eq!(r.to_f64(), 0.75);
        assert_eq!(r.powi(2), Ratio::new(9, 16));
        assert_eq!(<f64 as Scalar>::powi(2.0, 0), 1.0);
    }
}
