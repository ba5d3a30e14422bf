//! Low-degree Hermite osculatory splines on a partition refined by one split
//! point per sub-interval.
//!
//! The crate provides the Bernstein–Bézier kernel (evaluation, blossoms,
//! control polynomials), the local Hermite solver for the spline space, a
//! nonnegative partition-of-unity basis built from control intervals, and three
//! quasi-interpolation operators (differential, point-value, polarization).
//!
//! All algorithms are generic over [`Scalar`], implemented for `f32`, `f64`
//! and the exact [`Rational`] type.

pub mod basis;
pub mod bb;
pub mod error;
pub mod quasi;
pub mod scalar;
pub mod space;

pub use basis::{
    bspline_like, classical_hermite_basis, control_interval, control_polynomial_t, gamma_table,
    hermite_to_bspline_coeffs, nonnegativity_check, partition_of_unity_check, BSplineLikeBasis, ControlInterval,
    GammaTable, NonnegativityReport,
};
pub use bb::{bernstein_derivative, bernstein_eval, c1_join_ordinate, BernsteinPiece, Interval, MultiIndex};
pub use error::{Error, Result};
pub use quasi::{
    differential_functional, functional, point_value_functional, point_value_weights, polarization_functional,
    qi_coefficient_blossom, quasi_interpolate,
    quasi_interpolate_piecewise, Derivatives, FunctionOracle, Functional, FunctionalTable, QiKind, Values,
};
pub use scalar::Scalar;
pub use space::{
    dimension, hermite_interpolate, smoothness_report, uniform_refined_partition, HermiteData, PhiMap, RefinedPartition,
    SmoothnessReport, Spline,
};

/// Exact rational scalar used for closed-form checks.
pub type Rational = num_rational::Ratio<i128>;

pub type Interval64 = Interval<f64>;
pub type Piece64 = BernsteinPiece<f64>;
pub type Partition64 = RefinedPartition<f64>;
pub type HermiteData64 = HermiteData<f64>;
pub type Spline64 = Spline<f64>;
pub type Basis64 = BSplineLikeBasis<f64>;

pub type PieceQ = BernsteinPiece<Rational>;
pub type PartitionQ = RefinedPartition<Rational>;
pub type SplineQ = Spline<Rational>;
pub type BasisQ = BSplineLikeBasis<Rational>;
