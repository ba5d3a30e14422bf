//! Quasi-interpolation operators `Q f = sum_{i,alpha} nu_{i,alpha}(f) N_{i,alpha}`.
//!
//! Every coefficient functional approximates the blossom
//! `B[f](v_i, zeta_{i-1}[a1], zeta_i[a2])` of a local degree `phi(i)` polynomial:
//! through derivatives at `v_i`, through a local Lagrange interpolant, or
//! through the discrete polarization formula.

use std::fmt;
use std::str::FromStr;

use crate::bb::{binomial, factorial, BernsteinPiece, Interval, MultiIndex};
use crate::basis::BSplineLikeBasis;
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;
use crate::space::{RefinedPartition, Spline};

/// A function that can always be evaluated and may expose derivatives.
pub trait FunctionOracle<T> {
    fn eval(&self, x: T) -> T;

    /// `j`-th derivative, `None` when unavailable.
    fn deriv(&self, x: T, j: usize) -> Option<T> {
        (j == 0).then(|| self.eval(x))
    }
}

impl<T: Scalar> FunctionOracle<T> for BernsteinPiece<T> {
    fn eval(&self, x: T) -> T {
        BernsteinPiece::eval(self, x)
    }

    fn deriv(&self, x: T, j: usize) -> Option<T> {
        Some(self.derivative_at(x, j))
    }
}

/// Value-only oracle around a closure.
pub struct Values<F>(pub F);

impl<T, F: Fn(T) -> T> FunctionOracle<T> for Values<F> {
    fn eval(&self, x: T) -> T {
        (self.0)(x)
    }
}

/// Oracle around `f(x, j)` with derivatives available up to `max_order`.
pub struct Derivatives<F> {
    pub f: F,
    pub max_order: usize,
}

impl<T, F: Fn(T, usize) -> T> FunctionOracle<T> for Derivatives<F> {
    fn eval(&self, x: T) -> T {
        (self.f)(x, 0)
    }

    fn deriv(&self, x: T, j: usize) -> Option<T> {
        (j <= self.max_order).then(|| (self.f)(x, j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QiKind {
    Differential,
    PointValue,
    Polarization,
}

impl QiKind {
    pub const ALL: [QiKind; 3] = [QiKind::Differential, QiKind::PointValue, QiKind::Polarization];
}

impl fmt::Display for QiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QiKind::Differential => "differential",
            QiKind::PointValue => "point-value",
            QiKind::Polarization => "polarization",
        })
    }
}

impl FromStr for QiKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "differential" => Ok(QiKind::Differential),
            "point-value" | "point_value" => Ok(QiKind::PointValue),
            "polarization" => Ok(QiKind::Polarization),
            other => Err(invalid(format!("unknown operator kind '{other}'"))),
        }
    }
}

/// One coefficient functional `nu_{i,alpha}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional<T> {
    /// `sum_m weights[m] f^(m)(at)`.
    Derivative { at: T, weights: Vec<T> },
    /// `sum_k weights[k] f(nodes[k])`.
    PointValues { nodes: Vec<T>, weights: Vec<T> },
}

impl<T: Scalar> Functional<T> {
    pub fn apply(&self, f: &impl FunctionOracle<T>) -> Result<T> {
        match self {
            Functional::Derivative { at, weights } => weights.iter().enumerate().try_fold(T::zero(), |acc, (m, &w)| {
                let d = f
                    .deriv(*at, m)
                    .ok_or_else(|| Error::Capability(format!("derivative of order {m} at {at:?} unavailable")))?;
                Ok(acc + w * d)
            }),
            Functional::PointValues { nodes, weights } => {
                Ok(nodes.iter().zip(weights).fold(T::zero(), |acc, (&x, &w)| acc + w * f.eval(x)))
            }
        }
    }

    /// Sum of weights on the value term; equals 1 for every functional that reproduces constants.
    pub fn constant_weight(&self) -> T {
        match self {
            Functional::Derivative { weights, .. } => weights.first().copied().unwrap_or_else(T::zero),
            Functional::PointValues { weights, .. } => weights.iter().fold(T::zero(), |acc, &w| acc + w),
        }
    }
}

/// Blossom arguments `(v_i, zeta_{i-1}[a1], zeta_i[a2])`, with sentinels at the ends.
pub fn qi_arguments<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Vec<T> {
    let mut args = Vec::with_capacity(alpha.degree() + 1);
    args.push(partition.vertex(i));
    args.extend(std::iter::repeat_n(partition.zeta_before(i), alpha.a1));
    args.extend(std::iter::repeat_n(partition.zeta_after(i), alpha.a2));
    args
}

fn check_alpha<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Result<()> {
    if i > partition.n() {
        return Err(invalid(format!("vertex {i} out of range 0..={}", partition.n())));
    }
    if alpha.degree() + 1 != partition.phi()[i] {
        return Err(invalid(format!("|alpha| = {} but phi({i}) - 1 = {}", alpha.degree(), partition.phi()[i] - 1)));
    }
    Ok(())
}

/// Exact coefficient `B[p](v_i, zeta_{i-1}[a1], zeta_i[a2])` of a degree `phi(i)` piece.
///
/// `p` is the restriction to `[v_i, zeta_i]`, or to `[zeta_{n-1}, v_n]` at the last vertex.
pub fn qi_coefficient_blossom<T: Scalar>(
    partition: &RefinedPartition<T>,
    i: usize,
    alpha: MultiIndex,
    p: &BernsteinPiece<T>,
) -> Result<T> {
    check_alpha(partition, i, alpha)?;
    if p.degree() != partition.phi()[i] {
        return Err(invalid(format!("carrier has degree {}, phi({i}) = {}", p.degree(), partition.phi()[i])));
    }
    p.blossom(&qi_arguments(partition, i, alpha))
}

/// Taylor expansion of the blossom around `v_i`:
/// `nu = sum_m (phi-m)!/phi! e_m f^(m)(v_i)` with
/// `e_m = sum_{a+b=m} C(a1,a) C(a2,b) delta^a deltahat^b`.
pub fn differential_weights<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Result<Functional<T>> {
    check_alpha(partition, i, alpha)?;
    let phi = partition.phi()[i];
    let v = partition.vertex(i);
    let delta = partition.zeta_before(i) - v;
    let delta_hat = partition.zeta_after(i) - v;
    let weights = (0..phi)
        .map(|m| {
            let mut e = T::zero();
            for a in 0..=m.min(alpha.a1) {
                let b = m - a;
                if b > alpha.a2 {
                    continue;
                }
                let c = T::from_u64(binomial(alpha.a1, a) * binomial(alpha.a2, b));
                e = e + c * delta.powi(a) * delta_hat.powi(b);
            }
            e * T::from_u64(factorial(phi - m)) / T::from_u64(factorial(phi))
        })
        .collect();
    Ok(Functional::Derivative { at: v, weights })
}

/// Interpolation nodes for the point-value functionals at `v_i`: `phi(i) + 1`
/// consecutive breakpoints starting at `v_{i-1}`, shifted inward at the ends.
pub fn point_value_nodes<T: Scalar>(partition: &RefinedPartition<T>, i: usize) -> Result<Vec<T>> {
    let phi = partition.phi()[i];
    let knots = partition.knots();
    if knots.len() < phi + 1 {
        return Err(Error::Unsupported(format!(
            "vertex {i} needs {} interpolation nodes but the partition has {} breakpoints",
            phi + 1,
            knots.len()
        )));
    }
    let start = (2 * i).saturating_sub(2).min(knots.len() - phi - 1);
    Ok(knots[start..start + phi + 1].to_vec())
}

/// Lagrange basis polynomials on `nodes`, in Bernstein form on the node span.
pub fn lagrange_basis<T: Scalar>(nodes: &[T]) -> Result<Vec<BernsteinPiece<T>>> {
    for (k, a) in nodes.iter().enumerate() {
        if nodes[k + 1..].iter().any(|b| b == a) {
            return Err(invalid(format!("coincident interpolation node {a:?}")));
        }
    }
    let lo = nodes.iter().copied().fold(nodes[0], |m, x| if x < m { x } else { m });
    let hi = nodes.iter().copied().fold(nodes[0], |m, x| if x > m { x } else { m });
    let span = Interval::new(lo, hi)?;
    Ok(nodes
        .iter()
        .enumerate()
        .map(|(k, &tk)| {
            let mut l = BernsteinPiece::constant(span, 0, T::one());
            for (m, &tm) in nodes.iter().enumerate() {
                if m != k {
                    let scale = tk - tm;
                    let linear = BernsteinPiece::new(span, vec![(lo - tm) / scale, (hi - tm) / scale]).expect("two ordinates");
                    l = l.mul(&linear);
                }
            }
            l
        })
        .collect())
}

/// `nu = sum_k f(t_k) B[L_k](v_i, zeta_{i-1}[a1], zeta_i[a2])`.
pub fn point_value_weights<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Result<Functional<T>> {
    check_alpha(partition, i, alpha)?;
    let nodes = point_value_nodes(partition, i)?;
    let args = qi_arguments(partition, i, alpha);
    let weights = lagrange_basis(&nodes)?.iter().map(|l| l.blossom(&args)).collect::<Result<Vec<_>>>()?;
    Ok(Functional::PointValues { nodes, weights })
}

/// Largest argument count accepted by the polarization formula.
pub const MAX_POLARIZATION_DEGREE: usize = 20;

/// Discrete polarization over the labeled argument slots:
/// `M[f](u) = 1/d! sum_{S != {}} (-1)^(d-|S|) |S|^d f(mean(u_S))`.
pub fn polarization_from_arguments<T: Scalar>(args: &[T]) -> Result<Functional<T>> {
    let d = args.len();
    if d == 0 || d > MAX_POLARIZATION_DEGREE {
        return Err(invalid(format!("polarization over {d} arguments is not supported")));
    }
    let d_fact = T::from_u64(factorial(d));
    let mut nodes = Vec::with_capacity((1 << d) - 1);
    let mut weights = Vec::with_capacity((1 << d) - 1);
    for mask in 1u32..(1 << d) {
        let k = mask.count_ones() as usize;
        let sum = args
            .iter()
            .enumerate()
            .filter(|(slot, _)| mask & (1 << slot) != 0)
            .fold(T::zero(), |acc, (_, &u)| acc + u);
        let w = T::from_u64(k as u64).powi(d) / d_fact;
        nodes.push(sum / T::from_u64(k as u64));
        weights.push(if (d - k).is_multiple_of(2) { w } else { -w });
    }
    Ok(Functional::PointValues { nodes, weights })
}

pub fn polarization_weights<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Result<Functional<T>> {
    check_alpha(partition, i, alpha)?;
    polarization_from_arguments(&qi_arguments(partition, i, alpha))
}

pub fn functional<T: Scalar>(partition: &RefinedPartition<T>, kind: QiKind, i: usize, alpha: MultiIndex) -> Result<Functional<T>> {
    match kind {
        QiKind::Differential => differential_weights(partition, i, alpha),
        QiKind::PointValue => point_value_weights(partition, i, alpha),
        QiKind::Polarization => polarization_weights(partition, i, alpha),
    }
}

pub fn differential_functional<T: Scalar>(
    partition: &RefinedPartition<T>,
    i: usize,
    alpha: MultiIndex,
    f: &impl FunctionOracle<T>,
) -> Result<T> {
    differential_weights(partition, i, alpha)?.apply(f)
}

pub fn point_value_functional<T: Scalar>(
    partition: &RefinedPartition<T>,
    i: usize,
    alpha: MultiIndex,
    f: &impl FunctionOracle<T>,
) -> Result<T> {
    point_value_weights(partition, i, alpha)?.apply(f)
}

pub fn polarization_functional<T: Scalar>(
    partition: &RefinedPartition<T>,
    i: usize,
    alpha: MultiIndex,
    f: &impl FunctionOracle<T>,
) -> Result<T> {
    polarization_weights(partition, i, alpha)?.apply(f)
}

/// All functionals `nu_{i,alpha}` of one operator kind.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalTable<T> {
    pub kind: QiKind,
    /// `entries[i][alpha.a2]`.
    pub entries: Vec<Vec<Functional<T>>>,
}

impl<T: Scalar> FunctionalTable<T> {
    pub fn new(partition: &RefinedPartition<T>, kind: QiKind) -> Result<Self> {
        let entries = (0..=partition.n())
            .map(|i| MultiIndex::all(partition.phi()[i] - 1).map(|alpha| functional(partition, kind, i, alpha)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(Self { kind, entries })
    }

    pub fn coefficients(&self, f: &impl FunctionOracle<T>) -> Result<Vec<Vec<T>>> {
        self.entries.iter().map(|row| row.iter().map(|nu| nu.apply(f)).collect()).collect()
    }

    /// Distinct scalar inputs: `(point, derivative order)` pairs with a nonzero weight, or
    /// distinct evaluation points.
    pub fn distinct_inputs(&self) -> usize {
        let mut inputs: Vec<(T, usize)> = Vec::new();
        for nu in self.entries.iter().flatten() {
            match nu {
                Functional::Derivative { at, weights } => {
                    inputs.extend(weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(m, _)| (*at, m)));
                }
                Functional::PointValues { nodes, weights } => {
                    inputs.extend(nodes.iter().zip(weights).filter(|(_, w)| !w.is_zero()).map(|(x, _)| (*x, 0)));
                }
            }
        }
        inputs.sort_by(|a, b| a.partial_cmp(b).expect("comparable inputs"));
        inputs.dedup();
        inputs.len()
    }
}

/// `Q f` for one operator kind.
pub fn quasi_interpolate<T: Scalar>(basis: &BSplineLikeBasis<T>, kind: QiKind, f: &impl FunctionOracle<T>) -> Result<Spline<T>> {
    let table = FunctionalTable::new(basis.partition(), kind)?;
    basis.spline_from_coefficients(&table.coefficients(f)?)
}

/// `Q p` for a piecewise polynomial given by its carriers: `carriers[i]` is
/// the degree `phi(i)` piece on `[v_i, zeta_i]` (`[zeta_{n-1}, v_n]` for `i = n`).
pub fn quasi_interpolate_piecewise<T: Scalar>(basis: &BSplineLikeBasis<T>, carriers: &[BernsteinPiece<T>]) -> Result<Spline<T>> {
    let partition = basis.partition();
    if carriers.len() != partition.n() + 1 {
        return Err(invalid(format!("{} carriers for {} vertices", carriers.len(), partition.n() + 1)));
    }
    let coeffs = carriers
        .iter()
        .enumerate()
        .map(|(i, p)| {
            MultiIndex::all(partition.phi()[i] - 1)
                .map(|alpha| qi_coefficient_blossom(partition, i, alpha, p))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    basis.spline_from_coefficients(&coeffs)
}
