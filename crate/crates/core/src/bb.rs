//! Bernstein–Bézier kernel on a single interval.
//!
//! Ordinates of a degree `d` piece are stored left to right:
//! entry `k` holds `c_(d-k, k)`, attached to the domain point
//! `((d-k) a + k b) / d`.

use std::fmt;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// `n!` in exact integer arithmetic.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// `n! / (n-k)!`, the falling factorial.
pub fn falling_factorial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    ((n - k + 1) as u64..=n as u64).product()
}

/// Pair `(a1, a2)` indexing the Bernstein polynomials of degree `a1 + a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    pub a1: usize,
    pub a2: usize,
}

impl MultiIndex {
    pub const fn new(a1: usize, a2: usize) -> Self {
        Self { a1, a2 }
    }

    pub const fn degree(&self) -> usize {
        self.a1 + self.a2
    }

    /// All indices of total degree `d`, in storage order `(d,0), (d-1,1), …, (0,d)`.
    pub fn all(d: usize) -> impl Iterator<Item = MultiIndex> + Clone {
        (0..=d).map(move |k| MultiIndex::new(d - k, k))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if a < b {
            Ok(Self { a, b })
        } else {
            Err(invalid(format!("degenerate interval [{a:?}, {b:?}]")))
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn length(&self) -> T {
        self.b - self.a
    }

    pub fn contains(&self, v: T) -> bool {
        self.a <= v && v <= self.b
    }

    /// Barycentric weight of `v` with respect to `b`; may fall outside `[0, 1]`.
    pub fn barycentric(&self, v: T) -> T {
        (v - self.a) / (self.b - self.a)
    }
}

fn check_degree(alpha: MultiIndex, d: usize) -> Result<()> {
    if alpha.degree() != d {
        return Err(invalid(format!(
            "multi-index {alpha} has degree {} but {d} was requested",
            alpha.degree()
        )));
    }
    Ok(())
}

/// Value of the Bernstein basis polynomial `B^d_{alpha,I}` at any real `v`.
pub fn bernstein_eval<T: Scalar>(alpha: MultiIndex, interval: &Interval<T>, d: usize, v: T) -> Result<T> {
    check_degree(alpha, d)?;
    Ok(bernstein_unchecked(alpha, interval, v))
}

fn bernstein_unchecked<T: Scalar>(alpha: MultiIndex, interval: &Interval<T>, v: T) -> T {
    let d = alpha.degree();
    let coeff = T::from_u64(binomial(d, alpha.a2));
    let t = interval.barycentric(v);
    coeff * (T::one() - t).powi(alpha.a1) * t.powi(alpha.a2)
}

/// `j`-th derivative of `B^d_{alpha,I}` at `v`; exactly zero when `j > d`.
pub fn bernstein_derivative<T: Scalar>(
    alpha: MultiIndex,
    interval: &Interval<T>,
    d: usize,
    v: T,
    j: usize,
) -> Result<T> {
    check_degree(alpha, d)?;
    if j > d {
        return Ok(T::zero());
    }
    // d!/(d-j)! / h^j * sum_k (-1)^(j-k) C(j,k) B^{d-j}_{(a1-(j-k), a2-k)}
    let mut sum = T::zero();
    for k in 0..=j {
        let (Some(a1), Some(a2)) = (alpha.a1.checked_sub(j - k), alpha.a2.checked_sub(k)) else {
            continue;
        };
        let term = T::from_u64(binomial(j, k)) * bernstein_unchecked(MultiIndex::new(a1, a2), interval, v);
        if (j - k).is_multiple_of(2) {
            sum = sum + term;
        } else {
            sum = sum - term;
        }
    }
    Ok(T::from_u64(falling_factorial(d, j)) * sum / interval.length().powi(j))
}

/// Shared ordinate at a split point `zeta` that makes two Bernstein pieces
/// `C^1`-continuous there.
///
/// `c_last_inner` is `c_(1, d1-1)` of the left piece on `[vi, zeta]` and
/// `c_hat_inner` is `ĉ_(d2-1, 1)` of the right piece on `[zeta, vip1]`.
pub fn c1_join_ordinate<T: Scalar>(
    c_last_inner: T,
    c_hat_inner: T,
    d1: usize,
    d2: usize,
    vi: T,
    zeta: T,
    vip1: T,
) -> Result<T> {
    if !(vi < zeta && zeta < vip1) {
        return Err(invalid(format!("split point {zeta:?} not inside ({vi:?}, {vip1:?})")));
    }
    if d1 == 0 || d2 == 0 {
        return Err(invalid("C1 join needs both degrees >= 1"));
    }
    let left = T::from_u64(d1 as u64) / (zeta - vi);
    let right = T::from_u64(d2 as u64) / (vip1 - zeta);
    Ok((right * c_hat_inner + left * c_last_inner) / (left + right))
}

/// A polynomial on one interval held by its B-ordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPiece<T> {
    interval: Interval<T>,
    ordinates: Vec<T>,
}

impl<T: Scalar> BernsteinPiece<T> {
    pub fn new(interval: Interval<T>, ordinates: Vec<T>) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(invalid("a Bernstein piece needs at least one ordinate"));
        }
        Ok(Self { interval, ordinates })
    }

    pub fn constant(interval: Interval<T>, degree: usize, value: T) -> Self {
        Self { interval, ordinates: vec![value; degree + 1] }
    }

    /// `x^m` represented at degree `degree >= m` on `interval`.
    pub fn monomial(interval: Interval<T>, degree: usize, m: usize) -> Result<Self> {
        if m > degree {
            return Err(invalid(format!("x^{m} does not fit degree {degree}")));
        }
        // blossom of x^m is e_m(u_1..u_d) / C(d, m)
        let norm = T::from_u64(binomial(degree, m));
        let ordinates = (0..=degree)
            .map(|k| {
                let args: Vec<T> = std::iter::repeat_n(interval.a, degree - k)
                    .chain(std::iter::repeat_n(interval.b, k))
                    .collect();
                elementary_symmetric(&args, m) / norm
            })
            .collect();
        Ok(Self { interval, ordinates })
    }

    pub fn interval(&self) -> &Interval<T> {
        &self.interval
    }

    pub fn degree(&self) -> usize {
        self.ordinates.len() - 1
    }

    pub fn ordinates(&self) -> &[T] {
        &self.ordinates
    }

    pub fn ordinate(&self, alpha: MultiIndex) -> Result<T> {
        check_degree(alpha, self.degree())?;
        Ok(self.ordinates[alpha.a2])
    }

    #[cfg(test)]
    pub(crate) fn ordinates_mut(&mut self) -> &mut [T] {
        &mut self.ordinates
    }

    /// de Casteljau evaluation; extrapolates outside the interval.
    pub fn eval(&self, v: T) -> T {
        de_casteljau(self.ordinates.clone(), self.interval.barycentric(v))
    }

    /// `j`-th derivative at `v` via forward differences.
    pub fn derivative_at(&self, v: T, j: usize) -> T {
        let d = self.degree();
        if j > d {
            return T::zero();
        }
        let mut diffs = self.ordinates.clone();
        for level in 0..j {
            for k in 0..d - level {
                diffs[k] = diffs[k + 1] - diffs[k];
            }
        }
        diffs.truncate(d - j + 1);
        let scale = T::from_u64(falling_factorial(d, j)) / self.interval.length().powi(j);
        scale * de_casteljau(diffs, self.interval.barycentric(v))
    }

    /// Polar form evaluated at `args` (one argument per pyramid level).
    pub fn blossom(&self, args: &[T]) -> Result<T> {
        if args.len() != self.degree() {
            return Err(invalid(format!(
                "blossom of a degree {} piece takes {} arguments, got {}",
                self.degree(),
                self.degree(),
                args.len()
            )));
        }
        let mut level = self.ordinates.clone();
        for (r, &u) in args.iter().enumerate() {
            let t = self.interval.barycentric(u);
            let s = T::one() - t;
            for k in 0..self.degree() - r {
                level[k] = s * level[k] + t * level[k + 1];
            }
        }
        Ok(level[0])
    }

    /// Degree `d2` polynomial `q` on `target` with
    /// `B[q](y_1..y_d2) = B[self](fixed_args, y_1..y_d2)`.
    pub fn partial_blossom(&self, fixed_args: &[T], d2: usize, target: Interval<T>) -> Result<Self> {
        let d = self.degree();
        if d2 >= d {
            return Err(invalid(format!("partial blossom degree {d2} must be below {d}")));
        }
        if fixed_args.len() != d - d2 {
            return Err(invalid(format!(
                "partial blossom to degree {d2} fixes {} arguments, got {}",
                d - d2,
                fixed_args.len()
            )));
        }
        let mut args = fixed_args.to_vec();
        let ordinates = (0..=d2)
            .map(|k| {
                args.truncate(d - d2);
                args.extend(std::iter::repeat_n(target.a, d2 - k));
                args.extend(std::iter::repeat_n(target.b, k));
                self.blossom(&args)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { interval: target, ordinates })
    }

    /// The degree `d2` control polynomial at `v1`:
    /// `q(v) = B[p](v1[d1-d2], (v/theta + (1 - 1/theta) v1)[d2])`.
    ///
    /// `q` is returned on the image of this piece's interval under
    /// `x -> v1 + theta (x - v1)`, so with `v1 = a` its ordinates are
    /// `c_(d1-d2+k, l)` of this piece.
    pub fn control_polynomial(&self, v1: T, d2: usize, theta: T) -> Result<Self> {
        let d1 = self.degree();
        if theta.is_zero() {
            return Err(invalid("control polynomial needs theta != 0"));
        }
        if d2 == 0 || d2 >= d1 {
            return Err(invalid(format!("control polynomial degree {d2} must lie in 1..{d1}")));
        }
        let (mut lo, mut hi) = (self.interval.a, self.interval.b);
        if theta < T::zero() {
            std::mem::swap(&mut lo, &mut hi);
        }
        let image = |x: T| v1 + theta * (x - v1);
        let target = Interval::new(image(lo), image(hi))?;
        let mut args = vec![v1; d1 - d2];
        let ordinates = (0..=d2)
            .map(|k| {
                args.truncate(d1 - d2);
                args.extend(std::iter::repeat_n(lo, d2 - k));
                args.extend(std::iter::repeat_n(hi, k));
                self.blossom(&args)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { interval: target, ordinates })
    }

    /// Same polynomial re-expressed on `sub` (which may extend beyond the
    /// current interval).
    pub fn subdivide(&self, sub: Interval<T>) -> Self {
        let d = self.degree();
        let ordinates = (0..=d)
            .map(|k| {
                let args: Vec<T> = std::iter::repeat_n(sub.a, d - k)
                    .chain(std::iter::repeat_n(sub.b, k))
                    .collect();
                self.blossom(&args).expect("argument count matches degree")
            })
            .collect();
        Self { interval: sub, ordinates }
    }

    /// Raise the degree by one without changing the polynomial.
    pub fn elevate(&self) -> Self {
        let d = self.degree();
        let c = &self.ordinates;
        let mut ordinates = Vec::with_capacity(d + 2);
        ordinates.push(c[0]);
        for k in 1..=d {
            let w = T::from_ratio(k as i64, (d + 1) as i64);
            ordinates.push(w * c[k - 1] + (T::one() - w) * c[k]);
        }
        ordinates.push(c[d]);
        Self { interval: self.interval, ordinates }
    }

    /// Product of two pieces; `other` is first re-expressed on this interval.
    pub fn mul(&self, other: &Self) -> Self {
        let other = if other.interval == self.interval { other.clone() } else { other.subdivide(self.interval) };
        let (m, n) = (self.degree(), other.degree());
        let mut ordinates = vec![T::zero(); m + n + 1];
        for (i, &f) in self.ordinates.iter().enumerate() {
            for (j, &g) in other.ordinates.iter().enumerate() {
                let w = T::from_u64(binomial(m, i) * binomial(n, j)) / T::from_u64(binomial(m + n, i + j));
                ordinates[i + j] = ordinates[i + j] + w * f * g;
            }
        }
        Self { interval: self.interval, ordinates }
    }

    /// `self + scale * other`, both on the same interval and degree.
    pub fn axpy(&mut self, scale: T, other: &Self) -> Result<()> {
        if other.interval != self.interval || other.degree() != self.degree() {
            return Err(invalid("axpy needs pieces with matching interval and degree"));
        }
        for (c, &o) in self.ordinates.iter_mut().zip(&other.ordinates) {
            *c = *c + scale * o;
        }
        Ok(())
    }
}

fn de_casteljau<T: Scalar>(mut level: Vec<T>, t: T) -> T {
    let s = T::one() - t;
    for r in 1..level.len() {
        for k in 0..level.len() - r {
            level[k] = s * level[k] + t * level[k + 1];
        }
    }
    level[0]
}

/// `e_m(args)`, the elementary symmetric polynomial of order `m`.
pub(crate) fn elementary_symmetric<T: Scalar>(args: &[T], m: usize) -> T {
    let mut e = vec![T::zero(); m + 1];
    e[0] = T::one();
    for &u in args {
        for k in (1..=m).rev() {
            e[k] = e[k] + u * e[k - 1];
        }
    }
    e[m]
}
