//! Refined partitions, the spline space `S^1(phi, refined partition)` and
//! the local Hermite osculatory solver.

use crate::bb::{binomial, c1_join_ordinate, falling_factorial, BernsteinPiece, Interval};
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Number of data imposed at each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiMap(Vec<usize>);

impl PhiMap {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("phi map needs at least one entry"));
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(invalid(format!("phi({pos}) must be at least 1")));
        }
        Ok(Self(values))
    }

    /// `len` entries cycling through `pattern`, starting at vertex 0.
    pub fn alternating(len: usize, pattern: &[usize]) -> Result<Self> {
        if pattern.is_empty() {
            return Err(invalid("empty phi pattern"));
        }
        Self::new((0..len).map(|i| pattern[i % pattern.len()]).collect())
    }

    pub fn constant(len: usize, value: usize) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl std::ops::Index<usize> for PhiMap {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// Vertices `v_0 < … < v_n` with one split point `zeta_i` inside each
/// `(v_i, v_{i+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedPartition<T> {
    vertices: Vec<T>,
    splits: Vec<T>,
    phi: PhiMap,
}

impl<T: Scalar> RefinedPartition<T> {
    pub fn new(vertices: Vec<T>, splits: Vec<T>, phi: PhiMap) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(invalid("a refined partition needs n >= 1"));
        }
        if splits.len() + 1 != vertices.len() {
            return Err(invalid(format!(
                "{} vertices need {} split points, got {}",
                vertices.len(),
                vertices.len() - 1,
                splits.len()
            )));
        }
        if phi.len() != vertices.len() {
            return Err(invalid(format!("phi has {} entries for {} vertices", phi.len(), vertices.len())));
        }
        for (i, z) in splits.iter().enumerate() {
            if !(vertices[i] < *z && *z < vertices[i + 1]) {
                return Err(invalid(format!("split point {i} = {z:?} not inside ({:?}, {:?})", vertices[i], vertices[i + 1])));
            }
        }
        Ok(Self { vertices, splits, phi })
    }

    /// Uniform vertices `a + i h` with midpoint splits `a + (i + 1/2) h`.
    pub fn uniform(interval: Interval<T>, n: usize, phi: PhiMap) -> Result<Self> {
        if n < 1 {
            return Err(invalid("uniform partition needs n >= 1"));
        }
        if phi.len() != n + 1 {
            return Err(invalid(format!("phi has {} entries, uniform partition with n = {n} needs {}", phi.len(), n + 1)));
        }
        let (a, len) = (interval.a(), interval.length());
        let nn = T::from_u64(n as u64);
        let vertices = (0..=n)
            .map(|i| if i == n { interval.b() } else { a + len * T::from_u64(i as u64) / nn })
            .collect();
        let splits = (0..n).map(|i| a + len * T::from_ratio(2 * i as i64 + 1, 2) / nn).collect();
        Self::new(vertices, splits, phi)
    }

    /// Number of sub-intervals.
    pub fn n(&self) -> usize {
        self.splits.len()
    }

    pub fn vertices(&self) -> &[T] {
        &self.vertices
    }

    pub fn splits(&self) -> &[T] {
        &self.splits
    }

    pub fn phi(&self) -> &PhiMap {
        &self.phi
    }

    pub fn vertex(&self, i: usize) -> T {
        self.vertices[i]
    }

    /// `zeta_{i-1}`, with the sentinel `zeta_{-1} = v_0`.
    pub fn zeta_before(&self, i: usize) -> T {
        if i == 0 { self.vertices[0] } else { self.splits[i - 1] }
    }

    /// `zeta_i`, with the sentinel `zeta_n = v_n`.
    pub fn zeta_after(&self, i: usize) -> T {
        if i == self.n() { self.vertices[i] } else { self.splits[i] }
    }

    pub fn domain(&self) -> Interval<T> {
        Interval::new(self.vertices[0], self.vertices[self.n()]).expect("vertices are increasing")
    }

    /// All breakpoints `v_0, zeta_0, v_1, …, zeta_{n-1}, v_n`.
    pub fn knots(&self) -> Vec<T> {
        let mut knots = Vec::with_capacity(2 * self.n() + 1);
        for (v, z) in self.vertices.iter().zip(&self.splits) {
            knots.push(*v);
            knots.push(*z);
        }
        knots.push(self.vertices[self.n()]);
        knots
    }

    /// Half-interval carrying piece `k` (`2i` is `[v_i, zeta_i]`, `2i+1` is `[zeta_i, v_{i+1}]`).
    pub fn piece_interval(&self, k: usize) -> Interval<T> {
        let i = k / 2;
        let (a, b) = if k.is_multiple_of(2) {
            (self.vertices[i], self.splits[i])
        } else {
            (self.splits[i], self.vertices[i + 1])
        };
        Interval::new(a, b).expect("partition invariants")
    }

    /// Degree of piece `k`: `phi(i)` next to `v_i`, `phi(i+1)` next to `v_{i+1}`.
    pub fn piece_degree(&self, k: usize) -> usize {
        self.phi[k / 2 + k % 2]
    }

    /// Dimension of the spline space, `sum_i phi(i)`.
    pub fn dimension(&self) -> usize {
        self.phi.values().iter().sum()
    }

    pub fn with_scalar<U: Scalar>(&self, convert: impl Fn(T) -> U) -> Result<RefinedPartition<U>> {
        RefinedPartition::new(
            self.vertices.iter().map(|&v| convert(v)).collect(),
            self.splits.iter().map(|&z| convert(z)).collect(),
            self.phi.clone(),
        )
    }
}

/// Uniform partition of `interval` into `n` pieces with midpoint splits.
pub fn uniform_refined_partition<T: Scalar>(interval: Interval<T>, n: usize, phi: PhiMap) -> Result<RefinedPartition<T>> {
    RefinedPartition::uniform(interval, n, phi)
}

/// Dimension of `S^1(phi, partition)`.
pub fn dimension<T: Scalar>(partition: &RefinedPartition<T>) -> usize {
    partition.dimension()
}

/// Hermite data: row `i` holds `f_{i,0..phi(i)-1}` (value, then raw derivatives).
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteData<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> HermiteData<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Self {
        Self { rows }
    }

    /// Sample `f(x, j)` (the `j`-th derivative) at every vertex.
    pub fn from_fn(partition: &RefinedPartition<T>, mut f: impl FnMut(T, usize) -> T) -> Self {
        let rows = (0..=partition.n())
            .map(|i| (0..partition.phi()[i]).map(|j| f(partition.vertex(i), j)).collect())
            .collect();
        Self { rows }
    }

    /// Kronecker data: `delta_{i,vertex} delta_{j,order}`.
    pub fn unit(partition: &RefinedPartition<T>, vertex: usize, order: usize) -> Self {
        Self::from_rows_at(partition, vertex, |j| if j == order { T::one() } else { T::zero() })
    }

    /// Zero everywhere except row `vertex`, filled by `row(j)`.
    pub fn from_rows_at(partition: &RefinedPartition<T>, vertex: usize, row: impl Fn(usize) -> T) -> Self {
        let rows = (0..=partition.n())
            .map(|i| {
                (0..partition.phi()[i])
                    .map(|j| if i == vertex { row(j) } else { T::zero() })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.rows[i][j] = value;
    }

    fn check_shape(&self, phi: &PhiMap) -> Result<()> {
        if self.rows.len() != phi.len() {
            return Err(invalid(format!("data has {} rows for {} vertices", self.rows.len(), phi.len())));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != phi[i] {
                return Err(invalid(format!("data row {i} has {} entries, phi({i}) = {}", row.len(), phi[i])));
            }
        }
        Ok(())
    }
}

/// A spline in `S^1(phi, partition)`: two Bernstein pieces per sub-interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline<T> {
    partition: RefinedPartition<T>,
    pieces: Vec<BernsteinPiece<T>>,
}

impl<T: Scalar> Spline<T> {
    pub fn zero(partition: &RefinedPartition<T>) -> Self {
        let pieces = (0..2 * partition.n())
            .map(|k| BernsteinPiece::constant(partition.piece_interval(k), partition.piece_degree(k), T::zero()))
            .collect();
        Self { partition: partition.clone(), pieces }
    }

    /// Wrap explicit pieces; shapes are checked, smoothness is not.
    pub fn from_pieces(partition: &RefinedPartition<T>, pieces: Vec<BernsteinPiece<T>>) -> Result<Self> {
        if pieces.len() != 2 * partition.n() {
            return Err(invalid(format!("expected {} pieces, got {}", 2 * partition.n(), pieces.len())));
        }
        for (k, p) in pieces.iter().enumerate() {
            if p.degree() != partition.piece_degree(k) || *p.interval() != partition.piece_interval(k) {
                return Err(invalid(format!("piece {k} does not match the partition")));
            }
        }
        Ok(Self { partition: partition.clone(), pieces })
    }

    pub fn partition(&self) -> &RefinedPartition<T> {
        &self.partition
    }

    pub fn pieces(&self) -> &[BernsteinPiece<T>] {
        &self.pieces
    }

    /// Piece on `[v_i, zeta_i]` (`half = 0`) or `[zeta_i, v_{i+1}]` (`half = 1`).
    pub fn piece(&self, i: usize, half: usize) -> &BernsteinPiece<T> {
        &self.pieces[2 * i + half]
    }

    pub(crate) fn pieces_mut(&mut self) -> &mut [BernsteinPiece<T>] {
        &mut self.pieces
    }

    /// Index of the piece used at `x`; left piece wins at shared knots, except at `v_0`.
    pub fn piece_index(&self, x: T) -> Result<usize> {
        if !self.partition.domain().contains(x) {
            return Err(Error::Domain(format!("{x:?}")));
        }
        let idx = self.pieces.partition_point(|p| p.interval().b() < x);
        Ok(idx.min(self.pieces.len() - 1))
    }

    /// `j`-th derivative at `x`.
    pub fn eval(&self, x: T, j: usize) -> Result<T> {
        let k = self.piece_index(x)?;
        Ok(self.pieces[k].derivative_at(x, j))
    }

    pub fn value(&self, x: T) -> Result<T> {
        self.eval(x, 0)
    }

    /// Vertex values and derivatives up to `phi(i) - 1`, taken from the piece on the vertex's right
    /// (left for `v_n`).
    pub fn hermite_data(&self) -> HermiteData<T> {
        let p = &self.partition;
        let n = p.n();
        let rows = (0..=n)
            .map(|i| {
                let piece = if i == n { &self.pieces[2 * n - 1] } else { &self.pieces[2 * i] };
                (0..p.phi()[i]).map(|j| piece.derivative_at(p.vertex(i), j)).collect()
            })
            .collect();
        HermiteData { rows }
    }

    /// `self += scale * other` on a shared partition.
    pub fn axpy(&mut self, scale: T, other: &Self) -> Result<()> {
        if self.partition != other.partition {
            return Err(invalid("splines live on different partitions"));
        }
        for (p, o) in self.pieces.iter_mut().zip(&other.pieces) {
            p.axpy(scale, o)?;
        }
        Ok(())
    }

    /// Highest matching derivative order at every interior breakpoint.
    pub fn smoothness_report(&self) -> SmoothnessReport {
        smoothness_report(self)
    }
}

/// The unique spline with `s^(j)(v_i) = f_{i,j}`.
///
/// Works sub-interval by sub-interval: the `phi(i)` ordinates of `[v_i, zeta_i]` nearest `v_i`
/// come from `f_{i,·}`, the `phi(i+1)` ordinates of `[zeta_i, v_{i+1}]` nearest `v_{i+1}` from
/// `f_{i+1,·}`, and the shared ordinate at `zeta_i` from the C^1 join.
pub fn hermite_interpolate<T: Scalar>(partition: &RefinedPartition<T>, data: &HermiteData<T>) -> Result<Spline<T>> {
    data.check_shape(partition.phi())?;
    let n = partition.n();
    let mut pieces = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (v, z, w) = (partition.vertex(i), partition.splits()[i], partition.vertex(i + 1));
        let (d1, d2) = (partition.phi()[i], partition.phi()[i + 1]);

        let mut left = vec![T::zero(); d1 + 1];
        let h = z - v;
        for (j, &f) in data.row(i).iter().enumerate() {
            // p^(j)(a) = d!/(d-j)! / h^j * sum_k (-1)^(j-k) C(j,k) c_k
            let target = f * h.powi(j) / T::from_u64(falling_factorial(d1, j));
            let mut rest = T::zero();
            for (k, &c) in left.iter().enumerate().take(j) {
                let term = T::from_u64(binomial(j, k)) * c;
                rest = if (j - k) % 2 == 0 { rest + term } else { rest - term };
            }
            left[j] = target - rest;
        }

        let mut right = vec![T::zero(); d2 + 1];
        let h = w - z;
        for (j, &f) in data.row(i + 1).iter().enumerate() {
            // p^(j)(b) = d!/(d-j)! / h^j * sum_k (-1)^k C(j,k) c_{d-k}
            let target = f * h.powi(j) / T::from_u64(falling_factorial(d2, j));
            let mut rest = T::zero();
            for k in 0..j {
                let term = T::from_u64(binomial(j, k)) * right[d2 - k];
                rest = if k % 2 == 0 { rest + term } else { rest - term };
            }
            let signed = target - rest;
            right[d2 - j] = if j % 2 == 0 { signed } else { -signed };
        }

        let shared = c1_join_ordinate(left[d1 - 1], right[1], d1, d2, v, z, w)?;
        left[d1] = shared;
        right[0] = shared;
        pieces.push(BernsteinPiece::new(partition.piece_interval(2 * i), left)?);
        pieces.push(BernsteinPiece::new(partition.piece_interval(2 * i + 1), right)?);
    }
    Ok(Spline { partition: partition.clone(), pieces })
}

/// Relative tolerance used when comparing one-sided derivatives.
pub const SMOOTHNESS_TOL: f64 = 1e-8;

/// Per-breakpoint highest order `j` such that all one-sided derivatives of
/// order `0..=j` agree; `None` if even the values disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    /// Entry `i - 1` describes interior vertex `v_i`.
    pub vertices: Vec<Option<usize>>,
    /// Entry `i` describes split point `zeta_i`.
    pub splits: Vec<Option<usize>>,
}

impl SmoothnessReport {
    /// Whether every breakpoint meets the smoothness required by the space.
    pub fn satisfies(&self, phi: &PhiMap) -> bool {
        let verts = self
            .vertices
            .iter()
            .enumerate()
            .all(|(k, m)| m.is_some_and(|m| m + 1 >= phi[k + 1]));
        verts && self.splits.iter().all(|m| m.is_some_and(|m| m >= 1))
    }
}

fn matched_order<T: Scalar>(left: &BernsteinPiece<T>, right: &BernsteinPiece<T>, x: T) -> Option<usize> {
    let top = left.degree().max(right.degree());
    let mut matched = None;
    for j in 0..=top {
        let (l, r) = (left.derivative_at(x, j).to_f64(), right.derivative_at(x, j).to_f64());
        let scale = l.abs().max(r.abs()).max(1.0);
        if (l - r).abs() > SMOOTHNESS_TOL * scale {
            break;
        }
        matched = Some(j);
    }
    matched
}

pub fn smoothness_report<T: Scalar>(s: &Spline<T>) -> SmoothnessReport {
    let p = s.partition();
    let n = p.n();
    let vertices = (1..n).map(|i| matched_order(s.piece(i - 1, 1), s.piece(i, 0), p.vertex(i))).collect();
    let splits = (0..n).map(|i| matched_order(s.piece(i, 0), s.piece(i, 1), p.splits()[i])).collect();
    SmoothnessReport { vertices, splits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn uniform_partition_examples() {
        let p = RefinedPartition::uniform(unit(), 2, PhiMap::constant(3, 2).unwrap()).unwrap();
        assert_eq!(p.vertices(), &[0.0, 0.5, 1.0]);
        assert_eq!(p.splits(), &[0.25, 0.75]);
        let p = RefinedPartition::uniform(unit(), 16, PhiMap::alternating(17, &[3, 4]).unwrap()).unwrap();
        assert_eq!(p.vertex(1), 1.0 / 16.0);
        assert_eq!(p.splits()[0], 1.0 / 32.0);
        assert!(RefinedPartition::uniform(unit(), 4, PhiMap::constant(3, 2).unwrap()).is_err());
        assert!(RefinedPartition::uniform(unit(), 0, PhiMap::constant(1, 2).unwrap()).is_err());
    }

    #[test]
    fn partition_rejects_bad_splits() {
        let phi = PhiMap::constant(2, 2).unwrap();
        assert!(RefinedPartition::new(vec![0.0, 1.0], vec![1.0], phi.clone()).is_err());
        assert!(RefinedPartition::new(vec![0.0, 1.0], vec![], phi.clone()).is_err());
        assert!(PhiMap::new(vec![2, 0]).is_err());
        assert!(RefinedPartition::new(vec![0.0, 1.0], vec![0.4], phi).is_ok());
    }

    #[test]
    fn sentinels_and_knots() {
        let p = RefinedPartition::uniform(unit(), 2, PhiMap::constant(3, 3).unwrap()).unwrap();
        assert_eq!(p.zeta_before(0), 0.0);
        assert_eq!(p.zeta_after(2), 1.0);
        assert_eq!(p.zeta_before(2), 0.75);
        assert_eq!(p.knots(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn dimension_examples() {
        let two = Interval::new(0.0, 2.0).unwrap();
        let p = RefinedPartition::uniform(two, 2, PhiMap::new(vec![3, 4, 3]).unwrap()).unwrap();
        assert_eq!(dimension(&p), 10);
        let p = RefinedPartition::uniform(unit(), 1, PhiMap::constant(2, 1).unwrap()).unwrap();
        assert_eq!(dimension(&p), 2);
        let p = RefinedPartition::uniform(unit(), 16, PhiMap::alternating(17, &[3, 4]).unwrap()).unwrap();
        assert_eq!(dimension(&p), 59);
    }

    #[test]
    fn constant_data_gives_constant_spline() {
        let p = RefinedPartition::uniform(unit(), 3, PhiMap::new(vec![1, 3, 4, 2]).unwrap()).unwrap();
        let data = HermiteData::from_fn(&p, |_, j| if j == 0 { 2.5 } else { 0.0 });
        let s = hermite_interpolate(&p, &data).unwrap();
        for piece in s.pieces() {
            assert!(piece.ordinates().iter().all(|&c| (c - 2.5).abs() < 1e-15));
        }
        for k in 0..=20 {
            let x = k as f64 / 20.0;
            assert!((s.eval(x, 0).unwrap() - 2.5).abs() < 1e-12);
            assert!(s.eval(x, 1).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn data_shape_mismatch() {
        let p = RefinedPartition::uniform(unit(), 1, PhiMap::new(vec![2, 3]).unwrap()).unwrap();
        let bad = HermiteData::new(vec![vec![1.0, 0.0], vec![1.0, 0.0]]);
        assert!(hermite_interpolate(&p, &bad).is_err());
        let bad = HermiteData::new(vec![vec![1.0, 0.0]]);
        assert!(hermite_interpolate(&p, &bad).is_err());
    }

    #[test]
    fn vertex_data_recovered_exactly_in_rationals() {
        let i = Interval::new(Q::from_integer(0), Q::from_integer(3)).unwrap();
        let p = RefinedPartition::uniform(i, 3, PhiMap::new(vec![3, 4, 2, 3]).unwrap()).unwrap();
        let data = HermiteData::from_fn(&p, |x, j| x * x + Q::new(j as i128 + 1, 7));
        let s = hermite_interpolate(&p, &data).unwrap();
        assert_eq!(s.hermite_data(), data);
        for i in 0..=3 {
            for j in 0..p.phi()[i] {
                assert_eq!(s.eval(p.vertex(i), j).unwrap(), data.row(i)[j]);
            }
        }
    }

    #[test]
    fn eval_domain_and_convention() {
        let p = RefinedPartition::uniform(unit(), 2, PhiMap::constant(3, 2).unwrap()).unwrap();
        let s = hermite_interpolate(&p, &HermiteData::from_fn(&p, |x, j| if j == 0 { x } else { 1.0 })).unwrap();
        assert!(matches!(s.eval(1.01, 0), Err(Error::Domain(_))));
        assert!(matches!(s.eval(-0.01, 0), Err(Error::Domain(_))));
        assert_eq!(s.piece_index(0.0).unwrap(), 0);
        assert_eq!(s.piece_index(0.25).unwrap(), 0);
        assert_eq!(s.piece_index(0.5).unwrap(), 1);
        assert_eq!(s.piece_index(1.0).unwrap(), 3);
    }

    #[test]
    fn value_only_vertices_are_c1_at_splits() {
        let p = RefinedPartition::new(vec![0.0, 1.0, 3.0], vec![0.3, 2.5], PhiMap::constant(3, 1).unwrap()).unwrap();
        let s = hermite_interpolate(&p, &HermiteData::new(vec![vec![1.0], vec![-2.0], vec![4.0]])).unwrap();
        let report = s.smoothness_report();
        assert!(report.splits.iter().all(|m| *m >= Some(1)));
        assert!(report.satisfies(p.phi()));
        assert_eq!(s.eval(1.0, 0).unwrap(), -2.0);
    }

    #[test]
    fn report_detects_broken_join() {
        let p = RefinedPartition::uniform(unit(), 2, PhiMap::new(vec![3, 4, 3]).unwrap()).unwrap();
        let data = HermiteData::from_fn(&p, |x, j| (j as f64 + 1.0) * x.sin());
        let mut s = hermite_interpolate(&p, &data).unwrap();
        let report = s.smoothness_report();
        assert!(report.vertices[0] >= Some(3));
        assert!(report.satisfies(p.phi()));
        let ords = s.pieces_mut()[2].ordinates_mut();
        let last = ords.len() - 2;
        ords[last] += 0.1;
        let broken = s.smoothness_report();
        assert!(broken.splits[1].is_none_or(|m| m < 1));
        assert!(!broken.satisfies(p.phi()));
    }
}
