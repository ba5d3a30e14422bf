//! Classical Hermite basis and the normalized B-spline-like basis `N_{i,alpha}`.
//!
//! Each vertex `v_i` owns `phi(i)` basis functions. They are Hermite
//! interpolants whose only nonzero data sit at `v_i` and equal the scaled
//! derivatives of the degree `phi(i) - 1` Bernstein polynomials on the control
//! interval `S_i` (the gamma coefficients).

use crate::bb::{bernstein_derivative, binomial, BernsteinPiece, Interval, MultiIndex};
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;
use crate::space::{hermite_interpolate, HermiteData, RefinedPartition, Spline};

/// `phi_{i,j}`: the spline with Kronecker Hermite data at `(v_i, j)`.
pub fn classical_hermite_basis<T: Scalar>(partition: &RefinedPartition<T>, i: usize, j: usize) -> Result<Spline<T>> {
    check_vertex(partition, i)?;
    if j >= partition.phi()[i] {
        return Err(invalid(format!("derivative order {j} out of range for phi({i}) = {}", partition.phi()[i])));
    }
    hermite_interpolate(partition, &HermiteData::unit(partition, i, j))
}

fn check_vertex<T: Scalar>(partition: &RefinedPartition<T>, i: usize) -> Result<()> {
    if i > partition.n() {
        return Err(invalid(format!("vertex {i} out of range 0..={}", partition.n())));
    }
    Ok(())
}

/// Control interval `S_i = [s1, s2]` attached to vertex `v_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlInterval<T> {
    pub vertex: usize,
    pub s1: T,
    pub s2: T,
}

impl<T: Scalar> ControlInterval<T> {
    pub fn interval(&self) -> Interval<T> {
        Interval::new(self.s1, self.s2).expect("control interval is non-degenerate")
    }
}

/// `theta = (phi(i) - 1) / phi(i)`.
pub fn theta<T: Scalar>(phi_i: usize) -> T {
    T::from_ratio(phi_i as i64 - 1, phi_i as i64)
}

/// `S_{i,1} = theta zeta_{i-1} + (1-theta) v_i`, `S_{i,2} = theta zeta_i + (1-theta) v_i`;
/// the sentinels give `S_{0,1} = v_0` and `S_{n,2} = v_n`.
pub fn control_interval<T: Scalar>(partition: &RefinedPartition<T>, i: usize) -> Result<ControlInterval<T>> {
    check_vertex(partition, i)?;
    let phi = partition.phi()[i];
    if phi < 2 {
        return Err(Error::Unsupported(format!(
            "phi({i}) = 1 collapses the control interval; the B-spline-like basis needs phi >= 2"
        )));
    }
    let th: T = theta(phi);
    let v = partition.vertex(i);
    let s1 = if i == 0 { v } else { th * partition.zeta_before(i) + (T::one() - th) * v };
    let s2 = if i == partition.n() { v } else { th * partition.zeta_after(i) + (T::one() - th) * v };
    Ok(ControlInterval { vertex: i, s1, s2 })
}

/// `gamma^j_{i,alpha}`: row `j` (derivative order), column `l` for `alpha = (phi-1-l, l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTable<T> {
    pub vertex: usize,
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> GammaTable<T> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn get(&self, j: usize, alpha: MultiIndex) -> T {
        self.entries[j][alpha.a2]
    }

    /// Column `alpha`: the Hermite data of `N_{i,alpha}` at `v_i`.
    pub fn column(&self, alpha: MultiIndex) -> Vec<T> {
        self.entries.iter().map(|row| row[alpha.a2]).collect()
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.entries.iter().map(|row| row.iter().fold(T::zero(), |acc, &g| acc + g)).collect()
    }

    /// Hermite data at `v_i` of `sum_alpha mu_alpha N_{i,alpha}`.
    pub fn apply(&self, mu: &[T]) -> Vec<T> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(mu).fold(T::zero(), |acc, (&g, &m)| acc + g * m))
            .collect()
    }

    /// Solve `Gamma mu = f_row` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, f_row: &[T]) -> Result<Vec<T>> {
        let size = self.size();
        if f_row.len() != size {
            return Err(invalid(format!("data row has {} entries, expected {size}", f_row.len())));
        }
        let mut a: Vec<Vec<T>> = self
            .entries
            .iter()
            .zip(f_row)
            .map(|(row, &f)| {
                let mut r = row.clone();
                r.push(f);
                r
            })
            .collect();
        for col in 0..size {
            let pivot = (col..size)
                .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).expect("finite entries"))
                .expect("non-empty range");
            assert!(!a[pivot][col].is_zero(), "gamma table of vertex {} is singular", self.vertex);
            a.swap(col, pivot);
            for r in col + 1..size {
                let factor = a[r][col] / a[col][col];
                for c in col..=size {
                    let v = a[col][c];
                    a[r][c] = a[r][c] - factor * v;
                }
            }
        }
        let mut mu = vec![T::zero(); size];
        for r in (0..size).rev() {
            let mut acc = a[r][size];
            for c in r + 1..size {
                acc = acc - a[r][c] * mu[c];
            }
            mu[r] = acc / a[r][r];
        }
        Ok(mu)
    }
}

pub fn gamma_table<T: Scalar>(partition: &RefinedPartition<T>, i: usize) -> Result<GammaTable<T>> {
    let control = control_interval(partition, i)?;
    Ok(gamma_from_control(partition, &control))
}

fn gamma_from_control<T: Scalar>(partition: &RefinedPartition<T>, control: &ControlInterval<T>) -> GammaTable<T> {
    let i = control.vertex;
    let phi = partition.phi()[i];
    let th: T = theta(phi);
    let s = control.interval();
    let v = partition.vertex(i);
    let entries = (0..phi)
        .map(|j| {
            let factor = T::from_u64(binomial(phi, j)) / T::from_u64(binomial(phi - 1, j)) * th.powi(j);
            MultiIndex::all(phi - 1)
                .map(|alpha| factor * bernstein_derivative(alpha, &s, phi - 1, v, j).expect("degree matches"))
                .collect()
        })
        .collect();
    GammaTable { vertex: i, entries }
}

fn check_alpha<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Result<()> {
    check_vertex(partition, i)?;
    if alpha.degree() + 1 != partition.phi()[i] {
        return Err(invalid(format!("|alpha| = {} but phi({i}) - 1 = {}", alpha.degree(), partition.phi()[i] - 1)));
    }
    Ok(())
}

/// `N_{i,alpha}`: Hermite data `gamma^j_{i,alpha}` at `v_i`, zero elsewhere.
pub fn bspline_like<T: Scalar>(partition: &RefinedPartition<T>, i: usize, alpha: MultiIndex) -> Result<Spline<T>> {
    check_alpha(partition, i, alpha)?;
    let gamma = gamma_table(partition, i)?;
    bspline_from_gamma(partition, &gamma, alpha)
}

fn bspline_from_gamma<T: Scalar>(partition: &RefinedPartition<T>, gamma: &GammaTable<T>, alpha: MultiIndex) -> Result<Spline<T>> {
    let column = gamma.column(alpha);
    hermite_interpolate(partition, &HermiteData::from_rows_at(partition, gamma.vertex, |j| column[j]))
}

/// Basis functions, control interval and gamma table of one vertex.
#[derive(Debug, Clone)]
pub struct VertexBasis<T> {
    pub control: ControlInterval<T>,
    pub gamma: GammaTable<T>,
    /// `N_{i,alpha}` in storage order of `alpha`.
    pub functions: Vec<Spline<T>>,
}

/// The full B-spline-like basis of `S^1(phi, partition)`.
#[derive(Debug, Clone)]
pub struct BSplineLikeBasis<T> {
    partition: RefinedPartition<T>,
    vertices: Vec<VertexBasis<T>>,
}

impl<T: Scalar> BSplineLikeBasis<T> {
    pub fn new(partition: &RefinedPartition<T>) -> Result<Self> {
        let vertices = (0..=partition.n())
            .map(|i| {
                let control = control_interval(partition, i)?;
                let gamma = gamma_from_control(partition, &control);
                let functions = MultiIndex::all(partition.phi()[i] - 1)
                    .map(|alpha| bspline_from_gamma(partition, &gamma, alpha))
                    .collect::<Result<Vec<_>>>()?;
                Ok(VertexBasis { control, gamma, functions })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { partition: partition.clone(), vertices })
    }

    pub fn partition(&self) -> &RefinedPartition<T> {
        &self.partition
    }

    pub fn vertex(&self, i: usize) -> &VertexBasis<T> {
        &self.vertices[i]
    }

    pub fn function(&self, i: usize, alpha: MultiIndex) -> &Spline<T> {
        &self.vertices[i].functions[alpha.a2]
    }

    /// Every basis function with its vertex and multi-index.
    pub fn iter(&self) -> impl Iterator<Item = (usize, MultiIndex, &Spline<T>)> {
        self.vertices.iter().enumerate().flat_map(|(i, vb)| {
            let d = vb.functions.len() - 1;
            MultiIndex::all(d).zip(&vb.functions).map(move |(alpha, f)| (i, alpha, f))
        })
    }

    pub fn len(&self) -> usize {
        self.partition.dimension()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `sum_{i,alpha} N_{i,alpha}(x)`.
    pub fn sum_at(&self, x: T) -> Result<T> {
        self.iter().try_fold(T::zero(), |acc, (_, _, f)| Ok(acc + f.value(x)?))
    }

    /// `sum mu_{i,alpha} N_{i,alpha}`, accumulated over each function's support pieces.
    pub fn spline_from_coefficients(&self, coeffs: &[Vec<T>]) -> Result<Spline<T>> {
        self.check_coefficients(coeffs)?;
        let mut out = Spline::zero(&self.partition);
        let total = 2 * self.partition.n();
        for (i, vb) in self.vertices.iter().enumerate() {
            let support = (2 * i).saturating_sub(2)..(2 * i + 2).min(total);
            for (f, &mu) in vb.functions.iter().zip(&coeffs[i]) {
                if mu.is_zero() {
                    continue;
                }
                for k in support.clone() {
                    out.pieces_mut()[k].axpy(mu, &f.pieces()[k])?;
                }
            }
        }
        Ok(out)
    }

    /// Hermite data of `sum mu_{i,alpha} N_{i,alpha}` through the gamma tables.
    pub fn hermite_data_from_coefficients(&self, coeffs: &[Vec<T>]) -> Result<HermiteData<T>> {
        self.check_coefficients(coeffs)?;
        Ok(HermiteData::new(self.vertices.iter().zip(coeffs).map(|(vb, mu)| vb.gamma.apply(mu)).collect()))
    }

    /// B-spline-like coefficients of the Hermite interpolant of `data`.
    pub fn coefficients_for(&self, data: &HermiteData<T>) -> Result<Vec<Vec<T>>> {
        if data.rows().len() != self.vertices.len() {
            return Err(invalid("data rows do not match the vertex count"));
        }
        self.vertices.iter().zip(data.rows()).map(|(vb, row)| vb.gamma.solve(row)).collect()
    }

    fn check_coefficients(&self, coeffs: &[Vec<T>]) -> Result<()> {
        if coeffs.len() != self.vertices.len() {
            return Err(invalid(format!("{} coefficient rows for {} vertices", coeffs.len(), self.vertices.len())));
        }
        for (i, (row, vb)) in coeffs.iter().zip(&self.vertices).enumerate() {
            if row.len() != vb.functions.len() {
                return Err(invalid(format!("coefficient row {i} has {} entries, expected {}", row.len(), vb.functions.len())));
            }
        }
        Ok(())
    }
}

fn sample_points<T: Scalar>(domain: Interval<T>, samples: usize) -> impl Iterator<Item = T> {
    let last = samples.max(2) - 1;
    let step = domain.length() / T::from_u64(last as u64);
    (0..=last).map(move |k| if k == last { domain.b() } else { domain.a() + step * T::from_u64(k as u64) })
}

/// `max_x |sum N_{i,alpha}(x) - 1|` over `samples` equally spaced points.
pub fn partition_of_unity_check<T: Scalar>(basis: &BSplineLikeBasis<T>, samples: usize) -> f64 {
    sample_points(basis.partition.domain(), samples)
        .map(|x| (basis.sum_at(x).expect("sample inside domain") - T::one()).to_f64().abs())
        .fold(0.0, f64::max)
}

/// Smallest sampled value of any basis function, with its location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonnegativityReport {
    pub min_value: f64,
    pub vertex: usize,
    pub alpha: MultiIndex,
    pub x: f64,
}

impl NonnegativityReport {
    /// True when sampled negativity stays within `tol`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.min_value >= -tol
    }
}

pub fn nonnegativity_check<T: Scalar>(basis: &BSplineLikeBasis<T>, samples: usize) -> NonnegativityReport {
    let points: Vec<T> = sample_points(basis.partition.domain(), samples).collect();
    let mut worst = NonnegativityReport { min_value: f64::INFINITY, vertex: 0, alpha: MultiIndex::new(0, 0), x: 0.0 };
    for (i, alpha, f) in basis.iter() {
        for &x in &points {
            let v = f.value(x).expect("sample inside domain").to_f64();
            if v < worst.min_value {
                worst = NonnegativityReport { min_value: v, vertex: i, alpha, x: x.to_f64() };
            }
        }
    }
    worst
}

/// `mu_{i,·}` with `Gamma_i mu = f_row`.
pub fn hermite_to_bspline_coeffs<T: Scalar>(partition: &RefinedPartition<T>, i: usize, f_row: &[T]) -> Result<Vec<T>> {
    gamma_table(partition, i)?.solve(f_row)
}

/// Control polynomial `T_i` on `S_i` with B-ordinates `mu`.
pub fn control_polynomial_t<T: Scalar>(basis: &BSplineLikeBasis<T>, i: usize, mu: &[T]) -> Result<BernsteinPiece<T>> {
    check_vertex(&basis.partition, i)?;
    let vb = &basis.vertices[i];
    if mu.len() != vb.functions.len() {
        return Err(invalid(format!("control polynomial at vertex {i} needs {} coefficients, got {}", vb.functions.len(), mu.len())));
    }
    BernsteinPiece::new(vb.control.interval(), mu.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::PhiMap;
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    fn uniform(n: usize, phi: Vec<usize>) -> RefinedPartition<f64> {
        RefinedPartition::uniform(Interval::new(0.0, 1.0).unwrap(), n, PhiMap::new(phi).unwrap()).unwrap()
    }

    fn uniform_q(n: usize, phi: Vec<usize>) -> RefinedPartition<Q> {
        RefinedPartition::uniform(Interval::new(Q::from_integer(0), Q::from_integer(1)).unwrap(), n, PhiMap::new(phi).unwrap())
            .unwrap()
    }

    #[test]
    fn classical_basis_kronecker_and_support() {
        let p = uniform(4, vec![3, 4, 2, 3, 4]);
        for i in 0..=4 {
            for j in 0..p.phi()[i] {
                let b = classical_hermite_basis(&p, i, j).unwrap();
                for l in 0..=4 {
                    for k in 0..p.phi()[l] {
                        let expect = if (i, j) == (l, k) { 1.0 } else { 0.0 };
                        assert!((b.eval(p.vertex(l), k).unwrap() - expect).abs() < 1e-9);
                    }
                }
                for (k, piece) in b.pieces().iter().enumerate() {
                    let outside = k + 2 < 2 * i || k >= 2 * i + 2;
                    if outside {
                        assert!(piece.ordinates().iter().all(|&c| c == 0.0), "i={i} j={j} piece {k}");
                    }
                }
            }
        }
        assert!(classical_hermite_basis(&p, 2, 2).is_err());
        assert!(classical_hermite_basis(&p, 5, 0).is_err());
    }

    #[test]
    fn classical_value_functions_sum_to_one() {
        let p = uniform(3, vec![3, 4, 3, 2]);
        let mut sum = Spline::zero(&p);
        for i in 0..=3 {
            sum.axpy(1.0, &classical_hermite_basis(&p, i, 0).unwrap()).unwrap();
        }
        for k in 0..=30 {
            assert!((sum.value(k as f64 / 30.0).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn control_interval_examples() {
        let h = 0.25;
        let p = uniform(4, vec![2, 2, 3, 2, 2]);
        let c = control_interval(&p, 1).unwrap();
        assert!((c.s1 - (0.25 - h / 4.0)).abs() < 1e-15 && (c.s2 - (0.25 + h / 4.0)).abs() < 1e-15);
        let c = control_interval(&p, 2).unwrap();
        assert!((c.s1 - (0.5 - h / 3.0)).abs() < 1e-15 && (c.s2 - (0.5 + h / 3.0)).abs() < 1e-15);
        assert_eq!(control_interval(&p, 0).unwrap().s1, 0.0);
        assert_eq!(control_interval(&p, 4).unwrap().s2, 1.0);
        let p1 = uniform(2, vec![2, 1, 2]);
        assert!(matches!(control_interval(&p1, 1), Err(Error::Unsupported(_))));
        assert!(BSplineLikeBasis::new(&p1).is_err());
    }

    #[test]
    fn gamma_rows_sum_exactly_in_rationals() {
        let p = uniform_q(6, vec![3, 4, 2, 3, 4, 4, 3]);
        for i in 0..=6 {
            let sums = gamma_table(&p, i).unwrap().row_sums();
            assert_eq!(sums[0], Q::from_integer(1));
            assert!(sums[1..].iter().all(|s| *s == Q::from_integer(0)));
        }
    }

    #[test]
    fn gamma_phi_two_uniform() {
        let p = uniform_q(4, vec![2, 2, 2, 2, 2]);
        let h = Q::new(1, 4);
        let g = gamma_table(&p, 2).unwrap();
        assert_eq!(g.entries()[0], vec![Q::new(1, 2), Q::new(1, 2)]);
        assert_eq!(g.entries()[1], vec![-Q::from_integer(2) / h, Q::from_integer(2) / h]);
    }

    #[test]
    fn coefficients_examples() {
        let p = uniform_q(4, vec![2, 2, 2, 2, 2]);
        let h = Q::new(1, 4);
        let mu = hermite_to_bspline_coeffs(&p, 2, &[Q::from_integer(1), Q::from_integer(2)]).unwrap();
        assert_eq!(mu, vec![Q::from_integer(1) - h / 2, Q::from_integer(1) + h / 2]);
        let p = uniform(4, vec![3, 4, 3, 4, 3]);
        let mu = hermite_to_bspline_coeffs(&p, 1, &[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(mu.iter().all(|m: &f64| (m - 2.0).abs() < 1e-12));
        assert!(hermite_to_bspline_coeffs(&p, 1, &[2.0, 0.0]).is_err());
    }

    #[test]
    fn bspline_like_defining_data() {
        let p = uniform(4, vec![3, 4, 3, 4, 3]);
        for i in 0..=4 {
            let g = gamma_table(&p, i).unwrap();
            for alpha in MultiIndex::all(p.phi()[i] - 1) {
                let n = bspline_like(&p, i, alpha).unwrap();
                for j in 0..p.phi()[i] {
                    let tol = 1e-9 * g.get(j, alpha).abs().max(1.0);
                    assert!((n.eval(p.vertex(i), j).unwrap() - g.get(j, alpha)).abs() < tol);
                }
            }
        }
        assert!(bspline_like(&p, 1, MultiIndex::new(1, 1)).is_err());
    }

    #[test]
    fn bspline_like_superposition_of_classical_basis() {
        let p: RefinedPartition<f64> = RefinedPartition::new(vec![0.0, 0.3, 0.7, 1.0], vec![0.12, 0.55, 0.8], PhiMap::new(vec![2, 4, 3, 3]).unwrap()).unwrap();
        for i in 0..=3 {
            let g = gamma_table(&p, i).unwrap();
            for alpha in MultiIndex::all(p.phi()[i] - 1) {
                let direct = bspline_like(&p, i, alpha).unwrap();
                let mut combo = Spline::zero(&p);
                for j in 0..p.phi()[i] {
                    combo.axpy(g.get(j, alpha), &classical_hermite_basis(&p, i, j).unwrap()).unwrap();
                }
                for (a, b) in direct.pieces().iter().zip(combo.pieces()) {
                    for (x, y) in a.ordinates().iter().zip(b.ordinates()) {
                        assert!((*x - *y).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_of_unity_and_negative_control() {
        let p = uniform(4, vec![3, 4, 3, 4, 3]);
        let basis = BSplineLikeBasis::new(&p).unwrap();
        assert_eq!(basis.len(), 17);
        assert!(partition_of_unity_check(&basis, 1000) < 1e-12);
        let drop = basis.function(2, MultiIndex::new(1, 1));
        let mut worst: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            let partial = basis.sum_at(x).unwrap() - drop.value(x).unwrap();
            worst = worst.max((partial - 1.0).abs());
            peak = peak.max(drop.value(x).unwrap());
        }
        assert!(worst > 0.1);
        assert!((worst - peak).abs() < 1e-12);
    }

    #[test]
    fn smallest_configuration() {
        let p = uniform(1, vec![3, 4]);
        let basis = BSplineLikeBasis::new(&p).unwrap();
        assert!(partition_of_unity_check(&basis, 1000) < 1e-12);
        assert!(nonnegativity_check(&basis, 1000).is_nonnegative(1e-12));
    }

    #[test]
    fn control_polynomial_tangency() {
        let p = uniform(4, vec![3, 4, 3, 4, 3]);
        let basis = BSplineLikeBasis::new(&p).unwrap();
        let coeffs: Vec<Vec<f64>> = (0..=4)
            .map(|i| (0..p.phi()[i]).map(|k| ((i * 7 + k * 3) % 5) as f64 - 1.7).collect())
            .collect();
        let s = basis.spline_from_coefficients(&coeffs).unwrap();
        for i in 0..=4 {
            let t = control_polynomial_t(&basis, i, &coeffs[i]).unwrap();
            let v = p.vertex(i);
            assert!((t.eval(v) - s.eval(v, 0).unwrap()).abs() < 1e-11);
            let scale = s.eval(v, 1).unwrap().abs().max(1.0);
            assert!((t.derivative_at(v, 1) - s.eval(v, 1).unwrap()).abs() < 1e-11 * scale);
        }
        assert!(control_polynomial_t(&basis, 0, &[1.0]).is_err());
        let c = control_polynomial_t(&basis, 1, &[0.5; 4]).unwrap();
        assert!((c.eval(0.3) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn control_polynomial_matches_prop_construction() {
        let p = uniform(4, vec![3, 4, 3, 4, 3]);
        let basis = BSplineLikeBasis::new(&p).unwrap();
        let coeffs: Vec<Vec<f64>> = (0..=4).map(|i| (0..p.phi()[i]).map(|k| (i as f64 - k as f64).sin()).collect()).collect();
        let s = basis.spline_from_coefficients(&coeffs).unwrap();
        for i in 0..4 {
            let phi = p.phi()[i];
            let t = control_polynomial_t(&basis, i, &coeffs[i]).unwrap();
            let q = s.piece(i, 0).control_polynomial(p.vertex(i), phi - 1, theta::<f64>(phi)).unwrap();
            let q = q.subdivide(t.interval().to_owned());
            for (a, b) in q.ordinates().iter().zip(t.ordinates()) {
                assert!((a - b).abs() < 1e-10, "vertex {i}: {a} vs {b}");
            }
        }
    }
}
