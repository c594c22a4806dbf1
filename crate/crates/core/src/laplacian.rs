//! Laplacian tensor forms evaluated edge by edge.
//!
//! The order-k tensor is never materialised: each edge `e` contributes
//! `L(e)xᵏ = Σ_{v∈e} x_vᵏ − k·Π_{v∈e} x_v`, so every quantity below is linear in `|E|`.
//!
//! The simplex coordinates `y = x^[k]` turn the form into
//! `Σ_v d(v)·y_v − k·Σ_e (Π_{v∈e} y_v)^{1/k}`: a linear term minus a nonnegative sum of
//! concave geometric means.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

/// Nonnegative vector in the original coordinates `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point<T>(Vec<T>);

impl<T: Scalar> Point<T> {
    pub fn new(x: Vec<T>) -> Result<Self> {
        if let Some((i, v)) = x
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < T::zero())
        {
            return Err(Error::Infeasible(format!(
                "coordinate {} is {v}, expected a finite nonnegative value",
                i + 1
            )));
        }
        Ok(Self(x))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![T::one(); n])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ x_iᵏ`.
    pub fn power_sum(&self, k: usize) -> T {
        self.0.iter().map(|v| v.ipow(k)).sum()
    }

    /// Whether `Σ x_iᵏ = 1` within the unit-sum tolerance.
    pub fn is_feasible(&self, k: usize) -> bool {
        (self.power_sum(k) - T::one()).abs() <= T::unit_sum_tol()
    }

    /// `y = x^[k]`; requires a feasible point.
    pub fn to_simplex(&self, k: usize) -> Result<SimplexPoint<T>> {
        SimplexPoint::new(self.0.iter().map(|v| v.ipow(k)).collect())
    }
}

/// Probability vector `y` (nonnegative, summing to one).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint<T>(Vec<T>);

impl<T: Scalar> SimplexPoint<T> {
    pub fn new(y: Vec<T>) -> Result<Self> {
        if let Some((i, v)) = y
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < T::zero())
        {
            return Err(Error::Infeasible(format!(
                "weight {} is {v}, expected a finite nonnegative value",
                i + 1
            )));
        }
        let total: T = y.iter().copied().sum();
        if (total - T::one()).abs() > T::unit_sum_tol() {
            return Err(Error::Infeasible(format!("weights sum to {total}, not 1")));
        }
        Ok(Self(y))
    }

    /// Uniform weight on the given vertex ids (1-based) of an `n`-vertex hypergraph.
    pub fn uniform_on(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut y = vec![T::zero(); n];
        let w = T::one() / T::of_usize(vertices.len());
        for &v in vertices {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            y[v - 1] = w;
        }
        Self::new(y)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    /// 1-based ids of the strictly positive coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| **v > T::zero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `x = y^[1/k]`.
    pub fn to_point(&self, k: usize) -> Point<T> {
        Point(self.0.iter().map(|v| v.root(k)).collect())
    }
}

/// `L(e)xᵏ = Σ_{v∈e} x_vᵏ − k·Π_{v∈e} x_v` for an edge of 1-based ids.
pub fn edge_term<T: Scalar>(edge: &[usize], x: &[T]) -> T {
    let k = edge.len();
    let mut powers = T::zero();
    let mut product = T::one();
    for &v in edge {
        let xv = x[v - 1];
        powers += xv.ipow(k);
        product *= xv;
    }
    powers - T::of_usize(k) * product
}

/// `Lxᵏ = Σ_e L(e)xᵏ`.
pub fn laplacian_form<T: Scalar>(h: &Hypergraph, x: &[T]) -> T {
    assert_eq!(x.len(), h.n(), "point length must equal vertex count");
    h.edges().iter().map(|e| edge_term(e, x)).sum()
}

/// `(Lx^{k−1})_i = d(v_i)·x_i^{k−1} − Σ_{e∋i} Π_{v∈e∖i} x_v`.
pub fn laplacian_apply<T: Scalar>(h: &Hypergraph, x: &[T]) -> Vec<T> {
    assert_eq!(x.len(), h.n(), "point length must equal vertex count");
    let k = h.k();
    let mut out = vec![T::zero(); h.n()];
    for edge in h.edges() {
        for &i in edge {
            let mut others = T::one();
            for &v in edge {
                if v != i {
                    others *= x[v - 1];
                }
            }
            out[i - 1] += x[i - 1].ipow(k - 1) - others;
        }
    }
    out
}

/// Geometric mean `(Π_{v∈e} (y_v + eps))^{1/k}`.
#[inline]
pub fn edge_geometric_mean<T: Scalar>(edge: &[usize], y: &[T], eps: T) -> T {
    let product = edge.iter().fold(T::one(), |p, &v| p * (y[v - 1] + eps));
    product.root(edge.len())
}

/// `Σ_v d(v)·y_v − k·Σ_e GM_e(y)`, equal to `Lxᵏ` at `x = y^[1/k]`.
pub fn objective_y<T: Scalar>(h: &Hypergraph, y: &[T]) -> T {
    objective_y_smoothed(h, y, T::zero())
}

/// The smoothed objective `Σ_v d(v)·y_v − k·Σ_e GM_e(y + eps·𝟙)`.
pub fn objective_y_smoothed<T: Scalar>(h: &Hypergraph, y: &[T], eps: T) -> T {
    assert_eq!(y.len(), h.n(), "point length must equal vertex count");
    let k = T::of_usize(h.k());
    let mut linear = T::zero();
    let mut means = T::zero();
    for edge in h.edges() {
        for &v in edge {
            linear += y[v - 1];
        }
        means += edge_geometric_mean(edge, y, eps);
    }
    linear - k * means
}

/// Exact gradient of [`objective_y_smoothed`]:
/// `d(v) − Σ_{e∋v} GM_e(y + eps·𝟙) / (y_v + eps)`.
///
/// With `eps = 0` every coordinate on an edge must be positive.
pub fn gradient_y<T: Scalar>(h: &Hypergraph, y: &[T], eps: T) -> Result<Vec<T>> {
    assert_eq!(y.len(), h.n(), "point length must equal vertex count");
    if eps < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "smoothing {eps} is negative"
        )));
    }
    let mut grad = vec![T::zero(); h.n()];
    for edge in h.edges() {
        let gm = edge_geometric_mean(edge, y, eps);
        for &v in edge {
            let denom = y[v - 1] + eps;
            if denom <= T::zero() {
                return Err(Error::Infeasible(format!(
                    "gradient undefined: weight of vertex {v} is zero on edge {edge:?}"
                )));
            }
            grad[v - 1] += T::one() - gm / denom;
        }
    }
    Ok(grad)
}

/// Arithmetic-geometric mean gap with the two refined lower bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgmBounds<T> {
    /// `A(a) − G(a)`.
    pub gap: T,
    /// `(1/n)·Σ_{j≤⌊n/2⌋} (√b_j − √b_{n+1−j})²` with `b` sorted descending.
    pub rhs_paired: T,
    /// `(1/((n−1)n))·Σ_{i<j} (√a_i − √a_j)²`.
    pub rhs_all_pairs: T,
}

pub fn agm_bounds<T: Scalar>(a: &[T]) -> Result<AgmBounds<T>> {
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two entries".into()));
    }
    if let Some(v) = a.iter().find(|v| !v.is_finite() || **v < T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "entry {v} is negative or not finite"
        )));
    }
    let nf = T::of_usize(n);
    let arithmetic = a.iter().copied().sum::<T>() / nf;
    let geometric = if a.iter().any(|v| v.is_zero()) {
        T::zero()
    } else {
        (a.iter().map(|v| v.ln()).sum::<T>() / nf).exp()
    };

    let mut b = a.to_vec();
    b.sort_by(|p, q| q.partial_cmp(p).expect("finite entries"));
    let paired = (0..n / 2)
        .map(|j| {
            let d = b[j].sqrt() - b[n - 1 - j].sqrt();
            d * d
        })
        .sum::<T>()
        / nf;

    let mut all_pairs = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            let d = a[i].sqrt() - a[j].sqrt();
            all_pairs += d * d;
        }
    }
    all_pairs /= T::of_usize((n - 1) * n);

    Ok(AgmBounds {
        gap: arithmetic - geometric,
        rhs_paired: paired,
        rhs_all_pairs: all_pairs,
    })
}
