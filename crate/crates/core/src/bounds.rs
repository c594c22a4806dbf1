//! Bound formulas relating `α(H)` to degrees, vertex connectivity, the isoperimetric
//! number, diameter, edge connectivity and design parameters, and their verification
//! against an estimate of `α(H)`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial_u64;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::invariants::{edge_connectivity, isoperimetric_number, vertex_connectivity};
use crate::scalar::Scalar;

/// Falling-factorial binomial `x(x−1)⋯(x−m+1)/m!` for real `x`.
pub fn gen_binomial<T: Scalar>(x: T, m: usize) -> T {
    let mut acc = T::one();
    for i in 0..m {
        acc = acc * (x - T::of_usize(i)) / T::of_usize(i + 1);
    }
    acc
}

fn ratio_to<T: Scalar>(r: Ratio<u64>) -> T {
    T::of(*r.numer() as f64) / T::of(*r.denom() as f64)
}

/// `min_e (Σ_{v∈e} d(v) − k) / k`; needs at least two edges.
pub fn degree_bound<T: Scalar>(h: &Hypergraph) -> Result<T> {
    if h.edge_count() < 2 {
        return Err(Error::InvalidParameter(
            "degree bound needs more than one edge".into(),
        ));
    }
    let d = h.degrees();
    let k = h.k();
    let best = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| d[v - 1]).sum::<usize>() - k)
        .min()
        .expect("at least two edges");
    Ok(T::of_usize(best) / T::of_usize(k))
}

/// The vertex-connectivity bound with an explicit `v`:
/// `C(n−2,k−2) − [C(n−v−1,k−1) − C((n−v)/2 − 1, k−1)]·(k−1)/(n−1)`.
///
/// The middle binomial uses [`gen_binomial`] clamped below at zero; with `floor_half` the
/// argument `(n−v)/2` is rounded down first.
pub fn cutset_formula<T: Scalar>(n: usize, k: usize, v: usize, floor_half: bool) -> T {
    let lead = T::of(binomial_u64(n - 2, k - 2) as f64);
    let outer = T::of(binomial_u64(n - v - 1, k - 1) as f64);
    let half = if floor_half {
        T::of_usize((n - v) / 2)
    } else {
        T::of_usize(n - v) / T::of(2.0)
    };
    let inner = gen_binomial(half - T::one(), k - 1).max(T::zero());
    lead - (outer - inner) * T::of_usize(k - 1) / T::of_usize(n - 1)
}

/// The 2-graph form of the vertex-connectivity bound, `(n + v − 2) / (2(n − 1))`.
pub fn cutset_remark_bound<T: Scalar>(n: usize, v: usize) -> T {
    T::of_usize(n + v - 2) / T::of_usize(2 * (n - 1))
}

/// Vertex-connectivity upper bound, or `None` when `H` has no vertex cut.
pub fn cutset_bound<T: Scalar>(h: &Hypergraph) -> Result<Option<T>> {
    Ok(vertex_connectivity(h)?.map(|(v, _)| cutset_formula(h.n(), h.k(), v, false)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheegerBounds<T> {
    /// `(k/2)·i(H)`.
    pub upper: T,
    /// `Δ − √(Δ² − i(H)²)`.
    pub lower: T,
}

/// Isoperimetric sandwich; defined for `k ≥ 3`.
pub fn cheeger_bounds<T: Scalar>(h: &Hypergraph) -> Result<CheegerBounds<T>> {
    if h.k() < 3 {
        return Err(Error::InvalidParameter(
            "isoperimetric bounds are stated for k >= 3".into(),
        ));
    }
    let (i, _) = isoperimetric_number(h)?;
    Ok(cheeger_from(
        h.k(),
        h.degree_profile().max_degree,
        ratio_to(i),
    ))
}

fn cheeger_from<T: Scalar>(k: usize, max_degree: usize, i: T) -> CheegerBounds<T> {
    let delta = T::of_usize(max_degree);
    let radicand = (delta * delta - i * i).max(T::zero());
    CheegerBounds {
        upper: T::of_usize(k) / T::of(2.0) * i,
        lower: delta - radicand.sqrt(),
    }
}

/// `4 / (n²(k−1)·diam(H))`; needs a connected `H` on at least two vertices.
pub fn diameter_lower_bound<T: Scalar>(h: &Hypergraph) -> Result<T> {
    if h.n() < 2 {
        return Err(Error::InvalidParameter(
            "diameter bound needs n >= 2".into(),
        ));
    }
    let diam = h
        .diameter()
        .ok_or_else(|| Error::InvalidParameter("hypergraph is disconnected".into()))?;
    let n = T::of_usize(h.n());
    Ok(T::of(4.0) / (n * n * T::of_usize(h.k() - 1) * T::of_usize(diam)))
}

/// `λ` when `H` is a 2-design and `H − v` is connected for every vertex `v`.
pub fn design_alpha<T: Scalar>(h: &Hypergraph) -> Option<T> {
    let params = h.check_two_design()?;
    let no_cut_vertex = (1..=h.n()).all(|v| {
        h.remove_vertices(&[v])
            .map(|rest| rest.is_connected())
            .unwrap_or(false)
    });
    no_cut_vertex.then(|| T::of_usize(params.lambda))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable(String),
}

impl Status {
    fn check(holds: bool) -> Self {
        if holds {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn na(reason: impl Into<String>) -> Self {
        Status::NotApplicable(reason.into())
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }
}

/// A bound value (when it could be evaluated) and the outcome of its comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck<T> {
    pub bound: Option<T>,
    pub status: Status,
}

impl<T> BoundCheck<T> {
    fn new(bound: Option<T>, status: Status) -> Self {
        Self { bound, status }
    }
}

/// Invariants consumed by the bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub components: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub diameter: Option<usize>,
    pub isoperimetric: Option<Ratio<u64>>,
    pub edge_connectivity: Option<usize>,
    pub vertex_connectivity: Option<usize>,
    pub design: Option<crate::hypergraph::DesignParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<T> {
    pub alpha_estimate: T,
    pub slack: T,
    pub invariants: InvariantSummary,
    /// Connected iff `α > 0` (judged as `α > slack`).
    pub connectivity: BoundCheck<T>,
    pub degree_upper: BoundCheck<T>,
    pub cutset_upper: BoundCheck<T>,
    /// The vertex-connectivity bound with `⌊(n−v)/2⌋`, present only when it differs.
    pub cutset_upper_floor: Option<T>,
    pub cheeger_upper: BoundCheck<T>,
    pub cheeger_lower: BoundCheck<T>,
    pub diameter_lower: BoundCheck<T>,
    /// `e(H)` as the bound, checked against `(n/k)·α`.
    pub edge_connectivity: BoundCheck<T>,
    pub scaled_alpha: T,
    pub design_value: BoundCheck<T>,
}

impl<T> BoundReport<T> {
    pub fn checks(&self) -> [(&'static str, &BoundCheck<T>); 8] {
        [
            ("connectivity", &self.connectivity),
            ("degree_upper", &self.degree_upper),
            ("cutset_upper", &self.cutset_upper),
            ("cheeger_upper", &self.cheeger_upper),
            ("cheeger_lower", &self.cheeger_lower),
            ("diameter_lower", &self.diameter_lower),
            ("edge_connectivity", &self.edge_connectivity),
            ("design_value", &self.design_value),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, c)| !c.status.is_fail())
    }
}

fn is_complete(h: &Hypergraph) -> bool {
    crate::combinatorics::binomial(h.n() as u64, h.k() as u64) == Some(h.edge_count() as u128)
}

/// Evaluates every applicable bound against `alpha` with additive `slack`.
pub fn verify_all<T: Scalar>(h: &Hypergraph, alpha: T, slack: T) -> BoundReport<T> {
    let n = h.n();
    let k = h.k();
    let profile = h.degree_profile();
    let components = h.components().len();
    let connected = components == 1;
    let diameter = h.diameter();

    let (iso, econn, vconn, enum_note) = if n < 2 {
        (
            None,
            None,
            None,
            Some("needs at least two vertices".to_string()),
        )
    } else {
        match (
            isoperimetric_number(h),
            edge_connectivity(h),
            vertex_connectivity(h),
        ) {
            (Ok((i, _)), Ok((e, _)), Ok(v)) => (Some(i), Some(e), Some(v), None),
            (Err(err), _, _) | (_, Err(err), _) | (_, _, Err(err)) => {
                (None, None, None, Some(err.to_string()))
            }
        }
    };

    let connectivity = BoundCheck::new(
        None,
        Status::check(if connected {
            alpha > slack
        } else {
            alpha <= slack
        }),
    );

    let degree_upper = match degree_bound::<T>(h) {
        Ok(b) => BoundCheck::new(Some(b), Status::check(alpha <= b + slack)),
        Err(_) => BoundCheck::new(None, Status::na("needs more than one edge")),
    };

    let mut cutset_upper_floor = None;
    let cutset_upper = match (&vconn, &enum_note) {
        (_, Some(note)) => BoundCheck::new(None, Status::na(note.clone())),
        (Some(None), _) | (None, _) => BoundCheck::new(None, Status::na("no vertex cut")),
        (Some(Some((v, _))), _) => {
            let b = cutset_formula::<T>(n, k, *v, false);
            if (n - v) % 2 == 1 {
                let fl = cutset_formula::<T>(n, k, *v, true);
                if fl != b {
                    cutset_upper_floor = Some(fl);
                }
            }
            if is_complete(h) {
                BoundCheck::new(
                    Some(b),
                    Status::na("complete hypergraph: vertex-cut convention conflict"),
                )
            } else {
                BoundCheck::new(Some(b), Status::check(alpha <= b + slack))
            }
        }
    };

    let (cheeger_upper, cheeger_lower) = match iso {
        None => {
            let note = enum_note.clone().unwrap_or_default();
            (
                BoundCheck::new(None, Status::na(note.clone())),
                BoundCheck::new(None, Status::na(note)),
            )
        }
        Some(i) => {
            let cb = cheeger_from::<T>(k, profile.max_degree, ratio_to(i));
            let reason = if k < 3 {
                Some("stated for k >= 3")
            } else if !connected {
                Some("hypergraph is disconnected")
            } else {
                None
            };
            match reason {
                Some(r) => (
                    BoundCheck::new(Some(cb.upper), Status::na(r)),
                    BoundCheck::new(Some(cb.lower), Status::na(r)),
                ),
                None => (
                    BoundCheck::new(Some(cb.upper), Status::check(alpha <= cb.upper + slack)),
                    BoundCheck::new(Some(cb.lower), Status::check(alpha >= cb.lower - slack)),
                ),
            }
        }
    };

    let diameter_lower = match diameter_lower_bound::<T>(h) {
        Ok(b) => BoundCheck::new(Some(b), Status::check(alpha >= b - slack)),
        Err(e) => BoundCheck::new(None, Status::na(e.to_string())),
    };

    let scaled_alpha = T::of_usize(n) / T::of_usize(k) * alpha;
    let edge_check = match econn {
        Some(e) => {
            let e_t = T::of_usize(e);
            BoundCheck::new(Some(e_t), Status::check(e_t >= scaled_alpha - slack))
        }
        None => BoundCheck::new(None, Status::na(enum_note.clone().unwrap_or_default())),
    };

    let design_value = match design_alpha::<T>(h) {
        Some(l) => BoundCheck::new(Some(l), Status::check((alpha - l).abs() <= slack)),
        None => BoundCheck::new(None, Status::na("not a 2-design without cut vertex")),
    };

    BoundReport {
        alpha_estimate: alpha,
        slack,
        invariants: InvariantSummary {
            components,
            max_degree: profile.max_degree,
            min_degree: profile.min_degree,
            diameter,
            isoperimetric: iso,
            edge_connectivity: econn,
            vertex_connectivity: vconn.flatten().map(|(v, _)| v),
            design: h.check_two_design(),
        },
        connectivity,
        degree_upper,
        cutset_upper,
        cutset_upper_floor,
        cheeger_upper,
        cheeger_lower,
        diameter_lower,
        edge_connectivity: edge_check,
        scaled_alpha,
        design_value,
    }
}
