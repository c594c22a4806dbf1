//! Analytic connectivity `α(H)`.
//!
//! For each excluded vertex `j` the form `Lxᵏ` is minimised over `x ≥ 0`, `Σ xᵢᵏ = 1`,
//! `x_j = 0`. In the coordinates `y = x^[k]` this is a convex problem on a face of the
//! simplex, solved here by entropic mirror descent on a smoothed objective. Convexity makes
//! the first-order (KKT) residual a global optimality certificate.

mod oracle;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::laplacian::{laplacian_form, Point, SimplexPoint};
use crate::scalar::Scalar;

pub use oracle::{alpha_oracle, grid_oracle, grid_point_count, MAX_GRID_POINTS};

/// Iterations between convergence checks.
pub const CHECK_WINDOW: usize = 50;

/// Weights below this fraction of the largest weight are zeroed when reporting.
pub const SUPPORT_COLLAPSE: f64 = 1e-14;

/// Weights below this multiple of the final smoothing are zeroed as well: under smoothing
/// `eps` a vanishing coordinate settles at `O(eps)` instead of decaying to zero.
pub const SMOOTHING_COLLAPSE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Convergence tolerance on the objective.
    pub tol: f64,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// Random starts in addition to the uniform one.
    pub restarts: usize,
    pub eps_initial: f64,
    /// The smoothing halves after this many iterations.
    pub eps_halving_interval: usize,
    pub eps_min: f64,
    pub seed: u64,
    /// Step scale: the step at iteration `t` is `step0 / √t`.
    pub step0: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 50_000,
            restarts: 8,
            eps_initial: 1e-3,
            eps_halving_interval: 500,
            eps_min: 1e-12,
            seed: 0,
            step0: 1.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return bad("tol must be positive");
        }
        if self.max_iter < 1 {
            return bad("max_iter must be at least 1");
        }
        if !self.step0.is_finite() || self.step0 <= 0.0 {
            return bad("step0 must be positive");
        }
        if !self.eps_initial.is_finite()
            || !self.eps_min.is_finite()
            || self.eps_min < 0.0
            || self.eps_min > self.eps_initial
        {
            return bad("smoothing schedule needs 0 <= eps_min <= eps_initial");
        }
        if self.eps_halving_interval < 1 {
            return bad("eps_halving_interval must be at least 1");
        }
        Ok(())
    }

    /// Smoothing in effect at iteration `t` (1-based).
    pub fn eps_at(&self, t: usize) -> f64 {
        let halvings = ((t - 1) / self.eps_halving_interval).min(1100) as i32;
        (self.eps_initial * 0.5f64.powi(halvings)).max(self.eps_min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome<T> {
    /// Excluded vertex (1-based).
    pub excluded_j: usize,
    /// `Lxᵏ` at `minimizer_x`.
    pub value: T,
    pub minimizer_x: Point<T>,
    pub kkt_residual: T,
    /// Iterations summed over all starts.
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult<T> {
    pub alpha: T,
    /// Smallest excluded vertex whose value is within `tol` of `alpha`.
    pub argmin_j: usize,
    pub per_j: Vec<SolveOutcome<T>>,
}

impl<T: Scalar> AlphaResult<T> {
    pub fn all_converged(&self) -> bool {
        self.per_j.iter().all(|o| o.converged)
    }
}

/// The active part of one subproblem: edges avoiding `j`, flattened.
struct Slice<T> {
    n: usize,
    k: usize,
    j: usize,
    degrees: Vec<T>,
    members: Vec<usize>,
    collapse_floor: T,
}

impl<T: Scalar> Slice<T> {
    fn new(h: &Hypergraph, j: usize, eps_min: f64) -> Self {
        let members = h
            .edges()
            .iter()
            .filter(|e| e.binary_search(&(j + 1)).is_err())
            .flat_map(|e| e.iter().map(|v| v - 1))
            .collect();
        Self {
            n: h.n(),
            k: h.k(),
            j,
            degrees: h.degrees().into_iter().map(T::of_usize).collect(),
            members,
            collapse_floor: T::of(SMOOTHING_COLLAPSE * eps_min),
        }
    }

    fn edges(&self) -> std::slice::ChunksExact<'_, usize> {
        self.members.chunks_exact(self.k)
    }

    fn geometric_mean(&self, edge: &[usize], y: &[T], eps: T) -> T {
        edge.iter()
            .fold(T::one(), |p, &v| p * (y[v] + eps))
            .root(self.k)
    }

    /// Unsmoothed objective; edges through `j` have zero geometric mean on the slice.
    fn objective(&self, y: &[T]) -> T {
        let linear: T = self.degrees.iter().zip(y).map(|(d, w)| *d * *w).sum();
        let means: T = self
            .edges()
            .map(|e| self.geometric_mean(e, y, T::zero()))
            .sum();
        linear - T::of_usize(self.k) * means
    }

    fn smoothed_gradient(&self, y: &[T], eps: T, grad: &mut [T]) {
        grad.copy_from_slice(&self.degrees);
        for edge in self.edges() {
            let gm = self.geometric_mean(edge, y, eps);
            for &v in edge {
                grad[v] -= gm / (y[v] + eps);
            }
        }
    }
}

// One multiplicative step y_v <- y_v exp(-eta (g_v - min g)), renormalised over v != j.
fn mirror_step<T: Scalar>(y: &mut [T], grad: &[T], eta: T, j: usize, floor: T) {
    let shift = grad
        .iter()
        .enumerate()
        .filter(|(v, _)| *v != j)
        .map(|(_, g)| *g)
        .fold(T::infinity(), T::min);
    let mut total = T::zero();
    for (v, w) in y.iter_mut().enumerate() {
        if v == j {
            continue;
        }
        *w = (*w * (-(eta * (grad[v] - shift))).exp()).max(floor);
        total += *w;
    }
    for (v, w) in y.iter_mut().enumerate() {
        if v != j {
            *w /= total;
        }
    }
}

/// Zeroes weights below `max(SUPPORT_COLLAPSE·max y, floor)` and renormalises.
fn collapse_support<T: Scalar>(y: &[T], floor: T) -> Vec<T> {
    let max = y.iter().copied().fold(T::zero(), T::max);
    let cutoff = (max * T::of(SUPPORT_COLLAPSE)).max(floor);
    let mut out: Vec<T> = y
        .iter()
        .map(|&w| if w < cutoff { T::zero() } else { w })
        .collect();
    let total: T = out.iter().copied().sum();
    out.iter_mut().for_each(|w| *w /= total);
    out
}

struct StartResult<T> {
    y: Vec<T>,
    value: T,
    kkt: T,
    iterations: usize,
    converged: bool,
}

fn run_start<T: Scalar>(
    slice: &Slice<T>,
    mut y: Vec<T>,
    cfg: &SolverConfig,
) -> Result<StartResult<T>> {
    let tol = T::of(cfg.tol);
    let floor = T::min_positive_value().sqrt();
    let mut grad = vec![T::zero(); slice.n];

    let mut best = evaluate(slice, &y)?;
    let mut previous = best.value;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iter {
        iterations += 1;
        let eps = T::of(cfg.eps_at(iterations));
        let eta = T::of(cfg.step0 / (iterations as f64).sqrt());
        slice.smoothed_gradient(&y, eps, &mut grad);
        mirror_step(&mut y, &grad, eta, slice.j, floor);

        if iterations % CHECK_WINDOW == 0 || iterations == cfg.max_iter {
            let current = evaluate(slice, &y)?;
            let change = (current.value - previous).abs();
            previous = current.value;
            if current.value < best.value || (current.value == best.value && current.kkt < best.kkt)
            {
                best = current;
            }
            if iterations % CHECK_WINDOW == 0 && change < tol && best.kkt < T::of(100.0) * tol {
                converged = true;
                break;
            }
        }
    }
    Ok(StartResult {
        y: best.y,
        value: best.value,
        kkt: best.kkt,
        iterations,
        converged,
    })
}

struct Evaluated<T> {
    y: Vec<T>,
    value: T,
    kkt: T,
}

fn evaluate<T: Scalar>(slice: &Slice<T>, y: &[T]) -> Result<Evaluated<T>> {
    let collapsed = collapse_support(y, slice.collapse_floor);
    let value = slice.objective(&collapsed);
    if !value.is_finite() {
        return Err(Error::NonFinite { j: slice.j + 1 });
    }
    let kkt = slice_kkt(slice, &collapsed);
    Ok(Evaluated {
        y: collapsed,
        value,
        kkt,
    })
}

// First-order residual on the slice; see `kkt_residual`.
fn slice_kkt<T: Scalar>(slice: &Slice<T>, y: &[T]) -> T {
    let n = slice.n;
    let mut grad = slice.degrees.clone();
    // vertices with an active edge whose other members are all positive
    let mut steep = vec![false; n];
    for edge in slice.edges() {
        let zeros = edge.iter().filter(|&&v| y[v] <= T::zero()).count();
        if zeros == 0 {
            let gm = slice.geometric_mean(edge, y, T::zero());
            for &v in edge {
                grad[v] -= gm / y[v];
            }
        } else if zeros == 1 {
            for &v in edge {
                if y[v] <= T::zero() {
                    steep[v] = true;
                }
            }
        }
    }
    let support = (0..n).filter(|&v| v != slice.j && y[v] > T::zero());
    let mu = support.clone().map(|v| grad[v]).fold(T::infinity(), T::min);
    let mut residual = support
        .map(|v| (grad[v] - mu).abs())
        .fold(T::zero(), T::max);
    for v in 0..n {
        if v != slice.j && y[v] <= T::zero() && !steep[v] {
            residual = residual.max((mu - grad[v]).max(T::zero()));
        }
    }
    residual
}

/// Optimality residual of a point on the slice `y_j = 0`.
///
/// With `g` the gradient on the support and `μ = min_support g`, this is the largest of
/// `|g_v − μ|` over the support and `max(0, μ − g_v)` over the other allowed coordinates.
/// A zero coordinate lying on an edge whose remaining members are all positive has an
/// unbounded-below directional derivative and is treated as satisfying the condition.
pub fn kkt_residual<T: Scalar>(h: &Hypergraph, y: &SimplexPoint<T>, j: usize) -> Result<T> {
    check_vertex(h, j)?;
    let w = y.as_slice();
    if w.len() != h.n() {
        return Err(Error::Infeasible(
            "point length differs from vertex count".into(),
        ));
    }
    if w[j - 1] != T::zero() {
        return Err(Error::Infeasible(format!(
            "weight of excluded vertex {j} is nonzero"
        )));
    }
    Ok(slice_kkt(&Slice::new(h, j - 1, 0.0), w))
}

fn check_vertex(h: &Hypergraph, j: usize) -> Result<()> {
    if j == 0 || j > h.n() {
        return Err(Error::VertexOutOfRange {
            vertex: j,
            n: h.n(),
        });
    }
    Ok(())
}

fn dirichlet_start<T: Scalar>(n: usize, j: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut y = vec![T::zero(); n];
    let mut total = 0.0f64;
    let draws: Vec<f64> = (0..n)
        .map(|v| {
            if v == j {
                0.0
            } else {
                let e: f64 = Exp1.sample(rng);
                let e = e.max(1e-300);
                total += e;
                e
            }
        })
        .collect();
    for (w, d) in y.iter_mut().zip(draws) {
        *w = T::of(d / total);
    }
    y
}

fn outcome_from<T: Scalar>(
    h: &Hypergraph,
    j: usize,
    y: Vec<T>,
    kkt: T,
    iterations: usize,
    converged: bool,
) -> SolveOutcome<T> {
    let x: Vec<T> = y.iter().map(|w| w.root(h.k())).collect();
    let value = laplacian_form(h, &x);
    SolveOutcome {
        excluded_j: j,
        value,
        minimizer_x: Point::new(x).expect("roots of simplex weights are nonnegative"),
        kkt_residual: kkt,
        iterations,
        converged,
    }
}

// Zero-value witness for a disconnected hypergraph: uniform weight on a component avoiding j.
fn disconnected_outcome<T: Scalar>(
    h: &Hypergraph,
    components: &[Vec<usize>],
    j: usize,
) -> SolveOutcome<T> {
    let class = components
        .iter()
        .find(|c| c.binary_search(&j).is_err())
        .expect("at least two components");
    let y = SimplexPoint::<T>::uniform_on(h.n(), class)
        .expect("component vertices are in range")
        .into_inner();
    let kkt = slice_kkt(&Slice::new(h, j - 1, 0.0), &y);
    outcome_from(h, j, y, kkt, 0, true)
}

/// Minimises `Lxᵏ` over `x ≥ 0`, `Σ xᵢᵏ = 1`, `x_j = 0` (`j` is 1-based).
///
/// Runs the uniform start and `cfg.restarts` Dirichlet(1) starts and keeps the best. Hitting
/// the iteration cap is reported through `converged`, not as an error.
pub fn solve_subproblem<T: Scalar>(
    h: &Hypergraph,
    j: usize,
    cfg: &SolverConfig,
) -> Result<SolveOutcome<T>> {
    check_vertex(h, j)?;
    cfg.validate()?;
    if h.n() < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let components = h.components();
    if components.len() > 1 {
        return Ok(disconnected_outcome(h, &components, j));
    }

    let slice = Slice::<T>::new(h, j - 1, cfg.eps_min);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(j as u64);

    let mut uniform = vec![T::one() / T::of_usize(h.n() - 1); h.n()];
    uniform[j - 1] = T::zero();

    let mut results = Vec::with_capacity(cfg.restarts + 1);
    for start in 0..=cfg.restarts {
        let y0 = if start == 0 {
            uniform.clone()
        } else {
            dirichlet_start(h.n(), j - 1, &mut rng)
        };
        results.push(run_start(&slice, y0, cfg)?);
    }
    let iterations = results.iter().map(|r| r.iterations).sum();
    let best = pick_best(results, T::of(cfg.tol));
    Ok(outcome_from(
        h,
        j,
        best.y,
        best.kkt,
        iterations,
        best.converged,
    ))
}

// Lowest value wins; among starts within `tol` of it, the first converged one is preferred.
fn pick_best<T: Scalar>(results: Vec<StartResult<T>>, tol: T) -> StartResult<T> {
    let lowest = results.iter().map(|r| r.value).fold(T::infinity(), T::min);
    let pos = results
        .iter()
        .position(|r| r.converged && r.value <= lowest + tol)
        .or_else(|| results.iter().position(|r| r.value == lowest))
        .expect("at least one start");
    results.into_iter().nth(pos).expect("index in range")
}

/// `α(H)`: all `n` subproblems (in parallel on the current rayon pool), folded by ascending
/// `j`. Results depend only on `h` and `cfg`.
pub fn analytic_connectivity<T: Scalar>(
    h: &Hypergraph,
    cfg: &SolverConfig,
) -> Result<AlphaResult<T>> {
    cfg.validate()?;
    if h.n() < 2 {
        return Err(Error::InvalidParameter(format!(
            "analytic connectivity needs n >= 2, got {}",
            h.n()
        )));
    }
    let per_j = (1..=h.n())
        .into_par_iter()
        .map(|j| solve_subproblem(h, j, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate(per_j, T::of(cfg.tol)))
}

fn aggregate<T: Scalar>(per_j: Vec<SolveOutcome<T>>, tol: T) -> AlphaResult<T> {
    let alpha = per_j.iter().map(|o| o.value).fold(T::infinity(), T::min);
    let argmin_j = per_j
        .iter()
        .find(|o| o.value <= alpha + tol)
        .map(|o| o.excluded_j)
        .expect("nonempty");
    AlphaResult {
        alpha,
        argmin_j,
        per_j,
    }
}

/// Validates `x` for the slice `x_j = 0` and returns `Lxᵏ`, an upper bound on `α(H)`.
///
/// Points whose `Σ xᵢᵏ` is within `1e−6` of one are rescaled onto the constraint first.
pub fn certify_upper<T: Scalar>(h: &Hypergraph, x: &[T], j: usize) -> Result<T> {
    check_vertex(h, j)?;
    if x.len() != h.n() {
        return Err(Error::Infeasible(
            "point length differs from vertex count".into(),
        ));
    }
    let point = Point::new(x.to_vec())?;
    if x[j - 1] != T::zero() {
        return Err(Error::Infeasible(format!(
            "coordinate of excluded vertex {j} is nonzero"
        )));
    }
    let k = h.k();
    let total = point.power_sum(k);
    if (total - T::one()).abs() > T::of(1e-6) {
        return Err(Error::Infeasible(format!(
            "Σ xᵢᵏ = {total}, not within 1e-6 of 1"
        )));
    }
    let scale = total.root(k);
    let scaled: Vec<T> = x.iter().map(|v| *v / scale).collect();
    Ok(laplacian_form(h, &scaled))
}
