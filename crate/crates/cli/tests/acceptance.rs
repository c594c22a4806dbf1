//! Acceptance suite: eight criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p hyperalpha-cli --test acceptance -- --nocapture` to see the table.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hyperalpha::bounds::{verify_all, Status};
use hyperalpha::hypergraph::{gen_complete, gen_fano, gen_random, serialize_khg};
use hyperalpha::laplacian::{agm_bounds, gradient_y, objective_y, objective_y_smoothed};
use hyperalpha::solver::{alpha_oracle, analytic_connectivity};
use hyperalpha::{Hypergraph, SolverConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn alpha(h: &Hypergraph) -> f64 {
    analytic_connectivity::<f64>(h, &cfg()).unwrap().alpha
}

fn single_threaded<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

/// `C(n, r)` by the multiplicative formula.
fn choose(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn count_components(h: &Hypergraph) -> usize {
    let mut label: Vec<usize> = (0..h.n()).collect();
    fn find(label: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while label[r] != r {
            r = label[r];
        }
        label[v] = r;
        r
    }
    for e in h.edges() {
        for w in e.windows(2) {
            let (a, b) = (find(&mut label, w[0] - 1), find(&mut label, w[1] - 1));
            label[a.max(b)] = a.min(b);
        }
    }
    (0..h.n()).filter(|&v| find(&mut label, v) == v).count()
}

/// Random `k`-graph with at least two components: random edges inside two disjoint blocks.
fn disconnected(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Hypergraph {
    let split = rng.random_range(k..=n - k);
    let mut verts: Vec<usize> = (1..=n).collect();
    verts.shuffle(rng);
    let (a, b) = verts.split_at(split);
    let mut edges = Vec::new();
    for block in [a, b] {
        let total = choose(block.len(), k) as usize;
        let m = rng.random_range(1..=3).min(total);
        let sub = gen_random(block.len(), k, m, rng.random(), false).unwrap();
        for e in sub.edges() {
            let mut mapped: Vec<usize> = e.iter().map(|&v| block[v - 1]).collect();
            mapped.sort_unstable();
            edges.push(mapped);
        }
    }
    Hypergraph::new(n, k, edges).unwrap()
}

fn random_connected(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize, k: usize) -> Hypergraph {
    loop {
        let n = rng.random_range(n_lo..=n_hi);
        let total = choose(n, k) as usize;
        let m = rng.random_range(n.div_ceil(k - 1)..=(2 * n).min(total));
        if let Ok(h) = gen_random(n, k, m, rng.random(), true) {
            return h;
        }
    }
}

fn simplex_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for (n, k) in [(4, 3), (5, 3), (6, 3), (7, 3), (5, 4), (6, 4)] {
        let h = gen_complete(n, k).unwrap();
        let start = Instant::now();
        let a = single_threaded(|| alpha(&h));
        let took = start.elapsed();
        let expected = choose(n - 2, k - 2);
        let rel = (a - expected).abs() / expected;
        if rel > 1e-5 {
            return Err(format!("K_{n}^({k}): {a} vs {expected}"));
        }
        if took > Duration::from_secs(30) {
            return Err(format!("K_{n}^({k}) took {took:?}"));
        }
        worst = worst.max(rel);
        slowest = slowest.max(took);
    }
    Ok(format!("max rel err {worst:.1e}, slowest {slowest:.2?}"))
}

fn criterion_2() -> Outcome {
    let fano = alpha(&gen_fano());
    if (fano - 1.0).abs() > 1e-4 {
        return Err(format!("Fano gives {fano}"));
    }
    let mut worst = 0.0f64;
    for n in 3..=8 {
        let a = alpha(&gen_complete(n, 2).unwrap());
        if (a - 1.0).abs() > 1e-5 {
            return Err(format!("K_{n} gives {a}"));
        }
        worst = worst.max((a - 1.0).abs());
    }
    Ok(format!("Fano {fano:.9}, K_n max err {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut min_connected = f64::INFINITY;
    let mut max_disconnected = 0.0f64;
    for _ in 0..50 {
        let h = random_connected(&mut rng, 4, 10, 3);
        assert_eq!(count_components(&h), 1);
        let a = alpha(&h);
        if a <= 1e-4 {
            return Err(format!(
                "connected instance with alpha {a}: {:?}",
                h.edges()
            ));
        }
        min_connected = min_connected.min(a);
    }
    for _ in 0..50 {
        let n = rng.random_range(6..=10);
        let h = disconnected(&mut rng, n, 3);
        assert!(count_components(&h) >= 2);
        let a = alpha(&h);
        if a > 1e-8 {
            return Err(format!(
                "disconnected instance with alpha {a}: {:?}",
                h.edges()
            ));
        }
        max_disconnected = max_disconnected.max(a);
    }
    Ok(format!(
        "min over connected {min_connected:.3e}, max over disconnected {max_disconnected:.1e}"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut oracle_time = Duration::ZERO;
    let mut worst = 0.0f64;
    for i in 0..20 {
        let n = rng.random_range(4..=6);
        let total = choose(n, 3) as usize;
        let m = rng.random_range(1..=total.min(10));
        let h = gen_random(n, 3, m, rng.random(), i % 2 == 0)
            .unwrap_or_else(|_| gen_random(n, 3, m, 0, false).unwrap());
        let a = alpha(&h);
        let start = Instant::now();
        let o: f64 = alpha_oracle(&h, 60).unwrap();
        oracle_time += start.elapsed();
        let diff = (a - o).abs();
        if diff > 0.05 {
            return Err(format!("solver {a} oracle {o} on {:?}", h.edges()));
        }
        worst = worst.max(diff);
    }
    if oracle_time > Duration::from_secs(300) {
        return Err(format!("oracle suite took {oracle_time:?}"));
    }
    Ok(format!(
        "max |solver - oracle| {worst:.2e}, oracle time {oracle_time:.2?}"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0usize;
    for i in 0..100 {
        let k = if i % 2 == 0 { 3 } else { 4 };
        let h = random_connected(&mut rng, k + 2, 10, k);
        let report = verify_all(&h, alpha(&h), 1e-4);
        let expect_applicable = [
            ("degree_upper", &report.degree_upper, h.edge_count() >= 2),
            ("cheeger_upper", &report.cheeger_upper, true),
            ("cheeger_lower", &report.cheeger_lower, true),
            ("diameter_lower", &report.diameter_lower, true),
            ("edge_connectivity", &report.edge_connectivity, true),
            (
                "cutset_upper",
                &report.cutset_upper,
                h.edge_count() < choose(h.n(), k) as usize
                    && report.invariants.vertex_connectivity.is_some(),
            ),
        ];
        for (name, check, applicable) in expect_applicable {
            match (&check.status, applicable) {
                (Status::Fail, _) => {
                    return Err(format!("{name} fails on {:?}: {report:?}", h.edges()))
                }
                (Status::NotApplicable(why), true) => {
                    return Err(format!("{name} unexpectedly not applicable: {why}"))
                }
                (Status::Pass, _) => checked += 1,
                _ => {}
            }
        }
        if !report.all_pass() {
            return Err(format!("report fails on {:?}: {report:?}", h.edges()));
        }
    }
    Ok(format!("100 instances, {checked} bound checks passed"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let tol = cfg().tol;
    for _ in 0..50 {
        let n = rng.random_range(5..=8);
        let k = 3;
        let total = choose(n, k) as usize;
        let m = rng.random_range(1..total);
        let h = gen_random(n, k, m, rng.random(), false).unwrap();
        let missing: Vec<Vec<usize>> = gen_complete(n, k)
            .unwrap()
            .edges()
            .iter()
            .filter(|e| !h.contains_edge(e))
            .cloned()
            .collect();
        let e = missing[rng.random_range(0..missing.len())].clone();
        let bigger = h.with_edges([e]).unwrap();
        let (a, b) = (alpha(&h), alpha(&bigger));
        if a > b + 10.0 * tol {
            return Err(format!("adding an edge lowered alpha {a} -> {b}"));
        }
    }
    for _ in 0..50 {
        let n = rng.random_range(5..=8);
        let total = choose(n, 3) as usize;
        let m = rng.random_range(2..=total.min(16));
        let h = gen_random(n, 3, m, rng.random(), false).unwrap();
        let (mut e1, mut e2) = (Vec::new(), Vec::new());
        for e in h.edges() {
            if rng.random_bool(0.5) {
                e1.push(e.clone());
            } else {
                e2.push(e.clone());
            }
        }
        let a1 = alpha(&Hypergraph::new(n, 3, e1).unwrap());
        let a2 = alpha(&Hypergraph::new(n, 3, e2).unwrap());
        let a = alpha(&h);
        if a1 + a2 > a + 10.0 * tol {
            return Err(format!("{a1} + {a2} > {a}"));
        }
    }
    Ok("50 monotonicity and 50 superadditivity trials".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_fd = 0.0f64;
    for _ in 0..100 {
        let k = rng.random_range(2..=4);
        let h = random_connected(&mut rng, k + 1, 8, k);
        let y: Vec<f64> = simplex_point(&mut rng, h.n())
            .into_iter()
            .map(|v| v + 0.05)
            .collect();
        let g = gradient_y(&h, &y, 0.0).unwrap();
        let step = 1e-6;
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for v in 0..h.n() {
            let (mut up, mut down) = (y.clone(), y.clone());
            up[v] += step;
            down[v] -= step;
            let fd = (objective_y_smoothed(&h, &up, 0.0) - objective_y_smoothed(&h, &down, 0.0))
                / (2.0 * step);
            err = err.max((fd - g[v]).abs());
            scale = scale.max(fd.abs());
        }
        let rel = err / scale.max(f64::MIN_POSITIVE);
        if rel > 1e-5 {
            return Err(format!("gradient rel err {rel} on {:?}", h.edges()));
        }
        worst_fd = worst_fd.max(rel);
    }

    let mut h = random_connected(&mut rng, 6, 8, 3);
    for pair in 0..10_000 {
        if pair % 500 == 0 {
            let k = rng.random_range(2..=4);
            h = random_connected(&mut rng, k + 1, 8, k);
        }
        let mut y = simplex_point(&mut rng, h.n());
        let mut z = simplex_point(&mut rng, h.n());
        // boundary coverage: zero a coordinate now and then
        if pair % 3 == 0 {
            let v = rng.random_range(0..h.n());
            y[v] = 0.0;
            z[(v + 1) % h.n()] = 0.0;
        }
        let mid: Vec<f64> = y.iter().zip(&z).map(|(a, b)| 0.5 * (a + b)).collect();
        let lhs = objective_y(&h, &mid);
        let rhs = 0.5 * (objective_y(&h, &y) + objective_y(&h, &z));
        if lhs > rhs + 1e-12 {
            return Err(format!("midpoint convexity: {lhs} > {rhs}"));
        }
    }

    for _ in 0..10_000 {
        let len = rng.random_range(2..=10);
        let a: Vec<f64> = (0..len)
            .map(|_| {
                if rng.random_bool(0.1) {
                    0.0
                } else {
                    rng.random_range(0.0..10.0)
                }
            })
            .collect();
        let b = agm_bounds(&a).unwrap();
        if !(b.rhs_paired >= 0.0 && b.rhs_all_pairs >= 0.0) {
            return Err(format!("negative refinement on {a:?}"));
        }
        if b.gap + 1e-12 < b.rhs_paired.max(b.rhs_all_pairs) {
            return Err(format!("A-G refinement violated on {a:?}: {b:?}"));
        }
    }
    Ok(format!(
        "max gradient rel err {worst_fd:.1e}; 10^4 convexity pairs; 10^4 A-G vectors"
    ))
}

fn corpus(dir: &Path) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut graphs = vec![
        ("k43", gen_complete(4, 3).unwrap()),
        ("k53", gen_complete(5, 3).unwrap()),
        ("k64", gen_complete(6, 4).unwrap()),
        ("k6", gen_complete(6, 2).unwrap()),
        ("fano", gen_fano()),
    ];
    for i in 0..6 {
        let k = 3 + i % 2;
        graphs.push(("rand", random_connected(&mut rng, k + 2, 9, k)));
    }
    for _ in 0..2 {
        graphs.push(("split", disconnected(&mut rng, 8, 3)));
    }
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, (name, h))| {
            let file = format!("{i:02}_{name}.khg");
            fs::write(dir.join(&file), serialize_khg(&h)).unwrap();
            file
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let files = corpus(dir.path());
    for file in &files {
        let run = |jobs: &str| {
            Command::new(env!("CARGO_BIN_EXE_hyperalpha"))
                .args([
                    "compute", file, "--seed", "1", "--jobs", jobs, "--format", "json",
                ])
                .current_dir(dir.path())
                .output()
                .unwrap()
        };
        let (a, b) = (run("1"), run("8"));
        if a.status.code() != Some(0) || b.status.code() != a.status.code() {
            return Err(format!(
                "{file}: exit codes {:?} / {:?}",
                a.status, b.status
            ));
        }
        if a.stdout != b.stdout {
            return Err(format!("{file}: outputs differ"));
        }
    }
    Ok(format!("{} files byte-identical", files.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("closed-form alpha of complete k-graphs", criterion_1),
        ("design values: Fano and complete graphs", criterion_2),
        ("alpha > 0 exactly on connected instances", criterion_3),
        ("agreement with the lattice oracle", criterion_4),
        ("bound sandwich on random connected instances", criterion_5),
        ("monotonicity and superadditivity", criterion_6),
        ("gradient, convexity and A-G checks", criterion_7),
        ("output independent of --jobs", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{took:.1?}]", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL  {name} ({detail}) [{took:.1?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
