//! Named test problems addressable from experiment configs.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use super::{convex_min_problem, matrix_game, ScalarFn, VIProblem, VectorFn};
use crate::error::{check_dim, Error, Result};
use crate::geometry::Geometry;
use crate::linalg::{dot, norm2};
use crate::rng::{stream, Stream};

pub struct ProblemEntry {
    pub name: &'static str,
    pub summary: &'static str,
    build: fn(&Value) -> Result<VIProblem>,
}

pub struct Catalog {
    entries: Vec<ProblemEntry>,
}

impl Catalog {
    pub fn entries(&self) -> &[ProblemEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.iter().any(|e| e.name == name)
    }

    /// Builds a problem from its name and a JSON parameter object (`null` or
    /// `{}` selects the defaults).
    pub fn build(&self, name: &str, params: &Value) -> Result<VIProblem> {
        let entry =
            self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownProblem(name.to_string()))?;
        (entry.build)(params)
    }

    /// Every entry with default parameters.
    pub fn defaults(&self) -> Vec<VIProblem> {
        self.entries.iter().map(|e| (e.build)(&Value::Null).expect("catalog defaults are valid")).collect()
    }
}

pub fn builtin_problems() -> Catalog {
    Catalog {
        entries: vec![
            ProblemEntry {
                name: "rps",
                summary: "rock-paper-scissors, smooth bilinear game",
                build: |p| {
                    no_params(p)?;
                    Ok(rps())
                },
            },
            ProblemEntry {
                name: "asymmetric-2x2",
                summary: "2x2 bilinear game [[0,-1],[1,0]] with a pure equilibrium",
                build: |p| {
                    no_params(p)?;
                    Ok(asymmetric_2x2())
                },
            },
            ProblemEntry {
                name: "random-game",
                summary: "d1 x d2 game with uniform [-1,1] entries",
                build: |p| {
                    let p: RandomGameParams = parse_or_default(p, RandomGameParams { d1: 4, d2: 5, seed: 0 })?;
                    random_game(p.d1, p.d2, p.seed)
                },
            },
            ProblemEntry {
                name: "matrix-game",
                summary: "bilinear game with an explicit matrix",
                build: |p| {
                    // matching pennies unless a matrix is given
                    let p: MatrixParams =
                        parse_or_default(p, MatrixParams { a: vec![vec![1.0, -1.0], vec![-1.0, 1.0]] })?;
                    let rows = p.a.len();
                    let cols = p.a.first().map_or(0, Vec::len);
                    if p.a.iter().any(|r| r.len() != cols) {
                        return Err(Error::InvalidParameter("matrix rows have different lengths".into()));
                    }
                    let flat: Vec<f64> = p.a.into_iter().flatten().collect();
                    matrix_game("matrix-game", DMatrix::from_row_slice(rows, cols, &flat))
                },
            },
            ProblemEntry {
                name: "quadratic-ball",
                summary: "f = ½‖x − x₀‖² over the ℓ2 ball (smooth; ∇f(x*) ≠ 0 when x₀ is outside)",
                build: |p| {
                    let p: CenterRadius = parse_or_default(p, CenterRadius { x0: vec![1.5, 0.5], radius: 1.0 })?;
                    quadratic_ball(p.x0, p.radius)
                },
            },
            ProblemEntry {
                name: "l1-ball",
                summary: "f = ‖x − x₀‖₁ over the ℓ2 ball (non-smooth)",
                build: |p| {
                    let p: CenterRadius = parse_or_default(p, CenterRadius { x0: vec![2.0, 0.0], radius: 1.0 })?;
                    l1_ball(p.x0, p.radius)
                },
            },
            ProblemEntry {
                name: "piecewise-max",
                summary: "f = maxᵢ(aᵢ·x + bᵢ) over a box (non-smooth)",
                build: |p| {
                    let p: PiecewiseParams = parse_or_default(p, PiecewiseParams::default())?;
                    piecewise_max(p.a, p.b, p.lower, p.upper)
                },
            },
        ],
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomGameParams {
    d1: usize,
    d2: usize,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixParams {
    a: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CenterRadius {
    x0: Vec<f64>,
    #[serde(default = "one")]
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PiecewiseParams {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Default for PiecewiseParams {
    fn default() -> Self {
        Self {
            a: vec![vec![1.0, 0.5], vec![-1.0, 0.3], vec![0.2, -1.0], vec![-0.3, -0.6]],
            b: vec![0.1, 0.0, -0.2, 0.05],
            lower: vec![-1.0, -1.0],
            upper: vec![1.0, 1.0],
        }
    }
}

fn one() -> f64 {
    1.0
}

fn is_empty(p: &Value) -> bool {
    p.is_null() || p.as_object().is_some_and(|m| m.is_empty())
}

fn no_params(p: &Value) -> Result<()> {
    if is_empty(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("this problem takes no parameters".into()))
    }
}

fn parse<T: DeserializeOwned>(p: &Value) -> Result<T> {
    serde_json::from_value(p.clone()).map_err(|e| Error::InvalidParameter(format!("problem params: {e}")))
}

fn parse_or_default<T: DeserializeOwned>(p: &Value, default: T) -> Result<T> {
    if is_empty(p) {
        Ok(default)
    } else {
        parse(p)
    }
}

/// Rock-paper-scissors; equilibrium at (uniform, uniform).
pub fn rps() -> VIProblem {
    let a = DMatrix::from_row_slice(3, 3, &[0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0]);
    let third = 1.0 / 3.0;
    matrix_game("rps", a).and_then(|p| p.with_solution(vec![third; 6])).expect("valid builtin")
}

/// `A = [[0, −1], [1, 0]]`; the unique equilibrium is the vertex pair (e₁, e₁).
pub fn asymmetric_2x2() -> VIProblem {
    let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    matrix_game("asymmetric-2x2", a).and_then(|p| p.with_solution(vec![1.0, 0.0, 1.0, 0.0])).expect("valid builtin")
}

pub fn random_game(d1: usize, d2: usize, seed: u64) -> Result<VIProblem> {
    let mut rng = stream(seed, Stream::ProblemData);
    let a = DMatrix::from_fn(d1, d2, |_, _| rng.gen_range(-1.0..=1.0));
    matrix_game("random-game", a)
}

/// `f(x) = ½‖x − x₀‖²` over the ball of radius `r`; `L = 1`, `G = r + ‖x₀‖`.
pub fn quadratic_ball(x0: Vec<f64>, radius: f64) -> Result<VIProblem> {
    let geom = Geometry::ball(x0.len(), radius)?;
    let g_bound = radius + norm2(&x0);
    let minimizer = project_onto_ball(&x0, radius);
    let min_value = 0.5 * (norm2(&x0) - radius).max(0.0).powi(2);

    let (c1, c2) = (x0.clone(), x0);
    let f: ScalarFn = Arc::new(move |x| 0.5 * x.iter().zip(&c1).map(|(a, b)| (a - b).powi(2)).sum::<f64>());
    let grad: VectorFn = Arc::new(move |x| x.iter().zip(&c2).map(|(a, b)| a - b).collect());
    convex_min_problem("quadratic-ball", f, grad, geom, g_bound)?
        .with_smoothness(1.0)?
        .with_minimum(min_value)?
        .with_solution(minimizer)
}

/// `f(x) = ‖x − x₀‖₁` over the ball of radius `r`, with the sign subgradient
/// (0 on ties); `G = sqrt(d)`.
///
/// The minimiser is `clip(x₀, −τ, τ)` where `τ` solves
/// `‖clip(x₀, −τ, τ)‖₂ = r`, found by bisection.
pub fn l1_ball(x0: Vec<f64>, radius: f64) -> Result<VIProblem> {
    let dim = x0.len();
    let geom = Geometry::ball(dim, radius)?;
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("l1-ball centre".into()));
    }
    let (minimizer, min_value) = l1_ball_minimum(&x0, radius);

    let (c1, c2) = (x0.clone(), x0);
    let f: ScalarFn = Arc::new(move |x| x.iter().zip(&c1).map(|(a, b)| (a - b).abs()).sum());
    let grad: VectorFn = Arc::new(move |x| {
        x.iter()
            .zip(&c2)
            .map(|(a, b)| {
                let d = a - b;
                if d > 0.0 {
                    1.0
                } else if d < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            })
            .collect()
    });
    convex_min_problem("l1-ball", f, grad, geom, (dim as f64).sqrt())?.with_minimum(min_value)?.with_solution(minimizer)
}

fn l1_ball_minimum(x0: &[f64], radius: f64) -> (Vec<f64>, f64) {
    if norm2(x0) <= radius {
        return (x0.to_vec(), 0.0);
    }
    let clip = |tau: f64| -> Vec<f64> { x0.iter().map(|v| v.clamp(-tau, tau)).collect() };
    let (mut lo, mut hi) = (0.0, x0.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if norm2(&clip(mid)) > radius {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x = clip(lo);
    let value = x0.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
    (x, value)
}

/// `f(x) = maxᵢ(aᵢ·x + bᵢ)` over a box; subgradient is the first active `aᵢ`,
/// `G = maxᵢ‖aᵢ‖₂`. The reference minimum is exact (linear-program vertex
/// enumeration).
pub fn piecewise_max(a: Vec<Vec<f64>>, b: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<VIProblem> {
    check_dim(a.len(), b.len())?;
    if a.is_empty() {
        return Err(Error::InvalidParameter("piecewise-max needs at least one piece".into()));
    }
    let geom = Geometry::boxed(lower.clone(), upper.clone())?;
    for row in &a {
        check_dim(geom.dim(), row.len())?;
    }
    if geom.dim() > 6 {
        return Err(Error::InvalidParameter("piecewise-max supports at most 6 dimensions".into()));
    }
    let (minimizer, min_value) = min_max_affine_over_box(&a, &b, &lower, &upper)?;
    let g_bound = a.iter().map(|r| norm2(r)).fold(0.0, f64::max);

    let pieces = Arc::new((a, b));
    let (p1, p2) = (pieces.clone(), pieces);
    let f: ScalarFn =
        Arc::new(move |x| p1.0.iter().zip(&p1.1).map(|(ai, bi)| dot(ai, x) + bi).fold(f64::NEG_INFINITY, f64::max));
    let grad: VectorFn = Arc::new(move |x| {
        let mut best = 0;
        let mut best_val = f64::NEG_INFINITY;
        for (i, (ai, bi)) in p2.0.iter().zip(&p2.1).enumerate() {
            let v = dot(ai, x) + bi;
            if v > best_val {
                best = i;
                best_val = v;
            }
        }
        p2.0[best].clone()
    });
    convex_min_problem("piecewise-max", f, grad, geom, g_bound)?.with_minimum(min_value)?.with_solution(minimizer)
}

/// Solves `min_{l <= x <= u} maxᵢ(aᵢ·x + bᵢ)` exactly by enumerating the
/// vertices of the epigraph LP in `(x, t)`.
fn min_max_affine_over_box(a: &[Vec<f64>], b: &[f64], lower: &[f64], upper: &[f64]) -> Result<(Vec<f64>, f64)> {
    let d = lower.len();
    // constraint rows over (x, t): aᵢ·x − t <= −bᵢ, x_j <= u_j, −x_j <= −l_j
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        let mut r = ai.clone();
        r.push(-1.0);
        rows.push((r, -bi));
    }
    for j in 0..d {
        let mut up = vec![0.0; d + 1];
        up[j] = 1.0;
        rows.push((up, upper[j]));
        let mut lo = vec![0.0; d + 1];
        lo[j] = -1.0;
        rows.push((lo, -lower[j]));
    }
    let n = d + 1;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let m = DMatrix::from_fn(n, n, |i, j| rows[subset[i]].0[j]);
        let rhs = DVector::from_fn(n, |i, _| rows[subset[i]].1);
        if let Some(sol) = m.lu().solve(&rhs) {
            let z: Vec<f64> = sol.iter().cloned().collect();
            let feasible =
                z.iter().all(|v| v.is_finite()) && rows.iter().all(|(r, c)| dot(r, &z) <= c + 1e-10 * (1.0 + c.abs()));
            if feasible && best.as_ref().is_none_or(|(_, t)| z[d] < *t) {
                best = Some((z[..d].to_vec(), z[d]));
            }
        }
        if !next_combination(&mut subset, rows.len()) {
            break;
        }
    }
    let (x, _) = best.ok_or_else(|| Error::InvalidParameter("piecewise-max LP has no vertex".into()))?;
    // evaluate f at the vertex rather than trusting the solved t
    let value = a.iter().zip(b).map(|(ai, bi)| dot(ai, &x) + bi).fold(f64::NEG_INFINITY, f64::max);
    Ok((x, value))
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn project_onto_ball(x: &[f64], radius: f64) -> Vec<f64> {
    let n = norm2(x);
    if n <= radius {
        x.to_vec()
    } else {
        x.iter().map(|v| v * radius / n).collect()
    }
}
