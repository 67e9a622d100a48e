//! Monotone operators paired with compatible gap functions.
//!
//! A [`VIProblem`] carries the operator `F`, a gap function `Δ` with
//! `Δ(x, y) <= F(x)·(x − y)` that is convex in `x`, the bound `G` on
//! `‖F(x)‖*`, and optionally the Lipschitz constant `L` of `F`. The two
//! adapters cover convex minimisation (`Δ(x, y) = f(x) − f(y)`, `F = ∇f`) and
//! convex-concave games (`Δ(x, x₀) = φ(u, v₀) − φ(u₀, v)`,
//! `F = (∇_u φ, −∇_v φ)`).

mod catalog;
mod oracle;

use std::fmt;
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::geometry::Geometry;

pub use catalog::{
    asymmetric_2x2, builtin_problems, l1_ball, piecewise_max, quadratic_ball, random_game, rps, Catalog, ProblemEntry,
};
pub use oracle::StochasticOracle;

pub type VectorFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type GapFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;
/// A function of the two blocks `(u, v)` of a saddle problem.
pub type BlockFn<T> = Arc<dyn Fn(&[f64], &[f64]) -> T + Send + Sync>;

/// Reference value `min_K f` used to turn `f(x)` into a duality gap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceMinimum {
    pub value: f64,
    /// Upper bound on `value − min_K f`; zero for closed forms.
    pub tolerance: f64,
}

/// How `DualGap(x) = max_y Δ(x, y)` is evaluated for a problem.
#[derive(Clone)]
pub enum DualGapRule {
    /// `φ(u, v) = uᵀAv` over two simplices: vertex enumeration.
    Bilinear(DMatrix<f64>),
    /// `f(x) − min_K f`; the minimum is a closed form or a cached inner solve.
    ConvexMin {
        objective: ScalarFn,
        minimum: Arc<OnceLock<ReferenceMinimum>>,
    },
    /// Caller-supplied evaluator.
    Custom(ScalarFn),
    None,
}

impl fmt::Debug for DualGapRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualGapRule::Bilinear(a) => write!(f, "Bilinear({}x{})", a.nrows(), a.ncols()),
            DualGapRule::ConvexMin { minimum, .. } => write!(f, "ConvexMin({:?})", minimum.get()),
            DualGapRule::Custom(_) => f.write_str("Custom"),
            DualGapRule::None => f.write_str("None"),
        }
    }
}

#[derive(Clone)]
pub struct VIProblem {
    name: String,
    geom: Geometry,
    operator: VectorFn,
    gap: GapFn,
    g_bound: f64,
    smoothness: Option<f64>,
    dual_gap: DualGapRule,
    solution: Option<Vec<f64>>,
}

impl fmt::Debug for VIProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VIProblem")
            .field("name", &self.name)
            .field("geom", &self.geom)
            .field("g_bound", &self.g_bound)
            .field("smoothness", &self.smoothness)
            .field("dual_gap", &self.dual_gap)
            .finish_non_exhaustive()
    }
}

impl VIProblem {
    pub fn new(name: impl Into<String>, geom: Geometry, operator: VectorFn, gap: GapFn, g_bound: f64) -> Result<Self> {
        if !(g_bound.is_finite() && g_bound >= 0.0) {
            return Err(Error::InvalidParameter(format!("G must be finite and nonnegative, got {g_bound}")));
        }
        let probe = geom.min_point();
        check_dim(geom.dim(), operator(&probe).len())?;
        Ok(Self {
            name: name.into(),
            geom,
            operator,
            gap,
            g_bound,
            smoothness: None,
            dual_gap: DualGapRule::None,
            solution: None,
        })
    }

    pub fn with_smoothness(mut self, lipschitz: f64) -> Result<Self> {
        if !(lipschitz.is_finite() && lipschitz >= 0.0) {
            return Err(Error::InvalidParameter(format!("L must be finite and nonnegative, got {lipschitz}")));
        }
        self.smoothness = Some(lipschitz);
        Ok(self)
    }

    pub fn with_solution(mut self, solution: Vec<f64>) -> Result<Self> {
        check_dim(self.geom.dim(), solution.len())?;
        self.solution = Some(solution);
        Ok(self)
    }

    pub fn with_dual_gap(mut self, rule: DualGapRule) -> Self {
        self.dual_gap = rule;
        self
    }

    /// Registers a closed-form `min_K f` for a convex-minimisation problem.
    pub fn with_minimum(self, value: f64) -> Result<Self> {
        match &self.dual_gap {
            DualGapRule::ConvexMin { minimum, .. } => {
                minimum
                    .set(ReferenceMinimum { value, tolerance: 0.0 })
                    .map_err(|_| Error::InvalidParameter("minimum already set".into()))?;
                Ok(self)
            }
            _ => Err(Error::InvalidParameter("with_minimum needs a convex-minimisation problem".into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geom
    }

    pub fn dim(&self) -> usize {
        self.geom.dim()
    }

    /// `F(x)`.
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        (self.operator)(x)
    }

    /// `Δ(x, y)`.
    pub fn gap(&self, x: &[f64], y: &[f64]) -> f64 {
        (self.gap)(x, y)
    }

    pub fn g_bound(&self) -> f64 {
        self.g_bound
    }

    pub fn smoothness(&self) -> Option<f64> {
        self.smoothness
    }

    pub fn dual_gap_rule(&self) -> &DualGapRule {
        &self.dual_gap
    }

    /// A registered exact solution, if known.
    pub fn solution(&self) -> Option<&[f64]> {
        self.solution.as_deref()
    }
}

/// Convex minimisation as a variational inequality: `Δ(x, y) = f(x) − f(y)`,
/// `F = grad`, and `DualGap(x) = f(x) − min_K f`.
///
/// Without a closed-form minimum (see [`VIProblem::with_minimum`]) the gap
/// evaluator runs a long inner solve once and caches the result.
pub fn convex_min_problem(
    name: impl Into<String>,
    f: ScalarFn,
    grad: VectorFn,
    geom: Geometry,
    g_bound: f64,
) -> Result<VIProblem> {
    let objective = f.clone();
    let gap: GapFn = Arc::new(move |x, y| objective(x) - objective(y));
    Ok(VIProblem::new(name, geom, grad, gap, g_bound)?
        .with_dual_gap(DualGapRule::ConvexMin { objective: f, minimum: Arc::new(OnceLock::new()) }))
}

/// The pieces of a convex-concave objective `φ(u, v)`.
#[derive(Clone)]
pub struct SaddleParts {
    pub phi: BlockFn<f64>,
    pub grad_u: BlockFn<Vec<f64>>,
    pub grad_v: BlockFn<Vec<f64>>,
}

/// Convex-concave game over `U × V` with the normalised product geometry.
pub fn saddle_problem(
    name: impl Into<String>,
    parts: SaddleParts,
    geom_u: Geometry,
    geom_v: Geometry,
    g_bound: f64,
) -> Result<VIProblem> {
    let split = geom_u.dim();
    let (u0, v0) = (geom_u.min_point(), geom_v.min_point());
    check_dim(geom_u.dim(), (parts.grad_u)(&u0, &v0).len())?;
    check_dim(geom_v.dim(), (parts.grad_v)(&u0, &v0).len())?;

    let SaddleParts { phi, grad_u, grad_v } = parts;
    let operator: VectorFn = Arc::new(move |x| {
        let (u, v) = x.split_at(split);
        let mut out = grad_u(u, v);
        out.extend(grad_v(u, v).into_iter().map(|g| -g));
        out
    });
    let gap: GapFn = Arc::new(move |x, x0| {
        let (u, v) = x.split_at(split);
        let (u0, v0) = x0.split_at(split);
        phi(u, v0) - phi(u0, v)
    });
    VIProblem::new(name, Geometry::product(geom_u, geom_v), operator, gap, g_bound)
}

/// Bilinear game `min_u max_v uᵀAv` over two entropic simplices.
///
/// `G = max|Aᵢⱼ|·sqrt(D²_U + D²_V)` and
/// `L = 2·max{L₁₁D²_U, L₂₂D²_V, L₁₂D_U D_V, L₂₁D_U D_V}` with `L₁₁ = L₂₂ = 0`
/// and `L₁₂ = L₂₁ = max|Aᵢⱼ|` (the ℓ1→ℓ∞ operator norm).
pub fn matrix_game(name: impl Into<String>, a: DMatrix<f64>) -> Result<VIProblem> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("game matrix is empty".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("game matrix".into()));
    }
    let geom_u = Geometry::entropic_simplex(a.nrows())?;
    let geom_v = Geometry::entropic_simplex(a.ncols())?;
    let amax = a.amax();
    let g_bound = amax * (geom_u.diameter_sq() + geom_v.diameter_sq()).sqrt();
    let l12 = amax;
    let lipschitz = 2.0 * (l12 * geom_u.diameter() * geom_v.diameter());

    let (ap, au, av) = (a.clone(), a.clone(), a.clone());
    let parts = SaddleParts {
        phi: Arc::new(move |u, v| bilinear(&ap, u, v)),
        grad_u: Arc::new(move |_u, v| (&au * DVector::from_column_slice(v)).as_slice().to_vec()),
        grad_v: Arc::new(move |u, _v| (av.tr_mul(&DVector::from_column_slice(u))).as_slice().to_vec()),
    };
    Ok(saddle_problem(name, parts, geom_u, geom_v, g_bound)?
        .with_smoothness(lipschitz)?
        .with_dual_gap(DualGapRule::Bilinear(a)))
}

pub(crate) fn bilinear(a: &DMatrix<f64>, u: &[f64], v: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            total += ui * a[(i, j)] * vj;
        }
    }
    total
}

/// Exact duality gap of a bilinear game: `max_j (Aᵀu)_j − min_i (Av)_i`.
pub fn bilinear_dual_gap(a: &DMatrix<f64>, x: &[f64]) -> f64 {
    let (u, v) = x.split_at(a.nrows());
    let best_response_v = a.tr_mul(&DVector::from_column_slice(u)).max();
    let best_response_u = (a * DVector::from_column_slice(v)).min();
    best_response_v - best_response_u
}
