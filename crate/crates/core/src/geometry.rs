//! Feasible sets together with their mirror maps.
//!
//! A [`Geometry`] bundles a compact convex set `K`, a mirror map `R` that is
//! 1-strongly convex on `K` with respect to the geometry's primal norm, the
//! matching dual norm, and the closed-form prox step
//! `argmin_{x in K} direction·x + D_R(x, anchor) / eta`.
//!
//! Every mirror map is shifted so that `min_K R = 0`, hence `diameter_sq()` is
//! simply `max_K R`.
//!
//! | kind              | R(x)                     | primal / dual | D²               |
//! |-------------------|--------------------------|---------------|------------------|
//! | ball(r)           | ½‖x‖²                    | ℓ2 / ℓ2       | ½r²              |
//! | box(l, u)         | ½‖x − c‖², c = (l+u)/2   | ℓ2 / ℓ2       | ½‖(u−l)/2‖²      |
//! | euclidean simplex | ½‖x‖² − 1/(2d)           | ℓ2 / ℓ2       | (d−1)/(2d)       |
//! | entropic simplex  | Σ xᵢ ln xᵢ + ln d        | ℓ1 / ℓ∞       | ln d             |
//! | product(U, V)     | R_U/D²_U + R_V/D²_V      | scaled ℓ2 mix | 2                |

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, norm1, norm2, norm_inf, sub};

/// Lower clamp applied to entropic-simplex prox outputs.
pub const DEFAULT_CLAMP_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum GeometryKind {
    /// Euclidean ball of the given radius centred at the origin.
    EuclideanBall { radius: f64 },
    /// Axis-aligned box.
    EuclideanBox { lower: Vec<f64>, upper: Vec<f64> },
    /// Probability simplex with the squared-Euclidean mirror map.
    EuclideanSimplex,
    /// Probability simplex with the (shifted) negative-entropy mirror map.
    EntropicSimplex,
    /// Product set `U × V` with the normalised sum of the block mirror maps.
    Product(Box<Geometry>, Box<Geometry>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Geometry {
    kind: GeometryKind,
    dim: usize,
    diameter_sq: f64,
    clamp_eps: f64,
}

impl Geometry {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("ball dimension must be positive".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!("ball radius must be positive, got {radius}")));
        }
        if !(0.5 * radius * radius).is_finite() {
            return Err(Error::InvalidParameter(format!("ball radius {radius} overflows the diameter")));
        }
        Ok(Self {
            kind: GeometryKind::EuclideanBall { radius },
            dim,
            diameter_sq: 0.5 * radius * radius,
            clamp_eps: DEFAULT_CLAMP_EPS,
        })
    }

    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::InvalidParameter("box dimension must be positive".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l.is_finite() && u.is_finite() && l <= u)) {
            return Err(Error::InvalidParameter("box bounds must be finite with lower <= upper".into()));
        }
        let diameter_sq = 0.5 * lower.iter().zip(&upper).map(|(l, u)| (0.5 * (u - l)).powi(2)).sum::<f64>();
        if !diameter_sq.is_finite() {
            return Err(Error::InvalidParameter("box is too large: its diameter overflows".into()));
        }
        if diameter_sq <= 0.0 {
            return Err(Error::InvalidParameter("box is a single point".into()));
        }
        Ok(Self {
            dim: lower.len(),
            kind: GeometryKind::EuclideanBox { lower, upper },
            diameter_sq,
            clamp_eps: DEFAULT_CLAMP_EPS,
        })
    }

    pub fn euclidean_simplex(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter("simplex dimension must be at least 2".into()));
        }
        let d = dim as f64;
        Ok(Self {
            kind: GeometryKind::EuclideanSimplex,
            dim,
            diameter_sq: (d - 1.0) / (2.0 * d),
            clamp_eps: DEFAULT_CLAMP_EPS,
        })
    }

    pub fn entropic_simplex(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter("simplex dimension must be at least 2".into()));
        }
        Ok(Self {
            kind: GeometryKind::EntropicSimplex,
            dim,
            diameter_sq: (dim as f64).ln(),
            clamp_eps: DEFAULT_CLAMP_EPS,
        })
    }

    /// Product geometry; `R = R_U/D²_U + R_V/D²_V`, so each block spans a range of 1.
    pub fn product(u: Geometry, v: Geometry) -> Self {
        Self {
            dim: u.dim + v.dim,
            kind: GeometryKind::Product(Box::new(u), Box::new(v)),
            diameter_sq: 2.0,
            clamp_eps: DEFAULT_CLAMP_EPS,
        }
    }

    /// Overrides the entropic clamp floor (ignored by Euclidean kinds).
    pub fn with_clamp_eps(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0 / self.dim as f64) {
            return Err(Error::InvalidParameter(format!("clamp_eps must lie in (0, 1/d), got {eps}")));
        }
        self.clamp_eps = eps;
        if let GeometryKind::Product(u, v) = &mut self.kind {
            **u = u.as_ref().clone().with_clamp_eps(eps)?;
            **v = v.as_ref().clone().with_clamp_eps(eps)?;
        }
        Ok(self)
    }

    pub fn kind(&self) -> &GeometryKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diameter_sq(&self) -> f64 {
        self.diameter_sq
    }

    /// `D = sqrt(max_K R − min_K R)`.
    pub fn diameter(&self) -> f64 {
        self.diameter_sq.sqrt()
    }

    pub fn clamp_eps(&self) -> f64 {
        self.clamp_eps
    }

    /// Block geometries of a product, `None` otherwise.
    pub fn blocks(&self) -> Option<(&Geometry, &Geometry)> {
        match &self.kind {
            GeometryKind::Product(u, v) => Some((u, v)),
            _ => None,
        }
    }

    /// The mirror map `R(x)`.
    pub fn mirror(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        Ok(match &self.kind {
            GeometryKind::EuclideanBall { .. } => 0.5 * dot(x, x),
            GeometryKind::EuclideanBox { lower, upper } => {
                0.5 * x
                    .iter()
                    .zip(lower.iter().zip(upper))
                    .map(|(xi, (l, u))| (xi - 0.5 * (l + u)).powi(2))
                    .sum::<f64>()
            }
            GeometryKind::EuclideanSimplex => 0.5 * dot(x, x) - 0.5 / self.dim as f64,
            GeometryKind::EntropicSimplex => {
                x.iter().map(|&xi| if xi > 0.0 { xi * xi.ln() } else { 0.0 }).sum::<f64>() + (self.dim as f64).ln()
            }
            GeometryKind::Product(u, v) => {
                let (a, b) = x.split_at(u.dim);
                u.mirror(a)? / u.diameter_sq + v.mirror(b)? / v.diameter_sq
            }
        })
    }

    /// Bregman divergence `D_R(x, y) = R(x) − R(y) − ∇R(y)·(x − y)`.
    pub fn bregman(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, y.len())?;
        let value = match &self.kind {
            GeometryKind::EuclideanBall { .. } | GeometryKind::EuclideanBox { .. } | GeometryKind::EuclideanSimplex => {
                0.5 * sub(x, y).iter().map(|d| d * d).sum::<f64>()
            }
            GeometryKind::EntropicSimplex => {
                if let Some(bad) = y.iter().find(|&&yi| yi.is_nan() || yi <= 0.0) {
                    return Err(Error::Infeasible(format!(
                        "entropic Bregman needs y in the simplex interior, found coordinate {bad}"
                    )));
                }
                x.iter()
                    .zip(y)
                    .map(|(&xi, &yi)| {
                        let log_term = if xi > 0.0 { xi * (xi / yi).ln() } else { 0.0 };
                        log_term - xi + yi
                    })
                    .sum::<f64>()
            }
            GeometryKind::Product(u, v) => {
                let (xu, xv) = x.split_at(u.dim);
                let (yu, yv) = y.split_at(u.dim);
                u.bregman(xu, yu)? / u.diameter_sq + v.bregman(xv, yv)? / v.diameter_sq
            }
        };
        Ok(value.max(0.0))
    }

    /// `argmin_{x in K} direction·x + D_R(x, anchor) / eta`, in closed form.
    pub fn prox_step(&self, anchor: &[f64], direction: &[f64], eta: f64) -> Result<Vec<f64>> {
        check_dim(self.dim, anchor.len())?;
        check_dim(self.dim, direction.len())?;
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::InvalidParameter(format!("prox step size must be positive, got {eta}")));
        }
        if direction.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite("prox direction".into()));
        }
        Ok(self.prox_unchecked(anchor, direction, eta))
    }

    fn prox_unchecked(&self, anchor: &[f64], direction: &[f64], eta: f64) -> Vec<f64> {
        let gradient_step = || -> Vec<f64> { anchor.iter().zip(direction).map(|(a, d)| a - eta * d).collect() };
        match &self.kind {
            GeometryKind::EuclideanBall { radius } => project_ball(gradient_step(), *radius),
            GeometryKind::EuclideanBox { lower, upper } => {
                gradient_step().into_iter().zip(lower.iter().zip(upper)).map(|(z, (l, u))| z.clamp(*l, *u)).collect()
            }
            GeometryKind::EuclideanSimplex => project_simplex(&gradient_step()),
            GeometryKind::EntropicSimplex => {
                let logits: Vec<f64> = anchor
                    .iter()
                    .zip(direction)
                    .map(|(&a, &d)| if a > 0.0 { a.ln() - eta * d } else { f64::NEG_INFINITY })
                    .collect();
                let top = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let mut x: Vec<f64> = if top.is_finite() {
                    logits.iter().map(|w| (w - top).exp()).collect()
                } else {
                    vec![1.0; self.dim]
                };
                normalize(&mut x);
                let eps = self.clamp_eps;
                if x.iter().any(|&xi| xi < eps) {
                    x.iter_mut().for_each(|xi| *xi = xi.max(eps));
                    normalize(&mut x);
                }
                x
            }
            GeometryKind::Product(u, v) => {
                let (au, av) = anchor.split_at(u.dim);
                let (du, dv) = direction.split_at(u.dim);
                let mut out = u.prox_unchecked(au, du, eta * u.diameter_sq);
                out.extend(v.prox_unchecked(av, dv, eta * v.diameter_sq));
                out
            }
        }
    }

    pub fn primal_norm(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim, v.len())?;
        Ok(match &self.kind {
            GeometryKind::EntropicSimplex => norm1(v),
            GeometryKind::Product(u, w) => {
                let (a, b) = v.split_at(u.dim);
                (u.primal_norm(a)?.powi(2) / u.diameter_sq + w.primal_norm(b)?.powi(2) / w.diameter_sq).sqrt()
            }
            _ => norm2(v),
        })
    }

    pub fn dual_norm(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim, v.len())?;
        Ok(match &self.kind {
            GeometryKind::EntropicSimplex => norm_inf(v),
            GeometryKind::Product(u, w) => {
                let (a, b) = v.split_at(u.dim);
                (u.diameter_sq * u.dual_norm(a)?.powi(2) + w.diameter_sq * w.dual_norm(b)?.powi(2)).sqrt()
            }
            _ => norm2(v),
        })
    }

    /// `argmin_K R`: the starting point `y₀` of the solver.
    pub fn min_point(&self) -> Vec<f64> {
        match &self.kind {
            GeometryKind::EuclideanBall { .. } => vec![0.0; self.dim],
            GeometryKind::EuclideanBox { lower, upper } => {
                lower.iter().zip(upper).map(|(l, u)| 0.5 * (l + u)).collect()
            }
            GeometryKind::EuclideanSimplex | GeometryKind::EntropicSimplex => {
                vec![1.0 / self.dim as f64; self.dim]
            }
            GeometryKind::Product(u, v) => {
                let mut p = u.min_point();
                p.extend(v.min_point());
                p
            }
        }
    }

    /// Membership test with absolute tolerance `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim || x.iter().any(|xi| !xi.is_finite()) {
            return false;
        }
        match &self.kind {
            GeometryKind::EuclideanBall { radius } => norm2(x) <= radius + tol,
            GeometryKind::EuclideanBox { lower, upper } => {
                x.iter().zip(lower.iter().zip(upper)).all(|(xi, (l, u))| *xi >= l - tol && *xi <= u + tol)
            }
            GeometryKind::EuclideanSimplex | GeometryKind::EntropicSimplex => {
                x.iter().all(|&xi| xi >= -tol) && (x.iter().sum::<f64>() - 1.0).abs() <= tol
            }
            GeometryKind::Product(u, v) => {
                let (a, b) = x.split_at(u.dim);
                u.contains(a, tol) && v.contains(b, tol)
            }
        }
    }

    /// An exact minimiser of the linear function `g·x` over `K`.
    ///
    /// Simplex ties go to the lowest index; a zero gradient on a ball or box
    /// returns the centre.
    pub fn linear_minimizer(&self, g: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, g.len())?;
        Ok(match &self.kind {
            GeometryKind::EuclideanBall { radius } => {
                let n = norm2(g);
                if n == 0.0 {
                    vec![0.0; self.dim]
                } else {
                    g.iter().map(|gi| -radius * gi / n).collect()
                }
            }
            GeometryKind::EuclideanBox { lower, upper } => g
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(gi, (l, u))| {
                    if *gi > 0.0 {
                        *l
                    } else if *gi < 0.0 {
                        *u
                    } else {
                        0.5 * (l + u)
                    }
                })
                .collect(),
            GeometryKind::EuclideanSimplex | GeometryKind::EntropicSimplex => {
                let mut best = 0;
                for (i, gi) in g.iter().enumerate() {
                    if *gi < g[best] {
                        best = i;
                    }
                }
                let mut e = vec![0.0; self.dim];
                e[best] = 1.0;
                e
            }
            GeometryKind::Product(u, v) => {
                let (a, b) = g.split_at(u.dim);
                let mut out = u.linear_minimizer(a)?;
                out.extend(v.linear_minimizer(b)?);
                out
            }
        })
    }

    /// `min_{x in K} g·x`.
    pub fn linear_min_value(&self, g: &[f64]) -> Result<f64> {
        Ok(dot(g, &self.linear_minimizer(g)?))
    }

    /// A random feasible point. Simplex samples are Dirichlet(1) and kept at
    /// least `clamp_eps` away from the boundary.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match &self.kind {
            GeometryKind::EuclideanBall { radius } => {
                let dir: Vec<f64> = (0..self.dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                let n = norm2(&dir).max(f64::MIN_POSITIVE);
                let r = radius * rng.gen::<f64>().powf(1.0 / self.dim as f64);
                dir.iter().map(|d| r * d / n).collect()
            }
            GeometryKind::EuclideanBox { lower, upper } => {
                lower.iter().zip(upper).map(|(l, u)| l + (u - l) * rng.gen::<f64>()).collect()
            }
            GeometryKind::EuclideanSimplex | GeometryKind::EntropicSimplex => {
                let mut x: Vec<f64> = (0..self.dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                normalize(&mut x);
                if x.iter().any(|&xi| xi < self.clamp_eps) {
                    x.iter_mut().for_each(|xi| *xi = xi.max(self.clamp_eps));
                    normalize(&mut x);
                }
                x
            }
            GeometryKind::Product(u, v) => {
                let mut p = u.sample(rng);
                p.extend(v.sample(rng));
                p
            }
        }
    }

    /// Per-coordinate magnitudes `s` such that `dual_norm(signs ∘ s) = 1` for
    /// every sign pattern. Used to build bounded Rademacher noise.
    pub fn rademacher_scales(&self) -> Vec<f64> {
        match &self.kind {
            GeometryKind::EntropicSimplex => vec![1.0; self.dim],
            GeometryKind::Product(u, v) => {
                let k = 1.0 / (u.diameter_sq + v.diameter_sq).sqrt();
                u.rademacher_scales().into_iter().chain(v.rademacher_scales()).map(|s| s * k).collect()
            }
            _ => vec![1.0 / (self.dim as f64).sqrt(); self.dim],
        }
    }
}

fn normalize(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|xi| *xi /= s);
}

fn project_ball(mut z: Vec<f64>, radius: f64) -> Vec<f64> {
    let n = norm2(&z);
    if n > radius {
        let k = radius / n;
        z.iter_mut().for_each(|zi| *zi *= k);
    }
    z
}

/// Euclidean projection onto the probability simplex (sort and threshold).
pub fn project_simplex(z: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..z.len()).collect();
    // descending by value, ties by index
    order.sort_by(|&i, &j| z[j].total_cmp(&z[i]).then(i.cmp(&j)));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &i) in order.iter().enumerate() {
        cumulative += z[i];
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if z[i] - candidate > 0.0 {
            theta = candidate;
        }
    }
    z.iter().map(|zi| (zi - theta).max(0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_geometries() -> Vec<Geometry> {
        vec![
            Geometry::ball(3, 1.5).unwrap(),
            Geometry::boxed(vec![-1.0, 0.0, 2.0], vec![1.0, 0.5, 3.0]).unwrap(),
            Geometry::euclidean_simplex(4).unwrap(),
            Geometry::entropic_simplex(4).unwrap(),
            Geometry::product(Geometry::entropic_simplex(3).unwrap(), Geometry::entropic_simplex(2).unwrap()),
            Geometry::product(Geometry::ball(2, 1.0).unwrap(), Geometry::euclidean_simplex(3).unwrap()),
        ]
    }

    #[test]
    fn bregman_examples() {
        let ball = Geometry::ball(2, 2.0).unwrap();
        assert_abs_diff_eq!(ball.bregman(&[1.0, 0.0], &[0.0, 0.0]).unwrap(), 0.5, epsilon = 1e-15);

        let simplex3 = Geometry::entropic_simplex(3).unwrap();
        let u = simplex3.min_point();
        assert_abs_diff_eq!(simplex3.bregman(&u, &u).unwrap(), 0.0, epsilon = 1e-15);

        let simplex2 = Geometry::entropic_simplex(2).unwrap();
        let kl: f64 = 0.5 * (0.5f64 / 0.25).ln() + 0.5 * (0.5f64 / 0.75).ln();
        let got = simplex2.bregman(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        assert_abs_diff_eq!(got, kl, epsilon = 1e-15);
        assert_abs_diff_eq!(got, 0.5 * (4.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(got, 0.14384, epsilon = 1e-5);
    }

    #[test]
    fn bregman_errors() {
        let simplex = Geometry::entropic_simplex(3).unwrap();
        assert!(matches!(
            simplex.bregman(&[1.0, 0.0], &[0.5, 0.5]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(simplex.bregman(&[0.2, 0.3, 0.5], &[0.5, 0.5, 0.0]), Err(Error::Infeasible(_))));
    }

    #[test]
    fn prox_examples() {
        let simplex = Geometry::entropic_simplex(3).unwrap();
        let u = simplex.min_point();
        assert_eq!(simplex.prox_step(&u, &[0.0; 3], 1.0).unwrap(), u);

        let ball = Geometry::ball(2, 1.0).unwrap();
        let p = ball.prox_step(&[0.0, 0.0], &[2.0, 0.0], 1.0).unwrap();
        assert_abs_diff_eq!(p[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.0, epsilon = 1e-15);

        let esimplex = Geometry::euclidean_simplex(2).unwrap();
        let p = esimplex.prox_step(&[0.5, 0.5], &[-0.2, 0.2], 0.5).unwrap();
        assert_abs_diff_eq!(p[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.4, epsilon = 1e-15);
    }

    #[test]
    fn prox_errors() {
        let g = Geometry::ball(2, 1.0).unwrap();
        assert!(matches!(g.prox_step(&[0.0, 0.0], &[1.0, 0.0], 0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(g.prox_step(&[0.0, 0.0], &[1.0, 0.0], -1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(g.prox_step(&[0.0, 0.0], &[f64::NAN, 0.0], 1.0), Err(Error::NonFinite(_))));
    }

    #[test]
    fn entropic_prox_matches_multiplicative_weights() {
        let g = Geometry::entropic_simplex(2).unwrap();
        let p = g.prox_step(&[0.5, 0.5], &[1.0, 0.0], 1.0).unwrap();
        let e = (-1.0f64).exp();
        assert_abs_diff_eq!(p[0], e / (e + 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 1.0 / (e + 1.0), epsilon = 1e-15);
    }

    #[test]
    fn entropic_prox_clamps_to_interior() {
        let g = Geometry::entropic_simplex(3).unwrap();
        let p = g.prox_step(&g.min_point(), &[1e6, 0.0, 0.0], 1.0).unwrap();
        assert!(p[0] > 0.0 && p[0] <= 1.01e-12);
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn norm_examples() {
        let s = Geometry::entropic_simplex(3).unwrap();
        assert_eq!(s.primal_norm(&[1.0, -1.0, 0.0]).unwrap(), 2.0);
        assert_eq!(s.dual_norm(&[1.0, -1.0, 0.0]).unwrap(), 1.0);

        let p = Geometry::product(s.clone(), s.clone());
        let e1e1 = [1.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let ln3 = 3f64.ln();
        assert_abs_diff_eq!(p.primal_norm(&e1e1).unwrap(), (2.0 / ln3).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.dual_norm(&e1e1).unwrap(), (2.0 * ln3).sqrt(), epsilon = 1e-15);

        for g in all_geometries() {
            let zero = vec![0.0; g.dim()];
            assert_eq!(g.primal_norm(&zero).unwrap(), 0.0);
            assert_eq!(g.dual_norm(&zero).unwrap(), 0.0);
            assert!(g.dual_norm(&[1.0]).is_err() || g.dim() == 1);
        }
    }

    #[test]
    fn min_points() {
        assert_eq!(Geometry::entropic_simplex(4).unwrap().min_point(), vec![0.25; 4]);
        assert_eq!(Geometry::ball(3, 2.0).unwrap().min_point(), vec![0.0; 3]);
        let p = Geometry::product(Geometry::entropic_simplex(2).unwrap(), Geometry::entropic_simplex(3).unwrap());
        let m = p.min_point();
        assert_eq!(&m[..2], &[0.5, 0.5]);
        for mi in &m[2..] {
            assert_abs_diff_eq!(*mi, 1.0 / 3.0, epsilon = 1e-16);
        }
        for g in all_geometries() {
            assert_abs_diff_eq!(g.mirror(&g.min_point()).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn diameters() {
        assert_abs_diff_eq!(Geometry::entropic_simplex(3).unwrap().diameter(), 1.0481, epsilon = 1e-4);
        assert_abs_diff_eq!(Geometry::ball(2, 2.0).unwrap().diameter(), 2f64.sqrt(), epsilon = 1e-15);
        let p = Geometry::product(Geometry::entropic_simplex(2).unwrap(), Geometry::ball(2, 3.0).unwrap());
        assert_abs_diff_eq!(p.diameter(), 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn diameter_is_the_mirror_range_at_vertices() {
        // max of R is attained at a vertex for simplices and on the boundary for balls
        let s = Geometry::entropic_simplex(5).unwrap();
        assert_abs_diff_eq!(s.mirror(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap(), s.diameter_sq(), epsilon = 1e-15);
        let e = Geometry::euclidean_simplex(5).unwrap();
        assert_abs_diff_eq!(e.mirror(&[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap(), e.diameter_sq(), epsilon = 1e-15);
        let b = Geometry::ball(2, 2.0).unwrap();
        assert_abs_diff_eq!(b.mirror(&[0.0, 2.0]).unwrap(), b.diameter_sq(), epsilon = 1e-15);
        let bx = Geometry::boxed(vec![0.0, 0.0], vec![2.0, 4.0]).unwrap();
        assert_abs_diff_eq!(bx.mirror(&[0.0, 4.0]).unwrap(), bx.diameter_sq(), epsilon = 1e-15);
    }

    #[test]
    fn degenerate_sets_are_rejected() {
        assert!(Geometry::entropic_simplex(1).is_err());
        assert!(Geometry::euclidean_simplex(0).is_err());
        assert!(Geometry::ball(2, 0.0).is_err());
        assert!(Geometry::boxed(vec![1.0], vec![1.0]).is_err());
        assert!(Geometry::boxed(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn strong_convexity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in all_geometries() {
            for _ in 0..1000 {
                let x = g.sample(&mut rng);
                let y = g.sample(&mut rng);
                let lhs = g.bregman(&x, &y).unwrap();
                let rhs = 0.5 * g.primal_norm(&sub(&x, &y)).unwrap().powi(2);
                assert!(lhs >= rhs - 1e-10, "{:?}: {lhs} < {rhs}", g.kind());
            }
        }
    }

    #[test]
    fn prox_beats_random_feasible_candidates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in all_geometries() {
            for _ in 0..1000 {
                let anchor = g.sample(&mut rng);
                let dir: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
                let eta = rng.gen_range(0.05..3.0);
                let p = g.prox_step(&anchor, &dir, eta).unwrap();
                assert!(g.contains(&p, 1e-10));
                let objective = |x: &[f64]| dot(&dir, x) + g.bregman(x, &anchor).unwrap() / eta;
                let best = objective(&p);
                for _ in 0..100 {
                    let c = g.sample(&mut rng);
                    assert!(best <= objective(&c) + 1e-9, "{:?}", g.kind());
                }
            }
        }
    }

    #[test]
    fn generalized_cauchy_schwarz() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in all_geometries() {
            for _ in 0..1000 {
                let a: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let b: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let bound = g.dual_norm(&a).unwrap() * g.primal_norm(&b).unwrap();
                assert!(dot(&a, &b).abs() <= bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn product_dual_norm_is_the_supremum_over_unit_vectors() {
        let g = Geometry::product(Geometry::entropic_simplex(3).unwrap(), Geometry::entropic_simplex(2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let a: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let dual = g.dual_norm(&a).unwrap();
            let mut best = 0.0f64;
            for _ in 0..10_000 {
                // ℓ1 unit spheres are maximised at signed vertices; mix random directions with those
                let mut v: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                if rng.gen_bool(0.5) {
                    v = vec![0.0; g.dim()];
                    v[rng.gen_range(0..3)] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    v[3 + rng.gen_range(0..2)] = rng.gen_range(-1.0..1.0);
                }
                let n = g.primal_norm(&v).unwrap();
                if n > 0.0 {
                    best = best.max(dot(&a, &v) / n);
                }
            }
            assert!(best <= dual * (1.0 + 1e-12));
            assert!(best >= dual * 0.98, "monte-carlo sup {best} vs dual {dual}");
        }
    }

    #[test]
    fn zero_direction_is_a_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for g in all_geometries() {
            for _ in 0..100 {
                let a = g.sample(&mut rng);
                let p = g.prox_step(&a, &vec![0.0; g.dim()], 0.7).unwrap();
                let drift = sub(&p, &a).iter().fold(0.0f64, |m, d| m.max(d.abs()));
                assert!(drift <= g.clamp_eps() * g.dim() as f64 + 1e-15);
            }
        }
    }

    #[test]
    fn simplex_projection_sort_threshold() {
        assert_eq!(project_simplex(&[0.6, 0.4]), vec![0.6, 0.4]);
        let p = project_simplex(&[2.0, 0.0, 0.0]);
        assert_eq!(p, vec![1.0, 0.0, 0.0]);
        let p = project_simplex(&[0.5, 0.5, 0.5]);
        for pi in p {
            assert_abs_diff_eq!(pi, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn rademacher_scales_have_unit_dual_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in all_geometries() {
            let s = g.rademacher_scales();
            for _ in 0..50 {
                let v: Vec<f64> = s.iter().map(|si| if rng.gen_bool(0.5) { *si } else { -si }).collect();
                assert_abs_diff_eq!(g.dual_norm(&v).unwrap(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn linear_minimizer_is_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for g in all_geometries() {
            for _ in 0..200 {
                let c: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let best = g.linear_min_value(&c).unwrap();
                assert!(g.contains(&g.linear_minimizer(&c).unwrap(), 1e-12));
                for _ in 0..50 {
                    assert!(best <= dot(&c, &g.sample(&mut rng)) + 1e-12);
                }
            }
        }
    }
}
