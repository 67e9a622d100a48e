use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::VIProblem;
use crate::error::{Error, Result};
use crate::rng::{stream, Stream};

const MEMBERSHIP_TOL: f64 = 1e-9;

/// Unbiased, almost-surely bounded noisy evaluations of a problem's operator.
///
/// Each call returns `F(x) + ζ` where every coordinate of `ζ` is
/// `±noise_bound·sᵢ` with an independent fair sign and `s` chosen from the
/// geometry so that `‖ζ‖* = noise_bound` exactly. Hence `E ζ = 0`,
/// `E‖ζ‖*² = noise_bound²`, and samples are bounded by `G + noise_bound`.
///
/// The variance is kept for verification only; the solver never reads it.
#[derive(Debug, Clone)]
pub struct StochasticOracle {
    base: VIProblem,
    noise_bound: f64,
    seed: u64,
    scales: Vec<f64>,
    rng: ChaCha8Rng,
}

impl StochasticOracle {
    pub fn new(base: VIProblem, noise_bound: f64, seed: u64) -> Result<Self> {
        if !(noise_bound.is_finite() && noise_bound >= 0.0) {
            return Err(Error::InvalidParameter(format!("noise bound must be nonnegative, got {noise_bound}")));
        }
        let scales = base.geometry().rademacher_scales().into_iter().map(|s| s * noise_bound).collect();
        Ok(Self { base, noise_bound, seed, scales, rng: stream(seed, Stream::OracleNoise) })
    }

    pub fn base(&self) -> &VIProblem {
        &self.base
    }

    pub fn noise_bound(&self) -> f64 {
        self.noise_bound
    }

    /// `E‖F̃(x) − F(x)‖*²` of this noise model.
    pub fn sigma_sq(&self) -> f64 {
        self.noise_bound * self.noise_bound
    }

    /// Almost-sure bound on `‖F̃(x)‖*`.
    pub fn g_bound(&self) -> f64 {
        self.base.g_bound() + self.noise_bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh noisy sample of `F(x)`.
    pub fn noisy_eval(&mut self, x: &[f64]) -> Result<Vec<f64>> {
        if !self.base.geometry().contains(x, MEMBERSHIP_TOL) {
            return Err(Error::Infeasible("noisy oracle queried outside K".into()));
        }
        let mut value = self.base.eval(x);
        if self.noise_bound > 0.0 {
            for (v, s) in value.iter_mut().zip(&self.scales) {
                *v += if self.rng.gen::<bool>() { *s } else { -s };
            }
        }
        Ok(value)
    }
}
