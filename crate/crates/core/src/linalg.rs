//! Small dense-vector helpers shared by the geometry and solver code.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn norm1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Compensated (Kahan) running sum of vectors.
#[derive(Clone, Debug)]
pub struct KahanSum {
    sum: Vec<f64>,
    comp: Vec<f64>,
}

impl KahanSum {
    pub fn new(dim: usize) -> Self {
        Self { sum: vec![0.0; dim], comp: vec![0.0; dim] }
    }

    pub fn add(&mut self, v: &[f64]) {
        for ((s, c), &x) in self.sum.iter_mut().zip(self.comp.iter_mut()).zip(v) {
            let y = x - *c;
            let t = *s + y;
            *c = (t - *s) - y;
            *s = t;
        }
    }

    pub fn sum(&self) -> &[f64] {
        &self.sum
    }

    pub fn mean(&self, count: usize) -> Vec<f64> {
        let n = count as f64;
        self.sum.iter().map(|s| s / n).collect()
    }
}
