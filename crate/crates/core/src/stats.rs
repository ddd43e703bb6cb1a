//! Small statistics helpers shared by the experiment harness: means with
//! standard errors, chi-square tests, and least-squares growth fits.
//!
//! Aggregations take slices indexed by replica, so results are independent
//! of the scheduling order that produced them.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Sample mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::INFINITY);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

/// Chi-square goodness-of-fit p-value for observed counts against expected
/// counts (expected need not be uniform; must be positive).
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), expected.len());
    assert!(observed.len() >= 2);
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    let dist = ChiSquared::new(df).expect("positive degrees of freedom");
    let p = 1.0 - dist.cdf(stat);
    (stat, p)
}

/// Chi-square p-value against the uniform distribution over the cells.
pub fn chi_square_uniform_p(observed: &[u64]) -> (f64, f64) {
    let total: u64 = observed.iter().sum();
    let e = total as f64 / observed.len() as f64;
    let expected = vec![e; observed.len()];
    chi_square_p(observed, &expected)
}

/// Ordinary least squares `y ~ intercept + slope * x`.
/// Returns `(slope, intercept, residual sum of squares)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    (slope, intercept, rss)
}

/// Growth models fitted to horizon curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthModel {
    Log,
    Sqrt,
    Linear,
}

impl GrowthModel {
    pub fn transform(self, h: f64) -> f64 {
        match self {
            GrowthModel::Log => h.ln(),
            GrowthModel::Sqrt => h.sqrt(),
            GrowthModel::Linear => h,
        }
    }
}

/// Least-squares fit of `value ~ a + slope * transform(horizon)` for each
/// candidate model; the model with the smallest residual wins.
pub fn fit_growth(horizons: &[f64], values: &[f64]) -> (GrowthModel, f64) {
    let mut best = (GrowthModel::Linear, 0.0, f64::INFINITY);
    for model in [GrowthModel::Log, GrowthModel::Sqrt, GrowthModel::Linear] {
        let xs: Vec<f64> = horizons.iter().map(|&h| model.transform(h)).collect();
        let (slope, _, rss) = linear_fit(&xs, values);
        if rss < best.2 {
            best = (model, slope, rss);
        }
    }
    (best.0, best.1)
}
