//! Least-squares fits and the Hill tail estimator.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FitReport {
    pub intercept: f64,
    pub slope: f64,
    /// Coefficient of determination; 0 when the response is constant.
    pub r_squared: f64,
    pub points: usize,
    pub x_min: f64,
    pub x_max: f64,
}

/// Ordinary least squares of `y` on `x`.
pub fn fit_linear(points: &[(f64, f64)]) -> Result<FitReport> {
    fit_weighted(points, &vec![1.0; points.len()])
}

/// Weighted least squares of `y` on `x`; R² is the weighted coefficient of
/// determination.
pub fn fit_weighted(points: &[(f64, f64)], weights: &[f64]) -> Result<FitReport> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if weights.len() != points.len() || weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::Degenerate(
            "weights must be positive and finite, one per point".into(),
        ));
    }
    let sw: f64 = weights.iter().sum();
    let wsum = |f: &dyn Fn(&(f64, f64)) -> f64| -> f64 {
        points.iter().zip(weights).map(|(p, w)| w * f(p)).sum()
    };
    let mx = wsum(&|p| p.0) / sw;
    let my = wsum(&|p| p.1) / sw;
    let sxx = wsum(&|p| (p.0 - mx).powi(2));
    let sxy = wsum(&|p| (p.0 - mx) * (p.1 - my));
    let syy = wsum(&|p| (p.1 - my).powi(2));
    if sxx <= 0.0 {
        return Err(Error::Degenerate("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 {
        let ss_res = wsum(&|p| (p.1 - intercept - slope * p.0).powi(2));
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (x_min, x_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.0), hi.max(p.0))
        });
    Ok(FitReport {
        intercept,
        slope,
        r_squared,
        points: points.len(),
        x_min,
        x_max,
    })
}

/// Fits `mean = alpha + beta * ln n` over `(n, mean)` points with distinct `n`.
pub fn fit_log_growth(series: &[(f64, f64)]) -> Result<FitReport> {
    let pts = log_points(series)?;
    fit_linear(&pts)
}

/// As [`fit_log_growth`], weighting each point by `1 / se^2`.
pub fn fit_log_growth_weighted(series: &[(f64, f64, f64)]) -> Result<FitReport> {
    let pts = log_points(&series.iter().map(|&(n, y, _)| (n, y)).collect::<Vec<_>>())?;
    let weights: Vec<f64> = series.iter().map(|&(_, _, se)| 1.0 / (se * se)).collect();
    fit_weighted(&pts, &weights)
}

fn log_points(series: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    let mut ns: Vec<f64> = series.iter().map(|p| p.0).collect();
    ns.sort_by(f64::total_cmp);
    if ns.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Degenerate("repeated n in growth series".into()));
    }
    if ns.first().is_some_and(|&n| n <= 0.0) {
        return Err(Error::Degenerate("n must be positive".into()));
    }
    Ok(series.iter().map(|&(n, y)| (n.ln(), y)).collect())
}

/// Fits `ln y = alpha + beta * ln n`; every `y` must be positive.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitReport> {
    if points.iter().any(|&(n, y)| n <= 0.0 || y <= 0.0) {
        return Err(Error::Degenerate(
            "power-law fit needs positive data".into(),
        ));
    }
    let pts: Vec<_> = points.iter().map(|&(n, y)| (n.ln(), y.ln())).collect();
    fit_linear(&pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    /// Estimated exponent of the probability mass, `1 + 1/mean log excess`.
    pub tau: f64,
    /// Number of top order statistics used.
    pub k: usize,
    /// The `(k + 1)`-th largest value.
    pub threshold: f64,
    pub sample_size: usize,
}

pub const MIN_TAIL_SAMPLE: usize = 1000;

/// Hill estimator on the top `ceil(sqrt(N))` order statistics.
pub fn estimate_tail_exponent(sample: &[f64]) -> Result<TailEstimate> {
    let n = sample.len();
    if n < MIN_TAIL_SAMPLE {
        return Err(Error::Degenerate(format!(
            "tail estimation needs at least {MIN_TAIL_SAMPLE} values, got {n}"
        )));
    }
    if sample.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
        return Err(Error::Degenerate(
            "tail sample must be positive and finite".into(),
        ));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let k = (n as f64).sqrt().ceil() as usize;
    let threshold = sorted[k];
    let mean: f64 = sorted[..k]
        .iter()
        .map(|&x| (x / threshold).ln())
        .sum::<f64>()
        / k as f64;
    if mean <= 0.0 {
        return Err(Error::Degenerate("top of the sample is constant".into()));
    }
    Ok(TailEstimate {
        tau: 1.0 + 1.0 / mean,
        k,
        threshold,
        sample_size: n,
    })
}

/// Mean and sample standard deviation.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_log_series() {
        let series: Vec<_> = [10.0, 100.0, 1000.0, 1e4]
            .iter()
            .map(|&n: &f64| (n, 2.0 + 3.0 * n.ln()))
            .collect();
        let fit = fit_log_growth(&series).unwrap();
        assert!((fit.intercept - 2.0).abs() < 1e-12);
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series() {
        let fit = fit_log_growth(&[(2.0, 5.0), (4.0, 5.0), (8.0, 5.0)]).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r_squared, 0.0);
    }

    #[test]
    fn degenerate_series() {
        assert!(fit_log_growth(&[(2.0, 1.0), (4.0, 2.0)]).is_err());
        assert!(fit_log_growth(&[(2.0, 1.0), (2.0, 2.0), (4.0, 3.0)]).is_err());
        assert!(fit_power_law(&[(2.0, 0.0), (4.0, 2.0), (8.0, 3.0)]).is_err());
    }

    #[test]
    fn weighted_fit_downweights_noisy_points() {
        let series = [
            (2.0, 1.0, 0.01),
            (4.0, 2.0, 0.01),
            (8.0, 3.0, 0.01),
            (16.0, 40.0, 1e6),
        ];
        let fit = fit_log_growth_weighted(&series).unwrap();
        assert!((fit.slope - 1.0 / 2f64.ln()).abs() < 1e-6);
        assert!(
            fit_log_growth_weighted(&[(2.0, 1.0, 0.0), (4.0, 2.0, 1.0), (8.0, 3.0, 1.0)]).is_err()
        );
        let exact = [(2.0, 1.0), (4.0, 2.0), (8.0, 4.0)];
        let unit = fit_weighted(&exact, &[1.0; 3]).unwrap();
        assert_eq!(unit, fit_linear(&exact).unwrap());
    }

    #[test]
    fn tail_errors() {
        assert!(estimate_tail_exponent(&vec![3.0; 5000]).is_err());
        assert!(estimate_tail_exponent(&[1.0; 10]).is_err());
    }

    #[test]
    fn mean_and_sd() {
        let (m, s) = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - 1.6666666666666667f64.sqrt()).abs() < 1e-12);
    }
}
