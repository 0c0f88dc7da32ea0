//! Small statistics helpers shared by the experiment code: sample moments,
//! Student-t confidence intervals, and a one-sided slope test used by the
//! critic-noise sweep.

use statrs::distribution::{ContinuousCDF, StudentsT};

/// Sample mean. Empty input yields 0.
pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance (denominator n-1). Fewer than two values yields 0.
pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Standard error of the mean.
pub fn standard_error(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    (sample_variance(xs) / xs.len() as f64).sqrt()
}

/// Median; averages the two central order statistics for even n.
pub fn median(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty(), "median of empty slice");
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("non-finite value in median"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Two-sided Student-t quantile t_{1-(1-level)/2, dof}.
pub fn t_quantile_two_sided(level: f64, dof: f64) -> f64 {
    assert!(dof >= 1.0, "need at least 1 degree of freedom");
    let t = StudentsT::new(0.0, 1.0, dof).expect("valid t distribution");
    t.inverse_cdf(1.0 - (1.0 - level) / 2.0)
}

/// One-sided Student-t quantile t_{level, dof}.
pub fn t_quantile_one_sided(level: f64, dof: f64) -> f64 {
    assert!(dof >= 1.0, "need at least 1 degree of freedom");
    let t = StudentsT::new(0.0, 1.0, dof).expect("valid t distribution");
    t.inverse_cdf(level)
}

/// Aggregate of one experiment group: mean plus a Student-t confidence
/// interval half-width over the group members.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub mean: f64,
    /// Half-width of the confidence interval; `None` when count < 2.
    pub ci_half_width: Option<f64>,
    pub count: usize,
}

/// Mean and Student-t confidence-interval half-width at `level` (e.g. 0.95).
pub fn aggregate(xs: &[f64], level: f64) -> Aggregate {
    let n = xs.len();
    if n < 2 {
        return Aggregate {
            mean: mean(xs),
            ci_half_width: None,
            count: n,
        };
    }
    let se = standard_error(xs);
    let t = t_quantile_two_sided(level, (n - 1) as f64);
    Aggregate {
        mean: mean(xs),
        ci_half_width: Some(t * se),
        count: n,
    }
}

/// Ordinary least-squares fit y = a + b x with a one-sided t statistic for
/// the slope b.
#[derive(Debug, Clone)]
pub struct SlopeTest {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub t_stat: f64,
    pub dof: f64,
    /// true when the slope is significantly positive at the given level
    pub significantly_positive: bool,
}

/// One-sided test of H0: slope <= 0 against H1: slope > 0 at `level`.
///
/// Degenerate fits (zero x-spread or fewer than 3 points) report a
/// non-significant slope of 0.
pub fn slope_positivity_test(xs: &[f64], ys: &[f64], level: f64) -> SlopeTest {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 3 {
        return SlopeTest {
            slope: 0.0,
            intercept: if n > 0 { mean(ys) } else { 0.0 },
            slope_se: 0.0,
            t_stat: 0.0,
            dof: 0.0,
            significantly_positive: false,
        };
    }
    let xm = mean(xs);
    let ym = mean(ys);
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    if sxx <= 0.0 {
        return SlopeTest {
            slope: 0.0,
            intercept: ym,
            slope_se: 0.0,
            t_stat: 0.0,
            dof: 0.0,
            significantly_positive: false,
        };
    }
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let dof = (n - 2) as f64;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let sigma2 = rss / dof;
    let slope_se = (sigma2 / sxx).sqrt();
    let t_stat = if slope_se > 0.0 { slope / slope_se } else { 0.0 };
    let t_crit = t_quantile_one_sided(level, dof);
    SlopeTest {
        slope,
        intercept,
        slope_se,
        t_stat,
        dof,
        significantly_positive: t_stat > t_crit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_pair_ci_matches_t_table() {
        // sd of {-1, 1} is sqrt(2), SE is 1, t at 1 dof is 12.7062...
        let agg = aggregate(&[-1.0, 1.0], 0.95);
        assert_eq!(agg.mean, 0.0);
        assert_eq!(agg.count, 2);
        let hw = agg.ci_half_width.expect("two samples give a CI");
        assert!((hw - 12.7062047361747).abs() < 1e-6, "got {hw}");
    }

    #[test]
    fn single_value_has_no_ci() {
        let agg = aggregate(&[3.5], 0.95);
        assert_eq!(agg.mean, 3.5);
        assert!(agg.ci_half_width.is_none());
        assert_eq!(agg.count, 1);
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn slope_test_detects_clear_trend() {
        let xs: Vec<f64> = (0..40).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let t = slope_positivity_test(&xs, &ys, 0.95);
        assert!((t.slope - 2.0).abs() < 1e-12);
        assert!(t.significantly_positive);

        let flat: Vec<f64> = xs.iter().map(|x| 5.0 - 0.5 * x).collect();
        let t = slope_positivity_test(&xs, &flat, 0.95);
        assert!(!t.significantly_positive);
    }

    #[test]
    fn slope_test_degenerate_inputs() {
        let t = slope_positivity_test(&[1.0, 1.0, 1.0], &[0.0, 5.0, -5.0], 0.95);
        assert!(!t.significantly_positive);
        assert_eq!(t.slope, 0.0);
    }
}
