//! Independent numerical oracles used by the test suites.
//!
//! Everything here is deliberately implemented from first principles
//! (composite Simpson quadrature, central finite differences, empirical
//! CDF comparisons) so that a test never verifies an implementation
//! against itself.

use statrs::distribution::{ContinuousCDF, Normal};

/// Composite Simpson integration of `f` over `[a, b]` with `n` panels
/// (n is rounded up to the next even number).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        acc += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    acc * h / 3.0
}

fn normal_pdf(x: f64, mu: f64, sigma: f64) -> f64 {
    let z = (x - mu) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// E_{N(mu, sigma^2)}[f] by dense quadrature over [mu - 12 sigma, mu + 12 sigma].
pub fn gaussian_expectation<F: Fn(f64) -> f64>(f: F, mu: f64, sigma: f64) -> f64 {
    let a = mu - 12.0 * sigma;
    let b = mu + 12.0 * sigma;
    simpson(|x| f(x) * normal_pdf(x, mu, sigma), a, b, 8192)
}

/// d/dmu E_{N(mu, sigma^2)}[f] by central finite differences of the
/// quadrature expectation.
pub fn gaussian_derivative_wrt_mean<F: Fn(f64) -> f64>(f: F, mu: f64, sigma: f64) -> f64 {
    let h = 1e-5 * sigma.max(1e-3);
    (gaussian_expectation(&f, mu + h, sigma) - gaussian_expectation(&f, mu - h, sigma)) / (2.0 * h)
}

/// d/dsigma E_{N(mu, sigma^2)}[f] by central finite differences.
pub fn gaussian_derivative_wrt_sigma<F: Fn(f64) -> f64>(f: F, mu: f64, sigma: f64) -> f64 {
    let h = 1e-5 * sigma.max(1e-3);
    (gaussian_expectation(&f, mu, sigma + h) - gaussian_expectation(&f, mu, sigma - h)) / (2.0 * h)
}

/// E over a 2-D diagonal Gaussian by tensor-product Simpson quadrature.
pub fn gaussian_expectation_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    mu: [f64; 2],
    sigma: [f64; 2],
) -> f64 {
    let outer = |x0: f64| {
        simpson(
            |x1| f(x0, x1) * normal_pdf(x1, mu[1], sigma[1]),
            mu[1] - 10.0 * sigma[1],
            mu[1] + 10.0 * sigma[1],
            1024,
        )
    };
    simpson(
        |x0| outer(x0) * normal_pdf(x0, mu[0], sigma[0]),
        mu[0] - 10.0 * sigma[0],
        mu[0] + 10.0 * sigma[0],
        1024,
    )
}

/// Gradient of the 2-D Gaussian expectation w.r.t. (mu0, mu1, sigma0, sigma1)
/// by central finite differences of the tensor quadrature.
pub fn gaussian_expectation_2d_gradient<F: Fn(f64, f64) -> f64 + Copy>(
    f: F,
    mu: [f64; 2],
    sigma: [f64; 2],
) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..2 {
        let h = 1e-5 * sigma[i].max(1e-3);
        let mut mp = mu;
        let mut mm = mu;
        mp[i] += h;
        mm[i] -= h;
        out[i] = (gaussian_expectation_2d(f, mp, sigma) - gaussian_expectation_2d(f, mm, sigma))
            / (2.0 * h);
        let mut sp = sigma;
        let mut sm = sigma;
        sp[i] += h;
        sm[i] -= h;
        out[2 + i] = (gaussian_expectation_2d(f, mu, sp) - gaussian_expectation_2d(f, mu, sm))
            / (2.0 * h);
    }
    out
}

/// Kolmogorov-Smirnov statistic of a sample against the standard normal
/// CDF. Sorts the input in place.
pub fn ks_statistic_standard_normal(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let normal = Normal::new(0.0, 1.0).unwrap();
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let cdf = normal.cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((cdf - lo).abs()).max((hi - cdf).abs());
    }
    d
}

/// Central finite-difference gradient of a multivariate scalar function.
pub fn finite_difference_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut grad = vec![0.0; x.len()];
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        let step = h * (1.0 + x[i].abs());
        probe[i] = x[i] + step;
        let fp = f(&probe);
        probe[i] = x[i] - step;
        let fm = f(&probe);
        probe[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * step);
    }
    grad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        // Simpson is exact on cubics.
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 64);
        // integral: x^4/4 - x^2 + x over [-1, 3] = (81/4 - 9 + 3) - (1/4 - 1 - 1)
        let expected = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((v - expected).abs() < 1e-10);
    }

    #[test]
    fn gaussian_expectation_matches_closed_forms() {
        // E[x^2] = mu^2 + sigma^2
        let e = gaussian_expectation(|x| x * x, 1.5, 0.8);
        assert!((e - (1.5f64.powi(2) + 0.8f64.powi(2))).abs() < 1e-9);
        // E[cos x] = cos(mu) exp(-sigma^2/2)
        let e = gaussian_expectation(|x| x.cos(), 0.4, 1.1);
        let expected = 0.4f64.cos() * (-1.1f64 * 1.1 / 2.0).exp();
        assert!((e - expected).abs() < 1e-9);
    }

    #[test]
    fn gaussian_derivatives_match_closed_forms() {
        // d/dmu E[cos] = -sin(mu) exp(-sigma^2/2)
        let d = gaussian_derivative_wrt_mean(|x| x.cos(), 0.4, 1.1);
        let expected = -(0.4f64.sin()) * (-1.1f64 * 1.1 / 2.0).exp();
        assert!((d - expected).abs() < 1e-7);
        // d/dsigma E[cos] = -sigma cos(mu) exp(-sigma^2/2)
        let d = gaussian_derivative_wrt_sigma(|x| x.cos(), 0.4, 1.1);
        let expected = -1.1 * 0.4f64.cos() * (-1.1f64 * 1.1 / 2.0).exp();
        assert!((d - expected).abs() < 1e-7);
    }

    #[test]
    fn tensor_quadrature_matches_separable_closed_form() {
        // E[x0^2 + cos(x1)]
        let e = gaussian_expectation_2d(|x0, x1| x0 * x0 + x1.cos(), [0.5, -0.2], [0.9, 1.3]);
        let expected = 0.5f64.powi(2) + 0.9f64.powi(2)
            + (-0.2f64).cos() * (-1.3f64 * 1.3 / 2.0).exp();
        assert!((e - expected).abs() < 1e-8, "{e} vs {expected}");
    }

    #[test]
    fn ks_statistic_small_for_exact_quantiles() {
        let normal = Normal::new(0.0, 1.0).unwrap();
        let n = 10_000;
        let mut xs: Vec<f64> = (0..n)
            .map(|i| normal.inverse_cdf((i as f64 + 0.5) / n as f64))
            .collect();
        let d = ks_statistic_standard_normal(&mut xs);
        assert!(d < 1.0 / n as f64, "d = {d}");
    }

    #[test]
    fn fd_gradient_on_quadratic() {
        let g = finite_difference_gradient(|x| x[0] * x[0] + 3.0 * x[1], &[2.0, -1.0], 1e-6);
        assert!((g[0] - 4.0).abs() < 1e-6);
        assert!((g[1] - 3.0).abs() < 1e-6);
    }
}
