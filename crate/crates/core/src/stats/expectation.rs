//! Second-order Taylor expectations of ICF and IDF under the multinomial model.
//!
//! With `rho = 1 - theta`, `mu` the expected document length, `x = mu theta`
//! and `psi = exp(x) - 1`:
//!
//! ```text
//! E[icf]        = (1 - theta) / (2 n theta) - log(theta)
//! E[idf]        = (S1 - S2) / (2 d^2 (1 - S1/d)^2) - log(1 - S1/d)
//!                 where S1 = sum_j rho^{n_j}, S2 = sum_j rho^{2 n_j}
//! E[idf] approx = exp(-x) / (2 d (1 - exp(-x))) - log(1 - exp(-x))
//! E[icf]       ~= E[idf] - log(theta / psi) - (x - (1 - theta) psi) / (2 d x psi) - x
//! ```
//!
//! As `theta -> 0` the last relation tends to `E[idf] + (mu/2 - 1)/(2 d mu) + log(mu)`.
//!
//! All sums are formed from `phi_j = 1 - rho^{n_j}` computed with `expm1`, so
//! `1 - S1/d` keeps full relative precision for rare terms.

// `!(x > 0.0)` also rejects NaN, which is the point
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use super::DocSizeHistogram;
use crate::error::{Error, Result};

fn check_open_unit(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta = {theta} must lie in (0, 1)")))
    }
}

/// Expected ICF of a term with probability `theta` in a corpus of `n` tokens.
pub fn expected_icf(theta: f64, n: u64) -> Result<f64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::Domain(format!("theta = {theta} must lie in (0, 1]")));
    }
    if n == 0 {
        return Err(Error::Domain("corpus size n must be positive".into()));
    }
    Ok((1.0 - theta) / (2.0 * n as f64 * theta) - theta.ln())
}

/// Expected IDF using the per-document sizes.
pub fn expected_idf_exact(theta: f64, doc_sizes: &[u64]) -> Result<f64> {
    expected_idf_from_histogram(theta, &DocSizeHistogram::new(doc_sizes))
}

/// [`expected_idf_exact`] over pre-grouped document sizes.
pub fn expected_idf_from_histogram(theta: f64, sizes: &DocSizeHistogram) -> Result<f64> {
    check_open_unit(theta)?;
    if sizes.num_docs() == 0 {
        return Err(Error::Domain("no documents".into()));
    }
    let log_rho = (-theta).ln_1p();
    let d = sizes.num_docs() as f64;
    // sum_j phi_j and sum_j rho^{n_j} (1 - rho^{n_j}) = S1 - S2
    let mut phi_sum = 0.0;
    let mut var_sum = 0.0;
    for &(size, mult) in sizes.bins() {
        let e = size as f64 * log_rho;
        let rho_n = e.exp();
        let phi = -e.exp_m1();
        phi_sum += mult as f64 * phi;
        var_sum += mult as f64 * rho_n * phi;
    }
    let coverage = phi_sum / d;
    if !(coverage * coverage > 0.0) {
        return Err(Error::Domain(format!(
            "theta = {theta} is below the representable support (mean coverage underflows)"
        )));
    }
    let value = var_sum / (2.0 * d * d * coverage * coverage) - coverage.ln();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("E[idf] at theta = {theta}")))
    }
}

/// Expected IDF with `rho^{n_j}` replaced by `exp(-mu theta)`.
pub fn expected_idf_approx(theta: f64, mu: f64, d: u64) -> Result<f64> {
    check_open_unit(theta)?;
    check_mu_d(mu, d)?;
    let x = mu * theta;
    let miss = (-x).exp();
    let cover = -(-x).exp_m1();
    if !(cover > 0.0) {
        return Err(Error::Domain(format!(
            "mu * theta = {x} too small: 1 - exp(-mu theta) underflows"
        )));
    }
    Ok(miss / (2.0 * d as f64 * cover) - cover.ln())
}

fn check_mu_d(mu: f64, d: u64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("mu = {mu} must be positive")));
    }
    if d == 0 {
        return Err(Error::Domain("d must be positive".into()));
    }
    Ok(())
}

/// `expm1(x) - x` without cancellation for small `x`.
fn expm1_minus_x(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x2 * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x * (1.0 / 120.0 + x / 720.0))))
    } else {
        x.exp_m1() - x
    }
}

/// `E[icf] - E[idf]` under the relation, i.e.
/// `-log(theta/psi) - (x - (1-theta) psi)/(2 d x psi) - x`, evaluated without
/// forming `E[idf]` so the `theta -> 0` limit stays accurate.
pub fn expected_relation_offset(theta: f64, mu: f64, d: u64) -> Result<f64> {
    check_open_unit(theta)?;
    check_mu_d(mu, d)?;
    let x = mu * theta;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("mu * theta = {x} underflows")));
    }
    // log(psi / theta) = log(mu) + log(psi / x)
    let log_psi_over_x = if x < 1.0 {
        (expm1_minus_x(x) / x).ln_1p()
    } else {
        x + (-(-x).exp()).ln_1p() - x.ln()
    };
    // (psi - x) / psi, so that (x - (1 - theta) psi) / psi = theta - frac
    let frac = if x < 1e-2 {
        expm1_minus_x(x) / x.exp_m1()
    } else {
        1.0 - x / x.exp_m1()
    };
    let value = mu.ln() + log_psi_over_x - (theta - frac) / (2.0 * d as f64 * x) - x;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("relation offset at theta = {theta}")))
    }
}

/// Expected ICF predicted from the approximate expected IDF through the
/// IDF/ICF relation.
pub fn expected_relation(theta: f64, mu: f64, d: u64) -> Result<f64> {
    Ok(expected_idf_approx(theta, mu, d)? + expected_relation_offset(theta, mu, d)?)
}

/// Limit of [`expected_relation_offset`] as `theta -> 0`:
/// `(mu/2 - 1) / (2 d mu) + log(mu)`.
pub fn asymptotic_offset(mu: f64, d: u64) -> Result<f64> {
    check_mu_d(mu, d)?;
    Ok((mu / 2.0 - 1.0) / (2.0 * d as f64 * mu) + mu.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn icf_at_theta_one_is_zero() {
        for n in [1, 10, 1_000_000] {
            assert_eq!(expected_icf(1.0, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn icf_by_hand() {
        let v = expected_icf(0.5, 100).unwrap();
        assert!((v - (0.005 + LN_2)).abs() < 1e-15);
        assert!((v - 0.698147).abs() < 1e-6);
    }

    #[test]
    fn icf_domain() {
        assert!(expected_icf(0.0, 10).is_err());
        assert!(expected_icf(1.5, 10).is_err());
        assert!(expected_icf(0.5, 0).is_err());
    }

    #[test]
    fn idf_exact_two_unit_docs() {
        // S1 = 1, S2 = 0.5 -> 0.5 / (2 * 4 * 0.25) + log 2
        let v = expected_idf_exact(0.5, &[1, 1]).unwrap();
        assert!((v - (0.25 + LN_2)).abs() < 1e-15);
        assert!((v - 0.943147).abs() < 1e-6);
    }

    #[test]
    fn idf_exact_near_one_vanishes() {
        let v = expected_idf_exact(1.0 - 1e-12, &[3, 5, 7]).unwrap();
        assert!(v.abs() < 1e-11, "{v}");
        assert!(expected_idf_exact(1.0, &[3]).is_err());
    }

    #[test]
    fn idf_exact_underflow_is_domain_error() {
        assert!(matches!(
            expected_idf_exact(1e-320, &[1, 1]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn idf_approx_by_hand() {
        let v = expected_idf_approx(0.01, 100.0, 1000).unwrap();
        let e = (-1.0f64).exp();
        let naive = e / (2000.0 * (1.0 - e)) - (1.0 - e).ln();
        assert!((v - naive).abs() < 1e-14);
        assert!((v - 0.458966).abs() < 1e-6);
    }

    #[test]
    fn idf_approx_large_mu_theta_vanishes() {
        let v = expected_idf_approx(0.9, 1e4, 10).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn relation_is_expected_icf_at_n_eq_mu_d() {
        // Algebraically E[idf]approx + offset == (1-theta)/(2 mu d theta) - log theta.
        for &(mu, d) in &[(181.3, 2000u64), (100.0, 50), (3.0, 7)] {
            for k in 0..60 {
                let theta = 10f64.powf(-7.0 + 6.9 * k as f64 / 59.0);
                let rel = expected_relation(theta, mu, d).unwrap();
                let icf = (1.0 - theta) / (2.0 * mu * d as f64 * theta) - theta.ln();
                assert!(
                    (rel - icf).abs() <= 1e-10 * icf.abs().max(1.0),
                    "theta={theta} mu={mu}: {rel} vs {icf}"
                );
            }
        }
    }

    #[test]
    fn expm1_minus_x_branches_agree() {
        for &x in &[1e-3, 5e-3, 9.99e-3] {
            let series = expm1_minus_x(x);
            let direct = x.exp_m1() - x;
            assert!((series - direct).abs() <= 1e-12 * direct, "{x}");
        }
    }

    #[test]
    fn strictly_decreasing_on_grid() {
        let sizes: Vec<u64> = (1..=40).map(|j| 20 + 7 * j).collect();
        let mut prev_idf = f64::INFINITY;
        let mut prev_icf = f64::INFINITY;
        for k in 0..200 {
            let theta = 10f64.powf(-6.0 + 5.5 * k as f64 / 199.0);
            let idf = expected_idf_exact(theta, &sizes).unwrap();
            let icf = expected_icf(theta, 10_000).unwrap();
            assert!(idf < prev_idf, "E[idf] not decreasing at {theta}");
            assert!(icf < prev_icf, "E[icf] not decreasing at {theta}");
            prev_idf = idf;
            prev_icf = icf;
        }
    }
}
