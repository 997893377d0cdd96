//! Brute-force exact significance test for burstiness at toy scale.
//!
//! The test statistic is the conditional tail `Pr(N_i >= n_i | B_i = b_i)`
//! under the multinomial model with fixed document sizes. The numerator is
//! obtained by enumerating every term-document matrix; the denominator is the
//! Poisson-binomial PMF of `B_i` with `phi_j = 1 - (1 - theta_i)^{n_j}`.

mod enumerate;
mod poisson_binomial;
mod proxy;
mod simulate;
mod sum;

pub use enumerate::{enumerate_joint, exact_tail, ExactTest, JointDistribution};
pub use poisson_binomial::{
    poisson_binomial_distribution, poisson_binomial_pmf, poisson_binomial_pmf_subsets,
};
pub use proxy::{default_toy_grid, ricf_vs_exact_report, spearman, ProxyCell, ProxyReport};
pub use simulate::{
    monte_carlo_tail, sample_document, simulate_corpus, simulated_term, McTail,
};
pub use sum::MassAccumulator;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated term-document matrices.
pub const DEFAULT_MAX_STATES: u128 = 10_000_000;

/// A toy multinomial corpus model with one focus term.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyConfig {
    thetas: Vec<f64>,
    doc_sizes: Vec<u64>,
    focus: usize,
}

impl ToyConfig {
    pub fn new(thetas: Vec<f64>, doc_sizes: Vec<u64>, focus: usize) -> Result<Self> {
        // reuse the model-parameter validation
        crate::stats::ModelParams::new(thetas.clone(), doc_sizes.clone())?;
        if focus >= thetas.len() {
            return Err(Error::InvalidParams(format!(
                "focus term {focus} out of range for {} terms",
                thetas.len()
            )));
        }
        Ok(Self {
            thetas,
            doc_sizes,
            focus,
        })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn doc_sizes(&self) -> &[u64] {
        &self.doc_sizes
    }

    pub fn focus(&self) -> usize {
        self.focus
    }

    pub fn focus_theta(&self) -> f64 {
        self.thetas[self.focus]
    }

    pub fn total(&self) -> u64 {
        self.doc_sizes.iter().sum()
    }

    /// `phi_j = 1 - (1 - theta_focus)^{n_j}`: probability the focus term occurs in document `j`.
    pub fn phis(&self) -> Vec<f64> {
        let log_rho = (-self.focus_theta()).ln_1p();
        self.doc_sizes
            .iter()
            .map(|&n| -(n as f64 * log_rho).exp_m1())
            .collect()
    }

    /// Number of term-document matrices with these column sums:
    /// `prod_j C(n_j + m - 1, m - 1)`, saturating.
    pub fn state_count(&self) -> u128 {
        let m = self.thetas.len() as u128;
        self.doc_sizes.iter().fold(1u128, |acc, &n| {
            acc.saturating_mul(binomial(n as u128 + m - 1, m - 1))
        })
    }

    /// Short human-readable description used in report headers.
    pub fn describe(&self) -> String {
        let thetas: Vec<String> = self.thetas.iter().map(|t| format!("{t}")).collect();
        let sizes: Vec<String> = self.doc_sizes.iter().map(|s| s.to_string()).collect();
        format!(
            "thetas=({}) sizes=({}) focus={}",
            thetas.join(","),
            sizes.join(","),
            self.focus
        )
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_count_matches_stars_and_bars() {
        let c = ToyConfig::new(vec![0.5, 0.5], vec![2, 2], 0).unwrap();
        assert_eq!(c.state_count(), 9);
        let c = ToyConfig::new(vec![0.2, 0.3, 0.5], vec![3, 3, 3], 1).unwrap();
        assert_eq!(c.state_count(), 1000);
        assert_eq!(binomial(12, 3), 220);
    }

    #[test]
    fn rejects_bad_focus() {
        assert!(ToyConfig::new(vec![0.5, 0.5], vec![1], 2).is_err());
    }

    #[test]
    fn phis_by_hand() {
        let c = ToyConfig::new(vec![0.5, 0.5], vec![2, 1], 0).unwrap();
        let p = c.phis();
        assert!((p[0] - 0.75).abs() < 1e-15);
        assert!((p[1] - 0.5).abs() < 1e-15);
    }
}
