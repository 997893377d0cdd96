//! Multinomial language-model expectations of ICF and IDF, the relation
//! between them, and calibration of a term probability from an observed IDF.

mod expectation;
mod gamma;
mod root;
mod theta;

pub use expectation::{
    asymptotic_offset, expected_icf, expected_idf_approx, expected_idf_exact,
    expected_idf_from_histogram, expected_relation, expected_relation_offset,
};
pub use gamma::{chi_squared_log_sf, ln_upper_regularized_gamma};
pub use root::{brent, RootOptions, RootResult};
pub use theta::{conditional_expected_icf, estimate_theta, ThetaCalibrator, ThetaEstimate};

use crate::error::{Error, Result};

/// Parameters of the multinomial language model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    thetas: Vec<f64>,
    doc_sizes: Vec<u64>,
    mu: f64,
}

impl ModelParams {
    /// Validates `thetas` (each in `(0, 1]`, summing to one within 1e-12) and
    /// `doc_sizes` (nonempty, positive). `mu` defaults to `n / d`.
    pub fn new(thetas: Vec<f64>, doc_sizes: Vec<u64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidParams("empty theta vector".into()));
        }
        if let Some(t) = thetas.iter().find(|t| !(**t > 0.0 && **t <= 1.0)) {
            return Err(Error::InvalidParams(format!("theta {t} outside (0, 1]")));
        }
        let sum: f64 = thetas.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!("thetas sum to {sum}, not 1")));
        }
        if doc_sizes.is_empty() || doc_sizes.contains(&0) {
            return Err(Error::InvalidParams(
                "document sizes must be a nonempty list of positive integers".into(),
            ));
        }
        let n: u64 = doc_sizes.iter().sum();
        let mu = n as f64 / doc_sizes.len() as f64;
        Ok(Self {
            thetas,
            doc_sizes,
            mu,
        })
    }

    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidParams(format!("mu = {mu} must be positive")));
        }
        self.mu = mu;
        Ok(self)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn doc_sizes(&self) -> &[u64] {
        &self.doc_sizes
    }

    pub fn num_docs(&self) -> usize {
        self.doc_sizes.len()
    }

    pub fn total(&self) -> u64 {
        self.doc_sizes.iter().sum()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `rho_i = 1 - theta_i`.
    pub fn rho(&self, i: usize) -> f64 {
        1.0 - self.thetas[i]
    }

    /// `psi_i = exp(mu theta_i) - 1`.
    pub fn psi(&self, i: usize) -> f64 {
        (self.mu * self.thetas[i]).exp_m1()
    }
}

/// Document sizes grouped as `(size, multiplicity)`, ascending by size.
///
/// `rho^{n_j}` only depends on `n_j`, so sums over documents collapse onto the
/// distinct sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct DocSizeHistogram {
    bins: Vec<(u64, u64)>,
    num_docs: u64,
    total: u64,
}

impl DocSizeHistogram {
    pub fn new(sizes: &[u64]) -> Self {
        let mut sorted = sizes.to_vec();
        sorted.sort_unstable();
        let mut bins: Vec<(u64, u64)> = Vec::new();
        for s in sorted {
            match bins.last_mut() {
                Some((size, mult)) if *size == s => *mult += 1,
                _ => bins.push((s, 1)),
            }
        }
        Self {
            bins,
            num_docs: sizes.len() as u64,
            total: sizes.iter().sum(),
        }
    }

    pub fn bins(&self) -> &[(u64, u64)] {
        &self.bins
    }

    pub fn num_docs(&self) -> u64 {
        self.num_docs
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}
