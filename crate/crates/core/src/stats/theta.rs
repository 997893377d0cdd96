//! Calibration of a term probability `theta` whose expected IDF matches an
//! observed IDF, and the expected ICF at that calibrated probability.

use super::{brent, expected_icf, expected_idf_from_histogram, DocSizeHistogram, RootOptions};
use crate::error::{Error, Result};
use crate::matrix::TermDocumentMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEstimate {
    pub theta: f64,
    /// The objective had no sign change on the bracket and `theta` is the
    /// endpoint with the smaller residual.
    pub clamped: bool,
}

/// Root finding of `E[idf](theta) - idf` on `[1/n, max_i n_i / n]` for a fixed
/// set of document sizes.
#[derive(Debug, Clone)]
pub struct ThetaCalibrator {
    sizes: DocSizeHistogram,
    lower: f64,
    upper: f64,
    options: RootOptions,
}

impl ThetaCalibrator {
    /// Bracket `[1/n, n*/n]` where `n*` is the largest total term frequency.
    pub fn from_matrix(matrix: &TermDocumentMatrix) -> Result<Self> {
        let n = matrix.total() as f64;
        Self::with_bracket(
            matrix.doc_sizes(),
            1.0 / n,
            matrix.max_row_total() as f64 / n,
        )
    }

    /// Explicit bracket. The upper end is capped just below one, where
    /// `E[idf]` is defined.
    pub fn with_bracket(doc_sizes: &[u64], lower: f64, upper: f64) -> Result<Self> {
        if doc_sizes.is_empty() {
            return Err(Error::Domain("no documents".into()));
        }
        if !(lower > 0.0 && lower <= upper) {
            return Err(Error::Domain(format!("invalid bracket [{lower}, {upper}]")));
        }
        let upper = upper.min(1.0 - f64::EPSILON);
        let lower = lower.min(upper);
        Ok(Self {
            sizes: DocSizeHistogram::new(doc_sizes),
            lower,
            upper,
            options: RootOptions::default(),
        })
    }

    pub fn bracket(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn total(&self) -> u64 {
        self.sizes.total()
    }

    pub fn num_docs(&self) -> u64 {
        self.sizes.num_docs()
    }

    pub fn expected_idf(&self, theta: f64) -> Result<f64> {
        expected_idf_from_histogram(theta, &self.sizes)
    }

    /// `theta_hat` with `E[idf](theta_hat) = idf_observed`.
    pub fn estimate(&self, idf_observed: f64) -> Result<ThetaEstimate> {
        if !(idf_observed >= 0.0 && idf_observed.is_finite()) {
            return Err(Error::Domain(format!(
                "observed idf = {idf_observed} must be finite and nonnegative"
            )));
        }
        // E[idf] > 0 for every theta < 1, so idf = 0 has no root in the bracket
        // even when E[idf] underflows to zero at the upper end
        if idf_observed == 0.0 {
            return Ok(ThetaEstimate {
                theta: self.upper,
                clamped: true,
            });
        }
        let f = |theta: f64| Ok(self.expected_idf(theta)? - idf_observed);
        let f_lo = f(self.lower)?;
        let f_hi = f(self.upper)?;
        if !(f_lo.is_finite() && f_hi.is_finite()) {
            return Err(Error::NonFinite("E[idf] at the bracket endpoints".into()));
        }
        let sign_change = f_lo == 0.0 || f_hi == 0.0 || (f_lo > 0.0) != (f_hi > 0.0);
        if !sign_change || self.lower == self.upper {
            let theta = if f_lo.abs() <= f_hi.abs() {
                self.lower
            } else {
                self.upper
            };
            return Ok(ThetaEstimate {
                theta,
                clamped: f_lo != 0.0 && f_hi != 0.0,
            });
        }
        let r = brent(f, self.lower, self.upper, self.options)?;
        Ok(ThetaEstimate {
            theta: r.root,
            clamped: false,
        })
    }

    /// Expected ICF at the `theta_hat` calibrated to `idf = log(d / b)`.
    pub fn conditional_expected_icf(&self, b: u64) -> Result<(f64, ThetaEstimate)> {
        let d = self.sizes.num_docs();
        if b == 0 || b > d {
            return Err(Error::Domain(format!("b = {b} outside 1..={d}")));
        }
        let idf = if b == d {
            0.0
        } else {
            (d as f64).ln() - (b as f64).ln()
        };
        let est = self.estimate(idf)?;
        Ok((expected_icf(est.theta, self.sizes.total())?, est))
    }
}

/// Calibrated `theta_hat` for an observed IDF on the matrix's document sizes.
pub fn estimate_theta(idf_observed: f64, matrix: &TermDocumentMatrix) -> Result<ThetaEstimate> {
    ThetaCalibrator::from_matrix(matrix)?.estimate(idf_observed)
}

/// Estimate of `E[icf | B = b]`: expected ICF at the `theta_hat` calibrated
/// to `log(d / b)`.
pub fn conditional_expected_icf(b: u64, matrix: &TermDocumentMatrix) -> Result<f64> {
    Ok(ThetaCalibrator::from_matrix(matrix)?
        .conditional_expected_icf(b)?
        .0)
}
