use std::collections::BTreeMap;

use statrs::function::gamma::ln_gamma;

use super::{poisson_binomial_pmf, MassAccumulator, ToyConfig};
use crate::error::{Error, Result};

/// Joint distribution of the focus term's `(N_i, B_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    cells: BTreeMap<(u64, u64), f64>,
    states: u128,
}

impl JointDistribution {
    /// `Pr(N_i = k, B_i = b)`.
    pub fn prob(&self, k: u64, b: u64) -> f64 {
        self.cells.get(&(k, b)).copied().unwrap_or(0.0)
    }

    /// Cells with positive mass, keyed by `(k, b)`.
    pub fn cells(&self) -> &BTreeMap<(u64, u64), f64> {
        &self.cells
    }

    /// Number of matrices enumerated.
    pub fn states(&self) -> u128 {
        self.states
    }

    pub fn total_mass(&self) -> f64 {
        let mut acc = MassAccumulator::new();
        self.cells.values().for_each(|&p| acc.add(p));
        acc.value()
    }

    /// `Pr(B_i = b)` summed from the joint.
    pub fn marginal_b(&self, b: u64) -> f64 {
        let mut acc = MassAccumulator::new();
        self.cells
            .iter()
            .filter(|((_, bb), _)| *bb == b)
            .for_each(|(_, &p)| acc.add(p));
        acc.value()
    }

    /// `sum_{k >= n} Pr(N_i = k, B_i = b)`.
    pub fn tail_mass(&self, n: u64, b: u64) -> f64 {
        let mut acc = MassAccumulator::new();
        self.cells
            .range((n, 0)..)
            .filter(|((_, bb), _)| *bb == b)
            .for_each(|(_, &p)| acc.add(p));
        acc.value()
    }
}

/// All ways to write `n` as an ordered sum of `m` nonnegative integers.
fn compositions(n: u64, m: usize) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in 0..=remaining {
            prefix.push(c);
            rec(remaining - c, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut Vec::with_capacity(m), &mut out);
    out
}

fn ln_factorial(k: u64) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// Exhaustively enumerates every term-document matrix with the configured
/// column sums and aggregates probability mass by the focus term's `(N_i, B_i)`.
pub fn enumerate_joint(config: &ToyConfig, max_states: u128) -> Result<JointDistribution> {
    let states = config.state_count();
    if states > max_states {
        return Err(Error::Infeasible {
            required: states,
            limit: max_states,
        });
    }
    let m = config.thetas().len();
    let log_theta: Vec<f64> = config.thetas().iter().map(|t| t.ln()).collect();
    let focus = config.focus();

    // per document: (focus count, log multinomial pmf) for every composition
    let per_doc: Vec<Vec<(u64, f64)>> = config
        .doc_sizes()
        .iter()
        .map(|&n| {
            compositions(n, m)
                .into_iter()
                .map(|c| {
                    let log_p = ln_factorial(n)
                        + c.iter()
                            .zip(&log_theta)
                            .map(|(&k, &lt)| k as f64 * lt - ln_factorial(k))
                            .sum::<f64>();
                    (c[focus], log_p)
                })
                .collect()
        })
        .collect();

    let d = per_doc.len();
    let mut acc: BTreeMap<(u64, u64), MassAccumulator> = BTreeMap::new();
    let mut idx = vec![0usize; d];
    'matrices: loop {
        let mut k = 0u64;
        let mut b = 0u64;
        let mut log_p = 0.0;
        for (doc, &ix) in per_doc.iter().zip(&idx) {
            let (x, lp) = doc[ix];
            k += x;
            b += u64::from(x > 0);
            log_p += lp;
        }
        acc.entry((k, b)).or_default().add_log(log_p);

        // odometer increment
        for pos in 0..d {
            idx[pos] += 1;
            if idx[pos] < per_doc[pos].len() {
                continue 'matrices;
            }
            idx[pos] = 0;
        }
        break;
    }

    Ok(JointDistribution {
        cells: acc
            .into_iter()
            .map(|(key, a)| (key, a.value()))
            .filter(|&(_, p)| p > 0.0)
            .collect(),
        states,
    })
}

/// Exact conditional tail `Pr(N_i >= n_i | B_i = b_i)` with the joint
/// distribution enumerated once.
#[derive(Debug, Clone)]
pub struct ExactTest {
    config: ToyConfig,
    joint: JointDistribution,
}

impl ExactTest {
    pub fn new(config: ToyConfig, max_states: u128) -> Result<Self> {
        let joint = enumerate_joint(&config, max_states)?;
        Ok(Self { config, joint })
    }

    pub fn config(&self) -> &ToyConfig {
        &self.config
    }

    pub fn joint(&self) -> &JointDistribution {
        &self.joint
    }

    /// Numerator from the enumerated joint, denominator from the
    /// Poisson-binomial PMF of `B_i`.
    pub fn tail(&self, n_i: u64, b_i: u64) -> Result<f64> {
        let d = self.config.doc_sizes().len() as u64;
        if b_i > d {
            return Err(Error::Domain(format!("b = {b_i} exceeds d = {d}")));
        }
        let denom = poisson_binomial_pmf(b_i, &self.config.phis())?;
        if denom <= 0.0 {
            return Err(Error::ZeroProbabilityCondition { b: b_i });
        }
        // N_i >= B_i always
        if n_i <= b_i {
            return Ok(1.0);
        }
        let num = self.joint.tail_mass(n_i, b_i);
        Ok((num / denom).clamp(0.0, 1.0))
    }
}

/// One-shot form of [`ExactTest::tail`].
pub fn exact_tail(config: &ToyConfig, n_i: u64, b_i: u64, max_states: u128) -> Result<f64> {
    ExactTest::new(config.clone(), max_states)?.tail(n_i, b_i)
}
