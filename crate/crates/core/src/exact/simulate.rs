use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};

use super::ToyConfig;
use crate::error::{Error, Result};
use crate::matrix::{build_matrix, TermDocumentMatrix};
use crate::stats::ModelParams;

/// Token used for term `i` in simulated corpora.
pub fn simulated_term(i: usize) -> String {
    format!("t{i}")
}

fn binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> Result<u64> {
    if n == 0 || p <= 0.0 {
        return Ok(0);
    }
    if p >= 1.0 {
        return Ok(n);
    }
    let dist = Binomial::new(n, p).map_err(|e| Error::InvalidParams(e.to_string()))?;
    Ok(dist.sample(rng))
}

/// Draws one document of `size` tokens: term counts from `Multinomial(size, thetas)`
/// by successive conditional binomials.
pub fn sample_document<R: Rng + ?Sized>(
    thetas: &[f64],
    size: u64,
    rng: &mut R,
) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; thetas.len()];
    let mut remaining_n = size;
    let mut remaining_p = 1.0f64;
    for (i, &t) in thetas.iter().enumerate() {
        if remaining_n == 0 {
            break;
        }
        if i + 1 == thetas.len() {
            counts[i] = remaining_n;
            break;
        }
        let p = if remaining_p > 0.0 {
            (t / remaining_p).min(1.0)
        } else {
            1.0
        };
        let c = binomial(remaining_n, p, rng)?;
        counts[i] = c;
        remaining_n -= c;
        remaining_p -= t;
    }
    Ok(counts)
}

/// Simulates a corpus from the model. Term `i` is spelled [`simulated_term`]`(i)`;
/// terms that never occur are absent from the vocabulary.
pub fn simulate_corpus(params: &ModelParams, seed: u64) -> Result<TermDocumentMatrix> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..params.thetas().len()).map(simulated_term).collect();
    let docs = params
        .doc_sizes()
        .iter()
        .map(|&n| {
            let counts = sample_document(params.thetas(), n, &mut rng)?;
            Ok(counts
                .iter()
                .zip(&names)
                .flat_map(|(&c, name)| std::iter::repeat_n(name.as_str(), c as usize))
                .collect::<Vec<&str>>())
        })
        .collect::<Result<Vec<_>>>()?;
    build_matrix(docs)
}

/// Monte-Carlo estimate of the conditional tail with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McTail {
    pub estimate: f64,
    pub std_error: f64,
    /// Samples whose document frequency equalled the conditioning value.
    pub accepted: u64,
    pub samples: u64,
}

/// Rejection-sampling estimate of `Pr(N_i >= n_i | B_i = b_i)`. The focus term's
/// count in document `j` is drawn directly from its `Binomial(n_j, theta)` marginal.
pub fn monte_carlo_tail(
    config: &ToyConfig,
    n_i: u64,
    b_i: u64,
    samples: u64,
    seed: u64,
) -> Result<McTail> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let theta = config.focus_theta();
    let mut accepted = 0u64;
    let mut hits = 0u64;
    for _ in 0..samples {
        let mut n = 0u64;
        let mut b = 0u64;
        for &size in config.doc_sizes() {
            let x = binomial(size, theta, &mut rng)?;
            n += x;
            b += u64::from(x > 0);
        }
        if b == b_i {
            accepted += 1;
            hits += u64::from(n >= n_i);
        }
    }
    if accepted == 0 {
        return Err(Error::NoAcceptedSamples { samples, b: b_i });
    }
    let p = hits as f64 / accepted as f64;
    Ok(McTail {
        estimate: p,
        std_error: (p * (1.0 - p) / accepted as f64).sqrt(),
        accepted,
        samples,
    })
}
