use super::{ExactTest, ToyConfig};
use crate::error::Result;
use crate::stats::ThetaCalibrator;

/// One achievable `(n_i, b_i)` cell of a toy config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProxyCell {
    pub n_i: u64,
    pub b_i: u64,
    /// `-ln Pr(N_i >= n_i | B_i = b_i)`.
    pub neg_log_tail: f64,
    /// Expected ICF at the theta calibrated to `ln(d / b_i)`, minus `ln(n / n_i)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProxyReport {
    pub config: ToyConfig,
    pub cells: Vec<ProxyCell>,
    /// Rank correlation of the two columns; `None` when undefined.
    pub spearman: Option<f64>,
}

impl ProxyReport {
    /// Correlation undefined: fewer than two cells or a constant column.
    pub fn is_degenerate(&self) -> bool {
        self.spearman.is_none()
    }
}

/// For every config and every achievable cell with `b_i >= 1`, pairs the exact
/// test statistic with the residual computed on the toy document sizes.
pub fn ricf_vs_exact_report(grid: &[ToyConfig], max_states: u128) -> Result<Vec<ProxyReport>> {
    grid.iter()
        .map(|config| {
            let test = ExactTest::new(config.clone(), max_states)?;
            let n = config.total();
            let lower = 1.0 / n as f64;
            let upper = ((n - 1) as f64 / n as f64).max(lower);
            let calibrator = ThetaCalibrator::with_bracket(config.doc_sizes(), lower, upper)?;

            let mut cells = Vec::new();
            for &(n_i, b_i) in test.joint().cells().keys() {
                if b_i == 0 {
                    continue;
                }
                let tail = test.tail(n_i, b_i)?;
                let (e_icf, _) = calibrator.conditional_expected_icf(b_i)?;
                let icf = (n as f64).ln() - (n_i as f64).ln();
                cells.push(ProxyCell {
                    n_i,
                    b_i,
                    neg_log_tail: 0.0 - tail.ln(),
                    residual: e_icf - icf,
                });
            }
            let x: Vec<f64> = cells.iter().map(|c| c.neg_log_tail).collect();
            let y: Vec<f64> = cells.iter().map(|c| c.residual).collect();
            Ok(ProxyReport {
                config: config.clone(),
                spearman: spearman(&x, &y),
                cells,
            })
        })
        .collect()
}

fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties. `None` for fewer
/// than two points or when either column is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// The 48-config grid used by the proxy report: six theta vectors over two or
/// three terms crossed with eight document-size vectors of at most three
/// documents of at most three tokens.
pub fn default_toy_grid() -> Vec<ToyConfig> {
    let thetas: [&[f64]; 6] = [
        &[0.1, 0.9],
        &[0.3, 0.7],
        &[0.5, 0.5],
        &[0.05, 0.35, 0.6],
        &[0.2, 0.3, 0.5],
        &[0.25, 0.25, 0.5],
    ];
    let sizes: [&[u64]; 8] = [
        &[1, 1],
        &[2, 2],
        &[3, 3],
        &[1, 3],
        &[2, 3],
        &[2, 2, 2],
        &[1, 2, 3],
        &[3, 3, 3],
    ];
    let mut grid = Vec::with_capacity(thetas.len() * sizes.len());
    for t in thetas {
        for s in sizes {
            grid.push(ToyConfig::new(t.to_vec(), s.to_vec(), 0).expect("valid toy config"));
        }
    }
    grid
}
