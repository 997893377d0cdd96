//! Tabular bodies for rankings, the IDF/ICF curve and the exact-test oracle.
//! Headers come from [`crate::output::Metadata`].

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::{ExactTest, McTail, ProxyReport};
use crate::matrix::TermDocumentMatrix;
use crate::measures::{Measure, ScoredRanking, TermFlags};
use crate::output::body_lines;
use crate::stats::{asymptotic_offset, expected_idf_approx, expected_relation};

pub const RANKING_COLUMNS: &str = "rank\tterm\tn_i\tb_i\tscore\tflags";

/// Ranking body: column line then one row per term in rank order. Scores are
/// printed with round-trip precision.
pub fn ranking_tsv_body(ranking: &ScoredRanking) -> String {
    let mut s = String::with_capacity(ranking.len() * 48);
    s.push_str(RANKING_COLUMNS);
    s.push('\n');
    for row in ranking.rows() {
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.rank,
            row.term,
            row.ttf,
            row.tdf,
            row.score,
            row.flags.render()
        )
        .expect("writing to a String");
    }
    s
}

/// Reads a ranking file written by [`ranking_tsv_body`].
pub fn read_ranking_tsv(path: &Path, measure: Measure) -> Result<ScoredRanking> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::MissingRanking(path.to_path_buf()))
        }
        Err(e) => return Err(Error::io(path, e)),
    };
    let format_err = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let (mut terms, mut ttf, mut tdf, mut scores, mut flags) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (line_no, line) in body_lines(&text) {
        if line.is_empty() || line == RANKING_COLUMNS {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return Err(format_err(line_no, format!("expected 6 columns, got {}", cols.len())));
        }
        let num = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|e| format_err(line_no, format!("{what}: {e}")))
        };
        terms.push(cols[1].to_string());
        ttf.push(num(cols[2], "n_i")?);
        tdf.push(num(cols[3], "b_i")?);
        scores.push(
            cols[4]
                .parse::<f64>()
                .map_err(|e| format_err(line_no, format!("score: {e}")))?,
        );
        flags.push(TermFlags::parse(cols[5]));
    }
    ScoredRanking::from_parts(measure, terms, ttf, tdf, scores, flags)
}

fn csv_field(s: &str) -> std::borrow::Cow<'_, str> {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\"")).into()
    } else {
        s.into()
    }
}

/// Points of the expected relation and its asymptote.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub idf: f64,
    pub icf: f64,
}

/// Samples the expected relation on a log-spaced theta grid over
/// `[1/n, max_i n_i / n]`, sorted by strictly increasing expected IDF.
pub fn expected_curve(matrix: &TermDocumentMatrix, points: usize) -> Result<Vec<CurvePoint>> {
    let n = matrix.total() as f64;
    let d = matrix.num_docs() as u64;
    let mu = n / d as f64;
    let lo = (1.0 / n).ln();
    let hi = (matrix.max_row_total() as f64 / n).min(1.0 - 1e-9).ln();
    let points = points.max(2);
    let mut out: Vec<CurvePoint> = Vec::with_capacity(points);
    for k in 0..points {
        let theta = (lo + (hi - lo) * k as f64 / (points - 1) as f64).exp();
        let (Ok(idf), Ok(icf)) = (
            expected_idf_approx(theta, mu, d),
            expected_relation(theta, mu, d),
        ) else {
            continue;
        };
        out.push(CurvePoint { idf, icf });
    }
    out.sort_by(|a, b| a.idf.total_cmp(&b.idf));
    out.dedup_by(|b, a| b.idf <= a.idf);
    Ok(out)
}

/// CSV body with columns `series,term,idf,icf`: one `scatter` row per term,
/// the `expected` relation and its `asymptote`, both ordered by idf.
pub fn curve_csv_body(matrix: &TermDocumentMatrix, points: usize) -> Result<String> {
    let mut s = String::from("series,term,idf,icf\n");
    for i in 0..matrix.num_terms() {
        let st = matrix.term_stats(i)?;
        writeln!(s, "scatter,{},{},{}", csv_field(matrix.term(i)), st.idf, st.icf)
            .expect("writing to a String");
    }
    let curve = expected_curve(matrix, points)?;
    for p in &curve {
        writeln!(s, "expected,,{},{}", p.idf, p.icf).expect("writing to a String");
    }
    let mu = matrix.total() as f64 / matrix.num_docs() as f64;
    let offset = asymptotic_offset(mu, matrix.num_docs() as u64)?;
    for p in &curve {
        writeln!(s, "asymptote,,{},{}", p.idf, p.idf + offset).expect("writing to a String");
    }
    Ok(s)
}

/// Oracle body: one row per achievable cell with the exact tail, its
/// negative log, the residual and an optional Monte-Carlo estimate, then one
/// summary row per config with the rank correlation.
pub fn oracle_tsv_body(
    reports: &[ProxyReport],
    tests: &[ExactTest],
    mc: &[Vec<Option<McTail>>],
) -> Result<String> {
    let mut s = String::from(
        "config\tn_i\tb_i\texact_tail\tneg_log_tail\tresidual\tmc_tail\tmc_std_error\n",
    );
    for (idx, (report, test)) in reports.iter().zip(tests).enumerate() {
        let label = report.config.describe();
        for (c, cell) in report.cells.iter().enumerate() {
            let tail = test.tail(cell.n_i, cell.b_i)?;
            let (m, se) = match mc.get(idx).and_then(|v| v.get(c)).copied().flatten() {
                Some(t) => (t.estimate.to_string(), t.std_error.to_string()),
                None => ("-".into(), "-".into()),
            };
            writeln!(
                s,
                "{label}\t{}\t{}\t{tail}\t{}\t{}\t{m}\t{se}",
                cell.n_i, cell.b_i, cell.neg_log_tail, cell.residual
            )
            .expect("writing to a String");
        }
    }
    s.push_str("\nconfig\tcells\tspearman\tflag\n");
    for report in reports {
        let (rho, flag) = match report.spearman {
            Some(r) => (r.to_string(), "-"),
            None => ("NA".to_string(), "degenerate"),
        };
        writeln!(
            s,
            "{}\t{}\t{rho}\t{flag}",
            report.config.describe(),
            report.cells.len()
        )
        .expect("writing to a String");
    }
    Ok(s)
}
