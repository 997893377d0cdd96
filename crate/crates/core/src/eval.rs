//! Precision-at-k terminology extraction and stopword-rank summaries.
//!
//! Quantiles use linear interpolation between order statistics (position
//! `1 + (len - 1) q` in the sorted list) rounded half-up to an integer rank.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::path::Path;

use crate::error::{Error, Result};
use crate::ingest::{GoldStandard, ALL_CLASS, SEMANTIC_CLASSES};
use crate::measures::{Measure, ScoredRanking};

/// Cutoffs reported by default.
pub const DEFAULT_KS: [usize; 6] = [10, 50, 100, 500, 1000, 5000];

/// Fraction of the top `k` ranked terms found in `gold`.
pub fn precision_at_k(ranking: &ScoredRanking, gold: &BTreeSet<String>, k: usize) -> Result<f64> {
    if k == 0 || k > ranking.len() {
        return Err(Error::KOutOfRange {
            k,
            vocab_size: ranking.len(),
        });
    }
    let hits = ranking
        .ranked_terms()
        .take(k)
        .filter(|t| gold.contains(*t))
        .count();
    Ok(hits as f64 / k as f64)
}

/// Relative improvement of `a` over `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Improvement {
    Percent(f64),
    /// `b = 0 < a`.
    Inf,
    /// `a = b = 0`.
    NA,
}

impl fmt::Display for Improvement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Improvement::Percent(p) => write!(f, "{p:.2}%"),
            Improvement::Inf => f.write_str("Inf"),
            Improvement::NA => f.write_str("NA"),
        }
    }
}

pub fn percent_improvement(a: f64, b: f64) -> Improvement {
    if b == 0.0 {
        if a > 0.0 {
            Improvement::Inf
        } else {
            Improvement::NA
        }
    } else {
        Improvement::Percent(100.0 * (a - b) / b)
    }
}

/// Linear-interpolation quantile of a sorted list, rounded half-up.
pub fn quartile(sorted: &[usize], q: f64) -> Result<usize> {
    if sorted.is_empty() {
        return Err(Error::EmptyQuantileInput);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!("quantile level {q} outside [0, 1]")));
    }
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let value = sorted[lo] as f64 + (h - lo as f64) * (sorted[hi] as f64 - sorted[lo] as f64);
    Ok((value + 0.5).floor() as usize)
}

/// Five-number summary of the 1-based ranks of stopwords in a ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordSummary {
    pub measure: Measure,
    /// Stopwords present in the vocabulary.
    pub count: usize,
    pub min: usize,
    pub q1: usize,
    pub median: usize,
    pub q3: usize,
    pub max: usize,
}

/// Sorted 1-based ranks of the stopwords that occur in the vocabulary.
pub fn stopword_ranks(ranking: &ScoredRanking, stopwords: &BTreeSet<String>) -> Vec<usize> {
    ranking
        .ranked_terms()
        .enumerate()
        .filter(|(_, t)| stopwords.contains(*t))
        .map(|(r, _)| r + 1)
        .collect()
}

pub fn stopword_summary(
    ranking: &ScoredRanking,
    stopwords: &BTreeSet<String>,
) -> Result<StopwordSummary> {
    let ranks = stopword_ranks(ranking, stopwords);
    if ranks.is_empty() {
        return Err(Error::NoStopwordsInVocab);
    }
    Ok(StopwordSummary {
        measure: ranking.measure(),
        count: ranks.len(),
        min: ranks[0],
        q1: quartile(&ranks, 0.25)?,
        median: quartile(&ranks, 0.5)?,
        q3: quartile(&ranks, 0.75)?,
        max: ranks[ranks.len() - 1],
    })
}

/// Lowercased union of the words in `paths`, one per line. Blank lines and
/// lines starting with `#` are ignored.
pub fn load_stopwords<P: AsRef<Path>>(paths: &[P]) -> Result<BTreeSet<String>> {
    let mut set = BTreeSet::new();
    for path in paths {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        set.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase),
        );
    }
    Ok(set)
}

/// P@k of one measure against one gold class.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub measure: Measure,
    pub class: String,
    pub gold_size: usize,
    pub p_at_k: Vec<(usize, f64)>,
}

/// Gold classes in report order: the union class first, then the five classes.
pub fn report_classes() -> impl Iterator<Item = &'static str> {
    [ALL_CLASS].into_iter().chain(SEMANTIC_CLASSES)
}

/// Evaluates every ranking on every gold class present in `gold`.
pub fn evaluate(
    rankings: &[ScoredRanking],
    gold: &GoldStandard,
    ks: &[usize],
) -> Result<Vec<EvalReport>> {
    let mut out = Vec::new();
    for class in report_classes() {
        let Some(set) = gold.class(class) else {
            continue;
        };
        for ranking in rankings {
            let p_at_k = ks
                .iter()
                .map(|&k| Ok((k, precision_at_k(ranking, set, k)?)))
                .collect::<Result<_>>()?;
            out.push(EvalReport {
                measure: ranking.measure(),
                class: class.to_string(),
                gold_size: set.len(),
                p_at_k,
            });
        }
    }
    Ok(out)
}

fn improvement_row(
    label: &str,
    ricf: &EvalReport,
    others: &[&EvalReport],
    out: &mut String,
) {
    write!(out, "{label}").expect("writing to a String");
    for (col, &(_, p)) in ricf.p_at_k.iter().enumerate() {
        let best = others
            .iter()
            .map(|r| r.p_at_k[col].1)
            .fold(f64::NEG_INFINITY, f64::max);
        write!(out, "\t{}", percent_improvement(p, best)).expect("writing to a String");
    }
    out.push('\n');
}

/// Table of P@k per class block. Each block lists the measures, then the
/// improvement of RICF over chi-squared and over the best other measure when
/// those rankings are present.
pub fn precision_table_tsv(reports: &[EvalReport]) -> String {
    let mut s = String::new();
    let mut classes: Vec<&str> = Vec::new();
    for r in reports {
        if !classes.contains(&r.class.as_str()) {
            classes.push(&r.class);
        }
    }
    for class in classes {
        let block: Vec<&EvalReport> = reports.iter().filter(|r| r.class == class).collect();
        let Some(first) = block.first() else { continue };
        write!(s, "class\tmeasure\tgold_size").expect("writing to a String");
        for (k, _) in &first.p_at_k {
            write!(s, "\tP@{k}").expect("writing to a String");
        }
        s.push('\n');
        for r in &block {
            write!(s, "{}\t{}\t{}", r.class, r.measure, r.gold_size).expect("writing to a String");
            for (_, p) in &r.p_at_k {
                write!(s, "\t{p:.4}").expect("writing to a String");
            }
            s.push('\n');
        }
        if let Some(ricf) = block.iter().find(|r| r.measure == Measure::Ricf) {
            let others: Vec<&EvalReport> = block
                .iter()
                .copied()
                .filter(|r| r.measure != Measure::Ricf)
                .collect();
            if let Some(chi) = others.iter().find(|r| r.measure == Measure::ChiSq) {
                improvement_row(
                    &format!("{class}\timprovement_over_chi_sq\t{}", ricf.gold_size),
                    ricf,
                    &[chi],
                    &mut s,
                );
            }
            if !others.is_empty() {
                improvement_row(
                    &format!("{class}\timprovement_over_best_baseline\t{}", ricf.gold_size),
                    ricf,
                    &others,
                    &mut s,
                );
            }
        }
        s.push('\n');
    }
    s
}

/// One row per measure: stopword count and five-number summary of ranks.
pub fn stopword_table_tsv(summaries: &[StopwordSummary]) -> String {
    let mut s = String::from("measure\tstopwords_in_vocab\tmin\tq1\tmedian\tq3\tmax\n");
    for x in summaries {
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            x.measure, x.count, x.min, x.q1, x.median, x.q3, x.max
        )
        .expect("writing to a String");
    }
    s
}
