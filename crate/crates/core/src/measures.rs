//! Term burstiness measures and the rankings they induce.
//!
//! | measure  | score                                                    |
//! |----------|----------------------------------------------------------|
//! | `chi_sq` | `sum_j (n_ij - n_i/d)^2 / (n_i/d)` over all `d` documents |
//! | `cg`     | `n_i / b_i`                                              |
//! | `icb`    | `(1/b_i) sum_j n_ij / n_j`                               |
//! | `dop`    | `1 - (1/2) sum_j abs(n_ij/n_i - n_j/n)`                  |
//! | `ricf`   | `E[icf | B_i = b_i] - icf(i)`                            |
//!
//! Every measure ranks terms by descending score, ties broken by larger `n_i`
//! and then by the term string.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::TermDocumentMatrix;
use crate::stats::{chi_squared_log_sf, ThetaCalibrator, ThetaEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    ChiSq,
    Cg,
    Icb,
    Dop,
    Ricf,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::ChiSq,
        Measure::Cg,
        Measure::Icb,
        Measure::Dop,
        Measure::Ricf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::ChiSq => "chi_sq",
            Measure::Cg => "cg",
            Measure::Icb => "icb",
            Measure::Dop => "dop",
            Measure::Ricf => "ricf",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownMeasure(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TermFlags {
    pub theta_clamped: bool,
}

impl TermFlags {
    pub fn render(&self) -> &'static str {
        if self.theta_clamped {
            "theta_clamped"
        } else {
            "-"
        }
    }

    pub fn parse(s: &str) -> Self {
        TermFlags {
            theta_clamped: s.split(',').any(|f| f == "theta_clamped"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquaredScore {
    pub statistic: f64,
    /// `-ln` of the upper-tail probability with `d - 1` degrees of freedom.
    pub neg_log_p: f64,
}

pub fn chi_sq_score(matrix: &TermDocumentMatrix, i: usize) -> Result<ChiSquaredScore> {
    matrix.check_term(i)?;
    let d = matrix.num_docs();
    let expected = matrix.row_total(i) as f64 / d as f64;
    let postings = matrix.postings(i);
    let occupied: f64 = postings
        .iter()
        .map(|&(_, c)| {
            let diff = c as f64 - expected;
            diff * diff / expected
        })
        .sum();
    // each empty cell contributes (0 - e)^2 / e = e
    let statistic = occupied + (d - postings.len()) as f64 * expected;
    let neg_log_p = -chi_squared_log_sf(statistic, d as u64 - 1);
    Ok(ChiSquaredScore {
        statistic,
        neg_log_p,
    })
}

pub fn cg_score(matrix: &TermDocumentMatrix, i: usize) -> Result<f64> {
    matrix.check_term(i)?;
    Ok(matrix.row_total(i) as f64 / matrix.doc_count(i) as f64)
}

pub fn icb_score(matrix: &TermDocumentMatrix, i: usize) -> Result<f64> {
    matrix.check_term(i)?;
    let postings = matrix.postings(i);
    let sum: f64 = postings
        .iter()
        .map(|&(j, c)| c as f64 / matrix.col_total(j as usize) as f64)
        .sum();
    Ok(sum / postings.len() as f64)
}

pub fn dop_score(matrix: &TermDocumentMatrix, i: usize) -> Result<f64> {
    matrix.check_term(i)?;
    let n = matrix.total();
    let n_i = matrix.row_total(i) as f64;
    let mut l1 = 0.0;
    let mut covered_size = 0u64;
    for &(j, c) in matrix.postings(i) {
        let size = matrix.col_total(j as usize);
        covered_size += size;
        l1 += (c as f64 / n_i - size as f64 / n as f64).abs();
    }
    // documents without the term contribute their size share n_j / n
    l1 += (n - covered_size) as f64 / n as f64;
    Ok((1.0 - 0.5 * l1).clamp(0.0, 1.0))
}

/// Single-term RICF. Scoring a whole vocabulary should go through
/// [`RicfScorer`], which shares work between terms with equal `b_i`.
pub fn ricf_score(matrix: &TermDocumentMatrix, i: usize) -> Result<f64> {
    matrix.check_term(i)?;
    let cal = ThetaCalibrator::from_matrix(matrix)?;
    let (expected, _) = cal.conditional_expected_icf(matrix.doc_count(i))?;
    Ok(expected - matrix.term_stats(i)?.icf)
}

/// RICF over a whole matrix. `E[icf | B = b]` depends on `b` and the corpus
/// only, so it is computed once per distinct document frequency.
#[derive(Debug, Clone)]
pub struct RicfScorer {
    by_doc_count: BTreeMap<u64, (f64, ThetaEstimate)>,
}

impl RicfScorer {
    pub fn new(matrix: &TermDocumentMatrix) -> Result<Self> {
        let cal = ThetaCalibrator::from_matrix(matrix)?;
        let mut distinct: Vec<u64> = (0..matrix.num_terms())
            .map(|i| matrix.doc_count(i))
            .collect();
        distinct.sort_unstable();
        distinct.dedup();
        let by_doc_count = distinct
            .into_par_iter()
            .map(|b| cal.conditional_expected_icf(b).map(|v| (b, v)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { by_doc_count })
    }

    /// `(E[icf | B = b], theta_hat)` for a document frequency present in the matrix.
    pub fn conditional(&self, b: u64) -> Option<(f64, ThetaEstimate)> {
        self.by_doc_count.get(&b).copied()
    }

    pub fn score(&self, matrix: &TermDocumentMatrix, i: usize) -> Result<(f64, TermFlags)> {
        let stats = matrix.term_stats(i)?;
        let (expected, est) = self
            .conditional(stats.tdf)
            .ok_or_else(|| Error::Domain(format!("b = {} not in this matrix", stats.tdf)))?;
        Ok((
            expected - stats.icf,
            TermFlags {
                theta_clamped: est.clamped,
            },
        ))
    }
}

/// One row of a ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedTerm<'a> {
    pub rank: usize,
    pub term: &'a str,
    pub ttf: u64,
    pub tdf: u64,
    pub score: f64,
    pub flags: TermFlags,
}

/// Scores of one measure aligned to term ids, plus the descending ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredRanking {
    measure: Measure,
    terms: Vec<String>,
    ttf: Vec<u64>,
    tdf: Vec<u64>,
    scores: Vec<f64>,
    flags: Vec<TermFlags>,
    ranking: Vec<usize>,
}

impl ScoredRanking {
    /// Sorts by descending score with the shared tie-break. All slices are
    /// aligned by term id.
    pub fn from_parts(
        measure: Measure,
        terms: Vec<String>,
        ttf: Vec<u64>,
        tdf: Vec<u64>,
        scores: Vec<f64>,
        flags: Vec<TermFlags>,
    ) -> Result<Self> {
        let m = terms.len();
        if ttf.len() != m || tdf.len() != m || scores.len() != m || flags.len() != m {
            return Err(Error::InvalidParams("ranking columns differ in length".into()));
        }
        if let Some(term) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteScore { term });
        }
        let mut ranking: Vec<usize> = (0..m).collect();
        ranking.sort_by(|&a, &b| {
            scores[b]
                .partial_cmp(&scores[a])
                .unwrap_or(Ordering::Equal)
                .then_with(|| ttf[b].cmp(&ttf[a]))
                .then_with(|| terms[a].cmp(&terms[b]))
        });
        Ok(Self {
            measure,
            terms,
            ttf,
            tdf,
            scores,
            flags,
            ranking,
        })
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn flags(&self) -> &[TermFlags] {
        &self.flags
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    /// Term ids in rank order.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Term strings in rank order.
    pub fn ranked_terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.ranking.iter().map(|&i| self.terms[i].as_str())
    }

    /// Rows in rank order, ranks starting at 1.
    pub fn rows(&self) -> impl Iterator<Item = RankedTerm<'_>> + '_ {
        self.ranking.iter().enumerate().map(|(r, &i)| RankedTerm {
            rank: r + 1,
            term: &self.terms[i],
            ttf: self.ttf[i],
            tdf: self.tdf[i],
            score: self.scores[i],
            flags: self.flags[i],
        })
    }
}

/// Ranks precomputed scores aligned to the matrix vocabulary.
pub fn rank_terms(
    matrix: &TermDocumentMatrix,
    measure: Measure,
    scores: Vec<f64>,
    flags: Vec<TermFlags>,
) -> Result<ScoredRanking> {
    let m = matrix.num_terms();
    ScoredRanking::from_parts(
        measure,
        matrix.vocab().to_vec(),
        matrix.row_totals().to_vec(),
        (0..m).map(|i| matrix.doc_count(i)).collect(),
        scores,
        flags,
    )
}

/// Scores every term with `measure` and ranks them.
pub fn score_measure(matrix: &TermDocumentMatrix, measure: Measure) -> Result<ScoredRanking> {
    let m = matrix.num_terms();
    let scored: Vec<(f64, TermFlags)> = match measure {
        Measure::Ricf => {
            let scorer = RicfScorer::new(matrix)?;
            (0..m)
                .into_par_iter()
                .map(|i| scorer.score(matrix, i))
                .collect::<Result<_>>()?
        }
        _ => (0..m)
            .into_par_iter()
            .map(|i| {
                let s = match measure {
                    Measure::ChiSq => chi_sq_score(matrix, i)?.statistic,
                    Measure::Cg => cg_score(matrix, i)?,
                    Measure::Icb => icb_score(matrix, i)?,
                    Measure::Dop => dop_score(matrix, i)?,
                    Measure::Ricf => unreachable!(),
                };
                Ok((s, TermFlags::default()))
            })
            .collect::<Result<_>>()?,
    };
    let (scores, flags) = scored.into_iter().unzip();
    rank_terms(matrix, measure, scores, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::build_matrix;

    fn two_docs(a: &[&'static str], b: &[&'static str]) -> TermDocumentMatrix {
        build_matrix(vec![a.to_vec(), b.to_vec()]).unwrap()
    }

    #[test]
    fn chi_sq_uniform_and_concentrated() {
        let m = two_docs(&["x", "y"], &["x", "z"]);
        let s = chi_sq_score(&m, m.term_id("x").unwrap()).unwrap();
        assert_eq!(s.statistic, 0.0);
        assert_eq!(s.neg_log_p, 0.0);

        let m = two_docs(&["x", "x"], &["y"]);
        let s = chi_sq_score(&m, m.term_id("x").unwrap()).unwrap();
        // (2-1)^2/1 + (0-1)^2/1
        assert_eq!(s.statistic, 2.0);
        // df = 1: -ln P(chi2_1 > 2)
        // equals -ln erfc(1)
        assert!((s.neg_log_p - 1.8496055099332482).abs() < 1e-13, "{}", s.neg_log_p);
    }

    #[test]
    fn cg_values() {
        let docs: Vec<Vec<String>> = (0..100)
            .map(|j| {
                let mut d = vec!["w".to_string(); 10];
                d.push(format!("pad{j}"));
                d
            })
            .chain((0..50).map(|j| vec![format!("other{j}")]))
            .collect();
        let m = build_matrix(docs).unwrap();
        assert_eq!(cg_score(&m, m.term_id("w").unwrap()).unwrap(), 10.0);
        assert_eq!(cg_score(&m, m.term_id("pad3").unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn icb_values() {
        let m = build_matrix(vec![vec!["q"], vec!["a", "b"]]).unwrap();
        assert_eq!(icb_score(&m, m.term_id("q").unwrap()).unwrap(), 1.0);
        // sizes (2, 4), counts (1, 1): (1/2)(1/2 + 1/4)
        let m = two_docs(&["t", "u"], &["t", "v", "v", "v"]);
        assert_eq!(icb_score(&m, m.term_id("t").unwrap()).unwrap(), 0.375);
    }

    #[test]
    fn dop_values() {
        let m = build_matrix(vec![vec!["a", "b", "a"]]).unwrap();
        assert_eq!(dop_score(&m, 0).unwrap(), 1.0);
        // proportional to document sizes
        let m = two_docs(&["t", "u"], &["t", "t", "t", "v", "v", "v"]);
        let v = dop_score(&m, m.term_id("t").unwrap()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let v = dop_score(&m, m.term_id("u").unwrap()).unwrap();
        assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn ricf_fixed_b_monotone_in_ttf() {
        let m = build_matrix(vec![
            vec!["a", "a", "a", "b", "c"],
            vec!["b", "c", "d", "e", "f"],
            vec!["a", "g", "h", "b", "i"],
        ])
        .unwrap();
        // a and b both have b_i = 2; a has larger n_i
        let ra = ricf_score(&m, m.term_id("a").unwrap()).unwrap();
        let rb = ricf_score(&m, m.term_id("b").unwrap()).unwrap();
        assert!(ra > rb);
        let scorer = RicfScorer::new(&m).unwrap();
        assert_eq!(scorer.score(&m, m.term_id("a").unwrap()).unwrap().0, ra);
    }

    #[test]
    fn rank_order_and_tie_break() {
        let r = ScoredRanking::from_parts(
            Measure::Cg,
            vec!["a".into(), "b".into(), "c".into()],
            vec![1, 1, 1],
            vec![1, 1, 1],
            vec![1.0, 3.0, 2.0],
            vec![TermFlags::default(); 3],
        )
        .unwrap();
        assert_eq!(r.ranked_terms().collect::<Vec<_>>(), ["b", "c", "a"]);

        let r = ScoredRanking::from_parts(
            Measure::Cg,
            vec!["b".into(), "a".into(), "c".into(), "d".into()],
            vec![1, 1, 5, 2],
            vec![1, 1, 1, 1],
            vec![0.5; 4],
            vec![TermFlags::default(); 4],
        )
        .unwrap();
        assert_eq!(r.ranked_terms().collect::<Vec<_>>(), ["c", "d", "a", "b"]);
    }

    #[test]
    fn non_finite_score_rejected() {
        let e = ScoredRanking::from_parts(
            Measure::Dop,
            vec!["a".into(), "b".into()],
            vec![1, 1],
            vec![1, 1],
            vec![0.0, f64::NAN],
            vec![TermFlags::default(); 2],
        );
        assert!(matches!(e, Err(Error::NonFiniteScore { term: 1 })));
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!(matches!("bm25".parse::<Measure>(), Err(Error::UnknownMeasure(_))));
    }

    #[test]
    fn flags_render() {
        let f = TermFlags {
            theta_clamped: true,
        };
        assert_eq!(TermFlags::parse(f.render()), f);
        assert_eq!(TermFlags::parse("-"), TermFlags::default());
    }
}
