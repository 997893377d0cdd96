//! Sparse term-document count matrix and the per-term count statistics
//! derived from it (TTF, TDF, CF, DF, ICF, IDF).
//!
//! Term ids and document ids are zero-based indices into [`TermDocumentMatrix::vocab`]
//! and [`TermDocumentMatrix::doc_ids`]. Vocabulary order is first occurrence in the
//! input, so a build is fully determined by its input.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Immutable sparse `m x d` matrix of term frequencies.
///
/// Each term keeps a postings list of `(doc, count)` pairs sorted by doc with
/// `count >= 1`; zero cells are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDocumentMatrix {
    vocab: Vec<String>,
    term_index: HashMap<String, usize>,
    doc_ids: Vec<String>,
    postings: Vec<Vec<(u32, u64)>>,
    row_totals: Vec<u64>,
    col_totals: Vec<u64>,
    grand_total: u64,
}

/// Count statistics of a single term. Logarithms are natural.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermStats {
    pub term_id: usize,
    /// Total term frequency `n_i`.
    pub ttf: u64,
    /// Total document frequency `b_i`.
    pub tdf: u64,
    /// Collection frequency `n_i / n`.
    pub cf: f64,
    /// Document frequency `b_i / d`.
    pub df: f64,
    /// Inverse collection frequency `log(n / n_i)`.
    pub icf: f64,
    /// Inverse document frequency `log(d / b_i)`.
    pub idf: f64,
}

/// Builds a matrix from tokenized documents, numbering documents `0..d`.
pub fn build_matrix<D, T>(documents: D) -> Result<TermDocumentMatrix>
where
    D: IntoIterator,
    D::Item: IntoIterator<Item = T>,
    T: AsRef<str>,
{
    let docs = documents.into_iter().enumerate().map(|(j, doc)| (j.to_string(), doc));
    build_matrix_with_ids(docs)
}

/// Builds a matrix from `(doc_id, tokens)` pairs. Empty documents are kept as
/// zero-size columns, but at least one document must be nonempty.
pub fn build_matrix_with_ids<D, I, T>(documents: D) -> Result<TermDocumentMatrix>
where
    D: IntoIterator<Item = (String, I)>,
    I: IntoIterator<Item = T>,
    T: AsRef<str>,
{
    let mut vocab = Vec::new();
    let mut term_index: HashMap<String, usize> = HashMap::new();
    let mut doc_ids = Vec::new();
    let mut postings: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut col_totals = Vec::new();

    let mut doc_counts: HashMap<usize, u64> = HashMap::new();
    for (doc_id, tokens) in documents {
        let j = u32::try_from(doc_ids.len())
            .map_err(|_| Error::InvalidParams("more than u32::MAX documents".into()))?;
        doc_counts.clear();
        let mut size = 0u64;
        // Registration order of new terms follows token order.
        let mut seen_order = Vec::new();
        for tok in tokens {
            let tok = tok.as_ref();
            let i = match term_index.get(tok) {
                Some(&i) => i,
                None => {
                    let i = vocab.len();
                    vocab.push(tok.to_owned());
                    term_index.insert(tok.to_owned(), i);
                    postings.push(Vec::new());
                    i
                }
            };
            let c = doc_counts.entry(i).or_insert(0);
            if *c == 0 {
                seen_order.push(i);
            }
            *c += 1;
            size += 1;
        }
        for i in seen_order {
            postings[i].push((j, doc_counts[&i]));
        }
        doc_ids.push(doc_id);
        col_totals.push(size);
    }

    let grand_total: u64 = col_totals.iter().sum();
    if grand_total == 0 {
        return Err(Error::EmptyCorpus);
    }
    let row_totals = postings
        .iter()
        .map(|p| p.iter().map(|&(_, c)| c).sum())
        .collect();

    Ok(TermDocumentMatrix {
        vocab,
        term_index,
        doc_ids,
        postings,
        row_totals,
        col_totals,
        grand_total,
    })
}

impl TermDocumentMatrix {
    /// Vocabulary size `m`.
    pub fn num_terms(&self) -> usize {
        self.vocab.len()
    }

    /// Collection size `d`.
    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    /// Total token count `n`.
    pub fn total(&self) -> u64 {
        self.grand_total
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn term(&self, i: usize) -> &str {
        &self.vocab[i]
    }

    pub fn term_id(&self, term: &str) -> Option<usize> {
        self.term_index.get(term).copied()
    }

    /// `(doc, n_ij)` pairs for term `i`, sorted by doc, all counts `>= 1`.
    pub fn postings(&self, i: usize) -> &[(u32, u64)] {
        &self.postings[i]
    }

    /// `n_ij`, zero when the term is absent from the document.
    pub fn count(&self, i: usize, j: usize) -> u64 {
        let p = &self.postings[i];
        match p.binary_search_by_key(&(j as u32), |&(doc, _)| doc) {
            Ok(pos) => p[pos].1,
            Err(_) => 0,
        }
    }

    /// Total term frequency `n_i`.
    pub fn row_total(&self, i: usize) -> u64 {
        self.row_totals[i]
    }

    /// Document size `n_j`.
    pub fn col_total(&self, j: usize) -> u64 {
        self.col_totals[j]
    }

    /// Total document frequency `b_i`.
    pub fn doc_count(&self, i: usize) -> u64 {
        self.postings[i].len() as u64
    }

    pub fn row_totals(&self) -> &[u64] {
        &self.row_totals
    }

    /// Document sizes `n_1..n_d`.
    pub fn doc_sizes(&self) -> &[u64] {
        &self.col_totals
    }

    /// Largest total term frequency `max_i n_i`.
    pub fn max_row_total(&self) -> u64 {
        self.row_totals.iter().copied().max().unwrap_or(0)
    }

    pub fn check_term(&self, i: usize) -> Result<()> {
        if i >= self.num_terms() {
            return Err(Error::TermOutOfRange {
                term: i,
                vocab_size: self.num_terms(),
            });
        }
        if self.row_totals[i] == 0 {
            return Err(Error::ZeroCount(i));
        }
        Ok(())
    }

    /// Count statistics for term `i`.
    pub fn term_stats(&self, i: usize) -> Result<TermStats> {
        self.check_term(i)?;
        let n = self.grand_total as f64;
        let d = self.num_docs() as f64;
        let ttf = self.row_totals[i];
        let tdf = self.doc_count(i);
        Ok(TermStats {
            term_id: i,
            ttf,
            tdf,
            cf: ttf as f64 / n,
            df: tdf as f64 / d,
            icf: log_ratio(self.grand_total, ttf),
            idf: log_ratio(self.num_docs() as u64, tdf),
        })
    }
}

/// `log(a / b)` that is exactly zero when `a == b`.
fn log_ratio(a: u64, b: u64) -> f64 {
    if a == b {
        0.0
    } else {
        (a as f64).ln() - (b as f64).ln()
    }
}

/// Free-function form of [`TermDocumentMatrix::term_stats`].
pub fn term_stats(matrix: &TermDocumentMatrix, i: usize) -> Result<TermStats> {
    matrix.term_stats(i)
}
