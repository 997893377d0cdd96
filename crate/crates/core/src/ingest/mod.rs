//! Corpus ingestion: GENIA XML, plain text and the canonical dump.
//!
//! The canonical dump is the interchange format between ingestion and
//! scoring: `#` header lines followed by one document per line, tokens
//! separated by single spaces. Its body hash identifies the corpus.

mod genia;
mod normalize;

use std::fmt::Write as _;
use std::path::Path;

pub use genia::{
    parse_genia, semantic_class, AnnotatedDocument, GoldStandard, ALL_CLASS, LEX_SUFFIX,
    SEMANTIC_CLASSES,
};
pub use normalize::{integer_to_words, normalize_plain_token, push_normalized_tokens};

use crate::error::{Error, Result};
use crate::output::{body_lines, sha256_hex};

/// Tokenized documents ready for [`crate::build_matrix`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Vec<String>>,
}

impl Corpus {
    pub fn new(documents: Vec<Vec<String>>) -> Self {
        Self { documents }
    }

    pub fn num_docs(&self) -> usize {
        self.documents.len()
    }

    pub fn num_tokens(&self) -> usize {
        self.documents.iter().map(Vec::len).sum()
    }

    /// Dump body: one line per document.
    pub fn body(&self) -> String {
        let mut s = String::new();
        for doc in &self.documents {
            s.push_str(&doc.join(" "));
            s.push('\n');
        }
        s
    }

    /// SHA-256 of [`Corpus::body`].
    pub fn sha256(&self) -> String {
        sha256_hex(self.body().as_bytes())
    }

    /// Parses dump text; `#` lines are skipped and every other line is a
    /// document (possibly empty).
    pub fn from_dump(text: &str) -> Self {
        Self {
            documents: body_lines(text)
                .map(|(_, l)| l.split_whitespace().map(str::to_string).collect())
                .collect(),
        }
    }

    pub fn read_dump(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let corpus = Self::from_dump(&text);
        if corpus.documents.is_empty() {
            return Err(Error::NoDocuments(path.to_path_buf()));
        }
        Ok(corpus)
    }
}

impl From<Vec<AnnotatedDocument>> for Corpus {
    fn from(docs: Vec<AnnotatedDocument>) -> Self {
        Self::new(docs.into_iter().map(|d| d.tokens).collect())
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    push_normalized_tokens(text, &mut out);
    out
}

/// Reads a directory (one document per regular file, in file-name order) or
/// a single file (one document per line). Documents that are empty after
/// normalization are dropped.
pub fn load_plaintext_corpus(path: &Path) -> Result<Corpus> {
    let meta = std::fs::metadata(path).map_err(|e| Error::io(path, e))?;
    let raw: Vec<String> = if meta.is_dir() {
        let mut files = Vec::new();
        for entry in std::fs::read_dir(path).map_err(|e| Error::io(path, e))? {
            let entry = entry.map_err(|e| Error::io(path, e))?;
            let p = entry.path();
            if p.is_file() {
                files.push(p);
            }
        }
        files.sort();
        files
            .iter()
            .map(|p| std::fs::read_to_string(p).map_err(|e| Error::io(p, e)))
            .collect::<Result<_>>()?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::io(path, e))?
            .lines()
            .map(str::to_string)
            .collect()
    };
    let documents: Vec<Vec<String>> = raw
        .iter()
        .map(|t| tokenize(t))
        .filter(|d| !d.is_empty())
        .collect();
    if documents.is_empty() {
        return Err(Error::NoDocuments(path.to_path_buf()));
    }
    Ok(Corpus::new(documents))
}

/// Gold-standard TSV body: `class`, `lexical_unit`, `unique_flag`, where the
/// flag is 1 when the unit belongs to exactly one of the five semantic classes.
pub fn gold_tsv_body(gold: &GoldStandard) -> String {
    let mut s = String::from("class\tlexical_unit\tunique_flag\n");
    let order = SEMANTIC_CLASSES.iter().copied().chain([ALL_CLASS]);
    for class in order {
        if let Some(units) = gold.classes.get(class) {
            for unit in units {
                let unique = u8::from(gold.class_membership(unit) == 1);
                writeln!(s, "{class}\t{unit}\t{unique}").expect("writing to a String");
            }
        }
    }
    s
}

/// Reads a gold TSV back into class sets; `#` lines and the column header are
/// skipped. Annotation counts are not stored in the TSV and come back empty.
pub fn read_gold_tsv(path: &Path) -> Result<GoldStandard> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut gold = GoldStandard::default();
    for class in SEMANTIC_CLASSES.iter().copied().chain([ALL_CLASS]) {
        gold.classes.entry(class.to_string()).or_default();
    }
    for (line_no, line) in body_lines(&text) {
        if line.is_empty() || line.starts_with("class\t") {
            continue;
        }
        let mut cols = line.split('\t');
        let (Some(class), Some(unit), Some(_flag), None) =
            (cols.next(), cols.next(), cols.next(), cols.next())
        else {
            return Err(Error::Format {
                path: path.to_path_buf(),
                line: line_no,
                message: "expected 3 tab-separated columns".into(),
            });
        };
        gold.classes
            .entry(class.to_string())
            .or_default()
            .insert(unit.to_string());
    }
    Ok(gold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plaintext_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("b.txt"), "dog").unwrap();
        std::fs::write(dir.path().join("a.txt"), "Cat cat").unwrap();
        let c = load_plaintext_corpus(dir.path()).unwrap();
        assert_eq!(c.documents, vec![vec!["cat", "cat"], vec!["dog"]]);
    }

    #[test]
    fn plaintext_file_drops_blank_lines() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        std::fs::write(&p, "Hello world\n\n").unwrap();
        assert_eq!(load_plaintext_corpus(&p).unwrap().num_docs(), 1);
        std::fs::write(&p, "\u{3b1} \u{3b2}\n").unwrap();
        assert!(matches!(load_plaintext_corpus(&p), Err(Error::NoDocuments(_))));
        assert!(matches!(
            load_plaintext_corpus(&dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn dump_round_trip() {
        let c = Corpus::new(vec![vec!["a".into(), "b_lex".into()], vec![], vec!["c".into()]]);
        let text = format!("# header\n{}", c.body());
        assert_eq!(Corpus::from_dump(&text), c);
        assert_eq!(c.sha256(), sha256_hex(b"a b_lex\n\nc\n"));
    }

    #[test]
    fn gold_tsv() {
        let xml = r#"<set><article><articleinfo><bibliomisc>MEDLINE:1</bibliomisc></articleinfo><title><sentence><cons lex="p" sem="G#protein_molecule">p</cons> <cons lex="p" sem="G#DNA_molecule">p</cons> <cons lex="q" sem="G#cell_line">q</cons></sentence></title><abstract/></article></set>"#;
        let (_, gold) = parse_genia(xml.as_bytes()).unwrap();
        let body = gold_tsv_body(&gold);
        assert!(body.contains("Amino Acid\tp_lex\t0\n"));
        assert!(body.contains("Cell\tq_lex\t1\n"));
        assert!(body.contains("All\tq_lex\t1\n"));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("gold.tsv");
        std::fs::write(&p, format!("# h\n{body}")).unwrap();
        let back = read_gold_tsv(&p).unwrap();
        assert_eq!(back.classes, gold.classes);
    }
}
