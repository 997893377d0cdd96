//! Command-line front end. The binary is a thin wrapper over [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::eval::{
    evaluate, load_stopwords, precision_table_tsv, stopword_summary, stopword_table_tsv,
    DEFAULT_KS,
};
use crate::exact::{
    default_toy_grid, monte_carlo_tail, ricf_vs_exact_report, ExactTest, ToyConfig,
    DEFAULT_MAX_STATES,
};
use crate::ingest::{
    gold_tsv_body, load_plaintext_corpus, parse_genia, read_gold_tsv, Corpus, GoldStandard,
    ALL_CLASS, SEMANTIC_CLASSES,
};
use crate::matrix::{build_matrix, TermDocumentMatrix};
use crate::measures::{score_measure, Measure, ScoredRanking};
use crate::output::{write_atomic, Metadata};
use crate::report::{curve_csv_body, oracle_tsv_body, ranking_tsv_body, read_ranking_tsv};

pub const DUMP_FILE: &str = "corpus.txt";
pub const GOLD_FILE: &str = "gold.tsv";
pub const STATS_FILE: &str = "corpus_stats.tsv";
pub const PRECISION_FILE: &str = "precision_at_k.tsv";
pub const STOPWORD_FILE: &str = "stopword_ranks.tsv";
pub const CURVE_FILE: &str = "idf_icf_curve.csv";
pub const ORACLE_FILE: &str = "oracle.tsv";

/// Ranking file name for a measure.
pub fn ranking_file(measure: Measure) -> String {
    format!("ranking_{}.tsv", measure.name())
}

#[derive(Debug, Parser)]
#[command(name = "ricf", version, about = "Term burstiness scoring with residual ICF")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a corpus into the canonical dump (plus gold standard for GENIA).
    Ingest(IngestArgs),
    /// Rank the vocabulary with one or more burstiness measures.
    Score(ScoreArgs),
    /// Precision at k against the gold standard and stopword rank summaries.
    Eval(EvalArgs),
    /// Observed IDF/ICF pairs with the expected relation and its asymptote.
    Curve(CurveArgs),
    /// Exact-test oracle on toy configurations.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Genia,
    Plaintext,
    Dump,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "dump")]
    pub format: InputFormat,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: InputFormat,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated measure names; all five by default.
    #[arg(long, value_delimiter = ',')]
    pub measures: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory holding the ranking files; reports are written here too.
    #[arg(long)]
    pub out: PathBuf,
    /// Gold TSV; defaults to `gold.tsv` in the output directory.
    #[arg(long)]
    pub gold: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub measures: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long)]
    pub stopwords: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: PathBuf,
    /// Sample points on the expected curve.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub out: PathBuf,
    /// Probability vector of a single toy config; the built-in grid otherwise.
    #[arg(long, value_delimiter = ',', requires = "sizes")]
    pub thetas: Vec<f64>,
    #[arg(long, value_delimiter = ',', requires = "thetas")]
    pub sizes: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub focus: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: u128,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Monte-Carlo samples per cell; 0 disables the cross-check.
    #[arg(long, default_value_t = 0)]
    pub samples: u64,
}

/// Parses arguments, runs the command, prints its summary and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(summary) => {
            print!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Ingest(a) => cmd_ingest(a),
        Command::Score(a) => cmd_score(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Oracle(a) => cmd_oracle(a),
    }
}

fn read_genia(path: &Path) -> Result<(Corpus, GoldStandard)> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let (docs, gold) = parse_genia(&bytes)?;
    if docs.is_empty() {
        return Err(Error::NoDocuments(path.to_path_buf()));
    }
    Ok((docs.into(), gold))
}

fn load_corpus(path: &Path, format: InputFormat) -> Result<Corpus> {
    match format {
        InputFormat::Genia => Ok(read_genia(path)?.0),
        InputFormat::Plaintext => load_plaintext_corpus(path),
        InputFormat::Dump => Corpus::read_dump(path),
    }
}

fn parse_measures(names: &[String]) -> Result<Vec<Measure>> {
    if names.is_empty() {
        return Ok(Measure::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in names {
        let m: Measure = name.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn matrix_of(corpus: &Corpus) -> Result<TermDocumentMatrix> {
    build_matrix(corpus.documents.iter().map(|d| d.iter().map(String::as_str)))
}

fn cmd_ingest(a: &IngestArgs) -> Result<String> {
    let (corpus, gold) = match a.format {
        InputFormat::Genia => {
            let (c, g) = read_genia(&a.input)?;
            (c, Some(g))
        }
        f => (load_corpus(&a.input, f)?, None),
    };
    let matrix = matrix_of(&corpus)?;
    let hash = corpus.sha256();
    let meta = Metadata::new(&hash, &format!("ingest format={:?}", a.format), None);

    let mut out = String::new();
    let dump_path = a.out.join(DUMP_FILE);
    write_atomic(&dump_path, format!("{}{}", meta.header(&[]), corpus.body()).as_bytes())?;
    writeln!(out, "wrote {}", dump_path.display()).expect("writing to a String");

    let mut stats = String::from("statistic\tvalue\n");
    for (k, v) in [
        ("documents", matrix.num_docs()),
        ("tokens", matrix.total() as usize),
        ("vocabulary", matrix.num_terms()),
    ] {
        writeln!(stats, "{k}\t{v}").expect("writing to a String");
    }
    if let Some(gold) = &gold {
        for class in [ALL_CLASS].into_iter().chain(SEMANTIC_CLASSES) {
            let ann = gold.annotation_counts.get(class).copied().unwrap_or(0);
            let uniq = gold.class(class).map_or(0, |s| s.len());
            writeln!(stats, "annotations[{class}]\t{ann}").expect("writing to a String");
            writeln!(stats, "unique_terms[{class}]\t{uniq}").expect("writing to a String");
        }
        let gold_path = a.out.join(GOLD_FILE);
        write_atomic(&gold_path, format!("{}{}", meta.header(&[]), gold_tsv_body(gold)).as_bytes())?;
        writeln!(out, "wrote {}", gold_path.display()).expect("writing to a String");
    }
    let stats_path = a.out.join(STATS_FILE);
    write_atomic(&stats_path, format!("{}{stats}", meta.header(&[])).as_bytes())?;
    writeln!(
        out,
        "wrote {}\nd={} n={} m={}",
        stats_path.display(),
        matrix.num_docs(),
        matrix.total(),
        matrix.num_terms()
    )
    .expect("writing to a String");
    Ok(out)
}

fn cmd_score(a: &ScoreArgs) -> Result<String> {
    let measures = parse_measures(&a.measures)?;
    let corpus = load_corpus(&a.input.input, a.input.format)?;
    let matrix = matrix_of(&corpus)?;
    let hash = corpus.sha256();
    let mut out = String::new();
    for measure in measures {
        let ranking = score_measure(&matrix, measure)?;
        let meta = Metadata::new(&hash, &format!("score measure={measure}"), None);
        let clamped = ranking.flags().iter().filter(|f| f.theta_clamped).count();
        let header = meta.header(&[
            ("measure", measure.to_string()),
            ("terms", ranking.len().to_string()),
            ("theta_clamped", clamped.to_string()),
        ]);
        let path = a.out.join(ranking_file(measure));
        write_atomic(&path, format!("{header}{}", ranking_tsv_body(&ranking)).as_bytes())?;
        writeln!(out, "wrote {} ({} terms)", path.display(), ranking.len())
            .expect("writing to a String");
    }
    Ok(out)
}

fn check_ks(ks: &[usize]) -> Result<Vec<usize>> {
    if ks.is_empty() {
        return Ok(DEFAULT_KS.to_vec());
    }
    if ks.windows(2).any(|w| w[0] >= w[1]) || ks[0] == 0 {
        return Err(Error::Config(
            "k list must be positive, strictly ascending and free of duplicates".into(),
        ));
    }
    Ok(ks.to_vec())
}

fn cmd_eval(a: &EvalArgs) -> Result<String> {
    let ks = check_ks(&a.k)?;
    let measures = parse_measures(&a.measures)?;
    let mut rankings: Vec<ScoredRanking> = Vec::new();
    let mut corpus_hash = String::from("-");
    for &m in &measures {
        let path = a.out.join(ranking_file(m));
        let r = read_ranking_tsv(&path, m)?;
        if let Some(meta) = std::fs::read_to_string(&path)
            .ok()
            .and_then(|t| Metadata::parse(&t))
        {
            corpus_hash = meta.corpus_sha256;
        }
        rankings.push(r);
    }
    let names: Vec<&str> = measures.iter().map(|m| m.name()).collect();
    let config = format!("eval measures={} k={ks:?}", names.join(","));
    let mut out = String::new();

    let gold_path = a.gold.clone().unwrap_or_else(|| a.out.join(GOLD_FILE));
    let gold = read_gold_tsv(&gold_path)?;
    let reports = evaluate(&rankings, &gold, &ks)?;
    let meta = Metadata::new(&corpus_hash, &config, None);
    let path = a.out.join(PRECISION_FILE);
    write_atomic(
        &path,
        format!("{}{}", meta.header(&[]), precision_table_tsv(&reports)).as_bytes(),
    )?;
    writeln!(out, "wrote {}", path.display()).expect("writing to a String");

    if a.stopwords.is_empty() {
        out.push_str("no stopword lists given; stopword report skipped\n");
        return Ok(out);
    }
    let stopwords = load_stopwords(&a.stopwords)?;
    let summaries = rankings
        .iter()
        .map(|r| stopword_summary(r, &stopwords))
        .collect::<Result<Vec<_>>>()?;
    let meta = Metadata::new(&corpus_hash, &format!("{config} stopwords={}", stopwords.len()), None);
    let path = a.out.join(STOPWORD_FILE);
    write_atomic(
        &path,
        format!(
            "{}{}",
            meta.header(&[("stopwords_pooled", stopwords.len().to_string())]),
            stopword_table_tsv(&summaries)
        )
        .as_bytes(),
    )?;
    writeln!(out, "wrote {}", path.display()).expect("writing to a String");
    Ok(out)
}

fn cmd_curve(a: &CurveArgs) -> Result<String> {
    let corpus = load_corpus(&a.input.input, a.input.format)?;
    let matrix = matrix_of(&corpus)?;
    let meta = Metadata::new(corpus.sha256(), &format!("curve points={}", a.points), None);
    let path = a.out.join(CURVE_FILE);
    write_atomic(
        &path,
        format!("{}{}", meta.header(&[]), curve_csv_body(&matrix, a.points)?).as_bytes(),
    )?;
    Ok(format!("wrote {}\n", path.display()))
}

fn cmd_oracle(a: &OracleArgs) -> Result<String> {
    let grid = if a.thetas.is_empty() {
        default_toy_grid()
    } else {
        vec![ToyConfig::new(a.thetas.clone(), a.sizes.clone(), a.focus)?]
    };
    let reports = ricf_vs_exact_report(&grid, a.max_states)?;
    let tests = grid
        .iter()
        .map(|c| ExactTest::new(c.clone(), a.max_states))
        .collect::<Result<Vec<_>>>()?;
    let mc = reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.cells
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    if a.samples == 0 {
                        return None;
                    }
                    let seed = a.seed.wrapping_add(((i as u64) << 32) | c as u64);
                    monte_carlo_tail(&r.config, cell.n_i, cell.b_i, a.samples, seed).ok()
                })
                .collect()
        })
        .collect::<Vec<Vec<_>>>();
    let descriptions: Vec<String> = grid.iter().map(ToyConfig::describe).collect();
    let config = format!(
        "oracle grid=[{}] max_states={} samples={}",
        descriptions.join(";"),
        a.max_states,
        a.samples
    );
    let meta = Metadata::new("-", &config, Some(a.seed));
    let header = meta.header(&[
        ("configs", grid.len().to_string()),
        ("mc_samples", a.samples.to_string()),
    ]);
    let path = a.out.join(ORACLE_FILE);
    write_atomic(
        &path,
        format!("{header}{}", oracle_tsv_body(&reports, &tests, &mc)?).as_bytes(),
    )?;
    Ok(format!("wrote {} ({} configs)\n", path.display(), grid.len()))
}
