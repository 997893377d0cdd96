//! Output plumbing shared by the commands: metadata headers, hashing and
//! atomic file writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        write!(s, "{b:02x}").expect("writing to a String");
    }
    s
}

/// The `#` header carried by every output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub tool_version: String,
    pub corpus_sha256: String,
    pub config_sha256: String,
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn new(corpus_sha256: impl Into<String>, config_digest_input: &str, seed: Option<u64>) -> Self {
        Self {
            tool_version: format!("ricf {TOOL_VERSION}"),
            corpus_sha256: corpus_sha256.into(),
            config_sha256: sha256_hex(config_digest_input.as_bytes()),
            seed,
        }
    }

    /// Header lines, each starting with `# ` and ending in `\n`, followed by
    /// any extra `key: value` lines.
    pub fn header(&self, extra: &[(&str, String)]) -> String {
        let mut s = String::new();
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        for (k, v) in [
            ("tool_version", &self.tool_version),
            ("corpus_sha256", &self.corpus_sha256),
            ("config_sha256", &self.config_sha256),
            ("seed", &seed),
        ] {
            writeln!(s, "# {k}: {v}").expect("writing to a String");
        }
        for (k, v) in extra {
            writeln!(s, "# {k}: {v}").expect("writing to a String");
        }
        s
    }

    /// Parses the standard header fields back out of a file's `#` lines.
    pub fn parse(text: &str) -> Option<Self> {
        let field = |key: &str| {
            text.lines()
                .take_while(|l| l.starts_with('#'))
                .find_map(|l| l.strip_prefix(&format!("# {key}: ")).map(str::to_string))
        };
        let tool_version = field("tool_version")?;
        let corpus_sha256 = field("corpus_sha256")?;
        let config_sha256 = field("config_sha256")?;
        let seed = field("seed")?;
        Some(Self {
            tool_version,
            corpus_sha256,
            config_sha256,
            seed: seed.parse().ok(),
        })
    }
}

/// Writes `contents` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Lines of `text` that are not `#` comments.
pub fn body_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'))
}
