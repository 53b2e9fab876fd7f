//! Per-dataset ingest descriptions and the column extractor.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("row {row}: column {column} not present")]
    MissingColumn { row: u64, column: String },
    #[error("row {row}: cannot parse {token:?}")]
    UnparseableRow { row: u64, token: String },
    #[error("row {row}: missing value")]
    MissingValue { row: u64 },
    #[error("{0}")]
    Csv(String),
    #[error("{}: sha256 is {actual}, expected {expected}", path.display())]
    ChecksumMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },
    #[error("{}: {message}", path.display())]
    BadSpec { path: PathBuf, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl std::fmt::Display for Column {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Column::Index(i) => write!(f, "{i}"),
            Column::Name(n) => write!(f, "{n:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingPolicy {
    #[default]
    Skip,
    ForwardFill,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct DatasetSpec {
    pub name: String,
    /// Relative paths are resolved against the spec file's directory.
    pub source_path: PathBuf,
    #[serde(default = "first_column")]
    pub column: Column,
    /// A single character, or `"whitespace"` for runs of blanks.
    #[serde(default = "comma")]
    pub delimiter: String,
    #[serde(default)]
    pub missing_policy: MissingPolicy,
    #[serde(default)]
    pub header: bool,
    #[serde(default)]
    pub sha256: Option<String>,
}

fn first_column() -> Column {
    Column::Index(0)
}

fn comma() -> String {
    ",".into()
}

/// Tokens treated as a missing reading.
const MISSING: [&str; 5] = ["", "?", "NA", "NaN", "nan"];

impl DatasetSpec {
    /// A headerless single-column file.
    pub fn plain(path: impl Into<PathBuf>) -> Self {
        DatasetSpec {
            name: "input".into(),
            source_path: path.into(),
            column: first_column(),
            delimiter: comma(),
            missing_policy: MissingPolicy::Skip,
            header: false,
            sha256: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, DatasetError> {
        let text = std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
            path: path.to_owned(),
            source,
        })?;
        let mut spec: DatasetSpec = toml::from_str(&text).map_err(|e| DatasetError::BadSpec {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        if spec.source_path.is_relative() {
            let base = path.parent().unwrap_or(Path::new("."));
            spec.source_path = base.join(&spec.source_path);
        }
        spec.delimiter_kind().map_err(|message| DatasetError::BadSpec {
            path: path.to_owned(),
            message,
        })?;
        Ok(spec)
    }

    fn delimiter_kind(&self) -> Result<Delimiter, String> {
        match self.delimiter.as_str() {
            "whitespace" => Ok(Delimiter::Whitespace),
            "\\t" | "tab" => Ok(Delimiter::Byte(b'\t')),
            d if d.len() == 1 => Ok(Delimiter::Byte(d.as_bytes()[0])),
            d => Err(format!("unsupported delimiter {d:?}")),
        }
    }
}

#[derive(Clone, Copy)]
enum Delimiter {
    Byte(u8),
    Whitespace,
}

/// Extracts the configured column as decimal text tokens, in row order.
///
/// Tokens keep their original spelling so lossless mode can count digits.
pub fn ingest(spec: &DatasetSpec) -> Result<Vec<String>, DatasetError> {
    let path = &spec.source_path;
    let file = File::open(path).map_err(|source| DatasetError::Io {
        path: path.clone(),
        source,
    })?;
    let delimiter = spec.delimiter_kind().map_err(|message| DatasetError::BadSpec {
        path: path.clone(),
        message,
    })?;
    let raw = match delimiter {
        Delimiter::Byte(b) => read_delimited(file, b, spec)?,
        Delimiter::Whitespace => read_whitespace(file, spec)?,
    };
    apply_policy(raw, spec.missing_policy)
}

/// (row number, token) pairs before the missing policy runs.
type RawColumn = Vec<(u64, String)>;

fn read_delimited(file: File, delimiter: u8, spec: &DatasetSpec) -> Result<RawColumn, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(spec.header)
        .flexible(true)
        .from_reader(BufReader::new(file));
    let index = match &spec.column {
        Column::Index(i) => *i,
        Column::Name(name) => {
            if !spec.header {
                return Err(DatasetError::MissingColumn {
                    row: 0,
                    column: format!("{name:?} (file has no header)"),
                });
            }
            let headers = reader.headers().map_err(|e| DatasetError::Csv(e.to_string()))?;
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| DatasetError::MissingColumn {
                    row: 0,
                    column: format!("{name:?}"),
                })?
        }
    };
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| DatasetError::Csv(e.to_string()))?;
        let row = record.position().map_or(i as u64 + 1, |p| p.line());
        let field = record.get(index).ok_or_else(|| DatasetError::MissingColumn {
            row,
            column: spec.column.to_string(),
        })?;
        out.push((row, field.trim().to_owned()));
    }
    Ok(out)
}

fn read_whitespace(file: File, spec: &DatasetSpec) -> Result<RawColumn, DatasetError> {
    let mut lines = BufReader::new(file).lines();
    let mut line_no = 0u64;
    let mut next = || {
        line_no += 1;
        lines.next().map(|l| {
            l.map(|l| (line_no, l)).map_err(|source| DatasetError::Io {
                path: spec.source_path.clone(),
                source,
            })
        })
    };
    let index = match &spec.column {
        Column::Index(i) => {
            if spec.header {
                next().transpose()?;
            }
            *i
        }
        Column::Name(name) => {
            let header = match (spec.header, next().transpose()?) {
                (true, Some((_, h))) => h,
                _ => {
                    return Err(DatasetError::MissingColumn {
                        row: 0,
                        column: format!("{name:?}"),
                    })
                }
            };
            header
                .split_whitespace()
                .position(|h| h == name)
                .ok_or_else(|| DatasetError::MissingColumn {
                    row: 0,
                    column: format!("{name:?}"),
                })?
        }
    };
    let mut out = Vec::new();
    while let Some(line) = next() {
        let (row, line) = line?;
        if line.trim().is_empty() {
            continue;
        }
        let field = line
            .split_whitespace()
            .nth(index)
            .ok_or_else(|| DatasetError::MissingColumn {
                row,
                column: spec.column.to_string(),
            })?;
        out.push((row, field.to_owned()));
    }
    Ok(out)
}

fn apply_policy(raw: RawColumn, policy: MissingPolicy) -> Result<Vec<String>, DatasetError> {
    let mut out: Vec<String> = Vec::with_capacity(raw.len());
    for (row, token) in raw {
        if MISSING.contains(&token.as_str()) {
            match policy {
                MissingPolicy::Skip => continue,
                MissingPolicy::Fail => return Err(DatasetError::MissingValue { row }),
                MissingPolicy::ForwardFill => match out.last() {
                    Some(prev) => {
                        let prev = prev.clone();
                        out.push(prev);
                        continue;
                    }
                    None => return Err(DatasetError::MissingValue { row }),
                },
            }
        }
        match token.parse::<f64>() {
            Ok(x) if x.is_finite() => out.push(token),
            _ => return Err(DatasetError::UnparseableRow { row, token }),
        }
    }
    Ok(out)
}

pub fn file_sha256(path: &Path) -> Result<String, DatasetError> {
    let io = |source| DatasetError::Io {
        path: path.to_owned(),
        source,
    };
    let mut file = File::open(path).map_err(io)?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf).map_err(io)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Checks the source file against the spec's checksum, if it has one, and
/// returns the file's digest either way.
pub fn check_source(spec: &DatasetSpec) -> Result<String, DatasetError> {
    let actual = file_sha256(&spec.source_path)?;
    match &spec.sha256 {
        Some(expected) if !expected.eq_ignore_ascii_case(&actual) => Err(DatasetError::ChecksumMismatch {
            path: spec.source_path.clone(),
            expected: expected.clone(),
            actual,
        }),
        _ => Ok(actual),
    }
}
