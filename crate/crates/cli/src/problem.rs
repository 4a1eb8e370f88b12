//! Problem files: a JSON document or a four-column CSV table.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tridiag_interval::{Interval, SymTriInterval};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: line {line}: {message}")]
    Csv {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

/// One `[lo, hi]` pair, validated during parsing so errors carry positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Pair(pub Interval);

impl TryFrom<[f64; 2]> for Pair {
    type Error = String;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, String> {
        Interval::new(lo, hi).map(Pair).map_err(|e| e.to_string())
    }
}

impl From<Pair> for [f64; 2] {
    fn from(p: Pair) -> Self {
        [p.0.lo(), p.0.hi()]
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    n: usize,
    a: Vec<Pair>,
    b: Vec<Pair>,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    comment: Option<String>,
}

/// Input document: `n`, the `n` diagonal pairs `a`, the `n − 1`
/// off-diagonal pairs `b`, and optional metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProblem")]
pub struct ProblemFile {
    pub n: usize,
    pub a: Vec<Pair>,
    pub b: Vec<Pair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl TryFrom<RawProblem> for ProblemFile {
    type Error = String;

    fn try_from(raw: RawProblem) -> Result<Self, String> {
        if raw.n == 0 {
            return Err("n must be at least 1".into());
        }
        if raw.a.len() != raw.n {
            return Err(format!(
                "expected {} diagonal pairs in `a`, found {}",
                raw.n,
                raw.a.len()
            ));
        }
        if raw.b.len() + 1 != raw.n {
            return Err(format!(
                "expected {} off-diagonal pairs in `b`, found {}",
                raw.n - 1,
                raw.b.len()
            ));
        }
        Ok(ProblemFile {
            n: raw.n,
            a: raw.a,
            b: raw.b,
            name: raw.name,
            comment: raw.comment,
        })
    }
}

impl ProblemFile {
    pub fn matrix(&self) -> SymTriInterval {
        SymTriInterval::new(
            self.a.iter().map(|p| p.0).collect(),
            self.b.iter().map(|p| p.0).collect(),
        )
        .expect("lengths validated during parsing")
    }
}

pub fn parse_json(text: &str, path: &str) -> Result<ProblemFile, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Rows `a_lo,a_hi,b_lo,b_hi`; the last row has no `b` columns. A first row
/// whose first field is not a number is taken as a header.
pub fn parse_csv(text: &str, path: &str) -> Result<ProblemFile, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let err = |line: u64, message: String| InputError::Csv {
        path: path.to_string(),
        line,
        message,
    };
    let mut rows: Vec<(u64, Vec<f64>)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let fields: Vec<&str> = record.iter().filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        if i == 0 && fields[0].parse::<f64>().is_err() {
            continue;
        }
        let values = fields
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| err(line, format!("`{f}` is not a number")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push((line, values));
    }
    if rows.is_empty() {
        return Err(InputError::Invalid {
            path: path.to_string(),
            message: "no data rows".into(),
        });
    }
    let last = rows.len() - 1;
    let mut a = Vec::with_capacity(rows.len());
    let mut b = Vec::with_capacity(last);
    for (idx, (line, values)) in rows.iter().enumerate() {
        let want = if idx == last { 2 } else { 4 };
        if values.len() != want {
            return Err(err(
                *line,
                format!("expected {want} columns, found {}", values.len()),
            ));
        }
        let pair = |lo: f64, hi: f64| {
            Interval::new(lo, hi)
                .map(Pair)
                .map_err(|e| err(*line, e.to_string()))
        };
        a.push(pair(values[0], values[1])?);
        if idx != last {
            b.push(pair(values[2], values[3])?);
        }
    }
    Ok(ProblemFile {
        n: a.len(),
        a,
        b,
        name: None,
        comment: None,
    })
}

pub fn load(path: &Path, csv: bool) -> Result<ProblemFile, InputError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: shown.clone(),
        source,
    })?;
    let mut problem = if csv {
        parse_csv(&text, &shown)?
    } else {
        parse_json(&text, &shown)?
    };
    if problem.name.is_none() {
        problem.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(problem)
}
