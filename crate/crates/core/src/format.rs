//! Family file formats.
//!
//! Text: a header line `n=<n> k=<k>` followed by one member per line as
//! ascending comma-separated elements (`1,3,7`). The empty set is written `-`.
//! Blank lines and lines starting with `#` are ignored.
//!
//! JSON: `{"n":..,"k":..,"sets":[[..],..]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kset::{Family, KSet};

pub fn to_text(family: &Family) -> String {
    let mut out = format!("n={} k={}\n", family.n(), family.k());
    for m in family {
        if m.k() == 0 {
            out.push('-');
        } else {
            let elems: Vec<String> = m.elements().iter().map(|e| e.to_string()).collect();
            out.push_str(&elems.join(","));
        }
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut n = None;
    let mut k = None;
    let mut col = 1;
    for token in line.split(' ') {
        if !token.is_empty() {
            let (key, value) = token.split_once('=').ok_or_else(|| {
                parse_err(line_no, col, format!("expected key=value, found `{token}`"))
            })?;
            let value: usize = value.parse().map_err(|_| {
                parse_err(
                    line_no,
                    col + key.len() + 1,
                    format!("bad integer `{value}`"),
                )
            })?;
            match key {
                "n" => n = Some(value),
                "k" => k = Some(value),
                other => {
                    return Err(parse_err(
                        line_no,
                        col,
                        format!("unknown header key `{other}`"),
                    ))
                }
            }
        }
        col += token.len() + 1;
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(parse_err(line_no, 1, "header must be `n=<n> k=<k>`")),
    }
}

fn parse_member(line_no: usize, line: &str, n: usize, k: usize) -> Result<KSet> {
    let located = |col: usize, e: Error| match e {
        Error::Parse { .. } => e,
        other => parse_err(line_no, col, other.to_string()),
    };
    if line == "-" {
        return KSet::new(&[], n).map_err(|e| located(1, e));
    }
    let mut elements = Vec::with_capacity(k);
    let mut col = 1;
    for field in line.split(',') {
        let trimmed = field.trim();
        let value: usize = trimmed
            .parse()
            .map_err(|_| parse_err(line_no, col, format!("bad element `{trimmed}`")))?;
        elements.push(value);
        col += field.len() + 1;
    }
    let set = KSet::new(&elements, n).map_err(|e| located(1, e))?;
    if set.k() != k {
        return Err(parse_err(
            line_no,
            1,
            format!("set has {} elements, header says k={k}", set.k()),
        ));
    }
    Ok(set)
}

pub fn from_text(text: &str) -> Result<Family> {
    let mut header = None;
    let mut members = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match header {
            None => header = Some(parse_header(line_no, line)?),
            Some((n, k)) => members.push((line_no, parse_member(line_no, line, n, k)?)),
        }
    }
    let (n, k) = header.ok_or_else(|| parse_err(1, 1, "missing header line"))?;
    let mut seen = std::collections::HashSet::new();
    for (line_no, m) in &members {
        if !seen.insert(*m) {
            return Err(parse_err(*line_no, 1, format!("duplicate member {m}")));
        }
    }
    Family::new(n, k, members.into_iter().map(|(_, m)| m).collect())
        .map_err(|e| parse_err(1, 1, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<Family> for FamilyJson {
    fn from(f: Family) -> Self {
        FamilyJson::from(&f)
    }
}

impl From<&Family> for FamilyJson {
    fn from(f: &Family) -> Self {
        FamilyJson {
            n: f.n(),
            k: f.k(),
            sets: f.iter().map(|m| m.elements()).collect(),
        }
    }
}

impl TryFrom<FamilyJson> for Family {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<Family> {
        Family::from_sets(j.n, j.k, &j.sets)
    }
}

pub fn to_json(family: &Family) -> String {
    serde_json::to_string(&FamilyJson::from(family)).expect("family serializes")
}

pub fn from_json(text: &str) -> Result<Family> {
    let parsed: FamilyJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    Family::try_from(parsed)
}

/// Accepts either format, sniffing on the first non-blank character.
pub fn parse_family(text: &str) -> Result<Family> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}
