//! Readers for p-value lists, schedule files and family tables.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use kfwer::{CriticalSchedule, Error, LocalTestFamily};

use crate::error::{data, usage, CliResult};

pub fn read_source(path: Option<&Path>) -> CliResult<String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| data(format!("{}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| data(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

/// First non-blank line with whitespace stripped, lowercased.
fn header(text: &str) -> Option<String> {
    text.lines().find(|l| !l.trim().is_empty()).map(|l| {
        l.chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_lowercase()
    })
}

fn parse_probability(field: &str, line: u64, what: &str) -> CliResult<f64> {
    let v: f64 = field.trim().parse().map_err(|_| {
        data(format!(
            "line {line}: cannot parse {what} {:?}",
            field.trim()
        ))
    })?;
    if !(0.0..=1.0).contains(&v) {
        return Err(data(format!("line {line}: {what} {v} is outside [0, 1]")));
    }
    Ok(v)
}

/// Values read from a list, each paired with its 1-based source line.
pub struct Numbered {
    pub values: Vec<f64>,
    pub lines: Vec<u64>,
}

impl Numbered {
    fn line_of(&self, position: usize) -> u64 {
        self.lines[position - 1]
    }
}

fn plain_list(text: &str, what: &str) -> CliResult<Numbered> {
    let mut out = Numbered {
        values: Vec::new(),
        lines: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let line = idx as u64 + 1;
        out.values.push(parse_probability(raw, line, what)?);
        out.lines.push(line);
    }
    Ok(out)
}

/// P-values, either one per line or as CSV with header `id,p`.
pub fn parse_pvalues(text: &str) -> CliResult<Vec<f64>> {
    let parsed = if header(text).as_deref() == Some("id,p") {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut out = Numbered {
            values: Vec::new(),
            lines: Vec::new(),
        };
        for record in reader.records() {
            let record = record.map_err(|e| data(e.to_string()))?;
            let line = record.position().map_or(0, |p| p.line());
            out.values
                .push(parse_probability(&record[1], line, "p-value")?);
            out.lines.push(line);
        }
        out
    } else {
        plain_list(text, "p-value")?
    };
    if parsed.values.is_empty() {
        return Err(data("no p-values in input"));
    }
    Ok(parsed.values)
}

/// Contents of a critical value file: a single-column schedule or a
/// triangular family table with header `m,i,alpha`.
pub enum CriticalFile {
    Schedule(Numbered),
    Family(FamilyTable),
}

pub struct FamilyTable {
    /// `(m, i) -> (alpha, line)`
    cells: BTreeMap<(usize, usize), (f64, u64)>,
}

pub fn read_critical_file(path: &Path) -> CliResult<CriticalFile> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if header(&text).as_deref() == Some("m,i,alpha") {
        Ok(CriticalFile::Family(parse_family_table(&text)?))
    } else {
        Ok(CriticalFile::Schedule(plain_list(&text, "critical value")?))
    }
}

fn parse_family_table(text: &str) -> CliResult<FamilyTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| data(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .unwrap()
    };
    let (cm, ci, ca) = (col("m"), col("i"), col("alpha"));
    let mut cells = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| data(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let index = |c: usize, name: &str| -> CliResult<usize> {
            record[c]
                .parse()
                .map_err(|_| data(format!("line {line}: cannot parse {name} {:?}", &record[c])))
        };
        let (m, i) = (index(cm, "m")?, index(ci, "i")?);
        let alpha = parse_probability(&record[ca], line, "critical value")?;
        if cells.insert((m, i), (alpha, line)).is_some() {
            return Err(data(format!(
                "line {line}: duplicate entry for m = {m}, i = {i}"
            )));
        }
    }
    Ok(FamilyTable { cells })
}

/// Builds a schedule from a file list, translating validation errors into
/// line numbers.
pub fn schedule_from_list(list: &Numbered, k: usize, n: usize) -> CliResult<CriticalSchedule> {
    let expected = n - k + 1;
    if list.values.len() != expected {
        return Err(data(format!(
            "schedule has {} values; k = {k} and n = {n} need {expected}",
            list.values.len()
        )));
    }
    CriticalSchedule::new(k, n, list.values.clone()).map_err(|e| match e {
        Error::NotMonotone(pos) => data(format!(
            "line {}: critical value is smaller than the previous one",
            list.line_of(pos)
        )),
        Error::OutOfRange(pos) => data(format!(
            "line {}: critical value outside [0, 1]",
            list.line_of(pos)
        )),
        other => data(other.to_string()),
    })
}

impl FamilyTable {
    pub fn into_family(self, k: usize, n: usize) -> CliResult<LocalTestFamily> {
        for (&(m, i), &(_, line)) in &self.cells {
            if m < k || m > n || i < k || i > m {
                return Err(data(format!(
                    "line {line}: entry m = {m}, i = {i} outside k <= i <= m <= n (k = {k}, n = {n})"
                )));
            }
        }
        let mut rows = Vec::with_capacity(n - k + 1);
        for m in k..=n {
            let mut row = Vec::with_capacity(m - k + 1);
            for i in k..=m {
                match self.cells.get(&(m, i)) {
                    Some(&(a, _)) => row.push(a),
                    None => return Err(data(format!("family table is missing m = {m}, i = {i}"))),
                }
            }
            rows.push(row);
        }
        let line = |i: usize, m: usize| self.cells[&(m, i)].1;
        LocalTestFamily::new(k, n, rows).map_err(|e| match e {
            Error::NotMonotoneInI { i, m } => data(format!(
                "line {}: alpha(i = {i}, m = {m}) is smaller than alpha(i = {}, m = {m})",
                line(i, m),
                i - 1
            )),
            Error::NotMonotoneInM { i, m } => data(format!(
                "line {}: alpha(i = {i}, m = {m}) is larger than alpha(i = {i}, m = {})",
                line(i, m),
                m - 1
            )),
            other => data(other.to_string()),
        })
    }
}
