//! Plain-text group definitions.
//!
//! ```text
//! # the cyclic permutation of coordinates
//! conductor: 3
//! generator:
//!   row: 0, 1, 0
//!   row: 0, 0, 1
//!   row: 1, 0, 0
//! ```
//!
//! `#` starts a comment. Blank lines are ignored. Each entry is a cyclotomic
//! expression in which `z` stands for ζ_N, N being the declared conductor.

use crate::cyclo::{parse_expr, CycloNum, MAX_CONDUCTOR};
use crate::error::{Error, Result};
use crate::linalg::Mat3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub conductor: u32,
    pub generators: Vec<Mat3>,
}

struct Line<'a> {
    number: usize,
    /// Byte offset of `text` within the original line.
    offset: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Parse { line: self.number, column: self.offset + at + 1, message: message.into() }
    }

    /// Splits `key: value`, returning the value and its offset.
    fn value_of(&self, key: &str) -> Option<(usize, &str)> {
        let rest = self.text.strip_prefix(key)?.trim_start();
        let rest = rest.strip_prefix(':')?;
        let start = self.text.len() - rest.len();
        Some((start, rest))
    }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let code = raw.split('#').next().unwrap_or("");
        let trimmed = code.trim_start();
        let trimmed_all = trimmed.trim_end();
        if trimmed_all.is_empty() {
            continue;
        }
        out.push(Line { number: i + 1, offset: code.len() - trimmed.len(), text: trimmed_all });
    }
    out
}

fn parse_entry(line: &Line<'_>, start: usize, text: &str, conductor: u32) -> Result<CycloNum> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(line.error(start, "empty matrix entry"));
    }
    parse_expr(body, conductor).map_err(|e| match e {
        Error::Parse { column, message, .. } => line.error(start + lead + column - 1, message),
        other => other,
    })
}

fn parse_row(line: &Line<'_>, conductor: u32) -> Result<[CycloNum; 3]> {
    let (start, rest) = line.value_of("row").ok_or_else(|| line.error(0, "expected `row: e1, e2, e3`"))?;
    let mut entries = Vec::with_capacity(3);
    let mut at = start;
    for part in rest.split(',') {
        entries.push(parse_entry(line, at, part, conductor)?);
        at += part.len() + 1;
    }
    let n = entries.len();
    entries.try_into().map_err(|_| line.error(start, format!("a row needs 3 entries, found {n}")))
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let lines = significant_lines(text);
    let first = lines.first().ok_or(Error::Parse { line: 1, column: 1, message: "empty group file".into() })?;
    let (start, value) =
        first.value_of("conductor").ok_or_else(|| first.error(0, "expected `conductor: N` on the first line"))?;
    let lead = value.len() - value.trim_start().len();
    let conductor: u32 =
        value.trim().parse().map_err(|_| first.error(start + lead, "conductor must be a positive integer"))?;
    if conductor == 0 || conductor > MAX_CONDUCTOR {
        return Err(Error::Conductor {
            got: conductor as u64,
            reason: format!("must lie between 1 and {MAX_CONDUCTOR}"),
        });
    }

    let mut generators = Vec::new();
    let mut rest = &lines[1..];
    while let Some(head) = rest.first() {
        if !head.value_of("generator").is_some_and(|(_, v)| v.trim().is_empty()) {
            return Err(head.error(0, "expected `generator:`"));
        }
        let rows_available = rest.len() - 1;
        if rows_available < 3 {
            let last = rest.last().expect("non-empty");
            return Err(last.error(last.text.len(), "a generator needs 3 rows"));
        }
        let rows = [parse_row(&rest[1], conductor)?, parse_row(&rest[2], conductor)?, parse_row(&rest[3], conductor)?];
        let m = Mat3::new(rows)?.embed(conductor)?;
        if m.det().is_zero() {
            return Err(Error::Constraint(format!(
                "generator {} (line {}) is singular",
                generators.len() + 1,
                head.number
            )));
        }
        generators.push(m);
        rest = &rest[4..];
    }
    if generators.is_empty() {
        return Err(first.error(0, "no generators given"));
    }
    Ok(GroupFile { conductor, generators })
}

/// The text that [`parse_group_file`] reads back as the same matrices.
pub fn write_group_file(conductor: u32, generators: &[Mat3]) -> Result<String> {
    let mut out = format!("conductor: {conductor}\n");
    for g in generators {
        let g = g.embed(conductor)?;
        out.push_str("generator:\n");
        for i in 0..3 {
            let row: Vec<String> = (0..3).map(|j| g.get(i, j).to_expr()).collect();
            out.push_str(&format!("  row: {}\n", row.join(", ")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::tau;

    #[test]
    fn parses_tau() {
        let f = parse_group_file("# tau\nconductor: 3\ngenerator:\n row: 0, 1, 0\n row: 0,0,1\n row: 1, 0, 0 # end\n")
            .unwrap();
        assert_eq!(f.conductor, 3);
        assert_eq!(f.generators, vec![tau()]);
    }

    #[test]
    fn entry_errors_point_at_the_column() {
        let e = parse_group_file("conductor: 3\ngenerator:\n row: 0, 1, 0\n row: 0, 0, 1\n row: 1, 0, (z\n").unwrap_err();
        match e {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 5);
                assert_eq!(column, 15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_singular_and_short() {
        let singular = "conductor: 1\ngenerator:\nrow: 0,0,0\nrow: 0,1,0\nrow: 0,0,1\n";
        assert!(matches!(parse_group_file(singular), Err(Error::Constraint(_))));
        let short = "conductor: 1\ngenerator:\nrow: 1,0,0\nrow: 0,1,0\n";
        assert!(matches!(parse_group_file(short), Err(Error::Parse { .. })));
        let wide = "conductor: 1\ngenerator:\nrow: 1,0,0,0\nrow: 0,1,0\nrow: 0,0,1\n";
        assert!(matches!(parse_group_file(wide), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_group_file("conductor: 5000\n"), Err(Error::Conductor { .. })));
    }

    #[test]
    fn writes_what_it_reads() {
        let g = crate::catalog::build("A5_I").unwrap();
        let text = write_group_file(g.conductor, &g.generators).unwrap();
        let back = parse_group_file(&text).unwrap();
        assert_eq!(back.generators, g.generators);
    }
}
