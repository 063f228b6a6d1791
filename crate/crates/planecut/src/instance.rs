//! Instance file grammar.
//!
//! A file is `maximize c1 c2`, a literal `subject` line, then one row
//! `a1 a2 b` per line meaning a.x <= b. Entries are arbitrary-size
//! integers, '#' starts a comment, blank lines are skipped.

use crate::geom::{HalfPlane, Int, IntVec};
use crate::poly::{canonicalize, Polyhedron};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InstanceFile {
    pub objective: IntVec,
    pub rows: Vec<HalfPlane>,
}

impl InstanceFile {
    pub fn polyhedron(&self) -> Polyhedron {
        canonicalize(&self.rows)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Tokens of one line with their 1-based column, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = match line.find('#') {
        Some(cut) => &line[..cut],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn parse_int(lineno: usize, tok: (usize, &str)) -> Result<Int, ParseError> {
    tok.1
        .parse::<Int>()
        .map_err(|_| err(lineno, tok.0, format!("expected an integer, found {:?}", tok.1)))
}

fn take_ints<const N: usize>(
    lineno: usize,
    toks: &[(usize, &str)],
    what: &str,
) -> Result<[Int; N], ParseError> {
    if toks.len() < N {
        let column = toks.last().map_or(1, |(c, t)| c + t.len());
        return Err(err(lineno, column, format!("expected {N} integers for {what}")));
    }
    if toks.len() > N {
        return Err(err(lineno, toks[N].0, format!("unexpected trailing token {:?}", toks[N].1)));
    }
    let mut out = std::array::from_fn(|_| Int::from(0));
    for (slot, tok) in out.iter_mut().zip(toks) {
        *slot = parse_int(lineno, *tok)?;
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
    enum State {
        Objective,
        Subject,
        Rows,
    }
    let mut state = State::Objective;
    let mut objective = None;
    let mut rows = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match state {
            State::Objective => {
                if toks[0].1 != "maximize" {
                    return Err(err(lineno, toks[0].0, "expected the keyword maximize"));
                }
                let [c1, c2] = take_ints(lineno, &toks[1..], "the objective")?;
                objective = Some(IntVec::new(c1, c2));
                state = State::Subject;
            }
            State::Subject => {
                if toks[0].1 != "subject" {
                    return Err(err(lineno, toks[0].0, "expected the keyword subject"));
                }
                if let Some(extra) = toks.get(1) {
                    return Err(err(lineno, extra.0, format!("unexpected trailing token {:?}", extra.1)));
                }
                state = State::Rows;
            }
            State::Rows => {
                let [a1, a2, b] = take_ints(lineno, &toks, "a row")?;
                rows.push(HalfPlane::from_parts(IntVec::new(a1, a2), b));
            }
        }
    }
    let objective = match (objective, &state) {
        (Some(c), State::Rows) => c,
        (_, State::Objective) => return Err(err(last_line + 1, 1, "missing maximize line")),
        _ => return Err(err(last_line + 1, 1, "missing subject line")),
    };
    if rows.is_empty() {
        return Err(err(last_line + 1, 1, "at least one row is required"));
    }
    Ok(InstanceFile { objective, rows })
}
