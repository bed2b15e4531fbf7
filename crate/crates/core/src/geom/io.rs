//! Text formats for chord models.
//!
//! ```text
//! poly v1            circle v1
//! k m                m
//! n_1 ... n_k        p q
//! p q                ...
//! ...
//! ```
//!
//! Tokens are whitespace separated, lines end in LF, blank lines and lines
//! starting with `#` are ignored. Chord ids are the zero-based order of the
//! `p q` lines.

use std::fmt::Write as _;

use super::{ChordModel, Position};
use crate::error::{ModelError, ParseError};

/// Non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_numbers<T: std::str::FromStr>(
    line_no: usize,
    line: &str,
    expected: Option<usize>,
) -> Result<Vec<T>, ParseError> {
    let values = line
        .split_whitespace()
        .map(|tok| {
            tok.parse::<T>()
                .map_err(|_| ParseError::new(line_no, format!("invalid integer `{tok}`")))
        })
        .collect::<Result<Vec<T>, _>>()?;
    if let Some(n) = expected {
        if values.len() != n {
            return Err(ParseError::new(
                line_no,
                format!("expected {n} values, found {}", values.len()),
            ));
        }
    }
    Ok(values)
}

/// Parses a `poly v1` or `circle v1` model file.
pub fn parse_model(text: &str) -> Result<ChordModel, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty model file"))?;
    let polygon = match header {
        "poly v1" => true,
        "circle v1" => false,
        other => {
            return Err(ParseError::new(
                hline,
                format!("malformed header `{other}`, expected `poly v1` or `circle v1`"),
            ))
        }
    };
    let eof = |what: &str| ParseError::new(text.lines().count() + 1, format!("missing {what}"));
    let (sline, sizes) = lines.next().ok_or_else(|| eof("size line"))?;
    let (k, m) = if polygon {
        let v = parse_numbers::<usize>(sline, sizes, Some(2))?;
        (v[0], v[1])
    } else {
        (0, parse_numbers::<usize>(sline, sizes, Some(1))?[0])
    };
    let side_lengths = if polygon {
        let (l, body) = lines.next().ok_or_else(|| eof("side lengths"))?;
        let v = parse_numbers::<u32>(l, body, Some(k))?;
        if k < 3 {
            return Err(ParseError::new(
                sline,
                "a polygon model needs at least 3 sides",
            ));
        }
        if v.iter().sum::<u32>() as usize != 2 * m {
            return Err(ParseError::new(
                l,
                format!("side lengths must sum to {}", 2 * m),
            ));
        }
        Some((l, v))
    } else {
        None
    };
    let mut pairs = Vec::with_capacity(m);
    let mut chord_lines = Vec::with_capacity(m);
    for (l, body) in lines {
        if pairs.len() == m {
            return Err(ParseError::new(l, format!("more than {m} chord lines")));
        }
        let v = parse_numbers::<Position>(l, body, Some(2))?;
        if v[0] >= v[1] {
            return Err(ParseError::new(l, "chord endpoints must satisfy p < q"));
        }
        pairs.push((v[0], v[1]));
        chord_lines.push(l);
    }
    if pairs.len() != m {
        return Err(eof(&format!("chord lines ({} of {m})", pairs.len())));
    }
    let built = match &side_lengths {
        Some((_, lengths)) => ChordModel::polygon(lengths, &pairs),
        None => ChordModel::circle(&pairs),
    };
    built.map_err(|e| {
        let line = match &e {
            ModelError::DegenerateChord { chord, .. } | ModelError::SameSide { chord, .. } => {
                chord_lines[*chord]
            }
            ModelError::DuplicateEndpoint { pos } => lines_mentioning(&pairs, &chord_lines, *pos)
                .nth(1)
                .unwrap_or(sline),
            ModelError::PositionOutOfRange { pos, .. } => {
                lines_mentioning(&pairs, &chord_lines, *pos)
                    .next()
                    .unwrap_or(sline)
            }
            _ => side_lengths.as_ref().map_or(sline, |(l, _)| *l),
        };
        ParseError::new(line, e.to_string())
    })
}

fn lines_mentioning<'a>(
    pairs: &'a [(Position, Position)],
    lines: &'a [usize],
    pos: Position,
) -> impl Iterator<Item = usize> + 'a {
    pairs
        .iter()
        .zip(lines)
        .flat_map(move |(&(p, q), &l)| [(p, l), (q, l)])
        .filter(move |&(x, _)| x == pos)
        .map(|(_, l)| l)
}

/// Canonical text form; `parse_model(serialize_model(m)) == m`.
pub fn serialize_model(model: &ChordModel) -> String {
    let mut out = String::new();
    match model.side_lengths() {
        Some(lengths) => {
            let _ = writeln!(out, "poly v1");
            let _ = writeln!(out, "{} {}", lengths.len(), model.m());
            let joined: Vec<String> = lengths.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", joined.join(" "));
        }
        None => {
            let _ = writeln!(out, "circle v1");
            let _ = writeln!(out, "{}", model.m());
        }
    }
    for c in model.chords() {
        let _ = writeln!(out, "{} {}", c.p, c.q);
    }
    out
}
