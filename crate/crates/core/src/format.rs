//! Reading and writing families.
//!
//! Text form: a header line `n=<int>`, then one set per line as ascending
//! space-separated elements, with `-` for the empty set. Duplicate sets are
//! rejected. JSON form: `{"n": 3, "sets": [[], [1], [1, 2]]}`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::family::{SetFamily, SetMask, MAX_GROUND_SET};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    n: usize,
    sets: Vec<Vec<usize>>,
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_family(input: &str) -> Result<SetFamily, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_family_json(input)
    } else {
        parse_family_text(input)
    }
}

pub fn parse_family_text(input: &str) -> Result<SetFamily, ParseError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line))
        .filter(|(_, line)| !line.trim().is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing `n=<int>` header"))?;
    let n = parse_header(header_line, header)?;

    let mut seen = HashSet::new();
    let mut members = Vec::new();
    for (line_no, line) in lines {
        let set = parse_set_line(line_no, line, n)?;
        if !seen.insert(set) {
            let column = leading_ws(line) + 1;
            return Err(ParseError::new(
                line_no,
                column,
                format!("duplicate set {set}"),
            ));
        }
        members.push(set);
    }
    if members.is_empty() {
        return Err(ParseError::new(header_line, 1, "family has no sets"));
    }
    Ok(SetFamily::new(n, members).expect("validated while parsing"))
}

fn parse_header(line_no: usize, line: &str) -> Result<usize, ParseError> {
    let start = leading_ws(line);
    let body = line.trim();
    let value = body
        .strip_prefix("n=")
        .ok_or_else(|| ParseError::new(line_no, start + 1, "expected `n=<int>` header"))?;
    let n: usize = value.trim().parse().map_err(|_| {
        ParseError::new(
            line_no,
            start + 3,
            format!("invalid ground set size `{value}`"),
        )
    })?;
    if n == 0 || n > MAX_GROUND_SET {
        return Err(ParseError::new(
            line_no,
            start + 3,
            format!("ground set size {n} is outside 1..={MAX_GROUND_SET}"),
        ));
    }
    Ok(n)
}

fn parse_set_line(line_no: usize, line: &str, n: usize) -> Result<SetMask, ParseError> {
    let mut tokens = Vec::new();
    let mut column = 0;
    for piece in line.split(|c: char| c.is_whitespace()) {
        if !piece.is_empty() {
            tokens.push((column + 1, piece));
        }
        column += piece.chars().count() + 1;
    }
    if let [(_, "-")] = tokens.as_slice() {
        return Ok(SetMask::EMPTY);
    }

    let mut bits = SetMask::EMPTY;
    let mut previous = 0usize;
    for (col, token) in tokens {
        if token == "-" {
            return Err(ParseError::new(
                line_no,
                col,
                "`-` must stand alone on its line",
            ));
        }
        let element: usize = token
            .parse()
            .map_err(|_| ParseError::new(line_no, col, format!("invalid element `{token}`")))?;
        if element == 0 || element > n {
            return Err(ParseError::new(
                line_no,
                col,
                format!("element {element} is outside 1..={n}"),
            ));
        }
        if element <= previous {
            return Err(ParseError::new(
                line_no,
                col,
                format!("elements must be strictly ascending, {element} follows {previous}"),
            ));
        }
        previous = element;
        bits = bits | SetMask::singleton(element);
    }
    Ok(bits)
}

fn leading_ws(line: &str) -> usize {
    line.chars().take_while(|c| c.is_whitespace()).count()
}

pub fn parse_family_json(input: &str) -> Result<SetFamily, ParseError> {
    let raw: FamilyJson = serde_json::from_str(input)
        .map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    if raw.n == 0 || raw.n > MAX_GROUND_SET {
        return Err(ParseError::new(
            1,
            1,
            format!("ground set size {} is outside 1..={MAX_GROUND_SET}", raw.n),
        ));
    }
    let mut seen = HashSet::new();
    let mut members = Vec::with_capacity(raw.sets.len());
    for (idx, elements) in raw.sets.iter().enumerate() {
        let at = |msg: String| ParseError::new(1, 1, format!("sets[{idx}]: {msg}"));
        if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > raw.n) {
            return Err(at(format!("element {e} is outside 1..={}", raw.n)));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(at("elements must be strictly ascending".into()));
        }
        let set = SetMask::from_elements(elements.iter().copied()).expect("range checked");
        if !seen.insert(set) {
            return Err(at(format!("duplicate set {set}")));
        }
        members.push(set);
    }
    if members.is_empty() {
        return Err(ParseError::new(1, 1, "family has no sets"));
    }
    Ok(SetFamily::new(raw.n, members).expect("validated while parsing"))
}

pub fn to_text(family: &SetFamily) -> String {
    let mut out = format!("n={}\n", family.n());
    for set in family {
        if set.is_empty() {
            out.push('-');
        } else {
            let elements: Vec<String> = set.elements().map(|e| e.to_string()).collect();
            out.push_str(&elements.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn to_json_value(family: &SetFamily) -> serde_json::Value {
    let raw = FamilyJson {
        n: family.n(),
        sets: family.iter().map(|s| s.elements().collect()).collect(),
    };
    serde_json::to_value(raw).expect("plain data serializes")
}

pub fn to_json(family: &SetFamily) -> String {
    to_json_value(family).to_string()
}
