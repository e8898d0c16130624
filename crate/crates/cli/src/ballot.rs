//! Plain-text ballot files.
//!
//! ```text
//! # optional comments
//! 3 4 2
//! 1100
//! 1010
//! 1001
//! ```
//!
//! The header gives `n m k`; then come `n` rows of `m` characters from
//! `{0,1}`. Lines starting with `#` and blank lines are ignored anywhere,
//! except that ballots over zero candidates are written as blank rows.

use std::fmt::Write as _;

use mav_core::{BitVector, Election};

use crate::error::{CliError, CliResult};

fn parse_header(line: usize, text: &str) -> CliResult<(usize, usize, usize)> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(CliError::parse(line, format!("header must be `n m k`, got {text:?}")));
    }
    let mut nums = [0usize; 3];
    for (slot, (name, field)) in nums.iter_mut().zip(["n", "m", "k"].into_iter().zip(fields)) {
        *slot = field
            .parse()
            .map_err(|_| CliError::parse(line, format!("{name} is not a non-negative integer: {field:?}")))?;
    }
    let [n, m, k] = nums;
    if n == 0 {
        return Err(CliError::parse(line, "n must be at least 1"));
    }
    if k > m {
        return Err(CliError::parse(line, format!("k = {k} exceeds m = {m}")));
    }
    Ok((n, m, k))
}

fn parse_ballot(line: usize, text: &str, m: usize) -> CliResult<BitVector> {
    if let Some((col, c)) = text.chars().enumerate().find(|(_, c)| *c != '0' && *c != '1') {
        return Err(CliError::parse(line, format!("illegal character {c:?} at column {}", col + 1)));
    }
    if text.len() != m {
        return Err(CliError::parse(line, format!("ballot has length {}, expected {m}", text.len())));
    }
    Ok(BitVector::from_bools(text.bytes().map(|b| b == b'1')))
}

/// Parses a ballot file. No padding is applied.
pub fn parse_election(text: &str) -> CliResult<Election> {
    let mut header = None;
    let mut ballots = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        // with m = 0 every ballot row is blank
        let empty_ballot = matches!(header, Some((n, 0, _)) if ballots.len() < n);
        if content.starts_with('#') || (content.is_empty() && !empty_ballot) {
            continue;
        }
        match header {
            None => header = Some(parse_header(line, content)?),
            Some((n, m, _)) => {
                if ballots.len() == n {
                    return Err(CliError::parse(line, format!("more than the {n} ballots declared in the header")));
                }
                ballots.push(parse_ballot(line, content, m)?);
            }
        }
    }
    let Some((n, _, k)) = header else {
        return Err(CliError::parse(last_line.max(1), "missing `n m k` header"));
    };
    if ballots.len() != n {
        return Err(CliError::parse(
            last_line + 1,
            format!("header declares {n} ballots, found {}", ballots.len()),
        ));
    }
    Ok(Election::new(ballots, k)?)
}

pub fn render_election(election: &Election) -> String {
    let mut out = format!("{} {} {}\n", election.n(), election.m(), election.k());
    for b in election.ballots() {
        writeln!(out, "{b}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(err: CliError) -> usize {
        match err {
            CliError::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn examples() {
        let e = parse_election("2 4 2\n1100\n0011\n").unwrap();
        assert_eq!((e.n(), e.m(), e.k()), (2, 4, 2));

        let e = parse_election("# c\n1 3 1\n101\n").unwrap();
        assert_eq!((e.n(), e.m(), e.k()), (1, 3, 1));
        assert_eq!(e.ballots()[0].to_string(), "101");

        assert_eq!(line_of(parse_election("2 4 5\n1100\n0011\n").unwrap_err()), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse_election("2 3 1\n101\n10\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_election("# x\n\n2 3 1\n1a1\n101\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_election("1 3 1\n101\n111\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_election("3 3 1\n101\n111\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_election("2 x 1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_election("2 3\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_election("0 3 1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_election("# only\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_election("").unwrap_err()), 1);
    }

    #[test]
    fn no_padding_and_crlf() {
        let e = parse_election("1 2 2\r\n11\r\n").unwrap();
        assert_eq!(e.n(), 1);
    }

    #[test]
    fn render_round_trip() {
        let text = "3 4 2\n1100\n1010\n1001\n";
        assert_eq!(render_election(&parse_election(text).unwrap()), text);
    }
}
