//! The `.fam` text format.
//!
//! ```text
//! # optional comments
//! n k
//! 1 2
//! 3 4
//! ```
//!
//! The first non-comment line is the header. Each further non-empty line is
//! one block: `k` strictly increasing elements of `[1, n]`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Block, Family, GroundSet, SetFamError, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("missing \"n k\" header")]
    MissingHeader,
    #[error("malformed header {0:?}, expected \"n k\"")]
    MalformedHeader(String),
    #[error("ground set size {0} outside 1..=64")]
    GroundTooLarge(u64),
    #[error("block size k = {k} must satisfy 1 <= k <= n = {n}")]
    BadUniformity { k: u64, n: u64 },
    #[error("invalid element token {0:?}")]
    InvalidToken(String),
    #[error("element {value} outside [1, {n}]")]
    ElementOutOfRange { value: u64, n: u32 },
    #[error("elements must be strictly increasing")]
    NotIncreasing,
    #[error("block has {found} elements, expected {expected}")]
    SizeMismatch { expected: u32, found: usize },
    #[error("duplicate block (first seen on line {first})")]
    DuplicateBlock { first: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parse raw bytes, rejecting invalid UTF-8.
pub fn parse_family_bytes(bytes: &[u8]) -> Result<Family, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        err(line, ParseErrorKind::InvalidUtf8)
    })?;
    parse_family(text)
}

pub fn parse_family(text: &str) -> Result<Family, ParseError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| {
        err(text.split('\n').count().max(1), ParseErrorKind::MissingHeader)
    })?;
    let (ground, k) = parse_header(header).map_err(|kind| err(header_line, kind))?;

    let mut first_seen = HashMap::new();
    let mut blocks = Vec::new();
    for (line, body) in lines {
        let block = parse_block(body, ground, k).map_err(|kind| err(line, kind))?;
        if let Some(&first) = first_seen.get(&block.bits()) {
            return Err(err(line, ParseErrorKind::DuplicateBlock { first }));
        }
        first_seen.insert(block.bits(), line);
        blocks.push(block);
    }
    // every block was validated above
    Ok(Family::new(ground, k, blocks).expect("validated blocks form a family"))
}

fn parse_header(header: &str) -> Result<(GroundSet, u32), ParseErrorKind> {
    let malformed = || ParseErrorKind::MalformedHeader(header.to_string());
    let fields: Vec<&str> = header.split_ascii_whitespace().collect();
    let [n, k] = fields.as_slice() else {
        return Err(malformed());
    };
    let n: u64 = n.parse().map_err(|_| malformed())?;
    let k: u64 = k.parse().map_err(|_| malformed())?;
    if n == 0 || n > MAX_GROUND as u64 {
        return Err(ParseErrorKind::GroundTooLarge(n));
    }
    if k == 0 || k > n {
        return Err(ParseErrorKind::BadUniformity { k, n });
    }
    let ground = GroundSet::new(n as u32).map_err(|_| ParseErrorKind::GroundTooLarge(n))?;
    Ok((ground, k as u32))
}

fn parse_block(body: &str, ground: GroundSet, k: u32) -> Result<Block, ParseErrorKind> {
    let mut prev = 0u64;
    let mut elements = Vec::with_capacity(k as usize);
    for token in body.split_ascii_whitespace() {
        let value: u64 = token
            .parse()
            .map_err(|_| ParseErrorKind::InvalidToken(token.to_string()))?;
        if value == 0 || value > ground.size() as u64 {
            return Err(ParseErrorKind::ElementOutOfRange { value, n: ground.size() });
        }
        if value <= prev {
            return Err(ParseErrorKind::NotIncreasing);
        }
        prev = value;
        elements.push(value as u32);
    }
    if elements.len() != k as usize {
        return Err(ParseErrorKind::SizeMismatch { expected: k, found: elements.len() });
    }
    Block::from_elements(ground, elements).map_err(|e| match e {
        SetFamError::ElementOutOfRange { element, n } => {
            ParseErrorKind::ElementOutOfRange { value: element as u64, n }
        }
        other => unreachable!("validated block rejected: {other}"),
    })
}

/// Render in canonical order with a trailing newline.
pub fn serialize_family(family: &Family) -> String {
    let mut out = format!("{} {}\n", family.n(), family.k());
    for block in family {
        let line = block.elements().iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{line}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_file() {
        let f = parse_family("4 2\n1 2\n3 4\n").unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.k(), 2);
        assert_eq!(f.blocks()[0].elements(), vec![1, 2]);
        assert_eq!(f.blocks()[1].elements(), vec![3, 4]);
    }

    #[test]
    fn duplicate_block_reports_line() {
        let e = parse_family("4 2\n1 2\n1 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.kind, ParseErrorKind::DuplicateBlock { first: 2 });
    }

    #[test]
    fn size_mismatch_reports_line() {
        let e = parse_family("4 2\n1 2 3\n").unwrap_err();
        assert_eq!(e, err(2, ParseErrorKind::SizeMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn other_errors() {
        assert_eq!(parse_family("").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(parse_family("# only\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert!(matches!(parse_family("4\n").unwrap_err().kind, ParseErrorKind::MalformedHeader(_)));
        assert!(matches!(parse_family("a b\n").unwrap_err().kind, ParseErrorKind::MalformedHeader(_)));
        assert_eq!(parse_family("65 2\n").unwrap_err().kind, ParseErrorKind::GroundTooLarge(65));
        assert_eq!(parse_family("4 5\n").unwrap_err().kind, ParseErrorKind::BadUniformity { k: 5, n: 4 });
        assert_eq!(
            parse_family("4 2\n1 5\n").unwrap_err(),
            err(2, ParseErrorKind::ElementOutOfRange { value: 5, n: 4 })
        );
        assert_eq!(parse_family("4 2\n2 1\n").unwrap_err(), err(2, ParseErrorKind::NotIncreasing));
        assert_eq!(parse_family("4 2\n1 1\n").unwrap_err(), err(2, ParseErrorKind::NotIncreasing));
        assert!(matches!(parse_family("4 2\n1 x\n").unwrap_err().kind, ParseErrorKind::InvalidToken(_)));
        assert_eq!(parse_family_bytes(b"4 2\n1 \xff\n").unwrap_err(), err(2, ParseErrorKind::InvalidUtf8));
    }

    #[test]
    fn comments_blank_lines_and_missing_trailing_newline() {
        let f = parse_family("# pair\n4 2\n\n# block\n3 4\n1 2").unwrap();
        assert_eq!(f, parse_family("4 2\n1 2\n3 4\n").unwrap());
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_family(&parse_family("4 2\n3 4\n1 2\n").unwrap()), "4 2\n1 2\n3 4\n");
        let empty = Family::empty(GroundSet::new(5).unwrap(), 3).unwrap();
        assert_eq!(serialize_family(&empty), "5 3\n");
        assert_eq!(serialize_family(&Family::from_lists(3, &[&[2]]).unwrap()), "3 1\n2\n");
    }
}
