//! Text formats for secondary structures.
//!
//! Two formats are supported:
//!
//! * **pair list**: a header line `n <length>` followed by one `<i> <j>` line
//!   per contact (1-based, whitespace separated). Lines starting with `#` are
//!   comments. Several records in one file are separated by blank lines.
//! * **extended dot-bracket**: one line per structure, `.` for an isolated
//!   base and one of [`BRACKET_FAMILIES`] for each contact. Each family is
//!   matched with its own stack, so crossing contacts are written with
//!   different families.
//!
//! A multi-record file is read as pair lists when its first non-blank line
//! starts with `n `, and as dot-bracket lines otherwise.

use std::fmt::Write as _;

use thiserror::Error;

use crate::structure::{SecondaryStructure, StructureError};

/// Open/close characters, in the order families are handed out on emission.
pub const BRACKET_FAMILIES: [(char, char); 30] = bracket_families();

const fn bracket_families() -> [(char, char); 30] {
    let mut out = [('(', ')'); 30];
    out[1] = ('[', ']');
    out[2] = ('{', '}');
    out[3] = ('<', '>');
    let mut k = 0;
    while k < 26 {
        out[4 + k] = ((b'A' + k as u8) as char, (b'a' + k as u8) as char);
        k += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unbalanced '{ch}' at column {column}")]
    UnbalancedBracket { ch: char, column: usize },
    #[error("unknown character {ch:?} at column {column}")]
    UnknownCharacter { ch: char, column: usize },
    #[error("structure needs more than {} bracket families", BRACKET_FAMILIES.len())]
    TooManyFamilies,
    #[error("{source}")]
    Invalid {
        /// Input line the violation was found on, when known.
        line: Option<usize>,
        #[source]
        source: StructureError,
    },
}

impl CodecError {
    /// Stable name of the error, used in user-facing reports.
    pub fn kind(&self) -> &'static str {
        match self {
            CodecError::Syntax { .. } => "SyntaxError",
            CodecError::UnbalancedBracket { .. } => "UnbalancedBracket",
            CodecError::UnknownCharacter { .. } => "UnknownCharacter",
            CodecError::TooManyFamilies => "TooManyFamilies",
            CodecError::Invalid { source, .. } => source.kind(),
        }
    }

    /// True for malformed text, false for well-formed text that describes
    /// an invalid structure (or for emission failures).
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            CodecError::Syntax { .. }
                | CodecError::UnbalancedBracket { .. }
                | CodecError::UnknownCharacter { .. }
        )
    }

    /// Line of the input the error points at, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            CodecError::Syntax { line, .. } => Some(*line),
            CodecError::Invalid { line, .. } => *line,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    PairList,
    DotBracket,
}

impl Format {
    /// Pair list if the first non-blank line starts with `n `, else dot-bracket.
    pub fn detect(text: &str) -> Format {
        match text.lines().map(str::trim).find(|l| !l.is_empty()) {
            Some(l) if l.starts_with("n ") || l.starts_with("n\t") => Format::PairList,
            _ => Format::DotBracket,
        }
    }
}

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

/// Parses a single pair-list record.
pub fn parse_pairlist(text: &str) -> Result<SecondaryStructure, CodecError> {
    parse_pairlist_from(text.lines().enumerate().map(|(k, l)| (k + 1, l)))
}

fn parse_pairlist_from<'a, I>(lines: I) -> Result<SecondaryStructure, CodecError>
where
    I: IntoIterator<Item = (usize, &'a str)>,
{
    let mut header: Option<(usize, usize)> = None;
    let mut pairs: Vec<(usize, (usize, usize))> = Vec::new();
    let mut last_line = 1;
    for (line_no, line) in lines {
        last_line = line_no;
        if line.trim().is_empty() || is_comment(line) {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let syntax = |message: String| CodecError::Syntax {
            line: line_no,
            message,
        };
        if header.is_none() {
            match tokens.as_slice() {
                ["n", len] => {
                    let n = len
                        .parse::<usize>()
                        .map_err(|_| syntax(format!("invalid length {len:?}")))?;
                    header = Some((line_no, n));
                }
                _ => return Err(syntax("expected header line `n <length>`".into())),
            }
            continue;
        }
        match tokens.as_slice() {
            [a, b] => {
                let parse = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| syntax(format!("invalid index {t:?}")))
                };
                pairs.push((line_no, (parse(a)?, parse(b)?)));
            }
            _ => return Err(syntax("expected `<i> <j>`".into())),
        }
    }
    let (header_line, n) = header.ok_or_else(|| CodecError::Syntax {
        line: last_line,
        message: "missing header line `n <length>`".into(),
    })?;
    SecondaryStructure::new(n, pairs.iter().map(|(_, p)| *p)).map_err(|source| {
        let line = offending_line(&source, &pairs).or(Some(header_line));
        CodecError::Invalid { line, source }
    })
}

/// Finds the input line responsible for a constructor error. Pairs are
/// validated in input order, so the first pair matching the error is the
/// one that triggered it.
fn offending_line(err: &StructureError, pairs: &[(usize, (usize, usize))]) -> Option<usize> {
    let same = |(a, b): (usize, usize), (x, y): (usize, usize)| (a, b) == (x, y) || (a, b) == (y, x);
    pairs
        .iter()
        .find(|(_, p)| match err {
            StructureError::ZeroLength => false,
            StructureError::IndexOutOfRange { index, .. } => p.0 == *index || p.1 == *index,
            StructureError::AdjacentContact { i, j } => same(*p, (*i, *j)),
            StructureError::SelfLoop { index } => *p == (*index, *index),
            StructureError::DuplicateBond { second, .. } => same(*p, (second.i(), second.j())),
        })
        .map(|(line, _)| *line)
}

/// Parses one extended dot-bracket line.
pub fn parse_dotbracket(text: &str) -> Result<SecondaryStructure, CodecError> {
    let line = text.trim();
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); BRACKET_FAMILIES.len()];
    let mut pairs = Vec::new();
    let mut n = 0;
    for (k, ch) in line.chars().enumerate() {
        let pos = k + 1;
        n = pos;
        if ch == '.' {
            continue;
        }
        if let Some(f) = BRACKET_FAMILIES.iter().position(|&(open, _)| open == ch) {
            stacks[f].push(pos);
        } else if let Some(f) = BRACKET_FAMILIES.iter().position(|&(_, close)| close == ch) {
            let open = stacks[f]
                .pop()
                .ok_or(CodecError::UnbalancedBracket { ch, column: pos })?;
            pairs.push((open, pos));
        } else {
            return Err(CodecError::UnknownCharacter { ch, column: pos });
        }
    }
    for (f, stack) in stacks.iter().enumerate() {
        if let Some(&column) = stack.first() {
            return Err(CodecError::UnbalancedBracket {
                ch: BRACKET_FAMILIES[f].0,
                column,
            });
        }
    }
    SecondaryStructure::new(n, pairs).map_err(|source| CodecError::Invalid { line: None, source })
}

/// Writes `s` in extended dot-bracket notation.
///
/// Contacts are visited by increasing left endpoint and each goes to the
/// first family in which it crosses no contact already placed there.
pub fn emit_dotbracket(s: &SecondaryStructure) -> Result<String, CodecError> {
    let mut families: Vec<Vec<crate::Contact>> = Vec::new();
    let mut out = vec!['.'; s.len()];
    for c in s.contacts() {
        let f = match families
            .iter()
            .position(|placed| placed.iter().all(|d| !d.crosses(c)))
        {
            Some(f) => f,
            None if families.len() < BRACKET_FAMILIES.len() => {
                families.push(Vec::new());
                families.len() - 1
            }
            None => return Err(CodecError::TooManyFamilies),
        };
        families[f].push(*c);
        let (open, close) = BRACKET_FAMILIES[f];
        out[c.i() - 1] = open;
        out[c.j() - 1] = close;
    }
    Ok(out.into_iter().collect())
}

/// Writes `s` as a canonical pair-list record (always newline-terminated).
pub fn emit_pairlist(s: &SecondaryStructure) -> String {
    let mut out = format!("n {}\n", s.len());
    for c in s.contacts() {
        let _ = writeln!(out, "{} {}", c.i(), c.j());
    }
    out
}

/// One record of a multi-structure file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// 1-based position of the record in the file.
    pub index: usize,
    /// 1-based line the record starts on.
    pub line: usize,
    pub result: Result<SecondaryStructure, CodecError>,
}

/// Splits a file into records (format auto-detected) and parses each one.
pub fn parse_records(text: &str) -> Vec<Record> {
    let lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let mut records = Vec::new();
    match Format::detect(text) {
        Format::DotBracket => {
            for (line_no, line) in lines {
                if line.trim().is_empty() || is_comment(line) {
                    continue;
                }
                let result = parse_dotbracket(line).map_err(|e| match e {
                    CodecError::Invalid { source, .. } => CodecError::Invalid {
                        line: Some(line_no),
                        source,
                    },
                    other => other,
                });
                records.push(Record {
                    index: records.len() + 1,
                    line: line_no,
                    result,
                });
            }
        }
        Format::PairList => {
            let mut block: Vec<(usize, &str)> = Vec::new();
            let flush = |block: &mut Vec<(usize, &str)>, records: &mut Vec<Record>| {
                let substantive = block
                    .iter()
                    .find(|(_, l)| !is_comment(l))
                    .map(|(k, _)| *k);
                if let Some(line) = substantive {
                    records.push(Record {
                        index: records.len() + 1,
                        line,
                        result: parse_pairlist_from(block.iter().copied()),
                    });
                }
                block.clear();
            };
            for (line_no, line) in lines {
                if line.trim().is_empty() {
                    flush(&mut block, &mut records);
                } else {
                    block.push((line_no, line));
                }
            }
            flush(&mut block, &mut records);
        }
    }
    records
}

/// Writes several structures as one file in the given format.
pub fn emit_records(structures: &[SecondaryStructure], format: Format) -> Result<String, CodecError> {
    let mut out = String::new();
    for (k, s) in structures.iter().enumerate() {
        match format {
            Format::PairList => {
                if k > 0 {
                    out.push('\n');
                }
                out.push_str(&emit_pairlist(s));
            }
            Format::DotBracket => {
                out.push_str(&emit_dotbracket(s)?);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, pairs: &[(usize, usize)]) -> SecondaryStructure {
        SecondaryStructure::new(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn families_are_distinct() {
        let mut all: Vec<char> = BRACKET_FAMILIES.iter().flat_map(|&(a, b)| [a, b]).collect();
        all.push('.');
        let len = all.len();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), len);
        assert_eq!(BRACKET_FAMILIES[4], ('A', 'a'));
        assert_eq!(BRACKET_FAMILIES[29], ('Z', 'z'));
    }

    #[test]
    fn pairlist_examples() {
        assert_eq!(parse_pairlist("n 7\n1 3\n5 7\n"), Ok(s(7, &[(1, 3), (5, 7)])));
        assert_eq!(parse_pairlist("n 4\n"), Ok(s(4, &[])));
        assert_eq!(parse_pairlist("# comment\nn 4\n\n3 1"), Ok(s(4, &[(1, 3)])));
        let err = parse_pairlist("n 5\n2 3\n").unwrap_err();
        assert_eq!(err.kind(), "AdjacentContact");
        assert_eq!(err.line(), Some(2));
    }

    #[test]
    fn pairlist_syntax_errors() {
        for (text, line) in [
            ("1 3\n", 1),
            ("n x\n", 1),
            ("n 7\n1 3 5\n", 2),
            ("n 7\n1 q\n", 2),
            ("", 1),
            ("# only a comment\n", 1),
        ] {
            let err = parse_pairlist(text).unwrap_err();
            assert!(err.is_syntax(), "{text:?} gave {err:?}");
            assert_eq!(err.line(), Some(line), "{text:?}");
        }
    }

    #[test]
    fn pairlist_duplicate_bond_line() {
        let err = parse_pairlist("n 9\n1 4\n6 9\n4 8\n").unwrap_err();
        assert_eq!(err.kind(), "DuplicateBond");
        assert_eq!(err.line(), Some(4));
        assert_eq!(parse_pairlist("n 0\n").unwrap_err().kind(), "ZeroLength");
    }

    #[test]
    fn dotbracket_examples() {
        assert_eq!(parse_dotbracket("((.))"), Ok(s(5, &[(1, 5), (2, 4)])));
        assert_eq!(parse_dotbracket("([.)]"), Ok(s(5, &[(1, 4), (2, 5)])));
        assert_eq!(
            parse_dotbracket("(.))"),
            Err(CodecError::UnbalancedBracket { ch: ')', column: 4 })
        );
        assert_eq!(
            parse_dotbracket("((.)"),
            Err(CodecError::UnbalancedBracket { ch: '(', column: 1 })
        );
        assert_eq!(
            parse_dotbracket("(.?)"),
            Err(CodecError::UnknownCharacter { ch: '?', column: 3 })
        );
        assert_eq!(parse_dotbracket("..()").unwrap_err().kind(), "AdjacentContact");
        assert_eq!(parse_dotbracket("A.[.a.]"), Ok(s(7, &[(1, 5), (3, 7)])));
    }

    #[test]
    fn emit_examples() {
        assert_eq!(emit_dotbracket(&s(5, &[(1, 5), (2, 4)])).unwrap(), "((.))");
        assert_eq!(emit_dotbracket(&s(5, &[(1, 4), (2, 5)])).unwrap(), "([.)]");
        assert_eq!(emit_dotbracket(&s(4, &[])).unwrap(), "....");
        assert_eq!(emit_pairlist(&s(7, &[(5, 7), (1, 3)])), "n 7\n1 3\n5 7\n");
        assert_eq!(emit_pairlist(&s(1, &[])), "n 1\n");
    }

    #[test]
    fn greedy_families_reuse_the_first_fit() {
        // 1·4 and 2·5 cross; 3·6 crosses 1·4 and 2·5; 7·9 crosses nothing
        let st = s(9, &[(1, 4), (2, 5), (3, 6), (7, 9)]);
        assert_eq!(emit_dotbracket(&st).unwrap(), "([{)]}(.)");
    }

    #[test]
    fn too_many_families() {
        // 31 mutually crossing contacts i·(i+31), i = 1..=31
        let st = SecondaryStructure::new(62, (1..=31).map(|i| (i, i + 31))).unwrap();
        assert_eq!(emit_dotbracket(&st), Err(CodecError::TooManyFamilies));
        let st = SecondaryStructure::new(60, (1..=30).map(|i| (i, i + 30))).unwrap();
        let text = emit_dotbracket(&st).unwrap();
        assert_eq!(parse_dotbracket(&text), Ok(st));
    }

    #[test]
    fn format_detection() {
        assert_eq!(Format::detect("\n\nn 5\n"), Format::PairList);
        assert_eq!(Format::detect("((.))\n"), Format::DotBracket);
        assert_eq!(Format::detect(""), Format::DotBracket);
    }

    #[test]
    fn multi_record_pairlist() {
        let text = "n 5\n1 3\n\n# second\nn 5\n2 3\n\n\nn 4\n";
        let records = parse_records(text);
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].result, Ok(s(5, &[(1, 3)])));
        assert_eq!(records[1].index, 2);
        assert_eq!(records[1].line, 5);
        let err = records[1].result.clone().unwrap_err();
        assert_eq!((err.kind(), err.line()), ("AdjacentContact", Some(6)));
        assert_eq!(records[2].result, Ok(s(4, &[])));
    }

    #[test]
    fn multi_record_dotbracket() {
        let records = parse_records("((.))\n\n# note\n.()..\n(..)\n");
        assert_eq!(records.len(), 3);
        assert_eq!(records[1].line, 4);
        assert_eq!(records[1].result.as_ref().unwrap_err().line(), Some(4));
        assert_eq!(records[2].result, Ok(s(4, &[(1, 4)])));
    }

    #[test]
    fn records_round_trip() {
        let all = vec![s(5, &[(1, 4), (2, 5)]), s(5, &[]), s(5, &[(1, 3)])];
        for format in [Format::PairList, Format::DotBracket] {
            let text = emit_records(&all, format).unwrap();
            assert_eq!(Format::detect(&text), format);
            let back: Vec<_> = parse_records(&text)
                .into_iter()
                .map(|r| r.result.unwrap())
                .collect();
            assert_eq!(back, all);
        }
    }
}
