//! Parser for the line-oriented evidence format.
//!
//! ```text
//! # comment to end of line
//! frame: a b c
//! source M1
//! a b : 0.4
//! b : 0.3
//! a a c : 0.3
//! end
//! ```
//!
//! One construct per line. Element and name tokens are any run of characters
//! other than whitespace, `#` and `:`. Mass literals are unsigned decimals
//! with an optional fraction and exponent (`0.4`, `1`, `25e-2`).

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::{EvidenceDocument, Source};
use crate::error::Error;
use crate::event::Event;
use crate::frame::Frame;
use crate::mass::MassFunction;

/// A rejected document, located by 1-based line and column (columns count
/// characters, not bytes).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    InvalidUtf8,
    Syntax(String),
    InvalidNumber(String),
    NoFrame,
    DuplicateFrame,
    UnknownElement(String),
    AssignmentOutsideSource,
    DuplicateSource(String),
    UnterminatedSource(String),
    /// Frame or mass validation failure.
    Invalid(Error),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::InvalidUtf8 => f.write_str("input is not valid UTF-8"),
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid mass literal '{s}'"),
            ParseErrorKind::NoFrame => f.write_str("missing frame declaration"),
            ParseErrorKind::DuplicateFrame => f.write_str("frame already declared"),
            ParseErrorKind::UnknownElement(s) => write!(f, "unknown element '{s}'"),
            ParseErrorKind::AssignmentOutsideSource => {
                f.write_str("assignment outside a source block")
            }
            ParseErrorKind::DuplicateSource(s) => write!(f, "duplicate source '{s}'"),
            ParseErrorKind::UnterminatedSource(s) => write!(f, "source '{s}' is missing its 'end'"),
            ParseErrorKind::Invalid(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Lexeme<'a> {
    Word(&'a str),
    Colon,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    lexeme: Lexeme<'a>,
    /// 1-based character column.
    column: usize,
    /// Character length.
    width: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut word: Option<(usize, usize, usize)> = None; // byte start, column, width
    fn flush<'a>(
        line: &'a str,
        word: &mut Option<(usize, usize, usize)>,
        end: usize,
        tokens: &mut Vec<Token<'a>>,
    ) {
        if let Some((start, column, width)) = word.take() {
            tokens.push(Token {
                lexeme: Lexeme::Word(&line[start..end]),
                column,
                width,
            });
        }
    }
    let mut column = 0;
    for (byte, c) in line.char_indices() {
        column += 1;
        if c == '#' {
            flush(line, &mut word, byte, &mut tokens);
            return tokens;
        } else if c.is_whitespace() {
            flush(line, &mut word, byte, &mut tokens);
        } else if c == ':' {
            flush(line, &mut word, byte, &mut tokens);
            tokens.push(Token {
                lexeme: Lexeme::Colon,
                column,
                width: 1,
            });
        } else if let Some((_, _, width)) = word.as_mut() {
            *width += 1;
        } else {
            word = Some((byte, column, 1));
        }
    }
    flush(line, &mut word, line.len(), &mut tokens);
    tokens
}

/// Unsigned decimal: `digits ('.' digits)? ([eE] [+-]? digits)?`.
pub fn is_decimal_literal(s: &str) -> bool {
    fn digits(b: &[u8], mut i: usize) -> usize {
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        i
    }
    let b = s.as_bytes();
    let mut i = digits(b, 0);
    if i == 0 {
        return false;
    }
    if i < b.len() && b[i] == b'.' {
        let j = digits(b, i + 1);
        if j == i + 1 {
            return false;
        }
        i = j;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let j = digits(b, i);
        if j == i {
            return false;
        }
        i = j;
    }
    i == b.len()
}

struct OpenSource {
    name: String,
    line: usize,
    seen: HashSet<Event>,
    assignments: Vec<(Event, f64)>,
}

struct Parser {
    tolerance: f64,
    frame: Option<Frame>,
    names: HashSet<String>,
    sources: Vec<Source>,
    open: Option<OpenSource>,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

impl Parser {
    fn line(&mut self, n: usize, text: &str) -> Result<(), ParseError> {
        let tokens = tokenize(text);
        if tokens.is_empty() {
            return Ok(());
        }
        if self.open.is_some() {
            self.inside_source(n, text, &tokens)
        } else {
            self.top_level(n, &tokens)
        }
    }

    fn top_level(&mut self, n: usize, tokens: &[Token<'_>]) -> Result<(), ParseError> {
        let first = &tokens[0];
        match (&first.lexeme, tokens.get(1).map(|t| (&t.lexeme, t.column))) {
            (Lexeme::Word("frame"), Some((Lexeme::Colon, col)))
                if col == first.column + first.width =>
            {
                self.frame_line(n, first.column, &tokens[2..])
            }
            (Lexeme::Word("frame"), Some((Lexeme::Colon, col))) if self.frame.is_none() => {
                Err(syntax(
                    n,
                    col,
                    "write the frame declaration as `frame:` with no space before ':'",
                ))
            }
            (Lexeme::Word("source"), _) => {
                let name = match tokens {
                    [_, Token {
                        lexeme: Lexeme::Word(name),
                        ..
                    }] => *name,
                    [_] => {
                        return Err(syntax(
                            n,
                            first.column + first.width,
                            "expected a source name",
                        ))
                    }
                    [_, other, ..] => {
                        return Err(syntax(n, other.column, "expected `source NAME`"))
                    }
                    [] => unreachable!(),
                };
                if self.frame.is_none() {
                    return Err(err(n, first.column, ParseErrorKind::NoFrame));
                }
                if !self.names.insert(name.to_string()) {
                    return Err(err(
                        n,
                        tokens[1].column,
                        ParseErrorKind::DuplicateSource(name.to_string()),
                    ));
                }
                self.open = Some(OpenSource {
                    name: name.to_string(),
                    line: n,
                    seen: HashSet::new(),
                    assignments: Vec::new(),
                });
                Ok(())
            }
            (Lexeme::Word("end"), None) => {
                Err(syntax(n, first.column, "'end' without an open source"))
            }
            _ if tokens.iter().any(|t| t.lexeme == Lexeme::Colon) => Err(err(
                n,
                first.column,
                ParseErrorKind::AssignmentOutsideSource,
            )),
            _ => Err(syntax(
                n,
                first.column,
                "expected `frame:` or `source NAME`",
            )),
        }
    }

    fn frame_line(
        &mut self,
        n: usize,
        column: usize,
        rest: &[Token<'_>],
    ) -> Result<(), ParseError> {
        if self.frame.is_some() {
            return Err(err(n, column, ParseErrorKind::DuplicateFrame));
        }
        let mut labels = Vec::with_capacity(rest.len());
        for t in rest {
            match t.lexeme {
                Lexeme::Word(w) => labels.push((w, t.column)),
                Lexeme::Colon => {
                    return Err(syntax(n, t.column, "unexpected ':' in frame declaration"))
                }
            }
        }
        if labels.is_empty() {
            return Err(syntax(
                n,
                column,
                "frame declaration needs at least one element",
            ));
        }
        let frame = Frame::new(labels.iter().map(|&(w, _)| w)).map_err(|e| {
            let col = match &e {
                Error::DuplicateLabel(l) => labels
                    .iter()
                    .filter(|&&(w, _)| w == l)
                    .nth(1)
                    .map_or(column, |&(_, c)| c),
                _ => column,
            };
            err(n, col, ParseErrorKind::Invalid(e))
        })?;
        self.frame = Some(frame);
        Ok(())
    }

    fn inside_source(
        &mut self,
        n: usize,
        text: &str,
        tokens: &[Token<'_>],
    ) -> Result<(), ParseError> {
        let first = &tokens[0];
        if let [Token {
            lexeme: Lexeme::Word("end"),
            ..
        }] = tokens
        {
            return self.close(n, first.column);
        }
        if let [Token {
            lexeme: Lexeme::Word("source"),
            ..
        }, Token {
            lexeme: Lexeme::Word(_),
            ..
        }] = tokens
        {
            let name = self
                .open
                .as_ref()
                .map(|s| s.name.clone())
                .unwrap_or_default();
            return Err(err(
                n,
                first.column,
                ParseErrorKind::UnterminatedSource(name),
            ));
        }

        let colon = tokens
            .iter()
            .position(|t| t.lexeme == Lexeme::Colon)
            .ok_or_else(|| {
                syntax(
                    n,
                    text.chars().count() + 1,
                    "expected ':' followed by a mass",
                )
            })?;
        if colon == 0 {
            return Err(syntax(
                n,
                first.column,
                "assignment needs at least one element before ':'",
            ));
        }
        let frame = self
            .frame
            .as_ref()
            .expect("sources open only after the frame");
        let mut items = Vec::with_capacity(colon);
        for t in &tokens[..colon] {
            let Lexeme::Word(w) = t.lexeme else {
                unreachable!()
            };
            let index = frame
                .index_of(w)
                .ok_or_else(|| err(n, t.column, ParseErrorKind::UnknownElement(w.into())))?;
            items.push(index);
        }
        let colon_tok = &tokens[colon];
        let literal = match &tokens[colon + 1..] {
            [] => return Err(syntax(n, colon_tok.column + 1, "missing mass after ':'")),
            [Token {
                lexeme: Lexeme::Word(w),
                column,
                ..
            }] => (*w, *column),
            [Token {
                lexeme: Lexeme::Colon,
                column,
                ..
            }, ..] => return Err(syntax(n, *column, "unexpected ':'")),
            [_, extra, ..] => return Err(syntax(n, extra.column, "unexpected token after mass")),
        };
        let (text, column) = literal;
        if !is_decimal_literal(text) {
            return Err(err(n, column, ParseErrorKind::InvalidNumber(text.into())));
        }
        let mass: f64 = text
            .parse()
            .map_err(|_| err(n, column, ParseErrorKind::InvalidNumber(text.into())))?;

        let event = Event::new(frame, items).expect("indices come from the frame");
        if !(mass > 0.0 && mass <= 1.0 + self.tolerance) {
            let e = Error::MassOutOfRange {
                focal: event.to_string(),
                mass,
            };
            return Err(err(n, column, ParseErrorKind::Invalid(e)));
        }
        let open = self.open.as_mut().expect("inside a source");
        if !open.seen.insert(event.clone()) {
            return Err(err(
                n,
                first.column,
                ParseErrorKind::Invalid(Error::DuplicateFocal(event.to_string())),
            ));
        }
        open.assignments.push((event, mass));
        Ok(())
    }

    fn close(&mut self, n: usize, column: usize) -> Result<(), ParseError> {
        let open = self.open.take().expect("inside a source");
        let frame = self
            .frame
            .as_ref()
            .expect("sources open only after the frame");
        let mass = MassFunction::with_tolerance(frame, open.assignments, self.tolerance)
            .map_err(|e| err(n, column, ParseErrorKind::Invalid(e)))?;
        self.sources.push(Source {
            name: open.name,
            mass,
        });
        Ok(())
    }
}

fn utf8_position(bytes: &[u8], valid_up_to: usize) -> (usize, usize) {
    let prefix = std::str::from_utf8(&bytes[..valid_up_to]).expect("prefix is valid");
    let line = prefix.matches('\n').count() + 1;
    let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parse an evidence document. `tolerance` bounds how far each source's
/// total mass may stray from 1.
pub fn parse_document(input: &[u8], tolerance: f64) -> Result<EvidenceDocument, ParseError> {
    let text = std::str::from_utf8(input).map_err(|e| {
        let (line, column) = utf8_position(input, e.valid_up_to());
        err(line, column, ParseErrorKind::InvalidUtf8)
    })?;

    let mut parser = Parser {
        tolerance,
        frame: None,
        names: HashSet::new(),
        sources: Vec::new(),
        open: None,
    };
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        last = i + 1;
        parser.line(i + 1, line)?;
    }
    if let Some(open) = parser.open {
        return Err(err(
            open.line,
            1,
            ParseErrorKind::UnterminatedSource(open.name),
        ));
    }
    let frame = parser
        .frame
        .ok_or_else(|| err(last.max(1), 1, ParseErrorKind::NoFrame))?;
    Ok(EvidenceDocument {
        frame,
        sources: parser.sources,
    })
}
