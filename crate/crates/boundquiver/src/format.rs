//! Line-based workspace files.
//!
//! ```text
//! # comments run to the end of the line
//! vertex 1
//! vertex 2
//! arrow a 1 2
//! arroworder a ...
//! ideal I0
//! gen 1*(a h) - 2/3*(c e f g h)
//! word psi
//! T a (c e f g) 1 ; T b (c e f) 1
//! ```
//!
//! Paths are arrow labels in traversal order.

use std::collections::BTreeSet;
use std::fmt;

use boundquiver_core::{
    AdmissibleIdeal, Bypass, Path, PathVector, Quiver, Scalar, Transvection, TransvectionWord,
};
use num_bigint::BigInt;
use num_traits::Zero;

/// A diagnostic pointing at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// One quiver with named ideals and named transvection words.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub quiver: Quiver,
    pub ideals: Vec<(String, AdmissibleIdeal)>,
    pub words: Vec<(String, TransvectionWord)>,
}

impl Workspace {
    pub fn ideal(&self, name: &str) -> Option<&AdmissibleIdeal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn word(&self, name: &str) -> Option<&TransvectionWord> {
        self.words.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        serialize(self) == serialize(other)
    }
}

/// A column-tracking cursor over one line.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, offset: usize) -> Self {
        Cursor {
            text,
            pos: 0,
            line,
            offset,
        }
    }

    fn column(&self) -> usize {
        self.offset + self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    /// A run of characters other than whitespace and punctuation.
    fn token(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let column = self.column();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "()*;+@".contains(c))
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((column, &rest[..len]))
    }

    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        let column = {
            self.skip_ws();
            self.column()
        };
        let (_, text) = self
            .token()
            .ok_or_else(|| self.error("expected a scalar"))?;
        parse_scalar(text)
            .ok_or_else(|| ParseError::new(self.line, column, format!("invalid scalar `{text}`")))
    }

    /// `(labels)` or `(@vertex)`.
    fn path(&mut self, q: &Quiver) -> Result<Path, ParseError> {
        let open = self.column();
        self.expect('(')?;
        if self.eat('@') {
            let (column, name) = self
                .token()
                .ok_or_else(|| self.error("expected a vertex"))?;
            let v = q.vertex(name).map_err(|_| {
                ParseError::new(self.line, column, format!("unknown vertex `{name}`"))
            })?;
            self.expect(')')?;
            return Ok(Path::stationary(v));
        }
        let mut arrows = Vec::new();
        while let Some((column, label)) = self.token() {
            let a = q.arrow(label).map_err(|_| {
                ParseError::new(self.line, column, format!("unknown arrow `{label}`"))
            })?;
            arrows.push(a);
        }
        self.expect(')')?;
        if arrows.is_empty() {
            return Err(ParseError::new(self.line, open, "empty path"));
        }
        q.path(&arrows)
            .map_err(|e| ParseError::new(self.line, open, format!("endpoint mismatch: {e}")))
    }
}

/// An integer or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let digits = |s: &str, signed: bool| {
        let body = if signed {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return None;
    }
    let (n, d): (BigInt, BigInt) = (num.parse().ok()?, den.parse().ok()?);
    if d.is_zero() {
        return None;
    }
    Some(Scalar::new(n, d))
}

fn element(cur: &mut Cursor, q: &Quiver) -> Result<PathVector, ParseError> {
    let start = cur.column();
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if !first {
            if cur.at_end() {
                break;
            }
            if !cur.eat('+') {
                return Err(cur.error("expected `+` or `-`"));
            }
            false
        } else {
            false
        };
        let coefficient = if cur.peek() == Some('(') {
            Scalar::from_integer(1.into())
        } else {
            let c = cur.scalar()?;
            cur.expect('*')?;
            c
        };
        let path = cur.path(q)?;
        terms.push((if negative { -coefficient } else { coefficient }, path));
        first = false;
        if cur.at_end() {
            break;
        }
    }
    PathVector::normal_form(terms).map_err(|e| ParseError::new(cur.line, start, e.to_string()))
}

fn factors(cur: &mut Cursor, q: &Quiver, out: &mut Vec<Transvection>) -> Result<(), ParseError> {
    loop {
        if cur.at_end() {
            return Ok(());
        }
        match cur.token() {
            Some((_, "T")) => {}
            _ => return Err(cur.error("expected `T <arrow> (<path>) <scalar>`")),
        }
        let (column, label) = cur.token().ok_or_else(|| cur.error("expected an arrow"))?;
        let arrow = q
            .arrow(label)
            .map_err(|_| ParseError::new(cur.line, column, format!("unknown arrow `{label}`")))?;
        let path_column = {
            cur.skip_ws();
            cur.column()
        };
        let path = cur.path(q)?;
        let bypass: Bypass = q
            .bypass(arrow, path)
            .map_err(|e| ParseError::new(cur.line, path_column, e.to_string()))?;
        let tau = cur.scalar()?;
        out.push(Transvection::new(bypass, tau));
        if !cur.eat(';') {
            if !cur.at_end() {
                return Err(cur.error("expected `;`"));
            }
            return Ok(());
        }
    }
}

/// Parses one element such as `1*(a h) + 1*(c e f g h)`.
pub fn parse_element(q: &Quiver, text: &str) -> Result<PathVector, ParseError> {
    let mut cur = Cursor::new(text, 1, 0);
    element(&mut cur, q)
}

/// Parses a word such as `T a (c e f g) 1 ; T b (c e f) 1`; the empty text is the identity.
pub fn parse_word(q: &Quiver, text: &str) -> Result<TransvectionWord, ParseError> {
    let mut cur = Cursor::new(text, 1, 0);
    let mut out = Vec::new();
    factors(&mut cur, q, &mut out)?;
    Ok(TransvectionWord::new(out))
}

pub fn format_element(q: &Quiver, r: &PathVector) -> String {
    q.format_vector(r)
}

pub fn format_word(q: &Quiver, w: &TransvectionWord) -> String {
    w.factors
        .iter()
        .map(|t| {
            format!(
                "T {} ({}) {}",
                q.label(t.bypass.arrow()),
                q.traversal(t.bypass.path()),
                t.scalar
            )
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

enum Block {
    Quiver,
    Ideal(usize, Vec<PathVector>),
    Word(usize, Vec<Transvection>),
}

struct Pending {
    name: String,
    line: usize,
    column: usize,
}

pub fn parse(text: &str) -> Result<Workspace, ParseError> {
    let mut builder = Quiver::builder();
    let mut vertices: BTreeSet<String> = BTreeSet::new();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut order: Option<(usize, Vec<String>)> = None;
    let mut quiver: Option<Quiver> = None;
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut ideals: Vec<(Pending, Vec<PathVector>)> = Vec::new();
    let mut words: Vec<(Pending, Vec<Transvection>)> = Vec::new();
    let mut block = Block::Quiver;
    let mut last_line = 0;

    let finish = |block: Block,
                  ideals: &mut Vec<(Pending, Vec<PathVector>)>,
                  words: &mut Vec<(Pending, Vec<Transvection>)>| match block {
        Block::Quiver => {}
        Block::Ideal(i, gens) => ideals[i].1 = gens,
        Block::Word(i, fs) => words[i].1 = fs,
    };

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(content, line, 0);
        let Some((column, keyword)) = cur.token() else {
            continue;
        };
        let quiver_keyword = matches!(
            keyword,
            "vertex" | "arrow" | "arroworder" | "arrowoder" | "quiver"
        );
        if quiver_keyword {
            if quiver.is_some() {
                return Err(ParseError::new(
                    line,
                    column,
                    "quiver declarations must precede ideals and words",
                ));
            }
        } else if quiver.is_none() && matches!(keyword, "ideal" | "word" | "gen" | "T") {
            if vertices.is_empty() {
                return Err(ParseError::new(line, column, "missing quiver block"));
            }
            quiver = Some(build_quiver(
                std::mem::take(&mut builder),
                &arrows,
                order.take(),
                line,
                column,
            )?);
        }
        match keyword {
            "quiver" => {}
            "vertex" => {
                let (c, id) = cur
                    .token()
                    .ok_or_else(|| cur.error("expected a vertex id"))?;
                if !vertices.insert(id.to_string()) {
                    return Err(ParseError::new(line, c, format!("duplicate vertex `{id}`")));
                }
                builder.add_vertex(id);
                no_trailing(&mut cur)?;
            }
            "arrow" => {
                let (c, label) = cur
                    .token()
                    .ok_or_else(|| cur.error("expected an arrow label"))?;
                if arrows.iter().any(|(l, _, _)| l == label) {
                    return Err(ParseError::new(
                        line,
                        c,
                        format!("duplicate arrow `{label}`"),
                    ));
                }
                let mut ends = Vec::new();
                for _ in 0..2 {
                    let (vc, v) = cur
                        .token()
                        .ok_or_else(|| cur.error("expected a vertex id"))?;
                    if !vertices.contains(v) {
                        return Err(ParseError::new(line, vc, format!("unknown vertex `{v}`")));
                    }
                    ends.push(v);
                }
                builder.add_arrow(label, ends[0], ends[1]);
                arrows.push((label.to_string(), line, c));
                no_trailing(&mut cur)?;
            }
            "arroworder" | "arrowoder" => {
                if order.is_some() {
                    return Err(ParseError::new(line, column, "arrow order declared twice"));
                }
                let mut labels = Vec::new();
                while let Some((c, label)) = cur.token() {
                    if !arrows.iter().any(|(l, _, _)| l == label) {
                        return Err(ParseError::new(line, c, format!("unknown arrow `{label}`")));
                    }
                    if labels.iter().any(|l| l == label) {
                        return Err(ParseError::new(
                            line,
                            c,
                            format!("arrow `{label}` listed twice"),
                        ));
                    }
                    labels.push(label.to_string());
                }
                if !cur.at_end() {
                    return Err(cur.error("unexpected character"));
                }
                order = Some((line, labels));
            }
            "ideal" | "word" => {
                let (c, name) = cur.token().ok_or_else(|| cur.error("expected a name"))?;
                if !names.insert(name.to_string()) {
                    return Err(ParseError::new(line, c, format!("duplicate name `{name}`")));
                }
                let pending = Pending {
                    name: name.to_string(),
                    line,
                    column: c,
                };
                finish(
                    std::mem::replace(&mut block, Block::Quiver),
                    &mut ideals,
                    &mut words,
                );
                if keyword == "ideal" {
                    no_trailing(&mut cur)?;
                    ideals.push((pending, Vec::new()));
                    block = Block::Ideal(ideals.len() - 1, Vec::new());
                } else {
                    let mut fs = Vec::new();
                    factors(&mut cur, quiver.as_ref().expect("built"), &mut fs)?;
                    words.push((pending, Vec::new()));
                    block = Block::Word(words.len() - 1, fs);
                }
            }
            "gen" => {
                let Block::Ideal(_, gens) = &mut block else {
                    return Err(ParseError::new(
                        line,
                        column,
                        "`gen` outside an ideal block",
                    ));
                };
                gens.push(element(&mut cur, quiver.as_ref().expect("built"))?);
            }
            "T" => {
                let Block::Word(_, fs) = &mut block else {
                    return Err(ParseError::new(
                        line,
                        column,
                        "transvection outside a word block",
                    ));
                };
                let mut cur = Cursor::new(content, line, 0);
                factors(&mut cur, quiver.as_ref().expect("built"), fs)?;
            }
            other => {
                return Err(ParseError::new(
                    line,
                    column,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    finish(block, &mut ideals, &mut words);

    let quiver = match quiver {
        Some(q) => q,
        None if vertices.is_empty() => {
            return Err(ParseError::new(last_line.max(1), 1, "missing quiver block"))
        }
        None => build_quiver(builder, &arrows, order, last_line.max(1), 1)?,
    };
    let mut built = Vec::new();
    for (p, gens) in ideals {
        let ideal = AdmissibleIdeal::from_generators(&quiver, gens)
            .map_err(|e| ParseError::new(p.line, p.column, format!("ideal `{}`: {e}", p.name)))?;
        built.push((p.name, ideal));
    }
    Ok(Workspace {
        quiver,
        ideals: built,
        words: words
            .into_iter()
            .map(|(p, fs)| (p.name, TransvectionWord::new(fs)))
            .collect(),
    })
}

fn no_trailing(cur: &mut Cursor) -> Result<(), ParseError> {
    if cur.at_end() {
        Ok(())
    } else {
        Err(cur.error("unexpected trailing input"))
    }
}

fn build_quiver(
    mut builder: boundquiver_core::QuiverBuilder,
    arrows: &[(String, usize, usize)],
    order: Option<(usize, Vec<String>)>,
    line: usize,
    column: usize,
) -> Result<Quiver, ParseError> {
    if let Some((order_line, labels)) = order {
        if let Some((missing, _, _)) = arrows.iter().find(|(l, _, _)| !labels.contains(l)) {
            return Err(ParseError::new(
                order_line,
                1,
                format!("arrow order misses `{missing}`"),
            ));
        }
        builder.arrow_order(labels);
    }
    builder
        .build()
        .map_err(|e| ParseError::new(line, column, e.to_string()))
}

/// Canonical text: quiver first, then ideals and words in declaration order.
pub fn serialize(ws: &Workspace) -> String {
    let q = &ws.quiver;
    let mut out = String::new();
    for v in q.vertices() {
        out.push_str(&format!("vertex {}\n", q.vertex_name(v)));
    }
    for &a in q.listing_order() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            q.label(a),
            q.vertex_name(q.source(a)),
            q.vertex_name(q.target(a))
        ));
    }
    if q.has_declared_order() {
        let labels: Vec<&str> = q.arrows().map(|a| q.label(a)).collect();
        out.push_str(&format!("arroworder {}\n", labels.join(" ")));
    }
    for (name, ideal) in &ws.ideals {
        out.push_str(&format!("\nideal {name}\n"));
        for g in ideal.generators() {
            out.push_str(&format!("gen {}\n", format_element(q, g)));
        }
    }
    for (name, word) in &ws.words {
        out.push_str(&format!("\nword {name}\n"));
        if !word.factors.is_empty() {
            out.push_str(&format_word(q, word));
            out.push('\n');
        }
    }
    out
}

impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
