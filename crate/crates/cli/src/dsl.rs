//! The ring specification language.
//!
//! ```text
//! document := { binding NEWLINE }
//! binding  := kind IDENT "=" expr
//! kind     := "ring" | "rng" | "rrng" | "ext" | "phi"
//! expr     := INT | IDENT | IDENT "(" [ arg { "," arg } ] ")"
//!           | "{" [ INT { "," INT } ] "}" | "[" [ expr { "," expr } ] "]"
//! arg      := [ IDENT "=" ] expr
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Newlines inside
//! brackets are ignored, so tables can span several lines.

use std::fmt;

use thiserror::Error;

/// 1-based source position. Positions never take part in AST equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Ring,
    Rng,
    RRng,
    Ext,
    Phi,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Rng => "rng",
            Kind::RRng => "rrng",
            Kind::Ext => "ext",
            Kind::Phi => "phi",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        Some(match s {
            "ring" => Kind::Ring,
            "rng" => Kind::Rng,
            "rrng" => Kind::RRng,
            "ext" => Kind::Ext,
            "phi" => Kind::Phi,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int { value: u64, pos: Pos },
    Name { name: String, pos: Pos },
    Call { name: String, args: Vec<Arg>, pos: Pos },
    Set { items: Vec<u64>, pos: Pos },
    List { items: Vec<Expr>, pos: Pos },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int { pos, .. }
            | Expr::Name { pos, .. }
            | Expr::Call { pos, .. }
            | Expr::Set { pos, .. }
            | Expr::List { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub kind: Kind,
    pub name: String,
    pub expr: Expr,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub bindings: Vec<Binding>,
}

impl SpecDocument {
    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|b| b.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: expected {expected}")]
    SyntaxError { pos: Pos, expected: String },
    #[error("{pos}: unknown name `{name}`")]
    UnknownName { pos: Pos, name: String },
    #[error("{pos}: `{name}` is already declared")]
    DuplicateName { pos: Pos, name: String },
    #[error("{pos}: {builder} {message}")]
    ArityError { pos: Pos, builder: String, message: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::SyntaxError { pos, .. }
            | ParseError::UnknownName { pos, .. }
            | ParseError::DuplicateName { pos, .. }
            | ParseError::ArityError { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Newline,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let pos = Pos { line: ln + 1, col: k + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                let value = s.parse().map_err(|_| ParseError::SyntaxError {
                    pos,
                    expected: "an integer that fits in 64 bits".into(),
                })?;
                out.push((Tok::Int(value), pos));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push((Tok::Ident(chars[start..k].iter().collect()), pos));
            } else if "(){}[],=".contains(c) {
                match c {
                    '(' | '{' | '[' => depth += 1,
                    ')' | '}' | ']' => depth = depth.saturating_sub(1),
                    _ => {}
                }
                out.push((Tok::Sym(c), pos));
                k += 1;
            } else {
                return Err(ParseError::SyntaxError {
                    pos,
                    expected: format!("a name, number or punctuation, not `{c}`"),
                });
            }
        }
        if depth == 0 {
            out.push((Tok::Newline, Pos { line: ln + 1, col: chars.len() + 1 }));
        }
    }
    let end = match out.last() {
        Some((_, p)) if depth == 0 => Pos { line: p.line + 1, col: 1 },
        _ => {
            let lines: Vec<&str> = text.lines().collect();
            Pos {
                line: lines.len().max(1),
                col: lines.last().map_or(0, |l| l.chars().count()) + 1,
            }
        }
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            pos: self.pos(),
            expected: format!("{expected}, found {}", describe(self.peek())),
        })
    }

    fn eat(&mut self, c: char, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn document(&mut self) -> Result<SpecDocument, ParseError> {
        let mut doc = SpecDocument::default();
        loop {
            while *self.peek() == Tok::Newline {
                self.bump();
            }
            if *self.peek() == Tok::Eof {
                return Ok(doc);
            }
            doc.bindings.push(self.binding()?);
            match self.peek() {
                Tok::Newline | Tok::Eof => {}
                _ => return self.fail("end of line"),
            }
        }
    }

    fn binding(&mut self) -> Result<Binding, ParseError> {
        let pos = self.pos();
        let kind = match self.peek() {
            Tok::Ident(s) => Kind::from_keyword(s),
            _ => None,
        };
        let Some(kind) = kind else {
            return self.fail("a declaration (ring, rng, rrng, ext or phi)");
        };
        self.bump();
        let name = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                s
            }
            _ => return self.fail("a name"),
        };
        self.eat('=', "`=`")?;
        let expr = self.expr()?;
        Ok(Binding { kind, name, expr, pos })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(value) => {
                self.bump();
                Ok(Expr::Int { value, pos })
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::Sym('(') {
                    return Ok(Expr::Name { name, pos });
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::Sym(')') {
                    loop {
                        args.push(self.arg()?);
                        if *self.peek() == Tok::Sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.eat(')', "`,` or `)`")?;
                Ok(Expr::Call { name, args, pos })
            }
            Tok::Sym('{') => {
                self.bump();
                let mut items = Vec::new();
                if *self.peek() != Tok::Sym('}') {
                    loop {
                        match self.peek() {
                            Tok::Int(v) => {
                                items.push(*v);
                                self.bump();
                            }
                            _ => return self.fail("an element index"),
                        }
                        if *self.peek() == Tok::Sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.eat('}', "`,` or `}`")?;
                Ok(Expr::Set { items, pos })
            }
            Tok::Sym('[') => {
                self.bump();
                let mut items = Vec::new();
                if *self.peek() != Tok::Sym(']') {
                    loop {
                        items.push(self.expr()?);
                        if *self.peek() == Tok::Sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.eat(']', "`,` or `]`")?;
                Ok(Expr::List { items, pos })
            }
            _ => self.fail("an expression"),
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        let next = self.toks.get(self.at + 1).map(|t| &t.0);
        if let (Tok::Ident(key), Some(Tok::Sym('='))) = (self.peek().clone(), next) {
            self.bump();
            self.bump();
            return Ok(Arg {
                key: Some(key),
                value: self.expr()?,
            });
        }
        if *self.peek() == Tok::Sym(')') {
            return self.fail("an expression");
        }
        Ok(Arg {
            key: None,
            value: self.expr()?,
        })
    }
}

/// Parses without resolving names or checking builder signatures.
pub fn parse_syntax(text: &str) -> Result<SpecDocument, ParseError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.document()
}

/// Positional arity range and keyword arguments of a builder.
pub struct Signature {
    pub name: &'static str,
    pub min: usize,
    pub max: Option<usize>,
    pub required: &'static [&'static str],
    pub optional: &'static [&'static str],
}

const fn sig(name: &'static str, min: usize, max: Option<usize>) -> Signature {
    Signature {
        name,
        min,
        max,
        required: &[],
        optional: &[],
    }
}

pub const BUILDERS: &[Signature] = &[
    sig("Z", 1, Some(1)),
    sig("Mat", 2, Some(2)),
    sig("UT", 2, Some(2)),
    sig("product", 1, None),
    sig("trivial", 1, Some(1)),
    sig("ideal_of", 2, Some(2)),
    sig("quotient", 2, Some(2)),
    Signature {
        name: "tables",
        min: 0,
        max: Some(0),
        required: &["add", "mul"],
        optional: &["unit"],
    },
    sig("over", 2, Some(2)),
    Signature {
        name: "actions",
        min: 2,
        max: Some(2),
        required: &["left", "right"],
        optional: &[],
    },
    sig("sum", 1, None),
    sig("dorroh", 1, Some(1)),
    sig("hom", 2, Some(2)),
    sig("retraction", 2, Some(2)),
    sig("family", 1, None),
];

pub fn signature(name: &str) -> Option<&'static Signature> {
    BUILDERS.iter().find(|s| s.name == name)
}

fn check_call(name: &str, args: &[Arg], pos: Pos) -> Result<(), ParseError> {
    let Some(s) = signature(name) else {
        return Err(ParseError::UnknownName {
            pos,
            name: name.to_string(),
        });
    };
    let arity = |message: String| ParseError::ArityError {
        pos,
        builder: name.to_string(),
        message,
    };
    let positional = args.iter().filter(|a| a.key.is_none()).count();
    let expect = match s.max {
        Some(m) if m == s.min => format!("{m}"),
        Some(m) => format!("{} to {m}", s.min),
        None => format!("at least {}", s.min),
    };
    if positional < s.min || s.max.is_some_and(|m| positional > m) {
        return Err(arity(format!("takes {expect} positional argument(s), found {positional}")));
    }
    let mut seen: Vec<&str> = Vec::new();
    for a in args {
        if let Some(k) = &a.key {
            if !s.required.contains(&k.as_str()) && !s.optional.contains(&k.as_str()) {
                return Err(arity(format!("has no argument `{k}`")));
            }
            if seen.contains(&k.as_str()) {
                return Err(arity(format!("argument `{k}` given twice")));
            }
            seen.push(k);
        }
    }
    if let Some(k) = s.required.iter().find(|k| !seen.contains(k)) {
        return Err(arity(format!("needs argument `{k}`")));
    }
    Ok(())
}

fn resolve(e: &Expr, declared: &[&str]) -> Result<(), ParseError> {
    match e {
        Expr::Int { .. } | Expr::Set { .. } => Ok(()),
        Expr::Name { name, pos } => {
            if declared.contains(&name.as_str()) {
                Ok(())
            } else {
                Err(ParseError::UnknownName {
                    pos: *pos,
                    name: name.clone(),
                })
            }
        }
        Expr::List { items, .. } => items.iter().try_for_each(|x| resolve(x, declared)),
        Expr::Call { name, args, pos } => {
            check_call(name, args, *pos)?;
            args.iter().try_for_each(|a| resolve(&a.value, declared))
        }
    }
}

/// Parses and checks that names are unique, references point backwards and
/// builder calls match their signatures.
pub fn parse_spec(text: &str) -> Result<SpecDocument, ParseError> {
    let doc = parse_syntax(text)?;
    let mut declared: Vec<&str> = Vec::new();
    for b in &doc.bindings {
        resolve(&b.expr, &declared)?;
        if declared.contains(&b.name.as_str()) {
            return Err(ParseError::DuplicateName {
                pos: b.pos,
                name: b.name.clone(),
            });
        }
        declared.push(&b.name);
    }
    Ok(doc)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int { value, .. } => write!(f, "{value}"),
            Expr::Name { name, .. } => f.write_str(name),
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    if let Some(key) = &a.key {
                        write!(f, "{key}=")?;
                    }
                    write!(f, "{}", a.value)?;
                }
                f.write_str(")")
            }
            Expr::Set { items, .. } => {
                let s: Vec<String> = items.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", s.join(", "))
            }
            Expr::List { items, .. } => {
                let s: Vec<String> = items.iter().map(Expr::to_string).collect();
                write!(f, "[{}]", s.join(", "))
            }
        }
    }
}

impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bindings {
            writeln!(f, "{} {} = {}", b.kind.keyword(), b.name, b.expr)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_bindings() {
        let doc = parse_spec("ring R = Z(4)\nrng I = ideal_of(R, {0,2})\next E = dorroh(I)").unwrap();
        assert_eq!(doc.bindings.len(), 3);
        assert_eq!(doc.bindings[1].kind, Kind::Rng);
    }

    #[test]
    fn unterminated_call() {
        let err = parse_spec("ring R = Z(").unwrap_err();
        let ParseError::SyntaxError { pos, .. } = err else { panic!("{err:?}") };
        assert_eq!((pos.line, pos.col), (1, 12));
    }

    #[test]
    fn undeclared_reference() {
        let err = parse_spec("ext E = dorroh(X)").unwrap_err();
        assert!(matches!(err, ParseError::UnknownName { ref name, .. } if name == "X"), "{err:?}");
        assert_eq!(err.pos().col, 16);
    }

    #[test]
    fn arity_and_duplicates() {
        assert!(matches!(parse_spec("ring R = Z(2, 3)"), Err(ParseError::ArityError { .. })));
        assert!(matches!(parse_spec("ring R = tables(add=[[0]])"), Err(ParseError::ArityError { .. })));
        assert!(matches!(
            parse_spec("ring R = Z(2)\nring R = Z(3)"),
            Err(ParseError::DuplicateName { .. })
        ));
        assert!(matches!(parse_spec("ring R = Q(2)"), Err(ParseError::UnknownName { .. })));
    }

    #[test]
    fn multiline_tables_and_comments() {
        let text = "# two elements\nrng T = tables(\n  add=[[0,1],[1,0]],  # xor\n  mul=[[0,0],[0,0]]\n)\n";
        let doc = parse_spec(text).unwrap();
        assert_eq!(doc.to_string(), "rng T = tables(add=[[0, 1], [1, 0]], mul=[[0, 0], [0, 0]])\n");
    }

    #[test]
    fn error_inside_brackets_points_at_token() {
        let err = parse_spec("ring R = Z(2)\nrng T = tables(add=[[0,1],[1 0]], mul=[[0]])").unwrap_err();
        let ParseError::SyntaxError { pos, .. } = err else { panic!() };
        assert_eq!((pos.line, pos.col), (2, 30));
    }
}
