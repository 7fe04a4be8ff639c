//! Lexer and recursive-descent parser for the query grammar:
//!
//! ```text
//! query   := "select" var+ "where" "{" pattern ("." pattern)*
//!            ("." "filter" var cmp number)* ("." "not" "{" pattern "}")* "."? "}"
//! pattern := term term term
//! term    := "?"ident | ident | number | quoted-string
//! ```

use std::collections::BTreeSet;
use std::str::FromStr;

use rust_decimal::Decimal;

use super::ast::*;
use super::QueryError;
use crate::ontology::{Literal, Ontology, Predicate, TermId};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Var(String),
    Ident(String),
    Number(Decimal),
    Str(String),
    Cmp(Comparator),
    LBrace,
    RBrace,
    Dot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(v) => format!("variable `{v}`"),
            Tok::Ident(i) => format!("`{i}`"),
            Tok::Number(n) => format!("number {n}"),
            Tok::Str(_) => "string".into(),
            Tok::Cmp(c) => format!("`{}`", c.as_str()),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos), QueryError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |pos: Pos, message: String| QueryError::Syntax { line: pos.line, col: pos.col, message };

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let start = i;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = match c {
            '{' => {
                i += 1;
                Tok::LBrace
            }
            '}' => {
                i += 1;
                Tok::RBrace
            }
            '.' => {
                i += 1;
                Tok::Dot
            }
            '<' | '>' | '=' | '≤' | '≥' => {
                i += 1;
                let eq = chars.get(i) == Some(&'=');
                let cmp = match (c, eq) {
                    ('<', true) => Comparator::Le,
                    ('<', false) => Comparator::Lt,
                    ('>', true) => Comparator::Ge,
                    ('>', false) => Comparator::Gt,
                    ('≤', _) => Comparator::Le,
                    ('≥', _) => Comparator::Ge,
                    _ => Comparator::Eq,
                };
                if eq && c != '≤' && c != '≥' {
                    i += 1;
                }
                Tok::Cmp(cmp)
            }
            '"' => {
                i += 1;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None => return Err(err(pos, "unterminated string".into())),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            let escaped = match chars.get(i + 1) {
                                Some('n') => '\n',
                                Some('r') => '\r',
                                Some('t') => '\t',
                                Some('"') => '"',
                                Some('\\') => '\\',
                                _ => return Err(err(pos, "bad escape in string".into())),
                            };
                            s.push(escaped);
                            i += 2;
                        }
                        Some('\n') => return Err(err(pos, "newline in string".into())),
                        Some(ch) => {
                            s.push(*ch);
                            i += 1;
                        }
                    }
                }
                Tok::Str(s)
            }
            '?' => {
                i += 1;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(err(pos, "`?` must be followed by a variable name".into()));
                }
                Tok::Var(chars[start..i].iter().collect())
            }
            c if is_word_char(c) || c == '+' => {
                i += 1;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                // A fraction continues a numeric word: `0.14`, `-3.5`.
                let head: String = chars[start..i].iter().collect();
                let numeric_head = head.trim_start_matches(['-', '+']);
                if !numeric_head.is_empty()
                    && numeric_head.chars().all(|d| d.is_ascii_digit())
                    && chars.get(i) == Some(&'.')
                    && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())
                {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let word: String = chars[start..i].iter().collect();
                match Decimal::from_str(&word) {
                    Ok(d) if word.trim_start_matches(['-', '+']).starts_with(|d: char| d.is_ascii_digit()) => {
                        Tok::Number(d)
                    }
                    _ if word.starts_with('+') => return Err(err(pos, format!("bad number `{word}`"))),
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(err(pos, format!("unexpected character `{other}`"))),
        };
        col += i - start;
        toks.push((tok, pos));
    }
    Ok((toks, Pos { line, col }))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, message: String) -> Result<T, QueryError> {
        let p = self.pos();
        Err(QueryError::Syntax { line: p.line, col: p.col, message })
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(w)) if w.eq_ignore_ascii_case(kw))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        if self.is_keyword(kw) {
            self.at += 1;
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.found()))
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), QueryError> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.found()))
        }
    }

    fn term(&mut self) -> Result<PatternTerm, QueryError> {
        let t = match self.peek() {
            Some(Tok::Var(v)) => PatternTerm::Var(v.clone()),
            Some(Tok::Ident(w)) => match TermId::new(w) {
                Ok(id) => PatternTerm::Term(id),
                Err(e) => return self.error(e.to_string()),
            },
            Some(Tok::Number(n)) => PatternTerm::Literal(Literal::decimal(*n)),
            Some(Tok::Str(s)) => PatternTerm::Literal(Literal::string(s.clone())),
            _ => return self.error(format!("expected a term, found {}", self.found())),
        };
        self.at += 1;
        Ok(t)
    }

    fn pattern(&mut self) -> Result<TriplePattern, QueryError> {
        let subject = self.term()?;
        let predicate = match self.peek() {
            Some(Tok::Ident(w)) if w == Predicate::INSTANCE_OF => Predicate::InstanceOf,
            Some(Tok::Ident(w)) => match TermId::new(w) {
                Ok(id) => Predicate::Property(id),
                Err(e) => return self.error(e.to_string()),
            },
            Some(Tok::Var(_)) => return self.error("a predicate cannot be a variable".into()),
            _ => return self.error(format!("expected a predicate, found {}", self.found())),
        };
        self.at += 1;
        let object = self.term()?;
        Ok(TriplePattern { subject, predicate, object })
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        self.keyword("select")?;
        let mut select_vars = Vec::new();
        while let Some(Tok::Var(v)) = self.peek() {
            select_vars.push(v.clone());
            self.at += 1;
        }
        if select_vars.is_empty() {
            return self.error(format!("expected a variable after `select`, found {}", self.found()));
        }
        self.keyword("where")?;
        self.expect(Tok::LBrace)?;
        if self.peek() == Some(&Tok::RBrace) {
            return self.error("empty pattern block".into());
        }
        let mut q = Query {
            select_vars,
            patterns: vec![self.pattern()?],
            filters: Vec::new(),
            negations: Vec::new(),
            semantics: Semantics::default(),
        };
        // 0 = patterns, 1 = filters, 2 = negations; sections only advance.
        let mut section = 0;
        while self.peek() == Some(&Tok::Dot) {
            self.at += 1;
            if self.peek() == Some(&Tok::RBrace) {
                break;
            }
            if self.is_keyword("filter") {
                if section > 1 {
                    return self.error("filters must come before `not` blocks".into());
                }
                section = 1;
                self.at += 1;
                let variable = match self.next() {
                    Some(Tok::Var(v)) => v,
                    _ => {
                        self.at -= 1;
                        return self.error(format!("expected a variable after `filter`, found {}", self.found()));
                    }
                };
                let comparator = match self.next() {
                    Some(Tok::Cmp(c)) => c,
                    _ => {
                        self.at -= 1;
                        return self.error(format!("expected a comparison, found {}", self.found()));
                    }
                };
                let bound = match self.next() {
                    Some(Tok::Number(n)) => n,
                    _ => {
                        self.at -= 1;
                        return self.error(format!("expected a number, found {}", self.found()));
                    }
                };
                q.filters.push(NumericFilter { variable, comparator, bound });
            } else if self.is_keyword("not") {
                section = 2;
                self.at += 1;
                self.expect(Tok::LBrace)?;
                q.negations.push(self.pattern()?);
                self.expect(Tok::RBrace)?;
            } else {
                if section > 0 {
                    return self.error("patterns must come before filters and `not` blocks".into());
                }
                q.patterns.push(self.pattern()?);
            }
        }
        self.expect(Tok::RBrace)?;
        if self.peek().is_some() {
            return self.error(format!("unexpected {} after the query", self.found()));
        }
        Ok(q)
    }
}

fn check_safety(q: &Query) -> Result<(), QueryError> {
    let bound: BTreeSet<&str> = q.patterns.iter().flat_map(TriplePattern::vars).collect();
    for v in q.select_vars.iter().chain(q.filters.iter().map(|f| &f.variable)) {
        if !bound.contains(v.as_str()) {
            return Err(QueryError::UnsafeVariable(v.clone()));
        }
    }
    Ok(())
}

impl Query {
    /// Parses query text without consulting a schema.
    pub fn parse(text: &str) -> Result<Query, QueryError> {
        let (toks, end) = lex(text)?;
        let q = Parser { toks, at: 0, end }.query()?;
        check_safety(&q)?;
        Ok(q)
    }
}

/// Parses query text and resolves its schema terms against `ont`.
///
/// Predicates and `instance_of` classes must exist (aliases are replaced by
/// their canonical term). Other constants name instances and are not
/// checked.
pub fn parse_query(text: &str, ont: &Ontology) -> Result<Query, QueryError> {
    let mut q = Query::parse(text)?;
    for p in q.patterns.iter_mut().chain(q.negations.iter_mut()) {
        match &p.predicate {
            Predicate::InstanceOf => {
                if let PatternTerm::Term(c) = &p.object {
                    let class =
                        ont.resolve_class(c.as_str()).ok_or_else(|| QueryError::UnknownTermInQuery(c.to_string()))?;
                    p.object = PatternTerm::Term(class);
                }
            }
            Predicate::Property(name) => {
                let prop = ont
                    .resolve_property(name.as_str())
                    .ok_or_else(|| QueryError::UnknownTermInQuery(name.to_string()))?;
                p.predicate = Predicate::Property(prop.id.clone());
            }
        }
    }
    Ok(q)
}
