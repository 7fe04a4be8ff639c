use std::fmt;
use std::str::FromStr;

use rust_decimal::Decimal;

use crate::ontology::{Literal, LiteralValue, Predicate, TermId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Semantics {
    #[default]
    OpenWorld,
    ClosedWorld,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::OpenWorld => "open_world",
            Semantics::ClosedWorld => "closed_world",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "open" | "open_world" | "open-world" | "owa" => Ok(Semantics::OpenWorld),
            "closed" | "closed_world" | "closed-world" | "cwa" => Ok(Semantics::ClosedWorld),
            other => Err(format!("unknown semantics `{other}` (expected open or closed)")),
        }
    }
}

/// Subject or object position of a pattern. Variables keep their `?`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Var(String),
    Term(TermId),
    Literal(Literal),
}

impl PatternTerm {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            _ => None,
        }
    }
}

fn write_string_literal(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            c => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => f.write_str(v),
            PatternTerm::Term(t) => write!(f, "{t}"),
            PatternTerm::Literal(l) => match &l.value {
                LiteralValue::Integer(_) | LiteralValue::Decimal(_) => f.write_str(&l.value.lexical()),
                other => write_string_literal(f, &other.lexical()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: Predicate,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        [&self.subject, &self.object].into_iter().filter_map(PatternTerm::as_var)
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Comparator {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Eq => "=",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
        }
    }

    pub fn holds(self, value: Decimal, bound: Decimal) -> bool {
        match self {
            Comparator::Lt => value < bound,
            Comparator::Le => value <= bound,
            Comparator::Eq => value == bound,
            Comparator::Ge => value >= bound,
            Comparator::Gt => value > bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericFilter {
    pub variable: String,
    pub comparator: Comparator,
    pub bound: Decimal,
}

impl fmt::Display for NumericFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "filter {} {} {}", self.variable, self.comparator.as_str(), self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub select_vars: Vec<String>,
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<NumericFilter>,
    pub negations: Vec<TriplePattern>,
    pub semantics: Semantics,
}

impl Query {
    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }
}

/// Prints the query in the same grammar the parser reads. Semantics are
/// not part of the text.
impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "select {} where {{ ", self.select_vars.join(" "))?;
        let mut items: Vec<String> = self.patterns.iter().map(ToString::to_string).collect();
        items.extend(self.filters.iter().map(ToString::to_string));
        items.extend(self.negations.iter().map(|n| format!("not {{ {n} }}")));
        write!(f, "{} }}", items.join(" . "))
    }
}
