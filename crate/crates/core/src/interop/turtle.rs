//! The Turtle fragment used as the persistent store format.
//!
//! Output is one block per subject, subjects sorted within each section
//! (classes, properties, aliases, individuals). The reader accepts exactly
//! the constructs the writer produces, plus `rdf:type` spelled out, full
//! `<iri>` references and bare numeric literals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use chrono::NaiveDate;
use rust_decimal::Decimal;

use super::InteropError;
use crate::ontology::{
    Assertion, BaseType, ClassDef, DatatypeSpec, InstanceStore, Literal, LiteralValue, NumericRestriction, Object,
    Ontology, Predicate, PropertyDef, PropertyRange, TermId, Unit,
};

const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
const OWL: &str = "http://www.w3.org/2002/07/owl#";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
/// Annotation vocabulary for units and numeric bounds.
pub const KG: &str = "urn:satkg:vocab#";

/// Namespaces for schema terms and individuals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurtleConfig {
    pub schema_iri: String,
    pub instance_iri: String,
}

impl Default for TurtleConfig {
    fn default() -> Self {
        TurtleConfig { schema_iri: "urn:satkg:schema#".into(), instance_iri: "urn:satkg:individual#".into() }
    }
}

impl TurtleConfig {
    fn prefixes(&self) -> [(&str, &str); 7] {
        [
            ("rdf", RDF),
            ("rdfs", RDFS),
            ("owl", OWL),
            ("xsd", XSD),
            ("kg", KG),
            ("sch", &self.schema_iri),
            ("ind", &self.instance_iri),
        ]
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn literal_text(value: &LiteralValue) -> String {
    match value {
        LiteralValue::String(s) => escape(s),
        other => format!("{}^^xsd:{}", escape(&other.lexical()), other.base().xsd_name()),
    }
}

fn decimal_text(d: Decimal) -> String {
    format!("{}^^xsd:decimal", escape(&d.to_string()))
}

/// Writes `subject p1 o, o ; p2 o .` with one predicate per line.
fn block(out: &mut String, subject: &str, predicates: &[(String, Vec<String>)]) {
    out.push_str(subject);
    for (i, (p, objects)) in predicates.iter().enumerate() {
        if i > 0 {
            out.push_str(" ;\n   ");
        }
        let _ = write!(out, " {p} {}", objects.join(" , "));
    }
    out.push_str(" .\n");
}

fn sch(id: &TermId) -> String {
    format!("sch:{id}")
}

fn class_block(out: &mut String, c: &ClassDef) {
    let mut preds = vec![("a".to_string(), vec!["owl:Class".to_string()])];
    if !c.parents.is_empty() {
        preds.push(("rdfs:subClassOf".into(), c.parents.iter().map(sch).collect()));
    }
    if let Some(text) = &c.definition {
        preds.push(("rdfs:comment".into(), vec![escape(text)]));
    }
    block(out, &sch(&c.id), &preds);
}

fn property_block(out: &mut String, p: &PropertyDef) {
    let mut types = vec![match p.range {
        PropertyRange::Classes(_) => "owl:ObjectProperty".to_string(),
        PropertyRange::Datatype(_) => "owl:DatatypeProperty".to_string(),
    }];
    if p.functional {
        types.push("owl:FunctionalProperty".into());
    }
    let mut preds = vec![("a".to_string(), types)];
    if !p.domain.is_empty() {
        preds.push(("rdfs:domain".into(), p.domain.iter().map(sch).collect()));
    }
    match &p.range {
        PropertyRange::Classes(cs) => preds.push(("rdfs:range".into(), cs.iter().map(sch).collect())),
        PropertyRange::Datatype(dt) => {
            preds.push(("rdfs:range".into(), vec![format!("xsd:{}", dt.base.xsd_name())]));
            if let Some(unit) = dt.unit {
                preds.push(("kg:unit".into(), vec![escape(unit.label())]));
            }
            if let Some(r) = &dt.restriction {
                if let Some(lo) = r.lower {
                    let p = if r.lower_inclusive { "kg:minInclusive" } else { "kg:minExclusive" };
                    preds.push((p.into(), vec![decimal_text(lo)]));
                }
                if let Some(hi) = r.upper {
                    let p = if r.upper_inclusive { "kg:maxInclusive" } else { "kg:maxExclusive" };
                    preds.push((p.into(), vec![decimal_text(hi)]));
                }
                if let Some(note) = &r.upper_note {
                    preds.push(("kg:upperNote".into(), vec![escape(note)]));
                }
            }
        }
    }
    block(out, &sch(&p.id), &preds);
}

/// Serializes the store with the default namespaces.
pub fn export_turtle(store: &InstanceStore) -> String {
    export_turtle_with(store, &TurtleConfig::default())
}

pub fn export_turtle_with(store: &InstanceStore, config: &TurtleConfig) -> String {
    let mut out = String::new();
    for (name, iri) in config.prefixes() {
        let _ = writeln!(out, "@prefix {name}: <{iri}> .");
    }
    let ont = store.ontology();
    let mut sections: Vec<String> = Vec::new();

    let mut classes = String::new();
    for c in ont.classes() {
        class_block(&mut classes, c);
    }
    sections.push(classes);

    let mut properties = String::new();
    for p in ont.properties() {
        property_block(&mut properties, p);
    }
    sections.push(properties);

    let mut aliases = String::new();
    for (alias, target) in ont.aliases() {
        let relation = if ont.has_class(target.as_str()) { "owl:equivalentClass" } else { "owl:equivalentProperty" };
        let _ = writeln!(aliases, "{} {relation} {} .", sch(alias), sch(target));
    }
    sections.push(aliases);

    let mut individuals = String::new();
    for i in store.instances() {
        let mut types = vec!["owl:NamedIndividual".to_string()];
        let mut preds = Vec::new();
        for (pred, objects) in store.about(i.as_str()).into_iter().flatten() {
            let rendered = objects.iter().map(|o| match o {
                Object::Class(c) => sch(c),
                Object::Instance(x) => format!("ind:{x}"),
                Object::Literal(l) => literal_text(&l.value),
            });
            match pred {
                Predicate::InstanceOf => types.extend(rendered),
                Predicate::Property(p) => preds.push((sch(p), rendered.collect())),
            }
        }
        preds.insert(0, ("a".to_string(), types));
        block(&mut individuals, &format!("ind:{i}"), &preds);
    }
    sections.push(individuals);

    for s in sections.into_iter().filter(|s| !s.is_empty()) {
        out.push('\n');
        out.push_str(&s);
    }
    out
}

pub fn write_turtle(store: &InstanceStore, config: &TurtleConfig, w: &mut impl Write) -> Result<(), InteropError> {
    w.write_all(export_turtle_with(store, config).as_bytes()).map_err(|e| InteropError::WriteFailure(e.to_string()))
}

// ---- reading ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Prefix,
    PName(String, String),
    Iri(String),
    A,
    Str(String),
    Number(String),
    DatatypeMark,
    Semi,
    Comma,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Loc {
    line: usize,
    col: usize,
}

fn parse_err(loc: Loc, message: impl Into<String>) -> InteropError {
    InteropError::Parse { line: loc.line, col: loc.col, message: message.into() }
}

fn unsupported(loc: Loc, construct: impl Into<String>) -> InteropError {
    InteropError::UnsupportedConstruct { line: loc.line, col: loc.col, construct: construct.into() }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<Vec<(Tok, Loc)>, InteropError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let loc = Loc { line, col };
        let start = i;
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '[' => return Err(unsupported(loc, "blank node `[`")),
            '(' => return Err(unsupported(loc, "collection `(`")),
            '_' if chars.get(i + 1) == Some(&':') => return Err(unsupported(loc, "blank node label")),
            ';' | ',' | '.' => {
                i += 1;
                toks.push((
                    match c {
                        ';' => Tok::Semi,
                        ',' => Tok::Comma,
                        _ => Tok::Dot,
                    },
                    loc,
                ));
            }
            '^' if chars.get(i + 1) == Some(&'^') => {
                i += 2;
                toks.push((Tok::DatatypeMark, loc));
            }
            '@' => {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start + 1..i].iter().collect();
                if word == "prefix" {
                    toks.push((Tok::Prefix, loc));
                } else {
                    return Err(unsupported(loc, format!("`@{word}`")));
                }
            }
            '<' => {
                i += 1;
                while i < chars.len() && chars[i] != '>' {
                    if chars[i] == '\n' {
                        return Err(parse_err(loc, "unterminated IRI"));
                    }
                    i += 1;
                }
                if i == chars.len() {
                    return Err(parse_err(loc, "unterminated IRI"));
                }
                toks.push((Tok::Iri(chars[start + 1..i].iter().collect()), loc));
                i += 1;
            }
            '"' => {
                if chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"') {
                    return Err(unsupported(loc, "long string"));
                }
                i += 1;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None | Some('\n') => return Err(parse_err(loc, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            s.push(match chars.get(i + 1) {
                                Some('n') => '\n',
                                Some('r') => '\r',
                                Some('t') => '\t',
                                Some('"') => '"',
                                Some('\\') => '\\',
                                _ => return Err(parse_err(loc, "unsupported escape")),
                            });
                            i += 2;
                        }
                        Some(ch) => {
                            s.push(*ch);
                            i += 1;
                        }
                    }
                }
                if chars.get(i) == Some(&'@') {
                    return Err(unsupported(Loc { line, col: col + (i - start) }, "language tag"));
                }
                toks.push((Tok::Str(s), loc));
            }
            c if c == '-' || c == '+' || c.is_ascii_digit() => {
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_digit()
                        || (chars[i] == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())))
                {
                    i += 1;
                }
                toks.push((Tok::Number(chars[start..i].iter().collect()), loc));
            }
            c if c.is_ascii_alphabetic() || c == ':' => {
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let prefix: String = chars[start..i].iter().collect();
                if chars.get(i) != Some(&':') {
                    if prefix == "a" {
                        toks.push((Tok::A, loc));
                        col += i - start;
                        continue;
                    }
                    return Err(parse_err(loc, format!("unexpected word `{prefix}`")));
                }
                i += 1;
                let local_start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let local: String = chars[local_start..i].iter().collect();
                toks.push((Tok::PName(prefix, local), loc));
            }
            other => return Err(parse_err(loc, format!("unexpected character `{other}`"))),
        }
        col += i - start;
    }
    Ok(toks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ns {
    Rdf,
    Rdfs,
    Owl,
    Xsd,
    Kg,
    Schema,
    Instance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Iri(Ns, String),
    Literal { lexical: String, datatype: Option<String>, numeric: bool },
}

#[derive(Debug, Clone)]
struct Triple {
    loc: Loc,
    subject: (Ns, String),
    predicate: (Ns, String),
    object: Node,
    object_loc: Loc,
}

struct Reader<'c> {
    toks: Vec<(Tok, Loc)>,
    at: usize,
    prefixes: BTreeMap<String, String>,
    config: &'c TurtleConfig,
    end: Loc,
}

impl Reader<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn loc(&self) -> Loc {
        self.toks.get(self.at).map_or(self.end, |(_, l)| *l)
    }

    fn bump(&mut self) -> Option<(Tok, Loc)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), InteropError> {
        match self.bump() {
            Some((t, _)) if t == want => Ok(()),
            Some((t, loc)) => Err(parse_err(loc, format!("expected {what}, found {t:?}"))),
            None => Err(parse_err(self.end, format!("expected {what}, found end of input"))),
        }
    }

    fn classify(&self, iri: &str, loc: Loc) -> Result<(Ns, String), InteropError> {
        let spaces = [
            (RDF, Ns::Rdf),
            (RDFS, Ns::Rdfs),
            (OWL, Ns::Owl),
            (XSD, Ns::Xsd),
            (KG, Ns::Kg),
            (self.config.schema_iri.as_str(), Ns::Schema),
            (self.config.instance_iri.as_str(), Ns::Instance),
        ];
        for (base, ns) in spaces {
            if let Some(local) = iri.strip_prefix(base) {
                return Ok((ns, local.to_string()));
            }
        }
        Err(unsupported(loc, format!("IRI outside the known namespaces: <{iri}>")))
    }

    fn iri(&self, tok: &Tok, loc: Loc) -> Result<Option<(Ns, String)>, InteropError> {
        let full = match tok {
            Tok::PName(prefix, local) => {
                let base = self
                    .prefixes
                    .get(prefix)
                    .ok_or_else(|| parse_err(loc, format!("undeclared prefix `{prefix}:`")))?;
                format!("{base}{local}")
            }
            Tok::Iri(iri) => iri.clone(),
            Tok::A => return Ok(Some((Ns::Rdf, "type".into()))),
            _ => return Ok(None),
        };
        self.classify(&full, loc).map(Some)
    }

    fn object(&mut self) -> Result<(Node, Loc), InteropError> {
        let loc = self.loc();
        let Some((tok, _)) = self.bump() else {
            return Err(parse_err(loc, "expected an object, found end of input"));
        };
        match &tok {
            Tok::Str(s) => {
                let mut datatype = None;
                if self.peek() == Some(&Tok::DatatypeMark) {
                    self.at += 1;
                    let dloc = self.loc();
                    let dt = self.bump().ok_or_else(|| parse_err(dloc, "expected a datatype"))?;
                    match self.iri(&dt.0, dloc)? {
                        Some((Ns::Xsd, local)) => datatype = Some(local),
                        _ => return Err(unsupported(dloc, "datatype outside xsd")),
                    }
                }
                Ok((Node::Literal { lexical: s.clone(), datatype, numeric: false }, loc))
            }
            Tok::Number(n) => Ok((Node::Literal { lexical: n.clone(), datatype: None, numeric: true }, loc)),
            other => match self.iri(other, loc)? {
                Some((ns, local)) => Ok((Node::Iri(ns, local), loc)),
                None => Err(parse_err(loc, format!("expected an object, found {other:?}"))),
            },
        }
    }

    fn statements(&mut self) -> Result<Vec<Triple>, InteropError> {
        let mut triples = Vec::new();
        while let Some(tok) = self.peek().cloned() {
            let loc = self.loc();
            if tok == Tok::Prefix {
                self.at += 1;
                let (name, nloc) = self.bump().ok_or_else(|| parse_err(loc, "expected a prefix name"))?;
                let Tok::PName(prefix, local) = name else {
                    return Err(parse_err(nloc, "expected `name:` after @prefix"));
                };
                if !local.is_empty() {
                    return Err(parse_err(nloc, "expected `name:` after @prefix"));
                }
                let (iri, iloc) = self.bump().ok_or_else(|| parse_err(loc, "expected an IRI"))?;
                let Tok::Iri(iri) = iri else {
                    return Err(parse_err(iloc, "expected `<iri>` in @prefix"));
                };
                self.prefixes.insert(prefix, iri);
                self.expect(Tok::Dot, "`.`")?;
                continue;
            }
            self.at += 1;
            let subject = match self.iri(&tok, loc)? {
                Some(s) if tok != Tok::A => s,
                _ => return Err(parse_err(loc, format!("expected a subject, found {tok:?}"))),
            };
            loop {
                let ploc = self.loc();
                let (ptok, _) = self.bump().ok_or_else(|| parse_err(ploc, "expected a predicate"))?;
                let predicate = self
                    .iri(&ptok, ploc)?
                    .ok_or_else(|| parse_err(ploc, format!("expected a predicate, found {ptok:?}")))?;
                loop {
                    let (object, object_loc) = self.object()?;
                    triples.push(Triple {
                        loc,
                        subject: subject.clone(),
                        predicate: predicate.clone(),
                        object,
                        object_loc,
                    });
                    if self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
                match self.bump() {
                    Some((Tok::Semi, _)) if self.peek() == Some(&Tok::Dot) => {
                        self.at += 1;
                        break;
                    }
                    Some((Tok::Semi, _)) => continue,
                    Some((Tok::Dot, _)) => break,
                    Some((t, l)) => return Err(parse_err(l, format!("expected `;` or `.`, found {t:?}"))),
                    None => return Err(parse_err(self.end, "expected `.` at end of statement")),
                }
            }
        }
        Ok(triples)
    }
}

#[derive(Debug, Default)]
struct PropInfo {
    loc: Option<Loc>,
    object: bool,
    data: bool,
    functional: bool,
    domain: BTreeSet<TermId>,
    range_classes: BTreeSet<TermId>,
    range_xsd: Option<BaseType>,
    unit: Option<Unit>,
    lower: Option<(Decimal, bool)>,
    upper: Option<(Decimal, bool)>,
    upper_note: Option<String>,
}

fn term_at(name: &str, loc: Loc) -> Result<TermId, InteropError> {
    TermId::new(name).map_err(|e| parse_err(loc, e.to_string()))
}

fn literal_string(node: &Node, loc: Loc) -> Result<String, InteropError> {
    match node {
        Node::Literal { lexical, datatype: None | Some(_), numeric: false } => Ok(lexical.clone()),
        _ => Err(parse_err(loc, "expected a string literal")),
    }
}

fn literal_decimal(node: &Node, loc: Loc) -> Result<Decimal, InteropError> {
    match node {
        Node::Literal { lexical, .. } => {
            Decimal::from_str(lexical).map_err(|_| parse_err(loc, format!("`{lexical}` is not a decimal")))
        }
        _ => Err(parse_err(loc, "expected a numeric literal")),
    }
}

fn to_literal(node: &Node, loc: Loc) -> Result<Literal, InteropError> {
    let Node::Literal { lexical, datatype, numeric } = node else {
        return Err(parse_err(loc, "expected a literal"));
    };
    let base = match (datatype.as_deref(), numeric) {
        (Some(dt), _) => BaseType::from_xsd_name(dt).ok_or_else(|| unsupported(loc, format!("datatype xsd:{dt}")))?,
        (None, true) if lexical.contains('.') => BaseType::Decimal,
        (None, true) => BaseType::Integer,
        (None, false) => BaseType::String,
    };
    let bad = || parse_err(loc, format!("`{lexical}` is not a valid {base}"));
    Ok(match base {
        BaseType::Decimal => Literal::decimal(Decimal::from_str(lexical).map_err(|_| bad())?),
        BaseType::Integer => Literal::integer(lexical.parse().map_err(|_| bad())?),
        BaseType::String => Literal::string(lexical.clone()),
        BaseType::Date => Literal::date(NaiveDate::parse_from_str(lexical, "%Y-%m-%d").map_err(|_| bad())?),
    })
}

fn schema_err(loc: Loc, source: crate::ontology::OntologyError) -> InteropError {
    InteropError::Schema { line: loc.line, source }
}

/// Reads a store written by [`export_turtle`].
pub fn import_turtle(bytes: &[u8]) -> Result<InstanceStore, InteropError> {
    import_turtle_with(bytes, &TurtleConfig::default())
}

pub fn import_turtle_with(bytes: &[u8], config: &TurtleConfig) -> Result<InstanceStore, InteropError> {
    let text =
        std::str::from_utf8(bytes).map_err(|_| parse_err(Loc { line: 1, col: 1 }, "input is not valid UTF-8"))?;
    let toks = lex(text)?;
    let end = Loc { line: text.lines().count().max(1), col: 1 };
    let triples = Reader { toks, at: 0, prefixes: BTreeMap::new(), config, end }.statements()?;

    let mut classes: BTreeMap<TermId, (Loc, BTreeSet<(TermId, Loc)>, Option<String>)> = BTreeMap::new();
    let mut props: BTreeMap<TermId, PropInfo> = BTreeMap::new();
    let mut aliases: Vec<(TermId, TermId, Loc)> = Vec::new();
    let mut individuals: BTreeSet<TermId> = BTreeSet::new();
    let mut typing: Vec<(TermId, TermId, Loc)> = Vec::new();
    let mut facts: Vec<(TermId, TermId, Object, Loc)> = Vec::new();

    // Class and property declarations may follow their first use.
    for t in &triples {
        if let ((Ns::Schema, s), (Ns::Rdf, p), Node::Iri(Ns::Owl, o)) = (&t.subject, &t.predicate, &t.object) {
            if p == "type" && o == "Class" {
                classes.entry(term_at(s, t.loc)?).or_insert((t.loc, BTreeSet::new(), None));
            }
        }
    }

    for t in &triples {
        let loc = t.object_loc;
        let bad = || unsupported(t.object_loc, format!("{:?} {:?} {:?}", t.subject, t.predicate, t.object));
        match (&t.subject, &t.predicate) {
            ((Ns::Schema, s), (ns, p)) => {
                let id = term_at(s, t.loc)?;
                match (ns, p.as_str(), &t.object) {
                    (Ns::Rdf, "type", Node::Iri(Ns::Owl, o)) => match o.as_str() {
                        "Class" => {}
                        "ObjectProperty" => props.entry(id).or_default().object = true,
                        "DatatypeProperty" => props.entry(id).or_default().data = true,
                        "FunctionalProperty" => props.entry(id).or_default().functional = true,
                        _ => return Err(bad()),
                    },
                    (Ns::Rdfs, "subClassOf", Node::Iri(Ns::Schema, o)) => {
                        let entry = classes.get_mut(&id).ok_or_else(|| {
                            parse_err(t.loc, format!("`{id}` has a superclass but is not declared a class"))
                        })?;
                        entry.1.insert((term_at(o, loc)?, loc));
                    }
                    (Ns::Rdfs, "comment", node) => {
                        let entry = classes.get_mut(&id).ok_or_else(bad)?;
                        entry.2 = Some(literal_string(node, loc)?);
                    }
                    (Ns::Rdfs, "domain", Node::Iri(Ns::Schema, o)) => {
                        props.entry(id).or_default().domain.insert(term_at(o, loc)?);
                    }
                    (Ns::Rdfs, "range", Node::Iri(Ns::Schema, o)) => {
                        props.entry(id).or_default().range_classes.insert(term_at(o, loc)?);
                    }
                    (Ns::Rdfs, "range", Node::Iri(Ns::Xsd, o)) => {
                        let base = BaseType::from_xsd_name(o).ok_or_else(bad)?;
                        props.entry(id).or_default().range_xsd = Some(base);
                    }
                    (Ns::Kg, "unit", node) => {
                        let label = literal_string(node, loc)?;
                        let unit =
                            Unit::from_str(&label).map_err(|_| parse_err(loc, format!("unknown unit `{label}`")))?;
                        props.entry(id).or_default().unit = Some(unit);
                    }
                    (Ns::Kg, bound @ ("minInclusive" | "minExclusive" | "maxInclusive" | "maxExclusive"), node) => {
                        let v = literal_decimal(node, loc)?;
                        let info = props.entry(id).or_default();
                        let inclusive = bound.ends_with("Inclusive");
                        if bound.starts_with("min") {
                            info.lower = Some((v, inclusive));
                        } else {
                            info.upper = Some((v, inclusive));
                        }
                    }
                    (Ns::Kg, "upperNote", node) => {
                        props.entry(id).or_default().upper_note = Some(literal_string(node, loc)?);
                    }
                    (Ns::Owl, "equivalentClass" | "equivalentProperty", Node::Iri(Ns::Schema, o)) => {
                        aliases.push((id, term_at(o, loc)?, t.loc));
                    }
                    _ => return Err(bad()),
                }
                if let Some(info) = props.get_mut(s.as_str()) {
                    info.loc.get_or_insert(t.loc);
                }
            }
            ((Ns::Instance, s), (Ns::Rdf, p)) if p == "type" => {
                let id = term_at(s, t.loc)?;
                individuals.insert(id.clone());
                match &t.object {
                    Node::Iri(Ns::Owl, o) if o == "NamedIndividual" => {}
                    Node::Iri(Ns::Schema, c) => typing.push((id, term_at(c, loc)?, loc)),
                    _ => return Err(bad()),
                }
            }
            ((Ns::Instance, s), (Ns::Schema, p)) => {
                let id = term_at(s, t.loc)?;
                individuals.insert(id.clone());
                let object = match &t.object {
                    Node::Iri(Ns::Instance, o) => {
                        let o = term_at(o, loc)?;
                        individuals.insert(o.clone());
                        Object::Instance(o)
                    }
                    node @ Node::Literal { .. } => Object::Literal(to_literal(node, loc)?),
                    _ => return Err(bad()),
                };
                facts.push((id, term_at(p, loc)?, object, loc));
            }
            _ => return Err(bad()),
        }
    }

    let mut ont = Ontology::new();
    for (id, (loc, _, definition)) in &classes {
        ont.define_class_def(ClassDef { id: id.clone(), parents: BTreeSet::new(), definition: definition.clone() })
            .map_err(|e| schema_err(*loc, e))?;
    }
    for (id, (_, parents, _)) in &classes {
        for (parent, loc) in parents {
            ont.add_parent(id, parent).map_err(|e| schema_err(*loc, e))?;
        }
    }
    for (id, info) in props {
        let loc = info.loc.unwrap_or(Loc { line: 1, col: 1 });
        let range = match (info.object, info.data, info.range_xsd) {
            (true, false, None) => PropertyRange::Classes(info.range_classes),
            (false, true, Some(base)) if info.range_classes.is_empty() => {
                let restriction = if info.lower.is_some() || info.upper.is_some() {
                    let mut r = NumericRestriction::new(
                        info.lower.map(|l| l.0),
                        info.upper.map(|u| u.0),
                        info.lower.is_some_and(|l| l.1),
                        info.upper.is_some_and(|u| u.1),
                    )
                    .map_err(|e| schema_err(loc, e))?;
                    r.upper_note = info.upper_note;
                    Some(r)
                } else {
                    None
                };
                PropertyRange::Datatype(
                    DatatypeSpec::new(base, info.unit, restriction).map_err(|e| schema_err(loc, e))?,
                )
            }
            _ => {
                return Err(parse_err(
                    loc,
                    format!("property `{id}` needs exactly one of owl:ObjectProperty or owl:DatatypeProperty with a matching range"),
                ))
            }
        };
        let def = PropertyDef { id, domain: info.domain, range, functional: info.functional };
        ont.define_property(def).map_err(|e| schema_err(loc, e))?;
    }
    for (alias, target, loc) in aliases {
        ont.add_alias(alias, &target).map_err(|e| schema_err(loc, e))?;
    }

    let mut store = InstanceStore::new(ont);
    for i in individuals {
        store.declare_instance(i);
    }
    for (i, class, loc) in typing {
        store.assert(Assertion::instance_of(i, class)).map_err(|e| schema_err(loc, e))?;
    }
    for (s, p, o, loc) in facts {
        store
            .assert(Assertion { subject: s, predicate: Predicate::Property(p), object: o })
            .map_err(|e| schema_err(loc, e))?;
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::term;
    use crate::schema::{build_ucsso, ModelingMode};

    #[test]
    fn empty_store_is_prefix_block() {
        let text = export_turtle(&InstanceStore::new(Ontology::new()));
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().all(|l| l.starts_with("@prefix")));
        assert_eq!(import_turtle(text.as_bytes()).unwrap(), InstanceStore::new(Ontology::new()));
    }

    #[test]
    fn empty_file_is_empty_store() {
        assert_eq!(import_turtle(b"").unwrap(), InstanceStore::new(Ontology::new()));
    }

    #[test]
    fn schema_round_trips() {
        for mode in ModelingMode::ALL {
            let store = InstanceStore::new(build_ucsso(mode));
            let text = export_turtle(&store);
            assert!(text.contains("sch:Nearly_Circular_Orbit a owl:Class ;\n    rdfs:subClassOf sch:Orbit"));
            assert_eq!(import_turtle(text.as_bytes()).unwrap(), store);
        }
    }

    #[test]
    fn instances_round_trip() {
        let mut store = InstanceStore::new(build_ucsso(ModelingMode::Direct));
        for i in ["S", "Lonely", "Org"] {
            store.declare_instance(term(i));
        }
        store.assert(Assertion::instance_of(term("S"), term("Artificial_Satellite"))).unwrap();
        store.assert(Assertion::instance_of(term("Org"), term("Operator"))).unwrap();
        store.assert(Assertion::link(term("S"), term("has_Operator"), term("Org"))).unwrap();
        let comment = Literal::string("quoted \"x\", back\\slash\nnewline");
        store.assert(Assertion::value(term("S"), term("has_Satellite_Comment_value"), comment)).unwrap();
        let e = Literal::decimal(Decimal::new(20, 3));
        store.assert(Assertion::value(term("S"), term("has_Orbital_Eccentricity_value"), e)).unwrap();
        let d = Literal::date(NaiveDate::from_ymd_opt(2016, 6, 22).unwrap());
        store.assert(Assertion::value(term("S"), term("has_Date_of_Launch"), d)).unwrap();
        let text = export_turtle(&store);
        assert_eq!(import_turtle(text.as_bytes()).unwrap(), store);
        assert_eq!(export_turtle(&import_turtle(text.as_bytes()).unwrap()), text);
    }

    #[test]
    fn unsupported_constructs() {
        let base = "@prefix ind: <urn:satkg:individual#> .\n@prefix sch: <urn:satkg:schema#> .\n";
        for (body, line) in [
            ("ind:S sch:has_Orbit [ sch:x ind:y ] .", 3),
            ("ind:S sch:has_Orbit ( ind:a ind:b ) .", 3),
            ("\n_:b sch:has_Orbit ind:a .", 4),
            ("<http://elsewhere.example/x> sch:p ind:a .", 3),
        ] {
            let text = format!("{base}{body}");
            match import_turtle(text.as_bytes()) {
                Err(InteropError::UnsupportedConstruct { line: l, .. }) => assert_eq!(l, line, "{body}"),
                other => panic!("{body}: {other:?}"),
            }
        }
    }

    #[test]
    fn parse_errors_have_locations() {
        match import_turtle(b"@prefix sch: <urn:satkg:schema#> .\nsch:A a owl:Class") {
            Err(InteropError::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn custom_namespaces() {
        let cfg = TurtleConfig {
            schema_iri: "http://purl.example.org/ucsso#".into(),
            instance_iri: "http://purl.example.org/ucssd#".into(),
        };
        let store = InstanceStore::new(build_ucsso(ModelingMode::Direct));
        let text = export_turtle_with(&store, &cfg);
        assert!(text.contains("@prefix sch: <http://purl.example.org/ucsso#> ."));
        assert_eq!(import_turtle_with(text.as_bytes(), &cfg).unwrap(), store);
        assert!(import_turtle(text.as_bytes()).is_err());
    }
}
