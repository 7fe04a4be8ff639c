//! Per-row resolution of catalog cells into assertions.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use chrono::NaiveDate;
use rust_decimal::Decimal;

use super::csv::RawRecord;
use super::error::{FieldError, FieldErrorKind, IngestError};
use crate::ontology::{sanitize_instance_name, term, Assertion, Literal, Ontology, TermId};
use crate::schema::vocab::*;
use crate::schema::{build_ucsso, ModelingMode};

pub const COL_NAME: &str = "Name of Satellite";
pub const COL_ALTERNATE_NAMES: &str = "Alternate Names";
pub const COL_UN_REGISTRY: &str = "Country/Org of UN Registry";
pub const COL_OPERATOR_COUNTRY: &str = "Country of Operator/Owner";
pub const COL_OPERATOR: &str = "Operator/Owner";
pub const COL_USERS: &str = "Users";
pub const COL_PURPOSE: &str = "Purpose";
pub const COL_DETAILED_PURPOSE: &str = "Detailed Purpose";
pub const COL_ORBIT_CLASS: &str = "Class of Orbit";
pub const COL_ORBIT_TYPE: &str = "Type of Orbit";
pub const COL_LAUNCH_DATE: &str = "Date of Launch";
pub const COL_LIFETIME: &str = "Expected Lifetime";
pub const COL_CONTRACTOR: &str = "Contractor";
pub const COL_CONTRACTOR_COUNTRY: &str = "Country of Contractor";
pub const COL_LAUNCH_SITE: &str = "Launch Site";
pub const COL_LAUNCH_VEHICLE: &str = "Launch Vehicle";
pub const COL_COSPAR: &str = "COSPAR Number";
pub const COL_NORAD: &str = "NORAD Number";
pub const COL_COMMENTS: &str = "Comments";

/// Country names recognized in the registry column. Anything else is an
/// organization.
pub const COUNTRY_NAMES: &[&str] = &[
    "Algeria",
    "Angola",
    "Argentina",
    "Australia",
    "Austria",
    "Azerbaijan",
    "Bangladesh",
    "Belarus",
    "Belgium",
    "Bhutan",
    "Bolivia",
    "Brazil",
    "Bulgaria",
    "Canada",
    "Chile",
    "China",
    "Colombia",
    "Costa Rica",
    "Czech Republic",
    "Denmark",
    "Ecuador",
    "Egypt",
    "Estonia",
    "Ethiopia",
    "Finland",
    "France",
    "Germany",
    "Ghana",
    "Greece",
    "Hungary",
    "India",
    "Indonesia",
    "Iran",
    "Iraq",
    "Ireland",
    "Israel",
    "Italy",
    "Japan",
    "Jordan",
    "Kazakhstan",
    "Kenya",
    "Kuwait",
    "Laos",
    "Latvia",
    "Lithuania",
    "Luxembourg",
    "Malaysia",
    "Mexico",
    "Mongolia",
    "Morocco",
    "Nepal",
    "Netherlands",
    "New Zealand",
    "Nigeria",
    "North Korea",
    "Norway",
    "Pakistan",
    "Paraguay",
    "Peru",
    "Philippines",
    "Poland",
    "Portugal",
    "Qatar",
    "Romania",
    "Russia",
    "Rwanda",
    "Saudi Arabia",
    "Singapore",
    "Slovakia",
    "Slovenia",
    "South Africa",
    "South Korea",
    "Spain",
    "Sri Lanka",
    "Sudan",
    "Sweden",
    "Switzerland",
    "Taiwan",
    "Thailand",
    "Tunisia",
    "Turkey",
    "Turkmenistan",
    "UAE",
    "UK",
    "Ukraine",
    "United Arab Emirates",
    "United Kingdom",
    "United States",
    "Uruguay",
    "USA",
    "Venezuela",
    "Vietnam",
];

/// Cell values that mean "no information".
const SENTINELS: [&str; 5] = ["nr", "n/a", "unknown", "none", "-"];

pub fn is_sentinel(cell: &str) -> bool {
    let c = cell.trim().to_ascii_lowercase();
    c.is_empty() || SENTINELS.contains(&c.as_str()) || c.starts_with("nr (")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolveConfig {
    /// Separator for Users, Operator/Owner, Contractor and their countries.
    pub multi_separator: String,
    pub alternate_name_separator: String,
    pub countries: BTreeSet<String>,
}

impl Default for ResolveConfig {
    fn default() -> Self {
        ResolveConfig {
            multi_separator: "/".into(),
            alternate_name_separator: ",".into(),
            countries: COUNTRY_NAMES.iter().map(|c| c.to_ascii_lowercase()).collect(),
        }
    }
}

impl ResolveConfig {
    pub fn is_country(&self, name: &str) -> bool {
        self.countries.contains(&name.trim().to_ascii_lowercase())
    }
}

/// An assertion together with the column it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedAssertion {
    pub field: &'static str,
    pub assertion: Assertion,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecordResolution {
    /// None when the name cell is empty or unusable; nothing else resolves then.
    pub satellite: Option<TermId>,
    pub assertions: Vec<ResolvedAssertion>,
    pub errors: Vec<FieldError>,
    /// (field, message)
    pub warnings: Vec<(String, String)>,
}

impl RecordResolution {
    pub fn plain_assertions(&self) -> Vec<Assertion> {
        self.assertions.iter().map(|r| r.assertion.clone()).collect()
    }
}

/// Lowercase alphanumeric words joined by '_'.
fn normalize_label(s: &str) -> String {
    s.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(|w| w.to_ascii_lowercase())
        .collect::<Vec<_>>()
        .join("_")
}

/// Label lookup for the classes under one root. Each class answers to its
/// own name and to its name without `suffix`.
#[derive(Debug, Clone)]
struct ClassLabels {
    by_label: BTreeMap<String, TermId>,
}

impl ClassLabels {
    fn new(ont: &Ontology, root: &str, suffix: &str) -> Self {
        let mut by_label = BTreeMap::new();
        for class in ont.descendants_or_self(root).unwrap_or_default() {
            let name = class.as_str();
            if let Some(stem) = name.strip_suffix(suffix) {
                by_label.entry(normalize_label(stem)).or_insert_with(|| class.clone());
            }
            by_label.insert(normalize_label(name), class.clone());
        }
        ClassLabels { by_label }
    }

    fn lookup(&self, cell: &str) -> Option<&TermId> {
        self.by_label.get(&normalize_label(cell))
    }
}

/// Resolves rows against one ontology and modeling mode.
#[derive(Debug, Clone)]
pub struct Resolver<'a> {
    ont: &'a Ontology,
    mode: ModelingMode,
    config: ResolveConfig,
    orbits: ClassLabels,
    purposes: ClassLabels,
    users: ClassLabels,
}

struct Row<'r> {
    record: &'r RawRecord,
    sat: TermId,
    out: RecordResolution,
}

impl Row<'_> {
    fn cell(&self, column: &str) -> Option<&str> {
        let v = self.record.get(column);
        (!is_sentinel(v)).then_some(v)
    }

    fn push(&mut self, field: &'static str, assertion: Assertion) {
        self.out.assertions.push(ResolvedAssertion { field, assertion });
    }

    fn typed(&mut self, field: &'static str, instance: &TermId, class: &str) {
        self.push(field, Assertion::instance_of(instance.clone(), term(class)));
    }

    fn warn(&mut self, field: &str, message: String) {
        self.out.warnings.push((field.to_string(), message));
    }

    fn error(&mut self, field: &str, kind: FieldErrorKind, message: String) {
        self.out.errors.push(FieldError { field: field.to_string(), kind, message });
    }

    /// An instance named after the row's satellite, e.g. `AAUSat-4_Orbit`.
    fn derived(&self, suffix: &str) -> TermId {
        TermId::new(&format!("{}_{suffix}", self.sat)).expect("satellite names are valid terms")
    }

    /// A shared instance named from a cell value, warning when unusable.
    fn named(&mut self, field: &str, raw: &str) -> Option<TermId> {
        let id = sanitize_instance_name(raw);
        if id.is_none() {
            self.warn(field, format!("`{raw}` has no usable characters for a name"));
        }
        id
    }
}

fn parse_decimal(cell: &str) -> Option<Decimal> {
    let cleaned: String = cell.trim().chars().filter(|c| *c != ',').collect();
    Decimal::from_str(&cleaned).or_else(|_| Decimal::from_scientific(&cleaned)).ok().map(|d| d.normalize())
}

/// ISO-8601 or M/D/YYYY.
pub fn parse_date(cell: &str) -> Option<NaiveDate> {
    let cell = cell.trim();
    NaiveDate::parse_from_str(cell, "%Y-%m-%d").or_else(|_| NaiveDate::parse_from_str(cell, "%m/%d/%Y")).ok()
}

fn parse_lifetime(cell: &str) -> Option<Decimal> {
    let lower = cell.trim().to_ascii_lowercase();
    let number =
        ["years", "year", "yrs.", "yrs", "yr.", "yr"].iter().find_map(|s| lower.strip_suffix(s)).unwrap_or(&lower);
    parse_decimal(number)
}

impl<'a> Resolver<'a> {
    pub fn new(ont: &'a Ontology, mode: ModelingMode, config: ResolveConfig) -> Self {
        Resolver {
            ont,
            mode,
            config,
            orbits: ClassLabels::new(ont, ORBIT, "_Orbit"),
            purposes: ClassLabels::new(ont, PURPOSE, "_Purpose"),
            users: ClassLabels::new(ont, USER, "_User"),
        }
    }

    pub fn mode(&self) -> ModelingMode {
        self.mode
    }

    pub fn ontology(&self) -> &Ontology {
        self.ont
    }

    /// Resolves a row under the satellite name derived from its name cell.
    pub fn resolve(&self, record: &RawRecord) -> RecordResolution {
        match sanitize_instance_name(record.get(COL_NAME)) {
            Some(sat) => self.resolve_as(record, sat),
            None => RecordResolution::default(),
        }
    }

    /// Resolves a row with an explicit satellite instance name.
    pub fn resolve_as(&self, record: &RawRecord, sat: TermId) -> RecordResolution {
        let mut row = Row { record, sat: sat.clone(), out: RecordResolution::default() };
        row.out.satellite = Some(sat.clone());
        row.typed(COL_NAME, &sat, ARTIFICIAL_SATELLITE);

        self.names(&mut row);
        self.registry(&mut row);
        self.operators(&mut row);
        self.users(&mut row);
        self.purpose(&mut row);
        self.orbit_and_parameters(&mut row);
        self.launch(&mut row);
        self.contractors(&mut row);
        self.identifiers_and_comments(&mut row);
        row.out
    }

    fn split<'c>(&self, cell: &'c str, sep: &str) -> Vec<&'c str> {
        cell.split(sep).map(str::trim).filter(|p| !is_sentinel(p)).collect()
    }

    fn names(&self, row: &mut Row) {
        let sat = row.sat.clone();
        let name = row.derived("Name");
        row.typed(COL_NAME, &name, SATELLITE_NAME);
        row.push(COL_NAME, Assertion::link(sat.clone(), term(HAS_IDENTIFIER), name.clone()));
        let raw = row.record.get(COL_NAME).to_string();
        row.push(COL_NAME, Assertion::value(name, term(HAS_IDENTIFIER_VALUE), Literal::string(raw)));

        let Some(cell) = row.cell(COL_ALTERNATE_NAMES).map(str::to_string) else {
            return;
        };
        for (i, alt) in self.split(&cell, &self.config.alternate_name_separator).into_iter().enumerate() {
            let id = row.derived(&format!("Alternate_Name_{}", i + 1));
            row.typed(COL_ALTERNATE_NAMES, &id, ALTERNATE_SATELLITE_NAME);
            row.push(COL_ALTERNATE_NAMES, Assertion::link(sat.clone(), term(HAS_IDENTIFIER), id.clone()));
            row.push(COL_ALTERNATE_NAMES, Assertion::value(id, term(HAS_IDENTIFIER_VALUE), Literal::string(alt)));
        }
    }

    fn registry(&self, row: &mut Row) {
        let Some(cell) = row.cell(COL_UN_REGISTRY).map(str::to_string) else {
            return;
        };
        let Some(id) = row.named(COL_UN_REGISTRY, &cell) else {
            return;
        };
        let (class, relation) = if self.config.is_country(&cell) {
            (COUNTRY, REGISTERED_COUNTRY)
        } else {
            (ORGANIZATION, REGISTERED_ORGANIZATION)
        };
        row.typed(COL_UN_REGISTRY, &id, class);
        row.push(COL_UN_REGISTRY, Assertion::link(id, term(relation), row.sat.clone()));
    }

    /// Country instances for a country column, typed Country.
    fn countries(&self, row: &mut Row, column: &'static str) -> Vec<TermId> {
        let Some(cell) = row.cell(column).map(str::to_string) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for part in self.split(&cell, &self.config.multi_separator) {
            if let Some(id) = row.named(column, part) {
                row.typed(column, &id, COUNTRY);
                out.push(id);
            }
        }
        out
    }

    /// Links each party to its country of origin. Equal counts pair up by
    /// position; otherwise every party gets every country.
    fn link_countries(row: &mut Row, column: &'static str, parties: &[TermId], countries: &[TermId]) {
        let origin = term(HAS_COUNTRY_OF_ORIGIN);
        if parties.len() == countries.len() && parties.len() > 1 {
            for (p, c) in parties.iter().zip(countries) {
                row.push(column, Assertion::link(p.clone(), origin.clone(), c.clone()));
            }
        } else {
            for p in parties {
                for c in countries {
                    row.push(column, Assertion::link(p.clone(), origin.clone(), c.clone()));
                }
            }
        }
    }

    fn operators(&self, row: &mut Row) {
        let mut parties = Vec::new();
        if let Some(cell) = row.cell(COL_OPERATOR).map(str::to_string) {
            for part in self.split(&cell, &self.config.multi_separator) {
                if let Some(id) = row.named(COL_OPERATOR, part) {
                    row.typed(COL_OPERATOR, &id, OPERATOR);
                    row.typed(COL_OPERATOR, &id, OWNER);
                    row.push(COL_OPERATOR, Assertion::link(row.sat.clone(), term(HAS_OPERATOR), id.clone()));
                    row.push(COL_OPERATOR, Assertion::link(row.sat.clone(), term(HAS_OWNER), id.clone()));
                    parties.push(id);
                }
            }
        }
        let countries = self.countries(row, COL_OPERATOR_COUNTRY);
        if parties.is_empty() {
            // No organization named: the country belongs to the satellite itself.
            parties.push(row.sat.clone());
        }
        Self::link_countries(row, COL_OPERATOR_COUNTRY, &parties, &countries);
    }

    fn users(&self, row: &mut Row) {
        let Some(cell) = row.cell(COL_USERS).map(str::to_string) else {
            return;
        };
        for part in self.split(&cell, &self.config.multi_separator) {
            match self.users.lookup(part) {
                Some(class) => {
                    let id = row.derived(class.as_str());
                    row.typed(COL_USERS, &id, class.as_str());
                    row.push(COL_USERS, Assertion::link(row.sat.clone(), term(HAS_USER), id));
                }
                None => row.warn(COL_USERS, format!("`{part}` matches no user class")),
            }
        }
    }

    /// Purpose classes named by a cell: the whole cell if it matches,
    /// otherwise each separated part that matches.
    fn purpose_classes(&self, cell: &str) -> (Vec<TermId>, Vec<String>) {
        if let Some(c) = self.purposes.lookup(cell) {
            return (vec![c.clone()], Vec::new());
        }
        let mut found = Vec::new();
        let mut unmatched = Vec::new();
        for part in self.split(cell, &self.config.multi_separator) {
            match self.purposes.lookup(part) {
                Some(c) if !found.contains(c) => found.push(c.clone()),
                Some(_) => {}
                None => unmatched.push(part.to_string()),
            }
        }
        (found, unmatched)
    }

    /// The function-based satellite class a purpose implies, searching up
    /// the purpose hierarchy for overlay-added purposes.
    fn satellite_class_for(&self, purpose: &TermId) -> Option<&'static str> {
        let mut chain = vec![purpose.clone()];
        chain.extend(self.ont.ancestors(purpose.as_str()).unwrap_or_default());
        chain.iter().find_map(|c| PURPOSE_LEAVES.iter().find(|(p, _)| *p == c.as_str()).map(|(_, s)| *s))
    }

    fn purpose(&self, row: &mut Row) {
        let detailed = row.cell(COL_DETAILED_PURPOSE).map(str::to_string);
        let general = row.cell(COL_PURPOSE).map(str::to_string);
        if detailed.is_none() && general.is_none() {
            return;
        }
        let mut classes = Vec::new();
        let mut field = COL_PURPOSE;
        for (column, cell) in [(COL_DETAILED_PURPOSE, &detailed), (COL_PURPOSE, &general)] {
            let Some(cell) = cell else { continue };
            let (found, unmatched) = self.purpose_classes(cell);
            for u in unmatched {
                row.warn(column, format!("`{u}` matches no purpose class"));
            }
            if !found.is_empty() {
                classes = found;
                field = column;
                break;
            }
        }
        let id = row.derived("Purpose");
        if classes.is_empty() {
            row.typed(field, &id, PURPOSE);
        }
        for class in &classes {
            row.typed(field, &id, class.as_str());
            if let Some(sat_class) = self.satellite_class_for(class) {
                let sat = row.sat.clone();
                row.typed(field, &sat, sat_class);
            }
        }
        row.push(field, Assertion::link(row.sat.clone(), term(HAS_PURPOSE), id));
    }

    fn orbit_cell(&self, row: &mut Row, column: &'static str) -> (bool, Option<TermId>) {
        let Some(cell) = row.cell(column).map(str::to_string) else {
            return (false, None);
        };
        match self.orbits.lookup(&cell) {
            Some(c) => (true, Some(c.clone())),
            None => {
                row.error(column, FieldErrorKind::UnknownOrbitClass, format!("`{cell}` matches no orbit class"));
                (true, None)
            }
        }
    }

    fn orbit_and_parameters(&self, row: &mut Row) {
        let (class_present, by_class) = self.orbit_cell(row, COL_ORBIT_CLASS);
        let (type_present, by_type) = self.orbit_cell(row, COL_ORBIT_TYPE);

        let mut values = Vec::new();
        for p in NUMERIC_PARAMETERS.iter() {
            let Some(cell) = row.cell(p.column).map(str::to_string) else {
                continue;
            };
            match parse_decimal(&cell) {
                Some(v) => values.push((p, v)),
                None => row.error(p.column, FieldErrorKind::UnparsableNumber, format!("`{cell}` is not a number")),
            }
        }
        let any_orbital = values.iter().any(|(p, _)| p.orbital);

        let orbit_class = match (by_class, by_type) {
            (Some(a), Some(b)) if self.ont.subsumed_by(a.as_str(), b.as_str()) => Some(a),
            (Some(a), Some(b)) if self.ont.subsumed_by(b.as_str(), a.as_str()) => Some(b),
            (Some(a), Some(b)) => {
                row.warn(COL_ORBIT_TYPE, format!("orbit class {a} and type {b} are unrelated; using {b}"));
                Some(b)
            }
            (a, b) => a.or(b),
        };
        if orbit_class.is_some() || class_present || type_present || any_orbital {
            let field = if type_present { COL_ORBIT_TYPE } else { COL_ORBIT_CLASS };
            let orbit = row.derived("Orbit");
            let class = orbit_class.map_or_else(|| ORBIT.to_string(), |c| c.to_string());
            row.typed(field, &orbit, &class);
            row.push(field, Assertion::link(row.sat.clone(), term(HAS_ORBIT), orbit));
        }

        for (p, v) in &values {
            let mut lit = Literal::decimal(*v);
            if let Some(u) = p.unit {
                lit = lit.with_unit(u);
            }
            match self.mode {
                ModelingMode::Direct => {
                    row.push(p.column, Assertion::value(row.sat.clone(), term(p.value_property), lit));
                }
                ModelingMode::Reified => {
                    let inst = row.derived(p.class);
                    row.typed(p.column, &inst, p.class);
                    row.push(p.column, Assertion::link(row.sat.clone(), term(p.object_property), inst.clone()));
                    row.push(p.column, Assertion::value(inst, term(p.value_property), lit));
                }
            }
        }

        let value_of = |class: &str| values.iter().find(|(p, _)| p.class == class).map(|(_, v)| *v);
        if let (Some(perigee), Some(apogee)) = (value_of("Perigee"), value_of("Apogee")) {
            if perigee > apogee {
                row.warn("Perigee (km)", format!("perigee {perigee} km exceeds apogee {apogee} km"));
            }
        }
    }

    fn launch(&self, row: &mut Row) {
        let sat = row.sat.clone();
        if let Some(cell) = row.cell(COL_LAUNCH_DATE).map(str::to_string) {
            match parse_date(&cell) {
                Some(d) => {
                    row.push(COL_LAUNCH_DATE, Assertion::value(sat.clone(), term(HAS_DATE_OF_LAUNCH), Literal::date(d)))
                }
                None => row.error(
                    COL_LAUNCH_DATE,
                    FieldErrorKind::UnparsableDate,
                    format!("`{cell}` is neither YYYY-MM-DD nor M/D/YYYY"),
                ),
            }
        }
        if let Some(cell) = row.cell(COL_LIFETIME).map(str::to_string) {
            match parse_lifetime(&cell) {
                Some(v) => row.push(
                    COL_LIFETIME,
                    Assertion::value(sat.clone(), term(HAS_EXPECTED_LIFETIME), Literal::decimal(v)),
                ),
                None => row.error(
                    COL_LIFETIME,
                    FieldErrorKind::UnparsableNumber,
                    format!("`{cell}` is not a number of years"),
                ),
            }
        }
        for (column, class, relation) in
            [(COL_LAUNCH_SITE, LAUNCH_SITE, HAS_LAUNCH_SITE), (COL_LAUNCH_VEHICLE, LAUNCH_VEHICLE, HAS_LAUNCH_VEHICLE)]
        {
            let Some(cell) = row.cell(column).map(str::to_string) else {
                continue;
            };
            if let Some(id) = row.named(column, &cell) {
                row.typed(column, &id, class);
                row.push(column, Assertion::link(sat.clone(), term(relation), id));
            }
        }
    }

    fn contractors(&self, row: &mut Row) {
        let mut parties = Vec::new();
        if let Some(cell) = row.cell(COL_CONTRACTOR).map(str::to_string) {
            for part in self.split(&cell, &self.config.multi_separator) {
                if let Some(id) = row.named(COL_CONTRACTOR, part) {
                    row.typed(COL_CONTRACTOR, &id, CONTRACTOR);
                    row.push(COL_CONTRACTOR, Assertion::link(row.sat.clone(), term(HAS_CONTRACTOR), id.clone()));
                    parties.push(id);
                }
            }
        }
        if parties.is_empty() {
            if row.cell(COL_CONTRACTOR_COUNTRY).is_some() {
                row.warn(COL_CONTRACTOR_COUNTRY, "country given without a contractor; ignored".into());
            }
            return;
        }
        let countries = self.countries(row, COL_CONTRACTOR_COUNTRY);
        Self::link_countries(row, COL_CONTRACTOR_COUNTRY, &parties, &countries);
    }

    fn identifiers_and_comments(&self, row: &mut Row) {
        for (column, property) in [
            (COL_COSPAR, HAS_COSPAR_NUMBER),
            (COL_NORAD, HAS_NORAD_NUMBER),
            (COL_COMMENTS, HAS_SATELLITE_COMMENT_VALUE),
        ] {
            if let Some(cell) = row.cell(column).map(str::to_string) {
                row.push(column, Assertion::value(row.sat.clone(), term(property), Literal::string(cell)));
            }
        }
    }
}

/// Resolves one row against the built-in schema for `mode`.
///
/// Fails on the first unresolvable cell. [`Resolver::resolve`] is the
/// lenient form used by batch ingest.
pub fn resolve_record(record: &RawRecord, mode: ModelingMode) -> Result<Vec<Assertion>, IngestError> {
    let ont = build_ucsso(mode);
    let resolution = Resolver::new(&ont, mode, ResolveConfig::default()).resolve(record);
    if resolution.satellite.is_none() {
        return Err(IngestError::MissingName { row: record.row_number });
    }
    if let Some(e) = resolution.errors.into_iter().next() {
        return Err(e.into_error(record.row_number));
    }
    Ok(resolution.assertions.into_iter().map(|r| r.assertion).collect())
}
