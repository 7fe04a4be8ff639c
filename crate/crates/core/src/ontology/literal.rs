use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use rust_decimal::Decimal;

use super::OntologyError;

/// Unit label attached to numeric catalog values. No conversion is ever done.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Km,
    Degrees,
    Minutes,
    Kg,
    Watts,
    Years,
}

impl Unit {
    pub const ALL: [Unit; 6] = [Unit::Km, Unit::Degrees, Unit::Minutes, Unit::Kg, Unit::Watts, Unit::Years];

    pub fn label(self) -> &'static str {
        match self {
            Unit::Km => "km",
            Unit::Degrees => "degrees",
            Unit::Minutes => "minutes",
            Unit::Kg => "kg",
            Unit::Watts => "watts",
            Unit::Years => "years",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Unit {
    type Err = OntologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Unit::ALL
            .into_iter()
            .find(|u| u.label() == s)
            .ok_or_else(|| OntologyError::InvalidDatatype(format!("unknown unit `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseType {
    Decimal,
    Integer,
    String,
    Date,
}

impl BaseType {
    pub fn is_numeric(self) -> bool {
        matches!(self, BaseType::Decimal | BaseType::Integer)
    }

    pub fn xsd_name(self) -> &'static str {
        match self {
            BaseType::Decimal => "decimal",
            BaseType::Integer => "integer",
            BaseType::String => "string",
            BaseType::Date => "date",
        }
    }

    pub fn from_xsd_name(name: &str) -> Option<Self> {
        Some(match name {
            "decimal" => BaseType::Decimal,
            "integer" => BaseType::Integer,
            "string" => BaseType::String,
            "date" => BaseType::Date,
            _ => return None,
        })
    }
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.xsd_name())
    }
}

/// Interval bound on a numeric data property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericRestriction {
    pub lower: Option<Decimal>,
    pub upper: Option<Decimal>,
    pub lower_inclusive: bool,
    pub upper_inclusive: bool,
    /// Emitted as a warning when a value sits exactly on an inclusive upper bound.
    pub upper_note: Option<String>,
}

impl NumericRestriction {
    pub fn closed(lower: Decimal, upper: Decimal) -> Result<Self, OntologyError> {
        Self::new(Some(lower), Some(upper), true, true)
    }

    pub fn at_most(upper: Decimal) -> Self {
        NumericRestriction {
            lower: None,
            upper: Some(upper),
            lower_inclusive: false,
            upper_inclusive: true,
            upper_note: None,
        }
    }

    pub fn greater_than(lower: Decimal) -> Self {
        NumericRestriction {
            lower: Some(lower),
            upper: None,
            lower_inclusive: false,
            upper_inclusive: false,
            upper_note: None,
        }
    }

    pub fn new(
        lower: Option<Decimal>,
        upper: Option<Decimal>,
        lower_inclusive: bool,
        upper_inclusive: bool,
    ) -> Result<Self, OntologyError> {
        if let (Some(lo), Some(hi)) = (lower, upper) {
            if lo > hi {
                return Err(OntologyError::InvalidDatatype(format!(
                    "restriction lower bound {lo} exceeds upper bound {hi}"
                )));
            }
        }
        Ok(NumericRestriction { lower, upper, lower_inclusive, upper_inclusive, upper_note: None })
    }

    pub fn with_upper_note(mut self, note: impl Into<String>) -> Self {
        self.upper_note = Some(note.into());
        self
    }

    pub fn contains(&self, value: Decimal) -> bool {
        let lower_ok = match self.lower {
            None => true,
            Some(lo) if self.lower_inclusive => value >= lo,
            Some(lo) => value > lo,
        };
        let upper_ok = match self.upper {
            None => true,
            Some(hi) if self.upper_inclusive => value <= hi,
            Some(hi) => value < hi,
        };
        lower_ok && upper_ok
    }

    /// Note to report for `value`, if it lands on the noted upper bound.
    pub fn note_for(&self, value: Decimal) -> Option<&str> {
        match (self.upper, &self.upper_note) {
            (Some(hi), Some(note)) if self.upper_inclusive && value == hi => Some(note),
            _ => None,
        }
    }
}

impl fmt::Display for NumericRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lower {
            Some(lo) => write!(f, "{}{lo}", if self.lower_inclusive { '[' } else { '(' })?,
            None => f.write_str("(-inf")?,
        }
        f.write_str(", ")?;
        match self.upper {
            Some(hi) => write!(f, "{hi}{}", if self.upper_inclusive { ']' } else { ')' }),
            None => f.write_str("+inf)"),
        }
    }
}

/// Value space of a data property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatatypeSpec {
    pub base: BaseType,
    pub unit: Option<Unit>,
    pub restriction: Option<NumericRestriction>,
}

impl DatatypeSpec {
    pub fn new(
        base: BaseType,
        unit: Option<Unit>,
        restriction: Option<NumericRestriction>,
    ) -> Result<Self, OntologyError> {
        if restriction.is_some() && !base.is_numeric() {
            return Err(OntologyError::InvalidDatatype(format!("restriction on non-numeric base type {base}")));
        }
        Ok(DatatypeSpec { base, unit, restriction })
    }

    pub fn decimal(unit: Option<Unit>) -> Self {
        DatatypeSpec { base: BaseType::Decimal, unit, restriction: None }
    }

    pub fn string() -> Self {
        DatatypeSpec { base: BaseType::String, unit: None, restriction: None }
    }

    pub fn date() -> Self {
        DatatypeSpec { base: BaseType::Date, unit: None, restriction: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiteralValue {
    Integer(i64),
    Decimal(Decimal),
    String(String),
    Date(NaiveDate),
}

impl LiteralValue {
    pub fn base(&self) -> BaseType {
        match self {
            LiteralValue::Integer(_) => BaseType::Integer,
            LiteralValue::Decimal(_) => BaseType::Decimal,
            LiteralValue::String(_) => BaseType::String,
            LiteralValue::Date(_) => BaseType::Date,
        }
    }

    pub fn as_decimal(&self) -> Option<Decimal> {
        match self {
            LiteralValue::Integer(i) => Some(Decimal::from(*i)),
            LiteralValue::Decimal(d) => Some(*d),
            _ => None,
        }
    }

    /// Lexical form as used in exports and query results.
    pub fn lexical(&self) -> String {
        match self {
            LiteralValue::Integer(i) => i.to_string(),
            LiteralValue::Decimal(d) => d.to_string(),
            LiteralValue::String(s) => s.clone(),
            LiteralValue::Date(d) => d.format("%Y-%m-%d").to_string(),
        }
    }
}

/// A typed value, optionally carrying a unit label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub value: LiteralValue,
    pub unit: Option<Unit>,
}

impl Literal {
    pub fn decimal(value: Decimal) -> Self {
        Literal { value: LiteralValue::Decimal(value), unit: None }
    }

    pub fn integer(value: i64) -> Self {
        Literal { value: LiteralValue::Integer(value), unit: None }
    }

    pub fn string(value: impl Into<String>) -> Self {
        Literal { value: LiteralValue::String(value.into()), unit: None }
    }

    pub fn date(value: NaiveDate) -> Self {
        Literal { value: LiteralValue::Date(value), unit: None }
    }

    pub fn with_unit(mut self, unit: Unit) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn as_decimal(&self) -> Option<Decimal> {
        self.value.as_decimal()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            LiteralValue::String(s) => write!(f, "{s:?}")?,
            other => f.write_str(&other.lexical())?,
        }
        if let Some(unit) = self.unit {
            write!(f, " {unit}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rust_decimal::prelude::FromStr;

    fn dec(s: &str) -> Decimal {
        Decimal::from_str(s).unwrap()
    }

    #[test]
    fn closed_interval_membership() {
        let r = NumericRestriction::closed(dec("0"), dec("1")).unwrap();
        assert!(r.contains(dec("0")));
        assert!(r.contains(dec("1")));
        assert!(!r.contains(dec("-0.01")));
        assert!(!r.contains(dec("1.01")));
        assert_eq!(r.to_string(), "[0, 1]");
    }

    #[test]
    fn open_bounds() {
        let r = NumericRestriction::greater_than(dec("0.14"));
        assert!(!r.contains(dec("0.14")));
        assert!(r.contains(dec("0.141")));
        assert!(NumericRestriction::at_most(dec("0.14")).contains(dec("0.14")));
    }

    #[test]
    fn inverted_bounds_rejected() {
        assert!(NumericRestriction::closed(dec("2"), dec("1")).is_err());
    }

    #[test]
    fn restriction_requires_numeric_base() {
        let r = NumericRestriction::at_most(dec("1"));
        assert!(DatatypeSpec::new(BaseType::String, None, Some(r.clone())).is_err());
        assert!(DatatypeSpec::new(BaseType::Integer, None, Some(r)).is_ok());
    }

    #[test]
    fn upper_note_only_on_bound() {
        let r = NumericRestriction::closed(dec("0"), dec("1")).unwrap().with_upper_note("edge");
        assert_eq!(r.note_for(dec("1")), Some("edge"));
        assert_eq!(r.note_for(dec("0.5")), None);
    }
}
