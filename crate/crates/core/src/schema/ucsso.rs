//! The catalog-local satellite ontology, in either modeling mode.

use std::fmt;
use std::str::FromStr;

use rust_decimal::Decimal;

use super::vocab::*;
use crate::ontology::{
    term, BaseType, DatatypeSpec, NumericRestriction, Ontology, OntologyError, PropertyDef, TermId, TermKind, Unit,
};

/// How orbital and other numeric parameters are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelingMode {
    /// Satellite -> parameter instance -> value (two hops).
    Reified,
    /// Satellite -> value (one hop).
    Direct,
}

impl ModelingMode {
    pub const ALL: [ModelingMode; 2] = [ModelingMode::Reified, ModelingMode::Direct];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelingMode::Reified => "reified",
            ModelingMode::Direct => "direct",
        }
    }

    /// Infers the mode an ontology was built for, from how eccentricity is modeled.
    pub fn detect(ont: &Ontology) -> Option<ModelingMode> {
        match ont.resolve(HAS_ORBITAL_ECCENTRICITY) {
            Some((_, TermKind::ObjectProperty)) => Some(ModelingMode::Reified),
            _ if ont.property(HAS_ORBITAL_ECCENTRICITY_VALUE).is_some() => Some(ModelingMode::Direct),
            _ => None,
        }
    }
}

impl fmt::Display for ModelingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reified" => Ok(ModelingMode::Reified),
            "direct" => Ok(ModelingMode::Direct),
            other => Err(format!("unknown modeling mode `{other}` (expected reified or direct)")),
        }
    }
}

fn eccentricity_datatype() -> DatatypeSpec {
    let bounds = NumericRestriction::closed(Decimal::ZERO, Decimal::ONE)
        .expect("0 <= 1")
        .with_upper_note("eccentricity 1 describes a parabolic trajectory rather than a closed orbit");
    DatatypeSpec::new(BaseType::Decimal, None, Some(bounds)).expect("numeric base")
}

fn parameter_datatype(p: &NumericParameter) -> DatatypeSpec {
    if p.class == ORBITAL_ECCENTRICITY {
        eccentricity_datatype()
    } else {
        DatatypeSpec::decimal(p.unit)
    }
}

struct Builder {
    ont: Ontology,
}

impl Builder {
    fn class(&mut self, name: &str, parents: &[&str]) {
        let parents: Vec<TermId> = parents.iter().map(|p| term(p)).collect();
        self.ont.define_class(term(name), &parents).unwrap_or_else(|e| panic!("built-in class {name}: {e}"));
    }

    fn define(&mut self, name: &str, text: &str) {
        self.ont.set_definition(&term(name), text).unwrap_or_else(|e| panic!("built-in definition {name}: {e}"));
    }

    fn object(&mut self, name: &str, domain: &[&str], range: &[&str], functional: bool) {
        let domain: Vec<TermId> = domain.iter().map(|d| term(d)).collect();
        let range: Vec<TermId> = range.iter().map(|r| term(r)).collect();
        let mut def = PropertyDef::object(term(name), &domain, &range);
        def.functional = functional;
        self.ont.define_property(def).unwrap_or_else(|e| panic!("built-in property {name}: {e}"));
    }

    fn data(&mut self, name: &str, domain: &[&str], datatype: DatatypeSpec, functional: bool) {
        let domain: Vec<TermId> = domain.iter().map(|d| term(d)).collect();
        let mut def = PropertyDef::data(term(name), &domain, datatype);
        def.functional = functional;
        self.ont.define_property(def).unwrap_or_else(|e| panic!("built-in property {name}: {e}"));
    }

    fn alias(&mut self, alias: &str, target: &str) {
        self.ont.add_alias(term(alias), &term(target)).unwrap_or_else(|e| panic!("built-in alias {alias}: {e}"));
    }
}

/// Builds the satellite catalog ontology for the given modeling mode.
///
/// Both modes share one class inventory. They differ only in how numeric
/// parameters are attached: reified mode adds one object property per
/// parameter (`has_Perigee`, ...) and puts the value property on the
/// parameter class; direct mode keeps only the value properties, with the
/// satellite (or orbit) as domain.
pub fn build_ucsso(mode: ModelingMode) -> Ontology {
    let mut b = Builder { ont: Ontology::new() };

    b.class(ARTIFICIAL_SATELLITE, &[]);
    b.define(ARTIFICIAL_SATELLITE, "A human-made object placed in orbit.");
    for (_, satellite_class) in PURPOSE_LEAVES {
        b.class(satellite_class, &[ARTIFICIAL_SATELLITE]);
    }

    b.class(ORBIT, &[]);
    b.class(NEARLY_CIRCULAR_ORBIT, &[ORBIT]);
    b.define(NEARLY_CIRCULAR_ORBIT, "An orbit with eccentricity no greater than 0.14.");
    b.class(ELLIPTICAL_ORBIT, &[ORBIT]);
    b.define(ELLIPTICAL_ORBIT, "An orbit with eccentricity greater than 0.14.");
    for (leaf, parent) in ORBIT_LEAVES {
        b.class(leaf, &[parent]);
    }

    b.class(ORBITAL_PROPERTY, &[]);
    for p in NUMERIC_PARAMETERS.iter() {
        if p.orbital {
            b.class(p.class, &[ORBITAL_PROPERTY]);
        } else {
            b.class(p.class, &[]);
        }
    }
    b.define(ORBITAL_ECCENTRICITY, "The shape parameter of an orbit, between 0 and 1 for closed orbits.");

    b.class(PURPOSE, &[]);
    b.define(PURPOSE, "Broad discipline a satellite serves.");
    for (leaf, _) in PURPOSE_LEAVES {
        b.class(leaf, &[PURPOSE]);
    }

    b.class(USER, &[]);
    for user in USER_CLASSES {
        b.class(user, &[USER]);
    }

    for role in [OWNER, OPERATOR, CONTRACTOR, COUNTRY, ORGANIZATION] {
        b.class(role, &[]);
    }
    for org in [COMPANY, UNIVERSITY, SPACE_AGENCY] {
        b.class(org, &[ORGANIZATION]);
    }

    b.class(IDENTIFIER, &[]);
    for id in [SATELLITE_NAME, ALTERNATE_SATELLITE_NAME, COSPAR_NUMBER, NORAD_NUMBER] {
        b.class(id, &[IDENTIFIER]);
    }
    b.define(SATELLITE_NAME, "The current primary name of a satellite.");
    b.define(ALTERNATE_SATELLITE_NAME, "A past name or synonym of a satellite.");

    for misc in [LAUNCH_SITE, LAUNCH_VEHICLE, LAUNCH_DATE, SATELLITE_EXPECTED_LIFETIME, SATELLITE_COMMENT] {
        b.class(misc, &[]);
    }

    let sat = &[ARTIFICIAL_SATELLITE][..];
    let sat_or_orbit = &[ARTIFICIAL_SATELLITE, ORBIT][..];
    let sat_or_vehicle = &[ARTIFICIAL_SATELLITE, LAUNCH_VEHICLE][..];

    b.object(HAS_ORBIT, sat, &[ORBIT], false);
    b.object(HAS_COUNTRY_OF_ORIGIN, &[ARTIFICIAL_SATELLITE, OPERATOR, OWNER, CONTRACTOR], &[COUNTRY], false);
    b.object(REGISTERED_COUNTRY, &[COUNTRY], sat, false);
    b.object(REGISTERED_ORGANIZATION, &[ORGANIZATION], sat, false);
    b.object(HAS_OPERATOR, sat, &[OPERATOR], false);
    b.object(HAS_OWNER, sat, &[OWNER], false);
    b.object(HAS_USER, sat, &[USER], false);
    b.object(HAS_CONTRACTOR, sat, &[CONTRACTOR], false);
    b.object(HAS_IDENTIFIER, sat, &[SATELLITE_NAME, ALTERNATE_SATELLITE_NAME, COSPAR_NUMBER, NORAD_NUMBER], false);
    b.data(HAS_IDENTIFIER_VALUE, &[IDENTIFIER], DatatypeSpec::string(), false);
    b.data(HAS_COSPAR_NUMBER, sat, DatatypeSpec::string(), true);
    b.data(HAS_NORAD_NUMBER, sat, DatatypeSpec::string(), true);
    b.object(HAS_PURPOSE, sat, &[PURPOSE], false);
    b.data(HAS_DATE_OF_LAUNCH, sat_or_vehicle, DatatypeSpec::date(), true);
    b.data(HAS_EXPECTED_LIFETIME, sat_or_vehicle, DatatypeSpec::decimal(Some(Unit::Years)), false);
    b.object(HAS_LAUNCH_SITE, sat, &[LAUNCH_SITE], false);
    b.object(HAS_LAUNCH_VEHICLE, sat, &[LAUNCH_VEHICLE], false);
    b.data(HAS_SATELLITE_COMMENT_VALUE, sat, DatatypeSpec::string(), false);

    match mode {
        ModelingMode::Reified => {
            b.object(HAS_ORBITAL_PROPERTY, sat_or_orbit, &[ORBITAL_PROPERTY], false);
            for p in NUMERIC_PARAMETERS.iter() {
                let bearers = if p.orbital { sat_or_orbit } else { sat };
                b.object(p.object_property, bearers, &[p.class], p.functional);
                b.data(p.value_property, &[p.class], parameter_datatype(p), p.functional);
            }
        }
        ModelingMode::Direct => {
            for p in NUMERIC_PARAMETERS.iter() {
                let bearers = if p.orbital { sat_or_orbit } else { sat };
                b.data(p.value_property, bearers, parameter_datatype(p), p.functional);
            }
        }
    }

    b.alias(FUNCTION, PURPOSE);
    b.alias(HAS_FUNCTION, HAS_PURPOSE);
    b.alias(HAS_ORBIT_TYPE, HAS_ORBIT);
    if mode == ModelingMode::Reified {
        b.alias(HAS_ORBITAL_PARAMETER, HAS_ORBITAL_PROPERTY);
    }
    let mut ont = b.ont;
    register_function_aliases(&mut ont).expect("built-in purpose classes are consistent");
    ont
}

/// Registers `X_Function` as an alias of every `X_Purpose` class under Purpose.
pub fn register_function_aliases(ont: &mut Ontology) -> Result<(), OntologyError> {
    let Ok(purposes) = ont.descendants_or_self(PURPOSE) else {
        return Ok(());
    };
    for class in purposes {
        let Some(stem) = class.as_str().strip_suffix("_Purpose") else {
            continue;
        };
        let alias = TermId::new(&format!("{stem}_Function"))?;
        if ont.resolve(alias.as_str()).is_none() {
            ont.add_alias(alias, &class)?;
        }
    }
    Ok(())
}
