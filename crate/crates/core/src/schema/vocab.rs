//! Names of the built-in schema terms.

use crate::ontology::Unit;

pub const ARTIFICIAL_SATELLITE: &str = "Artificial_Satellite";

pub const ORBIT: &str = "Orbit";
pub const NEARLY_CIRCULAR_ORBIT: &str = "Nearly_Circular_Orbit";
pub const ELLIPTICAL_ORBIT: &str = "Elliptical_Orbit";

pub const ORBITAL_PROPERTY: &str = "Orbital_Property";
pub const ORBITAL_ECCENTRICITY: &str = "Orbital_Eccentricity";

pub const PURPOSE: &str = "Purpose";
pub const FUNCTION: &str = "Function";
pub const USER: &str = "User";
pub const OWNER: &str = "Owner";
pub const OPERATOR: &str = "Operator";
pub const CONTRACTOR: &str = "Contractor";
pub const COUNTRY: &str = "Country";
pub const ORGANIZATION: &str = "Organization";
pub const COMPANY: &str = "Company";
pub const UNIVERSITY: &str = "University";
pub const SPACE_AGENCY: &str = "Space_Agency";

pub const IDENTIFIER: &str = "Identifier";
pub const SATELLITE_NAME: &str = "Satellite_Name";
pub const ALTERNATE_SATELLITE_NAME: &str = "Alternate_Satellite_Name";
pub const COSPAR_NUMBER: &str = "COSPAR_Number";
pub const NORAD_NUMBER: &str = "NORAD_Number";

pub const LAUNCH_SITE: &str = "Launch_Site";
pub const LAUNCH_VEHICLE: &str = "Launch_Vehicle";
pub const LAUNCH_DATE: &str = "Launch_Date";
pub const SATELLITE_EXPECTED_LIFETIME: &str = "Satellite_Expected_Lifetime";
pub const SATELLITE_COMMENT: &str = "Satellite_Comment";

pub const HAS_ORBIT: &str = "has_Orbit";
pub const HAS_ORBIT_TYPE: &str = "has_Orbit_type";
pub const HAS_COUNTRY_OF_ORIGIN: &str = "has_Country_of_Origin";
pub const REGISTERED_COUNTRY: &str = "is_registered_Country_in_UN_Register_of_Space_Objects_for";
pub const REGISTERED_ORGANIZATION: &str = "is_registered_Organization_in_UN_Register_of_Space_Objects_for";
pub const HAS_OPERATOR: &str = "has_Operator";
pub const HAS_OWNER: &str = "has_Owner";
pub const HAS_USER: &str = "has_User";
pub const HAS_CONTRACTOR: &str = "has_Contractor";
pub const HAS_IDENTIFIER: &str = "has_Identifier";
pub const HAS_IDENTIFIER_VALUE: &str = "has_Identifier_value";
pub const HAS_COSPAR_NUMBER: &str = "has_COSPAR_number";
pub const HAS_NORAD_NUMBER: &str = "has_NORAD_number";
pub const HAS_PURPOSE: &str = "has_Purpose";
pub const HAS_FUNCTION: &str = "has_Function";
pub const HAS_ORBITAL_PROPERTY: &str = "has_Orbital_Property";
pub const HAS_ORBITAL_PARAMETER: &str = "has_Orbital_Parameter";
pub const HAS_ORBITAL_ECCENTRICITY: &str = "has_Orbital_Eccentricity";
pub const HAS_ORBITAL_ECCENTRICITY_VALUE: &str = "has_Orbital_Eccentricity_value";
pub const HAS_DATE_OF_LAUNCH: &str = "has_Date_of_Launch";
pub const HAS_EXPECTED_LIFETIME: &str = "has_Expected_Lifetime";
pub const HAS_LAUNCH_SITE: &str = "has_Launch_Site";
pub const HAS_LAUNCH_VEHICLE: &str = "has_Launch_Vehicle";
pub const HAS_SATELLITE_COMMENT_VALUE: &str = "has_Satellite_Comment_value";

/// Upper eccentricity bound (inclusive) of a nearly circular orbit.
pub const NEARLY_CIRCULAR_MAX_ECCENTRICITY: &str = "0.14";

/// A numeric catalog parameter and the terms that carry it.
///
/// In reified mode the satellite links to a parameter instance through
/// `object_property`, and the instance carries the number through
/// `value_property`. In direct mode only `value_property` exists and it
/// attaches straight to the satellite (or orbit).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericParameter {
    pub column: &'static str,
    pub class: &'static str,
    pub object_property: &'static str,
    pub value_property: &'static str,
    pub unit: Option<Unit>,
    /// Orbital parameters may be borne by an orbit as well as a satellite.
    pub orbital: bool,
    pub functional: bool,
}

const fn param(
    column: &'static str,
    class: &'static str,
    object_property: &'static str,
    value_property: &'static str,
    unit: Option<Unit>,
    orbital: bool,
    functional: bool,
) -> NumericParameter {
    NumericParameter { column, class, object_property, value_property, unit, orbital, functional }
}

pub const NUMERIC_PARAMETERS: [NumericParameter; 9] = [
    param(
        "Longitude of GEO (degrees)",
        "Longitude_Of_GEO",
        "has_Longitude_of_GEO",
        "has_Longitude_of_GEO_value",
        Some(Unit::Degrees),
        true,
        false,
    ),
    param("Perigee (km)", "Perigee", "has_Perigee", "has_Perigee_value", Some(Unit::Km), true, false),
    param("Apogee (km)", "Apogee", "has_Apogee", "has_Apogee_value", Some(Unit::Km), true, false),
    param(
        "Eccentricity",
        ORBITAL_ECCENTRICITY,
        HAS_ORBITAL_ECCENTRICITY,
        HAS_ORBITAL_ECCENTRICITY_VALUE,
        None,
        true,
        false,
    ),
    param(
        "Inclination (degrees)",
        "Orbital_Inclination",
        "has_Orbital_Inclination",
        "has_Orbital_Inclination_value",
        Some(Unit::Degrees),
        true,
        false,
    ),
    param(
        "Period (minutes)",
        "Orbital_Period",
        "has_Orbital_Period",
        "has_Orbital_Period_value",
        Some(Unit::Minutes),
        true,
        false,
    ),
    param("Launch Mass (kg.)", "Launch_Mass", "has_Launch_Mass", "has_Launch_Mass_value", Some(Unit::Kg), false, true),
    param("Dry Mass (kg.)", "Dry_Mass", "has_Dry_Mass", "has_Dry_Mass_value", Some(Unit::Kg), false, true),
    param(
        "Power (watts)",
        "Artificial_Satellite_Power",
        "has_Power",
        "has_Power_value",
        Some(Unit::Watts),
        false,
        true,
    ),
];

/// Parameters every orbit is expected to carry.
pub const REQUIRED_ORBIT_PARAMETERS: [&str; 5] =
    [ORBITAL_ECCENTRICITY, "Orbital_Inclination", "Orbital_Period", "Perigee", "Apogee"];

pub fn numeric_parameter(class: &str) -> Option<&'static NumericParameter> {
    NUMERIC_PARAMETERS.iter().find(|p| p.class == class)
}

/// Orbit classes below the two shape classes, as `(class, parent)`.
pub const ORBIT_LEAVES: [(&str, &str); 9] = [
    ("LEO_Orbit", NEARLY_CIRCULAR_ORBIT),
    ("MEO_Orbit", NEARLY_CIRCULAR_ORBIT),
    ("GEO_Orbit", NEARLY_CIRCULAR_ORBIT),
    ("Equatorial_Orbit", NEARLY_CIRCULAR_ORBIT),
    ("Polar_Orbit", NEARLY_CIRCULAR_ORBIT),
    ("Sun_Synchronous_Orbit", "LEO_Orbit"),
    ("Molniya_Orbit", ELLIPTICAL_ORBIT),
    ("Deep_Highly_Eccentric_Orbit", ELLIPTICAL_ORBIT),
    ("Cislunar_Orbit", ELLIPTICAL_ORBIT),
];

/// Purpose leaves and the function-based satellite class each implies.
pub const PURPOSE_LEAVES: [(&str, &str); 6] = [
    ("Communications_Purpose", "Communications_Satellite"),
    ("Earth_Observation_Purpose", "Earth_Observing_Satellite"),
    ("Navigation_Purpose", "Navigation_Satellite"),
    ("Space_Science_Purpose", "Space_Science_Satellite"),
    ("Technology_Development_Purpose", "Technology_Development_Satellite"),
    ("Earth_Science_Purpose", "Earth_Science_Satellite"),
];

pub const USER_CLASSES: [&str; 6] =
    ["Civil_User", "Academic_User", "Amateur_User", "Commercial_User", "Government_User", "Military_User"];

pub const SSAO_SPACE_OBJECT: &str = "Space_Object";
pub const SSAO_SPACE_ARTIFACT: &str = "Space_Artifact";
pub const SSAO_SPACECRAFT: &str = "Spacecraft";
pub const SSAO_SATELLITE: &str = "Satellite";
pub const SSAO_ORBITAL_PROPERTY: &str = "Orbital_Property";
pub const SSAO_ORBITAL_ELEMENT: &str = "Orbital_Element";
pub const SSAO_CENTRAL_BODY: &str = "Central_Body";
pub const SSAO_ORBITAL_PATH: &str = "Orbital_Path";
pub const SSAO_SPACECRAFT_MANEUVER: &str = "Spacecraft_Maneuver";
