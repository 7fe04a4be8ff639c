//! Catalog CSV ingest: parsing, per-row resolution, and batch loading.

mod batch;
mod csv;
mod error;
mod resolve;

pub use batch::{ingest, ingest_with, parameter_values, IngestReport, RowViolation, RowWarning};
pub use csv::{parse_csv, write_csv, ParsedCsv, RawRecord, COLUMNS};
pub use error::{FieldError, FieldErrorKind, IngestError};
pub use resolve::{
    is_sentinel, parse_date, resolve_record, RecordResolution, ResolveConfig, ResolvedAssertion, Resolver,
    COUNTRY_NAMES,
};

/// Column name constants.
pub mod columns {
    pub use super::resolve::{
        COL_ALTERNATE_NAMES, COL_COMMENTS, COL_CONTRACTOR, COL_CONTRACTOR_COUNTRY, COL_COSPAR, COL_DETAILED_PURPOSE,
        COL_LAUNCH_DATE, COL_LAUNCH_SITE, COL_LAUNCH_VEHICLE, COL_LIFETIME, COL_NAME, COL_NORAD, COL_OPERATOR,
        COL_OPERATOR_COUNTRY, COL_ORBIT_CLASS, COL_ORBIT_TYPE, COL_PURPOSE, COL_UN_REGISTRY, COL_USERS,
    };
}
