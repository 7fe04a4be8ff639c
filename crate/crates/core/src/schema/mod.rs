//! Built-in schemas: the catalog-local satellite ontology, the reference
//! core, the mapping between them, and schema overlays.

mod mapping;
mod overlay;
mod ssao;
mod ucsso;
pub mod vocab;

pub use mapping::{build_mapping, MappingEntry, MappingKind, MappingTable, Unmapped};
pub use overlay::{Overlay, OverlayClass, OverlayError};
pub use ssao::{build_ssao_core, build_ssao_schema};
pub use ucsso::{build_ucsso, register_function_aliases, ModelingMode};
