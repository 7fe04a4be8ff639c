use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rust_decimal::Decimal;

use super::csv::RawRecord;
use super::resolve::{ResolveConfig, Resolver, COL_NAME};
use crate::ontology::{sanitize_instance_name, term, InstanceStore, Object, Ontology, Predicate, TermId};
use crate::schema::vocab::NUMERIC_PARAMETERS;
use crate::schema::ModelingMode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowViolation {
    pub row: usize,
    pub field: String,
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowWarning {
    pub row: usize,
    pub field: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub rows_read: usize,
    pub rows_ingested: usize,
    /// Assertions newly inserted; repeats of shared facts are not counted.
    pub assertions_created: usize,
    pub violations: Vec<RowViolation>,
    pub warnings: Vec<RowWarning>,
}

/// Ingests rows with the default resolution settings.
pub fn ingest(records: &[RawRecord], mode: ModelingMode, ont: &Ontology) -> (InstanceStore, IngestReport) {
    ingest_with(records, mode, Arc::new(ont.clone()), &ResolveConfig::default())
}

pub fn ingest_with(
    records: &[RawRecord],
    mode: ModelingMode,
    ont: Arc<Ontology>,
    config: &ResolveConfig,
) -> (InstanceStore, IngestReport) {
    let mut store = InstanceStore::new(ont.clone());
    let resolver = Resolver::new(&ont, mode, config.clone());
    let mut report = IngestReport { rows_read: records.len(), ..Default::default() };
    let mut used_names: BTreeSet<TermId> = BTreeSet::new();

    for record in records {
        let row = record.row_number;
        let Some(mut sat) = sanitize_instance_name(record.get(COL_NAME)) else {
            report.violations.push(RowViolation {
                row,
                field: COL_NAME.into(),
                code: "missing_name".into(),
                message: "satellite name is empty or has no usable characters".into(),
            });
            continue;
        };
        if used_names.contains(&sat) {
            sat = TermId::new(&format!("{sat}_row{row}")).expect("suffix keeps the name valid");
            report.warnings.push(RowWarning {
                row,
                field: COL_NAME.into(),
                message: format!("duplicate satellite name; instance renamed to {sat}"),
            });
        }
        used_names.insert(sat.clone());

        let resolution = resolver.resolve_as(record, sat);
        for e in resolution.errors {
            report.violations.push(RowViolation {
                row,
                field: e.field,
                code: e.kind.code().into(),
                message: e.message,
            });
        }
        for (field, message) in resolution.warnings {
            report.warnings.push(RowWarning { row, field, message });
        }
        for r in resolution.assertions {
            store.declare_instance(r.assertion.subject.clone());
            if let Object::Instance(o) = &r.assertion.object {
                store.declare_instance(o.clone());
            }
            let shown = r.assertion.to_string();
            match store.assert(r.assertion) {
                Ok(outcome) => {
                    report.assertions_created += usize::from(outcome.inserted);
                    if let Some(message) = outcome.warning {
                        report.warnings.push(RowWarning { row, field: r.field.into(), message });
                    }
                }
                Err(e) => report.violations.push(RowViolation {
                    row,
                    field: r.field.into(),
                    code: e.code().into(),
                    message: format!("{shown}: {e}"),
                }),
            }
        }
        report.rows_ingested += 1;
    }
    (store, report)
}

/// Multiset of (bearer, value property, value) recoverable from a store.
///
/// In reified mode each value is reached by following the parameter link
/// and then the value link; in direct mode it is read off the bearer. Both
/// forms of the same rows give the same multiset.
pub fn parameter_values(store: &InstanceStore, mode: ModelingMode) -> BTreeMap<(TermId, &'static str, Decimal), usize> {
    let mut out = BTreeMap::new();
    for p in NUMERIC_PARAMETERS.iter() {
        let value_pred = Predicate::Property(term(p.value_property));
        match mode {
            ModelingMode::Direct => {
                for (obj, bearer) in store.with_predicate(&value_pred) {
                    if let Some(v) = obj.as_literal().and_then(|l| l.as_decimal()) {
                        *out.entry((bearer.clone(), p.value_property, v.normalize())).or_insert(0) += 1;
                    }
                }
            }
            ModelingMode::Reified => {
                let link = Predicate::Property(term(p.object_property));
                for (param, bearer) in store.with_predicate(&link) {
                    let Some(param) = param.as_instance() else { continue };
                    for obj in store.objects(param.as_str(), &value_pred) {
                        if let Some(v) = obj.as_literal().and_then(|l| l.as_decimal()) {
                            *out.entry((bearer.clone(), p.value_property, v.normalize())).or_insert(0) += 1;
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::build_ucsso;

    #[test]
    fn empty_batch() {
        let ont = build_ucsso(ModelingMode::Direct);
        let (store, report) = ingest(&[], ModelingMode::Direct, &ont);
        assert!(store.is_empty());
        assert_eq!(report, IngestReport::default());
    }

    #[test]
    fn out_of_range_eccentricity_is_dropped_and_reported() {
        for mode in ModelingMode::ALL {
            let ont = build_ucsso(mode);
            let r = RawRecord::new(2).with(COL_NAME, "S").with("Eccentricity", "1.2");
            let (store, report) = ingest(&[r], mode, &ont);
            assert_eq!(report.rows_ingested, 1);
            assert_eq!(report.violations.len(), 1);
            assert_eq!(report.violations[0].code, "restriction");
            assert_eq!(report.violations[0].field, "Eccentricity");
            assert!(parameter_values(&store, mode).is_empty());
        }
    }

    #[test]
    fn duplicate_names_get_row_suffix() {
        let ont = build_ucsso(ModelingMode::Direct);
        let rows =
            [RawRecord::new(2).with(COL_NAME, "Twin"), RawRecord::new(3).with(COL_NAME, "Twin"), RawRecord::new(4)];
        let (store, report) = ingest(&rows, ModelingMode::Direct, &ont);
        assert!(store.is_a("Twin", "Artificial_Satellite"));
        assert!(store.is_a("Twin_row3", "Artificial_Satellite"));
        assert_eq!((report.rows_read, report.rows_ingested), (3, 2));
        assert_eq!(report.violations[0].code, "missing_name");
    }

    #[test]
    fn eccentricity_one_warns() {
        let ont = build_ucsso(ModelingMode::Direct);
        let r = RawRecord::new(2).with(COL_NAME, "S").with("Eccentricity", "1");
        let (_, report) = ingest(&[r], ModelingMode::Direct, &ont);
        assert!(report.violations.is_empty());
        assert!(report.warnings.iter().any(|w| w.field == "Eccentricity"));
    }
}
