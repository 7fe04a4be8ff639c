//! RFC-4180 CSV reader for catalog exports.
//!
//! Row numbers follow spreadsheet convention: the header is row 1 and the
//! first data row is row 2. A record spanning several physical lines still
//! counts as one row, as it would in a spreadsheet.

use std::collections::BTreeMap;

use super::error::IngestError;

/// Catalog columns in export order.
pub const COLUMNS: [&str; 28] = [
    "Name of Satellite",
    "Alternate Names",
    "Country/Org of UN Registry",
    "Country of Operator/Owner",
    "Operator/Owner",
    "Users",
    "Purpose",
    "Detailed Purpose",
    "Class of Orbit",
    "Type of Orbit",
    "Longitude of GEO (degrees)",
    "Perigee (km)",
    "Apogee (km)",
    "Eccentricity",
    "Inclination (degrees)",
    "Period (minutes)",
    "Launch Mass (kg.)",
    "Dry Mass (kg.)",
    "Power (watts)",
    "Date of Launch",
    "Expected Lifetime",
    "Contractor",
    "Country of Contractor",
    "Launch Site",
    "Launch Vehicle",
    "COSPAR Number",
    "NORAD Number",
    "Comments",
];

/// One data row keyed by canonical column name.
///
/// Headers matching a catalog column (ignoring case and surrounding
/// whitespace) are stored under the canonical spelling; any other header is
/// kept as written.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawRecord {
    pub row_number: usize,
    pub cells: BTreeMap<String, String>,
}

impl RawRecord {
    pub fn new(row_number: usize) -> Self {
        RawRecord { row_number, cells: BTreeMap::new() }
    }

    pub fn with(mut self, column: &str, value: &str) -> Self {
        self.cells.insert(column.to_string(), value.to_string());
        self
    }

    /// The trimmed cell, or "" when the column is absent.
    pub fn get(&self, column: &str) -> &str {
        self.cells.get(column).map_or("", |v| v.trim())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedCsv {
    pub records: Vec<RawRecord>,
    /// Catalog columns absent from the header, in catalog order.
    pub missing_columns: Vec<&'static str>,
}

fn canonical_header(raw: &str) -> String {
    let trimmed = raw.trim();
    COLUMNS.iter().find(|c| c.eq_ignore_ascii_case(trimmed)).map_or_else(|| trimmed.to_string(), |c| c.to_string())
}

/// Splits raw bytes into records of fields.
fn split_records(text: &str) -> Result<Vec<Vec<String>>, IngestError> {
    let mut records = Vec::new();
    let mut record = Vec::new();
    let mut field = String::new();
    let mut chars = text.chars().peekable();
    // Index of the record being built, for error messages (header = 1).
    let row = |records: &Vec<Vec<String>>| records.len() + 1;

    loop {
        let Some(c) = chars.next() else {
            if !field.is_empty() || !record.is_empty() {
                record.push(std::mem::take(&mut field));
                records.push(std::mem::take(&mut record));
            }
            break;
        };
        match c {
            '"' if field.is_empty() => loop {
                match chars.next() {
                    None => {
                        return Err(IngestError::MalformedCsv {
                            row: row(&records),
                            message: "unterminated quoted field".into(),
                        })
                    }
                    Some('"') if chars.peek() == Some(&'"') => {
                        chars.next();
                        field.push('"');
                    }
                    Some('"') => match chars.peek() {
                        None | Some(',') | Some('\n') | Some('\r') => break,
                        Some(other) => {
                            return Err(IngestError::MalformedCsv {
                                row: row(&records),
                                message: format!("unexpected `{other}` after closing quote"),
                            })
                        }
                    },
                    Some(other) => field.push(other),
                }
            },
            '"' => {
                return Err(IngestError::MalformedCsv {
                    row: row(&records),
                    message: "quote inside an unquoted field".into(),
                })
            }
            ',' => record.push(std::mem::take(&mut field)),
            '\r' if chars.peek() == Some(&'\n') => {}
            '\n' | '\r' => {
                record.push(std::mem::take(&mut field));
                records.push(std::mem::take(&mut record));
            }
            other => field.push(other),
        }
    }
    Ok(records)
}

/// Parses a catalog export with a header row.
pub fn parse_csv(bytes: &[u8]) -> Result<ParsedCsv, IngestError> {
    if bytes.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    let text = std::str::from_utf8(bytes).map_err(|e| IngestError::MalformedCsv {
        row: 1 + bytes[..e.valid_up_to()].iter().filter(|b| **b == b'\n').count(),
        message: "input is not valid UTF-8".into(),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut rows = split_records(text)?.into_iter();
    let Some(header) = rows.next() else {
        return Err(IngestError::EmptyInput);
    };
    let header: Vec<String> = header.iter().map(|h| canonical_header(h)).collect();
    let missing_columns = COLUMNS.iter().copied().filter(|c| !header.iter().any(|h| h == c)).collect();

    let mut records = Vec::new();
    for (idx, fields) in rows.enumerate() {
        let row_number = idx + 2;
        // A trailing blank line is not a record.
        if fields.len() == 1 && fields[0].is_empty() {
            continue;
        }
        if fields.len() != header.len() {
            return Err(IngestError::MalformedCsv {
                row: row_number,
                message: format!("expected {} fields, found {}", header.len(), fields.len()),
            });
        }
        let cells = header.iter().cloned().zip(fields).collect();
        records.push(RawRecord { row_number, cells });
    }
    Ok(ParsedCsv { records, missing_columns })
}

/// Writes records back out as CSV with the given header order.
pub fn write_csv(columns: &[&str], records: &[RawRecord]) -> String {
    fn quote(field: &str) -> String {
        if field.contains([',', '"', '\n', '\r']) || field.starts_with(' ') || field.ends_with(' ') {
            format!("\"{}\"", field.replace('"', "\"\""))
        } else {
            field.to_string()
        }
    }
    let mut out = columns.iter().map(|c| quote(c)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for r in records {
        let line: Vec<String> = columns.iter().map(|c| quote(r.cells.get(*c).map_or("", String::as_str))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_comma_survives() {
        let csv = b"Name of Satellite,Comments\nAAUSat-4,\"Cubesat, 1U\"\n";
        let parsed = parse_csv(csv).unwrap();
        assert_eq!(parsed.records.len(), 1);
        assert_eq!(parsed.records[0].get("Comments"), "Cubesat, 1U");
        assert_eq!(parsed.records[0].row_number, 2);
    }

    #[test]
    fn header_only_is_empty() {
        let parsed = parse_csv(b"Name of Satellite,Users\r\n").unwrap();
        assert!(parsed.records.is_empty());
        assert_eq!(parsed.missing_columns.len(), 26);
    }

    #[test]
    fn empty_bytes() {
        assert_eq!(parse_csv(b""), Err(IngestError::EmptyInput));
    }

    #[test]
    fn unbalanced_quote_names_row() {
        let csv = b"Name of Satellite,Users\nA,Civil\nB,\"Military\n";
        match parse_csv(csv) {
            Err(IngestError::MalformedCsv { row, .. }) => assert_eq!(row, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn column_count_mismatch_names_row() {
        let csv = b"Name of Satellite,Users\nA,Civil\nB\n";
        assert!(matches!(parse_csv(csv), Err(IngestError::MalformedCsv { row: 3, .. })));
    }

    #[test]
    fn headers_are_case_insensitive_and_extras_kept() {
        let csv = "\u{feff} name of satellite ,PERIGEE (KM),Source\nX,500,web\n";
        let parsed = parse_csv(csv.as_bytes()).unwrap();
        let r = &parsed.records[0];
        assert_eq!(r.get("Name of Satellite"), "X");
        assert_eq!(r.get("Perigee (km)"), "500");
        assert_eq!(r.get("Source"), "web");
    }

    #[test]
    fn embedded_newline_and_escaped_quote() {
        let csv = b"Name of Satellite,Comments\r\nA,\"line one\r\nsaid \"\"hi\"\"\"\r\nB,x\r\n";
        let parsed = parse_csv(csv).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.records[0].get("Comments"), "line one\r\nsaid \"hi\"");
        assert_eq!(parsed.records[1].row_number, 3);
    }

    #[test]
    fn write_then_parse() {
        let r = RawRecord::new(2).with("Name of Satellite", "A").with("Comments", "x, \"y\"\nz");
        let text = write_csv(&["Name of Satellite", "Comments"], &[r.clone()]);
        assert_eq!(parse_csv(text.as_bytes()).unwrap().records, vec![r]);
    }
}
