//! Shared fixtures and generators for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use satkg_core::ingest::{parse_csv, RawRecord};
use satkg_core::schema::ModelingMode;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(fixture_path(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn fixture_records(name: &str) -> Vec<RawRecord> {
    parse_csv(&fixture_bytes(name)).expect("fixture parses").records
}

pub fn mode_strategy() -> impl Strategy<Value = ModelingMode> {
    prop_oneof![Just(ModelingMode::Reified), Just(ModelingMode::Direct)]
}

/// Decimal text with up to `scale` fraction digits in [0, max_units / 10^scale].
pub fn decimal_text(max_units: u32, scale: u32) -> impl Strategy<Value = String> {
    (0..=max_units).prop_map(move |n| rust_decimal::Decimal::new(n as i64, scale).to_string())
}

fn optional(s: impl Strategy<Value = String>) -> impl Strategy<Value = String> {
    prop_oneof![1 => Just(String::new()), 3 => s]
}

fn pick(options: &'static [&'static str]) -> impl Strategy<Value = String> {
    proptest::sample::select(options).prop_map(str::to_string)
}

/// A catalog row drawn from realistic cell vocabularies, with a unique name
/// per index so generated batches never collide.
pub fn record_strategy(index: usize) -> impl Strategy<Value = RawRecord> {
    let names = (
        optional(pick(&["Denmark", "USA", "USA/Japan", "ESA", "Russia"])),
        optional(pick(&["Aalborg University", "NASA/JAXA", "Orbital Relay Inc.", "MoD"])),
        optional(pick(&["Civil", "Commercial", "Military/Government", "Academic", "Amateur"])),
        optional(pick(&["Communications", "Earth Observation", "Navigation", "Space Science/Technology Development"])),
        optional(pick(&["LEO", "MEO", "GEO", "Elliptical"])),
    );
    let numbers = (
        optional(decimal_text(360_000, 3)),
        optional(decimal_text(40_000, 0)),
        optional(decimal_text(40_000, 0)),
        optional(decimal_text(10_000, 4)),
        optional(decimal_text(1800, 1)),
        optional(decimal_text(20_000, 1)),
        optional(decimal_text(50_000, 1)),
    );
    let extras =
        (optional(pick(&["2016-04-25", "4/25/2016", "1999-12-31"])), optional("[ -~]{0,12}"), optional("\\PC{0,10}"));
    (names, numbers, extras).prop_map(move |(n, x, e)| {
        RawRecord::new(index + 2)
            .with("Name of Satellite", &format!("Sat-{index}"))
            .with("Country of Operator/Owner", &n.0)
            .with("Operator/Owner", &n.1)
            .with("Users", &n.2)
            .with("Purpose", &n.3)
            .with("Class of Orbit", &n.4)
            .with("Longitude of GEO (degrees)", &x.0)
            .with("Perigee (km)", &x.1)
            .with("Apogee (km)", &x.2)
            .with("Eccentricity", &x.3)
            .with("Inclination (degrees)", &x.4)
            .with("Period (minutes)", &x.5)
            .with("Launch Mass (kg.)", &x.6)
            .with("Date of Launch", &e.0)
            .with("COSPAR Number", &e.1)
            .with("Comments", &e.2)
    })
}

pub fn records_strategy(max: usize) -> impl Strategy<Value = Vec<RawRecord>> {
    (0..=max).prop_flat_map(|n| (0..n).map(record_strategy).collect::<Vec<_>>())
}
