#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::path::PathBuf;

use splicegraph::{AtomDb, SpliceDiagram};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn db() -> AtomDb {
    AtomDb::seed()
}

/// Expressions of the shipped corpus, one per non-comment line.
pub fn corpus() -> Vec<String> {
    std::fs::read_to_string(data_path("corpus.dsl"))
        .unwrap()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

pub fn eval(expr: &str) -> SpliceDiagram {
    splicegraph::dsl::evaluate(expr, &db()).unwrap_or_else(|e| panic!("{expr}: {e}"))
}

pub fn st1() -> SpliceDiagram {
    let text = std::fs::read_to_string(data_path("st1.json")).unwrap();
    splicegraph::diagram::json::from_json(&text, &db()).unwrap()
}
