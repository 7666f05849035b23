//! The statement table backing citation keys: each key used in evidence or
//! certificates resolves to a standalone mathematical statement.

use serde::Deserialize;
use std::collections::HashMap;
use std::sync::OnceLock;

#[derive(Clone, Debug, Deserialize)]
pub struct Statement {
    pub key: String,
    pub text: String,
}

#[derive(Deserialize)]
struct StatementFile {
    version: String,
    statements: Vec<Statement>,
}

fn table() -> &'static (String, HashMap<String, Statement>) {
    static TABLE: OnceLock<(String, HashMap<String, Statement>)> = OnceLock::new();
    TABLE.get_or_init(|| {
        let file: StatementFile = serde_json::from_str(include_str!("statements.json"))
            .expect("embedded statement table is valid JSON");
        let mut map = HashMap::new();
        for s in file.statements {
            let dup = map.insert(s.key.clone(), s);
            assert!(dup.is_none(), "duplicate statement key");
        }
        (file.version, map)
    })
}

/// Version of the statement table; part of the engine version.
pub fn table_version() -> &'static str {
    &table().0
}

pub fn statement(key: &str) -> Option<&'static Statement> {
    table().1.get(key)
}

pub fn statement_keys() -> Vec<&'static str> {
    let mut keys: Vec<&'static str> = table().1.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    keys
}
