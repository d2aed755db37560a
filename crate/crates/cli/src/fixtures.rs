//! Shipped fixture files and resolution of file arguments.
//!
//! A file argument that is not an existing path is looked up by fixture name
//! (case-insensitive, `.json` optional). The directory named by
//! `SEMIFREE_FIXTURES` takes precedence over the embedded copies.

use std::path::{Path, PathBuf};

use crate::CliError;

pub const FIXTURE_DIR_VAR: &str = "SEMIFREE_FIXTURES";

pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "NC1", summary: "d(b1) = d(b2) = b c; not acyclic", text: include_str!("../fixtures/NC1.json") },
    Fixture {
        name: "NC1-broken",
        summary: "NC1 with action of b1 lowered to 2; fails the filtration check",
        text: include_str!("../fixtures/NC1-broken.json"),
    },
    Fixture {
        name: "NC1-cert",
        summary: "certificate b c b c = 1 d(b1) (b c) over NC1",
        text: include_str!("../fixtures/NC1-cert.json"),
    },
    Fixture { name: "AC1", summary: "d(b1) = 1; acyclic", text: include_str!("../fixtures/AC1.json") },
    Fixture {
        name: "AC2",
        summary: "d(b1) = 1 + a1 a2, d(b2) = a1^2; acyclic",
        text: include_str!("../fixtures/AC2.json"),
    },
    Fixture { name: "S1", summary: "stabilisation in degree 1: d(b) = a", text: include_str!("../fixtures/S1.json") },
    Fixture {
        name: "AN1",
        summary: "d(b) = 1, d(f) = e; normalises to a single non-cycle",
        text: include_str!("../fixtures/AN1.json"),
    },
    Fixture {
        name: "EX14",
        summary: "graded-commutative, d(b1) = d(b2) = b c; b c b2 is a non-bounding cycle",
        text: include_str!("../fixtures/EX14.json"),
    },
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    FIXTURES.iter().find(|f| f.name.eq_ignore_ascii_case(stem))
}

/// Contents of a file argument: an existing path, else a fixture.
pub fn read_source(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")));
    }
    let Some(fixture) = find(path.file_name().and_then(|s| s.to_str()).unwrap_or(arg)) else {
        return Err(CliError::Io(format!("{arg}: no such file or fixture")));
    };
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_VAR) {
        let file: PathBuf = Path::new(&dir).join(format!("{}.json", fixture.name));
        return std::fs::read_to_string(&file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())));
    }
    Ok(fixture.text.to_string())
}
