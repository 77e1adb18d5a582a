//! The embedded singularity tables.

use std::sync::OnceLock;

use serde::Deserialize;

use super::Symbol;
use crate::exactpoly::{parse_rat, Rat};

pub const TABLES_TOML: &str = include_str!("../../data/tables.toml");

#[derive(Debug, Deserialize)]
struct ThresholdRow {
    d: u32,
    values: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct TypeRow {
    d: u32,
    symbols: Vec<String>,
}

/// One family of normal forms.
#[derive(Debug, Clone, Deserialize)]
pub struct NormalFormEntry {
    pub family: String,
    pub indices: String,
    /// Polynomial template; see [`instantiate`].
    pub form: String,
    pub mult: String,
    pub mu: String,
    pub lct: String,
    pub restriction: String,
}

#[derive(Debug, Deserialize)]
struct RawTables {
    version: u32,
    thresholds: Vec<ThresholdRow>,
    types: Vec<TypeRow>,
    normal_forms: Vec<NormalFormEntry>,
}

#[derive(Debug)]
pub struct Tables {
    pub version: u32,
    /// Indexed by degree 1..=5.
    pub thresholds: Vec<(u32, Vec<Rat>)>,
    pub types: Vec<(u32, Vec<Symbol>)>,
    pub normal_forms: Vec<NormalFormEntry>,
}

impl Tables {
    pub fn thresholds(&self, d: u32) -> Option<&[Rat]> {
        self.thresholds
            .iter()
            .find(|(e, _)| *e == d)
            .map(|(_, v)| v.as_slice())
    }

    pub fn types(&self, d: u32) -> Option<&[Symbol]> {
        self.types
            .iter()
            .find(|(e, _)| *e == d)
            .map(|(_, v)| v.as_slice())
    }

    pub fn normal_form(&self, family: &str) -> Option<&NormalFormEntry> {
        self.normal_forms.iter().find(|e| e.family == family)
    }
}

fn load() -> Tables {
    let raw: RawTables = toml::from_str(TABLES_TOML).expect("embedded tables parse");
    Tables {
        version: raw.version,
        thresholds: raw
            .thresholds
            .into_iter()
            .map(|r| {
                let vals = r
                    .values
                    .iter()
                    .map(|v| parse_rat(v).expect("threshold is a rational"))
                    .collect();
                (r.d, vals)
            })
            .collect(),
        types: raw
            .types
            .into_iter()
            .map(|r| {
                let syms = r
                    .symbols
                    .iter()
                    .map(|s| s.parse().expect("known symbol"))
                    .collect();
                (r.d, syms)
            })
            .collect(),
        normal_forms: raw.normal_forms,
    }
}

pub fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(load)
}

/// Fills `{name}`, `{name+n}` and `{name-n}` placeholders from `vars`.
pub fn instantiate(template: &str, vars: &[(&str, i64)]) -> String {
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = open + rest[open..].find('}').expect("closed placeholder");
        let expr = &rest[open + 1..close];
        let (name, offset) = match expr.find(['+', '-']) {
            Some(i) => {
                let n: i64 = expr[i + 1..].parse().expect("integer offset");
                (&expr[..i], if &expr[i..=i] == "-" { -n } else { n })
            }
            None => (expr, 0),
        };
        let base = vars
            .iter()
            .find(|(v, _)| *v == name)
            .unwrap_or_else(|| panic!("unbound placeholder {name}"))
            .1;
        out.push_str(&(base + offset).to_string());
        rest = &rest[close + 1..];
    }
    out.push_str(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    #[test]
    fn data_file_checksum() {
        let digest = Sha256::digest(TABLES_TOML.as_bytes());
        assert_eq!(
            hex::encode(digest),
            "13d727c1523ae6fc41ba298f86f15b2860e17a2dd89539b2df1a9d5a10435d18"
        );
        assert_eq!(tables().version, 1);
    }

    #[test]
    fn rows_are_complete() {
        let t = tables();
        for d in 1..=5 {
            assert!(t.thresholds(d).is_some());
            assert!(t.types(d).is_some());
        }
        assert_eq!(t.thresholds(5).unwrap().len(), 24);
        assert_eq!(t.types(5).unwrap().len(), 40);
        assert_eq!(t.normal_forms.len(), 11);
    }

    #[test]
    fn placeholders() {
        assert_eq!(instantiate("x^2 + y^{k+1}", &[("k", 3)]), "x^2 + y^4");
        assert_eq!(instantiate("x^2*y + y^{k-1}", &[("k", 5)]), "x^2*y + y^4");
        assert_eq!(
            instantiate("a*x^{q} + y^{r}", &[("q", 3), ("r", 7)]),
            "a*x^3 + y^7"
        );
    }
}
