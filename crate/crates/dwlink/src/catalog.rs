//! The link catalog: Rolfsen / Doll–Hoste ids with minimum braid words.
//!
//! The built-in catalog covers the 58 knots up to 10 crossings and 48
//! two-component links up to 9 crossings with representatives in `B_3`,
//! plus the Borromean rings. Catalog files are UTF-8, line oriented,
//! tab-separated `id<TAB>braidword<TAB>strands` with `#` comments.

use crate::braid::{BraidError, BraidWord};
use std::path::Path;
use thiserror::Error;

pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.tsv");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {0}: expected id<TAB>braidword<TAB>strands")]
    Malformed(usize),
    #[error("line {0}: bad strand count {1:?}")]
    BadStrands(usize, String),
    #[error("line {line}: braid word does not parse: {source}")]
    BadWord {
        line: usize,
        #[source]
        source: BraidError,
    },
    #[error("line {0}: {1} closes to {2} components but the id names {3}")]
    ComponentMismatch(usize, String, usize, usize),
    #[error("duplicate id {0:?} at line {1}")]
    DuplicateId(String, usize),
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
}

/// One catalog row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkRecord {
    pub id: String,
    pub braidword: String,
    pub strands: usize,
    pub components: usize,
}

impl LinkRecord {
    pub fn braid(&self) -> BraidWord {
        BraidWord::parse_gittings(&self.braidword, self.strands)
            .expect("validated at catalog load")
    }
}

/// Component count named by a link id: the `^c` superscript, 1 if absent
/// (`"9^2_54+-"` names 2, `"5_2"` names 1).
pub fn components_in_id(id: &str) -> usize {
    id.split_once('^')
        .and_then(|(_, rest)| rest.split(['_', '+']).next())
        .and_then(|sup| sup.parse().ok())
        .unwrap_or(1)
}

fn parse(text: &str) -> Result<Vec<LinkRecord>, CatalogError> {
    let mut out: Vec<LinkRecord> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(id), Some(word), Some(strands)) =
            (fields.next(), fields.next(), fields.next())
        else {
            return Err(CatalogError::Malformed(lineno));
        };
        let strands: usize = strands
            .trim()
            .parse()
            .map_err(|_| CatalogError::BadStrands(lineno, strands.to_string()))?;
        let braid = BraidWord::parse_gittings(word, strands)
            .map_err(|source| CatalogError::BadWord { line: lineno, source })?;
        let components = braid.components().len();
        let named = components_in_id(id);
        if components != named {
            return Err(CatalogError::ComponentMismatch(
                lineno,
                id.to_string(),
                components,
                named,
            ));
        }
        if out.iter().any(|r| r.id == id) {
            return Err(CatalogError::DuplicateId(id.to_string(), lineno));
        }
        out.push(LinkRecord {
            id: id.to_string(),
            braidword: word.to_string(),
            strands,
            components,
        });
    }
    Ok(out)
}

/// Loads and validates a catalog file.
pub fn load_catalog(path: &Path) -> Result<Vec<LinkRecord>, CatalogError> {
    parse(&std::fs::read_to_string(path)?)
}

/// The catalog shipped with the crate.
pub fn builtin_catalog() -> Vec<LinkRecord> {
    parse(BUILTIN_CATALOG).expect("builtin catalog is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_counts() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 107);
        assert_eq!(cat.iter().filter(|r| r.components == 1).count(), 58);
        assert_eq!(cat.iter().filter(|r| r.components == 2).count(), 48);
        assert_eq!(cat.iter().filter(|r| r.components == 3).count(), 1);
    }

    #[test]
    fn known_rows() {
        let cat = builtin_catalog();
        let word = |id: &str| &cat.iter().find(|r| r.id == id).unwrap().braidword;
        assert_eq!(word("5_2"), "AAABaB");
        assert_eq!(word("6^2_3"), "AAABaBB");
        assert_eq!(word("6^3_2"), "AbAbAb");
        assert_eq!(word("7^2_2+-"), "AAAbAbb");
    }

    #[test]
    fn id_superscripts() {
        assert_eq!(components_in_id("5_2"), 1);
        assert_eq!(components_in_id("6^2_3"), 2);
        assert_eq!(components_in_id("9^2_54+-"), 2);
        assert_eq!(components_in_id("6^3_2"), 3);
        assert_eq!(components_in_id("10_n155"), 1);
    }

    #[test]
    fn parse_failures_carry_line_numbers() {
        assert!(matches!(
            parse("4_1\tAbAb\t3\nbroken line"),
            Err(CatalogError::Malformed(2))
        ));
        assert!(matches!(
            parse("4_1\tAxAb\t3"),
            Err(CatalogError::BadWord { line: 1, .. })
        ));
        assert!(matches!(
            parse("4^2_1\tAbAb\t3"),
            Err(CatalogError::ComponentMismatch(1, _, 1, 2))
        ));
        assert!(matches!(
            parse("4_1\tAbAb\t3\n4_1\tAbAb\t3"),
            Err(CatalogError::DuplicateId(_, 2))
        ));
    }
}
