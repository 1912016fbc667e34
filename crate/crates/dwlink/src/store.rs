//! JSON result store: one document per `(link, u)`, keyed by the engine
//! version so stale caches are recomputed rather than trusted.
//!
//! Entry coefficients are the canonically reduced `ζ`-exponent → integer
//! map (degree < φ(N)); `approx` is a decimal check value rounded to 15
//! significant digits. Writes go through a temp file and rename, so
//! concurrent writers of identical keys land on last-writer-wins.

use crate::anyon::AnyonLabel;
use crate::cyclo::{CanonicalCyclo, CycloRing};
use crate::group::GroupSpec;
use crate::rep::{unflatten, LinkInvariantSet};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("store document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document {0:?} does not describe link {1:?} at u={2}")]
    Mismatch(PathBuf, String, u32),
}

/// Cache key: crate version plus the group parameters.
pub fn engine_key(spec: &GroupSpec) -> String {
    format!(
        "dwlink/{}/q{}p{}n{}",
        env!("CARGO_PKG_VERSION"),
        spec.q,
        spec.p,
        spec.n
    )
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EntryDoc {
    pub labels: Vec<String>,
    pub coeffs: BTreeMap<u32, i64>,
    pub approx: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvariantDoc {
    pub link: String,
    pub u: u32,
    pub writhe: i64,
    pub components: usize,
    pub engine: String,
    pub entries: Vec<EntryDoc>,
}

fn round15(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Builds the document for one invariant tensor.
pub fn tensor_doc(
    tensor: &crate::rep::InvariantTensor,
    writhe: i64,
    labels: &[AnyonLabel],
    ring: &CycloRing,
    engine: &str,
) -> InvariantDoc {
    let rank = tensor.rank();
    let entries = tensor
        .entries
        .iter()
        .enumerate()
        .map(|(flat, &id)| {
            let value = &tensor.values[id as usize];
            let tuple = unflatten(flat, tensor.order, rank);
            let (re, im) = ring.approx_canonical(value);
            EntryDoc {
                labels: tuple.iter().map(|&l| labels[l].to_string()).collect(),
                coeffs: value.terms().iter().map(|&(e, c)| (e, c)).collect(),
                approx: [round15(re), round15(im)],
            }
        })
        .collect();
    InvariantDoc {
        link: tensor.link_id.clone(),
        u: tensor.u,
        writhe,
        components: tensor.order,
        engine: engine.to_string(),
        entries,
    }
}

/// Builds the document for one `(link, u)` tensor slice.
pub fn invariant_doc(
    set: &LinkInvariantSet,
    u: usize,
    labels: &[AnyonLabel],
    ring: &CycloRing,
    engine: &str,
) -> InvariantDoc {
    tensor_doc(&set.tensor(u), set.writhe, labels, ring, engine)
}

/// Directory of per-`(link, u)` JSON documents.
#[derive(Debug, Clone)]
pub struct ResultStore {
    dir: PathBuf,
    engine: String,
}

impl ResultStore {
    pub fn new(dir: impl Into<PathBuf>, spec: &GroupSpec) -> Self {
        ResultStore {
            dir: dir.into(),
            engine: engine_key(spec),
        }
    }

    pub fn doc_path(&self, link_id: &str, u: u32) -> PathBuf {
        self.dir.join(format!("{}_u{}.json", link_id.replace('/', "_"), u))
    }

    pub fn engine(&self) -> &str {
        &self.engine
    }

    /// Writes one document (temp file + rename).
    pub fn save_doc(&self, doc: &InvariantDoc) -> Result<(), StoreError> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.doc_path(&doc.link, doc.u);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_vec(doc)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Persists every parameter slice of the set.
    pub fn save_set(
        &self,
        set: &LinkInvariantSet,
        labels: &[AnyonLabel],
        ring: &CycloRing,
    ) -> Result<(), StoreError> {
        for u in 0..set.per_u.len() {
            self.save_doc(&invariant_doc(set, u, labels, ring, &self.engine))?;
        }
        Ok(())
    }

    pub fn load_doc(&self, path: &Path) -> Result<InvariantDoc, StoreError> {
        Ok(serde_json::from_slice(&std::fs::read(path)?)?)
    }

    /// Rebuilds a link's tensor set from cached documents. Returns `None`
    /// if any slice is missing or was written by a different engine.
    pub fn load_set(&self, link_id: &str, parameters: usize) -> Option<LinkInvariantSet> {
        let mut dict: Vec<CanonicalCyclo> = Vec::new();
        let mut ids: HashMap<CanonicalCyclo, u32> = HashMap::new();
        let mut per_u = Vec::with_capacity(parameters);
        let mut writhe = 0;
        let mut order = 1;
        for u in 0..parameters {
            let path = self.doc_path(link_id, u as u32);
            let doc = self.load_doc(&path).ok()?;
            if doc.engine != self.engine || doc.link != link_id || doc.u != u as u32 {
                return None;
            }
            writhe = doc.writhe;
            order = doc.components;
            let entries = doc
                .entries
                .iter()
                .map(|e| {
                    let value =
                        CanonicalCyclo::from_terms(e.coeffs.iter().map(|(&k, &v)| (k, v)));
                    let next = dict.len() as u32;
                    *ids.entry(value.clone()).or_insert_with(|| {
                        dict.push(value);
                        next
                    })
                })
                .collect::<Vec<u32>>();
            per_u.push(entries);
        }
        Some(LinkInvariantSet {
            link_id: link_id.to_string(),
            order,
            writhe,
            dict,
            per_u,
        })
    }
}
