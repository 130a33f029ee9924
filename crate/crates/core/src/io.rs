//! On-disk document formats.
//!
//! Every randomized artifact records the generator (`prng`) and seed in
//! its header fields so runs can be reproduced exactly.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::cff::CoverFreeFamily;
use crate::dnf::{Mdnf, Term};
use crate::error::{Error, Result};
use crate::instances::{adversarial_pair_lower_bound, adversarial_pair_with_k, InstancePair};
use crate::learners::RunReport;

/// Random stream used throughout: one `u64` seed expanded by ChaCha12.
pub const PRNG_SPEC: &str = "chacha12 (rand_chacha 0.9, seed_from_u64)";

/// An instance file: `n` plus the reduced term list as 0-based indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub terms: Vec<Vec<usize>>,
}

impl InstanceDoc {
    pub fn from_mdnf(f: &Mdnf) -> Self {
        InstanceDoc {
            prng: None,
            seed: None,
            n: f.n(),
            terms: f.terms().iter().map(|t| t.vars().to_vec()).collect(),
        }
    }

    pub fn seeded(f: &Mdnf, seed: u64) -> Self {
        InstanceDoc {
            prng: Some(PRNG_SPEC.to_string()),
            seed: Some(seed),
            ..Self::from_mdnf(f)
        }
    }

    /// Decode and validate. Strict mode requires strictly increasing
    /// index lists forming an already-reduced term set; `raw` accepts
    /// unsorted, duplicated, or absorbable terms and normalizes them.
    /// Out-of-range indices are rejected either way.
    pub fn to_mdnf(&self, raw: bool) -> Result<Mdnf> {
        for (i, term) in self.terms.iter().enumerate() {
            if let Some(&v) = term.iter().find(|&&v| v >= self.n) {
                return Err(Error::InvalidDocument(format!(
                    "term {i}: variable index {v} out of range (n = {})",
                    self.n
                )));
            }
        }
        if raw {
            return Ok(Mdnf::reduce(
                self.n,
                self.terms.iter().map(|t| Term::new(t.iter().copied())),
            ));
        }
        for (i, term) in self.terms.iter().enumerate() {
            if term.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidDocument(format!(
                    "term {i} is not strictly increasing (pass raw mode to normalize)"
                )));
            }
        }
        let reduced = Mdnf::reduce(
            self.n,
            self.terms.iter().map(|t| Term::new(t.iter().copied())),
        );
        if reduced.term_count() != self.terms.len() {
            return Err(Error::InvalidDocument(
                "term set is not reduced (pass raw mode to normalize)".into(),
            ));
        }
        Ok(reduced)
    }
}

/// A hard-pair file: the two embedded instances plus the construction
/// metadata needed to rebuild them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub ell: usize,
    pub t: usize,
    pub k_vector: Vec<usize>,
    /// `t^floor(ell/t)`: reference query count for distinguishing f from g.
    pub reference_queries: f64,
    pub f: InstanceDoc,
    pub g: InstanceDoc,
    /// Minimal distinguishing assignment as a 0/1 string.
    pub witness: String,
}

impl PairDoc {
    pub fn from_pair(pair: &InstancePair, seed: Option<u64>) -> Self {
        PairDoc {
            prng: seed.map(|_| PRNG_SPEC.to_string()),
            seed,
            ell: pair.ell,
            t: pair.t,
            k_vector: pair.k_vector.clone(),
            reference_queries: adversarial_pair_lower_bound(pair.ell, pair.t),
            f: InstanceDoc::from_mdnf(&pair.f),
            g: InstanceDoc::from_mdnf(&pair.g),
            witness: pair.witness.to_string(),
        }
    }

    /// Rebuild the pair from the metadata and check the embedded
    /// instances against it.
    pub fn to_pair(&self) -> Result<InstancePair> {
        let pair = adversarial_pair_with_k(self.ell, self.t, self.k_vector.clone())?;
        if !pair.f.equivalent(&self.f.to_mdnf(false)?)
            || !pair.g.equivalent(&self.g.to_mdnf(false)?)
            || pair.witness.to_string() != self.witness
        {
            return Err(Error::InvalidDocument(
                "embedded instances do not match the pair metadata".into(),
            ));
        }
        Ok(pair)
    }
}

/// A cover-free family file with rows as 0/1 strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CffDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub ground_n: usize,
    pub s: usize,
    pub r: usize,
    pub verified: bool,
    pub rows: Vec<String>,
}

impl CffDoc {
    pub fn from_family(family: &CoverFreeFamily, seed: Option<u64>) -> Self {
        CffDoc {
            prng: seed.map(|_| PRNG_SPEC.to_string()),
            seed,
            ground_n: family.ground_n(),
            s: family.s(),
            r: family.r(),
            verified: family.is_verified(),
            rows: family.rows().iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn to_family(&self) -> Result<CoverFreeFamily> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.ground_n {
                return Err(Error::InvalidDocument(format!(
                    "row {i} has length {} instead of ground_n = {}",
                    row.len(),
                    self.ground_n
                )));
            }
            rows.push(row.parse::<Assignment>()?);
        }
        let mut family = CoverFreeFamily::from_rows(self.ground_n, self.s, self.r, rows);
        family.mark_verified(self.verified);
        Ok(family)
    }
}

/// A learner run report; mirror of [`RunReport`] with the hypothesis
/// embedded in instance format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
    pub algorithm: u8,
    pub n: usize,
    pub s_max: usize,
    pub r_max: usize,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    pub queries: u64,
    pub queries_dedup: u64,
    pub queries_saved: u64,
    pub terms_found: usize,
    pub success: bool,
    pub elapsed_ms: u64,
    pub hypothesis: InstanceDoc,
    pub bounds: crate::instances::BoundValues,
}

impl ReportDoc {
    pub fn from_report(report: &RunReport) -> Self {
        ReportDoc {
            prng: report.seed.map(|_| PRNG_SPEC.to_string()),
            algorithm: report.algorithm.index(),
            n: report.n,
            s_max: report.s_max,
            r_max: report.r_max,
            delta: report.delta,
            seed: report.seed,
            queries: report.queries,
            queries_dedup: report.queries_dedup,
            queries_saved: report.queries_saved,
            terms_found: report.terms_found,
            success: report.success,
            elapsed_ms: report.elapsed_ms,
            hypothesis: InstanceDoc::from_mdnf(&report.hypothesis),
            bounds: report.bounds,
        }
    }
}

/// Pretty-printed JSON with a trailing newline; field order is the
/// struct order, so identical values serialize byte-identically.
pub fn save_json<T: Serialize>(path: impl AsRef<Path>, doc: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::InvalidDocument(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(&path)?;
    serde_json::from_str(&text).map_err(|e| {
        Error::InvalidDocument(format!("{}: {e}", path.as_ref().display()))
    })
}
