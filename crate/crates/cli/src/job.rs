//! Job descriptions, result records and their fingerprints.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use untwist::{FiniteGroup, Quotient};

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JobKind {
    Homology,
    H0n,
    Sha,
    Brn,
    Tuples,
    Dw,
    Orbifold,
}

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::Homology => "homology",
            JobKind::H0n => "h0n",
            JobKind::Sha => "sha",
            JobKind::Brn => "brn",
            JobKind::Tuples => "tuples",
            JobKind::Dw => "dw",
            JobKind::Orbifold => "orbifold",
        }
    }

    pub fn quotient(self) -> Option<Quotient> {
        match self {
            JobKind::Homology => Some(Quotient::Homology),
            JobKind::H0n => Some(Quotient::H0n),
            JobKind::Sha => Some(Quotient::Sha),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobRequest {
    pub group: String,
    pub kind: JobKind,
    pub degree: usize,
    pub modulus: Option<u64>,
    /// Class coordinates in the `H^n(G, Z/m)` basis, for `dw` and `orbifold`.
    pub class: Option<Vec<u64>>,
    /// Orbit index -> `[re, im]`, for `orbifold`.
    pub sectors: Option<BTreeMap<usize, [f64; 2]>>,
}

impl JobRequest {
    pub fn new(group: impl Into<String>, kind: JobKind, degree: usize) -> Self {
        JobRequest { group: group.into(), kind, degree, modulus: None, class: None, sectors: None }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.degree == 0 {
            return Err(CliError::Usage("degree must be at least 1".into()));
        }
        if let Some(m) = self.modulus {
            if m < 2 {
                return Err(CliError::Usage(format!("modulus must be at least 2, got {m}")));
            }
        }
        let needs_class = matches!(self.kind, JobKind::Dw | JobKind::Orbifold);
        if needs_class && self.class.is_none() {
            return Err(CliError::Usage(format!("{} needs --class", self.kind.name())));
        }
        if self.kind == JobKind::Orbifold && self.sectors.is_none() {
            return Err(CliError::Usage("orbifold needs --sectors".into()));
        }
        Ok(())
    }

    /// Everything besides the group that determines the payload.
    fn params(&self) -> Value {
        json!({
            "subcommand": self.kind.name(),
            "degree": self.degree,
            "modulus": self.modulus,
            "class": self.class,
            "sectors": self.sectors.as_ref().map(|s| {
                s.iter().map(|(k, v)| json!([k, v[0].to_bits(), v[1].to_bits()])).collect::<Vec<_>>()
            }),
        })
    }
}

/// Hash of the multiplication table. Element labels are canonical for the
/// permutation group, so different generating sets of the same group give
/// the same digest. Groups too large for a table hash their sorted
/// permutations instead.
pub fn group_fingerprint(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    let n = g.order();
    if g.has_table() {
        h.update(b"table\0");
        h.update((n as u64).to_le_bytes());
        let bytes: Vec<u8> = g.table_entries().iter().flat_map(|e| e.to_le_bytes()).collect();
        h.update(&bytes);
    } else {
        h.update(b"perms\0");
        h.update((g.degree() as u64).to_le_bytes());
        for x in 0..n {
            let bytes: Vec<u8> = g.perm(x).iter().flat_map(|e| e.to_le_bytes()).collect();
            h.update(&bytes);
        }
    }
    format!("{:x}", h.finalize())
}

pub fn job_fingerprint(group_fp: &str, job: &JobRequest) -> String {
    let mut h = Sha256::new();
    h.update(group_fp.as_bytes());
    h.update(b"\0");
    h.update(VERSION.as_bytes());
    h.update(b"\0");
    h.update(job.params().to_string().as_bytes());
    format!("{:x}", h.finalize())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub fingerprint: String,
    pub version: String,
    pub subcommand: String,
    pub payload: Value,
    pub timings_ms: BTreeMap<String, f64>,
    /// Oracle routes that agreed; only set on a verified run.
    #[serde(skip)]
    pub verified: Vec<String>,
    #[serde(skip)]
    pub cached: bool,
}
