//! Invariants for every group spec file in a directory.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use untwist::group::group_from_spec;

use crate::error::{CliError, ErrorJson};
use crate::job::{group_fingerprint, JobKind, JobRequest};
use crate::run::{run_on, Context};

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub file: String,
    pub group: String,
    pub order: usize,
    pub fingerprint: String,
    pub homology: Value,
    pub h0n: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha: Option<Value>,
    /// `h0n == homology` and both nontrivial.
    pub untwisted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanFailure {
    pub file: String,
    pub error: ErrorJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub degree: usize,
    pub subcommand: &'static str,
    pub groups: Vec<ScanRow>,
    pub failures: Vec<ScanFailure>,
}

fn is_trivial(inv: &Value) -> bool {
    inv["free_rank"] == 0 && inv["torsion"].as_array().is_some_and(|t| t.is_empty())
}

/// Regular files in `dir`, by name. Hidden files are skipped.
fn spec_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let rd = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in rd {
        let entry = entry?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if !hidden && entry.file_type()?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

fn scan_one(path: &Path, n: usize, with_sha: bool, ctx: &Context) -> Result<ScanRow, CliError> {
    let spec = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let spec = spec.trim().to_string();
    let g = group_from_spec(&spec, &ctx.cfg.budgets)?;
    let fp = group_fingerprint(&g);
    let inv = |kind| run_on(&g, &fp, &JobRequest::new(spec.clone(), kind, n), ctx).map(|r| r.payload);
    let homology = inv(JobKind::Homology)?;
    let h0n = inv(JobKind::H0n)?;
    let sha = if with_sha { Some(inv(JobKind::Sha)?) } else { None };
    Ok(ScanRow {
        file: file_name(path),
        group: spec.clone(),
        order: g.order(),
        fingerprint: fp,
        untwisted: h0n == homology && !is_trivial(&homology),
        homology,
        h0n,
        sha,
    })
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Rows sorted by group fingerprint, then file name, so the summary does
/// not depend on scheduling. `kind` must be an invariant subcommand.
pub fn scan(dir: &Path, n: usize, kind: JobKind, ctx: &Context) -> Result<ScanSummary, CliError> {
    if kind.quotient().is_none() {
        return Err(CliError::Usage(format!("scan supports homology, h0n and sha, not {}", kind.name())));
    }
    JobRequest::new("", kind, n).validate()?;
    let files = spec_files(dir)?;
    let results = ctx.cfg.exec.map_slice(&files, |p| (file_name(p), scan_one(p, n, kind == JobKind::Sha, ctx)));
    let mut groups = Vec::new();
    let mut failures = Vec::new();
    for (file, r) in results {
        match r {
            Ok(row) => groups.push(row),
            Err(e) => failures.push(ScanFailure { file, error: e.to_json() }),
        }
    }
    groups.sort_by(|a, b| (&a.fingerprint, &a.file).cmp(&(&b.fingerprint, &b.file)));
    failures.sort_by(|a, b| a.file.cmp(&b.file));
    Ok(ScanSummary { degree: n, subcommand: kind.name(), groups, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.txt"), "C4\n").unwrap();
        std::fs::write(dir.path().join("b.txt"), "Z9").unwrap();
        std::fs::write(dir.path().join("c.txt"), "C1").unwrap();
        std::fs::write(dir.path().join(".hidden"), "junk").unwrap();
        let s = scan(dir.path(), 3, JobKind::H0n, &Context::default()).unwrap();
        assert_eq!(s.groups.len(), 2);
        assert_eq!(s.failures.len(), 1);
        assert_eq!(s.failures[0].file, "b.txt");
        assert_eq!(s.failures[0].error.code, 3);
        let c4 = s.groups.iter().find(|r| r.file == "a.txt").unwrap();
        assert!(c4.untwisted);
        // Equal but trivial does not count.
        let c1 = s.groups.iter().find(|r| r.file == "c.txt").unwrap();
        assert_eq!(c1.h0n, c1.homology);
        assert!(!c1.untwisted);
        assert!(s.groups[0].fingerprint <= s.groups[1].fingerprint);
    }

    #[test]
    fn rejects_non_invariant_kinds() {
        let dir = tempfile::tempdir().unwrap();
        assert!(scan(dir.path(), 2, JobKind::Dw, &Context::default()).is_err());
        assert!(scan(&dir.path().join("missing"), 2, JobKind::H0n, &Context::default()).is_err());
    }
}
