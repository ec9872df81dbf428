//! Machine-readable result documents. The `body` is deterministic for a
//! given job (byte-identical across repeated runs, with or without cache);
//! timings and cache diagnostics live in `meta`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{rational_to_f64, LengthSequence, LimitEstimate, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub body: ReportBody,
    pub meta: ReportMeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportBody {
    pub tool: String,
    pub version: String,
    pub input_hash: String,
    pub ring: RingEcho,
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub table: Vec<TableRow>,
    pub estimates: Vec<EstimateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phantom: Option<Vec<PhantomOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tcevidence: Option<TcOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compare: Option<CompareOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrosscheckOut>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportMeta {
    pub elapsed_ms: u128,
    pub cache_enabled: bool,
    pub cache_hits: Vec<String>,
    pub cache_writes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingEcho {
    pub p: u64,
    pub vars: Vec<String>,
    pub weights: Vec<u64>,
    pub order: String,
    pub ideal: Vec<String>,
    pub dim: i64,
    pub equidimensional: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub e: u32,
    pub q: u64,
    pub i: usize,
    pub lambda: u64,
    pub normalized: f64,
    pub normalized_exact: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateOut {
    pub label: String,
    pub c: f64,
    pub c_exact: String,
    pub b: f64,
    pub b_exact: String,
    pub relative_residual: f64,
    pub residual_exact: String,
    pub method: String,
    pub e_range: [u32; 2],
    pub low_confidence: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolutionOut {
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<i64>>,
    pub certified: bool,
    pub minimal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictOut {
    pub kind: String,
    pub witness_spot: Option<usize>,
    pub oracle_regular: bool,
    pub inconsistency: bool,
    pub tol: String,
    pub e_max: u32,
    pub length: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhantomOut {
    pub spot: usize,
    pub multiplier: String,
    pub rows: Vec<PhantomRow>,
    pub empirically_stably_phantom: bool,
    pub multiplier_in_r_circ_unverified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhantomRow {
    pub e: u32,
    pub annihilates: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TcOut {
    pub tol: String,
    pub evidence_for_containment: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareOut {
    pub spot: usize,
    pub d: i64,
    pub rows: Vec<CompareRowOut>,
    pub consistent: bool,
    pub tol: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareRowOut {
    pub e: u32,
    pub q: u64,
    pub lambda_r: u64,
    pub lambda_req: u64,
    pub gap: f64,
    pub gap_exact: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckOut {
    pub instances: Vec<CrosscheckRowOut>,
    pub all_equal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckRowOut {
    pub spot: usize,
    pub e: u32,
    pub gb_length: u64,
    pub dense_length: u64,
    pub bound: i64,
    pub equal: bool,
}

pub fn rational_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Table rows for a sequence at its spot, normalized by q^d.
pub fn rows_from_sequence(seq: &LengthSequence) -> Vec<TableRow> {
    seq.entries
        .iter()
        .map(|en| {
            let norm = seq.normalized(en);
            TableRow {
                e: en.e,
                q: en.q,
                i: seq.spot,
                lambda: en.lambda,
                normalized: rational_to_f64(&norm),
                normalized_exact: rational_string(&norm),
            }
        })
        .collect()
}

pub fn estimate_out(label: impl Into<String>, est: &LimitEstimate) -> EstimateOut {
    EstimateOut {
        label: label.into(),
        c: rational_to_f64(&est.c),
        c_exact: rational_string(&est.c),
        b: rational_to_f64(&est.b),
        b_exact: rational_string(&est.b),
        relative_residual: rational_to_f64(&est.relative_residual),
        residual_exact: rational_string(&est.relative_residual),
        method: est.method.clone(),
        e_range: [est.e_range.0, est.e_range.1],
        low_confidence: est.low_confidence,
    }
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn csv_text(rows: &[TableRow]) -> String {
    let mut s = String::from("e,q,i,lambda,normalized\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.e, r.q, r.i, r.lambda, r.normalized));
    }
    s
}

/// Atomic write: temp file in the target directory, then rename, so an
/// unwritable path never leaves a partial file behind.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp_dir = dir.unwrap_or_else(|| Path::new("."));
    let mut tmp = tmp_dir.to_path_buf();
    tmp.push(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    let mut f = std::fs::File::create(&tmp).map_err(Error::Io)?;
    f.write_all(content.as_bytes()).map_err(Error::Io)?;
    f.sync_all().ok();
    drop(f);
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::Io(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_only_when_empty() {
        assert_eq!(csv_text(&[]), "e,q,i,lambda,normalized\n");
    }

    #[test]
    fn csv_rows() {
        let rows = vec![TableRow {
            e: 1,
            q: 5,
            i: 1,
            lambda: 9,
            normalized: 1.8,
            normalized_exact: "9/5".into(),
        }];
        let s = csv_text(&rows);
        assert_eq!(s, "e,q,i,lambda,normalized\n1,5,1,9,1.8\n");
    }

    #[test]
    fn atomic_write_fails_cleanly_on_unwritable_dir() {
        let p = Path::new("/nonexistent-dir-hktor/report.json");
        assert!(write_atomic(p, "x").is_err());
    }
}
