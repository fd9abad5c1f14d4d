//! Rendering records and scan summaries as JSON, CSV or text.

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::job::{JobKind, JobRequest, ResultRecord};
use crate::scan::ScanSummary;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

fn csv_out(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn join(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(scalar).collect::<Vec<_>>().join(";"))
        .unwrap_or_default()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `Z/2 + (Z/4)^2` style, `0` when trivial.
pub fn invariants_text(v: &Value) -> String {
    let torsion: Vec<String> = v["torsion"].as_array().map(|a| a.iter().map(scalar).collect()).unwrap_or_default();
    let free = v["free_rank"].as_u64().unwrap_or(0);
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    let mut i = 0;
    while i < torsion.len() {
        let k = torsion[i..].iter().take_while(|d| **d == torsion[i]).count();
        parts.push(if k == 1 { format!("Z/{}", torsion[i]) } else { format!("(Z/{})^{k}", torsion[i]) });
        i += k;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn timings_text(rec: &ResultRecord) -> String {
    let t: Vec<String> = rec.timings_ms.iter().map(|(k, v)| format!("{k}={v:.1}ms")).collect();
    format!("timings: {}{}", t.join(" "), if rec.cached { " (cached)" } else { "" })
}

pub fn render_record(job: &JobRequest, rec: &ResultRecord, format: Format) -> String {
    let p = &rec.payload;
    let n = job.degree;
    match format {
        Format::Json => {
            let mut out = p.clone();
            if let Value::Object(map) = &mut out {
                if job.kind.quotient().is_some() {
                    map.insert("timings_ms".into(), json!(rec.timings_ms));
                }
                if !rec.verified.is_empty() {
                    map.insert("verified".into(), json!(rec.verified));
                }
            }
            format!("{out}\n")
        }
        Format::Csv => match job.kind {
            JobKind::Homology | JobKind::H0n | JobKind::Sha | JobKind::Brn => {
                csv_out(&["torsion", "free_rank"], vec![vec![join(&p["torsion"]), scalar(&p["free_rank"])]])
            }
            JobKind::Tuples => csv_out(
                &["index", "rep", "stab", "orbit"],
                p.as_array()
                    .into_iter()
                    .flatten()
                    .enumerate()
                    .map(|(i, o)| vec![i.to_string(), join(&o["rep"]), scalar(&o["stab"]), scalar(&o["orbit"])])
                    .collect(),
            ),
            JobKind::Dw => csv_out(
                &["exponent", "weight"],
                p["histogram"]
                    .as_object()
                    .into_iter()
                    .flatten()
                    .map(|(k, w)| vec![k.clone(), scalar(w)])
                    .collect(),
            ),
            JobKind::Orbifold => csv_out(&["re", "im"], vec![vec![scalar(&p["value"][0]), scalar(&p["value"][1])]]),
        },
        Format::Text => {
            let g = &job.group;
            let body = match job.kind {
                JobKind::Homology => format!("H_{n}({g}, Z) = {}", invariants_text(p)),
                JobKind::H0n => format!("H_0{n}({g}, Z) = {}", invariants_text(p)),
                JobKind::Sha => format!("Sha_{n}({g}) = {}", invariants_text(p)),
                JobKind::Brn => {
                    let m = &p["modulus"];
                    format!(
                        "Br^{n}({g}, Z/{m}) = {}\nH^{n}({g}, Z/{m}) = {}\nExt part = {}\nHom part = {}",
                        invariants_text(p),
                        invariants_text(&p["cohomology"]),
                        invariants_text(&p["ext"]),
                        invariants_text(&p["hom_part"])
                    )
                }
                JobKind::Tuples => {
                    let lines: Vec<String> = p
                        .as_array()
                        .into_iter()
                        .flatten()
                        .enumerate()
                        .map(|(i, o)| format!("{i}: rep {} stab {} orbit {}", o["rep"], o["stab"], o["orbit"]))
                        .collect();
                    format!("{} orbits\n{}", lines.len(), lines.join("\n"))
                }
                JobKind::Dw => {
                    let hist: Vec<String> = p["histogram"]
                        .as_object()
                        .into_iter()
                        .flatten()
                        .map(|(k, w)| format!("  phase {k}/{}: {}", p["modulus"], scalar(w)))
                        .collect();
                    format!("Z = {} + {}i\n{}", p["value"][0], p["value"][1], hist.join("\n"))
                }
                JobKind::Orbifold => format!("Z = {} + {}i", p["value"][0], p["value"][1]),
            };
            let verified = if rec.verified.is_empty() {
                String::new()
            } else {
                format!("\nverified: {}", rec.verified.join(", "))
            };
            format!("{body}{verified}\n{}\n", timings_text(rec))
        }
    }
}

pub fn render_scan(s: &ScanSummary, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(s).expect("summary serializes")),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = s
                .groups
                .iter()
                .map(|r| {
                    vec![
                        r.file.clone(),
                        r.group.clone(),
                        r.order.to_string(),
                        r.fingerprint.clone(),
                        invariants_text(&r.homology),
                        invariants_text(&r.h0n),
                        r.sha.as_ref().map(invariants_text).unwrap_or_default(),
                        r.untwisted.to_string(),
                        String::new(),
                    ]
                })
                .collect();
            rows.extend(s.failures.iter().map(|f| {
                let mut r = vec![String::new(); 9];
                r[0] = f.file.clone();
                r[8] = format!("{}: {}", f.error.kind, f.error.message);
                r
            }));
            csv_out(
                &["file", "group", "order", "fingerprint", "homology", "h0n", "sha", "untwisted", "error"],
                rows,
            )
        }
        Format::Text => {
            let n = s.degree;
            let mut out = String::new();
            for r in &s.groups {
                out.push_str(&format!(
                    "{} ({}, order {}): H_{n} = {}, H_0{n} = {}{}{}\n",
                    r.file,
                    r.group,
                    r.order,
                    invariants_text(&r.homology),
                    invariants_text(&r.h0n),
                    r.sha.as_ref().map(|v| format!(", Sha_{n} = {}", invariants_text(v))).unwrap_or_default(),
                    if r.untwisted { ", untwisted" } else { "" }
                ));
            }
            for f in &s.failures {
                out.push_str(&format!("{}: error ({}): {}\n", f.file, f.error.kind, f.error.message));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_strings() {
        assert_eq!(invariants_text(&json!({"torsion": [], "free_rank": 0})), "0");
        assert_eq!(invariants_text(&json!({"torsion": [2, 2, 6], "free_rank": 1})), "Z + (Z/2)^2 + Z/6");
    }

    #[test]
    fn csv_quotes_commas() {
        let s = csv_out(&["a"], vec![vec!["x,y".into()]]);
        assert_eq!(s, "a\n\"x,y\"\n");
    }
}
