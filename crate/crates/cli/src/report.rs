use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

/// Everything a run prints, in either text or JSON form.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub ring: Vec<String>,
    pub ideal: Vec<String>,
    /// Effective settings after merging file options and flags.
    pub options: BTreeMap<String, String>,
    pub status: String,
    /// Lattice basis (`bin`) or span basis (`tropspan`) rows.
    pub basis: Vec<Vec<i64>>,
    pub lambdas: Vec<String>,
    /// Binomial part generators, or the binomials found by `oracle`.
    pub generators: Vec<String>,
    pub witness: Option<String>,
    pub completeness: Option<String>,
    pub certificates: Vec<bool>,
    pub time_ms: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "ring: {}", self.ring.join(", "));
        let _ = writeln!(s, "ideal: {}", self.ideal.join(", "));
        let opts: Vec<String> = self.options.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let _ = writeln!(s, "options: {}", opts.join(", "));
        let _ = writeln!(s, "status: {}", self.status);
        if !self.basis.is_empty() {
            let _ = writeln!(s, "basis:");
            for row in &self.basis {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                let _ = writeln!(s, "  {}", cells.join(" "));
            }
        }
        if !self.lambdas.is_empty() {
            let _ = writeln!(s, "lambdas: {}", self.lambdas.join(" "));
        }
        if !self.generators.is_empty() {
            let _ = writeln!(s, "generators:");
            for g in &self.generators {
                let _ = writeln!(s, "  {g}");
            }
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {w}");
        }
        if let Some(c) = &self.completeness {
            let _ = writeln!(s, "completeness: {c}");
        }
        if !self.certificates.is_empty() {
            let marks: Vec<&str> = self.certificates.iter().map(|&b| if b { "ok" } else { "FAILED" }).collect();
            let _ = writeln!(s, "certificates: {}", marks.join(" "));
        }
        if let Some(t) = self.time_ms {
            let _ = writeln!(s, "time: {t:.3} ms");
        }
        s
    }
}
