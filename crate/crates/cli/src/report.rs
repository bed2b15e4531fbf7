use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "chorddom-report/1";

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    /// sha256 over the input files, concatenated in the order read.
    pub input_digest: String,
    /// Ascending ids: chords for sets, vertices for paths.
    pub solution: Option<Vec<usize>>,
    pub size: Option<usize>,
    pub feasible: bool,
    pub duration_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub details: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(inputs: &[&str]) -> Self {
        let mut h = Sha256::new();
        for t in inputs {
            h.update(t.as_bytes());
        }
        let digest = h
            .finalize()
            .iter()
            .fold(String::from("sha256:"), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            });
        Report {
            schema: SCHEMA,
            command: Vec::new(),
            input_digest: digest,
            solution: None,
            size: None,
            feasible: true,
            duration_ms: 0.0,
            seed: None,
            verdicts: BTreeMap::new(),
            error: None,
            details: BTreeMap::new(),
        }
    }

    pub fn set_solution(&mut self, mut ids: Vec<usize>) {
        ids.sort_unstable();
        self.size = Some(ids.len());
        self.solution = Some(ids);
    }

    pub fn verdict(&mut self, name: &str, ok: bool) {
        self.verdicts.insert(name.to_string(), ok);
    }

    pub fn detail(&mut self, name: &str, value: Value) {
        self.details.insert(name.to_string(), value);
    }

    pub fn fail(&mut self, reason: String) {
        self.error = Some(reason);
    }

    /// 0 when feasible with every verdict passing, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.feasible && self.error.is_none() && self.verdicts.values().all(|&v| v) {
            0
        } else {
            2
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "input: {}", self.input_digest);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "feasible: {}", self.feasible);
        if let (Some(sol), Some(size)) = (&self.solution, self.size) {
            let ids: Vec<String> = sol.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "size: {size}");
            let _ = writeln!(out, "solution: {}", ids.join(" "));
        }
        for (name, ok) in &self.verdicts {
            let _ = writeln!(out, "verdict {name}: {}", if *ok { "pass" } else { "fail" });
        }
        for (name, value) in &self.details {
            let _ = writeln!(out, "{name}: {value}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(out, "duration_ms: {:.3}", self.duration_ms);
        out
    }
}
