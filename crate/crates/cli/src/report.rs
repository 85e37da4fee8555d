use std::fmt::Write as _;

use mfcert::complexes::Verdict;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Info {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub info: Vec<Info>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Verdict>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), info: Vec::new(), checks: Vec::new() }
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.info.push(Info { key: key.into(), value: value.to_string() });
        self
    }

    pub fn check(&mut self, v: Verdict) -> &mut Self {
        self.checks.push(v);
        self
    }

    pub fn checks(&mut self, vs: impl IntoIterator<Item = Verdict>) -> &mut Self {
        self.checks.extend(vs);
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|v| v.pass)
    }
}

/// The report of one run. The JSON form mirrors the text form.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub trials: usize,
    pub inputs: Vec<String>,
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64, trials: usize) -> Self {
        Report {
            command: command.into(),
            seed,
            trials,
            inputs: Vec::new(),
            sections: Vec::new(),
            outputs: Vec::new(),
            error: None,
            pass: false,
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn finish(&mut self) {
        self.pass = self.error.is_none() && self.sections.iter().all(Section::pass);
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mfcert {} (seed {}, trials {})", self.command, self.seed, self.trials);
        for i in &self.inputs {
            let _ = writeln!(out, "input: {i}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.title);
            for i in &s.info {
                let _ = writeln!(out, "  {} = {}", i.key, i.value);
            }
            for v in &s.checks {
                if v.pass && !verbose {
                    let _ = writeln!(out, "  PASS  {}", v.check);
                } else {
                    let status = if v.pass { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "  {status}  {v}");
                }
            }
        }
        for o in &self.outputs {
            let _ = writeln!(out, "\nwrote {o}");
        }
        let _ = writeln!(out, "\nresult: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
