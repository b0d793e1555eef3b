//! Run reports: one per command invocation, printable as text and as JSON.
//! Any embedded certificate has been re-verified in process before the
//! report is emitted; the flag records that.

use serde::Serialize;

use paraclose_core::forcing::CertificateJson;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code conventions: 0 = verdict reached, 2 = inconclusive,
/// 3 = input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verdict,
    Inconclusive,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Verdict => 0,
            Outcome::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: serde_json::Value,
    pub verdict: String,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub detail: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_verified: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, inputs: serde_json::Value) -> RunReport {
        RunReport {
            tool: "paraclose".into(),
            version: TOOL_VERSION.into(),
            command: command.into(),
            inputs,
            verdict: String::new(),
            detail: serde_json::Value::Null,
            certificate: None,
            certificate_verified: None,
            notes: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering for the terminal.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command:  {}\n", self.command));
        out.push_str(&format!("verdict:  {}\n", self.verdict));
        if !self.detail.is_null() {
            out.push_str(&format!(
                "detail:   {}\n",
                serde_json::to_string(&self.detail).expect("detail serializes")
            ));
        }
        if let Some(cert) = &self.certificate {
            out.push_str(&format!(
                "certificate: k = {}, {} parameter cofactors, {} relation cofactors (verified: {})\n",
                cert.k,
                cert.cofactors_g.len(),
                cert.cofactors_h.len(),
                self.certificate_verified.unwrap_or(false),
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("note:     {note}\n"));
        }
        out.push_str(&format!("time:     {} ms\n", self.timing_ms));
        out
    }
}
