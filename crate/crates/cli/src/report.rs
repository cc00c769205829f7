//! Check records and the versioned JSON run report.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-uncertified")]
    SkippedUncertified,
}

/// One executed check; `status` is pass only on exact agreement at the
/// ideal level (never generator-list comparison).
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub case: String,
    pub operation: String,
    pub inputs: String,
    pub result: String,
    pub expected: Option<String>,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub records: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Wall-clock facts live here so the rest of the report stays byte-stable.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Meta {
    pub timestamp_ms: u128,
    pub jobs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
    pub meta: Meta,
}

impl RunReport {
    pub fn new(cases: Vec<CaseReport>, jobs: usize) -> Self {
        let mut summary = Summary::default();
        for case in &cases {
            for r in &case.records {
                summary.total += 1;
                match r.status {
                    Status::Pass => summary.pass += 1,
                    Status::Fail => summary.fail += 1,
                    Status::SkippedUncertified => summary.skipped += 1,
                }
            }
        }
        let timestamp_ms = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        RunReport { schema: 1, cases, summary, meta: Meta { timestamp_ms, jobs } }
    }

    /// The report without its meta block: two runs on identical inputs
    /// produce byte-identical output here.
    pub fn deterministic_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": self.schema,
            "cases": self.cases,
            "summary": self.summary,
        })
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Digest used to pin a record to its exact inputs.
pub fn input_digest(file_text: &str, operation: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(file_text.as_bytes());
    hasher.update(b"\n");
    hasher.update(operation.as_bytes());
    let digest = hasher.finalize();
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
