//! Machine-parseable check records.
//!
//! The default stream is JSON lines: one `{"config": …}` line followed by
//! one line per check, sorted by (suite, check, q, d, set, seed). All
//! values are produced by fixed-order reductions, so two runs with equal
//! configuration emit byte-identical streams; wall-clock timing goes to
//! stderr only, never into the stream.

use crate::config::ExperimentConfig;
use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Diagnostic record: a reported value with no pass/fail semantics.
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub check: String,
    /// Stable identifier of the identity/bound the check exercises.
    pub anchor: &'static str,
    pub q: u64,
    pub l: u32,
    pub d: u32,
    pub set: String,
    pub mode: &'static str,
    pub seed: u64,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub margin: String,
}

impl CheckRecord {
    fn sort_key(&self) -> (String, String, u64, u32, String, u64) {
        (self.suite.to_string(), self.check.clone(), self.q, self.d, self.set.clone(), self.seed)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: ExperimentConfig,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: ExperimentConfig, mut records: Vec<CheckRecord>) -> Report {
        records.sort_by_key(|r| r.sort_key());
        Report { config, records }
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    /// Exit-code contract: 0 iff no fail records.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failures() > 0)
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct ConfigLine<'a> {
            config: &'a ExperimentConfig,
        }
        writeln!(out, "{}", serde_json::to_string(&ConfigLine { config: &self.config })?)?;
        for r in &self.records {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# config: {}", serde_json::to_string(&self.config)?)?;
        writeln!(out, "suite,check,anchor,q,l,d,set,mode,seed,status,lhs,rhs,margin")?;
        for r in &self.records {
            let status = serde_json::to_string(&r.status)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.suite,
                csv_field(&r.check),
                r.anchor,
                r.q,
                r.l,
                r.d,
                csv_field(&r.set),
                r.mode,
                r.seed,
                status.trim_matches('"'),
                csv_field(&r.lhs),
                csv_field(&r.rhs),
                csv_field(&r.margin),
            )?;
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builder used by the suites.
pub struct RecordBuilder {
    pub suite: &'static str,
    pub q: u64,
    pub l: u32,
    pub d: u32,
    pub set: String,
    pub mode: &'static str,
    pub seed: u64,
}

impl RecordBuilder {
    pub fn make(
        &self,
        check: impl Into<String>,
        anchor: &'static str,
        status: Status,
        lhs: impl ToString,
        rhs: impl ToString,
        margin: impl ToString,
    ) -> CheckRecord {
        CheckRecord {
            suite: self.suite,
            check: check.into(),
            anchor,
            q: self.q,
            l: self.l,
            d: self.d,
            set: self.set.clone(),
            mode: self.mode,
            seed: self.seed,
            status,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            margin: margin.to_string(),
        }
    }

    pub fn pass_fail(&self, ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}
