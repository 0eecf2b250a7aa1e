//! Per-run verification records and their CSV form.
//!
//! CSV layout: header `target,status,certificate_path,millis`, one row per
//! target in deterministic order, then a trailing `#`-comment summary line.
//! With `stable` timings are zeroed so identical inputs produce
//! byte-identical files regardless of thread count or machine speed.
//!
//! Campaigns over millions of targets stream records through a sink
//! instead of materializing them; the report then retains totals and the
//! failed records only.

use std::io::Write;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetStatus {
    Certified,
    BruteForced,
    Failed(String),
}

impl TargetStatus {
    pub fn as_str(&self) -> &str {
        match self {
            TargetStatus::Certified => "certified",
            TargetStatus::BruteForced => "brute-forced",
            TargetStatus::Failed(_) => "failed",
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, TargetStatus::Failed(_))
    }
}

#[derive(Debug, Clone)]
pub struct TargetRecord {
    pub target: String,
    pub status: TargetStatus,
    pub certificate_path: Option<String>,
    pub millis: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunTotals {
    pub certified: usize,
    pub brute_forced: usize,
    pub failed: usize,
}

impl RunTotals {
    pub fn targets(&self) -> usize {
        self.certified + self.brute_forced + self.failed
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: String,
    pub range: (u64, u64),
    /// All records in collected mode; only the failed ones in streaming mode.
    pub entries: Vec<TargetRecord>,
    pub totals: RunTotals,
    pub elapsed_millis: u64,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>, range: (u64, u64)) -> Self {
        VerificationReport {
            family: family.into(),
            range,
            entries: Vec::new(),
            totals: RunTotals::default(),
            elapsed_millis: 0,
        }
    }

    pub fn push(&mut self, record: TargetRecord) {
        self.count(&record.status);
        self.entries.push(record);
    }

    pub fn count(&mut self, status: &TargetStatus) {
        match status {
            TargetStatus::Certified => self.totals.certified += 1,
            TargetStatus::BruteForced => self.totals.brute_forced += 1,
            TargetStatus::Failed(_) => self.totals.failed += 1,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &TargetRecord> {
        self.entries.iter().filter(|e| e.status.is_failed())
    }

    pub fn succeeded(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.totals.certified,
            self.totals.brute_forced,
            self.totals.failed,
        )
    }

    pub fn summary_line(&self, stable: bool) -> String {
        let elapsed = if stable { 0 } else { self.elapsed_millis };
        format!(
            "# summary family={} from={} to={} targets={} certified={} brute-forced={} failed={} elapsed_ms={}",
            self.family,
            self.range.0,
            self.range.1,
            self.totals.targets(),
            self.totals.certified,
            self.totals.brute_forced,
            self.totals.failed,
            elapsed
        )
    }

    pub fn write_csv<W: Write>(&self, mut out: W, stable: bool) -> std::io::Result<()> {
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["target", "status", "certificate_path", "millis"])
                .map_err(std::io::Error::other)?;
            for e in &self.entries {
                write_record(&mut w, e, stable)?;
            }
            w.flush()?;
        }
        writeln!(out, "{}", self.summary_line(stable))
    }
}

pub(crate) fn write_record<W: Write>(
    w: &mut csv::Writer<W>,
    e: &TargetRecord,
    stable: bool,
) -> std::io::Result<()> {
    let millis = if stable { 0 } else { e.millis };
    w.write_record([
        e.target.as_str(),
        e.status.as_str(),
        e.certificate_path.as_deref().unwrap_or("-"),
        &millis.to_string(),
    ])
    .map_err(std::io::Error::other)
}

/// Streams CSV rows as records arrive; used by campaigns too large to
/// collect.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
    stable: bool,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W, stable: bool) -> std::io::Result<Self> {
        let mut writer = csv::Writer::from_writer(out);
        writer
            .write_record(["target", "status", "certificate_path", "millis"])
            .map_err(std::io::Error::other)?;
        Ok(CsvSink { writer, stable })
    }

    pub fn record(&mut self, e: &TargetRecord) -> std::io::Result<()> {
        write_record(&mut self.writer, e, self.stable)
    }

    pub fn finish(mut self, report: &VerificationReport) -> std::io::Result<W> {
        self.writer.flush()?;
        let mut out = self
            .writer
            .into_inner()
            .map_err(|e| std::io::Error::other(e.error().to_string()))?;
        writeln!(out, "{}", report.summary_line(self.stable))?;
        Ok(out)
    }
}
