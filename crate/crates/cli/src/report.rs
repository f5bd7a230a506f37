//! Line-oriented verification reports.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    VerifiedEmpty,
    SurvivorsFound,
    BoundsMatched,
    BoundsMismatched,
    /// Stopped at a checkpoint before the scan finished.
    Incomplete,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::VerifiedEmpty => "verified-empty",
            Verdict::SurvivorsFound => "survivors-found",
            Verdict::BoundsMatched => "bounds-matched",
            Verdict::BoundsMismatched => "bounds-mismatched",
            Verdict::Incomplete => "incomplete",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::VerifiedEmpty | Verdict::BoundsMatched => 0,
            Verdict::SurvivorsFound | Verdict::BoundsMismatched => 1,
            Verdict::Incomplete => 3,
        }
    }

    pub fn matched(ok: bool) -> Self {
        if ok {
            Verdict::BoundsMatched
        } else {
            Verdict::BoundsMismatched
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub echo: String,
    pub hash: String,
    /// Stage rows, counters, bound rows.
    pub rows: Vec<String>,
    /// Survivors or listed solutions.
    pub findings: Vec<String>,
    pub verdict: Verdict,
    pub summary: Vec<String>,
    pub wall_ms: u128,
}

impl Report {
    pub fn new(cfg: &RunConfig) -> Self {
        Self {
            echo: cfg.echo(),
            hash: cfg.hash(),
            rows: Vec::new(),
            findings: Vec::new(),
            verdict: Verdict::VerifiedEmpty,
            summary: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn row(&mut self, r: impl Into<String>) {
        self.rows.push(r.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    /// Machine-readable records. Every line carries the config hash; only the
    /// final `wall-clock` line differs between reruns.
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "report cfg={} command=\"{}\"", self.hash, self.echo).unwrap();
        for r in &self.rows {
            writeln!(s, "cfg={} {r}", self.hash).unwrap();
        }
        for r in &self.findings {
            writeln!(s, "cfg={} {r}", self.hash).unwrap();
        }
        writeln!(s, "cfg={} verdict={}", self.hash, self.verdict.label()).unwrap();
        writeln!(s, "cfg={} wall-clock-ms={}", self.hash, self.wall_ms).unwrap();
        s
    }

    /// The rendered report minus the wall-clock line.
    pub fn render_stable(&self) -> String {
        let full = self.render();
        full.lines().filter(|l| !l.contains(" wall-clock-ms=")).map(|l| format!("{l}\n")).collect()
    }

    pub fn render_summary(&self) -> String {
        let mut s = String::new();
        for l in &self.summary {
            writeln!(s, "# {l}").unwrap();
        }
        writeln!(s, "# verdict: {} ({} findings, {} ms)", self.verdict.label(), self.findings.len(), self.wall_ms).unwrap();
        s
    }

    /// Appends the records to `<dir>/<command>-<hash>.report`.
    pub fn append_to(&self, dir: &Path) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let stem: String = self.echo.split(' ').take_while(|w| !w.contains('=')).collect::<Vec<_>>().join("-");
        let path = dir.join(format!("{stem}-{}.report", self.hash));
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        f.write_all(self.render().as_bytes()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}
