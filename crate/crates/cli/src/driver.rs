//! Chunked, checkpointed and threaded execution of one scan.
//!
//! The outer index is processed in windows of `chunk` positions. After each
//! window the findings so far and the summed counters are written to the
//! checkpoint file together with the next cursor, so a resumed run reproduces
//! the uninterrupted output exactly. Within a window each local thread takes
//! one residue class of the worker's partition.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use xdio_sieves::{Checkpoint, Control, Partition, ScanOutcome, SieveError};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct DriveOpts {
    pub stage: String,
    pub hash: String,
    pub partition: Partition,
    pub threads: usize,
    pub chunk: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub stop_after: Option<usize>,
}

impl DriveOpts {
    pub fn simple(stage: &str, hash: &str) -> Self {
        Self {
            stage: stage.into(),
            hash: hash.into(),
            partition: Partition::SINGLE,
            threads: 1,
            chunk: None,
            checkpoint: None,
            resume: false,
            stop_after: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanRun {
    /// `(outer index, record)` in single-run order.
    pub records: Vec<(usize, String)>,
    pub counters: Vec<(String, u64)>,
    pub complete: bool,
    pub cursor: usize,
    pub resumed_from: Option<usize>,
}

impl ScanRun {
    fn add_counters(&mut self, more: &[(&'static str, u64)]) {
        for (k, v) in more {
            match self.counters.iter_mut().find(|(n, _)| n == k) {
                Some(slot) => slot.1 += v,
                None => self.counters.push((k.to_string(), *v)),
            }
        }
    }

    pub fn counter(&self, name: &str) -> Option<u64> {
        self.counters.iter().find(|(n, _)| n == name).map(|p| p.1)
    }

    pub fn counter_line(&self) -> String {
        let parts: Vec<String> = self.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(" ")
    }
}

/// Checkpoint file: the cursor line, then `counter` and `record` lines.
pub fn write_checkpoint(path: &Path, stage: &str, hash: &str, run: &ScanRun) -> Result<(), CliError> {
    let mut s = String::new();
    let cp = Checkpoint { stage: stage.into(), cursor: run.cursor, config_hash: hash.into() };
    writeln!(s, "{}", cp.to_line()).unwrap();
    for (k, v) in &run.counters {
        writeln!(s, "counter {k} {v}").unwrap();
    }
    for (i, r) in &run.records {
        writeln!(s, "record {i} {r}").unwrap();
    }
    let tmp = path.with_extension("tmp");
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(&tmp, s).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

pub fn read_checkpoint(path: &Path) -> Result<(Checkpoint, ScanRun), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| CliError::Checkpoint(format!("{} is empty", path.display())))?;
    let cp = Checkpoint::parse(head).map_err(|e| CliError::Checkpoint(e.to_string()))?;
    let mut run = ScanRun { cursor: cp.cursor, resumed_from: Some(cp.cursor), ..ScanRun::default() };
    let bad = |l: &str| CliError::Checkpoint(format!("unreadable line {l:?}"));
    for l in lines {
        let mut it = l.splitn(3, ' ');
        match (it.next(), it.next(), it.next()) {
            (Some("counter"), Some(k), Some(v)) => run.counters.push((k.into(), v.parse().map_err(|_| bad(l))?)),
            (Some("record"), Some(i), Some(r)) => run.records.push((i.parse().map_err(|_| bad(l))?, r.into())),
            _ => return Err(bad(l)),
        }
    }
    Ok((cp, run))
}

/// Runs `scan` to completion or to the `stop_after` budget.
pub fn drive<T, F>(d: &DriveOpts, scan: F, rec: fn(&T) -> String) -> Result<ScanRun, CliError>
where
    T: Send + Clone,
    F: Fn(&mut Control) -> Result<ScanOutcome<T>, SieveError> + Sync,
{
    let mut run = ScanRun::default();
    if d.resume {
        let path = d.checkpoint.as_ref().ok_or_else(|| CliError::Usage("--resume needs --checkpoint".into()))?;
        if path.exists() {
            let (cp, r) = read_checkpoint(path)?;
            if cp.stage != d.stage || cp.config_hash != d.hash {
                return Err(CliError::Checkpoint(format!(
                    "checkpoint is for {} / {}, this run is {} / {}",
                    cp.stage, cp.config_hash, d.stage, d.hash
                )));
            }
            run = r;
        }
    }
    let threads = d.threads.max(1);
    let p = d.partition;
    let subs: Vec<Partition> = (0..threads as u32)
        .map(|j| Partition { index: p.index + p.count * j, count: p.count * threads as u32 })
        .collect();
    let mut spanned = 0usize;
    loop {
        let start = run.cursor;
        let end = d.chunk.map(|k| start + k.max(1));
        let parts: Vec<Result<ScanOutcome<T>, SieveError>> = if threads == 1 {
            vec![scan(&mut Control { start, end, partition: subs[0], ..Control::default() })]
        } else {
            std::thread::scope(|s| {
                let hs: Vec<_> = subs
                    .iter()
                    .map(|&sub| {
                        let scan = &scan;
                        s.spawn(move || scan(&mut Control { start, end, partition: sub, ..Control::default() }))
                    })
                    .collect();
                hs.into_iter().map(|h| h.join().expect("scan thread panicked")).collect()
            })
        };
        let parts = parts.into_iter().collect::<Result<Vec<_>, _>>()?;
        let merged = ScanOutcome::merge(parts);
        run.add_counters(&merged.counters);
        run.records.extend(merged.items.iter().map(|(i, t)| (*i, rec(t))));
        let next = merged.next_cursor;
        let finished = match end {
            None => true,
            Some(e) => next < e || next == start,
        };
        spanned += next - start;
        run.cursor = next;
        run.complete = finished;
        if let Some(path) = &d.checkpoint {
            write_checkpoint(path, &d.stage, &d.hash, &run)?;
        }
        if finished || d.stop_after.is_some_and(|s| spanned >= s) {
            return Ok(run);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use xdio_sieves::scans::{zgap_scan, ZgapConfig};

    fn scan(ctl: &mut Control) -> Result<ScanOutcome<xdio_sieves::scans::GapHit>, SieveError> {
        zgap_scan(&ZgapConfig { c: 13, z_lo: 1, z_hi: 6, gap: 10, e_max: 1 }, ctl)
    }

    #[test]
    fn chunks_threads_and_resume_agree() {
        let whole = drive(&DriveOpts::simple("zgap", "h"), scan, |h| h.to_record()).unwrap();
        assert!(whole.complete && !whole.records.is_empty());

        let threaded = DriveOpts { threads: 3, chunk: Some(2), ..DriveOpts::simple("zgap", "h") };
        assert_eq!(drive(&threaded, scan, |h| h.to_record()).unwrap().records, whole.records);

        let dir = std::env::temp_dir().join(format!("xdio-drv-{}", std::process::id()));
        let cp = dir.join("zgap.ckpt");
        let first = DriveOpts { chunk: Some(2), checkpoint: Some(cp.clone()), stop_after: Some(2), ..threaded.clone() };
        let part = drive(&first, scan, |h| h.to_record()).unwrap();
        assert!(!part.complete);
        assert_eq!(part.cursor, 2);
        let again = DriveOpts { resume: true, stop_after: None, ..first.clone() };
        let rest = drive(&again, scan, |h| h.to_record()).unwrap();
        assert_eq!(rest.resumed_from, Some(2));
        assert_eq!((rest.records.clone(), rest.counters.clone()), (whole.records.clone(), whole.counters.clone()));

        let wrong = DriveOpts { hash: "other".into(), ..again };
        assert!(matches!(drive(&wrong, scan, |h| h.to_record()), Err(CliError::Checkpoint(_))));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
