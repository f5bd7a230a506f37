//! Run configuration shared by the flags and the config file.
//!
//! A config file is TOML whose keys are the long flag names (`c = 7`,
//! `scale = "desk"`, `z = "5..30"`). Flags given on the command line win over
//! the file. The config hash covers every key that can change the result;
//! output paths, checkpoint cadence and thread count are left out.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "XDIO_OUT_DIR";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Desk,
    Full,
}

impl Scale {
    pub fn label(self) -> &'static str {
        match self {
            Scale::Desk => "desk",
            Scale::Full => "full",
        }
    }
}

// Every option any command accepts. Unused options are ignored by commands
// that do not read them, but still enter the hash when set. A plain comment,
// so clap does not reuse it as the help text of every subcommand.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Opts {
    /// Read further options from a TOML file; flags take precedence.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long)]
    pub c: Option<u64>,
    /// Index of the family prime 3·2^r + 1.
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
    /// `i` (max{x, y} ≥ 3) or `ii` (max{x, y} = 2).
    #[arg(long)]
    pub case: Option<String>,
    /// Inclusive range `lo..hi` for `z` (or `Z` in the c = 97 scan).
    #[arg(long)]
    pub z: Option<String>,
    /// Cap on `Y`.
    #[arg(long = "y-max")]
    pub y_max: Option<u64>,
    #[arg(long)]
    pub z2: Option<u32>,
    #[arg(long)]
    pub gap: Option<u32>,
    /// Worker slice `i/n` of the outer loop.
    #[arg(long)]
    pub partition: Option<String>,

    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
    /// Search cap, either an integer or `base^exp`.
    #[arg(long)]
    pub cap: Option<String>,
    /// Expected solution count; the verdict compares against it.
    #[arg(long)]
    pub expect: Option<usize>,
    #[arg(long = "max-entry")]
    pub max_entry: Option<u64>,
    /// Comma-separated family indices `r`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long = "E")]
    #[serde(rename = "E")]
    pub e_order: Option<u32>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: Option<String>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Inclusive range `lo..hi` for `y`.
    #[arg(long)]
    pub y: Option<String>,

    /// Directory for the report file; defaults to `$XDIO_OUT_DIR`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Outer indices per checkpoint chunk.
    #[arg(long = "checkpoint-every")]
    pub checkpoint_every: Option<usize>,
    /// Continue from the checkpoint file instead of starting over.
    #[arg(long)]
    #[serde(default)]
    pub resume: bool,
    /// Stop after this many outer indices, leaving a checkpoint behind.
    #[arg(long = "stop-after")]
    pub stop_after: Option<usize>,
    /// Local worker threads; each takes one residue class of the outer loop.
    #[arg(long)]
    pub threads: Option<usize>,
}

macro_rules! prefer {
    ($self:ident, $file:ident; $($f:ident),*) => {
        $( if $self.$f.is_none() { $self.$f = $file.$f.clone(); } )*
    };
}

impl Opts {
    /// Fills every unset option from the config file, if one was named.
    pub fn with_file(mut self) -> Result<Self, CliError> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let file = Self::read_file(&path)?;
        prefer!(self, file; c, r, scale, case, z, y_max, z2, gap, partition, a, b, cap, expect, max_entry,
            family, n, e_order, big_n, q, y, out, checkpoint, checkpoint_every, stop_after, threads);
        self.resume |= file.resume;
        Ok(self)
    }

    pub fn read_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn scale(&self) -> Scale {
        self.scale.unwrap_or_default()
    }

    /// The output directory: `--out`, else the environment variable.
    pub fn out_dir(&self) -> Option<PathBuf> {
        self.out.clone().or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
    }
}

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// `bounds`, `sieve final`, `oracle count`, …
    pub command: String,
    pub opts: Opts,
}

impl RunConfig {
    pub fn new(command: impl Into<String>, opts: Opts) -> Self {
        Self { command: command.into(), opts }
    }

    /// The result-relevant options as sorted `key=value` pairs.
    pub fn echo(&self) -> String {
        let mut o = self.opts.clone();
        o.config = None;
        o.out = None;
        o.checkpoint = None;
        o.checkpoint_every = None;
        o.resume = false;
        o.stop_after = None;
        o.threads = None;
        if o.scale.is_none() {
            o.scale = Some(Scale::Desk);
        }
        let table = toml::Value::try_from(&o).expect("options serialize");
        let mut s = self.command.clone();
        if let toml::Value::Table(t) = table {
            let mut keys: Vec<_> = t.iter().filter(|(k, _)| *k != "resume").collect();
            keys.sort_by(|a, b| a.0.cmp(b.0));
            for (k, v) in keys {
                let v = match v {
                    toml::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                write!(s, " {k}={v}").unwrap();
            }
        }
        s
    }

    /// First 16 hex digits of SHA-256 over the echo line.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.echo().as_bytes());
        format!("{digest:x}")[..16].to_string()
    }
}

/// Parses `lo..hi` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("range {s:?} is not lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_plumbing() {
        let a = RunConfig::new("sieve zgap", Opts { c: Some(7), z: Some("5..30".into()), ..Opts::default() });
        let mut o = a.opts.clone();
        o.out = Some("/tmp".into());
        o.threads = Some(4);
        o.checkpoint_every = Some(3);
        let b = RunConfig::new("sieve zgap", o);
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.echo(), "sieve zgap c=7 scale=desk z=5..30");
        let c = RunConfig::new("sieve zgap", Opts { c: Some(13), ..a.opts.clone() });
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..30").unwrap(), (5, 30));
        assert_eq!(parse_range("5..=30").unwrap(), (5, 30));
        assert_eq!(parse_range("9").unwrap(), (9, 9));
        assert!(parse_range("30..5").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn file_fills_gaps() {
        let dir = std::env::temp_dir().join(format!("xdio-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("run.toml");
        std::fs::write(&p, "c = 13\nz = \"1..4\"\nscale = \"full\"\nE = 3\n").unwrap();
        let o = Opts { c: Some(7), config: Some(p), ..Opts::default() }.with_file().unwrap();
        assert_eq!((o.c, o.z.as_deref(), o.scale(), o.e_order), (Some(7), Some("1..4"), Scale::Full, Some(3)));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
