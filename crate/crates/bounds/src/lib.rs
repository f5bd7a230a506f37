//! Bound evaluators and the named constants closed from them.
//!
//! Every constant is produced as a [`BoundReport`] carrying its inputs, the
//! iteration trace that produced it, and the target it is expected to hit.

pub mod baker;
pub mod c97;
pub mod constants;
pub mod fixed;
pub mod float;
pub mod sharp;

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

pub use baker::{MAdic, OneLogUnit, PrimeIdeal, TwoLog};
pub use fixed::{solve_fixed_point, FixedPoint};
pub use float::{dec, BigFloat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("parameter outside the admissible range: {0}")]
    Parameter(String),
    #[error("fixed-point iteration did not settle within {0} steps")]
    NoConvergence(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// Outcome of comparing a computed constant to its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchStatus {
    Exact,
    /// Off by at most two: the documented fixed-point window, reported as a warning.
    Window(i64),
    Mismatch(i64),
    NoTarget,
}

impl MatchStatus {
    pub fn label(self) -> &'static str {
        match self {
            MatchStatus::Exact => "matched",
            MatchStatus::Window(_) => "mismatch-warning",
            MatchStatus::Mismatch(_) => "mismatched",
            MatchStatus::NoTarget => "no-target",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Vec<(String, String)>,
    pub value: BigInt,
    pub target: Option<BigInt>,
    pub trace: Vec<String>,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, value: impl Into<BigInt>) -> Self {
        Self { name: name.into(), inputs: Vec::new(), value: value.into(), target: None, trace: Vec::new(), note: None }
    }

    pub fn input(mut self, key: &str, val: impl ToString) -> Self {
        self.inputs.push((key.to_string(), val.to_string()));
        self
    }

    pub fn target(mut self, t: impl Into<BigInt>) -> Self {
        self.target = Some(t.into());
        self
    }

    pub fn trace(mut self, t: Vec<String>) -> Self {
        self.trace = t;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn status(&self) -> MatchStatus {
        match &self.target {
            None => MatchStatus::NoTarget,
            Some(t) => {
                let d: BigInt = &self.value - t;
                let d = i64::try_from(&d).unwrap_or(i64::MAX);
                match d {
                    0 => MatchStatus::Exact,
                    -2..=2 => MatchStatus::Window(d),
                    _ => MatchStatus::Mismatch(d),
                }
            }
        }
    }

    /// One-line record: `bound name=… value=… target=… status=… inputs=k:v;…`.
    pub fn to_record(&self) -> String {
        let mut s = format!("bound name={} value={}", self.name, self.value);
        match &self.target {
            Some(t) => write!(s, " target={t}").unwrap(),
            None => s.push_str(" target=-"),
        }
        write!(s, " status={}", self.status().label()).unwrap();
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(s, " inputs={}", inputs.join(";")).unwrap();
        if let Some(n) = &self.note {
            write!(s, " note={:?}", n).unwrap();
        }
        s
    }
}
