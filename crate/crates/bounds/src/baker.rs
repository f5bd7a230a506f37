//! The four displayed bounds from the theory of linear forms in two logarithms.
//!
//! Heights are passed already evaluated (callers know `h(α)` for their rational
//! or quadratic inputs); each evaluator checks the floors its statement imposes
//! and returns the displayed quantity without further simplification.

use crate::float::{dec, BigFloat};
use crate::BoundsError;

fn need(ok: bool, what: &str) -> Result<(), BoundsError> {
    if ok {
        Ok(())
    } else {
        Err(BoundsError::Parameter(what.to_string()))
    }
}

/// Archimedean lower bound for `log|b₂ log α₂ − b₁ log α₁|` with rational `α_j > 1`.
#[derive(Debug, Clone)]
pub struct TwoLog {
    pub h1: BigFloat,
    pub h2: BigFloat,
    pub b1: BigFloat,
    pub b2: BigFloat,
}

impl TwoLog {
    /// `max{log b′ + 0.38, 10}` with `b′ = b₁/H₂ + b₂/H₁`.
    pub fn big_b(&self) -> BigFloat {
        let bp = &(&self.b1 / &self.h2) + &(&self.b2 / &self.h1);
        (bp.ln() + dec("0.38")).max(BigFloat::from(10i64))
    }

    pub fn eval(&self) -> Result<BigFloat, BoundsError> {
        need(self.h1 >= BigFloat::one() && self.h2 >= BigFloat::one(), "H_j >= 1")?;
        let b = self.big_b();
        Ok(-(dec("25.2") * &self.h1 * &self.h2 * &b * &b))
    }
}

/// Lower bound for `log|α^k − 1|` with `|α| = 1` not a root of unity.
#[derive(Debug, Clone)]
pub struct OneLogUnit {
    pub d: u32,
    pub height: BigFloat,
    pub abs_log: BigFloat,
    pub k: BigFloat,
}

impl OneLogUnit {
    /// `H(α) = max{D h(α) + 22|log α|, 40}`.
    pub fn big_h(&self) -> BigFloat {
        let d = BigFloat::from(self.d as i64);
        (&d * &self.height + BigFloat::from(22i64) * &self.abs_log).max(BigFloat::from(40i64))
    }

    /// `max{log(k/25) + 2.35 + 10.2/D, 34/D, 0.1/√(D/2)}`.
    pub fn big_b(&self) -> BigFloat {
        let d = BigFloat::from(self.d as i64);
        let first = (&self.k / 25).ln() + dec("2.35") + dec("10.2") / &d;
        let second = BigFloat::from(34i64) / &d;
        let third = dec("0.1") / (&d / 2).sqrt();
        first.max(second).max(third)
    }

    pub fn eval(&self) -> Result<BigFloat, BoundsError> {
        need(self.d >= 1, "D >= 1")?;
        need(self.k >= BigFloat::one(), "k >= 1")?;
        let d = BigFloat::from(self.d as i64);
        let b = self.big_b();
        Ok(-(dec("9") / 8 * &d * &d * self.big_h() * &b * &b))
    }
}

/// Upper bound for `ν_M(α₁^{b₁} − α₂^{b₂})` with rational `α_j`.
#[derive(Debug, Clone)]
pub struct MAdic {
    /// `log M`.
    pub log_m: BigFloat,
    pub g: u64,
    pub h1: BigFloat,
    pub h2: BigFloat,
    pub b1: BigFloat,
    pub b2: BigFloat,
    /// The leading constant; `53.6` as stated, overridable for derivations that inflate it.
    pub lead: BigFloat,
}

impl MAdic {
    pub fn new(log_m: BigFloat, g: u64, h1: BigFloat, h2: BigFloat, b1: BigFloat, b2: BigFloat) -> Self {
        Self { log_m, g, h1, h2, b1, b2, lead: dec("53.6") }
    }

    /// `max{log b′ + log log M + 0.64, 4 log M}`.
    pub fn big_b(&self) -> BigFloat {
        let bp = &(&self.b1 / &self.h2) + &(&self.b2 / &self.h1);
        (bp.ln() + self.log_m.ln() + dec("0.64")).max(&self.log_m * 4)
    }

    pub fn eval(&self) -> Result<BigFloat, BoundsError> {
        need(self.log_m.is_positive(), "M > 1")?;
        need(self.h1 >= self.log_m && self.h2 >= self.log_m, "H_j >= log M")?;
        let b = self.big_b();
        Ok(&self.lead * BigFloat::from(self.g) * &self.h1 * &self.h2 / self.log_m.powi(4) * &b * &b)
    }
}

/// Upper bound for `ν_π(α₁^{b₁} − α₂^{b₂})` at a prime ideal `π` above `p`.
#[derive(Debug, Clone)]
pub struct PrimeIdeal {
    pub d: u32,
    pub p: u64,
    pub g: u64,
    pub f_pi: u32,
    pub h1: BigFloat,
    pub h2: BigFloat,
    pub b1: BigFloat,
    pub b2: BigFloat,
}

impl PrimeIdeal {
    /// `max{log b′ + log log p + 0.4, (8 f_π / D) log p, 10}`.
    pub fn big_b(&self) -> BigFloat {
        let logp = BigFloat::from(self.p).ln();
        let bp = &(&self.b1 / &self.h2) + &(&self.b2 / &self.h1);
        let first = bp.ln() + logp.ln() + dec("0.4");
        let second = BigFloat::from(8 * self.f_pi as i64) / BigFloat::from(self.d as i64) * &logp;
        first.max(second).max(BigFloat::from(10i64))
    }

    /// The factor in front of `𝓑²`.
    pub fn prefactor(&self) -> BigFloat {
        let logp = BigFloat::from(self.p).ln();
        let d = BigFloat::from(self.d as i64);
        let f = BigFloat::from(self.f_pi as i64);
        dec("27.3") * &d * &d * BigFloat::from(self.p) * BigFloat::from(self.g) * &self.h1 * &self.h2
            / (&f * &f * BigFloat::from(self.p - 1) * logp.powi(4))
    }

    pub fn eval(&self) -> Result<BigFloat, BoundsError> {
        need(self.d >= 1 && self.f_pi >= 1 && self.p >= 2, "D, f_pi >= 1 and p prime")?;
        let logp = BigFloat::from(self.p).ln();
        need(self.h1 >= logp && self.h2 >= logp, "H_j >= log p")?;
        let b = self.big_b();
        Ok(self.prefactor() * &b * &b)
    }
}
