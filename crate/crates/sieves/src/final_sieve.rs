//! The final sieve over `(Y, T, z)` for `a + b = c^z`, `a + b^Y = c^Z`.
//!
//! For each admissible `(Y, T)` the candidate `b` is the positive root of the
//! quadratic whose discriminant is
//! `D_b = 4((Y−1)T + c^{2e})·c^{2z−2e} − 3(Y−1)²`, and a genuine solution makes
//! `W = b(b−1)·(I_b / c^e)·K + 1` equal to `c^{Z−z}`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use xdio_arith::modular::residue_u;
use xdio_arith::{factor_u64, isqrt_exact};
use xdio_bounds::sharp::{t_upper, z_upper, z_upper_fast};

use crate::prefilter::{signed_mod, QrSieve};
use crate::{cpow, cube_root_classes, nu_c, power_of, Control, Counters, Progression, ScanOutcome, SieveError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalConfig {
    pub c: u64,
    pub e_order: u32,
    pub ys: Progression,
    pub z2: u32,
    /// Explicit `T` values; by default `T = 2, 4, …, T_u(z₂, Y)`.
    pub ts: Option<Progression>,
    /// Explicit `z` interval; by default `z₂ ≤ z ≤ z_u(z₂, Y, T)`.
    pub zs: Option<(u32, u32)>,
}

impl FinalConfig {
    pub fn new(c: u64, y_u: u64, z2: u32) -> Self {
        Self { c, e_order: 3, ys: Progression::new(4, y_u, 6), z2, ts: None, zs: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalHit {
    pub y: u64,
    pub t: u64,
    pub z: u32,
    pub b: BigUint,
    pub k: BigUint,
    pub w: BigUint,
    pub big_z: u32,
}

impl FinalHit {
    pub fn to_record(&self) -> String {
        format!(
            "final-survivor Y={} T={} z={} b={} K={} W={} Z={}",
            self.y, self.t, self.z, self.b, self.k, self.w, self.big_z
        )
    }
}

/// Every prime factor `p ≠ c` of `E·N₀·T + c^e` is `≡ 1 (mod 3)`.
pub fn prime_factor_filter(c: u64, e_order: u32, n0: u64, t: u64, e: u32) -> Option<bool> {
    let v = (e_order as u64).checked_mul(n0)?.checked_mul(t)?.checked_add(c.checked_pow(e)?)?;
    Some(factor_u64(v).iter().all(|&(p, _)| p == c || p % 3 == 1))
}

/// `D_b` for `(Y, T, z)` with `e = ν_c((Y−1)/E)`.
pub fn d_b(c: u64, y: u64, t: u64, z: u32, e: u32) -> BigInt {
    let ym1 = BigInt::from(y - 1);
    let lead = (&ym1 * t + BigInt::from(cpow(c, 2 * e))) * 4u32 * BigInt::from(cpow(c, 2 * z - 2 * e));
    lead - ym1.pow(2) * 3u32
}

/// Outcome of the per-`(Y, T, z)` predicate chain once `D_b` is a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Candidate {
    NotSquare,
    NotDivisible,
    WrongClass,
    WrongValuation,
    NotPower { b: BigUint, w: BigUint },
    Survivor(FinalHit),
}

/// The program body for one `(Y, T, z)`, starting from the exact square test.
pub fn evaluate(c: u64, e_order: u32, y: u64, t: u64, z: u32) -> Candidate {
    let n = (y - 1) / e_order as u64;
    let e = nu_c(c, n);
    if z < e {
        return Candidate::NotSquare;
    }
    let db = d_b(c, y, t, z, e);
    let Some(db) = db.to_biguint() else { return Candidate::NotSquare };
    let Some(root) = isqrt_exact(&db) else { return Candidate::NotSquare };
    let shift = cpow(c, z) * 2u32 + (y - 1);
    // B_n = √D_b − (2c^z + Y − 1) must be a positive multiple of 2(Y − 1).
    if root <= shift {
        return Candidate::NotDivisible;
    }
    let bn = root - shift;
    let den = BigUint::from(2 * (y - 1));
    if !(&bn % &den).is_zero() {
        return Candidate::NotDivisible;
    }
    let b = bn / den;
    if !cube_root_classes(c).contains(&residue_u(&b, c)) {
        return Candidate::WrongClass;
    }
    let q = &b * &b + &b + 1u32;
    let cze = cpow(c, z - e);
    if !(&q % &cze).is_zero() || (&q / &cze % c).is_zero() {
        return Candidate::WrongValuation;
    }
    let k = q / cze;
    // I_b = (b^{EN} − 1)/(b^E − 1)
    let w = &b * (&b - 1u32) * (i_b(&b, e_order, n) / cpow(c, e)) * &k + 1u32;
    match power_of(&w, c) {
        Some(p) => Candidate::Survivor(FinalHit { y, t, z, b, k, w, big_z: z + p }),
        None => Candidate::NotPower { b, w },
    }
}

/// Outer index: position in `cfg.ys`.
pub fn final_sieve(cfg: &FinalConfig, ctl: &mut Control) -> Result<ScanOutcome<FinalHit>, SieveError> {
    let c = cfg.c;
    let ln_c = (c as f64).ln();
    let sieve = QrSieve::new(c, 40);
    let mut items = Vec::new();
    let mut cnt =
        Counters::new(&["y_values", "y_early_exit", "t_values", "pairs", "z_triples", "squares", "b_candidates"]);
    let mut err: Option<SieveError> = None;
    let (next_cursor, complete) = ctl.run(cfg.ys.len(), |i| {
        if err.is_some() {
            return;
        }
        let y = cfg.ys.get(i);
        cnt.add("y_values", 1);
        let n = (y - 1) / cfg.e_order as u64;
        let e = nu_c(c, n);
        let n0 = n / c.pow(e);
        let ts = match cfg.ts {
            Some(p) => p,
            None => {
                let t_u = t_upper(c, cfg.z2, y, e).to_u64().unwrap_or(u64::MAX);
                if t_u < 2 {
                    cnt.add("y_early_exit", 1);
                    return;
                }
                Progression::new(2, t_u, 2)
            }
        };
        let ym1 = (y - 1) as u128;
        let c2e = (c as u128).pow(2 * e);
        for t in ts.iter() {
            cnt.add("t_values", 1);
            match prime_factor_filter(c, cfg.e_order, n0, t, e) {
                Some(true) => {}
                Some(false) => continue,
                None => {
                    err = Some(SieveError::Unsupported(format!("E*N0*T + c^e overflows at Y={y} T={t}")));
                    return;
                }
            }
            cnt.add("pairs", 1);
            let (z_lo, z_hi) = match cfg.zs {
                Some(r) => r,
                None => match z_cap(c, ln_c, cfg.z2, y, t, e) {
                    Some(hi) => (cfg.z2, hi),
                    None => {
                        err = Some(SieveError::Config(format!("z2 = {} is below z0 at Y={y} T={t}", cfg.z2)));
                        return;
                    }
                },
            };
            let lin = 4 * (ym1 * t as u128 + c2e);
            let cst = 3 * ym1 * ym1;
            let f = sieve.affine(|p| (lin % p as u128) as u64, |p| signed_mod(-((cst % p as u128) as i128), p));
            for z in z_lo..=z_hi {
                cnt.add("z_triples", 1);
                if z < e || !sieve.may_be_square(&f, 2 * (z - e) as u64) {
                    continue;
                }
                cnt.add("squares", 1);
                match evaluate(c, cfg.e_order, y, t, z) {
                    Candidate::Survivor(hit) => items.push((i, hit)),
                    Candidate::NotPower { .. } => cnt.add("b_candidates", 1),
                    _ => {}
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }),
    }
}

/// `⌊max{z_u1, z_u2}⌋` at `(z₂, Y, T)`. The padded double-precision value
/// decides unless it sits near an integer, in which case the multiprecision
/// evaluation is used.
fn z_cap(c: u64, ln_c: f64, z2: u32, y: u64, t: u64, e: u32) -> Option<u32> {
    if let Some(v) = z_upper_fast(ln_c, z2, y, t, e) {
        if (v - v.round()).abs() > 1e-3 && v < u32::MAX as f64 {
            return Some(v.floor().max(0.0) as u32);
        }
    }
    let v = z_upper(c, z2, y, &BigInt::from(t), e)?;
    Some(if v.is_negative() { 0 } else { v.to_u32().unwrap_or(u32::MAX) })
}

/// `b^{EN} − 1` over `b^E − 1` is an integer polynomial value.
pub fn i_b(b: &BigUint, e_order: u32, n: u64) -> BigUint {
    let be = b.pow(e_order);
    if be.is_one() {
        return BigUint::from(n);
    }
    (be.pow(n as u32) - 1u32) / (be - 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_thirteen() {
        // (Y, T, z) = (7, 1, 1) under c = 13: D_b = 68², b = 3, W = 13².
        assert_eq!(d_b(13, 7, 1, 1, 0), BigInt::from(4624));
        match evaluate(13, 3, 7, 1, 1) {
            Candidate::Survivor(h) => {
                assert_eq!(h.b, BigUint::from(3u32));
                assert_eq!(h.w, BigUint::from(169u32));
                assert_eq!(h.big_z, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn filter_examples() {
        assert_eq!(prime_factor_filter(7, 3, 1, 2, 0), Some(true));
        // 3·1·8 + 1 = 25 = 5²
        assert_eq!(prime_factor_filter(7, 3, 1, 8, 0), Some(false));
        // Factors equal to c are ignored: 3·2·1 + 1 = 7.
        assert_eq!(prime_factor_filter(7, 3, 2, 1, 0), Some(true));
    }

    #[test]
    fn i_b_matches_sum() {
        let b = BigUint::from(3u32);
        assert_eq!(i_b(&b, 3, 2), BigUint::from(28u32));
        assert_eq!(i_b(&b, 3, 1), BigUint::one());
    }

    #[test]
    fn small_y_exits_early() {
        let cfg = FinalConfig::new(7, 4, 1500);
        let out = final_sieve(&cfg, &mut Control::default()).unwrap();
        assert!(out.items.is_empty());
        assert_eq!(out.counters.iter().find(|(n, _)| *n == "y_early_exit").unwrap().1, 1);
    }
}
