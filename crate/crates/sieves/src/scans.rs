//! Congruence scans over `b = b_ε + k·c^{z−e}` for the system
//! `a + b = c^z`, `a + b^Y = c^Z`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use xdio_arith::b_eps;
use xdio_arith::modular::{mul_mod, pow_mod};

use crate::prefilter::{power_from_residue, word_modulus};
use crate::{cpow, nu_c, Control, Counters, Progression, ScanOutcome, SieveError};

/// `a + b^Y = c^Z` with `a + b = c^z`, `z` small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallHit {
    pub z: u32,
    pub a: u64,
    pub b: u64,
    pub y: u64,
    pub big_z: u32,
}

impl SmallHit {
    pub fn to_record(&self) -> String {
        format!("zsmall z={} a={} b={} Y={} Z={}", self.z, self.a, self.b, self.y, self.big_z)
    }
}

/// `b² | c^Z − a` for `Z ≤ z + gap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapHit {
    pub z: u32,
    pub big_z: u32,
    pub e: u32,
    pub eps: i8,
    pub k: u64,
    pub b: BigUint,
}

impl GapHit {
    pub fn to_record(&self) -> String {
        format!("zgap z={} Z={} e={} eps={} k={} b={}", self.z, self.big_z, self.e, self.eps, self.k, self.b)
    }
}

/// `c^{z+gap} | a + b^Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorHit {
    pub z: u32,
    pub y: u64,
    pub e: u32,
    pub eps: i8,
    pub k: u64,
    pub b: BigUint,
}

impl FloorHit {
    pub fn to_record(&self) -> String {
        format!("zfloor z={} Y={} e={} eps={} k={} b={}", self.z, self.y, self.e, self.eps, self.k, self.b)
    }
}

/// Every pair `a + b = c^z` with `a, b ≥ 2`, `z ≤ z_max` and `c ∤ b`, checked for
/// `a + b^Y` a power of `c` over the given `Y`. Outer index: `z − 1`.
pub fn zsmall_scan(c: u64, z_max: u32, ys: Progression, ctl: &mut Control) -> Result<ScanOutcome<SmallHit>, SieveError> {
    if c.checked_pow(z_max).is_none() {
        return Err(SieveError::Unsupported(format!("{c}^{z_max} exceeds a machine word")));
    }
    let m = word_modulus(c);
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["pairs", "checks"]);
    let (next_cursor, complete) = ctl.run(z_max as usize, |i| {
        let z = i as u32 + 1;
        let cz = c.pow(z);
        for b in 2..cz - 1 {
            if b % c == 0 {
                continue;
            }
            cnt.add("pairs", 1);
            let a = cz - b;
            // b^Y mod M along the progression.
            let mut bp = pow_mod(b, ys.start, m);
            let stride = pow_mod(b, ys.step, m);
            for y in ys.iter() {
                cnt.add("checks", 1);
                let r = ((a as u128 + bp as u128) % m as u128) as u64;
                let small = || (b as u128).checked_pow(u32::try_from(y).ok()?)?.checked_add(a as u128);
                let exact = || BigUint::from(b).pow(y as u32) + a;
                if let Some(big_z) = power_from_residue(r, c, small, exact) {
                    items.push((i, SmallHit { z, a, b, y, big_z }));
                }
                bp = mul_mod(bp, stride, m);
            }
        }
    });
    Ok(ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() })
}

/// `(e, ε, k, b)` for `b = b_ε + k·c^{z−e}`, `k < c^e`, `e ≤ e_max`, in the
/// nesting order `e, ε, k`.
fn b_candidates(c: u64, z: u32, e: u32) -> Result<Vec<(i8, u64, BigUint)>, SieveError> {
    let step = cpow(c, z - e);
    let reps = c.checked_pow(e).ok_or_else(|| SieveError::Unsupported(format!("{c}^{e} candidates")))?;
    let mut out = Vec::new();
    for eps in [-1i8, 1] {
        let base = b_eps(c, z - e, eps)?;
        for k in 0..reps {
            out.push((eps, k, &base + &step * k));
        }
    }
    Ok(out)
}

/// Configuration of the `Z ≤ z + gap` scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZgapConfig {
    pub c: u64,
    pub z_lo: u32,
    pub z_hi: u32,
    pub gap: u32,
    pub e_max: u32,
}

/// `B = c^Z − (c^z − b) mod b²`, the residue the gap scan tests.
pub fn zgap_probe(c: u64, z: u32, big_z: u32, b: &BigUint) -> BigUint {
    let b2 = b * b;
    let a = cpow(c, z) - b;
    let cz = BigUint::from(c).modpow(&BigUint::from(big_z), &b2);
    (cz + &b2 - (a % &b2)) % &b2
}

/// Outer index: `z − z_lo`.
pub fn zgap_scan(cfg: &ZgapConfig, ctl: &mut Control) -> Result<ScanOutcome<GapHit>, SieveError> {
    let c = cfg.c;
    let len = (cfg.z_hi + 1).saturating_sub(cfg.z_lo) as usize;
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["triples"]);
    let mut err = None;
    let (next_cursor, complete) = ctl.run(len, |i| {
        let z = cfg.z_lo + i as u32;
        if z == 0 || err.is_some() {
            return;
        }
        let mut per_e = Vec::new();
        for e in 0..=cfg.e_max.min(z - 1) {
            match b_candidates(c, z, e) {
                Ok(v) => per_e.push((e, v)),
                Err(x) => {
                    err = Some(x);
                    return;
                }
            }
        }
        for big_z in z + 1..=z + cfg.gap {
            for (e, cands) in &per_e {
                for (eps, k, b) in cands {
                    cnt.add("triples", 1);
                    if zgap_probe(c, z, big_z, b).is_zero() {
                        items.push((i, GapHit { z, big_z, e: *e, eps: *eps, k: *k, b: b.clone() }));
                    }
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }),
    }
}

/// Configuration of the `Z ≥ z + target_gap` floor scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZfloorConfig {
    pub c: u64,
    pub e_order: u32,
    pub z_lo: u32,
    pub z_hi: u32,
    pub ys: Progression,
    pub target_gap: u32,
}

/// The multiplicative order of `b` modulo `c^z` has the form `E·c^f` with
/// `f ≤ e`: it divides `E·c^e` and does not divide `c^e`.
pub fn order_form_holds(c: u64, z: u32, e: u32, e_order: u32, b: &BigUint) -> bool {
    let m = cpow(c, z);
    let ce = cpow(c, e);
    let one = BigUint::one() % &m;
    b.modpow(&(&ce * e_order), &m) == one && b.modpow(&ce, &m) != one
}

/// `C = (c^z − b) + b^Y mod c^{z+gap}`.
pub fn zfloor_probe(c: u64, z: u32, y: u64, gap: u32, b: &BigUint) -> BigUint {
    let m = cpow(c, z + gap);
    let a = cpow(c, z) - b;
    (a + b.modpow(&BigUint::from(y), &m)) % m
}

/// Outer index: `z − z_lo`.
pub fn zfloor_scan(cfg: &ZfloorConfig, ctl: &mut Control) -> Result<ScanOutcome<FloorHit>, SieveError> {
    let c = cfg.c;
    let len = (cfg.z_hi + 1).saturating_sub(cfg.z_lo) as usize;
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["candidates", "order_pruned", "e_skipped"]);
    let mut err = None;
    let (next_cursor, complete) = ctl.run(len, |i| {
        let z = cfg.z_lo + i as u32;
        if z == 0 || err.is_some() {
            return;
        }
        let mut cache: Vec<Option<Vec<(i8, u64, BigUint)>>> = Vec::new();
        for y in cfg.ys.iter() {
            let n = (y - 1) / cfg.e_order as u64;
            let e = nu_c(c, n);
            if e >= z {
                cnt.add("e_skipped", 1);
                continue;
            }
            if cache.len() <= e as usize {
                cache.resize(e as usize + 1, None);
            }
            if cache[e as usize].is_none() {
                match b_candidates(c, z, e) {
                    Ok(v) => cache[e as usize] = Some(v),
                    Err(x) => {
                        err = Some(x);
                        return;
                    }
                }
            }
            for (eps, k, b) in cache[e as usize].as_ref().expect("filled") {
                cnt.add("candidates", 1);
                if !order_form_holds(c, z, e, cfg.e_order, b) {
                    cnt.add("order_pruned", 1);
                    continue;
                }
                if zfloor_probe(c, z, y, cfg.target_gap, b).is_zero() {
                    items.push((i, FloorHit { z, y, e, eps: *eps, k: *k, b: b.clone() }));
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }),
    }
}

/// `ν_c(b² + b + 1)` of a scan candidate, for audits.
pub fn cube_root_valuation(c: u64, b: &BigUint) -> u32 {
    let mut v = b * b + b + 1u32;
    let mut k = 0;
    while (&v % c).is_zero() {
        v /= c;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_are_cube_roots() {
        for z in 1..6 {
            for e in 0..z.min(3) {
                for (_, _, b) in b_candidates(7, z, e).unwrap() {
                    assert!(cube_root_valuation(7, &b) >= z - e, "z={z} e={e} b={b}");
                    assert!(b < cpow(7, z));
                }
            }
        }
    }

    #[test]
    fn probe_values() {
        // c = 13: b = 3, z = 1, Z = 3 gives B = 2187 = 3^7.
        assert!(zgap_probe(13, 1, 3, &BigUint::from(3u32)).is_zero());
        assert_eq!(zgap_probe(13, 1, 2, &BigUint::from(3u32)), BigUint::from((169u32 - 10) % 9));
        assert!(zfloor_probe(13, 1, 7, 2, &BigUint::from(3u32)).is_zero());
    }

    #[test]
    fn order_form() {
        // 3 has order 3 modulo 13; 2 has order 12.
        assert!(order_form_holds(13, 1, 0, 3, &BigUint::from(3u32)));
        assert!(!order_form_holds(13, 1, 0, 3, &BigUint::from(2u32)));
    }
}
