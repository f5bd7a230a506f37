//! The three-step search for `a^x + b^y = c^z`, `a^X + b^Y = c^Z` when
//! `max{x, y} > 1`.
//!
//! Step 1 lists `[z, n′, t]` with `4tc^{z−n′} − 3` a square. Step 2 recovers
//! `a = (√(4tc^{z−n′}−3) − δ_a)/2` and every `b` with `a^x + b^y = c^z`.
//! Step 3 walks the second exponent pair under the `Δ` congruence and checks
//! that `a^X + b^Y` is never a power of `c`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use xdio_arith::modular::{mul_mod, residue_u};
use xdio_arith::{factor_u64, isqrt_exact, kth_root_exact, kth_root_floor};
use xdio_bounds::constants::{k1, k2, k3, MinBase};
use xdio_bounds::BigFloat;

use crate::prefilter::{power_from_residue, signed_mod, word_modulus, QrSieve};
use crate::{cpow, order3_classes, Control, Counters, ScanOutcome, SieveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct List1Entry {
    pub z: u32,
    pub nprime: u32,
    pub t: u64,
}

impl List1Entry {
    pub fn to_record(&self) -> String {
        format!("list1 z={} n'={} t={}", self.z, self.nprime, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct List2Entry {
    pub a: BigUint,
    pub b: BigUint,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub nprime: u32,
}

impl List2Entry {
    pub fn to_record(&self) -> String {
        format!("list2 a={} b={} x={} y={} z={} n'={}", self.a, self.b, self.x, self.y, self.z, self.nprime)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Survivor {
    pub a: BigUint,
    pub b: BigUint,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub big_x: u64,
    pub big_y: u64,
    pub big_z: u32,
}

impl Survivor {
    pub fn to_record(&self) -> String {
        format!(
            "survivor a={} b={} x={} y={} z={} X={} Y={} Z={}",
            self.a, self.b, self.x, self.y, self.z, self.big_x, self.big_y, self.big_z
        )
    }
}

/// `t` odd, `9 ∤ t`, and no odd prime factor `≡ 2 (mod 3)`.
pub fn check4(t: u64) -> bool {
    t % 2 == 1 && !t.is_multiple_of(9) && factor_u64(t).iter().all(|&(p, _)| p % 3 != 2)
}

/// `⌊(1 + c^{−m/2} + c^{−m})·c^{n′}⌋` with `m = max{n′, 1}`, computed exactly.
pub fn t_upper(c: u64, nprime: u32) -> u64 {
    let m = nprime.max(1);
    let num = cpow(c, nprime + m) + kth_root_floor(&cpow(c, 2 * nprime + m), 2) + cpow(c, nprime);
    (num / cpow(c, m)).to_u64().expect("t_u fits in u64")
}

/// `⌈√(D/2)⌉`, the least `s` with `2s² ≥ D`.
fn ceil_sqrt_half(d: &BigUint) -> BigUint {
    let mut s = kth_root_floor(&(d >> 1u32), 2);
    while BigUint::from(2u32) * &s * &s < *d {
        s += 1u32;
    }
    s
}

/// Caps on `z` for each `n′ = 0, 1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step1Config {
    pub c: u64,
    pub z_u: Vec<u32>,
}

impl Step1Config {
    /// The same cap for every `n′ ≤ nprime_max`.
    pub fn uniform(c: u64, z_u: u32, nprime_max: u32) -> Self {
        Self { c, z_u: vec![z_u; nprime_max as usize + 1] }
    }

    fn pairs(&self) -> Vec<(u32, u64)> {
        let mut out = Vec::new();
        for (n, _) in self.z_u.iter().enumerate() {
            for t in 1..=t_upper(self.c, n as u32) {
                out.push((n as u32, t));
            }
        }
        out
    }
}

/// Step 1. The outer index enumerates `(n′, t)` pairs with `t ≤ t_u(n′)`.
pub fn step1(cfg: &Step1Config, ctl: &mut Control) -> ScanOutcome<List1Entry> {
    let c = cfg.c;
    let sieve = QrSieve::new(c, 40);
    let pairs = cfg.pairs();
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["pairs", "z_checks", "exact_roots"]);
    let (next_cursor, complete) = ctl.run(pairs.len(), |i| {
        let (n, t) = pairs[i];
        cnt.add("pairs", 1);
        if !check4(t) {
            return;
        }
        let z_u = cfg.z_u[n as usize];
        let f = sieve.affine(|p| (4 * (t % p)) % p, |p| signed_mod(-3, p));
        for z in n.max(1)..=z_u {
            cnt.add("z_checks", 1);
            let k = z - n;
            if !sieve.may_be_square(&f, k as u64) {
                continue;
            }
            cnt.add("exact_roots", 1);
            let v = BigUint::from(4 * t) * cpow(c, k) - 3u32;
            if isqrt_exact(&v).is_some() {
                items.push((i, List1Entry { z, nprime: n, t }));
            }
        }
    });
    ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }
}

/// Step 1 predicate for a single entry.
pub fn list1_holds(c: u64, e: &List1Entry) -> bool {
    e.z >= e.nprime.max(1)
        && check4(e.t)
        && isqrt_exact(&(BigUint::from(4 * e.t) * cpow(c, e.z - e.nprime) - 3u32)).is_some()
}

/// Step 2 filters on `b` alone.
fn b_passes(b: &BigUint, c: u64, m_l: &BigUint, d: &BigUint, classes: &[u64]) -> bool {
    if b < m_l || !classes.contains(&residue_u(b, c)) {
        return false;
    }
    let b3 = b.modpow(&BigUint::from(3u32), d);
    b3 == BigUint::one() % d || b3 + 1u32 == *d
}

/// The `a`-candidates of one list1 entry: `(δ_a, a)` passing every `a` filter.
fn a_candidates(c: u64, e: &List1Entry, x_l: u32, classes: &[u64]) -> Vec<(i8, BigUint)> {
    let d = cpow(c, e.z - e.nprime);
    let m_l = ceil_sqrt_half(&d).max(BigUint::from(2u32));
    let Some(big_a) = isqrt_exact(&(BigUint::from(4 * e.t) * &d - 3u32)) else {
        return Vec::new();
    };
    let a_cap = kth_root_floor(&cpow(c, e.z), x_l);
    let mut out = Vec::new();
    for delta in [-1i8, 1] {
        let a = if delta < 0 { (&big_a + 1u32) >> 1u32 } else { (&big_a - 1u32) >> 1u32 };
        if a < m_l || a > a_cap || !classes.contains(&residue_u(&a, c)) {
            continue;
        }
        let q = if delta < 0 { &a * &a + 1u32 - &a } else { &a * &a + &a + 1u32 };
        if (q % &d).is_zero() {
            out.push((delta, a));
        }
    }
    out
}

/// Step 2 over `list1`, with `x` starting at `x_l`. The outer index is the
/// list position.
pub fn step2(c: u64, list1: &[List1Entry], x_l: u32, ctl: &mut Control) -> ScanOutcome<List2Entry> {
    let classes = order3_classes(c);
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["entries", "a_candidates", "root_checks"]);
    let (next_cursor, complete) = ctl.run(list1.len(), |i| {
        let e = &list1[i];
        cnt.add("entries", 1);
        let d = cpow(c, e.z - e.nprime);
        let m_l = ceil_sqrt_half(&d).max(BigUint::from(2u32));
        let cz = cpow(c, e.z);
        for (_, a) in a_candidates(c, e, x_l, &classes) {
            cnt.add("a_candidates", 1);
            let mut x = x_l;
            loop {
                let ax = a.pow(x);
                if ax >= cz {
                    break;
                }
                let v = &cz - &ax;
                for y in 1..=x {
                    cnt.add("root_checks", 1);
                    if let Some(b) = kth_root_exact(&v, y) {
                        if b_passes(&b, c, &m_l, &d, &classes) {
                            items.push((i, List2Entry { a: a.clone(), b, x, y, z: e.z, nprime: e.nprime }));
                        }
                    }
                }
                x += 1;
            }
        }
    });
    ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }
}

/// Step 2 predicate for a single entry.
pub fn list2_holds(c: u64, e: &List2Entry) -> bool {
    let classes = order3_classes(c);
    let d = cpow(c, e.z - e.nprime);
    let m_l = ceil_sqrt_half(&d).max(BigUint::from(2u32));
    e.a.pow(e.x) + e.b.pow(e.y) == cpow(c, e.z)
        && e.y <= e.x
        && e.a >= m_l
        && classes.contains(&residue_u(&e.a, c))
        && b_passes(&e.b, c, &m_l, &d, &classes)
}

/// The constants driving Step 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step3Params {
    pub e_order: u32,
    /// `K₁` when `min{a, b} < c`.
    pub k1_small: BigInt,
    /// `K₁` when `min{a, b} > c`.
    pub k1_large: BigInt,
    pub k3_small: BigInt,
    pub k3_large: BigInt,
    /// `K₃` for `z` above `z_split`.
    pub k3_high: BigInt,
    pub z_split: u32,
}

impl Step3Params {
    /// Evaluates the constants for `(c, E)` with the `c = 7` derivation
    /// parameters (`ζ = 1.11`, `z ≥ 13`, caps `z ≤ 6` and `z ≤ 12`).
    pub fn derive(c: u64, e_order: u32) -> Result<Self, SieveError> {
        let small = k1(c, e_order, MinBase::BelowC)?.value;
        let large = k1(c, e_order, MinBase::AboveC)?.value;
        let k2v = k2(e_order, "1.11", 13).value;
        Ok(Self {
            e_order,
            k3_small: k3(c, &small, 6, "m<c").value,
            k3_large: k3(c, &large, 12, "m>c").value,
            k3_high: k3(c, &k2v, 1, "z>=13").value,
            k1_small: small,
            k1_large: large,
            z_split: 12,
        })
    }
}

fn pow_table(base: u64, len: usize, m: u64) -> Vec<u64> {
    let mut t = Vec::with_capacity(len + 1);
    let mut v = 1 % m;
    for _ in 0..=len {
        t.push(v);
        v = mul_mod(v, base, m);
    }
    t
}

fn power_of_c_exact(a: &BigUint, b: &BigUint, bx: u64, by: u64, r: u64, c: u64) -> Option<u32> {
    let small = || {
        let p = |base: &BigUint, e: u64| base.to_u128()?.checked_pow(u32::try_from(e).ok()?);
        p(a, bx)?.checked_add(p(b, by)?)
    };
    power_from_residue(r, c, small, || a.pow(bx as u32) + b.pow(by as u32))
}

fn floor_product(k: &BigInt, u: &BigFloat, v: &BigFloat) -> u64 {
    (BigFloat::from(k) * u * v).floor().to_u64().expect("cap fits in u64")
}

/// Step 3 over `list2`. The outer index is the list position.
pub fn step3(c: u64, list2: &[List2Entry], params: &Step3Params, ctl: &mut Control) -> ScanOutcome<Survivor> {
    let m = word_modulus(c);
    let ln_c = BigFloat::from(c).ln();
    let cb = BigUint::from(c);
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["entries", "iterations", "power_tests"]);
    let (next_cursor, complete) = ctl.run(list2.len(), |i| {
        let e = &list2[i];
        cnt.add("entries", 1);
        let k1v = if e.a.clone().min(e.b.clone()) < cb { &params.k1_small } else { &params.k1_large };
        let k3v = if e.z > params.z_split {
            &params.k3_high
        } else if e.a.clone().min(e.b.clone()) < cb {
            &params.k3_small
        } else {
            &params.k3_large
        };
        let ln_a = BigFloat::from(&BigInt::from(e.a.clone())).ln();
        let ln_b = BigFloat::from(&BigInt::from(e.b.clone())).ln();
        let x_u = floor_product(k1v, &ln_b, &ln_c);
        let y_u = floor_product(k1v, &ln_a, &ln_c);
        let du_log = (BigFloat::from(k1v) * &ln_c * &ln_c * e.z as i64).floor().to_u64().expect("fits");
        let delta_u = du_log.min(k3v.to_u64().expect("fits"));
        let delta_d = params.e_order as u64 * c.pow(e.nprime);
        let (x, y) = (e.x as u64, e.y as u64);
        // Exponents never exceed these in either branch.
        let pa = pow_table(residue_u(&e.a, m), x_u as usize, m);
        let pb = pow_table(residue_u(&e.b, m), y_u as usize, m);
        let mut test = |bx: u64, by: u64| {
            cnt.add("power_tests", 1);
            let r = ((pa[bx as usize] as u128 + pb[by as usize] as u128) % m as u128) as u64;
            if let Some(big_z) = power_of_c_exact(&e.a, &e.b, bx, by, r, c) {
                items.push((
                    i,
                    Survivor { a: e.a.clone(), b: e.b.clone(), x: e.x, y: e.y, z: e.z, big_x: bx, big_y: by, big_z },
                ));
            }
        };
        let mut iters = 0u64;
        // Δ = xY − yX
        let xmax = x_u.min((x * y_u).saturating_sub(delta_d) / y);
        for bx in 1..=xmax {
            let kmax = delta_u.min(x * y_u - y * bx) / delta_d;
            for k in 1..=kmax {
                iters += 1;
                let d1 = y * bx + k * delta_d;
                if d1.is_multiple_of(x) {
                    test(bx, d1 / x);
                }
            }
        }
        // Δ = yX − xY
        let ymax = y_u.min((y * x_u).saturating_sub(delta_d) / x);
        for by in 1..=ymax {
            let kmax = delta_u.min(y * x_u - x * by) / delta_d;
            for k in 1..=kmax {
                iters += 1;
                let d2 = x * by + k * delta_d;
                if d2.is_multiple_of(y) {
                    test(d2 / y, by);
                }
            }
        }
        cnt.add("iterations", iters);
    });
    ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }
}

/// Step 3 predicate for a single survivor: both equations hold exactly.
pub fn survivor_holds(c: u64, s: &Survivor) -> bool {
    s.a.pow(s.x) + s.b.pow(s.y) == cpow(c, s.z)
        && s.a.pow(s.big_x as u32) + s.b.pow(s.big_y as u32) == cpow(c, s.big_z)
}

/// Runs all three steps over the full ranges.
pub fn run_case(
    cfg: &Step1Config,
    x_l: u32,
    params: &Step3Params,
) -> (Vec<List1Entry>, Vec<List2Entry>, Vec<Survivor>) {
    let l1 = step1(cfg, &mut Control::default()).records();
    let l2 = step2(cfg.c, &l1, x_l, &mut Control::default()).records();
    let s = step3(cfg.c, &l2, params, &mut Control::default()).records();
    (l1, l2, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_upper_values() {
        // n′ = 0: ⌊1 + 7^{-1/2} + 7^{-1}⌋ = 1; n′ = 2: 49 + 7 + 1.
        assert_eq!(t_upper(7, 0), 1);
        assert_eq!(t_upper(7, 1), 7 + 2 + 1);
        assert_eq!(t_upper(7, 2), 57);
        assert_eq!(t_upper(7, 3), 343 + 18 + 1);
    }

    #[test]
    fn check4_examples() {
        assert!(check4(1));
        assert!(check4(7 * 13 * 3));
        assert!(!check4(2));
        assert!(!check4(27));
        assert!(!check4(5));
        assert!(!check4(7 * 11));
    }

    #[test]
    fn small_step1_contains_first_entry() {
        let out = step1(&Step1Config::uniform(7, 3, 1), &mut Control::default()).records();
        assert!(out.contains(&List1Entry { z: 1, nprime: 0, t: 1 }));
        assert!(out.iter().all(|e| list1_holds(7, e)));
        assert!(step1(&Step1Config::uniform(7, 0, 5), &mut Control::default()).items.is_empty());
    }

    #[test]
    fn power_decision() {
        let m = word_modulus(13);
        let (a, b) = (BigUint::from(3u32), BigUint::from(10u32));
        let r = (2187 + 10) % m;
        assert_eq!(power_of_c_exact(&a, &b, 7, 1, r, 13), Some(3));
        assert_eq!(power_of_c_exact(&a, &b, 7, 2, (2187 + 100) % m, 13), None);
    }
}
