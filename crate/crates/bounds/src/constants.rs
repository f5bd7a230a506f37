//! Constants bounding solutions of the system `a^x + b^y = c^z`, `a^X + b^Y = c^Z`
//! for a prime `c ≡ 1 (mod 3)` and common ±1-order `E`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::baker::PrimeIdeal;
use crate::fixed::solve_fixed_point;
use crate::float::{dec, BigFloat};
use crate::sharp::calc_c;
use crate::{BoundReport, BoundsError};

/// Whether `m = min{a, b}` lies below or above `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinBase {
    BelowC,
    AboveC,
}

impl MinBase {
    fn label(self) -> &'static str {
        match self {
            MinBase::BelowC => "m<c",
            MinBase::AboveC => "m>c",
        }
    }
}

fn lnc(c: &BigInt) -> BigFloat {
    BigFloat::from(c).ln()
}

pub fn nu_c(c: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(c) {
        n /= c;
        e += 1;
    }
    e
}

/// `Z < K₁ log a log b`: `K₁ = ⌊T*⌋ + 1` where `T*` closes
/// `T < f·53.6·2E/log⁴c · (log max{4e^0.64 log²c·T, c⁴})²`, with `f = log c/log 2`
/// when `m < c` and `f = 1` otherwise.
pub fn k1(c: u64, e_order: u32, m: MinBase) -> Result<BoundReport, BoundsError> {
    let cb = BigInt::from(c);
    let l = lnc(&cb);
    let f = match m {
        MinBase::BelowC => &l / BigFloat::ln2(),
        MinBase::AboveC => BigFloat::one(),
    };
    let coef = f * dec("53.6") * (2 * e_order as i64) / l.powi(4);
    let inner = dec("0.64").exp() * 4 * &l * &l;
    let c4 = BigFloat::from(c).powi(4);
    let rhs = |t: &BigFloat| {
        let b = (&inner * t).max(c4.clone()).ln();
        &coef * &b * &b
    };
    let fp = solve_fixed_point(rhs, dec("10").exp())?;
    Ok(BoundReport::new(format!("K1[{}]", m.label()), fp.value + 1)
        .input("c", c)
        .input("E", e_order)
        .input("fixed_point", format!("{:.6}", fp.limit))
        .trace(fp.trace))
}

/// `zZ < K₂ log a log b` for `z ≥ z_min`:
/// `K₂ = ⌈53.611·2E·max{1/ζ², 4z²/(ζz − log 2)²}·4²⌉`, using `log m > (ζz − log 2)/2`.
pub fn k2(e_order: u32, zeta: &str, z_min: u32) -> BoundReport {
    let zeta_f = dec(zeta);
    let z = BigFloat::from(z_min as i64);
    let first = BigFloat::one() / (&zeta_f * &zeta_f);
    let d = &zeta_f * &z - BigFloat::ln2();
    let second = &z * &z * 4 / (&d * &d);
    let which = if first >= second { "1/zeta^2" } else { "4z^2/(zeta z - log 2)^2" };
    let val = dec("53.611") * (2 * e_order as i64) * first.max(second) * 16;
    BoundReport::new("K2", val.ceil())
        .input("E", e_order)
        .input("zeta", zeta)
        .input("z_min", z_min)
        .input("branch", which)
        .input("real", format!("{val:.6}"))
        .note("leading constant 53.611 inside this derivation, 53.6 elsewhere")
}

/// `Δ ≤ K₃`: `⌊K·log²c·z_cap⌋` for each regime.
pub fn k3(c: u64, k: &BigInt, z_cap: u32, label: &str) -> BoundReport {
    let l = lnc(&BigInt::from(c));
    let val = BigFloat::from(k) * &l * &l * z_cap as i64;
    BoundReport::new(format!("K3[{label}]"), val.floor())
        .input("c", c)
        .input("K", k)
        .input("z_cap", z_cap)
        .input("real", format!("{val:.6}"))
}

/// Largest `n′` with `c^{n′} ≤ Δ/E` under the overall bound `Δ ≤ max K₃`.
pub fn nprime_max(c: u64, e_order: u32, delta_max: &BigInt) -> u32 {
    let cap = delta_max / e_order;
    let mut n = 0;
    let mut p = BigInt::from(c);
    while p <= cap {
        n += 1;
        p *= c;
    }
    n
}

/// `z ≤ z(n′)` for `max{x, y} = 2`: the largest `z₁` closing the prime-ideal bound at
/// `π | c` in `ℚ(ω)` with `H₁ = log c`, `H₂ = max{n′,1}·log c`, `g = c − 1`,
/// `(b₁, b₂) = (z₁, 1)`; then `z(n′) = z₁ + n′`.
pub fn z_of_nprime(c: u64, nprime: u32) -> Result<BoundReport, BoundsError> {
    let l = lnc(&BigInt::from(c));
    let h2 = &l * nprime.max(1) as i64;
    let rhs = |z1: &BigFloat| {
        PrimeIdeal { d: 2, p: c, g: c - 1, f_pi: 1, h1: l.clone(), h2: h2.clone(), b1: z1.clone(), b2: BigFloat::one() }
            .eval()
            .expect("heights meet their floors")
    };
    let fp = solve_fixed_point(rhs, dec("10").exp())?;
    Ok(BoundReport::new(format!("z({nprime})"), fp.value.clone() + nprime)
        .input("c", c)
        .input("n'", nprime)
        .input("z1", &fp.value)
        .trace(fp.trace))
}

/// Largest `z` with `c^{z−n′} < c^{2z/3} + c^{z/3} + 1`: the cap on `z` when `max{x,y} ≥ 3`.
pub fn z_u3(c: u64, nprime: u32) -> u32 {
    let l = lnc(&BigInt::from(c));
    let holds = |z: u32| {
        let lhs = (&l * (z as i64 - nprime as i64)).exp();
        let rhs = (&l * z as i64 / 3 * 2).exp() + (&l * z as i64 / 3).exp() + 1;
        lhs < rhs
    };
    let mut z = nprime.max(1);
    while holds(z + 1) {
        z += 1;
    }
    z
}

/// `Y − 2 − log(2c^e)/log 2 − 25.2 log c·(max{log(2Y/log c + 1) + 0.38, 10})²`;
/// negative exactly when `Y` survives the archimedean bound.
fn yu1_gap(l: &BigFloat, y: u64, e: u32) -> BigFloat {
    let yf = BigFloat::from(y);
    let lhs = &yf - 2 - (BigFloat::from(2i64).ln() + l * e as i64) / BigFloat::ln2();
    let b = ((&yf * 2 / l + 1).ln() + dec("0.38")).max(BigFloat::from(10i64));
    lhs - dec("25.2") * l * &b * &b
}

/// Largest `Y ≡ 4 (mod 6)` with `Y ≤ limit` and `ν_c((Y−1)/3) ≥ e`.
fn last_with_valuation(c: u64, limit: u64, e: u32) -> Option<u64> {
    // (Y−1)/3 = N must be odd with c^e | N, so N ≡ c^e (mod 2c^e).
    let step = c.checked_pow(e)?;
    let n_max = limit.checked_sub(1)? / 3;
    if n_max < step {
        return None;
    }
    let k = (n_max - step) / (2 * step);
    Some(3 * (step + 2 * k * step) + 1)
}

/// `Y ≤ Y_u1`, the archimedean bound, with `e = ν_c((Y−1)/3)` taken per `Y`.
///
/// For fixed `e` the gap is negative on an initial segment of `Y` (it decreases
/// while `Y < 50.4·log c·𝓑` and increases afterwards), so the last negative `Y`
/// is found by galloping and bisection. The bound is the largest `Y` that is
/// admissible for its own valuation.
pub fn y_u1(c: u64) -> BoundReport {
    let l = lnc(&BigInt::from(c));
    let mut best = 4u64;
    let mut e_max = 0u32;
    let mut trace = Vec::new();
    for e in 0.. {
        let Some(step) = c.checked_pow(e) else { break };
        if step > u64::MAX / 64 {
            break;
        }
        let ok = |y: u64| yu1_gap(&l, y, e).is_negative();
        // Gallop to a failing Y, then bisect the boundary.
        let mut lo = 4u64;
        let mut hi = 8u64;
        while ok(hi) {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        trace.push(format!("e={e} real-threshold={lo}"));
        match last_with_valuation(c, lo, e) {
            Some(y) => {
                if y > best {
                    best = y;
                }
                e_max = e;
            }
            None => break,
        }
    }
    BoundReport::new("Y_u1", best).input("c", c).input("e_max", e_max).trace(trace)
}

/// `Y < (857.6·E·z₁/(z₁−e) + 1) / (1 − log 𝒞(z₁,Y,2)/(z₁ log c))` scanned over
/// `Y ≡ 4 (mod 6)`, `Y ≤ y_cap`; returns the largest admissible `Y`.
pub fn y_u2(c: u64, z1: u32, y_cap: u64, e_order: u32) -> Result<BoundReport, BoundsError> {
    let cb = BigInt::from(c);
    let l = lnc(&cb);
    let mut best: Option<u64> = None;
    let mut checked = 0u64;
    let mut y = 4u64;
    while y <= y_cap {
        let e = nu_c(c, (y - 1) / 3);
        if e >= z1 {
            return Err(BoundsError::Parameter(format!("z1 = {z1} does not exceed e = {e}")));
        }
        let cc = calc_c(c, z1, y, &BigInt::from(2), e)
            .ok_or_else(|| BoundsError::Parameter(format!("z1 = {z1} below z0 for Y = {y}")))?;
        let denom = BigFloat::one() - cc.ln() / (&l * z1 as i64);
        let lead = dec("857.6") * e_order as i64 * z1 as i64 / (z1 as i64 - e as i64) + 1;
        if denom.is_positive() && BigFloat::from(y) < lead / denom {
            best = Some(y);
        }
        checked += 1;
        y += 6;
    }
    let best = best.ok_or_else(|| BoundsError::Parameter("no admissible Y".into()))?;
    Ok(BoundReport::new("Y_u2", best)
        .input("c", c)
        .input("z1", z1)
        .input("Y_cap", y_cap)
        .input("E", e_order)
        .input("checked", checked))
}

/// The full constant set for `c = 7`, `E = 3`, each with its target.
pub fn c7_reports() -> Result<Vec<BoundReport>, BoundsError> {
    let c = 7;
    let e = 3;
    let mut out = Vec::new();
    let k1_small = k1(c, e, MinBase::BelowC)?.target(9937);
    let k1_large = k1(c, e, MinBase::AboveC)?.target(2875);
    let k2v = k2(e, "1.11", 13).target(18438);
    out.push(k3(c, &k1_small.value, 6, "m<c,z<=12").target(225762));
    out.push(k3(c, &k1_large.value, 12, "m>c,z<=12").target(130636));
    out.push(k3(c, &k2v.value, 1, "z>=13").target(69816));
    let delta_max = out.iter().map(|r| r.value.clone()).max().unwrap_or_else(BigInt::zero);
    let nmax = nprime_max(c, e, &delta_max);
    out.insert(0, k2v);
    out.insert(0, k1_large);
    out.insert(0, k1_small);
    out.push(BoundReport::new("n'_max", nmax).input("Delta_max", &delta_max).target(5));
    out.push(BoundReport::new("z_u3", z_u3(c, nmax)).input("n'", nmax).target(15));
    for (n, t) in [(0u32, 21789u32), (1, 21790), (2, 43580), (3, 65370), (4, 87160), (5, 108950)] {
        out.push(z_of_nprime(c, n)?.target(t));
    }
    let yu = y_u1(c).target(4906);
    let cap = yu.value.to_u64().expect("small");
    out.push(yu);
    out.push(y_u2(c, 200, cap, e)?.target(2596));
    Ok(out)
}
