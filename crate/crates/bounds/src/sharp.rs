//! Closed forms for the `x = y = X = 1` endgame: `𝒞(z,Y,T)`, `z₀`, and the
//! upper bounds on `T` and `z` that drive the final sieve.

use num_bigint::BigInt;

use crate::float::BigFloat;

fn cpow(lnc: &BigFloat, x: &BigFloat) -> BigFloat {
    (lnc * x).exp()
}

/// `𝒞(z,Y,T) = 6N / (−2 − 3N/c^z + √(4(3c^{−2e}NT + 1) − 27N²/c^{2z}))`, or
/// `None` when the denominator is not positive (`z < z₀(Y,T)`).
pub fn calc_c(c: u64, z: u32, y: u64, t: &BigInt, e: u32) -> Option<BigFloat> {
    let lnc = BigFloat::from(c).ln();
    let n = BigFloat::from((y - 1) / 3);
    let cz = cpow(&lnc, &BigFloat::from(z as i64));
    let c2e = cpow(&lnc, &BigFloat::from(2 * e as i64));
    let rad = (&n * BigFloat::from(t) * 3 / &c2e + 1) * 4 - &n * &n * 27 / (&cz * &cz);
    if !rad.is_positive() {
        return None;
    }
    let den = rad.sqrt() - 2 - &n * 3 / &cz;
    if !den.is_positive() {
        return None;
    }
    Some(&n * 6 / den)
}

/// Least `z ≥ 1` at which `𝒞(z,Y,T)` is a positive real, searched up to `z_max`.
pub fn z0(c: u64, y: u64, t: &BigInt, e: u32, z_max: u32) -> Option<u32> {
    (1..=z_max).find(|&z| calc_c(c, z, y, t, e).is_some())
}

/// `τ_c = 1/(1 − 1/c)`.
pub fn tau(c: u64) -> BigFloat {
    BigFloat::from(c) / BigFloat::from(c - 1)
}

/// `(T_u1, T_u2)` at `(z, Y)`.
pub fn t_upper_bounds(c: u64, z: u32, y: u64, e: u32) -> (BigFloat, BigFloat) {
    let lnc = BigFloat::from(c).ln();
    let n3 = BigFloat::from(y - 1);
    let tau_y = tau(c).powi(y);
    let zf = BigFloat::from(z as i64);
    let ef = BigFloat::from(e as i64);
    let yf = BigFloat::from(y);
    let k = BigFloat::from(6000i64);
    let num1 = &k * &k * &tau_y * &tau_y + &k * &tau_y + 1;
    let tu1 = num1 / cpow(&lnc, &(&zf * 2 - &ef * 2)) * &n3
        + (BigFloat::from(12000i64) * &tau_y + 1) / cpow(&lnc, &(&zf - &ef * 2));
    let one = BigFloat::one();
    let inv_y = &one / &yf;
    let num2 = &one
        + BigFloat::one() / cpow(&lnc, &((&one - &inv_y) * &zf))
        + BigFloat::one() / cpow(&lnc, &((&one - &inv_y) * &zf * 2));
    let tu2 = num2 / cpow(&lnc, &(&zf * 2 / &yf - &ef * 2)) * &n3
        + BigFloat::from(2i64) / cpow(&lnc, &(&zf / &yf - &ef * 2))
        + BigFloat::one() / cpow(&lnc, &(&zf - &ef * 2));
    (tu1, tu2)
}

/// `⌊max{T_u1, T_u2}⌋` rounded so that truncation can only raise it.
pub fn t_upper(c: u64, z: u32, y: u64, e: u32) -> BigInt {
    let (a, b) = t_upper_bounds(c, z, y, e);
    a.max(b).floor_upper()
}

/// `(z_u1, z_u2)` at `(z, Y, T)`, or `None` below `z₀`.
pub fn z_upper_bounds(c: u64, z: u32, y: u64, t: &BigInt, e: u32) -> Option<(BigFloat, BigFloat)> {
    let cc = calc_c(c, z, y, t, e)?;
    let lnc = BigFloat::from(c).ln();
    let yf = BigFloat::from(y);
    let zu1 = ((&cc * 6000).ln() + &yf * tau(c).ln()) / &lnc;
    let zu2 = &yf * cc.ln() / &lnc;
    Some((zu1, zu2))
}

pub fn z_upper(c: u64, z: u32, y: u64, t: &BigInt, e: u32) -> Option<BigInt> {
    let (a, b) = z_upper_bounds(c, z, y, t, e)?;
    Some(a.max(b).floor_upper())
}

/// Double-precision `max{z_u1, z_u2}` for the inner loop of the final sieve,
/// padded by a relative `1e-9` plus `1e-6` so that it never undercuts the
/// multiprecision value (asserted on samples in the tests).
pub fn z_upper_fast(ln_c: f64, z: u32, y: u64, t: u64, e: u32) -> Option<f64> {
    let n = ((y - 1) / 3) as f64;
    let inv_cz = (-(z as f64) * ln_c).exp();
    let inv_c2e = (-2.0 * e as f64 * ln_c).exp();
    let rad = 4.0 * (3.0 * inv_c2e * n * t as f64 + 1.0) - 27.0 * n * n * inv_cz * inv_cz;
    if rad <= 0.0 {
        return None;
    }
    // sqrt(rad) − s rewritten without cancellation, s = 2 + 3N/c^z.
    let s = 2.0 + 3.0 * n * inv_cz;
    let num = 12.0 * inv_c2e * n * t as f64 - 12.0 * n * inv_cz - 36.0 * n * n * inv_cz * inv_cz;
    let den = num / (rad.sqrt() + s);
    if den <= 0.0 {
        return None;
    }
    let cc = 6.0 * n / den;
    let tau = 1.0 / (1.0 - (-ln_c).exp());
    let zu1 = ((6000.0 * cc).ln() + y as f64 * tau.ln()) / ln_c;
    let zu2 = y as f64 * cc.ln() / ln_c;
    let m = zu1.max(zu2);
    Some(m + m.abs() * 1e-9 + 1e-6)
}

/// The `4.0002` margin check: `(2 + (Y_u−1)/c^{z₁})² + 3(Y_u−1)²/c^{2z₁} < 4 + 12c^{−2e}·N·T`
/// at `N = 1`, `T = 2`, `e = e_max`, certifying `z₁ ≥ z₀(Y,T)` throughout.
pub fn z0_margin_holds(c: u64, z1: u32, y_u: u64, e_max: u32) -> bool {
    let lnc = BigFloat::from(c).ln();
    let cz = cpow(&lnc, &BigFloat::from(z1 as i64));
    let ym1 = BigFloat::from(y_u - 1);
    let a = BigFloat::from(2i64) + &ym1 / &cz;
    let lhs = &a * &a + &ym1 * &ym1 * 3 / (&cz * &cz);
    let rhs = BigFloat::from(4i64) + BigFloat::from(24i64) / cpow(&lnc, &BigFloat::from(2 * e_max as i64));
    lhs < rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calc_c_decreases_in_z() {
        for (y, t, e) in [(10u64, 2u64, 0u32), (148, 40, 1), (2596, 1000, 0)] {
            let t = BigInt::from(t);
            let z_start = z0(7, y, &t, e, 100).unwrap();
            let mut prev = calc_c(7, z_start, y, &t, e).unwrap();
            for z in z_start + 1..z_start + 40 {
                let cur = calc_c(7, z, y, &t, e).unwrap();
                assert!(cur <= prev, "Y={y} z={z}");
                prev = cur;
            }
        }
    }

    #[test]
    fn y_four_has_empty_t_loop() {
        let (a, b) = t_upper_bounds(7, 1500, 4, 0);
        assert!(a < BigFloat::from(2i64) && b < BigFloat::from(2i64));
        assert!(t_upper(7, 1500, 4, 0) < BigInt::from(2));
    }

    #[test]
    fn fast_z_upper_dominates() {
        let ln7 = 7f64.ln();
        for y in [10u64, 100, 1000, 2000, 2596] {
            for t in [2u64, 50, 1000, 100_000] {
                for e in [0u32, 1] {
                    let exact = z_upper(7, 1500, y, &BigInt::from(t), e).unwrap();
                    let fast = z_upper_fast(ln7, 1500, y, t, e).unwrap().floor() as i64;
                    assert!(BigInt::from(fast) >= exact, "Y={y} T={t}");
                    assert!(BigInt::from(fast) - &exact <= BigInt::from(1));
                }
            }
        }
    }

    #[test]
    fn margin_at_z_two_hundred() {
        assert!(z0_margin_holds(7, 200, 4906, 3));
    }
}
