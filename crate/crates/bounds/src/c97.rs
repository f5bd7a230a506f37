//! Constants for `c = 97` with even `E`.

use num_bigint::BigInt;

use crate::fixed::solve_fixed_point;
use crate::float::{dec, BigFloat};
use crate::{BoundReport, BoundsError};

pub const C: u64 = 97;
pub const ORDERS: [u32; 4] = [3, 6, 12, 24];

fn check_order(e: u32) -> Result<usize, BoundsError> {
    ORDERS
        .iter()
        .position(|&x| x == e)
        .ok_or_else(|| BoundsError::Parameter(format!("E = {e} is not one of 3, 6, 12, 24")))
}

/// Tabulated `t₁(E)`; these are the values the downstream argument uses.
pub fn t1(e: u32) -> Result<u64, BoundsError> {
    Ok([89, 178, 355, 710][check_order(e)?])
}

/// Recomputes `t₁(E)` as the fixed point of
/// `T < (log c/log 2)·53.6·2E/log⁴c · 𝓑^p` with `𝓑 = log max{4e^0.64 log²c·T, c⁴}`.
/// With `p = 2` (the displayed inequality) the result is far above the table; with
/// `p = 1` its ceiling is exactly the table. Both are returned for the report.
pub fn t1_recomputed(e: u32, power: u32) -> Result<BigFloat, BoundsError> {
    check_order(e)?;
    let l = BigFloat::from(C).ln();
    let coef = &l / BigFloat::ln2() * dec("53.6") * (2 * e as i64) / l.powi(4);
    let inner = dec("0.64").exp() * 4 * &l * &l;
    let c4 = BigFloat::from(C).powi(4);
    let rhs = |t: &BigFloat| &coef * (&inner * t).max(c4.clone()).ln().powi(power as u64);
    Ok(solve_fixed_point(rhs, BigFloat::from(10i64))?.limit)
}

pub fn t1_report(e: u32) -> Result<BoundReport, BoundsError> {
    let table = t1(e)?;
    let sq = t1_recomputed(e, 2)?;
    let lin = t1_recomputed(e, 1)?;
    Ok(BoundReport::new(format!("t1[E={e}]"), sq.floor() + 1)
        .input("E", e)
        .input("table", table)
        .input("B^2_reading", format!("{sq:.2}"))
        .input("B^1_reading", format!("{lin:.2}"))
        .target(table)
        .note("table value is used downstream; the B^1 reading reproduces it"))
}

/// `t₂ = 53.7·2·4²·(3/2)²·E`.
pub fn t2(e: u32) -> Result<BigFloat, BoundsError> {
    check_order(e)?;
    Ok(dec("53.7") * 2 * 16 * dec("2.25") * e as i64)
}

/// `t₃ = (3/2)·27.3·2²·16`.
pub fn t3() -> BigFloat {
    dec("1.5") * dec("27.3") * 4 * 16
}

/// `(t₁, t₂, t₃)` for the given `E`.
pub fn constants(e: u32) -> Result<(u64, BigFloat, BigFloat), BoundsError> {
    Ok((t1(e)?, t2(e)?, t3()))
}

/// Even `Z`: `Z < 4z ≤ 64·t₃·c/(c−1)`.
pub fn even_z_cap() -> BigFloat {
    t3() * 64 * C as i64 / (C as i64 - 1)
}

/// Odd `Z`: the fixed point of
/// `Z ≤ 9/(1−2/χ)·(1 + 22π/log c)·(max{log Z + 4.24, 17})² + 1` at `χ = 2.43`.
pub fn odd_z_cap(chi: &str) -> Result<BigFloat, BoundsError> {
    let chi = dec(chi);
    if chi <= BigFloat::from(2i64) {
        return Err(BoundsError::Parameter("chi must exceed 2".into()));
    }
    let l = BigFloat::from(C).ln();
    let k = BigFloat::from(9i64) / (BigFloat::one() - BigFloat::from(2i64) / chi)
        * (BigFloat::one() + BigFloat::pi() * 22 / &l);
    let rhs = |z: &BigFloat| {
        let m = (z.ln() + dec("4.24")).max(BigFloat::from(17i64));
        &k * &m * &m + 1
    };
    Ok(solve_fixed_point(rhs, BigFloat::from(1000i64))?.limit)
}

/// Caps for `(even, odd)` `Z`, each with the published round number as target window.
pub fn z_caps() -> Result<Vec<BoundReport>, BoundsError> {
    let even = even_z_cap();
    let odd = odd_z_cap("2.43")?;
    let e_ok = even < BigFloat::from(170_000i64);
    let o_ok = odd < BigFloat::from(240_000i64);
    Ok(vec![
        BoundReport::new("Z_cap[even]", even.floor())
            .input("real", format!("{even:.1}"))
            .input("below_1.7e5", e_ok),
        BoundReport::new("Z_cap[odd]", odd.floor())
            .input("chi", "2.43")
            .input("real", format!("{odd:.1}"))
            .input("below_2.4e5", o_ok),
    ])
}

/// Convenience for callers that just want integers.
pub fn z_cap_values() -> Result<(BigInt, BigInt), BoundsError> {
    Ok((even_z_cap().floor(), odd_z_cap("2.43")?.floor()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_errors() {
        assert_eq!(t1(3).unwrap(), 89);
        assert_eq!(t1(24).unwrap(), 710);
        assert!(t1(5).is_err());
        assert!(t2(7).is_err());
    }

    #[test]
    fn linear_reading_reproduces_table() {
        for e in ORDERS {
            let v = t1_recomputed(e, 1).unwrap();
            assert_eq!(v.ceil(), BigInt::from(t1(e).unwrap()));
        }
        assert!(t1_recomputed(3, 2).unwrap() > BigFloat::from(1600i64));
    }

    #[test]
    fn products() {
        assert_eq!(format!("{:.1}", t2(3).unwrap()), "11599.2");
        assert_eq!(format!("{:.1}", t3()), "2620.8");
        let (even, odd) = z_cap_values().unwrap();
        assert!(even < BigInt::from(170_000) && odd < BigInt::from(240_000));
        assert_eq!(even, BigInt::from(169478));
    }
}
