use num_bigint::BigInt;

use crate::float::BigFloat;
use crate::BoundsError;

const MAX_ITER: usize = 400;
const MAX_SCAN: usize = 64;

/// Result of closing an inequality `T ≤ RHS(T)`.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    /// Largest integer `T` with `T ≤ RHS(T)`.
    pub value: BigInt,
    /// The real limit of the iteration `T ← RHS(T)`.
    pub limit: BigFloat,
    /// One entry per iterate, then the integer scan.
    pub trace: Vec<String>,
    /// True when the limit sits within `2^-100` of an integer.
    pub near_integer: bool,
}

/// Iterates `T ← RHS(T)` from `init` until the iterates agree to 2^-200
/// relative, then walks the integer neighbourhood so that the returned value
/// satisfies `T ≤ RHS(T)` and `T + 1 > RHS(T + 1)`. `RHS` must grow slower than
/// `T` (polylogarithmically, for every use in this crate).
pub fn solve_fixed_point<F>(rhs: F, init: BigFloat) -> Result<FixedPoint, BoundsError>
where
    F: Fn(&BigFloat) -> BigFloat,
{
    let mut t = init;
    let mut trace = vec![format!("init {t:.6}")];
    let tol = BigFloat::pow2(-200);
    let mut converged = false;
    for i in 1..=MAX_ITER {
        let next = rhs(&t);
        trace.push(format!("iter {i} {next:.6}"));
        let done = (&next - &t).abs() <= &tol * next.abs().max(BigFloat::one());
        t = next;
        if done {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(BoundsError::NoConvergence(MAX_ITER));
    }
    let holds = |v: &BigInt| BigFloat::from(v) <= rhs(&BigFloat::from(v));
    let mut v = t.floor();
    let mut steps = 0;
    while holds(&(&v + 1)) {
        v += 1;
        steps += 1;
        trace.push(format!("scan up {v}"));
        if steps > MAX_SCAN {
            return Err(BoundsError::NoConvergence(MAX_ITER));
        }
    }
    while !holds(&v) {
        v -= 1;
        steps += 1;
        trace.push(format!("scan down {v}"));
        if steps > MAX_SCAN {
            return Err(BoundsError::NoConvergence(MAX_ITER));
        }
    }
    let (_, near_integer) = t.floor_checked(100);
    Ok(FixedPoint { value: v, limit: t, trace, near_integer })
}
