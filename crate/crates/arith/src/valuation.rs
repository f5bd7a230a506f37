use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ArithError;

/// `ν_M(x)` for a nonzero integer `x`: the largest `ν` with `M^ν | x`.
pub fn nu(m: &BigUint, x: &BigInt) -> Result<u64, ArithError> {
    if m <= &BigUint::one() {
        return Err(ArithError::BadBase(m.to_string()));
    }
    if x.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let mut v = x.magnitude().clone();
    let mut k = 0;
    loop {
        let (q, r) = v.div_rem(m);
        if !r.is_zero() {
            return Ok(k);
        }
        v = q;
        k += 1;
    }
}

/// Word-sized `ν_M(x)`; `x` must be nonzero and `m > 1`.
pub fn nu_u64(m: u64, mut x: u64) -> u32 {
    assert!(m > 1 && x != 0, "nu_u64 needs m > 1 and x != 0");
    let mut k = 0;
    while x.is_multiple_of(m) {
        x /= m;
        k += 1;
    }
    k
}

/// `ν_M` extended to rationals: `ν_M(p/q) = ν_M(p) − ν_M(q)` with `p/q` in lowest terms.
pub fn valuation(m: &BigUint, x: &BigRational) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let num = nu(m, x.numer())? as i64;
    let den = nu(m, &x.denom().abs())? as i64;
    Ok(num - den)
}
