//! Quadratic-residue prefilters for `L·c^k + M` being a perfect square.
//!
//! A value that is a non-residue modulo any prime is certainly not a square,
//! so rejection here is exact; only candidates passing every prime reach the
//! big-integer square root.

use num_bigint::BigUint;
use xdio_arith::is_prime_u64;

struct QrPrime {
    p: u64,
    qr: Vec<bool>,
    /// `c^j mod p` for `0 ≤ j < ord_p(c)`.
    cpow: Vec<u64>,
}

pub struct QrSieve {
    primes: Vec<QrPrime>,
}

/// Per-prime residues of the coefficients of `L·c^k + M`.
pub struct Affine {
    lin: Vec<u64>,
    cst: Vec<u64>,
}

impl QrSieve {
    /// Uses the first `count` primes `p ≥ 5` with `p ≠ c`.
    pub fn new(c: u64, count: usize) -> Self {
        let mut primes = Vec::with_capacity(count);
        let mut p = 5u64;
        while primes.len() < count {
            if is_prime_u64(p) && p != c {
                let mut qr = vec![false; p as usize];
                for x in 0..p {
                    qr[((x * x) % p) as usize] = true;
                }
                let cm = c % p;
                let mut cpow = vec![1u64];
                let mut v = cm;
                while v != 1 {
                    cpow.push(v);
                    v = v * cm % p;
                }
                primes.push(QrPrime { p, qr, cpow });
            }
            p += 2;
        }
        Self { primes }
    }

    /// Reduces `L` and `M` given as closures `p ↦ L mod p`, `p ↦ M mod p`.
    pub fn affine(&self, lin: impl Fn(u64) -> u64, cst: impl Fn(u64) -> u64) -> Affine {
        Affine {
            lin: self.primes.iter().map(|q| lin(q.p) % q.p).collect(),
            cst: self.primes.iter().map(|q| cst(q.p) % q.p).collect(),
        }
    }

    /// `false` proves `L·c^k + M` is not a square.
    #[inline]
    pub fn may_be_square(&self, f: &Affine, k: u64) -> bool {
        for (i, q) in self.primes.iter().enumerate() {
            let ck = q.cpow[(k % q.cpow.len() as u64) as usize];
            let v = (f.lin[i] * ck + f.cst[i]) % q.p;
            if !q.qr[v as usize] {
                return false;
            }
        }
        true
    }
}

/// `x mod p` for a signed value.
pub fn signed_mod(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

/// Largest `c^k` below `2^63`.
pub fn word_modulus(c: u64) -> u64 {
    let mut m = c;
    while let Some(n) = m.checked_mul(c) {
        if n >= 1 << 63 {
            break;
        }
        m = n;
    }
    m
}

/// Decides exactly whether a positive `V` is a power `c^Z` (`Z ≥ 1`) from its
/// residue `r = V mod M`, where `M = c^k`.
///
/// A power with `Z ≥ k` has `r = 0`, and only then is `exact` evaluated. A
/// power with `Z < k` equals its own residue, which `small` confirms by
/// computing `V` in 128 bits (`None` meaning `V` does not fit, hence `V ≥ M`).
pub fn power_from_residue(
    r: u64,
    c: u64,
    small: impl FnOnce() -> Option<u128>,
    exact: impl FnOnce() -> BigUint,
) -> Option<u32> {
    if r == 0 {
        return crate::power_of(&exact(), c);
    }
    if !r.is_multiple_of(c) {
        return None;
    }
    let z = crate::power_of(&BigUint::from(r), c)?;
    (small()? == r as u128).then_some(z)
}
