//! Gaussian integers and the decomposition of powers of `β = 4 + 9i`, a prime
//! of norm 97.

use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::modular::residue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn unit() -> Self {
        Self::new(1, 0)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::unit();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

pub const BETA_RE: i64 = 4;
pub const BETA_IM: i64 = 9;
pub const BETA_NORM: u64 = 97;

fn split(z: u64, p: &GaussInt) -> (BigInt, BigInt) {
    // β^Z + (−β̄)^Z is 2·Re β^Z for even Z and 2i·Im β^Z for odd Z.
    if z.is_multiple_of(2) {
        (p.re.abs(), p.im.abs())
    } else {
        (p.im.abs(), p.re.abs())
    }
}

/// `(a(β,Z), b(β,Z))` with `a = |β^Z + (−β̄)^Z| / 2` and `b = |β^Z − (−β̄)^Z| / 2`.
pub fn beta_components(z: u64) -> (BigInt, BigInt) {
    assert!(z >= 1, "Z must be positive");
    let p = GaussInt::new(BETA_RE, BETA_IM).pow(z);
    split(z, &p)
}

/// Iterates `(Z, a(β,Z), b(β,Z))` for `Z = 1, 2, …` by repeated multiplication.
pub struct BetaPowers {
    z: u64,
    cur: GaussInt,
}

impl BetaPowers {
    pub fn new() -> Self {
        Self { z: 0, cur: GaussInt::unit() }
    }
}

impl Default for BetaPowers {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for BetaPowers {
    type Item = (u64, BigInt, BigInt);
    fn next(&mut self) -> Option<Self::Item> {
        self.cur = &self.cur * &GaussInt::new(BETA_RE, BETA_IM);
        self.z += 1;
        let (a, b) = split(self.z, &self.cur);
        Some((self.z, a, b))
    }
}

/// `E(Z) = 24 / gcd(8, 3Z − 1)`.
pub fn e_of_z(z: u64) -> u64 {
    assert!(z >= 1, "Z must be positive");
    24 / 8u64.gcd(&(3 * z - 1))
}

/// A valuation computed modulo `97^cap`; `saturated` means the true value is at least `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VValue {
    pub value: u32,
    pub saturated: bool,
}

fn nu_residue(x: &BigUint, modulus: &BigUint, p: u64, cap: u32) -> u32 {
    if (x % modulus).is_zero() {
        return cap;
    }
    let mut k = 0;
    let mut v = x.clone();
    while (&v % p).is_zero() {
        v /= p;
        k += 1;
    }
    k
}

/// `V(Z) = max ν_97(h^E ± 1)` with `h = a(β,Z)` for even `Z` and `h = b(β,Z)` for odd `Z`,
/// evaluated modulo `97^cap`.
pub fn v_of_z(z: u64, h: &BigInt, cap: u32) -> VValue {
    let e = e_of_z(z);
    let modulus = BigUint::from(BETA_NORM).pow(cap);
    let r = h.magnitude().modpow(&BigUint::from(e), &modulus);
    let minus = (&r + &modulus - 1u32) % &modulus;
    let plus = (&r + 1u32) % &modulus;
    let v = nu_residue(&minus, &modulus, BETA_NORM, cap).max(nu_residue(&plus, &modulus, BETA_NORM, cap));
    VValue { value: v, saturated: v >= cap }
}

/// The component selected by the parity of `Z` for the `V` computation.
pub fn v_component(z: u64, a: &BigInt, b: &BigInt) -> BigInt {
    if z.is_multiple_of(2) {
        a.clone()
    } else {
        b.clone()
    }
}

/// Residue check: modulo `β` one has `β̄ ≡ 8` and `i ≡ 75`, so each component
/// is a unit multiple (`±1` or `±i`) of `2^{3Z−1}` modulo 97.
pub fn components_match_power_of_two(z: u64, a: &BigInt, b: &BigInt) -> bool {
    use crate::modular::{mul_mod, pow_mod};
    let t = pow_mod(2, 3 * z - 1, BETA_NORM);
    let ti = mul_mod(t, 75, BETA_NORM);
    let ok = |h: &BigInt| {
        let r = residue(h, BETA_NORM);
        [t, BETA_NORM - t, ti, BETA_NORM - ti].contains(&r)
    };
    ok(a) && ok(b)
}
