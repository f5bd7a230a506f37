use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modular::{mul_mod, pow_mod};
use crate::prime::is_prime_u64;
use crate::ArithError;

/// The two residues `U mod c^l` with `U² + U + 1 ≡ 0`, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselRootPair {
    pub c: u64,
    pub level: u32,
    pub roots: [BigUint; 2],
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(n, q, p), pow_mod(n, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// `√−3 mod c^l`, lifted from the smaller positive square root modulo `c`.
pub fn sqrt_minus3(c: u64, l: u32) -> Result<BigUint, ArithError> {
    if c % 3 != 1 || !is_prime_u64(c) {
        return Err(ArithError::NoCubicRoot(c));
    }
    if l == 0 {
        return Err(ArithError::ZeroExponent);
    }
    let s0 = tonelli_shanks(c - 3, c).ok_or(ArithError::NoCubicRoot(c))?;
    let s0 = s0.min(c - s0);
    let target = BigInt::from(c).pow(l);
    let mut s = BigInt::from(s0);
    let mut level = 1u32;
    // Newton step s ← s − (s² + 3)/(2s) doubles the number of correct digits.
    while level < l {
        level = (2 * level).min(l);
        let m = BigInt::from(c).pow(level);
        let f = (&s * &s + 3u32).mod_floor(&m);
        let inv = (BigInt::from(2u32) * &s).extended_gcd(&m).x;
        s = (&s - f * inv).mod_floor(&m);
    }
    let s = s.mod_floor(&target);
    debug_assert!(((&s * &s + 3u32) % &target).is_zero());
    Ok(s.to_biguint().expect("nonnegative"))
}

/// `b_ε ≡ (−1 + ε√−3)/2 (mod c^l)` with `√−3` from [`sqrt_minus3`].
pub fn b_eps(c: u64, l: u32, eps: i8) -> Result<BigUint, ArithError> {
    let s = BigInt::from(sqrt_minus3(c, l)?);
    let m = BigInt::from(c).pow(l);
    let half = BigInt::from(2u32).extended_gcd(&m).x;
    let v = (BigInt::from(eps) * s - 1u32) * half;
    Ok(v.mod_floor(&m).to_biguint().expect("nonnegative"))
}

/// Both roots of `U² + U + 1 ≡ 0 (mod c^l)`.
pub fn hensel_cubic_roots(c: u64, l: u32) -> Result<HenselRootPair, ArithError> {
    let mut roots = [b_eps(c, l, 1)?, b_eps(c, l, -1)?];
    roots.sort();
    Ok(HenselRootPair { c, level: l, roots })
}

impl HenselRootPair {
    pub fn modulus(&self) -> BigUint {
        BigUint::from(self.c).pow(self.level)
    }

    /// Re-check both defining congruences and the root-sum relation.
    pub fn verify(&self) -> bool {
        let m = self.modulus();
        let ok = self.roots.iter().all(|u| ((u * u + u + 1u32) % &m).is_zero());
        let sum = (&self.roots[0] + &self.roots[1] + BigUint::one()) % &m;
        ok && self.roots[0] != self.roots[1] && sum.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(c: u64, l: u32) -> [u64; 2] {
        let p = hensel_cubic_roots(c, l).unwrap();
        [p.roots[0].iter_u64_digits().next().unwrap_or(0), p.roots[1].iter_u64_digits().next().unwrap_or(0)]
    }

    #[test]
    fn examples() {
        assert_eq!(pair(7, 1), [2, 4]);
        assert_eq!(pair(7, 2), [18, 30]);
        assert_eq!(pair(13, 1), [3, 9]);
        assert_eq!(hensel_cubic_roots(5, 1), Err(ArithError::NoCubicRoot(5)));
        assert_eq!(hensel_cubic_roots(25, 1), Err(ArithError::NoCubicRoot(25)));
    }

    #[test]
    fn lifts_are_consistent() {
        for c in [7u64, 13, 97, 193, 769, 12289, 786433, 3 * (1 << 30) + 1] {
            for l in 1..12 {
                let p = hensel_cubic_roots(c, l).unwrap();
                assert!(p.verify(), "c={c} l={l}");
                let q = hensel_cubic_roots(c, l + 1).unwrap();
                let m = p.modulus();
                let mut reduced = [&q.roots[0] % &m, &q.roots[1] % &m];
                reduced.sort();
                assert_eq!(reduced, p.roots);
                // b_ε labels survive reduction as well.
                assert_eq!(b_eps(c, l + 1, 1).unwrap() % &m, b_eps(c, l, 1).unwrap());
            }
        }
    }
}
