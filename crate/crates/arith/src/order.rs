use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modular::{mul_mod, pow_mod, residue};
use crate::prime::factor_u64;
use crate::ArithError;

/// The ±1-order `e_M(A)`: least `e ≥ 1` with `A^e ≡ ±1 (mod M)`, and which sign occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PmOrder {
    pub modulus: u64,
    pub order: u64,
    pub sign: i8,
}

fn phi_factored(m: u64) -> Vec<(u64, u32)> {
    // φ(∏ p^k) = ∏ p^{k−1}(p−1); collect its factorisation.
    let mut acc: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, k: u32| match acc.iter_mut().find(|(q, _)| *q == p) {
        Some(slot) => slot.1 += k,
        None => acc.push((p, k)),
    };
    for (p, k) in factor_u64(m) {
        if k > 1 {
            push(p, k - 1);
        }
        for (q, j) in factor_u64(p - 1) {
            push(q, j);
        }
    }
    acc.sort_unstable();
    acc
}

/// Multiplicative order of `a` modulo `m`.
pub fn mult_order(m: u64, a: &BigInt) -> Result<u64, ArithError> {
    if m == 0 {
        return Err(ArithError::ZeroModulus);
    }
    if m == 1 {
        return Ok(1);
    }
    let r = residue(a, m);
    if r.gcd(&m) != 1 {
        return Err(ArithError::NotCoprime { a: a.to_string(), m: m.to_string() });
    }
    let factors = phi_factored(m);
    let mut ord: u64 = factors.iter().map(|&(p, k)| p.pow(k)).product();
    for &(p, _) in &factors {
        while ord.is_multiple_of(p) && pow_mod(r, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// `e_M(A)`, found from the ordinary order: the ±1 exponents form the
/// multiples of either `ord` or `ord/2`, the latter exactly when
/// `A^{ord/2} ≡ −1`.
pub fn pm_order(m: u64, a: &BigInt) -> Result<PmOrder, ArithError> {
    let ord = mult_order(m, a)?;
    if m <= 2 {
        return Ok(PmOrder { modulus: m, order: 1, sign: 1 });
    }
    let r = residue(a, m);
    if ord % 2 == 0 && pow_mod(r, ord / 2, m) == m - 1 {
        return Ok(PmOrder { modulus: m, order: ord / 2, sign: -1 });
    }
    Ok(PmOrder { modulus: m, order: ord, sign: 1 })
}

/// Multiplicative order of `a` modulo `c^z` for a prime `c`, using the known
/// group order `(c−1)·c^{z−1}`. Returns `(order of a mod c, f)` with the full
/// order equal to `ord_c · c^f`.
pub fn mult_order_prime_power(c: u64, z: u32, a: &BigUint) -> Result<(u64, u32), ArithError> {
    if z == 0 {
        return Err(ArithError::ZeroExponent);
    }
    let a_mod_c = (a % c).iter_u64_digits().next().unwrap_or(0);
    if a_mod_c == 0 {
        return Err(ArithError::NotCoprime { a: a.to_string(), m: c.to_string() });
    }
    let base = mult_order(c, &BigInt::from(a_mod_c))?;
    let modulus = BigUint::from(c).pow(z);
    let mut x = a.modpow(&BigUint::from(base), &modulus);
    let mut f = 0;
    while !x.is_one() {
        // Raising to the c-th power strips one factor of c from the order.
        x = x.modpow(&BigUint::from(c), &modulus);
        f += 1;
        debug_assert!(f < z);
    }
    Ok((base, f))
}

/// Sequential reference used by tests.
#[doc(hidden)]
pub fn pm_order_naive(m: u64, a: u64) -> Option<(u64, i8)> {
    let r = a % m;
    if r.gcd(&m) != 1 {
        return None;
    }
    if m <= 2 {
        return Some((1, 1));
    }
    let mut x = r;
    for e in 1..=m {
        if x == 1 {
            return Some((e, 1));
        }
        if x == m - 1 {
            return Some((e, -1));
        }
        x = mul_mod(x, r, m);
    }
    unreachable!()
}

impl PmOrder {
    /// `A^k ≡ ±1 (mod M)` holds exactly when `e | k`.
    pub fn divides(&self, k: u64) -> bool {
        !k.is_zero() && k.is_multiple_of(self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        assert_eq!(pm_order(7, &bi(2)).unwrap(), PmOrder { modulus: 7, order: 3, sign: 1 });
        assert_eq!(pm_order(5, &bi(2)).unwrap(), PmOrder { modulus: 5, order: 2, sign: -1 });
        assert_eq!(pm_order(97, &bi(2)).unwrap().order, 24);
        assert_eq!(mult_order(7, &bi(2)), Ok(3));
        assert_eq!(mult_order(7, &bi(3)), Ok(6));
        assert_eq!(mult_order(1234, &bi(1)), Ok(1));
        assert!(matches!(mult_order(7, &bi(14)), Err(ArithError::NotCoprime { .. })));
        assert!(matches!(pm_order(12, &bi(4)), Err(ArithError::NotCoprime { .. })));
    }

    #[test]
    fn exhaustive_small_moduli() {
        for m in 1..400u64 {
            for a in 0..m {
                match pm_order_naive(m, a) {
                    None => assert!(pm_order(m, &bi(a as i64)).is_err()),
                    Some((e, s)) => {
                        let got = pm_order(m, &bi(a as i64)).unwrap();
                        assert_eq!((got.order, got.sign), (e, s), "m={m} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_orders() {
        // 18 is a cube root of unity mod 7^3, so its order is 3 there.
        assert_eq!(mult_order_prime_power(7, 3, &18u32.into()), Ok((3, 0)));
        // 2 mod 49: 2^3 = 8, order of 8 mod 49 is 7, so ord = 21 = 3·7.
        assert_eq!(mult_order_prime_power(7, 2, &2u32.into()), Ok((3, 1)));
        assert_eq!(mult_order(49, &bi(2)), Ok(21));
    }
}
