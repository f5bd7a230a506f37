use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `⌊A^{1/k}⌋`. The library root is Newton-based; the loop afterwards is the
/// exact correction step, so the result is bit-exact for any size.
pub fn kth_root_floor(a: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || a.is_zero() {
        return a.clone();
    }
    let mut r = a.nth_root(k);
    while r.pow(k) > *a {
        r -= 1u32;
    }
    loop {
        let next = &r + 1u32;
        if next.pow(k) <= *a {
            r = next;
        } else {
            break;
        }
    }
    r
}

/// `r` with `r^k = A` exactly, if such an integer exists.
pub fn kth_root_exact(a: &BigUint, k: u32) -> Option<BigUint> {
    let r = kth_root_floor(a, k);
    (r.pow(k) == *a).then_some(r)
}

// Quadratic-residue masks for cheap rejection before the exact square root.
fn qr_table(m: u32) -> Vec<bool> {
    let mut t = vec![false; m as usize];
    for x in 0..m {
        t[((x as u64 * x as u64) % m as u64) as usize] = true;
    }
    t
}

fn passes_qr_filters(a: &BigUint) -> bool {
    use std::sync::OnceLock;
    static TABLES: OnceLock<Vec<(u32, Vec<bool>)>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| [64u32, 63, 65, 11].iter().map(|&m| (m, qr_table(m))).collect());
    tables.iter().all(|(m, t)| {
        let r = (a % *m).to_u32().unwrap_or(0);
        t[r as usize]
    })
}

/// Exact square root if `A` is a perfect square.
pub fn isqrt_exact(a: &BigUint) -> Option<BigUint> {
    if !passes_qr_filters(a) {
        return None;
    }
    let r = kth_root_floor(a, 2);
    (&r * &r == *a).then_some(r)
}

/// True iff `A ≥ 0` and `⌊√A⌋² = A`; negative inputs are simply not squares.
pub fn is_square(a: &BigInt) -> bool {
    if a.is_negative() {
        return false;
    }
    isqrt_exact(a.magnitude()).is_some()
}

fn small_primes_upto(n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    for p in 2..=n as u32 {
        if (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            out.push(p);
        }
    }
    out
}

/// Maximal-exponent representation `A = base^exp` with `exp ≥ 2`, or `None`.
/// By convention 0 and 1 are not reported as perfect powers.
pub fn is_perfect_power(a: &BigUint) -> Option<(BigUint, u32)> {
    if *a <= BigUint::one() {
        return None;
    }
    let mut base = a.clone();
    let mut exp = 1u32;
    'outer: loop {
        let bits = base.bits();
        if bits < 2 {
            break;
        }
        for p in small_primes_upto(bits) {
            if let Some(r) = kth_root_exact(&base, p) {
                base = r;
                exp *= p;
                continue 'outer;
            }
        }
        break;
    }
    (exp >= 2).then_some((base, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn examples() {
        assert_eq!(is_perfect_power(&u(128)), Some((u(2), 7)));
        assert_eq!(is_perfect_power(&u(2200)), None);
        assert_eq!(is_perfect_power(&u(1)), None);
        assert_eq!(is_perfect_power(&u(64)), Some((u(2), 6)));
        assert_eq!(is_perfect_power(&u(343)), Some((u(7), 3)));
        assert_eq!(kth_root_exact(&u(2197), 3), Some(u(13)));
        assert_eq!(kth_root_exact(&u(2198), 3), None);
        assert!(is_square(&BigInt::from(25)));
        assert!(!is_square(&BigInt::from(193)));
        assert!(is_square(&BigInt::from(0)));
        assert!(!is_square(&BigInt::from(-4)));
    }

    #[test]
    fn squares_agree_with_naive_up_to_a_million() {
        let mut next_root = 0u64;
        for a in 0..=1_000_000u64 {
            while (next_root + 1) * (next_root + 1) <= a {
                next_root += 1;
            }
            let naive = next_root * next_root == a;
            assert_eq!(is_square(&BigInt::from(a)), naive, "a={a}");
        }
    }

    #[test]
    fn exact_at_five_thousand_digits() {
        let x = BigUint::from(7u32).pow(6000) + 12345u32;
        let sq = &x * &x;
        assert_eq!(isqrt_exact(&sq), Some(x.clone()));
        assert_eq!(isqrt_exact(&(&sq + 1u32)), None);
        assert_eq!(isqrt_exact(&(&sq - 1u32)), None);
        assert_eq!(kth_root_floor(&(&sq - 1u32), 2), &x - 1u32);
    }
}
