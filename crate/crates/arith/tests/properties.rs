use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use xdio_arith::modular::pow_mod;
use xdio_arith::*;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 13, 97, 193, 769];

proptest! {
    #[test]
    fn valuation_is_additive_for_primes(pi in 0usize..8, x in 1i64..1_000_000, y in 1i64..1_000_000) {
        let p = BigUint::from(PRIMES[pi]);
        let v = |n: i64| valuation(&p, &BigRational::from_integer(n.into())).unwrap();
        prop_assert_eq!(v(x * y), v(x) + v(y));
    }

    #[test]
    fn rational_valuation_is_difference(pi in 0usize..8, x in 1i64..100_000, y in 1i64..100_000) {
        let p = BigUint::from(PRIMES[pi]);
        let q = BigRational::new(x.into(), y.into());
        let whole = |n: i64| valuation(&p, &BigRational::from_integer(n.into())).unwrap();
        prop_assert_eq!(valuation(&p, &q).unwrap(), whole(x) - whole(y));
    }

    #[test]
    fn pm_order_characterises_exponents(m in 3u64..5000, a in 1u64..5000, k in 1u64..300) {
        let bi = BigInt::from(a);
        if let Ok(e) = pm_order(m, &bi) {
            let r = pow_mod(a % m, k, m);
            let hit = r == 1 || r == m - 1;
            prop_assert_eq!(hit, k % e.order == 0);
            let r = pow_mod(a % m, e.order, m);
            prop_assert_eq!(r, if e.sign == 1 { 1 } else { m - 1 });
        }
    }

    #[test]
    fn pm_order_divides_half_group_order_for_odd_primes(pi in 1usize..8, a in 1u64..10_000) {
        let p = PRIMES[pi];
        prop_assume!(a % p != 0);
        let e = pm_order(p, &BigInt::from(a)).unwrap();
        prop_assert_eq!(((p - 1) / 2) % e.order, 0);
    }

    #[test]
    fn kth_roots_round_trip(x in 2u64..1_000_000_000, k in 2u32..7) {
        let base = BigUint::from(x);
        let n = base.pow(k);
        prop_assert_eq!(kth_root_exact(&n, k), Some(base.clone()));
        prop_assert_eq!(kth_root_exact(&(&n + 1u32), k), None);
        let (b, e) = is_perfect_power(&n).unwrap();
        prop_assert_eq!(b.pow(e), n);
        prop_assert!(e >= k);
    }

    #[test]
    fn hensel_roots_sum_to_minus_one(ci in 0usize..4, l in 1u32..20) {
        let c = [7u64, 13, 97, 193][ci];
        let pair = hensel_cubic_roots(c, l).unwrap();
        prop_assert!(pair.verify());
    }
}

#[test]
fn gaussian_pow_matches_repeated_product() {
    let beta = GaussInt::new(4, 9);
    let mut acc = GaussInt::unit();
    for z in 1..60u64 {
        acc = &acc * &beta;
        assert_eq!(beta.pow(z), acc);
        assert_eq!(acc.norm(), BigInt::from(97u32).pow(z as u32));
        assert_eq!(acc.conj().norm(), acc.norm());
    }
}
