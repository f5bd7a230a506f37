use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use xdio_polyeuclid::*;

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn bezout_identity_on_the_full_grid() {
    for n in 1..=5 {
        for e in 1..=6 {
            for big_n in 1..=9 {
                let w = bezout_witness(n, e, big_n).unwrap();
                assert!(w.identity_holds(), "n={n} E={e} N={big_n}");
                let deg_a = if e == 1 { 1 } else { e as usize - 1 };
                assert!(w.lq.degree().is_none_or(|d| d < deg_a));
                // l is minimal: no proper divisor of l clears every coefficient.
                let g = w.lp.0.iter().chain(w.lq.0.iter()).fold(w.l.clone(), |acc, c| acc.gcd(c));
                assert!(g.is_one(), "n={n} E={e} N={big_n} common factor {g}");
            }
        }
    }
}

#[test]
fn e_three_family_up_to_fifty() {
    for big_n in 1..=50 {
        let w = bezout_witness(1, 3, big_n).unwrap();
        assert_eq!(w.lq.0, vec![bi(1), bi(2)]);
        assert_eq!(w.l, bi(3 * big_n as i64));
    }
}

#[test]
fn every_small_solution_has_even_n() {
    // Complete list of X^m − X^n = q^{y1} − q^{y2} with X < 200, m < 60, y1 < 40 and q ≤ 97.
    let sols = [(2, 3, 3, 1, 2, 1), (2, 3, 5, 3, 3, 1), (2, 3, 8, 4, 5, 1), (4, 3, 4, 2, 5, 1), (13, 3, 3, 1, 7, 1), (2, 5, 7, 3, 3, 1), (3, 13, 7, 1, 3, 1)];
    for (x, q, m, n, y1, y2) in sols {
        match derive_congruence(&bi(x), q, m, n, y1, y2) {
            Err(EuclidError::Hypothesis(HypothesisViolation::NEven(_))) => {}
            other => panic!("({x},{q},{m},{n},{y1},{y2}) gave {other:?}"),
        }
    }
}

#[test]
fn eval_i_matches_the_polynomial() {
    for x in [-3i64, 0, 1, 2, 7, 18] {
        for e in 1..=4 {
            for big_n in 1..=6 {
                let direct: BigInt = (0..big_n).map(|j| bi(x).pow(e * j)).sum();
                assert_eq!(eval_i(&bi(x), e, big_n), direct);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn identity_holds_at_random_points(n in 1u32..=5, e in 1u32..=6, big_n in 1u32..=9, t in -1000i64..1000) {
        let w = bezout_witness(n, e, big_n).unwrap();
        let tt = bi(t);
        let a = if e == 1 { &tt - 1 } else { eval_i(&tt, 1, e) };
        let b = if e == 1 { tt.pow(n) } else { tt.pow(n) * (&tt - 1) };
        let lhs = a * w.lp.eval(&tt) + b * eval_i(&tt, e, big_n) * w.lq.eval(&tt);
        prop_assert_eq!(lhs, w.l.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn db_identity_on_random_tuples(ci in 0usize..4, b in 2i64..1_000_000_000, z in 1u32..12, k in 0u64..500) {
        let c = [7u64, 13, 97, 193][ci];
        let y = 6 * k + 4;
        let big_n = (y - 1) / 3;
        let mut e = 0;
        let mut t = big_n;
        while t % c == 0 { t /= c; e += 1; }
        prop_assert!(db_identity_holds(c, &bi(b), z + e, y, e));
    }

    #[test]
    fn witness_identity_on_random_points(b in -1_000_000i64..1_000_000, big_n in 1u32..40) {
        prop_assert_eq!(witness_identity_value(&bi(b), big_n), bi(3 * big_n as i64));
    }
}

#[test]
fn survey_is_well_formed() {
    let rows = leading_coeff_survey(2, 7, 1..=9).unwrap();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r.deg_lq.unwrap() < 6);
        assert!(!r.l.is_zero());
        assert!(r.to_record().starts_with("survey y=2 q=7"));
    }
}
