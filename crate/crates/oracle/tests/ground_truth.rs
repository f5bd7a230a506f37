use num_bigint::BigUint;
use xdio_oracle::*;

fn p(b: u64, e: u32) -> BigUint {
    BigUint::from(b).pow(e)
}

fn xyz(v: &[SolutionTriple]) -> Vec<(u32, u32, u32)> {
    v.iter().map(|s| (s.x, s.y, s.z)).collect()
}

#[test]
fn small_counts() {
    let (n, s) = count_n(3, 5, 2, &p(2, 30)).unwrap();
    assert_eq!(n, 3);
    let mut got = xyz(&s);
    got.sort();
    assert_eq!(got, vec![(1, 1, 3), (1, 3, 7), (3, 1, 5)]);
    let (n, s) = count_n(3, 10, 13, &p(13, 10)).unwrap();
    assert_eq!(n, 2);
    assert!(xyz(&s).contains(&(7, 1, 3)) && xyz(&s).contains(&(1, 1, 1)));
    let (n, s) = count_n(2, 3, 5, &p(5, 10)).unwrap();
    assert_eq!((n, xyz(&s)), (2, vec![(1, 1, 1), (4, 2, 2)]));
    let (n, s) = count_n(2, 3, 11, &p(11, 12)).unwrap();
    assert_eq!(n, 2);
    let mut got = xyz(&s);
    got.sort();
    assert_eq!(got, vec![(1, 2, 1), (3, 1, 1)]);
}

#[test]
fn domain_errors() {
    assert_eq!(count_n(2, 4, 7, &p(7, 3)), Err(OracleError::NotCoprime));
    assert_eq!(count_n(1, 4, 7, &p(7, 3)), Err(OracleError::Degenerate));
    assert!(matches!(count_n(2, 3, 7, &BigUint::from(5u32)), Err(OracleError::CapTooSmall(_))));
}

#[test]
fn pillai() {
    let s = pillai_solutions(13, 3, 10, &p(13, 10)).unwrap();
    assert_eq!(s.iter().map(|s| (s.x, s.y)).collect::<Vec<_>>(), vec![(1, 1), (3, 7)]);
    let s = pillai_solutions(7, 2, 5, &p(7, 10)).unwrap();
    assert!(s.iter().any(|s| (s.x, s.y) == (1, 1)));
    assert!(pillai_solutions(3, 2, 1000, &BigUint::from(500u32)).unwrap().is_empty());
}

#[test]
fn mnq() {
    let s = mnq_solutions(7, 1, 13, 100, 20).unwrap();
    let three = s.iter().find(|s| s.x == 3).unwrap();
    assert_eq!((three.y1, three.y2, three.big_n), (3, 1, Some(2)));
    assert!(three.prop9.as_ref().unwrap_err().contains("even"));
    let s = mnq_solutions(3, 1, 3, 100, 20).unwrap();
    let two = s.iter().find(|s| s.x == 2).unwrap();
    assert_eq!((two.y1, two.y2, two.big_n), (2, 1, Some(2)));
    // Every solution found has m ≡ n (mod e_q(X)).
    for (m, n, q) in [(3, 1, 3), (3, 1, 5), (4, 2, 3), (5, 3, 3), (7, 1, 13), (7, 3, 5), (8, 4, 3)] {
        for s in mnq_solutions(m, n, q, 2000, 40).unwrap() {
            assert!(s.big_n.is_some(), "m={m} n={n} q={q} X={}", s.x);
        }
    }
}

#[test]
fn exceptional_set() {
    let rows = verify_exceptional_set(100, &[2, 4, 5], &p(2, 60)).unwrap();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert!(r.ok, "{}", r.to_record());
    }
    let r = rows.iter().find(|r| r.triple == (2, 89, 91)).unwrap();
    assert!(xyz(&r.solutions).contains(&(13, 1, 2)));
}

#[test]
fn congruence_battery_on_the_13_double() {
    let (_, s) = count_n(3, 10, 13, &p(13, 10)).unwrap();
    let checks = system_cong_checks(3, 10, 13, &s[0], &s[1]);
    for c in &checks {
        assert_ne!(c.holds, Some(false), "{}", c.to_record());
    }
    let e = checks.iter().find(|c| c.name == "E|Delta").unwrap();
    assert_eq!(e.detail, "E=3 Delta=6");
    // 3^6 = 729 = 56·13 + 1
    assert_eq!(729 % 13, 1);
    let pil = pillai_solutions(13, 3, 10, &p(13, 10)).unwrap();
    let (u, v) = (pillai_as_abc(&pil[0]), pillai_as_abc(&pil[1]));
    assert!(system_cong_checks(3, 10, 13, &u, &v).iter().all(|c| c.holds != Some(false)));
}

#[test]
fn congruences_hold_on_every_small_double() {
    let mut doubles = 0;
    for a in 2..=30u64 {
        for b in 2..=30u64 {
            for c in 3..=30u64 {
                let Ok((n, s)) = count_n(a, b, c, &p(2, 40)) else { continue };
                if n < 2 {
                    continue;
                }
                doubles += 1;
                for i in 0..n {
                    for j in i + 1..n {
                        for ch in system_cong_checks(a, b, c, &s[i], &s[j]) {
                            assert_ne!(ch.holds, Some(false), "({a},{b},{c}) {}", ch.to_record());
                        }
                    }
                }
            }
        }
    }
    assert!(doubles > 0);
}

#[test]
fn doubling_the_cap_is_stable() {
    for (a, b, c) in [(2, 3, 5), (3, 5, 2), (2, 7, 3), (5, 7, 2), (3, 10, 13), (2, 5, 29), (7, 11, 2)] {
        let lo = count_n(a, b, c, &p(2, 30)).unwrap().0;
        let hi = count_n(a, b, c, &p(2, 31)).unwrap().0;
        assert_eq!(lo, hi, "({a},{b},{c})");
    }
}
