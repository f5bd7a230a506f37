use std::time::Instant;

use num_bigint::BigUint;
use xdio_sieves::c97::{component_table_matches, even_delta_check, max_v, C97Event};
use xdio_sieves::final_sieve::{final_sieve, FinalConfig};
use xdio_sieves::scans::{
    order_form_holds, zfloor_probe, zfloor_scan, zgap_probe, zgap_scan, zsmall_scan, ZfloorConfig, ZgapConfig,
};
use xdio_sieves::{Control, Partition, Progression, ScanOutcome};

fn counter(out: &[(&'static str, u64)], name: &str) -> u64 {
    out.iter().find(|(n, _)| *n == name).map(|p| p.1).unwrap()
}

#[test]
fn zgap_seven_desk_is_empty() {
    let t0 = Instant::now();
    let cfg = ZgapConfig { c: 7, z_lo: 5, z_hi: 30, gap: 10, e_max: 3 };
    let out = zgap_scan(&cfg, &mut Control::default()).unwrap();
    println!("zgap {:?} in {:?}", out.counters, t0.elapsed());
    assert!(out.complete);
    assert!(out.items.is_empty());
    // z = 5..30 with e ≤ 3: 2·(1 + 7 + 49 + 343) candidates per (z, Z).
    assert_eq!(counter(&out.counters, "triples"), 26 * 10 * 800);
}

#[test]
fn zfloor_seven_desk_is_empty() {
    let t0 = Instant::now();
    let cfg = ZfloorConfig { c: 7, e_order: 3, z_lo: 5, z_hi: 30, ys: Progression::y_classes(4906), target_gap: 11 };
    let out = zfloor_scan(&cfg, &mut Control::default()).unwrap();
    println!("zfloor {:?} in {:?}", out.counters, t0.elapsed());
    assert!(out.items.is_empty());
    // Hensel roots are ≢ 1 mod 7, so none of them is pruned by the order form.
    assert_eq!(counter(&out.counters, "order_pruned"), 0);
    assert_eq!(counter(&out.counters, "candidates"), 146744);
}

#[test]
fn order_form_rejects_wrong_orders() {
    // 2 has order 3 modulo 7; 3 is a primitive root and 6 has order 2.
    assert!(order_form_holds(7, 1, 0, 3, &BigUint::from(2u32)));
    assert!(!order_form_holds(7, 1, 0, 3, &BigUint::from(3u32)));
    assert!(!order_form_holds(7, 1, 0, 3, &BigUint::from(6u32)));
    // 18 has order 3 modulo 49, 46 has order 21 = 3·7.
    assert!(order_form_holds(7, 2, 0, 3, &BigUint::from(18u32)));
    assert!(!order_form_holds(7, 2, 0, 3, &BigUint::from(46u32)));
    assert!(order_form_holds(7, 2, 1, 3, &BigUint::from(46u32)));
}

#[test]
fn scan_hits_recheck() {
    // c = 13 carries 3 + 10 = 13, 3^7 + 10 = 13^3.
    let gap = zgap_scan(&ZgapConfig { c: 13, z_lo: 1, z_hi: 1, gap: 10, e_max: 0 }, &mut Control::default()).unwrap();
    let hits = gap.records();
    assert!(!hits.is_empty());
    for h in &hits {
        assert!(zgap_probe(13, h.z, h.big_z, &h.b) == BigUint::from(0u32));
    }
    let floor = zfloor_scan(
        &ZfloorConfig { c: 13, e_order: 3, z_lo: 1, z_hi: 1, ys: Progression::new(7, 7, 6), target_gap: 2 },
        &mut Control::default(),
    )
    .unwrap()
    .records();
    assert!(floor.iter().any(|h| h.b == BigUint::from(3u32)));
    for h in &floor {
        assert!(order_form_holds(13, h.z, h.e, 3, &h.b));
        assert!(zfloor_probe(13, h.z, h.y, 2, &h.b) == BigUint::from(0u32));
    }
}

#[test]
fn zsmall_seven_is_empty() {
    let out = zsmall_scan(7, 4, Progression::y_classes(400), &mut Control::default()).unwrap();
    assert!(out.items.is_empty());
    let planted = zsmall_scan(13, 1, Progression::new(7, 7, 6), &mut Control::default()).unwrap().records();
    assert_eq!(planted.len(), 1);
    assert_eq!((planted[0].a, planted[0].b, planted[0].big_z), (10, 3, 3));
}

#[test]
fn zgap_partitions_agree() {
    let cfg = ZgapConfig { c: 13, z_lo: 1, z_hi: 4, gap: 10, e_max: 1 };
    let single = zgap_scan(&cfg, &mut Control::default()).unwrap().records();
    let parts: Vec<_> =
        (0..3).map(|i| zgap_scan(&cfg, &mut Control::partitioned(Partition::new(i, 3).unwrap())).unwrap()).collect();
    assert_eq!(ScanOutcome::merge(parts).records(), single);
}

#[test]
fn c97_desk_range() {
    let t0 = Instant::now();
    assert!(component_table_matches().iter().all(|(_, _, ok)| *ok));
    let out = even_delta_check(2000, &mut Control::default());
    println!("c97 {:?} in {:?}", out.counters, t0.elapsed());
    // The only exception is Z = 10, where min{a, b} ≤ 97^5/√2 is forced.
    assert_eq!(out.records(), vec![C97Event::SmallComponent { z: 10 }]);
    assert_eq!(counter(&out.counters, "min_ge_c5"), 1990);
    assert!(max_v(&out.counters, &[]) <= 3);
}

#[test]
fn final_sieve_desk_slice() {
    let t0 = Instant::now();
    let out = final_sieve(&FinalConfig::new(7, 2596, 1500), &mut Control::default()).unwrap();
    println!("final {:?} in {:?}", out.counters, t0.elapsed());
    assert!(out.complete);
    assert!(out.items.is_empty());
    // Regression counters, matched by an independent multiprecision transcription.
    assert_eq!(counter(&out.counters, "y_values"), 433);
    assert_eq!(counter(&out.counters, "y_early_exit"), 148);
    assert_eq!(counter(&out.counters, "pairs"), 470_316);
    assert_eq!(counter(&out.counters, "z_triples"), 244_737_776);
}

#[test]
fn final_sieve_small_y_exits() {
    let out = final_sieve(&FinalConfig::new(7, 400, 1500), &mut Control::default()).unwrap();
    assert!(out.items.is_empty());
    assert_eq!(counter(&out.counters, "y_early_exit"), 67);
    assert_eq!(counter(&out.counters, "t_values"), 0);
}
