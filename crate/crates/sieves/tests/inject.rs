use std::time::Instant;

use xdio_sieves::inject::run_injection;

#[test]
fn every_stage_detects_the_plant() {
    let t0 = Instant::now();
    let rows = run_injection().unwrap();
    for r in &rows {
        println!("{}", r.to_record());
    }
    println!("in {:?}", t0.elapsed());
    let stages: Vec<_> = rows.iter().map(|r| r.stage).collect();
    assert_eq!(stages, ["step1", "step2", "step3", "zgap", "zfloor", "zsmall", "final", "theorem3"]);
    assert!(rows.iter().all(|r| r.detected));
}
