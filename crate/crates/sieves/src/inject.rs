//! Planted solutions: each stage must report a genuine solution that enters it.
//!
//! The plant is `3 + 10 = 13`, `3^7 + 10 = 13^3` under `c = 13`, `E = 3`, fed
//! to every stage in the shape that stage consumes.

use num_bigint::BigUint;

use crate::final_sieve::{final_sieve, FinalConfig};
use crate::scans::{zfloor_scan, zgap_scan, zsmall_scan, ZfloorConfig, ZgapConfig};
use crate::steps::{step1, step2, step3, List1Entry, List2Entry, Step1Config, Step3Params};
use crate::theorem3::{theorem3_pipeline, Theorem3Config};
use crate::{Control, Progression, SieveError};

pub const PLANT_C: u64 = 13;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectRow {
    pub stage: &'static str,
    pub planted: String,
    pub detected: bool,
}

impl InjectRow {
    pub fn to_record(&self) -> String {
        format!("inject stage={} planted=\"{}\" detected={}", self.stage, self.planted, self.detected)
    }
}

fn row(stage: &'static str, planted: impl Into<String>, detected: bool) -> InjectRow {
    InjectRow { stage, planted: planted.into(), detected }
}

/// Runs the plant through every stage it enters.
pub fn run_injection() -> Result<Vec<InjectRow>, SieveError> {
    let c = PLANT_C;
    let mut rows = Vec::new();
    let ctl = || Control::default();

    // 4·1·13 − 3 = 7² with n′ = 2, z = 3.
    let planted1 = List1Entry { z: 3, nprime: 2, t: 1 };
    let l1 = step1(&Step1Config::uniform(c, 3, 2), &mut ctl()).records();
    rows.push(row("step1", planted1.to_record(), l1.contains(&planted1)));

    let planted2 = List2Entry { a: 3u32.into(), b: 10u32.into(), x: 7, y: 1, z: 3, nprime: 2 };
    let l2 = step2(c, &[planted1], 3, &mut ctl()).records();
    rows.push(row("step2", planted2.to_record(), l2.contains(&planted2)));

    // First equation with x = y = 1 and Δ = 7 − 1 = 2·E.
    let seed = List2Entry { a: 3u32.into(), b: 10u32.into(), x: 1, y: 1, z: 1, nprime: 0 };
    let params = Step3Params::derive(c, 3)?;
    let s = step3(c, &[seed], &params, &mut ctl()).records();
    let hit = s.iter().any(|v| v.big_x == 7 && v.big_y == 1 && v.big_z == 3);
    rows.push(row("step3", "a=3 b=10 X=7 Y=1 Z=3", hit));

    let b3 = BigUint::from(3u32);
    let g = zgap_scan(&ZgapConfig { c, z_lo: 1, z_hi: 1, gap: 10, e_max: 3 }, &mut ctl())?;
    rows.push(row("zgap", "z=1 Z=3 b=3", g.items.iter().any(|(_, h)| h.big_z == 3 && h.b == b3)));

    let f = zfloor_scan(
        &ZfloorConfig { c, e_order: 3, z_lo: 1, z_hi: 1, ys: Progression::new(7, 7, 6), target_gap: 2 },
        &mut ctl(),
    )?;
    rows.push(row("zfloor", "z=1 Y=7 b=3", f.items.iter().any(|(_, h)| h.y == 7 && h.b == b3)));

    let sm = zsmall_scan(c, 1, Progression::new(7, 7, 6), &mut ctl())?;
    rows.push(row("zsmall", "a=10 b=3 Y=7 Z=3", sm.items.iter().any(|(_, h)| h.b == 3 && h.big_z == 3)));

    let mut fc = FinalConfig::new(c, 7, 1);
    fc.ys = Progression::new(7, 7, 6);
    fc.ts = Some(Progression::new(1, 1, 2));
    fc.zs = Some((1, 1));
    let fs = final_sieve(&fc, &mut ctl())?;
    rows.push(row("final", "Y=7 T=1 z=1 b=3", fs.items.iter().any(|(_, h)| h.b == b3 && h.big_z == 3)));

    let t3 = theorem3_pipeline(&Theorem3Config {
        r: 2,
        y_cap: Some(7),
        z_cap_ii: Some(40),
        z2: Some(1),
        final_ranges: Some((Progression::new(7, 7, 6), Progression::new(1, 1, 2), (1, 1))),
    })?;
    rows.push(row("theorem3", "r=2 Y=7 T=1 z=1", !t3.verified_empty() && !t3.survivors.is_empty()));
    Ok(rows)
}
