//! One function per subcommand, each filling a [`Report`].

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use xdio_arith::is_prime_u64;
use xdio_bounds::constants::{c7_reports, k1, k2, k3, nprime_max, y_u1, y_u2, z_of_nprime, z_u3, MinBase};
use xdio_bounds::{BoundReport, MatchStatus};
use xdio_oracle::{count_n, pillai_solutions, verify_exceptional_set};
use xdio_polyeuclid::{bezout_witness, leading_coeff_survey};
use xdio_sieves::c97::{component_table_matches, even_delta_check, max_v, primitive_representations};
use xdio_sieves::final_sieve::{final_sieve, FinalConfig};
use xdio_sieves::inject::run_injection;
use xdio_sieves::scans::{zfloor_scan, zgap_scan, ZfloorConfig, ZgapConfig};
use xdio_sieves::steps::{step1, step2, step3, Step1Config, Step3Params};
use xdio_sieves::theorem3::{theorem3_pipeline, Theorem3Config};
use xdio_sieves::{Control, Partition, Progression};
use xdio_tables::{family, family_c, in_family, lebesgue_nagell, table1_row, table2_row};

use crate::config::{parse_range, RunConfig, Scale};
use crate::driver::{drive, DriveOpts, ScanRun};
use crate::report::{Report, Verdict};
use crate::CliError;

/// Published `|list1|`, `|list2|` for `c = 7`, case (i).
pub const PUBLISHED_C7_LISTS: (usize, usize) = (466, 752);

/// Every command name the front end accepts.
pub const COMMANDS: [&str; 14] = [
    "bounds",
    "sieve step123",
    "sieve zgap",
    "sieve zfloor",
    "sieve final",
    "sieve c97",
    "sieve theorem3",
    "sieve inject",
    "oracle count",
    "oracle pillai",
    "oracle exceptional",
    "euclid witness",
    "euclid survey",
    "tables dump",
];

/// The runtime estimate printed before a full-scale run.
pub fn full_scale_warning(command: &str) -> Option<&'static str> {
    match command {
        "sieve step123" | "sieve zgap" | "sieve zfloor" | "sieve final" => {
            Some("full-scale c = 7 runs took about 28 hours in the original environment")
        }
        "sieve c97" => Some("the full c = 97 scan finished within 55 hours in the original environment"),
        "sieve theorem3" => Some("the full family runs took about 52 hours in the original environment"),
        _ => None,
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let started = std::time::Instant::now();
    let mut rep = Report::new(cfg);
    match cfg.command.as_str() {
        "bounds" => cmd_bounds(cfg, &mut rep)?,
        "sieve step123" => sieve_step123(cfg, &mut rep)?,
        "sieve zgap" => sieve_zgap(cfg, &mut rep)?,
        "sieve zfloor" => sieve_zfloor(cfg, &mut rep)?,
        "sieve final" => sieve_final(cfg, &mut rep)?,
        "sieve c97" => sieve_c97(cfg, &mut rep)?,
        "sieve theorem3" => sieve_theorem3(cfg, &mut rep)?,
        "sieve inject" => sieve_inject(&mut rep)?,
        "oracle count" | "oracle pillai" => oracle_listing(cfg, &mut rep)?,
        "oracle exceptional" => oracle_exceptional(cfg, &mut rep)?,
        "euclid witness" => euclid_witness(cfg, &mut rep)?,
        "euclid survey" => euclid_survey(cfg, &mut rep)?,
        "tables dump" => tables_dump(&mut rep),
        other => return Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
    rep.wall_ms = started.elapsed().as_millis();
    Ok(rep)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn prime_c(c: u64) -> Result<u64, CliError> {
    if c < 5 || !is_prime_u64(c) {
        return Err(CliError::Usage(format!("c = {c} is not a prime >= 5")));
    }
    Ok(c)
}

/// `b^e` or a plain integer.
pub fn parse_cap(s: &str) -> Result<BigUint, CliError> {
    let bad = || CliError::Usage(format!("cap {s:?} is neither an integer nor base^exp"));
    match s.split_once('^') {
        Some((b, e)) => {
            let b: BigUint = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            Ok(b.pow(e))
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn bound_rows(rep: &mut Report, rows: &[BoundReport]) {
    let mut ok = true;
    for r in rows {
        rep.row(r.to_record());
        match r.status() {
            MatchStatus::Mismatch(d) => {
                ok = false;
                rep.note(format!("{} off by {d}", r.name));
            }
            MatchStatus::Window(d) => rep.note(format!("{} within the +-2 window ({d})", r.name)),
            _ => {}
        }
    }
    rep.verdict = Verdict::matched(ok);
}

fn cmd_bounds(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let rows = match (o.c, o.r) {
        (Some(7), None) => c7_reports()?,
        (Some(97), None) => {
            let mut v = Vec::new();
            for e in xdio_bounds::c97::ORDERS {
                v.push(xdio_bounds::c97::t1_report(e)?);
            }
            v.extend(xdio_bounds::c97::z_caps()?);
            v
        }
        (Some(c), None) => {
            let c = prime_c(c)?;
            let e = o.e_order.unwrap_or(3);
            let lo = k1(c, e, MinBase::BelowC)?;
            let hi = k1(c, e, MinBase::AboveC)?;
            let kk2 = k2(e, "1.11", 13);
            let k3s = vec![
                k3(c, &lo.value, 6, "m<c,z<=12"),
                k3(c, &hi.value, 12, "m>c,z<=12"),
                k3(c, &kk2.value, 1, "z>=13"),
            ];
            let mut v = vec![lo, hi, kk2];
            v.extend(k3s);
            v.push(y_u1(c));
            v
        }
        (None, Some(r)) => family_bounds(r)?,
        _ => return Err(CliError::Usage("give exactly one of --c and --r".into())),
    };
    bound_rows(rep, &rows);
    Ok(())
}

fn family_bounds(r: u32) -> Result<Vec<BoundReport>, CliError> {
    if !in_family(r) {
        return Err(CliError::Usage(format!("r = {r} is not in the family list")));
    }
    let c = family_c(r)
        .to_u64()
        .ok_or_else(|| CliError::Unsupported(format!("3*2^{r}+1 does not fit the word-sized bound evaluators")))?;
    let mut out = Vec::new();
    let mut yu1 = y_u1(c);
    let cap = yu1.value.to_u64().expect("small");
    let mut yu2 = y_u2(c, 200, cap, 3)?;
    if let Some(t) = table2_row(r) {
        yu1 = yu1.target(t.y_u1);
        yu2 = yu2.target(t.y_u2);
    }
    out.push(yu1);
    out.push(yu2);
    if let Some(t) = table1_row(r) {
        out.push(BoundReport::new("z_u3", z_u3(c, t.nprime)).input("n'", t.nprime).target(t.z_u3));
        out.push(z_of_nprime(c, t.nprime)?.target(t.z_of_nprime));
    }
    Ok(out)
}

fn drive_opts(cfg: &RunConfig, stage: &str) -> Result<DriveOpts, CliError> {
    let o = &cfg.opts;
    let partition = match &o.partition {
        Some(p) => p.parse::<Partition>()?,
        None => Partition::SINGLE,
    };
    let chunk = o.checkpoint_every.or((o.checkpoint.is_some() || o.stop_after.is_some()).then_some(1));
    Ok(DriveOpts {
        stage: stage.into(),
        hash: cfg.hash(),
        partition,
        threads: o.threads.unwrap_or(1),
        chunk,
        checkpoint: o.checkpoint.clone(),
        resume: o.resume,
        stop_after: o.stop_after,
    })
}

/// Counter row, findings and verdict for one driven scan.
fn scan_result(rep: &mut Report, stage: &str, run: &ScanRun) {
    rep.row(format!("stage={stage} complete={} cursor={} {}", run.complete, run.cursor, run.counter_line()));
    rep.findings.extend(run.records.iter().map(|(_, r)| r.clone()));
    if let Some(c) = run.resumed_from {
        rep.note(format!("{stage} resumed from outer index {c}"));
    }
    rep.verdict = if !run.complete {
        rep.note(format!("{stage} stopped at outer index {}; rerun with --resume", run.cursor));
        Verdict::Incomplete
    } else if run.records.is_empty() {
        Verdict::VerifiedEmpty
    } else {
        Verdict::SurvivorsFound
    };
}

fn z_range(cfg: &RunConfig, desk: (u64, u64), full: (u64, u64)) -> Result<(u32, u32), CliError> {
    let (lo, hi) = match &cfg.opts.z {
        Some(s) => parse_range(s)?,
        None => match cfg.opts.scale() {
            Scale::Desk => desk,
            Scale::Full => full,
        },
    };
    let fit = |v: u64| u32::try_from(v).map_err(|_| CliError::Usage(format!("z = {v} is out of range")));
    Ok((fit(lo)?, fit(hi)?))
}

fn sieve_step123(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let c = prime_c(o.c.unwrap_or(7))?;
    let case = o.case.as_deref().unwrap_or("i");
    let params = Step3Params::derive(c, 3)?;
    let delta_max = params.k3_small.clone().max(params.k3_large.clone()).max(params.k3_high.clone());
    let n_max = nprime_max(c, 3, &delta_max);
    let z_cap = match &o.z {
        Some(s) => Some(parse_range(s)?.1 as u32),
        None => None,
    };
    let (step1_cfg, x_l) = match case {
        "i" => (Step1Config::uniform(c, z_cap.unwrap_or_else(|| z_u3(c, n_max)), n_max), 3),
        "ii" => {
            let desk = (o.scale() == Scale::Desk).then_some(400u32);
            let mut caps = Vec::new();
            for n in 0..=n_max {
                let full = z_of_nprime(c, n)?.value.to_u32().ok_or_else(|| CliError::Unsupported("z(n') too large".into()))?;
                caps.push(z_cap.or(desk).map_or(full, |d| d.min(full)));
            }
            (Step1Config { c, z_u: caps }, 2)
        }
        other => return Err(CliError::Usage(format!("--case must be i or ii, not {other:?}"))),
    };
    rep.row(format!("stage=setup c={c} case={case} n'_max={n_max} z_u={:?} x_l={x_l}", step1_cfg.z_u));
    let l1 = step1(&step1_cfg, &mut Control::default()).records();
    let l2 = step2(c, &l1, x_l, &mut Control::default()).records();
    let published = (c == 7 && case == "i" && o.z.is_none()).then_some(PUBLISHED_C7_LISTS);
    for (name, got, want) in [("list1", l1.len(), published.map(|p| p.0)), ("list2", l2.len(), published.map(|p| p.1))] {
        let status = match want {
            Some(w) if w == got => "matched",
            Some(_) => "mismatch-warning",
            None => "no-target",
        };
        let w = want.map_or("-".to_string(), |w| w.to_string());
        rep.row(format!("stage={name} size={got} published={w} status={status}"));
        if status == "mismatch-warning" {
            rep.note(format!("|{name}| = {got} differs from the published {w}"));
        }
    }
    let run = drive(&drive_opts(cfg, "step3")?, |ctl| Ok(step3(c, &l2, &params, ctl)), |s| s.to_record())?;
    scan_result(rep, "step3", &run);
    Ok(())
}

fn sieve_zgap(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let c = prime_c(cfg.opts.c.unwrap_or(7))?;
    let (z_lo, z_hi) = z_range(cfg, (5, 30), (5, 199))?;
    let zc = ZgapConfig { c, z_lo, z_hi, gap: cfg.opts.gap.unwrap_or(10), e_max: 3 };
    rep.row(format!("stage=setup c={c} z={z_lo}..{z_hi} gap={} e_max=3", zc.gap));
    let run = drive(&drive_opts(cfg, "zgap")?, |ctl| zgap_scan(&zc, ctl), |h| h.to_record())?;
    scan_result(rep, "zgap", &run);
    Ok(())
}

fn sieve_zfloor(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let c = prime_c(cfg.opts.c.unwrap_or(7))?;
    let (z_lo, z_hi) = z_range(cfg, (5, 30), (5, 199))?;
    let y_u = match cfg.opts.y_max {
        Some(y) => y,
        None if c == 7 => 4906,
        None => y_u1(c).value.to_u64().expect("small"),
    };
    let zc = ZfloorConfig {
        c,
        e_order: 3,
        z_lo,
        z_hi,
        ys: Progression::y_classes(y_u),
        target_gap: cfg.opts.gap.unwrap_or(11),
    };
    rep.row(format!("stage=setup c={c} z={z_lo}..{z_hi} Y<={y_u} target_gap={}", zc.target_gap));
    let run = drive(&drive_opts(cfg, "zfloor")?, |ctl| zfloor_scan(&zc, ctl), |h| h.to_record())?;
    scan_result(rep, "zfloor", &run);
    Ok(())
}

fn sieve_final(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let c = prime_c(o.c.unwrap_or(7))?;
    let y_u = o.y_max.or((c == 7).then_some(2596)).ok_or_else(|| CliError::Usage("--y-max is required for c != 7".into()))?;
    let z2 = o.z2.or((c == 7).then_some(1500)).ok_or_else(|| CliError::Usage("--z2 is required for c != 7".into()))?;
    let mut fc = FinalConfig::new(c, y_u, z2);
    if let Some(s) = &o.z {
        let (lo, hi) = parse_range(s)?;
        fc.zs = Some((lo as u32, hi as u32));
    }
    rep.row(format!("stage=setup c={c} Y<={y_u} z2={z2} z={}", o.z.as_deref().unwrap_or("z2..z_u")));
    let run = drive(&drive_opts(cfg, "final")?, |ctl| final_sieve(&fc, ctl), |h| h.to_record())?;
    scan_result(rep, "final", &run);
    Ok(())
}

fn sieve_c97(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let (lo, hi) = z_range(cfg, (1, 2000), (1, 239_999))?;
    if lo != 1 {
        return Err(CliError::Usage("the c = 97 scan starts at Z = 1".into()));
    }
    for (z, (a, b), ok) in component_table_matches() {
        rep.row(format!("stage=component-table Z={z} a={a} b={b} status={}", if ok { "matched" } else { "mismatched" }));
    }
    for z in [4u32, 5] {
        let reps: Vec<String> = primitive_representations(z).iter().map(|(a, b)| format!("({a},{b})")).collect();
        rep.row(format!("stage=small-Z Z={z} representations={}", reps.join(",")));
    }
    let run = drive(&drive_opts(cfg, "c97")?, |ctl| Ok(even_delta_check(hi as u64, ctl)), |e| e.to_record())?;
    let hist: Vec<(&'static str, u64)> = ["v0", "v1", "v2", "v3"]
        .into_iter()
        .map(|k| (k, run.counter(k).unwrap_or(0)))
        .collect();
    let large = run.records.iter().filter(|(_, r)| r.contains("large-V")).count();
    rep.row(format!("stage=V max_histogram={} large_events={large}", max_v(&hist, &[])));
    scan_result(rep, "c97", &run);
    if component_table_matches().iter().any(|(_, _, ok)| !ok) && rep.verdict == Verdict::VerifiedEmpty {
        rep.verdict = Verdict::SurvivorsFound;
    }
    Ok(())
}

fn sieve_theorem3(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let r = need(o.r, "r")?;
    let mut t3 = match o.scale() {
        Scale::Desk => Theorem3Config::desk(r),
        Scale::Full => Theorem3Config { r, y_cap: None, z_cap_ii: None, z2: None, final_ranges: None },
    };
    if o.y_max.is_some() {
        t3.y_cap = o.y_max;
    }
    t3.z2 = o.z2.or(t3.z2);
    let out = theorem3_pipeline(&t3)?;
    for row in &out.rows {
        rep.row(row.to_record());
    }
    rep.findings.extend(out.survivors.iter().cloned());
    rep.verdict = if out.verified_empty() { Verdict::VerifiedEmpty } else { Verdict::SurvivorsFound };
    Ok(())
}

fn sieve_inject(rep: &mut Report) -> Result<(), CliError> {
    let rows = run_injection()?;
    for r in &rows {
        rep.row(r.to_record());
    }
    rep.verdict = Verdict::matched(rows.iter().all(|r| r.detected));
    Ok(())
}

fn oracle_listing(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let (a, b, c) = (need(o.a, "a")?, need(o.b, "b")?, need(o.c, "c")?);
    let cap = parse_cap(o.cap.as_deref().unwrap_or("2^60"))?;
    let sols = if cfg.command == "oracle count" { count_n(a, b, c, &cap)?.1 } else { pillai_solutions(a, b, c, &cap)? };
    rep.row(format!("stage=oracle a={a} b={b} c={c} cap={cap} count={}", sols.len()));
    rep.findings.extend(sols.iter().map(|s| s.to_record(a, b, c)));
    rep.verdict = Verdict::matched(o.expect.is_none_or(|e| e == sols.len()));
    if let Some(e) = o.expect {
        rep.note(format!("expected {e} solutions, found {}", sols.len()));
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().map_err(|_| CliError::Usage(format!("bad list {s:?}"))))
        .collect()
}

fn oracle_exceptional(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let fam = parse_list(o.family.as_deref().unwrap_or("2,4,5"))?;
    let cap = parse_cap(o.cap.as_deref().unwrap_or("2^60"))?;
    let rows = verify_exceptional_set(o.max_entry.unwrap_or(100), &fam, &cap)?;
    for r in &rows {
        rep.row(r.to_record());
    }
    rep.verdict = Verdict::matched(rows.iter().all(|r| r.ok));
    Ok(())
}

fn euclid_witness(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let n = need(o.n, "n")?;
    let e = need(o.e_order, "E")?;
    let big_n: u32 = o
        .big_n
        .as_deref()
        .ok_or_else(|| CliError::Usage("--N is required".into()))?
        .parse()
        .map_err(|_| CliError::Usage("--N must be a positive integer".into()))?;
    let w = bezout_witness(n, e, big_n)?;
    let ok = w.identity_holds();
    rep.row(w.to_record());
    rep.row(format!("stage=identity holds={ok}"));
    rep.verdict = Verdict::matched(ok);
    Ok(())
}

fn euclid_survey(cfg: &RunConfig, rep: &mut Report) -> Result<(), CliError> {
    let o = &cfg.opts;
    let q = need(o.q, "q")?;
    let (y_lo, y_hi) = parse_range(o.y.as_deref().unwrap_or("1..3"))?;
    let (n_lo, n_hi) = parse_range(o.big_n.as_deref().unwrap_or("1..9"))?;
    let mut ok = true;
    for y in y_lo as u32..=y_hi as u32 {
        for row in leading_coeff_survey(y, q, n_lo as u32..=n_hi as u32)? {
            ok &= bezout_witness(y, q, row.big_n)?.identity_holds();
            rep.row(row.to_record());
        }
    }
    rep.verdict = Verdict::matched(ok);
    Ok(())
}

fn tables_dump(rep: &mut Report) {
    for l in xdio_tables::dump() {
        rep.row(l);
    }
    let ln_ok = lebesgue_nagell().iter().all(|e| e.holds());
    // `family()` re-checks every listed prime as it is built.
    let fam_ok = !family().is_empty();
    let r3 = !in_family(3);
    rep.row(format!("stage=integrity lebesgue_nagell={ln_ok} family_primes={fam_ok} r3_absent={r3}"));
    rep.verdict = Verdict::matched(ln_ok && fam_ok && r3);
}
