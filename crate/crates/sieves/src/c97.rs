//! Checks for `c = 97` with `Δ` even, built on `β = 4 + 9i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use xdio_arith::gauss::{components_match_power_of_two, v_component};
use xdio_arith::{beta_components, is_square, v_of_z, BetaPowers};

use crate::{Control, Counters, ScanOutcome};

pub const C: u64 = 97;

/// `(Z, a(β,Z), b(β,Z))` for `Z = 1, 2, 3`, as listed in the source table.
pub const COMPONENT_TABLE: [(u64, u64, u64); 3] = [(1, 9, 4), (2, 65, 72), (3, 297, 908)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C97Event {
    /// `min{a, b} < 97^5` although `Z ≥ 10`.
    SmallComponent { z: u64 },
    /// A component fails the `2^{3Z−1}` residue identity.
    ResidueMismatch { z: u64 },
    /// `V(Z) > 3`, or saturated at the cap.
    LargeV { z: u64, v: u32, saturated: bool },
}

impl C97Event {
    pub fn to_record(&self) -> String {
        match self {
            C97Event::SmallComponent { z } => format!("c97 small-component Z={z}"),
            C97Event::ResidueMismatch { z } => format!("c97 residue-mismatch Z={z}"),
            C97Event::LargeV { z, v, saturated } => format!("c97 large-V Z={z} V={v} saturated={saturated}"),
        }
    }
}

/// Valuations are evaluated modulo `97^V_CAP`.
pub const V_CAP: u32 = 8;

/// Component table comparison for `Z ∈ {1, 2, 3}`.
pub fn component_table_matches() -> Vec<(u64, (BigInt, BigInt), bool)> {
    COMPONENT_TABLE
        .iter()
        .map(|&(z, a, b)| {
            let got = beta_components(z);
            let ok = got == (BigInt::from(a), BigInt::from(b));
            (z, got, ok)
        })
        .collect()
}

/// Scans `Z = 1..=z_max`. The outer index is `Z − 1`. Counters `v0 … v3`
/// histogram `V(Z)`; any larger value is reported as an event.
pub fn even_delta_check(z_max: u64, ctl: &mut Control) -> ScanOutcome<C97Event> {
    let floor = BigInt::from(C).pow(5);
    let mut items = Vec::new();
    let mut cnt = Counters::new(&["z_values", "v0", "v1", "v2", "v3", "min_ge_c5"]);
    let mut powers = BetaPowers::new();
    let mut produced = 0u64;
    let (next_cursor, complete) = ctl.run(z_max as usize, |i| {
        let z = i as u64 + 1;
        // BetaPowers is sequential; advance it to Z even for skipped indices.
        let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
        while produced < z {
            let (_, x, y) = powers.next().expect("infinite");
            produced += 1;
            (a, b) = (x, y);
        }
        cnt.add("z_values", 1);
        if !components_match_power_of_two(z, &a, &b) {
            items.push((i, C97Event::ResidueMismatch { z }));
        }
        if z >= 10 {
            if a.clone().min(b.clone()) >= floor {
                cnt.add("min_ge_c5", 1);
            } else {
                items.push((i, C97Event::SmallComponent { z }));
            }
        }
        let h = v_component(z, &a, &b);
        let v = v_of_z(z, &h, V_CAP);
        match v.value {
            0 => cnt.add("v0", 1),
            1 => cnt.add("v1", 1),
            2 => cnt.add("v2", 1),
            3 => cnt.add("v3", 1),
            _ => {}
        }
        if v.value > 3 || v.saturated {
            items.push((i, C97Event::LargeV { z, v: v.value, saturated: v.saturated }));
        }
    });
    ScanOutcome { items, next_cursor, complete, counters: cnt.into_vec() }
}

/// Largest `V` recorded in the histogram counters of a scan.
pub fn max_v(counters: &[(&'static str, u64)], events: &[C97Event]) -> u32 {
    let from_events = events
        .iter()
        .filter_map(|e| match e {
            C97Event::LargeV { v, .. } => Some(*v),
            _ => None,
        })
        .max();
    let from_hist = ["v0", "v1", "v2", "v3"]
        .iter()
        .enumerate()
        .filter(|(_, n)| counters.iter().any(|(k, c)| k == *n && *c > 0))
        .map(|(i, _)| i as u32)
        .max();
    from_events.into_iter().chain(from_hist).max().unwrap_or(0)
}

/// Brute force: every `(a, b)` with `a² + b² = 97^Z`, `a` odd, `b` even,
/// `gcd(a, b) = 1`, found by trying each even `b`.
pub fn primitive_representations(z: u32) -> Vec<(BigInt, BigInt)> {
    let n = BigInt::from(C).pow(z);
    let mut out = Vec::new();
    let mut b = BigInt::from(2);
    while &b * &b < n {
        let rest = &n - &b * &b;
        if is_square(&rest) {
            let a = rest.sqrt();
            if a.is_odd() && a.gcd(&b).is_one() {
                out.push((a, b.clone()));
            }
        }
        b += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        assert!(component_table_matches().iter().all(|(_, _, ok)| *ok));
    }

    #[test]
    fn brute_force_small_z() {
        assert_eq!(primitive_representations(4), vec![(BigInt::from(959), BigInt::from(9360))]);
        assert_eq!(primitive_representations(5), vec![(BigInt::from(46071), BigInt::from(80404))]);
    }

    #[test]
    fn short_scan() {
        // At Z = 10 the smaller component is at most 97^5/√2, so the growth
        // claim starts at Z = 11.
        let out = even_delta_check(60, &mut Control::default());
        assert_eq!(out.records(), vec![C97Event::SmallComponent { z: 10 }]);
        assert!(max_v(&out.counters, &[]) <= 3);
        let (a, _) = beta_components(10);
        assert_eq!(a, BigInt::from(4342266175u64));
    }
}
