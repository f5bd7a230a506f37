//! Reference data consumed as lookup tables. Every row carries a citation
//! string and is re-verified when first loaded; corrupt data panics rather
//! than propagating.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};
use thiserror::Error;
use xdio_arith::is_prime_u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("no table for q = {0}")]
    UnknownQ(u64),
    #[error("r = {0} exceeds the tabulated range r <= 3912")]
    RangeTooLarge(u32),
    #[error("r = {0} is not in the family list")]
    NotInFamily(u32),
}

/// A solution `(𝒳, 𝒴, k, n)` of `𝒳² − q^k = 𝒴ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LebesgueNagellEntry {
    pub q: u64,
    pub x: u64,
    pub y: i64,
    pub k: u32,
    pub n: u32,
    pub citation: &'static str,
}

impl LebesgueNagellEntry {
    pub fn holds(&self) -> bool {
        let lhs = BigInt::from(self.x).pow(2u32) - BigInt::from(self.q).pow(self.k);
        lhs == BigInt::from(self.y).pow(self.n)
    }

    pub fn to_record(&self) -> String {
        format!(
            "lebesgue q={} X={} Y={} k={} n={} citation=\"{}\"",
            self.q, self.x, self.y, self.k, self.n, self.citation
        )
    }
}

const LN_Q7: &str = "Lebesgue-Nagell classification for q = 7, X^2 - 7^k = Y^n";
const LN_Q97: &str = "Lebesgue-Nagell classification for q = 97, X^2 - 97^k = Y^n";

const LN_RAW: [(u64, u64, i64, u32, u32, &str); 7] = [
    (7, 7792, 393, 5, 3, LN_Q7),
    (7, 10, -3, 3, 5, LN_Q7),
    (7, 76, 15, 4, 3, LN_Q7),
    (7, 9, 2, 2, 5, LN_Q7),
    (97, 175784, 3135, 4, 3, LN_Q97),
    (97, 15, 2, 1, 7, LN_Q97),
    (97, 77, 18, 1, 3, LN_Q97),
];

/// All entries, verified on first access.
pub fn lebesgue_nagell() -> &'static [LebesgueNagellEntry] {
    static T: OnceLock<Vec<LebesgueNagellEntry>> = OnceLock::new();
    T.get_or_init(|| {
        LN_RAW
            .iter()
            .map(|&(q, x, y, k, n, citation)| {
                let e = LebesgueNagellEntry { q, x, y, k, n, citation };
                assert!(e.holds(), "corrupt Lebesgue-Nagell row {e:?}");
                e
            })
            .collect()
    })
}

/// Sign constraint on `𝒴` for [`lebesgue_lookup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YSign {
    Any,
    Negative,
    Positive,
}

/// Filters on a lookup; `None` leaves a field unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LookupFilter {
    pub y_sign: YSign,
    pub k_parity: Option<u32>,
    pub n: Option<u32>,
}

impl Default for LookupFilter {
    fn default() -> Self {
        Self { y_sign: YSign::Any, k_parity: None, n: None }
    }
}

pub fn lebesgue_lookup(q: u64, filter: LookupFilter) -> Result<Vec<&'static LebesgueNagellEntry>, TableError> {
    if q != 7 && q != 97 {
        return Err(TableError::UnknownQ(q));
    }
    Ok(lebesgue_nagell()
        .iter()
        .filter(|e| e.q == q)
        .filter(|e| match filter.y_sign {
            YSign::Any => true,
            YSign::Negative => e.y < 0,
            YSign::Positive => e.y > 0,
        })
        .filter(|e| filter.k_parity.is_none_or(|p| e.k % 2 == p))
        .filter(|e| filter.n.is_none_or(|n| e.n == n))
        .collect())
}

/// Every `r ≤ 3912` for which `3·2^r + 1` is prime.
pub const FAMILY_R: [u32; 24] = [
    1, 2, 5, 6, 8, 12, 18, 30, 36, 41, 66, 189, 201, 209, 276, 353, 408, 438, 534, 2208, 2816, 3168, 3189, 3912,
];
pub const FAMILY_R_MAX: u32 = 3912;
const FAMILY_CITATION: &str = "primes of the form 3*2^r + 1 with r <= 3912";

/// `c = 3·2^r + 1`.
pub fn family_c(r: u32) -> BigUint {
    (BigUint::from(3u32) << r as usize) + 1u32
}

/// Deterministic primality of `3·2^r + 1`. For `r ≥ 2` this is Proth's theorem:
/// the number is prime iff some `a` gives `a^{(c−1)/2} ≡ −1 (mod c)`, and any
/// `a` that is a quadratic non-residue does. A residue `a ≢ ±1` on the half-power
/// proves compositeness outright.
pub fn family_is_prime(r: u32) -> bool {
    if r < 62 {
        return is_prime_u64(3 * (1u64 << r) + 1);
    }
    let c = family_c(r);
    let minus_one = &c - 1u32;
    let half = &minus_one >> 1usize;
    for a in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let v = BigUint::from(a).modpow(&half, &c);
        if v == minus_one {
            return true;
        }
        if !v.is_one() {
            return false;
        }
    }
    // Every small base was a residue; fall back to the probabilistic test,
    // which is never reached for the tabulated exponents.
    xdio_arith::is_probable_prime(&c, 40)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPrime {
    pub r: u32,
    pub c: BigUint,
    pub citation: &'static str,
}

impl FamilyPrime {
    pub fn c_u64(&self) -> Option<u64> {
        u64::try_from(&self.c).ok()
    }

    pub fn to_record(&self) -> String {
        let digits = self.c.to_string();
        let shown = if digits.len() > 24 { format!("{}...({} digits)", &digits[..12], digits.len()) } else { digits };
        format!("family r={} c={} prime=verified citation=\"{}\"", self.r, shown, self.citation)
    }
}

/// Full family list, each prime checked on first access.
pub fn family() -> &'static [FamilyPrime] {
    static T: OnceLock<Vec<FamilyPrime>> = OnceLock::new();
    T.get_or_init(|| {
        FAMILY_R
            .iter()
            .map(|&r| {
                assert!(family_is_prime(r), "3*2^{r}+1 listed as prime but is not");
                FamilyPrime { r, c: family_c(r), citation: FAMILY_CITATION }
            })
            .collect()
    })
}

pub fn family_primes(r_max: u32) -> Result<Vec<&'static FamilyPrime>, TableError> {
    if r_max > FAMILY_R_MAX {
        return Err(TableError::RangeTooLarge(r_max));
    }
    Ok(family().iter().filter(|f| f.r <= r_max).collect())
}

/// Row of the `max{x,y} = 2` parameter table for `r ∈ {6, 8}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Row {
    pub r: u32,
    pub c: u64,
    pub nprime: u32,
    pub z_u3: u32,
    pub z_of_nprime: u64,
    pub citation: &'static str,
}

pub const TABLE1: [Table1Row; 2] = [
    Table1Row { r: 6, c: 193, nprime: 1, z_u3: 3, z_of_nprime: 337210, citation: "Table 1, r = 6" },
    Table1Row { r: 8, c: 769, nprime: 1, z_u3: 3, z_of_nprime: 1343597, citation: "Table 1, r = 8" },
];

/// Row of the `x = X = 1` parameter table: `Y_u1`, `Y_u2` and the lower bound `z₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table2Row {
    pub r: u32,
    pub y_u1: u64,
    pub y_u2: u64,
    pub z2: u32,
    pub citation: &'static str,
}

macro_rules! t2 {
    ($($r:literal $a:literal $b:literal $z:literal),* $(,)?) => {
        [$(Table2Row { r: $r, y_u1: $a, y_u2: $b, z2: $z, citation: concat!("Table 2, r = ", stringify!($r)) }),*]
    };
}

pub const TABLE2: [Table2Row; 21] = t2![
    6 13264 2578 300, 8 16744 2578 650, 12 23728 2578 100, 18 34210 2584 50, 30 55168 2590 50,
    36 65650 2590 40, 41 74386 2584 40, 66 118054 2590 40, 189 332902 2578 15, 201 353860 2578 15,
    209 367834 2578 15, 276 484846 2578 10, 353 619366 2572 10, 408 715432 2572 10, 438 767836 2602 8,
    534 935524 2578 5, 2208 3859552 2578 1, 2816 4921564 2578 1, 3168 5536408 2578 1, 3189 5573092 2572 1,
    3912 6835978 2572 1,
];

pub fn table1_row(r: u32) -> Option<&'static Table1Row> {
    TABLE1.iter().find(|t| t.r == r)
}

pub fn table2_row(r: u32) -> Option<&'static Table2Row> {
    TABLE2.iter().find(|t| t.r == r)
}

/// All records for a dump, in a fixed order.
pub fn dump() -> Vec<String> {
    let mut out: Vec<String> = lebesgue_nagell().iter().map(LebesgueNagellEntry::to_record).collect();
    out.extend(family().iter().map(FamilyPrime::to_record));
    out.extend(TABLE1.iter().map(|t| {
        format!(
            "table1 r={} c={} nprime={} z_u3={} z_of_nprime={} citation=\"{}\"",
            t.r, t.c, t.nprime, t.z_u3, t.z_of_nprime, t.citation
        )
    }));
    out.extend(TABLE2.iter().map(|t| {
        format!("table2 r={} Y_u1={} Y_u2={} z2={} citation=\"{}\"", t.r, t.y_u1, t.y_u2, t.z2, t.citation)
    }));
    out
}

/// Whether `r` indexes a listed family prime.
pub fn in_family(r: u32) -> bool {
    FAMILY_R.contains(&r)
}
