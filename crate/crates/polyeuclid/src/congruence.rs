use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use xdio_arith::{is_prime_u64, nu, pm_order};

use crate::{bezout_witness, build_ae, BezoutWitness, EuclidError, HypothesisViolation, IntPoly};

/// Which clause of the κ definition produced the modulus exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `E = 1`.
    EOne,
    /// Only condition (I) holds.
    ConditionI,
    /// Only condition (II) holds.
    ConditionII,
    /// Both hold; the larger exponent `2(y₂−e)` is used.
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub x: BigInt,
    pub q: u64,
    pub m: u32,
    pub n: u32,
    pub y1: u32,
    pub y2: u32,
    pub e_order: u32,
    pub big_n: u32,
    pub e: u32,
    pub kappa: u64,
    pub branch: Branch,
    pub witness: BezoutWitness,
}

impl CongruenceWitness {
    pub fn modulus(&self) -> BigUint {
        BigUint::from(self.q).pow(self.kappa as u32)
    }

    /// `q^{y₂}·lQ(X) + l·A_E(X) mod q^κ`; zero when the congruence holds.
    pub fn residue(&self) -> BigInt {
        let qy2 = BigInt::from(self.q).pow(self.y2);
        let ae = IntPoly(build_ae(self.e_order).to_integer_coeffs().unwrap()).eval(&self.x);
        let lhs = qy2 * self.witness.lq.eval(&self.x) + &self.witness.l * ae;
        lhs.mod_floor(&BigInt::from(self.modulus()))
    }

    pub fn to_record(&self) -> String {
        format!(
            "congruence X={} q={} m={} n={} y1={} y2={} E={} N={} e={} kappa={} branch={:?} {}",
            self.x,
            self.q,
            self.m,
            self.n,
            self.y1,
            self.y2,
            self.e_order,
            self.big_n,
            self.e,
            self.kappa,
            self.branch,
            self.witness.to_record()
        )
    }
}

fn hyp(v: HypothesisViolation) -> EuclidError {
    EuclidError::Hypothesis(v)
}

/// `I_{E,N}(X) = (X^{EN} − 1)/(X^E − 1)` by exact division (`N` when `X^E = 1`).
pub fn eval_i(x: &BigInt, e: u32, big_n: u32) -> BigInt {
    let xe = x.pow(e);
    if xe.is_one() {
        return BigInt::from(big_n);
    }
    let num = xe.pow(big_n) - 1u32;
    let den = &xe - 1u32;
    let (quo, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quo
}

/// Applies the congruence derivation to a concrete solution of
/// `X^m − X^n = q^{y₁} − q^{y₂}`, reporting each violated hypothesis separately.
pub fn derive_congruence(x: &BigInt, q: u64, m: u32, n: u32, y1: u32, y2: u32) -> Result<CongruenceWitness, EuclidError> {
    if m < 3 || m <= n || n == 0 {
        return Err(hyp(HypothesisViolation::Exponents));
    }
    if q < 3 || !is_prime_u64(q) {
        return Err(hyp(HypothesisViolation::Modulus));
    }
    if x <= &BigInt::one() || (x % q).is_zero() {
        return Err(hyp(HypothesisViolation::Base));
    }
    let qb = BigInt::from(q);
    if y1 <= y2 || x.pow(m) - x.pow(n) != qb.pow(y1) - qb.pow(y2) {
        return Err(hyp(HypothesisViolation::NotASolution));
    }
    let e_order = pm_order(q, x).map_err(|_| hyp(HypothesisViolation::Base))?.order as u32;
    if !(m - n).is_multiple_of(e_order) {
        return Err(hyp(HypothesisViolation::EUndefined(e_order as u64)));
    }
    let big_n = (m - n) / e_order;
    if big_n.is_multiple_of(2) {
        return Err(hyp(HypothesisViolation::NEven(big_n as u64)));
    }
    let e = nu(&BigUint::from(q), &BigInt::from(big_n)).expect("N > 0") as u32;
    if y2 <= e {
        return Err(hyp(HypothesisViolation::Y2NotAboveE { y2: y2 as u64, e: e as u64 }));
    }
    let d = (y2 - e) as u64;
    let (kappa, branch) = if e_order == 1 {
        (2 * d, Branch::EOne)
    } else {
        let ae = IntPoly(build_ae(e_order).to_integer_coeffs().unwrap()).eval(x);
        let cond1 = ae != qb.pow(y2 - e);
        let delta = u32::from(x.pow(m) > qb.pow(y1));
        // (II): ((y₂−e)(m−2E+2)+E−1)/(m+δ(E−1)) ≥ log 2/log q, i.e. q^num ≥ 2^den.
        let num = d as i64 * (m as i64 - 2 * e_order as i64 + 2) + e_order as i64 - 1;
        let den = m + delta * (e_order - 1);
        let cond2 = num >= 0 && qb.pow(num as u32) >= BigInt::from(2u32).pow(den);
        let k1 = (2 * d).min((m as u64 * d).div_ceil(e_order as u64 - 1));
        match (cond1, cond2) {
            (true, true) => (2 * d, Branch::Both),
            (true, false) => (k1, Branch::ConditionI),
            (false, true) => (2 * d, Branch::ConditionII),
            (false, false) => return Err(hyp(HypothesisViolation::NeitherCondition)),
        }
    };
    let witness = bezout_witness(n, e_order, big_n)?;
    let out = CongruenceWitness { x: x.clone(), q, m, n, y1, y2, e_order, big_n, e, kappa, branch, witness };
    if !out.residue().is_zero() {
        return Err(EuclidError::SelfCheckFailed);
    }
    Ok(out)
}

/// The K-relation `b² + b + 1 = K·c^{z−e}` with `gcd(K, c) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KRelation {
    pub k: BigInt,
    pub e: u32,
}

/// Splits off `K` from `b² + b + 1`, or rejects `b` as a survivor.
pub fn krelation_decompose(b: &BigInt, c: u64, z: u32, y: u64) -> Result<KRelation, EuclidError> {
    if y % 6 != 4 {
        return Err(EuclidError::Reject(format!("Y = {y} is not 4 mod 6")));
    }
    let order = pm_order(c, b).map_err(|err| EuclidError::Reject(err.to_string()))?;
    if order.order != 3 {
        return Err(EuclidError::Reject(format!("e_c(b) = {} is not 3", order.order)));
    }
    let e = nu(&BigUint::from(c), &BigInt::from((y - 1) / 3)).expect("N > 0") as u32;
    if z <= e {
        return Err(EuclidError::Reject(format!("z = {z} does not exceed e = {e}")));
    }
    let val = b * b + b + 1u32;
    let modulus = BigInt::from(c).pow(z - e);
    let (k, r) = val.div_rem(&modulus);
    if !r.is_zero() {
        return Err(EuclidError::Reject(format!("b^2+b+1 is not divisible by c^{}", z - e)));
    }
    if (&k % c).is_zero() {
        return Err(EuclidError::Reject("K is divisible by c".into()));
    }
    Ok(KRelation { k, e })
}

/// `(b²+b+1)·lP(b) + b(b−1)·I(b)·(2b+1)`, which must equal `3N` for every integer `b`.
pub fn witness_identity_value(b: &BigInt, big_n: u32) -> BigInt {
    let w = bezout_witness(1, 3, big_n).expect("E = 3 witness exists");
    let p = w.lp.eval(b);
    (b * b + b + 1u32) * p + b * (b - 1u32) * eval_i(b, 3, big_n) * (BigInt::from(2u32) * b + 1u32)
}

/// Checks `(2(Y−1)b + 2c^z + Y − 1)² = 4((Y−1)T + c^{2e})c^{2z−2e} − 3(Y−1)²` with `T`
/// defined by `c^z(2b+1) + (Y−1)(b²+b+1) = T·c^{2(z−e)}`, over exact rationals.
pub fn db_identity_holds(c: u64, b: &BigInt, z: u32, y: u64, e: u32) -> bool {
    let r = |v: BigInt| BigRational::from_integer(v);
    let cz = r(BigInt::from(c).pow(z));
    let ym1 = r(BigInt::from(y - 1));
    let b = r(b.clone());
    let c2e = r(BigInt::from(c).pow(2 * e));
    let scale = r(BigInt::from(c).pow(2 * z)) / &c2e;
    let two = r(2.into());
    let t = (&cz * (&two * &b + r(1.into())) + &ym1 * (&b * &b + &b + r(1.into()))) / &scale;
    let lhs = {
        let s = &two * &ym1 * &b + &two * &cz + &ym1;
        &s * &s
    };
    let rhs = r(4.into()) * (&ym1 * &t + &c2e) * &scale - r(3.into()) * &ym1 * &ym1;
    lhs == rhs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub y: u32,
    pub q: u32,
    pub big_n: u32,
    pub lead_sign: i8,
    pub l: BigInt,
    pub deg_lq: Option<usize>,
    pub lq: IntPoly,
}

impl SurveyRow {
    pub fn to_record(&self) -> String {
        format!(
            "survey y={} q={} N={} lead_sign={} l={} deg_lQ={} lQ={}",
            self.y,
            self.q,
            self.big_n,
            self.lead_sign,
            self.l,
            self.deg_lq.map_or("-".into(), |d| d.to_string()),
            self.lq
        )
    }
}

/// Witness data `(n, E, N) = (y, q, N)` for the exploratory reduction with `E = q`.
pub fn leading_coeff_survey(y: u32, q: u32, n_range: std::ops::RangeInclusive<u32>) -> Result<Vec<SurveyRow>, EuclidError> {
    n_range
        .map(|big_n| {
            let w = bezout_witness(y, q, big_n)?;
            let lead_sign = w.lq.lead().map_or(0, |c| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 });
            Ok(SurveyRow { y, q, big_n, lead_sign, l: w.l.clone(), deg_lq: w.lq.degree(), lq: w.lq })
        })
        .collect()
}
