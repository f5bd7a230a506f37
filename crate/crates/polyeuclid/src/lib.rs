//! Extended Euclid over ℚ[t] and the congruence it yields for
//! `X^m − X^n = q^{y₁} − q^{y₂}`.
//!
//! The central object is the Bézout witness `(lP, lQ, l)`: integer polynomials
//! with `A_E·lP + B_{n,E}·I_{E,N}·lQ = l`, `deg lQ < deg A_E`, and `l` the least
//! positive integer clearing all denominators. [`derive_congruence`] turns a
//! concrete solution into the congruence `q^{y₂}·lQ(X) + l·A_E(X) ≡ 0 (mod q^κ)`
//! and re-checks it by direct modular evaluation before returning.

mod congruence;
mod poly;

pub use congruence::{
    db_identity_holds, derive_congruence, eval_i, krelation_decompose, leading_coeff_survey, witness_identity_value,
    Branch, CongruenceWitness, KRelation, SurveyRow,
};
pub use poly::{IntPoly, RatPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EuclidError {
    #[error("both polynomials are zero")]
    BothZero,
    #[error("A_E and B·I share a nontrivial factor (gcd = {0})")]
    NotCoprime(String),
    #[error("parameters must be positive")]
    BadParameter,
    #[error("hypothesis violated: {0}")]
    Hypothesis(HypothesisViolation),
    #[error("the derived congruence failed its own re-check")]
    SelfCheckFailed,
    #[error("{0}")]
    Reject(String),
}

/// Individually reported failures of the hypotheses of the congruence derivation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisViolation {
    #[error("input is not a solution of X^m - X^n = q^y1 - q^y2")]
    NotASolution,
    #[error("need m >= 3 and m > n")]
    Exponents,
    #[error("need X > 1 and gcd(X, q) = 1")]
    Base,
    #[error("q must be an odd prime")]
    Modulus,
    #[error("m is not congruent to n modulo e_q(X) = {0}")]
    EUndefined(u64),
    #[error("N = {0} is even")]
    NEven(u64),
    #[error("y2 = {y2} does not exceed e = {e}")]
    Y2NotAboveE { y2: u64, e: u64 },
    #[error("neither condition (I) nor condition (II) holds")]
    NeitherCondition,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `A_E(t)`: `t − 1` for `E = 1`, else `t^{E−1} + … + t + 1`.
pub fn build_ae(e: u32) -> RatPoly {
    assert!(e >= 1, "E must be positive");
    if e == 1 {
        RatPoly::from_ints([-1, 1])
    } else {
        RatPoly::new(vec![q(1); e as usize])
    }
}

/// `B_{n,E}(t)`: `t^n` for `E = 1`, else `t^n (t − 1)`.
pub fn build_bne(n: u32, e: u32) -> RatPoly {
    assert!(n >= 1 && e >= 1, "n and E must be positive");
    let tn = RatPoly::monomial(q(1), n as usize);
    if e == 1 {
        tn
    } else {
        &tn * &RatPoly::from_ints([-1, 1])
    }
}

/// `I_{E,N}(t) = Σ_{j<N} t^{Ej}`.
pub fn build_ien(e: u32, n: u32) -> RatPoly {
    assert!(e >= 1 && n >= 1, "E and N must be positive");
    let mut v = vec![BigRational::zero(); (e * (n - 1) + 1) as usize];
    for j in 0..n {
        v[(e * j) as usize] = q(1);
    }
    RatPoly::new(v)
}

/// Extended Euclid: `(g, P, Q)` with `A·P + B·Q = g` and `g` monic.
pub fn ext_gcd(a: &RatPoly, b: &RatPoly) -> Result<(RatPoly, RatPoly, RatPoly), EuclidError> {
    if a.is_zero() && b.is_zero() {
        return Err(EuclidError::BothZero);
    }
    let one = RatPoly::constant(q(1));
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), RatPoly::zero());
    let (mut t0, mut t1) = (RatPoly::zero(), one);
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&quo * &s1);
        let t2 = &t0 - &(&quo * &t1);
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let k = r0.lead().expect("nonzero gcd").recip();
    Ok((r0.scale(&k), s0.scale(&k), t0.scale(&k)))
}

/// Integer-scaled Bézout cofactors for `(n, E, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutWitness {
    pub n: u32,
    pub e: u32,
    pub big_n: u32,
    pub lp: IntPoly,
    pub lq: IntPoly,
    pub l: BigInt,
}

impl BezoutWitness {
    /// Checks `A_E·lP + B_{n,E}·I_{E,N}·lQ = l` as a polynomial identity.
    pub fn identity_holds(&self) -> bool {
        let a = build_ae(self.e);
        let bi = &build_bne(self.n, self.e) * &build_ien(self.e, self.big_n);
        let lhs = &(&a * &self.lp.to_rat()) + &(&bi * &self.lq.to_rat());
        lhs == RatPoly::constant(BigRational::from_integer(self.l.clone()))
    }

    /// Structured one-line record for reports.
    pub fn to_record(&self) -> String {
        let list = |p: &IntPoly| p.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        format!(
            "witness n={} E={} N={} l={} lP=[{}] lQ=[{}]",
            self.n,
            self.e,
            self.big_n,
            self.l,
            list(&self.lp),
            list(&self.lq)
        )
    }
}

/// Builds the unique `(P, Q)` with `deg Q < deg A_E`, then scales by the least `l`.
pub fn bezout_witness(n: u32, e: u32, big_n: u32) -> Result<BezoutWitness, EuclidError> {
    if n == 0 || e == 0 || big_n == 0 {
        return Err(EuclidError::BadParameter);
    }
    let a = build_ae(e);
    let bi = &build_bne(n, e) * &build_ien(e, big_n);
    let (g, _, q0) = ext_gcd(&a, &bi)?;
    if g.degree() != Some(0) {
        return Err(EuclidError::NotCoprime(g.to_string()));
    }
    // Reduce Q modulo A; P is then forced by exact division.
    let (_, qq) = q0.div_rem(&a);
    let one = RatPoly::constant(q(1));
    let (pp, rem) = (&one - &(&bi * &qq)).div_rem(&a);
    debug_assert!(rem.is_zero());
    let l = pp.denominator_lcm().lcm(&qq.denominator_lcm());
    let lr = BigRational::from_integer(l.clone());
    let lp = IntPoly(pp.scale(&lr).to_integer_coeffs().expect("integral after scaling"));
    let lq = IntPoly(qq.scale(&lr).to_integer_coeffs().expect("integral after scaling"));
    Ok(BezoutWitness { n, e, big_n, lp, lq, l })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn defining_polynomials() {
        assert_eq!(build_ae(3), RatPoly::from_ints([1, 1, 1]));
        assert_eq!(build_ae(1), RatPoly::from_ints([-1, 1]));
        assert_eq!(build_ien(3, 1), RatPoly::from_ints([1]));
        assert_eq!(build_ien(2, 3).eval(&q(1)), q(3));
        assert_eq!(build_bne(2, 3), RatPoly::from_ints([0, 0, -1, 1]));
    }

    #[test]
    fn euclid_examples() {
        let (g, p, qq) = ext_gcd(&RatPoly::from_ints([1, 1, 1]), &RatPoly::from_ints([0, -1, 1])).unwrap();
        assert_eq!(g, RatPoly::from_ints([1]));
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(qq, RatPoly::from_ints([1, 2]).scale(&third));
        assert_eq!(p, RatPoly::from_ints([3, -2]).scale(&third));

        let (g, p, qq) = ext_gcd(&RatPoly::from_ints([-1, 1]), &RatPoly::from_ints([0, 0, 1])).unwrap();
        assert_eq!((g, p, qq), (RatPoly::from_ints([1]), RatPoly::from_ints([-1, -1]), RatPoly::from_ints([1])));

        let a = RatPoly::from_ints([2, 2, 2]);
        assert_eq!(ext_gcd(&a, &a).unwrap().0, RatPoly::from_ints([1, 1, 1]));
        assert_eq!(ext_gcd(&RatPoly::zero(), &RatPoly::zero()), Err(EuclidError::BothZero));
    }

    #[test]
    fn witness_examples() {
        let w = bezout_witness(1, 3, 1).unwrap();
        assert_eq!((w.lq.clone(), w.lp.clone(), w.l.clone()), (ip(&[1, 2]), ip(&[3, -2]), BigInt::from(3)));
        let w = bezout_witness(2, 1, 3).unwrap();
        assert_eq!((w.lq.clone(), w.lp.clone(), w.l.clone()), (ip(&[1]), ip(&[-3, -3, -2, -1]), BigInt::from(3)));
        assert!(w.identity_holds());
        for big_n in [1u32, 2, 5, 17] {
            let w = bezout_witness(1, 3, big_n).unwrap();
            assert_eq!(w.lq, ip(&[1, 2]));
            assert_eq!(w.l, BigInt::from(3 * big_n));
        }
    }

    #[test]
    fn cyclotomic_inputs_are_always_coprime() {
        // A_E vanishes only at nontrivial E-th roots of unity, where I_{E,N} takes the value N.
        for e in 1..=6 {
            for big_n in 1..=9 {
                assert!(bezout_witness(1, e, big_n).is_ok());
            }
        }
        assert_eq!(bezout_witness(0, 3, 1), Err(EuclidError::BadParameter));
        let (g, _, _) = ext_gcd(&RatPoly::from_ints([-1, 0, 1]), &RatPoly::from_ints([1, 1])).unwrap();
        assert_eq!(g, RatPoly::from_ints([1, 1]));
    }
}
