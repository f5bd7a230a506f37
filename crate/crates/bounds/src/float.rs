//! Binary floating point on top of `BigInt` with a fixed working precision.
//!
//! A value is `mant · 2^exp`. After every operation the mantissa is cut back to
//! [`PREC`] bits by an arithmetic shift, so each step errs by at most one unit in
//! the last place toward −∞. The transcendental functions carry a few dozen
//! guard bits internally; the constants evaluated in this crate need about 60
//! bits, so the margin below 2^-256 relative is never the deciding factor.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Mantissa width in bits.
pub const PREC: u64 = 320;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

fn shift(m: BigInt, by: i64) -> BigInt {
    match by.cmp(&0) {
        Ordering::Greater => m << (by as usize),
        Ordering::Less => m >> ((-by) as usize),
        Ordering::Equal => m,
    }
}

impl BigFloat {
    fn norm(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self { mant, exp: 0 };
        }
        let bits = mant.bits();
        if bits > PREC {
            let cut = (bits - PREC) as i64;
            Self { mant: mant >> (cut as usize), exp: exp + cut }
        } else {
            Self { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Self { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::norm(n.into(), 0)
    }

    /// `num / den` rounded toward −∞.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Exact parse of a plain decimal literal such as `"53.611"` or `"-0.4"`.
    pub fn parse(s: &str) -> Option<Self> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = digits.parse().ok()?;
        if neg {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(Self::from_ratio(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Position of the leading bit: `2^(lead-1) ≤ |x| < 2^lead`.
    fn lead(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    pub fn floor(&self) -> BigInt {
        // A right shift of a BigInt rounds toward −∞, which is floor.
        shift(self.mant.clone(), self.exp)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Distance from `self` to the nearest integer.
    pub fn dist_to_int(&self) -> Self {
        let f = Self::from_int(self.floor());
        let lo = self - &f;
        let hi = &Self::from_int(self.floor() + 1) - self;
        lo.min(hi)
    }

    /// `floor` that also reports whether the value lies within `2^-tol_bits` of
    /// an integer, where a rounding error could move the result by one.
    pub fn floor_checked(&self, tol_bits: u64) -> (BigInt, bool) {
        let tol = Self::pow2(-(tol_bits as i64));
        (self.floor(), self.dist_to_int() < tol * self.abs().max(Self::one()))
    }

    /// Floor of a quantity used as an upper limit: nudged up by a relative
    /// `2^-200` so that accumulated truncation can only widen the range.
    pub fn floor_upper(&self) -> BigInt {
        let slack = Self::pow2(-200) * self.abs().max(Self::one());
        (self + &slack).floor()
    }

    /// Ceiling of a quantity used as a lower limit, nudged down likewise.
    pub fn ceil_lower(&self) -> BigInt {
        let slack = Self::pow2(-200) * self.abs().max(Self::one());
        (self - &slack).ceil()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn pow2(k: i64) -> Self {
        Self { mant: BigInt::one(), exp: k }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let keep = bits.min(60);
        let top = shift(self.mant.clone(), keep - bits).to_f64().unwrap();
        top * 2f64.powi((self.exp + bits - keep) as i32)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative number");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale so the radicand has about 2·PREC bits and an even exponent.
        let mut e = self.exp - (2 * PREC as i64 + 2 - self.mant.bits() as i64);
        if e.rem_euclid(2) != 0 {
            e -= 1;
        }
        let m = shift(self.mant.clone(), self.exp - e);
        Self::norm(m.sqrt(), e / 2)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut k: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `2·atanh(s) = ln((1+s)/(1−s))` for small `|s|`.
    fn two_atanh(s: &Self) -> Self {
        let s2 = s * s;
        let eps = Self::pow2(-(PREC as i64) - 8);
        let mut term = s.clone();
        let mut sum = s.clone();
        let mut k = 1u64;
        loop {
            term = &term * &s2;
            k += 2;
            let add = &term / &Self::from_int(k);
            if add.abs() < eps {
                break;
            }
            sum = &sum + &add;
        }
        &sum + &sum
    }

    pub fn ln2() -> Self {
        static LN2: OnceLock<BigFloat> = OnceLock::new();
        LN2.get_or_init(|| Self::two_atanh(&Self::from_ratio(1, 3))).clone()
    }

    pub fn pi() -> Self {
        static PI: OnceLock<BigFloat> = OnceLock::new();
        PI.get_or_init(|| {
            let atan_inv = |n: i64| {
                let x = Self::from_ratio(1, n);
                let x2 = &x * &x;
                let eps = Self::pow2(-(PREC as i64) - 8);
                let mut term = x.clone();
                let mut sum = x;
                let mut k = 1i64;
                loop {
                    term = -&(&term * &x2);
                    k += 2;
                    let add = &term / &Self::from_int(k);
                    if add.abs() < eps {
                        break;
                    }
                    sum = &sum + &add;
                }
                sum
            };
            &(&Self::from_int(16) * &atan_inv(5)) - &(&Self::from_int(4) * &atan_inv(239))
        })
        .clone()
    }

    pub fn ln(&self) -> Self {
        assert!(self.mant.is_positive(), "ln of a non-positive number");
        // self = f · 2^k with f ∈ [1, 2).
        let k = self.lead() - 1;
        let f = Self { mant: self.mant.clone(), exp: self.exp - k };
        let one = Self::one();
        let s = &(&f - &one) / &(&f + &one);
        &(&Self::from_int(k) * &Self::ln2()) + &Self::two_atanh(&s)
    }

    pub fn exp(&self) -> Self {
        let ln2 = Self::ln2();
        let k = (self / &ln2).floor();
        let r = self - &(&Self::from_int(k.clone()) * &ln2);
        // r ∈ [0, ln 2): halve 24 times, sum the series, square back.
        const HALVINGS: i64 = 24;
        let x = Self { mant: r.mant.clone(), exp: r.exp - HALVINGS };
        let eps = Self::pow2(-(PREC as i64) - 8);
        let mut term = Self::one();
        let mut sum = Self::one();
        let mut n = 0i64;
        loop {
            n += 1;
            term = &(&term * &x) / &Self::from_int(n);
            if term.abs() < eps {
                break;
            }
            sum = &sum + &term;
        }
        for _ in 0..HALVINGS {
            sum = &sum * &sum;
        }
        let k = k.to_i64().expect("exponent out of range");
        Self { mant: sum.mant, exp: sum.exp + k }
    }

    /// `self^y = exp(y·ln self)` for positive `self`.
    pub fn powf(&self, y: &Self) -> Self {
        (y * &self.ln()).exp()
    }

    /// Decimal rendering with `digits` places after the point, rounded to nearest.
    pub fn to_decimal(&self, digits: u32) -> String {
        let half = Self::from_ratio(BigInt::from(1), BigInt::from(2));
        let scaled = (&(self * &Self::from_int(BigInt::from(10u32).pow(digits))) + &half).floor();
        let neg = scaled.sign() == Sign::Minus;
        let s = scaled.abs().to_string();
        let s = format!("{:0>width$}", s, width = digits as usize + 1);
        let (i, f) = s.split_at(s.len() - digits as usize);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{i}")
        } else {
            format!("{sign}{i}.{f}")
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(6) as u32))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        shift(self.mant.clone(), self.exp - e).cmp(&shift(other.mant.clone(), other.exp - e))
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Operands far below the other's precision only matter as a sticky bit.
        let floor_exp = self.lead().max(rhs.lead()) - 2 * PREC as i64;
        let e = self.exp.min(rhs.exp).max(floor_exp);
        BigFloat::norm(shift(self.mant.clone(), self.exp - e) + shift(rhs.mant.clone(), rhs.exp - e), e)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self + &(-rhs)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::norm(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "division by zero");
        let extra = (PREC + 2 + rhs.mant.bits()) as i64 - self.mant.bits() as i64;
        let extra = extra.max(0);
        let num = shift(self.mant.clone(), extra);
        let (q, _) = num.div_mod_floor(&rhs.mant);
        BigFloat::norm(q, self.exp - extra - rhs.exp)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat { (&self).$m(&rhs) }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat { (&self).$m(rhs) }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat { self.$m(&rhs) }
        }
        impl $tr<i64> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: i64) -> BigFloat { (&self).$m(&BigFloat::from_int(rhs)) }
        }
        impl $tr<i64> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: i64) -> BigFloat { self.$m(&BigFloat::from_int(rhs)) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for BigFloat {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<u64> for BigFloat {
    fn from(v: u64) -> Self {
        Self::from_int(v)
    }
}

impl From<&BigInt> for BigFloat {
    fn from(v: &BigInt) -> Self {
        Self::from_int(v.clone())
    }
}

/// Shorthand for a decimal literal; panics on malformed input.
pub fn dec(s: &str) -> BigFloat {
    BigFloat::parse(s).unwrap_or_else(|| panic!("bad decimal literal {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigFloat, b: &BigFloat, bits: i64) -> bool {
        (a - b).abs() <= BigFloat::pow2(-bits) * a.abs().max(BigFloat::one())
    }

    #[test]
    fn constants_match_known_digits() {
        assert_eq!(BigFloat::ln2().to_decimal(40), "0.6931471805599453094172321214581765680755");
        assert_eq!(BigFloat::pi().to_decimal(40), "3.1415926535897932384626433832795028841972");
        assert_eq!(BigFloat::one().exp().to_decimal(40), "2.7182818284590452353602874713526624977572");
        assert_eq!(BigFloat::from_int(7).ln().to_decimal(30), "1.945910149055313305105352743443");
        assert_eq!(BigFloat::from_int(2).sqrt().to_decimal(30), "1.414213562373095048801688724210");
    }

    #[test]
    fn round_trips() {
        for s in ["0.001", "1.5", "53.611", "12345.678"] {
            let x = dec(s);
            assert!(close(&x.ln().exp(), &x, 280), "{s}");
            assert!(close(&(&x.sqrt() * &x.sqrt()), &x, 300), "{s}");
        }
        let x = dec("-2.75");
        assert_eq!(x.floor(), BigInt::from(-3));
        assert_eq!(x.ceil(), BigInt::from(-2));
        assert_eq!(dec("7").powi(20).floor(), BigInt::from(7u64.pow(20)));
        assert!(close(&dec("7").powf(&dec("0.5")), &dec("7").sqrt(), 280));
    }

    #[test]
    fn ordering_and_boundaries() {
        assert!(dec("0.1") < dec("0.10000001"));
        assert!(dec("-3") < dec("2"));
        let (f, near) = dec("2.0000000001").floor_checked(20);
        assert_eq!(f, BigInt::from(2));
        assert!(near);
        let (_, near) = dec("2.5").floor_checked(20);
        assert!(!near);
        assert_eq!((&dec("1") / &dec("3")).to_decimal(5), "0.33333");
    }
}
