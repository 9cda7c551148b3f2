//! The coefficient field ℚ(k): canonical ratios of integer polynomials in
//! the deformation parameter k.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by the zero element of Q(k)")]
    DivisionByZero,
    #[error("pole at k = {0}")]
    Pole(BigRational),
    #[error("k must be nonzero")]
    ZeroK,
    #[error("malformed coefficient: {0}")]
    Malformed(String),
}

/// Integer polynomial in k, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly(self.0.iter().map(|a| a / c).collect())
    }

    fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly(self.0.iter().map(|a| a * c).collect())
    }

    fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn add_ref(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let mut c = self.0.get(i).cloned().unwrap_or_default();
            if let Some(o) = other.0.get(i) {
                c += o;
            }
            out.push(c);
        }
        IntPoly::new(out)
    }

    fn neg_ref(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let lc = divisor.lead().clone();
        let dd = divisor.degree();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let lr = r.lead().clone();
            let mut scaled = r.mul_scalar(&lc).0;
            for (j, b) in divisor.0.iter().enumerate() {
                scaled[j + shift] -= &lr * b;
            }
            r = IntPoly::new(scaled).primitive_keep_sign();
        }
        r
    }

    /// Strips content but keeps the sign of the leading coefficient.
    fn primitive_keep_sign(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.div_scalar(&self.content())
    }

    /// Primitive gcd with positive leading coefficient; contents are ignored.
    fn gcd_primitive(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return IntPoly::constant(BigInt::one());
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Exact quotient; the caller guarantees divisibility over ℤ.
    fn div_exact(&self, divisor: &IntPoly) -> IntPoly {
        if divisor.degree() == 0 {
            return self.div_scalar(divisor.lead());
        }
        let dd = divisor.degree();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); (self.0.len() + 1).saturating_sub(dd + 1).max(1)];
        let lc = divisor.lead();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() / lc;
            for (j, b) in divisor.0.iter().enumerate() {
                r[j + shift] -= &c * b;
            }
            q[shift] = c;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        debug_assert!(r.is_empty(), "inexact polynomial division");
        IntPoly::new(q)
    }

    pub fn eval(&self, k0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * k0 + BigRational::from_integer(c.clone());
        }
        acc
    }

    fn write_in_k(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (d, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match d {
                0 => {}
                1 => f.write_str("k")?,
                _ => write!(f, "k^{d}")?,
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

/// An element of ℚ(k) in canonical form.
///
/// `num` and `den` are coprime, their integer contents are jointly reduced and
/// `den` has a positive leading coefficient, so structural equality is field
/// equality. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatK {
    num: IntPoly,
    den: IntPoly,
}

impl RatK {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatK::zero();
        }
        let (mut num, mut den) = if den.degree() > 0 && num.degree() > 0 {
            let g = num.gcd_primitive(&den);
            if g.degree() > 0 {
                (num.div_exact(&g), den.div_exact(&g))
            } else {
                (num, den)
            }
        } else {
            (num, den)
        };
        let mut c = num.content().gcd(&den.content());
        if den.lead().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RatK { num, den }
    }

    pub fn zero() -> Self {
        RatK {
            num: IntPoly::zero(),
            den: IntPoly::constant(BigInt::one()),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        RatK {
            num: IntPoly::constant(BigInt::from(c)),
            den: IntPoly::constant(BigInt::one()),
        }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        RatK {
            num: IntPoly::constant(c),
            den: IntPoly::constant(BigInt::one()),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::canonical(
            IntPoly::constant(q.numer().clone()),
            IntPoly::constant(q.denom().clone()),
        )
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// The parameter k itself.
    pub fn k() -> Self {
        RatK {
            num: IntPoly::new(vec![BigInt::zero(), BigInt::one()]),
            den: IntPoly::constant(BigInt::one()),
        }
    }

    /// Polynomial in k from integer coefficients (ascending degree).
    pub fn poly(coeffs: &[i64]) -> Self {
        RatK {
            num: IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect()),
            den: IntPoly::constant(BigInt::one()),
        }
        .reduced()
    }

    fn reduced(self) -> Self {
        Self::canonical(self.num, self.den)
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the element does not depend on k.
    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.0.first().cloned().unwrap_or_default();
        Some(BigRational::new(n, self.den.0[0].clone()))
    }

    pub fn inv(&self) -> Result<RatK, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatK) -> Result<RatK, CoeffError> {
        Ok(self * &other.inv()?)
    }

    /// Exact value at k = k0.
    pub fn specialize(&self, k0: &BigRational) -> Result<BigRational, CoeffError> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            return Err(CoeffError::Pole(k0.clone()));
        }
        Ok(self.num.eval(k0) / d)
    }

    pub fn specialize_f64(&self, k0: f64) -> f64 {
        let eval = |p: &IntPoly| {
            p.0.iter()
                .rev()
                .fold(0.0, |acc, c| acc * k0 + bigint_to_f64(c))
        };
        eval(&self.num) / eval(&self.den)
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// Parses "1", "-3", "7/3" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, CoeffError> {
    let s = s.trim();
    let bad = || CoeffError::Malformed(s.to_string());
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// A value of the deformation parameter: generic, or a nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KValue {
    Generic,
    Rational(BigRational),
}

impl KValue {
    pub fn rational(q: BigRational) -> Result<Self, CoeffError> {
        if q.is_zero() {
            return Err(CoeffError::ZeroK);
        }
        Ok(KValue::Rational(q))
    }
}

impl FromStr for KValue {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "generic" {
            return Ok(KValue::Generic);
        }
        KValue::rational(parse_rational(s)?)
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Generic => f.write_str("generic"),
            KValue::Rational(q) => write!(f, "{q}"),
        }
    }
}

impl Default for RatK {
    fn default() -> Self {
        RatK::zero()
    }
}

impl Add for &RatK {
    type Output = RatK;

    fn add(self, other: &RatK) -> RatK {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatK::canonical(self.num.add_ref(&other.num), self.den.clone());
        }
        let num = self
            .num
            .mul_ref(&other.den)
            .add_ref(&other.num.mul_ref(&self.den));
        RatK::canonical(num, self.den.mul_ref(&other.den))
    }
}

impl Neg for &RatK {
    type Output = RatK;

    fn neg(self) -> RatK {
        RatK {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatK {
    type Output = RatK;

    fn neg(self) -> RatK {
        -&self
    }
}

impl Sub for &RatK {
    type Output = RatK;

    fn sub(self, other: &RatK) -> RatK {
        self + &(-other)
    }
}

impl Mul for &RatK {
    type Output = RatK;

    fn mul(self, other: &RatK) -> RatK {
        if self.is_zero() || other.is_zero() {
            return RatK::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        RatK::canonical(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }
}

/// Panics on division by zero; use [`RatK::checked_div`] where the divisor
/// is not known to be nonzero.
impl Div for &RatK {
    type Output = RatK;

    fn div(self, other: &RatK) -> RatK {
        self.checked_div(other).expect("division by zero in Q(k)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatK {
            type Output = RatK;
            fn $m(self, other: RatK) -> RatK { (&self).$m(&other) }
        }
        impl $tr<&RatK> for RatK {
            type Output = RatK;
            fn $m(self, other: &RatK) -> RatK { (&self).$m(other) }
        }
        impl $tr<RatK> for &RatK {
            type Output = RatK;
            fn $m(self, other: RatK) -> RatK { self.$m(&other) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&RatK> for RatK {
    fn add_assign(&mut self, other: &RatK) {
        *self = &*self + other;
    }
}

impl SubAssign<&RatK> for RatK {
    fn sub_assign(&mut self, other: &RatK) {
        *self = &*self - other;
    }
}

impl MulAssign<&RatK> for RatK {
    fn mul_assign(&mut self, other: &RatK) {
        *self = &*self * other;
    }
}

impl std::iter::Sum for RatK {
    fn sum<I: Iterator<Item = RatK>>(iter: I) -> RatK {
        iter.fold(RatK::zero(), |a, b| a + b)
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl fmt::Display for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| p.term_count() > 1;
        if self.den.is_one() {
            return self.num.write_in_k(f);
        }
        if wrap(&self.num) {
            f.write_str("(")?;
            self.num.write_in_k(f)?;
            f.write_str(")")?;
        } else {
            self.num.write_in_k(f)?;
        }
        f.write_str("/")?;
        if wrap(&self.den) || self.den.degree() > 0 && !self.den.lead().is_one() {
            f.write_str("(")?;
            self.den.write_in_k(f)?;
            f.write_str(")")
        } else {
            self.den.write_in_k(f)
        }
    }
}

impl fmt::Debug for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatK({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RatKJson {
    num: Vec<String>,
    den: Vec<String>,
}

fn coeff_strings(p: &IntPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.0.iter().map(ToString::to_string).collect()
}

impl Serialize for RatK {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatKJson {
            num: coeff_strings(&self.num),
            den: coeff_strings(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatK {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RatKJson::deserialize(d)?;
        let parse = |v: &[String]| {
            v.iter()
                .map(|s| {
                    BigInt::from_str(s).map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(IntPoly::new)
        };
        RatK::new(parse(&raw.num)?, parse(&raw.den)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonicalization_examples() {
        let a = RatK::poly(&[-1, 0, 1]) / RatK::poly(&[1, 1]);
        assert_eq!(a, RatK::poly(&[-1, 1]));
        let b = RatK::k() / RatK::poly(&[1, 1]) + RatK::one() / RatK::poly(&[1, 1]);
        assert!(b.is_one());
        let c = (RatK::one() / RatK::k()) * RatK::k();
        assert!(c.is_one());
    }

    #[test]
    fn sign_and_content_normalized() {
        let a = RatK::new(
            IntPoly::new(vec![4.into(), 2.into()]),
            IntPoly::new(vec![(-6).into(), (-2).into()]),
        )
        .unwrap();
        assert_eq!(a.numer().coeffs(), &[(-2).into(), (-1).into()]);
        assert_eq!(a.denom().coeffs(), &[3.into(), 1.into()]);
    }

    #[test]
    fn specialize_examples() {
        let a = RatK::poly(&[0, 2]) / RatK::poly(&[1, 1]);
        assert_eq!(a.specialize(&q(1, 1)).unwrap(), q(1, 1));
        let b = RatK::one() / RatK::poly(&[-1, 1]);
        assert_eq!(b.specialize(&q(1, 1)), Err(CoeffError::Pole(q(1, 1))));
        let c = RatK::poly(&[1, -1]) * RatK::ratio(1, 4);
        assert_eq!(c.specialize(&q(1, 2)).unwrap(), q(1, 8));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            RatK::one().checked_div(&RatK::zero()),
            Err(CoeffError::DivisionByZero)
        );
        assert!(RatK::new(IntPoly::constant(1.into()), IntPoly::zero()).is_err());
    }

    #[test]
    fn k_parsing() {
        assert_eq!("generic".parse::<KValue>().unwrap(), KValue::Generic);
        assert_eq!("7/3".parse::<KValue>().unwrap(), KValue::Rational(q(7, 3)));
        assert_eq!("0".parse::<KValue>(), Err(CoeffError::ZeroK));
        assert!("1/0".parse::<KValue>().is_err());
    }

    #[test]
    fn json_form() {
        let a = RatK::poly(&[0, 2]) / RatK::poly(&[1, 1]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"num":["0","2"],"den":["1","1"]}"#);
        assert_eq!(serde_json::from_str::<RatK>(&s).unwrap(), a);
        assert_eq!(
            serde_json::to_string(&RatK::zero()).unwrap(),
            r#"{"num":["0"],"den":["1"]}"#
        );
        let unreduced: RatK =
            serde_json::from_str(r#"{"num":["-1","0","1"],"den":["1","1"]}"#).unwrap();
        assert_eq!(unreduced, RatK::poly(&[-1, 1]));
    }

    #[test]
    fn display() {
        let a = RatK::poly(&[0, 2]) / RatK::poly(&[1, 1]);
        assert_eq!(a.to_string(), "2*k/(k + 1)");
        assert_eq!(RatK::ratio(-1, 2).to_string(), "-1/2");
    }

    fn small_ratk() -> impl Strategy<Value = RatK> {
        (
            prop::collection::vec(-4i64..=4, 1..4),
            prop::collection::vec(-4i64..=4, 1..3),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                let den = RatK::poly(&d);
                if den.is_zero() {
                    None
                } else {
                    Some(RatK::poly(&n) / den)
                }
            })
    }

    proptest! {
        #[test]
        fn specialization_is_multiplicative(a in small_ratk(), b in small_ratk(), k0 in -5i64..=5, kd in 1i64..=3) {
            let k0 = q(k0, kd);
            if let (Ok(x), Ok(y)) = (a.specialize(&k0), b.specialize(&k0)) {
                prop_assert_eq!((&a * &b).specialize(&k0).unwrap(), x * y);
            }
        }

        #[test]
        fn field_axioms(a in small_ratk(), b in small_ratk(), c in small_ratk()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn canonical_is_idempotent(a in small_ratk()) {
            let again = RatK::new(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(again, a);
        }
    }
}
