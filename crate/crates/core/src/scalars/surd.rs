//! Quadratic surds.
//!
//! [`SurdVal`] is `base + coef·√d` for a single radicand. [`Radical`] is a
//! finite sum `Σ c_k √k` over squarefree integers `k`, closed under
//! multiplication, which lets products of several independent square roots
//! stay exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::bigfloat::BigFloat;
use super::rat::{rat_int, square_part, Coeff, Rat, Ring};
use crate::error::{domain, Result};

/// `base + coef·√radicand` with squarefree integer radicand > 1, or coef = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdVal {
    base: Rat,
    radicand: BigInt,
    coef: Rat,
}

/// `√r` for rational `r >= 0` as `(s, f)` with `√r = s·√f`, `f` squarefree.
fn split_sqrt(r: &Rat) -> (Rat, BigInt) {
    if r.is_zero() {
        return (Rat::zero(), BigInt::one());
    }
    let pq = r.numer() * r.denom();
    let (s, f) = square_part(&pq);
    (Rat::new(s, r.denom().clone()), f)
}

impl SurdVal {
    pub fn rational(base: Rat) -> Self {
        SurdVal { base, radicand: BigInt::zero(), coef: Rat::zero() }
    }

    /// `base + coef·√d` for any rational `d >= 0`, normalized.
    pub fn new(base: Rat, coef: Rat, d: &Rat) -> Result<Self> {
        if d.is_negative() {
            return domain("negative radicand");
        }
        let (s, f) = split_sqrt(d);
        let coef = coef * s;
        if f.is_one() || coef.is_zero() {
            return Ok(SurdVal::rational(base + if f.is_one() { coef } else { Rat::zero() }));
        }
        Ok(SurdVal { base, radicand: f, coef })
    }

    /// `√d` exactly.
    pub fn sqrt(d: &Rat) -> Result<Self> {
        Self::new(Rat::zero(), Rat::one(), d)
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn coef(&self) -> &Rat {
        &self.coef
    }

    /// Squarefree radicand, or 0 when the value is rational.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    fn compatible(&self, other: &Self) -> Result<BigInt> {
        match (self.coef.is_zero(), other.coef.is_zero()) {
            (true, true) => Ok(BigInt::zero()),
            (true, false) => Ok(other.radicand.clone()),
            (false, true) => Ok(self.radicand.clone()),
            (false, false) if self.radicand == other.radicand => Ok(self.radicand.clone()),
            _ => domain(format!(
                "incompatible radicands {} and {}",
                self.radicand, other.radicand
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.compatible(other)?;
        let coef = &self.coef + &other.coef;
        if coef.is_zero() {
            return Ok(SurdVal::rational(&self.base + &other.base));
        }
        Ok(SurdVal { base: &self.base + &other.base, radicand: d, coef })
    }

    pub fn neg(&self) -> Self {
        SurdVal { base: -&self.base, radicand: self.radicand.clone(), coef: -&self.coef }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.compatible(other)?;
        let dr = Rat::from_integer(d.clone());
        let base = &self.base * &other.base + &self.coef * &other.coef * dr;
        let coef = &self.base * &other.coef + &self.coef * &other.base;
        if coef.is_zero() {
            return Ok(SurdVal::rational(base));
        }
        Ok(SurdVal { base, radicand: d, coef })
    }

    pub fn to_radical(&self) -> Radical {
        let mut r = Radical::rational(self.base.clone());
        if !self.coef.is_zero() {
            r = r + Radical::sqrt_int(&self.radicand).scale(&self.coef);
        }
        r
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        self.to_radical().to_bigfloat(prec)
    }
}

impl fmt::Display for SurdVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_radical())
    }
}

/// Exact product of two surds sharing a radicand.
pub fn surd_mul(a: &SurdVal, b: &SurdVal) -> Result<SurdVal> {
    a.mul(b)
}

/// `Σ c_k √k` with `k` squarefree positive; key 1 is the rational part.
#[derive(Clone, Debug, PartialEq, Eq, Default, PartialOrd, Ord)]
pub struct Radical {
    terms: BTreeMap<u64, Rat>,
}

impl Radical {
    pub fn rational(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        Radical { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rat_int(n))
    }

    /// `√n` for an integer `n >= 0`.
    pub fn sqrt_int(n: &BigInt) -> Self {
        Self::sqrt(&Rat::from_integer(n.clone())).expect("nonnegative radicand")
    }

    /// `√r` for rational `r >= 0`.
    pub fn sqrt(r: &Rat) -> Result<Self> {
        if r.is_negative() {
            return domain("square root of a negative rational");
        }
        let (s, f) = split_sqrt(r);
        let key = f
            .to_u64()
            .ok_or_else(|| crate::error::Error::Domain(format!("radicand {f} too large")))?;
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(key, s);
        }
        Ok(Radical { terms })
    }

    /// `r^(e/2)` for rational `r > 0` (or `r = 0` with `e > 0`).
    pub fn half_power(r: &Rat, e: i64) -> Result<Self> {
        if r.is_zero() {
            return if e > 0 { Ok(Radical::zero()) } else { domain("0 to a non-positive power") };
        }
        let whole = super::rat::rat_pow(r, Integer::div_floor(&e, &2) as i32);
        let out = Radical::rational(whole);
        if e.rem_euclid(2) == 1 {
            Ok(out * Radical::sqrt(r)?)
        } else {
            Ok(out)
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, Rat> {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&k| k == 1)
    }

    pub fn rational_part(&self) -> Rat {
        self.terms.get(&1).cloned().unwrap_or_else(Rat::zero)
    }

    /// The value as a rational if no irrational part is present.
    pub fn as_rational(&self) -> Option<Rat> {
        self.is_rational().then(|| self.rational_part())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Radical::zero();
        }
        Radical { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    fn insert(&mut self, k: u64, c: Rat) {
        let e = self.terms.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Multiplicative inverse of a single-term radical.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.len() {
            1 => {
                let (&k, c) = self.terms.iter().next().unwrap();
                // (c √k)^(-1) = √k / (c k)
                let mut terms = BTreeMap::new();
                terms.insert(k, (c * rat_int(k as i64)).recip());
                Ok(Radical { terms })
            }
            0 => domain("division by zero radical"),
            _ => domain("inverse of a multi-term radical is not supported"),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Radical::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        let w = prec + 16;
        let mut acc = BigFloat::zero_with(w);
        for (k, c) in &self.terms {
            let root = BigFloat::from_int_with(*k, w).sqrt();
            acc = acc + root * BigFloat::from_rat_with(c, w);
        }
        acc.with_prec(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_bigfloat(64).to_f64()
    }
}

fn mul_keys(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    let key = (a / g) as u128 * (b / g) as u128;
    (g, u64::try_from(key).expect("radicand overflow"))
}

impl Add for Radical {
    type Output = Radical;
    fn add(mut self, rhs: Radical) -> Radical {
        for (k, c) in rhs.terms {
            self.insert(k, c);
        }
        self
    }
}

impl<'a> Add for &'a Radical {
    type Output = Radical;
    fn add(self, rhs: &Radical) -> Radical {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, c.clone());
        }
        out
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(self, rhs: Radical) -> Radical {
        self + (-rhs)
    }
}

impl<'a> Sub for &'a Radical {
    type Output = Radical;
    fn sub(self, rhs: &Radical) -> Radical {
        self.clone() + (-rhs.clone())
    }
}

impl<'a> Mul for &'a Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                // √a √b = g √(ab/g²) with g = gcd(a, b)
                let (g, key) = mul_keys(*ka, *kb);
                out.insert(key, ca * cb * rat_int(g as i64));
            }
        }
        out
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        &self * &rhs
    }
}

impl Zero for Radical {
    fn zero() -> Self {
        Radical::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Radical {
    fn one() -> Self {
        Radical::from_int(1)
    }
}

impl Ring for Radical {
    fn from_i64(n: i64) -> Self {
        Radical::from_int(n)
    }
}

impl Coeff for Radical {
    fn from_rat(r: &Rat) -> Self {
        Radical::rational(r.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| if *k == 1 { format!("{c}") } else { format!("{c}*sqrt({k})") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl super::real::RealValue for Radical {
    fn to_real<T: super::real::Real>(&self) -> T {
        let mut acc = T::zero();
        for (k, c) in &self.terms {
            let r = T::from_i64(*k as i64).sqrt();
            acc = acc + T::from_rat(c) * r;
        }
        acc
    }
}

impl Serialize for Radical {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::rat;

    fn sv(b: i64, c: i64, d: i64) -> SurdVal {
        SurdVal::new(rat_int(b), rat_int(c), &rat_int(d)).unwrap()
    }

    #[test]
    fn surd_products() {
        assert_eq!(surd_mul(&sv(0, 1, 3), &sv(0, 1, 3)).unwrap(), SurdVal::rational(rat_int(3)));
        assert_eq!(surd_mul(&sv(2, 1, 5), &sv(2, -1, 5)).unwrap(), SurdVal::rational(rat_int(-1)));
        let x = sv(3, 7, 2);
        assert_eq!(surd_mul(&SurdVal::rational(rat_int(1)), &x).unwrap(), x);
        assert!(surd_mul(&sv(0, 1, 2), &sv(0, 1, 3)).is_err());
    }

    #[test]
    fn surd_normalizes_radicand() {
        let x = SurdVal::new(rat_int(0), rat_int(1), &rat(8, 9)).unwrap();
        assert_eq!(x.radicand(), &BigInt::from(2));
        assert_eq!(x.coef(), &rat(2, 3));
        assert!(SurdVal::sqrt(&rat_int(16)).unwrap().is_rational());
    }

    #[test]
    fn radical_arithmetic() {
        let s2 = Radical::sqrt(&rat_int(2)).unwrap();
        let s3 = Radical::sqrt(&rat_int(3)).unwrap();
        let s6 = Radical::sqrt(&rat_int(6)).unwrap();
        assert_eq!(&s2 * &s3, s6);
        assert_eq!(&s6 * &s3, Radical::sqrt(&rat_int(2)).unwrap().scale(&rat_int(3)));
        assert_eq!(&s2 * &s2, Radical::from_int(2));
        assert_eq!(s6.inv().unwrap() * s6.clone(), Radical::one());
        assert_eq!(Radical::half_power(&rat(8, 1), 3).unwrap(), Radical::sqrt(&rat_int(2)).unwrap().scale(&rat_int(16)));
        let v = (s2 + s3).to_bigfloat(128).to_f64();
        assert!((v - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-15);
    }
}
