use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn rat_pow(x: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Parses `p`, `p/q` or a decimal literal such as `-1.25e-3`.
///
/// Returns the value and whether it was written as an exact rational.
pub fn parse_rat(s: &str) -> Option<(Rat, bool)> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some((Rat::new(p, q), true));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some((Rat::from_integer(n), true));
    }
    parse_decimal(s).map(|r| (r, false))
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = Rat::from_integer(digits);
    if scale >= 0 {
        r *= Rat::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rat::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `top (top-1) ... (top-s+1) / s!` for rational `top`.
pub fn binom_rat(top: &Rat, s: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..s {
        acc *= top - Rat::from_integer(BigInt::from(i));
        acc /= Rat::from_integer(BigInt::from(i + 1));
    }
    acc
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn mod_floor(a: i64, m: i64) -> i64 {
    a.mod_floor(&m)
}

/// Largest `s` with `s^2 | n` and the squarefree cofactor, for `n > 0`.
pub fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut n = n.abs();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            s *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                f *= &p;
            }
        }
        p += 1;
    }
    (s, f * n)
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Commutative ring with unit and an embedding of the integers.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Ring for i128 {
    fn from_i64(n: i64) -> Self {
        n as i128
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for Rat {
    fn from_i64(n: i64) -> Self {
        rat_int(n)
    }
}

impl Ring for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

/// Rings that embed exactly into the rationals.
pub trait ToRat: Ring {
    fn to_rat(&self) -> Rat;
}

impl ToRat for i64 {
    fn to_rat(&self) -> Rat {
        rat_int(*self)
    }
}

impl ToRat for BigInt {
    fn to_rat(&self) -> Rat {
        Rat::from_integer(self.clone())
    }
}

impl ToRat for Rat {
    fn to_rat(&self) -> Rat {
        self.clone()
    }
}

/// Coefficient rings for q-series: contain the rationals and carry a conjugation.
pub trait Coeff: Ring {
    fn from_rat(r: &Rat) -> Self;
    fn conj(&self) -> Self;
}

impl Coeff for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Coeff for f64 {
    fn from_rat(r: &Rat) -> Self {
        rat_to_f64(r)
    }
    fn conj(&self) -> Self {
        *self
    }
}
