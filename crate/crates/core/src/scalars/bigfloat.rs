//! Binary floating point with an arbitrary-precision mantissa.
//!
//! A value is `mant * 2^exp` rounded to `prec` bits (round half away from zero).
//! Each arithmetic operation is correctly rounded up to one unit in the last
//! place; the transcendental functions work with 32 guard bits and are
//! accurate to a few units in the last place of the requested precision.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use super::rat::{parse_rat, Coeff, Rat, Ring};

pub const DEFAULT_PRECISION: u32 = 192;
pub const MIN_PRECISION: u32 = 64;
const GUARD: u32 = 32;

thread_local! {
    static WORKING_PRECISION: Cell<u32> = const { Cell::new(DEFAULT_PRECISION) };
    static CONSTANTS: RefCell<HashMap<(u8, u32), BigFloat>> = RefCell::new(HashMap::new());
}

/// Precision used for values created without an explicit precision.
pub fn working_precision() -> u32 {
    WORKING_PRECISION.with(|p| p.get())
}

pub fn set_working_precision(bits: u32) {
    WORKING_PRECISION.with(|p| p.set(bits.max(MIN_PRECISION)));
}

/// Runs `f` with the thread's working precision temporarily set to `bits`.
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    let old = working_precision();
    set_working_precision(bits);
    let out = f();
    set_working_precision(old);
    out
}

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    fn raw(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut x = BigFloat { mant, exp, prec };
        x.round();
        x
    }

    fn round(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            let neg = self.mant.is_negative();
            let mag = self.mant.magnitude();
            let half_bit = mag.bit(shift - 1);
            let mut q = mag >> shift;
            if half_bit {
                q += 1u32;
            }
            self.mant = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
            self.exp += shift as i64;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero_with(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_int_with(n: impl Into<BigInt>, prec: u32) -> Self {
        Self::raw(n.into(), 0, prec)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_int_with(n, working_precision())
    }

    pub fn from_f64_with(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "BigFloat cannot represent {x}");
        if x == 0.0 {
            return Self::zero_with(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Self::raw(BigInt::from(m) * sign, e, prec)
    }

    pub fn from_rat_with(r: &Rat, prec: u32) -> Self {
        let n = Self::from_int_with(r.numer().clone(), prec + 2);
        let d = Self::from_int_with(r.denom().clone(), prec + 2);
        (n / d).with_prec(prec)
    }

    pub fn from_rat(r: &Rat) -> Self {
        Self::from_rat_with(r, working_precision())
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::raw(self.mant.clone(), self.exp, prec)
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Binary exponent of the leading bit: `2^e <= |x| < 2^(e+1)`.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.mant.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    /// Exact value as a rational.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(f64::NAN);
        ldexp(m, e)
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let shift = (-self.exp) as u64;
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let half = if shift >= 1 { mag.bit(shift - 1) } else { false };
        let mut q = mag >> shift;
        if half {
            q += 1u32;
        }
        BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q)
    }

    pub fn floor_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let shift = (-self.exp) as usize;
        // arithmetic shift on BigInt floors toward negative infinity
        &self.mant >> shift
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        if sa != sb {
            return sign_rank(sa).cmp(&sign_rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let ea = self.magnitude_exp().unwrap();
        let eb = other.magnitude_exp().unwrap();
        if ea != eb {
            let ord = ea.cmp(&eb);
            return if sa == Sign::Plus { ord } else { ord.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }

    /// True when `|self - other| <= tol`.
    pub fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        (self - other).abs() <= *tol
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.mant.is_zero() {
            return self.clone();
        }
        let p = self.prec as u64 + 2;
        let bits = self.mant.bits();
        let mut shift = if 2 * p > bits { 2 * p - bits } else { 0 } as i64;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = (&self.mant << shift as usize).sqrt();
        Self::raw(m, (self.exp - shift) / 2, self.prec)
    }

    pub fn recip(&self) -> Self {
        BigFloat::from_int_with(1, self.prec) / self.clone()
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let w = self.prec + GUARD;
        let mut base = self.with_prec(w);
        let mut acc = BigFloat::from_int_with(1, w);
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc.with_prec(self.prec)
    }

    pub fn ln2(prec: u32) -> Self {
        cached(0, prec, || {
            let w = prec + GUARD;
            atanh_recip(3, w).mul_pow2(1).with_prec(prec)
        })
    }

    pub fn pi(prec: u32) -> Self {
        cached(1, prec, || {
            let w = prec + GUARD;
            let a = atan_recip(5, w) * BigFloat::from_int_with(16, w);
            let b = atan_recip(239, w) * BigFloat::from_int_with(4, w);
            (a - b).with_prec(prec)
        })
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.mant.is_zero() {
            return BigFloat::from_int_with(1, prec);
        }
        let approx = self.to_f64();
        assert!(approx.abs() < 4.0e18, "exp argument out of range");
        let k = (approx / std::f64::consts::LN_2).round() as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let w = prec + GUARD + kbits;
        let r = self.with_prec(w) - BigFloat::ln2(w) * BigFloat::from_int_with(k, w);
        // halve the argument until it is tiny, sum the series, then square back
        let halvings = ((w as f64).sqrt() as i64).max(4);
        let r = r.mul_pow2(-halvings);
        let one = BigFloat::from_int_with(1, w);
        let mut sum = one.clone();
        let mut term = one;
        let eps_exp = -(w as i64) - 4;
        for n in 1.. {
            term = &term * &r / BigFloat::from_int_with(n, w);
            sum = &sum + &term;
            match term.magnitude_exp() {
                Some(e) if e > eps_exp => {}
                _ => break,
            }
        }
        for _ in 0..halvings {
            sum = &sum * &sum;
        }
        sum.mul_pow2(k).with_prec(prec)
    }

    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of non-positive BigFloat");
        let prec = self.prec;
        let e = self.magnitude_exp().unwrap();
        let w = prec + GUARD + 64;
        // y in [1/sqrt2, sqrt2)
        let mut y = self.with_prec(w).mul_pow2(-e);
        let mut e = e;
        if y.to_f64() > std::f64::consts::SQRT_2 {
            y = y.mul_pow2(-1);
            e += 1;
        }
        let one = BigFloat::from_int_with(1, w);
        let z = (&y - &one) / (&y + &one);
        let z2 = &z * &z;
        let mut sum = z.clone();
        let mut pow = z;
        let eps_exp = -(w as i64) - 4;
        let mut n = 1i64;
        loop {
            pow = &pow * &z2;
            n += 2;
            let term = &pow / BigFloat::from_int_with(n, w);
            sum = &sum + &term;
            match term.magnitude_exp() {
                Some(t) if t > eps_exp => {}
                _ => break,
            }
        }
        let res = sum.mul_pow2(1) + BigFloat::ln2(w) * BigFloat::from_int_with(e, w);
        res.with_prec(prec)
    }

    /// `(sin x, cos x)` by quadrant reduction and Taylor series on `|r| <= pi/4`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        if self.mant.is_zero() {
            return (self.clone(), BigFloat::from_int_with(1, prec));
        }
        let mag = self.magnitude_exp().unwrap().max(0) as u32;
        let w = prec + GUARD + mag;
        let x = self.with_prec(w);
        let half_pi = BigFloat::pi(w).mul_pow2(-1);
        let q = (&x / &half_pi).round_to_int();
        let r = &x - &half_pi * BigFloat::from_int_with(q.clone(), w);
        let quadrant = q.mod_floor_i64(4);
        let r2 = &r * &r;
        let eps_exp = -(w as i64) - 4;
        let mut s = r.clone();
        let mut term = r.clone();
        let mut n = 1i64;
        loop {
            term = -(&term * &r2) / BigFloat::from_int_with((n + 1) * (n + 2), w);
            n += 2;
            s = &s + &term;
            match term.magnitude_exp() {
                Some(t) if t > eps_exp => {}
                _ => break,
            }
        }
        let mut c = BigFloat::from_int_with(1, w);
        let mut term = c.clone();
        let mut n = 0i64;
        loop {
            term = -(&term * &r2) / BigFloat::from_int_with((n + 1) * (n + 2), w);
            n += 2;
            c = &c + &term;
            match term.magnitude_exp() {
                Some(t) if t > eps_exp => {}
                _ => break,
            }
        }
        let (s, c) = match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (s.with_prec(prec), c.with_prec(prec))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn powf(&self, e: &Self) -> Self {
        if e.mant.is_zero() {
            return BigFloat::from_int_with(1, self.prec.max(e.prec));
        }
        if self.mant.is_zero() {
            return self.clone();
        }
        let w = self.prec.max(e.prec) + GUARD;
        (e.with_prec(w) * self.with_prec(w).ln()).exp().with_prec(self.prec.max(e.prec))
    }

    /// Unit roundoff `2^(1-prec)` at this value's precision.
    pub fn ulp_one(prec: u32) -> Self {
        BigFloat::raw(BigInt::one(), 1 - prec as i64, prec)
    }
}

trait ModFloorI64 {
    fn mod_floor_i64(&self, m: i64) -> i64;
}

impl ModFloorI64 for BigInt {
    fn mod_floor_i64(&self, m: i64) -> i64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(m)).to_i64().unwrap()
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn ldexp(m: f64, e: i64) -> f64 {
    let mut m = m;
    let mut e = e;
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
        if m.is_infinite() {
            return m;
        }
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
        if m == 0.0 {
            return m;
        }
    }
    m * 2f64.powi(e as i32)
}

fn cached(id: u8, prec: u32, f: impl FnOnce() -> BigFloat) -> BigFloat {
    if let Some(v) = CONSTANTS.with(|c| c.borrow().get(&(id, prec)).cloned()) {
        return v;
    }
    let v = f();
    CONSTANTS.with(|c| c.borrow_mut().insert((id, prec), v.clone()));
    v
}

/// `atan(1/n)` by its Taylor series.
fn atan_recip(n: i64, w: u32) -> BigFloat {
    let x = BigFloat::from_int_with(1, w) / BigFloat::from_int_with(n, w);
    let x2 = &x * &x;
    let mut pow = x.clone();
    let mut sum = x;
    let eps_exp = -(w as i64) - 4;
    let mut k = 1i64;
    loop {
        pow = -(&pow * &x2);
        k += 2;
        let term = &pow / BigFloat::from_int_with(k, w);
        sum = &sum + &term;
        match term.magnitude_exp() {
            Some(t) if t > eps_exp => {}
            _ => break,
        }
    }
    sum
}

/// `atanh(1/n)` by its Taylor series.
fn atanh_recip(n: i64, w: u32) -> BigFloat {
    let x = BigFloat::from_int_with(1, w) / BigFloat::from_int_with(n, w);
    let x2 = &x * &x;
    let mut pow = x.clone();
    let mut sum = x;
    let eps_exp = -(w as i64) - 4;
    let mut k = 1i64;
    loop {
        pow = &pow * &x2;
        k += 2;
        let term = &pow / BigFloat::from_int_with(k, w);
        sum = &sum + &term;
        match term.magnitude_exp() {
            Some(t) if t > eps_exp => {}
            _ => break,
        }
    }
    sum
}

fn add_impl(a: &BigFloat, b: &BigFloat, negate_b: bool) -> BigFloat {
    let prec = a.prec.max(b.prec);
    let bm = if negate_b { -&b.mant } else { b.mant.clone() };
    if b.mant.is_zero() {
        return a.with_prec(prec);
    }
    if a.mant.is_zero() {
        return BigFloat::raw(bm, b.exp, prec);
    }
    let ta = a.magnitude_exp().unwrap();
    let tb = b.magnitude_exp().unwrap();
    // an operand below the rounding position of the other cannot change it
    let gap = prec as i64 + 4;
    if ta - tb > gap {
        return a.with_prec(prec);
    }
    if tb - ta > gap {
        return BigFloat::raw(bm, b.exp, prec);
    }
    let e = a.exp.min(b.exp);
    let am = &a.mant << (a.exp - e) as usize;
    let bm = bm << (b.exp - e) as usize;
    BigFloat::raw(am + bm, e, prec)
}

fn mul_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    BigFloat::raw(&a.mant * &b.mant, a.exp + b.exp, a.prec.max(b.prec))
}

fn div_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    assert!(!b.mant.is_zero(), "BigFloat division by zero");
    let prec = a.prec.max(b.prec);
    if a.mant.is_zero() {
        return BigFloat::zero_with(prec);
    }
    let want = prec as i64 + 3 + b.mant.bits() as i64 - a.mant.bits() as i64;
    let shift = want.max(0);
    let num = &a.mant << shift as usize;
    let q = &num / &b.mant;
    // sticky bit so that rounding sees an inexact quotient
    let exact = (&q * &b.mant) == num;
    let (q, extra) = if exact { (q, 0) } else { { let s = q.signum(); ((q << 1usize) + s, 1) } };
    BigFloat::raw(q, a.exp - shift - b.exp - extra, prec)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                $f(self, rhs)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                $f(&self, &rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                $f(&self, rhs)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);
forward_binop!(Rem, rem, |a: &BigFloat, b: &BigFloat| {
    let q = BigFloat::from_int_with((a / b).floor_toward_zero(), a.prec.max(b.prec));
    a - &(q * b)
});

impl BigFloat {
    fn floor_toward_zero(&self) -> BigInt {
        if self.is_negative() {
            -(self.abs().floor_to_int())
        } else {
            self.floor_to_int()
        }
    }
}

impl AddAssign<&BigFloat> for BigFloat {
    fn add_assign(&mut self, rhs: &BigFloat) {
        *self = add_impl(self, rhs, false);
    }
}
impl SubAssign<&BigFloat> for BigFloat {
    fn sub_assign(&mut self, rhs: &BigFloat) {
        *self = add_impl(self, rhs, true);
    }
}
impl MulAssign<&BigFloat> for BigFloat {
    fn mul_assign(&mut self, rhs: &BigFloat) {
        *self = mul_impl(self, rhs);
    }
}
impl DivAssign<&BigFloat> for BigFloat {
    fn div_assign(&mut self, rhs: &BigFloat) {
        *self = div_impl(self, rhs);
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat::zero_with(working_precision())
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat::from_int_with(1, working_precision())
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        parse_rat(s)
            .map(|(r, _)| BigFloat::from_rat(&r))
            .ok_or_else(|| format!("invalid number literal {s:?}"))
    }
}

impl Ring for BigFloat {
    fn from_i64(n: i64) -> Self {
        BigFloat::from_int(n)
    }
}

impl Coeff for BigFloat {
    fn from_rat(r: &Rat) -> Self {
        BigFloat::from_rat(r)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self.to_decimal_string(30))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * 0.30103) as usize);
        write!(f, "{}", self.to_decimal_string(digits.max(1)))
    }
}

impl BigFloat {
    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let r = self.to_rat();
        let neg = r.is_negative();
        let r = r.abs();
        let ten = Rat::from_integer(BigInt::from(10));
        let mut e10 = (self.magnitude_exp().unwrap() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scale = |e: i64| -> Rat {
            if e >= 0 {
                num_traits::pow(ten.clone(), e as usize)
            } else {
                num_traits::pow(ten.clone(), (-e) as usize).recip()
            }
        };
        while r >= scale(e10 + 1) {
            e10 += 1;
        }
        while r < scale(e10) {
            e10 -= 1;
        }
        let scaled = &r / scale(e10 - digits as i64 + 1);
        let mut n = (scaled + Rat::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        if n.to_string().len() > digits {
            n /= 10;
            e10 += 1;
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::rat;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64_with(x, 192)
    }

    fn close(a: &BigFloat, b: &BigFloat, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn rounding_and_exact_roundtrip() {
        let x = bf(0.1);
        assert_eq!(x.to_f64(), 0.1);
        let third = BigFloat::from_rat_with(&rat(1, 3), 192);
        let back = &third * &BigFloat::from_int_with(3, 192);
        assert!(close(&back, &bf(1.0), 1e-55));
    }

    #[test]
    fn constants_match_known_digits() {
        let pi = BigFloat::pi(192);
        assert!(pi.to_decimal_string(40).starts_with("3.14159265358979323846264338327950288419"));
        let ln2 = BigFloat::ln2(192);
        assert!(ln2.to_decimal_string(40).starts_with("6.93147180559945309417232121458176568075"));
    }

    #[test]
    fn exp_ln_inverse() {
        for &x in &[-30.5, -1.0, 0.25, 1.0, 7.75, 100.0] {
            let v = bf(x);
            let back = v.exp().ln();
            assert!(close(&back, &v, 1e-50), "x = {x}");
        }
        let e = bf(1.0).exp();
        assert!(e.to_decimal_string(40).starts_with("2.71828182845904523536028747135266249775"));
    }

    #[test]
    fn trig_identities() {
        for &x in &[-10.0, -0.3, 0.0, 0.7, 2.5, 1000.0] {
            let (s, c) = bf(x).sin_cos();
            let one = &s * &s + &c * &c;
            assert!(close(&one, &bf(1.0), 1e-50));
            assert!((s.to_f64() - x.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn sqrt_and_ordering() {
        let two = bf(2.0);
        let r = two.sqrt();
        assert!(close(&(&r * &r), &two, 1e-55));
        assert!(bf(-1.0) < bf(0.5));
        assert!(bf(3.0) > bf(2.9999));
        assert_eq!(bf(0.5), BigFloat::from_rat_with(&rat(1, 2), 128));
    }

    #[test]
    fn decimal_parse_and_display() {
        let x: BigFloat = Num::from_str_radix("1.5e-3", 10).unwrap();
        assert_eq!(x.to_decimal_string(5), "1.5e-3");
        assert_eq!(bf(-250.0).to_decimal_string(6), "-2.5e2");
    }

    #[test]
    fn tiny_addend_still_rounds() {
        let big = bf(1.0);
        let tiny = bf(1e-300);
        assert!(&big + &tiny >= big);
        assert_eq!((&big - &big), BigFloat::zero_with(192));
    }
}
