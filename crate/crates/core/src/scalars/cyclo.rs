//! Elements of the cyclotomic field Q(ζ_M), ζ_M = e(1/M), with coefficients in
//! any [`Ring`].
//!
//! Canonical form: coefficients of 1, ζ, …, ζ^(φ(M)−1) after reduction modulo
//! the M-th cyclotomic polynomial Φ_M. Since Φ_M is monic with integer
//! coefficients the reduction never leaves the coefficient ring, and two
//! elements of the same order are equal iff their canonical vectors agree.
//! Elements of different orders are compared after lifting to the lcm.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::bigfloat::BigFloat;
use super::rat::{Coeff, Rat, Ring, ToRat};
use super::real::Real;
use crate::error::{domain, Result};

struct Table {
    phi: usize,
    /// `reduce[k]` holds x^k mod Φ_M for 0 <= k < M.
    reduce: Vec<Vec<i64>>,
}

fn table(m: u64) -> Arc<Table> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&m) {
        return t.clone();
    }
    let t = Arc::new(build_table(m));
    cache.lock().unwrap().insert(m, t.clone());
    t
}

/// Φ_M as ascending integer coefficients, from x^M − 1 = Π_{d|M} Φ_d.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

fn build_table(m: u64) -> Table {
    let phi_poly = cyclotomic_poly(m);
    let phi = phi_poly.len() - 1;
    let mut reduce = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!("Φ_M has positive degree");
    }
    for _ in 0..m {
        reduce.push(cur.clone());
        // multiply by x and fold the degree-phi term back through Φ_M
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    Table { phi, reduce }
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

/// Accumulates Σ c_k ζ^k in the group ring Z/M before a single reduction.
pub struct GroupAccumulator<T> {
    order: u64,
    buf: Vec<T>,
}

impl<T: Ring> GroupAccumulator<T> {
    pub fn new(order: u64) -> Self {
        GroupAccumulator { order, buf: vec![T::zero(); order as usize] }
    }

    pub fn add_term(&mut self, k: i64, c: T) {
        let idx = k.rem_euclid(self.order as i64) as usize;
        let cur = std::mem::replace(&mut self.buf[idx], T::zero());
        self.buf[idx] = cur + c;
    }

    /// Adds `a * b`; both must already have this accumulator's order.
    pub fn add_product(&mut self, a: &Cyclo<T>, b: &Cyclo<T>) {
        debug_assert!(a.order == self.order && b.order == self.order);
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                self.add_term((i + j) as i64, ai.clone() * bj.clone());
            }
        }
    }

    pub fn add(&mut self, a: &Cyclo<T>) {
        debug_assert!(a.order == self.order);
        for (i, ai) in a.coeffs.iter().enumerate() {
            if !ai.is_zero() {
                self.add_term(i as i64, ai.clone());
            }
        }
    }

    pub fn finish(self) -> Cyclo<T> {
        let t = table(self.order);
        let mut coeffs = vec![T::zero(); t.phi];
        for (k, c) in self.buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < t.phi {
                let cur = std::mem::replace(&mut coeffs[k], T::zero());
                coeffs[k] = cur + c;
                continue;
            }
            for (j, &r) in t.reduce[k].iter().enumerate() {
                if r != 0 {
                    let cur = std::mem::replace(&mut coeffs[j], T::zero());
                    coeffs[j] = cur + T::from_i64(r) * c.clone();
                }
            }
        }
        Cyclo { order: self.order, coeffs }
    }
}

/// Element of Q(ζ_M) (or its analogue over another coefficient ring).
#[derive(Clone, Debug)]
pub struct Cyclo<T> {
    order: u64,
    coeffs: Vec<T>,
}

impl<T: Ring> Cyclo<T> {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical coefficients of 1, ζ, …, ζ^(φ(M)−1).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn scalar(c: T) -> Self {
        Cyclo { order: 1, coeffs: vec![c] }
    }

    /// `c · e(k/M)`.
    pub fn monomial(c: T, k: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return domain("root of unity of order 0");
        }
        let mut acc = GroupAccumulator::new(m);
        acc.add_term(k, c);
        Ok(acc.finish())
    }

    pub fn root_of_unity(k: i64, m: u64) -> Result<Self> {
        Self::monomial(T::one(), k, m)
    }

    /// `Σ coeffs[k] e(k/M)` for an arbitrary finitely supported map.
    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (i64, T)>) -> Result<Self> {
        if m == 0 {
            return domain("root of unity of order 0");
        }
        let mut acc = GroupAccumulator::new(m);
        for (k, c) in terms {
            acc.add_term(k, c);
        }
        Ok(acc.finish())
    }

    /// The same number written over Q(ζ_L); requires M | L.
    pub fn lift(&self, l: u64) -> Self {
        assert!(l % self.order == 0, "cannot lift order {} to {l}", self.order);
        if l == self.order {
            return self.clone();
        }
        let step = (l / self.order) as i64;
        let mut acc = GroupAccumulator::new(l);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.add_term(i as i64 * step, c.clone());
            }
        }
        acc.finish()
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    /// Complex conjugate, ζ ↦ ζ^(−1).
    pub fn conj(&self) -> Self {
        let mut acc = GroupAccumulator::new(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.add_term(-(i as i64), c.clone());
            }
        }
        acc.finish()
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn is_rational_scalar(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<T: ToRat> Cyclo<T> {
    /// Numerical value `(re, im)` in any [`Real`] backend.
    pub fn to_complex<R: Real>(&self) -> (R, R) {
        let mut re = R::zero();
        let mut im = R::zero();
        let two_pi = R::pi() * R::from_i64(2);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = two_pi.clone() * R::from_i64(k as i64) / R::from_i64(self.order as i64);
            let cr = R::from_rat(&c.to_rat());
            re = re + cr.clone() * theta.cos();
            im = im + cr * theta.sin();
        }
        (re, im)
    }

    pub fn map_rat(&self) -> Cyclo<Rat> {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c.to_rat()).collect() }
    }
}

/// `x` evaluated with `precision` bits; error below 2^(−precision+4) for
/// coefficient sums of moderate size.
pub fn cyclo_to_bigfloat<T: ToRat>(x: &Cyclo<T>, precision: u32) -> (BigFloat, BigFloat) {
    super::bigfloat::with_precision(precision + 16, || {
        let (re, im): (BigFloat, BigFloat) = x.to_complex();
        (re.with_prec(precision), im.with_prec(precision))
    })
}

pub fn cyclo_root_of_unity(k: i64, m: u64) -> Result<Cyclo<Rat>> {
    Cyclo::root_of_unity(k, m)
}

impl<T: Ring> PartialEq for Cyclo<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl<T: Ring> Add for Cyclo<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = if self.order == rhs.order { (self, rhs) } else { Self::common(&self, &rhs) };
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect();
        Cyclo { order: a.order, coeffs }
    }
}

impl<T: Ring> Sub for Cyclo<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for Cyclo<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Ring> Mul for Cyclo<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = if self.order == rhs.order { (self, rhs) } else { Self::common(&self, &rhs) };
        let mut acc = GroupAccumulator::new(a.order);
        acc.add_product(&a, &b);
        acc.finish()
    }
}

impl<'a, T: Ring> Add for &'a Cyclo<T> {
    type Output = Cyclo<T>;
    fn add(self, rhs: Self) -> Cyclo<T> {
        self.clone() + rhs.clone()
    }
}

impl<'a, T: Ring> Sub for &'a Cyclo<T> {
    type Output = Cyclo<T>;
    fn sub(self, rhs: Self) -> Cyclo<T> {
        self.clone() - rhs.clone()
    }
}

impl<'a, T: Ring> Mul for &'a Cyclo<T> {
    type Output = Cyclo<T>;
    fn mul(self, rhs: Self) -> Cyclo<T> {
        self.clone() * rhs.clone()
    }
}

impl<T: Ring> Zero for Cyclo<T> {
    fn zero() -> Self {
        Self::scalar(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<T: Ring> One for Cyclo<T> {
    fn one() -> Self {
        Self::scalar(T::one())
    }
}

impl<T: Ring> Ring for Cyclo<T> {
    fn from_i64(n: i64) -> Self {
        Self::scalar(T::from_i64(n))
    }
}

impl Coeff for Cyclo<Rat> {
    fn from_rat(r: &Rat) -> Self {
        Self::scalar(r.clone())
    }
    fn conj(&self) -> Self {
        Cyclo::conj(self)
    }
}
