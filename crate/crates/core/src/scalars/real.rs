use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

use super::bigfloat::{working_precision, BigFloat};
use super::rat::{rat_to_f64, Rat};

/// Real scalars usable by the numerical routines: `f64` for quick checks,
/// [`BigFloat`] for certified high-precision work.
pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn to_f64(&self) -> f64;
    fn pi() -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn powi(&self, n: i64) -> Self;
    /// Relative spacing of representable values near one.
    fn epsilon() -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&super::rat::rat_int(n))
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_rat(r: &Rat) -> Self {
        rat_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn powi(&self, n: i64) -> Self {
        f64::powi(*self, n as i32)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Real for BigFloat {
    fn from_f64(x: f64) -> Self {
        BigFloat::from_f64_with(x, working_precision())
    }
    fn from_rat(r: &Rat) -> Self {
        BigFloat::from_rat(r)
    }
    fn to_f64(&self) -> f64 {
        BigFloat::to_f64(self)
    }
    fn pi() -> Self {
        BigFloat::pi(working_precision())
    }
    fn exp(&self) -> Self {
        BigFloat::exp(self)
    }
    fn ln(&self) -> Self {
        BigFloat::ln(self)
    }
    fn sqrt(&self) -> Self {
        BigFloat::sqrt(self)
    }
    fn sin(&self) -> Self {
        BigFloat::sin(self)
    }
    fn cos(&self) -> Self {
        BigFloat::cos(self)
    }
    fn abs(&self) -> Self {
        BigFloat::abs(self)
    }
    fn powf(&self, e: &Self) -> Self {
        BigFloat::powf(self, e)
    }
    fn powi(&self, n: i64) -> Self {
        BigFloat::powi(self, n)
    }
    fn epsilon() -> Self {
        BigFloat::ulp_one(working_precision())
    }
    fn from_i64(n: i64) -> Self {
        BigFloat::from_int(n)
    }
}

/// Exact or floating scalars with a real numerical value.
pub trait RealValue {
    fn to_real<T: Real>(&self) -> T;
}

impl RealValue for Rat {
    fn to_real<T: Real>(&self) -> T {
        T::from_rat(self)
    }
}

impl RealValue for f64 {
    fn to_real<T: Real>(&self) -> T {
        T::from_f64(*self)
    }
}

impl RealValue for i64 {
    fn to_real<T: Real>(&self) -> T {
        T::from_i64(*self)
    }
}

impl RealValue for BigFloat {
    fn to_real<T: Real>(&self) -> T {
        T::from_rat(&self.to_rat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_circle<T: Real>(x: f64) -> f64 {
        let t = T::from_f64(x);
        let s = t.sin();
        let c = t.cos();
        (s.clone() * s + c.clone() * c).to_f64()
    }

    #[test]
    fn generic_over_both_backends() {
        assert!((unit_circle::<f64>(0.3) - 1.0).abs() < 1e-15);
        assert!((unit_circle::<BigFloat>(0.3) - 1.0).abs() < 1e-15);
        assert!(<BigFloat as Real>::epsilon().to_f64() < 1e-55);
    }
}
