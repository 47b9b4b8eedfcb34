//! Complex helpers over any [`Real`] backend.

use num_complex::Complex;

use super::real::Real;

pub type Cx<T> = Complex<T>;

pub fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

pub fn cx_real<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

/// e(x) = exp(2πix).
pub fn e_of<T: Real>(x: &T) -> Cx<T> {
    let t = T::pi() * T::from_i64(2) * x.clone();
    Complex::new(t.cos(), t.sin())
}

pub fn cexp<T: Real>(z: &Cx<T>) -> Cx<T> {
    let r = z.re.exp();
    Complex::new(r.clone() * z.im.cos(), r * z.im.sin())
}

pub fn cabs<T: Real>(z: &Cx<T>) -> T {
    (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt()
}

/// Principal square root (branch cut on the negative real axis).
pub fn csqrt<T: Real>(z: &Cx<T>) -> Cx<T> {
    let r = cabs(z);
    let two = T::from_i64(2);
    let re = ((r.clone() + z.re.clone()) / two.clone()).sqrt();
    let mut im = ((r - z.re.clone()) / two).sqrt();
    if z.im < T::zero() {
        im = -im;
    }
    Complex::new(re, im)
}

/// zⁿ for any integer n.
pub fn cpowi<T: Real>(z: &Cx<T>, n: i64) -> Cx<T> {
    let mut base = if n < 0 { cinv(z) } else { z.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = Complex::new(T::one(), T::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

pub fn cinv<T: Real>(z: &Cx<T>) -> Cx<T> {
    let d = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
    Complex::new(z.re.clone() / d.clone(), -(z.im.clone()) / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_powers() {
        let z = cx(-3.0f64, 4.0);
        let s = csqrt(&z);
        assert!((s.re - 1.0).abs() < 1e-14 && (s.im - 2.0).abs() < 1e-14);
        let p = cpowi(&z, -2);
        let back = p * z * z;
        assert!((back.re - 1.0).abs() < 1e-14 && back.im.abs() < 1e-14);
        let e = e_of(&0.25f64);
        assert!(e.re.abs() < 1e-15 && (e.im - 1.0).abs() < 1e-15);
    }
}
