use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::scalars::rat::{binom_rat, binomial_int, factorial, rat_int, Coeff, Rat};

/// Polynomial with rational coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// Horner evaluation in any coefficient ring containing Q.
    pub fn eval<C: Coeff>(&self, x: &C) -> C {
        let mut acc = C::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x.clone() + C::from_rat(a);
        }
        acc
    }
}

impl<'a> Add for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl<'a> Neg for &'a RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl<'a> Mul for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::default();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `P_n(x) = (1 / (2^n n!)) dⁿ/dxⁿ (x² − 1)ⁿ`.
pub fn legendre_rodrigues(n: u32) -> RatPoly {
    let base = RatPoly::new(vec![rat_int(-1), Rat::zero(), Rat::one()]);
    let mut p = base.pow(n);
    for _ in 0..n {
        p = p.derivative();
    }
    let denom = (BigInt::one() << n as usize) * factorial(n as u64);
    p.scale(&Rat::new(BigInt::one(), denom))
}

/// `β_n(x) = Σ_{s=0}^{⌊n/2⌋} n! / (2^{2s} (n−2s)! (s!)²) x^{n−2s} (x² − 1)^s`.
pub fn legendre_beta(n: u32) -> RatPoly {
    let x2m1 = RatPoly::new(vec![rat_int(-1), Rat::zero(), Rat::one()]);
    let mut out = RatPoly::default();
    for s in 0..=n / 2 {
        let num = factorial(n as u64);
        let den = (BigInt::one() << (2 * s) as usize)
            * factorial((n - 2 * s) as u64)
            * factorial(s as u64).pow(2);
        let term = &RatPoly::x().pow(n - 2 * s) * &x2m1.pow(s);
        out = &out + &term.scale(&Rat::new(num, den));
    }
    out
}

/// Checks Σ P_n(x) tⁿ against the binomial expansion of (1 − 2xt + t²)^(−1/2).
///
/// Both sides are expanded as polynomials in `t` through `order`; the result is
/// Σ |a_n − b_n| |t|ⁿ over their coefficients, which is exactly zero iff every
/// coefficient agrees.
pub fn legendre_genfun_check(x: &Rat, t: &Rat, order: u32) -> Result<Rat> {
    let two = rat_int(2);
    let radicand = Rat::one() - &two * x * t + t * t;
    if !radicand.is_positive() {
        return domain("generating function radicand 1 - 2xt + t^2 is not positive");
    }
    let lhs: Vec<Rat> = (0..=order).map(|n| legendre_rodrigues(n).eval(x)).collect();
    // u = 2xt − t² as a polynomial in t, then Σ_k binom(2k, k)/4^k u^k
    let u = RatPoly::new(vec![Rat::zero(), &two * x, rat_int(-1)]);
    let mut rhs = RatPoly::default();
    let mut upow = RatPoly::constant(Rat::one());
    for k in 0..=order {
        let c = Rat::new(binomial_int(2 * k as u64, k as u64), BigInt::from(4).pow(k));
        rhs = &rhs + &upow.scale(&c);
        upow = truncate(&(&upow * &u), order as usize);
    }
    let mut residual = Rat::zero();
    let mut tp = Rat::one();
    for n in 0..=order as usize {
        residual += (&lhs[n] - rhs.coeff(n)).abs() * &tp;
        tp *= t.abs();
    }
    Ok(residual)
}

fn truncate(p: &RatPoly, deg: usize) -> RatPoly {
    RatPoly::new(p.coeffs().iter().take(deg + 1).cloned().collect())
}

/// `top (top − 1) ⋯ (top − s + 1) / s!` for `top ∈ ½Z`.
pub fn half_binom(top: &Rat, s: i64) -> Result<Rat> {
    if s < 0 {
        return domain("negative lower index in binomial");
    }
    if !(top * rat_int(2)).denom().is_one() {
        return domain(format!("binomial top {top} is not a half-integer"));
    }
    Ok(binom_rat(top, s as u64))
}
