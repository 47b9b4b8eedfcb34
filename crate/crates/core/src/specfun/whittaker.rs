use crate::error::{domain, Error, Result};
use crate::scalars::rat::Rat;
use crate::scalars::real::Real;

use super::gamma::work_bits;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-12
}

/// Kummer's ₁F₁(a; b; z) by its power series, returning the value and the
/// number of terms summed.
///
/// Once n exceeds `2(|a| + |b| + |z|) + 2` the term ratio is below 1/2, so the
/// tail after the last summed term `t` is at most `2|t|`; summation stops when
/// that bound is below epsilon times the running sum (or after `max_terms`).
pub fn hyp1f1<T: Real>(a: &T, b: &T, z: &T, max_terms: Option<usize>) -> Result<(T, usize)> {
    if is_nonpositive_integer(b.to_f64()) {
        return domain("1F1 lower parameter is a non-positive integer");
    }
    let eps = T::epsilon();
    let ratio_start = 2.0 * (a.to_f64().abs() + b.to_f64().abs() + z.to_f64().abs()) + 2.0;
    let cap = max_terms.unwrap_or(usize::MAX);
    let mut term = T::one();
    let mut sum = T::one();
    let mut n = 0usize;
    while n < cap {
        let nf = T::from_i64(n as i64);
        term = term * (a.clone() + nf.clone()) * z.clone()
            / ((b.clone() + nf) * T::from_i64(n as i64 + 1));
        sum = sum + term.clone();
        n += 1;
        if (n as f64) > ratio_start
            && term.abs() * T::from_i64(2) < eps.clone() * sum.abs()
        {
            return Ok((sum, n + 1));
        }
        if term.is_zero() {
            return Ok((sum, n + 1));
        }
        if n > 1_000_000 {
            return Err(Error::Numeric("1F1 series did not converge".into()));
        }
    }
    Ok((sum, n + 1))
}

/// 𝓜_{s,k}(v) = v^{−k/2} M_{−k/2, s−1/2}(v) = v^{s−k/2} e^{−v/2} ₁F₁(s + k/2; 2s; v).
pub fn whittaker_m_script<T: Real>(s: &T, k: &T, v: &T) -> Result<T> {
    whittaker_m_script_truncated(s, k, v, None)
}

/// As [`whittaker_m_script`] with at most `terms` terms of the Kummer series.
pub fn whittaker_m_script_truncated<T: Real>(s: &T, k: &T, v: &T, terms: Option<usize>) -> Result<T> {
    if v.to_f64() <= 0.0 {
        return domain("Whittaker function requires v > 0");
    }
    let two = T::from_i64(2);
    let b = two.clone() * s.clone();
    if is_nonpositive_integer(b.to_f64()) {
        return domain("2s is a non-positive integer: Kummer series singular");
    }
    let a = s.clone() + k.clone() / two.clone();
    let (f, _) = hyp1f1(&a, &b, v, terms)?;
    let expo = (s.clone() - k.clone() / two.clone()) * v.ln() - v.clone() / two;
    Ok(expo.exp() * f)
}

type Cx<T> = (T, T);

fn cmul<T: Real>(a: &Cx<T>, b: &Cx<T>) -> Cx<T> {
    (
        a.0.clone() * b.0.clone() - a.1.clone() * b.1.clone(),
        a.0.clone() * b.1.clone() + a.1.clone() * b.0.clone(),
    )
}

/// e(x) = exp(2πix) as a complex pair.
pub fn e_of<T: Real>(x: &T) -> Cx<T> {
    let theta = T::pi() * T::from_i64(2) * x.clone();
    (theta.cos(), theta.sin())
}

/// Central difference with one Richardson step: error O(h⁴).
pub fn richardson_derivative<T: Real>(f: &dyn Fn(&T) -> Result<Cx<T>>, x: &T, h: &T) -> Result<Cx<T>> {
    let d = |h: &T| -> Result<Cx<T>> {
        let p = f(&(x.clone() + h.clone()))?;
        let m = f(&(x.clone() - h.clone()))?;
        let den = T::from_i64(2) * h.clone();
        Ok(((p.0 - m.0) / den.clone(), (p.1 - m.1) / den))
    };
    let d1 = d(h)?;
    let d2 = d(&(h.clone() / T::from_i64(2)))?;
    let three = T::from_i64(3);
    let four = T::from_i64(4);
    Ok((
        (four.clone() * d2.0 - d1.0) / three.clone(),
        (four * d2.1 - d1.1) / three,
    ))
}

/// A finite-difference step suited to `T`: ε^{1/5}·scale, the optimum for a
/// Richardson-extrapolated central difference.
pub fn fd_step<T: Real>(scale: &T) -> T {
    let bits = work_bits::<T>();
    let h = 2f64.powf(-bits / 5.0);
    T::from_f64(h) * scale.abs().max_with_one()
}

trait MaxOne {
    fn max_with_one(self) -> Self;
}

impl<T: Real> MaxOne for T {
    fn max_with_one(self) -> Self {
        if self < T::one() {
            T::one()
        } else {
            self
        }
    }
}

/// Residual of (1/(4πm)) R_{k−2}[𝓜_{s,k−2}(4πmv) e(−mu)] − 𝓜_{s,k}(4πmv) e(−mu).
///
/// R_{k−2} = 2i ∂_τ + (k−2)/v with ∂_τ = (∂_u − i∂_v)/2 is applied by central
/// differences in u and v with one Richardson step. The identity holds at
/// s = 2 − k/2; the returned value is the modulus of the complex residual.
pub fn raising_seed_check<T: Real>(m: &Rat, s: &T, k: &T, v: &T, u: &T) -> Result<T> {
    let mr = T::from_rat(m);
    let four_pi_m = T::pi() * T::from_i64(4) * mr.clone();
    let km2 = k.clone() - T::from_i64(2);
    let seed = |uu: &T, vv: &T| -> Result<Cx<T>> {
        let w = whittaker_m_script(s, &km2, &(four_pi_m.clone() * vv.clone()))?;
        let ph = e_of(&(-(mr.clone() * uu.clone())));
        Ok((w.clone() * ph.0, w * ph.1))
    };
    let h = fd_step(v) * v.clone().min_with(T::one());
    let du = richardson_derivative(&|uu: &T| seed(uu, v), u, &h)?;
    let dv = richardson_derivative(&|vv: &T| seed(u, vv), v, &h)?;
    let f0 = seed(u, v)?;
    // 2i∂_τ F = i F_u + F_v
    let i_du = cmul(&(T::zero(), T::one()), &du);
    let wt = km2 / v.clone();
    let raised = (
        i_du.0 + dv.0 + wt.clone() * f0.0,
        i_du.1 + dv.1 + wt * f0.1,
    );
    let lhs = (raised.0 / four_pi_m.clone(), raised.1 / four_pi_m.clone());
    let w = whittaker_m_script(s, k, &(four_pi_m * v.clone()))?;
    let ph = e_of(&(-(mr * u.clone())));
    let rhs = (w.clone() * ph.0, w * ph.1);
    let d0 = lhs.0 - rhs.0;
    let d1 = lhs.1 - rhs.1;
    Ok((d0.clone() * d0 + d1.clone() * d1).sqrt())
}

trait MinWith {
    fn min_with(self, o: Self) -> Self;
}

impl<T: Real> MinWith for T {
    fn min_with(self, o: Self) -> Self {
        if self < o {
            self
        } else {
            o
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::bigfloat::BigFloat;
    use crate::scalars::rat::rat;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64_with(x, 192)
    }

    #[test]
    fn sinh_special_case() {
        // s = 1, k = 0: v e^{-v/2} 1F1(1; 2; v) = e^{v/2} − e^{−v/2}
        for &v in &[0.1, 1.0, 3.7] {
            let w = whittaker_m_script(&bf(1.0), &bf(0.0), &bf(v)).unwrap();
            let expect = bf(v / 2.0).exp() - bf(-v / 2.0).exp();
            assert!((w - expect).abs().to_f64() < 1e-50);
        }
    }

    #[test]
    fn singular_parameters_rejected() {
        assert!(whittaker_m_script(&bf(0.0), &bf(1.0), &bf(1.0)).is_err());
        assert!(whittaker_m_script(&bf(-0.5), &bf(1.0), &bf(1.0)).is_err());
        assert!(whittaker_m_script(&bf(1.0), &bf(1.0), &bf(-1.0)).is_err());
    }

    #[test]
    fn truncation_orders_agree() {
        let (s, k, v) = (bf(1.25), bf(-0.5), bf(2.0));
        let a = whittaker_m_script_truncated(&s, &k, &v, Some(60)).unwrap();
        let b = whittaker_m_script_truncated(&s, &k, &v, Some(90)).unwrap();
        assert!((a - b).abs().to_f64() < 1e-20);
    }

    #[test]
    fn seed_identity_holds() {
        let k = bf(-0.5);
        let s = bf(2.0) - k.clone() / bf(2.0);
        let r = raising_seed_check(&rat(3, 4), &s, &k, &bf(0.9), &bf(0.3)).unwrap();
        assert!(r.to_f64() < 1e-8, "{r:?}");
    }
}
