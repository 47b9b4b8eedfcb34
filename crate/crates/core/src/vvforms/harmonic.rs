use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::scalars::complex::{cexp, cx, Cx};
use crate::scalars::rat::{binom_rat, frac, rat, rat_int, rat_pow, Coeff, Rat};
use crate::scalars::real::{Real, RealValue};
use crate::scalars::surd::Radical;
use crate::specfun::inc_gamma;
use crate::weilrep::DiscriminantForm;

use super::qseries::{QSeries, Symbolic, VVQExpansion};

/// Scale σ of the incomplete-gamma argument Γ(1 − k, σ|n|v) in the
/// non-holomorphic part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgScale {
    TwoPi,
    FourPi,
}

/// A harmonic Maass form of weight `k` for ρ_L (or its dual):
/// f = Σ c⁺(n, μ) qⁿ e_μ + Σ_{n<0} c⁻(n, μ) Γ(1 − k, σ|n|v) qⁿ e_μ.
///
/// `nonholomorphic` stores c⁻(−n, μ) at exponent n > 0, so its truncation
/// order bounds |n| from above.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicFormModel<C> {
    pub level: u64,
    pub weight: Rat,
    pub dual: bool,
    pub holomorphic: QSeries<C>,
    pub nonholomorphic: QSeries<C>,
    pub scale: ArgScale,
}

impl<C: Coeff> HarmonicFormModel<C> {
    pub fn new(
        level: u64,
        weight: Rat,
        dual: bool,
        holomorphic: QSeries<C>,
        nonholomorphic: QSeries<C>,
        scale: ArgScale,
    ) -> Result<Self> {
        VVQExpansion::new(level, dual, holomorphic.clone())?;
        let reflected = QSeries::from_terms(None, nonholomorphic.iter().map(|(e, i, c)| (-e.clone(), *i, c.clone())));
        VVQExpansion::new(level, dual, reflected)?;
        if nonholomorphic.iter().any(|(e, _, _)| e <= &Rat::zero()) {
            return domain("non-holomorphic coefficients must have |n| > 0");
        }
        Ok(HarmonicFormModel { level, weight, dual, holomorphic, nonholomorphic, scale })
    }

    /// A weakly holomorphic form: no non-holomorphic part.
    pub fn weakly_holomorphic(level: u64, weight: Rat, dual: bool, holomorphic: QSeries<C>) -> Result<Self> {
        Self::new(level, weight, dual, holomorphic, QSeries::exact(), ArgScale::FourPi)
    }

    pub fn is_weakly_holomorphic(&self) -> bool {
        self.nonholomorphic.is_empty()
    }

    /// Σ_{n ≤ 0} c⁺(n, μ) qⁿ e_μ.
    pub fn principal_part(&self) -> Result<QSeries<C>> {
        self.holomorphic.principal_part()
    }
}

impl<C: Coeff + RealValue> HarmonicFormModel<C> {
    /// Numerical value of component `mu` at `tau`.
    pub fn eval_component<T: Real>(&self, mu: usize, tau: &Cx<T>) -> Result<Cx<T>> {
        let v = tau.im.clone();
        if v <= T::zero() {
            return domain("tau must lie in the upper half plane");
        }
        let mut acc = cx(T::zero(), T::zero());
        for (e, i, c) in self.holomorphic.iter() {
            if *i == mu {
                acc = acc + q_power(e, tau) * cx(c.to_real::<T>(), T::zero());
            }
        }
        let sigma = match self.scale {
            ArgScale::TwoPi => T::pi() * T::from_i64(2),
            ArgScale::FourPi => T::pi() * T::from_i64(4),
        };
        let a = T::one() - T::from_rat(&self.weight);
        for (e, i, c) in self.nonholomorphic.iter() {
            if *i == mu {
                let x = sigma.clone() * T::from_rat(e) * v.clone();
                let g = inc_gamma(&a, &x)?;
                acc = acc + q_power(&-e.clone(), tau) * cx(c.to_real::<T>() * g, T::zero());
            }
        }
        Ok(acc)
    }
}

/// q^e = exp(2πieτ).
pub fn q_power<T: Real>(e: &Rat, tau: &Cx<T>) -> Cx<T> {
    let t = T::pi() * T::from_i64(2) * T::from_rat(e);
    cexp(&cx(-(t.clone() * tau.im.clone()), t * tau.re.clone()))
}

/// A cusp form, scalar (component 0 only, integral exponents) or vector-valued.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspFormExpansion<C> {
    pub level: u64,
    pub weight: Rat,
    pub dual: bool,
    pub vector_valued: bool,
    pub series: QSeries<C>,
}

impl<C: Coeff> CuspFormExpansion<C> {
    /// A scalar cusp form Σ_{n ≥ 1} a(n) qⁿ known for n < `bound`.
    pub fn scalar(level: u64, weight: Rat, coeffs: &BTreeMap<u64, C>, bound: u64) -> Result<Self> {
        let mut series = QSeries::with_prec(rat_int(bound as i64));
        for (n, a) in coeffs {
            if *n == 0 {
                return domain("cusp forms have no constant term");
            }
            series.add_term(rat_int(*n as i64), 0, a.clone());
        }
        Ok(CuspFormExpansion { level, weight, dual: false, vector_valued: false, series })
    }

    /// a(n) for a scalar form; `None` beyond the truncation.
    pub fn a(&self, n: u64) -> Option<C> {
        self.series.coeff(&rat_int(n as i64), &0)
    }

    /// Highest n with a(n) known.
    pub fn known_up_to(&self) -> Option<u64> {
        self.series.prec().map(|p| {
            let f = p.ceil().to_integer() - num_bigint::BigInt::one();
            u64::try_from(f).unwrap_or(0)
        })
    }

    pub fn is_cuspidal(&self) -> bool {
        self.series.iter().all(|(e, _, _)| e > &Rat::zero())
    }
}

/// ξ_k applied to a harmonic form: the cusp form of weight 2 − k for the
/// conjugate representation, with a global factor π^{pi_power} kept symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct XiImage {
    pub form: CuspFormExpansion<Radical>,
    pub pi_power: Rat,
}

/// The constant K in ξ_k(c⁻ Γ(1−k, σ|n|v) q^{−n}) = K · conj(c⁻) qⁿ.
///
/// For σ = 4π, K = −(4πn)^{1−k}. For σ = 2π the image is not holomorphic,
/// which is reported as a domain error.
pub fn xi_constant(k: &Rat, n: &Rat, scale: ArgScale) -> Result<Symbolic<Radical>> {
    if scale == ArgScale::TwoPi {
        return domain("with argument scale 2π the image under ξ is not holomorphic");
    }
    if n <= &Rat::zero() {
        return domain("ξ constant needs n > 0");
    }
    let e = Rat::one() - k;
    let two_e = &e * rat_int(2);
    if !two_e.denom().is_one() {
        return domain("weight must lie in (1/2)Z");
    }
    let ex: i64 = two_e.numer().try_into().map_err(|_| crate::error::Error::Domain("weight too large".into()))?;
    let mag = Radical::half_power(&(n * rat_int(4)), ex)?;
    Ok(Symbolic::new(-mag, e, 0))
}

/// Applies ξ_k = 2i v^k conj(∂/∂τ̄) to the non-holomorphic part.
pub fn xi_apply(f: &HarmonicFormModel<Radical>) -> Result<XiImage> {
    let mut series = QSeries::new(f.nonholomorphic.prec().cloned());
    let mut pi_power = Rat::one() - &f.weight;
    for (n, mu, c) in f.nonholomorphic.iter() {
        let k = xi_constant(&f.weight, n, f.scale)?;
        pi_power = k.pi_pow.clone();
        series.add_term(n.clone(), *mu, k.coeff * c.conj());
    }
    let form = CuspFormExpansion {
        level: f.level,
        weight: rat_int(2) - &f.weight,
        dual: !f.dual,
        vector_valued: true,
        series,
    };
    Ok(XiImage { form, pi_power })
}

/// Coefficients of R_k^j f = Σ c(n, μ, m) v^{−m} qⁿ e_μ for holomorphic
/// f = Σ c(n, μ) qⁿ e_μ of weight `k`, where R^j = R_{k+2j−2} ∘ ⋯ ∘ R_k and
/// R_w = 2i ∂_τ + w/v:
///
/// c(n, μ, m) = (−4πn)^{j−m} binom(j, m) Π_{s=1}^{m} (k + j − s) · c(n, μ).
///
/// The power π^{j−m} is kept symbolic.
pub fn raising_coeffs<C: Coeff>(
    f: &QSeries<C>,
    k: &Rat,
    j: u32,
) -> Result<BTreeMap<(Rat, usize, u32), Symbolic<C>>> {
    let mut out = BTreeMap::new();
    for (n, mu, c) in f.iter() {
        for m in 0..=j {
            let mut w = binom_rat(&rat_int(j as i64), m as u64);
            for s in 1..=m {
                w *= k + rat_int(j as i64 - s as i64);
            }
            w *= rat_pow(&(n * rat_int(-4)), (j - m) as i32);
            if w.is_zero() {
                continue;
            }
            let coeff = c.clone() * C::from_rat(&w);
            out.insert((n.clone(), *mu, m), Symbolic::new(coeff, rat_int((j - m) as i64), 0));
        }
    }
    Ok(out)
}

/// Evaluates a raising table at `tau` for component `mu`.
pub fn eval_raising_table<C: Coeff + RealValue, T: Real>(
    table: &BTreeMap<(Rat, usize, u32), Symbolic<C>>,
    mu: usize,
    tau: &Cx<T>,
) -> Cx<T> {
    let v = tau.im.clone();
    let mut acc = cx(T::zero(), T::zero());
    for ((n, i, m), s) in table {
        if *i != mu {
            continue;
        }
        let pi_pow = T::pi().powf(&T::from_rat(&s.pi_pow));
        let scale = s.coeff.to_real::<T>() * pi_pow * v.powi(-(*m as i64));
        acc = acc + q_power(n, tau) * cx(scale, T::zero());
    }
    acc
}

/// Principal part q^{−m}(e_μ + ε e_{−μ}) of the Poincaré-type form F_{m,μ}
/// of weight `k`, where ε is fixed by the action of Z: ε = i^{2k−1} for the
/// dual representation and ε = i^{2k+1} for ρ_L.
pub fn poincare_principal_part(level: u64, weight: &Rat, dual: bool, m: &Rat, mu: usize) -> Result<QSeries<Rat>> {
    let df = DiscriminantForm::new(level)?;
    if mu >= df.size() {
        return domain(format!("component {mu} outside Z/{}Z", df.size()));
    }
    if m <= &Rat::zero() {
        return domain("principal part needs m > 0");
    }
    let q = df.q(mu as i64);
    let target = if dual { -q } else { q };
    if !frac(&(-m.clone() - target)).is_zero() {
        return domain(format!("q^(-{m}) is not on the grid of component {mu}"));
    }
    let eps = z_sign(weight, dual)?;
    let mut s = QSeries::exact();
    s.add_term(-m.clone(), mu, Rat::one());
    s.add_term(-m.clone(), df.neg(mu), rat_int(eps));
    Ok(s)
}

/// The sign ε with f_{−μ} = ε f_μ forced by Z-invariance in weight `k`.
pub fn z_sign(weight: &Rat, dual: bool) -> Result<i64> {
    let two_k = weight * rat_int(2);
    if !two_k.denom().is_one() {
        return domain("weight must lie in (1/2)Z");
    }
    let e = if dual { &two_k - Rat::one() } else { &two_k + Rat::one() };
    let e: i64 = e.numer().try_into().map_err(|_| crate::error::Error::Domain("weight too large".into()))?;
    match e.rem_euclid(4) {
        0 => Ok(1),
        2 => Ok(-1),
        _ => domain(format!("weight {weight} does not match the representation's parity")),
    }
}

/// Half-integral weight 3/2 − κ used for the input forms.
pub fn input_weight(kappa: u32) -> Rat {
    rat(3, 2) - rat_int(kappa as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_constant_examples() {
        let k = xi_constant(&rat(-1, 2), &Rat::one(), ArgScale::FourPi).unwrap();
        assert_eq!(k.coeff, Radical::from_int(-8));
        assert_eq!(k.pi_pow, rat(3, 2));
        assert!(xi_constant(&rat(-1, 2), &Rat::one(), ArgScale::TwoPi).is_err());
    }

    #[test]
    fn raising_first_column() {
        let f = QSeries::from_terms(None, [(rat(3, 4), 1usize, rat_int(2))]);
        let t = raising_coeffs(&f, &rat(1, 2), 2).unwrap();
        // m = 0: (−4π·3/4)²·2 = 18π²
        let c0 = &t[&(rat(3, 4), 1, 0)];
        assert_eq!(c0.coeff, rat_int(18));
        assert_eq!(c0.pi_pow, rat_int(2));
        // m = 2: k(k+1)·c = (1/2)(3/2)·2
        assert_eq!(t[&(rat(3, 4), 1, 2)].coeff, rat(3, 2));
    }

    #[test]
    fn z_signs() {
        // weight 1/2 − 1 = −1/2, dual: i^{−2} = −1
        assert_eq!(z_sign(&rat(-1, 2), true).unwrap(), -1);
        assert_eq!(z_sign(&rat(1, 2), true).unwrap(), 1);
        assert!(z_sign(&rat_int(1), true).is_err());
    }

    #[test]
    fn poincare_grid() {
        // N = 1, μ = 1: −q(1) = 1/4, so m must be ≡ 3/4
        let p = poincare_principal_part(1, &rat(1, 2), true, &rat(3, 4), 1).unwrap();
        assert_eq!(p.coeff(&rat(-3, 4), &1), Some(rat_int(2)));
        assert!(poincare_principal_part(1, &rat(1, 2), true, &rat(1, 4), 1).is_err());
    }
}
