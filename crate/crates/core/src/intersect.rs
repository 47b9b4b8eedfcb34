//! The finite intersection sum, the constant term CT_f computed both from
//! its closed form and directly from a Rankin–Cohen bracket, the
//! archimedean contribution and the assembled global height.

use std::collections::BTreeMap;

use num_integer::Roots;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::heegner::degree_zu;
use crate::kappa::{theta_p_expansions, KappaProvider, ProviderKind, SplitLattices};
use crate::scalars::rat::{gcd_i64, is_integer, rat, rat_int, Rat};
use crate::scalars::surd::Radical;
use crate::specfun::gamma::gamma_half_integer_over_sqrt_pi;
use crate::specfun::legendre::legendre_beta;
use crate::vvforms::ops::serre_pairing;
use crate::vvforms::ops::rankin_cohen;
use crate::vvforms::{z_sign, input_weight, QSeries, Symbolic};

/// D₁ = −4N m₁ for a principal-part term q^{−m₁} e_{μ₁}, after checking
/// D₁ ≡ μ₁² (mod 4N) and gcd(D₀, 2N·D₁) = 1.
pub fn check_coprime(level: u64, d0: i64, m1: &Rat, mu1: usize) -> Result<i64> {
    if m1 <= &Rat::zero() {
        return domain(format!("m1 = {m1} must be positive"));
    }
    let d1 = -(m1 * rat_int(4 * level as i64));
    if !is_integer(&d1) {
        return domain(format!("4N m1 = {} is not an integer", -d1));
    }
    let d1: i64 = d1.to_integer().try_into().map_err(|_| Error::Domain("D1 out of range".into()))?;
    let mu = mu1 as i64;
    if (d1 - mu * mu).rem_euclid(4 * level as i64) != 0 {
        return domain(format!("(m1, mu1) = ({m1}, {mu1}) is off the grid: D1 = {d1} is not mu1^2 mod 4N"));
    }
    let g = gcd_i64(d0, 2 * level as i64 * d1);
    if g != 1 {
        return Err(Error::Precondition(format!(
            "gcd(D0, 2N D1) = 1 is required, but gcd({d0}, {}) = {g}",
            2 * level as i64 * d1
        )));
    }
    Ok(d1)
}

fn check_provider(provider: &KappaProvider, level: u64, d0: i64, r0: i64) -> Result<()> {
    if provider.level != level || provider.d0 != d0 || provider.r0 != r0 {
        return domain(format!(
            "kappa table is for N={} D0={} r0={}, not N={level} D0={d0} r0={r0}",
            provider.level, provider.d0, provider.r0
        ));
    }
    Ok(())
}

fn check_kappa(kappa: u32) -> Result<()> {
    if kappa == 0 {
        return domain("κ must be at least 1");
    }
    Ok(())
}

/// S = Σ_{n ≡ r₁r₀ (2N), n² ≤ D₀D₁} κ((D₀D₁ − n²)/(4N|D₀|), ν(n)) P_{κ−1}(n/√(D₀D₁)).
fn legendre_kappa_sum(
    sl: &SplitLattices,
    kappa: u32,
    d1: i64,
    mu1: usize,
    provider: &KappaProvider,
) -> Result<Radical> {
    let two_n = 2 * sl.level as i64;
    let r1 = mu1 as i64 % two_n;
    let dd = sl.d0 * d1;
    let root = Radical::sqrt(&rat_int(dd))?;
    let inv_root = root.scale(&rat(1, dd));
    let poly = legendre_beta(kappa - 1);
    let denom = 4 * sl.level as i64 * sl.abs_d0();
    let top = dd.sqrt();
    let mut sum = Radical::zero();
    let mut missing = Vec::new();
    for n in -top..=top {
        if (n - r1 * sl.r0).rem_euclid(two_n) != 0 || n * n > dd {
            continue;
        }
        let n2 = rat(dd - n * n, denom);
        let nu = sl.nu_of(r1, n)?;
        let kv = match provider.get(&n2, nu) {
            Ok(v) => v,
            Err(Error::Truncation { missing: m }) => {
                missing.extend(m);
                continue;
            }
            Err(e) => return Err(e),
        };
        if kv.is_zero() {
            continue;
        }
        let x = inv_root.scale(&rat_int(n));
        sum = sum + poly.eval(&x).scale(&kv);
    }
    if !missing.is_empty() {
        return Err(Error::Truncation { missing });
    }
    Ok(sum)
}

/// ⟨Z_κ(m₁, μ₁), Z_κ(U)⟩_fin = (m₀m₁)^{(κ−1)/2} (deg Z(U)/2) S.
pub fn finite_intersection(
    level: u64,
    kappa: u32,
    d0: i64,
    r0: i64,
    m1: &Rat,
    mu1: usize,
    provider: &KappaProvider,
) -> Result<Radical> {
    check_kappa(kappa)?;
    let sl = SplitLattices::new(level, d0, r0)?;
    check_provider(provider, level, d0, r0)?;
    let d1 = check_coprime(level, d0, m1, mu1)?;
    let s = legendre_kappa_sum(&sl, kappa, d1, mu1, provider)?;
    let scale = Radical::half_power(&(sl.m0() * m1), kappa as i64 - 1)?;
    let half_deg = degree_zu(d0)? / rat_int(2);
    Ok((scale * s).scale(&half_deg))
}

/// CT_{f_{m₁,μ₁}} = (−1)^{κ−1} 2 m₁^{(κ−1)/2} S.
pub fn ct_closed_form(
    level: u64,
    kappa: u32,
    d0: i64,
    r0: i64,
    m1: &Rat,
    mu1: usize,
    provider: &KappaProvider,
) -> Result<Radical> {
    check_kappa(kappa)?;
    let sl = SplitLattices::new(level, d0, r0)?;
    check_provider(provider, level, d0, r0)?;
    let d1 = check_coprime(level, d0, m1, mu1)?;
    let s = legendre_kappa_sum(&sl, kappa, d1, mu1, provider)?;
    let sign = if kappa % 2 == 1 { 2 } else { -2 };
    Ok((Radical::half_power(m1, kappa as i64 - 1)? * s).scale(&rat_int(sign)))
}

/// The principal part q^{−m}(e_μ + ε e_{−μ}) of f_{m,μ}, where ε is the
/// Z-invariance sign in weight 3/2 − κ.
pub fn delta_principal_part(level: u64, kappa: u32, m: &Rat, mu: usize) -> Result<QSeries<Rat>> {
    let two_n = 2 * level as usize;
    let eps = z_sign(&input_weight(kappa), true)?;
    let mut pp = QSeries::exact();
    let e = -m.clone();
    pp.add_term(e.clone(), mu % two_n, Rat::one());
    let neg = (two_n - mu % two_n) % two_n;
    let prev = pp.coeff(&e, &neg).unwrap_or_else(Rat::zero);
    let mut merged = QSeries::exact();
    for (ee, i, c) in pp.iter() {
        if *i != neg {
            merged.add_term(ee.clone(), *i, c.clone());
        }
    }
    merged.add_term(e, neg, prev + rat_int(eps));
    Ok(merged)
}

/// CT(⟨f⁺, [Θ_𝒫, 𝓔_𝒩]_j⟩) with the unary theta for κ = 2j + 1 and the
/// Millson theta for κ = 2j + 2, pairing against the principal part `pp`
/// (exponents ≤ 0, components μ mod 2N).
pub fn ct_direct(
    level: u64,
    kappa: u32,
    d0: i64,
    r0: i64,
    pp: &QSeries<Rat>,
    provider: &KappaProvider,
) -> Result<Radical> {
    check_kappa(kappa)?;
    let sl = SplitLattices::new(level, d0, r0)?;
    check_provider(provider, level, d0, r0)?;
    let mut max_m = Rat::zero();
    for (e, _, c) in pp.iter() {
        if e > &Rat::zero() {
            return domain("principal part has a positive exponent");
        }
        if !c.is_zero() && -e > max_m {
            max_m = -e.clone();
        }
    }
    if pp.iter().all(|(_, _, c)| c.is_zero()) {
        return Ok(Radical::zero());
    }
    let delta = rat(1, 8 * level as i64 * sl.d0 * sl.d0);
    let bound = &max_m + &delta;
    let theta = theta_p_expansions(&sl, &bound)?;
    let eis = provider.eisenstein_series(&bound)?;
    let j = (kappa - 1) / 2;
    let (th, wt) = if kappa % 2 == 1 { (&theta.unary, rat(1, 2)) } else { (&theta.millson, rat(3, 2)) };
    let bracket = rankin_cohen(th, &wt, &eis, &Rat::one(), j)?;

    let two_n = 2 * level as usize;
    let mut glue: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let cosets = sl.n_cosets();
    for k in 0..sl.gram_p {
        for &nu in &cosets {
            if let Some(mu) = sl.glue(k, nu) {
                glue.entry(mu).or_default().push((k as usize, nu));
            }
        }
    }
    let mut pulled: QSeries<Radical, (usize, usize)> = QSeries::exact();
    for (e, mu, c) in pp.iter() {
        if c.is_zero() {
            continue;
        }
        for idx in glue.get(&(mu % two_n)).into_iter().flatten() {
            pulled.add_term(e.clone(), *idx, Radical::rational(c.clone()));
        }
    }
    serre_pairing(&pulled, &bracket)
}

/// The transcendental factor multiplying the central derivative.
#[derive(Clone, Debug, PartialEq)]
pub enum LPrimeSlot {
    /// L′(Sh_{m₀,μ₀}(ξf), κ), left unevaluated.
    Symbolic,
    /// ξf = 0, so the L-function vanishes identically.
    Zero,
    /// A numerical value of the derivative.
    Numeric(f64),
}

impl std::fmt::Display for LPrimeSlot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LPrimeSlot::Symbolic => write!(f, "L'(Sh(xi f), kappa)"),
            LPrimeSlot::Zero => write!(f, "0"),
            LPrimeSlot::Numeric(x) => write!(f, "{x:e}"),
        }
    }
}

/// The archimedean contribution (−1)^κ(m₀^{(κ−1)/2} deg Z(U)/2)·CT_f + c_κ·L′.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchimedeanPart {
    pub ct_coefficient: Radical,
    pub ct_term: Radical,
    pub lprime_coefficient: Symbolic<Radical>,
    pub lprime: LPrimeSlot,
}

/// 2√N Γ(κ − 1/2)/((4π)^{κ−1} π^{3/2}) = 2g√N/4^{κ−1} · π^{−κ}, with
/// Γ(κ − 1/2) = g√π.
pub fn lprime_coefficient(level: u64, kappa: u32) -> Result<Symbolic<Radical>> {
    check_kappa(kappa)?;
    let g = gamma_half_integer_over_sqrt_pi(kappa as i64 - 1);
    let c = rat_int(2) * g / rat_int(4).pow(kappa as i32 - 1);
    let root_n = Radical::sqrt(&rat_int(level as i64))?;
    Ok(Symbolic::new(root_n.scale(&c), rat_int(-(kappa as i64)), 0))
}

pub fn archimedean_part(level: u64, kappa: u32, d0: i64, ct: &Radical, lprime: LPrimeSlot) -> Result<ArchimedeanPart> {
    check_kappa(kappa)?;
    let m0 = rat(-d0, 4 * level as i64);
    let sign = if kappa % 2 == 0 { Rat::one() } else { -Rat::one() };
    let ct_coefficient = Radical::half_power(&m0, kappa as i64 - 1)?.scale(&(degree_zu(d0)? / rat_int(2) * sign));
    let ct_term = &ct_coefficient * ct;
    Ok(ArchimedeanPart { ct_coefficient, ct_term, lprime_coefficient: lprime_coefficient(level, kappa)?, lprime })
}

/// The assembled height: coefficient × slot, with no CT contribution left.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalHeight {
    pub coefficient: Symbolic<Radical>,
    pub lprime: LPrimeSlot,
}

impl GlobalHeight {
    pub fn is_zero(&self) -> bool {
        self.lprime == LPrimeSlot::Zero || self.coefficient.is_zero()
    }
}

impl std::fmt::Display for GlobalHeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{} * {}", self.coefficient, self.lprime)
        }
    }
}

/// Every quantity of one intersection computation.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionReport {
    pub level: u64,
    pub kappa: u32,
    pub d0: i64,
    pub r0: i64,
    pub principal_part: Vec<(Rat, usize, Rat)>,
    pub provider: ProviderKind,
    pub exact: bool,
    pub finite_part: Radical,
    pub ct_direct: Radical,
    pub ct_closed: Option<Radical>,
    pub archimedean: ArchimedeanPart,
    pub global: GlobalHeight,
}

/// Sums finite and archimedean parts for f with principal part `pp` and
/// requires the CT terms to cancel exactly.
pub fn global_height(
    level: u64,
    kappa: u32,
    d0: i64,
    r0: i64,
    pp: &QSeries<Rat>,
    provider: &KappaProvider,
    lprime: LPrimeSlot,
) -> Result<IntersectionReport> {
    check_kappa(kappa)?;
    let mut finite = Radical::zero();
    let mut entries = Vec::new();
    for (e, mu, c) in pp.iter() {
        if c.is_zero() || e >= &Rat::zero() {
            continue;
        }
        let m = -e.clone();
        finite = finite + finite_intersection(level, kappa, d0, r0, &m, *mu, provider)?.scale(c);
        entries.push((e.clone(), *mu, c.clone()));
    }
    let ct = ct_direct(level, kappa, d0, r0, pp, provider)?;
    let arch = archimedean_part(level, kappa, d0, &ct, lprime.clone())?;
    let residual = &finite + &arch.ct_term;
    if !residual.is_zero() {
        return Err(Error::Cancellation(format!(
            "finite part {finite} and archimedean CT term {} leave {residual}",
            arch.ct_term
        )));
    }
    let ct_closed = closed_form_total(level, kappa, d0, r0, &entries, provider)?;
    let coefficient = arch.lprime_coefficient.clone();
    Ok(IntersectionReport {
        level,
        kappa,
        d0,
        r0,
        principal_part: entries,
        provider: provider.kind.clone(),
        exact: provider.exact,
        finite_part: finite,
        ct_direct: ct,
        ct_closed,
        archimedean: arch,
        global: GlobalHeight { coefficient, lprime },
    })
}

/// The closed form applies to f_{m,μ}; for a principal part that is a
/// combination of such, returns Σ c_{m,μ} CT_{f_{m,μ}}/(1 + [μ = −μ]) over
/// ε-symmetric pairs, or `None` if the principal part is not ε-symmetric.
fn closed_form_total(
    level: u64,
    kappa: u32,
    d0: i64,
    r0: i64,
    entries: &[(Rat, usize, Rat)],
    provider: &KappaProvider,
) -> Result<Option<Radical>> {
    let two_n = 2 * level as usize;
    let eps = rat_int(z_sign(&input_weight(kappa), true)?);
    let map: BTreeMap<(Rat, usize), Rat> = entries.iter().map(|(e, mu, c)| ((e.clone(), *mu), c.clone())).collect();
    let mut total = Radical::zero();
    for ((e, mu), c) in &map {
        let neg = (two_n - mu) % two_n;
        let partner = map.get(&(e.clone(), neg)).cloned().unwrap_or_else(Rat::zero);
        if partner != &eps * c {
            return Ok(None);
        }
        if neg < *mu {
            continue;
        }
        let m = -e.clone();
        let weight = if neg == *mu { c / rat_int(2) } else { c.clone() };
        total = total + ct_closed_form(level, kappa, d0, r0, &m, *mu, provider)?.scale(&weight);
    }
    Ok(Some(total))
}

/// One (N, D₀, r₀, m₁, μ₁) configuration of the constant-term identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtInstance {
    pub level: u64,
    pub d0: i64,
    pub r0: i64,
    pub m1: Rat,
    pub mu1: usize,
}

/// Two (D₀, D₁) pairs for each level N ∈ {1, 2, 3}, all with
/// gcd(D₀, 2N·D₁) = 1.
pub fn standard_instances() -> Vec<CtInstance> {
    let raw: [(u64, i64, i64, i64, i64, usize); 6] = [
        (1, -3, 1, 7, 4, 1),
        (1, -7, 1, 5, 1, 0),
        (2, -7, 1, 15, 8, 1),
        (2, -15, 1, 23, 8, 3),
        (3, -11, 1, 5, 3, 2),
        (3, -23, 1, 35, 12, 5),
    ];
    raw.iter()
        .map(|&(level, d0, r0, p, q, mu1)| CtInstance { level, d0, r0, m1: rat(p, q), mu1 })
        .collect()
}

/// Outcome of comparing ct_direct with ct_closed_form over many tables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CtSuiteReport {
    pub checked: usize,
    pub nonzero: usize,
    pub failures: Vec<String>,
}

/// Compares both constant-term computations for every instance, every κ in
/// `kappas` and synthetic tables seeded 0..seeds.
pub fn ct_identity_suite(instances: &[CtInstance], kappas: &[u32], seeds: u64) -> Result<CtSuiteReport> {
    let mut report = CtSuiteReport::default();
    for inst in instances {
        for &kappa in kappas {
            for seed in 0..seeds {
                let p = KappaProvider::synthetic(inst.level, inst.d0, inst.r0, seed, &inst.m1)?;
                let pp = delta_principal_part(inst.level, kappa, &inst.m1, inst.mu1)?;
                let d = ct_direct(inst.level, kappa, inst.d0, inst.r0, &pp, &p)?;
                let c = ct_closed_form(inst.level, kappa, inst.d0, inst.r0, &inst.m1, inst.mu1, &p)?;
                report.checked += 1;
                if !d.is_zero() {
                    report.nonzero += 1;
                }
                if d != c {
                    report.failures.push(format!(
                        "N={} D0={} m1={} mu1={} kappa={kappa} seed={seed}: direct {d} != closed {c}",
                        inst.level, inst.d0, inst.m1, inst.mu1
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lprime_coefficients() {
        let c1 = lprime_coefficient(1, 1).unwrap();
        assert_eq!(c1.coeff, Radical::from_int(2));
        assert_eq!(c1.pi_pow, rat_int(-1));
        let c2 = lprime_coefficient(3, 2).unwrap();
        assert_eq!(c2.coeff, Radical::sqrt(&rat_int(3)).unwrap().scale(&rat(1, 4)));
        assert_eq!(c2.pi_pow, rat_int(-2));
    }

    #[test]
    fn coprimality_enforced() {
        assert!(matches!(check_coprime(1, -3, &rat(3, 4), 1), Err(Error::Precondition(_))));
        assert_eq!(check_coprime(1, -3, &rat(7, 4), 1).unwrap(), -7);
        assert!(check_coprime(1, -3, &rat(7, 4), 0).is_err());
        assert!(check_coprime(1, -3, &rat(1, 3), 0).is_err());
    }

    #[test]
    fn zero_provider_gives_zero() {
        let p = KappaProvider::zero(1, -3, 1).unwrap();
        let m = rat(7, 4);
        assert!(finite_intersection(1, 3, -3, 1, &m, 1, &p).unwrap().is_zero());
        assert!(ct_closed_form(1, 3, -3, 1, &m, 1, &p).unwrap().is_zero());
        let pp = delta_principal_part(1, 3, &m, 1).unwrap();
        assert!(ct_direct(1, 3, -3, 1, &pp, &p).unwrap().is_zero());
    }

    #[test]
    fn direct_matches_closed_small() {
        for kappa in 1..=4u32 {
            let p = KappaProvider::synthetic(1, -3, 1, 11, &rat_int(3)).unwrap();
            let m = rat(7, 4);
            let pp = delta_principal_part(1, kappa, &m, 1).unwrap();
            let d = ct_direct(1, kappa, -3, 1, &pp, &p).unwrap();
            let c = ct_closed_form(1, kappa, -3, 1, &m, 1, &p).unwrap();
            assert_eq!(d, c, "kappa = {kappa}");
        }
    }
}
