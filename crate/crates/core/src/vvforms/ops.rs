use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::scalars::rat::{rat_int, rat_pow, Coeff, Rat};
use crate::specfun::half_binom;

use super::harmonic::CuspFormExpansion;
use super::qseries::{product_prec, QSeries, Symbolic};

/// The j-th Rankin–Cohen bracket of `f` (weight `k`) and `g` (weight `l`)
/// on the tensor index set:
/// [f, g]_j = Σ_s (−1)^s binom(k+j−1, s) binom(l+j−1, j−s) D^{j−s}f · D^s g,
/// with D = q d/dq.
pub fn rankin_cohen<C, I, J>(
    f: &QSeries<C, I>,
    k: &Rat,
    g: &QSeries<C, J>,
    l: &Rat,
    j: u32,
) -> Result<QSeries<C, (I, J)>>
where
    C: Coeff,
    I: Ord + Clone + Debug,
    J: Ord + Clone + Debug,
{
    let jr = rat_int(j as i64);
    let top_f = k + &jr - Rat::one();
    let top_g = l + &jr - Rat::one();
    let mut weights = Vec::with_capacity(j as usize + 1);
    for s in 0..=j as i64 {
        let sign = if s % 2 == 0 { Rat::one() } else { -Rat::one() };
        weights.push(sign * half_binom(&top_f, s)? * half_binom(&top_g, j as i64 - s)?);
    }
    let mut out = QSeries::new(product_prec(f, g));
    for (e1, i, c1) in f.iter() {
        for (e2, jj, c2) in g.iter() {
            let mut w = Rat::zero();
            for (s, ws) in weights.iter().enumerate() {
                if ws.is_zero() {
                    continue;
                }
                w += ws * rat_pow(e1, (j as usize - s) as i32) * rat_pow(e2, s as i32);
            }
            if w.is_zero() {
                continue;
            }
            out.add_term(e1 + e2, (i.clone(), jj.clone()), c1.clone() * c2.clone() * C::from_rat(&w));
        }
    }
    Ok(out)
}

/// The constant term of ⟨f, g⟩ = Σ_μ f_μ g_μ, without conjugation:
/// {f, g} = Σ_{(e, μ)} c_f(e, μ) c_g(−e, μ).
///
/// Every exponent −e needed from `g` must lie below its truncation order.
pub fn serre_pairing<C: Coeff, I: Ord + Clone + Debug>(f: &QSeries<C, I>, g: &QSeries<C, I>) -> Result<C> {
    let mut acc = C::zero();
    let mut missing = Vec::new();
    for (e, i, c) in f.iter() {
        let ne = -e.clone();
        match g.coeff(&ne, i) {
            Some(cg) => acc = acc + c.clone() * cg,
            None => missing.push(format!("({ne}, {i:?})")),
        }
    }
    if !missing.is_empty() {
        return Err(Error::Truncation { missing });
    }
    if f.prec().is_some() {
        // f's unknown tail pairs with g below −prec_f
        if let (Some(pf), Some(vg)) = (f.prec(), g.valuation()) {
            if -vg >= *pf {
                return Err(Error::Truncation { missing: vec![format!("f beyond exponent {pf}")] });
            }
        }
    }
    Ok(acc)
}

/// Kronecker symbol (D/n) for n ≥ 1, completely multiplicative in n with
/// (D/2) = 0 for even D, 1 for D ≡ ±1 (8) and −1 for D ≡ ±3 (8).
pub fn kronecker(d: i64, n: u64) -> i64 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut res = 1i64;
    while n % 2 == 0 {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        let r = d.rem_euclid(8);
        if r == 3 || r == 5 {
            res = -res;
        }
    }
    res * jacobi(d, n)
}

/// Jacobi symbol (a/n) for odd n ≥ 1.
pub fn jacobi(a: i64, n: u64) -> i64 {
    debug_assert!(n % 2 == 1);
    let n_i = n as i128;
    let mut a = (a as i128).rem_euclid(n_i);
    let mut n = n_i;
    let mut res = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            res = -res;
        }
        a %= n;
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m4 = d.rem_euclid(4);
    if m4 == 1 {
        return squarefree_i64(d);
    }
    if m4 == 0 {
        let q = d / 4;
        let r = q.rem_euclid(4);
        return (r == 2 || r == 3) && squarefree_i64(q);
    }
    false
}

fn squarefree_i64(d: i64) -> bool {
    crate::scalars::rat::is_squarefree(d.unsigned_abs())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Shimura lift
/// Σ_{n<bound} Σ_{d|n} d^{κ−1} (D₀/d) b(m₀n²/d², (n/d)μ₀) qⁿ
/// of a vector-valued form with coefficients b(m, μ), as a scalar cusp form
/// of weight 2κ on Γ₀(N).
pub fn shimura_lift<C: Coeff>(
    g: &QSeries<C>,
    level: u64,
    kappa: u32,
    m0: &Rat,
    mu0: usize,
    d0: i64,
    bound: u64,
) -> Result<CuspFormExpansion<C>> {
    if kappa == 0 {
        return domain("κ must be positive");
    }
    if d0 >= 0 || !is_fundamental(d0) {
        return domain(format!("D0 = {d0} is not a negative fundamental discriminant"));
    }
    let n4 = rat_int(4 * level as i64);
    if -(&n4 * m0) != rat_int(d0) {
        return domain(format!("D0 = {d0} differs from -4N m0 = {}", -(&n4 * m0)));
    }
    let two_n = 2 * level;
    if mu0 as u64 >= two_n {
        return domain(format!("component {mu0} outside Z/{two_n}Z"));
    }
    let mut coeffs = BTreeMap::new();
    let mut missing = Vec::new();
    for n in 1..bound {
        let mut acc = C::zero();
        for d in divisors(n) {
            let chi = kronecker(d0, d);
            if chi == 0 {
                continue;
            }
            let q = n / d;
            let e = m0 * rat_int((q * q) as i64);
            let mu = ((q % two_n) * mu0 as u64 % two_n) as usize;
            match g.coeff(&e, &mu) {
                Some(b) => {
                    let w = Rat::from_integer(BigInt::from(d).pow(kappa - 1)) * rat_int(chi);
                    acc = acc + b * C::from_rat(&w);
                }
                None => missing.push(format!("({e}, {mu})")),
            }
        }
        if !acc.is_zero() {
            coeffs.insert(n, acc);
        }
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(Error::Truncation { missing });
    }
    CuspFormExpansion::scalar(level, rat_int(2 * kappa as i64), &coeffs, bound)
}

/// C_κ = (−2)^κ / (κ − 1)!.
pub fn c_kappa(kappa: u32) -> Result<Rat> {
    if kappa == 0 {
        return domain("κ must be positive");
    }
    let num = BigInt::from(-2).pow(kappa);
    Ok(Rat::new(num, crate::scalars::rat::factorial(kappa as u64 - 1)))
}

/// Φ^(κ) = C_κ π^κ i Σ_{n<bound} Σ_{d|n} d^{−κ} c⁺(n²/d², n/d) qⁿ.
///
/// Returned as symbolic coefficients c·π^κ·i with c exact. The component
/// n/d is reduced mod 2N.
pub fn phi_kappa_expansion<C: Coeff>(
    c_plus: &QSeries<C>,
    level: u64,
    kappa: u32,
    bound: u64,
) -> Result<BTreeMap<u64, Symbolic<C>>> {
    let ck = c_kappa(kappa)?;
    let two_n = 2 * level;
    let mut out = BTreeMap::new();
    let mut missing = Vec::new();
    for n in 1..bound {
        let mut acc = C::zero();
        for d in divisors(n) {
            let q = n / d;
            let e = rat_int((q * q) as i64);
            let mu = (q % two_n) as usize;
            match c_plus.coeff(&e, &mu) {
                Some(c) => {
                    let w = Rat::new(BigInt::one(), BigInt::from(d).pow(kappa));
                    acc = acc + c * C::from_rat(&w);
                }
                None => missing.push(format!("({e}, {mu})")),
            }
        }
        let coeff = acc * C::from_rat(&ck);
        out.insert(n, Symbolic::new(coeff, rat_int(kappa as i64), 1));
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(Error::Truncation { missing });
    }
    Ok(out)
}

/// |x|^{(κ−1)/2} as (rational factor, radicand) with the radicand 1 for odd κ.
pub fn half_power_parts(x: &Rat, kappa: u32) -> (Rat, Rat) {
    let x = x.abs();
    let h = (kappa as i32 - 1) / 2;
    if kappa % 2 == 1 {
        (rat_pow(&x, h), Rat::one())
    } else {
        (rat_pow(&x, h), x)
    }
}

/// Multiplicities |4N|^{(κ−1)/2} c⁺(−m, μ) m^{(κ−1)/2} of the residue
/// divisor, keyed by (m, μ) for every principal-part term with m > 0.
pub fn residue_divisor_assemble(
    principal: &QSeries<Rat>,
    level: u64,
    kappa: u32,
) -> Result<crate::heegner::HeegnerCycle> {
    if kappa == 0 {
        return domain("κ must be positive");
    }
    let mut cycle = crate::heegner::HeegnerCycle::new(level, kappa);
    for (e, mu, c) in principal.iter() {
        if e >= &Rat::zero() {
            continue;
        }
        let m = -e.clone();
        let x = rat_int(4 * level as i64) * &m;
        let (f, rad) = half_power_parts(&x, kappa);
        cycle.add(m, *mu, crate::scalars::surd::SurdVal::new(Rat::zero(), c * f, &rad)?)?;
    }
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::rat;

    type S = QSeries<Rat, usize>;

    #[test]
    fn bracket_of_q_with_itself() {
        let q = S::from_terms(None, [(Rat::one(), 0, Rat::one())]);
        for (k, l) in [(rat(1, 2), rat(3, 2)), (rat_int(2), rat_int(5))] {
            let b = rankin_cohen(&q, &k, &q, &l, 1).unwrap();
            assert_eq!(b.coeff(&rat_int(2), &(0, 0)), Some(&l - &k));
        }
    }

    #[test]
    fn bracket_zero_is_product() {
        let f = S::from_terms(Some(rat_int(3)), [(rat_int(-1), 0, rat_int(2)), (rat_int(1), 0, rat_int(3))]);
        let g = S::from_terms(Some(rat_int(4)), [(rat_int(0), 1, rat_int(5))]);
        assert_eq!(rankin_cohen(&f, &rat(1, 2), &g, &rat_int(1), 0).unwrap(), f.tensor(&g));
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-23, 3), 1);
        assert_eq!(kronecker(5, 4), 1);
        assert!(is_fundamental(-4) && is_fundamental(-3) && is_fundamental(-23));
        assert!(!is_fundamental(-12) && !is_fundamental(-16) && !is_fundamental(-2));
    }

    #[test]
    fn pairing_basics() {
        let f = S::from_terms(None, [(rat_int(-1), 2, Rat::one())]);
        let g = S::from_terms(Some(rat_int(3)), [(rat_int(1), 2, Rat::one())]);
        assert_eq!(serre_pairing(&f, &g).unwrap(), Rat::one());
        let short = S::from_terms(Some(rat_int(1)), []);
        assert!(matches!(serre_pairing(&f, &short), Err(Error::Truncation { .. })));
    }

    #[test]
    fn c_kappa_values() {
        assert_eq!(c_kappa(1).unwrap(), rat_int(-2));
        assert_eq!(c_kappa(2).unwrap(), rat_int(4));
        assert_eq!(c_kappa(3).unwrap(), rat_int(-4));
    }
}
