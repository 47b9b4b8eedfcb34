//! The Weil representation of Mp₂(Z) attached to the lattice of trace-zero
//! matrices with quadratic form N·det, whose discriminant form is Z/2N with
//! q(r) = −r²/4N mod 1.

use num_integer::Integer;
use num_traits::One;

use crate::error::{domain, Result};
use crate::scalars::complex::{cinv, cpowi, csqrt, cx, e_of, Cx};
use crate::scalars::cyclo::{Cyclo, GroupAccumulator};
use crate::scalars::rat::{frac, rat, Rat};
use crate::scalars::real::Real;

/// The discriminant form (Z/2N, q) with q(r) = −r²/4N mod 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    level: u64,
}

impl DiscriminantForm {
    pub fn new(level: u64) -> Result<Self> {
        if level == 0 {
            return domain("level must be positive");
        }
        if level > 1 << 20 {
            return domain("level too large");
        }
        Ok(DiscriminantForm { level })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// |L'/L| = 2N.
    pub fn size(&self) -> usize {
        2 * self.level as usize
    }

    pub fn reduce(&self, r: i64) -> usize {
        r.rem_euclid(2 * self.level as i64) as usize
    }

    /// q(r) ∈ [0, 1).
    pub fn q(&self, r: i64) -> Rat {
        let n = self.level as i64;
        frac(&rat(-(r * r), 4 * n))
    }

    /// (r, s) = −rs/2N mod 1.
    pub fn bilinear(&self, r: i64, s: i64) -> Rat {
        let n = self.level as i64;
        frac(&rat(-(r * s), 2 * n))
    }

    pub fn neg(&self, r: usize) -> usize {
        self.reduce(-(r as i64))
    }

    /// Multiplier of the cyclotomic field holding every entry of ρ_L: lcm(8, 4N).
    pub fn field_order(&self) -> u64 {
        8u64.lcm(&(4 * self.level))
    }
}

/// Sparse element Σ c_k ζ^k of the group ring Z[Z/M], kept unreduced.
pub type GroupElt = Vec<(u32, i64)>;
pub type GroupMatrix = Vec<Vec<GroupElt>>;

/// Integral models of the generator matrices over Z[ζ_{8N}].
///
/// ρ_L(T) = diag e(q(r)) and ρ_L(S) = e(1/8)/√(2N) · S₀ with
/// S₀[r][s] = e(rs/2N). The dual representation is the entrywise conjugate.
#[derive(Clone, Debug)]
pub struct WeilMatrices {
    df: DiscriminantForm,
    dual: bool,
    order: u32,
    t_diag: Vec<GroupElt>,
    s0: GroupMatrix,
}

/// Outcome of one relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub level: u64,
    pub dual: bool,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.name)
    }
}

impl WeilMatrices {
    pub fn new(level: u64, dual: bool) -> Result<Self> {
        let df = DiscriminantForm::new(level)?;
        if level > 4096 {
            return domain("level too large for exact relation checks");
        }
        let order = 8 * level as u32;
        let size = df.size();
        let n = level as i64;
        let sign = if dual { -1 } else { 1 };
        let m = order as i64;
        let mono = |k: i64| vec![(k.rem_euclid(m) as u32, 1i64)];
        let mut t_diag = Vec::with_capacity(size);
        let mut s0 = Vec::with_capacity(size);
        for r in 0..size as i64 {
            // e(−r²/4N) = ζ^{−2r²}
            t_diag.push(mono(-sign * 2 * r * r));
            let mut row = Vec::with_capacity(size);
            for s in 0..size as i64 {
                // e(rs/2N) = ζ^{4rs}
                row.push(mono(sign * 4 * ((r * s) % (2 * n))));
            }
            s0.push(row);
        }
        Ok(WeilMatrices { df, dual, order, t_diag, s0 })
    }

    pub fn discriminant_form(&self) -> &DiscriminantForm {
        &self.df
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// M = 8N: every entry lies in Z[ζ_M].
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// S₀[r][s] as a reduced cyclotomic integer.
    pub fn s0_entry(&self, r: usize, s: usize) -> Cyclo<i64> {
        reduce(&self.s0[r][s], self.order)
    }

    /// ρ(T)[r][r] as a reduced cyclotomic integer.
    pub fn t_entry(&self, r: usize) -> Cyclo<i64> {
        reduce(&self.t_diag[r], self.order)
    }

    /// Negates one entry of S₀. Used to confirm the relation checks detect
    /// a corrupted matrix.
    pub fn corrupt_s_entry(&mut self, r: usize, s: usize) {
        for t in self.s0[r][s].iter_mut() {
            t.1 = -t.1;
        }
    }

    fn root(&self, k: i64, m: i64) -> GroupElt {
        let sign = if self.dual { -1 } else { 1 };
        let e = (sign * k * self.order as i64 / m).rem_euclid(self.order as i64);
        vec![(e as u32, 1)]
    }

    fn scalar_matrix(&self, c: i64) -> GroupMatrix {
        let size = self.df.size();
        (0..size).map(|i| (0..size).map(|j| if i == j { vec![(0, c)] } else { vec![] }).collect()).collect()
    }

    /// Verifies the defining relations of Mp₂(Z) exactly over Z[ζ_{8N}].
    ///
    /// With g = Σ_{x mod 8N} e(x²/8N) = 2(1+i)√(2N) (conjugated for the dual
    /// representation) and P the permutation r ↦ −r:
    /// S² = Z is S₀² = 2N·P, S⁴ = −I is S₀⁴ = 4N²·I, unitarity is
    /// S₀S₀* = 2N·I, and (ST)³ = S² is e(1/8)·g·(1−i)·(S₀T)³ = 8N·S₀².
    pub fn check_relations(&self) -> RelationReport {
        let n = self.df.level() as i64;
        let size = self.df.size();
        let m = self.order;
        let s0 = &self.s0;
        let s0_sq = mat_mul(s0, s0, m);
        let perm: GroupMatrix = (0..size)
            .map(|i| (0..size).map(|j| if self.df.neg(i) == j { vec![(0, 2 * n)] } else { vec![] }).collect())
            .collect();
        let s0_4 = mat_mul(&s0_sq, &s0_sq, m);
        let s0_star: GroupMatrix =
            (0..size).map(|i| (0..size).map(|j| conj(&s0[j][i], m)).collect()).collect();
        let unitary = mat_mul(s0, &s0_star, m);

        let t_pow_ok = self.t_diag.iter().all(|t| {
            let mut acc: GroupElt = vec![(0, 1)];
            for _ in 0..4 * n {
                acc = elt_mul(&acc, t, m);
            }
            reduce(&acc, m) == Cyclo::scalar(1)
        });

        let st: GroupMatrix =
            (0..size).map(|i| (0..size).map(|j| elt_mul(&s0[i][j], &self.t_diag[j], m)).collect()).collect();
        let st2 = mat_mul(&st, &st, m);
        let st3 = mat_mul(&st2, &st, m);
        let one_minus_i = elt_add(&[(0, 1)], &elt_neg(&self.root(1, 4)));
        let factor = elt_mul(&elt_mul(&self.root(1, 8), &self.gauss_sum(), m), &one_minus_i, m);
        let lhs = mat_scale(&st3, &factor, m);
        let rhs = mat_scale(&s0_sq, &vec![(0, 8 * n)], m);

        let checks = vec![
            RelationCheck { name: "S^2 = Z", passed: mat_eq(&s0_sq, &perm, m) },
            RelationCheck { name: "S^4 = -I", passed: mat_eq(&s0_4, &self.scalar_matrix(4 * n * n), m) },
            RelationCheck { name: "S unitary", passed: mat_eq(&unitary, &self.scalar_matrix(2 * n), m) },
            RelationCheck { name: "T^(4N) = I", passed: t_pow_ok },
            RelationCheck { name: "(ST)^3 = S^2", passed: mat_eq(&lhs, &rhs, m) },
        ];
        RelationReport { level: n as u64, dual: self.dual, checks }
    }

    /// Σ_{x mod 8N} e(x²/8N), conjugated for the dual representation.
    pub fn gauss_sum(&self) -> GroupElt {
        let m = self.order as i64;
        let sign = if self.dual { -1 } else { 1 };
        let mut acc = vec![0i64; m as usize];
        for x in 0..m {
            acc[(sign * (x * x)).rem_euclid(m) as usize] += 1;
        }
        compress(acc)
    }

    /// ρ(T) applied to a basis vector: the phase e(±q(r)) as a rational.
    pub fn t_phase(&self, r: usize) -> Rat {
        let q = self.df.q(r as i64);
        if self.dual {
            frac(&-q)
        } else {
            q
        }
    }

    /// Numerical ρ(S)[r][s] = e(σ/8)/√(2N) · e(σ rs/2N), σ = ±1.
    pub fn s_entry<T: Real>(&self, r: usize, s: usize) -> Cx<T> {
        let n = self.df.level() as i64;
        let sign = if self.dual { -1 } else { 1 };
        let x = rat(sign, 8) + rat(sign * (r as i64) * (s as i64), 2 * n);
        let z = e_of(&T::from_rat(&frac(&x)));
        let norm = T::from_i64(2 * n).sqrt();
        cx(z.re / norm.clone(), z.im / norm)
    }
}

fn compress(dense: Vec<i64>) -> GroupElt {
    dense.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(k, c)| (k as u32, c)).collect()
}

fn conj(a: &GroupElt, m: u32) -> GroupElt {
    a.iter().map(|&(k, c)| ((m - k) % m, c)).collect()
}

fn elt_neg(a: &GroupElt) -> GroupElt {
    a.iter().map(|&(k, c)| (k, -c)).collect()
}

fn elt_add(a: &[(u32, i64)], b: &[(u32, i64)]) -> GroupElt {
    let mut v: GroupElt = a.iter().chain(b).cloned().collect();
    v.sort_unstable_by_key(|t| t.0);
    let mut out: GroupElt = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

fn elt_mul(a: &GroupElt, b: &GroupElt, m: u32) -> GroupElt {
    let mut dense = vec![0i64; m as usize];
    for &(i, x) in a {
        for &(j, y) in b {
            dense[((i + j) % m) as usize] += x * y;
        }
    }
    compress(dense)
}

fn reduce(a: &GroupElt, m: u32) -> Cyclo<i64> {
    let mut acc = GroupAccumulator::new(m as u64);
    for &(k, c) in a {
        acc.add_term(k as i64, c);
    }
    acc.finish()
}

fn mat_scale(a: &GroupMatrix, c: &GroupElt, m: u32) -> GroupMatrix {
    a.iter().map(|row| row.iter().map(|x| elt_mul(x, c, m)).collect()).collect()
}

/// Matrix product in the group ring; entries are reduced only on comparison.
pub fn mat_mul(a: &GroupMatrix, b: &GroupMatrix, m: u32) -> GroupMatrix {
    let cols = b.first().map_or(0, |r| r.len());
    let mut dense = vec![0i64; m as usize];
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    for (l, x) in row.iter().enumerate() {
                        for &(p, u) in x {
                            for &(q, v) in &b[l][j] {
                                dense[((p + q) % m) as usize] += u * v;
                            }
                        }
                    }
                    let out = compress(dense.clone());
                    dense.iter_mut().for_each(|d| *d = 0);
                    out
                })
                .collect()
        })
        .collect()
}

fn mat_eq(a: &GroupMatrix, b: &GroupMatrix, m: u32) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.len() == y.len()
                && x.iter().zip(y).all(|(p, q)| reduce(&elt_add(p, &elt_neg(q)), m) == Cyclo::scalar(0))
        })
}

/// Exact slash action of T on a vector-valued expansion with cyclotomic
/// coefficients: (f|T)(τ) = ρ(T)⁻¹ f(τ + 1).
///
/// Each term c qᵉ e_r picks up e(e ∓ q(r)); the result equals `f` exactly when
/// the exponents lie on the representation's grid.
pub fn slash_t(
    f: &crate::vvforms::VVQExpansion<Cyclo<Rat>>,
) -> Result<crate::vvforms::VVQExpansion<Cyclo<Rat>>> {
    let w = WeilMatrices::new(f.level, f.dual)?;
    let mut out = crate::vvforms::QSeries::new(f.series.prec().cloned());
    for (e, r, c) in f.series.iter() {
        let phase = frac(&(e - w.t_phase(*r)));
        let root = root_of_rat(&phase)?;
        out.add_term(e.clone(), *r, c.clone() * root);
    }
    Ok(crate::vvforms::VVQExpansion { level: f.level, dual: f.dual, series: out })
}

/// Exact slash action of Z = (−I, i) in weight `k`:
/// (f|Z)_r = e(−k/2 ∓ 1/4) f_{−r}, with − for ρ_L and + for the dual.
pub fn slash_z(
    f: &crate::vvforms::VVQExpansion<Cyclo<Rat>>,
    k: &Rat,
) -> Result<crate::vvforms::VVQExpansion<Cyclo<Rat>>> {
    let df = DiscriminantForm::new(f.level)?;
    let quarter = if f.dual { rat(1, 4) } else { rat(-1, 4) };
    let phase = frac(&(-k / Rat::from_integer(2.into()) + quarter));
    let root = root_of_rat(&phase)?;
    let mut out = crate::vvforms::QSeries::new(f.series.prec().cloned());
    for (e, r, c) in f.series.iter() {
        out.add_term(e.clone(), df.neg(*r), c.clone() * root.clone());
    }
    Ok(crate::vvforms::VVQExpansion { level: f.level, dual: f.dual, series: out })
}

/// e(x) for rational x as an exact cyclotomic number.
pub fn root_of_rat(x: &Rat) -> Result<Cyclo<Rat>> {
    let x = frac(x);
    let den = x.denom().clone();
    let num = x.numer().clone();
    let m: u64 = den.try_into().map_err(|_| crate::error::Error::Domain("denominator too large".into()))?;
    let k: i64 = num.try_into().map_err(|_| crate::error::Error::Domain("numerator too large".into()))?;
    Cyclo::root_of_unity(k, m)
}

/// Residual sup_r |(f|_k S)_r(τ) − f_r(τ)| for a numerically evaluated
/// vector-valued function `f` of weight `k ∈ ½Z` at `τ` in the upper half
/// plane, with (f|_k S)(τ) = √τ^{−2k} ρ(S)⁻¹ f(−1/τ).
pub fn slash_s_residual<T: Real>(
    w: &WeilMatrices,
    k: &Rat,
    f: &dyn Fn(&Cx<T>) -> Result<Vec<Cx<T>>>,
    tau: &Cx<T>,
) -> Result<T> {
    let two_k = k * Rat::from_integer(2.into());
    if !two_k.denom().is_one() {
        return domain("weight must lie in (1/2)Z");
    }
    if tau.im <= T::zero() {
        return domain("tau must lie in the upper half plane");
    }
    let two_k: i64 = two_k.numer().try_into().map_err(|_| crate::error::Error::Domain("weight too large".into()))?;
    let s_tau = -cinv(tau);
    let f_s = f(&s_tau)?;
    let f_t = f(tau)?;
    let size = w.df.size();
    if f_s.len() != size || f_t.len() != size {
        return domain("evaluator returned the wrong number of components");
    }
    let phi = cpowi(&csqrt(tau), -two_k);
    let mut worst = T::zero();
    for r in 0..size {
        // ρ(S)⁻¹ = ρ(S)* since ρ is unitary
        let mut acc = cx(T::zero(), T::zero());
        for (s, fs) in f_s.iter().enumerate() {
            acc = acc + w.s_entry::<T>(s, r).conj() * fs.clone();
        }
        let d = phi.clone() * acc - f_t[r].clone();
        let mag = crate::scalars::complex::cabs(&d);
        if mag > worst {
            worst = mag;
        }
    }
    Ok(worst)
}

/// Components of the theta series θ_r(τ) = Σ_{x ≡ r (2N)} q^{x²/4N} of the
/// lattice (Z, Nx²), a weight 1/2 form for the dual Weil representation.
pub fn theta_components<T: Real>(level: u64, tau: &Cx<T>, terms: i64) -> Vec<Cx<T>> {
    let n = level as i64;
    let size = 2 * n as usize;
    let mut out = vec![cx(T::zero(), T::zero()); size];
    for x in -terms..=terms {
        let r = x.rem_euclid(2 * n) as usize;
        let e = T::from_rat(&rat(x * x, 4 * n));
        // q^e = exp(2πi e τ)
        let two_pi_e = T::pi() * T::from_i64(2) * e;
        let arg = cx(-(two_pi_e.clone() * tau.im.clone()), two_pi_e * tau.re.clone());
        out[r] = out[r].clone() + crate::scalars::complex::cexp(&arg);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::bigfloat::BigFloat;

    #[test]
    fn relations_hold_for_small_levels() {
        for n in 1..=6 {
            for dual in [false, true] {
                let w = WeilMatrices::new(n, dual).unwrap();
                let rep = w.check_relations();
                assert!(rep.all_passed(), "N={n} dual={dual}: {rep:?}");
            }
        }
    }

    #[test]
    fn corrupted_entry_is_detected() {
        let mut w = WeilMatrices::new(3, false).unwrap();
        w.corrupt_s_entry(1, 2);
        assert!(!w.check_relations().all_passed());
    }

    #[test]
    fn discriminant_form_values() {
        let df = DiscriminantForm::new(3).unwrap();
        assert_eq!(df.q(1), rat(11, 12));
        assert_eq!(df.bilinear(1, 1), rat(5, 6));
        assert_eq!(df.neg(1), 5);
        assert!(DiscriminantForm::new(0).is_err());
    }

    #[test]
    fn theta_is_modular_for_dual() {
        let w = WeilMatrices::new(2, true).unwrap();
        let tau = cx(BigFloat::from_f64(0.21), BigFloat::from_f64(1.07));
        let f = |t: &Cx<BigFloat>| Ok(theta_components(2, t, 40));
        let r = slash_s_residual(&w, &rat(1, 2), &f, &tau).unwrap();
        assert!(r.to_f64() < 1e-40, "{r:?}");
        let wrong = WeilMatrices::new(2, false).unwrap();
        let r = slash_s_residual(&wrong, &rat(1, 2), &f, &tau).unwrap();
        assert!(r.to_f64() > 1e-3);
    }
}
