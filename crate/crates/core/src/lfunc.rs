//! L-functions of weight-2κ cusp forms on Γ₀(N) from their coefficients:
//! the completed function Λ(s) = N^{s/2}(2π)^{−s}Γ(s)L(s) via the smoothed
//! approximate functional equation, sign detection and L′(κ).

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::scalars::rat::{parse_rat, Rat};
use crate::scalars::Real;
use crate::specfun::{gamma, inc_gamma};

/// Sign of the functional equation Λ(s) = εΛ(2κ − s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSign {
    Plus,
    Minus,
    Unknown,
}

impl RootSign {
    pub fn value(self) -> Option<i64> {
        match self {
            RootSign::Plus => Some(1),
            RootSign::Minus => Some(-1),
            RootSign::Unknown => None,
        }
    }
}

/// Coefficients a_1, …, a_{n_max} of a cusp form of weight 2κ on Γ₀(N).
#[derive(Clone, Debug, PartialEq)]
pub struct LSeries<T> {
    pub level: u64,
    pub weight: u32,
    coeffs: Vec<T>,
    pub sign: RootSign,
    /// Absolute accuracy requested from every truncated sum.
    pub tolerance: f64,
}

impl<T: Real> LSeries<T> {
    /// `coeffs[n − 1] = a_n`.
    pub fn new(level: u64, weight: u32, coeffs: Vec<T>) -> Result<Self> {
        if level == 0 {
            return domain("level must be positive");
        }
        if weight == 0 || weight % 2 != 0 {
            return domain(format!("weight {weight} is not a positive even integer"));
        }
        Ok(LSeries { level, weight, coeffs, sign: RootSign::Unknown, tolerance: 1e-20 })
    }

    pub fn with_sign(mut self, sign: RootSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn kappa(&self) -> u32 {
        self.weight / 2
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn scaled(&self, c: &T) -> Self {
        let mut out = self.clone();
        out.coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        out
    }

    pub fn truncated(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(n);
        out
    }

    /// max_n |a_n| / (d(n) n^{κ−1/2}), at least one; values well above one
    /// indicate data that violates the Ramanujan–Petersson bound.
    pub fn bound_ratio(&self) -> f64 {
        let e = self.kappa() as f64 - 0.5;
        let mut worst: f64 = 1.0;
        for (i, a) in self.coeffs.iter().enumerate() {
            let n = (i + 1) as f64;
            let b = divisor_count(i as u64 + 1) as f64 * n.powf(e);
            worst = worst.max(a.to_f64().abs() / b);
        }
        worst
    }

    /// Bound on the terms n > m of both halves of the smoothed sum at
    /// (s, cutoff), assuming |a_n| ≤ C·d(n) n^{κ−1/2} with C = bound_ratio.
    ///
    /// Uses d(n) ≤ 2√n and Γ(a, x) ≤ x^{a−1}e^{−x}/(1 − (a−1)/x) for
    /// x > a − 1, and Γ(a, x) ≤ x^{a−1}e^{−x} for a ≤ 1.
    pub fn tail_bound(&self, s: f64, cutoff: f64, m: usize) -> f64 {
        let k2 = self.weight as f64;
        let big_a = 2.0 * std::f64::consts::PI / (self.level as f64).sqrt();
        let c = self.bound_ratio();
        let e = self.kappa() as f64 - 0.5;
        let gamma_bound = |a: f64, x: f64| -> f64 {
            let base = ((a - 1.0) * x.ln() - x).exp();
            if a <= 1.0 {
                base
            } else if x > 2.0 * (a - 1.0) {
                base / (1.0 - (a - 1.0) / x)
            } else {
                f64::INFINITY
            }
        };
        let mut total = 0.0;
        for n in (m + 1)..(m + 20_000) {
            let nf = n as f64;
            let an = c * 2.0 * nf.sqrt() * nf.powf(e);
            let x1 = big_a * nf * cutoff;
            let x2 = big_a * nf / cutoff;
            let t1 = (big_a * nf).powf(-s) * gamma_bound(s, x1);
            let t2 = (big_a * nf).powf(s - k2) * gamma_bound(k2 - s, x2);
            let term = an * (t1 + t2);
            total += term;
            if term < total * 1e-18 || term == 0.0 {
                break;
            }
        }
        total
    }

    /// Smallest n_max for which the tail bound at (s, cutoff) is below the
    /// tolerance.
    pub fn required_terms(&self, s: f64, cutoff: f64) -> usize {
        let mut m = 1usize;
        while m < 1_000_000 && self.tail_bound(s, cutoff, m) > self.tolerance {
            m = m + m / 4 + 1;
        }
        let mut lo = m / 2;
        while lo < m && self.tail_bound(s, cutoff, lo) > self.tolerance {
            lo += 1;
        }
        lo.max(1)
    }

    fn check_terms(&self, s: f64, cutoff: f64) -> Result<usize> {
        let need = self.required_terms(s, cutoff);
        if need > self.coeffs.len() {
            return Err(Error::InsufficientCoefficients { required: need, available: self.coeffs.len() });
        }
        Ok(need)
    }

    /// The two halves (P, Q) of Λ(s) = P + εQ:
    /// P = Σ a_n (An)^{−s} Γ(s, Anc), Q = Σ a_n (An)^{s−2κ} Γ(2κ − s, An/c),
    /// with A = 2π/√N and cutoff c.
    pub fn afe_halves(&self, s: &T, cutoff: &T) -> Result<(T, T)> {
        if cutoff.to_f64() <= 0.0 {
            return domain("cutoff must be positive");
        }
        let need = self.check_terms(s.to_f64(), cutoff.to_f64())?;
        let big_a = T::from_i64(2) * T::pi() / T::from_i64(self.level as i64).sqrt();
        let k2 = T::from_i64(self.weight as i64);
        let s_dual = k2 - s.clone();
        let mut p = T::zero();
        let mut q = T::zero();
        for (i, a) in self.coeffs.iter().take(need).enumerate() {
            if a.is_zero() {
                continue;
            }
            let an = big_a.clone() * T::from_i64(i as i64 + 1);
            let ln_an = an.ln();
            let g1 = inc_gamma(s, &(an.clone() * cutoff.clone()))?;
            let g2 = inc_gamma(&s_dual, &(an.clone() / cutoff.clone()))?;
            p = p + a.clone() * (-(s.clone() * ln_an.clone())).exp() * g1;
            q = q + a.clone() * ((-s_dual.clone()) * ln_an).exp() * g2;
        }
        Ok((p, q))
    }

    fn sign_value(&self) -> Result<T> {
        match self.sign.value() {
            Some(e) => Ok(T::from_i64(e)),
            None => domain("functional-equation sign is unknown; run sign detection first"),
        }
    }

    /// Λ(s) with the given cutoff; requires a known sign.
    pub fn lambda_value(&self, s: &T, cutoff: &T) -> Result<T> {
        let eps = self.sign_value()?;
        let (p, q) = self.afe_halves(s, cutoff)?;
        Ok(p + eps * q)
    }

    /// Γ-factor N^{s/2}(2π)^{−s}Γ(s).
    pub fn gamma_factor(&self, s: &T) -> Result<T> {
        let n = T::from_i64(self.level as i64);
        let two_pi = T::from_i64(2) * T::pi();
        let ln = s.clone() * (n.ln() / T::from_i64(2) - two_pi.ln());
        Ok(ln.exp() * gamma(s)?)
    }

    /// L(s) = Λ(s)/γ(s).
    pub fn l_value(&self, s: &T, cutoff: &T) -> Result<T> {
        Ok(self.lambda_value(s, cutoff)? / self.gamma_factor(s)?)
    }

    /// L′(κ) by a Richardson-extrapolated central difference of L(s).
    pub fn l_derivative_central(&self, cutoff: &T) -> Result<T> {
        let k = T::from_i64(self.kappa() as i64);
        let h = crate::specfun::whittaker::fd_step::<T>(&T::one());
        let d = |h: &T| -> Result<T> {
            let p = self.l_value(&(k.clone() + h.clone()), cutoff)?;
            let m = self.l_value(&(k.clone() - h.clone()), cutoff)?;
            Ok((p - m) / (T::from_i64(2) * h.clone()))
        };
        let d1 = d(&h)?;
        let d2 = d(&(h / T::from_i64(2)))?;
        Ok((T::from_i64(4) * d2 - d1) / T::from_i64(3))
    }

    /// Direct Dirichlet sum Σ a_n n^{−s} over the stored coefficients.
    pub fn dirichlet_sum(&self, s: &T) -> T {
        let mut acc = T::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            let n = T::from_i64(i as i64 + 1);
            acc = acc + a.clone() * (-(s.clone() * n.ln())).exp();
        }
        acc
    }
}

/// Outcome of sign detection.
#[derive(Clone, Debug, PartialEq)]
pub struct SignDetection {
    pub sign: RootSign,
    /// sup_t |Λ(κ+t) − εΛ(κ−t)| / sup_t |Λ(κ±t)| for the chosen ε, or the
    /// smaller of the two residuals when neither passes.
    pub residual: f64,
}

/// Chooses ε ∈ {±1} minimizing the functional-equation residual on a t-grid,
/// where Λ_ε(s) = P(s) + εQ(s) with cutoff 1; `Unknown` if neither residual
/// is below `threshold`.
pub fn sign_detect<T: Real>(ls: &LSeries<T>, threshold: f64) -> Result<SignDetection> {
    let k = ls.kappa() as f64;
    let ts = [0.15, 0.35, 0.6, 0.85];
    let cut = T::one();
    let mut res = [0.0f64; 2];
    for (slot, eps) in [(0usize, 1.0f64), (1, -1.0)] {
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for t in ts {
            let (p1, q1) = ls.afe_halves(&T::from_f64(k + t), &T::from_f64(1.3))?;
            let (p2, q2) = ls.afe_halves(&T::from_f64(k - t), &cut)?;
            let l1 = p1.to_f64() + eps * q1.to_f64();
            let l2 = p2.to_f64() + eps * q2.to_f64();
            worst = worst.max((l1 - eps * l2).abs());
            scale = scale.max(l1.abs()).max(l2.abs());
        }
        res[slot] = if scale > 0.0 { worst / scale } else { 0.0 };
    }
    let (best, r) = if res[0] <= res[1] { (RootSign::Plus, res[0]) } else { (RootSign::Minus, res[1]) };
    if r < threshold {
        Ok(SignDetection { sign: best, residual: r })
    } else {
        Ok(SignDetection { sign: RootSign::Unknown, residual: r })
    }
}

pub fn divisor_count(n: u64) -> u64 {
    let mut c = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            c += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    c
}

/// A coefficient file: a header `level <N> weight <k>` followed by lines
/// `n a_n` with exact rationals; missing n are zero up to the largest n.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientFile {
    pub level: u64,
    pub weight: Rat,
    pub coeffs: BTreeMap<u64, Rat>,
    pub exact: bool,
}

impl CoefficientFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut level = None;
        let mut weight = None;
        let mut coeffs = BTreeMap::new();
        let mut exact = true;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let perr = |msg: String| Error::Parse { line: ln, msg };
            match f.as_slice() {
                ["level", n, "weight", k] | ["weight", k, "level", n] => {
                    level = Some(n.parse::<u64>().map_err(|_| perr(format!("bad level '{n}'")))?);
                    let (w, _) = parse_rat(k).ok_or_else(|| perr(format!("bad weight '{k}'")))?;
                    weight = Some(w);
                }
                [n, a] => {
                    if level.is_none() {
                        return Err(perr("coefficient before the 'level N weight k' header".into()));
                    }
                    let n: u64 = n.parse().map_err(|_| perr(format!("bad index '{n}'")))?;
                    if n == 0 {
                        return Err(perr("indices start at 1".into()));
                    }
                    let (v, ex) = parse_rat(a).ok_or_else(|| perr(format!("bad coefficient '{a}'")))?;
                    exact &= ex;
                    if coeffs.insert(n, v).is_some() {
                        return Err(perr(format!("duplicate index {n}")));
                    }
                }
                _ => return Err(perr("expected 'n a_n'".into())),
            }
        }
        let level = level.ok_or(Error::Parse { line: 1, msg: "missing 'level N weight k' header".into() })?;
        let weight = weight.unwrap_or_default();
        Ok(CoefficientFile { level, weight, coeffs, exact })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("level {} weight {}\n", self.level, self.weight);
        for (n, a) in &self.coeffs {
            s.push_str(&format!("{n} {a}\n"));
        }
        s
    }

    /// Dense a_1..a_{max n} as an L-series of the given even weight.
    pub fn to_lseries<T: Real>(&self) -> Result<LSeries<T>> {
        if !self.weight.is_integer() {
            return domain(format!("weight {} is not an integer", self.weight));
        }
        let w = self.weight.to_integer().to_u32().ok_or(Error::Domain("weight out of range".into()))?;
        let top = self.coeffs.keys().next_back().copied().unwrap_or(0) as usize;
        let mut v = vec![T::zero(); top];
        for (n, a) in &self.coeffs {
            v[*n as usize - 1] = T::from_rat(a);
        }
        LSeries::new(self.level, w, v)
    }
}

/// τ(1), …, τ(n) from q∏(1 − qᵐ)^24: the pentagonal series F = ∏(1 − qᵐ)
/// is raised to the 24th power with m P_m = Σ_{k=1}^m (25k − m) F_k P_{m−k}.
pub fn ramanujan_tau(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); n];
    for k in 0i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = (k * (3 * k - 1) / 2) as usize;
        if e1 >= n {
            break;
        }
        f[e1] += sign;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if k > 0 && e2 < n {
            f[e2] += sign;
        }
    }
    let mut p = vec![BigInt::zero(); n];
    if n > 0 {
        p[0] = BigInt::from(1);
    }
    for m in 1..n {
        let mut acc = BigInt::zero();
        for k in 1..=m {
            if !f[k].is_zero() {
                acc += BigInt::from(25 * k as i64 - m as i64) * &f[k] * &p[m - k];
            }
        }
        p[m] = acc / BigInt::from(m as i64);
    }
    p
}

/// a_1, …, a_n of the weight-2 newform attached to y² + y = x³ − x
/// (conductor 37): a_p = p − #{affine points mod p}, a_{37^e} = a_37^e and
/// a_{p^{e+1}} = a_p a_{p^e} − p a_{p^{e−1}} otherwise.
pub fn conductor37_coeffs(n: usize) -> Vec<i64> {
    let ap = |p: i64| -> i64 {
        let mut count = 0i64;
        for x in 0..p {
            let rhs = (x * x % p * x - x).rem_euclid(p);
            count += (0..p).filter(|y| (y * y + y - rhs).rem_euclid(p) == 0).count() as i64;
        }
        p - count
    };
    let mut a = vec![0i64; n + 1];
    if n >= 1 {
        a[1] = 1;
    }
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for q in (2 * p..=n).step_by(p) {
            composite[q] = true;
        }
        let app = ap(p as i64);
        let (mut prev, mut cur, mut pk) = (1i64, app, p);
        loop {
            a[pk] = cur;
            if pk > n / p {
                break;
            }
            pk *= p;
            let next = if p == 37 { cur * app } else { app * cur - p as i64 * prev };
            prev = cur;
            cur = next;
        }
    }
    for m in 2..=n {
        let p = (2..=m).find(|d| m % d == 0).unwrap_or(m);
        let mut pk = 1;
        while m % (pk * p) == 0 {
            pk *= p;
        }
        if pk != m {
            a[m] = a[pk] * a[m / pk];
        }
    }
    a.remove(0);
    a
}
