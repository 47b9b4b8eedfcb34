//! The split 𝒫 ⊕ 𝒩 of the level-N lattice along a CM vector, the theta
//! series of the rank-one part 𝒫, and providers for the Eisenstein
//! coefficients κ(n, ν) of the negative definite part 𝒩.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::scalars::rat::{frac, gcd_i64, is_integer, parse_rat, rat, rat_int, Rat};
use crate::scalars::surd::Radical;
use crate::vvforms::ops::is_fundamental;
use crate::vvforms::QSeries;

/// A trace-zero matrix [[x1, x2], [x3, −x1]] with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVec {
    pub x1: Rat,
    pub x2: Rat,
    pub x3: Rat,
}

impl LVec {
    pub fn new(x1: Rat, x2: Rat, x3: Rat) -> Self {
        LVec { x1, x2, x3 }
    }

    pub fn add(&self, o: &LVec) -> LVec {
        LVec::new(&self.x1 + &o.x1, &self.x2 + &o.x2, &self.x3 + &o.x3)
    }

    pub fn sub(&self, o: &LVec) -> LVec {
        LVec::new(&self.x1 - &o.x1, &self.x2 - &o.x2, &self.x3 - &o.x3)
    }

    pub fn scale(&self, c: &Rat) -> LVec {
        LVec::new(&self.x1 * c, &self.x2 * c, &self.x3 * c)
    }
}

/// N·det and its polarization (x, y) = N(−2x₁y₁ − x₂y₃ − x₃y₂).
pub fn quad(level: u64, x: &LVec) -> Rat {
    rat_int(level as i64) * (-(&x.x1 * &x.x1) - &x.x2 * &x.x3)
}

pub fn bilinear(level: u64, x: &LVec, y: &LVec) -> Rat {
    rat_int(level as i64) * (rat_int(-2) * &x.x1 * &y.x1 - &x.x2 * &y.x3 - &x.x3 * &y.x2)
}

/// The rank-one lattice 𝒫 = Z·(2N/t)w_U and the rank-two lattice 𝒩 = w_U^⊥
/// inside L, for the CM vector w_U of discriminant D₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitLattices {
    pub level: u64,
    pub d0: i64,
    pub r0: i64,
    /// t = gcd(r₀, 2N).
    pub t: i64,
    /// c₀ = (r₀² − D₀)/4N.
    pub c0: i64,
    /// Gram matrix of 𝒩 in the basis e₁ = [[1, 0], [−r₀, −1]],
    /// e₂ = [[0, 1/N], [c₀, 0]].
    pub gram_n: [[i64; 2]; 2],
    /// (g, g) for the generator g of 𝒫.
    pub gram_p: i64,
}

impl SplitLattices {
    pub fn new(level: u64, d0: i64, r0: i64) -> Result<Self> {
        if level == 0 {
            return domain("level must be positive");
        }
        if d0 >= 0 || !is_fundamental(d0) {
            return domain(format!("D0 = {d0} is not a negative fundamental discriminant"));
        }
        let n = level as i64;
        if (d0 - r0 * r0).rem_euclid(4 * n) != 0 {
            return domain(format!("D0 = {d0} is not congruent to r0^2 = {} mod 4N = {}", r0 * r0, 4 * n));
        }
        let t = gcd_i64(r0, 2 * n);
        let c0 = (r0 * r0 - d0) / (4 * n);
        let gram_n = [[-2 * n, r0], [r0, -2 * c0]];
        let gp = rat(-2 * n * d0, t * t);
        if !is_integer(&gp) {
            return domain("generator of P has non-integral norm");
        }
        let sl = SplitLattices { level, d0, r0, t, c0, gram_n, gram_p: (-2 * n * d0) / (t * t) };
        let det = gram_n[0][0] * gram_n[1][1] - gram_n[0][1] * gram_n[1][0];
        if !(gram_n[0][0] < 0 && det > 0 && sl.gram_p > 0) {
            return domain("split lattices have the wrong signature");
        }
        Ok(sl)
    }

    pub fn abs_d0(&self) -> i64 {
        self.d0.abs()
    }

    /// m₀ = |D₀|/4N = Q(w_U).
    pub fn m0(&self) -> Rat {
        rat(self.abs_d0(), 4 * self.level as i64)
    }

    /// w_U = [[−r₀/2N, −1/N], [c₀, r₀/2N]].
    pub fn w_u(&self) -> LVec {
        let n = self.level as i64;
        LVec::new(rat(-self.r0, 2 * n), rat(-1, n), rat_int(self.c0))
    }

    pub fn e1(&self) -> LVec {
        LVec::new(Rat::one(), Rat::zero(), rat_int(-self.r0))
    }

    pub fn e2(&self) -> LVec {
        LVec::new(Rat::zero(), rat(1, self.level as i64), rat_int(self.c0))
    }

    /// Generator (2N/t)·w_U of 𝒫.
    pub fn p_generator(&self) -> LVec {
        self.w_u().scale(&rat(2 * self.level as i64, self.t))
    }

    /// λ_k = k·g/(g, g) = (k t/|D₀|)·w_U, representing k ∈ 𝒫♯/𝒫 ≅ Z/(g, g).
    pub fn lambda(&self, k: i64) -> LVec {
        self.w_u().scale(&rat(k * self.t, self.abs_d0()))
    }

    /// Q(λ_k) = k² t²/(4N|D₀|).
    pub fn q_lambda(&self, k: i64) -> Rat {
        rat(k * k * self.t * self.t, 4 * self.level as i64 * self.abs_d0())
    }

    /// Whether the label i·|D₀| + j names a coset (i, j)/|D₀| of 𝒩♯/𝒩 in
    /// the basis (e₁, e₂).
    pub fn is_coset(&self, label: usize) -> bool {
        let d = self.abs_d0();
        let (i, j) = ((label as i64) / d, (label as i64) % d);
        if i >= d {
            return false;
        }
        let g = &self.gram_n;
        (g[0][0] * i + g[0][1] * j) % d == 0 && (g[1][0] * i + g[1][1] * j) % d == 0
    }

    /// The |D₀| coset labels of 𝒩♯/𝒩.
    pub fn n_cosets(&self) -> Vec<usize> {
        let d = self.abs_d0() as usize;
        (0..d * d).filter(|&l| self.is_coset(l)).collect()
    }

    /// Coordinates (α, β) ∈ [0, 1)² of the coset labelled `nu`.
    pub fn nu_coords(&self, nu: usize) -> (Rat, Rat) {
        let d = self.abs_d0() as usize;
        (rat((nu / d) as i64, d as i64), rat((nu % d) as i64, d as i64))
    }

    pub fn nu_vector(&self, nu: usize) -> LVec {
        let (a, b) = self.nu_coords(nu);
        self.e1().scale(&a).add(&self.e2().scale(&b))
    }

    pub fn nu_neg(&self, nu: usize) -> usize {
        let d = self.abs_d0();
        let (i, j) = ((nu as i64) / d, (nu as i64) % d);
        ((-i).rem_euclid(d) * d + (-j).rem_euclid(d)) as usize
    }

    /// Q(ν) mod 1 for a coset of 𝒩♯/𝒩.
    pub fn q_nu(&self, nu: usize) -> Rat {
        frac(&quad(self.level, &self.nu_vector(nu)))
    }

    /// Label of the coset of 𝒩♯/𝒩 containing a vector of 𝒩♯ ⊗ Q, or an
    /// error when the vector is not in 𝒩♯.
    pub fn coset_of(&self, v: &LVec) -> Result<usize> {
        let alpha = v.x1.clone();
        let beta = &v.x2 * rat_int(self.level as i64);
        let check = &beta * rat_int(self.c0) - &alpha * rat_int(self.r0);
        if check != v.x3 {
            return domain("vector is not orthogonal to w_U");
        }
        let d = self.abs_d0();
        let i = frac(&alpha) * rat_int(d);
        let j = frac(&beta) * rat_int(d);
        if !is_integer(&i) || !is_integer(&j) {
            return domain("vector is not in the dual of N");
        }
        let i: i64 = i.to_integer().try_into().unwrap_or(0);
        let j: i64 = j.to_integer().try_into().unwrap_or(0);
        let label = (i * d + j) as usize;
        if !self.is_coset(label) {
            return domain("vector is not in the dual of N");
        }
        Ok(label)
    }

    /// The component μ ∈ L♯/L of λ + ν, or `None` when λ + ν ∉ L♯.
    pub fn glue(&self, k: i64, nu: usize) -> Option<usize> {
        let x = self.lambda(k).add(&self.nu_vector(nu));
        let two_n = 2 * self.level as i64;
        let b = &x.x1 * rat_int(two_n);
        let a = -(&x.x2 * rat_int(self.level as i64));
        if !is_integer(&b) || !is_integer(&a) || !is_integer(&x.x3) {
            return None;
        }
        let b: i64 = b.to_integer().try_into().ok()?;
        Some(b.rem_euclid(two_n) as usize)
    }

    /// For n ≡ r₁r₀ (mod 2N): the 𝒩♯-coset ν(n) of y − λ, where
    /// y = [[r₁/2N, 0], [(n − r₁r₀)/2N, −r₁/2N]] ∈ L + μ₁ has 2N(y, w_U) = n
    /// and λ = (n/|D₀|)·w_U is its projection to 𝒫 ⊗ Q.
    pub fn nu_of(&self, r1: i64, n: i64) -> Result<usize> {
        let two_n = 2 * self.level as i64;
        if (n - r1 * self.r0).rem_euclid(two_n) != 0 {
            return domain("n is not congruent to r1 r0 mod 2N");
        }
        let y = LVec::new(rat(r1, two_n), Rat::zero(), rat(n - r1 * self.r0, two_n));
        let lam = self.w_u().scale(&rat(n, self.abs_d0()));
        self.coset_of(&y.sub(&lam))
    }
}

/// Theta series of 𝒫: the unary Σ q^{Q(λ)} e_λ and the Millson series
/// Σ p(λ) q^{Q(λ)} e_λ with p(a·w_U) = −a√m₀, indexed by k mod (g, g).
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaP {
    pub unary: QSeries<Radical>,
    pub millson: QSeries<Radical>,
}

/// Theta series of 𝒫 complete below exponent `bound`.
pub fn theta_p_expansions(sl: &SplitLattices, bound: &Rat) -> Result<ThetaP> {
    if bound <= &Rat::zero() {
        return domain("bound must be positive");
    }
    let gp = sl.gram_p;
    let mut unary = QSeries::with_prec(bound.clone());
    let mut millson = QSeries::with_prec(bound.clone());
    let sqrt_m0 = Radical::sqrt(&sl.m0())?;
    let mut k = 0i64;
    loop {
        let e = sl.q_lambda(k);
        if &e >= bound {
            break;
        }
        let ks: &[i64] = if k == 0 { &[0] } else { &[k, -k] };
        for &kk in ks {
            let label = kk.rem_euclid(gp) as usize;
            unary.add_term(e.clone(), label, Radical::one());
            let p = sqrt_m0.scale(&-rat(kk * sl.t, sl.abs_d0()));
            millson.add_term(e.clone(), label, p);
        }
        k += 1;
    }
    Ok(ThetaP { unary, millson })
}

/// Where the values of a provider come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProviderKind {
    File,
    Synthetic { seed: u64 },
    Zero,
}

/// Coefficients κ(n, ν) of the holomorphic part of the Eisenstein series of 𝒩.
///
/// Values vanish for n < 0 and at (0, ν ≠ 0), are symmetric under ν ↦ −ν,
/// and are complete for all n up to `complete_to` (inclusive).
#[derive(Clone, Debug, PartialEq)]
pub struct KappaProvider {
    pub kind: ProviderKind,
    pub level: u64,
    pub d0: i64,
    pub r0: i64,
    /// False when any value was read from a decimal literal.
    pub exact: bool,
    complete_to: Option<Rat>,
    table: BTreeMap<(Rat, usize), Rat>,
    split: SplitLattices,
}

/// The largest admissible exponent n ≤ bound over all cosets.
fn grid_floor(split: &SplitLattices, bound: &Rat) -> Rat {
    split
        .n_cosets()
        .into_iter()
        .map(|nu| {
            let q = split.q_nu(nu);
            let k = (bound - &q).floor();
            q + k
        })
        .max()
        .unwrap_or_else(|| bound.clone())
}

impl KappaProvider {
    pub fn zero(level: u64, d0: i64, r0: i64) -> Result<Self> {
        let split = SplitLattices::new(level, d0, r0)?;
        Ok(KappaProvider {
            kind: ProviderKind::Zero,
            level,
            d0,
            r0,
            exact: true,
            complete_to: None,
            table: BTreeMap::new(),
            split,
        })
    }

    /// Pseudorandom rationals p/q (|p| ≤ 50, 1 ≤ q ≤ 20) on every admissible
    /// (n, ν) with n ≤ bound, reproducible from `seed`.
    pub fn synthetic(level: u64, d0: i64, r0: i64, seed: u64, bound: &Rat) -> Result<Self> {
        let split = SplitLattices::new(level, d0, r0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut table = BTreeMap::new();
        for nu in split.n_cosets() {
            let neg = split.nu_neg(nu);
            if neg < nu {
                continue;
            }
            let mut n = split.q_nu(nu);
            if nu != 0 && n.is_zero() {
                n += Rat::one();
            }
            while &n <= bound {
                let v = rat(rng.gen_range(-50..=50), rng.gen_range(1..=20));
                if !v.is_zero() {
                    table.insert((n.clone(), nu), v.clone());
                    table.insert((n.clone(), neg), v);
                }
                n += Rat::one();
            }
        }
        let complete_to = Some(grid_floor(&split, bound));
        Ok(KappaProvider {
            kind: ProviderKind::Synthetic { seed },
            level,
            d0,
            r0,
            exact: true,
            complete_to,
            table,
            split,
        })
    }

    pub fn split(&self) -> &SplitLattices {
        &self.split
    }

    pub fn table(&self) -> &BTreeMap<(Rat, usize), Rat> {
        &self.table
    }

    pub fn complete_to(&self) -> Option<&Rat> {
        self.complete_to.as_ref()
    }

    /// κ(n, ν). Off-grid requests are domain errors; requests beyond the
    /// completeness bound are truncation errors.
    pub fn get(&self, n: &Rat, nu: usize) -> Result<Rat> {
        if n < &Rat::zero() {
            return Ok(Rat::zero());
        }
        if !self.split.is_coset(nu) {
            return domain(format!("{nu} is not a coset label of the dual of N"));
        }
        if !frac(&(n - self.split.q_nu(nu))).is_zero() {
            return domain(format!("exponent {n} is off the grid of coset {nu}"));
        }
        if n.is_zero() && nu != 0 {
            return Ok(Rat::zero());
        }
        if let Some(b) = &self.complete_to {
            if n > b {
                return Err(Error::Truncation { missing: vec![format!("kappa({n}, {nu})")] });
            }
        }
        Ok(self.table.get(&(n.clone(), nu)).cloned().unwrap_or_else(Rat::zero))
    }

    /// The q-expansion Σ κ(n, ν) qⁿ e_ν, complete below `bound`.
    pub fn eisenstein_series(&self, bound: &Rat) -> Result<QSeries<Radical>> {
        if let Some(b) = &self.complete_to {
            if self.has_grid_point_in(b, bound) {
                return Err(Error::Truncation { missing: vec![format!("kappa table beyond n = {b}")] });
            }
        }
        let mut s = QSeries::with_prec(bound.clone());
        for ((n, nu), v) in &self.table {
            if n < bound {
                s.add_term(n.clone(), *nu, Radical::rational(v.clone()));
            }
        }
        Ok(s)
    }

    fn has_grid_point_in(&self, lo: &Rat, hi: &Rat) -> bool {
        self.split.n_cosets().iter().any(|&nu| {
            let q = self.split.q_nu(nu);
            let mut n = q + lo.floor();
            while &n <= lo {
                n += Rat::one();
            }
            &n < hi
        })
    }

    /// Parses the line format
    /// `kappa-table v1 N=<int> D0=<int> r0=<int> [inexact]` followed by rows
    /// `n nu value`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty kappa table".into() })?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("kappa-table") || parts.next() != Some("v1") {
            return Err(Error::Parse { line: hline + 1, msg: "expected header 'kappa-table v1'".into() });
        }
        let mut level = None;
        let mut d0 = None;
        let mut r0 = None;
        let mut exact = true;
        for p in parts {
            let bad = || Error::Parse { line: hline + 1, msg: format!("bad header field '{p}'") };
            if p == "inexact" {
                exact = false;
            } else if let Some(v) = p.strip_prefix("N=") {
                level = Some(v.parse::<u64>().map_err(|_| bad())?);
            } else if let Some(v) = p.strip_prefix("D0=") {
                d0 = Some(v.parse::<i64>().map_err(|_| bad())?);
            } else if let Some(v) = p.strip_prefix("r0=") {
                r0 = Some(v.parse::<i64>().map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        let missing = |f: &str| Error::Parse { line: hline + 1, msg: format!("header lacks {f}") };
        let level = level.ok_or_else(|| missing("N"))?;
        let d0 = d0.ok_or_else(|| missing("D0"))?;
        let r0 = r0.ok_or_else(|| missing("r0"))?;
        let split = SplitLattices::new(level, d0, r0)?;
        let mut table = BTreeMap::new();
        let mut rows = BTreeMap::new();
        let mut max_n = Rat::zero();
        for (i, line) in lines {
            let ln = i + 1;
            let perr = |msg: String| Error::Parse { line: ln, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(perr("expected 'n nu value'".into()));
            }
            let (n, n_exact) = parse_rat(f[0]).ok_or_else(|| perr(format!("bad exponent '{}'", f[0])))?;
            if !n_exact {
                return Err(perr("exponents must be exact rationals".into()));
            }
            let nu: usize = f[1].parse().map_err(|_| perr(format!("bad coset '{}'", f[1])))?;
            let (v, v_exact) = parse_rat(f[2]).ok_or_else(|| perr(format!("bad value '{}'", f[2])))?;
            exact &= v_exact;
            if n < Rat::zero() {
                return Err(perr("kappa(n, nu) must vanish for n < 0".into()));
            }
            if !split.is_coset(nu) {
                return Err(perr(format!("{nu} is not a coset label")));
            }
            if !frac(&(&n - split.q_nu(nu))).is_zero() {
                return Err(perr(format!("exponent {n} is off the grid of coset {nu}")));
            }
            if n.is_zero() && nu != 0 && !v.is_zero() {
                return Err(perr("kappa(0, nu) must vanish for nu != 0".into()));
            }
            if rows.insert((n.clone(), nu), ln).is_some() {
                return Err(perr("duplicate row".into()));
            }
            if n > max_n {
                max_n = n.clone();
            }
            if !v.is_zero() {
                table.insert((n, nu), v);
            }
        }
        for ((n, nu), ln) in &rows {
            let neg = split.nu_neg(*nu);
            let a = table.get(&(n.clone(), *nu));
            let b = table.get(&(n.clone(), neg));
            if a != b {
                return Err(Error::Parse { line: *ln, msg: format!("kappa({n}, {nu}) differs from kappa({n}, {neg})") });
            }
        }
        Ok(KappaProvider {
            kind: ProviderKind::File,
            level,
            d0,
            r0,
            exact,
            complete_to: Some(max_n),
            table,
            split,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Serializes in the format read by [`KappaProvider::parse`]. The
    /// completeness bound is recorded as explicit zero rows when needed.
    pub fn to_text(&self) -> String {
        let mut s = format!("kappa-table v1 N={} D0={} r0={}", self.level, self.d0, self.r0);
        if !self.exact {
            s.push_str(" inexact");
        }
        s.push('\n');
        for ((n, nu), v) in &self.table {
            let _ = writeln!(s, "{n} {nu} {v}");
        }
        if let Some(b) = &self.complete_to {
            let top = self.table.keys().map(|(n, _)| n.clone()).max();
            if top.as_ref() != Some(b) {
                let _ = writeln!(s, "{b} {} 0", self.grid_coset(b));
            }
        }
        s
    }

    fn grid_coset(&self, n: &Rat) -> usize {

        self.split
            .n_cosets()
            .into_iter()
            .find(|&nu| frac(&(n - self.split.q_nu(nu))).is_zero())
            .unwrap_or(0)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    /// Same values regardless of provenance.
    pub fn same_values(&self, other: &Self) -> bool {
        self.table == other.table
            && self.level == other.level
            && self.d0 == other.d0
            && self.r0 == other.r0
            && self.complete_to == other.complete_to
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_for_gaussian_field() {
        let sl = SplitLattices::new(1, -4, 0).unwrap();
        assert_eq!(sl.t, 2);
        assert_eq!(sl.p_generator(), sl.w_u());
        assert_eq!(quad(1, &sl.e1()), rat_int(-1));
        assert_eq!(quad(1, &sl.w_u()), Rat::one());
        assert_eq!(sl.gram_p, 2);
        assert_eq!(sl.n_cosets().len(), 4);
    }

    #[test]
    fn gram_matches_polarization() {
        let sl = SplitLattices::new(3, -23, 1).unwrap();
        let (e1, e2) = (sl.e1(), sl.e2());
        assert_eq!(bilinear(3, &e1, &e1), rat_int(sl.gram_n[0][0]));
        assert_eq!(bilinear(3, &e1, &e2), rat_int(sl.gram_n[0][1]));
        assert_eq!(bilinear(3, &e2, &e2), rat_int(sl.gram_n[1][1]));
        assert!(bilinear(3, &e1, &sl.w_u()).is_zero());
        assert!(bilinear(3, &e2, &sl.w_u()).is_zero());
        assert_eq!(sl.n_cosets().len(), 23);
    }

    #[test]
    fn congruence_enforced() {
        assert!(SplitLattices::new(1, -4, 1).is_err());
        assert!(SplitLattices::new(1, -12, 0).is_err());
    }

    #[test]
    fn theta_symmetries() {
        let sl = SplitLattices::new(2, -7, 1).unwrap();
        let th = theta_p_expansions(&sl, &rat_int(6)).unwrap();
        assert_eq!(th.unary.coeff(&Rat::zero(), &0), Some(Radical::one()));
        assert_eq!(th.millson.coeff(&Rat::zero(), &0), Some(Radical::zero()));
        for (e, k, c) in th.millson.iter() {
            let neg = (sl.gram_p as usize - k) % sl.gram_p as usize;
            assert_eq!(th.millson.coeff(e, &neg), Some(-c.clone()));
        }
    }

    #[test]
    fn synthetic_is_reproducible_and_symmetric() {
        let a = KappaProvider::synthetic(1, -3, 1, 1, &rat_int(4)).unwrap();
        let b = KappaProvider::synthetic(1, -3, 1, 1, &rat_int(4)).unwrap();
        assert_eq!(a, b);
        for ((n, nu), v) in a.table() {
            assert_eq!(&a.get(n, a.split().nu_neg(*nu)).unwrap(), v);
        }
        assert!(a.get(&rat_int(9), 0).is_err());
        assert!(a.get(&rat_int(-1), 0).unwrap().is_zero());
    }

    #[test]
    fn file_round_trip() {
        let a = KappaProvider::synthetic(2, -7, 1, 5, &rat_int(3)).unwrap();
        let b = KappaProvider::parse(&a.to_text()).unwrap();
        assert!(a.same_values(&b));
        assert_eq!(b.to_text(), a.to_text());
    }

    #[test]
    fn loader_rejects_bad_rows() {
        let h = "kappa-table v1 N=1 D0=-3 r0=1\n";
        assert!(KappaProvider::parse(&format!("{h}-1 0 1\n")).is_err());
        let sl = SplitLattices::new(1, -3, 1).unwrap();
        let nu = sl.n_cosets().into_iter().find(|&v| v != 0).unwrap();
        let q = sl.q_nu(nu);
        match KappaProvider::parse(&format!("{h}{q} {nu} 1\n")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(KappaProvider::parse(&format!("{h}1/7 0 1\n")).is_err());
    }
}
