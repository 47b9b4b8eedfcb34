//! Heegner points on X₀(N) through binary quadratic forms, class numbers and
//! formal Heegner cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::scalars::rat::{gcd_i64, is_integer, rat, rat_int, Rat};
use crate::scalars::surd::SurdVal;
use crate::vvforms::ops::{half_power_parts, is_fundamental};
use crate::weilrep::DiscriminantForm;

/// The form Ax² + Bxy + Cy².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QFormRep {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QFormRep {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QFormRep { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// F∘γ for γ = [[p, q], [r, s]]: (x, y) ↦ F(px + qy, rx + sy).
    pub fn compose(&self, g: &Mat2) -> Self {
        let [p, q, r, s] = g.0;
        QFormRep {
            a: self.eval(p, r),
            b: 2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            c: self.eval(q, s),
        }
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i64(gcd_i64(self.a, self.b), self.c) == 1
    }

    /// Positive definite and reduced: |B| ≤ A ≤ C, with B ≥ 0 when |B| = A or A = C.
    pub fn is_reduced(&self) -> bool {
        self.a > 0
            && self.disc() < 0
            && self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    /// The CM point x + iy with x = B/(2A), y² = |D|/(4A²).
    pub fn cm_point(&self) -> Result<CMPoint> {
        if self.a <= 0 || self.disc() >= 0 {
            return domain("CM points need a positive definite form");
        }
        Ok(CMPoint { x: rat(self.b, 2 * self.a), y_sq: rat(-self.disc(), 4 * self.a * self.a) })
    }
}

impl fmt::Display for QFormRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// An element [[p, q], [r, s]] of SL₂(Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat2(pub [i64; 4]);

impl Mat2 {
    pub const ID: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn det(&self) -> i64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    pub fn inverse(&self) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([d, -b, -c, a])
    }
}

/// A CM point x + iy, with x rational and y = √(y_sq).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMPoint {
    pub x: Rat,
    pub y_sq: Rat,
}

impl CMPoint {
    pub fn y(&self) -> SurdVal {
        SurdVal::sqrt(&self.y_sq).expect("y_sq is positive")
    }
}

/// One Γ₀(N)-class of Heegner forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerPoint {
    pub form: QFormRep,
    pub point: CMPoint,
    /// Order of the stabilizer of the form in Γ₀(N) (including ±1).
    pub stabilizer: usize,
}

impl HeegnerPoint {
    /// 2/|Stab|: 1 for a generic point.
    pub fn weight(&self) -> Rat {
        rat(2, self.stabilizer as i64)
    }
}

/// The Heegner divisor Z(m, μ) restricted to positive definite forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerDivisor {
    pub level: u64,
    pub m: Rat,
    pub mu: usize,
    pub points: Vec<HeegnerPoint>,
}

impl HeegnerDivisor {
    /// Weighted degree counting both the positive and negative definite
    /// halves: 2 Σ 2/|Stab|.
    pub fn degree(&self) -> Rat {
        self.points.iter().map(|p| p.weight()).sum::<Rat>() * rat_int(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    Classes,
    /// All forms with N | A, 0 < A ≤ bound and −A < B ≤ A, reduced to
    /// Γ₀(N)-orbits by brute force.
    RawBox(i64),
}

/// Automorphs of a positive definite reduced form in SL₂(Z).
pub fn automorphs(f: &QFormRep) -> Vec<Mat2> {
    let mut out = Vec::new();
    for p in -1..=1 {
        for q in -1..=1 {
            for r in -1..=1 {
                for s in -1..=1 {
                    let g = Mat2([p, q, r, s]);
                    if g.det() == 1 && f.compose(&g) == *f {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Positive definite reduced forms of discriminant `d`, primitive or not.
pub fn reduced_forms(d: i64) -> Vec<QFormRep> {
    let mut out = Vec::new();
    if d >= 0 || d.rem_euclid(4) > 1 {
        return out;
    }
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QFormRep::new(a, b, c);
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// h(D) and the unit count w(D) for a negative discriminant, by counting
/// primitive reduced forms.
pub fn class_number(d: i64) -> Result<(u64, u64)> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        return domain(format!("{d} is not a negative discriminant"));
    }
    let h = reduced_forms(d).iter().filter(|f| f.is_primitive()).count() as u64;
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok((h, w))
}

/// deg Z(U) = 4h(D₀)/w(D₀).
pub fn degree_zu(d0: i64) -> Result<Rat> {
    if d0 >= 0 || !is_fundamental(d0) {
        return domain(format!("{d0} is not a negative fundamental discriminant"));
    }
    let (h, w) = class_number(d0)?;
    Ok(rat(4 * h as i64, w as i64))
}

/// Canonical representative of (a : c) ∈ P¹(Z/N).
fn p1_normalize(a: i64, c: i64, n: i64) -> (i64, i64) {
    if n == 1 {
        return (0, 0);
    }
    let mut best = (i64::MAX, i64::MAX);
    for u in 1..n {
        if gcd_i64(u, n) != 1 {
            continue;
        }
        let cand = ((u * a).rem_euclid(n), (u * c).rem_euclid(n));
        if cand < best {
            best = cand;
        }
    }
    best
}

fn p1_points(n: i64) -> Vec<(i64, i64)> {
    let mut set = BTreeSet::new();
    for a in 0..n.max(1) {
        for c in 0..n.max(1) {
            if gcd_i64(gcd_i64(a, c), n) == 1 || n == 1 {
                set.insert(p1_normalize(a, c, n));
            }
        }
    }
    set.into_iter().collect()
}

/// Some γ ∈ SL₂(Z) whose first column reduces to (a, c) mod N.
fn lift_p1(a: i64, c: i64, n: i64) -> Mat2 {
    for i in 0..=n * n + 1 {
        for j in 0..=n * n + 1 {
            let p = a + i * n;
            let r = c + j * n;
            if gcd_i64(p, r) == 1 {
                let (g, x, y) = ext_gcd(p, r);
                debug_assert_eq!(g, 1);
                // p·x + r·y = 1 ⇒ [[p, −y], [r, x]] has determinant 1
                return Mat2([p, -y, r, x]);
            }
        }
    }
    unreachable!("every point of P¹(Z/N) lifts to SL₂(Z)")
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

fn apply_col(g: &Mat2, (a, c): (i64, i64)) -> (i64, i64) {
    (g.0[0] * a + g.0[1] * c, g.0[2] * a + g.0[3] * c)
}

/// Validates (N, m, μ) and returns (D, r) with D = −4Nm and r the lift of μ.
fn heegner_params(level: u64, m: &Rat, mu: usize) -> Result<(i64, i64)> {
    let df = DiscriminantForm::new(level)?;
    if mu >= df.size() {
        return domain(format!("component {mu} outside Z/{}Z", df.size()));
    }
    if m <= &Rat::zero() {
        return domain("m must be positive");
    }
    let n = level as i64;
    // m ≡ q(μ) = −μ²/4N mod 1, i.e. −4Nm ≡ μ² mod 4N
    let d = -(m * rat_int(4 * n));
    if !is_integer(&d) {
        return domain(format!("m = {m} is not in (1/4N)Z"));
    }
    let d: i64 = d.to_integer().try_into().map_err(|_| crate::error::Error::Domain("m too large".into()))?;
    let r = mu as i64;
    if (d - r * r).rem_euclid(4 * n) != 0 {
        return domain(format!("m = {m} is incompatible with component {mu}"));
    }
    Ok((d, r))
}

/// A box size for [`EnumMode::RawBox`] that reaches every class: the largest
/// value of a reduced form of discriminant `d` on the square |x|, |y| ≤ N.
pub fn raw_box_bound(level: u64, d: i64) -> i64 {
    let n = level as i64;
    reduced_forms(d)
        .iter()
        .flat_map(|f| (-n..=n).flat_map(move |x| (-n..=n).map(move |y| f.eval(x, y))))
        .max()
        .unwrap_or(0)
        .max(n)
}

/// Γ₀(N)-classes of positive definite forms [A, B, C] with N | A,
/// B ≡ μ mod 2N and B² − 4AC = −4Nm.
pub fn enumerate_heegner(level: u64, m: &Rat, mu: usize, mode: EnumMode) -> Result<HeegnerDivisor> {
    let (d, r) = heegner_params(level, m, mu)?;
    let n = level as i64;
    let points = match mode {
        EnumMode::Classes => classes(d, r, n),
        EnumMode::RawBox(bound) => raw_box(d, r, n, bound),
    };
    Ok(HeegnerDivisor { level, m: m.clone(), mu, points })
}

fn matches(q: &QFormRep, r: i64, n: i64) -> bool {
    q.a.rem_euclid(n) == 0 && (q.b - r).rem_euclid(2 * n) == 0
}

fn classes(d: i64, r: i64, n: i64) -> Vec<HeegnerPoint> {
    let pts = p1_points(n);
    let mut out = Vec::new();
    for f in reduced_forms(d) {
        let auts = automorphs(&f);
        let mut seen = BTreeSet::new();
        for &(a, c) in &pts {
            if seen.contains(&(a, c)) {
                continue;
            }
            let gamma = lift_p1(a, c, n);
            let q = f.compose(&gamma);
            // the whole Aut(F)-orbit of this coset gives one Γ₀(N)-class
            let mut stab = 0;
            for s in &auts {
                let img = apply_col(s, (a, c));
                let key = p1_normalize(img.0, img.1, n);
                if key == (a, c) {
                    stab += 1;
                }
                seen.insert(key);
            }
            if matches(&q, r, n) {
                let point = q.cm_point().expect("positive definite");
                out.push(HeegnerPoint { form: q, point, stabilizer: stab });
            }
        }
    }
    out
}

/// SL₂(Z)-reduction of a positive definite form, returning (F, γ) with
/// Q = F∘γ.
pub fn reduce_tracked(q: &QFormRep) -> (QFormRep, Mat2) {
    // track g with current = q∘g; at the end q = F∘g⁻¹
    let mut f = *q;
    let mut g = Mat2::ID;
    loop {
        if f.b.abs() > f.a || (f.b == -f.a) {
            // translate x ↦ x + ky: B ↦ B + 2kA
            let k = (f.a - f.b).div_euclid(2 * f.a);
            let t = Mat2([1, k, 0, 1]);
            f = f.compose(&t);
            g = g.mul(&t);
            continue;
        }
        if f.a > f.c || (f.a == f.c && f.b < 0) {
            let s = Mat2([0, -1, 1, 0]);
            f = f.compose(&s);
            g = g.mul(&s);
            continue;
        }
        break;
    }
    (f, g.inverse())
}

fn raw_box(d: i64, r: i64, n: i64, bound: i64) -> Vec<HeegnerPoint> {
    let mut found: BTreeMap<(QFormRep, (i64, i64)), QFormRep> = BTreeMap::new();
    let mut a = n;
    while a <= bound {
        // B ≡ r (2N) and −A < B ≤ A
        let mut b = r - (2 * n) * ((r + a).div_euclid(2 * n));
        while b <= -a {
            b += 2 * n;
        }
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let q = QFormRep::new(a, b, num / (4 * a));
                let (f, gamma) = reduce_tracked(&q);
                debug_assert_eq!(f.compose(&gamma), q);
                let col = (gamma.0[0], gamma.0[2]);
                let key = automorphs(&f)
                    .iter()
                    .map(|s| {
                        let img = apply_col(s, col);
                        p1_normalize(img.0, img.1, n)
                    })
                    .min()
                    .expect("identity is an automorph");
                found.entry((f, key)).or_insert(q);
            }
            b += 2 * n;
        }
        a += n;
    }
    found
        .into_iter()
        .map(|((f, key), q)| {
            let stab = automorphs(&f)
                .iter()
                .filter(|s| {
                    let img = apply_col(s, key);
                    p1_normalize(img.0, img.1, n) == key
                })
                .count();
            HeegnerPoint { form: q, point: q.cm_point().expect("positive definite"), stabilizer: stab }
        })
        .collect()
}

/// A formal sum Σ mult(m, μ) Z_κ(m, μ) with exact multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerCycle {
    pub level: u64,
    pub kappa: u32,
    terms: BTreeMap<(Rat, usize), SurdVal>,
}

impl HeegnerCycle {
    pub fn new(level: u64, kappa: u32) -> Self {
        HeegnerCycle { level, kappa, terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<(Rat, usize), SurdVal> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, m: Rat, mu: usize, mult: SurdVal) -> Result<()> {
        let key = (m, mu);
        let next = match self.terms.get(&key) {
            Some(cur) => cur.add(&mult)?,
            None => mult,
        };
        if next.is_rational() && next.base().is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next);
        }
        Ok(())
    }
}

/// Z_κ(f) = Σ c⁺(−m, μ) m^{(κ−1)/2} Z(m, μ) from (m, μ, c⁺(−m, μ)) data.
pub fn build_cycle(level: u64, entries: &[(Rat, usize, Rat)], kappa: u32) -> Result<HeegnerCycle> {
    if kappa == 0 {
        return domain("κ must be at least 1");
    }
    let mut cycle = HeegnerCycle::new(level, kappa);
    for (m, mu, c) in entries {
        if m <= &Rat::zero() {
            return domain("cycle entries need m > 0");
        }
        let (f, rad) = half_power_parts(m, kappa);
        let mult = if rad.is_one() {
            SurdVal::rational(c * f)
        } else {
            SurdVal::new(Rat::zero(), c * f, &rad)?
        };
        cycle.add(m.clone(), *mu, mult)?;
    }
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-3).unwrap(), (1, 6));
        assert_eq!(class_number(-4).unwrap(), (1, 4));
        assert_eq!(class_number(-23).unwrap(), (3, 2));
        assert_eq!(class_number(-20).unwrap().0, 2);
        assert!(class_number(-5).is_err());
    }

    #[test]
    fn zu_degrees() {
        assert_eq!(degree_zu(-4).unwrap(), Rat::one());
        assert_eq!(degree_zu(-3).unwrap(), rat(2, 3));
        assert_eq!(degree_zu(-23).unwrap(), rat_int(6));
        assert!(degree_zu(-12).is_err());
    }

    #[test]
    fn level_one_examples() {
        let z = enumerate_heegner(1, &Rat::one(), 0, EnumMode::Classes).unwrap();
        assert_eq!(z.points.len(), 1);
        assert_eq!(z.points[0].form, QFormRep::new(1, 0, 1));
        let z = enumerate_heegner(1, &rat(23, 4), 1, EnumMode::Classes).unwrap();
        assert_eq!(z.points.len(), 3);
        assert!(enumerate_heegner(1, &rat(23, 4), 0, EnumMode::Classes).is_err());
    }

    #[test]
    fn reduction_tracks_matrix() {
        let q = QFormRep::new(7, 19, 13);
        let (f, g) = reduce_tracked(&q);
        assert!(f.is_reduced());
        assert_eq!(f.compose(&g), q);
    }

    #[test]
    fn cycle_multiplicities() {
        let c = build_cycle(1, &[(rat_int(2), 0, rat_int(5))], 3).unwrap();
        assert_eq!(c.terms()[&(rat_int(2), 0)], SurdVal::rational(rat_int(10)));
        let c = build_cycle(1, &[(rat_int(2), 0, rat_int(1))], 2).unwrap();
        assert_eq!(c.terms()[&(rat_int(2), 0)], SurdVal::sqrt(&rat_int(2)).unwrap());
        assert!(build_cycle(1, &[], 1).unwrap().is_empty());
    }
}
