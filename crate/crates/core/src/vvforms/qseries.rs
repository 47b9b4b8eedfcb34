use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::scalars::rat::{frac, rat_pow, Coeff, Rat};
use crate::weilrep::DiscriminantForm;

/// A q-series Σ c(e, i) qᵉ e_i with rational exponents `e` and component
/// index `i`.
///
/// `prec` is the truncation order: every coefficient with exponent below it
/// is known (absent means zero). `None` marks an exact finite expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C, I: Ord + Clone = usize> {
    terms: BTreeMap<(Rat, I), C>,
    prec: Option<Rat>,
}

fn min_prec(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}

impl<C: Coeff, I: Ord + Clone + Debug> QSeries<C, I> {
    pub fn new(prec: Option<Rat>) -> Self {
        QSeries { terms: BTreeMap::new(), prec }
    }

    /// An exact (finite) expansion.
    pub fn exact() -> Self {
        Self::new(None)
    }

    pub fn with_prec(prec: Rat) -> Self {
        Self::new(Some(prec))
    }

    pub fn from_terms(prec: Option<Rat>, terms: impl IntoIterator<Item = (Rat, I, C)>) -> Self {
        let mut s = Self::new(prec);
        for (e, i, c) in terms {
            s.add_term(e, i, c);
        }
        s
    }

    pub fn prec(&self) -> Option<&Rat> {
        self.prec.as_ref()
    }

    pub fn terms(&self) -> &BTreeMap<(Rat, I), C> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, &I, &C)> {
        self.terms.iter().map(|((e, i), c)| (e, i, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether exponent `e` lies inside the known range.
    pub fn knows(&self, e: &Rat) -> bool {
        self.prec.as_ref().map_or(true, |p| e < p)
    }

    /// Adds `c qᵉ e_i`; terms at or beyond the truncation order are dropped.
    pub fn add_term(&mut self, e: Rat, i: I, c: C) {
        if c.is_zero() || !self.knows(&e) {
            return;
        }
        let key = (e, i);
        let cur = self.terms.remove(&key).unwrap_or_else(C::zero);
        let next = cur + c;
        if !next.is_zero() {
            self.terms.insert(key, next);
        }
    }

    /// Coefficient at `(e, i)`, or `None` when `e` is beyond the truncation.
    pub fn coeff(&self, e: &Rat, i: &I) -> Option<C> {
        if !self.knows(e) {
            return None;
        }
        Some(self.terms.get(&(e.clone(), i.clone())).cloned().unwrap_or_else(C::zero))
    }

    /// Coefficient or a truncation error naming the missing index.
    pub fn coeff_or_err(&self, e: &Rat, i: &I) -> Result<C> {
        self.coeff(e, i).ok_or_else(|| Error::Truncation { missing: vec![format!("({e}, {i:?})")] })
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rat> {
        self.terms.keys().map(|(e, _)| e.clone()).min()
    }

    /// Drops exponents `>= p` and lowers the truncation order to `p`.
    pub fn truncated(&self, p: &Rat) -> Self {
        let prec = min_prec(&self.prec, &Some(p.clone()));
        let terms = self.terms.iter().filter(|((e, _), _)| e < p).map(|(k, v)| (k.clone(), v.clone())).collect();
        QSeries { terms, prec }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QSeries<D, I> {
        let mut out = QSeries::new(self.prec.clone());
        for ((e, i), c) in &self.terms {
            out.add_term(e.clone(), i.clone(), f(c));
        }
        out
    }

    pub fn map_index<J: Ord + Clone + Debug>(&self, f: impl Fn(&I) -> J) -> QSeries<C, J> {
        let mut out = QSeries::new(self.prec.clone());
        for ((e, i), c) in &self.terms {
            out.add_term(e.clone(), f(i), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::new(min_prec(&self.prec, &other.prec));
        for ((e, i), c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), i.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Dᵏ with D = q d/dq = (2πi)⁻¹ d/dτ: multiplies each coefficient by eᵏ.
    pub fn theta_derivative(&self, k: u32) -> Self {
        let mut out = Self::new(self.prec.clone());
        for ((e, i), c) in &self.terms {
            let w = C::from_rat(&rat_pow(e, k as i32));
            out.add_term(e.clone(), i.clone(), c.clone() * w);
        }
        out
    }

    /// Terms with exponent `<= 0`; needs the truncation order to exceed 0.
    pub fn principal_part(&self) -> Result<Self> {
        if let Some(p) = &self.prec {
            if !p.is_positive_rat() {
                return domain("truncation order does not reach the constant term");
            }
        }
        let mut out = Self::exact();
        for ((e, i), c) in &self.terms {
            if !e.is_positive_rat() {
                out.add_term(e.clone(), i.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Componentwise product on the tensor index set.
    pub fn tensor<J: Ord + Clone + Debug>(&self, other: &QSeries<C, J>) -> QSeries<C, (I, J)> {
        let prec = product_prec(self, other);
        let mut out = QSeries::new(prec);
        for ((e1, i), c1) in &self.terms {
            for ((e2, j), c2) in &other.terms {
                out.add_term(e1 + e2, (i.clone(), j.clone()), c1.clone() * c2.clone());
            }
        }
        out
    }
}

/// Truncation order of a product: min(p₁ + v₂, p₂ + v₁), where the valuation
/// of an empty series is its own truncation order.
pub fn product_prec<C: Coeff, I: Ord + Clone + Debug, J: Ord + Clone + Debug>(
    a: &QSeries<C, I>,
    b: &QSeries<C, J>,
) -> Option<Rat> {
    let va = a.valuation().or_else(|| a.prec.clone());
    let vb = b.valuation().or_else(|| b.prec.clone());
    let x = match (&a.prec, &vb) {
        (Some(p), Some(v)) => Some(p + v),
        _ => None,
    };
    let y = match (&b.prec, &va) {
        (Some(p), Some(v)) => Some(p + v),
        _ => None,
    };
    if a.prec.is_some() && vb.is_none() || b.prec.is_some() && va.is_none() {
        // one factor is exactly zero
        return None;
    }
    min_prec(&x, &y)
}

trait PositiveRat {
    fn is_positive_rat(&self) -> bool;
}

impl PositiveRat for Rat {
    fn is_positive_rat(&self) -> bool {
        self > &Rat::zero()
    }
}

/// A vector-valued q-expansion for the discriminant form of level N.
///
/// Exponents of components under ρ_L satisfy e ≡ q(μ) mod 1; under the dual
/// representation ρ̄_L they satisfy e ≡ −q(μ) mod 1.
#[derive(Clone, Debug, PartialEq)]
pub struct VVQExpansion<C> {
    pub level: u64,
    pub dual: bool,
    pub series: QSeries<C, usize>,
}

impl<C: Coeff> VVQExpansion<C> {
    pub fn new(level: u64, dual: bool, series: QSeries<C, usize>) -> Result<Self> {
        let f = VVQExpansion { level, dual, series };
        f.check_grid()?;
        Ok(f)
    }

    pub fn zero(level: u64, dual: bool, prec: Option<Rat>) -> Self {
        VVQExpansion { level, dual, series: QSeries::new(prec) }
    }

    /// Verifies the exponent grid against the representation.
    pub fn check_grid(&self) -> Result<()> {
        let df = DiscriminantForm::new(self.level)?;
        for ((e, mu), _) in self.series.terms() {
            if *mu >= df.size() {
                return domain(format!("component {mu} outside Z/{}Z", df.size()));
            }
            let q = df.q(*mu as i64);
            let target = if self.dual { -q } else { q };
            if !frac(&(e - target)).is_zero() {
                return domain(format!(
                    "exponent {e} at component {mu} is off the grid of the {} representation",
                    if self.dual { "dual" } else { "Weil" }
                ));
            }
        }
        Ok(())
    }
}

/// `coeff · π^pi_pow · i^i_pow`, keeping transcendental factors symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbolic<C> {
    pub coeff: C,
    pub pi_pow: Rat,
    pub i_pow: u8,
}

impl<C: Coeff> Symbolic<C> {
    pub fn new(coeff: C, pi_pow: Rat, i_pow: u8) -> Self {
        Symbolic { coeff, pi_pow, i_pow: i_pow % 4 }
    }

    pub fn rational(coeff: C) -> Self {
        Self::new(coeff, Rat::zero(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl<C: Coeff + std::fmt::Display> std::fmt::Display for Symbolic<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        write!(f, "({})", self.coeff)?;
        if !self.pi_pow.is_zero() {
            write!(f, "*pi^({})", self.pi_pow)?;
        }
        match self.i_pow {
            0 => Ok(()),
            1 => write!(f, "*i"),
            2 => write!(f, "*(-1)"),
            _ => write!(f, "*(-i)"),
        }
    }
}

impl<C: Coeff> Default for Symbolic<C> {
    fn default() -> Self {
        Self::rational(C::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{rat, rat_int};

    type S = QSeries<Rat, usize>;

    #[test]
    fn truncation_bookkeeping() {
        let mut s = S::with_prec(rat_int(3));
        s.add_term(rat_int(1), 0, rat_int(2));
        s.add_term(rat_int(5), 0, rat_int(7));
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&rat_int(2), &0), Some(Rat::zero()));
        assert_eq!(s.coeff(&rat_int(3), &0), None);
        assert!(s.coeff_or_err(&rat_int(4), &1).is_err());
    }

    #[test]
    fn products_track_reach() {
        let a = S::from_terms(Some(rat_int(5)), [(rat_int(-1), 0, rat_int(1))]);
        let b = S::from_terms(Some(rat_int(4)), [(rat_int(0), 0, rat_int(1)), (rat_int(2), 0, rat_int(3))]);
        let p = a.tensor(&b);
        assert_eq!(p.prec(), Some(&rat_int(3)));
        assert_eq!(p.coeff(&rat_int(1), &(0, 0)), Some(rat_int(3)));
    }

    #[test]
    fn grid_validation() {
        // N = 1: q(1) = 3/4, so a dual component-1 exponent must be ≡ 1/4
        let ok = S::from_terms(None, [(rat(-3, 4), 1, rat_int(1))]);
        assert!(VVQExpansion::new(1, true, ok.clone()).is_ok());
        assert!(VVQExpansion::new(1, false, ok).is_err());
    }

    #[test]
    fn principal_part_needs_constant_term() {
        let s = S::from_terms(Some(rat_int(2)), [(rat_int(-1), 0, rat_int(1)), (rat_int(1), 0, rat_int(4))]);
        assert_eq!(s.principal_part().unwrap().len(), 1);
        let short = S::from_terms(Some(rat_int(0)), [(rat_int(-1), 0, rat_int(1))]);
        assert!(short.principal_part().is_err());
    }
}
