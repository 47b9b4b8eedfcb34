use proptest::prelude::*;

use hhc::heegner::{enumerate_heegner, EnumMode};
use hhc::intersect::{finite_intersection, standard_instances};
use hhc::kappa::KappaProvider;
use hhc::lfunc::{CoefficientFile, LSeries, RootSign};
use hhc::scalars::rat::{rat, rat_int, Rat};
use hhc::scalars::Radical;
use hhc::vvforms::ops::{rankin_cohen, serre_pairing, shimura_lift};
use hhc::vvforms::{QSeries, VVFormFile, VVQExpansion};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, q)| rat(p, q))
}

/// A series for ρ_L at level 1 with exponents in [−2, 3) on the grid.
fn grid_series(dual: bool) -> impl Strategy<Value = QSeries<Rat>> {
    prop::collection::vec((0i64..20, 0usize..2, small_rat()), 0..10).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(k, mu, c)| {
            // q(1) = −1/4 on ρ_L, +1/4 on the dual
            let shift = if mu == 1 { if dual { rat(1, 4) } else { rat(3, 4) } } else { Rat::from_integer(0.into()) };
            (rat_int(k / 4 - 2) + shift, mu, c)
        });
        QSeries::from_terms(Some(rat_int(3)), terms)
    })
}

fn scalar_series() -> impl Strategy<Value = QSeries<Rat, ()>> {
    prop::collection::vec((1i64..8, small_rat()), 1..6)
        .prop_map(|t| QSeries::from_terms(Some(rat_int(12)), t.into_iter().map(|(e, c)| (rat_int(e), (), c))))
}

fn lift_input() -> impl Strategy<Value = QSeries<Rat>> {
    prop::collection::vec((1i64..=8, 0usize..2, small_rat()), 0..12)
        .prop_map(|t| QSeries::from_terms(None, t.into_iter().map(|(k, nu, c)| (rat(3 * k * k, 4), nu, c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairing_is_bilinear(f in grid_series(false), g in grid_series(false), h in grid_series(true),
                           a in small_rat(), b in small_rat()) {
        let lhs = serre_pairing(&f.scale(&a).add(&g.scale(&b)), &h).unwrap();
        let rhs = a * serre_pairing(&f, &h).unwrap() + b * serre_pairing(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rankin_cohen_swaps_with_sign(f in scalar_series(), g in scalar_series(), j in 0u32..4) {
        let (k, l) = (rat(1, 2), rat(3, 2));
        let fg = rankin_cohen(&f, &k, &g, &l, j).unwrap();
        let gf = rankin_cohen(&g, &l, &f, &k, j).unwrap();
        let sign = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        prop_assert_eq!(fg, gf.scale(&sign).map_index(|&(a, b)| (b, a)));
    }

    #[test]
    fn vvform_file_round_trip(f in grid_series(true)) {
        let file = VVFormFile { weight: rat(1, 2), form: VVQExpansion::new(1, true, f).unwrap(), exact: true };
        prop_assert_eq!(VVFormFile::parse(&file.to_text()).unwrap(), file);
    }

    #[test]
    fn shimura_lift_is_linear(g in lift_input(), h in lift_input(), a in small_rat(), kappa in 1u32..4) {
        let m0 = rat(3, 4);
        let lg = shimura_lift(&g, 1, kappa, &m0, 1, -3, 20).unwrap();
        let lh = shimura_lift(&h, 1, kappa, &m0, 1, -3, 20).unwrap();
        let lc = shimura_lift(&g.scale(&a).add(&h), 1, kappa, &m0, 1, -3, 20).unwrap();
        for n in 1..20 {
            prop_assert_eq!(lc.a(n).unwrap(), &a * lg.a(n).unwrap() + lh.a(n).unwrap());
        }
    }

    #[test]
    fn radical_ring_laws(a in small_rat(), b in small_rat(), c in small_rat(), r in 1i64..30, s in 1i64..30) {
        let x = Radical::sqrt(&rat_int(r)).unwrap().scale(&a) + Radical::rational(b.clone());
        let y = Radical::sqrt(&rat_int(s)).unwrap().scale(&c);
        let z = Radical::sqrt(&rat_int(r * s)).unwrap() + Radical::rational(a);
        prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z);
        prop_assert_eq!(x.clone() * y.clone(), y * x);
    }

    #[test]
    fn coefficient_file_round_trip(coeffs in prop::collection::btree_map(1u64..200, small_rat(), 0..30)) {
        let f = CoefficientFile { level: 11, weight: rat_int(2), coeffs, exact: true };
        prop_assert_eq!(CoefficientFile::parse(&f.to_text()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kappa_table_round_trip(seed in any::<u64>(), which in 0usize..6) {
        let inst = &standard_instances()[which];
        let p = KappaProvider::synthetic(inst.level, inst.d0, inst.r0, seed, &inst.m1).unwrap();
        let q = KappaProvider::parse(&p.to_text()).unwrap();
        prop_assert!(p.same_values(&q));
        prop_assert_eq!(q.to_text(), p.to_text());
    }

    #[test]
    fn finite_part_under_negated_class(seed in any::<u64>(), which in 0usize..6, kappa in 1u32..6) {
        let inst = &standard_instances()[which];
        let p = KappaProvider::synthetic(inst.level, inst.d0, inst.r0, seed, &inst.m1).unwrap();
        let neg = (2 * inst.level as usize - inst.mu1) % (2 * inst.level as usize);
        let a = finite_intersection(inst.level, kappa, inst.d0, inst.r0, &inst.m1, inst.mu1, &p).unwrap();
        let b = finite_intersection(inst.level, kappa, inst.d0, inst.r0, &inst.m1, neg, &p).unwrap();
        let sign = if kappa % 2 == 1 { rat_int(1) } else { rat_int(-1) };
        prop_assert_eq!(b, a.scale(&sign));
    }

    #[test]
    fn l_derivative_is_linear(scale in -5.0f64..5.0) {
        prop_assume!(scale.abs() > 0.1);
        let c: Vec<f64> = hhc::lfunc::conductor37_coeffs(300).into_iter().map(|a| a as f64).collect();
        let ls = LSeries::new(37, 2, c).unwrap().with_sign(RootSign::Minus);
        let d = ls.l_derivative_central(&1.0).unwrap();
        let ds = ls.scaled(&scale).l_derivative_central(&1.0).unwrap();
        prop_assert!((ds - scale * d).abs() < 1e-10 * scale.abs());
    }
}

#[test]
fn heegner_divisor_symmetric_in_mu() {
    for level in 1..=8u64 {
        let n = level as i64;
        for d in 3..=120i64 {
            for mu in 0..2 * n {
                if (-d - mu * mu).rem_euclid(4 * n) != 0 {
                    continue;
                }
                let m = rat(d, 4 * n);
                let neg = ((2 * n - mu) % (2 * n)) as usize;
                let a = enumerate_heegner(level, &m, mu as usize, EnumMode::Classes).unwrap();
                let b = enumerate_heegner(level, &m, neg, EnumMode::Classes).unwrap();
                assert_eq!(a.degree(), b.degree(), "N={level} D=-{d} mu={mu}");
            }
        }
    }
}
