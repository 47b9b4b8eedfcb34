use hhc::intersect::{ct_closed_form, ct_direct, delta_principal_part, finite_intersection, global_height, LPrimeSlot};
use hhc::kappa::KappaProvider;
use hhc::scalars::rat::{rat, Rat};
use hhc::scalars::surd::Radical;
use num_traits::Zero;

/// (N, D0, r0, [(m1, mu1)]) with gcd(D0, 2N D1) = 1.
fn instances() -> Vec<(u64, i64, i64, Vec<(Rat, usize)>)> {
    vec![
        (1, -3, 1, vec![(rat(7, 4), 1), (rat(2, 1), 0)]),
        (1, -7, 1, vec![(rat(3, 4), 1), (rat(5, 1), 0)]),
        (2, -7, 1, vec![(rat(15, 8), 1), (rat(23, 8), 3)]),
        (2, -15, 1, vec![(rat(7, 8), 1), (rat(23, 8), 3)]),
        (3, -11, 1, vec![(rat(5, 3), 2), (rat(23, 12), 1)]),
        (3, -23, 1, vec![(rat(2, 3), 4), (rat(35, 12), 5)]),
    ]
}

#[test]
fn direct_equals_closed_form() {
    let mut nonzero = 0;
    for (n, d0, r0, pairs) in instances() {
        for (m1, mu1) in pairs {
            for kappa in 1..=6u32 {
                for seed in 0..3u64 {
                    let p = KappaProvider::synthetic(n, d0, r0, seed, &m1).unwrap();
                    let pp = delta_principal_part(n, kappa, &m1, mu1).unwrap();
                    let d = ct_direct(n, kappa, d0, r0, &pp, &p).unwrap();
                    let c = ct_closed_form(n, kappa, d0, r0, &m1, mu1, &p).unwrap();
                    assert_eq!(d, c, "N={n} D0={d0} m1={m1} mu1={mu1} kappa={kappa}");
                    if !d.is_zero() {
                        nonzero += 1;
                    }
                }
            }
        }
    }
    assert!(nonzero > 150, "only {nonzero} nonzero instances");
}

#[test]
fn finite_part_under_negated_class() {
    for (n, d0, r0, pairs) in instances() {
        let two_n = 2 * n as usize;
        for (m1, mu1) in pairs {
            for kappa in 1..=6u32 {
                let p = KappaProvider::synthetic(n, d0, r0, 9, &m1).unwrap();
                let a = finite_intersection(n, kappa, d0, r0, &m1, mu1, &p).unwrap();
                let b = finite_intersection(n, kappa, d0, r0, &m1, (two_n - mu1) % two_n, &p).unwrap();
                let expect = if kappa % 2 == 1 { a.clone() } else { -a.clone() };
                assert_eq!(b, expect);
            }
        }
    }
}

#[test]
fn global_cancels() {
    for (n, d0, r0, pairs) in instances() {
        for (m1, mu1) in pairs {
            for kappa in 1..=6u32 {
                let mut first = None;
                for seed in 0..3u64 {
                    let p = KappaProvider::synthetic(n, d0, r0, seed, &m1).unwrap();
                    let pp = delta_principal_part(n, kappa, &m1, mu1).unwrap();
                    let r = global_height(n, kappa, d0, r0, &pp, &p, LPrimeSlot::Symbolic).unwrap();
                    assert_eq!(r.ct_closed.as_ref(), Some(&r.ct_direct));
                    match &first {
                        None => first = Some(r.global.clone()),
                        Some(g) => assert_eq!(g, &r.global),
                    }
                }
            }
        }
    }
    let _ = Radical::zero();
}
