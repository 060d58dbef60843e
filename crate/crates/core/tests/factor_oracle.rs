use num_bigint::BigInt;
use num_traits::Zero;

use qmdecide_core::exact::factor::{factor_over_q, int_div, is_irreducible_over_q};
use qmdecide_core::IntPoly;

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).flat_map(|d| [d, -d]).collect()
}

/// Brute force: a monic quartic or lower is reducible iff it has a monic
/// integer factor of degree 1 or 2.
fn reducible_by_search(cs: &[i64]) -> bool {
    let f = IntPoly::from_i64s(cs);
    let d = cs.len() - 1;
    if d <= 1 {
        return false;
    }
    if cs[0] == 0 {
        return true;
    }
    let bound = 1 + cs.iter().map(|c| c.abs()).max().unwrap();
    for r in divisors(cs[0]) {
        if int_div(&f, &IntPoly::from_i64s(&[-r, 1])).is_some() {
            return true;
        }
    }
    if d < 4 {
        return false;
    }
    for c in divisors(cs[0]) {
        for b in -2 * bound..=2 * bound {
            if int_div(&f, &IntPoly::from_i64s(&[c, b, 1])).is_some() {
                return true;
            }
        }
    }
    false
}

#[test]
fn irreducibility_matches_brute_force_on_small_quartics() {
    let r = -3..=3i64;
    let mut checked = 0;
    for a0 in r.clone() {
        for a1 in r.clone() {
            for a2 in r.clone() {
                for a3 in r.clone() {
                    let cs = [a0, a1, a2, a3, 1];
                    assert_eq!(
                        is_irreducible_over_q(&IntPoly::from_i64s(&cs)),
                        !reducible_by_search(&cs),
                        "{cs:?}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 2401);
}

#[test]
fn irreducibility_matches_brute_force_on_cubics_and_quadratics() {
    for a0 in -6..=6i64 {
        for a1 in -6..=6i64 {
            let q = [a0, a1, 1];
            assert_eq!(is_irreducible_over_q(&IntPoly::from_i64s(&q)), !reducible_by_search(&q), "{q:?}");
            for a2 in -3..=3i64 {
                let c = [a0, a1, a2, 1];
                assert_eq!(is_irreducible_over_q(&IntPoly::from_i64s(&c)), !reducible_by_search(&c), "{c:?}");
            }
        }
    }
}

#[test]
fn factorization_recovers_products() {
    let pieces = [
        vec![1i64, 0, 1],
        vec![-2, 0, 1],
        vec![1, 1, 1],
        vec![-1, 1],
        vec![3, 1],
        vec![1, 0, 0, 0, 1],
        vec![-2, 0, 0, 1],
        vec![1, -1, 0, 0, 0, 1],
    ];
    for (i, a) in pieces.iter().enumerate() {
        for (j, b) in pieces.iter().enumerate() {
            let (fa, fb) = (IntPoly::from_i64s(a), IntPoly::from_i64s(b));
            let f = &(&fa * &fb) * &IntPoly::from_i64s(&[1, 1]);
            let fac = factor_over_q(&f).unwrap();
            assert_eq!(fac.expand(), f);
            let total: usize = fac.factors.iter().map(|(g, m)| g.deg() * *m as usize).sum();
            assert_eq!(total, f.deg());
            assert!(fac.factors.iter().all(|(g, _)| is_irreducible_over_q(g)));
            let has = |g: &IntPoly| fac.factors.iter().any(|(h, _)| h == g);
            // x^5 - x + 1 is irreducible, so every piece survives intact
            assert!(has(&fa) && has(&fb), "{i} {j}");
            let mult_of = |g: &IntPoly| fac.factors.iter().find(|(h, _)| h == g).map(|(_, m)| *m).unwrap();
            let expect_x1 = 1 + u32::from(a == &[1, 1]) + u32::from(b == &[1, 1]);
            assert_eq!(mult_of(&IntPoly::from_i64s(&[1, 1])), expect_x1);
        }
    }
}

#[test]
fn content_and_unit_are_tracked() {
    let f = IntPoly::from_i64s(&[-12, 0, 6]);
    let fac = factor_over_q(&f).unwrap();
    assert_eq!(fac.expand(), f);
    assert_eq!(fac.factors, vec![(IntPoly::from_i64s(&[-2, 0, 1]), 1)]);
    assert_eq!(fac.unit, qmdecide_core::Rat::from_integer(6.into()));
    assert!(factor_over_q(&IntPoly::new(vec![BigInt::zero()])).is_err());
}
