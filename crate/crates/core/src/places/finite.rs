use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::exact::arith::{is_prime, vp_int};
use crate::exact::linalg::charpoly_berkowitz;
use crate::exact::poly::cmp_rat_seq;
use crate::exact::resultant::resultant;
use crate::nf::{NfElem, NumberField};
use crate::places::order::{idempotents, lift_idempotent, mult_matrix, p_maximal_order, ramification, Order};
use crate::places::PlaceLabel;
use crate::{IntPoly, Rat};

/// Extra precision on top of `2 v_p(disc)` allowed by default.
pub const DEFAULT_CAP_SLACK: u32 = 64;

/// A prime of a number field above the rational prime `p`.
#[derive(Clone, Debug)]
pub struct FinitePlace {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// 1-based position in the canonical order of places above `p`.
    pub index: usize,
    /// The irreducible `p`-adic factor of the defining polynomial, mod `p^precision`.
    pub local_factor: IntPoly,
    pub precision: u32,
    pub cap: u32,
    order: Arc<Order>,
    idempotent: Vec<u64>,
}

type Memo = Mutex<HashMap<(IntPoly, u64), Arc<Vec<FinitePlace>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `v_p` of `Res(f, f')`.
pub fn disc_valuation(f: &IntPoly, p: u64) -> u32 {
    let fr = f.to_rat();
    let d = resultant(&fr, &fr.derivative()).expect("nonzero polynomial");
    if d.is_zero() {
        panic!("defining polynomial is not squarefree");
    }
    vp_int(&d.to_integer(), p)
}

pub fn default_cap(k: &NumberField, p: u64) -> u32 {
    2 * disc_valuation(k.defining_poly(), p) + DEFAULT_CAP_SLACK
}

fn reference_precision(k: &NumberField, p: u64) -> u32 {
    8.max(2 * disc_valuation(k.defining_poly(), p) + 2)
}

/// All places above `p` in canonical order, with the default precision cap.
pub fn places_above_p(k: &NumberField, p: u64) -> Result<Vec<FinitePlace>> {
    places_above_p_with_cap(k, p, None)
}

pub fn places_above_p_with_cap(k: &NumberField, p: u64, cap: Option<u32>) -> Result<Vec<FinitePlace>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let cap = cap.unwrap_or_else(|| default_cap(k, p));
    let k0 = reference_precision(k, p);
    if k0 > cap {
        return Err(Error::CertificationFailed(format!(
            "labelling places above {p} needs precision {k0}, cap is {cap}"
        )));
    }
    let key = (k.defining_poly().clone(), p);
    let cached = memo().lock().unwrap().get(&key).cloned();
    let places = match cached {
        Some(v) => v,
        None => {
            let v = Arc::new(compute_places(k, p, k0));
            memo().lock().unwrap().entry(key).or_insert(v).clone()
        }
    };
    Ok(places
        .iter()
        .map(|w| FinitePlace { cap, ..w.clone() })
        .collect())
}

fn local_factor(order: &Order, eps: &[u64], r: usize, k: u32) -> IntPoly {
    let m = BigInt::from(order.p).pow(k);
    let e = lift_idempotent(order, eps, k);
    let te = order.mul(&order.theta(), &e, Some(&m));
    let cp = charpoly_berkowitz(&mult_matrix(order, &te, &m), Some(&m));
    let n = order.n;
    assert!(
        cp[..n - r].iter().all(Zero::is_zero),
        "local factor extraction left a nonzero tail"
    );
    IntPoly::new(cp[n - r..].to_vec())
}

fn compute_places(k: &NumberField, p: u64, k0: u32) -> Vec<FinitePlace> {
    let order = Arc::new(p_maximal_order(k.defining_poly(), p));
    let mut places: Vec<FinitePlace> = idempotents(&order)
        .into_iter()
        .map(|eps| {
            let (e, f) = ramification(&order, &eps);
            let r = (e * f) as usize;
            FinitePlace {
                p,
                e,
                f,
                index: 0,
                local_factor: local_factor(&order, &eps, r, k0),
                precision: k0,
                cap: k0,
                order: order.clone(),
                idempotent: eps,
            }
        })
        .collect();
    let key = |w: &FinitePlace| -> Vec<Rat> {
        w.local_factor.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect()
    };
    places.sort_by(|a, b| {
        (a.f, a.e)
            .cmp(&(b.f, b.e))
            .then_with(|| cmp_rat_seq(&key(a), &key(b)))
    });
    for (i, w) in places.iter_mut().enumerate() {
        w.index = i + 1;
    }
    let total: u32 = places.iter().map(|w| w.e * w.f).sum();
    assert_eq!(total as usize, k.degree(), "sum of e*f differs from the degree");
    places
}

impl FinitePlace {
    pub fn label(&self) -> PlaceLabel {
        PlaceLabel::Finite { p: self.p, index: self.index }
    }

    pub fn local_degree(&self) -> u32 {
        self.e * self.f
    }

    /// Normalized valuation `w(a)` with `w(K^*) = Z`.
    pub fn valuation(&self, a: &NfElem) -> Result<i64> {
        if a.rep().is_zero() {
            return invalid("valuation of zero");
        }
        let (g, d) = a.rep().clear_denominators();
        let coords = self
            .order
            .from_power_int(g.coeffs())
            .expect("integral element outside the p-maximal order");
        let n = self.order.n;
        let r = self.local_degree() as usize;
        let mut prec = self.precision;
        loop {
            // constant term of the charpoly of g on the local piece is +-N_w(g)
            let m = BigInt::from(self.p).pow(prec);
            let eps = lift_idempotent(&self.order, &self.idempotent, prec);
            let ge = self.order.mul(&coords, &eps, Some(&m));
            let cp = charpoly_berkowitz(&mult_matrix(&self.order, &ge, &m), Some(&m));
            let norm = &cp[n - r];
            if !norm.is_zero() {
                let v = vp_int(norm, self.p);
                assert_eq!(v % self.f, 0, "local norm valuation not divisible by f");
                return Ok(i64::from(v / self.f) - i64::from(self.e) * i64::from(vp_int(&d, self.p)));
            }
            if prec >= self.cap {
                return Err(Error::CertificationFailed(format!(
                    "valuation at {} needs precision above the cap {}",
                    self.label(),
                    self.cap
                )));
            }
            prec = (2 * prec).min(self.cap);
        }
    }

    /// An element with positive valuation here and valuation zero at every
    /// other place above `p`; `None` when this is the only place above `p`.
    pub fn separator(&self, k: &NumberField) -> Option<NfElem> {
        let one = self.order.one();
        if self.idempotent.iter().zip(&one).all(|(a, b)| BigInt::from(*a) == *b) {
            return None;
        }
        let coords: Vec<BigInt> = self
            .idempotent
            .iter()
            .zip(&one)
            .map(|(e, o)| o - BigInt::from(*e))
            .collect();
        let power = self.order.to_power(&coords);
        Some(k.elem(crate::RatPoly::new(power)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(cs: &[i64]) -> NumberField {
        NumberField::new(IntPoly::from_i64s(cs)).unwrap()
    }

    fn ef(k: &NumberField, p: u64) -> Vec<(u32, u32)> {
        places_above_p(k, p).unwrap().iter().map(|w| (w.e, w.f)).collect()
    }

    #[test]
    fn gaussian_places() {
        let k = field(&[1, 0, 1]);
        assert_eq!(ef(&k, 5), vec![(1, 1), (1, 1)]);
        assert_eq!(ef(&k, 2), vec![(2, 1)]);
        assert_eq!(ef(&k, 3), vec![(1, 2)]);
        let labels: Vec<String> = places_above_p(&k, 5).unwrap().iter().map(|w| w.label().to_string()).collect();
        assert_eq!(labels, vec!["p=5#1", "p=5#2"]);
    }

    #[test]
    fn gaussian_valuations() {
        let k = field(&[1, 0, 1]);
        let w2 = &places_above_p(&k, 2).unwrap()[0];
        assert_eq!(w2.valuation(&k.from_int(2)).unwrap(), 2);
        assert_eq!(w2.valuation(&(&k.one() + &k.gen())).unwrap(), 1);
        assert_eq!(w2.valuation(&k.from_int(1)).unwrap(), 0);
        let w5 = places_above_p(&k, 5).unwrap();
        assert_eq!(w5[0].valuation(&k.from_int(5)).unwrap(), 1);
        // 2 + i and 2 - i each live at exactly one place above 5
        let a = &k.from_int(2) + &k.gen();
        let v: Vec<i64> = w5.iter().map(|w| w.valuation(&a).unwrap()).collect();
        assert!(v == vec![1, 0] || v == vec![0, 1]);
        assert!(w2.valuation(&k.zero()).is_err());
        assert_eq!(w2.valuation(&k.from_rat(Rat::new(1.into(), 4.into()))).unwrap(), -4);
    }

    #[test]
    fn non_monogenic_order() {
        // Dedekind: 2 splits completely although x^3 - x^2 - 2x - 8 is inseparable mod 2
        let k = field(&[-8, -2, -1, 1]);
        assert_eq!(ef(&k, 2), vec![(1, 1), (1, 1), (1, 1)]);
    }

    #[test]
    fn wild_and_tame_ramification() {
        assert_eq!(ef(&field(&[-2, 0, 0, 0, 1]), 2), vec![(4, 1)]);
        assert_eq!(ef(&field(&[1, 0, 0, 0, 1]), 2), vec![(4, 1)]);
        assert_eq!(ef(&field(&[1, 0, -1, 0, 1]), 3), vec![(2, 2)]);
        assert_eq!(ef(&field(&[1, 0, -1, 0, 1]), 13), vec![(1, 1); 4]);
        assert_eq!(ef(&field(&[3, 0, 1]), 3), vec![(2, 1)]);
    }

    #[test]
    fn separators_pick_out_places() {
        let k = field(&[1, 0, 1]);
        let ws = places_above_p(&k, 5).unwrap();
        for (i, w) in ws.iter().enumerate() {
            let s = w.separator(&k).unwrap();
            for (j, u) in ws.iter().enumerate() {
                let v = u.valuation(&s).unwrap();
                assert_eq!(v > 0, i == j);
            }
        }
        assert!(places_above_p(&k, 2).unwrap()[0].separator(&k).is_none());
    }

    #[test]
    fn precision_cap_is_enforced() {
        let k = field(&[1, 0, 1]);
        assert!(matches!(
            places_above_p_with_cap(&k, 2, Some(3)),
            Err(Error::CertificationFailed(_))
        ));
        let w = places_above_p_with_cap(&k, 5, Some(8)).unwrap();
        let big = k.from_int(5i64.pow(9));
        assert!(matches!(w[0].valuation(&big), Err(Error::CertificationFailed(_))));
    }
}
