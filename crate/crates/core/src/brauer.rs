//! Brauer classes of number fields via local invariants, quaternion classes,
//! base change and Hilbert symbols over Q.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{internal, invalid, Error, Result};
use crate::exact::arith::{is_prime, prime_divisors};
use crate::nf::{NumberField, RelativeExtension};
use crate::places::{
    arch_places, locate_real_image, places_above_p, real_places, ArchKind, PlaceLabel,
};
use crate::Rat;

/// `x mod 1` in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - Rat::from_integer(x.floor().to_integer())
}

fn half() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2))
}

/// A Brauer class given by its nonzero local invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct BrauerClass {
    field: NumberField,
    inv: BTreeMap<PlaceLabel, Rat>,
}

impl BrauerClass {
    pub fn zero(k: &NumberField) -> Self {
        BrauerClass { field: k.clone(), inv: BTreeMap::new() }
    }

    /// Validates the shape of the invariants (complex places excluded, real
    /// invariants in {0, 1/2}, sum zero mod 1) and drops zero entries.
    pub fn new(k: &NumberField, inv: impl IntoIterator<Item = (PlaceLabel, Rat)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, v) in inv {
            let v = frac(&v);
            match label {
                PlaceLabel::Complex(_) if !v.is_zero() => {
                    return invalid(format!("complex place {label} cannot carry an invariant"))
                }
                PlaceLabel::Real(_) if !v.is_zero() && v != half() => {
                    return invalid(format!("real place {label} has invariant {v}"))
                }
                PlaceLabel::Finite { p, .. } if !is_prime(p) => {
                    return invalid(format!("{p} is not prime"))
                }
                _ => {}
            }
            if map.insert(label.clone(), v).is_some() {
                return invalid(format!("place {label} listed twice"));
            }
        }
        map.retain(|_, v: &mut Rat| !v.is_zero());
        let total = map.values().fold(Rat::zero(), |a, b| a + b);
        if !frac(&total).is_zero() {
            return invalid(format!("local invariants sum to {total}, not 0 mod 1"));
        }
        Ok(BrauerClass { field: k.clone(), inv: map })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn invariants(&self) -> &BTreeMap<PlaceLabel, Rat> {
        &self.inv
    }

    pub fn get(&self, label: &PlaceLabel) -> Rat {
        self.inv.get(label).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.inv.is_empty()
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return invalid("Brauer classes over different fields");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut map = self.inv.clone();
        for (k, v) in &other.inv {
            let e = map.entry(k.clone()).or_insert_with(Rat::zero);
            *e = frac(&(&*e + v));
        }
        map.retain(|_, v| !v.is_zero());
        Ok(BrauerClass { field: self.field.clone(), inv: map })
    }

    pub fn neg(&self) -> Self {
        let inv = self.inv.iter().map(|(k, v)| (k.clone(), frac(&-v))).collect();
        BrauerClass { field: self.field.clone(), inv }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Lcm of the invariant denominators.
    pub fn index(&self) -> u64 {
        self.inv
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
            .to_u64()
            .expect("index fits in u64")
    }

    pub fn as_quaternion(&self) -> Result<QuaternionClass> {
        if self.inv.values().any(|v| *v != half()) {
            return Err(Error::NotExponentTwo);
        }
        Ok(QuaternionClass(self.clone()))
    }

    /// Labels of the places with nonzero invariant.
    pub fn support(&self) -> Vec<PlaceLabel> {
        self.inv.keys().cloned().collect()
    }
}

/// A Brauer class of exponent dividing 2: a quaternion algebra up to isomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionClass(BrauerClass);

impl QuaternionClass {
    pub fn split(k: &NumberField) -> Self {
        QuaternionClass(BrauerClass::zero(k))
    }

    /// The quaternion class ramified exactly at `labels`, which must be
    /// places of `k` (checked against the canonical enumeration).
    pub fn from_ramified(k: &NumberField, labels: &[PlaceLabel]) -> Result<Self> {
        let n_real = real_places(k).len();
        for l in labels {
            match l {
                PlaceLabel::Real(i) if *i > n_real => {
                    return invalid(format!("{l} is not a real place of the field"))
                }
                PlaceLabel::Complex(_) => return invalid(format!("{l} is complex and cannot ramify")),
                PlaceLabel::Finite { p, index } => {
                    if !is_prime(*p) {
                        return invalid(format!("{p} is not prime"));
                    }
                    if *index > places_above_p(k, *p)?.len() {
                        return invalid(format!("{l} is not a place of the field"));
                    }
                }
                _ => {}
            }
        }
        if labels.len() % 2 == 1 {
            return invalid("a quaternion algebra ramifies at an even number of places");
        }
        let c = BrauerClass::new(k, labels.iter().map(|l| (l.clone(), half())))?;
        Ok(QuaternionClass(c))
    }

    pub fn class(&self) -> &BrauerClass {
        &self.0
    }

    pub fn ramified(&self) -> Vec<PlaceLabel> {
        self.0.support()
    }

    pub fn is_split(&self) -> bool {
        self.0.is_zero()
    }
}

/// Restriction of `c` (over `ext.base`) to `ext.abs_field`, using
/// `inv_{u'} = [E'_{u'} : E_u] inv_u`.
pub fn base_change(c: &BrauerClass, ext: &RelativeExtension) -> Result<BrauerClass> {
    if c.field != ext.base {
        return invalid("class and extension have different base fields");
    }
    let target = &ext.abs_field;
    if target == &ext.base && ext.base_embedding.image == target.gen() {
        return Ok(c.clone());
    }
    let rel_deg = ext.relative_degree() as u32;
    let mut out: Vec<(PlaceLabel, Rat)> = Vec::new();
    let mut real_targets = None;
    let mut real_sources = None;
    for (label, v) in &c.inv {
        match label {
            PlaceLabel::Finite { p, index } => {
                let below = places_above_p(&ext.base, *p)?;
                let u = below
                    .get(index - 1)
                    .ok_or_else(|| Error::InvalidInput(format!("{label} is not a place")))?;
                let sep = u.separator(&ext.base).map(|s| ext.base_embedding.apply(&s));
                let mut covered = 0;
                for w in places_above_p(target, *p)? {
                    let above = match &sep {
                        None => true,
                        Some(s) => w.valuation(s)? > 0,
                    };
                    if above {
                        let ld = w.local_degree() / u.local_degree();
                        covered += w.local_degree();
                        out.push((w.label(), frac(&(v * Rat::from_integer(ld.into())))));
                    }
                }
                if covered != rel_deg * u.local_degree() {
                    return internal(format!("places above {label} do not cover it"));
                }
            }
            PlaceLabel::Real(i) => {
                let sources = real_sources.get_or_insert_with(|| {
                    real_places(&ext.base)
                        .into_iter()
                        .map(|a| match a.kind {
                            ArchKind::Real(r) => r,
                            ArchKind::Complex => unreachable!(),
                        })
                        .collect::<Vec<_>>()
                });
                let targets = real_targets.get_or_insert_with(|| real_places(target));
                for w in targets.iter() {
                    if let ArchKind::Real(root) = &w.kind {
                        let j = locate_real_image(sources, ext.base_embedding.image.rep(), root);
                        if j == *i {
                            out.push((w.label(), v.clone()));
                        }
                    }
                }
            }
            PlaceLabel::Complex(_) => {}
        }
    }
    BrauerClass::new(target, out)
}

fn sq_free_int(x: &Rat) -> BigInt {
    x.numer() * x.denom()
}

fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1u32) / 2u32;
    let r = a.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn split_p(x: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = x.clone();
    let mut k = 0;
    while (&u % p).is_zero() {
        u /= p;
        k += 1;
    }
    (k, u)
}

/// Local Hilbert symbol `(a, b)_v` over Q; `v = None` is the real place.
pub fn hilbert_symbol_q(a: &Rat, b: &Rat, v: Option<u64>) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return invalid("Hilbert symbol of zero");
    }
    let (a, b) = (sq_free_int(a), sq_free_int(b));
    let Some(p) = v else {
        return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 });
    };
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let pb = BigInt::from(p);
    let (alpha, u) = split_p(&a, &pb);
    let (beta, w) = split_p(&b, &pb);
    if p == 2 {
        let m8 = BigInt::from(8);
        let eps = |x: &BigInt| ((x.mod_floor(&m8) - 1u32) / 2u32).is_odd();
        let omega = |x: &BigInt| {
            let r = x.mod_floor(&BigInt::from(16));
            ((&r * &r - 1u32) / 8u32).is_odd()
        };
        let mut e = eps(&u) && eps(&w);
        e ^= alpha % 2 == 1 && omega(&w);
        e ^= beta % 2 == 1 && omega(&u);
        return Ok(if e { -1 } else { 1 });
    }
    let mut s = if alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= legendre(&u, &pb);
    }
    if alpha % 2 == 1 {
        s *= legendre(&w, &pb);
    }
    Ok(s)
}

/// Places of Q where `(a, b)` may ramify: infinity, 2 and primes dividing `a b`.
pub fn hilbert_support(a: &Rat, b: &Rat) -> Vec<Option<u64>> {
    let mut primes = vec![2u64];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(prime_divisors(x));
    }
    primes.sort_unstable();
    primes.dedup();
    std::iter::once(None).chain(primes.into_iter().map(Some)).collect()
}

/// The quaternion algebra `(a, b)` over Q as a class.
pub fn quaternion_class_over_q(a: &Rat, b: &Rat) -> Result<QuaternionClass> {
    let q = NumberField::rationals();
    let mut ram = Vec::new();
    for v in hilbert_support(a, b) {
        if hilbert_symbol_q(a, b, v)? == -1 {
            ram.push(match v {
                None => PlaceLabel::Real(1),
                Some(p) => PlaceLabel::Finite { p, index: 1 },
            });
        }
    }
    if ram.len() % 2 == 1 {
        return internal("Hilbert symbols violate the product formula");
    }
    QuaternionClass::from_ramified(&q, &ram)
}

/// The class over Q ramified at `p` and infinity.
pub fn definite_class_q(p: u64) -> Result<QuaternionClass> {
    QuaternionClass::from_ramified(
        &NumberField::rationals(),
        &[PlaceLabel::Real(1), PlaceLabel::Finite { p, index: 1 }],
    )
}

/// Number of real and complex archimedean places.
pub fn signature(k: &NumberField) -> (usize, usize) {
    let a = arch_places(k);
    let r = a.iter().filter(|w| w.is_real()).count();
    (r, a.len() - r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::quadratic_extension;
    use crate::{IntPoly, RatPoly};

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    fn fin(p: u64, index: usize) -> PlaceLabel {
        PlaceLabel::Finite { p, index }
    }

    #[test]
    fn group_law_and_index() {
        let q = NumberField::rationals();
        let c1 = BrauerClass::new(&q, [(fin(2, 1), r(1, 2)), (fin(3, 1), r(1, 2))]).unwrap();
        let c2 = BrauerClass::new(&q, [(fin(3, 1), r(1, 2)), (fin(5, 1), r(1, 2))]).unwrap();
        let s = c1.add(&c2).unwrap();
        assert_eq!(s.support(), vec![fin(2, 1), fin(5, 1)]);
        assert!(c1.add(&c1.neg()).unwrap().is_zero());
        assert_eq!(BrauerClass::zero(&q).add(&c1).unwrap(), c1);
        assert_eq!(c1.index(), 2);
        assert_eq!(BrauerClass::zero(&q).index(), 1);
        let c3 = BrauerClass::new(&q, [(fin(2, 1), r(1, 3)), (fin(3, 1), r(2, 3))]).unwrap();
        assert_eq!(c3.index(), 3);
        assert_eq!(c3.as_quaternion(), Err(Error::NotExponentTwo));
        assert!(BrauerClass::zero(&q).as_quaternion().unwrap().is_split());
        assert!(BrauerClass::new(&q, [(fin(2, 1), r(1, 2))]).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let m1 = r(-1, 1);
        assert_eq!(hilbert_symbol_q(&m1, &m1, None).unwrap(), -1);
        assert_eq!(hilbert_symbol_q(&m1, &m1, Some(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol_q(&m1, &m1, Some(5)).unwrap(), 1);
        let ham = quaternion_class_over_q(&m1, &m1).unwrap();
        assert_eq!(ham.ramified(), vec![PlaceLabel::Real(1), fin(2, 1)]);
        assert!(quaternion_class_over_q(&r(1, 1), &r(7, 1)).unwrap().is_split());
        let c = quaternion_class_over_q(&m1, &r(3, 1)).unwrap();
        assert_eq!(c.ramified(), vec![fin(2, 1), fin(3, 1)]);
    }

    #[test]
    fn base_change_examples() {
        let q = NumberField::rationals();
        let d2 = definite_class_q(2).unwrap();
        let ext = quadratic_extension(&q, &q.lift_poly(&RatPoly::from_i64s(&[1, 0, 1]))).unwrap();
        assert!(base_change(d2.class(), &ext).unwrap().is_zero());

        let e = NumberField::new(IntPoly::from_i64s(&[1, 0, 1])).unwrap();
        let c = QuaternionClass::from_ramified(&e, &[fin(17, 1), fin(17, 2)]).unwrap();
        let ext = quadratic_extension(&e, &e.lift_poly(&RatPoly::from_i64s(&[-2, 0, 1]))).unwrap();
        let bc = base_change(c.class(), &ext).unwrap();
        assert_eq!(bc.support().len(), 4);
        assert!(bc.support().iter().all(|l| l.prime() == Some(17)));
        assert!(base_change(&BrauerClass::zero(&e), &ext).unwrap().is_zero());
    }

    #[test]
    fn real_places_survive_real_extensions() {
        // (-1, -1) over Q pulled to Q(sqrt 2): both real places ramify, 2 is ramified with degree 2
        let q = NumberField::rationals();
        let ham = quaternion_class_over_q(&r(-1, 1), &r(-1, 1)).unwrap();
        let ext = quadratic_extension(&q, &q.lift_poly(&RatPoly::from_i64s(&[-2, 0, 1]))).unwrap();
        let bc = base_change(ham.class(), &ext).unwrap();
        assert_eq!(bc.support(), vec![PlaceLabel::Real(1), PlaceLabel::Real(2)]);
    }
}
