use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Zero};

use crate::error::{invalid, Result};
use crate::exact::factor::is_irreducible_over_q;
use crate::{IntPoly, Poly, Rat, RatPoly};

/// `Q[x]/(f)` for a monic irreducible integer polynomial `f`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    poly: IntPoly,
    modulus: Arc<RatPoly>,
}

/// An element of a number field, stored as its reduced representative.
///
/// Elements created from plain integers carry no modulus; they behave as
/// rational constants and combine with elements of any field.
#[derive(Clone)]
pub struct NfElem {
    rep: RatPoly,
    modulus: Option<Arc<RatPoly>>,
}

pub type NfPoly = Poly<NfElem>;

impl NumberField {
    pub fn new(poly: IntPoly) -> Result<Self> {
        if poly.is_zero() || poly.deg() == 0 {
            return invalid("defining polynomial must have positive degree");
        }
        if !poly.is_monic() {
            return invalid(format!("defining polynomial {poly} is not monic"));
        }
        if !is_irreducible_over_q(&poly) {
            return invalid(format!("defining polynomial {poly} is reducible over Q"));
        }
        Ok(Self::new_unchecked(poly))
    }

    /// Caller guarantees `poly` is monic and irreducible.
    pub(crate) fn new_unchecked(poly: IntPoly) -> Self {
        let modulus = Arc::new(poly.to_rat());
        NumberField { poly, modulus }
    }

    pub fn rationals() -> Self {
        Self::new_unchecked(IntPoly::x())
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn elem(&self, rep: RatPoly) -> NfElem {
        let rep = if rep.degree().map_or(false, |d| d >= self.degree()) {
            rep.rem(&self.modulus)
        } else {
            rep
        };
        NfElem { rep, modulus: Some(self.modulus.clone()) }
    }

    pub fn from_rat(&self, c: Rat) -> NfElem {
        self.elem(RatPoly::constant(c))
    }

    pub fn from_int(&self, n: i64) -> NfElem {
        self.from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zero(&self) -> NfElem {
        self.elem(RatPoly::zero())
    }

    pub fn one(&self) -> NfElem {
        self.from_int(1)
    }

    /// The class of `x`.
    pub fn gen(&self) -> NfElem {
        self.elem(RatPoly::x())
    }

    /// Reinterprets an element (possibly built in another field or as a
    /// bare constant) inside this field.
    pub fn adopt(&self, a: &NfElem) -> NfElem {
        self.elem(a.rep.clone())
    }

    /// A rational polynomial viewed over this field.
    pub fn lift_poly(&self, f: &RatPoly) -> NfPoly {
        NfPoly::new(f.coeffs().iter().map(|c| self.from_rat(c.clone())).collect())
    }

    /// Evaluates the rational polynomial `g` at `a`.
    pub fn eval_rat_poly(&self, g: &RatPoly, a: &NfElem) -> NfElem {
        g.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| &(&acc * a) + &self.from_rat(c.clone()))
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.poly)
    }
}

impl NfElem {
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn constant(c: Rat) -> Self {
        NfElem { rep: RatPoly::constant(c), modulus: None }
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rat(&self) -> Option<Rat> {
        match self.rep.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn modulus_with(&self, other: &NfElem) -> Option<Arc<RatPoly>> {
        self.modulus.clone().or_else(|| other.modulus.clone())
    }

    fn reduced(rep: RatPoly, modulus: Option<Arc<RatPoly>>) -> Self {
        let rep = match &modulus {
            Some(m) if rep.degree().map_or(false, |d| d >= m.deg()) => rep.rem(m),
            _ => rep,
        };
        NfElem { rep, modulus }
    }

    pub fn inv(&self) -> NfElem {
        assert!(!self.rep.is_zero(), "inverse of zero in a number field");
        if let Some(c) = self.to_rat() {
            return NfElem { rep: RatPoly::constant(Rat::one() / c), modulus: self.modulus.clone() };
        }
        let m = self.modulus.as_ref().expect("non-constant element without a field");
        let (g, s, _) = self.rep.ext_gcd(m);
        assert_eq!(g.deg(), 0, "element is a zero divisor");
        NfElem::reduced(s, self.modulus.clone())
    }

    pub fn pow(&self, e: u32) -> NfElem {
        let mut acc = NfElem { rep: RatPoly::one(), modulus: self.modulus.clone() };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rep)
    }
}

impl Add for &NfElem {
    type Output = NfElem;
    fn add(self, o: &NfElem) -> NfElem {
        NfElem { rep: &self.rep + &o.rep, modulus: self.modulus_with(o) }
    }
}

impl Sub for &NfElem {
    type Output = NfElem;
    fn sub(self, o: &NfElem) -> NfElem {
        NfElem { rep: &self.rep - &o.rep, modulus: self.modulus_with(o) }
    }
}

impl Mul for &NfElem {
    type Output = NfElem;
    fn mul(self, o: &NfElem) -> NfElem {
        NfElem::reduced(&self.rep * &o.rep, self.modulus_with(o))
    }
}

impl Div for &NfElem {
    type Output = NfElem;
    fn div(self, o: &NfElem) -> NfElem {
        let mut inv = o.inv();
        if inv.modulus.is_none() {
            inv.modulus = self.modulus.clone();
        }
        self * &inv
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem { rep: -&self.rep, modulus: self.modulus.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for NfElem {
            type Output = NfElem;
            fn $m(self, o: NfElem) -> NfElem {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        -&self
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem { rep: RatPoly::zero(), modulus: None }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl One for NfElem {
    fn one() -> Self {
        NfElem { rep: RatPoly::one(), modulus: None }
    }
}

impl FromPrimitive for NfElem {
    fn from_i64(n: i64) -> Option<Self> {
        Some(NfElem::constant(Rat::from_integer(n.into())))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(NfElem::constant(Rat::from_integer(n.into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let k = NumberField::new(IntPoly::from_i64s(&[1, 0, 1])).unwrap();
        let i = k.gen();
        assert_eq!(&i * &i, k.from_int(-1));
        let a = &k.from_int(1) + &i;
        let b = a.inv();
        assert_eq!(&a * &b, k.one());
        assert_eq!(a.pow(2), &k.from_int(2) * &i);
    }

    #[test]
    fn rejects_bad_defining_polynomials() {
        assert!(NumberField::new(IntPoly::from_i64s(&[-1, 0, 1])).is_err());
        assert!(NumberField::new(IntPoly::from_i64s(&[1, 0, 2])).is_err());
        assert!(NumberField::new(IntPoly::from_i64s(&[5])).is_err());
    }

    #[test]
    fn polynomials_over_the_field_use_the_generic_kernel() {
        let k = NumberField::new(IntPoly::from_i64s(&[-2, 0, 1])).unwrap();
        let t = k.gen();
        // (x - t)(x + t) = x^2 - 2
        let f = &NfPoly::new(vec![-&t, k.one()]) * &NfPoly::new(vec![t.clone(), k.one()]);
        assert_eq!(f, k.lift_poly(&RatPoly::from_i64s(&[-2, 0, 1])));
        let g = f.gcd(&NfPoly::new(vec![-&t, k.one()]));
        assert_eq!(g.deg(), 1);
    }
}
