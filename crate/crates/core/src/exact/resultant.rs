//! Resultants via the Euclidean remainder sequence.
//!
//! Sign convention: `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a`
//! of `f`, counted with multiplicity.


use crate::error::{invalid, Result};
use num_traits::{One, Zero};

use crate::exact::poly::{FieldScalar, Poly};
use crate::{Rat, RatPoly};

pub fn resultant<T: FieldScalar>(f: &Poly<T>, g: &Poly<T>) -> Result<T> {
    if f.is_zero() && g.is_zero() {
        return invalid("resultant of two zero polynomials");
    }
    Ok(res_rec(f.clone(), g.clone()))
}

fn pow<T: FieldScalar>(x: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

fn res_rec<T: FieldScalar>(f: Poly<T>, g: Poly<T>) -> T {
    if f.is_zero() || g.is_zero() {
        // One side is zero and the other is not: a nonconstant partner shares
        // every root with zero; a nonzero constant partner gives the empty product.
        let other = if f.is_zero() { &g } else { &f };
        return if other.deg() == 0 { T::one() } else { T::zero() };
    }
    let (df, dg) = (f.deg(), g.deg());
    if df == 0 {
        return pow(f.leading().unwrap(), dg);
    }
    if dg == 0 {
        return pow(g.leading().unwrap(), df);
    }
    // Res(f, g) = lc(f)^(dg - dr) Res(f, r) with r = g mod f.
    let r = g.rem(&f);
    if r.is_zero() {
        return T::zero();
    }
    let dr = r.deg();
    let lc = f.leading().unwrap().clone();
    let sign = if (df * dr) % 2 == 1 { -T::one() } else { T::one() };
    pow(&lc, dg - dr) * sign * res_rec(r, f)
}

/// Discriminant up to sign: `Res(f, f')` for monic `f`.
pub fn disc_like<T: FieldScalar>(f: &Poly<T>) -> T {
    res_rec(f.clone(), f.derivative())
}

/// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> RatPoly {
    let n = xs.len();
    let mut coef: Vec<Rat> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = RatPoly::zero();
    for i in (0..n).rev() {
        out = &(&out * &RatPoly::new(vec![-xs[i].clone(), Rat::one()])) + &RatPoly::constant(coef[i].clone());
    }
    out
}

/// `Res_y(f(y), g_x(y))` as a polynomial in `x`, where `g_x` is produced by
/// `specialize` at each sample point and the result has degree at most `deg_bound`.
/// Requires `f` to have constant leading coefficient in `y`.
pub fn resultant_in_param(
    f: &RatPoly,
    deg_bound: usize,
    specialize: impl Fn(&Rat) -> RatPoly,
) -> RatPoly {
    let xs: Vec<Rat> = (0..=deg_bound as i64).map(|i| Rat::from_integer(i.into())).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|x| {
            let g = specialize(x);
            if g.is_zero() {
                Rat::zero()
            } else {
                res_rec(f.clone(), g)
            }
        })
        .collect();
    interpolate(&xs, &ys)
}
