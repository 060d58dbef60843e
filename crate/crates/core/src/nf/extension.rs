use num_traits::Zero;

use crate::error::{internal, invalid, Result};
use crate::nf::{factor_over_nf, norm_poly, Embedding, NfElem, NfPoly, NumberField};

/// `E' = E[x]/(h)` for an irreducible monic `h` over `E`, in absolute form
/// `Q(gamma)` with `gamma = beta + s * theta_E` and `beta` the class of `x`.
#[derive(Clone, Debug)]
pub struct RelativeExtension {
    pub base: NumberField,
    pub rel_poly: NfPoly,
    pub abs_field: NumberField,
    pub base_embedding: Embedding,
    /// `beta` written in the absolute field.
    pub pi_image: NfElem,
    pub shift: i64,
}

impl RelativeExtension {
    pub fn relative_degree(&self) -> usize {
        self.rel_poly.deg()
    }

    /// `rel_poly` pushed through the base embedding vanishes at `pi_image`.
    pub fn verify(&self) -> bool {
        let h = self.base_embedding.apply_poly(&self.rel_poly);
        let v = h
            .coeffs()
            .iter()
            .rev()
            .fold(self.abs_field.zero(), |acc, c| &(&acc * &self.pi_image) + c);
        v.is_zero() && self.base_embedding.verify()
    }
}

/// Builds the absolute presentation of `E[x]/(h)`; `h` must be irreducible over `E`.
pub fn relative_extension(e: &NumberField, h: &NfPoly) -> Result<RelativeExtension> {
    let h = h.monic();
    if h.deg() == 0 {
        return invalid("relative polynomial must have positive degree");
    }
    let fs = factor_over_nf(e, &h)?;
    if fs.len() != 1 || fs[0].1 != 1 {
        return invalid("relative polynomial is reducible over the base field");
    }
    let h = fs.into_iter().next().unwrap().0;
    if h.deg() == 1 {
        let root = e.adopt(&-&h.coeff(0));
        return Ok(RelativeExtension {
            base: e.clone(),
            rel_poly: h,
            abs_field: e.clone(),
            base_embedding: Embedding::identity(e),
            pi_image: root,
            shift: 0,
        });
    }
    let theta = e.gen();
    let shifts = std::iter::once(0i64).chain((1..).flat_map(|s| [s, -s]));
    for s in shifts.take(200) {
        let st = &e.from_int(s) * &theta;
        // gamma = beta + s theta is a root of h(y - s theta)
        let hs = h.compose(&NfPoly::new(vec![-&st, e.one()]));
        let n = norm_poly(e, &hs);
        if !n.is_squarefree() {
            continue;
        }
        let Some(n_int) = n.to_int() else {
            return invalid("relative polynomial does not have integral roots");
        };
        let abs = NumberField::new_unchecked(n_int);
        let gamma = abs.gen();
        // theta_E is the common root of f_E(y) and h(gamma - s y) over E'
        let f_e = abs.lift_poly(e.modulus());
        let y = NfPoly::new(vec![abs.zero(), abs.one()]);
        let lin = &NfPoly::constant(gamma.clone()) - &y.scale(&abs.from_int(s));
        let mut p = NfPoly::zero();
        let mut pw = NfPoly::one();
        for c in h.coeffs() {
            let cy = NfPoly::new(c.rep().coeffs().iter().map(|r| abs.from_rat(r.clone())).collect());
            p = &p + &(&cy * &pw);
            pw = &pw * &lin;
        }
        let g = f_e.gcd(&p);
        if g.deg() != 1 {
            return internal("base generator not recovered in the absolute field");
        }
        let t = abs.adopt(&-&g.coeff(0));
        let pi_image = &gamma - &(&abs.from_int(s) * &t);
        let ext = RelativeExtension {
            base: e.clone(),
            rel_poly: h.clone(),
            abs_field: abs.clone(),
            base_embedding: Embedding { source: e.clone(), target: abs, image: t },
            pi_image,
            shift: s,
        };
        if !ext.verify() {
            return internal("relative extension failed its defining identity");
        }
        return Ok(ext);
    }
    internal("no primitive element found within the shift budget")
}

/// `relative_extension` restricted to quadratic `h`.
pub fn quadratic_extension(e: &NumberField, h: &NfPoly) -> Result<RelativeExtension> {
    if h.deg() != 2 {
        return invalid("quadratic_extension needs a quadratic polynomial");
    }
    relative_extension(e, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntPoly, RatPoly};

    #[test]
    fn gaussian_adjoin_sqrt2() {
        let e = NumberField::new(IntPoly::from_i64s(&[1, 0, 1])).unwrap();
        let h = e.lift_poly(&RatPoly::from_i64s(&[-2, 0, 1]));
        let ext = quadratic_extension(&e, &h).unwrap();
        assert_eq!(ext.abs_field.degree(), 4);
        let pi2 = ext.pi_image.pow(2);
        assert_eq!(pi2, ext.abs_field.from_int(2));
        assert!(ext.verify());
        // i + sqrt 2 has minimal polynomial x^4 - 2x^2 + 9
        assert_eq!(ext.shift, 1);
        assert_eq!(ext.abs_field.defining_poly(), &IntPoly::from_i64s(&[9, 0, -2, 0, 1]));
    }

    #[test]
    fn over_the_rationals() {
        let q = NumberField::rationals();
        let ext = quadratic_extension(&q, &q.lift_poly(&RatPoly::from_i64s(&[1, 0, 1]))).unwrap();
        assert_eq!(ext.abs_field.defining_poly(), &IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(ext.pi_image, ext.abs_field.gen());
    }

    #[test]
    fn reducible_input_rejected() {
        let e = NumberField::new(IntPoly::from_i64s(&[1, 0, 1])).unwrap();
        let i = e.gen();
        // rejected exactly when the factorization over E splits it
        let h = NfPoly::new(vec![e.from_int(-1), -&i, e.one()]);
        let split = factor_over_nf(&e, &h).unwrap().len() > 1
            || factor_over_nf(&e, &h).unwrap()[0].1 > 1;
        assert_eq!(quadratic_extension(&e, &h).is_err(), split);
        let sq = e.lift_poly(&RatPoly::from_i64s(&[1, 0, 1]));
        assert!(quadratic_extension(&e, &sq).is_err());
    }
}
