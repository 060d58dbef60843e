use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exact::factor::factor_over_q;
use crate::exact::poly::cmp_rat_seq;
use crate::exact::resultant::resultant_in_param;
use crate::nf::{NfElem, NfPoly, NumberField};
use crate::{Rat, RatPoly};

/// `N(g)(x) = Res_y(f(y), g(y, x))`, the norm of a polynomial over `K` to Q.
pub fn norm_poly(k: &NumberField, g: &NfPoly) -> RatPoly {
    let bound = k.degree() * g.deg();
    resultant_in_param(k.modulus(), bound, |x0| {
        let mut acc = RatPoly::zero();
        let mut pw = Rat::one();
        for c in g.coeffs() {
            acc = &acc + &c.rep().scale(&pw);
            pw = &pw * x0;
        }
        acc
    })
}

/// Monic minimal polynomial of `a` over Q.
pub fn nf_minpoly(k: &NumberField, a: &NfElem) -> RatPoly {
    let charpoly = resultant_in_param(k.modulus(), k.degree(), |y0| {
        &RatPoly::constant(y0.clone()) - a.rep()
    });
    charpoly.squarefree_part()
}

fn flat(k: &NumberField, c: &NfElem) -> Vec<Rat> {
    (0..k.degree()).map(|i| c.rep().coeff(i)).collect()
}

/// Canonical order on polynomials over `K`: degree, then coefficient reps.
pub fn cmp_nf_poly(k: &NumberField, a: &NfPoly, b: &NfPoly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        let fa: Vec<Rat> = a.coeffs().iter().flat_map(|c| flat(k, c)).collect();
        let fb: Vec<Rat> = b.coeffs().iter().flat_map(|c| flat(k, c)).collect();
        cmp_rat_seq(&fa, &fb)
    })
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|s| [s, -s]))
}

fn reattach(k: &NumberField, g: &NfPoly) -> NfPoly {
    NfPoly::new(g.coeffs().iter().map(|c| k.adopt(c)).collect())
}

/// Irreducible factors of a monic squarefree polynomial over `K` (Trager).
fn trager(k: &NumberField, g: &NfPoly) -> Vec<NfPoly> {
    if g.deg() <= 1 {
        return vec![g.monic()];
    }
    let theta = k.gen();
    for s in shifts().take(200) {
        let st = &k.from_int(s) * &theta;
        let gs = g.compose(&NfPoly::new(vec![-&st, k.one()]));
        let n = norm_poly(k, &gs);
        if !n.is_squarefree() {
            continue;
        }
        let fac = factor_over_q(&n.primitive_int()).expect("nonzero norm");
        if fac.factors.len() == 1 {
            return vec![g.monic()];
        }
        let back = NfPoly::new(vec![st.clone(), k.one()]);
        return fac
            .factors
            .iter()
            .map(|(nj, _)| {
                let h = gs.gcd(&k.lift_poly(&nj.to_rat()));
                reattach(k, &h.compose(&back).monic())
            })
            .collect();
    }
    panic!("no squarefree norm found within the shift budget");
}

/// Monic irreducible factors with multiplicities, in canonical order.
pub fn factor_over_nf(k: &NumberField, f: &NfPoly) -> Result<Vec<(NfPoly, u32)>> {
    if f.is_zero() {
        return invalid("cannot factor the zero polynomial");
    }
    let f = reattach(k, f);
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        for h in trager(k, &reattach(k, &g)) {
            out.push((h, m));
        }
    }
    out.sort_by(|(a, _), (b, _)| cmp_nf_poly(k, a, b));
    Ok(out)
}

/// A field homomorphism `source -> target` given by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: NumberField,
    pub target: NumberField,
    pub image: NfElem,
}

impl Embedding {
    pub fn identity(k: &NumberField) -> Self {
        Embedding { source: k.clone(), target: k.clone(), image: k.gen() }
    }

    pub fn apply(&self, a: &NfElem) -> NfElem {
        self.target.eval_rat_poly(a.rep(), &self.image)
    }

    pub fn apply_poly(&self, g: &NfPoly) -> NfPoly {
        NfPoly::new(g.coeffs().iter().map(|c| self.apply(c)).collect())
    }

    /// The source's defining polynomial vanishes at the image.
    pub fn verify(&self) -> bool {
        self.target
            .eval_rat_poly(self.source.modulus(), &self.image)
            .is_zero()
    }
}

/// All embeddings of `l` into `e`, one per root of `l`'s defining polynomial in `e`.
pub fn embeddings(l: &NumberField, e: &NumberField) -> Result<Vec<Embedding>> {
    let f = e.lift_poly(l.modulus());
    Ok(factor_over_nf(e, &f)?
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| Embedding {
            source: l.clone(),
            target: e.clone(),
            image: e.adopt(&-&g.coeff(0)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;

    fn field(cs: &[i64]) -> NumberField {
        NumberField::new(IntPoly::from_i64s(cs)).unwrap()
    }

    #[test]
    fn minpoly_examples() {
        let k = field(&[-2, 0, 1]);
        assert_eq!(nf_minpoly(&k, &k.gen()), RatPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(nf_minpoly(&k, &k.from_int(7)), RatPoly::from_i64s(&[-7, 1]));
        let a = &k.gen() + &k.one();
        assert_eq!(nf_minpoly(&k, &a), RatPoly::from_i64s(&[-1, -2, 1]));
    }

    #[test]
    fn factor_examples() {
        let k = field(&[-2, 0, 1]);
        let fs = factor_over_nf(&k, &k.lift_poly(&RatPoly::from_i64s(&[-2, 0, 1]))).unwrap();
        assert_eq!(fs.len(), 2);
        let t = k.gen();
        let roots: Vec<NfElem> = fs.iter().map(|(g, _)| -&g.coeff(0)).collect();
        assert!(roots.contains(&t) && roots.contains(&-&t));

        let qi = field(&[1, 0, 1]);
        let fs = factor_over_nf(&qi, &qi.lift_poly(&RatPoly::from_i64s(&[3, -1, 1]))).unwrap();
        assert_eq!(fs.len(), 1);

        let fs = factor_over_nf(&qi, &qi.lift_poly(&RatPoly::from_i64s(&[1, 0, 0, 0, 1]))).unwrap();
        assert_eq!(fs.iter().map(|(g, _)| g.deg()).collect::<Vec<_>>(), vec![2, 2]);
        let i = qi.gen();
        let expect = [
            NfPoly::new(vec![-&i, qi.zero(), qi.one()]),
            NfPoly::new(vec![i.clone(), qi.zero(), qi.one()]),
        ];
        for (g, _) in &fs {
            assert!(expect.contains(g));
        }
    }

    #[test]
    fn factors_with_multiplicity() {
        let qi = field(&[1, 0, 1]);
        let f = qi.lift_poly(&RatPoly::from_i64s(&[1, 0, 1]).pow(2));
        let fs = factor_over_nf(&qi, &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, m)| g.deg() == 1 && *m == 2));
    }

    #[test]
    fn embedding_examples() {
        let l = field(&[-2, 0, 1]);
        let e = field(&[-2, 0, 0, 0, 1]);
        let embs = embeddings(&l, &e).unwrap();
        assert_eq!(embs.len(), 2);
        assert!(embs.iter().all(Embedding::verify));
        let t2 = e.gen().pow(2);
        assert!(embs.iter().any(|m| m.image == t2));
        assert!(embeddings(&l, &field(&[1, 0, 1])).unwrap().is_empty());
        let q = NumberField::rationals();
        assert_eq!(embeddings(&q, &field(&[1, 0, 1])).unwrap().len(), 1);
    }
}
