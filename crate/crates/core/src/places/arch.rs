use crate::exact::sturm::{real_roots, RealRoot};
use crate::nf::NumberField;
use crate::places::PlaceLabel;
use crate::{Rat, RatPoly};

#[derive(Clone, Debug)]
pub enum ArchKind {
    /// A real embedding, identified by an isolating interval of its root.
    Real(RealRoot),
    /// A pair of complex conjugate embeddings.
    Complex,
}

#[derive(Clone, Debug)]
pub struct ArchPlace {
    pub kind: ArchKind,
    pub index: usize,
}

impl ArchPlace {
    pub fn is_real(&self) -> bool {
        matches!(self.kind, ArchKind::Real(_))
    }

    pub fn label(&self) -> PlaceLabel {
        match self.kind {
            ArchKind::Real(_) => PlaceLabel::Real(self.index),
            ArchKind::Complex => PlaceLabel::Complex(self.index),
        }
    }
}

/// Real places in increasing order of the root, then complex pairs.
pub fn arch_places(k: &NumberField) -> Vec<ArchPlace> {
    let roots = real_roots(k.modulus());
    let n_complex = (k.degree() - roots.len()) / 2;
    let mut out: Vec<ArchPlace> = roots
        .into_iter()
        .enumerate()
        .map(|(i, r)| ArchPlace { kind: ArchKind::Real(r), index: i + 1 })
        .collect();
    out.extend((1..=n_complex).map(|i| ArchPlace { kind: ArchKind::Complex, index: i }));
    out
}

pub fn real_places(k: &NumberField) -> Vec<ArchPlace> {
    arch_places(k).into_iter().filter(ArchPlace::is_real).collect()
}

/// Enclosure of `f` over `[lo, hi]` by interval Horner evaluation.
pub fn eval_interval(f: &RatPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut acc = (Rat::from_integer(0.into()), Rat::from_integer(0.into()));
    for c in f.coeffs().iter().rev() {
        let cands = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        acc = (mn + c, mx + c);
    }
    acc
}

/// Given a real root of a larger field and the image `image(gamma)` of the
/// smaller field's generator, returns the 1-based real place of the smaller
/// field it lies over. `targets` are that field's isolated real roots.
pub fn locate_real_image(targets: &[RealRoot], image: &RatPoly, root: &RealRoot) -> usize {
    let mut root = root.clone();
    loop {
        let (a, b) = eval_interval(image, &root.lo, &root.hi);
        let hits: Vec<usize> = targets
            .iter()
            .enumerate()
            .filter(|(_, t)| !(b < t.lo || a > t.hi))
            .map(|(i, _)| i)
            .collect();
        // the image is a root of the smaller field's polynomial, hence lies in
        // one of the disjoint target intervals
        if hits.len() == 1 {
            return hits[0] + 1;
        }
        assert!(!hits.is_empty(), "real embedding does not land on a real root");
        root.refine();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;

    fn field(cs: &[i64]) -> NumberField {
        NumberField::new(IntPoly::from_i64s(cs)).unwrap()
    }

    #[test]
    fn documented_signatures() {
        let count = |k: &NumberField| {
            let a = arch_places(k);
            (a.iter().filter(|w| w.is_real()).count(), a.iter().filter(|w| !w.is_real()).count())
        };
        assert_eq!(count(&field(&[-2, 0, 1])), (2, 0));
        assert_eq!(count(&field(&[1, 0, 1])), (0, 1));
        assert_eq!(count(&field(&[-2, 0, 0, 0, 1])), (2, 1));
    }

    #[test]
    fn real_image_location() {
        // Q(2^(1/4)) -> image of sqrt 2 is t^2; both real roots map to +sqrt 2
        let small = real_roots(&RatPoly::from_i64s(&[-2, 0, 1]));
        let big = real_roots(&RatPoly::from_i64s(&[-2, 0, 0, 0, 1]));
        let img = RatPoly::from_i64s(&[0, 0, 1]);
        assert_eq!(locate_real_image(&small, &img, &big[0]), 2);
        assert_eq!(locate_real_image(&small, &img, &big[1]), 2);
        let neg = RatPoly::from_i64s(&[0, 0, -1]);
        assert_eq!(locate_real_image(&small, &neg, &big[1]), 1);
    }
}
