//! Sturm sequences, real root counting and isolation.

use num_traits::{One, Signed, Zero};

use crate::exact::poly::{OrderedField, Poly};
use crate::{Rat, RatPoly};

/// An interval endpoint that may be infinite.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound<T> {
    NegInf,
    Finite(T),
    PosInf,
}

fn sign<T: OrderedField>(x: &T) -> i8 {
    if *x > T::zero() {
        1
    } else if *x < T::zero() {
        -1
    } else {
        0
    }
}

/// The signed remainder sequence of the squarefree part of `f`.
pub fn sturm_sequence<T: OrderedField>(f: &Poly<T>) -> Vec<Poly<T>> {
    let s0 = f.squarefree_part();
    let mut seq = vec![s0.clone(), s0.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn variations_at<T: OrderedField>(seq: &[Poly<T>], b: &Bound<T>) -> usize {
    match b {
        Bound::Finite(x) => variations(seq.iter().map(|p| sign(&p.eval(x)))),
        Bound::PosInf => variations(seq.iter().map(|p| sign(p.leading().unwrap()))),
        Bound::NegInf => variations(seq.iter().map(|p| {
            let s = sign(p.leading().unwrap());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        })),
    }
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_count<T: OrderedField>(f: &Poly<T>, lo: &Bound<T>, hi: &Bound<T>) -> usize {
    assert!(!f.is_zero(), "sturm_count of the zero polynomial");
    let seq = sturm_sequence(f);
    count_with(&seq, lo, hi)
}

fn count_with<T: OrderedField>(seq: &[Poly<T>], lo: &Bound<T>, hi: &Bound<T>) -> usize {
    variations_at(seq, lo).saturating_sub(variations_at(seq, hi))
}

/// An isolated real root of a squarefree rational polynomial: exactly one root
/// lies in the open interval `(lo, hi)` and neither endpoint is a root.
#[derive(Debug, Clone)]
pub struct RealRoot {
    pub poly: RatPoly,
    pub lo: Rat,
    pub hi: Rat,
}

impl RealRoot {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval (or collapses onto an exact rational root).
    pub fn refine(&mut self) {
        let two = Rat::from_integer(2.into());
        let mid = (&self.lo + &self.hi) / &two;
        let fm = self.poly.eval(&mid);
        if fm.is_zero() {
            let q = self.width() / Rat::from_integer(4.into());
            self.lo = &mid - &q;
            self.hi = &mid + &q;
            return;
        }
        if sign(&self.poly.eval(&self.lo)) != sign(&fm) {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Refines until the width drops below `eps`.
    pub fn refine_to(&mut self, eps: &Rat) {
        while &self.width() >= eps {
            self.refine();
        }
    }
}

/// Cauchy bound: every complex root has absolute value below the result.
pub fn root_bound(f: &RatPoly) -> Rat {
    let lc = f.leading().unwrap().abs();
    let m = f.coeffs()[..f.deg()]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    m + Rat::one()
}

/// Isolates all distinct real roots of `f`, in increasing order.
pub fn real_roots(f: &RatPoly) -> Vec<RealRoot> {
    let g = f.squarefree_part();
    if g.deg() == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&g);
    let b = root_bound(&g);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = Rat::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        let n = count_with(&seq, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        match n {
            0 => {}
            1 => out.push(isolate_single(&g, &seq, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Given `(lo, hi]` containing exactly one root, produce open-interval form.
fn isolate_single(g: &RatPoly, seq: &[RatPoly], lo: Rat, hi: Rat) -> RealRoot {
    if !g.eval(&hi).is_zero() && !g.eval(&lo).is_zero() {
        return RealRoot { poly: g.clone(), lo, hi };
    }
    if g.eval(&hi).is_zero() {
        // the root is hi itself; shrink a symmetric window until it holds only hi
        let mut d = (&hi - &lo) / Rat::from_integer(2.into());
        loop {
            let a = &hi - &d;
            let b = &hi + &d;
            if !g.eval(&a).is_zero()
                && !g.eval(&b).is_zero()
                && count_with(seq, &Bound::Finite(a.clone()), &Bound::Finite(b.clone())) == 1
            {
                return RealRoot { poly: g.clone(), lo: a, hi: b };
            }
            d /= Rat::from_integer(2.into());
        }
    }
    // lo is a root belonging elsewhere; move it right until it is not a root
    // and the interval still holds our root.
    let mut a = lo.clone();
    let mut d = (&hi - &lo) / Rat::from_integer(2.into());
    loop {
        let cand = &lo + &d;
        if !g.eval(&cand).is_zero()
            && count_with(seq, &Bound::Finite(cand.clone()), &Bound::Finite(hi.clone())) == 1
        {
            a = cand;
            break;
        }
        d /= Rat::from_integer(2.into());
        if d.is_zero() {
            break;
        }
    }
    RealRoot { poly: g.clone(), lo: a, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatPoly;

    fn fin(n: i64) -> Bound<Rat> {
        Bound::Finite(Rat::from_integer(n.into()))
    }

    #[test]
    fn documented_counts() {
        let all = (Bound::NegInf, Bound::PosInf);
        assert_eq!(sturm_count(&RatPoly::from_i64s(&[-2, 0, 1]), &all.0, &all.1), 2);
        assert_eq!(sturm_count(&RatPoly::from_i64s(&[1, 0, 1]), &all.0, &all.1), 0);
        assert_eq!(sturm_count(&RatPoly::from_i64s(&[0, -1, 0, 1]), &fin(0), &fin(2)), 1);
    }

    #[test]
    fn half_open_convention() {
        let f = RatPoly::from_i64s(&[0, -1, 0, 1]);
        assert_eq!(sturm_count(&f, &fin(-1), &fin(1)), 2);
        assert_eq!(sturm_count(&f, &fin(-2), &fin(-1)), 1);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = RatPoly::from_i64s(&[1, -2, 1]).pow(2);
        assert_eq!(sturm_count(&f, &Bound::NegInf, &Bound::PosInf), 1);
    }

    #[test]
    fn isolation_handles_rational_roots() {
        let f = RatPoly::from_i64s(&[0, -1, 0, 1]);
        let roots = real_roots(&f);
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(r.lo < r.hi);
            assert!(!f.eval(&r.lo).is_zero() && !f.eval(&r.hi).is_zero());
        }
        assert!(roots[0].hi <= roots[1].lo && roots[1].hi <= roots[2].lo);
    }

    #[test]
    fn float_sturm() {
        let f = Poly::<f64>::from_i64s(&[-2, 0, 1]);
        assert_eq!(sturm_count(&f, &Bound::Finite(0.0), &Bound::Finite(2.0)), 1);
    }
}
