//! Weil polynomials, Tate's description of endomorphism algebras, and
//! isogeny classes.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::brauer::{frac, BrauerClass};
use crate::error::{internal, invalid, Error, Result};
use crate::exact::arith::{binomial, is_prime, prime_power};
use crate::exact::factor::{factor_over_q, is_irreducible_over_q};
use crate::exact::resultant::resultant_in_param;
use crate::exact::sturm::{real_roots, sturm_count, Bound};
use crate::nf::NumberField;
use crate::places::{places_above_p_with_cap, real_places};
use crate::{IntPoly, Rat, RatPoly};

/// `F_q` with `q = p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundField {
    pub p: u64,
    pub r: u32,
    pub q: u64,
}

impl GroundField {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if r == 0 {
            return invalid("r must be positive");
        }
        let q = p
            .checked_pow(r)
            .ok_or_else(|| Error::InvalidInput(format!("{p}^{r} overflows")))?;
        Ok(GroundField { p, r, q })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Self::new(p, r)
    }
}

/// `t` compared with `sqrt(s)` for `s >= 0`.
fn cmp_sqrt(t: &Rat, s: &Rat) -> Ordering {
    if t.is_negative() {
        return Ordering::Less;
    }
    (t * t).cmp(s)
}

/// Whether every complex root of `h` has absolute value `sqrt(q)`.
///
/// Uses `R(y) = Res_x(h(x), x^2 - y x + q)`, whose roots are `a + q/a` over
/// the roots `a` of `h`; the condition holds iff every root of `R` is real
/// and lies in `[-2 sqrt q, 2 sqrt q]`. Roots on the circle are closed under
/// `a -> q/a`, so the functional equation is checked first.
pub fn roots_on_circle(q: u64, h: &IntPoly) -> bool {
    if h.is_zero() || h.deg() == 0 || h.coeff(0).is_zero() {
        return false;
    }
    if !satisfies_functional_equation(q, h) {
        return false;
    }
    let hr = h.to_rat();
    let qr = Rat::from_integer(q.into());
    let r = resultant_in_param(&hr, h.deg(), |y| {
        RatPoly::new(vec![qr.clone(), -y.clone(), Rat::one()])
    });
    let rsf = r.squarefree_part();
    if sturm_count(&rsf, &Bound::NegInf, &Bound::PosInf) != rsf.deg() {
        return false;
    }
    let four_q = Rat::from_integer((4 * q).into());
    let edge = RatPoly::new(vec![-four_q.clone(), Rat::zero(), Rat::one()]);
    let inner = rsf.exact_div(&rsf.gcd(&edge));
    for mut root in real_roots(&inner) {
        // refine until the interval avoids both endpoints +-2 sqrt q
        loop {
            let lo_c = cmp_sqrt(&root.lo.abs(), &four_q);
            let hi_c = cmp_sqrt(&root.hi.abs(), &four_q);
            let straddles_zero = root.lo.is_negative() && root.hi.is_positive();
            if straddles_zero {
                if lo_c != Ordering::Greater && hi_c != Ordering::Greater {
                    break;
                }
            } else if lo_c == hi_c && lo_c != Ordering::Equal {
                if lo_c == Ordering::Greater {
                    return false;
                }
                break;
            }
            root.refine();
        }
    }
    true
}

/// `x^d h(q/x) = h(0) h(x)` and `|h(0)| = q^(d/2)`: necessary for Weil.
pub fn satisfies_functional_equation(q: u64, h: &IntPoly) -> bool {
    let d = h.deg();
    let a0 = h.coeff(0);
    let qb = BigInt::from(q);
    if &a0 * &a0 != qb.pow(d as u32) {
        return false;
    }
    (0..=d).all(|k| h.coeff(d - k) * qb.pow((d - k) as u32) == &a0 * h.coeff(k))
}

/// Decides whether the monic irreducible `h` is a Weil `q`-polynomial.
pub fn weil_check(ground: &GroundField, h: &IntPoly) -> Result<bool> {
    if h.is_zero() || !h.is_monic() {
        return invalid("Weil candidate must be monic");
    }
    if !is_irreducible_over_q(h) {
        return invalid(format!("{h} is not irreducible over Q"));
    }
    Ok(roots_on_circle(ground.q, h))
}

/// A Weil `q`-polynomial: monic, irreducible, all roots of absolute value `sqrt q`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilPoly {
    pub ground: GroundField,
    pub h: IntPoly,
}

impl WeilPoly {
    pub fn new(ground: GroundField, h: IntPoly) -> Result<Self> {
        if !weil_check(&ground, &h)? {
            return Err(Error::NotWeil(format!("{h} over F_{}", ground.q)));
        }
        Ok(WeilPoly { ground, h })
    }

    pub fn degree(&self) -> usize {
        self.h.deg()
    }

    pub fn field(&self) -> NumberField {
        NumberField::new_unchecked(self.h.clone())
    }
}

fn coefficient_bound(q: u64, d: usize, i: usize) -> i64 {
    // |coefficient of x^(d-i)| <= C(d, i) q^(i/2)
    let c = BigInt::from(binomial(d as u64, i as u64));
    let v = (&c * &c * BigInt::from(q).pow(i as u32)).sqrt();
    i64::try_from(v).expect("coefficient bound fits in i64")
}

fn cmp_coeffs(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.coeffs().cmp(b.coeffs())
}

pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// All Weil `q`-polynomials of degree `d`, lexicographic on `(a_0, ..., a_d)`.
pub fn enumerate_weil(ground: &GroundField, d: usize, cap: usize) -> Result<Vec<WeilPoly>> {
    if d > cap {
        return invalid(format!("degree {d} exceeds the enumeration cap {cap}"));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let q = ground.q;
    let mut cands: Vec<IntPoly> = Vec::new();
    if d <= 2 {
        let bounds: Vec<i64> = (1..=d).map(|i| coefficient_bound(q, d, i)).collect();
        let mut idx = vec![0i64; d];
        for (j, b) in bounds.iter().enumerate() {
            idx[j] = -b;
        }
        loop {
            // idx[i-1] is the coefficient of x^(d-i)
            let mut cs: Vec<BigInt> = (0..d).map(|k| BigInt::from(idx[d - 1 - k])).collect();
            cs.push(BigInt::one());
            cands.push(IntPoly::new(cs));
            let mut j = 0;
            loop {
                if j == d {
                    break;
                }
                if idx[j] < bounds[j] {
                    idx[j] += 1;
                    break;
                }
                idx[j] = -bounds[j];
                j += 1;
            }
            if j == d {
                break;
            }
        }
    } else if d % 2 == 0 {
        cands = functional_equation_candidates(q, d);
    }
    let mut out: Vec<WeilPoly> = cands
        .into_iter()
        .filter(|h| satisfies_functional_equation(q, h) || d <= 2)
        .filter(|h| is_irreducible_over_q(h) && roots_on_circle(q, h))
        .map(|h| WeilPoly { ground: *ground, h })
        .collect();
    out.sort_by(|a, b| cmp_coeffs(&a.h, &b.h));
    out.dedup_by(|a, b| a.h == b.h);
    Ok(out)
}

/// Monic even-degree candidates obeying `a_k = +-q^(d/2-k) a_(d-k)`, top half free.
fn functional_equation_candidates(q: u64, d: usize) -> Vec<IntPoly> {
    let half = d / 2;
    let qb = BigInt::from(q);
    let free: Vec<usize> = (half..d).collect();
    let bounds: Vec<i64> = free.iter().map(|&k| coefficient_bound(q, d, d - k)).collect();
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let mut idx: Vec<i64> = bounds.iter().map(|b| -b).collect();
        if sign == -1 {
            // a_(d/2) = -a_(d/2) forces zero
            idx[0] = 0;
        }
        loop {
            let mut cs = vec![BigInt::zero(); d + 1];
            cs[d] = BigInt::one();
            for (j, &k) in free.iter().enumerate() {
                cs[k] = BigInt::from(idx[j]);
            }
            for k in 0..half {
                cs[k] = BigInt::from(sign) * qb.pow((half - k) as u32) * &cs[d - k];
            }
            out.push(IntPoly::new(cs));
            let mut j = 0;
            loop {
                if j == free.len() {
                    break;
                }
                let upper = if sign == -1 && j == 0 { 0 } else { bounds[j] };
                if idx[j] < upper {
                    idx[j] += 1;
                    break;
                }
                idx[j] = if sign == -1 && j == 0 { 0 } else { -bounds[j] };
                j += 1;
            }
            if j == free.len() {
                break;
            }
        }
    }
    out
}

/// Tate's data for the simple isogeny class of a Weil polynomial.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub weil: WeilPoly,
    pub field: NumberField,
    pub invariants: BrauerClass,
    /// Degree of the division algebra over its centre.
    pub c: u64,
    pub dim: u64,
    pub totally_real_center: bool,
}

pub fn tate_invariants(w: &WeilPoly) -> Result<EndAlgebra> {
    tate_invariants_with_cap(w, None)
}

/// As [`tate_invariants`], with an explicit p-adic precision cap.
pub fn tate_invariants_with_cap(w: &WeilPoly, cap: Option<u32>) -> Result<EndAlgebra> {
    let field = w.field();
    let GroundField { p, r, .. } = w.ground;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut inv = Vec::new();
    let reals = real_places(&field);
    for a in &reals {
        inv.push((a.label(), half.clone()));
    }
    let pi = field.gen();
    for place in places_above_p_with_cap(&field, p, cap)? {
        let v = place.valuation(&pi)?;
        let x = Rat::new(BigInt::from(v) * BigInt::from(place.f), BigInt::from(r));
        inv.push((place.label(), frac(&x)));
    }
    let invariants = BrauerClass::new(&field, inv)
        .map_err(|e| Error::InternalInconsistency(format!("Tate invariants: {e}")))?;
    let c = invariants.index();
    let cd = c * w.degree() as u64;
    if cd % 2 != 0 {
        return internal(format!("c*d = {cd} is odd for {}", w.h));
    }
    Ok(EndAlgebra {
        weil: w.clone(),
        field,
        invariants,
        c,
        dim: cd / 2,
        totally_real_center: reals.len() == w.degree(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TotallyRealKind {
    /// `r` odd: a surface with centre `Q(sqrt p)`, ramified at both real places.
    SurfaceDPrime,
    /// `r` even: a supersingular elliptic curve, algebra ramified at `p` and infinity.
    EllipticDp,
    NotTotallyReal,
}

impl TotallyRealKind {
    pub fn name(&self) -> &'static str {
        match self {
            TotallyRealKind::SurfaceDPrime => "SurfaceDPrime",
            TotallyRealKind::EllipticDp => "EllipticDp",
            TotallyRealKind::NotTotallyReal => "NotTotallyReal",
        }
    }
}

/// Classifies Weil polynomials with a real root; checks the expected shape.
pub fn totally_real_classify(w: &WeilPoly) -> Result<TotallyRealKind> {
    let hr = w.h.to_rat();
    if sturm_count(&hr, &Bound::NegInf, &Bound::PosInf) == 0 {
        return Ok(TotallyRealKind::NotTotallyReal);
    }
    let ea = tate_invariants(w)?;
    let labels = ea.invariants.support();
    let n_real = labels.iter().filter(|l| l.is_real()).count();
    let n_fin = labels.len() - n_real;
    let (kind, d, c, dim, real, fin) = if w.ground.r % 2 == 1 {
        (TotallyRealKind::SurfaceDPrime, 2, 2, 2, 2, 0)
    } else {
        (TotallyRealKind::EllipticDp, 1, 2, 1, 1, 1)
    };
    if (w.degree(), ea.c, ea.dim, n_real, n_fin) != (d, c, dim, real, fin) {
        return internal(format!("{} does not have the expected totally real shape", w.h));
    }
    Ok(kind)
}

/// Totally real, or CM: no real place and `x^d h(q/x) = +-q^(d/2) h(x)`.
pub fn is_totally_real_or_cm(w: &WeilPoly) -> bool {
    let hr = w.h.to_rat();
    let n_real = sturm_count(&hr, &Bound::NegInf, &Bound::PosInf);
    n_real == w.degree() || (n_real == 0 && satisfies_functional_equation(w.ground.q, &w.h))
}

/// One iso-simple piece `A_i^{m_i}` of an isogeny class.
#[derive(Clone, Debug)]
pub struct IsogenyFactor {
    pub endalg: EndAlgebra,
    pub m: u32,
}

impl IsogenyFactor {
    pub fn dim(&self) -> u64 {
        u64::from(self.m) * self.endalg.dim
    }
}

#[derive(Clone, Debug)]
pub struct IsogenyClass {
    pub ground: GroundField,
    pub factors: Vec<IsogenyFactor>,
}

impl IsogenyClass {
    pub fn total_dim(&self) -> u64 {
        self.factors.iter().map(IsogenyFactor::dim).sum()
    }

    /// Builds the class from `(h_i, m_i)` pairs with pairwise distinct `h_i`.
    pub fn from_factors(ground: GroundField, factors: &[(IntPoly, u32)]) -> Result<Self> {
        Self::from_factors_with_cap(ground, factors, None)
    }

    pub fn from_factors_with_cap(
        ground: GroundField,
        factors: &[(IntPoly, u32)],
        cap: Option<u32>,
    ) -> Result<Self> {
        if factors.is_empty() {
            return invalid("an isogeny class needs at least one factor");
        }
        let mut out: Vec<IsogenyFactor> = Vec::new();
        for (h, m) in factors {
            if *m == 0 {
                return invalid("multiplicities must be positive");
            }
            if out.iter().any(|f| &f.endalg.weil.h == h) {
                return Err(Error::InconsistentInput(format!("factor {h} listed twice")));
            }
            let w = WeilPoly::new(ground, h.clone())?;
            out.push(IsogenyFactor { endalg: tate_invariants_with_cap(&w, cap)?, m: *m });
        }
        Ok(IsogenyClass { ground, factors: out })
    }

    /// Reads `P = prod h_i^{m_i}` with `m_i` the isogeny multiplicities.
    pub fn from_charpoly(ground: GroundField, p: &IntPoly) -> Result<Self> {
        Self::from_charpoly_with_cap(ground, p, None)
    }

    pub fn from_charpoly_with_cap(ground: GroundField, p: &IntPoly, cap: Option<u32>) -> Result<Self> {
        if p.is_zero() || !p.is_monic() || p.deg() == 0 {
            return invalid("characteristic polynomial must be monic of positive degree");
        }
        if p.deg() % 2 == 1 {
            return Err(Error::InconsistentInput(format!(
                "characteristic polynomial {p} has odd degree"
            )));
        }
        let fac = factor_over_q(p)?;
        let pairs: Vec<(IntPoly, u32)> = fac.factors;
        IsogenyClass::from_factors_with_cap(ground, &pairs, cap)
    }
}
