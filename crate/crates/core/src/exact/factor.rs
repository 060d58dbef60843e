//! Factorization over Q: squarefree decomposition, factorization modulo a
//! good prime, Hensel lifting and subset recombination.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::exact::arith::{inv_mod_big, is_prime};
use crate::exact::modp::{Fp, Fpx};
use crate::exact::poly::cmp_rat_seq;
use crate::{IntPoly, Rat};

/// `f = unit * prod(g^m)` with each `g` irreducible, primitive, positive leading
/// coefficient. For monic integer input every `g` is monic.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let prod = self
            .factors
            .iter()
            .fold(IntPoly::one(), |acc, (g, m)| &acc * &g.pow(*m));
        (&prod.to_rat() * &crate::RatPoly::constant(self.unit.clone()))
            .to_int()
            .expect("factorization unit is not integral")
    }
}

pub fn factor_over_q(f: &IntPoly) -> Result<Factorization> {
    if f.is_zero() {
        return invalid("cannot factor the zero polynomial");
    }
    let mut factors = Vec::new();
    for (g, m) in f.to_rat().squarefree_decomposition() {
        for h in factor_squarefree(&g.primitive_int()) {
            factors.push((h, m));
        }
    }
    factors.sort_by(|(a, _), (b, _)| canonical_cmp(a, b));
    let lc_prod = factors
        .iter()
        .fold(BigInt::one(), |acc, (g, m)| acc * g.leading().unwrap().pow(*m));
    let unit = Rat::new(f.leading().unwrap().clone(), lc_prod);
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible_over_q(f: &IntPoly) -> bool {
    f.deg() >= 1
        && factor_over_q(f)
            .map(|fa| fa.factors.len() == 1 && fa.factors[0].1 == 1)
            .unwrap_or(false)
}

/// Ordering by degree, then coefficients from the constant term up.
pub fn canonical_cmp(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    let ra: Vec<Rat> = a.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
    let rb: Vec<Rat> = b.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
    a.deg().cmp(&b.deg()).then_with(|| cmp_rat_seq(&ra, &rb))
}

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_fpx(a: &Fpx) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// Exact quotient `a / b` over Z, if it exists.
pub fn int_div(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let db = b.deg();
    if a.is_zero() {
        return Some(IntPoly::zero());
    }
    if a.deg() < db {
        return None;
    }
    let lc = b.leading().unwrap();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); a.deg() - db + 1];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
}

/// Lifts `F = G*H (mod p)` with `G`, `H` monic to a factorization mod `p^k`.
fn hensel_two(f: &IntPoly, g: &Fpx, h: &Fpx, fp: Fp, k: u32) -> (IntPoly, IntPoly) {
    let p = BigInt::from(fp.p);
    let (_, s, t) = fp.ext_gcd(g, h);
    let mut gg = lift_fpx(g);
    let mut hh = lift_fpx(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let diff = f - &(&gg * &hh);
        let e: Fpx = {
            let q = IntPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
            fp.from_int_poly(&q)
        };
        if !e.is_empty() {
            let et = fp.mul(&e, &t);
            let (qq, dg) = fp.div_rem(&et, g);
            let dh = fp.add(&fp.mul(&e, &s), &fp.mul(&qq, h));
            gg = &gg + &lift_fpx(&dg).scale(&pj);
            hh = &hh + &lift_fpx(&dh).scale(&pj);
        }
        pj *= &p;
    }
    (reduce(&gg, &pj), reduce(&hh, &pj))
}

fn hensel_all(f: &IntPoly, factors: &[Fpx], fp: Fp, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Fpx]| fs.iter().fold(vec![1u64], |acc, x| fp.mul(&acc, x));
    let (a, b) = (prod(&factors[..mid]), prod(&factors[mid..]));
    let (ga, gb) = hensel_two(f, &a, &b, fp, k);
    let mut out = hensel_all(&ga, &factors[..mid], fp, k);
    out.extend(hensel_all(&gb, &factors[mid..], fp, k));
    out
}

/// Good primes: odd, not dividing the leading coefficient, squarefree reduction.
fn choose_prime(f: &IntPoly) -> (Fp, Vec<Fpx>) {
    let lc = f.leading().unwrap();
    let mut best: Option<(Fp, Vec<Fpx>)> = None;
    let mut tried = 0;
    for p in (3u64..).step_by(2).filter(|&p| is_prime(p)) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fm = fp.from_int_poly(f);
        if !fp.is_squarefree(&fm) {
            continue;
        }
        let fs = fp.factor_squarefree(&fm);
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((fp, fs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.unwrap()
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    if f.deg() <= 1 {
        return vec![f.primitive_part()];
    }
    let (fp, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.primitive_part()];
    }
    let n = f.deg();
    let lc = f.leading().unwrap().abs();
    let bound = BigInt::from(2) * &lc * (BigInt::one() << n) * BigInt::from(n + 1) * f.max_abs_coeff();
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lc_inv = inv_mod_big(f.leading().unwrap(), &pk);
    let monic_f = reduce(&f.scale(&lc_inv), &pk);
    let lifted = hensel_all(&monic_f, &modular, fp, k);
    debug_assert_eq!(lifted.len(), modular.len());

    let mut out = Vec::new();
    let mut fcur = f.clone();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for combo in remaining.iter().copied().combinations(s) {
            let lcc = fcur.leading().unwrap().clone();
            let prod = combo
                .iter()
                .fold(IntPoly::constant(lcc), |acc, &i| reduce(&(&acc * &lifted[i]), &pk));
            let cand = IntPoly::new(prod.coeffs().iter().map(|c| sym_mod(c, &pk)).collect())
                .primitive_part();
            if cand.deg() == 0 {
                continue;
            }
            if let Some(q) = int_div(&fcur, &cand) {
                found = Some((combo, cand, q));
                break;
            }
        }
        match found {
            Some((combo, cand, q)) => {
                out.push(cand);
                fcur = q;
                remaining.retain(|i| !combo.contains(i));
            }
            None => s += 1,
        }
    }
    out.push(fcur.primitive_part());
    debug_assert!(out.iter().all(|g| g.deg() > 0));
    out
}

/// Distinct rational roots of `f`.
pub fn rational_roots(f: &IntPoly) -> Vec<Rat> {
    factor_over_q(f)
        .map(|fa| {
            fa.factors
                .iter()
                .filter(|(g, _)| g.deg() == 1)
                .map(|(g, _)| Rat::new(-g.coeff(0), g.coeff(1)))
                .collect()
        })
        .unwrap_or_default()
}
