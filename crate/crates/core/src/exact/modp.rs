//! Polynomials over a prime field F_p with word-sized residues.
//!
//! Polynomials are `Vec<u64>`, constant term first, trimmed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::arith::inv_mod;
use crate::IntPoly;

pub type Fpx = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

fn trim(mut a: Fpx) -> Fpx {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn mul_s(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn add_s(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_s(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn inv_s(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        inv_mod(a, self.p)
    }

    pub fn reduce_int(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_int_poly(&self, f: &IntPoly) -> Fpx {
        trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Fpx {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.add_s(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Fpx {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub_s(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Fpx {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add_s(out[i + j], self.mul_s(x, y));
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Fpx {
        trim(a.iter().map(|&x| self.mul_s(x, c)).collect())
    }

    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Fpx, Fpx) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let inv = self.inv_s(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul_s(r[k + db], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub_s(r[k + j], self.mul_s(c, bj));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Fpx {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Fpx {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv_s(lc)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Fpx {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Fpx, Fpx, Fpx) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv_s(*r0.last().expect("ext_gcd of zeros"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> Fpx {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_s(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        deg(&self.gcd(a, &self.derivative(a))) == 0
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Fpx {
        self.rem(&self.mul(a, b), m)
    }

    /// `a^e mod m`.
    pub fn pow_mod(&self, a: &[u64], e: &BigUint, m: &[u64]) -> Fpx {
        let mut acc = self.rem(&[1], m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn eval(&self, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| self.add_s(self.mul_s(acc, x), c))
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(g_d, d)` where `g_d` is the product of the degree-`d` irreducible factors.
    pub fn ddf(&self, f: &[u64]) -> Vec<(Fpx, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = vec![0, 1];
        let mut h = self.rem(&x, &f);
        let p = BigUint::from(self.p);
        let mut d = 1;
        while deg(&f) >= 2 * d {
            h = self.pow_mod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if deg(&g) > 0 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if deg(&f) > 0 {
            let d = deg(&f);
            out.push((f, d));
        }
        out
    }

    /// Splits a monic squarefree product of degree-`d` irreducibles.
    pub fn edf(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Fpx> {
        let n = deg(g);
        if n == d {
            return vec![g.to_vec()];
        }
        loop {
            let a: Fpx = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if deg(&a) == 0 {
                continue;
            }
            let b = if self.p == 2 {
                // absolute trace to F_2
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..d {
                    s = self.mulmod(&s, &s, g);
                    t = self.add(&t, &s);
                }
                t
            } else {
                let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
                self.sub(&self.pow_mod(&a, &e, g), &[1])
            };
            let h = self.gcd(&b, g);
            if deg(&h) > 0 && deg(&h) < n {
                let other = self.div_rem(g, &h).0;
                let mut out = self.edf(&h, d, rng);
                out.extend(self.edf(&other, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &[u64]) -> Vec<Fpx> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, &mut rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_x4_plus_1_mod_small_primes() {
        // x^4 + 1 splits into quadratics mod every odd prime
        for p in [3u64, 5, 7, 11, 13] {
            let fp = Fp::new(p);
            let fs = fp.factor_squarefree(&[1, 0, 0, 0, 1]);
            assert!(fs.iter().all(|f| deg(f) <= 2), "p={p}");
            let prod = fs.iter().fold(vec![1u64], |acc, f| fp.mul(&acc, f));
            assert_eq!(prod, vec![1, 0, 0, 0, 1]);
        }
    }

    #[test]
    fn factors_over_f2() {
        let fp = Fp::new(2);
        // x^3 + x = x (x + 1)^2 is not squarefree; x^3 + 1 = (x + 1)(x^2 + x + 1)
        let fs = fp.factor_squarefree(&[1, 0, 0, 1]);
        assert_eq!(fs, vec![vec![1, 1], vec![1, 1, 1]]);
        // x^4 + x + 1 irreducible, x^6 + x^5 + ... products of degree-2 and 4
        let f = fp.mul(&[1, 1, 0, 0, 1], &[1, 1, 1]);
        assert_eq!(fp.factor_squarefree(&f), vec![vec![1, 1, 1], vec![1, 1, 0, 0, 1]]);
    }

    #[test]
    fn ext_gcd_mod_p() {
        let fp = Fp::new(7);
        let a = vec![1, 0, 1];
        let b = vec![3, 1];
        let (g, s, t) = fp.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(fp.add(&fp.mul(&s, &a), &fp.mul(&t, &b)), vec![1]);
    }
}
