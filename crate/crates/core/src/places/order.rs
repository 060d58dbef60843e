//! p-maximal orders by the Round 2 algorithm, and the decomposition of
//! `O/pO` into local pieces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::linalg::{hnf_mod, kernel_mod, left_kernel_mod, rank_mod, IntMat, ModMat};
use crate::exact::modp::{deg, Fp};
use crate::{IntPoly, Rat};

/// An order of `Z[x]/(f)` (f monic) that is maximal at `p`, with its
/// multiplication table.
#[derive(Debug)]
pub(crate) struct Order {
    pub n: usize,
    pub p: u64,
    /// Basis element `w_i` is `num[i] / den` in the power basis; `num` is in HNF.
    num: IntMat,
    den: BigInt,
    /// `table[i][j]` holds the coordinates of `w_i * w_j`.
    pub table: Vec<Vec<Vec<BigInt>>>,
    table_p: Vec<Vec<Vec<u64>>>,
    one: Vec<BigInt>,
    theta: Vec<BigInt>,
    /// Basis of the radical of `O/pO`, as RREF rows.
    pub radical: ModMat,
}

/// `a * b mod f` for integer power-basis vectors of length `n`, `f` monic.
fn mulmod_int(a: &[BigInt], b: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    let mut prod = vec![BigInt::zero(); 2 * n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    for k in (n..2 * n).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for (j, fj) in f[..n].iter().enumerate() {
            prod[k - n + j] -= &c * fj;
        }
    }
    prod.truncate(n);
    prod
}

impl Order {
    fn with_basis(f: &[BigInt], p: u64, num: IntMat, den: BigInt) -> Self {
        let n = f.len() - 1;
        let mut order = Order {
            n,
            p,
            num,
            den,
            table: Vec::new(),
            table_p: Vec::new(),
            one: Vec::new(),
            theta: Vec::new(),
            radical: Vec::new(),
        };
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = mulmod_int(&order.num[i], &order.num[j], f);
                let c = order
                    .solve(prod, &order.den)
                    .expect("order is not closed under multiplication");
                table[j][i] = c.clone();
                table[i][j] = c;
            }
        }
        let fp = Fp::new(p);
        order.table_p = table
            .iter()
            .map(|row| row.iter().map(|c| c.iter().map(|x| fp.reduce_int(x)).collect()).collect())
            .collect();
        order.table = table;
        let unit = |k: usize| -> Vec<BigInt> {
            (0..n).map(|i| if i == k { BigInt::one() } else { BigInt::zero() }).collect()
        };
        order.one = order.from_power_int(&unit(0)).expect("1 lies in the order");
        order.theta = if n > 1 {
            order.from_power_int(&unit(1)).expect("x lies in the order")
        } else {
            order.one.clone()
        };
        order
    }

    /// Integer `c` with `c * (scale * num) = r`, if one exists.
    fn solve(&self, mut r: Vec<BigInt>, scale: &BigInt) -> Option<Vec<BigInt>> {
        let mut c = vec![BigInt::zero(); self.n];
        for k in 0..self.n {
            if r[k].is_zero() {
                continue;
            }
            let piv = scale * &self.num[k][k];
            let (q, rem) = r[k].div_rem(&piv);
            if !rem.is_zero() {
                return None;
            }
            let step = &q * scale;
            for (x, y) in r.iter_mut().zip(&self.num[k]).skip(k) {
                *x -= &step * y;
            }
            c[k] = q;
        }
        Some(c)
    }

    /// Order coordinates of `v(x)` for an integer polynomial `v`.
    pub fn from_power_int(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r: Vec<BigInt> = v.iter().map(|x| x * &self.den).collect();
        r.resize(self.n, BigInt::zero());
        self.solve(r, &BigInt::one())
    }

    /// Power-basis coordinates of an element given in order coordinates.
    pub fn to_power(&self, c: &[BigInt]) -> Vec<Rat> {
        let mut acc = vec![BigInt::zero(); self.n];
        for (ci, row) in c.iter().zip(&self.num) {
            if ci.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(row) {
                *a += ci * x;
            }
        }
        acc.into_iter().map(|a| Rat::new(a, self.den.clone())).collect()
    }

    pub fn one(&self) -> Vec<BigInt> {
        self.one.clone()
    }

    /// Coordinates of the power-basis generator `x`.
    pub fn theta(&self) -> Vec<BigInt> {
        self.theta.clone()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt], m: Option<&BigInt>) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        if let Some(m) = m {
            for o in out.iter_mut() {
                *o = o.mod_floor(m);
            }
        }
        out
    }

    pub fn mul_p(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let mut out = vec![0u128; self.n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = (ai as u128 * bj as u128) % p;
                for (o, &t) in out.iter_mut().zip(&self.table_p[i][j]) {
                    *o = (*o + c * t as u128) % p;
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    fn pow_p(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one.iter().map(|c| Fp::new(self.p).reduce_int(c)).collect::<Vec<_>>();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_p(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_p(&base, &base);
            }
        }
        acc
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        v[i] = 1;
        v
    }

    /// Matrix of the Frobenius `x -> x^p` on `O/pO` (row `i` = image of `w_i`).
    pub fn frobenius(&self) -> ModMat {
        (0..self.n).map(|i| self.pow_p(&self.unit(i), self.p)).collect()
    }

    fn compute_radical(&self) -> ModMat {
        let fp = Fp::new(self.p);
        let frob = self.frobenius();
        // x -> x^(p^j) with p^j >= n kills exactly the nilradical
        let mut j = 1u32;
        let mut pj = self.p;
        while (pj as usize) < self.n {
            pj = pj.saturating_mul(self.p);
            j += 1;
        }
        let mut m = frob.clone();
        for _ in 1..j {
            m = mat_mul_mod(fp, &m, &frob);
        }
        left_kernel_mod(fp, &m)
    }
}

pub(crate) fn mat_mul_mod(fp: Fp, a: &ModMat, b: &ModMat) -> ModMat {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| fp.add_s(acc, fp.mul_s(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

fn pivots_of(rows: &ModMat) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("zero row in RREF"))
        .collect()
}

/// Integer lattice spanned by RREF rows (lifted) and `p * e_c` for the non-pivot columns.
fn lattice_from_rref(rows: &ModMat, n: usize, p: u64) -> IntMat {
    let pivots = pivots_of(rows);
    let mut out: IntMat = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for c in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigInt::zero(); n];
        v[c] = BigInt::from(p);
        out.push(v);
    }
    out
}

/// Coordinates mod `p` of `y` in the generators of `lattice_from_rref(rows)`.
fn lattice_coords_mod_p(rows: &ModMat, pivots: &[usize], y: &[BigInt], p: u64) -> Vec<u64> {
    let fp = Fp::new(p);
    let bp = BigInt::from(p);
    let mut z = y.to_vec();
    let mut out = Vec::with_capacity(y.len());
    for (r, &pc) in rows.iter().zip(pivots) {
        let a = y[pc].clone();
        if !a.is_zero() {
            for (zj, &rj) in z.iter_mut().zip(r) {
                if rj != 0 {
                    *zj -= &a * rj;
                }
            }
        }
        out.push(fp.reduce_int(&a));
    }
    for (c, zc) in z.iter().enumerate() {
        if pivots.contains(&c) {
            continue;
        }
        let (q, rem) = zc.div_rem(&bp);
        assert!(rem.is_zero(), "radical is not an ideal");
        out.push(fp.reduce_int(&q));
    }
    out
}

/// Round 2: enlarge `Z[x]` until it is maximal at `p`.
pub(crate) fn p_maximal_order(f: &IntPoly, p: u64) -> Order {
    assert!(f.is_monic(), "defining polynomial must be monic");
    let n = f.deg();
    let fc: Vec<BigInt> = (0..=n).map(|i| f.coeff(i)).collect();
    let fp = Fp::new(p);
    let bp = BigInt::from(p);
    let identity: IntMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut order = Order::with_basis(&fc, p, identity, BigInt::one());
    loop {
        let radical = order.compute_radical();
        let pivots = pivots_of(&radical);
        let ip = lattice_from_rref(&radical, n, p);
        // x -> (x * c_l mod p I_p)_l, an F_p-linear map O/pO -> (I_p/pI_p)^n
        let a: ModMat = (0..n)
            .map(|k| {
                let mut row = Vec::with_capacity(n * n);
                for c in &ip {
                    let mut prod = vec![BigInt::zero(); n];
                    for (j, cj) in c.iter().enumerate() {
                        if cj.is_zero() {
                            continue;
                        }
                        for (o, t) in prod.iter_mut().zip(&order.table[k][j]) {
                            if !t.is_zero() {
                                *o += cj * t;
                            }
                        }
                    }
                    row.extend(lattice_coords_mod_p(&radical, &pivots, &prod, p));
                }
                row
            })
            .collect();
        let u = left_kernel_mod(fp, &a);
        if u.is_empty() {
            order.radical = radical;
            return order;
        }
        let lat = lattice_from_rref(&u, n, p);
        let rows: IntMat = lat
            .iter()
            .map(|l| {
                let mut acc = vec![BigInt::zero(); n];
                for (li, row) in l.iter().zip(&order.num) {
                    if li.is_zero() {
                        continue;
                    }
                    for (a, x) in acc.iter_mut().zip(row) {
                        *a += li * x;
                    }
                }
                acc
            })
            .collect();
        let mut den = &order.den * &bp;
        let mut num = hnf_mod(&rows, n, &den);
        while num.iter().flatten().all(|x| x.is_multiple_of(&bp)) && den.is_multiple_of(&bp) {
            num.iter_mut().flatten().for_each(|x| *x = &*x / &bp);
            den = &den / &bp;
        }
        order = Order::with_basis(&fc, p, num, den);
    }
}

/// Primitive idempotents of `O/pO`, one per prime above `p`.
pub(crate) fn idempotents(order: &Order) -> Vec<Vec<u64>> {
    let fp = Fp::new(order.p);
    let mut fm = order.frobenius();
    for (i, row) in fm.iter_mut().enumerate() {
        row[i] = fp.sub_s(row[i], 1);
    }
    let fixed = left_kernel_mod(fp, &fm);
    let g = fixed.len();
    let one: Vec<u64> = order.one().iter().map(|c| fp.reduce_int(c)).collect();
    let mut idems = vec![one];
    for b in &fixed {
        if idems.len() == g {
            break;
        }
        let mut next = Vec::new();
        for eps in &idems {
            let x = order.mul_p(b, eps);
            let roots = eigenvalues(order, &x, eps);
            if roots.len() == 1 {
                next.push(eps.clone());
                continue;
            }
            for (j, cj) in roots.iter().enumerate() {
                let mut e = eps.clone();
                for (i, ci) in roots.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let shifted: Vec<u64> = x
                        .iter()
                        .zip(eps)
                        .map(|(&xv, &ev)| fp.sub_s(xv, fp.mul_s(*ci, ev)))
                        .collect();
                    let inv = fp.inv_s(fp.sub_s(*cj, *ci));
                    e = order.mul_p(&e, &shifted).iter().map(|&v| fp.mul_s(v, inv)).collect();
                }
                next.push(e);
            }
        }
        idems = next;
    }
    debug_assert_eq!(idems.len(), g);
    idems
}

/// Distinct roots of the minimal polynomial of `x` inside `eps * (O/pO)`.
fn eigenvalues(order: &Order, x: &[u64], eps: &[u64]) -> Vec<u64> {
    let fp = Fp::new(order.p);
    let mut powers: Vec<Vec<u64>> = vec![eps.to_vec()];
    loop {
        let next = order.mul_p(powers.last().unwrap(), x);
        powers.push(next);
        // columns are the powers; look for a relation ending in the newest one
        let k = powers.len();
        let mat: ModMat = (0..order.n).map(|r| powers.iter().map(|v| v[r]).collect()).collect();
        let ker = kernel_mod(fp, &mat, k);
        if let Some(rel) = ker.iter().find(|v| v[k - 1] != 0) {
            let mp = fp.monic(&trim_vec(rel.clone()));
            let fs = fp.factor_squarefree(&mp);
            assert!(fs.iter().all(|f| deg(f) == 1), "fixed algebra is not split");
            let mut roots: Vec<u64> = fs.iter().map(|f| fp.sub_s(0, f[0])).collect();
            roots.sort_unstable();
            return roots;
        }
    }
}

fn trim_vec(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `(e, f)` of the prime cut out by the idempotent `eps`.
pub(crate) fn ramification(order: &Order, eps: &[u64]) -> (u32, u32) {
    let fp = Fp::new(order.p);
    let full: ModMat = (0..order.n).map(|i| order.mul_p(&order.unit(i), eps)).collect();
    let rad: ModMat = order.radical.iter().map(|k| order.mul_p(k, eps)).collect();
    let dim = rank_mod(fp, &full);
    let rdim = if rad.is_empty() { 0 } else { rank_mod(fp, &rad) };
    let f = dim - rdim;
    (u32::try_from(dim / f).unwrap(), u32::try_from(f).unwrap())
}

/// Lifts an idempotent mod `p` to one mod `p^k`.
pub(crate) fn lift_idempotent(order: &Order, eps: &[u64], k: u32) -> Vec<BigInt> {
    let m = BigInt::from(order.p).pow(k);
    let mut e: Vec<BigInt> = eps.iter().map(|&x| BigInt::from(x)).collect();
    let mut prec = 1u32;
    while prec < k {
        let e2 = order.mul(&e, &e, Some(&m));
        let e3 = order.mul(&e2, &e, Some(&m));
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| (BigInt::from(3) * a - BigInt::from(2) * b).mod_floor(&m))
            .collect();
        prec *= 2;
    }
    e
}

/// Matrix of multiplication by `a` (row `i` = coordinates of `w_i * a`), mod `m`.
pub(crate) fn mult_matrix(order: &Order, a: &[BigInt], m: &BigInt) -> IntMat {
    (0..order.n)
        .map(|i| {
            let mut ei = vec![BigInt::zero(); order.n];
            ei[i] = BigInt::one();
            order.mul(&ei, a, Some(m))
        })
        .collect()
}
