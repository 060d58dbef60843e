//! Dense linear algebra over Q, F_p and Z/p^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::modp::Fp;
use crate::Rat;

pub type RatMat = Vec<Vec<Rat>>;
pub type IntMat = Vec<Vec<BigInt>>;
pub type ModMat = Vec<Vec<u64>>;

pub fn identity_rat(n: usize) -> RatMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_mul_rat(a: &RatMat, b: &RatMat) -> RatMat {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rat::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul_rat(v: &[Rat], b: &RatMat) -> Vec<Rat> {
    mat_mul_rat(&vec![v.to_vec()], b).pop().unwrap()
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn inverse_rat(a: &RatMat) -> Option<RatMat> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(identity_rat(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rat::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&c * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Reduced row echelon form mod p; returns the nonzero rows and pivot columns.
pub fn rref_mod(fp: Fp, rows: &ModMat) -> (ModMat, Vec<usize>) {
    let mut m: ModMat = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = fp.inv_s(m[r][c]);
        for x in m[r].iter_mut() {
            *x = fp.mul_s(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    let t = fp.mul_s(f, m[r][j]);
                    m[i][j] = fp.sub_s(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_mod(fp: Fp, rows: &ModMat) -> usize {
    rref_mod(fp, rows).1.len()
}

/// Basis of `{x : A x = 0}` over F_p, as RREF rows with pivots.
pub fn kernel_mod(fp: Fp, a: &ModMat, ncols: usize) -> ModMat {
    let (r, pivots) = rref_mod(fp, a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis: ModMat = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = fp.sub_s(0, row[fc]);
            }
            v
        })
        .collect();
    if basis.is_empty() {
        return basis;
    }
    rref_mod(fp, &basis).0
}

/// Basis of `{x : x A = 0}` over F_p.
pub fn left_kernel_mod(fp: Fp, a: &ModMat) -> ModMat {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let t: ModMat = (0..ncols).map(|j| (0..nrows).map(|i| a[i][j]).collect()).collect();
    kernel_mod(fp, &t, nrows)
}

/// Hermite normal form (upper triangular rows, positive diagonal, entries
/// right of a pivot reduced) of the lattice spanned by `rows`, given that the
/// lattice contains `d Z^n`.
pub fn hnf_mod(rows: &IntMat, n: usize, d: &BigInt) -> IntMat {
    let mut work: IntMat = rows
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(d)).collect())
        .collect();
    let mut out: IntMat = Vec::with_capacity(n);
    for c in 0..n {
        let mut piv = vec![BigInt::zero(); n];
        piv[c] = d.clone();
        for r in work.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let eg = piv[c].extended_gcd(&r[c]);
            let (a, b) = (&piv[c] / &eg.gcd, &r[c] / &eg.gcd);
            let np: Vec<BigInt> = (0..n).map(|j| &eg.x * &piv[j] + &eg.y * &r[j]).collect();
            let nr: Vec<BigInt> = (0..n).map(|j| &b * &piv[j] - &a * &r[j]).collect();
            piv = np;
            *r = nr;
            for j in c + 1..n {
                piv[j] = piv[j].mod_floor(d);
                r[j] = r[j].mod_floor(d);
            }
        }
        if piv[c].is_negative() {
            piv.iter_mut().for_each(|x| *x = -&*x);
        }
        out.push(piv);
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let q = out[i][j].div_floor(&out[j][j]);
            if !q.is_zero() {
                let rj = out[j].clone();
                for (x, y) in out[i].iter_mut().zip(&rj).skip(j) {
                    *x -= &q * y;
                }
            }
        }
    }
    out
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
/// algorithm, coefficients constant term first, reduced mod `m` if given.
pub fn charpoly_berkowitz(a: &IntMat, m: Option<&BigInt>) -> Vec<BigInt> {
    let red = |x: BigInt| match m {
        Some(m) => x.mod_floor(m),
        None => x,
    };
    let n = a.len();
    // highest-degree coefficient first while building
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let mut t = vec![BigInt::one(), red(-a[r][r].clone())];
        // powers A_r^k C for the leading r x r block
        let mut w: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc: BigInt = (0..r).map(|j| &a[r][j] * &w[j]).sum();
            t.push(red(-rc));
            w = (0..r)
                .map(|i| red((0..r).map(|j| &a[i][j] * &w[j]).sum()))
                .collect();
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                acc += &t[i - j] * vj;
            }
            *slot = red(acc);
        }
        v = nv;
    }
    v.reverse();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = inverse_rat(&a).unwrap();
        assert_eq!(mat_mul_rat(&a, &inv), identity_rat(2));
        assert!(inverse_rat(&vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }

    #[test]
    fn kernel_mod_p() {
        let fp = Fp::new(5);
        let a = vec![vec![1, 2, 3], vec![2, 4, 2]];
        let k = kernel_mod(fp, &a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&k[0]).fold(0, |s, (x, y)| fp.add_s(s, fp.mul_s(*x, *y)));
            assert_eq!(dot, 0);
        }
        assert_eq!(rank_mod(fp, &a), 2);
    }

    #[test]
    fn berkowitz_matches_companion() {
        // companion matrix of x^3 - 2x + 5 (acting on columns)
        let a: IntMat = vec![
            vec![0.into(), 0.into(), (-5).into()],
            vec![1.into(), 0.into(), 2.into()],
            vec![0.into(), 1.into(), 0.into()],
        ];
        let cp = charpoly_berkowitz(&a, None);
        let expect: Vec<BigInt> = [5, -2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(cp, expect);
        let m = BigInt::from(7);
        let cpm = charpoly_berkowitz(&a, Some(&m));
        let expect_m: Vec<BigInt> = [5, 5, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(cpm, expect_m);
    }

    #[test]
    fn hnf_of_small_lattice() {
        let rows: IntMat = vec![
            vec![2.into(), 4.into()],
            vec![1.into(), 3.into()],
        ];
        // det 2, so 2 Z^2 lies inside
        let h = hnf_mod(&rows, 2, &BigInt::from(2));
        let expect: IntMat = vec![vec![1.into(), 1.into()], vec![0.into(), 2.into()]];
        assert_eq!(h, expect);
    }
}
