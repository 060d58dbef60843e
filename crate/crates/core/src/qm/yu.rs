//! Feasibility of the linear system in Yu's embedding criterion.

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YuFactor {
    /// Matrix size `m_ji` of the simple factor.
    pub m: u64,
    /// `[D_ji : F]`.
    pub d_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YuBlock {
    /// `dim_{Delta_j} V_j`.
    pub v_dim: u64,
    /// `[Delta_j : F]`.
    pub delta_dim: u64,
    pub factors: Vec<YuFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YuInstance {
    pub blocks: Vec<YuBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YuOutcome {
    pub feasible: bool,
    /// Per block: the `x_ji` when feasible.
    pub witness: Option<Vec<Vec<u64>>>,
    /// Per block: the step sizes `u_ji`.
    pub steps: Vec<Vec<u64>>,
}

impl YuInstance {
    /// `u_ji = m_ji [D_ji:F] / [Delta_j:F]`, checking integrality.
    pub fn steps(&self) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        for (j, b) in self.blocks.iter().enumerate() {
            if b.v_dim == 0 || b.delta_dim == 0 {
                return invalid(format!("block {j}: dimensions must be positive"));
            }
            let mut us = Vec::new();
            for (i, f) in b.factors.iter().enumerate() {
                if f.m == 0 || f.d_dim == 0 {
                    return invalid(format!("factor ({j}, {i}): dimensions must be positive"));
                }
                let num = f.m * f.d_dim;
                if num % b.delta_dim != 0 {
                    return invalid(format!(
                        "factor ({j}, {i}): m*[D:F] = {num} is not divisible by [Delta:F] = {}",
                        b.delta_dim
                    ));
                }
                us.push(num / b.delta_dim);
            }
            out.push(us);
        }
        Ok(out)
    }

    /// Checks a witness against conditions (I) and (II).
    pub fn check_witness(&self, x: &[Vec<u64>]) -> Result<bool> {
        let steps = self.steps()?;
        if x.len() != self.blocks.len() {
            return Ok(false);
        }
        Ok(self.blocks.iter().zip(&steps).zip(x).all(|((b, us), xs)| {
            xs.len() == us.len()
                && xs.iter().sum::<u64>() == b.v_dim
                && xs.iter().zip(us).all(|(x, u)| x % u == 0)
        }))
    }
}

/// Solves `sum_i k_i u_i = v` with `k_i >= 0`, preferring weight on earlier `u_i`.
fn solve_block(us: &[u64], v: u64) -> Option<Vec<u64>> {
    let v = v as usize;
    let t = us.len();
    // reach[i][s]: s is a sum of multiples of u_i, ..., u_{t-1}
    let mut reach = vec![vec![false; v + 1]; t + 1];
    reach[t][0] = true;
    for i in (0..t).rev() {
        let u = us[i] as usize;
        for s in 0..=v {
            reach[i][s] = reach[i + 1][s] || (s >= u && reach[i][s - u]);
        }
    }
    if !reach[0][v] {
        return None;
    }
    let mut rest = v;
    let mut x = Vec::with_capacity(t);
    for i in 0..t {
        let u = us[i] as usize;
        let mut k = rest / u;
        while !reach[i + 1][rest - k * u] {
            k -= 1;
        }
        x.push((k * u) as u64);
        rest -= k * u;
    }
    Some(x)
}

pub fn yu_feasible(inst: &YuInstance) -> Result<YuOutcome> {
    let steps = inst.steps()?;
    let mut witness = Vec::new();
    for (b, us) in inst.blocks.iter().zip(&steps) {
        match solve_block(us, b.v_dim) {
            Some(x) => witness.push(x),
            None => return Ok(YuOutcome { feasible: false, witness: None, steps }),
        }
    }
    Ok(YuOutcome { feasible: true, witness: Some(witness), steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_block(v: u64, us: &[u64]) -> YuInstance {
        YuInstance {
            blocks: vec![YuBlock {
                v_dim: v,
                delta_dim: 1,
                factors: us.iter().map(|&u| YuFactor { m: u, d_dim: 1 }).collect(),
            }],
        }
    }

    #[test]
    fn documented_examples() {
        let r = yu_feasible(&one_block(2, &[2])).unwrap();
        assert_eq!(r.witness, Some(vec![vec![2]]));
        assert!(!yu_feasible(&one_block(1, &[2])).unwrap().feasible);
        let r = yu_feasible(&one_block(2, &[1, 3])).unwrap();
        assert_eq!(r.witness, Some(vec![vec![2, 0]]));
    }

    #[test]
    fn needs_a_combination() {
        let inst = one_block(7, &[4, 3]);
        let r = yu_feasible(&inst).unwrap();
        assert_eq!(r.witness, Some(vec![vec![4, 3]]));
        assert!(inst.check_witness(r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn integrality_is_enforced() {
        let inst = YuInstance {
            blocks: vec![YuBlock { v_dim: 2, delta_dim: 4, factors: vec![YuFactor { m: 1, d_dim: 2 }] }],
        };
        assert!(yu_feasible(&inst).is_err());
    }
}
