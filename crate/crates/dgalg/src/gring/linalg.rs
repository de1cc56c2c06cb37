//! Dense linear algebra over prime fields.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::gring::coeff::Ring;

/// A dense matrix over F_p with entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<u64>>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn from_bigint_entries<'a>(
        p: u64,
        rows: usize,
        cols: usize,
        entries: impl Iterator<Item = ((usize, usize), &'a BigInt)>,
    ) -> Self {
        let ring = Ring::Fp(p);
        let mut m = FpMatrix::zero(p, rows, cols);
        for ((i, j), v) in entries {
            m.data[i][j] = ring.reduce(v.clone()).to_u64().unwrap();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i][j] = v % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.data[i][j]).collect()
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + mulmod(self.data[i][j], v[j], self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    /// Row-reduce in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i][c] != 0) else {
                continue;
            };
            self.data.swap(r, pr);
            let inv = invmod(self.data[r][c], p);
            for x in self.data[r].iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            for i in 0..self.rows {
                if i != r && self.data[i][c] != 0 {
                    let f = self.data[i][c];
                    let src = self.data[r].clone();
                    for (x, s) in self.data[i].iter_mut().zip(src) {
                        *x = (*x + p - mulmod(f, s, p)) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let val = m.data[r][free];
                if val != 0 {
                    v[pc] = p - val;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `self * x = target`, or `None`.
    pub fn solve(&self, target: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(self.rows, target.len());
        let p = self.p;
        let mut aug = FpMatrix::zero(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j];
            }
            aug.data[i][self.cols] = target[i] % p;
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.data[r][self.cols];
        }
        Some(x)
    }
}

/// The affine solution set of a linear system over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Vec<u64>,
    pub kernel_basis: Vec<Vec<u64>>,
}

/// Complete affine description of `m x = target` over F_p, or `None` when
/// inconsistent.
pub fn solve_linear(m: &FpMatrix, target: &[u64]) -> Option<SolutionSet> {
    let particular = m.solve(target)?;
    Some(SolutionSet { particular, kernel_basis: m.kernel() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let mut m = FpMatrix::zero(5, 3, 3);
        for i in 0..3 {
            m.set(i, i, 1);
        }
        let s = solve_linear(&m, &[1, 2, 3]).unwrap();
        assert_eq!(s.particular, vec![1, 2, 3]);
        assert!(s.kernel_basis.is_empty());
    }

    #[test]
    fn inconsistent_system() {
        let m = FpMatrix::zero(2, 1, 1);
        assert!(solve_linear(&m, &[1]).is_none());
    }

    #[test]
    fn rank_one_solution_set_over_f3() {
        // [[1,2],[2,4]] over F_3 has rank 1; consistent target gives a
        // 1-dimensional solution set.
        let mut m = FpMatrix::zero(3, 2, 2);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 0, 2);
        m.set(1, 1, 4);
        let s = solve_linear(&m, &[1, 2]).unwrap();
        assert_eq!(s.kernel_basis.len(), 1);
        assert_eq!(m.apply(&s.particular), vec![1, 2]);
        // the kernel vector really is in the kernel
        assert_eq!(m.apply(&s.kernel_basis[0]), vec![0, 0]);
    }
}
