//! Exact integer matrices and Smith normal form.
//!
//! Everything is arbitrary precision; intermediate entry swell is the
//! normal state of affairs for SNF and must not overflow silently.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A sparse integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for j in 0..other.cols {
                let b = other.get(k, j);
                if !b.is_zero() {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for (&(i, j), a) in &self.entries {
            out.set(j, i, a.clone());
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), a) in &self.entries {
            d[i][j] = a.clone();
        }
        d
    }

    /// As `from_dense`, with explicit dimensions so that empty matrices keep
    /// their shape.
    fn from_dense_with_dims(d: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for (i, row) in d.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Determinant by fraction-free elimination. Small matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:>4} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Smith normal form: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with nonnegative entries in a divisibility chain.
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Inverse of a matrix with determinant ±1, via its Smith normal form.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    debug_assert!(
        snf.diagonal().iter().all(|d| d == &BigInt::one()),
        "matrix is not unimodular"
    );
    snf.v.mul(&snf.u)
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.to_dense();
    let mut u = IntMatrix::identity(rows).to_dense();
    let mut v = IntMatrix::identity(cols).to_dense();

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find a pivot of minimal absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = div_round(&a[i][t], &a[t][t]);
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = div_round(&a[t][j], &a[t][t]);
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // smaller remainders surfaced, pick a new pivot
        }
        // Pivot divides the rest of the block, or we fold an offender in.
        let mut offender = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    offender = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offender {
            // add row i to row t, then restart this pivot position
            let one = BigInt::one();
            row_add(&mut a, t, i, &one);
            row_add(&mut u, t, i, &one);
            continue;
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let snf = Snf {
        d: IntMatrix::from_dense_with_dims(a, rows, cols),
        u: IntMatrix::from_dense_with_dims(u, rows, rows),
        v: IntMatrix::from_dense_with_dims(v, cols, cols),
    };
    debug_assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "U*M*V != D");
    snf
}

fn swap_cols(a: &mut [Vec<BigInt>], j1: usize, j2: usize) {
    if j1 != j2 {
        for row in a.iter_mut() {
            row.swap(j1, j2);
        }
    }
}

fn row_sub(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src: Vec<BigInt> = a[t].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

fn row_add(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let src: Vec<BigInt> = a[t].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x += q * s;
    }
}

fn col_sub(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
}

fn negate_row(a: &mut [Vec<BigInt>], i: usize) {
    for x in a[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Rounded division minimizing the remainder magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Solve `m x = target` over the integers via SNF. `None` when no integral
/// solution exists.
pub fn solve_integer(m: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, target.len());
    let snf = smith_normal_form(m);
    let ut = snf.u.apply(target);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, t) in ut.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !t.is_zero() {
                return None;
            }
        } else {
            let (q, r) = num_integer::Integer::div_rem(t, &d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.apply(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: IntMatrix, expect_diag: Vec<i64>) {
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        let diag: Vec<BigInt> = snf.diagonal();
        let expect: Vec<BigInt> = expect_diag.into_iter().map(BigInt::from).collect();
        assert_eq!(diag, expect);
        // divisibility chain
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn snf_hand_examples() {
        check(IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        check(IntMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]), vec![0, 0]);
        check(IntMatrix::from_rows(vec![vec![1]]), vec![1]);
        check(
            IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            vec![2, 2, 156],
        );
    }

    #[test]
    fn zero_matrix_identity_transforms() {
        let m = IntMatrix::zero(2, 3);
        let snf = smith_normal_form(&m);
        assert!(snf.d.is_zero());
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(3));
    }

    #[test]
    fn integer_solve() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let x = solve_integer(&m, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(m.apply(&x), vec![BigInt::from(4), BigInt::from(9)]);
        assert!(solve_integer(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
