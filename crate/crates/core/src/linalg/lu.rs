use alloc::vec::Vec;

use super::{CMatrix, C64, ONE, ZERO};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` when a pivot vanishes exactly or falls below `1e-300`.
    pub fn new(a: &CMatrix) -> Option<Self> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n)
                .map(|r| (r, lu[(r, col)].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs < 1e-300 {
                return None;
            }
            if pivot_row != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(col, pivot_row);
            }
            let pivot = lu[(col, col)];
            for r in (col + 1)..n {
                let factor = lu[(r, col)] / pivot;
                lu[(r, col)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in (col + 1)..n {
                    let v = lu[(col, j)];
                    lu[(r, j)] -= factor * v;
                }
            }
        }
        Some(Self { lu, perm })
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                x[i] = x[i] - l * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let u = self.lu[(i, k)];
                x[i] = x[i] - u * x[k];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let n = b.dim();
        let cols: Vec<Vec<C64>> = (0..n).map(|j| self.solve_vec(&b.column(j))).collect();
        CMatrix::from_fn(n, |i, j| cols[j][i])
    }

    pub fn inverse(&self) -> CMatrix {
        self.solve(&CMatrix::identity(self.lu.dim()))
    }

    pub fn determinant(&self) -> C64 {
        let n = self.lu.dim();
        let mut det = ONE;
        for i in 0..n {
            det *= self.lu[(i, i)];
        }
        // parity of the permutation
        let mut seen = alloc::vec![false; n];
        let mut swaps = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k];
                len += 1;
            }
            swaps += len - 1;
        }
        if swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }
}
