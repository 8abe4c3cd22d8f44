//! Dense row-major matrices over `F_p` with exact Gaussian elimination.
//!
//! Elimination uses partial pivoting by first nonzero entry. Row updates for
//! a fixed pivot are independent, so the parallel path produces bit-identical
//! results to the sequential one.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::PrimeField;
use crate::Exec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    /// Pivot columns in increasing order; `pivot_cols[i]` belongs to row `i`.
    pub pivot_cols: Vec<usize>,
}

impl MatrixFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatrixFp {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        MatrixFp {
            field,
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduction to reduced row echelon form. Returns the rank and
    /// pivot columns. Pivot search scans rows in index order, so the result
    /// is deterministic and independent of the execution mode.
    pub fn rref(&mut self, exec: Exec) -> Echelon {
        let f = self.field;
        let cols = self.cols;
        let mut pivot_cols = Vec::new();
        let mut next_row = 0;

        for col in 0..cols {
            if next_row >= self.rows {
                break;
            }
            // first row at or below next_row with a nonzero entry in this column
            let mut pivot = None;
            for i in next_row..self.rows {
                if self.at(i, col) != 0 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(next_row, p);

            let inv = f.inv(self.at(next_row, col));
            if inv != 1 {
                for j in col..cols {
                    let v = self.at(next_row, j);
                    self.set(next_row, j, f.mul(v, inv));
                }
            }

            // snapshot of the normalized pivot row; every other row is
            // updated independently from it
            let pivot_row: Vec<u64> = self.row(next_row).to_vec();
            let update = |idx: usize, row: &mut [u64]| {
                if idx == next_row {
                    return;
                }
                let factor = row[col];
                if factor == 0 {
                    return;
                }
                for j in col..cols {
                    row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
                }
            };

            match exec {
                #[cfg(feature = "parallel")]
                Exec::Parallel => {
                    self.data
                        .par_chunks_mut(cols)
                        .enumerate()
                        .for_each(|(idx, row)| update(idx, row));
                }
                #[cfg(not(feature = "parallel"))]
                Exec::Parallel => {
                    for (idx, row) in self.data.chunks_mut(cols).enumerate() {
                        update(idx, row);
                    }
                }
                Exec::Sequential => {
                    for (idx, row) in self.data.chunks_mut(cols).enumerate() {
                        update(idx, row);
                    }
                }
            }

            pivot_cols.push(col);
            next_row += 1;
        }

        Echelon {
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    /// Kernel basis of the matrix (viewed as a map by left multiplication of
    /// column vectors), extracted from its reduced row echelon form.
    ///
    /// One basis vector per free column, ordered by free column index; the
    /// vector carries 1 at its free column and 0 at every other free column,
    /// so the basis is canonical.
    pub fn kernel_basis(&mut self, exec: Exec) -> Vec<Vec<u64>> {
        let ech = self.rref(exec);
        self.kernel_from_echelon(&ech)
    }

    /// Kernel basis given an already-computed echelon form of `self`.
    pub fn kernel_from_echelon(&self, ech: &Echelon) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - ech.rank);
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &pc) in ech.pivot_cols.iter().enumerate() {
                v[pc] = f.neg(self.at(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `target` lies in the row span of `self` after `rref`.
    pub fn row_span_contains(&self, ech: &Echelon, target: &[u64]) -> bool {
        assert_eq!(target.len(), self.cols);
        let f = self.field;
        let mut t = target.to_vec();
        for (row, &pc) in ech.pivot_cols.iter().enumerate() {
            let factor = t[pc];
            if factor == 0 {
                continue;
            }
            for j in pc..self.cols {
                t[j] = f.sub(t[j], f.mul(factor, self.at(row, j)));
            }
        }
        t.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn rank_and_kernel_small() {
        // rows: (1,2,3), (2,4,6), (0,1,1) over F_101 -> rank 2
        let mut m = MatrixFp::from_rows(
            f101(),
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]],
        );
        let ech = m.rref(Exec::Sequential);
        assert_eq!(ech.rank, 2);
        assert_eq!(ech.pivot_cols, vec![0, 1]);
        let kernel = m.kernel_from_echelon(&ech);
        assert_eq!(kernel.len(), 1);
        // kernel vector must annihilate the original rows: (1,2,3)·v = 0 etc.
        let v = &kernel[0];
        let f = f101();
        let dot = |row: &[u64]| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        };
        assert_eq!(dot(&[1, 2, 3]), 0);
        assert_eq!(dot(&[0, 1, 1]), 0);
    }

    #[test]
    fn zero_rows_matrix() {
        let mut m = MatrixFp::zeros(f101(), 0, 4);
        let ech = m.rref(Exec::Sequential);
        assert_eq!(ech.rank, 0);
        let kernel = m.kernel_from_echelon(&ech);
        assert_eq!(kernel.len(), 4);
    }

    #[test]
    fn parallel_matches_sequential() {
        // pseudo-random but fixed matrix
        let f = f101();
        let mut state = 88172645463325252u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % 101
        };
        let rows: Vec<Vec<u64>> = (0..40).map(|_| (0..55).map(|_| next()).collect()).collect();
        let mut a = MatrixFp::from_rows(f, rows.clone());
        let mut b = MatrixFp::from_rows(f, rows);
        let ea = a.rref(Exec::Sequential);
        let eb = b.rref(Exec::Parallel);
        assert_eq!(ea, eb);
        assert_eq!(a.data, b.data);
    }

    #[test]
    fn row_span_membership() {
        let f = f101();
        let mut m = MatrixFp::from_rows(f, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let ech = m.rref(Exec::Sequential);
        assert!(m.row_span_contains(&ech, &[1, 1, 2]));
        assert!(m.row_span_contains(&ech, &[0, 0, 0]));
        assert!(!m.row_span_contains(&ech, &[1, 1, 0]));
    }
}
