//! Dense matrices over Z_p and row spaces in reduced echelon form.

use crate::arith::{add_mod, inv_mod, mul_mod, sub_mod};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, dim: usize) -> Self {
        let mut m = Self::zeros(p, dim, dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows of equal length; entries reduced mod `p`.
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_mod(out.get(i, j), mul_mod(a, other.get(k, j), p), p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.p;
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = add_mod(*o, mul_mod(a, self.get(k, j), p), p);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        RowSpace::from_rows(self.p, self.cols, &self.to_rows()).dim()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Submatrix of rows `rs` and columns `cs`.
    pub fn block(&self, rs: std::ops::Range<usize>, cs: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.p, rs.len(), cs.len());
        for (i, r) in rs.clone().enumerate() {
            for (j, c) in cs.clone().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }
}

/// Subspace of Z_p^dim kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    p: u64,
    dim_ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(p: u64, dim_ambient: usize, rows: &[Vec<u64>]) -> Self {
        let mut work: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
        let mut pivots = vec![];
        let mut rank = 0;
        for col in 0..dim_ambient {
            let Some(pr) = (rank..work.len()).find(|&i| work[i][col] != 0) else {
                continue;
            };
            work.swap(rank, pr);
            let inv = inv_mod(work[rank][col], p).expect("nonzero pivot");
            for v in work[rank].iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
            let pivot_row = work[rank].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i == rank || row[col] == 0 {
                    continue;
                }
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        work.truncate(rank);
        Self { p, dim_ambient, basis: work, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim_ambient);
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = w[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in w.iter_mut().zip(row) {
                *x = sub_mod(*x, mul_mod(f, y, p), p);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Whether `v * a` stays in the space for every `v` in it.
    pub fn is_invariant_under(&self, a: &Matrix) -> bool {
        assert_eq!(a.rows(), self.dim_ambient);
        assert_eq!(a.cols(), self.dim_ambient);
        self.basis.iter().all(|v| self.contains(&a.apply_row(v)))
    }
}
