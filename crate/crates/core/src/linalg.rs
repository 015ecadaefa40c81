//! Dense linear algebra over a field: row reduction, rank, kernels and
//! determinants.

use crate::polyring::Field;

/// Row-major dense matrix over the elements of `F`.
#[derive(Clone, Debug)]
pub struct DenseMatrix<F: Field> {
    pub field: F,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<F::Elem>>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        DenseMatrix { data: vec![vec![z; cols]; rows], field, rows, cols }
    }

    pub fn from_rows(field: F, data: Vec<Vec<F::Elem>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        DenseMatrix { field, rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = DenseMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&self.data[i][c])) else { continue };
            self.data.swap(r, p);
            let inv = f.inv(&self.data[r][c]).unwrap();
            for x in self.data[r].iter_mut().skip(c) {
                *x = f.mul(x, &inv);
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i == r || f.is_zero(&self.data[i][c]) {
                    continue;
                }
                let factor = self.data[i][c].clone();
                for (x, y) in self.data[i].iter_mut().zip(&pivot_row).skip(c) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(&m.data[r][free]);
            }
            out.push(v);
        }
        out
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Option<F::Elem> {
        if self.rows != self.cols {
            return None;
        }
        let f = &self.field;
        let mut a = self.data.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else { return Some(f.zero()) };
            if p != c {
                a.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[c][c]);
            let inv = f.inv(&a[c][c]).unwrap();
            for i in c + 1..n {
                if f.is_zero(&a[i][c]) {
                    continue;
                }
                let factor = f.mul(&a[i][c], &inv);
                for j in c..n {
                    let t = f.mul(&factor, &a[c][j]);
                    a[i][j] = f.sub(&a[i][j], &t);
                }
            }
        }
        Some(det)
    }

    /// Row and column indices of a nonsingular maximal square submatrix.
    pub fn rank_witness(&self) -> (Vec<usize>, Vec<usize>) {
        let cols = self.clone().rref();
        let sub = DenseMatrix::from_rows(
            self.field.clone(),
            self.data.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect(),
        );
        let rows = sub.transpose().rref();
        (rows, cols)
    }
}
