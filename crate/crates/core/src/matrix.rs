//! Dense matrices over a [`GaloisField`] with Gaussian elimination.

use crate::galois::{FieldElement, GaloisField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form with the row operations that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    /// `transform * original = reduced`.
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElement>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, g(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn mul(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, f: &GaloisField, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, f: &GaloisField, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form, tracking the applied row operations.
    pub fn echelon(&self, f: &GaloisField) -> Echelon {
        let mut a = self.clone();
        let mut t = Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, p);
            t.swap_rows(r, p);
            let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
            a.scale_row(f, r, inv);
            t.scale_row(f, r, inv);
            for i in 0..self.rows {
                if i != r {
                    let factor = a.get(i, c);
                    if factor != 0 {
                        a.add_row_multiple(f, i, r, factor);
                        t.add_row_multiple(f, i, r, factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: a, transform: t, pivots }
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.echelon(f).pivots.len()
    }

    pub fn inverse(&self, f: &GaloisField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let e = self.echelon(f);
        (e.pivots.len() == self.rows).then_some(e.transform)
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`.
    pub fn nullspace(&self, f: &GaloisField) -> Matrix {
        let e = self.echelon(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in e.pivots.iter().enumerate() {
                out.set(k, pc, f.neg(e.reduced.get(r, fc)));
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale_row(&mut self, f: &GaloisField, r: usize, s: FieldElement) {
        for x in self.row_mut(r) {
            *x = f.mul(*x, s);
        }
    }

    /// `row[dst] -= factor * row[src]`.
    pub fn add_row_multiple(&mut self, f: &GaloisField, dst: usize, src: usize, factor: FieldElement) {
        for j in 0..self.cols {
            let v = f.sub(self.get(dst, j), f.mul(factor, self.get(src, j)));
            self.set(dst, j, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let f = GaloisField::binary_default(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(3));
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let f = GaloisField::prime(5).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 3, 4], vec![0, 1, 1, 2]]);
        let ns = m.nullspace(&f);
        assert_eq!(ns.rows(), 2);
        assert!(m.mul(&f, &ns.transpose()).is_zero());
    }

    #[test]
    fn transform_reproduces_echelon() {
        let f = GaloisField::binary_default(4).unwrap();
        let m = Matrix::from_rows(&[vec![3, 5, 7, 1], vec![6, 10, 14, 2], vec![0, 9, 1, 1]]);
        let e = m.echelon(&f);
        assert_eq!(e.pivots.len(), 2);
        assert_eq!(e.transform.mul(&f, &m), e.reduced);
    }
}
