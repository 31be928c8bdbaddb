//! Dense and sparse linear algebra over GF(p).
//!
//! Vectors are row vectors (`&[u32]`); a matrix acts on the right, so the
//! image of `x` under `A` is `x * A`.

use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let (a, o) = (self.row(i), &mut out.data[i * other.cols..(i + 1) * other.cols]);
            for (k, &aik) in a.iter().enumerate() {
                if aik != 0 {
                    f.axpy(aik, other.row(k), o);
                }
            }
        }
        out
    }

    /// `x * self`.
    pub fn apply(&self, x: &[u32], f: PrimeField) -> Vec<u32> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0 {
                f.axpy(xk, self.row(k), &mut out);
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: u32, other: &Matrix, f: PrimeField) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        f.axpy(c, &other.data, &mut self.data);
    }

    /// Reduces to reduced row echelon form in place and returns pivot columns.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            f.scale(inv, self.row_mut(r));
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let v = self.get(i, c);
                    if v != 0 {
                        f.axpy(f.neg(v), &pivot_row, self.row_mut(i));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of `{x : self * x^T = 0}`, i.e. the right null space.
    pub fn nullspace(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        null_from_rref(&m, &pivots, self.cols, f)
    }

    /// Basis of `{x : x * self = 0}`.
    pub fn left_kernel(&self, f: PrimeField) -> Vec<Vec<u32>> {
        self.transpose().nullspace(f)
    }

    pub fn inverse(&self, f: PrimeField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    /// Some `x` with `x * self = b`, if one exists.
    pub fn solve_left(&self, b: &[u32], f: PrimeField) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.cols);
        // columns of the augmented system: unknowns x_0..x_{rows-1}, then b
        let mut aug = Matrix::zeros(self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(j, i, self.get(i, j));
            }
        }
        for (j, &bj) in b.iter().enumerate() {
            aug.set(j, self.rows, bj);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.rows);
        }
        Some(x)
    }

    pub fn is_invertible(&self, f: PrimeField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }
}

fn null_from_rref(m: &Matrix, pivots: &[usize], cols: usize, f: PrimeField) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u32; cols];
        x[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(m.get(i, free));
        }
        out.push(x);
    }
    out
}

/// A subspace of `GF(p)^n` kept as a canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecSpace {
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl VecSpace {
    pub fn zero(n: usize) -> Self {
        VecSpace { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let rows = (0..n).map(|i| unit_vector(n, i)).collect();
        VecSpace { n, rows, pivots: (0..n).collect() }
    }

    pub fn span<I, V>(n: usize, vectors: I, f: PrimeField) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut s = VecSpace::zero(n);
        for v in vectors {
            s.insert(v.as_ref(), f);
        }
        s
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place modulo the span; the residual is zero exactly
    /// when `v` lies in the span.
    pub fn reduce(&self, v: &mut [u32], f: PrimeField) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(f.neg(c), row, v);
            }
        }
    }

    pub fn contains(&self, v: &[u32], f: PrimeField) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32], f: PrimeField) -> bool {
        assert_eq!(v.len(), self.n, "ambient mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        f.scale(inv, &mut w);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(f.neg(c), &w, row);
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of `v` with respect to `basis()`, if `v` lies in the span.
    pub fn coords(&self, v: &[u32], f: PrimeField) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut w = v.to_vec();
        for (row, &ci) in self.rows.iter().zip(&c) {
            if ci != 0 {
                f.axpy(f.neg(ci), row, &mut w);
            }
        }
        w.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn combine(&self, coeffs: &[u32], f: PrimeField) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            f.axpy(c, row, &mut out);
        }
        out
    }

    pub fn sum(&self, other: &VecSpace, f: PrimeField) -> VecSpace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r, f);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &VecSpace, f: PrimeField) -> bool {
        self.rows.iter().all(|r| other.contains(r, f))
    }

    pub fn intersect(&self, other: &VecSpace, f: PrimeField) -> VecSpace {
        let n = self.n;
        let mut z = Matrix::zeros(self.dim() + other.dim(), 2 * n);
        for (i, r) in self.rows.iter().enumerate() {
            z.row_mut(i)[..n].copy_from_slice(r);
            z.row_mut(i)[n..].copy_from_slice(r);
        }
        for (i, r) in other.rows.iter().enumerate() {
            z.row_mut(self.dim() + i)[..n].copy_from_slice(r);
        }
        z.rref(f);
        let mut out = VecSpace::zero(n);
        for i in 0..z.rows() {
            let row = z.row(i);
            if row[..n].iter().all(|&x| x == 0) && row[n..].iter().any(|&x| x != 0) {
                out.insert(&row[n..], f);
            }
        }
        out
    }

    /// Basis of `{x : <r, x> = 0 for all basis rows r}`.
    pub fn annihilator(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let m = Matrix::from_rows(self.n, &self.rows);
        null_from_rref(&m, &self.pivots, self.n, f)
    }

    /// Standard basis indices not used as pivots; they project to a basis of
    /// the quotient by this subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.n).filter(|&i| !is_pivot[i]).collect()
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Compressed sparse rows; used for structure constants and module actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    cols: usize,
    row_ptr: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl SparseMatrix {
    pub fn from_dense(m: &Matrix) -> Self {
        let mut row_ptr = vec![0];
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0 {
                    entries.push((j as u32, v));
                }
            }
            row_ptr.push(entries.len());
        }
        SparseMatrix { cols: m.cols(), row_ptr, entries }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<(u32, u32)>>) -> Self {
        let mut row_ptr = vec![0];
        let mut entries = Vec::new();
        for r in rows {
            entries.extend(r.into_iter().filter(|e| e.1 != 0));
            row_ptr.push(entries.len());
        }
        SparseMatrix { cols, row_ptr, entries }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.row_ptr.len() - 1
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[(u32, u32)] {
        &self.entries[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `out += c * (x * self)`.
    pub fn apply_into(&self, c: u32, x: &[u32], out: &mut [u32], f: PrimeField) {
        if c == 0 {
            return;
        }
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let s = f.mul(c, xi);
            for &(j, v) in self.row(i) {
                let j = j as usize;
                out[j] = f.add(out[j], f.mul(s, v));
            }
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows(), self.cols);
        for i in 0..self.rows() {
            for &(j, v) in self.row(i) {
                m.set(i, j as usize, v);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f7();
        let a = Matrix::from_rows(3, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        let inv = a.inverse(f).unwrap();
        assert_eq!(a.mul(&inv, f), Matrix::identity(3));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = f7();
        let a = Matrix::from_rows(4, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![3, 6, 2, 5]]);
        for x in a.left_kernel(f) {
            assert!(is_zero(&a.apply(&x, f)));
        }
        let ns = a.nullspace(f);
        assert_eq!(ns.len(), 4 - a.rank(f));
    }

    #[test]
    fn intersection_dimension_formula() {
        let f = f7();
        let u = VecSpace::span(4, [vec![1, 0, 0, 0], vec![0, 1, 1, 0]], f);
        let w = VecSpace::span(4, [vec![0, 1, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]], f);
        let i = u.intersect(&w, f);
        assert_eq!(i.dim() + u.sum(&w, f).dim(), u.dim() + w.dim());
    }

    #[test]
    fn solve_left_finds_preimage() {
        let f = f7();
        let a = Matrix::from_rows(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let b = a.apply(&[3, 0, 5], f);
        let x = a.solve_left(&b, f).unwrap();
        assert_eq!(a.apply(&x, f), b);
        assert!(a.solve_left(&[0, 0, 1], f).is_none());
    }

    #[test]
    fn coords_reconstruct() {
        let f = f7();
        let s = VecSpace::span(3, [vec![1, 2, 3], vec![0, 5, 1]], f);
        let v = s.combine(&[3, 4], f);
        let c = s.coords(&v, f).unwrap();
        assert_eq!(s.combine(&c, f), v);
        assert!(s.coords(&[0, 0, 1], f).is_none() || s.contains(&[0, 0, 1], f));
    }
}
