//! Compressed sparse row matrices over the complex numbers.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        Self::from_triplets(
            d.len(),
            d.len(),
            d.iter().enumerate().map(|(i, v)| (i, i, *v)),
        )
    }

    pub fn real_diagonal(d: &[f64]) -> Self {
        Self::from_triplets(
            d.len(),
            d.len(),
            d.iter().enumerate().map(|(i, v)| (i, i, C64::new(*v, 0.0))),
        )
    }

    /// Duplicates are summed; exact zeros are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C64)>,
    {
        let mut per_row: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            assert!(
                i < rows && j < cols,
                "triplet ({i},{j}) outside {rows}x{cols}"
            );
            *per_row[i].entry(j).or_insert(C64::new(0.0, 0.0)) += v;
        }
        let mut out = Self::zeros(rows, cols);
        for (i, row) in per_row.into_iter().enumerate() {
            for (j, v) in row {
                if v != C64::new(0.0, 0.0) {
                    out.col_idx.push(j);
                    out.vals.push(v);
                }
            }
            out.row_ptr[i + 1] = out.col_idx.len();
        }
        out
    }

    pub fn from_dense(m: &DMatrix<C64>) -> Self {
        let mut t = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                t.push((i, j, m[(i, j)]));
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), t)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.col_idx[a..b]
            .iter()
            .copied()
            .zip(self.vals[a..b].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col_idx[a..b].binary_search(&j) {
            Ok(p) => self.vals[a + p],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(C64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(C64::new(-1.0, 0.0), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: C64, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let mut acc: BTreeMap<usize, C64> = self.row(i).collect();
            for (j, v) in other.row(i) {
                *acc.entry(j).or_insert(C64::new(0.0, 0.0)) += c * v;
            }
            for (j, v) in acc {
                if v != C64::new(0.0, 0.0) {
                    out.col_idx.push(j);
                    out.vals.push(v);
                }
            }
            out.row_ptr[i + 1] = out.col_idx.len();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        let mut acc = vec![C64::new(0.0, 0.0); other.cols];
        let mut seen = vec![false; other.cols];
        let mut touched = Vec::new();
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !seen[j] {
                        seen[j] = true;
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = acc[j];
                if v != C64::new(0.0, 0.0) {
                    out.col_idx.push(j);
                    out.vals.push(v);
                }
                acc[j] = C64::new(0.0, 0.0);
                seen[j] = false;
            }
            touched.clear();
            out.row_ptr[i + 1] = out.col_idx.len();
        }
        out
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(i, j, v)| (j, i, v.conj())),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(i, j, v)| (j, i, v)),
        )
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn trace(&self) -> C64 {
        self.diag().into_iter().sum()
    }

    /// `trace(diag(w) * self)` without forming the product.
    pub fn weighted_trace(&self, w: &[f64]) -> C64 {
        self.diag().iter().zip(w).map(|(d, w)| d * *w).sum()
    }

    /// Left multiplication by a diagonal matrix.
    pub fn scale_rows(&self, d: &[C64]) -> Self {
        assert_eq!(d.len(), self.rows);
        let mut out = self.clone();
        for i in 0..self.rows {
            for p in out.row_ptr[i]..out.row_ptr[i + 1] {
                out.vals[p] *= d[i];
            }
        }
        out
    }

    /// Right multiplication by a diagonal matrix.
    pub fn scale_cols(&self, d: &[C64]) -> Self {
        assert_eq!(d.len(), self.cols);
        let mut out = self.clone();
        for (p, j) in out.col_idx.iter().enumerate() {
            out.vals[p] *= d[*j];
        }
        out
    }

    /// Entries `(i, j)` with `keep(i, j, v)` true.
    pub fn filter(&self, keep: impl Fn(usize, usize, C64) -> bool) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().filter(|(i, j, v)| keep(*i, *j, *v)),
        )
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let mut t = Vec::new();
        for (new_i, &old_i) in rows.iter().enumerate() {
            for (j, v) in self.row(old_i) {
                if col_map[j] != usize::MAX {
                    t.push((new_i, col_map[j], v));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), t)
    }

    /// Block matrix from a `d x d` grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<SparseMatrix>]) -> Self {
        let d = blocks.len();
        let (r, c) = (blocks[0][0].rows, blocks[0][0].cols);
        let mut t = Vec::new();
        for (bi, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), blocks[0].len());
            for (bj, blk) in row.iter().enumerate() {
                assert_eq!((blk.rows, blk.cols), (r, c), "ragged block matrix");
                t.extend(blk.triplets().map(|(i, j, v)| (bi * r + i, bj * c + j, v)));
            }
        }
        Self::from_triplets(d * r, blocks[0].len() * c, t)
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute entry among those with `mask_row[i] && mask_col[j]`.
    pub fn max_abs_masked(&self, mask_row: &[bool], mask_col: &[bool]) -> f64 {
        self.triplets()
            .filter(|(i, j, _)| mask_row[*i] && mask_col[*j])
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Connected components of the bipartite row/column incidence graph.
    /// Returns `(row sets, column sets)` per component; empty rows or
    /// columns form singleton components.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, j, _) in self.triplets() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, self.rows + j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let g = groups.entry(r).or_default();
            if x < self.rows {
                g.0.push(x);
            } else {
                g.1.push(x - self.rows);
            }
        }
        groups.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn product_matches_dense() {
        let a = SparseMatrix::from_triplets(
            2,
            3,
            [(0, 0, c(1.0)), (0, 2, C64::new(0.0, 2.0)), (1, 1, c(3.0))],
        );
        let b =
            SparseMatrix::from_triplets(3, 2, [(0, 1, c(4.0)), (2, 0, c(-1.0)), (1, 0, c(0.5))]);
        let sparse = a.mul(&b).to_dense();
        let dense = a.to_dense() * b.to_dense();
        assert_eq!(sparse, dense);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = SparseMatrix::from_triplets(2, 3, [(0, 2, C64::new(1.0, 2.0))]);
        let h = a.adjoint();
        assert_eq!((h.nrows(), h.ncols()), (3, 2));
        assert_eq!(h.get(2, 0), C64::new(1.0, -2.0));
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = SparseMatrix::identity(3);
        assert_eq!(a.sub(&a).nnz(), 0);
    }

    #[test]
    fn components_split_block_diagonal() {
        let a = SparseMatrix::from_triplets(4, 4, [(0, 1, c(1.0)), (1, 0, c(1.0)), (2, 3, c(1.0))]);
        let comps = a.components();
        assert_eq!(comps.len(), 5);
        assert!(comps.contains(&(vec![0], vec![1])));
        assert!(comps.contains(&(vec![1], vec![0])));
        assert!(comps.contains(&(vec![2], vec![3])));
        assert!(comps.contains(&(vec![3], vec![])));
        assert!(comps.contains(&(vec![], vec![2])));
    }

    #[test]
    fn blocks_and_submatrix_round_trip() {
        let x = SparseMatrix::from_triplets(2, 2, [(0, 1, c(2.0))]);
        let z = SparseMatrix::zeros(2, 2);
        let big = SparseMatrix::from_blocks(&[vec![z.clone(), x.clone()], vec![x.clone(), z]]);
        assert_eq!(big.get(0, 3), c(2.0));
        assert_eq!(big.submatrix(&[0, 1], &[2, 3]), x);
    }
}
