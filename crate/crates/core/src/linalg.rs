//! Dense and column-sparse matrices over a [`Field`], with the elimination
//! routines the rest of the crate is built on.

use crate::field::{Field, FieldElement as Fe};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
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
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                let src = other.row(l);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(f, a, src, dst);
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, f: &Field, e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        result
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, piv);
            let s = f.inv(self[(r, c)]).expect("nonzero pivot");
            for x in self.row_mut(r) {
                *x = f.mul(*x, s);
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if !factor.is_zero() {
                    axpy(f, f.neg(factor), &pivot_row, self.row_mut(i));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[(i, free)]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self, f: &Field) -> Fe {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Fe::ZERO;
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = f.neg(det);
            }
            let d = m[(c, c)];
            det = f.mul(det, d);
            let d_inv = f.inv(d).expect("nonzero pivot");
            let pivot_row = m.row(c).to_vec();
            for i in c + 1..n {
                let factor = f.mul(m[(i, c)], d_inv);
                if !factor.is_zero() {
                    axpy(f, f.neg(factor), &pivot_row, m.row_mut(i));
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug[(i, n + i)] = Fe::ONE;
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

    /// Characteristic polynomial `det(X - M)`, constant term first, via
    /// Hessenberg reduction.
    pub fn charpoly(&self, f: &Field) -> Vec<Fe> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t_inv = f.inv(h[(m, m - 1)]).expect("nonzero pivot");
            // row_i -= u_i row_m, then col_m += sum_i u_i col_i
            let mut u = vec![Fe::ZERO; n];
            let pivot_row: Vec<Fe> = h.row(m)[m - 1..].to_vec();
            for i in m + 1..n {
                u[i] = f.mul(h[(i, m - 1)], t_inv);
                if !u[i].is_zero() {
                    axpy(f, f.neg(u[i]), &pivot_row, &mut h.row_mut(i)[m - 1..]);
                }
            }
            if u.iter().any(|c| !c.is_zero()) {
                for r in 0..n {
                    let row = h.row(r);
                    let s = dot(f, &u[m + 1..], &row[m + 1..]);
                    h[(r, m)] = f.add(h[(r, m)], s);
                }
            }
        }
        // p_m = (X - h_mm) p_{m-1} - sum_i (prod subdiag) h_{m-i,m} p_{m-i-1}
        let mut polys: Vec<Vec<Fe>> = vec![vec![Fe::ONE]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut pm = vec![Fe::ZERO; m + 1];
            for (d, &c) in prev.iter().enumerate() {
                pm[d + 1] = f.add(pm[d + 1], c);
                pm[d] = f.sub(pm[d], f.mul(h[(m - 1, m - 1)], c));
            }
            let mut t = Fe::ONE;
            for i in 1..m {
                t = f.mul(t, h[(m - i, m - i - 1)]);
                if t.is_zero() {
                    break;
                }
                let coef = f.mul(t, h[(m - i - 1, m - 1)]);
                if coef.is_zero() {
                    continue;
                }
                for (d, &c) in polys[m - i - 1].iter().enumerate() {
                    pm[d] = f.sub(pm[d], f.mul(coef, c));
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

/// `dst += a * src`.
#[inline]
pub fn axpy(f: &Field, a: Fe, src: &[Fe], dst: &mut [Fe]) {
    if a.is_zero() {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = f.mul_add(a, s, *d);
        }
    }
}

#[inline]
pub fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| f.mul_add(x, y, acc))
}

/// Sparse vector as sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(u32, Fe)>;

/// Sum of scaled sparse vectors, sorted and with zeros dropped.
pub fn sparse_combine(f: &Field, terms: &mut Vec<(u32, Fe)>) -> SparseVec {
    terms.sort_unstable_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for &(i, c) in terms.iter() {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = f.add(*acc, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|&(_, c)| !c.is_zero());
    out
}

pub fn sparse_to_dense(v: &[(u32, Fe)], n: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; n];
    for &(i, c) in v {
        out[i as usize] = c;
    }
    out
}

pub fn dense_to_sparse(v: &[Fe]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i as u32, c))
        .collect()
}

/// Square matrix stored by columns: `cols[j]` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix {
            n,
            cols: vec![Vec::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            n,
            cols: (0..n).map(|j| vec![(j as u32, Fe::ONE)]).collect(),
        }
    }

    pub fn diagonal(d: &[Fe]) -> Self {
        SparseMatrix {
            n: d.len(),
            cols: d
                .iter()
                .enumerate()
                .map(|(j, &c)| {
                    if c.is_zero() {
                        vec![]
                    } else {
                        vec![(j as u32, c)]
                    }
                })
                .collect(),
        }
    }

    pub fn from_columns(cols: Vec<SparseVec>) -> Self {
        SparseMatrix {
            n: cols.len(),
            cols,
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        let mut cols = vec![Vec::new(); n];
        for i in 0..n {
            for (j, &c) in m.row(i).iter().enumerate() {
                if !c.is_zero() {
                    cols[j].push((i as u32, c));
                }
            }
        }
        SparseMatrix { n, cols }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, c) in col {
                m[(i as usize, j)] = c;
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |&(r, _)| r)
            .map(|pos| self.cols[j][pos].1)
            .unwrap_or(Fe::ZERO)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Fe) {
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&(i as u32), |&(r, _)| r) {
            Ok(pos) if c.is_zero() => {
                col.remove(pos);
            }
            Ok(pos) => col[pos].1 = c,
            Err(pos) if !c.is_zero() => col.insert(pos, (i as u32, c)),
            Err(_) => {}
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `M v` for a dense vector.
    pub fn apply(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.n];
        self.apply_into(f, v, &mut out);
        out
    }

    pub fn apply_into(&self, f: &Field, v: &[Fe], out: &mut [Fe]) {
        out.iter_mut().for_each(|x| *x = Fe::ZERO);
        for (j, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(i, a) in &self.cols[j] {
                out[i as usize] = f.mul_add(a, x, out[i as usize]);
            }
        }
    }

    /// `M^T v` for a dense vector.
    pub fn apply_transpose(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        self.cols
            .iter()
            .map(|col| {
                col.iter()
                    .fold(Fe::ZERO, |acc, &(i, a)| f.mul_add(a, v[i as usize], acc))
            })
            .collect()
    }

    pub fn apply_sparse(&self, f: &Field, v: &[(u32, Fe)]) -> SparseVec {
        let mut terms = Vec::new();
        for &(j, x) in v {
            for &(i, a) in &self.cols[j as usize] {
                terms.push((i, f.mul(a, x)));
            }
        }
        sparse_combine(f, &mut terms)
    }

    /// `self * other`.
    pub fn mul(&self, f: &Field, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, other.n);
        SparseMatrix {
            n: self.n,
            cols: other
                .cols
                .iter()
                .map(|col| self.apply_sparse(f, col))
                .collect(),
        }
    }

    /// `a * self + b * other`.
    pub fn lin_comb(&self, f: &Field, a: Fe, other: &SparseMatrix, b: Fe) -> SparseMatrix {
        assert_eq!(self.n, other.n);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let mut terms: Vec<(u32, Fe)> = x
                    .iter()
                    .map(|&(i, c)| (i, f.mul(a, c)))
                    .chain(y.iter().map(|&(i, c)| (i, f.mul(b, c))))
                    .collect();
                sparse_combine(f, &mut terms)
            })
            .collect();
        SparseMatrix { n: self.n, cols }
    }

    pub fn pow(&self, f: &Field, e: u64) -> SparseMatrix {
        let mut result = SparseMatrix::identity(self.n);
        for _ in 0..e {
            result = self.mul(f, &result);
        }
        result
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.n];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, c) in col {
                cols[i as usize].push((j as u32, c));
            }
        }
        SparseMatrix { n: self.n, cols }
    }

    /// Restriction to the coordinate subspace spanned by `idx`, which must be
    /// invariant.
    pub fn restrict(&self, idx: &[usize]) -> Option<SparseMatrix> {
        let mut pos = vec![u32::MAX; self.n];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new as u32;
        }
        let mut cols = Vec::with_capacity(idx.len());
        for &old in idx {
            let mut col = Vec::new();
            for &(i, c) in &self.cols[old] {
                let p = pos[i as usize];
                if p == u32::MAX {
                    return None;
                }
                col.push((p, c));
            }
            col.sort_unstable_by_key(|&(i, _)| i);
            cols.push(col);
        }
        Some(SparseMatrix { n: idx.len(), cols })
    }
}

/// Subspace kept in semi-echelon form: each stored row has a leading 1 at
/// its pivot and zeros at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(n: usize) -> Self {
        Subspace {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn reduce(&self, f: &Field, v: &mut [Fe]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                axpy(f, f.neg(c), row, v);
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Reduce and insert; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Field, mut v: Vec<Fe>) -> bool {
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let s = f.inv(v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, s);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn m(f: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn nullspace_and_rank() {
        let f = make_field(5, 1).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(&f), 2);
        let ns = a.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&f, &ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_det() {
        let f = make_field(7, 1).unwrap();
        let a = m(&f, &[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(&f), f.one());
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(2));
        assert!(m(&f, &[&[1, 2], &[2, 4]]).inverse(&f).is_none());
    }

    #[test]
    fn charpoly_matches_det_evaluation() {
        let f = make_field(3, 2).unwrap();
        let a = m(
            &f,
            &[&[1, 2, 0, 1], &[0, 1, 1, 2], &[2, 2, 0, 1], &[1, 0, 1, 1]],
        );
        let cp = a.charpoly(&f);
        assert_eq!(cp.len(), 5);
        assert_eq!(cp[4], f.one());
        for x in f.elements() {
            let shifted = Matrix::identity(4).scale(&f, x).sub(&f, &a);
            let val = cp
                .iter()
                .rev()
                .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(val, shifted.det(&f));
        }
    }

    #[test]
    fn sparse_dense_agree() {
        let f = make_field(3, 1).unwrap();
        let a = m(&f, &[&[1, 0, 2], &[0, 0, 1], &[2, 1, 0]]);
        let b = m(&f, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, 2]]);
        let (sa, sb) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b));
        assert_eq!(sa.mul(&f, &sb).to_dense(), a.mul(&f, &b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        let v = vec![f.one(), f.from_int(2), f.zero()];
        assert_eq!(sa.apply(&f, &v), a.mul_vec(&f, &v));
        assert_eq!(sa.apply_transpose(&f, &v), a.transpose().mul_vec(&f, &v));
    }

    #[test]
    fn subspace_insert_reduce() {
        let f = make_field(5, 1).unwrap();
        let mut s = Subspace::new(3);
        assert!(s.insert(&f, vec![f.one(), f.from_int(2), f.zero()]));
        assert!(s.insert(&f, vec![f.zero(), f.one(), f.one()]));
        assert!(!s.insert(&f, vec![f.one(), f.from_int(3), f.one()]));
        assert!(s.contains(&f, &[f.from_int(2), f.from_int(4), f.zero()]));
        assert_eq!(s.dim(), 2);
    }
}
