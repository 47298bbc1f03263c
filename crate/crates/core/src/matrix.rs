//! Sparse matrices over a [`Ring`] context.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::ring::Ring;

/// Row-major sparse matrix; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), ring.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.entries.get(&(r, c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Entries of one row, in column order.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &E)> {
        self.entries.range((r, 0)..(r + 1, 0)).map(|(&(_, c), v)| (c, v))
    }

    pub fn set<R: Ring<Elem = E>>(&mut self, ring: &R, r: usize, c: usize, v: E) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if ring.is_zero(&v) {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to<R: Ring<Elem = E>>(&mut self, ring: &R, r: usize, c: usize, v: &E) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if ring.is_zero(v) {
            return;
        }
        match self.entries.get_mut(&(r, c)) {
            Some(x) => {
                *x = ring.add(x, v);
                if ring.is_zero(x) {
                    self.entries.remove(&(r, c));
                }
            }
            None => {
                self.entries.insert((r, c), v.clone());
            }
        }
    }

    /// `self * other`.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for (j, b) in other.row(k) {
                out.add_to(ring, i, j, &ring.mul(a, b));
            }
        }
        out
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_to(ring, i, j, v);
        }
        out
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(ring, i, j, ring.mul(c, v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    /// Entrywise image under a ring map, dropping entries that become zero.
    pub fn map<F, S: Ring>(&self, target: &S, f: F) -> SparseMatrix<S::Elem>
    where
        F: Fn(&E) -> S::Elem,
    {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(target, r, c, f(v));
        }
        out
    }

    /// Keep the entries satisfying the predicate.
    pub fn filter<F: Fn(usize, usize, &E) -> bool>(&self, keep: F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .filter(|(&(r, c), v)| keep(r, c, v))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Restriction to the given rows and columns, reindexed in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (c, v) in self.row(r) {
                if let Some(&ci) = col_pos.get(&c) {
                    out.entries.insert((ri, ci), v.clone());
                }
            }
        }
        out
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        let mut d = vec![vec![ring.zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize, d: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, row) in d.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(ring, r, c, v.clone());
            }
        }
        m
    }

    /// Image of a column vector given as sparse (index, value) pairs.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[(usize, E)]) -> BTreeMap<usize, E> {
        let lookup: BTreeMap<usize, &E> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out: BTreeMap<usize, E> = BTreeMap::new();
        for (&(r, c), a) in &self.entries {
            if let Some(x) = lookup.get(&c) {
                let p = ring.mul(a, x);
                let e = out.entry(r).or_insert_with(|| ring.zero());
                *e = ring.add(e, &p);
            }
        }
        out.retain(|_, x| !ring.is_zero(x));
        out
    }

    /// Sparse triplet dump, one `row col value` line per entry.
    pub fn triplets<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let mut s = String::new();
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(s, "{r} {c} {}", ring.format(v));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn m(rows: usize, cols: usize, d: &[&[i64]]) -> SparseMatrix<BigInt> {
        let dense: Vec<Vec<BigInt>> = d.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        SparseMatrix::from_dense(&Integers, rows, cols, &dense)
    }

    #[test]
    fn product_and_identity() {
        let a = m(2, 3, &[&[1, 2, 0], &[0, -1, 3]]);
        let b = m(3, 2, &[&[1, 0], &[2, 1], &[0, 4]]);
        assert_eq!(a.mul(&Integers, &b), m(2, 2, &[&[5, 2], &[-2, 11]]));
        let i = SparseMatrix::identity(&Integers, 3);
        assert_eq!(a.mul(&Integers, &i), a);
    }

    #[test]
    fn cancellation_drops_entries() {
        let mut a = m(1, 1, &[&[2]]);
        a.add_to(&Integers, 0, 0, &BigInt::from(-2));
        assert!(a.is_zero());
    }

    #[test]
    fn submatrix_and_apply() {
        let a = m(3, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.submatrix(&[2, 0], &[1]), m(2, 1, &[&[8], &[2]]));
        let v = a.apply(&Integers, &[(0, BigInt::from(1)), (2, BigInt::from(-1))]);
        assert_eq!(v.get(&0), Some(&BigInt::from(-2)));
        assert_eq!(a.triplets(&Integers).lines().count(), 9);
    }
}
