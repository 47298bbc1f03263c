//! Dense reference computations shared by the integration tests. Nothing
//! here uses the library's sparse matrices beyond reading their entries.

use std::collections::BTreeMap;

use annkh::complex::ChainComplex;
use annkh::ring::Ring;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Dense<E> = Vec<Vec<E>>;

pub fn dense<R: Ring>(ring: &R, m: &annkh::matrix::SparseMatrix<R::Elem>) -> Dense<R::Elem> {
    let mut out = vec![vec![ring.zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.iter() {
        out[r][c] = v.clone();
    }
    out
}

/// Rank by Gaussian elimination over the rationals.
pub fn rank(mut m: Dense<BigRational>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Betti numbers of a complex over a field whose elements are rationals,
/// slice by slice. With `by_q` false only adeg is used to slice.
pub fn betti<R: Ring<Elem = BigRational>>(c: &ChainComplex<R>, by_q: bool) -> BTreeMap<(i32, Option<i32>, i32), usize> {
    let key = |g: &annkh::complex::Generator| (by_q.then_some(g.q), g.a);
    let mut out = BTreeMap::new();
    for (k, group) in c.groups.iter().enumerate() {
        let i = k as i32 - c.n_minus as i32;
        let mut slices: BTreeMap<(Option<i32>, i32), Vec<usize>> = BTreeMap::new();
        for (j, g) in group.iter().enumerate() {
            slices.entry(key(g)).or_default().push(j);
        }
        for (s, members) in slices {
            let restrict = |m: &annkh::matrix::SparseMatrix<BigRational>, rows: &[annkh::complex::Generator], cols: &[usize]| {
                let keep: Vec<usize> = (0..rows.len()).filter(|&r| key(&rows[r]) == s).collect();
                let d = dense(&c.ring, m);
                keep.iter().map(|&r| cols.iter().map(|&x| d[r][x].clone()).collect()).collect::<Dense<BigRational>>()
            };
            let outgoing = match c.differentials.get(k) {
                Some(d) => rank(restrict(d, &c.groups[k + 1], &members)),
                None => 0,
            };
            let incoming = if k == 0 {
                0
            } else {
                let prev: Vec<usize> = (0..c.groups[k - 1].len()).filter(|&x| key(&c.groups[k - 1][x]) == s).collect();
                let d = dense(&c.ring, &c.differentials[k - 1]);
                rank(members.iter().map(|&r| prev.iter().map(|&x| d[r][x].clone()).collect()).collect())
            };
            let b = members.len() - outgoing - incoming;
            if b > 0 {
                out.insert((i, s.0, s.1), b);
            }
        }
    }
    out
}
