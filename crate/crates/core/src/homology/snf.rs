//! Dense Smith normal form over a Euclidean domain.

use crate::matrix::SparseMatrix;
use crate::ring::EuclideanRing;

pub type Dense<E> = Vec<Vec<E>>;

/// `U * A * V = D` with `U`, `V` invertible; `v_inv` is `V^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witnesses<E> {
    pub u: Dense<E>,
    pub v: Dense<E>,
    pub v_inv: Dense<E>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnfResult<E> {
    /// Nonzero diagonal entries, normalized, each dividing the next.
    pub invariants: Vec<E>,
    pub rank: usize,
    pub witnesses: Option<Witnesses<E>>,
}

/// Elimination state. Row and column degrees follow their lines through
/// swaps; the operations used never mix lines of different degrees when
/// the input is homogeneous.
pub(crate) struct Reducer<'a, R: EuclideanRing> {
    pub ring: &'a R,
    pub a: Dense<R::Elem>,
    pub rows: usize,
    pub cols: usize,
    pub u: Option<Dense<R::Elem>>,
    pub v: Option<(Dense<R::Elem>, Dense<R::Elem>)>,
    pub row_deg: Vec<i32>,
    pub col_deg: Vec<i32>,
}

fn identity<R: EuclideanRing>(ring: &R, n: usize) -> Dense<R::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

/// `target -= q * source` on lines of a dense matrix.
fn row_axpy<R: EuclideanRing>(ring: &R, m: &mut Dense<R::Elem>, target: usize, source: usize, q: &R::Elem) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(&src) {
        if !ring.is_zero(s) {
            *x = ring.sub(x, &ring.mul(q, s));
        }
    }
}

fn col_axpy<R: EuclideanRing>(ring: &R, m: &mut Dense<R::Elem>, target: usize, source: usize, q: &R::Elem) {
    for row in m.iter_mut() {
        if !ring.is_zero(&row[source]) {
            let t = ring.mul(q, &row[source]);
            row[target] = ring.sub(&row[target], &t);
        }
    }
}

fn swap_cols<E>(m: &mut Dense<E>, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl<'a, R: EuclideanRing> Reducer<'a, R> {
    pub fn new(ring: &'a R, a: Dense<R::Elem>, cols: usize, track_u: bool, track_v: bool) -> Self {
        let rows = a.len();
        Reducer {
            ring,
            u: track_u.then(|| identity(ring, rows)),
            v: track_v.then(|| (identity(ring, cols), identity(ring, cols))),
            a,
            rows,
            cols,
            row_deg: Vec::new(),
            col_deg: Vec::new(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if !self.row_deg.is_empty() {
            self.row_deg.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some((v, vi)) = &mut self.v {
            swap_cols(v, i, j);
            vi.swap(i, j);
        }
        if !self.col_deg.is_empty() {
            self.col_deg.swap(i, j);
        }
    }

    /// row_target -= q row_source
    fn row_op(&mut self, target: usize, source: usize, q: &R::Elem) {
        row_axpy(self.ring, &mut self.a, target, source, q);
        if let Some(u) = &mut self.u {
            row_axpy(self.ring, u, target, source, q);
        }
    }

    /// col_target -= q col_source
    fn col_op(&mut self, target: usize, source: usize, q: &R::Elem) {
        col_axpy(self.ring, &mut self.a, target, source, q);
        if let Some((v, vi)) = &mut self.v {
            col_axpy(self.ring, v, target, source, q);
            // V^{-1} picks up the inverse operation on rows.
            let neg = self.ring.neg(q);
            row_axpy(self.ring, vi, source, target, &neg);
        }
    }

    fn scale_row(&mut self, r: usize, unit: &R::Elem) {
        let ring = self.ring;
        for x in self.a[r].iter_mut() {
            *x = ring.mul(unit, x);
        }
        if let Some(u) = &mut self.u {
            for x in u[r].iter_mut() {
                *x = ring.mul(unit, x);
            }
        }
    }

    /// Smallest nonzero entry in the trailing block, leftmost first.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(R::Size, usize, usize)> = None;
        for c in t..self.cols {
            for r in t..self.rows {
                let x = &self.a[r][c];
                if self.ring.is_zero(x) {
                    continue;
                }
                let s = self.ring.size(x);
                if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                    best = Some((s, r, c));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Diagonalize. With `divisibility` the diagonal is also brought into a
    /// divisor chain; that step may mix rows of different degree.
    pub fn run(&mut self, divisibility: bool) -> usize {
        let ring = self.ring;
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.pivot(t) else { break };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let mut smaller: Option<(bool, usize)> = None;
                for r in t + 1..self.rows {
                    if ring.is_zero(&self.a[r][t]) {
                        continue;
                    }
                    let (q, rem) = ring.divmod(&self.a[r][t], &self.a[t][t]).expect("nonzero pivot");
                    self.row_op(r, t, &q);
                    if !ring.is_zero(&rem) {
                        smaller = Some((true, r));
                    }
                }
                for c in t + 1..self.cols {
                    if ring.is_zero(&self.a[t][c]) {
                        continue;
                    }
                    let (q, rem) = ring.divmod(&self.a[t][c], &self.a[t][t]).expect("nonzero pivot");
                    self.col_op(c, t, &q);
                    if !ring.is_zero(&rem) {
                        smaller = smaller.or(Some((false, c)));
                    }
                }
                if let Some((is_row, k)) = smaller {
                    // A remainder smaller than the pivot survived; move it in.
                    if is_row && !ring.is_zero(&self.a[k][t]) {
                        self.swap_rows(t, k);
                    } else if !is_row && !ring.is_zero(&self.a[t][k]) {
                        self.swap_cols(t, k);
                    } else if let Some(r) = (t + 1..self.rows).find(|&r| !ring.is_zero(&self.a[r][t])) {
                        self.swap_rows(t, r);
                    } else if let Some(c) = (t + 1..self.cols).find(|&c| !ring.is_zero(&self.a[t][c])) {
                        self.swap_cols(t, c);
                    }
                    continue;
                }
                if divisibility {
                    let bad = (t + 1..self.rows).find(|&r| {
                        (t + 1..self.cols).any(|c| !ring.divides(&self.a[t][t], &self.a[r][c]))
                    });
                    if let Some(r) = bad {
                        let minus_one = ring.neg(&ring.one());
                        self.row_op(t, r, &minus_one);
                        continue;
                    }
                }
                break;
            }
            let unit = ring.normalizing_unit(&self.a[t][t]);
            if !ring.is_one(&unit) {
                self.scale_row(t, &unit);
            }
            t += 1;
        }
        t
    }
}

pub fn smith_normal_form<R: EuclideanRing>(ring: &R, m: &SparseMatrix<R::Elem>, witnesses: bool) -> SnfResult<R::Elem> {
    let mut red = Reducer::new(ring, m.to_dense(ring), m.cols(), witnesses, witnesses);
    let rank = red.run(true);
    let invariants = (0..rank).map(|t| red.a[t][t].clone()).collect();
    let witnesses = if witnesses {
        let (v, v_inv) = red.v.take().expect("tracked");
        Some(Witnesses {
            u: red.u.take().expect("tracked"),
            v,
            v_inv,
        })
    } else {
        None
    };
    SnfResult {
        invariants,
        rank,
        witnesses,
    }
}

/// Rank over the fraction field.
pub fn rank<R: EuclideanRing>(ring: &R, m: &SparseMatrix<R::Elem>) -> usize {
    Reducer::new(ring, m.to_dense(ring), m.cols(), false, false).run(false)
}
