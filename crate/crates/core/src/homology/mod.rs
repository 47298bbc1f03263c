//! Homology of assembled complexes: Smith normal form, bigraded tables,
//! the localized rank count and canonical generators.

pub mod snf;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_complex, ChainComplex, ComplexError};
use crate::diagram::{nesting_depth, AnnularDiagram, DiagramError, OrientationChoice, Smoothing};
use crate::matrix::SparseMatrix;
use crate::ring::{AlphaEval, AlphaRing, EuclideanRing, QGrading, Ring};
use crate::tqft::{ab_bit, Tqft, Variant};

pub use snf::{rank, smith_normal_form, SnfResult, Witnesses};
use snf::{Dense, Reducer};

/// `(i, q, a)`; `q` is `None` when the ring carries no quantum grading.
pub type Tridegree = (i32, Option<i32>, i32);

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Non-unit invariant factors, normalized.
    pub torsion: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BigradedHomology {
    pub entries: BTreeMap<Tridegree, HomologyGroup>,
}

/// One line of a Poincare table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub i: i32,
    pub q: Option<i32>,
    pub a: i32,
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl BigradedHomology {
    pub fn total_rank(&self) -> usize {
        self.entries.values().map(|g| g.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_free(&mut self, key: Tridegree, n: usize) {
        if n > 0 {
            self.entries.entry(key).or_default().rank += n;
        }
    }

    fn add_torsion(&mut self, key: Tridegree, t: String) {
        self.entries.entry(key).or_default().torsion.push(t);
    }

    /// Rows sorted by `(i, q, a)`.
    pub fn poincare_table(&self) -> Vec<TableRow> {
        self.entries
            .iter()
            .map(|(&(i, q, a), g)| TableRow {
                i,
                q,
                a,
                rank: g.rank,
                torsion: g.torsion.clone(),
            })
            .collect()
    }

    pub fn from_table(rows: &[TableRow]) -> Self {
        let mut h = BigradedHomology::default();
        for r in rows {
            h.entries.insert(
                (r.i, r.q, r.a),
                HomologyGroup {
                    rank: r.rank,
                    torsion: r.torsion.clone(),
                },
            );
        }
        h
    }

    /// Columns `i q a rank torsion`; ungraded q prints as `*`, no torsion as `-`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("i\tq\ta\trank\ttorsion\n");
        for r in self.poincare_table() {
            let q = r.q.map_or("*".to_string(), |q| q.to_string());
            let t = if r.torsion.is_empty() { "-".to_string() } else { r.torsion.join(",") };
            let _ = writeln!(s, "{}\t{q}\t{}\t{}\t{t}", r.i, r.a, r.rank);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.poincare_table()).expect("rows serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let rows: Vec<TableRow> = serde_json::from_str(text)?;
        Ok(Self::from_table(&rows))
    }
}

fn slice_key<R: Ring>(ring: &R, q: i32, a: i32) -> (Option<i32>, i32) {
    match ring.q_grading() {
        QGrading::Concentrated => (Some(q), a),
        _ => (None, a),
    }
}

fn dense_block<R: Ring>(ring: &R, m: Option<&SparseMatrix<R::Elem>>, rows: &[usize], cols: &[usize]) -> Dense<R::Elem> {
    match m {
        Some(m) => m.submatrix(rows, cols).to_dense(ring),
        None => vec![vec![ring.zero(); cols.len()]; rows.len()],
    }
}

/// Homology at one homological degree and one slice.
fn slice_homology<R: EuclideanRing>(
    c: &ChainComplex<R>,
    k: usize,
    key: (Option<i32>, i32),
) -> Vec<(Tridegree, Option<String>, usize)> {
    let ring = &c.ring;
    let graded = ring.q_grading() == QGrading::Graded;
    let select = |g: usize| -> Vec<usize> {
        c.groups
            .get(g)
            .map(|gens| {
                (0..gens.len())
                    .filter(|&j| slice_key(ring, gens[j].q, gens[j].a) == key)
                    .collect()
            })
            .unwrap_or_default()
    };
    let here = select(k);
    if here.is_empty() {
        return Vec::new();
    }
    let next = select(k + 1);
    let prev = if k > 0 { select(k - 1) } else { Vec::new() };
    let n = here.len();
    let i = k as i32 - c.n_minus as i32;

    // Kernel of the outgoing map in an adapted basis.
    let out = dense_block(ring, c.differentials.get(k), &next, &here);
    let mut red = Reducer::new(ring, out, n, false, true);
    red.col_deg = here.iter().map(|&j| c.groups[k][j].q).collect();
    let r = red.run(false);
    let (_, v_inv) = red.v.take().expect("tracked");
    let kernel_deg: Vec<i32> = red.col_deg[r..].to_vec();

    // Incoming boundaries, written in that basis.
    let inc = if k > 0 {
        dense_block(ring, c.differentials.get(k - 1), &here, &prev)
    } else {
        vec![Vec::new(); n]
    };
    let p = prev.len();
    let mut b: Dense<R::Elem> = Vec::with_capacity(n - r);
    for row in &v_inv[r..] {
        let mut out = vec![ring.zero(); p];
        for (x, y) in row.iter().zip(&inc) {
            if ring.is_zero(x) {
                continue;
            }
            for (o, e) in out.iter_mut().zip(y) {
                if !ring.is_zero(e) {
                    *o = ring.add(o, &ring.mul(x, e));
                }
            }
        }
        b.push(out);
    }
    let mut red = Reducer::new(ring, b, p, false, false);
    red.row_deg = kernel_deg;
    // Without degrees every line is in one degree, so the divisor chain is safe.
    let s = red.run(!graded);
    let at = |row: usize| -> Tridegree {
        match key.0 {
            Some(q) => (i, Some(q), key.1),
            None if graded => (i, Some(red.row_deg[row]), key.1),
            None => (i, None, key.1),
        }
    };
    let mut found = Vec::new();
    for t in 0..s {
        let d = &red.a[t][t];
        if !ring.is_unit(d) {
            found.push((at(t), Some(ring.format(&ring.normalize(d))), 0));
        }
    }
    for row in s..red.rows {
        found.push((at(row), None, 1));
    }
    found
}

/// Bigraded homology, sliced by `(q, a)` when the ring is concentrated in
/// qdeg 0 and by `a` otherwise (tracking q through the elimination when
/// the ring is graded).
pub fn homology<R: EuclideanRing>(c: &ChainComplex<R>) -> BigradedHomology {
    let mut tasks: Vec<(usize, (Option<i32>, i32))> = Vec::new();
    for (k, gens) in c.groups.iter().enumerate() {
        let keys: BTreeSet<_> = gens.iter().map(|g| slice_key(&c.ring, g.q, g.a)).collect();
        tasks.extend(keys.into_iter().map(|key| (k, key)));
    }
    let parts: Vec<_> = tasks.par_iter().map(|&(k, key)| slice_homology(c, k, key)).collect();
    let mut h = BigradedHomology::default();
    for (key, torsion, free) in parts.into_iter().flatten() {
        match torsion {
            Some(t) => h.add_torsion(key, t),
            None => h.add_free(key, free),
        }
    }
    for g in h.entries.values_mut() {
        g.torsion.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    }
    h
}

/// Alternating sums of chain ranks and homology ranks agree per `(q, a)`
/// (per `a` when q is not concentrated). Returns the first mismatch.
pub fn euler_check<R: Ring>(c: &ChainComplex<R>, h: &BigradedHomology) -> Result<(), ((Option<i32>, i32), i64, i64)> {
    let concentrated = c.ring.q_grading() == QGrading::Concentrated;
    let key = |q: Option<i32>, a: i32| (if concentrated { q } else { None }, a);
    let mut chain: BTreeMap<(Option<i32>, i32), i64> = BTreeMap::new();
    let mut hom: BTreeMap<(Option<i32>, i32), i64> = BTreeMap::new();
    for i in c.degrees() {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        for g in c.group(i) {
            *chain.entry(key(Some(g.q), g.a)).or_default() += sign;
        }
    }
    for (&(i, q, a), g) in &h.entries {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        *hom.entry(key(q, a)).or_default() += sign * g.rank as i64;
    }
    let keys: BTreeSet<_> = chain.keys().chain(hom.keys()).copied().collect();
    for k in keys {
        let (x, y) = (chain.get(&k).copied().unwrap_or(0), hom.get(&k).copied().unwrap_or(0));
        if x != y {
            return Err((k, x, y));
        }
    }
    Ok(())
}

/// Localized homology over `Q` with `(a0, a1) = (0, 1)`.
pub fn localized_homology(d: &AnnularDiagram) -> Result<BigradedHomology, ComplexError> {
    let t = Tqft::new(AlphaEval::from_ints(0, 1), Variant::AnnularD)?;
    Ok(homology(&build_complex(d, &t)?))
}

/// Total localized rank; expected to be `2^components`.
pub fn lee_rank(d: &AnnularDiagram) -> Result<usize, ComplexError> {
    Ok(localized_homology(d)?.total_rank())
}

/// a/b labels of the oriented resolution translated to idempotent bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGenerator {
    pub orientation: OrientationChoice,
    pub smoothing: Smoothing,
    /// Per circle in slot order: `false` for a, `true` for b.
    pub labels: Vec<bool>,
    pub word: usize,
    pub word_label: String,
    pub adeg: i32,
    /// Homological degree in the complex of the diagram's own orientation.
    pub degree: i32,
    pub essential_circles: usize,
}

pub fn canonical_generator(d: &AnnularDiagram, o: &OrientationChoice) -> Result<CanonicalGenerator, DiagramError> {
    let (u, rd) = d.oriented_resolution(o)?;
    let space = crate::tqft::StateSpace::new(
        rd.circles
            .iter()
            .map(|c| crate::tqft::Slot {
                essential_index: c.essential_index,
                basis: Variant::AnnularD.basis(c.essential_index),
            })
            .collect(),
    );
    let mut labels = Vec::with_capacity(rd.circles.len());
    let mut word = 0;
    for (j, c) in rd.circles.iter().enumerate() {
        let b = (nesting_depth(&rd, j) + usize::from(c.counterclockwise())) % 2 == 1;
        labels.push(b);
        word = space.with_bit(word, j, ab_bit(space.slots[j].basis, b));
    }
    let (_, n_minus) = d.sign_counts();
    let height = u.iter().filter(|&&x| x == 1).count() as i32;
    Ok(CanonicalGenerator {
        orientation: o.clone(),
        smoothing: u,
        labels,
        word,
        word_label: space.label(word),
        adeg: space.bidegree(word).1,
        degree: height - n_minus as i32,
        essential_circles: rd.essential_count(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalReport {
    pub generator: CanonicalGenerator,
    pub is_cycle: bool,
    pub winding: i32,
    pub expected_adeg: i32,
}

impl CanonicalReport {
    pub fn passed(&self) -> bool {
        self.is_cycle && self.generator.adeg == self.expected_adeg
    }
}

fn generator_index<R: Ring>(c: &ChainComplex<R>, g: &CanonicalGenerator) -> Option<usize> {
    let v = c.vertices.iter().position(|v| v.smoothing == g.smoothing)?;
    c.group(g.degree).iter().position(|x| x.vertex == v && x.word == g.word)
}

/// Check the generator against a complex built in idempotent bases.
pub fn verify_canonical<R: AlphaRing>(
    c: &ChainComplex<R>,
    d: &AnnularDiagram,
    o: &OrientationChoice,
) -> Result<CanonicalReport, DiagramError> {
    let g = canonical_generator(d, o)?;
    let winding = d.link_winding(o)?;
    let sign = if g.essential_circles % 2 == 0 { 1 } else { -1 };
    let is_cycle = match (c.variant, generator_index(c, &g)) {
        (Variant::AnnularD, Some(idx)) => match c.differential(g.degree) {
            Some(m) => m.apply(&c.ring, &[(idx, c.ring.one())]).values().all(|x| c.ring.is_zero(x)),
            None => true,
        },
        _ => false,
    };
    Ok(CanonicalReport {
        generator: g,
        is_cycle,
        winding,
        expected_adeg: sign * winding,
    })
}

/// Rank, over the fraction field, of the span of the given cycles in homology.
pub fn span_in_homology<R: EuclideanRing>(c: &ChainComplex<R>, gens: &[CanonicalGenerator]) -> usize {
    let ring = &c.ring;
    let mut total = 0;
    for i in c.degrees() {
        let idx: Vec<usize> = gens
            .iter()
            .filter(|g| g.degree == i)
            .filter_map(|g| generator_index(c, g))
            .collect();
        if idx.is_empty() {
            continue;
        }
        let n = c.rank(i);
        let boundaries = c.differential(i - 1).cloned().unwrap_or_else(|| SparseMatrix::zeros(n, 0));
        let mut with = SparseMatrix::zeros(n, boundaries.cols() + idx.len());
        for (r, col, v) in boundaries.iter() {
            with.set(ring, r, col, v.clone());
        }
        for (j, &g) in idx.iter().enumerate() {
            with.set(ring, g, boundaries.cols() + j, ring.one());
        }
        total += rank(ring, &with) - rank(ring, &boundaries);
    }
    total
}

#[cfg(test)]
mod tests;
