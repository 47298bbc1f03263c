//! The dotted Temperley-Lieb category at `q = 1`, with coefficients in
//! `Z[a0, a1]`, and its spinning evaluation into annular state spaces.
//!
//! Boundary points of an `(n, m)` tangle are numbered circularly: bottom
//! left to right (`0..n`), then top right to left (`n..n+m`).

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::frobenius::{AlgebraElement, BasisConvention, FrobeniusAlgebra};
use crate::homology::rank;
use crate::matrix::SparseMatrix;
use crate::ring::{AlphaEval, AlphaPolys, AlphaRing, BivariatePoly};
use crate::tqft::{LinearMap, StateSpace, Tqft, TqftError, Variant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlError {
    #[error("TL({n},{m}) is zero: n + m must be even")]
    Parity { n: usize, m: usize },
    #[error("cannot compose: top arity {left} does not match bottom arity {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("invalid tangle: {0}")]
    Invalid(String),
    #[error("spin evaluation needs an annular variant with alternating or idempotent bases, not {0}")]
    Variant(Variant),
    #[error(transparent)]
    Tqft(#[from] TqftError),
}

/// A dotted crossingless tangle. `pairs` is sorted with `a < b` in each
/// pair; `dots[k]` decorates `pairs[k]`; `loops` holds the dot counts of
/// closed components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DottedTangle {
    pub n: usize,
    pub m: usize,
    pub pairs: Vec<(usize, usize)>,
    pub dots: Vec<u32>,
    pub loops: Vec<u32>,
}

fn crosses(p: (usize, usize), q: (usize, usize)) -> bool {
    (p.0 < q.0 && q.0 < p.1 && p.1 < q.1) || (q.0 < p.0 && p.0 < q.1 && q.1 < p.1)
}

impl DottedTangle {
    pub fn new(n: usize, m: usize, pairs: Vec<(usize, usize)>, dots: Vec<u32>, loops: Vec<u32>) -> Result<Self, TlError> {
        if (n + m) % 2 == 1 {
            return Err(TlError::Parity { n, m });
        }
        if dots.len() != pairs.len() {
            return Err(TlError::Invalid(format!("{} pairs but {} dot counts", pairs.len(), dots.len())));
        }
        let mut seen = vec![false; n + m];
        for &(a, b) in &pairs {
            for p in [a, b] {
                if p >= n + m || std::mem::replace(&mut seen[p], true) {
                    return Err(TlError::Invalid(format!("point {} used twice or out of range", p + 1)));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TlError::Invalid("not every boundary point is matched".into()));
        }
        let mut items: Vec<((usize, usize), u32)> =
            pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).zip(dots).collect();
        items.sort();
        for (i, (p, _)) in items.iter().enumerate() {
            for (q, _) in &items[i + 1..] {
                if crosses(*p, *q) {
                    return Err(TlError::Invalid(format!("strands {:?} and {:?} cross", p, q)));
                }
            }
        }
        let mut loops = loops;
        loops.sort();
        Ok(DottedTangle {
            n,
            m,
            pairs: items.iter().map(|x| x.0).collect(),
            dots: items.iter().map(|x| x.1).collect(),
            loops,
        })
    }

    pub fn identity(n: usize) -> Self {
        let pairs = (0..n).map(|i| (i, 2 * n - 1 - i)).collect();
        DottedTangle::new(n, n, pairs, vec![0; n], vec![]).expect("identity is planar")
    }

    pub fn is_reduced(&self) -> bool {
        self.loops.is_empty() && self.dots.iter().all(|&d| d <= 1)
    }

    /// `TL(n, m) = TL(n + m, 0)`: the circular numbering is unchanged.
    pub fn bend(&self) -> Self {
        DottedTangle {
            n: self.n + self.m,
            m: 0,
            ..self.clone()
        }
    }

    pub fn unbend(&self, n: usize) -> Result<Self, TlError> {
        let total = self.n + self.m;
        if n > total {
            return Err(TlError::Invalid(format!("cannot unbend {total} points with {n} at the bottom")));
        }
        Ok(DottedTangle {
            n,
            m: total - n,
            ..self.clone()
        })
    }

    fn partner(&self, p: usize) -> (usize, u32) {
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            if a == p {
                return (b, self.dots[k]);
            }
            if b == p {
                return (a, self.dots[k]);
            }
        }
        unreachable!("every point is matched")
    }

    /// Top point `j` counted from the left.
    fn top(&self, j: usize) -> usize {
        self.n + self.m - 1 - j
    }

    /// Stack `other` on top of `self`.
    pub fn stack(&self, other: &DottedTangle) -> Result<DottedTangle, TlError> {
        if self.m != other.n {
            return Err(TlError::ArityMismatch {
                left: self.m,
                right: other.n,
            });
        }
        let (n, k) = (self.n, other.m);
        // Outer points: self bottom 0..n, other top n..n+k in result numbering.
        // Sides: 0 = self, 1 = other.
        let outer = |side: usize, p: usize| -> Option<usize> {
            match side {
                0 if p < n => Some(p),
                1 if p >= other.n => Some(n + (p - other.n)),
                _ => None,
            }
        };
        // Middle point j (from the left): self.top(j) on side 0, j on side 1.
        let cross_over = |side: usize, p: usize| -> (usize, usize) {
            if side == 0 {
                (1, self.n + self.m - 1 - p)
            } else {
                (0, self.top(p))
            }
        };
        let side_ref = |side: usize| if side == 0 { self } else { other };
        let mut used_mid = vec![false; self.m];
        let mut pairs = Vec::new();
        let mut dots = Vec::new();
        let mut done = vec![false; n + k];
        let starts: Vec<(usize, usize)> = (0..n).map(|p| (0, p)).chain((other.n..other.n + k).map(|p| (1, p))).collect();
        for (side0, p0) in starts {
            let start = outer(side0, p0).expect("outer");
            if done[start] {
                continue;
            }
            let (mut side, mut p) = (side0, p0);
            let mut total = 0;
            loop {
                let (q, d) = side_ref(side).partner(p);
                total += d;
                if let Some(end) = outer(side, q) {
                    done[start] = true;
                    done[end] = true;
                    pairs.push((start, end));
                    dots.push(total);
                    break;
                }
                let mid = if side == 0 { self.n + self.m - 1 - q } else { q };
                used_mid[mid] = true;
                (side, p) = cross_over(side, q);
            }
        }
        let mut loops: Vec<u32> = self.loops.iter().chain(&other.loops).copied().collect();
        for j in 0..self.m {
            if used_mid[j] {
                continue;
            }
            // A closed component through middle point j.
            let (mut side, mut p) = (1, j);
            let mut total = 0;
            loop {
                let (q, d) = side_ref(side).partner(p);
                total += d;
                let mid = if side == 0 { self.n + self.m - 1 - q } else { q };
                used_mid[mid] = true;
                (side, p) = cross_over(side, q);
                if side == 1 && p == j {
                    break;
                }
            }
            loops.push(total);
        }
        DottedTangle::new(n, k, pairs, dots, loops)
    }
}

impl fmt::Display for DottedTangle {
    /// `[(1,4),(2,3)] dots=[0,1]`, with `loops=[..]` when present; 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({},{})", a + 1, b + 1)).collect();
        let dots: Vec<String> = self.dots.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}] dots=[{}]", pairs.join(","), dots.join(","))?;
        if !self.loops.is_empty() {
            let loops: Vec<String> = self.loops.iter().map(|d| d.to_string()).collect();
            write!(f, " loops=[{}]", loops.join(","))?;
        }
        Ok(())
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>, TlError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| TlError::Invalid(format!("expected a bracketed list, got {s:?}")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| TlError::Invalid(format!("bad number {x:?}"))))
        .collect()
}

/// Parse the textual notation for an `(n, m)` tangle. Dots may be given as
/// `dots=[..]` or as `'` marks after a pair, e.g. `[(1,2)',(3,4)]`.
pub fn parse_tangle(text: &str, n: usize, m: usize) -> Result<DottedTangle, TlError> {
    let text = text.trim();
    let close = text
        .find(']')
        .ok_or_else(|| TlError::Invalid("expected `[(a,b),...]`".into()))?;
    let head = text[..=close]
        .strip_prefix('[')
        .ok_or_else(|| TlError::Invalid("expected `[(a,b),...]`".into()))?;
    let head = &head[..head.len() - 1];
    let mut pairs = Vec::new();
    let mut marks = Vec::new();
    let mut rest = head.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| TlError::Invalid(format!("expected `(` at {rest:?}")))?;
        let end = open.find(')').ok_or_else(|| TlError::Invalid("unclosed pair".into()))?;
        let nums = parse_list(&format!("[{}]", &open[..end]))?;
        if nums.len() != 2 || nums.contains(&0) {
            return Err(TlError::Invalid(format!("pair ({}) needs two 1-based points", &open[..end])));
        }
        pairs.push((nums[0] as usize - 1, nums[1] as usize - 1));
        let after = &open[end + 1..];
        let primes = after.chars().take_while(|&c| c == '\'').count();
        marks.push(primes as u32);
        rest = after[primes..].trim_start().trim_start_matches(',').trim_start();
    }
    let mut dots = None;
    let mut loops = Vec::new();
    for field in text[close + 1..].split_whitespace() {
        if let Some(v) = field.strip_prefix("dots=") {
            dots = Some(parse_list(v)?);
        } else if let Some(v) = field.strip_prefix("loops=") {
            loops = parse_list(v)?;
        } else {
            return Err(TlError::Invalid(format!("unknown field {field:?}")));
        }
    }
    let dots = match dots {
        Some(d) if marks.iter().any(|&k| k > 0) => {
            return Err(TlError::Invalid(format!("both dots={d:?} and ' marks given")))
        }
        Some(d) => d,
        None => marks,
    };
    DottedTangle::new(n, m, pairs, dots, loops)
}

/// `a0^k + a1^k`, the value of a closed loop with `k` dots.
pub fn loop_value(k: u32) -> BivariatePoly {
    BivariatePoly::alpha0().pow(k) + BivariatePoly::alpha1().pow(k)
}

/// A formal `Z[a0, a1]`-combination of reduced tangles of one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TlMorphism {
    pub n: usize,
    pub m: usize,
    pub terms: BTreeMap<DottedTangle, BivariatePoly>,
}

impl TlMorphism {
    pub fn zero(n: usize, m: usize) -> Self {
        TlMorphism {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        reduce(&DottedTangle::identity(n))
    }

    fn add_term(&mut self, t: DottedTangle, c: BivariatePoly) {
        let entry = self.terms.entry(t).or_insert_with(BivariatePoly::zero);
        *entry = &*entry + &c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &TlMorphism) -> TlMorphism {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BivariatePoly) -> TlMorphism {
        let mut out = TlMorphism::zero(self.n, self.m);
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v * c);
        }
        out
    }

    /// `self` followed by `other`: `other` is stacked on top.
    pub fn compose(&self, other: &TlMorphism) -> Result<TlMorphism, TlError> {
        if self.m != other.n {
            return Err(TlError::ArityMismatch {
                left: self.m,
                right: other.n,
            });
        }
        let mut out = TlMorphism::zero(self.n, other.m);
        for (s, c) in &self.terms {
            for (t, d) in &other.terms {
                let stacked = s.stack(t)?;
                out = out.add(&reduce(&stacked).scale(&(c * d)));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TlMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("({c}) {t}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

enum Redex {
    Loop(usize),
    Dots(usize),
}

fn redexes(t: &DottedTangle) -> Vec<Redex> {
    let loops = (0..t.loops.len()).map(Redex::Loop);
    let dots = (0..t.dots.len()).filter(|&k| t.dots[k] >= 2).map(Redex::Dots);
    loops.chain(dots).collect()
}

/// Rewrite with the loop values and the two-dot relation until reduced.
/// `choose(k)` picks which of `k` available rewrites to apply next.
pub fn reduce_in_order<F: FnMut(usize) -> usize>(t: &DottedTangle, mut choose: F) -> TlMorphism {
    let mut out = TlMorphism::zero(t.n, t.m);
    let mut work = vec![(t.clone(), BivariatePoly::one())];
    while let Some((t, c)) = work.pop() {
        let options = redexes(&t);
        if options.is_empty() {
            out.add_term(t, c);
            continue;
        }
        match options[choose(options.len()) % options.len()] {
            Redex::Loop(i) => {
                let mut s = t.clone();
                let k = s.loops.remove(i);
                work.push((s, &c * &loop_value(k)));
            }
            Redex::Dots(k) => {
                let (mut one, mut two) = (t.clone(), t.clone());
                one.dots[k] -= 1;
                two.dots[k] -= 2;
                work.push((one, &c * &BivariatePoly::e1()));
                work.push((two, -(&c * &BivariatePoly::e2())));
            }
        }
    }
    out
}

pub fn reduce(t: &DottedTangle) -> TlMorphism {
    reduce_in_order(t, |_| 0)
}

fn catalan_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for j in (1..points.len()).step_by(2) {
        for inside in catalan_matchings(&points[1..j]) {
            for outside in catalan_matchings(&points[j + 1..]) {
                let mut m = vec![(points[0], points[j])];
                m.extend(inside.iter().copied());
                m.extend(outside);
                out.push(m);
            }
        }
    }
    out
}

/// All reduced tangles of arity `(n, m)`: `2^l C(l)` of them, `l = (n+m)/2`.
pub fn enumerate_reduced(n: usize, m: usize) -> Result<Vec<DottedTangle>, TlError> {
    if (n + m) % 2 == 1 {
        return Err(TlError::Parity { n, m });
    }
    let points: Vec<usize> = (0..n + m).collect();
    let l = (n + m) / 2;
    let mut out = Vec::new();
    for matching in catalan_matchings(&points) {
        for mask in 0..1u32 << l {
            let dots = (0..l).map(|k| (mask >> (l - 1 - k)) & 1).collect();
            out.push(DottedTangle::new(n, m, matching.clone(), dots, vec![]).expect("enumerated matchings are planar"));
        }
    }
    out.sort();
    Ok(out)
}

/// Local data of the planar TQFT over `Z[a0, a1]` in the basis `{1, X}`.
struct Local {
    alg: FrobeniusAlgebra<AlphaPolys>,
}

impl Local {
    fn new() -> Self {
        Local {
            alg: FrobeniusAlgebra::new(AlphaPolys),
        }
    }

    fn basis(&self, k: usize) -> AlgebraElement<BivariatePoly> {
        let (o, z) = (BivariatePoly::one(), BivariatePoly::zero());
        if k == 0 {
            AlgebraElement::new(BasisConvention::OneX, o, z)
        } else {
            AlgebraElement::new(BasisConvention::OneX, z, o)
        }
    }

    /// Coefficient of `e_out` in `X^d e_in`.
    fn through(&self, d: u32, input: usize, output: usize) -> BivariatePoly {
        self.alg.mult(&self.alg.x_power(d), &self.basis(input)).coords[output].clone()
    }

    fn cap(&self, d: u32, x: usize, y: usize) -> BivariatePoly {
        let p = self.alg.mult(&self.alg.x_power(d), &self.alg.mult(&self.basis(x), &self.basis(y)));
        self.alg.counit(&p)
    }

    fn cup(&self, d: u32, x: usize, y: usize) -> BivariatePoly {
        self.alg.comult(&self.alg.x_power(d)).coeffs[x][y].clone()
    }

    /// The spun torus with `d` dots: `counit(X^d (2X - E1))`.
    fn torus(&self, d: u32) -> BivariatePoly {
        let m_delta = AlgebraElement::new(BasisConvention::OneX, -BivariatePoly::e1(), BivariatePoly::constant(2));
        self.alg.counit(&self.alg.mult(&self.alg.x_power(d), &m_delta))
    }
}

/// Spinning of one reduced tangle (loops allowed) over `{1, X}`, generic.
fn spin_generic(local: &Local, t: &DottedTangle) -> SparseMatrix<BivariatePoly> {
    let (n, m) = (t.n, t.m);
    let bit = |word: usize, len: usize, j: usize| (word >> (len - 1 - j)) & 1;
    let scalar = t
        .loops
        .iter()
        .fold(BivariatePoly::one(), |acc, &d| &acc * &local.torus(d));
    let mut out = SparseMatrix::zeros(1 << m, 1 << n);
    let top_index = |p: usize| n + m - 1 - p;
    for input in 0..1usize << n {
        for output in 0..1usize << m {
            let mut c = scalar.clone();
            for (k, &(a, b)) in t.pairs.iter().enumerate() {
                let d = t.dots[k];
                let e = match (a < n, b < n) {
                    (true, true) => local.cap(d, bit(input, n, a), bit(input, n, b)),
                    (false, false) => local.cup(d, bit(output, m, top_index(a)), bit(output, m, top_index(b))),
                    _ => local.through(d, bit(input, n, a), bit(output, m, top_index(b))),
                };
                c = &c * &e;
                if c.is_zero() {
                    break;
                }
            }
            if !c.is_zero() {
                out.set(&AlphaPolys, output, input, c);
            }
        }
    }
    out
}

/// `n` concentric essential circles, innermost first.
pub fn essential_space<R: AlphaRing>(tqft: &Tqft<R>, n: usize) -> StateSpace {
    StateSpace::new((1..=n).map(|i| tqft.slot(Some(i))).collect())
}

/// Change from `{1, X}` to the slot bases: `rows` for the codomain side.
fn onex_change<R: AlphaRing>(tqft: &Tqft<R>, space: &StateSpace, to_slot: bool) -> SparseMatrix<R::Elem> {
    let r = tqft.ring();
    let alg = tqft.algebra();
    let mats: Vec<_> = space
        .slots
        .iter()
        .map(|s| {
            let b = if tqft.variant() == Variant::AnnularZero {
                BasisConvention::OneX
            } else {
                s.basis
            };
            if to_slot {
                alg.from_one_x(b).expect("variant supports its bases")
            } else {
                alg.to_one_x(b).expect("variant supports its bases")
            }
        })
        .collect();
    let dim = space.rank();
    let mut out = SparseMatrix::zeros(dim, dim);
    for row in 0..dim {
        for col in 0..dim {
            let mut c = r.one();
            for (j, m) in mats.iter().enumerate() {
                c = r.mul(&c, &m[space.bit(row, j)][space.bit(col, j)]);
            }
            if !r.is_zero(&c) {
                out.set(r, row, col, c);
            }
        }
    }
    out
}

/// Image of a morphism under spinning followed by the annular TQFT:
/// components are evaluated by the planar maps, the result written in
/// the variant's bases and truncated to its adeg-preserving part.
pub fn spin_evaluate<R: AlphaRing>(f: &TlMorphism, tqft: &Tqft<R>) -> Result<LinearMap<R::Elem>, TlError> {
    let v = tqft.variant();
    if !matches!(v, Variant::AnnularAlpha | Variant::AnnularZero | Variant::AnnularD) {
        return Err(TlError::Variant(v));
    }
    let r = tqft.ring();
    let zero_alpha = v == Variant::AnnularZero;
    let lower = |p: &BivariatePoly| {
        if zero_alpha {
            r.from_bigint(&p.constant_term())
        } else {
            r.specialize(p)
        }
    };
    let local = Local::new();
    let mut generic: SparseMatrix<BivariatePoly> = SparseMatrix::zeros(1 << f.m, 1 << f.n);
    let mut max_dots = 0;
    for (t, c) in &f.terms {
        generic = generic.add(&AlphaPolys, &spin_generic(&local, t).scale(&AlphaPolys, c));
        max_dots = max_dots.max(t.dots.iter().sum::<u32>());
    }
    let onex = generic.map(r, lower);
    let domain = essential_space(tqft, f.n);
    let codomain = essential_space(tqft, f.m);
    let into = onex_change(tqft, &codomain, true);
    let from = onex_change(tqft, &domain, false);
    let full = LinearMap {
        matrix: into.mul(r, &onex.mul(r, &from)),
        domain,
        codomain,
        bidegree: (2 * max_dots as i32, 0),
    };
    Ok(full.adeg_part(0))
}

/// Rank and nullity over `Q` of the evaluations of all reduced `(n, m)`
/// tangles, each flattened to one row, in the alternating bases.
pub fn kernel_rank_experiment(n: usize, m: usize, ring: AlphaEval) -> Result<(usize, usize), TlError> {
    let tangles = enumerate_reduced(n, m)?;
    let tqft = Tqft::new(ring.clone(), Variant::AnnularAlpha)?;
    let maps = tangles
        .par_iter()
        .map(|t| spin_evaluate(&reduce(t), &tqft))
        .collect::<Result<Vec<_>, _>>()?;
    let width = (1usize << n) * (1usize << m);
    let mut stacked = SparseMatrix::zeros(tangles.len(), width);
    for (row, map) in maps.iter().enumerate() {
        for (r, c, v) in map.matrix.iter() {
            stacked.set(&ring, row, r * (1 << n) + c, v.clone());
        }
    }
    let k = rank(&ring, &stacked);
    Ok((k, tangles.len() - k))
}
