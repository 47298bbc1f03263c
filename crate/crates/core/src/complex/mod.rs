//! The cube of resolutions and the chain complex it assembles into.

use std::collections::HashMap;
use std::fmt::Write;

use rayon::prelude::*;

use crate::diagram::{AnnularDiagram, DiagramError, ResolvedDiagram, Smoothing};
use crate::matrix::SparseMatrix;
use crate::ring::{AlphaPolys, AlphaRing, BivariatePoly, QDeg, QGrading, Ring};
use crate::tqft::{classify_saddle, LinearMap, SaddleDescriptor, StateSpace, Tqft, TqftError, Variant};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComplexError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tqft(#[from] TqftError),
}

/// `s = (u_0 + ... + u_{i-1}) mod 2` for the edge changing coordinate `i`.
pub fn sign_exponent(u: &[u8], i: usize) -> u8 {
    u[..i].iter().fold(0, |s, &x| s ^ (x & 1))
}

/// Smoothings in binary order, the first crossing most significant.
pub fn smoothing_of(index: usize, n: usize) -> Smoothing {
    (0..n).map(|k| ((index >> (n - 1 - k)) & 1) as u8).collect()
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub smoothing: Smoothing,
    pub resolved: ResolvedDiagram,
    pub space: StateSpace,
}

#[derive(Debug, Clone)]
pub struct CubeEdge<E> {
    pub from: usize,
    pub to: usize,
    pub crossing: usize,
    pub sign_exponent: u8,
    pub saddle: SaddleDescriptor,
    pub map: LinearMap<E>,
    /// The adeg-raising part, kept only for the beta variant.
    pub raising: Option<LinearMap<E>>,
}

#[derive(Debug, Clone)]
pub struct Cube<E> {
    pub crossings: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<CubeEdge<E>>,
}

pub fn build_cube<R: AlphaRing>(d: &AnnularDiagram, tqft: &Tqft<R>) -> Result<Cube<R::Elem>, ComplexError> {
    let n = d.crossing_count();
    let vertices: Vec<Vertex> = (0..1usize << n)
        .into_par_iter()
        .map(|idx| {
            let smoothing = smoothing_of(idx, n);
            let resolved = d.resolve(&smoothing)?;
            let space = tqft.state_space(&resolved);
            Ok(Vertex {
                smoothing,
                resolved,
                space,
            })
        })
        .collect::<Result<_, DiagramError>>()?;
    let pairs: Vec<(usize, usize)> = (0..vertices.len())
        .flat_map(|idx| (0..n).filter(move |&k| (idx >> (n - 1 - k)) & 1 == 0).map(move |k| (idx, k)))
        .collect();
    let edges = pairs
        .into_par_iter()
        .map(|(from, k)| {
            let to = from | (1 << (n - 1 - k));
            let (a, b) = (&vertices[from], &vertices[to]);
            let saddle = classify_saddle(&a.resolved, &b.resolved, k)?;
            let (map, raising) = if tqft.variant() == Variant::Beta {
                let (d0, d2) = tqft.saddle_parts(&saddle, &a.space, &b.space)?;
                (d0, Some(d2))
            } else {
                (tqft.saddle(&saddle, &a.space, &b.space)?, None)
            };
            Ok(CubeEdge {
                from,
                to,
                crossing: k,
                sign_exponent: sign_exponent(&a.smoothing, k),
                saddle,
                map,
                raising,
            })
        })
        .collect::<Result<_, TqftError>>()?;
    Ok(Cube {
        crossings: n,
        vertices,
        edges,
    })
}

/// Every edge's full map must be exactly its adeg-0 part plus its adeg-2
/// part, and the adeg-0 part must be the map the cube uses. Returns the
/// number of edges checked (zero for the planar variant).
pub fn check_splitting<R: AlphaRing>(cube: &Cube<R::Elem>, tqft: &Tqft<R>) -> Result<usize, String> {
    if tqft.variant() == Variant::Planar {
        return Ok(0);
    }
    let r = tqft.ring();
    for e in &cube.edges {
        let (a, b) = (&cube.vertices[e.from].space, &cube.vertices[e.to].space);
        let full = tqft.full_saddle(&e.saddle, a, b).map_err(|err| err.to_string())?;
        let (d0, d2) = full.split().map_err(|err| format!("edge {:?}: {err}", cube.vertices[e.from].smoothing))?;
        let here = |msg: &str| format!("edge {:?} -> {:?}: {msg}", cube.vertices[e.from].smoothing, cube.vertices[e.to].smoothing);
        if d0.matrix.add(r, &d2.matrix) != full.matrix {
            return Err(here("parts do not sum to the full map"));
        }
        let used = if tqft.variant() == Variant::AnnularZero && !(r.is_zero(&r.alpha0()) && r.is_zero(&r.alpha1())) {
            None
        } else {
            Some(&e.map)
        };
        if used.is_some_and(|m| m.matrix != d0.matrix) {
            return Err(here("the cube map is not the adeg-0 part"));
        }
        if e.raising.as_ref().is_some_and(|m| m.matrix != d2.matrix) {
            return Err(here("the raising map is not the adeg-2 part"));
        }
    }
    Ok(cube.edges.len())
}

/// Truncation commutes with composition along every path of length two.
/// Returns the number of pairs checked.
pub fn check_functoriality<R: AlphaRing>(cube: &Cube<R::Elem>, tqft: &Tqft<R>) -> Result<usize, String> {
    if tqft.variant() == Variant::Planar {
        return Ok(0);
    }
    let r = tqft.ring();
    let mut fulls = Vec::with_capacity(cube.edges.len());
    for e in &cube.edges {
        let (a, b) = (&cube.vertices[e.from].space, &cube.vertices[e.to].space);
        fulls.push(tqft.full_saddle(&e.saddle, a, b).map_err(|err| err.to_string())?);
    }
    let mut count = 0;
    for (i, first) in cube.edges.iter().enumerate() {
        for (j, second) in cube.edges.iter().enumerate() {
            if second.from != first.to {
                continue;
            }
            let whole = fulls[i].then(r, &fulls[j]).map_err(|err| err.to_string())?.adeg_part(0);
            let parts = fulls[i].adeg_part(0).then(r, &fulls[j].adeg_part(0)).map_err(|err| err.to_string())?;
            if whole.matrix != parts.matrix {
                return Err(format!(
                    "{:?} -> {:?} -> {:?}",
                    cube.vertices[first.from].smoothing, cube.vertices[first.to].smoothing, cube.vertices[second.to].smoothing
                ));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// A basis element of a chain group, with its shifted bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    pub word: usize,
    pub q: i32,
    pub a: i32,
}

/// Where a nonzero entry of `d o d` sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Degree of the source group.
    pub degree: i32,
    pub from: (Smoothing, String),
    pub to: (Smoothing, String),
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingViolation {
    pub degree: i32,
    pub from: Generator,
    pub to: Generator,
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct ChainComplex<R: Ring> {
    pub ring: R,
    pub variant: Variant,
    pub n_plus: usize,
    pub n_minus: usize,
    pub vertices: Vec<Vertex>,
    /// `groups[k]` sits in homological degree `k - n_minus`.
    pub groups: Vec<Vec<Generator>>,
    /// `differentials[k]` maps `groups[k]` to `groups[k + 1]`.
    pub differentials: Vec<SparseMatrix<R::Elem>>,
    /// The adeg-raising part of the beta differential.
    pub raising: Option<Vec<SparseMatrix<R::Elem>>>,
}

/// Build the cube and assemble it with the diagram's own orientation.
pub fn build_complex<R: AlphaRing>(d: &AnnularDiagram, tqft: &Tqft<R>) -> Result<ChainComplex<R>, ComplexError> {
    let cube = build_cube(d, tqft)?;
    let (n_plus, n_minus) = d.sign_counts();
    Ok(assemble(tqft.ring().clone(), tqft.variant(), cube, n_plus, n_minus))
}

pub fn assemble<R: Ring>(ring: R, variant: Variant, cube: Cube<R::Elem>, n_plus: usize, n_minus: usize) -> ChainComplex<R> {
    let n = cube.crossings;
    let mut groups: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
    let mut position: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, vert) in cube.vertices.iter().enumerate() {
        let h = vert.smoothing.iter().filter(|&&x| x == 1).count();
        let i = h as i32 - n_minus as i32;
        for word in 0..vert.space.rank() {
            let (q, a) = vert.space.bidegree(word);
            position.insert((v, word), groups[h].len());
            groups[h].push(Generator {
                vertex: v,
                word,
                q: q + n_minus as i32 - n_plus as i32 - i,
                a,
            });
        }
    }
    let mut differentials: Vec<SparseMatrix<R::Elem>> =
        (0..n).map(|h| SparseMatrix::zeros(groups[h + 1].len(), groups[h].len())).collect();
    let mut raising: Option<Vec<SparseMatrix<R::Elem>>> = (variant == Variant::Beta).then(|| differentials.clone());
    for e in &cube.edges {
        let h = cube.vertices[e.from].smoothing.iter().filter(|&&x| x == 1).count();
        let place = |target: &mut SparseMatrix<R::Elem>, m: &LinearMap<R::Elem>| {
            for (t, w, c) in m.matrix.iter() {
                let c = if e.sign_exponent == 1 { ring.neg(c) } else { c.clone() };
                target.add_to(&ring, position[&(e.to, t)], position[&(e.from, w)], &c);
            }
        };
        place(&mut differentials[h], &e.map);
        if let (Some(r), Some(m)) = (raising.as_mut(), e.raising.as_ref()) {
            place(&mut r[h], m);
        }
    }
    ChainComplex {
        ring,
        variant,
        n_plus,
        n_minus,
        vertices: cube.vertices,
        groups,
        differentials,
        raising,
    }
}

fn first_nonzero_product<R: Ring>(
    ring: &R,
    pairs: &[(&SparseMatrix<R::Elem>, &SparseMatrix<R::Elem>)],
) -> Option<(usize, usize, R::Elem)> {
    let rows = pairs[0].1.rows();
    let cols = pairs[0].0.cols();
    let mut sum = SparseMatrix::zeros(rows, cols);
    for (first, second) in pairs {
        sum = sum.add(ring, &second.mul(ring, first));
    }
    let first = sum.iter().next().map(|(r, c, v)| (r, c, v.clone()));
    first
}

impl<R: Ring> ChainComplex<R> {
    pub fn min_degree(&self) -> i32 {
        -(self.n_minus as i32)
    }

    pub fn max_degree(&self) -> i32 {
        self.groups.len() as i32 - 1 - self.n_minus as i32
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree()..=self.max_degree()
    }

    fn slot(&self, i: i32) -> Option<usize> {
        let k = i + self.n_minus as i32;
        (k >= 0 && (k as usize) < self.groups.len()).then_some(k as usize)
    }

    pub fn group(&self, i: i32) -> &[Generator] {
        self.slot(i).map(|k| self.groups[k].as_slice()).unwrap_or(&[])
    }

    /// `d^i : C^i -> C^{i+1}`, if both groups exist.
    pub fn differential(&self, i: i32) -> Option<&SparseMatrix<R::Elem>> {
        self.slot(i).and_then(|k| self.differentials.get(k))
    }

    pub fn rank(&self, i: i32) -> usize {
        self.group(i).len()
    }

    pub fn generator_label(&self, g: &Generator) -> (Smoothing, String) {
        let v = &self.vertices[g.vertex];
        (v.smoothing.clone(), v.space.label(g.word))
    }

    fn counterexample(&self, k: usize, found: Option<(usize, usize, R::Elem)>) -> Result<(), Counterexample> {
        match found {
            None => Ok(()),
            Some((r, c, v)) => Err(Counterexample {
                degree: k as i32 - self.n_minus as i32,
                from: self.generator_label(&self.groups[k][c]),
                to: self.generator_label(&self.groups[k + 2][r]),
                value: self.ring.format(&v),
            }),
        }
    }

    /// `d^{i+1} d^i = 0` for all `i`, or the first nonzero entry.
    pub fn verify_d_squared(&self) -> Result<(), Counterexample> {
        for k in 0..self.differentials.len().saturating_sub(1) {
            let found = first_nonzero_product(&self.ring, &[(&self.differentials[k], &self.differentials[k + 1])]);
            self.counterexample(k, found)?;
        }
        Ok(())
    }

    /// For the beta variant: `d0 d0`, `d0 d2 + d2 d0` and `d2 d2` all vanish.
    pub fn verify_beta(&self) -> Result<(), (&'static str, Counterexample)> {
        let Some(raising) = &self.raising else {
            return Ok(());
        };
        let d = &self.differentials;
        for k in 0..d.len().saturating_sub(1) {
            let checks: [(&'static str, Vec<(&SparseMatrix<R::Elem>, &SparseMatrix<R::Elem>)>); 3] = [
                ("d0 d0", vec![(&d[k], &d[k + 1])]),
                ("d0 d2 + d2 d0", vec![(&d[k], &raising[k + 1]), (&raising[k], &d[k + 1])]),
                ("d2 d2", vec![(&raising[k], &raising[k + 1])]),
            ];
            for (name, pairs) in checks {
                let found = first_nonzero_product(&self.ring, &pairs);
                self.counterexample(k, found).map_err(|c| (name, c))?;
            }
        }
        Ok(())
    }

    /// Every entry of `d` must be bidegree-preserving after shifts:
    /// `q(source) = q(target) + qdeg(entry)`, `a(source) = a(target)`.
    /// The adeg-raising beta part must raise adeg by exactly 2.
    pub fn check_grading(&self) -> Result<(), GradingViolation> {
        let graded = self.ring.q_grading() != QGrading::Ungraded;
        let planar = self.variant == Variant::Planar;
        let check = |k: usize, m: &SparseMatrix<R::Elem>, adeg_shift: i32| -> Result<(), GradingViolation> {
            for (r, c, v) in m.iter() {
                let from = self.groups[k][c];
                let to = self.groups[k + 1][r];
                let q_ok = !graded || matches!(self.ring.qdeg(v), QDeg::Homogeneous(e) if from.q == to.q + e);
                let a_ok = planar || to.a - from.a == adeg_shift;
                if !q_ok || !a_ok {
                    return Err(GradingViolation {
                        degree: k as i32 - self.n_minus as i32,
                        from,
                        to,
                        value: self.ring.format(v),
                    });
                }
            }
            Ok(())
        };
        for (k, m) in self.differentials.iter().enumerate() {
            check(k, m, 0)?;
        }
        if let Some(raising) = &self.raising {
            for (k, m) in raising.iter().enumerate() {
                check(k, m, 2)?;
            }
        }
        Ok(())
    }

    /// Text dump: per degree a `deg i rank r` header, then `row col value`
    /// triplets of the outgoing differential.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, g) in self.groups.iter().enumerate() {
            let i = k as i32 - self.n_minus as i32;
            let _ = writeln!(s, "deg {i} rank {}", g.len());
            if let Some(d) = self.differentials.get(k) {
                s.push_str(&d.triplets(&self.ring));
            }
        }
        s
    }
}

impl ChainComplex<AlphaPolys> {
    /// Entrywise image under `Z[a0, a1] -> target`.
    pub fn specialize<S: AlphaRing>(&self, target: S) -> ChainComplex<S> {
        let f = |p: &BivariatePoly| target.specialize(p);
        ChainComplex {
            variant: self.variant,
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            vertices: self.vertices.clone(),
            groups: self.groups.clone(),
            differentials: self.differentials.iter().map(|m| m.map(&target, f)).collect(),
            raising: self
                .raising
                .as_ref()
                .map(|r| r.iter().map(|m| m.map(&target, f)).collect()),
            ring: target,
        }
    }
}
