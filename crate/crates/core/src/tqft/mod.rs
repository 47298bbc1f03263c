//! State spaces and saddle maps.
//!
//! The full theory is computed from the Frobenius structure maps in the
//! bases attached to each circle; annular functors keep the part of each
//! map that preserves the annular degree. The `alpha = 0` functor is also
//! available from its closed-form tables, and the localized functor from
//! the uniform `a`/`b` rules, so the computed route can be checked against
//! both.

use std::fmt;
use std::str::FromStr;

use crate::diagram::ResolvedDiagram;
use crate::frobenius::{AlgebraElement, BasisConvention, FrobeniusAlgebra, FrobeniusError};
use crate::matrix::SparseMatrix;
use crate::ring::{AlphaRing, CoefficientRing, QDeg, QGrading, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// The full equivariant theory on the plane; every circle uses `{1, X}`.
    Planar,
    AnnularAlpha,
    /// The `alpha = 0` annular functor, from its closed-form tables.
    AnnularZero,
    /// `a0 -> 0`, `a1 -> h`; requires the `qh` ring.
    AnnularH,
    /// Localized at `a1 - a0`, in the idempotent bases.
    AnnularD,
    /// Full maps in annular bases, kept as (adeg-preserving, adeg-raising) pairs.
    Beta,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Planar,
        Variant::AnnularAlpha,
        Variant::AnnularZero,
        Variant::AnnularH,
        Variant::AnnularD,
        Variant::Beta,
    ];

    /// Whether the differential preserves the annular degree.
    pub fn is_annular(self) -> bool {
        !matches!(self, Variant::Planar | Variant::Beta)
    }

    /// Basis used on a circle.
    pub fn basis(self, essential_index: Option<usize>) -> BasisConvention {
        match (self, essential_index) {
            (Variant::Planar, _) => BasisConvention::OneX,
            (Variant::AnnularD, None) => BasisConvention::E,
            (Variant::AnnularD, Some(i)) if i % 2 == 1 => BasisConvention::VBar,
            (Variant::AnnularD, Some(_)) => BasisConvention::VBarPrime,
            (_, None) => BasisConvention::OneX,
            (_, Some(i)) if i % 2 == 1 => BasisConvention::V,
            (_, Some(_)) => BasisConvention::VPrime,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::Planar => "PLANAR",
            Variant::AnnularAlpha => "ANNULAR_ALPHA",
            Variant::AnnularZero => "ANNULAR_ZERO",
            Variant::AnnularH => "ANNULAR_H",
            Variant::AnnularD => "ANNULAR_D",
            Variant::Beta => "BETA",
        };
        f.write_str(s)
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v = match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "planar" | "generic" => Variant::Planar,
            "annular-alpha" | "alpha" => Variant::AnnularAlpha,
            "annular-zero" | "zero" => Variant::AnnularZero,
            "annular-h" | "h" => Variant::AnnularH,
            "annular-d" | "d" => Variant::AnnularD,
            "beta" => Variant::Beta,
            _ => return Err(format!("unknown variant `{s}`")),
        };
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TqftError {
    #[error("variant {variant} cannot be used over {ring}: {reason}")]
    VariantRingMismatch {
        variant: Variant,
        ring: String,
        reason: String,
    },
    #[error("not a cube edge: {0}")]
    NotACubeEdge(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map does not split into adeg shifts 0 and 2: entry ({row}, {col}) shifts adeg by {shift}")]
    SplittingViolation { row: usize, col: usize, shift: i32 },
    #[error(transparent)]
    Basis(#[from] FrobeniusError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub essential_index: Option<usize>,
    pub basis: BasisConvention,
}

impl Slot {
    pub fn essential(&self) -> bool {
        self.essential_index.is_some()
    }

    pub fn bidegree(&self, bit: usize) -> (i32, i32) {
        self.basis.bidegree(bit, self.essential())
    }
}

/// Tensor product over the circles of a resolution, one slot per circle.
/// Basis words are bit strings, the first slot most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSpace {
    pub slots: Vec<Slot>,
}

impl StateSpace {
    pub fn new(slots: Vec<Slot>) -> Self {
        Self { slots }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn rank(&self) -> usize {
        1 << self.slots.len()
    }

    pub fn bit(&self, word: usize, slot: usize) -> usize {
        (word >> (self.slots.len() - 1 - slot)) & 1
    }

    pub fn with_bit(&self, word: usize, slot: usize, b: usize) -> usize {
        let shift = self.slots.len() - 1 - slot;
        (word & !(1 << shift)) | (b << shift)
    }

    pub fn bidegree(&self, word: usize) -> (i32, i32) {
        let mut q = 0;
        let mut a = 0;
        for (j, s) in self.slots.iter().enumerate() {
            let (dq, da) = s.bidegree(self.bit(word, j));
            q += dq;
            a += da;
        }
        (q, a)
    }

    pub fn label(&self, word: usize) -> String {
        if self.slots.is_empty() {
            return "1".into();
        }
        let parts: Vec<&str> = self
            .slots
            .iter()
            .enumerate()
            .map(|(j, s)| s.basis.label(self.bit(word, j)))
            .collect();
        parts.join("|")
    }

    /// Basis word with the given per-slot labels (`"v0|X"` style).
    pub fn word_of(&self, label: &str) -> Option<usize> {
        (0..self.rank()).find(|&w| self.label(w) == label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SaddleKind {
    MergeTT,
    SplitT,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
}

impl SaddleKind {
    pub const ALL: [SaddleKind; 6] = [
        SaddleKind::MergeTT,
        SaddleKind::SplitT,
        SaddleKind::TypeI,
        SaddleKind::TypeII,
        SaddleKind::TypeIII,
        SaddleKind::TypeIV,
    ];

    pub fn is_merge(self) -> bool {
        matches!(self, SaddleKind::MergeTT | SaddleKind::TypeI | SaddleKind::TypeII)
    }
}

impl fmt::Display for SaddleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SaddleKind::MergeTT => "MERGE_TT",
            SaddleKind::SplitT => "SPLIT_T",
            SaddleKind::TypeI => "TYPE_I",
            SaddleKind::TypeII => "TYPE_II",
            SaddleKind::TypeIII => "TYPE_III",
            SaddleKind::TypeIV => "TYPE_IV",
        };
        f.write_str(s)
    }
}

/// A saddle between two resolutions. Circle indices refer to the slot
/// order of the respective state spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaddleDescriptor {
    pub kind: SaddleKind,
    pub crossing: usize,
    pub from_circles: Vec<usize>,
    pub to_circles: Vec<usize>,
    /// Uninvolved circles: (domain index, codomain index).
    pub bijection: Vec<(usize, usize)>,
}

/// Match circles across the saddle at `crossing`. The circles away from the
/// crossing keep their edge sets exactly.
pub fn classify_saddle(
    from: &ResolvedDiagram,
    to: &ResolvedDiagram,
    crossing: usize,
) -> Result<SaddleDescriptor, TqftError> {
    let (u, v) = (&from.smoothing, &to.smoothing);
    if u.len() != v.len() || crossing >= u.len() {
        return Err(TqftError::NotACubeEdge(format!("crossing {crossing} out of range")));
    }
    let differs: Vec<usize> = (0..u.len()).filter(|&k| u[k] != v[k]).collect();
    if differs != [crossing] || u[crossing] != 0 {
        return Err(TqftError::NotACubeEdge(format!(
            "smoothings {u:?} -> {v:?} do not change crossing {crossing} from 0 to 1"
        )));
    }
    let mut bijection = Vec::new();
    let mut matched_to = vec![false; to.circles.len()];
    let mut from_circles = Vec::new();
    for (i, c) in from.circles.iter().enumerate() {
        match to.circles.iter().position(|d| d.edges == c.edges) {
            Some(j) => {
                bijection.push((i, j));
                matched_to[j] = true;
            }
            None => from_circles.push(i),
        }
    }
    let to_circles: Vec<usize> = (0..to.circles.len()).filter(|&j| !matched_to[j]).collect();
    let ess = |rd: &ResolvedDiagram, idx: &[usize]| idx.iter().filter(|&&i| rd.circles[i].essential()).count();
    let (ef, et) = (ess(from, &from_circles), ess(to, &to_circles));
    let kind = match (from_circles.len(), to_circles.len(), ef, et) {
        (2, 1, 0, 0) => SaddleKind::MergeTT,
        (1, 2, 0, 0) => SaddleKind::SplitT,
        (2, 1, 1, 1) => SaddleKind::TypeI,
        (2, 1, 2, 0) => SaddleKind::TypeII,
        (1, 2, 1, 1) => SaddleKind::TypeIII,
        (1, 2, 0, 2) => SaddleKind::TypeIV,
        other => {
            return Err(TqftError::NotACubeEdge(format!(
                "involved circles (from, to, essential from, essential to) = {other:?}"
            )))
        }
    };
    Ok(SaddleDescriptor {
        kind,
        crossing,
        from_circles,
        to_circles,
        bijection,
    })
}

/// A matrix between state spaces. Rows index codomain words.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<E> {
    pub domain: StateSpace,
    pub codomain: StateSpace,
    pub matrix: SparseMatrix<E>,
    /// (qdeg, adeg) on unshifted state spaces.
    pub bidegree: (i32, i32),
}

impl<E: Clone + PartialEq> LinearMap<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, space: &StateSpace) -> Self {
        Self {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: SparseMatrix::identity(ring, space.rank()),
            bidegree: (0, 0),
        }
    }

    /// `then ∘ self`.
    pub fn then<R: Ring<Elem = E>>(&self, ring: &R, then: &Self) -> Result<Self, TqftError> {
        if self.codomain != then.domain {
            return Err(TqftError::ShapeMismatch(format!(
                "codomain with {} slots does not match domain with {} slots",
                self.codomain.len(),
                then.domain.len()
            )));
        }
        Ok(Self {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            matrix: then.matrix.mul(ring, &self.matrix),
            bidegree: (self.bidegree.0 + then.bidegree.0, self.bidegree.1 + then.bidegree.1),
        })
    }

    /// Annular degree shift of an entry.
    pub fn adeg_shift(&self, row: usize, col: usize) -> i32 {
        self.codomain.bidegree(row).1 - self.domain.bidegree(col).1
    }

    /// The entries shifting adeg by exactly `shift`.
    pub fn adeg_part(&self, shift: i32) -> Self {
        Self {
            matrix: self.matrix.filter(|r, c, _| self.adeg_shift(r, c) == shift),
            bidegree: (self.bidegree.0, shift),
            ..self.clone()
        }
    }

    /// Split into the adeg-preserving and adeg-raising-by-2 parts.
    pub fn split(&self) -> Result<(Self, Self), TqftError> {
        for (r, c, _) in self.matrix.iter() {
            let shift = self.adeg_shift(r, c);
            if shift != 0 && shift != 2 {
                return Err(TqftError::SplittingViolation { row: r, col: c, shift });
            }
        }
        Ok((self.adeg_part(0), self.adeg_part(2)))
    }

    pub fn map_ring<S: Ring, F: Fn(&E) -> S::Elem>(&self, target: &S, f: F) -> LinearMap<S::Elem> {
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.map(target, f),
            bidegree: self.bidegree,
        }
    }

    /// Entry by basis labels, zero when absent.
    pub fn entry<R: Ring<Elem = E>>(&self, ring: &R, to: &str, from: &str) -> E {
        let r = self.codomain.word_of(to).unwrap_or_else(|| panic!("no codomain word {to}"));
        let c = self.domain.word_of(from).unwrap_or_else(|| panic!("no domain word {from}"));
        self.matrix.get(r, c).cloned().unwrap_or_else(|| ring.zero())
    }

    /// First entry violating the declared bidegree, as (row, col).
    pub fn check_grading<R: Ring<Elem = E>>(&self, ring: &R) -> Option<(usize, usize)> {
        let graded = ring.q_grading() != QGrading::Ungraded;
        for (r, c, v) in self.matrix.iter() {
            let (qs, as_) = self.domain.bidegree(c);
            let (qt, at) = self.codomain.bidegree(r);
            if at - as_ != self.bidegree.1 {
                return Some((r, c));
            }
            if graded {
                match ring.qdeg(v) {
                    QDeg::Homogeneous(k) if qs + self.bidegree.0 == qt + k => {}
                    _ => return Some((r, c)),
                }
            }
        }
        None
    }

    pub fn triplets<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        self.matrix.triplets(ring)
    }
}

/// State spaces and maps of one variant over one ring.
#[derive(Debug, Clone)]
pub struct Tqft<R: AlphaRing> {
    alg: FrobeniusAlgebra<R>,
    variant: Variant,
}

impl<R: AlphaRing> Tqft<R> {
    pub fn new(ring: R, variant: Variant) -> Result<Self, TqftError> {
        let alg = FrobeniusAlgebra::new(ring);
        let mismatch = |reason: &str| TqftError::VariantRingMismatch {
            variant,
            ring: alg.ring().descriptor().to_string(),
            reason: reason.into(),
        };
        match variant {
            Variant::AnnularD if !alg.supports(BasisConvention::E) => {
                return Err(mismatch("a1 - a0 must be invertible"))
            }
            Variant::AnnularH if alg.ring().descriptor() != CoefficientRing::RatPolyH => {
                return Err(mismatch("the h-specialization is defined over qh"))
            }
            _ => {}
        }
        Ok(Self { alg, variant })
    }

    pub fn ring(&self) -> &R {
        self.alg.ring()
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra<R> {
        &self.alg
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn state_space(&self, rd: &ResolvedDiagram) -> StateSpace {
        StateSpace::new(
            rd.circles
                .iter()
                .map(|c| self.slot(c.essential_index))
                .collect(),
        )
    }

    pub fn slot(&self, essential_index: Option<usize>) -> Slot {
        Slot {
            essential_index,
            basis: self.variant.basis(essential_index),
        }
    }

    /// The map this variant assigns to a saddle. For [`Variant::Beta`] this
    /// is the adeg-preserving part; see [`Tqft::saddle_parts`].
    pub fn saddle(&self, s: &SaddleDescriptor, from: &StateSpace, to: &StateSpace) -> Result<LinearMap<R::Elem>, TqftError> {
        match self.variant {
            Variant::Planar => self.full_saddle(s, from, to),
            Variant::AnnularZero => self.zero_table_saddle(s, from, to),
            _ => Ok(self.full_saddle(s, from, to)?.adeg_part(0)),
        }
    }

    /// The adeg-preserving and adeg-raising parts of the full map.
    pub fn saddle_parts(
        &self,
        s: &SaddleDescriptor,
        from: &StateSpace,
        to: &StateSpace,
    ) -> Result<(LinearMap<R::Elem>, LinearMap<R::Elem>), TqftError> {
        self.full_saddle(s, from, to)?.split()
    }

    /// The full planar map, written in the bases of the given state spaces.
    pub fn full_saddle(&self, s: &SaddleDescriptor, from: &StateSpace, to: &StateSpace) -> Result<LinearMap<R::Elem>, TqftError> {
        let r = self.ring();
        let fb: Vec<BasisConvention> = s.from_circles.iter().map(|&i| from.slots[i].basis).collect();
        let tb: Vec<BasisConvention> = s.to_circles.iter().map(|&i| to.slots[i].basis).collect();
        let basis_elem = |b: BasisConvention, k: usize| {
            if k == 0 {
                AlgebraElement::new(b, r.one(), r.zero())
            } else {
                AlgebraElement::new(b, r.zero(), r.one())
            }
        };
        let mut local: Vec<Vec<(usize, R::Elem)>> = Vec::new();
        if s.kind.is_merge() {
            for x in 0..4 {
                let p = self.alg.mult(&basis_elem(fb[0], x >> 1), &basis_elem(fb[1], x & 1));
                let p = self.alg.convert(&p, tb[0])?;
                local.push(p.coords.iter().cloned().enumerate().collect());
            }
        } else {
            for x in 0..2 {
                let t = self.alg.comult(&basis_elem(fb[0], x));
                let t = self.alg.convert_tensor(&t, [tb[0], tb[1]])?;
                let mut out = Vec::new();
                for i in 0..2 {
                    for j in 0..2 {
                        out.push((2 * i + j, t.coeffs[i][j].clone()));
                    }
                }
                local.push(out);
            }
        }
        self.assemble(s, from, to, |x| local[x].clone())
    }

    /// Lift a local map on the involved circles to the full state spaces.
    fn assemble<F>(&self, s: &SaddleDescriptor, from: &StateSpace, to: &StateSpace, local: F) -> Result<LinearMap<R::Elem>, TqftError>
    where
        F: Fn(usize) -> Vec<(usize, R::Elem)>,
    {
        let r = self.ring();
        for &(i, j) in &s.bijection {
            if from.slots[i].basis != to.slots[j].basis {
                return Err(TqftError::ShapeMismatch(format!(
                    "uninvolved circle changes basis from {} to {}",
                    from.slots[i].basis, to.slots[j].basis
                )));
            }
        }
        let mut m = SparseMatrix::zeros(to.rank(), from.rank());
        for w in 0..from.rank() {
            let mut x = 0;
            for &i in &s.from_circles {
                x = 2 * x + from.bit(w, i);
            }
            let mut base = 0;
            for &(i, j) in &s.bijection {
                base = to.with_bit(base, j, from.bit(w, i));
            }
            for (y, c) in local(x) {
                let mut t = base;
                let k = s.to_circles.len();
                for (pos, &j) in s.to_circles.iter().enumerate() {
                    t = to.with_bit(t, j, (y >> (k - 1 - pos)) & 1);
                }
                m.add_to(r, t, w, &c);
            }
        }
        Ok(LinearMap {
            domain: from.clone(),
            codomain: to.clone(),
            matrix: m,
            bidegree: (1, 0),
        })
    }

    /// The closed-form `alpha = 0` maps. Coefficients are integers, so the
    /// tables make sense over any ring.
    pub fn zero_table_saddle(&self, s: &SaddleDescriptor, from: &StateSpace, to: &StateSpace) -> Result<LinearMap<R::Elem>, TqftError> {
        let one = self.ring().one();
        let essential_first_from = s.from_circles.first().is_some_and(|&i| from.slots[i].essential());
        let essential_first_to = s.to_circles.first().is_some_and(|&j| to.slots[j].essential());
        let kind = s.kind;
        let local = |x: usize| -> Vec<(usize, R::Elem)> {
            let o = one.clone();
            match kind {
                // 1.1 = 1, 1.X = X.1 = X, X.X = 0
                SaddleKind::MergeTT => match x {
                    0 => vec![(0, o)],
                    1 | 2 => vec![(1, o)],
                    _ => vec![],
                },
                // 1 -> X|1 + 1|X, X -> X|X
                SaddleKind::SplitT => match x {
                    0 => vec![(2, o.clone()), (1, o)],
                    _ => vec![(3, o)],
                },
                // v|1 -> v, v|X -> 0
                SaddleKind::TypeI => {
                    let (v, t) = if essential_first_from { (x >> 1, x & 1) } else { (x & 1, x >> 1) };
                    if t == 0 {
                        vec![(v, o)]
                    } else {
                        vec![]
                    }
                }
                // v1|v0, v0|v1 -> X; others -> 0
                SaddleKind::TypeII => match x {
                    1 | 2 => vec![(1, o)],
                    _ => vec![],
                },
                // v -> v|X
                SaddleKind::TypeIII => {
                    if essential_first_to {
                        vec![(2 * x + 1, o)]
                    } else {
                        vec![(2 + x, o)]
                    }
                }
                // 1 -> v0|v1 + v1|v0, X -> 0
                SaddleKind::TypeIV => match x {
                    0 => vec![(1, o.clone()), (2, o)],
                    _ => vec![],
                },
            }
        };
        self.assemble(s, from, to, local)
    }

    /// The localized maps from the uniform `a`/`b` rules: `a a -> a`,
    /// `b b -> b`, mixed products vanish, `a -> (a1 - a0) a|a`,
    /// `b -> (a0 - a1) b|b`.
    pub fn ab_rule_saddle(&self, s: &SaddleDescriptor, from: &StateSpace, to: &StateSpace) -> Result<LinearMap<R::Elem>, TqftError> {
        let r = self.ring();
        let d = r.sub(self.alg.alpha1(), self.alg.alpha0());
        let nd = r.neg(&d);
        let fb: Vec<BasisConvention> = s.from_circles.iter().map(|&i| from.slots[i].basis).collect();
        let tb: Vec<BasisConvention> = s.to_circles.iter().map(|&j| to.slots[j].basis).collect();
        for b in fb.iter().chain(&tb) {
            if !matches!(b, BasisConvention::E | BasisConvention::VBar | BasisConvention::VBarPrime) {
                return Err(TqftError::ShapeMismatch(format!("a/b labels need localized bases, got {b}")));
            }
        }
        let local = |x: usize| -> Vec<(usize, R::Elem)> {
            if s.kind.is_merge() {
                let la = ab_label(fb[0], x >> 1);
                let lb = ab_label(fb[1], x & 1);
                if la != lb {
                    return vec![];
                }
                vec![(ab_bit(tb[0], la), r.one())]
            } else {
                let l = ab_label(fb[0], x);
                let y = 2 * ab_bit(tb[0], l) + ab_bit(tb[1], l);
                vec![(y, if l { nd.clone() } else { d.clone() })]
            }
        };
        self.assemble(s, from, to, local)
    }

    /// Multiplication by `X^dots` on one slot, truncated as the variant requires.
    pub fn dotted_identity(&self, space: &StateSpace, slot: usize, dots: u32) -> Result<LinearMap<R::Elem>, TqftError> {
        if slot >= space.len() {
            return Err(TqftError::ShapeMismatch(format!("slot {slot} out of range")));
        }
        let r = self.ring();
        let basis = space.slots[slot].basis;
        let mut local: Vec<Vec<(usize, R::Elem)>> = Vec::new();
        if self.variant == Variant::AnnularZero {
            // X^d on A_0 = Z[X]/(X^2); essential circles get the zero map.
            for k in 0..2 {
                let v = if space.slots[slot].essential() || dots >= 2 || (dots == 1 && k == 1) {
                    vec![]
                } else if dots == 1 {
                    vec![(1, r.one())]
                } else {
                    vec![(k, r.one())]
                };
                local.push(v);
            }
        } else {
            let xd = self.alg.x_power(dots);
            for k in 0..2 {
                let e = if k == 0 {
                    AlgebraElement::new(basis, r.one(), r.zero())
                } else {
                    AlgebraElement::new(basis, r.zero(), r.one())
                };
                let p = self.alg.convert(&self.alg.mult(&xd, &e), basis)?;
                local.push(p.coords.iter().cloned().enumerate().collect());
            }
        }
        let mut m = SparseMatrix::zeros(space.rank(), space.rank());
        for w in 0..space.rank() {
            for (y, c) in &local[space.bit(w, slot)] {
                m.add_to(r, space.with_bit(w, slot, *y), w, c);
            }
        }
        let map = LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: m,
            bidegree: (2 * dots as i32, 0),
        };
        Ok(match self.variant {
            Variant::Planar => map,
            _ => map.adeg_part(0),
        })
    }

    /// Minimal state spaces and descriptor for an elementary saddle, with
    /// the circles in the order `essential (x) trivial` and, for two
    /// essential circles, indices `first_index` and `first_index + 1`.
    pub fn elementary(&self, kind: SaddleKind, first_index: usize) -> (StateSpace, StateSpace, SaddleDescriptor) {
        let e = |i: usize| self.slot(Some(i));
        let t = || self.slot(None);
        let (from, to) = match kind {
            SaddleKind::MergeTT => (vec![t(), t()], vec![t()]),
            SaddleKind::SplitT => (vec![t()], vec![t(), t()]),
            SaddleKind::TypeI => (vec![e(first_index), t()], vec![e(first_index)]),
            SaddleKind::TypeII => (vec![e(first_index), e(first_index + 1)], vec![t()]),
            SaddleKind::TypeIII => (vec![e(first_index)], vec![e(first_index), t()]),
            SaddleKind::TypeIV => (vec![t()], vec![e(first_index), e(first_index + 1)]),
        };
        let desc = SaddleDescriptor {
            kind,
            crossing: 0,
            from_circles: (0..from.len()).collect(),
            to_circles: (0..to.len()).collect(),
            bijection: vec![],
        };
        (StateSpace::new(from), StateSpace::new(to), desc)
    }
}

/// `true` for `b`, `false` for `a`.
fn ab_label(basis: BasisConvention, bit: usize) -> bool {
    match basis {
        BasisConvention::VBar => bit == 0,
        _ => bit == 1,
    }
}

/// The basis bit carrying the `a` (`false`) or `b` (`true`) label.
pub fn ab_bit(basis: BasisConvention, label: bool) -> usize {
    match basis {
        BasisConvention::VBar => usize::from(!label),
        _ => usize::from(label),
    }
}
