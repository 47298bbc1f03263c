//! Exact coefficient rings.
//!
//! Rings are modelled as context objects in the style of `feanor-math`: a
//! value implementing [`Ring`] knows how to add, multiply and print its
//! element type. The equivariant ground ring `Z[a0, a1]` is [`AlphaPolys`];
//! every other ring is a specialization of it (see [`AlphaRing::specialize`]).

mod bivariate;
mod qpoly;
mod rings;

use std::fmt::{self, Debug};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use bivariate::BivariatePoly;
pub use qpoly::QPoly;
pub use rings::{AlphaEval, AlphaPolys, Integers, PrimeField, RatPolyH, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation not supported over {0}")]
    UnsupportedRing(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse ring descriptor `{0}`")]
    Parse(String),
}

/// Quantum degree of a ring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QDeg {
    /// The zero element, homogeneous of every degree.
    Bottom,
    Homogeneous(i32),
    Inhomogeneous,
}

impl QDeg {
    pub fn value(self) -> Option<i32> {
        match self {
            QDeg::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn add(self, other: QDeg) -> QDeg {
        match (self, other) {
            (QDeg::Bottom, _) | (_, QDeg::Bottom) => QDeg::Bottom,
            (QDeg::Homogeneous(a), QDeg::Homogeneous(b)) => QDeg::Homogeneous(a + b),
            _ => QDeg::Inhomogeneous,
        }
    }
}

/// How the quantum grading survives in a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QGrading {
    /// Every nonzero element has qdeg 0; chain groups split by qdeg.
    Concentrated,
    /// Homogeneous elements of several degrees (polynomial rings).
    Graded,
    /// The specialization destroyed the grading (nonzero numeric alphas).
    Ungraded,
}

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse if `a` is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn qdeg(&self, a: &Self::Elem) -> QDeg;
    fn q_grading(&self) -> QGrading;
    fn format(&self, a: &Self::Elem) -> String;
    fn descriptor(&self) -> CoefficientRing;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A ring receiving a homomorphism from `Z[a0, a1]`.
pub trait AlphaRing: Ring {
    fn alpha0(&self) -> Self::Elem;
    fn alpha1(&self) -> Self::Elem;

    fn specialize(&self, p: &BivariatePoly) -> Self::Elem {
        let a0 = self.alpha0();
        let a1 = self.alpha1();
        let mut acc = self.zero();
        for (&(i, j), c) in p.terms() {
            let mono = self.mul(&self.pow(&a0, i), &self.pow(&a1, j));
            acc = self.add(&acc, &self.mul(&self.from_bigint(c), &mono));
        }
        acc
    }
}

/// Euclidean domains: the rings over which homology is computed.
pub trait EuclideanRing: Ring {
    type Size: Ord + Clone + Debug;

    /// Euclidean size of a nonzero element.
    fn size(&self, a: &Self::Elem) -> Self::Size;
    /// `a = q*b + r` with `r == 0` or `size(r) < size(b)`.
    fn divmod(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem), RingError>;
    /// Canonical associate: positive integers, monic polynomials, one for field units.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;
    fn is_field(&self) -> bool;

    /// Unit `u` with `u*a == normalize(a)`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return self.one();
        }
        let n = self.normalize(a);
        let (q, _) = self.divmod(&n, a).expect("nonzero");
        q
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut x = a.clone();
        let mut y = b.clone();
        while !self.is_zero(&y) {
            let (_, r) = self.divmod(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.normalize(&x)
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        let (_, r) = self.divmod(b, a).expect("nonzero divisor");
        self.is_zero(&r)
    }
}

/// Runtime description of a coefficient ring, as selected on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Int,
    Rat,
    PrimeField(u64),
    RatPolyH,
    RatAlphaEval(BigRational, BigRational),
    GenericAlpha,
}

impl CoefficientRing {
    pub fn is_euclidean(&self) -> bool {
        !matches!(self, CoefficientRing::GenericAlpha)
    }

    /// Default for the D-inverted theory.
    pub fn default_alpha_eval() -> Self {
        CoefficientRing::RatAlphaEval(BigRational::zero(), BigRational::one())
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Int => write!(f, "int"),
            CoefficientRing::Rat => write!(f, "rat"),
            CoefficientRing::PrimeField(p) => write!(f, "gf{p}"),
            CoefficientRing::RatPolyH => write!(f, "qh"),
            CoefficientRing::RatAlphaEval(a0, a1) => write!(f, "alpha:{a0},{a1}"),
            CoefficientRing::GenericAlpha => write!(f, "generic"),
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        BigInt::from_str(s).ok().map(BigRational::from_integer)
    }
}

impl FromStr for CoefficientRing {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RingError::Parse(s.to_string());
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "generic" => return Ok(CoefficientRing::GenericAlpha),
            "int" | "z" => return Ok(CoefficientRing::Int),
            "rat" | "q" => return Ok(CoefficientRing::Rat),
            "qh" => return Ok(CoefficientRing::RatPolyH),
            "alpha" => return Ok(CoefficientRing::default_alpha_eval()),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("alpha:") {
            let (a, b) = rest.split_once(',').ok_or_else(err)?;
            let a0 = parse_rational(a).ok_or_else(err)?;
            let a1 = parse_rational(b).ok_or_else(err)?;
            return Ok(CoefficientRing::RatAlphaEval(a0, a1));
        }
        if let Some(rest) = t.strip_prefix("gf") {
            let p: u64 = rest.trim_start_matches(':').parse().map_err(|_| err())?;
            if !rings::is_prime(p) {
                return Err(RingError::NotPrime(p));
            }
            return Ok(CoefficientRing::PrimeField(p));
        }
        Err(err())
    }
}
