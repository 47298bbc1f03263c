use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlphaRing, BivariatePoly, CoefficientRing, EuclideanRing, QDeg, QGrading, QPoly, Ring, RingError};

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn homogeneous_zero(is_zero: bool) -> QDeg {
    if is_zero {
        QDeg::Bottom
    } else {
        QDeg::Homogeneous(0)
    }
}

/// The integers; alphas specialize to zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn qdeg(&self, a: &BigInt) -> QDeg {
        homogeneous_zero(a.is_zero())
    }
    fn q_grading(&self) -> QGrading {
        QGrading::Concentrated
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::Int
    }
}

impl AlphaRing for Integers {
    fn alpha0(&self) -> BigInt {
        BigInt::zero()
    }
    fn alpha1(&self) -> BigInt {
        BigInt::zero()
    }
    fn specialize(&self, p: &BivariatePoly) -> BigInt {
        p.constant_term()
    }
}

impl EuclideanRing for Integers {
    type Size = BigUint;

    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn divmod(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt), RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        // Euclidean division: 0 <= r < |b|.
        let (mut q, mut r) = a.div_mod_floor(b);
        if r.is_negative() {
            r += b.abs();
            q -= b.signum();
        }
        Ok((q, r))
    }
    fn normalize(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn is_field(&self) -> bool {
        false
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
}

/// The rationals; alphas specialize to zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn qdeg(&self, a: &BigRational) -> QDeg {
        homogeneous_zero(a.is_zero())
    }
    fn q_grading(&self) -> QGrading {
        QGrading::Concentrated
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::Rat
    }
}

impl AlphaRing for Rationals {
    fn alpha0(&self) -> BigRational {
        BigRational::zero()
    }
    fn alpha1(&self) -> BigRational {
        BigRational::zero()
    }
    fn specialize(&self, p: &BivariatePoly) -> BigRational {
        BigRational::from_integer(p.constant_term())
    }
}

fn field_divmod<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem) -> Result<(R::Elem, R::Elem), RingError> {
    let inv = r.inverse(b).ok_or(RingError::DivisionByZero)?;
    Ok((r.mul(a, &inv), r.zero()))
}

impl EuclideanRing for Rationals {
    type Size = u8;

    fn size(&self, _: &BigRational) -> u8 {
        0
    }
    fn divmod(&self, a: &BigRational, b: &BigRational) -> Result<(BigRational, BigRational), RingError> {
        field_divmod(self, a, b)
    }
    fn normalize(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            a.clone()
        } else {
            BigRational::one()
        }
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// The prime field `F_p`; alphas specialize to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_big(n)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let mut base = *a;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }
    fn qdeg(&self, a: &u64) -> QDeg {
        homogeneous_zero(*a == 0)
    }
    fn q_grading(&self) -> QGrading {
        QGrading::Concentrated
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::PrimeField(self.p)
    }
}

impl AlphaRing for PrimeField {
    fn alpha0(&self) -> u64 {
        0
    }
    fn alpha1(&self) -> u64 {
        0
    }
    fn specialize(&self, p: &BivariatePoly) -> u64 {
        self.reduce_big(&p.constant_term())
    }
}

impl EuclideanRing for PrimeField {
    type Size = u8;

    fn size(&self, _: &u64) -> u8 {
        0
    }
    fn divmod(&self, a: &u64, b: &u64) -> Result<(u64, u64), RingError> {
        field_divmod(self, a, b)
    }
    fn normalize(&self, a: &u64) -> u64 {
        u64::from(*a != 0)
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// `Q[h]`, receiving `a0 -> 0`, `a1 -> h`; `h` has qdeg 2.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RatPolyH;

impl Ring for RatPolyH {
    type Elem = QPoly;

    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::from_int(1)
    }
    fn from_int(&self, n: i64) -> QPoly {
        QPoly::from_int(n)
    }
    fn from_bigint(&self, n: &BigInt) -> QPoly {
        QPoly::constant(BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        a.neg()
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b)
    }
    fn inverse(&self, a: &QPoly) -> Option<QPoly> {
        match a.degree() {
            Some(0) => Some(QPoly::constant(a.coeffs()[0].recip())),
            _ => None,
        }
    }
    fn qdeg(&self, a: &QPoly) -> QDeg {
        if a.is_zero() {
            return QDeg::Bottom;
        }
        match a.monomial_degree() {
            Some(d) => QDeg::Homogeneous(2 * d as i32),
            None => QDeg::Inhomogeneous,
        }
    }
    fn q_grading(&self) -> QGrading {
        QGrading::Graded
    }
    fn format(&self, a: &QPoly) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::RatPolyH
    }
}

impl AlphaRing for RatPolyH {
    fn alpha0(&self) -> QPoly {
        QPoly::zero()
    }
    fn alpha1(&self) -> QPoly {
        QPoly::h()
    }
    fn specialize(&self, p: &BivariatePoly) -> QPoly {
        let mut acc = QPoly::zero();
        for (&(i, j), c) in p.terms() {
            if i == 0 {
                acc = acc.add(&QPoly::monomial(BigRational::from_integer(c.clone()), j as usize));
            }
        }
        acc
    }
}

impl EuclideanRing for RatPolyH {
    type Size = usize;

    fn size(&self, a: &QPoly) -> usize {
        a.degree().unwrap_or(0)
    }
    fn divmod(&self, a: &QPoly, b: &QPoly) -> Result<(QPoly, QPoly), RingError> {
        a.divmod(b).ok_or(RingError::DivisionByZero)
    }
    fn normalize(&self, a: &QPoly) -> QPoly {
        a.monic()
    }
    fn is_field(&self) -> bool {
        false
    }
}

/// `Q` with `a0, a1` sent to fixed rationals. With `a0 != a1` the
/// discriminant becomes a unit: this models the D-inverted theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaEval {
    a0: BigRational,
    a1: BigRational,
}

impl AlphaEval {
    pub fn new(a0: BigRational, a1: BigRational) -> Self {
        Self { a0, a1 }
    }

    pub fn from_ints(a0: i64, a1: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(a0)),
            BigRational::from_integer(BigInt::from(a1)),
        )
    }

    pub fn values(&self) -> (&BigRational, &BigRational) {
        (&self.a0, &self.a1)
    }

    pub fn separates(&self) -> bool {
        self.a0 != self.a1
    }
}

impl Default for AlphaEval {
    fn default() -> Self {
        Self::from_ints(0, 1)
    }
}

impl Ring for AlphaEval {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        Rationals.from_int(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        Rationals.from_bigint(n)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        Rationals.inverse(a)
    }
    fn qdeg(&self, a: &BigRational) -> QDeg {
        homogeneous_zero(a.is_zero())
    }
    fn q_grading(&self) -> QGrading {
        if self.a0.is_zero() && self.a1.is_zero() {
            QGrading::Concentrated
        } else {
            QGrading::Ungraded
        }
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::RatAlphaEval(self.a0.clone(), self.a1.clone())
    }
}

impl AlphaRing for AlphaEval {
    fn alpha0(&self) -> BigRational {
        self.a0.clone()
    }
    fn alpha1(&self) -> BigRational {
        self.a1.clone()
    }
}

impl EuclideanRing for AlphaEval {
    type Size = u8;

    fn size(&self, _: &BigRational) -> u8 {
        0
    }
    fn divmod(&self, a: &BigRational, b: &BigRational) -> Result<(BigRational, BigRational), RingError> {
        field_divmod(self, a, b)
    }
    fn normalize(&self, a: &BigRational) -> BigRational {
        Rationals.normalize(a)
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// The generic ground ring `Z[a0, a1]`. Not Euclidean: it supports matrix
/// arithmetic and symbolic checks only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AlphaPolys;

impl Ring for AlphaPolys {
    type Elem = BivariatePoly;

    fn zero(&self) -> BivariatePoly {
        BivariatePoly::zero()
    }
    fn one(&self) -> BivariatePoly {
        BivariatePoly::one()
    }
    fn from_int(&self, n: i64) -> BivariatePoly {
        BivariatePoly::constant(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BivariatePoly {
        BivariatePoly::monomial(n.clone(), 0, 0)
    }
    fn is_zero(&self, a: &BivariatePoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
        a + b
    }
    fn neg(&self, a: &BivariatePoly) -> BivariatePoly {
        -a
    }
    fn sub(&self, a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
        a - b
    }
    fn mul(&self, a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
        a * b
    }
    fn inverse(&self, a: &BivariatePoly) -> Option<BivariatePoly> {
        (a.is_constant() && a.constant_term().abs().is_one()).then(|| a.clone())
    }
    fn qdeg(&self, a: &BivariatePoly) -> QDeg {
        a.qdeg()
    }
    fn q_grading(&self) -> QGrading {
        QGrading::Graded
    }
    fn format(&self, a: &BivariatePoly) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::GenericAlpha
    }
}

impl AlphaRing for AlphaPolys {
    fn alpha0(&self) -> BivariatePoly {
        BivariatePoly::alpha0()
    }
    fn alpha1(&self) -> BivariatePoly {
        BivariatePoly::alpha1()
    }
    fn specialize(&self, p: &BivariatePoly) -> BivariatePoly {
        p.clone()
    }
}
