//! The rank-two Frobenius algebra `A = R[X]/((X - a0)(X - a1))`.
//!
//! Elements are stored as coordinates over one of several bases; all
//! structure maps are computed in the `{1, X}` basis and converted back.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::{AlphaRing, QDeg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisConvention {
    /// `{1, X}`, used on trivial circles.
    OneX,
    /// `{1, X - a0}`, odd essential circles.
    V,
    /// `{1, X - a1}`, even essential circles.
    VPrime,
    /// Idempotents `e0 = (X - a0)/(a1 - a0)`, `e1 = (X - a1)/(a0 - a1)`.
    E,
    /// `{1, (X - a0)/(a1 - a0)}`, odd essential circles once `a1 - a0` is a unit.
    VBar,
    /// `{1, (X - a1)/(a0 - a1)}`, even essential circles once `a1 - a0` is a unit.
    VBarPrime,
}

impl BasisConvention {
    /// Whether the convention needs `a1 - a0` to be invertible.
    pub fn needs_inverse(self) -> bool {
        matches!(self, BasisConvention::E | BasisConvention::VBar | BasisConvention::VBarPrime)
    }

    /// Bidegree of the `k`-th basis element on a trivial or essential circle.
    pub fn bidegree(self, k: usize, essential: bool) -> (i32, i32) {
        let sign = if k == 0 { -1 } else { 1 };
        let q = match self {
            BasisConvention::OneX | BasisConvention::V | BasisConvention::VPrime => sign,
            BasisConvention::E | BasisConvention::VBar | BasisConvention::VBarPrime => -1,
        };
        let a = match self {
            BasisConvention::OneX | BasisConvention::E => 0,
            _ if essential => sign,
            _ => 0,
        };
        (q, a)
    }

    pub fn label(self, k: usize) -> &'static str {
        match (self, k) {
            (BasisConvention::OneX, 0) => "1",
            (BasisConvention::OneX, _) => "X",
            (BasisConvention::V, 0) => "v0",
            (BasisConvention::V, _) => "v1",
            (BasisConvention::VPrime, 0) => "v0'",
            (BasisConvention::VPrime, _) => "v1'",
            (BasisConvention::E, 0) => "e0",
            (BasisConvention::E, _) => "e1",
            (BasisConvention::VBar, 0) => "w0",
            (BasisConvention::VBar, _) => "w1",
            (BasisConvention::VBarPrime, 0) => "w0'",
            (BasisConvention::VBarPrime, _) => "w1'",
        }
    }
}

impl fmt::Display for BasisConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisConvention::OneX => "ONE_X",
            BasisConvention::V => "V",
            BasisConvention::VPrime => "V_PRIME",
            BasisConvention::E => "E",
            BasisConvention::VBar => "V_BAR",
            BasisConvention::VBarPrime => "V_BAR_PRIME",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error("basis {0} needs a1 - a0 to be invertible over {1}")]
    InvalidBasisForRing(BasisConvention, String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<E> {
    pub basis: BasisConvention,
    pub coords: [E; 2],
}

impl<E> AlgebraElement<E> {
    pub fn new(basis: BasisConvention, c0: E, c1: E) -> Self {
        Self { basis, coords: [c0, c1] }
    }
}

/// `sum c[i][j] b_i (x) b'_j` over the two factor bases.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorElement<E> {
    pub bases: [BasisConvention; 2],
    pub coeffs: [[E; 2]; 2],
}

type Mat2<E> = [[E; 2]; 2];

/// Structure maps of `A` over a ring receiving the alphas.
#[derive(Debug, Clone)]
pub struct FrobeniusAlgebra<R: AlphaRing> {
    ring: R,
    a0: R::Elem,
    a1: R::Elem,
    e1: R::Elem,
    e2: R::Elem,
    /// `1 / (a1 - a0)` when it exists.
    dinv: Option<R::Elem>,
}

impl<R: AlphaRing> FrobeniusAlgebra<R> {
    pub fn new(ring: R) -> Self {
        let a0 = ring.alpha0();
        let a1 = ring.alpha1();
        let e1 = ring.add(&a0, &a1);
        let e2 = ring.mul(&a0, &a1);
        let dinv = ring.inverse(&ring.sub(&a1, &a0));
        Self {
            ring,
            a0,
            a1,
            e1,
            e2,
            dinv,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn alpha0(&self) -> &R::Elem {
        &self.a0
    }

    pub fn alpha1(&self) -> &R::Elem {
        &self.a1
    }

    pub fn supports(&self, basis: BasisConvention) -> bool {
        !basis.needs_inverse() || self.dinv.is_some()
    }

    fn check(&self, basis: BasisConvention) -> Result<(), FrobeniusError> {
        if self.supports(basis) {
            Ok(())
        } else {
            Err(FrobeniusError::InvalidBasisForRing(basis, self.ring.descriptor().to_string()))
        }
    }

    /// Columns are the basis elements written over `{1, X}`.
    pub fn to_one_x(&self, basis: BasisConvention) -> Result<Mat2<R::Elem>, FrobeniusError> {
        self.check(basis)?;
        let r = &self.ring;
        let (o, z) = (r.one(), r.zero());
        let m = match basis {
            BasisConvention::OneX => [[o.clone(), z.clone()], [z, o]],
            BasisConvention::V => [[o.clone(), r.neg(&self.a0)], [z, o]],
            BasisConvention::VPrime => [[o.clone(), r.neg(&self.a1)], [z, o]],
            BasisConvention::E => {
                let d = self.dinv.clone().expect("checked");
                [
                    [r.neg(&r.mul(&self.a0, &d)), r.mul(&self.a1, &d)],
                    [d.clone(), r.neg(&d)],
                ]
            }
            BasisConvention::VBar => {
                let d = self.dinv.clone().expect("checked");
                [[o, r.neg(&r.mul(&self.a0, &d))], [z, d]]
            }
            BasisConvention::VBarPrime => {
                let d = self.dinv.clone().expect("checked");
                [[o, r.mul(&self.a1, &d)], [z, r.neg(&d)]]
            }
        };
        Ok(m)
    }

    /// Columns are `1` and `X` written over `basis`.
    pub fn from_one_x(&self, basis: BasisConvention) -> Result<Mat2<R::Elem>, FrobeniusError> {
        self.check(basis)?;
        let r = &self.ring;
        let (o, z) = (r.one(), r.zero());
        let m = match basis {
            BasisConvention::OneX => [[o.clone(), z.clone()], [z, o]],
            BasisConvention::V => [[o.clone(), self.a0.clone()], [z, o]],
            BasisConvention::VPrime => [[o.clone(), self.a1.clone()], [z, o]],
            BasisConvention::E => [[o.clone(), self.a1.clone()], [o, self.a0.clone()]],
            BasisConvention::VBar => [[o, self.a0.clone()], [z, r.sub(&self.a1, &self.a0)]],
            BasisConvention::VBarPrime => [[o, self.a1.clone()], [z, r.sub(&self.a0, &self.a1)]],
        };
        Ok(m)
    }

    fn apply2(&self, m: &Mat2<R::Elem>, v: &[R::Elem; 2]) -> [R::Elem; 2] {
        let r = &self.ring;
        [
            r.add(&r.mul(&m[0][0], &v[0]), &r.mul(&m[0][1], &v[1])),
            r.add(&r.mul(&m[1][0], &v[0]), &r.mul(&m[1][1], &v[1])),
        ]
    }

    pub fn convert(
        &self,
        a: &AlgebraElement<R::Elem>,
        to: BasisConvention,
    ) -> Result<AlgebraElement<R::Elem>, FrobeniusError> {
        if a.basis == to {
            return Ok(a.clone());
        }
        let onex = self.apply2(&self.to_one_x(a.basis)?, &a.coords);
        let coords = self.apply2(&self.from_one_x(to)?, &onex);
        Ok(AlgebraElement { basis: to, coords })
    }

    fn onex(&self, a: &AlgebraElement<R::Elem>) -> [R::Elem; 2] {
        self.convert(a, BasisConvention::OneX)
            .expect("conversion from a constructed basis")
            .coords
    }

    pub fn unit(&self) -> AlgebraElement<R::Elem> {
        AlgebraElement::new(BasisConvention::OneX, self.ring.one(), self.ring.zero())
    }

    pub fn x(&self) -> AlgebraElement<R::Elem> {
        AlgebraElement::new(BasisConvention::OneX, self.ring.zero(), self.ring.one())
    }

    /// Product, returned over `{1, X}`.
    pub fn mult(&self, a: &AlgebraElement<R::Elem>, b: &AlgebraElement<R::Elem>) -> AlgebraElement<R::Elem> {
        let r = &self.ring;
        let [p0, p1] = self.onex(a);
        let [q0, q1] = self.onex(b);
        let top = r.mul(&p1, &q1);
        let c0 = r.sub(&r.mul(&p0, &q0), &r.mul(&self.e2, &top));
        let c1 = r.add(&r.add(&r.mul(&p0, &q1), &r.mul(&p1, &q0)), &r.mul(&self.e1, &top));
        AlgebraElement::new(BasisConvention::OneX, c0, c1)
    }

    pub fn x_action(&self, a: &AlgebraElement<R::Elem>) -> AlgebraElement<R::Elem> {
        self.mult(&self.x(), a)
    }

    /// `X^k` over `{1, X}`.
    pub fn x_power(&self, k: u32) -> AlgebraElement<R::Elem> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.x_action(&acc);
        }
        acc
    }

    /// `D(1) = (X - a0)(x)1 + 1(x)(X - a1)`, `D(X) = X(x)X - a0 a1 1(x)1`, over `{1, X}`.
    pub fn comult(&self, a: &AlgebraElement<R::Elem>) -> TensorElement<R::Elem> {
        let r = &self.ring;
        let [c0, c1] = self.onex(a);
        let t00 = r.sub(&r.neg(&r.mul(&self.e1, &c0)), &r.mul(&self.e2, &c1));
        TensorElement {
            bases: [BasisConvention::OneX; 2],
            coeffs: [[t00, c0.clone()], [c0, c1]],
        }
    }

    pub fn counit(&self, a: &AlgebraElement<R::Elem>) -> R::Elem {
        let [_, c1] = self.onex(a);
        c1
    }

    pub fn convert_tensor(
        &self,
        t: &TensorElement<R::Elem>,
        to: [BasisConvention; 2],
    ) -> Result<TensorElement<R::Elem>, FrobeniusError> {
        let r = &self.ring;
        let ml = mat_mul(r, &self.from_one_x(to[0])?, &self.to_one_x(t.bases[0])?);
        let mr = mat_mul(r, &self.from_one_x(to[1])?, &self.to_one_x(t.bases[1])?);
        // c' = ML c MR^T
        let mut out: Mat2<R::Elem> = [[r.zero(), r.zero()], [r.zero(), r.zero()]];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = r.zero();
                for k in 0..2 {
                    for l in 0..2 {
                        let x = r.mul(&r.mul(&ml[i][k], &t.coeffs[k][l]), &mr[j][l]);
                        acc = r.add(&acc, &x);
                    }
                }
                *slot = acc;
            }
        }
        Ok(TensorElement { bases: to, coeffs: out })
    }

    /// Bidegree of a homogeneous element; `None` components when inhomogeneous.
    pub fn bidegree(&self, a: &AlgebraElement<R::Elem>, essential: bool) -> (Option<i32>, Option<i32>) {
        let mut q = None;
        let mut adeg = None;
        let mut q_ok = true;
        let mut a_ok = true;
        let mut any = false;
        for k in 0..2 {
            let c = &a.coords[k];
            if self.ring.is_zero(c) {
                continue;
            }
            any = true;
            let (bq, ba) = a.basis.bidegree(k, essential);
            match self.ring.qdeg(c) {
                QDeg::Homogeneous(d) => {
                    let total = bq + d;
                    if q.is_some_and(|x| x != total) {
                        q_ok = false;
                    }
                    q = Some(total);
                }
                _ => q_ok = false,
            }
            if adeg.is_some_and(|x| x != ba) {
                a_ok = false;
            }
            adeg = Some(ba);
        }
        if !any {
            return (None, None);
        }
        (q.filter(|_| q_ok), adeg.filter(|_| a_ok))
    }
}

fn mat_mul<R: AlphaRing>(r: &R, a: &Mat2<R::Elem>, b: &Mat2<R::Elem>) -> Mat2<R::Elem> {
    let e = |i: usize, j: usize| r.add(&r.mul(&a[i][0], &b[0][j]), &r.mul(&a[i][1], &b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}
