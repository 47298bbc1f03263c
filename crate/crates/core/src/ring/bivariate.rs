use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::QDeg;

/// An element of `Z[a0, a1]`, stored as exponent pair -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0, 0)
    }

    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn alpha0() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn alpha1() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `E1 = a0 + a1`.
    pub fn e1() -> Self {
        Self::alpha0() + Self::alpha1()
    }

    /// `E2 = a0 * a1`.
    pub fn e2() -> Self {
        Self::monomial(BigInt::one(), 1, 1)
    }

    /// `D = (a0 - a1)^2`.
    pub fn discriminant() -> Self {
        let d = Self::alpha0() - Self::alpha1();
        &d * &d
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0, 0)
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `2(i+j)` when all terms share a total degree.
    pub fn qdeg(&self) -> QDeg {
        let mut degs = self.terms.keys().map(|&(i, j)| i + j);
        match degs.next() {
            None => QDeg::Bottom,
            Some(d) => {
                if degs.all(|e| e == d) {
                    QDeg::Homogeneous(2 * d as i32)
                } else {
                    QDeg::Inhomogeneous
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The involution exchanging `a0` and `a1`.
    pub fn swap_alphas(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: BivariatePoly) -> BivariatePoly {
        &self + &rhs
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: &BigInt, i: u32, j: u32) -> fmt::Result {
    let mut factors = Vec::new();
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    if let Some(v) = var("a0", i) {
        factors.push(v);
    }
    if let Some(v) = var("a1", j) {
        factors.push(v);
    }
    if factors.is_empty() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{c}*{}", factors.join("*"))
    }
}

/// ASCII form `c*a0^i*a1^j`, terms in lexicographic exponent order.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            write_monomial(f, &c.abs(), i, j)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a0() -> BivariatePoly {
        BivariatePoly::alpha0()
    }
    fn a1() -> BivariatePoly {
        BivariatePoly::alpha1()
    }

    #[test]
    fn difference_of_squares() {
        let p = (a0() + a1()) * (a0() - a1());
        assert_eq!(p, a0().pow(2) - a1().pow(2));
        assert_eq!(p.to_string(), "-a1^2+a0^2");
    }

    #[test]
    fn discriminant_expands() {
        let d = BivariatePoly::discriminant();
        let expected = a0().pow(2) - BivariatePoly::constant(2) * BivariatePoly::e2() + a1().pow(2);
        assert_eq!(d, expected);
        assert_eq!(d.to_string(), "a1^2-2*a0*a1+a0^2");
    }

    #[test]
    fn zero_annihilates() {
        let p = a0() * a1() + BivariatePoly::constant(7);
        assert!((&BivariatePoly::zero() * &p).is_zero());
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }

    #[test]
    fn degrees() {
        assert_eq!(BivariatePoly::e1().qdeg(), QDeg::Homogeneous(2));
        assert_eq!(BivariatePoly::e2().qdeg(), QDeg::Homogeneous(4));
        assert_eq!((BivariatePoly::one() + a0()).qdeg(), QDeg::Inhomogeneous);
        assert_eq!(BivariatePoly::zero().qdeg(), QDeg::Bottom);
        assert_eq!(BivariatePoly::one().qdeg(), QDeg::Homogeneous(0));
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|v| {
            BivariatePoly::from_terms(v.into_iter().map(|(k, c)| (k, BigInt::from(c))))
        })
    }

    fn arb_homogeneous() -> impl Strategy<Value = BivariatePoly> {
        (0u32..4, prop::collection::vec(-4i64..5, 1..5)).prop_map(|(d, cs)| {
            let mut p = BivariatePoly::zero();
            for (k, c) in cs.into_iter().enumerate() {
                let i = (k as u32).min(d);
                p = p + BivariatePoly::monomial(BigInt::from(c), i, d - i);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_terms(a in arb_poly(), b in arb_poly()) {
            let p = &(&a * &b) + &a;
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn qdeg_additive(a in arb_homogeneous(), b in arb_homogeneous()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (QDeg::Homogeneous(x), QDeg::Homogeneous(y)) = (a.qdeg(), b.qdeg()) else {
                return Err(TestCaseError::fail("expected homogeneous"));
            };
            prop_assert_eq!((&a * &b).qdeg(), QDeg::Homogeneous(x + y));
        }

        #[test]
        fn swap_is_involutive_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.swap_alphas().swap_alphas(), a.clone());
            prop_assert_eq!((&a * &b).swap_alphas(), &a.swap_alphas() * &b.swap_alphas());
        }
    }
}
