//! Exact equivariant annular Khovanov homology.
//!
//! The crate is organised bottom-up: [`ring`] and [`frobenius`] provide the
//! algebra, [`diagram`] the annular geometry, [`tqft`] the cobordism maps,
//! [`complex`] the cube of resolutions, [`homology`] the linear algebra that
//! turns complexes into tables, and [`tl`] the dotted Temperley-Lieb calculus.

pub mod matrix;
pub mod ring;
pub mod frobenius;
pub mod diagram;
pub mod tqft;
pub mod complex;
pub mod homology;
pub mod tl;
