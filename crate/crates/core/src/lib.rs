//! Directed strongly regular Cayley graphs on dihedral groups.
//!
//! A dihedrant `Dih(n, X, Y)` is the Cayley digraph of
//! `D_n = <x, a | x^n = a^2 = 1, ax = x^{-1}a>` with connection set
//! `x^X ∪ x^Y a`. This crate builds such graphs, decides whether they are
//! directed strongly regular by three independent routes (integer adjacency
//! matrices, the integral group ring, exact Fourier transforms over `Z[ζ_n]`),
//! generates the known construction families and searches `Z_{p^α}`
//! exhaustively for every instance.
//!
//! All arithmetic is exact. The ring-valued types are generic over a
//! [`Scalar`] coefficient type; the aliases below fix the common choices.

pub mod arith;
pub mod constructions;
pub mod cyclotomic;
pub mod dsrg;
pub mod error;
pub mod group_ring;
pub mod residue;
pub mod search;
pub mod structure;

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

pub use error::{Error, Result};

/// Exact coefficient ring for cyclotomic values and group-ring elements.
///
/// Implemented for every type with exact ring arithmetic and an embedding of
/// the integers: `i64`, `i128`, `num_rational::Ratio<i64>`, big integers.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer does not embed in scalar type")
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

/// An element of `Z[ζ_n]`.
pub type CycInt = cyclotomic::Cyclotomic<i64>;
/// An element of `Q(ζ_n)`.
pub type CycRational = cyclotomic::Cyclotomic<num_rational::Rational64>;
/// Fourier transform of an integer-valued function on `Z_n`.
pub type ZnSpectrum = cyclotomic::Spectrum<i64>;
/// An element of the integral group ring `Z[C_n]`.
pub type CnElem = group_ring::CyclicRingElem<i64>;
/// An element of the integral group ring `Z[D_n]`.
pub type DnElem = group_ring::DihedralRingElem<i64>;

pub use constructions::{Family, FamilyInstance};
pub use dsrg::{Dihedrant, DsrgParams};
pub use residue::{Orbit, ZnMultiset};
pub use search::SearchRecord;
