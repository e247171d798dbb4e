//! Exact computations around Heegaard Floer correction terms.
//!
//! * [`ratmod`]: exact rationals and small modular arithmetic.
//! * [`lens`]: correction terms `d(L(p,q), i)` of lens spaces.
//! * [`alexpoly`]: symmetric Alexander polynomials and their torsion coefficients.
//! * [`surgery`]: the finite family of Alexander polynomials compatible with a
//!   lens-space surgery, obstruction verdicts, and `±1/n` surgery invariants.
//! * [`lattice`]: negative-definite integer lattices, characteristic vectors and
//!   the intersection-form bounds coming from correction terms.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature pulls in
//! `std` and rayon for the family enumeration and the lattice search.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod alexpoly;
pub mod error;
pub mod lattice;
pub mod lens;
pub mod ratmod;
pub mod surgery;

pub use alexpoly::{SymLaurentPoly, TorsionSeq};
pub use error::{Error, Result};

pub use lattice::{ElkiesReport, IntLattice};
pub use lens::{DVector, LensSpec};
pub use ratmod::{rat, Rational, Residue};
pub use surgery::{Correspondence, ObstructionVerdict, SurgeryDescriptor, SurgerySign, ZeroSurgeryProfile};
