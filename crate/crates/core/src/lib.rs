//! Computational core for finite triangular bound quivers.
//!
//! The crate works over the rationals and covers:
//!
//! * quivers, paths, walks, bypasses and derived paths ([`quiver`], [`path`], [`bypass`]);
//! * the weight order on nontrivial paths and on bypasses ([`order`]);
//! * exact linear combinations of parallel paths ([`algebra`]);
//! * vertex-fixing automorphisms, transvections and the decreasing-product
//!   normal form ([`automorphism`]);
//! * admissible ideals with per-hom-space Groebner bases and the canonical
//!   automorphism attached to a presentation of a monomial algebra ([`ideal`]);
//! * homotopy relations, fundamental-group presentations ([`homotopy`], [`group`]);
//! * the quiver of homotopy relations and universal-cover certificates ([`gamma`]).
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line
//! live in the `boundquiver` crate.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod automorphism;
pub mod bypass;
mod error;
pub mod gamma;
pub mod group;
pub mod homotopy;
pub mod ideal;
pub mod order;
pub mod path;
pub mod quiver;

pub use algebra::{PathVector, Scalar};
pub use automorphism::{ArrowSubstitution, DecreasingProduct, Transvection, TransvectionWord};
pub use bypass::{Bypass, DoubleBypass};
pub use error::{Error, Result};
pub use gamma::{GammaGraph, GammaOptions, RealizedPath, UniversalCoverCertificate};
pub use group::{AbelianInvariants, GroupPresentation, Letter, Word};
pub use homotopy::{HomotopyRelation, SuccessorCase, SuccessorStep, SurjectionWitness};
pub use ideal::{AdmissibleIdeal, MinimalRelation, SeedSearch};
pub use order::PathOrder;
pub use path::{Path, Walk};
pub use quiver::{Arrow, Quiver, QuiverBuilder, ValidationReport, Vertex};
