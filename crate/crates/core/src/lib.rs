//! Diagonal automorphisms of smooth projective hypersurfaces.
//!
//! The crate works with exact arithmetic throughout: polynomials have
//! coefficients in cyclotomic fields, symmetry groups come from a Smith normal
//! form, and smoothness is certified by an exact Macaulay rank computation.

pub mod autgrp;
pub mod classify;
pub mod cyclo;
pub mod geometry;
pub mod harness;
pub mod poly;

pub use autgrp::{symmetry_group, AutError, DiagAut, EigenStructure, Normalized, SymGroup};
pub use cyclo::{CycloError, CycloNum};
pub use geometry::{
    fixed_locus, galois_by_theorem, projection_degree, smoothness, FixedLocusReport, GaloisVerdict, LineContainment,
    Smoothness, SmoothnessOptions,
};
pub use poly::{HomogPoly, IncidenceProfile, Monomial, PolyError, VertexIncidence};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/symmetry-groups.md")]
    mod symmetry_groups {}
    #[doc = include_str!("../../../book/src/smoothness.md")]
    mod smoothness {}
    #[doc = include_str!("../../../book/src/fixed-loci.md")]
    mod fixed_loci {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/audits.md")]
    mod audits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
