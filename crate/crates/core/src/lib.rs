//! Automorphism groups of affine hypersurfaces with separated variables.
//!
//! For `F` in which every variable occurs in exactly one monomial, the
//! automorphism group of a rigid hypersurface `V(F)` is `P(F) ⋉ ℍ`, where
//! `P(F)` permutes variables preserving `F` and `ℍ` is the quasitorus of
//! diagonal maps preserving `V(F)`. This crate computes both factors
//! exactly, a sufficient rigidity certificate, explicit torus generators
//! with the weight cone, and brute-force oracles that check all of it.

pub mod autassembly;
pub mod intlat;
pub mod permgroup;
pub mod polyio;
pub mod quasitorus;
pub mod rigidity;
pub mod torusgeom;

use thiserror::Error;

pub use autassembly::{aut_group, fermat_aut, verify_generator, AutGroupDescription, MonomialMap};
pub use intlat::{smith_normal_form, IntMatrix, SnfResult};
pub use polyio::{parse_polynomial, recognize_separated, CanonicalForm, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] polyio::ParseError),
    #[error(transparent)]
    Separation(#[from] polyio::SeparationError),
    #[error(transparent)]
    Aut(#[from] autassembly::AutError),
}

/// Parses `text` and brings it to canonical separated form.
pub fn canonical_form(text: &str) -> Result<CanonicalForm, Error> {
    Ok(recognize_separated(&parse_polynomial(text)?)?)
}
