//! Finite fields, finite geometries, block designs and error-correcting
//! codes, all computed by explicit enumeration at desk scale.
//!
//! The crate is organized bottom-up:
//!
//! - [`modarith`]: residue arithmetic in `Z_n`, unit groups, divisibility rules
//! - [`polyring`]: polynomials over `Z_p`, long division, irreducibility, factoring
//! - [`gfield`]: fields `F_{p^r}` as `Z_p[z]` modulo an irreducible polynomial,
//!   operation tables and field-axiom verification
//! - [`tablesearch`]: exhaustive backtracking enumeration of all field tables
//!   on `n` labels, plus table isomorphism
//! - [`fingeo`]: subspaces of `F_q^n`, affine and projective planes
//! - [`designs`]: block designs, resolutions, and the `k = t` enumeration
//! - [`codes`]: Hamming distance, nearest-codeword decoding, perfect codes,
//!   and a seeded channel simulation
//! - [`cli`]: the command-line front end and bundled fixtures

pub mod cli;
pub mod codes;
pub mod designs;
pub mod fingeo;
pub mod gfield;
pub mod modarith;
pub mod polyring;
pub mod tablesearch;
