//! Exact computation of infinitesimal automorphisms of projective
//! configurations, and a table of smooth Fano threefold families with
//! infinite automorphism groups.

pub mod catalog;
pub mod error;
pub mod exactmath;
pub mod fanodb;
pub mod lieaction;
pub mod lieclassify;
pub mod polyring;
pub mod sl2rep;
pub mod stabilizer;

pub use catalog::{build, verify, verify_all, ModelCase, Params, Report};
pub use error::{Error, Result};
pub use exactmath::{JordanType, Matrix, Rational};
pub use fanodb::{FanoDb, FanoFamily, GimelId, InfinityClass};
pub use lieaction::{act, bracket, AlgElement, AmbientAlgebra};
pub use lieclassify::{expected_signature, match_signature, signature, GroupExpr, LieSignature, SimpleType};
pub use polyring::{Ideal, Monomial, Multidegree, Polynomial, Ring, RingSpec};
pub use sl2rep::{decompose, irr_char, parse_character, sym_power, tensor, Character};
pub use stabilizer::{joint_stabilizer, stabilizer, Subalgebra};
