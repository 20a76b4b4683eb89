//! Weak Bruhat order on permutations and intersecting families in it.

pub mod cli;
pub mod error;
pub mod genfun;
pub mod levels;
pub mod perm;
pub mod search;
pub mod systems;

pub use error::{Error, Result};
pub use genfun::IntPolynomial;
pub use levels::{enumerate_level, multiplicity, LevelEnumeration};
pub use perm::{GeneratorSet, InversionSet, Permutation};
pub use search::verify::{verify, Report, Suite, Verdict, VerifyParams};
pub use search::{SearchConfig, SearchOutcome};
pub use systems::{family_p, h_family, pi_minimal, PermFamily, SetSystem};
