//! Self-similar groups `G_{p,f}` of p-adic tree automorphisms.
//!
//! A group is fixed by a prime `p` and a monic polynomial `f` with nonzero
//! constant term over GF(p). The crate builds the group from the companion
//! matrix of `f`, solves its word problem, enumerates its congruence quotients
//! `G/G_n` exactly, checks its branch structure, and computes the Hausdorff
//! dimension of its closure, both measured from quotient sizes and from the
//! closed forms. The finitely constrained description of the closure lives in
//! [`patterns`].
//!
//! ```
//! use selfsimilar::{GroupSpec, Word};
//!
//! let grigorchuk = GroupSpec::new(2, &[1, 1, 1]).unwrap();
//! let w = Word::parse(&grigorchuk, "a d0 a d0 a d0 a d0").unwrap();
//! assert!(selfsimilar::word::is_identity(&grigorchuk, &w));
//! ```

pub mod cli;
pub mod error;
pub mod gfp;
pub mod patterns;
pub mod portrait;
pub mod quotient;
pub mod word;

pub use error::{Error, Result};
pub use gfp::{FieldMatrix, FieldVector, GroupSpec};
pub use portrait::Portrait;
pub use word::{OrderLimits, OrderResult, Word, WordProblem};
