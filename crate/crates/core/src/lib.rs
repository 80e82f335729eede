//! Exact computer algebra for isolated hypersurface singularities.
//!
//! Everything here works over the Gaussian rationals Q(i), so every answer is
//! exact and every certificate can be replayed.  The crate is organised in
//! layers:
//!
//! - [`ring`]: multivariate polynomials over Q(i),
//! - [`linalg`]: dense exact linear algebra (ranks, nullspaces, solving),
//! - [`stdbasis`]: local standard bases (Mora normal form) and quotient data,
//! - [`singularity`]: Milnor/Tyurina numbers, the splitting lemma, ADE
//!   recognition,
//! - [`mf`]: matrix factorizations and their homotopy-category operations,
//! - [`classify`]: the decision procedure for stable equivalence of germs,
//!   with machine-checkable verdicts.
//!
//! [`oracle`] holds independent brute-force reference computations used to
//! cross-check the standard-basis engine; it shares no code path with it.

pub mod classify;
pub mod error;
pub mod linalg;
pub mod mf;
pub mod oracle;
pub mod ring;
pub mod singularity;
pub mod stdbasis;

pub use error::Error;
pub use ring::{GaussianRational, Monomial, Poly, RingContext};
pub use singularity::Germ;
pub use stdbasis::Dim;
