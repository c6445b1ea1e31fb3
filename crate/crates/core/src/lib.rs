//! Fox free differential calculus on free groups of finite rank.
//!
//! The crate computes Fox derivatives in the integer group ring `Z[F]`,
//! projects them to group rings `(Z/d)[G]` of finite quotients `G = F/N`,
//! and decides membership of a word in `F_K (F_K ∩ N)^F [N,N] N^d` through
//! Reidemeister–Schreier rewriting and linear algebra over `Z/d`. The two
//! computations answer the same question from opposite sides, and
//! [`membership::theorem2_check`] compares them.
//!
//! [`freiheit`] builds on the same machinery to certify whether `D_n(r)`
//! vanishes modulo `Z[F](R-1)` for a one-relator normal closure `R`.

pub mod catalog;
pub mod error;
pub mod finquot;
pub mod fox;
pub mod freegroup;
pub mod freiheit;
pub mod groupring;
pub mod linalg;
pub mod membership;
pub mod schreier;

pub use error::{Error, Result};
