//! Milnor-Witt motivic cohomology of Stiefel varieties `V_k(A^n)` over a field.
//!
//! The additive structure is computed by three independent routes:
//!
//! * [`basis`]: closed-form enumeration of subsets of `N_{n,k} = {n-k, ..., n-1}`;
//! * [`gysin`]: induction along the sphere bundles `V_{k+1} -> V_k`;
//! * [`motive`]: expansion of the Tate/η-cone decomposition of the motive.
//!
//! All three produce a [`FormalSum`] and are compared by [`crosscheck`].
//! [`groups`] reads a formal sum off at a single bidegree.

pub mod basis;
pub mod bigraded;
pub mod cli;
pub mod config;
pub mod crosscheck;
pub mod error;
pub mod groups;
pub mod gysin;
pub mod motive;
pub mod report;

pub use basis::{closed_form, free_blocks, StiefelIndex, Subset};
pub use bigraded::{Bidegree, CoeffAtom, FormalSum, RingKind};
pub use error::{Error, Result};
pub use groups::{evaluate_at, GroupExpr, VanishingFlags};
pub use gysin::{euler_class, inductive_cohomology, EulerClass};
pub use motive::{motive_cohomology, stiefel_motive, Conventions, MotiveAtom, MotiveSum};
