//! Exact decision procedures for conductor ideals.
//!
//! An ideal `I` of a ring `S` is an *R-conductor ideal* when
//! `I = (V :_S S)` for some ring `R ⊆ V ⊆ S`. Everything here works over
//! rings that are free of finite rank over Z, with lattices in Hermite
//! normal form as the carrier for ideals and subrings:
//!
//! * [`lattice`]: HNF lattices (sum, intersection, index, preimages);
//! * [`ring`]: rings from structure constants, colon lattices and the
//!   brute-force conductor test;
//! * [`quad`]: quadratic number rings with prime splitting, valuations and
//!   the fast local criteria, each checkable against the brute-force test;
//! * [`expr`]: the ideal expression language used by the CLI;
//! * [`crossval`] and [`props`]: sweeps comparing criteria against the
//!   oracle and randomized checks of the closure laws.

pub mod arith;
pub mod crossval;
pub mod expr;
pub mod lattice;
pub mod props;
pub mod quad;
pub mod ring;
pub mod serde_big;
pub mod verdict;

pub use lattice::{IntLattice, IntMatrix, LatticeError};
pub use quad::{
    Base, Bounds, IdealFactorization, Mutation, Prop29Outcome, QPrime, QuadError, QuadField,
    QuadOrder, Splitting,
};
pub use ring::{ConductorCheck, Element, IdealHandle, RingError, RingTable, SubringHandle};
pub use verdict::{Condition, Criterion, Decision, PrimeReport, Verdict, Witness};
