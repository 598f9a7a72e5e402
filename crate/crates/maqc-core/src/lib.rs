//! Exact cohomology of partition quotients of moment-angle complexes.
//!
//! Given a finite simplicial complex `K` and a partition `α` of its vertex
//! set into `k` blocks, the colorings that send every vertex of a block to
//! the same coordinate of `(Z₂)^k` (resp. `T^k`) determine quotient spaces
//! `X(K, λ_α)` and `X(K, Λ_α)` of the real and complex moment-angle
//! complexes of `K`.  This crate computes their cohomology three ways and
//! cross-checks the routes against each other:
//!
//! * a Hochster-type decomposition into reduced cohomology of the
//!   restricted subcomplexes `K_{α,L}`, `L ⊆ [k]` ([`hochster`]);
//! * explicit finite cellular cochain complexes with their multidegree
//!   splitting, transport isomorphisms and cellular cup product
//!   ([`cellular`]);
//! * a finite differential graded algebra built from the Stanley–Reisner
//!   ring of `K`, whose `Z₂`-cohomology carries the ring structure and,
//!   for non-degenerate partitions, computes the Tor algebra ([`dga`]).
//!
//! Coefficients are `Z₂`, `Q` or `Z`; the exact linear algebra (bit-packed
//! Gaussian elimination and integer Smith normal form) lives in [`matrix`]
//! and [`homology`].  [`poset`] adds simplicial posets and the stretch
//! construction that realizes the moment-angle complex of a poset as an
//! `X(K, Λ_α)`.

pub mod cellular;
pub mod dga;
pub mod error;
pub mod hochster;
pub mod homology;
pub mod matrix;
pub mod poset;
pub mod sample;
pub mod simplicial;

pub use error::Error;
pub use hochster::{Model, MultidegreeTable, SphereDims};
pub use homology::{CoefficientRing, CohomologyResult, Group};
pub use simplicial::{ColorSubset, ColoredComplex, Partition, Simplex};
