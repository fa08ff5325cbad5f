//! Combinatorial GKM models for torus-equivariant cohomology of quiver
//! Grassmannians attached to nilpotent representations of the equioriented
//! cycle quiver.
//!
//! The library is organized bottom-up:
//!
//! * [`poly`] — exact rational arithmetic: characters, sparse polynomials,
//!   reduction modulo a linear form, congruence solving, permutation actions,
//!   Demazure operators on coefficients.
//! * [`rep`] — nilpotent cycle-quiver representations given by ordered
//!   segments, their basis points and T-weights, cocharacters, and the
//!   attractiveness / alignment / homogeneity tests.
//! * [`graph`] — torus-fixed points of a quiver Grassmannian, mutations
//!   between them, and the labeled moment graph with its partial order,
//!   linear extensions, and Poincaré polynomial.
//! * [`gkm`] — the GKM sheaf condition, Knutson–Tao classes and bases,
//!   expansion of classes in a KT basis, and restriction to order ideals.
//! * [`symmetry`] — symmetric-group actions on fixed points and classes,
//!   invariant classes, divided-difference operators, and the nil Hecke
//!   relations verifier.

pub mod poly;
pub mod rep;
pub mod graph;
pub mod gkm;
pub mod symmetry;
