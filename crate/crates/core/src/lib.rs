//! Exact λ-bracket calculus for Z_m-graded Lie conformal algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: exact multivariate polynomials over ℚ in `∂, λ, μ, γ, b`.
//! - [`algebra`]: bracket tables, λ-bracket evaluation, axiom checks and
//!   the built-in Virasoro / loop Virasoro / loop W(a,b) catalog.
//! - [`bimap`]: conformal bilinear maps, biderivation residuals and the
//!   closed-form biderivation families.
//! - [`solver`]: brute-force classification of biderivations by exact
//!   nullspace computation over a degree-bounded ansatz.
//! - [`cli`]: the `lca` command-line driver.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod algebra;
pub mod bimap;
pub mod cli;
pub mod poly;
pub mod solver;

pub use algebra::{make_catalog, Algebra, BValue, CatalogKind, Element, Gen};
pub use poly::{Poly, Rational, Var};
