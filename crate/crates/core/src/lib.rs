//! Exact computer algebra for Macdonald polynomials.
//!
//! The building blocks, bottom up:
//! - [`partition`]: integer partitions, diagrams, arm/leg statistics
//! - [`vars`], [`poly`], [`ratfunc`]: the coefficient field `Q(q,t,a,…)`
//!   (integer multivariate polynomials and their fraction field)
//! - [`qfactors`]: q-shifted factorials `(b)_k`, `(b)_λ`, hook polynomials
//!   `c_λ`, `c'_λ` and friends
//! - [`symseries`]: symmetric polynomials in `n` variables in the monomial
//!   basis, power sums, the `(q,t)` scalar product
//! - [`macdonald`]: Gram–Schmidt construction of `P_λ`, `Q_λ`, normalized
//!   variants, skew polynomials and `q,t`-Littlewood–Richardson coefficients
//! - [`plethysm`]: evaluation on alphabets such as `(1-a)/(1-t)`
//! - [`polyseries`]: truncated (multi-alphabet) power series used by the
//!   identity verifier
//! - [`cache`]: the on-disk polynomial cache

pub mod cache;
pub mod error;
pub mod gcd;
pub mod macdonald;
pub mod partition;
pub mod plethysm;
pub mod poly;
pub mod polyseries;
pub mod qfactors;
pub mod ratfunc;
pub mod symseries;
pub mod vars;

pub use error::Error;
pub use partition::{Cell, Partition};
pub use ratfunc::{MonomialExpr, RatFunc};
pub use vars::VarSet;
