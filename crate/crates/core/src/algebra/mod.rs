//! Exact scalar, polynomial and rational-function arithmetic.

pub mod gcd;
mod modgcd;
pub mod linalg;
pub mod mpoly;
pub mod ratfn;
pub mod scalar;
pub mod squarefree;
pub mod subst;

pub use gcd::{gcd, gcd_many, is_squarefree, lcm};
pub use mpoly::{MPoly, Monomial};
pub use ratfn::RatFn;
pub use scalar::{rat, rat_frac, PrimeField, Rational};
pub use squarefree::{square_class_of, squarefree_decompose, SquareClass, SquarefreeDecomposition};
pub use subst::{compose_poly, substitute, substitute_ratfn};
