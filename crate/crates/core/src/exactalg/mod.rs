//! Exact rational arithmetic and univariate polynomial algebra.

pub mod poly;
pub mod rational;
pub mod resultant;
pub mod sturm;

pub use poly::{poly_derivative, poly_eval, UniPoly};
pub use rational::{parse_rational, Rational};
pub use resultant::{
    determinant, discriminant, discriminant_prs, resultant, resultant_prs, signum, sylvester_matrix, AlgebraError,
};
pub use sturm::{
    isolate_real_roots, isolate_real_roots_in, isolate_with_chain, refine_root, sturm_count, Bound, RootInterval,
    SturmChain,
};
