//! Exact computational algebraic geometry kernel: polynomial arithmetic over
//! the rationals, Gröbner bases, ideal operations, factorization, minimal
//! primes, conormal spaces and Whitney (a) stratifications.

pub mod budget;
pub mod decomp;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod idealops;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod strat;

pub use error::{AlgebraError, Result};
pub use groebner::{GroebnerBasis, Ideal};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::parse_polynomial;
pub use poly::{Polynomial, Rational};
pub use ring::{Ring, RingContext, VarRole};
pub use decomp::{minimal_primes, Certification, PrimeComponent, Witness};
pub use strat::{
    affine_view, at_infinity, boundary_candidates, conormal_ideal, dual_variety, singular_locus, whitney_a_holds, whitney_a_irregular,
    whitney_a_stratify, whitney_a_stratify_with, StratificationLevels, StratifyOptions, WhitneyPairReport,
};
