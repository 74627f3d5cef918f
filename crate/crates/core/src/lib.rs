//! Weierstrass semigroups at the totally ramified places of Kummer
//! extensions `y^m = f(x)^lambda` with `deg f = r` and `gcd(m, r*lambda) = 1`.
//!
//! * [`curve`]: parameters, principal divisors of monomials in `z` and `x - alpha_i`.
//! * [`onepoint`]: gap sets at a single place.
//! * [`gamma`]: closed-form minimal generating sets for every tuple shape.
//! * [`witness`]: explicit functions realizing generating-set elements.
//! * [`closure`]: the full semigroup rebuilt from its generators.
//! * [`oracle`]: brute-force Riemann-Roch dimensions and everything derived from them.
//! * [`sweep`]: formula-vs-oracle comparison over parameter ranges.

pub mod arith;
pub mod closure;
pub mod compositions;
pub mod curve;
pub mod error;
pub mod gamma;
pub mod lattice;
pub mod onepoint;
pub mod oracle;
pub mod sweep;
pub mod tuple;
pub mod witness;

pub use closure::{contains, is_minimal_in_fiber, lub, semigroup_box, BoxStrategy, Membership, SemigroupBox};
pub use curve::{
    genus, monomial_divisor, validate_params, z_exponents, CurveParams, DivisorSpec, Monomial, PlaceId,
    ZExponents,
};
pub use error::{Error, RejectReason, RejectedParams, Result};
pub use gamma::{gamma, gamma_finite, gamma_tilde, gamma_with_infinity, GammaSet, GammaTilde};
pub use onepoint::{gaps_at, gaps_at_finite, gaps_at_infinity, is_gap, GapList};
pub use tuple::{PlaceTuple, PoleVector, TupleShape};
pub use witness::{verify_witness, witness_function};
