//! Exact calculus on finite-order Schwartz distributions that arise as n-th
//! distributional derivatives of piecewise-polynomial regulated primitives.
//!
//! A distribution here is stored as its order `n` together with the unique
//! left-continuous regulated primitive `F` (vanishing at `-inf`) with
//! `F^(n) = f`.  Multipliers are iterated integrals of functions of bounded
//! variation.  On this representation the crate computes, exactly over
//! arbitrary-precision rationals:
//!
//! * the regulated primitive integral `∫ f h` via Henstock-Stieltjes
//!   decomposition, with a floating-point gauge-sum oracle for validation;
//! * Alexiewicz norms, `BV`/`IBV^n` norms and total variation as certified
//!   enclosures;
//! * Banach-lattice structure (join, meet, absolute value, Jordan
//!   decomposition) and the algebra product transported from the primitives;
//! * translation, linear change of variables, moments, reconstruction of the
//!   primitive from the distribution, and membership/order conversion
//!   between the spaces.

pub mod distribution;
pub mod error;
pub mod lattice;
pub mod numeric;
pub mod oracle;
pub mod piecewise;
pub mod serial;
pub mod spaces;
pub mod stieltjes;

pub use distribution::{dirac_derivative, Distribution, IntervalSpec};
pub use error::{Error, Result};
pub use numeric::{rat, rat_from_str, rat_i, rat_to_string, Enclosure, ExtReal, Rat};
pub use piecewise::{PiecewiseFn, TailClass};
pub use spaces::{BVFunction, Continuity, Multiplier, RegulatedPrimitive};
