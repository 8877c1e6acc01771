//! Function fields over finite fields and the objects built on them:
//! class numbers and zeta numerators of curves, Drinfeldian domains and
//! their class groups, congruence-framed subgroups of `GL2(Fq[T])`, and the
//! additive collapse of branch loci for covers of the projective line.
//!
//! Every exhaustive routine is bounded by a [`Guard`]; going past the bound
//! is reported as [`Error::GuardExceeded`] rather than truncated.

pub mod belyi;
pub mod drinfeldian;
mod error;
pub mod fq_poly;
pub mod function_fields;
mod guard;
pub mod modular_groups;
pub mod parse;

pub use error::{Error, Result};
pub use guard::Guard;
