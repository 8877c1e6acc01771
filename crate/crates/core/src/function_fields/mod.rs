//! Curves over `F_q` in a few explicit model kinds: point counts, zeta
//! numerators, class numbers and closed points.
//!
//! Each kind is a [`CurveFamily`] registered by name in a [`FamilyRegistry`];
//! the `kind=` field of a catalog line selects it at runtime.

mod artin_schreier;
pub mod catalog;
mod family;
mod hyperelliptic;
mod line;
mod model;
mod places;
mod plane;
pub mod zeta;

pub use artin_schreier::ArtinSchreier;
pub use family::{registry, AffinePresentation, CurveFamily, FamilyRegistry};
pub use hyperelliptic::Hyperelliptic;
pub use line::ProjectiveLine;
pub use model::{CurveModel, CurvePoint, Equation, PlaneForm};
pub use places::{places_of_degree, Place, PlaceRepr};
pub use plane::{weierstrass_discriminant, weierstrass_form, SmoothPlane};
pub use zeta::{class_number, zeta_numerator, zeta_report, ZetaNumerator, ZetaReport};

use crate::{Guard, Result};

/// Number of points over `F_{q^k}`.
pub fn count_points(model: &CurveModel, k: u32, guard: Guard) -> Result<u64> {
    model.count_points(k, guard)
}
