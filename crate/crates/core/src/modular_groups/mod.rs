//! Congruence-framed subgroups of `G = GL2(A)`, `A = F_q[T]`.
//!
//! A [`SubgroupFrame`] fixes a monic modulus `f` and a subgroup `H` of the
//! reduced group `G_bar = { M over A/(f) : det M in F_q^* }`; it stands for
//! the full preimage of `H` in `G`. Quasi-level, level, cusps and torsion are
//! computed from that finite data.

mod frame;
mod group;
mod matrix;
mod ring;
mod search;

pub use frame::{parse_frame, Modularity, QuasiLevel, SubgroupFrame, TorsionElement};
pub use group::{ambient_image, closure, AmbientGroup};
pub use matrix::MatrixModF;
pub use ring::ResidueRing;
pub use search::{find_frame_with_quasi_level, span_one_frame};
