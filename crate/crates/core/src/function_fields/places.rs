use std::fmt;

use serde::Serialize;

use super::model::{CurveModel, CurvePoint};
use crate::fq_poly::Poly;
use crate::{Guard, Result};

/// How a closed point is written down.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceRepr {
    /// A finite place of the projective line, by its monic irreducible.
    Prime(Poly),
    /// The least point of the Frobenius orbit, coordinates in `F_{q^d}`.
    Point(CurvePoint),
    /// The place at infinity of the projective line.
    Infinity,
}

/// A closed point: a Frobenius orbit of geometric points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    pub degree: u32,
    pub repr: PlaceRepr,
}

impl Place {
    pub fn prime(p: Poly) -> Place {
        Place {
            degree: p.deg() as u32,
            repr: PlaceRepr::Prime(p),
        }
    }

    pub fn infinity() -> Place {
        Place {
            degree: 1,
            repr: PlaceRepr::Infinity,
        }
    }

    pub fn is_infinite(&self) -> bool {
        match &self.repr {
            PlaceRepr::Infinity => true,
            PlaceRepr::Point(p) => p.is_infinite(),
            PlaceRepr::Prime(_) => false,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            PlaceRepr::Prime(p) => write!(f, "prime{p}"),
            PlaceRepr::Point(pt) => write!(f, "deg{}:{pt}", self.degree),
            PlaceRepr::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Places of degree `d` from the points over `F_{q^d}` whose Frobenius orbit
/// has exactly `d` elements, each represented by its least orbit member.
pub(crate) fn places_from_points(model: &CurveModel, d: u32, guard: Guard) -> Result<Vec<Place>> {
    let (big, pts) = model.points_over(d, guard)?;
    let q = model.q();
    let mut out = Vec::new();
    for pt in &pts {
        let mut orbit_len = 1;
        let mut minimal = true;
        let mut cur = pt.frobenius(&big, q);
        while cur != *pt {
            if cur < *pt {
                minimal = false;
                break;
            }
            orbit_len += 1;
            cur = cur.frobenius(&big, q);
        }
        if minimal && orbit_len == d {
            out.push(Place {
                degree: d,
                repr: PlaceRepr::Point(pt.clone()),
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Closed points of degree `d`, canonically ordered.
pub fn places_of_degree(model: &CurveModel, d: u32, guard: Guard) -> Result<Vec<Place>> {
    if d == 0 {
        return Err(crate::Error::Invalid("place degree must be positive".into()));
    }
    model.family().places(model, d, guard)
}
