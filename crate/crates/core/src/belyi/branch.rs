use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::map::{P1Point, RationalMap};
use crate::fq_poly::{distinct_degree_factorization, Embedding, Field, Poly};
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPoint {
    pub point: P1Point,
    /// Ramification indices above the point, descending, one per geometric point.
    pub indices: Vec<u32>,
    pub wild: Vec<bool>,
}

/// Branch points of a self-map of `P^1`, with coordinates in `F_{q^r'}`.
#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub degree: usize,
    pub extension_degree: u32,
    pub field_order: u64,
    pub branch_points: Vec<BranchPoint>,
    #[serde(skip)]
    pub field: Field,
    /// Base field into `field`; `None` when no extension was needed.
    #[serde(skip)]
    pub embedding: Option<Arc<Embedding>>,
}

impl BranchReport {
    pub fn points(&self) -> Vec<P1Point> {
        self.branch_points.iter().map(|b| b.point).collect()
    }

    /// `sum (e - 1)` over all ramification points.
    pub fn ramification_sum(&self) -> u64 {
        self.branch_points
            .iter()
            .flat_map(|b| b.indices.iter())
            .map(|&e| e as u64 - 1)
            .sum()
    }

    pub fn is_tame(&self) -> bool {
        self.branch_points.iter().all(|b| b.wild.iter().all(|w| !w))
    }

    /// Maps a base-field point into the report's field.
    pub fn lift(&self, x: P1Point) -> P1Point {
        match &self.embedding {
            Some(e) => x.map(e),
            None => x,
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Degree of the smallest extension over which `f` splits.
pub fn splitting_degree(field: &Field, f: &Poly) -> u32 {
    f.squarefree_factorization(field)
        .iter()
        .flat_map(|(g, _)| distinct_degree_factorization(field, g))
        .fold(1, |acc, (d, _)| lcm(acc, d as u32))
}

/// Numerator of `map - c`, or the denominator when `c` is infinite.
pub(crate) fn fiber_polynomial(map: &RationalMap, c: P1Point) -> Poly {
    let k = map.field();
    match c {
        P1Point::Finite(c) => map.num().sub(k, &map.den().scale(k, c)),
        P1Point::Infinity => map.den().clone(),
    }
}

fn multiplicity_at_zero(f: &Poly) -> usize {
    f.coeffs().iter().take_while(|c| c.is_zero()).count()
}

/// Ramification indices above `c`, descending, counted over the algebraic
/// closure.
pub fn fiber_indices(map: &RationalMap, c: P1Point) -> Vec<u32> {
    let k = map.field();
    let mut out = Vec::new();
    for (h, e) in fiber_polynomial(map, c).squarefree_factorization(k) {
        out.extend(std::iter::repeat_n(e as u32, h.deg()));
    }
    if map.eval(P1Point::Infinity) == c {
        let e = multiplicity_at_zero(&fiber_polynomial(&map.at_reciprocal(), c));
        out.push(e as u32);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn branch_point(map: &RationalMap, c: P1Point) -> Result<BranchPoint> {
    let indices = fiber_indices(map, c);
    let total: u32 = indices.iter().sum();
    if total as usize != map.degree() {
        return Err(Error::Internal(format!(
            "indices above {c} sum to {total}, expected {}",
            map.degree()
        )));
    }
    let p = map.field().p();
    Ok(BranchPoint {
        point: c,
        wild: indices.iter().map(|&e| e % p == 0).collect(),
        indices,
    })
}

/// Whether `infinity` is a ramification point.
pub(crate) fn ramified_at_infinity(map: &RationalMap) -> bool {
    map.at_reciprocal().wronskian().coeff(0).is_zero()
}

/// Branch points and ramification data of a separable map, over the
/// extension that splits the ramification divisor.
pub fn branch_locus(map: &RationalMap, guard: Guard) -> Result<BranchReport> {
    let base = map.field();
    let w = map.wronskian();
    if w.is_zero() {
        return Err(Error::Inseparable(format!(
            "N'D - ND' vanishes identically for {map}"
        )));
    }
    guard.check("map degree", map.degree() as u128)?;
    let r = splitting_degree(base, &w);
    guard.check("splitting field", checked_pow(base.q() as u64, r))?;
    let (field, embedding, lifted) = if r == 1 {
        (base.clone(), None, map.clone())
    } else {
        let (big, emb) = base.extension(r, guard)?;
        let lifted = map.map_up(&emb);
        (big, Some(emb), lifted)
    };

    let mut ramified: Vec<P1Point> = if w.is_constant() {
        Vec::new()
    } else {
        lifted
            .wronskian()
            .roots(&field)
            .into_iter()
            .map(P1Point::Finite)
            .collect()
    };
    if ramified_at_infinity(&lifted) {
        ramified.push(P1Point::Infinity);
    }
    let mut images: Vec<P1Point> = ramified.iter().map(|&x| lifted.eval(x)).collect();
    images.sort();
    images.dedup();

    let branch_points = images
        .par_iter()
        .map(|&c| branch_point(&lifted, c))
        .collect::<Result<Vec<_>>>()?;
    if branch_points.iter().any(|b| b.indices.iter().all(|&e| e == 1)) {
        return Err(Error::Internal("unramified fiber over a critical value".into()));
    }
    Ok(BranchReport {
        degree: map.degree(),
        extension_degree: r,
        field_order: field.q() as u64,
        branch_points,
        field,
        embedding,
    })
}

/// Branch data of `map` under the premise that every branch point lies in
/// `targets`; checked exactly without splitting the ramification divisor.
pub fn branch_locus_within(
    map: &RationalMap,
    targets: &[P1Point],
    guard: Guard,
) -> Result<Vec<BranchPoint>> {
    let k = map.field();
    let w = map.wronskian();
    if w.is_zero() {
        return Err(Error::Inseparable(format!(
            "N'D - ND' vanishes identically for {map}"
        )));
    }
    guard.check("map degree", map.degree() as u128)?;
    let fibers = targets
        .iter()
        .fold(Poly::one(), |acc, &t| acc.mul(k, &fiber_polynomial(map, t)));
    // Every root of W lies in a target fiber iff W | fibers^deg W.
    if !w.is_constant() && !fibers.pow_mod(k, w.deg() as u128, &w).is_zero() {
        return Err(Error::BranchEscape(format!(
            "finite ramification of {map} outside {}",
            display_points(targets)
        )));
    }
    let at_inf = map.eval(P1Point::Infinity);
    if ramified_at_infinity(map) && !targets.contains(&at_inf) {
        return Err(Error::BranchEscape(format!(
            "ramification at infinity of {map} lies over {at_inf}"
        )));
    }
    let mut out = Vec::new();
    let mut sorted = targets.to_vec();
    sorted.sort();
    sorted.dedup();
    for t in sorted {
        let b = branch_point(map, t)?;
        if b.indices.iter().any(|&e| e > 1) {
            out.push(b);
        }
    }
    Ok(out)
}

pub(crate) fn display_points(points: &[P1Point]) -> String {
    let v: Vec<String> = points.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_degrees() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(splitting_degree(&f2, &Poly::from_codes(&[1, 1, 1])), 2);
        assert_eq!(splitting_degree(&f2, &Poly::from_codes(&[1, 0, 0, 0, 1, 1])), 6);
        assert_eq!(splitting_degree(&f2, &Poly::from_codes(&[0, 0, 1])), 1);
    }
}
