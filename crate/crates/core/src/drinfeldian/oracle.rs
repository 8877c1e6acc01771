//! Direct computation of `|Cl(B)|` as a quotient of a free abelian group on
//! places by divisors of functions, independent of the zeta function.

use serde::Serialize;

use super::lattice::Lattice;
use super::series::{monomial_series, Series};
use super::DrinfeldianDomain;
use crate::fq_poly::{Fe, Poly};
use crate::function_fields::{places_of_degree, AffinePresentation, CurvePoint, Place, PlaceRepr};
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

/// One run of the relation-lattice computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRun {
    pub degree_bound: u32,
    pub pole_budget: u64,
    pub generators: usize,
    pub functions: u64,
    pub relations: u64,
    pub order: Option<u128>,
}

/// Result of the oracle: two runs at increasing bounds that agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub order: u64,
    pub runs: Vec<OracleRun>,
}

/// Pole budget used at a given degree bound.
pub fn pole_budget(genus: u32, degree_bound: u32) -> u64 {
    2 * genus as u64 + 2 * degree_bound as u64 + 2
}

/// `|Cl(B)|` from the relation lattice at `degree_bound`, confirmed at
/// `degree_bound + 1`; disagreement is [`Error::Unstable`].
pub fn class_group_oracle(
    domain: &DrinfeldianDomain,
    degree_bound: u32,
    guard: Guard,
) -> Result<OracleReport> {
    let b = degree_bound.max(1);
    let g = domain.curve().genus();
    let first = oracle_run(domain, b, pole_budget(g, b), guard)?;
    let second = oracle_run(domain, b + 1, pole_budget(g, b + 1), guard)?;
    match (first.order, second.order) {
        (Some(a), Some(c)) if a == c => Ok(OracleReport {
            order: a as u64,
            runs: vec![first, second],
        }),
        (a, c) => Err(Error::Unstable(format!(
            "order {} at degree bound {b}, {} at {}",
            a.map_or("infinite".to_string(), |v| v.to_string()),
            c.map_or("infinite".to_string(), |v| v.to_string()),
            b + 1
        ))),
    }
}

struct Generator {
    place: Place,
    /// Basis-monomial series at the representative point (curve models).
    series: Option<Vec<Series>>,
    big: Option<crate::fq_poly::Field>,
    emb: Option<std::sync::Arc<crate::fq_poly::Embedding>>,
}

/// Basis monomials `(i, j)` with `j < y_degree` and weight at most `budget`,
/// sorted by weight.
fn basis_monomials(pres: &AffinePresentation, budget: u64) -> Vec<(u64, u64)> {
    let (wx, wy) = pres.weights;
    let mut out = Vec::new();
    for j in 0..pres.y_degree as u64 {
        let mut i = 0;
        while i * wx + j * wy <= budget {
            out.push((i, j));
            i += 1;
        }
    }
    out.sort_by_key(|&(i, j)| (i * wx + j * wy, j));
    out
}

/// One lattice computation at a fixed degree bound and pole budget.
pub fn oracle_run(
    domain: &DrinfeldianDomain,
    degree_bound: u32,
    budget: u64,
    guard: Guard,
) -> Result<OracleRun> {
    let curve = domain.curve();
    let field = curve.field();
    let pres = curve.family().affine_presentation(curve).ok_or_else(|| {
        Error::Unsupported(format!(
            "the relation-lattice oracle needs a model with one rational point at infinity; {} is not of that shape",
            curve.catalog_line()
        ))
    })?;
    let is_line = pres.rows.is_empty();

    // Generators: finite places of degree <= bound, the point at infinity,
    // and the removed place.
    let mut places: Vec<Place> = Vec::new();
    for e in 1..=degree_bound {
        for pl in places_of_degree(curve, e, guard)? {
            if !pl.is_infinite() {
                places.push(pl);
            }
        }
    }
    if !places.contains(domain.place()) && !domain.place().is_infinite() {
        places.push(domain.place().clone());
    }
    let infinity = if is_line {
        Place::infinity()
    } else {
        Place {
            degree: 1,
            repr: PlaceRepr::Point(CurvePoint::Infinity(Vec::new())),
        }
    };
    let inf_index = places.len();
    places.push(infinity);
    let n = places.len();
    let x_index = places
        .iter()
        .position(|p| p == domain.place())
        .ok_or_else(|| Error::Internal("removed place missing from generators".into()))?;

    let monomials = basis_monomials(&pres, budget);
    let (wx, wy) = pres.weights;
    let prec = budget as usize + 2;

    let mut gens = Vec::with_capacity(n);
    for pl in &places[..inf_index] {
        match &pl.repr {
            PlaceRepr::Prime(_) => gens.push(Generator {
                place: pl.clone(),
                series: None,
                big: None,
                emb: None,
            }),
            PlaceRepr::Point(CurvePoint::Affine(c)) => {
                let (big, emb) = field.extension(pl.degree, guard)?;
                let rows_big: Vec<Poly> = pres.rows.iter().map(|r| r.map_up(&emb)).collect();
                let b = c.get(1).copied().unwrap_or(Fe::ZERO);
                let s = monomial_series(&big, &pres, &rows_big, c[0], b, &monomials, prec)?;
                gens.push(Generator {
                    place: pl.clone(),
                    series: Some(s),
                    big: Some(big),
                    emb: Some(emb),
                });
            }
            _ => return Err(Error::Internal(format!("unexpected generator {pl}"))),
        }
    }

    // Functions: leading monomial has coefficient 1, lower ones arbitrary.
    let q = field.q() as u64;
    let mut total: u128 = 0;
    for k in 0..monomials.len() {
        total = total.saturating_add(checked_pow(q, k as u32));
    }
    guard.check("oracle function enumeration", total)?;

    let mut lattice = Lattice::new(n);
    let mut unit = vec![0i128; n];
    unit[x_index] = 1;
    lattice.insert(&unit);

    let mut functions = 0u64;
    let mut relations = 0u64;
    for lead in 1..monomials.len() {
        let pole = monomials[lead].0 * wx + monomials[lead].1 * wy;
        let count = checked_pow(q, lead as u32) as u64;
        for code in 0..count {
            functions += 1;
            let mut coeffs = vec![Fe::ZERO; lead + 1];
            let mut r = code;
            for c in coeffs.iter_mut().take(lead) {
                *c = Fe((r % q) as u32);
                r /= q;
            }
            coeffs[lead] = Fe::ONE;
            let mut row = vec![0i128; n];
            let mut zero_degree = 0u64;
            for (gi, gen) in gens.iter().enumerate() {
                let v = valuation(gen, &coeffs, &monomials, field)?;
                row[gi] = v as i128;
                zero_degree += v * gen.place.degree as u64;
            }
            if zero_degree == pole {
                row[inf_index] = -(pole as i128);
                lattice.insert(&row);
                relations += 1;
            } else if zero_degree > pole {
                return Err(Error::Internal(format!(
                    "function with pole order {pole} has zeros of degree {zero_degree}"
                )));
            }
        }
    }
    Ok(OracleRun {
        degree_bound,
        pole_budget: budget,
        generators: n,
        functions,
        relations,
        order: lattice.index(),
    })
}

/// Valuation at a generator of `sum coeffs[k] * monomial[k]`.
fn valuation(
    gen: &Generator,
    coeffs: &[Fe],
    monomials: &[(u64, u64)],
    field: &crate::fq_poly::Field,
) -> Result<u64> {
    match (&gen.place.repr, &gen.series) {
        (PlaceRepr::Prime(pi), _) => {
            let mut f = Poly::zero();
            for (k, &c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    f = f.add(field, &Poly::monomial(c, monomials[k].0 as usize));
                }
            }
            let mut v = 0;
            while let Some(qt) = f.div_exact(field, pi) {
                f = qt;
                v += 1;
            }
            Ok(v)
        }
        (_, Some(series)) => {
            let big = gen.big.as_ref().expect("series carry their field");
            let emb = gen.emb.as_ref().expect("series carry their embedding");
            let prec = series[0].0.len();
            let mut acc = Series::constant(Fe::ZERO, prec);
            for (k, &c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(big, &series[k].scale(big, emb.map(c)));
                }
            }
            match acc.order() {
                Some(v) => Ok(v as u64),
                None => Err(Error::Internal(
                    "nonzero function vanished to working precision".into(),
                )),
            }
        }
        _ => Err(Error::Internal("generator without local data".into())),
    }
}
