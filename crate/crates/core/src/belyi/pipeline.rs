use serde::Serialize;

use super::additive::{additive_span_polynomial, check_additive, AdditiveCheck};
use super::branch::{branch_locus, branch_locus_within, display_points, BranchPoint, BranchReport};
use super::map::{mobius_map, P1Point, RationalMap};
use crate::fq_poly::{Fe, Field};
use crate::parse;
use crate::{Error, Guard, Result};

/// Output of [`collapse_pipeline`].
#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    /// Branch data of the input cover.
    pub cover: BranchReport,
    /// The branch point sent to infinity first.
    pub designated: P1Point,
    /// Coefficients of the additive polynomial, lowest first.
    pub additive: Vec<u32>,
    pub additive_check: AdditiveCheck,
    pub targets: [P1Point; 2],
    #[serde(skip)]
    pub composite: RationalMap,
    pub composite_degree: usize,
    /// Recomputed branch data of the composite, all over the targets.
    pub composite_branch_points: Vec<BranchPoint>,
}

/// `x -> 1/(x - beta)`, or the identity when `beta` is infinite.
fn send_to_infinity(field: &Field, beta: P1Point) -> Result<RationalMap> {
    match beta {
        P1Point::Infinity => Ok(RationalMap::identity(field)),
        P1Point::Finite(b) => mobius_map(field, Fe::ZERO, Fe::ONE, Fe::ONE, field.neg(b)),
    }
}

/// A Moebius map with `0 -> t0` and `infinity -> t1`.
fn place_zero_and_infinity(field: &Field, t0: P1Point, t1: P1Point) -> Result<RationalMap> {
    use P1Point::*;
    match (t0, t1) {
        (Finite(a), Infinity) => mobius_map(field, Fe::ONE, a, Fe::ZERO, Fe::ONE),
        (Infinity, Finite(b)) => mobius_map(field, b, Fe::ONE, Fe::ONE, Fe::ZERO),
        (Finite(a), Finite(b)) => mobius_map(field, b, a, Fe::ONE, Fe::ONE),
        (Infinity, Infinity) => Err(Error::Invalid("target points must be distinct".into())),
    }
}

/// Postcomposes `cover` so that its branch locus lands inside `targets`:
/// one branch point goes to infinity, the span of the others is killed by an
/// additive polynomial, and `{0, infinity}` is moved onto the targets.
/// Targets are points of `P^1` over the cover's field.
pub fn collapse_pipeline(
    cover: &RationalMap,
    targets: [P1Point; 2],
    guard: Guard,
) -> Result<CollapseReport> {
    if targets[0] == targets[1] {
        return Err(Error::Invalid("target points must be distinct".into()));
    }
    for t in targets {
        if let P1Point::Finite(a) = t {
            if !cover.field().contains(a) {
                return Err(Error::NotInBaseField(a.0));
            }
        }
    }
    let report = branch_locus(cover, guard)?;
    let k = report.field.clone();
    let lifted = match &report.embedding {
        Some(e) => cover.map_up(e),
        None => cover.clone(),
    };
    let lifted_targets = targets.map(|t| report.lift(t));

    let points = report.points();
    let designated = if points.contains(&P1Point::Infinity) {
        P1Point::Infinity
    } else {
        points.first().copied().unwrap_or(P1Point::Infinity)
    };
    let mu1 = send_to_infinity(&k, designated)?;
    let remaining: Vec<Fe> = points
        .iter()
        .filter(|&&b| b != designated)
        .map(|&b| match mu1.eval(b) {
            P1Point::Finite(a) => a,
            P1Point::Infinity => unreachable!("only the designated point goes to infinity"),
        })
        .collect();
    let psi = additive_span_polynomial(&k, &remaining, guard)?;
    let composite_degree = psi.degree().saturating_mul(cover.degree() as u128);
    guard.check("composite degree squared", composite_degree.saturating_mul(composite_degree))?;
    let additive_check = check_additive(&psi, &remaining, guard)?;
    if !additive_check.passed() {
        return Err(Error::Internal(format!(
            "additive polynomial failed its checks: {additive_check:?}"
        )));
    }
    let psi_map = RationalMap::polynomial(&k, psi.to_poly())?;
    let mu2 = place_zero_and_infinity(&k, lifted_targets[0], lifted_targets[1])?;

    let composite = mu2.compose(&psi_map.compose(&mu1.compose(&lifted)?)?)?;
    let composite_branch_points = branch_locus_within(&composite, &lifted_targets, guard)?;
    if composite_branch_points
        .iter()
        .any(|b| !lifted_targets.contains(&b.point))
    {
        return Err(Error::BranchEscape(display_points(&lifted_targets)));
    }
    Ok(CollapseReport {
        cover: report,
        designated,
        additive: psi.coeffs().iter().map(|c| c.0).collect(),
        additive_check,
        targets,
        composite_degree: composite.degree(),
        composite,
        composite_branch_points,
    })
}

fn parse_point(field: &Field, s: &str) -> Result<P1Point> {
    let s = s.trim();
    if s == "inf" {
        return Ok(P1Point::Infinity);
    }
    let code = parse::parse_u64("target", s)?;
    if code >= field.q() as u64 {
        return Err(Error::NotInBaseField(code as u32));
    }
    Ok(P1Point::Finite(Fe(code as u32)))
}

/// Parses `q=<int> num=<poly> den=<poly> targets=<a>,<b>`, where a target is
/// an element code or `inf`. `den` defaults to 1 and `targets` to `0,inf`.
pub fn parse_cover(line: &str, guard: Guard) -> Result<(RationalMap, [P1Point; 2])> {
    let kv = parse::key_values(parse::strip_comment(line))?;
    for key in kv.keys() {
        if !["q", "num", "den", "targets"].contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown key `{key}`")));
        }
    }
    let get = |k: &str| kv.get(k).ok_or_else(|| Error::Parse(format!("missing {k}=")));
    let q = parse::parse_u64("q", get("q")?)?;
    let field = Field::of_order(q, guard)?;
    let num = parse::univariate(&field, get("num")?)?;
    let den = match kv.get("den") {
        Some(d) => parse::univariate(&field, d)?,
        None => crate::fq_poly::Poly::one(),
    };
    let map = RationalMap::new(&field, num, den)?;
    let targets = kv.get("targets").map(String::as_str).unwrap_or("0,inf");
    let pts: Vec<&str> = targets.split(',').collect();
    if pts.len() != 2 {
        return Err(Error::Parse(format!("targets needs two points, found `{targets}`")));
    }
    let pair = [parse_point(&field, pts[0])?, parse_point(&field, pts[1])?];
    if pair[0] == pair[1] {
        return Err(Error::Invalid("target points must be distinct".into()));
    }
    Ok((map, pair))
}
