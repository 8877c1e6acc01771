use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ClassGroupReport;
use crate::fq_poly::{Field, Poly};
use crate::function_fields::{
    places_of_degree, registry, zeta, zeta_report, CurveModel, Equation, FamilyRegistry, Place,
};
use crate::{Error, Guard, Result};

/// One rigid domain found by the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainEntry {
    pub q: u64,
    pub kind: String,
    pub genus: u32,
    pub poly: Vec<u32>,
    pub place: Place,
    #[serde(rename = "h_K")]
    pub h_k: u64,
    pub deg_x: u32,
    #[serde(rename = "h_B")]
    pub h_b: u64,
}

/// Exceptional domains sharing `q`, genus, zeta numerator and `deg x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalClass {
    pub q: u64,
    pub genus: u32,
    pub zeta: Vec<i64>,
    pub deg_x: u32,
    pub kinds: Vec<String>,
    pub members: usize,
    pub representative: DomainEntry,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub q: u64,
    pub genus_max: u32,
    /// Curves examined per kind.
    pub searched: BTreeMap<String, usize>,
    pub standard: Vec<DomainEntry>,
    pub exceptional: Vec<DomainEntry>,
    pub classes: Vec<ExceptionalClass>,
    /// Whether `q + 1 - 2 sqrt(q) > 1`, which rules out genus-one members.
    pub hasse_excludes_genus_one: bool,
}

fn entry(model: &CurveModel, place: Place, report: &ClassGroupReport) -> DomainEntry {
    DomainEntry {
        q: model.q(),
        kind: model.kind().to_string(),
        genus: model.genus(),
        poly: model.equation().codes(),
        place,
        h_k: report.h_k,
        deg_x: report.deg_x,
        h_b: report.h_b,
    }
}

/// Rigid domains over `F_q` with curve genus at most `genus_max`, over every
/// registered kind's search space.
pub fn search_rigid_domains(q: u64, genus_max: u32, guard: Guard) -> Result<SearchReport> {
    search_with(registry(), q, genus_max, guard)
}

pub fn search_with(
    reg: &FamilyRegistry,
    q: u64,
    genus_max: u32,
    guard: Guard,
) -> Result<SearchReport> {
    let field = Field::of_order(q, guard)?;

    let line = reg.model(&field, "projective-line", "")?;
    let standard_place = Place::prime(Poly::x());
    let standard = vec![entry(&line, standard_place, &ClassGroupReport::from_parts(1, 1))];

    let mut searched = BTreeMap::new();
    let mut candidates: Vec<(usize, Equation)> = Vec::new();
    let families: Vec<_> = reg.iter().cloned().collect();
    for (fi, fam) in families.iter().enumerate() {
        let eqs = fam.search_space(&field, genus_max, guard)?;
        searched.insert(fam.name().to_string(), eqs.len());
        candidates.extend(eqs.into_iter().map(|e| (fi, e)));
    }

    let found: Vec<Vec<DomainEntry>> = candidates
        .par_iter()
        .map(|(fi, eq)| -> Result<Vec<DomainEntry>> {
            let model = CurveModel::new(&field, families[*fi].clone(), eq.clone())?;
            if model.genus() == 0 || model.genus() > genus_max {
                return Ok(Vec::new());
            }
            if zeta::zeta_unchecked(&model, guard)?.class_number() != 1 {
                return Ok(Vec::new());
            }
            let report = zeta_report(&model, guard)?;
            let cg = ClassGroupReport::from_parts(report.class_number, 1);
            Ok(places_of_degree(&model, 1, guard)?
                .into_iter()
                .map(|pl| entry(&model, pl, &cg))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut exceptional: Vec<DomainEntry> = found.into_iter().flatten().collect();
    exceptional.sort_by(|a, b| {
        (a.genus, &a.kind, a.poly.len(), a.poly.iter().rev().collect::<Vec<_>>(), &a.place).cmp(&(
            b.genus,
            &b.kind,
            b.poly.len(),
            b.poly.iter().rev().collect::<Vec<_>>(),
            &b.place,
        ))
    });

    let qf = q as f64;
    let hasse_excludes_genus_one = qf + 1.0 - 2.0 * qf.sqrt() > 1.0 + 1e-9;
    if hasse_excludes_genus_one && exceptional.iter().any(|e| e.genus == 1) {
        return Err(Error::Internal(
            "genus-one domain of class number one found although the Hasse bound excludes it"
                .into(),
        ));
    }

    let classes = group_classes(reg, &field, &exceptional, guard)?;
    Ok(SearchReport {
        q,
        genus_max,
        searched,
        standard,
        exceptional,
        classes,
        hasse_excludes_genus_one,
    })
}

fn group_classes(
    reg: &FamilyRegistry,
    field: &Field,
    entries: &[DomainEntry],
    guard: Guard,
) -> Result<Vec<ExceptionalClass>> {
    let mut groups: BTreeMap<(u32, Vec<i64>, u32), ExceptionalClass> = BTreeMap::new();
    for e in entries {
        let family = reg.get(&e.kind)?;
        let eq = family.parse_equation(field, &format!("{:?}", e.poly))?;
        let model = CurveModel::new(field, family, eq)?;
        let z = zeta::zeta_unchecked(&model, guard)?;
        let key = (e.genus, z.coeffs.clone(), e.deg_x);
        let class = groups.entry(key).or_insert_with(|| ExceptionalClass {
            q: e.q,
            genus: e.genus,
            zeta: z.coeffs.clone(),
            deg_x: e.deg_x,
            kinds: Vec::new(),
            members: 0,
            representative: e.clone(),
        });
        class.members += 1;
        if !class.kinds.contains(&e.kind) {
            class.kinds.push(e.kind.clone());
            class.kinds.sort();
        }
    }
    Ok(groups.into_values().collect())
}
