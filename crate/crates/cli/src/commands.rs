use std::path::Path;

use anyhow::{bail, Context};
use fqrigid::belyi::{collapse_pipeline, parse_cover};
use fqrigid::drinfeldian::{class_group_oracle, search_rigid_domains, strategies, DrinfeldianDomain, RelationLattice};
use fqrigid::function_fields::catalog::parse_line;
use fqrigid::function_fields::{places_of_degree, zeta_report, CurveModel};
use fqrigid::modular_groups::{parse_frame, SubgroupFrame};
use fqrigid::parse::strip_comment;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{join, Report};
use crate::RunConfig;

fn curve(cfg: &RunConfig, spec: &str) -> anyhow::Result<CurveModel> {
    Ok(parse_line(spec, cfg.guard)?)
}

fn describe_curve(r: &mut Report, model: &CurveModel) -> anyhow::Result<()> {
    r.set("curve", model.catalog_line())?;
    r.set("q", model.q())?;
    r.set("kind", model.kind())?;
    r.set("genus", model.genus())?;
    r.line(model.catalog_line());
    Ok(())
}

pub fn class_number(cfg: &RunConfig, spec: &str) -> anyhow::Result<Report> {
    let model = curve(cfg, spec)?;
    let z = zeta_report(&model, cfg.guard)?;
    let mut r = Report::new("class-number");
    describe_curve(&mut r, &model)?;
    r.set("counts", &z.counts)?;
    r.set("zeta", &z.zeta.coeffs)?;
    r.set("class_number", z.class_number)?;
    r.line(format!("N_1..N_{}: {}", z.counts.len(), join(&z.counts)));
    r.line(format!("P(T) coefficients: {}", join(&z.zeta.coeffs)));
    r.line(format!("h = {}", z.class_number));
    Ok(r)
}

pub fn zeta(cfg: &RunConfig, spec: &str) -> anyhow::Result<Report> {
    let model = curve(cfg, spec)?;
    let z = zeta_report(&model, cfg.guard)?;
    let p = &z.zeta;
    let q = model.q() as f64;
    let g = model.genus() as f64;
    let weil = z.counts.iter().enumerate().all(|(i, &n)| {
        let k = (i + 1) as i32;
        (n as f64 - q.powi(k) - 1.0).abs() <= 2.0 * g * q.powf(k as f64 / 2.0) + 1e-9
    });
    let predicted: Vec<i128> = (1..=z.counts.len() as u32).map(|k| p.predicted_count(k)).collect();
    let moduli: Vec<f64> = p
        .reciprocal_root_moduli()
        .into_iter()
        .map(|m| (m * 1e9).round() / 1e9)
        .collect();
    let mut r = Report::new("zeta");
    describe_curve(&mut r, &model)?;
    r.set("zeta", &p.coeffs)?;
    r.set("counts", &z.counts)?;
    r.set("predicted_counts", &predicted)?;
    r.set("functional_equation", p.functional_equation_holds())?;
    r.set("weil_bounds", weil)?;
    r.set("root_moduli", &moduli)?;
    r.set("sqrt_q", (q.sqrt() * 1e9).round() / 1e9)?;
    r.line(format!("P(T) coefficients: {}", join(&p.coeffs)));
    r.line(format!("counts: {}", join(&z.counts)));
    r.line(format!("predicted: {}", join(&predicted)));
    r.line(format!("functional equation: {}", p.functional_equation_holds()));
    r.line(format!("Weil bounds: {weil}"));
    r.line(format!("|reciprocal roots|: {}", join(&moduli)));
    Ok(r)
}

pub fn places(cfg: &RunConfig, spec: &str, degree: u32) -> anyhow::Result<Report> {
    let model = curve(cfg, spec)?;
    let list = places_of_degree(&model, degree, cfg.guard)?;
    let mut r = Report::new("places");
    describe_curve(&mut r, &model)?;
    r.set("degree", degree)?;
    r.set("count", list.len())?;
    r.set("places", &list)?;
    r.line(format!("{} places of degree {degree}", list.len()));
    for p in &list {
        r.line(format!("  {p}"));
    }
    Ok(r)
}

pub fn rigid_search(cfg: &RunConfig, q: u64, genus_max: u32) -> anyhow::Result<Report> {
    let report = search_rigid_domains(q, genus_max, cfg.guard)?;
    let mut r = Report::new("rigid-search");
    let verdict = match (q >= 5, report.exceptional.is_empty()) {
        (true, true) => "consistent",
        (true, false) => "counterexample",
        (false, _) => "exceptions-expected",
    };
    r.exit = match verdict {
        "consistent" => 0,
        "counterexample" => 3,
        _ => 4,
    };
    r.set("search", &report)?;
    r.set("verdict", verdict)?;
    r.line(format!("q = {q}, genus <= {genus_max}"));
    for (kind, n) in &report.searched {
        r.line(format!("  searched {n} {kind} models"));
    }
    r.line(format!("exceptional domains: {}", report.exceptional.len()));
    for c in &report.classes {
        r.line(format!(
            "  genus {} zeta [{}] deg x {}: {} domains ({}), e.g. {} poly={:?} at {}",
            c.genus,
            join(&c.zeta),
            c.deg_x,
            c.members,
            c.kinds.join(", "),
            c.representative.kind,
            c.representative.poly,
            c.representative.place
        ));
    }
    if report.hasse_excludes_genus_one {
        r.line("Hasse bound excludes genus one");
    }
    r.line(format!("verdict: {verdict}"));
    Ok(r)
}

fn frame_lines(args: &[String]) -> anyhow::Result<Vec<String>> {
    if let [one] = args {
        let path = Path::new(one);
        if path.is_file() {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let lines: Vec<String> = text
                .lines()
                .map(strip_comment)
                .filter(|l| !l.is_empty())
                .map(str::to_string)
                .collect();
            if lines.is_empty() {
                bail!(fqrigid::Error::Parse(format!("{} holds no frames", path.display())));
            }
            return Ok(lines);
        }
    }
    Ok(vec![args.join(" ")])
}

#[derive(Serialize)]
struct FrameSummary {
    frame: String,
    q: u64,
    modulus: fqrigid::fq_poly::Poly,
    generators: Vec<[fqrigid::fq_poly::Poly; 4]>,
    order: usize,
    index: usize,
    quasi_level: Vec<fqrigid::fq_poly::Poly>,
    level: fqrigid::fq_poly::Poly,
    cusps: u64,
    modular: bool,
    reason: String,
    classically_modular: bool,
    contains_level_kernel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    torsion: Option<Vec<fqrigid::modular_groups::TorsionElement>>,
}

fn summarize(
    cfg: &RunConfig,
    line: &str,
    frame: &SubgroupFrame,
    torsion_bound: Option<u32>,
) -> anyhow::Result<FrameSummary> {
    let r = frame.ring();
    let ql = frame.quasi_level()?;
    let m = frame.modularity()?;
    Ok(FrameSummary {
        frame: line.to_string(),
        q: frame.field().q() as u64,
        modulus: frame.modulus().clone(),
        generators: frame
            .generators()
            .iter()
            .map(|g| g.0.map(|x| r.lift(x)))
            .collect(),
        order: frame.order(),
        index: frame.ambient().order() / frame.order(),
        quasi_level: ql.basis.clone(),
        level: frame.level()?,
        cusps: frame.cusp_count()?,
        modular: m.modular,
        reason: m.reason,
        classically_modular: frame.is_classically_modular_frame()?,
        contains_level_kernel: frame.contains_level_kernel()?,
        torsion: torsion_bound
            .map(|b| frame.torsion_scan(b, cfg.guard))
            .transpose()?,
    })
}

pub fn subgroup(
    cfg: &RunConfig,
    args: &[String],
    random: Option<usize>,
    torsion_bound: Option<u32>,
) -> anyhow::Result<Report> {
    let mut frames = Vec::new();
    for line in frame_lines(args)? {
        let mut frame = parse_frame(&line, cfg.guard)?;
        if let Some(k) = random {
            let ambient = frame.ambient().clone();
            let elems = ambient.elements();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let gens = (0..k).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
            frame = SubgroupFrame::new(ambient, gens)?;
        }
        frames.push((line, frame));
    }
    let mut summaries = Vec::new();
    for (line, frame) in &frames {
        summaries.push(summarize(cfg, line, frame, torsion_bound)?);
    }
    let mut r = Report::new("subgroup");
    for s in &summaries {
        r.line(&s.frame);
        r.line(format!("  |H| = {}, index {}", s.order, s.index));
        let basis = if s.quasi_level.is_empty() {
            "0".to_string()
        } else {
            join(&s.quasi_level)
        };
        r.line(format!("  quasi-level basis mod ({}): {basis}", s.modulus));
        r.line(format!("  level: ({})", s.level));
        r.line(format!("  cusps: {}", s.cusps));
        r.line(format!("  modular: {} ({})", s.modular, s.reason));
        r.line(format!("  classically modular: {}", s.classically_modular));
        if let Some(t) = &s.torsion {
            let orders: Vec<u64> = t.iter().map(|e| e.order).collect();
            r.line(format!("  torsion elements: {} with orders {}", t.len(), join(&orders)));
        }
    }
    r.set("frames", &summaries)?;
    Ok(r)
}

pub fn belyi(cfg: &RunConfig, spec: &str) -> anyhow::Result<Report> {
    let (cover, targets) = parse_cover(spec, cfg.guard)?;
    let out = collapse_pipeline(&cover, targets, cfg.guard)?;
    let bp = &out.cover.branch_points;
    let mut r = Report::new("belyi");
    r.set("cover_num", cover.num())?;
    r.set("cover_den", cover.den())?;
    r.set("degree", out.cover.degree)?;
    r.set("extension_degree", out.cover.extension_degree)?;
    r.set("field_order", out.cover.field_order)?;
    r.set("branch_points", bp.iter().map(|b| b.point).collect::<Vec<_>>())?;
    r.set("indices", bp.iter().map(|b| &b.indices).collect::<Vec<_>>())?;
    r.set("wild_flags", bp.iter().map(|b| &b.wild).collect::<Vec<_>>())?;
    r.set("designated", out.designated)?;
    r.set("additive", &out.additive)?;
    r.set("additive_check", &out.additive_check)?;
    r.set("targets", out.targets)?;
    r.set("composite_num", out.composite.num())?;
    r.set("composite_den", out.composite.den())?;
    r.set("composite_degree", out.composite_degree)?;
    r.set("composite_branch_points", &out.composite_branch_points)?;
    r.line(format!("cover {cover}, degree {}", out.cover.degree));
    r.line(format!(
        "branch points over F_{} (extension degree {}):",
        out.cover.field_order, out.cover.extension_degree
    ));
    for b in bp {
        r.line(format!("  {}: indices {} wild {:?}", b.point, join(&b.indices), b.wild));
    }
    r.line(format!("designated point: {}", out.designated));
    r.line(format!("additive polynomial coefficients: {}", join(&out.additive)));
    r.line(format!("composite: {}", out.composite));
    r.line(format!("composite degree: {}", out.composite_degree));
    r.line(format!(
        "composite branch locus inside {{{}, {}}}:",
        out.targets[0], out.targets[1]
    ));
    for b in &out.composite_branch_points {
        r.line(format!("  {}: indices {}", b.point, join(&b.indices)));
    }
    Ok(r)
}

pub fn oracle_clb(
    cfg: &RunConfig,
    spec: &str,
    place_degree: u32,
    place_index: usize,
    degree_bound: Option<u32>,
) -> anyhow::Result<Report> {
    let model = curve(cfg, spec)?;
    let list = places_of_degree(&model, place_degree, cfg.guard)?;
    let Some(place) = list.get(place_index).cloned() else {
        bail!(fqrigid::Error::Invalid(format!(
            "place index {place_index} out of range: {} places of degree {place_degree}",
            list.len()
        )));
    };
    let domain = DrinfeldianDomain::new(model.clone(), place.clone(), cfg.guard)?;
    let bound = degree_bound.unwrap_or_else(|| RelationLattice::default_bound(&domain));
    let oracle = class_group_oracle(&domain, bound, cfg.guard)?;
    let mut orders = serde_json::Map::new();
    let mut r = Report::new("oracle-clB");
    describe_curve(&mut r, &model)?;
    r.line(format!("place {place}"));
    for name in strategies().names() {
        let order = match name {
            "relation-lattice" => oracle.order,
            _ => strategies().get(name)?.class_group_order(&domain, cfg.guard)?,
        };
        r.line(format!("  {name}: |Cl(B)| = {order}"));
        orders.insert(name.to_string(), order.into());
    }
    let values: Vec<&serde_json::Value> = orders.values().collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    for run in &oracle.runs {
        r.line(format!(
            "  lattice run at degree bound {}: {} generators, {} relations, order {:?}",
            run.degree_bound, run.generators, run.relations, run.order
        ));
    }
    r.line(format!("agree: {agree}"));
    r.set("place", &place)?;
    r.set("orders", orders)?;
    r.set("runs", &oracle.runs)?;
    r.set("agree", agree)?;
    if !agree {
        r.exit = 3;
    }
    Ok(r)
}
