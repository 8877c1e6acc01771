use std::collections::BTreeMap;

use super::family::{AffinePresentation, CurveFamily};
use super::model::{CurveModel, CurvePoint, Equation, PlaneForm};
use crate::fq_poly::{Embedding, Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::parse;
use crate::{Error, Guard, Result};

/// A nonsingular plane curve `F(x, y, z) = 0` of degree `d`, genus `(d-1)(d-2)/2`.
pub struct SmoothPlane;

fn form_of(model: &CurveModel) -> &PlaneForm {
    match model.equation() {
        Equation::Form(f) => f,
        _ => unreachable!("plane models hold a form"),
    }
}

/// Coefficients `(a1, a2, a3, a4, a6)` when the form reads
/// `y^2 z + a1 x y z + a3 y z^2 - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3`.
pub fn weierstrass_coefficients(field: &Field, form: &PlaneForm) -> Option<[Fe; 5]> {
    if form.degree != 3 || form.coeff((0, 2)) != Fe::ONE {
        return None;
    }
    if form.coeff((3, 0)) != field.neg(Fe::ONE) {
        return None;
    }
    let allowed = [(3, 0), (0, 2), (1, 1), (0, 1), (2, 0), (1, 0), (0, 0)];
    if form.terms.iter().any(|(m, _)| !allowed.contains(m)) {
        return None;
    }
    Some([
        form.coeff((1, 1)),
        field.neg(form.coeff((2, 0))),
        form.coeff((0, 1)),
        field.neg(form.coeff((1, 0))),
        field.neg(form.coeff((0, 0))),
    ])
}

pub fn weierstrass_form(field: &Field, a: [Fe; 5]) -> PlaneForm {
    let [a1, a2, a3, a4, a6] = a;
    let terms = vec![
        ((3, 0), field.neg(Fe::ONE)),
        ((2, 0), field.neg(a2)),
        ((1, 1), a1),
        ((1, 0), field.neg(a4)),
        ((0, 2), Fe::ONE),
        ((0, 1), a3),
        ((0, 0), field.neg(a6)),
    ];
    PlaneForm {
        degree: 3,
        terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

/// Discriminant of a long Weierstrass equation, valid in every characteristic.
pub fn weierstrass_discriminant(field: &Field, a: [Fe; 5]) -> Fe {
    let [a1, a2, a3, a4, a6] = a;
    let k = |v: i64| field.from_i64(v);
    let m = |x: Fe, y: Fe| field.mul(x, y);
    let ad = |x: Fe, y: Fe| field.add(x, y);
    let sb = |x: Fe, y: Fe| field.sub(x, y);
    let b2 = ad(m(a1, a1), m(k(4), a2));
    let b4 = ad(m(k(2), a4), m(a1, a3));
    let b6 = ad(m(a3, a3), m(k(4), a6));
    let b8 = sb(
        ad(ad(m(m(a1, a1), a6), m(m(k(4), a2), a6)), m(m(a2, a3), a3)),
        ad(m(m(a1, a3), a4), m(a4, a4)),
    );
    let t1 = m(m(b2, b2), b8);
    let t2 = m(k(8), m(m(b4, b4), b4));
    let t3 = m(k(27), m(b6, b6));
    let t4 = m(k(9), m(m(b2, b4), b6));
    sb(ad(t4, field.neg(t1)), ad(t2, t3))
}

/// Looks for a singular point; returns a description of where one was found.
fn find_singularity(field: &Field, form: &PlaneForm, guard: Guard) -> Result<Option<String>> {
    let d = form.degree;
    // (0 : 1 : 0)
    let top = [Fe::ZERO, Fe::ONE, Fe::ZERO];
    if form.eval(field, top[0], top[1], top[2]).is_zero()
        && (0..3).all(|v| form.eval_partial(field, v, top).is_zero())
    {
        return Ok(Some("at (0:1:0)".into()));
    }
    // (1 : y : 0) with y algebraic
    let at_inf = [Fe::ONE, Fe::ZERO, Fe::ZERO];
    let g = form
        .restrict(field, 1, at_inf)
        .gcd(field, &form.restrict_partial(field, 1, at_inf, 1))
        .gcd(field, &form.restrict_partial(field, 1, at_inf, 2));
    if !g.is_one() {
        return Ok(Some("on the line z = 0".into()));
    }
    let max_k = (d * (d.saturating_sub(1)) / 2).max(1);
    for k in 1..=max_k {
        guard.check("plane smoothness check", checked_pow(field.q() as u64, k))?;
        let (big, emb) = field.extension(k, guard)?;
        let form_big = form.map(|c| emb.map(c));
        for x in big.elements() {
            let pt = [x, Fe::ZERO, Fe::ONE];
            let g = form_big
                .restrict(&big, 1, pt)
                .gcd(&big, &form_big.restrict_partial(&big, 1, pt, 0))
                .gcd(&big, &form_big.restrict_partial(&big, 1, pt, 1));
            if !g.is_one() {
                return Ok(Some(format!("with x = {} in F_(q^{k})", x.0)));
            }
        }
    }
    Ok(None)
}

impl CurveFamily for SmoothPlane {
    fn name(&self) -> &'static str {
        "smooth-plane"
    }

    fn shape(&self) -> &'static str {
        "F(x,y,z) = 0, F homogeneous and nonsingular"
    }

    fn validate(&self, field: &Field, equation: &Equation) -> Result<u32> {
        let Equation::Form(form) = equation else {
            return Err(Error::Invalid("plane models need a homogeneous form".into()));
        };
        let d = form.degree;
        if d == 0 || form.terms.is_empty() {
            return Err(Error::Invalid("the form must be nonzero of positive degree".into()));
        }
        if let Some(a) = weierstrass_coefficients(field, form) {
            if weierstrass_discriminant(field, a).is_zero() {
                return Err(Error::Singular("Weierstrass discriminant vanishes".into()));
            }
        } else if let Some(place) = find_singularity(field, form, Guard::default())? {
            return Err(Error::Singular(format!("singular point {place}")));
        }
        Ok((d - 1) * (d.saturating_sub(2)) / 2)
    }

    fn parse_equation(&self, field: &Field, text: &str) -> Result<Equation> {
        let t = text.trim();
        if t.starts_with('[') || t.chars().all(|c| c.is_ascii_digit() || c == ',') {
            let codes = parse::code_list(t)?;
            let mut d = 0u32;
            while ((d + 1) * (d + 2) / 2) < codes.len() as u32 {
                d += 1;
            }
            if ((d + 1) * (d + 2) / 2) as usize != codes.len() {
                return Err(Error::Parse(format!(
                    "{} coefficients do not fill the monomials of any degree",
                    codes.len()
                )));
            }
            if let Some(&bad) = codes.iter().find(|&&c| !field.contains(Fe(c))) {
                return Err(Error::NotInBaseField(bad));
            }
            let coeffs: Vec<Fe> = codes.into_iter().map(Fe).collect();
            return Ok(Equation::Form(PlaneForm::from_dense(d, &coeffs)));
        }
        let terms: BTreeMap<[u32; 3], Fe> = parse::collect_terms(field, &parse::expression(t)?)?;
        let mut degree = None;
        let mut out = Vec::new();
        for (e, c) in terms {
            let td = e[0] + e[1] + e[2];
            if *degree.get_or_insert(td) != td {
                return Err(Error::Parse(format!("`{t}` is not homogeneous")));
            }
            out.push(((e[0], e[1]), c));
        }
        let degree = degree.ok_or_else(|| Error::Parse("zero form".into()))?;
        let dense = PlaneForm {
            degree,
            terms: out,
        }
        .dense();
        Ok(Equation::Form(PlaneForm::from_dense(degree, &dense)))
    }

    fn count_points(&self, model: &CurveModel, k: u32, guard: Guard) -> Result<u64> {
        let n = checked_pow(model.q(), k);
        guard.check("plane point count", n.saturating_mul(n))?;
        let (big, emb) = model.field().extension(k, guard)?;
        let form = form_of(model).map(|c| emb.map(c));
        let mut total = 0u64;
        for x in big.elements() {
            let g = form.restrict(&big, 1, [x, Fe::ZERO, Fe::ONE]);
            total += count_roots(&big, &g);
        }
        let g = form.restrict(&big, 1, [Fe::ONE, Fe::ZERO, Fe::ZERO]);
        total += count_roots(&big, &g);
        if form.eval(&big, Fe::ZERO, Fe::ONE, Fe::ZERO).is_zero() {
            total += 1;
        }
        Ok(total)
    }

    fn points(
        &self,
        model: &CurveModel,
        big: &Field,
        emb: &Embedding,
        guard: Guard,
    ) -> Result<Vec<CurvePoint>> {
        let n = big.q() as u128;
        guard.check("plane points", n * n)?;
        let form = form_of(model).map(|c| emb.map(c));
        let mut out = Vec::new();
        for x in big.elements() {
            let g = form.restrict(big, 1, [x, Fe::ZERO, Fe::ONE]);
            for y in g.roots(big) {
                out.push(CurvePoint::Affine(vec![x, y]));
            }
        }
        let g = form.restrict(big, 1, [Fe::ONE, Fe::ZERO, Fe::ZERO]);
        for y in g.roots(big) {
            out.push(CurvePoint::Infinity(vec![Fe::ONE, y]));
        }
        if form.eval(big, Fe::ZERO, Fe::ONE, Fe::ZERO).is_zero() {
            out.push(CurvePoint::Infinity(vec![Fe::ZERO, Fe::ONE]));
        }
        out.sort();
        Ok(out)
    }

    fn on_curve(&self, model: &CurveModel, big: &Field, emb: &Embedding, pt: &CurvePoint) -> bool {
        let form = form_of(model).map(|c| emb.map(c));
        match pt {
            CurvePoint::Affine(c) if c.len() == 2 => form.eval(big, c[0], c[1], Fe::ONE).is_zero(),
            CurvePoint::Infinity(c) if c.len() == 2 => form.eval(big, c[0], c[1], Fe::ZERO).is_zero(),
            _ => false,
        }
    }

    /// Genus-one curves with a rational point, in long Weierstrass form.
    fn search_space(&self, field: &Field, genus_max: u32, guard: Guard) -> Result<Vec<Equation>> {
        if genus_max == 0 {
            return Ok(Vec::new());
        }
        let q = field.q() as u64;
        let total = checked_pow(q, 5);
        guard.check("Weierstrass cubic search", total)?;
        let mut out = Vec::new();
        for code in 0..total as u64 {
            let mut r = code;
            let mut a = [Fe::ZERO; 5];
            for slot in a.iter_mut() {
                *slot = Fe((r % q) as u32);
                r /= q;
            }
            if !weierstrass_discriminant(field, a).is_zero() {
                out.push(Equation::Form(weierstrass_form(field, a)));
            }
        }
        Ok(out)
    }

    fn affine_presentation(&self, model: &CurveModel) -> Option<AffinePresentation> {
        let field = model.field();
        let [a1, a2, a3, a4, a6] = weierstrass_coefficients(field, form_of(model))?;
        let neg = |a: Fe| field.neg(a);
        Some(AffinePresentation {
            rows: vec![
                Poly::new(vec![neg(a6), neg(a4), neg(a2), neg(Fe::ONE)]),
                Poly::new(vec![a3, a1]),
                Poly::one(),
            ],
            y_degree: 2,
            weights: (2, 3),
        })
    }
}

fn count_roots(field: &Field, g: &Poly) -> u64 {
    if g.is_zero() {
        return field.q() as u64;
    }
    let c = g.coeffs();
    field
        .elements()
        .filter(|&y| field.horner(c, y).is_zero())
        .count() as u64
}
