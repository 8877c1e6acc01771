use super::family::{is_translation_minimal, AffinePresentation, CurveFamily};
use super::model::{CurveModel, CurvePoint, Equation};
use crate::fq_poly::{Embedding, Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::parse;
use crate::{Error, Guard, Result};

/// `y^2 = f(x)` in odd characteristic with `f` squarefree.
///
/// Points at infinity: one if `deg f` is odd; if `deg f` is even, two or none
/// according to whether the leading coefficient is a square.
pub struct Hyperelliptic;

fn poly_of(model: &CurveModel) -> &Poly {
    match model.equation() {
        Equation::Univariate(f) => f,
        _ => unreachable!("hyperelliptic models hold a univariate polynomial"),
    }
}

impl CurveFamily for Hyperelliptic {
    fn name(&self) -> &'static str {
        "hyperelliptic"
    }

    fn shape(&self) -> &'static str {
        "y^2 = f(x), odd characteristic, f squarefree"
    }

    fn validate(&self, field: &Field, equation: &Equation) -> Result<u32> {
        let Equation::Univariate(f) = equation else {
            return Err(Error::Invalid("hyperelliptic models need poly=f(x)".into()));
        };
        if field.p() == 2 {
            return Err(Error::Unsupported(
                "hyperelliptic models need odd characteristic".into(),
            ));
        }
        if f.deg() == 0 {
            return Err(Error::Invalid("f must have positive degree".into()));
        }
        if !f.is_squarefree(field) {
            return Err(Error::Singular(format!("f = {f} is not squarefree")));
        }
        Ok(((f.deg() - 1) / 2) as u32)
    }

    fn parse_equation(&self, field: &Field, text: &str) -> Result<Equation> {
        Ok(Equation::Univariate(parse::univariate(field, text)?))
    }

    fn count_points(&self, model: &CurveModel, k: u32, guard: Guard) -> Result<u64> {
        guard.check("hyperelliptic point count", checked_pow(model.q(), k))?;
        let (big, emb) = model.field().extension(k, guard)?;
        let f = poly_of(model).map_up(&emb);
        let coeffs = f.coeffs();
        let mut total = 0u64;
        for x in big.elements() {
            let v = big.horner(coeffs, x);
            total += match big.quadratic_character(v) {
                0 => 1,
                1 => 2,
                _ => 0,
            };
        }
        total += if f.deg() % 2 == 1 {
            1
        } else if big.is_square(f.leading()) {
            2
        } else {
            0
        };
        Ok(total)
    }

    fn points(
        &self,
        model: &CurveModel,
        big: &Field,
        emb: &Embedding,
        guard: Guard,
    ) -> Result<Vec<CurvePoint>> {
        guard.check("hyperelliptic points", big.q() as u128)?;
        let f = poly_of(model).map_up(emb);
        let mut out = Vec::new();
        for x in big.elements() {
            let v = f.eval(big, x);
            if let Some(s) = big.sqrt(v) {
                out.push(CurvePoint::Affine(vec![x, s]));
                if !s.is_zero() {
                    out.push(CurvePoint::Affine(vec![x, big.neg(s)]));
                }
            }
        }
        if f.deg() % 2 == 1 {
            out.push(CurvePoint::Infinity(Vec::new()));
        } else if let Some(s) = big.sqrt(f.leading()) {
            out.push(CurvePoint::Infinity(vec![s]));
            out.push(CurvePoint::Infinity(vec![big.neg(s)]));
        }
        out.sort();
        Ok(out)
    }

    fn on_curve(&self, model: &CurveModel, big: &Field, emb: &Embedding, pt: &CurvePoint) -> bool {
        let f = poly_of(model).map_up(emb);
        match pt {
            CurvePoint::Affine(c) if c.len() == 2 => big.mul(c[1], c[1]) == f.eval(big, c[0]),
            CurvePoint::Infinity(c) if f.deg() % 2 == 1 => c.is_empty(),
            CurvePoint::Infinity(c) if c.len() == 1 => big.mul(c[0], c[0]) == f.leading(),
            _ => false,
        }
    }

    fn search_space(&self, field: &Field, genus_max: u32, guard: Guard) -> Result<Vec<Equation>> {
        if field.p() == 2 || genus_max == 0 {
            return Ok(Vec::new());
        }
        let q = field.q() as u64;
        let nonsquare = field
            .nonzero_elements()
            .find(|&a| !field.is_square(a))
            .expect("odd q has nonsquares");
        let mut out = Vec::new();
        for d in 3..=(2 * genus_max as usize + 2) {
            // Translation changes the x^(d-1) coefficient by d*a*lc, so a
            // minimal representative has it zero when p does not divide d.
            let free_top = d % field.p() as usize == 0;
            let free = if free_top { d } else { d - 1 };
            let count = checked_pow(q, free as u32);
            guard.check(format!("hyperelliptic search, degree {d}"), 2 * count)?;
            for lc in [Fe::ONE, nonsquare] {
                for code in 0..count as u64 {
                    let mut c = Vec::with_capacity(d + 1);
                    let mut r = code;
                    for _ in 0..free {
                        c.push(Fe((r % q) as u32));
                        r /= q;
                    }
                    if !free_top {
                        c.push(Fe::ZERO);
                    }
                    c.push(lc);
                    let f = Poly::new(c);
                    if f.is_squarefree(field) && is_translation_minimal(field, &f) {
                        out.push(Equation::Univariate(f));
                    }
                }
            }
        }
        Ok(out)
    }

    fn affine_presentation(&self, model: &CurveModel) -> Option<AffinePresentation> {
        let f = poly_of(model);
        if f.deg().is_multiple_of(2) {
            return None;
        }
        let field = model.field();
        Some(AffinePresentation {
            rows: vec![f.neg(field), Poly::zero(), Poly::one()],
            y_degree: 2,
            weights: (2, f.deg() as u64),
        })
    }
}
