use super::family::{is_translation_minimal, AffinePresentation, CurveFamily};
use super::model::{CurveModel, CurvePoint, Equation};
use crate::fq_poly::{Embedding, Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::parse;
use crate::{Error, Guard, Result};

/// `y^p - y = f(x)` with `p` not dividing `deg f`; one point at infinity.
pub struct ArtinSchreier;

fn poly_of(model: &CurveModel) -> &Poly {
    match model.equation() {
        Equation::Univariate(f) => f,
        _ => unreachable!("artin-schreier models hold a univariate polynomial"),
    }
}

fn genus_for(p: u32, m: usize) -> u32 {
    (p - 1) * (m as u32 - 1) / 2
}

impl CurveFamily for ArtinSchreier {
    fn name(&self) -> &'static str {
        "artin-schreier"
    }

    fn shape(&self) -> &'static str {
        "y^p - y = f(x), p not dividing deg f"
    }

    fn validate(&self, field: &Field, equation: &Equation) -> Result<u32> {
        let Equation::Univariate(f) = equation else {
            return Err(Error::Invalid("artin-schreier models need poly=f(x)".into()));
        };
        let m = f.deg();
        if m == 0 {
            return Err(Error::Invalid("f must have positive degree".into()));
        }
        if m % field.p() as usize == 0 {
            return Err(Error::Invalid(format!(
                "deg f = {m} must be prime to the characteristic {}",
                field.p()
            )));
        }
        Ok(genus_for(field.p(), m))
    }

    fn parse_equation(&self, field: &Field, text: &str) -> Result<Equation> {
        Ok(Equation::Univariate(parse::univariate(field, text)?))
    }

    fn count_points(&self, model: &CurveModel, k: u32, guard: Guard) -> Result<u64> {
        guard.check("artin-schreier point count", checked_pow(model.q(), k))?;
        let (big, emb) = model.field().extension(k, guard)?;
        let f = poly_of(model).map_up(&emb);
        let coeffs = f.coeffs();
        let p = big.p() as u64;
        let mut total = 1u64;
        for x in big.elements() {
            if big.trace_is_zero(big.horner(coeffs, x)) {
                total += p;
            }
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
        guard.check("artin-schreier points", big.q() as u128)?;
        let f = poly_of(model).map_up(emb);
        let mut preimages: Vec<Vec<Fe>> = vec![Vec::new(); big.q() as usize];
        for y in big.elements() {
            let v = big.sub(big.frobenius(y), y);
            preimages[v.0 as usize].push(y);
        }
        let mut out = Vec::new();
        for x in big.elements() {
            for &y in &preimages[f.eval(big, x).0 as usize] {
                out.push(CurvePoint::Affine(vec![x, y]));
            }
        }
        out.push(CurvePoint::Infinity(Vec::new()));
        out.sort();
        Ok(out)
    }

    fn on_curve(&self, model: &CurveModel, big: &Field, emb: &Embedding, pt: &CurvePoint) -> bool {
        let f = poly_of(model).map_up(emb);
        match pt {
            CurvePoint::Affine(c) if c.len() == 2 => {
                big.sub(big.frobenius(c[1]), c[1]) == f.eval(big, c[0])
            }
            CurvePoint::Infinity(c) => c.is_empty(),
            _ => false,
        }
    }

    fn search_space(&self, field: &Field, genus_max: u32, guard: Guard) -> Result<Vec<Equation>> {
        let p = field.p();
        let q = field.q() as u64;
        let mut out = Vec::new();
        let mut m = 2usize;
        while genus_for(p, m) <= genus_max {
            if !m.is_multiple_of(p as usize) && genus_for(p, m) >= 1 {
                // Translation moves the x^(m-1) coefficient by m*a*lc; the
                // least translate has it zero.
                let count = checked_pow(q, m as u32 - 1);
                guard.check(format!("artin-schreier search, degree {m}"), count * (q as u128 - 1))?;
                for lc in field.nonzero_elements() {
                    for code in 0..count as u64 {
                        let mut c = Vec::with_capacity(m + 1);
                        let mut r = code;
                        for _ in 0..m - 1 {
                            c.push(Fe((r % q) as u32));
                            r /= q;
                        }
                        c.push(Fe::ZERO);
                        c.push(lc);
                        let f = Poly::new(c);
                        if is_translation_minimal(field, &f) {
                            out.push(Equation::Univariate(f));
                        }
                    }
                }
            }
            m += 1;
        }
        Ok(out)
    }

    fn affine_presentation(&self, model: &CurveModel) -> Option<AffinePresentation> {
        let field = model.field();
        let f = poly_of(model);
        let p = field.p() as usize;
        let mut rows = vec![Poly::zero(); p + 1];
        rows[0] = f.neg(field);
        rows[1] = Poly::constant(field.neg(Fe::ONE));
        rows[p] = Poly::one();
        Some(AffinePresentation {
            rows,
            y_degree: p,
            weights: (p as u64, f.deg() as u64),
        })
    }
}
