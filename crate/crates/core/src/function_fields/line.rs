use super::family::{AffinePresentation, CurveFamily};
use super::model::{CurveModel, CurvePoint, Equation};
use super::places::Place;
use crate::fq_poly::{irreducibles, Embedding, Field};
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

/// The projective line `P^1`, function field `F_q(x)`.
pub struct ProjectiveLine;

impl CurveFamily for ProjectiveLine {
    fn name(&self) -> &'static str {
        "projective-line"
    }

    fn shape(&self) -> &'static str {
        "P^1 (no equation)"
    }

    fn validate(&self, _field: &Field, equation: &Equation) -> Result<u32> {
        match equation {
            Equation::Line => Ok(0),
            _ => Err(Error::Invalid(
                "the projective line takes no equation".into(),
            )),
        }
    }

    fn parse_equation(&self, _field: &Field, text: &str) -> Result<Equation> {
        let t = text.trim();
        if t.is_empty() || t == "[]" {
            Ok(Equation::Line)
        } else {
            Err(Error::Parse(format!(
                "the projective line takes no poly=, found `{t}`"
            )))
        }
    }

    fn count_points(&self, model: &CurveModel, k: u32, guard: Guard) -> Result<u64> {
        let n = checked_pow(model.q(), k);
        guard.check("projective line point count", n)?;
        Ok(n as u64 + 1)
    }

    fn points(
        &self,
        _model: &CurveModel,
        big: &Field,
        _emb: &Embedding,
        guard: Guard,
    ) -> Result<Vec<CurvePoint>> {
        guard.check("points of P^1", big.q() as u128 + 1)?;
        let mut out: Vec<CurvePoint> = big.elements().map(|a| CurvePoint::Affine(vec![a])).collect();
        out.push(CurvePoint::Infinity(Vec::new()));
        Ok(out)
    }

    fn on_curve(&self, _: &CurveModel, _: &Field, _: &Embedding, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Affine(c) => c.len() == 1,
            CurvePoint::Infinity(c) => c.is_empty(),
        }
    }

    fn places(&self, model: &CurveModel, d: u32, guard: Guard) -> Result<Vec<Place>> {
        let mut out: Vec<Place> = irreducibles(model.field(), d, guard)?
            .into_iter()
            .map(Place::prime)
            .collect();
        if d == 1 {
            out.push(Place::infinity());
        }
        Ok(out)
    }

    fn affine_presentation(&self, _model: &CurveModel) -> Option<AffinePresentation> {
        Some(AffinePresentation {
            rows: Vec::new(),
            y_degree: 1,
            weights: (1, 0),
        })
    }
}
