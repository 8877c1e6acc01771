use super::family::{registry, FamilyRegistry};
use super::model::CurveModel;
use crate::fq_poly::Field;
use crate::parse;
use crate::{Error, Guard, Result};

/// Parses one catalog line, `q=<int> kind=<name> genus=<int> poly=<coeffs>`.
///
/// `genus` is optional; when present it must match the genus of the model.
/// `poly` may be omitted for the projective line.
pub fn parse_line_with(reg: &FamilyRegistry, line: &str, guard: Guard) -> Result<CurveModel> {
    let kv = parse::key_values(parse::strip_comment(line))?;
    for key in kv.keys() {
        if !["q", "kind", "genus", "poly"].contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown key `{key}`")));
        }
    }
    let q = parse::parse_u64("q", kv.get("q").ok_or_else(|| Error::Parse("missing q=".into()))?)?;
    let kind = kv
        .get("kind")
        .ok_or_else(|| Error::Parse("missing kind=".into()))?;
    let field = Field::of_order(q, guard)?;
    let poly = kv.get("poly").map(String::as_str).unwrap_or("");
    let model = reg.model(&field, kind, poly)?;
    if let Some(g) = kv.get("genus") {
        let g = parse::parse_u64("genus", g)?;
        if g != model.genus() as u64 {
            return Err(Error::Invalid(format!(
                "declared genus {g} but the model has genus {}",
                model.genus()
            )));
        }
    }
    Ok(model)
}

pub fn parse_line(line: &str, guard: Guard) -> Result<CurveModel> {
    parse_line_with(registry(), line, guard)
}

/// Parses a whole catalog, skipping blank lines and `#` comments.
pub fn parse_catalog(text: &str, guard: Guard) -> Result<Vec<CurveModel>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !parse::strip_comment(l).is_empty())
        .map(|(i, l)| {
            parse_line(l, guard).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}
