use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::family::CurveFamily;
use crate::fq_poly::{Fe, Field, Poly};
use crate::{Guard, Result};

/// A homogeneous form `F(x, y, z)`, terms keyed by `(i, j)` for the monomial
/// `x^i y^j z^(d-i-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneForm {
    pub degree: u32,
    pub terms: Vec<((u32, u32), Fe)>,
}

impl PlaneForm {
    /// Monomials of degree `d` in catalog order: `i` descending, then `j` descending.
    pub fn monomials(d: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                out.push((i, j));
            }
        }
        out
    }

    pub fn from_dense(degree: u32, coeffs: &[Fe]) -> PlaneForm {
        let terms = Self::monomials(degree)
            .into_iter()
            .zip(coeffs.iter().copied())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        PlaneForm { degree, terms }
    }

    pub fn dense(&self) -> Vec<Fe> {
        Self::monomials(self.degree)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn coeff(&self, m: (u32, u32)) -> Fe {
        self.terms
            .iter()
            .find(|(k, _)| *k == m)
            .map(|&(_, c)| c)
            .unwrap_or(Fe::ZERO)
    }

    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> PlaneForm {
        PlaneForm {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn eval(&self, field: &Field, x: Fe, y: Fe, z: Fe) -> Fe {
        let d = self.degree;
        let mut acc = Fe::ZERO;
        for &((i, j), c) in &self.terms {
            let t = field.mul(
                field.mul(c, field.pow(x, i as u64)),
                field.mul(field.pow(y, j as u64), field.pow(z, (d - i - j) as u64)),
            );
            acc = field.add(acc, t);
        }
        acc
    }

    /// Partial derivative in variable `var` (0 = x, 1 = y, 2 = z), evaluated.
    pub fn eval_partial(&self, field: &Field, var: usize, pt: [Fe; 3]) -> Fe {
        let d = self.degree;
        let mut acc = Fe::ZERO;
        for &((i, j), c) in &self.terms {
            let mut e = [i, j, d - i - j];
            if e[var] == 0 {
                continue;
            }
            let factor = field.from_i64(e[var] as i64);
            e[var] -= 1;
            let mut t = field.mul(c, factor);
            for v in 0..3 {
                t = field.mul(t, field.pow(pt[v], e[v] as u64));
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// The univariate polynomial in the free variable obtained by fixing the
    /// other two coordinates. `free` names the variable kept (0, 1 or 2).
    pub fn restrict(&self, field: &Field, free: usize, fixed: [Fe; 3]) -> Poly {
        self.restrict_terms(field, free, fixed, None)
    }

    pub fn restrict_partial(&self, field: &Field, free: usize, fixed: [Fe; 3], var: usize) -> Poly {
        self.restrict_terms(field, free, fixed, Some(var))
    }

    fn restrict_terms(
        &self,
        field: &Field,
        free: usize,
        fixed: [Fe; 3],
        partial: Option<usize>,
    ) -> Poly {
        let d = self.degree;
        let mut c = vec![Fe::ZERO; d as usize + 1];
        for &((i, j), a) in &self.terms {
            let mut e = [i, j, d - i - j];
            let mut coef = a;
            if let Some(v) = partial {
                if e[v] == 0 {
                    continue;
                }
                coef = field.mul(coef, field.from_i64(e[v] as i64));
                e[v] -= 1;
            }
            for v in 0..3 {
                if v != free {
                    coef = field.mul(coef, field.pow(fixed[v], e[v] as u64));
                }
            }
            let k = e[free] as usize;
            c[k] = field.add(c[k], coef);
        }
        Poly::new(c)
    }
}

/// The defining data of a curve model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Equation {
    Line,
    /// `y^2 = f(x)` or `y^p - y = f(x)`, depending on the kind.
    Univariate(Poly),
    Form(PlaneForm),
}

impl Equation {
    /// Coefficient codes in catalog order.
    pub fn codes(&self) -> Vec<u32> {
        match self {
            Equation::Line => Vec::new(),
            Equation::Univariate(f) => f.codes(),
            Equation::Form(form) => form.dense().into_iter().map(|c| c.0).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> Equation {
        match self {
            Equation::Line => Equation::Line,
            Equation::Univariate(p) => {
                Equation::Univariate(Poly::new(p.coeffs().iter().map(|&c| f(c)).collect()))
            }
            Equation::Form(form) => Equation::Form(form.map(f)),
        }
    }
}

/// A geometric point of a model with coordinates in some `F_{q^k}`.
///
/// Affine points carry `(x, y)` (just `x` on the projective line). Points at
/// infinity carry whatever distinguishes them: nothing when there is one such
/// point, the square root of the leading coefficient for even-degree
/// hyperelliptic models, and `(x, y)` with `z = 0` for plane models.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CurvePoint {
    Affine(Vec<Fe>),
    Infinity(Vec<Fe>),
}

impl CurvePoint {
    pub fn coords(&self) -> &[Fe] {
        match self {
            CurvePoint::Affine(c) | CurvePoint::Infinity(c) => c,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, CurvePoint::Infinity(_))
    }

    /// Coordinatewise `a -> a^q` in the field holding the coordinates.
    pub fn frobenius(&self, big: &Field, q: u64) -> CurvePoint {
        let f = |c: &Vec<Fe>| c.iter().map(|&a| big.pow(a, q)).collect();
        match self {
            CurvePoint::Affine(c) => CurvePoint::Affine(f(c)),
            CurvePoint::Infinity(c) => CurvePoint::Infinity(f(c)),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |c: &[Fe]| {
            c.iter()
                .map(|a| a.0.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            CurvePoint::Affine(c) => write!(f, "({})", join(c)),
            CurvePoint::Infinity(c) if c.is_empty() => write!(f, "inf"),
            CurvePoint::Infinity(c) => write!(f, "inf({})", join(c)),
        }
    }
}

/// A curve over `F_q` in one of the registered model kinds.
#[derive(Clone)]
pub struct CurveModel {
    pub(crate) field: Field,
    pub(crate) family: Arc<dyn CurveFamily>,
    pub(crate) equation: Equation,
    pub(crate) genus: u32,
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.catalog_line())
    }
}

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.kind() == other.kind()
            && self.equation == other.equation
    }
}

impl Eq for CurveModel {}

impl CurveModel {
    /// Validates `equation` against the family and builds the model.
    pub fn new(field: &Field, family: Arc<dyn CurveFamily>, equation: Equation) -> Result<Self> {
        let genus = family.validate(field, &equation)?;
        Ok(CurveModel {
            field: field.clone(),
            family,
            equation,
            genus,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn kind(&self) -> &'static str {
        self.family.name()
    }

    pub fn family(&self) -> &Arc<dyn CurveFamily> {
        &self.family
    }

    pub fn equation(&self) -> &Equation {
        &self.equation
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of points over `F_{q^k}` on the smooth projective model.
    pub fn count_points(&self, k: u32, guard: Guard) -> Result<u64> {
        self.family.count_points(self, k, guard)
    }

    /// All points over the field `big` (an extension of the base field).
    pub fn points_over(&self, k: u32, guard: Guard) -> Result<(Field, Vec<CurvePoint>)> {
        let (big, emb) = self.field.extension(k, guard)?;
        let pts = self.family.points(self, &big, &emb, guard)?;
        Ok((big, pts))
    }

    /// Whether `pt` (coordinates in `F_{q^k}`) lies on the model.
    pub fn contains_point(&self, k: u32, pt: &CurvePoint, guard: Guard) -> Result<bool> {
        let (big, emb) = self.field.extension(k, guard)?;
        Ok(self.family.on_curve(self, &big, &emb, pt))
    }

    /// `q=<int> kind=<name> genus=<int> poly=<coefficients>`.
    pub fn catalog_line(&self) -> String {
        let codes = self.equation.codes();
        let list = codes
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "q={} kind={} genus={} poly=[{}]",
            self.q(),
            self.kind(),
            self.genus,
            list
        )
    }

    /// Coefficient tuple used for canonical ordering inside a kind.
    pub fn sort_key(&self) -> (u32, &'static str, Vec<u32>) {
        let mut codes = self.equation.codes();
        // Compare by degree first, then from the top coefficient down.
        codes.reverse();
        let mut key = vec![codes.len() as u32];
        key.extend(codes);
        (self.genus, self.kind(), key)
    }
}
