use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::model::{CurveModel, CurvePoint, Equation};
use super::places::{places_from_points, Place};
use super::{artin_schreier, hyperelliptic, line, plane};
use crate::fq_poly::{Embedding, Field, Poly};
use crate::{Error, Guard, Result};

/// A model of the function field as a plane curve `E(x, y) = 0` that is
/// smooth in the affine part and has a single point at infinity, of degree 1.
///
/// Functions regular away from infinity are spanned by `x^i y^j` with
/// `j < y_degree`; `x^i y^j` has a pole of order `i*wx + j*wy` at infinity.
#[derive(Clone, Debug)]
pub struct AffinePresentation {
    /// `E = sum_j rows[j](x) y^j`, monic of degree `y_degree` in `y`.
    pub rows: Vec<Poly>,
    pub y_degree: usize,
    pub weights: (u64, u64),
}

/// One supported kind of curve model.
pub trait CurveFamily: Send + Sync {
    /// Registry key, also the `kind=` value in catalog lines.
    fn name(&self) -> &'static str;

    /// The shape of the defining equation, for help output.
    fn shape(&self) -> &'static str;

    /// Checks the equation (smoothness, degree conditions) and returns the genus.
    fn validate(&self, field: &Field, equation: &Equation) -> Result<u32>;

    fn parse_equation(&self, field: &Field, text: &str) -> Result<Equation>;

    fn count_points(&self, model: &CurveModel, k: u32, guard: Guard) -> Result<u64>;

    /// Every point with coordinates in `big`, sorted.
    fn points(
        &self,
        model: &CurveModel,
        big: &Field,
        emb: &Embedding,
        guard: Guard,
    ) -> Result<Vec<CurvePoint>>;

    fn on_curve(&self, model: &CurveModel, big: &Field, emb: &Embedding, pt: &CurvePoint) -> bool;

    /// Closed points of degree `d`, canonically ordered.
    fn places(&self, model: &CurveModel, d: u32, guard: Guard) -> Result<Vec<Place>> {
        places_from_points(model, d, guard)
    }

    /// Every equation of this kind with genus in `1..=genus_max` over `field`,
    /// one per translation class `x -> x + a`, validated and sorted.
    fn search_space(&self, _field: &Field, _genus_max: u32, _guard: Guard) -> Result<Vec<Equation>> {
        Ok(Vec::new())
    }

    fn affine_presentation(&self, _model: &CurveModel) -> Option<AffinePresentation> {
        None
    }
}

/// Curve families keyed by kind name.
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Arc<dyn CurveFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            families: BTreeMap::new(),
        }
    }

    /// The four built-in kinds.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(line::ProjectiveLine));
        r.register(Arc::new(plane::SmoothPlane));
        r.register(Arc::new(hyperelliptic::Hyperelliptic));
        r.register(Arc::new(artin_schreier::ArtinSchreier));
        r
    }

    pub fn register(&mut self, family: Arc<dyn CurveFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn CurveFamily>> {
        self.families
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownKind(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn CurveFamily>> {
        self.families.values()
    }

    /// Builds a model of kind `kind` from catalog-style equation text.
    pub fn model(&self, field: &Field, kind: &str, equation: &str) -> Result<CurveModel> {
        let family = self.get(kind)?;
        let eq = family.parse_equation(field, equation)?;
        CurveModel::new(field, family, eq)
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// The process-wide registry with the built-in kinds.
pub fn registry() -> &'static FamilyRegistry {
    static REGISTRY: OnceLock<FamilyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(FamilyRegistry::with_builtins)
}

/// Whether `f` is least among its translates `f(x + a)`, `a` in the base field.
pub(crate) fn is_translation_minimal(field: &Field, f: &Poly) -> bool {
    field.nonzero_elements().all(|a| {
        let g = crate::fq_poly::substitution_automorphism(field, a, f).expect("a in base field");
        *f <= g
    })
}
