//! Drinfeldian domains `B = H^0(C - {x}, O_C)` and their class groups.
//!
//! `|Cl(B)|` is available through two [`ClassGroupStrategy`] implementations:
//! `exact-sequence` (`h_K * deg x`, from the zeta function) and
//! `relation-lattice` (places modulo divisors of functions, see [`oracle`]).

mod lattice;
pub mod oracle;
pub mod search;
mod series;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use lattice::Lattice;
pub use oracle::{class_group_oracle, OracleReport};
pub use search::{search_rigid_domains, DomainEntry, ExceptionalClass, SearchReport};

use crate::fq_poly::is_irreducible;
use crate::function_fields::{zeta_report, CurveModel, Place, PlaceRepr};
use crate::{Error, Guard, Result};

/// A curve together with the closed point removed from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldianDomain {
    curve: CurveModel,
    place: Place,
}

impl DrinfeldianDomain {
    /// Checks that `place` is a closed point of `curve`.
    pub fn new(curve: CurveModel, place: Place, guard: Guard) -> Result<Self> {
        let ok = match &place.repr {
            PlaceRepr::Prime(p) => {
                curve.kind() == "projective-line"
                    && p.is_monic()
                    && p.deg() as u32 == place.degree
                    && is_irreducible(curve.field(), p)
            }
            PlaceRepr::Infinity => curve.kind() == "projective-line" && place.degree == 1,
            PlaceRepr::Point(pt) => {
                let q = curve.q();
                let (big, _) = curve.field().extension(place.degree.max(1), guard)?;
                let mut orbit = 1;
                let mut cur = pt.frobenius(&big, q);
                while cur != *pt && orbit <= place.degree {
                    orbit += 1;
                    cur = cur.frobenius(&big, q);
                }
                orbit == place.degree && curve.contains_point(place.degree, pt, guard)?
            }
        };
        if !ok {
            return Err(Error::Invalid(format!(
                "{place} is not a closed point of {}",
                curve.catalog_line()
            )));
        }
        Ok(DrinfeldianDomain { curve, place })
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn place(&self) -> &Place {
        &self.place
    }
}

/// Orders of the groups in `0 -> D_1 -> Cl(K) -> Cl(B) -> D_2 -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroupReport {
    pub h_k: u64,
    pub deg_x: u32,
    pub h_b: u64,
    pub d1_order: u64,
    pub d2_order: u64,
}

impl ClassGroupReport {
    pub fn from_parts(h_k: u64, deg_x: u32) -> Self {
        ClassGroupReport {
            h_k,
            deg_x,
            h_b: h_k * deg_x as u64,
            d1_order: 1,
            d2_order: deg_x as u64,
        }
    }
}

/// `|Cl(B)| = h_K * deg(x)`, with `D_1` trivial and `|D_2| = deg(x)`.
pub fn class_group_of_domain(domain: &DrinfeldianDomain, guard: Guard) -> Result<ClassGroupReport> {
    let h = zeta_report(domain.curve(), guard)?.class_number;
    Ok(ClassGroupReport::from_parts(h, domain.place().degree))
}

pub fn is_uniformizationally_rigid(domain: &DrinfeldianDomain, guard: Guard) -> Result<bool> {
    Ok(class_group_of_domain(domain, guard)?.h_b == 1)
}

/// A way of computing `|Cl(B)|`.
pub trait ClassGroupStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn class_group_order(&self, domain: &DrinfeldianDomain, guard: Guard) -> Result<u64>;
}

/// `h_K * deg x` via the zeta function.
pub struct ExactSequence;

impl ClassGroupStrategy for ExactSequence {
    fn name(&self) -> &'static str {
        "exact-sequence"
    }

    fn class_group_order(&self, domain: &DrinfeldianDomain, guard: Guard) -> Result<u64> {
        Ok(class_group_of_domain(domain, guard)?.h_b)
    }
}

/// The relation-lattice oracle at a fixed starting degree bound.
pub struct RelationLattice {
    pub degree_bound: Option<u32>,
}

impl RelationLattice {
    /// Default degree bound: `max(deg x, g + 1)`.
    pub fn default_bound(domain: &DrinfeldianDomain) -> u32 {
        domain.place().degree.max(domain.curve().genus() + 1)
    }
}

impl ClassGroupStrategy for RelationLattice {
    fn name(&self) -> &'static str {
        "relation-lattice"
    }

    fn class_group_order(&self, domain: &DrinfeldianDomain, guard: Guard) -> Result<u64> {
        let b = self
            .degree_bound
            .unwrap_or_else(|| RelationLattice::default_bound(domain));
        Ok(class_group_oracle(domain, b, guard)?.order)
    }
}

/// Class group strategies keyed by name.
pub struct StrategyRegistry {
    strategies: BTreeMap<&'static str, Arc<dyn ClassGroupStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            strategies: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(ExactSequence));
        r.register(Arc::new(RelationLattice { degree_bound: None }));
        r
    }

    pub fn register(&mut self, s: Arc<dyn ClassGroupStrategy>) {
        self.strategies.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ClassGroupStrategy>> {
        self.strategies
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("unknown class group strategy `{name}`")))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.keys().copied().collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

pub fn strategies() -> &'static StrategyRegistry {
    static REGISTRY: OnceLock<StrategyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(StrategyRegistry::with_builtins)
}
