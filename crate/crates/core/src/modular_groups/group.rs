use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use super::matrix::MatrixModF;
use super::ring::ResidueRing;
use crate::fq_poly::{Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::{Guard, Result};

/// `G_bar = { M over A/(f) : det M in F_q^* }`, the image of `GL2(A)`.
#[derive(Debug)]
pub struct AmbientGroup {
    ring: Arc<ResidueRing>,
    generators: Vec<MatrixModF>,
    elements: OnceLock<Vec<MatrixModF>>,
    guard: Guard,
}

/// The reduced ambient group for modulus `f`.
pub fn ambient_image(field: &Field, f: &Poly, guard: Guard) -> Result<Arc<AmbientGroup>> {
    let ring = Arc::new(ResidueRing::new(field, f, guard)?);
    AmbientGroup::new(ring, guard)
}

impl AmbientGroup {
    pub fn new(ring: Arc<ResidueRing>, guard: Guard) -> Result<Arc<AmbientGroup>> {
        guard.check("ambient matrix group", checked_pow(ring.size() as u64, 4))?;
        let field = ring.field();
        let mut generators = Vec::new();
        // Elementary matrices over an F_p-basis of A/(f), and diag(lambda, 1).
        let g = field.primitive_element();
        let p_basis: Vec<Fe> = (0..field.n()).map(|i| field.pow(g, i as u64)).collect();
        for i in 0..ring.dim() {
            let t = ring.t_power(i);
            for &c in &p_basis {
                let a = ring.scale(c, t);
                generators.push(MatrixModF::unipotent(a));
                generators.push(MatrixModF::lower_unipotent(a));
            }
        }
        if field.q() > 2 {
            generators.push(MatrixModF::diagonal(
                ring.constant(field.primitive_element()),
                1,
            ));
        }
        generators.sort();
        generators.dedup();
        Ok(Arc::new(AmbientGroup {
            ring,
            generators,
            elements: OnceLock::new(),
            guard,
        }))
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    /// A generating set: elementary matrices and one diagonal matrix.
    pub fn generators(&self) -> &[MatrixModF] {
        &self.generators
    }

    pub fn contains(&self, m: MatrixModF) -> bool {
        let r = &*self.ring;
        m.0.iter().all(|&x| x < r.size())
            && r.as_constant(m.det(r)).is_some_and(|c| !c.is_zero())
    }

    /// Every element, sorted, found by scanning all matrices.
    pub fn elements(&self) -> &[MatrixModF] {
        self.elements.get_or_init(|| {
            let r = &*self.ring;
            let s = r.size();
            let mut out = Vec::new();
            for a in 0..s {
                for b in 0..s {
                    for c in 0..s {
                        for d in 0..s {
                            let m = MatrixModF([a, b, c, d]);
                            if self.contains(m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
            out
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn guard(&self) -> Guard {
        self.guard
    }

    pub fn conjugate(&self, g: MatrixModF, m: MatrixModF) -> Option<MatrixModF> {
        m.conjugate_by(&self.ring, g)
    }
}

/// The subgroup generated by `gens`, as a set.
pub fn closure(r: &ResidueRing, gens: &[MatrixModF]) -> HashSet<MatrixModF> {
    let mut set = HashSet::from([MatrixModF::IDENTITY]);
    let mut frontier = vec![MatrixModF::IDENTITY];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x.mul(r, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}
