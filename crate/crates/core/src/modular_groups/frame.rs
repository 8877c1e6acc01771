use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::group::{ambient_image, closure, AmbientGroup};
use super::matrix::MatrixModF;
use super::ring::ResidueRing;
use crate::fq_poly::{Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::parse;
use crate::{Error, Guard, Result};

/// A finite-index subgroup `Gamma` of `GL2(A)`, given as the full preimage of
/// the subgroup `H` of the reduced group generated by `generators`.
#[derive(Debug, Clone)]
pub struct SubgroupFrame {
    ambient: Arc<AmbientGroup>,
    generators: Vec<MatrixModF>,
    subgroup: Arc<HashSet<MatrixModF>>,
}

/// `ql(Gamma) / (f)` as an `F_q`-subspace of `A/(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiLevel {
    pub modulus: Poly,
    /// Reduced echelon basis: monic, distinct degrees, each leading
    /// coefficient absent from the others, sorted by degree.
    pub basis: Vec<Poly>,
    #[serde(skip)]
    residues: Vec<u32>,
}

impl QuasiLevel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_residue(&self, a: u32) -> bool {
        self.residues.binary_search(&a).is_ok()
    }

    /// Every residue in the subspace, sorted by code.
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Modularity {
    pub modular: bool,
    pub reason: String,
}

/// A finite-order element of `Gamma` over `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionElement {
    pub matrix: [Poly; 4],
    pub order: u64,
}

impl SubgroupFrame {
    pub fn new(ambient: Arc<AmbientGroup>, generators: Vec<MatrixModF>) -> Result<SubgroupFrame> {
        let r = ambient.ring().clone();
        for g in &generators {
            if !g.0.iter().all(|&x| x < r.size()) {
                return Err(Error::Invalid(format!("generator {g} has entries outside A/(f)")));
            }
            let det = g.det(&r);
            match r.as_constant(det) {
                Some(c) if !c.is_zero() => {}
                _ => {
                    return Err(Error::Invalid(format!(
                        "generator {} has determinant {} outside F_q^*",
                        show_matrix(&r, *g),
                        r.lift(det)
                    )))
                }
            }
        }
        let subgroup = Arc::new(closure(&r, &generators));
        Ok(SubgroupFrame {
            ambient,
            generators,
            subgroup,
        })
    }

    /// A frame from matrices over `A`, reduced modulo `f`.
    pub fn from_polys(
        field: &Field,
        f: &Poly,
        generators: &[[Poly; 4]],
        guard: Guard,
    ) -> Result<SubgroupFrame> {
        let ambient = ambient_image(field, f, guard)?;
        let r = ambient.ring().clone();
        let gens = generators
            .iter()
            .map(|m| MatrixModF([0, 1, 2, 3].map(|i| r.reduce(&m[i]))))
            .collect();
        SubgroupFrame::new(ambient, gens)
    }

    /// `Gamma_T`: the kernel of reduction modulo `T`.
    pub fn gamma_t(field: &Field, guard: Guard) -> Result<SubgroupFrame> {
        SubgroupFrame::principal_congruence(field, &Poly::x(), guard)
    }

    /// The kernel of reduction modulo `f` (trivial `H`).
    pub fn principal_congruence(field: &Field, f: &Poly, guard: Guard) -> Result<SubgroupFrame> {
        SubgroupFrame::new(ambient_image(field, f, guard)?, Vec::new())
    }

    /// All of `GL2(A)` (with `H` the whole reduced group).
    pub fn full(field: &Field, f: &Poly, guard: Guard) -> Result<SubgroupFrame> {
        let ambient = ambient_image(field, f, guard)?;
        let gens = ambient.generators().to_vec();
        SubgroupFrame::new(ambient, gens)
    }

    pub fn ambient(&self) -> &Arc<AmbientGroup> {
        &self.ambient
    }

    pub fn ring(&self) -> &ResidueRing {
        self.ambient.ring()
    }

    pub fn field(&self) -> &Field {
        self.ring().field()
    }

    pub fn modulus(&self) -> &Poly {
        self.ring().modulus()
    }

    pub fn generators(&self) -> &[MatrixModF] {
        &self.generators
    }

    pub fn subgroup(&self) -> &HashSet<MatrixModF> {
        &self.subgroup
    }

    pub fn order(&self) -> usize {
        self.subgroup.len()
    }

    /// The frame of `g Gamma g^-1` for `g` in the reduced group.
    pub fn conjugate(&self, g: MatrixModF) -> Result<SubgroupFrame> {
        let r = self.ring();
        let gens = self
            .generators
            .iter()
            .map(|&h| {
                h.conjugate_by(r, g)
                    .ok_or_else(|| Error::Invalid(format!("{g} is not in the reduced group")))
            })
            .collect::<Result<Vec<_>>>()?;
        SubgroupFrame::new(self.ambient.clone(), gens)
    }

    /// The core of `H`: the intersection of its conjugates, refined one
    /// generator of the ambient group at a time until stable.
    pub fn core(&self) -> HashSet<MatrixModF> {
        let r = self.ring();
        let gens: Vec<(MatrixModF, MatrixModF)> = self
            .ambient
            .generators()
            .iter()
            .map(|&s| (s, s.inverse(r).expect("ambient generators are invertible")))
            .collect();
        let mut k: HashSet<MatrixModF> = (*self.subgroup).clone();
        loop {
            let before = k.len();
            for &(s, s_inv) in &gens {
                let next: HashSet<MatrixModF> = k
                    .iter()
                    .copied()
                    .filter(|&m| k.contains(&s_inv.mul(r, m).mul(r, s)))
                    .collect();
                k = next;
            }
            if k.len() == before {
                return k;
            }
        }
    }

    /// `{ a : u(a) in core(H) }`, checked to be an `F_q`-subspace.
    pub fn quasi_level(&self) -> Result<QuasiLevel> {
        let r = self.ring();
        let core = self.core();
        let residues: Vec<u32> = r
            .elements()
            .filter(|&a| core.contains(&MatrixModF::unipotent(a)))
            .collect();
        let set: HashSet<u32> = residues.iter().copied().collect();
        let closed = set.contains(&0)
            && residues
                .iter()
                .all(|&a| residues.iter().all(|&b| set.contains(&r.add(a, b))))
            && residues
                .iter()
                .all(|&a| self.field().elements().all(|c| set.contains(&r.scale(c, a))));
        if !closed {
            return Err(Error::Internal(format!(
                "unipotent set of the core is not an F_q-subspace ({} residues)",
                residues.len()
            )));
        }
        let basis = echelon_basis(r, &residues);
        if checked_pow(self.field().q() as u64, basis.len() as u32) != residues.len() as u128 {
            return Err(Error::Internal("quasi-level basis does not span".into()));
        }
        Ok(QuasiLevel {
            modulus: self.modulus().clone(),
            basis,
            residues,
        })
    }

    /// Monic generator of the largest ideal inside the quasi-level.
    pub fn level(&self) -> Result<Poly> {
        let ql = self.quasi_level()?;
        Ok(level_of(self.ring(), &ql))
    }

    pub fn modularity(&self) -> Result<Modularity> {
        let r = self.ring();
        let f = self.modulus();
        let verdict = |modular: bool, reason: String| Ok(Modularity { modular, reason });
        if !f.coeff(0).is_zero() {
            return verdict(false, format!("modulus {f} is prime to T, so Gamma is not inside Gamma_T"));
        }
        let identity = [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE];
        if let Some(g) = self.generators.iter().find(|g| g.at_zero(r) != identity) {
            return verdict(
                false,
                format!("generator {} is not congruent to 1 mod T", show_matrix(r, *g)),
            );
        }
        let level = self.level()?;
        if level.deg() == 0 {
            return verdict(false, "level is (1)".into());
        }
        verdict(true, format!("Gamma lies in Gamma_T and has level ({level})"))
    }

    pub fn is_modular_frame(&self) -> Result<bool> {
        Ok(self.modularity()?.modular)
    }

    /// Modular with quasi-level equal to the level.
    pub fn is_classically_modular_frame(&self) -> Result<bool> {
        if !self.is_modular_frame()? {
            return Ok(false);
        }
        let ql = self.quasi_level()?;
        let level = level_of(self.ring(), &ql);
        Ok(ql.dim() == self.modulus().deg() - level.deg())
    }

    /// Orbits of `Gamma` on `P^1(F)`: the double cosets `H \ G_bar / P_bar`,
    /// counted as `H`-orbits on unimodular columns modulo `F_q^*`.
    pub fn cusp_count(&self) -> Result<u64> {
        let r = self.ring();
        let field = self.field();
        let f = self.modulus();
        let canon = |v: (u32, u32)| {
            field
                .nonzero_elements()
                .map(|c| (r.scale(c, v.0), r.scale(c, v.1)))
                .min()
                .expect("F_q^* is nonempty")
        };
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        for a in r.elements() {
            let fa = r.lift(a).gcd(field, f);
            for b in r.elements() {
                if fa.gcd(field, &r.lift(b)).deg() == 0 {
                    let c = canon((a, b));
                    let next = index.len();
                    index.entry(c).or_insert(next);
                }
            }
        }
        let mut parent: Vec<usize> = (0..index.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (&v, &i) in &index {
            for g in &self.generators {
                let j = index[&canon(g.apply(r, v))];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        Ok((0..parent.len()).filter(|&i| find(&mut parent, i) == i).count() as u64)
    }

    /// Whether `H` contains the reduction of `{ M = 1 mod level, det M = 1 }`.
    pub fn contains_level_kernel(&self) -> Result<bool> {
        let r = self.ring();
        let field = self.field();
        let level = self.level()?;
        let diag = [true, false, false, true];
        Ok(self.ambient.elements().iter().all(|m| {
            let congruent = (0..4).all(|i| {
                let e = r.lift(m.0[i]);
                let e = if diag[i] { e.sub(field, &Poly::one()) } else { e };
                e.is_zero() || level.divides(field, &e)
            });
            !congruent || m.det(r) != 1 || self.subgroup.contains(m)
        }))
    }

    /// Finite-order elements of `Gamma` whose entries have degree at most
    /// `degree_bound`, each with its exact order.
    ///
    /// A finite-order element of `GL2(F_q[T])` has order dividing
    /// `p (q^2 - 1)`; the scan follows powers up to that exponent.
    pub fn torsion_scan(&self, degree_bound: u32, guard: Guard) -> Result<Vec<TorsionElement>> {
        let field = self.field();
        let r = self.ring();
        let q = field.q() as u64;
        let per_entry = checked_pow(q, degree_bound + 1);
        guard.check("torsion scan candidates", per_entry.saturating_pow(4))?;
        let exponent = field.p() as u64 * (q * q - 1);
        let polys: Vec<Poly> = (0..per_entry as u64)
            .map(|code| {
                let digits: Vec<u32> = (0..=degree_bound)
                    .map(|i| ((code / q.pow(i)) % q) as u32)
                    .collect();
                Poly::from_codes(&digits)
            })
            .collect();
        let residues: Vec<u32> = polys.iter().map(|p| r.reduce(p)).collect();
        let n = polys.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let reduced = MatrixModF([residues[a], residues[b], residues[c], residues[d]]);
                        if !self.subgroup.contains(&reduced) {
                            continue;
                        }
                        let m = [polys[a].clone(), polys[b].clone(), polys[c].clone(), polys[d].clone()];
                        let det = m[0].mul(field, &m[3]).sub(field, &m[1].mul(field, &m[2]));
                        if det.deg() != 0 || det.is_zero() {
                            continue;
                        }
                        if let Some(order) = matrix_order(field, &m, exponent) {
                            out.push(TorsionElement { matrix: m, order });
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn show_matrix(r: &ResidueRing, m: MatrixModF) -> String {
    let [a, b, c, d] = m.0.map(|x| r.lift(x));
    format!("(({a}, {b}), ({c}, {d}))")
}

fn poly_matrix_mul(field: &Field, x: &[Poly; 4], y: &[Poly; 4]) -> [Poly; 4] {
    let e = |i: usize, j: usize, k: usize, l: usize| x[i].mul(field, &y[j]).add(field, &x[k].mul(field, &y[l]));
    [e(0, 0, 1, 2), e(0, 1, 1, 3), e(2, 0, 3, 2), e(2, 1, 3, 3)]
}

/// Least `k <= exponent` with `m^k = 1`.
fn matrix_order(field: &Field, m: &[Poly; 4], exponent: u64) -> Option<u64> {
    let one = [Poly::one(), Poly::zero(), Poly::zero(), Poly::one()];
    let mut power = m.clone();
    for k in 1..=exponent {
        if power == one {
            return Some(k);
        }
        power = poly_matrix_mul(field, &power, m);
    }
    None
}

fn echelon_basis(r: &ResidueRing, residues: &[u32]) -> Vec<Poly> {
    let field = r.field();
    let n = r.dim() as usize;
    let vector = |a: u32| {
        let mut v = r.lift(a).coeffs().to_vec();
        v.resize(n, Fe::ZERO);
        v
    };
    let pivot = |v: &[Fe]| v.iter().rposition(|c| !c.is_zero());
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for &a in residues {
        let mut v = vector(a);
        for row in &rows {
            let p = pivot(row).expect("rows are nonzero");
            let c = v[p];
            if !c.is_zero() {
                for i in 0..n {
                    v[i] = field.sub(v[i], field.mul(c, row[i]));
                }
            }
        }
        let Some(p) = pivot(&v) else { continue };
        let inv = field.inv(v[p]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for row in rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                for i in 0..n {
                    row[i] = field.sub(row[i], field.mul(c, v[i]));
                }
            }
        }
        rows.push(v);
    }
    let mut basis: Vec<Poly> = rows.into_iter().map(Poly::new).collect();
    basis.sort();
    basis
}

fn level_of(r: &ResidueRing, ql: &QuasiLevel) -> Poly {
    let field = r.field();
    let f = r.modulus();
    let n = f.deg();
    let q = field.q() as u64;
    for d in 0..=n {
        for code in 0..q.pow(d as u32) {
            let mut c: Vec<u32> = (0..d).map(|i| ((code / q.pow(i as u32)) % q) as u32).collect();
            c.push(1);
            let h = Poly::from_codes(&c);
            if !h.divides(field, f) {
                continue;
            }
            let inside = (0..n - d).all(|i| {
                ql.contains_residue(r.reduce(&h.shift(i)))
            });
            if inside {
                return h;
            }
        }
    }
    f.clone()
}

/// Parses `q=<int> f=<poly> gens=[<4 polys>;<4 polys>;...]`.
pub fn parse_frame(line: &str, guard: Guard) -> Result<SubgroupFrame> {
    let kv = parse::key_values(parse::strip_comment(line))?;
    for key in kv.keys() {
        if !["q", "f", "gens"].contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown key `{key}`")));
        }
    }
    let get = |k: &str| kv.get(k).ok_or_else(|| Error::Parse(format!("missing {k}=")));
    let q = parse::parse_u64("q", get("q")?)?;
    let field = Field::of_order(q, guard)?;
    let f = parse::univariate(&field, get("f")?)?;
    let gens_text = kv.get("gens").map(String::as_str).unwrap_or("[]").trim();
    let inner = gens_text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("gens must be bracketed, found `{gens_text}`")))?
        .trim();
    let mut gens = Vec::new();
    if !inner.is_empty() {
        for chunk in inner.split(';') {
            let entries = split_top_level(chunk.trim());
            if entries.len() != 4 {
                return Err(Error::Parse(format!(
                    "a generator needs 4 entries, found {} in `{chunk}`",
                    entries.len()
                )));
            }
            let m = entries
                .iter()
                .map(|e| parse::univariate(&field, e))
                .collect::<Result<Vec<_>>>()?;
            gens.push([m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone()]);
        }
    }
    SubgroupFrame::from_polys(&field, &f, &gens, guard)
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|s| s.trim().to_string()).collect()
}
