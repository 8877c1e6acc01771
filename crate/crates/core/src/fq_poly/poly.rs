use std::cmp::Ordering;
use std::fmt;

use super::field::{Embedding, Fe, Field};
use crate::{Error, Result};

/// A polynomial over a finite field, coefficients stored constant term first
/// with no trailing zeros. The zero polynomial has no coefficients.
///
/// Arithmetic takes the coefficient field explicitly; a `Poly` does not carry it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Fe>,
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down in field element order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.0)?;
        }
        write!(f, "]")
    }
}

/// Serialized as its list of coefficient codes, constant term first.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.c.iter().map(|c| c.0))
    }
}

impl Poly {
    pub fn new(mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_codes(codes: &[u32]) -> Poly {
        Poly::new(codes.iter().map(|&c| Fe(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![Fe::ONE] }
    }

    pub fn constant(a: Fe) -> Poly {
        Poly::new(vec![a])
    }

    /// The indeterminate `T`.
    pub fn x() -> Poly {
        Poly {
            c: vec![Fe::ZERO, Fe::ONE],
        }
    }

    pub fn monomial(a: Fe, k: usize) -> Poly {
        let mut c = vec![Fe::ZERO; k + 1];
        c[k] = a;
        Poly::new(c)
    }

    /// `T - a` over the field.
    pub fn linear_root(field: &Field, a: Fe) -> Poly {
        Poly::new(vec![field.neg(a), Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn codes(&self) -> Vec<u32> {
        self.c.iter().map(|c| c.0).collect()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == Fe::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        Poly::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly {
            c: self.c.iter().map(|&a| field.neg(a)).collect(),
        }
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        Poly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, a: Fe) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|&x| field.mul(x, a)).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Fe::ZERO; k];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, field: &Field, mut e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        result
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, field: &Field, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = field.inv(divisor.leading());
        let mut r = self.c.clone();
        let mut quot = vec![Fe::ZERO; r.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = r[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = field.mul(top, lead_inv);
            quot[k] = c;
            for (i, &b) in divisor.c.iter().enumerate() {
                r[k + i] = field.sub(r[k + i], field.mul(c, b));
            }
        }
        r.truncate(dd);
        (Poly::new(quot), Poly::new(r))
    }

    pub fn rem(&self, field: &Field, divisor: &Poly) -> Poly {
        self.div_rem(field, divisor).1
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, field: &Field, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(field, divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, field: &Field, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(field, self).is_zero()
    }

    pub fn monic(&self, field: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(field, field.inv(self.leading()))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, field: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, field: &Field, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(field, &r1);
            let s = s0.sub(field, &q.mul(field, &s1));
            let t = t0.sub(field, &q.mul(field, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = field.inv(r0.leading());
        (r0.scale(field, li), s0.scale(field, li), t0.scale(field, li))
    }

    /// Monic least common multiple.
    pub fn lcm(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(field, other);
        self.mul(field, &other.div_rem(field, &g).0).monic(field)
    }

    pub fn eval(&self, field: &Field, x: Fe) -> Fe {
        field.horner(&self.c, x)
    }

    pub fn derivative(&self, field: &Field) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| field.mul(a, field.from_i64(i as i64)))
                .collect(),
        )
    }

    /// `self(g(T))`.
    pub fn compose(&self, field: &Field, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for &a in self.c.iter().rev() {
            acc = acc.mul(field, g).add(field, &Poly::constant(a));
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, field: &Field, mut e: u128, m: &Poly) -> Poly {
        let mut result = Poly::one().rem(field, m);
        let mut base = self.rem(field, m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(field, &base).rem(field, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base).rem(field, m);
            }
        }
        result
    }

    /// Image of the polynomial under a field embedding.
    pub fn map_up(&self, emb: &Embedding) -> Poly {
        Poly {
            c: self.c.iter().map(|&a| emb.map(a)).collect(),
        }
    }

    /// Preimage under an embedding when every coefficient lies in the subfield.
    pub fn pull_back(&self, emb: &Embedding) -> Option<Poly> {
        self.c
            .iter()
            .map(|&a| emb.preimage(a))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Roots in the field, ascending, each listed once.
    pub fn roots(&self, field: &Field) -> Vec<Fe> {
        if self.is_zero() {
            return field.elements().collect();
        }
        field
            .elements()
            .filter(|&a| self.eval(field, a).is_zero())
            .collect()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, field: &Field, a: Fe) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(field, a);
        let mut f = self.clone();
        let mut m = 0;
        while let Some(q) = f.div_exact(field, &lin) {
            f = q;
            m += 1;
        }
        m
    }

    pub fn is_squarefree(&self, field: &Field) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.derivative(field);
        if d.is_zero() {
            return self.is_constant();
        }
        self.gcd(field, &d).is_one()
    }

    /// Squarefree factorization in characteristic `p`: pairs `(g_i, i)` with
    /// `self = lc * prod g_i^i`, each `g_i` monic, squarefree and nonconstant.
    pub fn squarefree_factorization(&self, field: &Field) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        sff_rec(field, &self.monic(field), 1, &mut out);
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        for (g, m) in out {
            match merged.iter_mut().find(|(_, k)| *k == m) {
                Some(entry) => entry.0 = entry.0.mul(field, &g),
                None => merged.push((g, m)),
            }
        }
        merged
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self, field: &Field) -> Poly {
        let p = field.p() as usize;
        let inv_frob = (field.q() / field.p()) as u64;
        Poly::new(
            self.c
                .iter()
                .step_by(p)
                .map(|&a| field.pow(a, inv_frob))
                .collect(),
        )
    }

    /// Checks that `self` lies in the subfield `F_{p^m}` coefficient-wise.
    pub fn coefficients_in_subfield(&self, field: &Field, m: u32) -> bool {
        self.c.iter().all(|&a| field.in_subfield(a, m))
    }
}

fn sff_rec(field: &Field, f: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
    if f.is_constant() {
        return;
    }
    let d = f.derivative(field);
    if d.is_zero() {
        sff_rec(field, &f.pth_root(field), mult * field.p() as usize, out);
        return;
    }
    let mut c = f.gcd(field, &d);
    let mut w = f.div_rem(field, &c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(field, &c);
        let z = w.div_rem(field, &y).0;
        if !z.is_one() {
            out.push((z.monic(field), i * mult));
        }
        i += 1;
        w = y;
        c = c.div_rem(field, &w).0;
    }
    if !c.is_one() {
        sff_rec(field, &c.pth_root(field).monic(field), mult * field.p() as usize, out);
    }
}

/// `f(T + alpha)` for `alpha` in the base field.
pub fn substitution_automorphism(field: &Field, alpha: Fe, f: &Poly) -> Result<Poly> {
    if !field.contains(alpha) {
        return Err(Error::NotInBaseField(alpha.0));
    }
    let shift = Poly::new(vec![alpha, Fe::ONE]);
    Ok(f.compose(field, &shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, n: u32) -> Field {
        Field::new(p, n).unwrap()
    }

    #[test]
    fn division_reconstructs() {
        let k = f(3, 1);
        let a = Poly::from_codes(&[1, 2, 0, 1, 2]);
        let b = Poly::from_codes(&[2, 0, 1]);
        let (q, r) = a.div_rem(&k, &b);
        assert!(r.deg() < b.deg());
        assert_eq!(q.mul(&k, &b).add(&k, &r), a);
    }

    #[test]
    fn substitution_examples() {
        let f3 = f(3, 1);
        assert_eq!(
            substitution_automorphism(&f3, Fe(1), &Poly::x()).unwrap(),
            Poly::from_codes(&[1, 1])
        );
        let f2 = f(2, 1);
        assert_eq!(
            substitution_automorphism(&f2, Fe(1), &Poly::from_codes(&[0, 0, 1])).unwrap(),
            Poly::from_codes(&[1, 0, 1])
        );
        assert_eq!(
            substitution_automorphism(&f2, Fe(2), &Poly::x()),
            Err(Error::NotInBaseField(2))
        );
    }

    #[test]
    fn squarefree_factorization_in_char_p() {
        let k = f(2, 1);
        // (T+1)^2 * T^3 = T^5 + T^3
        let g = Poly::from_codes(&[0, 0, 0, 1, 0, 1]);
        let sff = g.squarefree_factorization(&k);
        assert_eq!(
            sff,
            vec![
                (Poly::from_codes(&[1, 1]), 2),
                (Poly::from_codes(&[0, 1]), 3)
            ]
        );
        let k3 = f(3, 1);
        // T^3 * (T+1)
        let h = Poly::from_codes(&[0, 0, 0, 1]).mul(&k3, &Poly::from_codes(&[1, 1]));
        let sff = h.squarefree_factorization(&k3);
        assert_eq!(
            sff,
            vec![
                (Poly::from_codes(&[1, 1]), 1),
                (Poly::from_codes(&[0, 1]), 3)
            ]
        );
    }

    #[test]
    fn ordering_is_degree_then_top_coefficient() {
        let a = Poly::from_codes(&[2, 1]);
        let b = Poly::from_codes(&[0, 2]);
        let c = Poly::from_codes(&[0, 0, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn xgcd_identity() {
        let k = f(5, 1);
        let a = Poly::from_codes(&[1, 2, 3, 4]);
        let b = Poly::from_codes(&[3, 0, 1]);
        let (g, s, t) = a.xgcd(&k, &b);
        assert_eq!(s.mul(&k, &a).add(&k, &t.mul(&k, &b)), g);
        assert_eq!(g, a.gcd(&k, &b));
    }
}
