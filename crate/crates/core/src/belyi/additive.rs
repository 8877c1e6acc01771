use std::collections::BTreeMap;

use crate::fq_poly::{Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

/// `psi(x) = sum c_i x^(p^i)` over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePolynomial {
    field: Field,
    coeffs: Vec<Fe>,
}

impl AdditivePolynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Result<AdditivePolynomial> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("zero additive polynomial".into()));
        }
        Ok(AdditivePolynomial {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn identity(field: &Field) -> AdditivePolynomial {
        AdditivePolynomial {
            field: field.clone(),
            coeffs: vec![Fe::ONE],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// `m` with degree `p^m`.
    pub fn height(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> u128 {
        checked_pow(self.field.p() as u64, self.height() as u32)
    }

    pub fn eval(&self, a: Fe) -> Fe {
        let k = &self.field;
        let mut acc = Fe::ZERO;
        let mut frob = a;
        for &c in &self.coeffs {
            acc = k.add(acc, k.mul(c, frob));
            frob = k.frobenius(frob);
        }
        acc
    }

    pub fn to_poly(&self) -> Poly {
        let p = self.field.p() as usize;
        let mut c = vec![Fe::ZERO; p.pow(self.height() as u32) + 1];
        let mut e = 1;
        for &a in &self.coeffs {
            c[e] = a;
            e *= p;
        }
        Poly::new(c)
    }

    /// `psi^p - lambda psi`, which is additive again.
    fn frobenius_step(&self, lambda: Fe) -> AdditivePolynomial {
        let k = &self.field;
        let mut next = vec![Fe::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            next[i + 1] = k.add(next[i + 1], k.frobenius(c));
            next[i] = k.sub(next[i], k.mul(lambda, c));
        }
        AdditivePolynomial::new(k, next).expect("leading coefficient is a Frobenius image")
    }
}

/// An `F_p`-basis of the span of `points`, in order of first appearance.
pub fn span_basis(field: &Field, points: &[Fe]) -> Vec<Fe> {
    let p = field.p() as u64;
    let n = field.n() as usize;
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).expect("nonzero residue");
    // Rows kept in echelon form, each with its pivot column.
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut basis = Vec::new();
    for &pt in points {
        let mut v: Vec<u64> = field.digits(pt).into_iter().map(u64::from).collect();
        v.resize(n, 0);
        for (piv, row) in &rows {
            let c = v[*piv];
            if c != 0 {
                for j in 0..n {
                    v[j] = (v[j] + (p - c) * row[j]) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&c| c != 0) {
            let s = inv(v[piv]);
            for c in v.iter_mut() {
                *c = *c * s % p;
            }
            rows.push((piv, v));
            basis.push(pt);
        }
    }
    basis
}

/// Every `F_p`-combination of `basis`.
pub fn span_elements(field: &Field, basis: &[Fe], guard: Guard) -> Result<Vec<Fe>> {
    let p = field.p();
    guard.check("F_p-span", checked_pow(p as u64, basis.len() as u32))?;
    let mut out = vec![Fe::ZERO];
    for &b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        let mut mult = Fe::ZERO;
        for _ in 0..p {
            next.extend(out.iter().map(|&a| field.add(a, mult)));
            mult = field.add(mult, b);
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// The monic additive polynomial whose roots are exactly the `F_p`-span of
/// `points`.
pub fn additive_span_polynomial(
    field: &Field,
    points: &[Fe],
    guard: Guard,
) -> Result<AdditivePolynomial> {
    let basis = span_basis(field, points);
    guard.check("F_p-span", checked_pow(field.p() as u64, basis.len() as u32))?;
    let mut psi = AdditivePolynomial::identity(field);
    for &b in &basis {
        let v = psi.eval(b);
        psi = psi.frobenius_step(field.pow(v, field.p() as u64 - 1));
    }
    Ok(psi)
}

fn binomial_mod_p(mut n: usize, mut k: usize, p: usize) -> usize {
    // Lucas' theorem.
    let mut acc = 1;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1;
        for i in 0..b {
            c = c * (a - i) / (i + 1);
        }
        acc = acc * (c % p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Nonzero terms `x^i y^j` of `f(x + y) - f(x) - f(y)`, expanded exactly.
pub fn additivity_defect(field: &Field, f: &Poly) -> BTreeMap<(usize, usize), Fe> {
    let p = field.p() as usize;
    let mut terms: BTreeMap<(usize, usize), Fe> = BTreeMap::new();
    for (n, &a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if n == 0 {
            // The constant term survives as -a.
            let e = terms.entry((0, 0)).or_insert(Fe::ZERO);
            *e = field.sub(*e, a);
            continue;
        }
        for i in 1..n {
            let b = binomial_mod_p(n, i, p);
            if b == 0 {
                continue;
            }
            let e = terms.entry((i, n - i)).or_insert(Fe::ZERO);
            *e = field.add(*e, field.mul(a, field.from_i64(b as i64)));
        }
    }
    terms.retain(|_, v| !v.is_zero());
    terms
}

/// `f(c x) = c f(x)` for every `c` in the prime field.
pub fn commutes_with_prime_scalars(field: &Field, f: &Poly) -> bool {
    (0..field.p()).all(|c| {
        let c = field.from_i64(c as i64);
        f.coeffs()
            .iter()
            .enumerate()
            .all(|(n, &a)| field.mul(a, field.pow(c, n as u64)) == field.mul(a, c) || a.is_zero())
    })
}

/// Result of checking an additive polynomial against the span it should
/// annihilate.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AdditiveCheck {
    pub dim: usize,
    pub degree: u128,
    pub additive: bool,
    pub prime_linear: bool,
    pub roots: usize,
    pub kernel_is_span: bool,
}

impl AdditiveCheck {
    pub fn passed(&self) -> bool {
        self.additive
            && self.prime_linear
            && self.kernel_is_span
            && self.roots as u128 == self.degree
    }
}

/// Exact additivity identity, `F_p`-linearity, and root set equal to the
/// span of `points`, each root simple.
pub fn check_additive(
    psi: &AdditivePolynomial,
    points: &[Fe],
    guard: Guard,
) -> Result<AdditiveCheck> {
    let k = psi.field();
    let f = psi.to_poly();
    let basis = span_basis(k, points);
    let span = span_elements(k, &basis, guard)?;
    guard.check("root scan", k.q() as u128)?;
    let roots: Vec<Fe> = k.elements().filter(|&a| psi.eval(a).is_zero()).collect();
    // The derivative of an additive polynomial is its constant c_0.
    let simple = !f.derivative(k).is_zero() && f.derivative(k).is_constant();
    Ok(AdditiveCheck {
        dim: basis.len(),
        degree: psi.degree(),
        additive: additivity_defect(k, &f).is_empty(),
        prime_linear: commutes_with_prime_scalars(k, &f),
        roots: if simple { roots.len() } else { 0 },
        kernel_is_span: roots == span,
    })
}
