use super::field::{prime_factors, Fe, Field};
use super::poly::Poly;
use crate::guard::checked_pow;
use crate::{Guard, Result};

pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut result = 1i64;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`.
pub fn irreducible_count(q: u64, d: u32) -> u128 {
    let mut total: i128 = 0;
    for e in divisors(d as u64) {
        total += mobius(d as u64 / e) as i128 * checked_pow(q, e as u32) as i128;
    }
    (total / d as i128) as u128
}

/// Rabin's test over `F_q`.
pub fn is_irreducible(field: &Field, f: &Poly) -> bool {
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(d) => d as u64,
    };
    if d == 1 {
        return true;
    }
    let q = field.q() as u128;
    let x = Poly::x();
    let frob_power = |k: u64| -> Poly {
        let mut y = x.rem(field, f);
        for _ in 0..k {
            y = y.pow_mod(field, q, f);
        }
        y
    };
    if frob_power(d) != x.rem(field, f) {
        return false;
    }
    prime_factors(d).into_iter().all(|r| {
        let y = frob_power(d / r).sub(field, &x);
        y.gcd(field, f).is_one()
    })
}

/// Minimal polynomial over `field` of `beta` in the extension `big`
/// (given by `emb`), or `None` if the orbit is not of size `d`.
fn orbit_minpoly(
    field: &Field,
    big: &Field,
    emb: &super::field::Embedding,
    beta: Fe,
    d: u32,
) -> Option<Poly> {
    let q = field.q() as u64;
    let mut orbit = vec![beta];
    let mut y = big.pow(beta, q);
    while y != beta {
        if y < beta {
            return None;
        }
        orbit.push(y);
        y = big.pow(y, q);
    }
    if orbit.len() != d as usize {
        return None;
    }
    let mut m = Poly::one();
    for &r in &orbit {
        m = m.mul(big, &Poly::linear_root(big, r));
    }
    m.pull_back(emb)
}

/// All monic irreducible polynomials of degree `d` over `field`, ascending.
pub fn irreducibles(field: &Field, d: u32, guard: Guard) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(crate::Error::Invalid("degree must be positive".into()));
    }
    guard.check(
        format!("irreducibles of degree {d} over F_{}", field.q()),
        checked_pow(field.q() as u64, d),
    )?;
    if d == 1 {
        return Ok(field
            .elements()
            .map(|a| Poly::linear_root(field, a))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect());
    }
    let (big, emb) = field.extension(d, guard)?;
    let mut out: Vec<Poly> = big
        .nonzero_elements()
        .filter_map(|b| orbit_minpoly(field, &big, &emb, b, d))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// `(e, g_e)` where `g_e` is the product of the irreducible factors of degree `e`.
pub fn distinct_degree_factorization(field: &Field, f: &Poly) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    let mut rest = f.monic(field);
    let q = field.q() as u128;
    let x = Poly::x();
    if rest.is_constant() {
        return out;
    }
    let mut h = x.rem(field, &rest);
    let mut e = 0;
    while rest.deg() > 0 {
        e += 1;
        if 2 * e > rest.deg() {
            out.push((rest.deg(), rest.clone()));
            break;
        }
        h = h.pow_mod(field, q, &rest);
        let g = h.sub(field, &x).gcd(field, &rest);
        if !g.is_one() {
            rest = rest.div_rem(field, &g).0;
            h = h.rem(field, &rest);
            out.push((e, g));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lists() {
        let f2 = Field::new(2, 1).unwrap();
        let g = Guard::default();
        assert_eq!(
            irreducibles(&f2, 1, g).unwrap(),
            vec![Poly::from_codes(&[0, 1]), Poly::from_codes(&[1, 1])]
        );
        assert_eq!(
            irreducibles(&f2, 2, g).unwrap(),
            vec![Poly::from_codes(&[1, 1, 1])]
        );
        let f3 = Field::new(3, 1).unwrap();
        let l = irreducibles(&f3, 2, g).unwrap();
        assert_eq!(l.len(), 3);
        for f in &l {
            assert!(f3.elements().all(|a| !f.eval(&f3, a).is_zero()));
        }
    }

    #[test]
    fn rabin_matches_orbits() {
        let k = Field::new(2, 2).unwrap();
        let list = irreducibles(&k, 3, Guard::default()).unwrap();
        let mut brute = Vec::new();
        for code in 0..64u32 {
            let f = Poly::from_codes(&[code % 4, (code / 4) % 4, code / 16, 1]);
            if is_irreducible(&k, &f) {
                brute.push(f);
            }
        }
        brute.sort();
        assert_eq!(list, brute);
    }

    #[test]
    fn ddf_splits_degrees() {
        let k = Field::new(3, 1).unwrap();
        let a = Poly::from_codes(&[1, 0, 1]); // T^2 + 1
        let b = Poly::from_codes(&[0, 1]);
        let c = Poly::from_codes(&[1, 2, 0, 1]); // T^3 + 2T + 1
        assert!(is_irreducible(&k, &c));
        let f = a.mul(&k, &b).mul(&k, &c);
        let ddf = distinct_degree_factorization(&k, &f);
        assert_eq!(ddf, vec![(1, b), (2, a), (3, c)]);
    }
}
