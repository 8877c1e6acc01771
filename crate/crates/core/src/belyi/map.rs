use std::fmt;

use serde::Serialize;

use crate::fq_poly::{Embedding, Fe, Field, Poly};
use crate::{Error, Result};

/// A point of `P^1` over some finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum P1Point {
    Finite(Fe),
    Infinity,
}

impl P1Point {
    pub fn map(self, emb: &Embedding) -> P1Point {
        match self {
            P1Point::Finite(a) => P1Point::Finite(emb.map(a)),
            P1Point::Infinity => P1Point::Infinity,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(a) => write!(f, "{}", a.0),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Finite points serialize as their element code, infinity as `"inf"`.
impl Serialize for P1Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            P1Point::Finite(a) => s.serialize_u32(a.0),
            P1Point::Infinity => s.serialize_str("inf"),
        }
    }
}

/// A rational self-map `x -> N(x)/D(x)` of `P^1` in lowest terms, `D` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    field: Field,
    num: Poly,
    den: Poly,
}

impl RationalMap {
    pub fn new(field: &Field, num: Poly, den: Poly) -> Result<RationalMap> {
        if den.is_zero() {
            return Err(Error::Invalid("denominator is zero".into()));
        }
        let g = num.gcd(field, &den);
        let (mut num, mut den) = if num.is_zero() {
            (num, Poly::one())
        } else {
            (num.div_exact(field, &g).expect("gcd divides"), den.div_exact(field, &g).expect("gcd divides"))
        };
        let lc = field.inv(den.leading());
        num = num.scale(field, lc);
        den = den.scale(field, lc);
        if num.degree().unwrap_or(0) == 0 && den.deg() == 0 {
            return Err(Error::Invalid("constant map".into()));
        }
        Ok(RationalMap {
            field: field.clone(),
            num,
            den,
        })
    }

    pub fn polynomial(field: &Field, f: Poly) -> Result<RationalMap> {
        RationalMap::new(field, f, Poly::one())
    }

    pub fn identity(field: &Field) -> RationalMap {
        RationalMap::polynomial(field, Poly::x()).expect("x is not constant")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.deg())
    }

    /// `N' D - N D'`, which vanishes exactly at the finite ramification points.
    pub fn wronskian(&self) -> Poly {
        let k = &self.field;
        self.num
            .derivative(k)
            .mul(k, &self.den)
            .sub(k, &self.num.mul(k, &self.den.derivative(k)))
    }

    pub fn is_separable(&self) -> bool {
        !self.wronskian().is_zero()
    }

    pub fn eval(&self, x: P1Point) -> P1Point {
        let k = &self.field;
        match x {
            P1Point::Finite(a) => {
                let d = self.den.eval(k, a);
                if d.is_zero() {
                    P1Point::Infinity
                } else {
                    P1Point::Finite(k.div(self.num.eval(k, a), d))
                }
            }
            P1Point::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.deg());
                match dn {
                    Some(n) if n > dd => P1Point::Infinity,
                    Some(n) if n == dd => P1Point::Finite(k.div(self.num.leading(), self.den.leading())),
                    _ => P1Point::Finite(Fe::ZERO),
                }
            }
        }
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        if self.field != inner.field {
            return Err(Error::Invalid("composing maps over different fields".into()));
        }
        let k = &self.field;
        let e = self.degree();
        let (n, d) = (&inner.num, &inner.den);
        let homogenize = |f: &Poly| {
            let mut acc = Poly::zero();
            let mut npow = Poly::one();
            for (i, &c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let term = npow.mul(k, &d.pow(k, (e - i) as u64)).scale(k, c);
                    acc = acc.add(k, &term);
                }
                npow = npow.mul(k, n);
            }
            acc
        };
        RationalMap::new(k, homogenize(&self.num), homogenize(&self.den))
    }

    /// `self o (1/x)`, used for local analysis at infinity.
    pub fn at_reciprocal(&self) -> RationalMap {
        let k = &self.field;
        let d = self.degree();
        let rev = |f: &Poly| {
            let mut c = vec![Fe::ZERO; d + 1];
            for (i, &a) in f.coeffs().iter().enumerate() {
                c[d - i] = a;
            }
            Poly::new(c)
        };
        RationalMap::new(k, rev(&self.num), rev(&self.den)).expect("reciprocal of a nonconstant map")
    }

    /// The same map over an extension field.
    pub fn map_up(&self, emb: &Embedding) -> RationalMap {
        RationalMap {
            field: emb.big().clone(),
            num: self.num.map_up(emb),
            den: self.den.map_up(emb),
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

/// `x -> (a x + b) / (c x + d)`.
pub fn mobius_map(field: &Field, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<RationalMap> {
    let det = field.sub(field.mul(a, d), field.mul(b, c));
    if det.is_zero() {
        return Err(Error::Invalid("Moebius map with zero determinant".into()));
    }
    RationalMap::new(field, Poly::new(vec![b, a]), Poly::new(vec![d, c]))
}
