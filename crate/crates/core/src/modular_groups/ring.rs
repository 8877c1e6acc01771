use crate::fq_poly::{Fe, Field, Poly};
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

/// `A/(f)` for a monic `f` of positive degree, elements encoded as integers:
/// the residue `sum c_i T^i` (deg < deg f) has code `sum code(c_i) q^i`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: Field,
    modulus: Poly,
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

impl ResidueRing {
    pub fn new(field: &Field, modulus: &Poly, guard: Guard) -> Result<ResidueRing> {
        if !modulus.is_monic() || modulus.deg() == 0 {
            return Err(Error::Invalid(format!(
                "modulus {modulus} must be monic of positive degree"
            )));
        }
        let n = modulus.deg() as u32;
        let size = checked_pow(field.q() as u64, n);
        guard.check("residue ring tables", size.saturating_mul(size))?;
        let size = size as u32;
        let q = field.q();
        let poly = |c: u32| {
            let mut codes = Vec::with_capacity(n as usize);
            let mut r = c;
            for _ in 0..n {
                codes.push(r % q);
                r /= q;
            }
            Poly::from_codes(&codes)
        };
        let code = |f: &Poly| {
            f.coeffs()
                .iter()
                .rev()
                .fold(0u32, |acc, c| acc * q + c.0)
        };
        let elems: Vec<Poly> = (0..size).map(poly).collect();
        let s = size as usize;
        let mut add = vec![0u32; s * s];
        let mut mul = vec![0u32; s * s];
        for a in 0..s {
            for b in a..s {
                let sum = code(&elems[a].add(field, &elems[b]));
                let prod = code(&elems[a].mul(field, &elems[b]).rem(field, modulus));
                add[a * s + b] = sum;
                add[b * s + a] = sum;
                mul[a * s + b] = prod;
                mul[b * s + a] = prod;
            }
        }
        let neg = (0..s).map(|a| code(&elems[a].neg(field))).collect();
        Ok(ResidueRing {
            field: field.clone(),
            modulus: modulus.clone(),
            size,
            add,
            mul,
            neg,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `deg f`, the dimension of the ring over `F_q`.
    pub fn dim(&self) -> u32 {
        self.modulus.deg() as u32
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.size + b) as usize]
    }

    /// The residue of a polynomial.
    pub fn reduce(&self, f: &Poly) -> u32 {
        let q = self.field.q();
        f.rem(&self.field, &self.modulus)
            .coeffs()
            .iter()
            .rev()
            .fold(0u32, |acc, c| acc * q + c.0)
    }

    /// The representative of degree `< deg f`.
    pub fn lift(&self, a: u32) -> Poly {
        let q = self.field.q();
        let mut codes = Vec::new();
        let mut r = a;
        for _ in 0..self.dim() {
            codes.push(r % q);
            r /= q;
        }
        Poly::from_codes(&codes)
    }

    /// Constants embed as the codes `0..q`.
    pub fn constant(&self, c: Fe) -> u32 {
        c.0
    }

    /// `Some(c)` when the residue is a constant.
    pub fn as_constant(&self, a: u32) -> Option<Fe> {
        (a < self.field.q()).then_some(Fe(a))
    }

    pub fn scale(&self, c: Fe, a: u32) -> u32 {
        self.mul(self.constant(c), a)
    }

    /// Residue of `T^i`.
    pub fn t_power(&self, i: u32) -> u32 {
        self.reduce(&Poly::monomial(Fe::ONE, i as usize))
    }

    /// The constant term, i.e. the image in `A/(T)` when `T | f`.
    pub fn at_zero(&self, a: u32) -> Fe {
        Fe(a % self.field.q())
    }
}
