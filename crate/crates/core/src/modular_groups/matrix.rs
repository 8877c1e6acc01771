use std::fmt;

use serde::Serialize;

use super::ring::ResidueRing;
use crate::fq_poly::Fe;

/// A 2x2 matrix over `A/(f)`, entries `[a, b, c, d]` for `((a, b), (c, d))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MatrixModF(pub [u32; 4]);

impl MatrixModF {
    pub const IDENTITY: MatrixModF = MatrixModF([1, 0, 0, 1]);

    /// `u(a) = ((1, a), (0, 1))`.
    pub fn unipotent(a: u32) -> MatrixModF {
        MatrixModF([1, a, 0, 1])
    }

    pub fn lower_unipotent(a: u32) -> MatrixModF {
        MatrixModF([1, 0, a, 1])
    }

    pub fn diagonal(a: u32, d: u32) -> MatrixModF {
        MatrixModF([a, 0, 0, d])
    }

    pub fn mul(self, r: &ResidueRing, o: MatrixModF) -> MatrixModF {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        MatrixModF([
            r.add(r.mul(a, e), r.mul(b, g)),
            r.add(r.mul(a, f), r.mul(b, h)),
            r.add(r.mul(c, e), r.mul(d, g)),
            r.add(r.mul(c, f), r.mul(d, h)),
        ])
    }

    pub fn det(self, r: &ResidueRing) -> u32 {
        let [a, b, c, d] = self.0;
        r.sub(r.mul(a, d), r.mul(b, c))
    }

    /// Inverse for matrices whose determinant is a nonzero constant.
    pub fn inverse(self, r: &ResidueRing) -> Option<MatrixModF> {
        let det = r.as_constant(self.det(r)).filter(|c| !c.is_zero())?;
        let inv = r.constant(r.field().inv(det));
        let [a, b, c, d] = self.0;
        Some(MatrixModF([
            r.mul(inv, d),
            r.mul(inv, r.neg(b)),
            r.mul(inv, r.neg(c)),
            r.mul(inv, a),
        ]))
    }

    /// `g m g^-1`.
    pub fn conjugate_by(self, r: &ResidueRing, g: MatrixModF) -> Option<MatrixModF> {
        Some(g.mul(r, self).mul(r, g.inverse(r)?))
    }

    /// Left action on a column vector.
    pub fn apply(self, r: &ResidueRing, v: (u32, u32)) -> (u32, u32) {
        let [a, b, c, d] = self.0;
        (
            r.add(r.mul(a, v.0), r.mul(b, v.1)),
            r.add(r.mul(c, v.0), r.mul(d, v.1)),
        )
    }

    /// Reduction into `A/(T)`, assuming `T` divides the modulus.
    pub fn at_zero(self, r: &ResidueRing) -> [Fe; 4] {
        self.0.map(|x| r.at_zero(x))
    }
}

impl fmt::Display for MatrixModF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "(({a}, {b}), ({c}, {d}))")
    }
}
