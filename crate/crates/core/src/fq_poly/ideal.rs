use std::fmt;

use super::field::Field;
use super::poly::Poly;

/// An ideal of `F_q[T]`: zero, or generated by a unique monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    Zero,
    Principal(Poly),
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Zero => write!(f, "(0)"),
            Ideal::Principal(g) => write!(f, "({g})"),
        }
    }
}

impl Ideal {
    /// The ideal generated by `g`, normalized to its monic generator.
    pub fn new(field: &Field, g: &Poly) -> Ideal {
        if g.is_zero() {
            Ideal::Zero
        } else {
            Ideal::Principal(g.monic(field))
        }
    }

    pub fn unit() -> Ideal {
        Ideal::Principal(Poly::one())
    }

    pub fn generator(&self) -> Poly {
        match self {
            Ideal::Zero => Poly::zero(),
            Ideal::Principal(g) => g.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Ideal::Principal(g) if g.is_one())
    }

    pub fn sum(&self, field: &Field, other: &Ideal) -> Ideal {
        Ideal::new(field, &self.generator().gcd(field, &other.generator()))
    }

    pub fn product(&self, field: &Field, other: &Ideal) -> Ideal {
        Ideal::new(field, &self.generator().mul(field, &other.generator()))
    }

    pub fn intersection(&self, field: &Field, other: &Ideal) -> Ideal {
        Ideal::new(field, &self.generator().lcm(field, &other.generator()))
    }

    /// `self ⊆ other`, i.e. the generator of `other` divides that of `self`.
    pub fn is_contained_in(&self, field: &Field, other: &Ideal) -> bool {
        other.generator().divides(field, &self.generator())
    }

    pub fn contains(&self, field: &Field, a: &Poly) -> bool {
        self.generator().divides(field, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k = Field::new(2, 1).unwrap();
        let t = Ideal::new(&k, &Poly::x());
        let t1 = Ideal::new(&k, &Poly::from_codes(&[1, 1]));
        assert!(t.sum(&k, &t1).is_unit());
        let t2 = Ideal::new(&k, &Poly::from_codes(&[0, 0, 1]));
        assert_eq!(t2.intersection(&k, &t), t2);
        let a = Ideal::new(&k, &Poly::from_codes(&[0, 1, 1]));
        assert_eq!(a.sum(&k, &t2), t);
        assert!(t2.is_contained_in(&k, &t));
        assert!(!t.is_contained_in(&k, &t2));
        assert!(Ideal::Zero.is_contained_in(&k, &t));
    }
}
