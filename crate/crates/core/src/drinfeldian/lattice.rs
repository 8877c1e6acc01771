/// A sublattice of `Z^n` kept in Hermite normal form, one row per pivot column.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    rows: Vec<Option<Vec<i128>>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a * s, s, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

impl Lattice {
    pub fn new(n: usize) -> Lattice {
        Lattice {
            n,
            rows: vec![None; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn insert(&mut self, v: &[i128]) {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let mut r = v.to_vec();
        for col in 0..self.n {
            if r[col] == 0 {
                continue;
            }
            match self.rows[col].take() {
                None => {
                    if r[col] < 0 {
                        r.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[col] = Some(r);
                    self.reduce();
                    return;
                }
                Some(b) => {
                    let (g, s, t) = ext_gcd(b[col], r[col]);
                    let (bc, rc) = (b[col] / g, r[col] / g);
                    let new_row: Vec<i128> = (0..self.n).map(|i| s * b[i] + t * r[i]).collect();
                    let rest: Vec<i128> = (0..self.n).map(|i| bc * r[i] - rc * b[i]).collect();
                    self.rows[col] = Some(new_row);
                    r = rest;
                }
            }
        }
        self.reduce();
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    fn reduce(&mut self) {
        for j in 0..self.n {
            let Some(pj) = self.rows[j].clone() else {
                continue;
            };
            let piv = pj[j];
            for i in 0..j {
                if let Some(ri) = self.rows[i].as_mut() {
                    let f = ri[j].div_euclid(piv);
                    if f != 0 {
                        for k in j..self.n {
                            ri[k] -= f * pj[k];
                        }
                    }
                }
            }
        }
    }

    /// Order of `Z^n / L`, or `None` if the quotient is infinite.
    pub fn index(&self) -> Option<u128> {
        let mut prod: u128 = 1;
        for (i, r) in self.rows.iter().enumerate() {
            prod = prod.checked_mul(r.as_ref()?[i] as u128)?;
        }
        Some(prod)
    }

    /// Diagonal of the Hermite form (0 for missing pivots).
    pub fn diagonal(&self) -> Vec<i128> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.as_ref().map_or(0, |r| r[i]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_of_simple_lattices() {
        let mut l = Lattice::new(2);
        l.insert(&[4, 6]);
        l.insert(&[6, 4]);
        // det [[4,6],[6,4]] = -20
        assert_eq!(l.index(), Some(20));
        let mut m = Lattice::new(3);
        m.insert(&[1, -1, 0]);
        m.insert(&[0, 1, -1]);
        assert_eq!(m.index(), None);
        m.insert(&[0, 0, 2]);
        assert_eq!(m.index(), Some(2));
    }
}
