use crate::fq_poly::{Fe, Field, Poly};
use crate::function_fields::AffinePresentation;
use crate::{Error, Result};

/// Truncated power series `sum c_i t^i`, `i < prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Series(pub Vec<Fe>);

impl Series {
    pub fn constant(a: Fe, prec: usize) -> Series {
        let mut c = vec![Fe::ZERO; prec];
        c[0] = a;
        Series(c)
    }

    pub fn add(&self, field: &Field, other: &Series) -> Series {
        Series(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        )
    }

    pub fn mul(&self, field: &Field, other: &Series) -> Series {
        let n = self.0.len();
        let mut out = vec![Fe::ZERO; n];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0[..n - i].iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Series(out)
    }

    pub fn scale(&self, field: &Field, a: Fe) -> Series {
        Series(self.0.iter().map(|&x| field.mul(x, a)).collect())
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    fn poly_at(field: &Field, f: &Poly, x: &Series) -> Series {
        let prec = x.0.len();
        let mut acc = Series::constant(Fe::ZERO, prec);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(field, x);
            acc.0[0] = field.add(acc.0[0], c);
        }
        acc
    }
}

/// Evaluates `E(x, y) = sum_j rows[j](x) y^j` on series.
fn eval_equation(field: &Field, rows: &[Poly], x: &Series, y: &Series) -> Series {
    let prec = x.0.len();
    let mut acc = Series::constant(Fe::ZERO, prec);
    for row in rows.iter().rev() {
        acc = acc.mul(field, y).add(field, &Series::poly_at(field, row, x));
    }
    acc
}

/// Local parametrization `(x(t), y(t))` of a smooth affine point, `t` a
/// uniformizer, to precision `prec`.
pub(crate) fn local_parametrization(
    field: &Field,
    rows: &[Poly],
    a: Fe,
    b: Fe,
    prec: usize,
) -> Result<(Series, Series)> {
    let ey = rows
        .iter()
        .enumerate()
        .skip(1)
        .fold(Fe::ZERO, |acc, (j, r)| {
            let term = field.mul(
                field.mul(field.from_i64(j as i64), r.eval(field, a)),
                field.pow(b, j as u64 - 1),
            );
            field.add(acc, term)
        });
    let ex = rows.iter().enumerate().fold(Fe::ZERO, |acc, (j, r)| {
        let term = field.mul(r.derivative(field).eval(field, a), field.pow(b, j as u64));
        field.add(acc, term)
    });
    let mut t = Series::constant(Fe::ZERO, prec);
    if prec > 1 {
        t.0[1] = Fe::ONE;
    }
    let (solve_y, slope) = if !ey.is_zero() {
        (true, ey)
    } else if !ex.is_zero() {
        (false, ex)
    } else {
        return Err(Error::Singular(format!("affine point ({}, {})", a.0, b.0)));
    };
    let mut fixed = t.clone();
    fixed.0[0] = if solve_y { a } else { b };
    let mut moving = Series::constant(if solve_y { b } else { a }, prec);
    let inv = field.inv(slope);
    for k in 1..prec {
        let value = if solve_y {
            eval_equation(field, rows, &fixed, &moving)
        } else {
            eval_equation(field, rows, &moving, &fixed)
        };
        moving.0[k] = field.neg(field.mul(value.0[k], inv));
    }
    let check = if solve_y {
        eval_equation(field, rows, &fixed, &moving)
    } else {
        eval_equation(field, rows, &moving, &fixed)
    };
    if check.order().is_some() {
        return Err(Error::Internal("local parametrization did not converge".into()));
    }
    Ok(if solve_y { (fixed, moving) } else { (moving, fixed) })
}

/// Series of every basis monomial `x^i y^j` at a point.
pub(crate) fn monomial_series(
    field: &Field,
    pres: &AffinePresentation,
    rows_big: &[Poly],
    a: Fe,
    b: Fe,
    monomials: &[(u64, u64)],
    prec: usize,
) -> Result<Vec<Series>> {
    let (x, y) = if pres.rows.is_empty() {
        let mut x = Series::constant(a, prec);
        if prec > 1 {
            x.0[1] = Fe::ONE;
        }
        (x, Series::constant(Fe::ONE, prec))
    } else {
        local_parametrization(field, rows_big, a, b, prec)?
    };
    let max_i = monomials.iter().map(|m| m.0).max().unwrap_or(0) as usize;
    let max_j = monomials.iter().map(|m| m.1).max().unwrap_or(0) as usize;
    let mut xp = vec![Series::constant(Fe::ONE, prec)];
    for _ in 0..max_i {
        let next = xp.last().expect("nonempty").mul(field, &x);
        xp.push(next);
    }
    let mut yp = vec![Series::constant(Fe::ONE, prec)];
    for _ in 0..max_j {
        let next = yp.last().expect("nonempty").mul(field, &y);
        yp.push(next);
    }
    Ok(monomials
        .iter()
        .map(|&(i, j)| xp[i as usize].mul(field, &yp[j as usize]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parametrizes_artin_schreier_point() {
        // y^2 + y = x^3 over F_2 at (0, 0): y = x^3 + x^6 + ...
        let k = Field::new(2, 1).unwrap();
        let rows = vec![
            Poly::from_codes(&[0, 0, 0, 1]),
            Poly::from_codes(&[1]),
            Poly::from_codes(&[1]),
        ];
        let (x, y) = local_parametrization(&k, &rows, Fe(0), Fe(0), 8).unwrap();
        assert_eq!(x.order(), Some(1));
        assert_eq!(y.order(), Some(3));
        assert_eq!(eval_equation(&k, &rows, &x, &y).order(), None);
    }

    #[test]
    fn switches_parameter_at_ramified_point() {
        // y^2 = x^3 - x over F_3 at (0, 0): E_y vanishes, so t = y.
        let k = Field::new(3, 1).unwrap();
        let rows = vec![
            Poly::from_codes(&[0, 1, 0, 2]),
            Poly::zero(),
            Poly::one(),
        ];
        let (x, y) = local_parametrization(&k, &rows, Fe(0), Fe(0), 6).unwrap();
        assert_eq!(y.order(), Some(1));
        assert_eq!(x.order(), Some(2));
    }
}
