use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::model::CurveModel;
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

/// The numerator `P(T) = a_0 + a_1 T + ... + a_{2g} T^{2g}` of the zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZetaNumerator {
    pub q: u64,
    pub genus: u32,
    pub coeffs: Vec<i64>,
}

/// `P(T)` together with the counts it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub zeta: ZetaNumerator,
    /// `N_1, ..., N_{g+1}`; the last entry is the cross-checked one.
    pub counts: Vec<u64>,
    pub class_number: u64,
}

impl ZetaNumerator {
    /// Builds `P` from `N_1..N_g` using Newton's identities and the functional equation.
    pub fn from_counts(q: u64, genus: u32, counts: &[u64]) -> Result<Self> {
        let g = genus as usize;
        if counts.len() < g {
            return Err(Error::Invalid(format!(
                "need {g} point counts, got {}",
                counts.len()
            )));
        }
        let qi = q as i128;
        let s: Vec<i128> = (1..=g)
            .map(|k| qi.pow(k as u32) + 1 - counts[k - 1] as i128)
            .collect();
        let mut a = vec![0i128; 2 * g + 1];
        a[0] = 1;
        for k in 1..=g {
            let mut acc = s[k - 1];
            for i in 1..k {
                acc += a[i] * s[k - i - 1];
            }
            if acc % k as i128 != 0 {
                return Err(Error::InconsistentCounts(format!(
                    "Newton step {k} is not integral (counts {counts:?})"
                )));
            }
            a[k] = -acc / k as i128;
        }
        for i in 0..g {
            a[2 * g - i] = qi.pow((g - i) as u32) * a[i];
        }
        let coeffs = a
            .into_iter()
            .map(|c| i64::try_from(c).map_err(|_| Error::Internal("zeta coefficient overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZetaNumerator { q, genus, coeffs })
    }

    /// `P(1)`, the order of the degree-zero class group.
    pub fn class_number(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128).sum()
    }

    /// `N_k` predicted by `P`.
    pub fn predicted_count(&self, k: u32) -> i128 {
        let n = 2 * self.genus as usize;
        let a = |i: usize| if i <= n { self.coeffs[i] as i128 } else { 0 };
        let mut s = vec![0i128; k as usize + 1];
        for j in 1..=k as usize {
            let mut acc = -(j as i128) * a(j);
            for i in 1..j {
                acc -= a(i) * s[j - i];
            }
            s[j] = acc;
        }
        (self.q as i128).pow(k) + 1 - s[k as usize]
    }

    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus as usize;
        let q = self.q as i128;
        (0..=2 * g).all(|i| {
            if i <= g {
                self.coeffs[2 * g - i] as i128 == q.pow((g - i) as u32) * self.coeffs[i] as i128
            } else {
                true
            }
        })
    }

    /// Absolute values of the reciprocal roots (roots of `T^{2g} P(1/T)`).
    pub fn reciprocal_root_moduli(&self) -> Vec<f64> {
        let n = 2 * self.genus as usize;
        if n == 0 {
            return Vec::new();
        }
        // Monic polynomial sum_i a_i z^{n-i}; repeated roots are split off
        // exactly first since Durand-Kerner converges poorly on them.
        let full: Vec<i128> = (0..=n).map(|i| self.coeffs[n - i] as i128).collect();
        let mut roots = Vec::new();
        let mut rest = full;
        while rest.len() > 1 {
            let d = int_derivative(&rest);
            let g = int_gcd(&rest, &d);
            let sqfree = int_div_exact(&rest, &g);
            let lead = *sqfree.last().expect("nonconstant") as f64;
            let c: Vec<Complex64> = sqfree
                .iter()
                .map(|&a| Complex64::new(a as f64 / lead, 0.0))
                .collect();
            roots.extend(durand_kerner(&c));
            rest = int_div_exact(&rest, &sqfree);
        }
        let mut moduli: Vec<f64> = roots.iter().map(|r| r.norm()).collect();
        moduli.sort_by(f64::total_cmp);
        moduli
    }

    /// Largest deviation of a reciprocal-root modulus from `sqrt(q)`.
    pub fn riemann_hypothesis_defect(&self) -> f64 {
        let target = (self.q as f64).sqrt();
        self.reciprocal_root_moduli()
            .into_iter()
            .map(|m| (m - target).abs() / target)
            .fold(0.0, f64::max)
    }
}

fn int_trim(mut a: Vec<i128>) -> Vec<i128> {
    while a.len() > 1 && *a.last().expect("nonempty") == 0 {
        a.pop();
    }
    a
}

fn int_derivative(a: &[i128]) -> Vec<i128> {
    int_trim((1..a.len()).map(|i| a[i] * i as i128).collect())
}

fn int_primitive(a: Vec<i128>) -> Vec<i128> {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let c = a.iter().fold(0, |g, &x| gcd(g, x));
    let sign = if a.last().copied().unwrap_or(0) < 0 { -1 } else { 1 };
    if c == 0 {
        return a;
    }
    a.into_iter().map(|x| sign * x / c).collect()
}

/// Pseudo-remainder of `a` by `b`.
fn int_prem(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let lb = *b.last().expect("nonempty");
    while r.len() >= b.len() && !(r.len() == 1 && r[0] == 0) {
        let lr = *r.last().expect("nonempty");
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, &bi) in b.iter().enumerate() {
            r[i + shift] -= lr * bi;
        }
        r.pop();
        r = int_primitive(int_trim(r));
        if r.is_empty() {
            r.push(0);
        }
    }
    r
}

/// Primitive gcd of two integer polynomials.
fn int_gcd(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut a = int_primitive(a.to_vec());
    let mut b = int_primitive(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        if b.len() == 1 {
            return vec![1];
        }
        let r = int_prem(&a, &b);
        a = b;
        b = r;
    }
    int_primitive(a)
}

/// `a / b` for a primitive divisor `b` of `a`.
fn int_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let lb = *b.last().expect("nonempty");
    let mut out = vec![0i128; a.len() + 1 - b.len()];
    for k in (0..out.len()).rev() {
        let c = r[k + b.len() - 1] / lb;
        out[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    out
}

/// Roots of `sum c[i] z^i` with `c` monic of degree `n >= 1`.
fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| seed.powu(i as u32) * radius.sqrt())
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Relative tolerance for `|alpha| = sqrt(q)`.
pub const ROOT_MODULUS_TOLERANCE: f64 = 1e-6;

fn weil_check(model: &CurveModel, k: u32, n: u64) -> Result<()> {
    let qk = checked_pow(model.q(), k) as f64;
    let dev = (n as f64 - (qk + 1.0)).abs();
    let bound = 2.0 * model.genus() as f64 * qk.sqrt();
    if dev > bound + 1e-9 {
        return Err(Error::InconsistentCounts(format!(
            "N_{k} = {n} violates the Weil bound for genus {}",
            model.genus()
        )));
    }
    Ok(())
}

/// Point counts `N_1..N_m`, computed in parallel and returned in order.
pub fn point_counts(model: &CurveModel, m: u32, guard: Guard) -> Result<Vec<u64>> {
    (1..=m)
        .into_par_iter()
        .map(|k| model.count_points(k, guard))
        .collect()
}

/// Zeta numerator from `N_1..N_g` only, without the `N_{g+1}` cross-check.
pub fn zeta_unchecked(model: &CurveModel, guard: Guard) -> Result<ZetaNumerator> {
    let counts = point_counts(model, model.genus(), guard)?;
    ZetaNumerator::from_counts(model.q(), model.genus(), &counts)
}

/// The zeta numerator, cross-checked against a direct count of `N_{g+1}`,
/// the Weil bounds and the reciprocal-root moduli.
pub fn zeta_report(model: &CurveModel, guard: Guard) -> Result<ZetaReport> {
    let g = model.genus();
    let counts = point_counts(model, g + 1, guard)?;
    for (i, &n) in counts.iter().enumerate() {
        weil_check(model, i as u32 + 1, n)?;
    }
    let zeta = ZetaNumerator::from_counts(model.q(), g, &counts)?;
    let predicted = zeta.predicted_count(g + 1);
    if predicted != counts[g as usize] as i128 {
        return Err(Error::InconsistentCounts(format!(
            "P(T) predicts N_{} = {predicted}, counted {}",
            g + 1,
            counts[g as usize]
        )));
    }
    let defect = zeta.riemann_hypothesis_defect();
    if defect > ROOT_MODULUS_TOLERANCE {
        return Err(Error::InconsistentCounts(format!(
            "reciprocal roots deviate from sqrt(q) by {defect:e}"
        )));
    }
    let h = zeta.class_number();
    if h < 1 {
        return Err(Error::InconsistentCounts(format!("P(1) = {h}")));
    }
    Ok(ZetaReport {
        zeta,
        counts,
        class_number: h as u64,
    })
}

pub fn zeta_numerator(model: &CurveModel, guard: Guard) -> Result<ZetaNumerator> {
    Ok(zeta_report(model, guard)?.zeta)
}

pub fn class_number(model: &CurveModel, guard: Guard) -> Result<u64> {
    Ok(zeta_report(model, guard)?.class_number)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_round_trip() {
        // y^2 + y = x^3 over F_2: N_1 = 3, P = 1 + 2T^2.
        let z = ZetaNumerator::from_counts(2, 1, &[3]).unwrap();
        assert_eq!(z.coeffs, vec![1, 0, 2]);
        assert_eq!(z.predicted_count(2), 9);
        assert!(z.functional_equation_holds());
        assert!(z.riemann_hypothesis_defect() < 1e-9);
    }

    #[test]
    fn double_root_moduli() {
        let z = ZetaNumerator {
            q: 4,
            genus: 1,
            coeffs: vec![1, -4, 4],
        };
        assert!(z.riemann_hypothesis_defect() < ROOT_MODULUS_TOLERANCE);
    }

    #[test]
    fn non_integral_counts_rejected() {
        // genus 2 over F_2 with N_1 = 3, N_2 = 4 gives s_1 = 0, s_2 = 1: a_2 = -1/2.
        assert!(matches!(
            ZetaNumerator::from_counts(2, 2, &[3, 4]),
            Err(Error::InconsistentCounts(_))
        ));
    }
}
