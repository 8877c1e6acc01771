//! Dense polynomial arithmetic over `F_p` on plain residue vectors, used only
//! to bootstrap the tables of extension fields.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &mc) in m.iter().enumerate() {
            let sub = c * mc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn pad(mut a: Vec<u32>, n: usize) -> Vec<u32> {
    a.resize(n, 0);
    a
}

/// Product of two residues modulo `modulus`, as length-`n` digit vectors.
pub(crate) fn elem_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    pad(rem(&mul(a, b, p), modulus, p), n)
}

pub(crate) fn elem_pow(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut result = pad(vec![1], n);
    let mut base = pad(rem(a, modulus, p), n);
    while e > 0 {
        if e & 1 == 1 {
            result = elem_mul(&result, &base, modulus, p);
        }
        base = elem_mul(&base, &base, modulus, p);
        e >>= 1;
    }
    result
}

/// Irreducibility over `F_p` by checking `gcd(f, x^{p^i} - x) = 1` for `i <= deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut xp = rem(&x, f, p);
    for _ in 0..d / 2 {
        xp = trim(elem_pow(&xp, p as u64, f, p));
        let mut diff = pad(xp.clone(), 2.max(xp.len()));
        diff[1] = (diff[1] + p - 1) % p;
        if gcd(f, &trim(diff), p).len() > 1 {
            return false;
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `n` over `F_p`, comparing
/// coefficients from the top degree down.
pub(crate) fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
    let total = (p as u64).pow(n);
    for code in 0..total {
        let mut f = vec![0u32; n as usize + 1];
        f[n as usize] = 1;
        let mut c = code;
        for i in 0..n as usize {
            f[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn reducible_detected() {
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 0, 0, 1], 5));
        assert!(is_irreducible(&[2, 0, 1], 5));
    }
}
