use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use super::primefield;
use crate::guard::checked_pow;
use crate::{Error, Guard, Result};

/// An element of a finite field `F_{p^n}`, stored as its power-basis code.
///
/// The element `c_0 + c_1 a + ... + c_{n-1} a^{n-1}` (with `a` a root of the
/// field modulus and `0 <= c_i < p`) has code `c_0 + c_1 p + ... `. Integer
/// order on codes is the canonical element order used for every sorted output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) const NO_LOG: u32 = u32::MAX;

struct FieldData {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[i] = log(1 + g^i)`, or `NO_LOG` when `1 + g^i = 0`.
    zech: Vec<u32>,
    trace_zero: OnceLock<Vec<bool>>,
}

/// The finite field `F_q`, `q = p^n`, defined by the least monic irreducible
/// polynomial of degree `n` over `F_p`.
///
/// Handles are cheap to clone. Fields up to [`PINNED_FIELD_SIZE`] elements are
/// built once per `(p, n)` and kept; larger ones are shared while in use.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.n == other.0.n
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^n`; `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut n = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        n += 1;
    }
    Some((p as u32, n))
}

/// Fields and embeddings at most this large stay cached for the process lifetime.
pub const PINNED_FIELD_SIZE: u32 = 1 << 16;

enum Cached<T> {
    Pinned(Arc<T>),
    Shared(Weak<T>),
}

impl<T> Cached<T> {
    fn new(value: &Arc<T>, pinned: bool) -> Self {
        if pinned {
            Cached::Pinned(value.clone())
        } else {
            Cached::Shared(Arc::downgrade(value))
        }
    }

    fn get(&self) -> Option<Arc<T>> {
        match self {
            Cached::Pinned(a) => Some(a.clone()),
            Cached::Shared(w) => w.upgrade(),
        }
    }
}

type FieldCache = Mutex<HashMap<(u32, u32), Cached<FieldData>>>;

fn field_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    pub fn new(p: u32, n: u32) -> Result<Field> {
        Self::with_guard(p, n, Guard::default())
    }

    pub fn with_guard(p: u32, n: u32, guard: Guard) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::Invalid("field degree must be positive".into()));
        }
        let size = checked_pow(p as u64, n);
        guard.check(format!("field F_{p}^{n}"), size)?;
        if size >= u32::MAX as u128 / 2 {
            return Err(Error::Invalid(format!("field F_{p}^{n} is too large")));
        }
        let mut cache = field_cache().lock().expect("field cache poisoned");
        if let Some(data) = cache.get(&(p, n)).and_then(Cached::get) {
            return Ok(Field(data));
        }
        let data = Arc::new(build(p, n));
        cache.insert((p, n), Cached::new(&data, data.q <= PINNED_FIELD_SIZE));
        Ok(Field(data))
    }

    /// The field with `q` elements.
    pub fn of_order(q: u64, guard: Guard) -> Result<Field> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_guard(p, n, guard)
    }

    /// `F_{q^k}` together with the canonical embedding of `self` into it.
    pub fn extension(&self, k: u32, guard: Guard) -> Result<(Field, Arc<Embedding>)> {
        if k == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let big = Field::with_guard(self.p(), self.n() * k, guard)?;
        let emb = Embedding::between(self, &big)?;
        Ok((big, emb))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the defining polynomial over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(Fe)
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive_element(&self) -> Fe {
        Fe(self.0.exp[1 % self.0.exp.len()])
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut c = a.0;
        (0..self.0.n)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        let p = self.0.p;
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * p + d % p;
        }
        Fe(code)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let d = &*self.0;
        if d.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if d.n == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= d.p { s - d.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let qm1 = d.q - 1;
        let diff = if lb >= la { lb - la } else { lb + qm1 - la };
        let z = d.zech[diff as usize];
        if z == NO_LOG {
            Fe(0)
        } else {
            Fe(d.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let d = &*self.0;
        if a.0 == 0 || d.p == 2 {
            return a;
        }
        if d.n == 1 {
            return Fe(d.p - a.0);
        }
        Fe(d.exp[(d.log[a.0 as usize] + (d.q - 1) / 2) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let d = &*self.0;
        Fe(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a.0 != 0, "inverse of zero");
        let d = &*self.0;
        let qm1 = d.q - 1;
        Fe(d.exp[((qm1 - d.log[a.0 as usize]) % qm1) as usize])
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let d = &*self.0;
        let qm1 = (d.q - 1) as u64;
        let l = (d.log[a.0 as usize] as u64 * (e % qm1)) % qm1;
        Fe(d.exp[l as usize])
    }

    /// `a -> a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as u64)
    }

    pub fn log(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.0.log[a.0 as usize])
        }
    }

    pub fn exp(&self, i: u64) -> Fe {
        let qm1 = (self.0.q - 1) as u64;
        Fe(self.0.exp[(i % qm1) as usize])
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.0 == 0 || self.0.p == 2 {
            return true;
        }
        self.0.log[a.0 as usize].is_multiple_of(2)
    }

    /// Quadratic character: 0, 1 or -1. Only meaningful for odd `q`.
    pub fn quadratic_character(&self, a: Fe) -> i32 {
        if a.0 == 0 {
            0
        } else if self.0.log[a.0 as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// A square root when one exists in this field (the one with the smaller
    /// log for odd `q`).
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return Some(a);
        }
        if self.0.p == 2 {
            return Some(self.pow(a, (self.0.q / 2) as u64));
        }
        let l = self.0.log[a.0 as usize];
        if l % 2 == 1 {
            return None;
        }
        Some(Fe(self.0.exp[(l / 2) as usize]))
    }

    /// Absolute trace to `F_p`, returned as an element of the prime field.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.0.n {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// Whether the absolute trace of `a` vanishes, i.e. whether
    /// `y^p - y = a` is solvable in this field.
    pub fn trace_is_zero(&self, a: Fe) -> bool {
        let table = self.0.trace_zero.get_or_init(|| {
            (0..self.0.q).map(|c| self.trace(Fe(c)).is_zero()).collect()
        });
        table[a.0 as usize]
    }

    /// Whether `a` lies in the subfield with `p^m` elements.
    pub fn in_subfield(&self, a: Fe, m: u32) -> bool {
        self.pow(a, (self.0.p as u64).pow(m)) == a
    }

    /// Evaluates `sum coeffs[i] x^i` with Horner's rule.
    pub fn horner(&self, coeffs: &[Fe], x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }
}

fn build(p: u32, n: u32) -> FieldData {
    let q = p.pow(n);
    let modulus = if n == 1 {
        vec![0, 1]
    } else {
        primefield::least_irreducible(p, n)
    };
    let qm1 = q - 1;
    let to_digits = |mut c: u32| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    };
    let to_code = |digits: &[u32]| -> u32 {
        let mut code = 0;
        for &d in digits.iter().rev() {
            code = code * p + d;
        }
        code
    };

    let g_digits = if q == 2 {
        vec![1]
    } else {
        let factors = prime_factors(qm1 as u64);
        // Degree-one candidates first keep the table construction linear in n.
        let candidates = (p..q.min(2 * p)).chain(2..q);
        let mut found = None;
        for c in candidates {
            let d = to_digits(c);
            let primitive = factors.iter().all(|&r| {
                let v = primefield::elem_pow(&d, qm1 as u64 / r, &modulus, p);
                !(v[0] == 1 && v[1..].iter().all(|&x| x == 0))
            });
            if primitive {
                found = Some(d);
                break;
            }
        }
        found.expect("multiplicative group of a finite field is cyclic")
    };

    let mut exp = vec![0u32; 2 * qm1 as usize];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = vec![0u32; n as usize];
    cur[0] = 1;
    for i in 0..qm1 {
        let code = to_code(&cur);
        exp[i as usize] = code;
        log[code as usize] = i;
        cur = primefield::elem_mul(&cur, &g_digits, &modulus, p);
    }
    for i in 0..qm1 as usize {
        exp[i + qm1 as usize] = exp[i];
    }
    let mut zech = vec![NO_LOG; qm1 as usize];
    for i in 0..qm1 as usize {
        let c = exp[i];
        let d0 = c % p;
        let shifted = c - d0 + (d0 + 1) % p;
        zech[i] = if shifted == 0 {
            NO_LOG
        } else {
            log[shifted as usize]
        };
    }
    FieldData {
        p,
        n,
        q,
        modulus,
        exp,
        log,
        zech,
        trace_zero: OnceLock::new(),
    }
}

/// The embedding `F_{p^a} -> F_{p^b}` (`a | b`) sending the generator of the
/// small field to the least root of its modulus in the large one.
pub struct Embedding {
    small: Field,
    big: Field,
    image: Vec<Fe>,
    preimage: HashMap<u32, u32>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.small, self.big)
    }
}

type EmbeddingCache = Mutex<HashMap<(u32, u32, u32), Cached<Embedding>>>;

fn embedding_cache() -> &'static EmbeddingCache {
    static CACHE: OnceLock<EmbeddingCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn between(small: &Field, big: &Field) -> Result<Arc<Embedding>> {
        if small.p() != big.p() || !big.n().is_multiple_of(small.n()) {
            return Err(Error::Invalid(format!(
                "no embedding of {small:?} into {big:?}"
            )));
        }
        let key = (small.p(), small.n(), big.n());
        let cached = embedding_cache()
            .lock()
            .expect("cache poisoned")
            .get(&key)
            .and_then(Cached::get);
        if let Some(e) = cached {
            return Ok(e);
        }
        let emb = Arc::new(Self::build(small, big));
        embedding_cache()
            .lock()
            .expect("cache poisoned")
            .insert(key, Cached::new(&emb, big.q() <= PINNED_FIELD_SIZE));
        Ok(emb)
    }

    fn build(small: &Field, big: &Field) -> Embedding {
        let qs = small.q() as u64;
        let step = (big.q() as u64 - 1) / (qs - 1);
        // Roots of the small modulus live in the subgroup of order qs - 1.
        let modulus: Vec<Fe> = small.modulus().iter().map(|&c| Fe(c)).collect();
        let root = (0..qs - 1)
            .map(|k| big.exp(k * step))
            .filter(|&b| big.horner(&modulus, b).is_zero())
            .min()
            .unwrap_or(Fe::ZERO);
        let mut image = Vec::with_capacity(small.q() as usize);
        let mut preimage = HashMap::with_capacity(small.q() as usize);
        for a in small.elements() {
            let digits: Vec<Fe> = small.digits(a).into_iter().map(Fe).collect();
            let b = big.horner(&digits, root);
            image.push(b);
            preimage.insert(b.0, a.0);
        }
        Embedding {
            small: small.clone(),
            big: big.clone(),
            image,
            preimage,
        }
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn degree(&self) -> u32 {
        self.big.n() / self.small.n()
    }

    pub fn map(&self, a: Fe) -> Fe {
        self.image[a.0 as usize]
    }

    pub fn preimage(&self, b: Fe) -> Option<Fe> {
        self.preimage.get(&b.0).map(|&c| Fe(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_moduli() {
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn f9_elements_are_frobenius_fixed() {
        let k = Field::new(3, 2).unwrap();
        for a in k.elements() {
            assert_eq!(k.pow(a, 9), a);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Field::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(
            Field::with_guard(2, 10, Guard::new(1000)),
            Err(Error::GuardExceeded { .. })
        ));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(9), Some((3, 2)));
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for (p, a, b) in [(2, 1, 4), (2, 2, 4), (3, 1, 2), (3, 2, 4), (5, 1, 3)] {
            let small = Field::new(p, a).unwrap();
            let big = Field::new(p, b).unwrap();
            let e = Embedding::between(&small, &big).unwrap();
            for x in small.elements() {
                for y in small.elements() {
                    assert_eq!(e.map(small.add(x, y)), big.add(e.map(x), e.map(y)));
                    assert_eq!(e.map(small.mul(x, y)), big.mul(e.map(x), e.map(y)));
                }
                assert_eq!(e.preimage(e.map(x)), Some(x));
            }
        }
    }

    #[test]
    fn trace_zero_matches_artin_schreier_solvability() {
        let k = Field::new(2, 3).unwrap();
        for a in k.elements() {
            let solvable = k.elements().any(|y| k.sub(k.frobenius(y), y) == a);
            assert_eq!(k.trace_is_zero(a), solvable);
        }
    }
}
