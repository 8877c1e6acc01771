use fqrigid::fq_poly::{
    irreducible_count, irreducibles, is_irreducible, prime_power, substitution_automorphism, Fe,
    Field, Ideal, Poly,
};
use fqrigid::Guard;
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 8),
    (3, 1),
    (3, 2),
    (3, 3),
    (5, 1),
    (5, 2),
    (7, 1),
    (7, 2),
    (11, 1),
    (13, 1),
];

fn field_and_elems(k: usize) -> impl Strategy<Value = (Field, Vec<Fe>)> {
    (0..FIELDS.len()).prop_flat_map(move |i| {
        let (p, n) = FIELDS[i];
        let field = Field::new(p, n).unwrap();
        let q = field.q();
        proptest::collection::vec(0..q, k)
            .prop_map(move |v| (field.clone(), v.into_iter().map(Fe).collect()))
    })
}

fn field_and_polys() -> impl Strategy<Value = (Field, Poly, Poly, Poly)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, n) = FIELDS[i];
        let field = Field::new(p, n).unwrap();
        let q = field.q();
        let v = || proptest::collection::vec(0..q, 0..8);
        (v(), v(), v()).prop_map(move |(a, b, c)| {
            (
                field.clone(),
                Poly::from_codes(&a),
                Poly::from_codes(&b),
                Poly::from_codes(&c),
            )
        })
    })
}

/// Schoolbook arithmetic on coordinate vectors modulo the field modulus,
/// independent of the log tables.
fn naive_mul(field: &Field, a: Fe, b: Fe) -> Fe {
    let p = field.p();
    let n = field.n() as usize;
    let m = field.modulus();
    let da = field.digits(a);
    let db = field.digits(b);
    let mut prod = vec![0u32; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (n..2 * n).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..=n {
            let idx = k - n + i;
            prod[idx] = (prod[idx] + p * p - c * m[i] % p) % p;
        }
    }
    field.from_digits(&prod[..n])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((field, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(field.add(field.add(a, b), c), field.add(a, field.add(b, c)));
        prop_assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
        prop_assert_eq!(
            field.mul(a, field.add(b, c)),
            field.add(field.mul(a, b), field.mul(a, c))
        );
        prop_assert_eq!(field.add(a, field.neg(a)), Fe::ZERO);
        prop_assert_eq!(field.sub(field.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(field.mul(a, field.inv(a)), Fe::ONE);
            prop_assert_eq!(field.div(field.mul(a, b), a), b);
        }
        prop_assert_eq!(field.mul(a, b), naive_mul(&field, a, b));
        let fa = field.frobenius(a);
        prop_assert_eq!(field.frobenius(field.add(a, b)), field.add(fa, field.frobenius(b)));
    }

    #[test]
    fn division_reconstructs((field, a, b, _c) in field_and_polys()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&field, &b);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
        prop_assert_eq!(q.mul(&field, &b).add(&field, &r), a);
    }

    #[test]
    fn product_degrees((field, a, b, _c) in field_and_polys()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(a.mul(&field, &b).deg(), a.deg() + b.deg());
    }

    #[test]
    fn substitution_is_ring_automorphism((field, a, b, _c) in field_and_polys(), k in 0u32..1000) {
        let alpha = Fe(k % field.q());
        let s = |f: &Poly| substitution_automorphism(&field, alpha, f).unwrap();
        prop_assert_eq!(s(&a.mul(&field, &b)), s(&a).mul(&field, &s(&b)));
        prop_assert_eq!(s(&a.add(&field, &b)), s(&a).add(&field, &s(&b)));
        let back = substitution_automorphism(&field, field.neg(alpha), &s(&a)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ideal_laws((field, a, b, c) in field_and_polys()) {
        let (ia, ib) = (Ideal::new(&field, &a), Ideal::new(&field, &b));
        let sum = ia.sum(&field, &ib);
        let meet = ia.intersection(&field, &ib);
        prop_assert!(ia.is_contained_in(&field, &sum));
        prop_assert!(meet.is_contained_in(&field, &ia));
        prop_assert!(meet.is_contained_in(&field, &ib));
        prop_assert!(ia.product(&field, &ib).is_contained_in(&field, &meet));
        let ac = a.mul(&field, &c);
        prop_assert!(ia.contains(&field, &ac));
    }
}

#[test]
fn field_examples() {
    let f2 = Field::new(2, 1).unwrap();
    assert_eq!(f2.q(), 2);
    assert_eq!(f2.modulus(), &[0, 1]);
    let f4 = Field::new(2, 2).unwrap();
    assert_eq!(f4.modulus(), &[1, 1, 1]);
    let f9 = Field::new(3, 2).unwrap();
    assert!(f9.elements().all(|a| f9.pow(a, 9) == a));
    assert!(Field::new(4, 1).is_err());
    assert!(Field::of_order(6, Guard::default()).is_err());
}

/// Naive irreducibility: no monic factor of degree <= d/2, by trial division.
fn naive_irreducible(field: &Field, f: &Poly) -> bool {
    let d = f.deg();
    let q = field.q() as u64;
    for e in 1..=d / 2 {
        for code in 0..q.pow(e as u32) {
            let mut c: Vec<u32> = (0..e).map(|i| ((code / q.pow(i as u32)) % q) as u32).collect();
            c.push(1);
            if Poly::from_codes(&c).divides(field, f) {
                return false;
            }
        }
    }
    d > 0
}

#[test]
fn irreducible_examples() {
    let g = Guard::default();
    let f2 = Field::new(2, 1).unwrap();
    assert_eq!(
        irreducibles(&f2, 1, g).unwrap(),
        vec![Poly::from_codes(&[0, 1]), Poly::from_codes(&[1, 1])]
    );
    assert_eq!(irreducibles(&f2, 2, g).unwrap(), vec![Poly::from_codes(&[1, 1, 1])]);
    let f3 = Field::new(3, 1).unwrap();
    let list = irreducibles(&f3, 2, g).unwrap();
    assert_eq!(list.len(), 3);
    for f in &list {
        assert!(f3.elements().all(|a| !f.eval(&f3, a).is_zero()));
    }
}

#[test]
fn irreducible_lists_match_trial_division() {
    let g = Guard::default();
    for &(p, n, d) in &[(2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2), (3, 2, 2)] {
        let field = Field::new(p, n).unwrap();
        let list = irreducibles(&field, d, g).unwrap();
        let q = field.q() as u64;
        let mut brute = Vec::new();
        for code in 0..q.pow(d) {
            let mut c: Vec<u32> = (0..d).map(|i| ((code / q.pow(i)) % q) as u32).collect();
            c.push(1);
            let f = Poly::from_codes(&c);
            if naive_irreducible(&field, &f) {
                brute.push(f);
            }
        }
        brute.sort();
        assert_eq!(list, brute, "F_{q}, degree {d}");
        assert!(list.iter().all(|f| is_irreducible(&field, f)));
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    let g = Guard::default();
    let mut checked = 0;
    for q in 2u64..=1000 {
        if prime_power(q).is_none() {
            continue;
        }
        let field = Field::of_order(q, g).unwrap();
        let mut d = 1;
        while (q as u128).pow(d) <= 1_000_000 {
            let list = irreducibles(&field, d, g).unwrap();
            assert_eq!(list.len() as u128, irreducible_count(q, d), "q={q} d={d}");
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            checked += 1;
            d += 1;
        }
    }
    assert!(checked > 200);
}

#[test]
fn translations_act_transitively_on_linear_primes() {
    let f5 = Field::new(5, 1).unwrap();
    let t = Poly::x();
    let mut orbit: Vec<Poly> = f5
        .elements()
        .map(|a| substitution_automorphism(&f5, a, &t).unwrap())
        .collect();
    orbit.sort();
    orbit.dedup();
    assert_eq!(orbit.len(), 5);
    for beta in f5.elements() {
        let prime = Poly::linear_root(&f5, beta);
        for alpha in f5.elements() {
            let image = substitution_automorphism(&f5, alpha, &prime).unwrap();
            assert_eq!(image, Poly::linear_root(&f5, f5.sub(beta, alpha)));
        }
    }
}

#[test]
fn ideal_examples() {
    let f2 = Field::new(2, 1).unwrap();
    let t = Ideal::new(&f2, &Poly::x());
    let t1 = Ideal::new(&f2, &Poly::from_codes(&[1, 1]));
    assert!(t.sum(&f2, &t1).is_unit());
    let t2 = Ideal::new(&f2, &Poly::from_codes(&[0, 0, 1]));
    assert_eq!(t2.intersection(&f2, &t), t2);
    let a = Ideal::new(&f2, &Poly::from_codes(&[0, 1, 1]));
    assert_eq!(a.sum(&f2, &t2), t);
}

#[test]
fn guard_is_enforced() {
    let f2 = Field::new(2, 1).unwrap();
    assert!(irreducibles(&f2, 12, Guard::new(1000)).is_err());
    assert!(substitution_automorphism(&f2, Fe(3), &Poly::x()).is_err());
}
