use fqrigid::fq_poly::{Field, Poly};
use fqrigid::modular_groups::{
    ambient_image, closure, parse_frame, span_one_frame, MatrixModF, SubgroupFrame,
};
use fqrigid::Guard;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn guard() -> Guard {
    Guard::default()
}

fn t() -> Poly {
    Poly::x()
}

fn t2() -> Poly {
    Poly::from_codes(&[0, 0, 1])
}

fn field(q: u64) -> Field {
    Field::of_order(q, guard()).unwrap()
}

fn p(codes: &[u32]) -> Poly {
    Poly::from_codes(codes)
}

/// `|{ M in GL2(R) : det M in F_q^* }|` by brute force over all 2x2 matrices,
/// with units detected by gcd with the modulus.
fn brute_ambient_order(q: u64, f: &Poly) -> usize {
    let k = field(q);
    let n = f.deg() as u32;
    let size = q.pow(n);
    let elem = |c: u64| {
        let digits: Vec<u32> = (0..n).map(|i| ((c / q.pow(i)) % q) as u32).collect();
        Poly::from_codes(&digits)
    };
    let elems: Vec<Poly> = (0..size).map(elem).collect();
    let mut count = 0;
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    let det = a.mul(&k, d).sub(&k, &b.mul(&k, c)).rem(&k, f);
                    if det.deg() == 0 && !det.is_zero() {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn ambient_orders() {
    assert_eq!(ambient_image(&field(2), &t(), guard()).unwrap().order(), 6);
    assert_eq!(ambient_image(&field(3), &t(), guard()).unwrap().order(), 48);
    // GL2(F_2[T]/T^2) has order 96; requiring det in F_2^* = {1} halves it.
    let g = ambient_image(&field(2), &t2(), guard()).unwrap();
    assert_eq!(g.order(), 48);
    for (q, f) in [(2, t2()), (3, t2()), (4, t()), (2, p(&[1, 1, 1])), (2, p(&[0, 1, 1]))] {
        let g = ambient_image(&field(q), &f, guard()).unwrap();
        assert_eq!(g.order(), brute_ambient_order(q, &f), "q={q} f={f}");
    }
}

#[test]
fn ambient_generators_generate() {
    for (q, f) in [(2, t()), (3, t()), (4, t()), (2, t2()), (3, t2()), (2, p(&[1, 1, 1]))] {
        let g = ambient_image(&field(q), &f, guard()).unwrap();
        let h = closure(g.ring(), g.generators());
        assert_eq!(h.len(), g.order(), "q={q} f={f}");
        assert!(h.iter().all(|&m| g.contains(m)));
    }
}

#[test]
fn gamma_t_facts() {
    for q in [2u64, 3, 4, 5] {
        let frame = SubgroupFrame::gamma_t(&field(q), guard()).unwrap();
        let ql = frame.quasi_level().unwrap();
        assert!(ql.basis.is_empty());
        assert_eq!(frame.level().unwrap(), t());
        assert!(frame.is_modular_frame().unwrap());
        assert!(frame.is_classically_modular_frame().unwrap());
    }
}

#[test]
fn cusps_of_gamma_t() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let frame = SubgroupFrame::gamma_t(&field(q), guard()).unwrap();
        assert_eq!(frame.cusp_count().unwrap(), q + 1, "q={q}");
    }
}

#[test]
fn full_frames() {
    for (q, f) in [(2, t()), (3, t()), (2, t2()), (2, p(&[1, 1])), (3, p(&[1, 0, 1]))] {
        let frame = SubgroupFrame::full(&field(q), &f, guard()).unwrap();
        assert_eq!(frame.order(), frame.ambient().order());
        let ql = frame.quasi_level().unwrap();
        assert_eq!(ql.dim(), f.deg());
        assert_eq!(frame.level().unwrap(), Poly::one());
        assert!(!frame.is_modular_frame().unwrap());
        assert!(!frame.is_classically_modular_frame().unwrap());
        assert_eq!(frame.cusp_count().unwrap(), 1);
    }
    let full = SubgroupFrame::full(&field(2), &t(), guard()).unwrap();
    assert_eq!(full.quasi_level().unwrap().basis, vec![Poly::one()]);
}

#[test]
fn frames_prime_to_t_are_not_modular() {
    for f in [p(&[1, 1]), p(&[1, 1, 1])] {
        let frame = SubgroupFrame::principal_congruence(&field(2), &f, guard()).unwrap();
        let verdict = frame.modularity().unwrap();
        assert!(!verdict.modular);
        assert!(verdict.reason.contains("prime to T"));
        assert_eq!(frame.level().unwrap(), f);
    }
}

#[test]
fn principal_congruence_frames_are_classical() {
    for (q, f) in [(2, t2()), (3, t2()), (2, p(&[0, 1, 1])), (2, p(&[0, 0, 0, 1]))] {
        let frame = SubgroupFrame::principal_congruence(&field(q), &f, guard()).unwrap();
        let ql = frame.quasi_level().unwrap();
        assert_eq!(ql.dim(), 0);
        assert_eq!(frame.level().unwrap(), f);
        assert!(frame.is_classically_modular_frame().unwrap());
        assert!(frame.contains_level_kernel().unwrap());
    }
}

#[test]
fn span_one_quasi_level() {
    let frame = span_one_frame(guard()).unwrap().expect("a span{1} frame exists");
    let ql = frame.quasi_level().unwrap();
    assert_eq!(ql.basis, vec![Poly::one()]);
    // span{1} = {0, 1} is not closed under multiplication by T.
    assert!(!ql.contains_residue(2));
    assert_eq!(frame.level().unwrap(), t2());
    // u(1) lies in the core, so the frame is not inside Gamma_T.
    assert!(!frame.is_modular_frame().unwrap());
    assert!(!frame.is_classically_modular_frame().unwrap());
    assert!(frame.contains_level_kernel().unwrap());
}

fn random_frames(rng: &mut ChaCha8Rng) -> Vec<SubgroupFrame> {
    let mut out = Vec::new();
    for (q, f) in [(2, t2()), (3, t()), (2, p(&[0, 1, 1])), (3, t2()), (4, t())] {
        let g = ambient_image(&field(q), &f, guard()).unwrap();
        let elems = g.elements();
        for k in 0..6 {
            let count = k % 3;
            let gens: Vec<MatrixModF> = (0..count)
                .map(|_| elems[rng.gen_range(0..elems.len())])
                .collect();
            out.push(SubgroupFrame::new(g.clone(), gens).unwrap());
        }
    }
    out
}

#[test]
fn quasi_level_invariants_on_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for frame in random_frames(&mut rng) {
        let r = frame.ring();
        let k = frame.field();
        let ql = frame.quasi_level().unwrap();
        assert!(ql.contains_residue(0));
        for &a in ql.residues() {
            for &b in ql.residues() {
                assert!(ql.contains_residue(r.add(a, b)));
            }
            for c in k.elements() {
                assert!(ql.contains_residue(r.scale(c, a)));
            }
        }
        let level = frame.level().unwrap();
        assert!(level.divides(k, frame.modulus()));
        for i in 0..frame.modulus().deg() - level.deg() {
            assert!(ql.contains_residue(r.reduce(&level.shift(i))));
        }
        assert!(frame.contains_level_kernel().unwrap(), "{:?}", frame.generators());
        if frame.order() == 1 {
            assert_eq!(level, frame.modulus().clone());
            assert_eq!(ql.dim(), 0);
        }
    }
}

#[test]
fn quasi_level_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for frame in random_frames(&mut rng) {
        let elems = frame.ambient().elements();
        let ql = frame.quasi_level().unwrap();
        let level = frame.level().unwrap();
        let cusps = frame.cusp_count().unwrap();
        for _ in 0..3 {
            let g = elems[rng.gen_range(0..elems.len())];
            let moved = frame.conjugate(g).unwrap();
            assert_eq!(moved.quasi_level().unwrap(), ql);
            assert_eq!(moved.level().unwrap(), level);
            assert_eq!(moved.order(), frame.order());
            assert_eq!(moved.cusp_count().unwrap(), cusps);
        }
    }
}

#[test]
fn core_is_normal_and_inside_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for frame in random_frames(&mut rng).into_iter().take(12) {
        let r = frame.ring();
        let core = frame.core();
        assert!(core.iter().all(|m| frame.subgroup().contains(m)));
        for &g in frame.ambient().elements() {
            for &m in &core {
                assert!(core.contains(&m.conjugate_by(r, g).unwrap()));
            }
        }
        // The core is the intersection of all conjugates of H.
        let mut direct = frame.subgroup().clone();
        for &g in frame.ambient().elements() {
            let conj: std::collections::HashSet<_> = frame
                .subgroup()
                .iter()
                .map(|m| m.conjugate_by(r, g).unwrap())
                .collect();
            direct.retain(|m| conj.contains(m));
        }
        assert_eq!(direct, core);
    }
}

#[test]
fn cusp_count_matches_double_cosets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for frame in random_frames(&mut rng).into_iter().take(18) {
        let r = frame.ring();
        let g = frame.ambient();
        // Borel image: upper triangular with diagonal in F_q^*.
        let borel: Vec<MatrixModF> = g
            .elements()
            .iter()
            .copied()
            .filter(|m| {
                m.0[2] == 0
                    && r.as_constant(m.0[0]).is_some_and(|c| !c.is_zero())
                    && r.as_constant(m.0[3]).is_some_and(|c| !c.is_zero())
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        let mut cosets = 0;
        for &x in g.elements() {
            if seen.contains(&x) {
                continue;
            }
            cosets += 1;
            for &h in frame.subgroup() {
                for &b in &borel {
                    seen.insert(h.mul(r, x).mul(r, b));
                }
            }
        }
        assert_eq!(frame.cusp_count().unwrap(), cosets);
    }
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[test]
fn gamma_t_has_only_p_power_torsion() {
    for q in [2u64, 3] {
        let frame = SubgroupFrame::gamma_t(&field(q), guard()).unwrap();
        let found = frame.torsion_scan(1, guard()).unwrap();
        assert!(found.len() > 1);
        for e in &found {
            assert!(is_power_of(e.order, q), "{:?}", e);
        }
    }
}

#[test]
fn torsion_examples() {
    let k = field(3);
    let frame = SubgroupFrame::gamma_t(&k, guard()).unwrap();
    let found = frame.torsion_scan(1, guard()).unwrap();
    let u = [Poly::one(), t(), Poly::zero(), Poly::one()];
    assert!(found.iter().any(|e| e.matrix == u && e.order == 3));

    let full = SubgroupFrame::full(&k, &t(), guard()).unwrap();
    let found = full.torsion_scan(1, guard()).unwrap();
    assert!(found.iter().any(|e| e.order == 4));
    let rotation = [Poly::zero(), p(&[2]), Poly::one(), Poly::zero()];
    assert!(found.iter().any(|e| e.matrix == rotation && e.order == 4));
    // Finite order forces a constant trace.
    for e in &found {
        let tr = e.matrix[0].add(&k, &e.matrix[3]);
        assert!(tr.deg() == 0 || tr.is_zero());
    }
}

#[test]
fn torsion_scan_respects_guard() {
    let frame = SubgroupFrame::gamma_t(&field(3), guard()).unwrap();
    assert!(frame.torsion_scan(3, Guard::new(1000)).is_err());
}

#[test]
fn frame_files() {
    let gt = parse_frame("q=4 f=[0,1] gens=[]", guard()).unwrap();
    assert_eq!(gt.level().unwrap(), t());
    assert_eq!(gt.cusp_count().unwrap(), 5);
    let full = parse_frame("q=2 f=x gens=[[1],[1],[0],[1];[1],[0],[1],[1]]", guard()).unwrap();
    assert_eq!(full.order(), 6);
    assert!(!full.is_modular_frame().unwrap());
    let poly_entries = parse_frame("q=2 f=x^2 gens=[1,x,0,1]", guard()).unwrap();
    assert_eq!(poly_entries.order(), 2);
    assert!(parse_frame("q=3 f=x gens=[[2],[0],[0],[2];[1],[0],[0],[2]]", guard()).is_ok());
    // Determinant T is not in F_q^*.
    assert!(parse_frame("q=2 f=x^2 gens=[x,0,0,1]", guard()).is_err());
    assert!(parse_frame("q=2 f=x gens=[1,1,1]", guard()).is_err());
    assert!(parse_frame("q=6 f=x", guard()).is_err());
    assert!(parse_frame("q=2 f=[1,0] gens=[]", guard()).is_err());
}
