use fqrigid::drinfeldian::{
    class_group_of_domain, class_group_oracle, is_uniformizationally_rigid, search_rigid_domains,
    strategies, DrinfeldianDomain, RelationLattice,
};
use fqrigid::fq_poly::{substitution_automorphism, Field, Poly};
use fqrigid::function_fields::catalog::parse_line;
use fqrigid::function_fields::{places_of_degree, registry, CurveModel, Place};
use fqrigid::{Error, Guard};

fn guard() -> Guard {
    Guard::default()
}

fn line(q: u64) -> CurveModel {
    parse_line(&format!("q={q} kind=projective-line"), guard()).unwrap()
}

fn domain(curve: &CurveModel, place: Place) -> DrinfeldianDomain {
    DrinfeldianDomain::new(curve.clone(), place, guard()).unwrap()
}

/// The first finite place of degree `d`, or the first place at all.
fn first_place(curve: &CurveModel, d: u32) -> Place {
    let places = places_of_degree(curve, d, guard()).unwrap();
    places
        .iter()
        .find(|p| !p.is_infinite())
        .unwrap_or(&places[0])
        .clone()
}

#[test]
fn exact_sequence_examples() {
    let l2 = line(2);
    let r = class_group_of_domain(&domain(&l2, Place::prime(Poly::x())), guard()).unwrap();
    assert_eq!((r.h_k, r.deg_x, r.h_b, r.d1_order, r.d2_order), (1, 1, 1, 1, 1));
    let r = class_group_of_domain(
        &domain(&l2, Place::prime(Poly::from_codes(&[1, 1, 1]))),
        guard(),
    )
    .unwrap();
    assert_eq!((r.h_b, r.d2_order), (2, 2));

    let e = parse_line("q=2 kind=artin-schreier poly=x^3", guard()).unwrap();
    for pl in places_of_degree(&e, 1, guard()).unwrap() {
        let d = domain(&e, pl);
        assert_eq!(class_group_of_domain(&d, guard()).unwrap().h_b, 3);
        assert!(!is_uniformizationally_rigid(&d, guard()).unwrap());
    }

    let l5 = line(5);
    assert!(is_uniformizationally_rigid(&domain(&l5, first_place(&l5, 1)), guard()).unwrap());
    assert!(!is_uniformizationally_rigid(&domain(&l5, first_place(&l5, 2)), guard()).unwrap());
}

#[test]
fn report_invariants() {
    for q in [2u64, 3, 4, 5] {
        let l = line(q);
        for d in 1..=3 {
            for pl in places_of_degree(&l, d, guard()).unwrap().into_iter().take(3) {
                let r = class_group_of_domain(&domain(&l, pl), guard()).unwrap();
                assert_eq!(r.d1_order, 1);
                assert_eq!(r.d2_order, d as u64);
                assert_eq!(r.h_b, r.h_k * r.deg_x as u64);
                assert_eq!(r.d2_order == 1, r.deg_x == 1);
            }
        }
    }
}

#[test]
fn oracle_agrees_with_exact_sequence() {
    let l2 = line(2);
    let l3 = line(3);
    let e = parse_line("q=2 kind=artin-schreier poly=x^3", guard()).unwrap();
    let e1 = parse_line("q=2 kind=artin-schreier poly=x^3+x+1", guard()).unwrap();
    let h3 = parse_line("q=3 kind=hyperelliptic poly=x^3+2*x+2", guard()).unwrap();
    let w = parse_line("q=2 kind=smooth-plane poly=y^2*z+x*y*z+x^3+z^3", guard()).unwrap();
    let cases = vec![
        (domain(&l2, Place::prime(Poly::x())), 1u64),
        (domain(&l2, Place::infinity()), 1),
        (domain(&l2, Place::prime(Poly::from_codes(&[1, 1, 1]))), 2),
        (domain(&l3, first_place(&l3, 2)), 2),
        (domain(&l2, first_place(&l2, 3)), 3),
        (domain(&e, first_place(&e, 1)), 3),
        (domain(&e1, first_place(&e1, 1)), 1),
        (domain(&h3, first_place(&h3, 1)), 0),
        (domain(&w, first_place(&w, 1)), 0),
    ];
    let exact = strategies().get("exact-sequence").unwrap();
    let lattice = strategies().get("relation-lattice").unwrap();
    for (d, expected) in cases {
        let formula = exact.class_group_order(&d, guard()).unwrap();
        if expected != 0 {
            assert_eq!(formula, expected, "{}", d.place());
        }
        let oracle = lattice.class_group_order(&d, guard()).unwrap();
        assert_eq!(oracle, formula, "{} on {}", d.place(), d.curve().catalog_line());
    }
}

#[test]
fn oracle_reports_both_runs() {
    let l3 = line(3);
    let d = domain(&l3, first_place(&l3, 2));
    let b = RelationLattice::default_bound(&d);
    let report = class_group_oracle(&d, b, guard()).unwrap();
    assert_eq!(report.order, 2);
    assert_eq!(report.runs.len(), 2);
    assert_eq!(report.runs[1].degree_bound, report.runs[0].degree_bound + 1);
    assert!(report.runs.iter().all(|r| r.order == Some(2)));
}

#[test]
fn oracle_rejects_unsupported_models() {
    let h = parse_line("q=5 kind=hyperelliptic poly=x^4+1", guard()).unwrap();
    let d = domain(&h, first_place(&h, 1));
    assert!(matches!(
        class_group_oracle(&d, 2, guard()),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn domains_validate_their_place() {
    let l2 = line(2);
    assert!(DrinfeldianDomain::new(l2.clone(), Place::prime(Poly::from_codes(&[1, 0, 1])), guard()).is_err());
    let e = parse_line("q=2 kind=artin-schreier poly=x^3", guard()).unwrap();
    assert!(DrinfeldianDomain::new(e, Place::prime(Poly::x()), guard()).is_err());
    assert!(strategies().get("nope").is_err());
    assert_eq!(strategies().names(), vec!["exact-sequence", "relation-lattice"]);
}

#[test]
fn rigidity_is_translation_invariant_on_the_line() {
    for q in [3u64, 4, 5] {
        let field = Field::of_order(q, guard()).unwrap();
        let l = registry().model(&field, "projective-line", "").unwrap();
        for d in 1..=2 {
            for pl in places_of_degree(&l, d, guard()).unwrap() {
                let fqrigid::function_fields::PlaceRepr::Prime(f) = &pl.repr else {
                    continue;
                };
                let base = is_uniformizationally_rigid(&domain(&l, pl.clone()), guard()).unwrap();
                for alpha in field.elements() {
                    let g = substitution_automorphism(&field, alpha, f).unwrap();
                    let moved = domain(&l, Place::prime(g));
                    assert_eq!(is_uniformizationally_rigid(&moved, guard()).unwrap(), base);
                }
            }
        }
    }
}

#[test]
fn search_is_empty_for_large_q() {
    for q in [5u64, 7, 8, 9, 11] {
        let report = search_rigid_domains(q, 1, guard()).unwrap();
        assert!(report.hasse_excludes_genus_one);
        assert!(report.exceptional.is_empty(), "q={q}");
        assert_eq!(report.standard.len(), 1);
    }
    let report = search_rigid_domains(5, 2, guard()).unwrap();
    assert!(report.exceptional.is_empty());
    assert!(report.searched.values().sum::<usize>() > 0);
}

#[test]
fn search_finds_small_q_exceptions() {
    let r2 = search_rigid_domains(2, 1, guard()).unwrap();
    let target = parse_line("q=2 kind=artin-schreier poly=x^3+x+1", guard()).unwrap();
    assert!(r2
        .exceptional
        .iter()
        .any(|e| e.kind == "artin-schreier" && e.poly == target.equation().codes()));
    for q in [2u64, 3, 4] {
        let r = search_rigid_domains(q, 2, guard()).unwrap();
        assert!(!r.exceptional.is_empty(), "q={q}");
        for e in &r.exceptional {
            assert_eq!((e.h_k, e.deg_x, e.h_b), (1, 1, 1));
            assert!(e.genus >= 1);
        }
        assert_eq!(r.classes.iter().map(|c| c.members).sum::<usize>(), r.exceptional.len());
    }
}

#[test]
fn search_output_is_deterministic() {
    let a = search_rigid_domains(3, 2, guard()).unwrap();
    let b = search_rigid_domains(3, 2, guard()).unwrap();
    assert_eq!(a, b);
}
