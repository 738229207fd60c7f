use std::sync::Arc;

use inproj::corpus::{gen_variety, FixtureKind};
use inproj::geometry::{classify, inner_project, lb_quadrics, resolve, tangent_at, PointedIdeal, Verdict};
use inproj::groebner::{minimal_generators, Ideal};
use inproj::module::{GradedModuleSpec, Structure};
use inproj::pei::{projected_ideal_spec, stabilization};
use inproj::tor::{betti_window, check_n2p, tor_inclusion_map, tor_x0_map, TorEngine};
use inproj::verify::{verify_suite, VerifyConfig};

fn fixture(kind: &str) -> Ideal {
    gen_variety(&kind.parse().unwrap()).unwrap().ideal().unwrap()
}

fn e0(i: &Ideal) -> Vec<u32> {
    let mut v = vec![0; i.ring().nvars()];
    v[0] = 1;
    v
}

const SMALL: [&str; 6] = ["rnc:3", "rnc:4", "scroll:1,2", "segre:1,2", "plucker24", "two_planes_p4"];

/// Known `N_{2,p}` levels.
const LEVELS: [(&str, usize); 5] = [("rnc:3", 2), ("rnc:4", 3), ("rnc:5", 4), ("scroll:1,2", 2), ("plucker24", 2)];

#[test]
fn convention_shift_on_corpus() {
    for k in SMALL {
        let i = fixture(k);
        let q = TorEngine::new(Arc::new(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap()));
        let m = TorEngine::new(Arc::new(GradedModuleSpec::ideal(&i, Structure::OverR).unwrap()));
        for a in 1..=4 {
            for j in 0..=3 {
                assert_eq!(q.betti(a, j), m.betti(a - 1, j + 1), "{k} ({a},{j})");
            }
        }
    }
}

#[test]
fn euler_characteristic_on_antidiagonals() {
    for k in ["rnc:4", "two_planes_p4", "plucker24"] {
        let i = fixture(k);
        let e = TorEngine::new(Arc::new(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap()));
        let n = i.ring().nvars();
        for total in 0..=4i64 {
            let mut chains = 0i64;
            let mut betti = 0i64;
            for a in 0..=(total as usize).min(n) {
                let j = total - a as i64;
                let s = if a % 2 == 0 { 1 } else { -1 };
                chains += s * e.chain(a, j).dim() as i64;
                betti += s * e.betti(a, j) as i64;
            }
            assert_eq!(chains, betti, "{k} total degree {total}");
        }
    }
}

#[test]
fn linear_strand_flags_on_corpus() {
    for (k, p) in LEVELS {
        let i = fixture(k);
        assert_eq!(check_n2p(&resolve(&i).unwrap().ideal).unwrap(), p, "{k}");
        let s = TorEngine::new(Arc::new(GradedModuleSpec::ideal(&i, Structure::OverS).unwrap()));
        for a in 0..p {
            for j in 2..=4 {
                let m = tor_x0_map(&s, a, j).unwrap();
                if j == 2 || a == p - 1 {
                    assert!(m.surjective, "{k} ({a},{j}) {m:?}");
                } else {
                    assert!(m.isomorphism, "{k} ({a},{j}) {m:?}");
                }
            }
        }
    }
}

#[test]
fn embedded_resolutions_inject() {
    for (k, p) in LEVELS {
        let i = fixture(k);
        let (iq, spec) = projected_ideal_spec(&i).unwrap();
        let src = TorEngine::new(spec);
        let dst = TorEngine::new(Arc::new(GradedModuleSpec::ideal(&i, Structure::OverR).unwrap()));
        for a in 0..=p.saturating_sub(2) {
            for j in 2..=3 {
                assert!(tor_inclusion_map(&src, &dst, a, j).unwrap().injective, "{k} ({a},{j})");
            }
        }
        assert!(check_n2p(&resolve(&iq).unwrap().ideal).unwrap() + 1 >= p, "{k}");
    }
}

#[test]
fn linear_stabilization_at_smooth_points() {
    for k in ["rnc:3", "rnc:4", "scroll:1,2", "segre:1,2", "plucker24", "veronese:2,2"] {
        let i = fixture(k);
        let t = tangent_at(&i, &e0(&i)).unwrap();
        assert!(t.smooth);
        let (s, stable) = stabilization(&i).unwrap();
        assert!(s <= i.max_degree() - 1, "{k}: s = {s}");
        let gens = minimal_generators(&stable).unwrap();
        assert!(gens.generators().iter().all(|g| g.degree() == Some(1)), "{k}");
        assert_eq!(gens.generators().len(), t.jacobian_rank, "{k}");
    }
}

#[test]
fn projection_laws_on_corpus() {
    for k in SMALL {
        let i = fixture(k);
        let (_, r) = inner_project(&PointedIdeal::new(i.clone(), e0(&i)).unwrap()).unwrap();
        assert!(r.smooth);
        assert!(r.quadric_identity_ok, "{k}");
        assert_eq!(r.depth_identity_ok, Some(true), "{k}");
        assert_eq!(r.delta_after, r.delta_before, "{k}");
        if r.n2p_before >= 1 {
            assert!(r.n2p_after + 1 >= r.n2p_before, "{k}");
        }
    }
}

#[test]
fn singular_center_keeps_quadric_identity() {
    let doc = gen_variety(&FixtureKind::TwoPlanesP4).unwrap();
    let i = doc.ideal().unwrap();
    let (_, r) = inner_project(&PointedIdeal::new(i, doc.point("vertex").unwrap().coords.clone()).unwrap()).unwrap();
    assert!(!r.smooth);
    assert!(r.quadric_identity_ok);
    assert_eq!(r.depth_identity_ok, None);
}

#[test]
fn quadric_lower_bound_on_corpus() {
    for (k, p) in LEVELS {
        let i = fixture(k);
        let e = inproj::hilbert::hilbert(&i, 0).unwrap().codim as u64;
        let beta = resolve(&i).unwrap().ideal.get(0, 2);
        assert!(beta >= lb_quadrics(e, p as u64).unwrap(), "{k}");
    }
}

#[test]
fn grassmannian_is_del_pezzo_class() {
    let r = classify(&fixture("plucker24")).unwrap();
    assert_eq!(r.verdict, Verdict::NextToMinimalDelPezzoClass);
    assert_eq!(r.expected_betti_row, Some(vec![(0, 5), (1, 5)]));
    assert_eq!(r.expected_row_matches, Some(true));
    assert!(r.level_matches);
}

#[test]
fn rational_normal_curves_are_minimal() {
    for d in 2..=6 {
        let r = classify(&fixture(&format!("rnc:{d}"))).unwrap();
        assert_eq!(r.verdict, Verdict::MinimalDegree);
        assert_eq!(r.n2p_level, d as usize - 1);
    }
}

#[test]
fn grassmannian_window_is_flagged_when_small() {
    let i = fixture("plucker24");
    let e = TorEngine::new(Arc::new(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap()));
    assert!(betti_window(&e, 3, 1).truncated);
    assert!(betti_window(&e, 2, 3).truncated);
    assert!(!betti_window(&e, 4, 3).truncated);
}

#[test]
fn report_is_deterministic() {
    let sel: Vec<String> = ["example-3.3", "nonacm-depth", "property-suite"].iter().map(|s| s.to_string()).collect();
    let a = verify_suite(&sel, &VerifyConfig::default()).unwrap();
    let b = verify_suite(&sel, &VerifyConfig::default()).unwrap();
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert!(a.all_passed(), "{}", a.render());
}
