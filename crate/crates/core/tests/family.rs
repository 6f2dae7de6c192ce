use crkit::cralg::{cr_codimension, cr_dimension, is_hnr, RealFormContext};
use crkit::grassmann::{
    base_point, certify_base_point, duality_catalog, enumerate_orbits, oracle_algebra, orbit_reports, OrbitDescriptor,
};
use crkit::levi::{characteristic_space, levi_gram, levi_report};
use crkit::liealg::is_killing_negative_semidefinite;
use crkit::roots::Verdict;
use num_rational::BigRational;

fn descriptors(max: usize) -> Vec<OrbitDescriptor> {
    let mut out = Vec::new();
    for p in 1..=max {
        for q in p..=max {
            for m in 1..p + q {
                out.extend(enumerate_orbits(p, q, m).unwrap());
            }
        }
    }
    out
}

#[test]
fn every_orbit_is_hnr_up_to_three() {
    for d in descriptors(3) {
        let (alg, _, _) = oracle_algebra(&d).unwrap();
        assert_eq!(is_hnr(&alg).unwrap(), Verdict::Yes, "{d:?}");
    }
}

#[test]
fn open_orbits_are_exactly_the_complex_ones() {
    for p in 1..=3 {
        for q in p..=3 {
            for m in 1..p + q {
                for r in orbit_reports(p, q, m).unwrap() {
                    assert_eq!(r.descriptor.c() == 0, r.oracle.k == 0, "{:?}", r.descriptor);
                    assert_eq!(r.flags.open_orbit, r.descriptor.c() == 0);
                }
            }
        }
    }
}

#[test]
fn base_points_are_certified_everywhere() {
    for d in descriptors(4) {
        let ctx = RealFormContext::new(d.p, d.q).unwrap();
        let l = base_point(&d);
        assert_eq!(l.dim(), d.m);
        let cert = certify_base_point(&ctx, &d, &l).unwrap();
        assert!(cert.in_m_plus && cert.in_m_minus, "{d:?}");
    }
}

#[test]
fn duality_pairing_is_a_bijection() {
    for (p, q, m) in [(1, 1, 1), (1, 2, 1), (2, 3, 2), (3, 4, 3)] {
        let cat = duality_catalog(p, q, m).unwrap();
        let plus: std::collections::BTreeSet<_> = cat.iter().map(|e| e.m_plus.clone()).collect();
        let minus: std::collections::BTreeSet<_> = cat.iter().map(|e| e.m_minus.clone()).collect();
        assert_eq!(plus.len(), cat.len());
        assert_eq!(minus.len(), cat.len());
        assert_eq!(cat.iter().filter(|e| e.minimal).count(), 1);
    }
}

#[test]
fn totally_real_spot_checks() {
    // null lines in C^{1,1}: the circle, n = 0
    let r = &orbit_reports(1, 1, 1).unwrap()[0];
    assert_eq!((r.descriptor.a, r.descriptor.b), (0, 0));
    assert!(r.flags.totally_real);
    assert_eq!((r.oracle.n, r.oracle.k), (0, 1));
    // null lines in C^{2,2}: real hypersurface of the quadric, n = 2
    let d = OrbitDescriptor::new(2, 2, 1, 0, 0).unwrap();
    let (alg, _, _) = oracle_algebra(&d).unwrap();
    assert_eq!((cr_dimension(&alg), cr_codimension(&alg)), (2, 1));
}

#[test]
fn reductive_parts_have_compact_real_points() {
    for d in descriptors(3).into_iter().step_by(3) {
        let (alg, _, _) = oracle_algebra(&d).unwrap();
        assert!(is_killing_negative_semidefinite(alg.v_r(), &alg.v0().basis()).unwrap(), "{d:?}");
    }
}

#[test]
fn levi_forms_are_hermitian_and_scale() {
    let two = BigRational::from_integer(2.into());
    for d in descriptors(3) {
        let (alg, _, _) = oracle_algebra(&d).unwrap();
        let m0 = characteristic_space(&alg).unwrap();
        for t in m0.basis() {
            let g = levi_gram(&alg, &t).unwrap();
            assert!(g.is_hermitian());
            let g2 = levi_gram(&alg, &t.scale(&crkit::exact::Scalar::from_real(two.clone()))).unwrap();
            assert_eq!(g2, g.scale(&crkit::exact::Scalar::from_int(2)));
        }
        if m0.dim() > 0 {
            let mut coords = vec![BigRational::from_integer(0.into()); m0.dim()];
            coords[0] = BigRational::from_integer(3.into());
            let pos = levi_report(&alg, &coords).unwrap();
            coords[0] = BigRational::from_integer((-1).into());
            let neg = levi_report(&alg, &coords).unwrap();
            assert_eq!(neg.signature, pos.signature.negated());
            assert!(pos.signature.plus + pos.signature.minus <= alg.v_n().dim());
        }
    }
}
