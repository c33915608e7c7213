use sgflop::{
    compare_sides, cohomology, euler_characteristic, extract_ch, flop_datum, hrr_euler, poincare_polynomial,
    psi_transform, quantum_product, rat, semisimplicity_certificate, verify_vanishing, Ambient, BundleExpr, ChVector,
    Partition,
};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn bwb_and_hrr_agree_on_small_bundles() {
    for (r, n) in [(1, 3), (2, 4), (2, 5)] {
        let amb = Ambient::new(r, n).unwrap();
        for src in ["O", "Sv", "Q", "S * Sv", "sym 2(Sv)", "Sv * Q", "S"] {
            let e: BundleExpr = src.parse().unwrap();
            assert_eq!(euler_characteristic(amb, &e).unwrap(), hrr_euler(amb, &e).unwrap(), "{src} on Gr({r},{n})");
        }
    }
}

#[test]
fn tangent_bundle_of_projective_space() {
    let amb = Ambient::new(1, 3).unwrap();
    let t: BundleExpr = "Sv * Q".parse().unwrap();
    let h = cohomology(amb, &t).unwrap();
    assert_eq!(h.get(&0), Some(&8));
    assert_eq!(h.len(), 1);
}

#[test]
fn vanishing_holds_through_kmax_two() {
    for (r, n) in [(1, 2), (1, 4), (2, 4), (2, 5)] {
        let rep = verify_vanishing(Ambient::new(r, n).unwrap(), 2).unwrap();
        assert!(rep.all_pass, "Gr({r},{n})");
        assert_eq!(rep.failures().count(), 0);
    }
}

#[test]
fn local_model_sides_match() {
    let datum = flop_datum(2, 4).unwrap();
    assert_eq!((datum.dim_z(), datum.dim_x()), (4, 12));
    let cmp = compare_sides(datum.ambient());
    assert!(cmp.equal && cmp.presentations_agree);
    assert_eq!(cmp.minus.total(), poincare_polynomial(datum.ambient()).total() * 9);
}

#[test]
fn quantum_and_certificate() {
    let prod = quantum_product(&p(&[1]), &p(&[2, 2]), 2, 4).unwrap();
    assert_eq!(prod.terms().len(), 1);
    assert_eq!(prod.coefficient(&p(&[1])).coefficient(1), 1.into());
    let cert = semisimplicity_certificate(2, 4, &rat(1, 1)).unwrap();
    assert!(cert.holds());
    assert!(!cert.sigma1_squarefree);
}

#[test]
fn gamma_round_trip_through_public_api() {
    let amb = Ambient::new(2, 4).unwrap();
    let v = ChVector::of_bundle(amb, &"sym 2(Sv)".parse().unwrap()).unwrap();
    assert_eq!(extract_ch(&psi_transform(&v)).unwrap(), v);
}
