use super::*;
use crate::config::builtin;
use proptest::prelude::*;

fn named(ring: &str, map: &str) -> RingMap {
    builtin(ring).unwrap().map(map).unwrap().clone()
}

#[test]
fn m2f2_automorphisms_form_s3() {
    let m = builtin("m2f2").unwrap();
    let aut = enumerate_automorphisms(&m.ring);
    assert_eq!(aut.order(), 6);
    assert_eq!(aut.label(), "S3");
    let theta = m.map("theta").unwrap();
    assert_eq!(theta.order(), 3);
    assert!(aut.contains(theta));
    let tau = m.map("tau").unwrap();
    let psi = m.map("psi").unwrap();
    assert!(aut.contains(&tau.compose(psi).unwrap()));
}

#[test]
fn m2f2_anti_automorphisms_and_involutions() {
    let m = builtin("m2f2").unwrap();
    let anti = enumerate_anti_automorphisms(&m.ring);
    assert_eq!(anti.len(), 6);
    let tau = m.map("tau").unwrap();
    let psi = m.map("psi").unwrap();
    let theta = m.map("theta").unwrap();
    let th2 = theta.power(2);
    let expected_anti = [
        tau.clone(),
        psi.clone(),
        tau.compose(theta).unwrap(),
        psi.compose(theta).unwrap(),
        tau.compose(&th2).unwrap(),
        psi.compose(&th2).unwrap(),
    ];
    for e in &expected_anti {
        assert!(anti.contains(e));
    }
    let inv = enumerate_involutions(&m.ring);
    assert_eq!(inv.len(), 4);
    for e in [tau.clone(), psi.clone(), tau.compose(theta).unwrap(), tau.compose(&th2).unwrap()] {
        assert!(inv.contains(&e));
    }
}

#[test]
fn generator_search_matches_exhaustive_search() {
    for key in ["z4", "f4", "f2x2", "f2x2x", "gr42", "m2f2", "f4x2", "f2xy", "f2xy-b", "f2x4", "z4x2+2"] {
        let r = builtin(key).unwrap().ring;
        for kind in [MapKind::Automorphism, MapKind::AntiAutomorphism] {
            let fast: Vec<Vec<Elem>> = search_maps(&r, kind).iter().map(|m| m.perm().to_vec()).collect();
            let slow: Vec<Vec<Elem>> = exhaustive_maps(&r, kind).iter().map(|m| m.perm().to_vec()).collect();
            assert_eq!(fast, slow, "{key} {kind:?}");
        }
    }
}

#[test]
fn automorphism_group_labels() {
    let cases = [
        ("gr42", 2, "S2"),
        ("z4", 1, "1"),
        ("f2xy", 24, "S4"),
        ("f4x2", 6, "S3"),
        ("f2xy-b", 8, "D4"),
        ("f2x4", 4, "D2"),
        ("f5x2", 4, "C4"),
        ("z4x2+2", 4, "D2"),
        ("m2f3", 24, "S4"),
        ("f3x3", 6, "S3"),
        ("f3x2x", 2, "S2"),
        ("f9x2", 16, "SD16"),
    ];
    for (key, order, label) in cases {
        let r = builtin(key).unwrap().ring;
        let g = enumerate_automorphisms(&r);
        assert_eq!((g.order(), g.label().as_str()), (order, label), "{key}");
    }
}

#[test]
fn f3xy_has_aut_of_order_72() {
    let r = builtin("f3xy").unwrap().ring;
    let g = enumerate_automorphisms(&r);
    assert_eq!(g.order(), 72);
    let stats = g.order_statistics();
    assert_eq!(stats.get(&2), Some(&21));
    assert_eq!(stats.get(&3), Some(&8));
    assert_eq!(stats.get(&4), Some(&18));
    assert_eq!(stats.get(&6), Some(&24));
}

#[test]
fn m2f3_has_ten_involutions() {
    let m = builtin("m2f3").unwrap();
    assert_eq!(enumerate_involutions(&m.ring).len(), 10);
    assert!(m.map("sigma_first").unwrap().is_involution());
    assert!(m.map("sigma_second").unwrap().is_involution());
}

#[test]
fn involutions_of_f2x2_are_trivial() {
    let r = builtin("f2x2").unwrap().ring;
    let inv = enumerate_involutions(&r);
    assert_eq!(inv.len(), 1);
    assert!(inv[0].is_identity());
    let all = exhaustive_maps(&r, MapKind::Automorphism);
    assert_eq!(all.len(), 1);
}

#[test]
fn gr42_theta_generates_aut() {
    let m = builtin("gr42").unwrap();
    let theta = m.map("theta").unwrap();
    let h = subgroup_generated(&m.ring, std::slice::from_ref(theta)).unwrap();
    assert_eq!(h.order(), 2);
    assert_eq!(h.members(), enumerate_automorphisms(&m.ring).members());
    let fixed = h.fixed_subring();
    assert_eq!(fixed.elements(), SubringHandle::prime(&m.ring).elements());
    assert_eq!(fixed.order(), 4);
}

#[test]
fn gr42_traces_of_basis_squares() {
    let m = builtin("gr42").unwrap();
    let h = subgroup_generated(&m.ring, &[m.map("theta").unwrap().clone()]).unwrap();
    let r = &m.ring;
    for v in m.elems(&["ξ", "ξ+3"]) {
        assert_eq!(h.trace(r.mul(v, v)), m.elem("3"));
    }
}

#[test]
fn m2f2_theta_closed_form() {
    let m = builtin("m2f2").unwrap();
    let theta = m.map("theta").unwrap();
    for v in 0..16u8 {
        let (a, b, c, d) = (v & 1, (v >> 1) & 1, (v >> 2) & 1, (v >> 3) & 1);
        let src = m.ring.parse_element(&format!("[[{a},{b}],[{c},{d}]]")).unwrap();
        let img = format!("[[{},{}],[{},{}]]", (b + d) % 2, (a + b + c + d) % 2, b, (a + b) % 2);
        assert_eq!(theta.apply(src), m.ring.parse_element(&img).unwrap());
    }
}

#[test]
fn m2f2_fixed_ring_and_traces() {
    let m = builtin("m2f2").unwrap();
    let h = subgroup_generated(&m.ring, &[m.map("theta").unwrap().clone()]).unwrap();
    assert_eq!(h.order(), 3);
    let mut expected = m.elems(&["z", "I", "u1", "u4"]);
    expected.sort();
    assert_eq!(h.fixed_subring().elements(), &expected[..]);
    assert_eq!(m.subring("R").unwrap().elements(), &expected[..]);
    let psi = m.map("psi").unwrap();
    let (i1, ii) = (m.elem("I"), m.elem("i"));
    let r = &m.ring;
    assert_eq!(h.trace(r.mul(i1, psi.apply(ii))), m.elem("z"));
    assert_eq!(h.trace(r.mul(ii, psi.apply(i1))), m.elem("z"));
    assert_eq!(h.trace(r.mul(i1, psi.apply(i1))), m.elem("I"));
}

#[test]
fn trivial_group_trace_is_identity() {
    let r = builtin("f4x2").unwrap().ring;
    let g = MapGroup::trivial(&r);
    assert!(r.elements().all(|a| g.trace(a) == a));
    assert_eq!(g.fixed_subring().order(), r.order());
}

#[test]
fn conjugating_tau_in_m2f2() {
    let tau = named("m2f2", "tau");
    let theta = named("m2f2", "theta");
    let tt = tau.compose(&theta).unwrap();
    let tt2 = tau.compose(&theta.power(2)).unwrap();
    assert_eq!(conjugate_involution(&tau, &tt).unwrap(), tt2);
    assert_eq!(conjugate_involution(&tau, &tt2).unwrap(), tt);
    assert_eq!(conjugate_involution(&tau, &tau).unwrap(), tau);
    assert_eq!(conjugate_involution(&tau, &theta), Err(MapError::NotInvolution));
}

#[test]
fn mixed_rings_are_rejected() {
    let a = named("gr42", "theta");
    let b = RingMap::identity(&builtin("z4").unwrap().ring);
    assert_eq!(subgroup_generated(a.ring(), &[a.clone(), b]).unwrap_err(), MapError::MixedRings);
}

#[test]
fn m2f3_stabilizers_of_subfields() {
    let m = builtin("m2f3").unwrap();
    let aut = enumerate_automorphisms(&m.ring);
    for name in ["F9_1", "F9_2", "F9_3"] {
        let f = m.subring(name).unwrap();
        assert_eq!(f.order(), 9);
        let h = aut.stabilizer(f);
        assert_eq!(h.order(), 4, "{name}");
        assert_eq!(h.fixed_subring().elements(), f.elements(), "{name}");
    }
}

#[test]
fn subgroup_lattice_of_s3() {
    let m = builtin("m2f2").unwrap();
    let subs = enumerate_automorphisms(&m.ring).subgroups();
    let orders: Vec<usize> = subs.iter().map(|g| g.order()).collect();
    assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
}

#[test]
fn invalid_images_are_rejected() {
    let m = builtin("m2f2").unwrap();
    let e2 = m.elem("e2");
    let e3 = m.elem("e3");
    // Transpose as an automorphism fails.
    let r = RingMap::from_generator_images(&m.ring, &[e2, e3], &[e3, e2], MapKind::AntiAutomorphism);
    assert!(r.is_ok());
    let bad = RingMap::from_generator_images(&m.ring, &[e2, e3], &[e2, e2], MapKind::Automorphism);
    assert!(bad.is_err());
    let partial = RingMap::from_generator_images(&m.ring, &[e2], &[e2], MapKind::Automorphism);
    assert_eq!(partial.unwrap_err(), MapError::SourcesDoNotGenerate);
}

fn group_for(idx: usize) -> (Arc<FiniteRing>, MapGroup) {
    let keys = ["gr42", "m2f2", "f4x2", "f2xy-b", "f2x4"];
    let r = builtin(keys[idx % keys.len()]).unwrap().ring;
    let g = enumerate_automorphisms(&r);
    (r, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_fixed_and_bilinear(idx in 0usize..5, sub in 0usize..8, a in 0usize..256, b in 0usize..256) {
        let (r, aut) = group_for(idx);
        let subs = aut.subgroups();
        let h = &subs[sub % subs.len()];
        let fixed = h.fixed_subring();
        let a = (a % r.order()) as Elem;
        let b = fixed.elements()[b % fixed.order()];
        let t = h.trace(a);
        prop_assert!(h.members().iter().all(|g| g.apply(t) == t));
        prop_assert_eq!(h.trace(r.mul(b, a)), r.mul(b, t));
        prop_assert_eq!(h.trace(r.mul(a, b)), r.mul(t, b));
    }

    #[test]
    fn enumerated_maps_pass_audits(idx in 0usize..5, k in 0usize..32, a in 0usize..256, b in 0usize..256) {
        let (r, aut) = group_for(idx);
        let anti = enumerate_anti_automorphisms(&r);
        let all: Vec<&RingMap> = aut.members().iter().chain(anti.iter()).collect();
        let m = all[k % all.len()];
        let (a, b) = ((a % r.order()) as Elem, (b % r.order()) as Elem);
        prop_assert_eq!(m.apply(r.add(a, b)), r.add(m.apply(a), m.apply(b)));
        let prod = if m.kind() == MapKind::AntiAutomorphism {
            r.mul(m.apply(b), m.apply(a))
        } else {
            r.mul(m.apply(a), m.apply(b))
        };
        prop_assert_eq!(m.apply(r.mul(a, b)), prod);
        prop_assert_eq!(m.apply(r.one()), r.one());
    }

    #[test]
    fn involution_list_is_filtered_anti_list(idx in 0usize..5) {
        let (r, _) = group_for(idx);
        let filtered: Vec<RingMap> = exhaustive_maps(&r, MapKind::AntiAutomorphism)
            .into_iter()
            .filter(|m| m.order() <= 2)
            .collect();
        prop_assert_eq!(enumerate_involutions(&r), filtered);
    }
}
