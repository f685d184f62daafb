//! Generator matrices, distances and weight enumerators of the worked code
//! examples, checked against the displayed values.

use skewcode_core::bases::ModuleBasis;
use skewcode_core::codes::{
    classify_binary_type, is_self_dual, min_distance_above, phi_image, theta_code, verify_duality_preservation,
    weight_profile, BinaryType, LinearCode, ThetaCode, WeightTable,
};
use skewcode_core::config::{builtin, LoadedRing};
use skewcode_core::morphisms::{MapGroup, RingMap};
use skewcode_core::par::Search;
use skewcode_core::skew::SkewRing;
use skewcode_core::{Elem, SubringHandle};

fn theta_of(r: &LoadedRing, name: &str) -> RingMap {
    if name == "id" {
        RingMap::identity(&r.ring)
    } else {
        r.map(name).unwrap().clone()
    }
}

/// `g` with ascending coefficients, modulus `X^n − a`.
fn code(r: &LoadedRing, theta: &str, g: &[&str], n: usize, a: &str) -> ThetaCode {
    let ctx = SkewRing::new(&theta_of(r, theta)).unwrap();
    let g = ctx.parse(g).unwrap();
    let f = ctx.x_pow_minus(n, r.elem(a));
    theta_code(&g, &f).unwrap()
}

fn basis(sub: &SubringHandle, r: &LoadedRing, v: &[&str]) -> ModuleBasis {
    ModuleBasis::new(sub, &r.elems(v)).unwrap()
}

/// Rows of labels in the parent ring, after `subst` rewrites.
fn expect_rows(image: &LinearCode, sub: &SubringHandle, r: &LoadedRing, rows: &[&str], subst: &[(&str, &str)]) {
    let expected: Vec<Vec<Elem>> = rows
        .iter()
        .map(|row| {
            row.split_whitespace()
                .map(|t| {
                    let t = subst.iter().find(|(k, _)| *k == t).map_or(t, |(_, v)| v);
                    sub.local_index(r.elem(t)).unwrap()
                })
                .collect()
        })
        .collect();
    assert_eq!(image.gens(), &expected[..]);
}

fn s() -> Search {
    Search::default()
}

fn hamming(c: &LinearCode) -> WeightTable {
    WeightTable::hamming(c.ring())
}

#[test]
fn dual_numbers_length_four() {
    let r = builtin("f2x2").unwrap();
    let c = code(&r, "id", &["1", "x", "1"], 4, "1");
    let labels = c.code().labels();
    assert_eq!(labels, vec![vec!["1", "x", "1", "0"], vec!["0", "1", "x", "1"]]);
    assert_eq!(c.code().codewords(&s()).unwrap().len(), 16);
    let id = RingMap::identity(&r.ring);
    assert!(is_self_dual(c.code(), &id, &s()).unwrap());

    let f2 = SubringHandle::prime(&r.ring);
    let b1 = basis(&f2, &r, &["1", "x"]);
    let img = phi_image(c.code(), &b1).unwrap();
    expect_rows(
        &img,
        &f2,
        &r,
        &["1 0 0 1 1 0 0 0", "0 1 0 0 0 1 0 0", "0 0 1 0 0 1 1 0", "0 0 0 1 0 0 0 1"],
        &[],
    );
    let id2 = RingMap::identity(img.ring());
    assert!(!is_self_dual(&img, &id2, &s()).unwrap());

    let b2 = basis(&f2, &r, &["1", "x+1"]);
    let img = phi_image(c.code(), &b2).unwrap();
    expect_rows(
        &img,
        &f2,
        &r,
        &["1 0 1 1 1 0 0 0", "0 1 1 1 0 1 0 0", "0 0 1 0 1 1 1 0", "0 0 0 1 1 1 0 1"],
        &[],
    );
    assert!(is_self_dual(&img, &id2, &s()).unwrap());
    assert_eq!(classify_binary_type(&img, &s()).unwrap(), BinaryType::II);
    let p = weight_profile(&img, &hamming(&img), &s()).unwrap();
    assert_eq!(p.min_distance, 4);
    assert_eq!(p.distribution, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);

    let h = MapGroup::trivial(&r.ring);
    let bad = verify_duality_preservation(c.code(), &b1, &id, &h, &s()).unwrap();
    assert_eq!(bad.preserved, Some(false));
    assert!(!bad.hypotheses_met());
    let good = verify_duality_preservation(c.code(), &b2, &id, &h, &s()).unwrap();
    assert_eq!(good.preserved, Some(true));
    assert!(good.hypotheses_met() && good.symmetric_fixed && good.wood);
}

#[test]
fn matrix_ring_code_and_images() {
    let r = builtin("m2f2").unwrap();
    let c = code(&r, "theta_code", &["u4", "u1", "I"], 4, "I");
    assert_eq!(c.k(), 2);
    let g = c.code().gens();
    assert_eq!(g[0], r.elems(&["u4", "u1", "I", "z"]));
    assert_eq!(g[1], r.elems(&["z", "u1", "u4", "I"]));

    let f2 = SubringHandle::prime(&r.ring);
    let std = basis(&f2, &r, &["e1", "e2", "e3", "e4"]);
    let img = phi_image(c.code(), &std).unwrap();
    expect_rows(
        &img,
        &f2,
        &r,
        &[
            "1 1 0 0 0 1 0 0 1 0 0 0 0 0 0 0",
            "1 0 0 0 1 1 0 0 0 1 0 0 0 0 0 0",
            "0 0 1 1 0 0 0 1 0 0 1 0 0 0 0 0",
            "0 0 1 0 0 0 1 1 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 1 0 0 1 1 0 0 1 0 0 0",
            "0 0 0 0 1 1 0 0 1 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 0 1 0 0 1 1 0 0 1 0",
            "0 0 0 0 0 0 1 1 0 0 1 0 0 0 0 1",
        ],
        &[],
    );
    assert_eq!(weight_profile(&img, &hamming(&img), &s()).unwrap().min_distance, 4);

    let f4 = r.subring("R").unwrap();
    let b = basis(f4, &r, &["e1", "e4"]);
    let img = phi_image(c.code(), &b).unwrap();
    expect_rows(
        &img,
        f4,
        &r,
        &[
            "1 α 0 α 1 0 0 0",
            "α^2 0 α^2 1 0 1 0 0",
            "0 0 0 α 1 α 1 0",
            "0 0 α^2 1 α^2 0 0 1",
        ],
        &[("α", "u4"), ("α^2", "u1"), ("1", "I"), ("0", "z")],
    );
    assert_eq!(weight_profile(&img, &hamming(&img), &s()).unwrap().min_distance, 4);
}

#[test]
fn f4_dual_numbers_length_two_depends_on_basis() {
    let r = builtin("f4x2").unwrap();
    let f4 = r.subring("F4").unwrap();
    let c = code(&r, "sigma3", &["x+1", "1"], 2, "1");
    let b = basis(f4, &r, &["1", "α^2x+1"]);
    let img = phi_image(c.code(), &b).unwrap();
    expect_rows(&img, f4, &r, &["α^2 α 1 0", "α α^2 0 1"], &[]);
    assert_eq!(weight_profile(&img, &hamming(&img), &s()).unwrap().min_distance, 3);

    let ctx = SkewRing::new(r.map("sigma3").unwrap()).unwrap();
    let f = ctx.x_pow_minus(2, r.ring.one());
    let divisors = skewcode_core::skew::enumerate_monic_right_divisors(&ctx, 2, 1, r.ring.one(), &s()).unwrap();
    let best = |v: &[&str]| {
        let b = basis(f4, &r, v);
        divisors
            .iter()
            .map(|g| {
                let img = phi_image(theta_code(g, &f).unwrap().code(), &b).unwrap();
                weight_profile(&img, &hamming(&img), &s()).unwrap().min_distance
            })
            .max()
            .unwrap()
    };
    assert_eq!(best(&["α^2x+1", "αx+1"]), 2);
    assert_eq!(best(&["1", "α^2x+1"]), 3);
}

#[test]
fn f4_dual_numbers_self_dual_images() {
    let r = builtin("f4x2").unwrap();
    let f4 = r.subring("F4").unwrap();
    let b = basis(f4, &r, &["α^2x+1", "αx+1"]);

    let c = code(&r, "sigma1", &["α^2x+1", "αx+α", "α^2x+α", "1"], 6, "1");
    let img = phi_image(c.code(), &b).unwrap();
    expect_rows(
        &img,
        f4,
        &r,
        &[
            "α α^2 0 α 1 α^2 1 0 0 0 0 0",
            "α^2 α α 0 α^2 1 0 1 0 0 0 0",
            "0 0 α α^2 α 1 0 α^2 1 0 0 0",
            "0 0 α^2 α 1 α α^2 0 0 1 0 0",
            "0 0 0 0 α α^2 0 α 1 α^2 1 0",
            "0 0 0 0 α^2 α α 0 α^2 1 0 1",
        ],
        &[],
    );
    let id = RingMap::identity(img.ring());
    assert!(is_self_dual(&img, &id, &s()).unwrap());
    assert_eq!(weight_profile(&img, &hamming(&img), &s()).unwrap().min_distance, 6);

    let c = code(&r, "sigma1", &["α^2x+α", "α^2", "α^2", "α^2x+α^2", "1"], 8, "1");
    let img = phi_image(c.code(), &b).unwrap();
    expect_rows(
        &img,
        f4,
        &r,
        &[
            "1 α^2 α^2 0 α^2 0 0 α^2 1 0 0 0 0 0 0 0",
            "α^2 1 0 α^2 0 α^2 α^2 0 0 1 0 0 0 0 0 0",
            "0 0 0 α^2 α 0 α 0 1 α^2 1 0 0 0 0 0",
            "0 0 α^2 0 0 α 0 α α^2 1 0 1 0 0 0 0",
            "0 0 0 0 1 α^2 α^2 0 α^2 0 0 α^2 1 0 0 0",
            "0 0 0 0 α^2 1 0 α^2 0 α^2 α^2 0 0 1 0 0",
            "0 0 0 0 0 0 0 α^2 α 0 α 0 1 α^2 1 0",
            "0 0 0 0 0 0 α^2 0 0 α 0 α α^2 1 0 1",
        ],
        &[],
    );
    assert!(is_self_dual(&img, &id, &s()).unwrap());
    assert_eq!(weight_profile(&img, &hamming(&img), &s()).unwrap().min_distance, 6);
}

#[test]
fn galois_ring_lee_distance() {
    let r = builtin("gr42").unwrap();
    let c = code(&r, "theta", &["3w", "w+1", "1"], 4, "-1");
    let id = RingMap::identity(&r.ring);
    assert!(is_self_dual(c.code(), &id, &s()).unwrap());
    let lee = WeightTable::lee(&r.ring, r.lee_basis.as_deref()).unwrap();
    assert_eq!(weight_profile(c.code(), &lee, &s()).unwrap().min_distance, 6);
    // Same value through the image over Z4 in the Lee basis; the basis
    // (1, ξ) only reaches 4.
    let z4 = SubringHandle::prime(&r.ring);
    let lee_at = |v: &[&str]| {
        let img = phi_image(c.code(), &basis(&z4, &r, v)).unwrap();
        let lee4 = WeightTable::lee(img.ring(), None).unwrap();
        weight_profile(&img, &lee4, &s()).unwrap().min_distance
    };
    assert_eq!(lee_at(&["ξ+1", "ξ+2"]), 6);
    assert_eq!(lee_at(&["1", "ξ"]), 4);
}

fn z4_image(g: &[&str], n: usize) -> (LoadedRing, SubringHandle, LinearCode) {
    let r = builtin("z4x2+2").unwrap();
    // ε = −1: the generators divide X^n + 1.
    let c = code(&r, "id", g, n, "3");
    assert!(is_self_dual(c.code(), &RingMap::identity(&r.ring), &s()).unwrap());
    let z4 = SubringHandle::prime(&r.ring);
    let img = phi_image(c.code(), &basis(&z4, &r, &["3x+1", "1"])).unwrap();
    (r, z4, img)
}

#[test]
fn z4_algebra_lee_images() {
    let (_, _, img) = z4_image(&["2x+3", "x", "1"], 4);
    let lee = WeightTable::lee(img.ring(), None).unwrap();
    assert_eq!(weight_profile(&img, &lee, &s()).unwrap().min_distance, 6);
    assert!(is_self_dual(&img, &RingMap::identity(img.ring()), &s()).unwrap());

    let (r, z4, img) = z4_image(&["2x+3", "2x+2", "3x+2", "2x+2", "1"], 8);
    expect_rows(
        &img,
        &z4,
        &r,
        &[
            "1 2 0 2 3 1 0 2 1 0 0 0 0 0 0 0",
            "2 1 2 0 1 1 2 0 0 1 0 0 0 0 0 0",
            "0 0 1 2 0 2 3 1 0 2 1 0 0 0 0 0",
            "0 0 2 1 2 0 1 1 2 0 0 1 0 0 0 0",
            "0 0 0 0 1 2 0 2 3 1 0 2 1 0 0 0",
            "0 0 0 0 2 1 2 0 1 1 2 0 0 1 0 0",
            "0 0 0 0 0 0 1 2 0 2 3 1 0 2 1 0",
            "0 0 0 0 0 0 2 1 2 0 1 1 2 0 0 1",
        ],
        &[],
    );
    let p = weight_profile(&img, &WeightTable::lee(img.ring(), None).unwrap(), &s()).unwrap();
    assert_eq!(p.min_distance, 8);
    assert_eq!(&p.distribution[..13], &[1, 0, 0, 0, 0, 0, 0, 0, 508, 0, 896, 0, 10752]);

    let (r, z4, img) = z4_image(&["3", "2", "x", "2", "1"], 8);
    expect_rows(
        &img,
        &z4,
        &r,
        &[
            "3 0 2 0 3 3 2 0 1 0 0 0 0 0 0 0",
            "0 3 0 2 3 1 0 2 0 1 0 0 0 0 0 0",
            "0 0 3 0 2 0 3 3 2 0 1 0 0 0 0 0",
            "0 0 0 3 0 2 3 1 0 2 0 1 0 0 0 0",
            "0 0 0 0 3 0 2 0 3 3 2 0 1 0 0 0",
            "0 0 0 0 0 3 0 2 3 1 0 2 0 1 0 0",
            "0 0 0 0 0 0 3 0 2 0 3 3 2 0 1 0",
            "0 0 0 0 0 0 0 3 0 2 3 1 0 2 0 1",
        ],
        &[],
    );
    let p = weight_profile(&img, &WeightTable::lee(img.ring(), None).unwrap(), &s()).unwrap();
    assert_eq!(p.min_distance, 8);
    assert_eq!(&p.distribution[..13], &[1, 0, 0, 0, 0, 0, 0, 0, 380, 0, 1920, 0, 7168]);
}

#[test]
fn f25_negacyclic_images() {
    let r = builtin("f25").unwrap();
    let frob = "frobenius";
    let c = code(&r, frob, &["α^16", "α", "α^2", "α^9", "1"], 8, "-1");
    let id = RingMap::identity(&r.ring);
    assert!(is_self_dual(c.code(), &id, &s()).unwrap());
    let f5 = SubringHandle::prime(&r.ring);
    let b = basis(&f5, &r, &["α^5", "α^7"]);
    let img = phi_image(c.code(), &b).unwrap();
    expect_rows(
        &img,
        &f5,
        &r,
        &[
            "4 3 2 1 0 1 2 3 1 0 0 0 0 0 0 0",
            "3 0 1 4 1 2 3 3 0 1 0 0 0 0 0 0",
            "0 0 0 2 4 4 2 4 3 2 1 0 0 0 0 0",
            "0 0 2 4 4 2 4 0 2 2 0 1 0 0 0 0",
            "0 0 0 0 4 3 2 1 0 1 2 3 1 0 0 0",
            "0 0 0 0 3 0 1 4 1 2 3 3 0 1 0 0",
            "0 0 0 0 0 0 0 2 4 4 2 4 3 2 1 0",
            "0 0 0 0 0 0 2 4 4 2 4 0 2 2 0 1",
        ],
        &[],
    );
    let id5 = RingMap::identity(img.ring());
    assert!(is_self_dual(&img, &id5, &s()).unwrap());
    let p = weight_profile(&img, &hamming(&img), &s()).unwrap();
    assert_eq!(p.min_distance, 7);
    assert_eq!(&p.distribution[7..10], &[448, 3360, 4992]);

    let c = code(&r, frob, &["3", "α^17", "α^16", "α^22", "α^11", "1"], 10, "-1");
    assert!(is_self_dual(c.code(), &id, &s()).unwrap());
    let img = phi_image(c.code(), &b).unwrap();
    let p = weight_profile(&img, &hamming(&img), &s()).unwrap();
    assert_eq!(p.min_distance, 8);
    assert_eq!(&p.distribution[8..11], &[1280, 3200, 24848]);
}

#[test]
fn f5_dual_numbers_negacyclic_image() {
    let r = builtin("f5x2").unwrap();
    let c = code(&r, "gamma", &["2", "2x+2", "1", "3", "4x+4", "1"], 10, "-1");
    assert!(is_self_dual(c.code(), &RingMap::identity(&r.ring), &s()).unwrap());
    let f5 = SubringHandle::prime(&r.ring);
    let img = phi_image(c.code(), &basis(&f5, &r, &["x+2", "1"])).unwrap();
    assert!(is_self_dual(&img, &RingMap::identity(img.ring()), &s()).unwrap());
    let p = weight_profile(&img, &hamming(&img), &s()).unwrap();
    assert_eq!(p.min_distance, 8);
    assert_eq!(&p.distribution[8..11], &[1380, 2880, 24704]);
    assert_eq!(min_distance_above(&img, &hamming(&img), 8, &s()).unwrap(), None);
    assert_eq!(min_distance_above(&img, &hamming(&img), 7, &s()).unwrap(), Some(8));
}
