//! Worked code examples: generator matrices, images, distances.

use skewcode_core::bases::ModuleBasis;
use skewcode_core::codes::{
    classify_binary_type, is_self_dual, phi_image, theta_code, weight_profile, LinearCode, ThetaCode, WeightTable,
};
use skewcode_core::config::{builtin, LoadedRing};
use skewcode_core::morphisms::{enumerate_automorphisms, RingMap};
use skewcode_core::skew::{count_self_dual_generators, enumerate_monic_right_divisors, SkewRing};
use skewcode_core::{Elem, SubringHandle};

use super::{compare_rows, expected_shape, Checks};
use crate::ops::{self, Opts};
use crate::table::ResultTable;
use crate::CliError;

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn code(r: &LoadedRing, theta: &str, g: &[&str], n: usize, a: &str) -> Result<ThetaCode, CliError> {
    ops::code(r, theta, &strings(g), n, a)
}

fn basis(r: &LoadedRing, sub: &SubringHandle, v: &[&str]) -> Result<ModuleBasis, CliError> {
    ops::basis(r, sub, &strings(v))
}

fn self_dual(code: &LinearCode, opts: &Opts) -> Result<&'static str, CliError> {
    let id = RingMap::identity(code.ring());
    Ok(if is_self_dual(code, &id, &opts.search())? { "yes" } else { "no" })
}

/// Matrix check plus the grid itself.
fn matrix(c: &mut Checks, case: &str, code: &LinearCode, expected: &[&str]) {
    matrix_rows(c, case, ops::grid(code), expected);
}

fn matrix_rows(c: &mut Checks, case: &str, rows: Vec<Vec<String>>, expected: &[&str]) {
    c.check(format!("{case} matrix"), expected_shape(expected), compare_rows(&rows, expected));
    c.matrix(case, rows);
}

fn hamming(code: &LinearCode, opts: &Opts) -> Result<skewcode_core::codes::WeightProfile, CliError> {
    Ok(weight_profile(code, &WeightTable::hamming(code.ring()), &opts.search())?)
}

fn lee(code: &LinearCode, lee_basis: Option<&[Elem]>, opts: &Opts) -> Result<skewcode_core::codes::WeightProfile, CliError> {
    Ok(weight_profile(code, &WeightTable::lee(code.ring(), lee_basis)?, &opts.search())?)
}

pub(crate) fn dual_numbers(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-dual-numbers", opts);
    let r = builtin("f2x2")?;
    c.ring("f2x2");
    let g = code(&r, "id", &["1", "x", "1"], 4, "1")?;
    matrix(&mut c, "code over F2[x]/(x^2)", g.code(), &["1 x 1 0", "0 1 x 1"]);
    c.check("code self-dual", "yes", self_dual(g.code(), opts)?);
    let f2 = SubringHandle::prime(&r.ring);

    let img = phi_image(g.code(), &basis(&r, &f2, &["1", "x"])?)?;
    matrix(
        &mut c,
        "image in basis (1, x)",
        &img,
        &["1 0 0 1 1 0 0 0", "0 1 0 0 0 1 0 0", "0 0 1 0 0 1 1 0", "0 0 0 1 0 0 0 1"],
    );
    c.check("image (1, x) self-dual", "no", self_dual(&img, opts)?);

    let img = phi_image(g.code(), &basis(&r, &f2, &["1", "x+1"])?)?;
    matrix(
        &mut c,
        "image in basis (1, x+1)",
        &img,
        &["1 0 1 1 1 0 0 0", "0 1 1 1 0 1 0 0", "0 0 1 0 1 1 1 0", "0 0 0 1 1 1 0 1"],
    );
    c.check("image (1, x+1) self-dual", "yes", self_dual(&img, opts)?);
    let p = hamming(&img, opts)?;
    let t = classify_binary_type(&img, &opts.search())?;
    c.check("image (1, x+1) parameters", "[8, 4, 4] type II", format!("{} type {t}", params(&img, p.min_distance)));
    c.check("image (1, x+1) enumerator", "1+14z^4+1z^8", p.enumerator(6));
    Ok(c.done())
}

fn relabel(code: &LinearCode, f: impl Fn(Elem) -> String) -> Vec<Vec<String>> {
    code.gens().iter().map(|row| row.iter().map(|&e| f(e)).collect()).collect()
}

/// Entries written with the ring's configured aliases where one exists.
fn aliased(code: &LinearCode) -> Vec<Vec<String>> {
    let ring = code.ring();
    relabel(code, |e| {
        ring.names()
            .iter()
            .find(|(_, v)| *v == e)
            .map_or_else(|| ring.label(e).to_string(), |(n, _)| n.clone())
    })
}

/// Entries of a code over a prime ring written as integers `k` with
/// `e = k·1`.
fn residues(code: &LinearCode) -> Vec<Vec<String>> {
    let ring = code.ring();
    let mut k = vec![0usize; ring.order()];
    let mut e = ring.zero();
    for i in 0..ring.order() {
        k[e as usize] = i;
        e = ring.add(e, ring.one());
    }
    relabel(code, |e| k[e as usize].to_string())
}

/// `[n, k, d]`.
fn params(code: &LinearCode, d: u32) -> String {
    format!("[{}, {}, {d}]", code.len(), code.gens().len())
}

pub(crate) fn m2f2_map(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-m2f2-map", opts);
    let r = builtin("m2f2")?;
    c.ring("m2f2");
    let g = code(&r, "theta_code", &["u4", "u1", "I"], 4, "I")?;
    matrix_rows(&mut c, "code over M2(F2)", aliased(g.code()), &["u4 u1 I z", "z u1 u4 I"]);

    let f2 = SubringHandle::prime(&r.ring);
    let img = phi_image(g.code(), &basis(&r, &f2, &["e1", "e2", "e3", "e4"])?)?;
    let bits = relabel(&img, |e| if e == img.ring().zero() { "0".into() } else { "1".into() });
    matrix_rows(
        &mut c,
        "image over F2 in basis (e1, e2, e3, e4)",
        bits,
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
    );
    let d = hamming(&img, opts)?.min_distance;
    c.check("image over F2 parameters", "[16, 8, 4]", params(&img, d));

    let f4 = ops::subring(&r, "R")?;
    let img = phi_image(g.code(), &basis(&r, &f4, &["e1", "e4"])?)?;
    // Entries of the F4 image are written in M2(F2) labels: u4, u1, I, z
    // for α, α², 1, 0.
    matrix_rows(
        &mut c,
        "image over F4 in basis (e1, e4)",
        aliased(&img),
        &["I u4 z u4 I z z z", "u1 z u1 I z I z z", "z z z u4 I u4 I z", "z z u1 I u1 z z I"],
    );
    let d = hamming(&img, opts)?.min_distance;
    c.check("image over F4 parameters", "[8, 4, 4]", params(&img, d));
    Ok(c.done())
}

pub(crate) fn f4x2_images(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-f4x2-images", opts);
    let r = builtin("f4x2")?;
    c.ring("f4x2");
    let f4 = ops::subring(&r, "F4")?;

    let g = code(&r, "sigma3", &["x+1", "1"], 2, "1")?;
    let img = phi_image(g.code(), &basis(&r, &f4, &["1", "α^2x+1"])?)?;
    matrix(&mut c, "length 2 image in basis (1, α^2x+1)", &img, &["α^2 α 1 0", "α α^2 0 1"]);
    c.check("length 2 image distance", 3, hamming(&img, opts)?.min_distance);

    let ctx = SkewRing::new(r.map("sigma3").expect("f4x2 sigma3"))?;
    let f = ctx.x_pow_minus(2, r.ring.one());
    let divisors = enumerate_monic_right_divisors(&ctx, 2, 1, r.ring.one(), &opts.search())?;
    for (labels, expected) in [(["α^2x+1", "αx+1"], 2), (["1", "α^2x+1"], 3)] {
        let b = basis(&r, &f4, &labels)?;
        let mut best = 0;
        for d in &divisors {
            let img = phi_image(theta_code(d, &f)?.code(), &b)?;
            best = best.max(hamming(&img, opts)?.min_distance);
        }
        c.check_with(
            format!("best length 2 image in basis ({})", labels.join(", ")),
            expected,
            best,
            format!("{} divisors", divisors.len()),
        );
    }

    let b = basis(&r, &f4, &["α^2x+1", "αx+1"])?;
    let g = code(&r, "sigma1", &["α^2x+1", "αx+α", "α^2x+α", "1"], 6, "1")?;
    let img = phi_image(g.code(), &b)?;
    matrix(
        &mut c,
        "length 6 image",
        &img,
        &[
            "α α^2 0 α 1 α^2 1 0 0 0 0 0",
            "α^2 α α 0 α^2 1 0 1 0 0 0 0",
            "0 0 α α^2 α 1 0 α^2 1 0 0 0",
            "0 0 α^2 α 1 α α^2 0 0 1 0 0",
            "0 0 0 0 α α^2 0 α 1 α^2 1 0",
            "0 0 0 0 α^2 α α 0 α^2 1 0 1",
        ],
    );
    c.check("length 6 image self-dual", "yes", self_dual(&img, opts)?);
    c.check("length 6 image parameters", "[12, 6, 6]", params(&img, hamming(&img, opts)?.min_distance));

    let g = code(&r, "sigma1", &["α^2x+α", "α^2", "α^2", "α^2x+α^2", "1"], 8, "1")?;
    let img = phi_image(g.code(), &b)?;
    matrix(
        &mut c,
        "length 8 image",
        &img,
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
    );
    c.check("length 8 image self-dual", "yes", self_dual(&img, opts)?);
    c.check("length 8 image parameters", "[16, 8, 6]", params(&img, hamming(&img, opts)?.min_distance));
    Ok(c.done())
}

pub(crate) fn gr42_lee(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-gr42-lee", opts);
    let r = builtin("gr42")?;
    c.ring("gr42");
    let lee_basis = r.lee_basis.as_deref();
    let search = opts.search();

    let mut per_theta = Vec::new();
    for th in enumerate_automorphisms(&r.ring).members() {
        per_theta.push(count_self_dual_generators(&SkewRing::new(th)?, 4, &search)?.count());
    }
    c.check_with("n=4 self-dual generators, theta != id", 8, per_theta[1..].iter().sum::<usize>(), "all with epsilon = -1");

    let g = code(&r, "theta", &["3w", "w+1", "1"], 4, "-1")?;
    c.check("n=4 code self-dual", "yes", self_dual(g.code(), opts)?);
    c.matrix("n=4 code", ops::grid(g.code()));
    c.check("n=4 code Lee distance", 6, lee(g.code(), lee_basis, opts)?.min_distance);
    let z4 = SubringHandle::prime(&r.ring);
    for (labels, expected) in [(["ξ+1", "ξ+2"], 6), (["1", "ξ"], 4)] {
        let img = phi_image(g.code(), &basis(&r, &z4, &labels)?)?;
        c.check(
            format!("Z4 image in basis ({}) Lee distance", labels.join(", ")),
            expected,
            lee(&img, None, opts)?.min_distance,
        );
    }

    // The configurations over Z4 allow ε = ±1 for both θ.
    let mut gens = 0;
    let mut best: Option<u32> = None;
    for th in enumerate_automorphisms(&r.ring).members() {
        let ctx = SkewRing::new(th)?;
        let found = count_self_dual_generators(&ctx, 10, &search)?;
        gens += found.count();
        for e in &found.per_epsilon {
            let f = ctx.x_pow_minus(10, e.epsilon);
            for (_, g) in &e.pairs {
                let d = lee(theta_code(g, &f)?.code(), lee_basis, opts)?.min_distance;
                best = best.max(Some(d));
            }
        }
    }
    c.check("n=10 self-dual generators", 192, gens);
    c.check("n=10 best Lee distance", 10, best.map_or("none".to_string(), |d| d.to_string()));
    Ok(c.done())
}

fn z4_image(r: &LoadedRing, g: &[&str], n: usize) -> Result<(ThetaCode, LinearCode), CliError> {
    // ε = −1: the generators divide X^n + 1.
    let code = code(r, "id", g, n, "3")?;
    let z4 = SubringHandle::prime(&r.ring);
    let img = phi_image(code.code(), &basis(r, &z4, &["3x+1", "1"])?)?;
    Ok((code, img))
}

pub(crate) fn z4_lee(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-z4-lee", opts);
    let r = builtin("z4x2+2")?;
    c.ring("z4x2+2");

    let (g, img) = z4_image(&r, &["2x+3", "x", "1"], 4)?;
    c.check("n=4 code self-dual", "yes", self_dual(g.code(), opts)?);
    c.check("n=4 image self-dual", "yes", self_dual(&img, opts)?);
    c.check("n=4 image Lee distance", 6, lee(&img, None, opts)?.min_distance);

    let cases: [(&str, &[&str], &[&str], &str); 2] = [
        (
            "first n=8 image",
            &["2x+3", "2x+2", "3x+2", "2x+2", "1"],
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
            "1+508z^8+896z^10+10752z^12+…",
        ),
        (
            "second n=8 image",
            &["3", "2", "x", "2", "1"],
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
            "1+380z^8+1920z^10+7168z^12+…",
        ),
    ];
    for (case, g, rows, enumerator) in cases {
        let (code, img) = z4_image(&r, g, 8)?;
        c.check(format!("{case} code self-dual"), "yes", self_dual(code.code(), opts)?);
        matrix(&mut c, case, &img, rows);
        let p = lee(&img, None, opts)?;
        c.check(format!("{case} Lee distance"), 8, p.min_distance);
        c.check(format!("{case} Lee enumerator"), enumerator, p.enumerator(4));
    }
    Ok(c.done())
}

pub(crate) fn f25_negacyclic(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-f25-negacyclic", opts);
    let r = builtin("f25")?;
    c.ring("f25");
    let f5 = SubringHandle::prime(&r.ring);
    let b = basis(&r, &f5, &["α^5", "α^7"])?;

    let g = code(&r, "frobenius", &["α^16", "α", "α^2", "α^9", "1"], 8, "-1")?;
    c.check("n=8 code self-dual", "yes", self_dual(g.code(), opts)?);
    let img = phi_image(g.code(), &b)?;
    matrix_rows(
        &mut c,
        "n=8 image over F5",
        residues(&img),
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
    );
    c.check("n=8 image self-dual", "yes", self_dual(&img, opts)?);
    let p = hamming(&img, opts)?;
    c.check("n=8 image parameters", "[16, 8, 7]", params(&img, p.min_distance));
    c.check("n=8 image enumerator", "1+448z^7+3360z^8+4992z^9+…", p.enumerator(4));

    let g = code(&r, "frobenius", &["3", "α^17", "α^16", "α^22", "α^11", "1"], 10, "-1")?;
    c.check("n=10 code self-dual", "yes", self_dual(g.code(), opts)?);
    let img = phi_image(g.code(), &b)?;
    let p = hamming(&img, opts)?;
    c.check("n=10 image parameters", "[20, 10, 8]", params(&img, p.min_distance));
    c.check("n=10 image enumerator", "1+1280z^8+3200z^9+24848z^10+…", p.enumerator(4));
    c.matrix("n=10 image over F5", residues(&img));
    Ok(c.done())
}

pub(crate) fn f5_negacyclic(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-f5-negacyclic", opts);
    let r = builtin("f5x2")?;
    c.ring("f5x2");
    let g = code(&r, "gamma", &["2", "2x+2", "1", "3", "4x+4", "1"], 10, "-1")?;
    c.check("n=10 code self-dual", "yes", self_dual(g.code(), opts)?);
    let f5 = SubringHandle::prime(&r.ring);
    let img = phi_image(g.code(), &basis(&r, &f5, &["x+2", "1"])?)?;
    c.check("n=10 image self-dual", "yes", self_dual(&img, opts)?);
    let p = hamming(&img, opts)?;
    c.check("n=10 image parameters", "[20, 10, 8]", params(&img, p.min_distance));
    c.check("n=10 image enumerator", "1+1380z^8+2880z^9+24704z^10+…", p.enumerator(4));
    c.matrix("n=10 image over F5", ops::grid(&img));
    Ok(c.done())
}
