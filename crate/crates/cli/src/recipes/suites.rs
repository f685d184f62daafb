//! Checks of the general statements over computed and sampled instances.
//! Each row reports a violation count, so the expected value is always 0.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcode_core::bases::{
    alfaro_condition, classify_basis, gram_matrix, hermitian_form, is_symmetric, BasisClass, BasisSpace, ModuleBasis,
};
use skewcode_core::codes::{
    dual_code, dual_code_brute, phi_image, same_code, theta_code, theta_shift, verify_duality_preservation, LinearCode,
};
use skewcode_core::config::{builtin, LoadedRing};
use skewcode_core::morphisms::{
    conjugate_involution, enumerate_automorphisms, enumerate_involutions, subgroup_generated, MapGroup, RingMap,
};
use skewcode_core::skew::{count_self_dual_generators, enumerate_monic_right_divisors, SkewRing};
use skewcode_core::par::Search;
use skewcode_core::{Elem, FiniteRing, SubringHandle};

use super::Checks;
use crate::ops::{set_labels, yes, Opts};
use crate::table::ResultTable;
use crate::CliError;

/// Rings and lengths whose self-dual θ-codes feed the duality check.
const SELF_DUAL_CASES: [(&str, &[usize]); 8] = [
    ("f2xy", &[2, 4, 6, 8]),
    ("f4x2", &[2, 4, 6, 8]),
    ("f2xy-b", &[2, 4, 6, 8]),
    ("f2x4", &[2, 4, 6, 8]),
    ("f2x2", &[4, 8, 12, 16, 20, 24]),
    ("f2x2x", &[4, 8, 12, 16, 20, 24]),
    ("gr42", &[4]),
    ("z4x2+2", &[4]),
];

fn violations(n: usize) -> String {
    format!("{n} violations")
}

fn random_word(rng: &mut ChaCha8Rng, ring: &FiniteRing, n: usize) -> Vec<Elem> {
    (0..n).map(|_| rng.gen_range(0..ring.order()) as Elem).collect()
}

fn random_code(rng: &mut ChaCha8Rng, ring: &Arc<FiniteRing>, n: usize) -> Result<LinearCode, CliError> {
    let k = rng.gen_range(0..=3);
    let gens = (0..k).map(|_| random_word(rng, ring, n)).collect();
    Ok(LinearCode::new(ring, n, gens)?)
}

/// Self-dual θ-codes of length `n` over every θ, moduli `X^n − ε`.
fn self_dual_codes(r: &LoadedRing, n: usize, search: &Search) -> Result<Vec<LinearCode>, CliError> {
    let mut out = Vec::new();
    for theta in enumerate_automorphisms(&r.ring).members() {
        let ctx = SkewRing::new(theta)?;
        let gens = count_self_dual_generators(&ctx, n, search)?;
        for e in &gens.per_epsilon {
            let f = ctx.x_pow_minus(n, e.epsilon);
            for (_, g) in &e.pairs {
                out.push(theta_code(g, &f)?.code().clone());
            }
        }
    }
    Ok(out)
}

pub(crate) fn theorem_suite(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("theorem-suite", opts);
    c.seed(opts.seed);
    let search = opts.search();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    // Hermitian form against the block form of the Gram matrix.
    let (mut bad, mut cases) = (0, 0);
    for key in ["f2x2", "f4x2", "gr42", "m2f2", "f2xy", "z4x2+2"] {
        let r = builtin(key)?;
        c.ring(key);
        let space = BasisSpace::new(&SubringHandle::prime(&r.ring))?;
        let all = space.all(&search)?;
        for sigma in enumerate_involutions(&r.ring) {
            for v in all.choose_multiple(&mut rng, 8) {
                let b = space.basis(v)?;
                let gram = gram_matrix(&b, &sigma)?;
                for _ in 0..8 {
                    let n = rng.gen_range(1..=3);
                    let (x, y) = (random_word(&mut rng, &r.ring, n), random_word(&mut rng, &r.ring, n));
                    cases += 1;
                    if gram.form_via_blocks(&b, &sigma, &x, &y) != hermitian_form(&sigma, &x, &y)? {
                        bad += 1;
                    }
                }
            }
        }
    }
    c.check_with("hermitian form via Gram blocks", violations(0), violations(bad), format!("{cases} sampled pairs"));

    // Duality preservation over self-dual θ-codes and qualifying bases.
    let (mut met, mut unmet, mut bad, mut wood_bad, mut codes_seen) = (0, 0, 0, 0, 0);
    for (key, lengths) in SELF_DUAL_CASES {
        let r = builtin(key)?;
        c.ring(key);
        let mut codes = Vec::new();
        for &n in lengths {
            codes.extend(self_dual_codes(&r, n, &search)?);
        }
        codes_seen += codes.len();
        let aut = enumerate_automorphisms(&r.ring);
        let id = RingMap::identity(&r.ring);
        let space = BasisSpace::new(&SubringHandle::prime(&r.ring))?;
        let mut picks = space.symmetric(&search)?;
        for v in space.by_class(&search, BasisClass::PseudoSelfDual, &id, &aut)? {
            if !picks.contains(&v) {
                picks.push(v);
            }
        }
        for v in &picks {
            let b = space.basis(v)?;
            for code in &codes {
                let rep = verify_duality_preservation(code, &b, &id, &aut, &search)?;
                if rep.hypotheses_met() {
                    met += 1;
                } else {
                    unmet += 1;
                }
                bad += usize::from(!rep.consistent());
                wood_bad += usize::from(r.ring.is_frobenius() && !rep.wood);
            }
        }
    }
    c.check_with(
        "Phi(C^perp) = Phi(C)^perp where hypotheses hold",
        violations(0),
        violations(bad),
        format!("{codes_seen} codes, {met} instances meeting the hypotheses, {unmet} not"),
    );
    c.check_with("|C|·|C^perp| = |A|^n on Frobenius rings", violations(0), violations(wood_bad), format!("{} instances", met + unmet));

    // Without a qualifying basis the conclusion can fail.
    let r = builtin("f2x2")?;
    let one_x = r.elems(&["1", "x"]);
    let b = ModuleBasis::new(&SubringHandle::prime(&r.ring), &one_x)?;
    let code = LinearCode::new(&r.ring, 2, vec![one_x.clone()])?;
    let rep = verify_duality_preservation(&code, &b, &RingMap::identity(&r.ring), &enumerate_automorphisms(&r.ring), &search)?;
    let failed: Vec<String> = rep.failed.iter().map(|h| format!("{h:?}")).collect();
    c.check_with(
        format!("f2x2 basis {} preserves duality", set_labels(&r, &one_x)),
        "no",
        rep.preserved.map_or("n/a".into(), yes),
        format!("unmet: {}", failed.join(", ")),
    );

    // The truncated-polynomial criterion against symmetry, every basis.
    for (key, sub, expected_sym) in [("f2x2", None, 1), ("f2x3", None, 4), ("f4x2", Some("F4"), 18), ("f3x2", None, 0)] {
        let r = builtin(key)?;
        c.ring(key);
        let s = match sub {
            Some(name) => r.subring(name).expect("configured subring").clone(),
            None => SubringHandle::prime(&r.ring),
        };
        let space = BasisSpace::new(&s)?;
        let (mut bad, mut sym) = (0, 0);
        let all = space.all(&search)?;
        for v in &all {
            let b = space.basis(v)?;
            let s = is_symmetric(&b);
            sym += usize::from(s);
            bad += usize::from(alfaro_condition(&b)? != s);
        }
        let label = sub.unwrap_or("prime subring");
        c.check_with(
            format!("{key} over {label}: anti-diagonal criterion = symmetric"),
            violations(0),
            violations(bad),
            format!("{} bases", all.len()),
        );
        c.check(format!("{key} over {label} symmetric"), expected_sym, sym);
    }

    // Pseudo-self-duality carried along by a conjugating involution.
    let m = builtin("m2f2")?;
    c.ring("m2f2");
    let theta_h = subgroup_generated(&m.ring, &[m.map("theta").expect("m2f2 theta").clone()])?;
    let setups: [(&str, SubringHandle, MapGroup); 2] = [
        ("R, H = <theta>", m.subring("R").expect("m2f2 R").clone(), theta_h),
        ("F2, H = Aut", SubringHandle::prime(&m.ring), enumerate_automorphisms(&m.ring)),
    ];
    let invs = enumerate_involutions(&m.ring);
    for (name, sub, h) in setups {
        let space = BasisSpace::new(&sub)?;
        let (mut bad, mut moved) = (0, 0);
        for sigma in &invs {
            let Ok(found) = space.by_class(&search, BasisClass::PseudoSelfDual, sigma, &h) else {
                continue;
            };
            for phi in invs.iter().filter(|p| p.preserves(&sub)) {
                let target = conjugate_involution(sigma, phi)?;
                let hat_h = h.conjugate_by(phi)?;
                for v in &found {
                    let hat = space.basis(v)?.transform(sigma, phi)?;
                    moved += 1;
                    let ok = classify_basis(&hat, &target, &hat_h).is_ok_and(|k| k.pseudo_self_dual);
                    bad += usize::from(!ok);
                }
            }
        }
        c.check_with(
            format!("m2f2 over {name}: transformed bases stay pseudo-self-dual"),
            violations(0),
            violations(bad),
            format!("{moved} transformed bases"),
        );
    }

    // Wood's law needs the Frobenius property.
    let u = builtin("f2uv")?;
    c.ring("f2uv");
    let code = LinearCode::new(&u.ring, 1, vec![vec![u.elem("u")], vec![u.elem("v")]])?;
    let dual = dual_code(&code, &RingMap::identity(&u.ring), &search)?;
    let (a, b) = (code.size(&search)?, dual.size(&search)?);
    let amb = code.ambient();
    let rel = if a.times(b) == amb { "=" } else if a.times(b).exponent > amb.exponent { ">" } else { "<" };
    c.check_with(
        "f2uv code <u, v>: |C|·|C^perp| vs |A|",
        "4·4 = 16 > 8",
        format!("{a}·{b} = {} {rel} {amb}", a.times(b)),
        format!("Frobenius: {}", yes(u.ring.is_frobenius())),
    );
    Ok(c.done())
}

const SAMPLE_RINGS: [&str; 8] = ["f2x2", "z4", "f4x2", "gr42", "z4x2+2", "f2xy", "f9", "f2uv"];
const SAMPLES: usize = 24;

pub(crate) fn property_sample(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("property-sample", opts);
    c.seed(opts.seed);
    let search = opts.search();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let (mut routes, mut wood, mut double, mut phi, mut frob) = (0, 0, 0, 0, 0);
    for key in SAMPLE_RINGS {
        let r = builtin(key)?;
        c.ring(key);
        let sigmas = enumerate_involutions(&r.ring);
        let space = BasisSpace::new(&SubringHandle::prime(&r.ring))?;
        let all = space.all(&search)?;
        for _ in 0..SAMPLES {
            let n = rng.gen_range(1..=3);
            let code = random_code(&mut rng, &r.ring, n)?;
            let sigma = sigmas.choose(&mut rng).expect("identity is an involution");
            let fast = dual_code(&code, sigma, &search)?;
            routes += usize::from(!same_code(&fast, &dual_code_brute(&code, sigma, &search)?, &search)?);
            if r.ring.is_frobenius() {
                frob += 1;
                wood += usize::from(code.size(&search)?.times(fast.size(&search)?) != code.ambient());
                double += usize::from(!same_code(&dual_code(&fast, sigma, &search)?, &code, &search)?);
            }
            let b = space.basis(all.choose(&mut rng).expect("a basis exists"))?;
            phi += usize::from(phi_image(&code, &b)?.size(&search)? != code.size(&search)?);
        }
    }
    let total = SAMPLES * SAMPLE_RINGS.len();
    c.check_with("dual_code = brute-force dual", violations(0), violations(routes), format!("{total} random codes"));
    c.check_with("|C|·|C^perp| = |A|^n", violations(0), violations(wood), format!("{frob} codes over Frobenius rings"));
    c.check_with("(C^perp)^perp = C", violations(0), violations(double), format!("{frob} codes over Frobenius rings"));
    c.check_with("|Phi(C)| = |C|", violations(0), violations(phi), format!("{total} random codes and bases"));

    let (mut bad, mut words_seen, mut codes) = (0, 0, 0);
    for key in ["f2x2", "gr42", "z4x2+2", "f2xy", "f4x2"] {
        let r = builtin(key)?;
        let aut = enumerate_automorphisms(&r.ring);
        for _ in 0..4 {
            let theta = aut.members().choose(&mut rng).expect("identity");
            let n = theta.order() * (4 / theta.order()).max(1);
            let ctx = SkewRing::new(theta)?;
            let divs = enumerate_monic_right_divisors(&ctx, n, n / 2, r.ring.one(), &search)?;
            let Some(g) = divs.choose(&mut rng) else { continue };
            let code = theta_code(g, &ctx.x_pow_minus(n, r.ring.one()))?;
            let words = code.code().codewords(&search)?;
            codes += 1;
            words_seen += words.len();
            bad += words.iter().filter(|w| words.binary_search(&theta_shift(theta, w)).is_err()).count();
        }
    }
    c.check_with(
        "theta-shift closure of theta-cyclic codes",
        violations(0),
        violations(bad),
        format!("{codes} codes, {words_seen} codewords"),
    );
    Ok(c.done())
}
