use super::*;
use crate::config::{builtin, LoadedRing};
use crate::morphisms::enumerate_automorphisms;
use proptest::prelude::*;

fn ctx(m: &LoadedRing, map: &str) -> Arc<SkewRing> {
    SkewRing::new(m.map(map).unwrap()).unwrap()
}

fn id_ctx(m: &LoadedRing) -> Arc<SkewRing> {
    SkewRing::new(&RingMap::identity(&m.ring)).unwrap()
}

fn poly(c: &Arc<SkewRing>, labels: &[&str]) -> SkewPoly {
    c.parse(labels).unwrap()
}

// Schoolbook product over a commutative ring, ignoring θ.
fn plain_mul(r: &FiniteRing, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(x, y));
        }
    }
    while out.last() == Some(&r.zero()) {
        out.pop();
    }
    out
}

#[test]
fn multiplication_basics() {
    let m = builtin("f4x2").unwrap();
    let c = ctx(&m, "sigma1");
    let f = poly(&c, &["x", "α", "1"]);
    assert_eq!(f.mul(&c.constant(m.elem("1"))).unwrap(), f);
    let x1 = poly(&c, &["1", "1"]);
    assert_eq!(x1.mul(&x1).unwrap(), c.x_pow_minus(2, m.elem("1")));
    // X·a = θ(a)X
    let xa = c.monomial(m.elem("1"), 1).mul(&c.constant(m.elem("α"))).unwrap();
    assert_eq!(xa, c.monomial(m.elem("α^2"), 1));
    assert_eq!(c.zero().degree(), None);
    assert_eq!(format!("{f}"), "X^2 + αX + x");
}

#[test]
fn m2f2_decomposition() {
    let m = builtin("m2f2").unwrap();
    let c = ctx(&m, "theta_code");
    let g = poly(&c, &["[[1,1],[1,0]]", "[[0,1],[1,1]]", "I"]);
    let q = poly(&c, &["u1", "u1", "I"]);
    let f = c.x_pow_minus(4, m.elem("I"));
    assert_eq!(q.mul(&g).unwrap(), f);
    let (q2, r) = f.right_divmod(&g).unwrap();
    assert_eq!((q2, r.is_zero()), (q, true));
    let divs = enumerate_monic_right_divisors(&c, 4, 2, m.elem("I"), &Search::default()).unwrap();
    assert!(divs.contains(&g));
}

#[test]
fn f4x2_linear_divisors() {
    let m = builtin("f4x2").unwrap();
    let c = ctx(&m, "sigma3");
    let f = c.x_pow_minus(2, m.elem("1"));
    assert!(poly(&c, &["x+1", "1"]).right_divides(&f).unwrap());
    let divs = enumerate_monic_right_divisors(&c, 2, 1, m.elem("1"), &Search::default()).unwrap();
    let mut got: Vec<String> = divs.iter().map(|g| g.labels()[0].clone()).collect();
    got.sort();
    let mut want: Vec<String> = ["α^2", "x+1", "1", "αx+α", "α^2x+α^2", "α"]
        .iter()
        .map(|s| m.ring.label(m.elem(s)).to_string())
        .collect();
    want.sort();
    assert_eq!(got, want);
    let id = id_ctx(&m);
    assert_eq!(enumerate_monic_right_divisors(&id, 2, 1, m.elem("1"), &Search::default()).unwrap().len(), 4);
}

#[test]
fn m2f2_degree_two_divisors_of_x4_minus_1() {
    let m = builtin("m2f2").unwrap();
    let aut = enumerate_automorphisms(&m.ring);
    let one = m.elem("I");
    let mut summed = 0;
    let mut distinct: Vec<Vec<Elem>> = Vec::new();
    let mut id_count = 0;
    for th in aut.members() {
        let c = SkewRing::new(th).unwrap();
        let divs = enumerate_monic_right_divisors(&c, 4, 2, one, &Search::default()).unwrap();
        if th.is_identity() {
            id_count = divs.len();
        } else {
            summed += divs.len();
        }
        distinct.extend(divs.iter().map(|g| g.coeffs().to_vec()));
    }
    distinct.sort();
    distinct.dedup();
    assert_eq!((id_count, summed), (16, 50));
    assert_eq!(id_count + summed, 66);
    assert!(distinct.len() <= 66);
}

#[test]
fn division_rejects_non_unit_leads() {
    let m = builtin("f2x2").unwrap();
    let c = id_ctx(&m);
    let g = poly(&c, &["1", "x"]);
    assert_eq!(c.x_pow_minus(4, m.elem("1")).right_divmod(&g), Err(SkewError::LeadingCoeffNotInvertible));
    assert_eq!(
        enumerate_monic_right_divisors(&c, 2, 3, m.elem("1"), &Search::default()),
        Err(SkewError::DegreeTooLarge { degree: 3, n: 2 })
    );
    let other = builtin("f4x2").unwrap();
    assert_eq!(g.mul(&id_ctx(&other).constant(0)), Err(SkewError::MixedRings));
    let th = ctx(&other, "sigma1");
    let a = id_ctx(&other).constant(other.elem("1"));
    assert_eq!(a.add(&th.constant(other.elem("1"))), Err(SkewError::MixedTheta));
}

#[test]
fn reciprocals() {
    let m = builtin("gr42").unwrap();
    let c = ctx(&m, "theta");
    let h = poly(&c, &["ξ", "1"]);
    assert_eq!(h.skew_reciprocal().unwrap(), poly(&c, &["1", "3ξ+3"]));
    let one = poly(&c, &["1", "1"]);
    assert_eq!(one.skew_reciprocal().unwrap(), one);
    assert_eq!(one.left_monic_skew_reciprocal().unwrap(), one);
    assert_eq!(poly(&c, &["2", "1"]).left_monic_skew_reciprocal(), Err(SkewError::ConstantTermNotUnit));

    let d = builtin("f2x2").unwrap();
    let id = id_ctx(&d);
    let g = poly(&id, &["1", "x", "1"]);
    assert_eq!(g.skew_reciprocal().unwrap(), g);

    let mm = builtin("m2f2").unwrap();
    let nc = ctx(&mm, "theta_code");
    assert_eq!(nc.constant(mm.elem("I")).skew_reciprocal(), Err(SkewError::NoncommutativeRing));
}

fn monics(c: &Arc<SkewRing>, k: usize) -> Vec<SkewPoly> {
    let q = c.ring().order();
    let mut out = Vec::new();
    let mut digits = vec![0usize; k];
    loop {
        let mut co: Vec<Elem> = digits.iter().map(|&d| d as Elem).collect();
        co.push(c.ring().one());
        out.push(c.poly(co));
        if !par::advance(&mut digits, q) {
            break;
        }
    }
    out
}

#[test]
fn natural_preimage_is_unique() {
    let m = builtin("f2x2").unwrap();
    let c = id_ctx(&m);
    let target = poly(&c, &["1", "x", "1"]);
    let pre: Vec<SkewPoly> = monics(&c, 2)
        .into_iter()
        .filter(|h| h.left_monic_skew_reciprocal().ok().as_ref() == Some(&target))
        .collect();
    assert_eq!(pre.len(), 1);
    assert!(is_self_dual_generator(&pre[0], 2, m.elem("1")).unwrap());
    assert!(matches!(
        is_self_dual_generator(&pre[0], 3, m.elem("1")),
        Err(SkewError::WrongDegree { expected: 3, .. })
    ));
}

#[test]
fn gr42_self_dual_generators_of_length_4() {
    let m = builtin("gr42").unwrap();
    let (one, minus) = (m.elem("1"), m.elem("3"));
    let th = ctx(&m, "theta");
    let sd = count_self_dual_generators(&th, 4, &Search::default()).unwrap();
    // All eight satisfy h♮h = X^4 + 1, so their codes are negacyclic.
    assert_eq!((sd.count_for(one), sd.count_for(minus)), (0, 8));
    let g = poly(&th, &["3w", "w+1", "1"]);
    assert!(sd.generators().any(|x| *x == g));
    assert!(g.right_divides(&th.x_pow_minus(4, minus)).unwrap());
    assert!(!g.right_divides(&th.x_pow_minus(4, one)).unwrap());
    for (h, g) in &sd.per_epsilon[1].pairs {
        assert!(is_self_dual_generator(h, 2, minus).unwrap());
        assert!(g.right_divides(&th.x_pow_minus(4, minus)).unwrap());
    }
    let id = id_ctx(&m);
    assert_eq!(count_self_dual_generators(&id, 4, &Search::default()).unwrap().count(), 0);
    for n in [8, 10] {
        assert_eq!(count_self_dual_generators(&th, n, &Search::default()).unwrap().count(), 0, "n={n}");
    }
}

#[test]
fn small_self_dual_counts() {
    let s = Search::default();
    let d = builtin("f2x2x").unwrap();
    assert_eq!(count_self_dual_generators(&id_ctx(&d), 4, &s).unwrap().count(), 1);
    let f = builtin("f2xy").unwrap();
    assert_eq!(count_self_dual_generators(&id_ctx(&f), 2, &s).unwrap().count(), 8);
    let m = builtin("f4x2").unwrap();
    for th in enumerate_automorphisms(&m.ring).members() {
        let c = SkewRing::new(th).unwrap();
        let want = match th.order() {
            1 => 24,
            3 => 36,
            _ => 12,
        };
        assert_eq!(count_self_dual_generators(&c, 6, &s).unwrap().count(), want, "{}", th.describe());
    }
    assert_eq!(count_self_dual_generators(&id_ctx(&m), 5, &s).unwrap_err(), SkewError::OddLength(5));
    let mm = builtin("m2f2").unwrap();
    assert_eq!(count_self_dual_generators(&id_ctx(&mm), 4, &s).unwrap_err(), SkewError::NoncommutativeRing);
}

#[test]
fn epsilon_sweep_in_odd_characteristic() {
    let m = builtin("f3x3").unwrap();
    let sd = count_self_dual_generators(&id_ctx(&m), 4, &Search::default()).unwrap();
    assert_eq!(sd.per_epsilon.len(), 2);
    for e in &sd.per_epsilon {
        for (h, _) in &e.pairs {
            assert!(is_self_dual_generator(h, 2, e.epsilon).unwrap());
        }
    }
    let f2 = builtin("f2x2").unwrap();
    assert_eq!(count_self_dual_generators(&id_ctx(&f2), 4, &Search::default()).unwrap().per_epsilon.len(), 1);
}

#[test]
fn budget_is_enforced() {
    let m = builtin("f4x2").unwrap();
    let c = id_ctx(&m);
    let tight = Search::with_budget(100);
    assert!(matches!(
        enumerate_monic_right_divisors(&c, 4, 2, m.elem("1"), &tight),
        Err(SkewError::Budget(_))
    ));
    assert!(matches!(count_self_dual_generators(&c, 8, &tight), Err(SkewError::Budget(_))));
}

#[test]
fn star_is_a_bijection_on_each_degree() {
    for key in ["f2x2", "f2x2x", "z4", "gr42", "f4x2", "z4x2+2"] {
        let m = builtin(key).unwrap();
        for th in enumerate_automorphisms(&m.ring).members() {
            let c = SkewRing::new(th).unwrap();
            let q = m.ring.order();
            for k in 0..=2usize {
                // all polynomials of degree exactly k
                let mut seen = std::collections::HashSet::new();
                let mut digits = vec![0usize; k + 1];
                let mut total = 0;
                loop {
                    if digits[k] != 0 {
                        let p = c.poly(digits.iter().map(|&d| d as Elem).collect());
                        let s = p.skew_reciprocal().unwrap();
                        if digits[0] != 0 {
                            assert_eq!(s.degree(), Some(k));
                        }
                        seen.insert(s.coeffs().to_vec());
                        total += 1;
                    }
                    if !par::advance(&mut digits, q) {
                        break;
                    }
                }
                assert_eq!(seen.len(), total, "{key} k={k}");
            }
        }
    }
}

fn arb_case() -> impl Strategy<Value = (usize, usize, Vec<Vec<usize>>)> {
    (0usize..6, 0usize..32, proptest::collection::vec(proptest::collection::vec(0usize..256, 0..7), 3))
}

fn setup(ring_idx: usize, th_idx: usize, raw: &[Vec<usize>]) -> (Arc<SkewRing>, Vec<SkewPoly>) {
    let keys = ["f4x2", "m2f2", "gr42", "f2xy-b", "f4x2-skew", "f9"];
    let m = builtin(keys[ring_idx]).unwrap();
    let aut = enumerate_automorphisms(&m.ring);
    let th = &aut.members()[th_idx % aut.order()];
    let c = SkewRing::new(th).unwrap();
    let q = m.ring.order();
    let ps = raw.iter().map(|v| c.poly(v.iter().map(|&x| (x % q) as Elem).collect())).collect();
    (c, ps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn ring_axioms_at_bounded_degree((ri, ti, raw) in arb_case()) {
        let (_, p) = setup(ri, ti, &raw);
        let (f, g, h) = (&p[0], &p[1], &p[2]);
        prop_assert_eq!(f.mul(g).unwrap().mul(h).unwrap(), f.mul(&g.mul(h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g.add(h).unwrap()).unwrap(), f.mul(g).unwrap().add(&f.mul(h).unwrap()).unwrap());
        prop_assert_eq!(f.add(g).unwrap().mul(h).unwrap(), f.mul(h).unwrap().add(&g.mul(h).unwrap()).unwrap());
    }

    #[test]
    fn division_invariant((ri, ti, raw) in arb_case(), bump in 1usize..256, at in 0usize..8) {
        let (c, p) = setup(ri, ti, &raw);
        let r = c.ring().clone();
        let mut gc = p[1].coeffs().to_vec();
        gc.push(r.one());
        let g = c.poly(gc);
        let f = &p[0];
        let (q, rem) = f.right_divmod(&g).unwrap();
        prop_assert_eq!(q.mul(&g).unwrap().add(&rem).unwrap(), f.clone());
        prop_assert!(rem.degree().is_none_or(|d| d < g.degree().unwrap()));
        // any single-coefficient change of q breaks the identity
        let delta = (bump % r.order()) as Elem;
        prop_assume!(delta != r.zero());
        let i = at % (q.coeffs().len() + 1);
        let mut qc = q.coeffs().to_vec();
        qc.resize(qc.len().max(i + 1), r.zero());
        qc[i] = r.add(qc[i], delta);
        let q2 = c.poly(qc);
        prop_assert_ne!(q2.mul(&g).unwrap().add(&rem).unwrap(), f.clone());
    }

    #[test]
    fn identity_twist_is_plain_multiplication(ri in 0usize..4, raw in proptest::collection::vec(proptest::collection::vec(0usize..256, 0..7), 2)) {
        let keys = ["f4x2", "gr42", "f2xy-b", "f3xy"];
        let m = builtin(keys[ri]).unwrap();
        let c = id_ctx(&m);
        let q = m.ring.order();
        let a: Vec<Elem> = raw[0].iter().map(|&x| (x % q) as Elem).collect();
        let b: Vec<Elem> = raw[1].iter().map(|&x| (x % q) as Elem).collect();
        let prod = c.poly(a.clone()).mul(&c.poly(b.clone())).unwrap();
        prop_assert_eq!(prod.coeffs().to_vec(), plain_mul(&m.ring, c.poly(a).coeffs(), c.poly(b).coeffs()));
    }
}
