//! Automorphism groups, basis counts and the empty-search certificates.

use skewcode_core::bases::{classify_basis, psd_certificate, BasisClass, BasisSpace, TraceContext};
use skewcode_core::config::builtin;
use skewcode_core::morphisms::{
    enumerate_anti_automorphisms, enumerate_automorphisms, enumerate_involutions, subgroup_generated, RingMap,
};
use skewcode_core::ring::find_isomorphic_subrings;
use skewcode_core::skew::{count_self_dual_generators, SkewRing};
use skewcode_core::SubringHandle;

use super::Checks;
use crate::ops::{set_labels, Opts};
use crate::table::ResultTable;
use crate::CliError;

pub(crate) fn aut_groups(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("aut-groups", opts);
    for (key, expected) in [("f2xy", "24 S4"), ("f4x2", "6 S3"), ("f2xy-b", "8 D4"), ("f2x4", "4 D2"), ("f5x2", "4 C4")] {
        let r = builtin(key)?;
        c.ring(key);
        let g = enumerate_automorphisms(&r.ring);
        c.check(format!("{key} |Aut|"), expected, format!("{} {}", g.order(), g.label()));
    }
    let r = builtin("f3xy")?;
    c.ring("f3xy");
    let g = enumerate_automorphisms(&r.ring);
    c.check("f3xy |Aut|", 72, g.order());
    let stats: Vec<String> = g
        .order_statistics()
        .iter()
        .filter(|(o, _)| **o > 1)
        .map(|(o, n)| format!("{o}:{n}"))
        .collect();
    c.check_with("f3xy element orders", "2:21 3:8 4:18 6:24", stats.join(" "), "order:count");

    let r = builtin("m2f2")?;
    c.ring("m2f2");
    c.check("m2f2 automorphisms", 6, enumerate_automorphisms(&r.ring).order());
    c.check("m2f2 anti-automorphisms", 6, enumerate_anti_automorphisms(&r.ring).len());
    c.check("m2f2 involutions", 4, enumerate_involutions(&r.ring).len());
    let r = builtin("m2f3")?;
    c.ring("m2f3");
    c.check("m2f3 involutions", 10, enumerate_involutions(&r.ring).len());
    Ok(c.done())
}

/// Symmetric bases over the named subring (prime when `None`).
const SYMMETRIC: [(&str, Option<&str>, usize); 14] = [
    ("z4x2+2x", None, 16),
    ("z4x2+2", None, 16),
    ("z4x2+3x", None, 8),
    ("f2x4", None, 12),
    ("f2xy-b", None, 16),
    ("f2xy", None, 8),
    ("f2x3", None, 4),
    ("f2x3m1", None, 3),
    ("f2x2", None, 1),
    ("f3xy", None, 2592),
    ("f3x3", None, 72),
    ("f3x2x", None, 8),
    ("f9x2", Some("F9"), 576),
    ("f9x2x", Some("F9"), 256),
];

pub(crate) fn basis_counts(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("basis-counts", opts);
    let search = opts.search();

    let g = builtin("gr42")?;
    c.ring("gr42");
    let z4 = SubringHandle::prime(&g.ring);
    let space = BasisSpace::new(&z4)?;
    let h = subgroup_generated(&g.ring, &[g.map("theta").expect("gr42 theta").clone()])?;
    let id = RingMap::identity(&g.ring);
    c.check("gr42 over Z4 pseudo-self-dual", 8, space.by_class(&search, BasisClass::PseudoSelfDual, &id, &h)?.len());
    c.check("gr42 over Z4 symmetric", 24, space.symmetric(&search)?.len());

    let f = builtin("f4x2")?;
    c.ring("f4x2");
    let f4 = f.subring("F4").expect("f4x2 F4").clone();
    let f2 = SubringHandle::prime(&f.ring);
    c.check("f4x2 over F4 symmetric", 18, BasisSpace::new(&f4)?.symmetric(&search)?.len());
    c.check("f4x2 over F2 symmetric", 18, BasisSpace::new(&f2)?.symmetric(&search)?.len());
    let duals = find_isomorphic_subrings(&f.ring, &builtin("f2x2")?.ring);
    for s in &duals {
        c.check(
            format!("f4x2 over {} symmetric", set_labels(&f, s.elements())),
            24,
            BasisSpace::new(s)?.symmetric(&search)?.len(),
        );
    }
    let cert = psd_certificate(&f.ring, &search)?;
    for (name, sub) in [("F2", &f2), ("F4", &f4)] {
        let labels: Vec<String> = sub.elements().iter().map(|&e| f.ring.label(e).to_string()).collect();
        let hits: usize = cert.hits.iter().filter(|h| h.0 == labels).map(|h| h.3).sum();
        c.check(format!("f4x2 over {name} pseudo-self-dual"), 0, hits);
    }

    let m = builtin("m2f3")?;
    c.ring("m2f3");
    let aut = enumerate_automorphisms(&m.ring);
    let sigma = m.map("sigma_second").expect("m2f3 sigma_second");
    for (name, expected) in [("F9_1", "8+56"), ("F9_2", "48+48"), ("F9_3", "8+56")] {
        let sub = m.subring(name).expect("m2f3 subfield");
        let h = aut.stabilizer(sub);
        let got = match TraceContext::new(sub, sigma, &h) {
            Ok(ctx) => {
                let sp = BasisSpace::new(sub)?;
                let sd = sp.trace_class(&search, &ctx, BasisClass::SelfDual)?.len();
                let psd = sp.trace_class(&search, &ctx, BasisClass::PseudoSelfDual)?.len();
                format!("{sd}+{}", psd - sd)
            }
            Err(e) => format!("n/a ({e})"),
        };
        c.check_with(format!("m2f3 over {name} sigma_second"), expected, got, "self-dual + other pseudo-self-dual");
    }

    for (key, sub, expected) in SYMMETRIC {
        let r = builtin(key)?;
        c.ring(key);
        let s = match sub {
            Some(name) => r.subring(name).expect("configured subring").clone(),
            None => SubringHandle::prime(&r.ring),
        };
        let label = sub.unwrap_or("prime subring");
        c.check(format!("{key} over {label} symmetric"), expected, BasisSpace::new(&s)?.symmetric(&search)?.len());
    }
    Ok(c.done())
}

const GR42_BASES: [[&str; 2]; 8] = [
    ["3ξ+2", "ξ+1"],
    ["ξ+1", "ξ+2"],
    ["3ξ+2", "3ξ+3"],
    ["3ξ+1", "ξ"],
    ["3ξ+3", "ξ+2"],
    ["ξ", "ξ+3"],
    ["3ξ", "ξ+3"],
    ["3ξ", "3ξ+1"],
];

pub(crate) fn gr42_bases(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("ex-gr42-bases", opts);
    let g = builtin("gr42")?;
    c.ring("gr42");
    let z4 = SubringHandle::prime(&g.ring);
    let space = BasisSpace::new(&z4)?;
    let aut = enumerate_automorphisms(&g.ring);
    let id = RingMap::identity(&g.ring);
    let found = space.by_class(&opts.search(), BasisClass::PseudoSelfDual, &id, &aut)?;
    for (i, labels) in GR42_BASES.iter().enumerate() {
        let mut v = g.elems(labels);
        v.sort();
        let cls = classify_basis(&space.basis(&v)?, &id, &aut)?;
        let gamma = cls.gamma.map_or("-".to_string(), |x| g.ring.label(x).to_string());
        let hit = found.iter().any(|f| {
            let mut f = f.clone();
            f.sort();
            f == v
        });
        let got = if hit { "found" } else { "missing" };
        c.check_with(
            format!("basis {} {}", i + 1, set_labels(&g, &g.elems(labels))),
            "found",
            got,
            format!("gamma = {gamma}"),
        );
    }
    c.check("total pseudo-self-dual sets", GR42_BASES.len(), found.len());
    let rows = found
        .iter()
        .map(|v| v.iter().map(|&e| g.ring.label(e).to_string()).collect())
        .collect();
    c.matrix("computed sets", rows);
    Ok(c.done())
}

/// Order-16 rings expected to have no pseudo-self-dual basis over any
/// proper subring.
const NO_PSD: [&str; 7] = ["f2xy-b", "f2xy", "z4x2+2x", "z4x2+2", "z4x2+2x+2", "z4x2", "f4x2"];

pub(crate) fn negative_certificates(opts: &Opts) -> Result<ResultTable, CliError> {
    let mut c = Checks::new("negative-certificates", opts);
    let search = opts.search();

    let g = builtin("gr42")?;
    c.ring("gr42");
    let z4 = SubringHandle::prime(&g.ring);
    let space = BasisSpace::new(&z4)?;
    let (mut triples, mut found) = (0, 0);
    for sigma in enumerate_involutions(&g.ring) {
        for h in enumerate_automorphisms(&g.ring).subgroups() {
            if let Ok(ctx) = TraceContext::new(&z4, &sigma, &h) {
                triples += 1;
                found += space.trace_class(&search, &ctx, BasisClass::SelfDual)?.len();
            }
        }
    }
    c.check_with("gr42 self-dual bases over Z4", 0, found, format!("{triples} (sigma, H) pairs"));

    for key in NO_PSD.into_iter().chain(["f4x2-skew"]) {
        let r = builtin(key)?;
        c.ring(key);
        let cert = psd_certificate(&r.ring, &search)?;
        let mut where_: Vec<String> = cert
            .hits
            .iter()
            .map(|(labels, s, h, n)| format!("{n} over {{{}}} sigma {s} |H|={h}", labels.join(", ")))
            .collect();
        where_.dedup();
        let detail = if where_.is_empty() {
            format!("{} triples, {} bases examined", cert.triples, cert.bases_examined)
        } else {
            where_.join("; ")
        };
        c.check_with(format!("{key} pseudo-self-dual bases"), 0, cert.found, detail);
    }

    c.ring("gr42");
    let mut gens = 0;
    for th in enumerate_automorphisms(&g.ring).members() {
        gens += count_self_dual_generators(&SkewRing::new(th)?, 8, &search)?.count();
    }
    c.check("gr42 n=8 self-dual generators", 0, gens);
    Ok(c.done())
}
