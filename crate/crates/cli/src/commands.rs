//! One function per subcommand; each returns a [`ResultTable`].

use clap::{Args, Subcommand};

use skewcode_core::bases::{classify_basis, BasisClass, BasisSpace};
use skewcode_core::codes::{
    classify_binary_type, is_self_dual, phi_image, verify_duality_preservation, weight_profile,
    LinearCode,
};
use skewcode_core::config::LoadedRing;
use skewcode_core::morphisms::{enumerate_anti_automorphisms, enumerate_automorphisms, enumerate_involutions, RingMap};
use skewcode_core::skew::{count_self_dual_generators, enumerate_monic_right_divisors, SkewRing};

use crate::ops::{self, join, yes, Opts};
use crate::table::{ResultTable, Status};
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring summary: order, units, Frobenius test, named maps and subrings.
    Ring(RingArgs),
    /// Automorphisms, anti-automorphisms and involutions.
    Aut(RingArgs),
    /// Bases of A over a subring, filtered by class.
    Bases(BasesArgs),
    /// Monic right divisors of X^n − a in A[X;θ].
    Divisors(DivisorArgs),
    /// Generators h♮ of self-dual θ-codes of length n.
    SelfdualGens(SelfDualArgs),
    /// Generator matrix and weights of a θ-code.
    Code(CodeArgs),
    /// Image of a θ-code under the component map of a basis.
    Map(MapArgs),
    /// Both sides of Φ(C⊥) = Φ(C)⊥ and the hypotheses that apply.
    VerifyDuality(VerifyArgs),
    /// Run a named reproduction recipe.
    Recipe(RecipeArgs),
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Catalog key or path to a ring config.
    #[arg(long)]
    pub ring: String,
}

#[derive(Debug, Args)]
pub struct BasesArgs {
    #[arg(long)]
    pub ring: String,
    /// `prime`, `whole` or a named subring.
    #[arg(long, default_value = "prime")]
    pub subring: String,
    /// all, symmetric, trace-orthogonal, pseudo-self-dual or self-dual.
    #[arg(long, default_value = "all")]
    pub class: String,
    /// Involution: `id`, a named map, or an index into the involution list.
    #[arg(long, default_value = "id")]
    pub sigma: String,
    /// Trace group: `aut`, `trivial`, `stabilizer` or a named generator.
    #[arg(long, default_value = "aut")]
    pub h: String,
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    #[arg(long)]
    pub ring: String,
    /// `id`, a named map, or an index into Aut.
    #[arg(long, default_value = "id")]
    pub theta: String,
    #[arg(long)]
    pub n: usize,
    /// Defaults to n/2.
    #[arg(long)]
    pub degree: Option<usize>,
    /// The constant a in X^n − a.
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    pub constant: String,
}

#[derive(Debug, Args)]
pub struct SelfDualArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long, default_value = "id")]
    pub theta: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long, default_value = "id")]
    pub theta: String,
    /// Coefficients of g, lowest degree first.
    #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
    pub gen_poly: Vec<String>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    pub constant: String,
    /// hamming or lee.
    #[arg(long, default_value = "hamming")]
    pub metric: String,
    /// Nonzero terms shown in the weight enumerator.
    #[arg(long, default_value_t = 6)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value = "prime")]
    pub subring: String,
    /// Ordered basis of A over the subring.
    #[arg(long, num_args = 1.., required = true)]
    pub basis: Vec<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "id")]
    pub sigma: String,
    #[arg(long, default_value = "aut")]
    pub h: String,
}

#[derive(Debug, Args)]
pub struct RecipeArgs {
    /// Recipe name; omit with --list.
    pub name: Option<String>,
    #[arg(long)]
    pub list: bool,
    /// Compare the text rendering with the stored golden file.
    #[arg(long)]
    pub check: bool,
}

fn kv(name: &str, opts: &Opts, r: &LoadedRing) -> ResultTable {
    let mut t = ResultTable::new(name, &["property", "value"], opts.budget);
    t.add_ring(&r.key);
    t
}

fn put(t: &mut ResultTable, k: &str, v: impl ToString) {
    t.push(vec![k.to_string(), v.to_string()]);
}

pub fn ring(a: &RingArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.ring)?;
    let ring = &r.ring;
    let mut t = kv("ring", opts, &r);
    let parts = ring.units_and_zero_divisors();
    put(&mut t, "name", ring.name());
    put(&mut t, "order", ring.order());
    put(&mut t, "characteristic", ring.characteristic());
    put(&mut t, "commutative", yes(ring.is_commutative()));
    put(&mut t, "frobenius", yes(ring.is_frobenius()));
    put(&mut t, "units", parts.units.len());
    put(&mut t, "zero divisors", parts.zero_divisors.len());
    put(&mut t, "axioms", if ring.audit().passed() { "ok" } else { "violated" });
    let gens: Vec<String> = ring.generators().iter().map(|&g| ring.label(g).to_string()).collect();
    put(&mut t, "generators", join(&gens));
    put(&mut t, "elements", ring.labels().join(" "));
    for (name, m) in &r.maps {
        put(&mut t, &format!("map {name}"), format!("{:?}: {}", m.kind(), m.describe()));
    }
    for (name, s) in &r.subrings {
        put(&mut t, &format!("subring {name}"), ops::set_labels(&r, s.elements()));
    }
    if let Some(b) = &r.lee_basis {
        put(&mut t, "lee basis", ops::set_labels(&r, b));
    }
    Ok(t)
}

pub fn aut(a: &RingArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.ring)?;
    let g = enumerate_automorphisms(&r.ring);
    let anti = if r.ring.is_commutative() {
        Vec::new()
    } else {
        enumerate_anti_automorphisms(&r.ring)
    };
    let inv = enumerate_involutions(&r.ring);
    let mut t = ResultTable::new("aut", &["index", "kind", "order", "involution", "images"], opts.budget);
    t.add_ring(&r.key);
    let mut row = |i: usize, kind: &str, m: &RingMap| {
        t.push(vec![i.to_string(), kind.into(), m.order().to_string(), yes(inv.contains(m)), m.describe()]);
    };
    for (i, m) in g.members().iter().enumerate() {
        row(i, "automorphism", m);
    }
    for (i, m) in anti.iter().enumerate() {
        row(i, "anti-automorphism", m);
    }
    let stats: Vec<String> = g.order_statistics().iter().map(|(o, c)| format!("{o}:{c}")).collect();
    t.add_matrix(
        "summary",
        vec![
            vec!["|Aut|".into(), g.order().to_string()],
            vec!["group".into(), g.label()],
            vec!["element orders".into(), stats.join(" ")],
            vec!["anti-automorphisms".into(), anti.len().to_string()],
            vec!["involutions".into(), inv.len().to_string()],
        ],
    );
    Ok(t)
}

pub fn bases(a: &BasesArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.ring)?;
    let sub = ops::subring(&r, &a.subring)?;
    let sigma = ops::sigma(&r, &a.sigma)?;
    let h = ops::group(&r, &a.h, &sub)?;
    let space = BasisSpace::new(&sub)?;
    let search = opts.search();
    let found = match a.class.as_str() {
        "all" => space.all(&search)?,
        c => {
            let class: BasisClass = c.parse().map_err(CliError::Usage)?;
            space.by_class(&search, class, &sigma, &h)?
        }
    };
    let mut t = ResultTable::new(
        "bases",
        &["basis", "trace_orthogonal", "pseudo_self_dual", "self_dual", "gamma", "symmetric"],
        opts.budget,
    );
    t.add_ring(&r.key);
    for v in &found {
        let b = space.basis(v)?;
        let mut row = vec![ops::set_labels(&r, v)];
        match classify_basis(&b, &sigma, &h) {
            Ok(c) => {
                row.extend([yes(c.trace_orthogonal), yes(c.pseudo_self_dual), yes(c.self_dual)]);
                row.push(c.gamma.map_or("-".into(), |g| r.ring.label(g).to_string()));
                row.push(c.symmetric.map_or("-".into(), yes));
            }
            Err(_) => {
                row.extend(["-", "-", "-", "-"].map(String::from));
                row.push(if sub.is_central() { yes(skewcode_core::bases::is_symmetric(&b)) } else { "-".into() });
            }
        }
        t.push(row);
    }
    Ok(t)
}

pub fn divisors(a: &DivisorArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.ring)?;
    let ctx = SkewRing::new(&ops::theta(&r, &a.theta)?)?;
    let d = a.degree.unwrap_or(a.n / 2);
    let c = ops::elem(&r, &a.constant)?;
    let found = enumerate_monic_right_divisors(&ctx, a.n, d, c, &opts.search())?;
    let mut t = ResultTable::new("divisors", &["index", "g"], opts.budget);
    t.add_ring(&r.key);
    for (i, g) in found.iter().enumerate() {
        t.push(vec![i.to_string(), join(&g.labels())]);
    }
    Ok(t)
}

pub fn selfdual_gens(a: &SelfDualArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.ring)?;
    let ctx = SkewRing::new(&ops::theta(&r, &a.theta)?)?;
    let found = count_self_dual_generators(&ctx, a.n, &opts.search())?;
    let mut t = ResultTable::new("selfdual-gens", &["epsilon", "h", "generator"], opts.budget);
    t.add_ring(&r.key);
    for e in &found.per_epsilon {
        for (h, g) in &e.pairs {
            t.push(vec![r.ring.label(e.epsilon).to_string(), join(&h.labels()), join(&g.labels())]);
        }
    }
    Ok(t)
}

/// Size, distance and enumerator rows for `code`; self-duality under the
/// identity when that is a valid form.
fn describe_code(t: &mut ResultTable, code: &LinearCode, metric: &str, lee: Option<&[skewcode_core::Elem]>, terms: usize, opts: &Opts) -> Result<(), CliError> {
    let search = opts.search();
    put(t, "length", code.len());
    put(t, "generators", code.gens().len());
    put(t, "free", yes(code.is_free()));
    put(t, "size", code.size(&search)?);
    let w = ops::weights(code, metric, lee)?;
    let p = weight_profile(code, &w, &search)?;
    put(t, &format!("min {metric} distance"), p.min_distance);
    put(t, "enumerator", p.enumerator(terms));
    if code.ring().is_commutative() {
        let id = RingMap::identity(code.ring());
        let sd = is_self_dual(code, &id, &search)?;
        put(t, "self-dual", yes(sd));
        if sd && code.ring().order() == 2 {
            put(t, "type", classify_binary_type(code, &search)?);
        }
    }
    Ok(())
}

pub fn code(a: &CodeArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.ring)?;
    let c = ops::code(&r, &a.theta, &a.gen_poly, a.n, &a.constant)?;
    let mut t = kv("code", opts, &r);
    put(&mut t, "g", join(&c.g().labels()));
    put(&mut t, "modulus", join(&c.f().labels()));
    describe_code(&mut t, c.code(), &a.metric, r.lee_basis.as_deref(), a.terms, opts)?;
    t.add_matrix("generator matrix", ops::grid(c.code()));
    Ok(t)
}

pub fn map(a: &MapArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let r = ops::ring(&a.code.ring)?;
    let c = ops::code(&r, &a.code.theta, &a.code.gen_poly, a.code.n, &a.code.constant)?;
    let sub = ops::subring(&r, &a.subring)?;
    let b = ops::basis(&r, &sub, &a.basis)?;
    let img = phi_image(c.code(), &b)?;
    let mut t = kv("map", opts, &r);
    put(&mut t, "g", join(&c.g().labels()));
    put(&mut t, "basis", join(&b.labels()));
    put(&mut t, "subring order", sub.order());
    describe_code(&mut t, &img, &a.code.metric, None, a.code.terms, opts)?;
    t.add_matrix("image generator matrix", ops::grid(&img));
    Ok(t)
}

pub fn verify_duality(a: &VerifyArgs, opts: &Opts) -> Result<ResultTable, CliError> {
    let m = &a.map;
    let r = ops::ring(&m.code.ring)?;
    let c = ops::code(&r, &m.code.theta, &m.code.gen_poly, m.code.n, &m.code.constant)?;
    let sub = ops::subring(&r, &m.subring)?;
    let b = ops::basis(&r, &sub, &m.basis)?;
    let sigma = ops::sigma(&r, &a.sigma)?;
    let h = ops::group(&r, &a.h, &sub)?;
    let rep = verify_duality_preservation(c.code(), &b, &sigma, &h, &opts.search())?;
    let mut t = ResultTable::new("verify-duality", &["property", "value", "status"], opts.budget);
    t.add_ring(&r.key);
    let mut put3 = |k: &str, v: String, s: &str| t.push(vec![k.into(), v, s.into()]);
    let failed: Vec<String> = rep
        .failed
        .iter()
        .map(|h| serde_json::to_value(h).unwrap().as_str().unwrap().to_string())
        .collect();
    put3("unmet hypotheses", if failed.is_empty() { "none".into() } else { failed.join(" ") }, "");
    put3("pseudo-self-dual basis", yes(rep.pseudo_self_dual), "");
    put3("symmetric basis fixed by sigma", yes(rep.symmetric_fixed), "");
    put3("|C|", rep.code.to_string(), "");
    put3("|C⊥|", rep.dual.to_string(), "");
    put3("|A|^n", rep.ambient.to_string(), "");
    put3("wood", yes(rep.wood), "");
    put3("|Φ(C⊥)|", rep.phi_of_dual.to_string(), "");
    put3("|Φ(C)⊥|", rep.dual_of_phi.map_or("-".into(), |d| d.to_string()), "");
    let preserved = rep.preserved.map_or("-".into(), yes);
    put3("Φ(C⊥) = Φ(C)⊥", preserved, "");
    put3("consistent", yes(rep.consistent()), Status::of(rep.consistent()).as_str());
    Ok(t)
}
