//! Symbolic presentations and their Cayley tables.

use serde::{Deserialize, Serialize};

use super::groebner::{Mono, PolyCtx};
use super::parse::{longest_name, parse_expr, ExprDomain};
use super::program::Program;
use super::{check_hom, Elem, FiniteRing, RingError, MAX_ORDER};

/// A ring presentation as read from configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingPresentation {
    IntegerResidue {
        modulus: usize,
    },
    /// `F_{p^d}`. Without a modulus the first monic polynomial (in
    /// ascending coefficient order) whose root is primitive is used.
    GaloisField {
        p: usize,
        degree: usize,
        #[serde(default)]
        modulus: Option<Vec<i64>>,
        #[serde(default = "default_alpha")]
        variable: String,
    },
    GaloisRing {
        p: usize,
        k: u32,
        degree: usize,
        modulus: Vec<i64>,
        #[serde(default = "default_xi")]
        variable: String,
    },
    PolyQuotient {
        base: Box<RingPresentation>,
        #[serde(default = "default_x")]
        variable: String,
        relation: Relation,
        #[serde(default)]
        twist: Option<Twist>,
    },
    /// Quotient of a multivariate polynomial ring over a prime field.
    MultiQuotient {
        base: Box<RingPresentation>,
        variables: Vec<String>,
        relations: Vec<String>,
    },
    MatrixRing {
        base: Box<RingPresentation>,
        n: usize,
    },
    ExplicitTables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
        #[serde(default)]
        generators: Vec<usize>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

/// A univariate relation: ascending coefficient labels over the base, or an
/// expression in the quotient variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Relation {
    Coefficients(Vec<String>),
    Expression(String),
}

/// Twist of a skew quotient: `"frobenius"`, `"identity"`, or the images of
/// the base generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Twist {
    Named(String),
    Images(Vec<String>),
}

fn default_alpha() -> String {
    "α".into()
}
fn default_xi() -> String {
    "ξ".into()
}
fn default_x() -> String {
    "x".into()
}

pub fn build_ring(p: &RingPresentation) -> Result<FiniteRing, RingError> {
    match p {
        RingPresentation::IntegerResidue { modulus } => integer_residue(*modulus),
        RingPresentation::GaloisField {
            p,
            degree,
            modulus,
            variable,
        } => galois_field(*p, *degree, modulus.as_deref(), variable),
        RingPresentation::GaloisRing {
            p,
            k,
            degree,
            modulus,
            variable,
        } => galois_ring(*p, *k, *degree, modulus, variable),
        RingPresentation::PolyQuotient {
            base,
            variable,
            relation,
            twist,
        } => {
            let base = build_ring(base)?;
            let rel = match relation {
                Relation::Coefficients(c) => base.parse_elements(c)?,
                Relation::Expression(e) => {
                    let dom = UniPoly {
                        base: &base,
                        var: variable,
                    };
                    parse_expr(&dom, e).map_err(|reason| RingError::Parse {
                        input: e.clone(),
                        reason,
                    })?
                }
            };
            let theta = match twist {
                None => None,
                Some(t) => Some(twist_map(&base, t)?),
            };
            poly_quotient(&base, variable, &rel, theta.as_deref())
        }
        RingPresentation::MultiQuotient {
            base,
            variables,
            relations,
        } => {
            let base = build_ring(base)?;
            multi_quotient(&base, variables, relations)
        }
        RingPresentation::MatrixRing { base, n } => {
            let base = build_ring(base)?;
            matrix_ring(&base, *n)
        }
        RingPresentation::ExplicitTables {
            add,
            mul,
            zero,
            one,
            generators,
            labels,
        } => {
            let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().copied().collect::<Vec<_>>();
            if add.len() > MAX_ORDER {
                return Err(RingError::OrderTooLarge(add.len() as u128));
            }
            if add.iter().chain(mul).any(|r| r.len() != add.len()) || mul.len() != add.len() {
                return Err(RingError::InconsistentTables(vec!["table shape".into()]));
            }
            FiniteRing::from_tables(
                "explicit",
                &flat(add),
                &flat(mul),
                *zero,
                *one,
                generators,
                labels.clone(),
            )
        }
    }
}

fn check_order(base: usize, digits: usize) -> Result<usize, RingError> {
    let order = (base as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    if order > MAX_ORDER as u128 {
        return Err(RingError::OrderTooLarge(order));
    }
    Ok(order as usize)
}

fn integer_residue(m: usize) -> Result<FiniteRing, RingError> {
    if m < 2 {
        return Err(RingError::InvalidPresentation("modulus must be at least 2".into()));
    }
    if m > MAX_ORDER {
        return Err(RingError::OrderTooLarge(m as u128));
    }
    let mut add = vec![0; m * m];
    let mut mul = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            add[a * m + b] = (a + b) % m;
            mul[a * m + b] = (a * b) % m;
        }
    }
    let labels = (0..m).map(|i| i.to_string()).collect();
    FiniteRing::from_tables(format!("Z{m}"), &add, &mul, 0, 1 % m, &[], Some(labels))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn int_coeffs(base: &FiniteRing, coeffs: &[i64]) -> Vec<Elem> {
    coeffs.iter().map(|&c| base.from_int(c)).collect()
}

fn is_field(r: &FiniteRing) -> bool {
    r.elements().all(|a| a == r.zero() || r.is_unit(a))
}

fn galois_field(p: usize, d: usize, modulus: Option<&[i64]>, var: &str) -> Result<FiniteRing, RingError> {
    if !is_prime(p) {
        return Err(RingError::InvalidPresentation(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(RingError::InvalidPresentation("degree must be positive".into()));
    }
    let zp = integer_residue(p)?;
    if d == 1 {
        let mut r = zp;
        r.set_name(format!("F{p}"));
        return Ok(r);
    }
    check_order(p, d)?;
    let build = |coeffs: &[Elem]| -> Result<FiniteRing, RingError> {
        let mut r = poly_quotient(&zp, var, coeffs, None)?;
        if !is_field(&r) {
            return Err(RingError::InvalidPresentation("modulus is not irreducible".into()));
        }
        r.set_name(format!("F{}", r.order()));
        Ok(r)
    };
    let field = match modulus {
        Some(m) => build(&int_coeffs(&zp, m))?,
        None => {
            let mut digits = vec![0usize; d];
            loop {
                let mut coeffs: Vec<Elem> = digits.iter().map(|&c| c as Elem).collect();
                coeffs.push(1);
                if let Ok(r) = build(&coeffs) {
                    if primitive_root(&r).is_some() {
                        break r;
                    }
                }
                if !crate::par::advance(&mut digits, p) {
                    return Err(RingError::InvalidPresentation("no primitive modulus".into()));
                }
            }
        }
    };
    Ok(with_power_labels(field, var))
}

/// The adjoined root when it generates the unit group.
fn primitive_root(r: &FiniteRing) -> Option<Elem> {
    let alpha = r.names().first()?.1;
    let mut k = 1;
    let mut acc = alpha;
    while acc != r.one() {
        acc = r.mul(acc, alpha);
        k += 1;
        if k > r.order() {
            return None;
        }
    }
    (k == r.order() - 1).then_some(alpha)
}

/// Relabels a field as `0, 1, α, α^2, …` when the adjoined root is primitive.
fn with_power_labels(field: FiniteRing, var: &str) -> FiniteRing {
    let Some(alpha) = primitive_root(&field) else {
        return field;
    };
    let mut labels = vec![String::new(); field.order()];
    labels[field.zero() as usize] = "0".into();
    let mut acc = field.one();
    for k in 0..field.order() - 1 {
        labels[acc as usize] = match k {
            0 => "1".into(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        acc = field.mul(acc, alpha);
    }
    relabel(field, labels)
}

fn relabel(r: FiniteRing, labels: Vec<String>) -> FiniteRing {
    let gens: Vec<usize> = r.generators().iter().map(|&g| g as usize).collect();
    let mut out = FiniteRing::from_tables(
        r.name().to_string(),
        &r.add_table(),
        &r.mul_table(),
        r.zero() as usize,
        r.one() as usize,
        &gens,
        Some(labels),
    )
    .expect("relabelling keeps the tables");
    for (n, v) in r.names() {
        out.add_name(n.clone(), *v);
    }
    out
}

fn galois_ring(p: usize, k: u32, d: usize, modulus: &[i64], var: &str) -> Result<FiniteRing, RingError> {
    if !is_prime(p) || k == 0 {
        return Err(RingError::InvalidPresentation("GR needs a prime p and k ≥ 1".into()));
    }
    let q = p.pow(k);
    let zq = integer_residue(q)?;
    if modulus.len() != d + 1 {
        return Err(RingError::InvalidPresentation("modulus degree differs from d".into()));
    }
    // Basic irreducibility: the reduction modulo p is irreducible.
    let zp = integer_residue(p)?;
    let reduced = poly_quotient(&zp, var, &int_coeffs(&zp, modulus), None)?;
    if !is_field(&reduced) {
        return Err(RingError::InvalidPresentation("modulus is not basic irreducible".into()));
    }
    let mut r = poly_quotient(&zq, var, &int_coeffs(&zq, modulus), None)?;
    r.set_name(format!("GR({q},{d})"));
    Ok(r)
}

/// Univariate polynomials over a base ring, for parsing relations.
struct UniPoly<'a> {
    base: &'a FiniteRing,
    var: &'a str,
}

impl ExprDomain for UniPoly<'_> {
    type Value = Vec<Elem>;
    fn zero(&self) -> Vec<Elem> {
        vec![]
    }
    fn one(&self) -> Vec<Elem> {
        vec![self.base.one()]
    }
    fn add(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let z = self.base.zero();
        let mut out: Vec<Elem> = (0..n)
            .map(|i| {
                self.base
                    .add(*a.get(i).unwrap_or(&z), *b.get(i).unwrap_or(&z))
            })
            .collect();
        while out.last() == Some(&z) {
            out.pop();
        }
        out
    }
    fn neg(&self, a: &Vec<Elem>) -> Vec<Elem> {
        a.iter().map(|&c| self.base.neg(c)).collect()
    }
    fn mul(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let z = self.base.zero();
        let mut out = vec![z; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.base.add(out[i + j], self.base.mul(x, y));
            }
        }
        while out.last() == Some(&z) {
            out.pop();
        }
        out
    }
    fn name_prefix(&self, rest: &[char]) -> Option<(usize, Vec<Elem>)> {
        let mut vals: Vec<(String, Vec<Elem>)> = self
            .base
            .names()
            .iter()
            .map(|(n, v)| (n.clone(), vec![*v]))
            .collect();
        vals.push((self.var.to_string(), vec![self.base.zero(), self.base.one()]));
        longest_name(vals.iter().map(|(n, v)| (n.as_str(), v)), rest)
    }
    fn bracket_literal(&self, text: &str) -> Option<Vec<Elem>> {
        self.base.bracket_literal(text).map(|e| vec![e])
    }
}

/// `theta` as an element permutation of `base`.
fn twist_map(base: &FiniteRing, t: &Twist) -> Result<Vec<Elem>, RingError> {
    match t {
        Twist::Named(n) if n == "identity" || n == "id" => Ok(base.elements().collect()),
        Twist::Named(n) if n == "frobenius" => {
            let p = base.characteristic();
            if !base.is_commutative() || !is_prime(p) {
                return Err(RingError::InvalidPresentation(
                    "frobenius twist needs a commutative base of prime characteristic".into(),
                ));
            }
            Ok(base.elements().map(|a| base.pow(a, p)).collect())
        }
        Twist::Named(n) => Err(RingError::InvalidPresentation(format!("unknown twist {n}"))),
        Twist::Images(imgs) => {
            let images = base.parse_elements(imgs)?;
            if images.len() != base.generators().len() {
                return Err(RingError::InvalidPresentation(
                    "twist needs one image per base generator".into(),
                ));
            }
            let prog = Program::ring(base, base.generators());
            let mut seeds = vec![base.zero(), base.one()];
            seeds.extend(images);
            let mut buf = Vec::new();
            prog.replay(base, &seeds, false, &mut buf);
            check_hom(base, base, &buf, false, true)
                .ok_or_else(|| RingError::InvalidPresentation("twist is not an automorphism".into()))
        }
    }
}

fn coeff_label(s: &str) -> String {
    if s.contains('+') || s.contains('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Label of `Σ c_i m_i` written with the highest monomial first.
fn combination_label(base: &FiniteRing, coeffs: &[Elem], monos: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == base.zero() {
            continue;
        }
        let m = &monos[i];
        let cl = base.label(c);
        parts.push(if m.is_empty() {
            cl.to_string()
        } else if c == base.one() {
            m.clone()
        } else {
            format!("{}{m}", coeff_label(cl))
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn digits_of(mut idx: usize, radix: usize, len: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % radix) as Elem);
        idx /= radix;
    }
    out
}

fn index_of(digits: &[Elem], radix: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d as usize)
}

/// `base[x; θ]/(rel)` with `rel` monic, coefficients ascending.
pub(super) fn poly_quotient(
    base: &FiniteRing,
    var: &str,
    rel: &[Elem],
    theta: Option<&[Elem]>,
) -> Result<FiniteRing, RingError> {
    if rel.len() < 2 {
        return Err(RingError::InvalidPresentation("relation must have positive degree".into()));
    }
    if *rel.last().unwrap() != base.one() {
        return Err(RingError::NonMonicRelation);
    }
    let b = base.order();
    let d = rel.len() - 1;
    let n = check_order(b, d)?;
    let ident: Vec<Elem> = base.elements().collect();
    let theta = theta.map(|t| t.to_vec()).unwrap_or(ident.clone());
    // theta^k for k < 2d - 1.
    let mut powers = vec![ident];
    for k in 1..(2 * d).max(2) {
        let prev: &Vec<Elem> = &powers[k - 1];
        powers.push(prev.iter().map(|&a| theta[a as usize]).collect());
    }
    let neg_rel: Vec<Elem> = rel[..d].iter().map(|&r| base.neg(r)).collect();
    let elems: Vec<Vec<Elem>> = (0..n).map(|i| digits_of(i, b, d)).collect();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    let mut prod = vec![0 as Elem; 2 * d - 1];
    for (i, f) in elems.iter().enumerate() {
        for (j, g) in elems.iter().enumerate() {
            let s: Vec<Elem> = f.iter().zip(g).map(|(&x, &y)| base.add(x, y)).collect();
            add[i * n + j] = index_of(&s, b);
            prod.iter_mut().for_each(|c| *c = base.zero());
            for (p, &x) in f.iter().enumerate() {
                if x == base.zero() {
                    continue;
                }
                for (q, &y) in g.iter().enumerate() {
                    let t = base.mul(x, powers[p][y as usize]);
                    prod[p + q] = base.add(prod[p + q], t);
                }
            }
            for k in (d..2 * d - 1).rev() {
                let c = prod[k];
                if c == base.zero() {
                    continue;
                }
                prod[k] = base.zero();
                let tw = &powers[k - d];
                for (i2, &r) in neg_rel.iter().enumerate() {
                    let t = base.mul(c, tw[r as usize]);
                    prod[k - d + i2] = base.add(prod[k - d + i2], t);
                }
            }
            mul[i * n + j] = index_of(&prod[..d], b);
        }
    }
    let monos: Vec<String> = (0..d)
        .map(|k| match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        })
        .collect();
    let labels = elems.iter().map(|e| combination_label(base, e, &monos)).collect();
    let embed = |c: Elem| {
        let mut digits = vec![base.zero(); d];
        digits[0] = c;
        index_of(&digits, b)
    };
    let x = if d == 1 {
        embed(neg_rel[0])
    } else {
        let mut digits = vec![base.zero(); d];
        digits[1] = base.one();
        index_of(&digits, b)
    };
    let mut gens: Vec<usize> = base.generators().iter().map(|&g| embed(g)).collect();
    gens.push(x);
    let mut r = FiniteRing::from_tables(
        format!("{}[{var}]", base.name()),
        &add,
        &mul,
        embed(base.zero()),
        embed(base.one()),
        &gens,
        Some(labels),
    )?;
    for (nm, v) in base.names() {
        r.add_name(nm.clone(), embed(*v) as Elem);
    }
    r.add_name(var, x as Elem);
    Ok(r)
}

fn multi_quotient(base: &FiniteRing, vars: &[String], relations: &[String]) -> Result<FiniteRing, RingError> {
    let p = base.order();
    if !is_prime(p) || base.characteristic() != p {
        return Err(RingError::InvalidPresentation(
            "multivariate quotients need a prime field base".into(),
        ));
    }
    let ctx = PolyCtx {
        p: p as u32,
        vars: vars.to_vec(),
    };
    let mut rels = Vec::new();
    for r in relations {
        rels.push(parse_expr(&ctx, r).map_err(|reason| RingError::Parse {
            input: r.clone(),
            reason,
        })?);
    }
    let basis = ctx.groebner(&rels);
    let cap = (0..).take_while(|&k| p.pow(k) <= MAX_ORDER).last().unwrap() as usize;
    let std = ctx
        .standard_monomials(&basis, cap)
        .ok_or(RingError::OrderTooLarge(u128::MAX))?;
    if std.is_empty() {
        return Err(RingError::InvalidPresentation("relations generate the unit ideal".into()));
    }
    let s = std.len();
    let n = check_order(p, s)?;
    let pos = |m: &Mono| std.iter().position(|x| x == m);
    // Normal form of each product of standard monomials.
    let mut mono_prod = vec![vec![0u32; s]; s * s];
    for (i, a) in std.iter().enumerate() {
        for (j, b) in std.iter().enumerate() {
            let prod = ExprDomain::mul(&ctx, &ctx.monomial(a.clone(), 1), &ctx.monomial(b.clone(), 1));
            let nf = ctx.normal_form(&prod, &basis);
            for (m, c) in nf.terms() {
                mono_prod[i * s + j][pos(m).expect("normal form uses standard monomials")] = c;
            }
        }
    }
    let elems: Vec<Vec<Elem>> = (0..n).map(|i| digits_of(i, p, s)).collect();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    let pu = p as u32;
    for (i, f) in elems.iter().enumerate() {
        for (j, g) in elems.iter().enumerate() {
            let sum: Vec<Elem> = f
                .iter()
                .zip(g)
                .map(|(&x, &y)| ((x as u32 + y as u32) % pu) as Elem)
                .collect();
            add[i * n + j] = index_of(&sum, p);
            let mut acc = vec![0u32; s];
            for (a, &x) in f.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (b, &y) in g.iter().enumerate() {
                    if y == 0 {
                        continue;
                    }
                    let c = x as u32 * y as u32;
                    for (k, &t) in mono_prod[a * s + b].iter().enumerate() {
                        acc[k] = (acc[k] + c * t) % pu;
                    }
                }
            }
            let acc: Vec<Elem> = acc.into_iter().map(|c| c as Elem).collect();
            mul[i * n + j] = index_of(&acc, p);
        }
    }
    // Elements of Z_p are their own indices, so the base labels apply.
    let monos: Vec<String> = std.iter().map(|m| ctx.mono_label(m)).collect();
    let labels = elems.iter().map(|e| combination_label(base, e, &monos)).collect();
    let var_index: Vec<usize> = (0..vars.len())
        .map(|v| {
            let mut e = vec![0; vars.len()];
            e[v] = 1;
            let nf = ctx.normal_form(&ctx.monomial(Mono(e), 1), &basis);
            let mut digits = vec![0 as Elem; s];
            for (m, c) in nf.terms() {
                digits[pos(m).unwrap()] = c as Elem;
            }
            index_of(&digits, p)
        })
        .collect();
    let mut r = FiniteRing::from_tables(
        format!("{}[{}]", base.name(), vars.join(",")),
        &add,
        &mul,
        0,
        1,
        &var_index,
        Some(labels),
    )?;
    for (v, &x) in vars.iter().zip(&var_index) {
        r.add_name(v.clone(), x as Elem);
    }
    Ok(r)
}

fn matrix_ring(base: &FiniteRing, n: usize) -> Result<FiniteRing, RingError> {
    if n == 0 {
        return Err(RingError::InvalidPresentation("matrix side must be positive".into()));
    }
    let b = base.order();
    let order = check_order(b, n * n)?;
    let elems: Vec<Vec<Elem>> = (0..order).map(|i| digits_of(i, b, n * n)).collect();
    let mut add = vec![0; order * order];
    let mut mul = vec![0; order * order];
    let mut prod = vec![0 as Elem; n * n];
    for (i, f) in elems.iter().enumerate() {
        for (j, g) in elems.iter().enumerate() {
            let s: Vec<Elem> = f.iter().zip(g).map(|(&x, &y)| base.add(x, y)).collect();
            add[i * order + j] = index_of(&s, b);
            for r in 0..n {
                for c in 0..n {
                    let mut acc = base.zero();
                    for k in 0..n {
                        acc = base.add(acc, base.mul(f[r * n + k], g[k * n + c]));
                    }
                    prod[r * n + c] = acc;
                }
            }
            mul[i * order + j] = index_of(&prod, b);
        }
    }
    let labels = elems
        .iter()
        .map(|e| {
            let rows: Vec<String> = e
                .chunks(n)
                .map(|row| {
                    let cells: Vec<&str> = row.iter().map(|&c| base.label(c)).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    let z = base.zero();
    let scalar = |a: Elem| {
        let mut m = vec![z; n * n];
        for k in 0..n {
            m[k * n + k] = a;
        }
        index_of(&m, b)
    };
    let unit = |r: usize, c: usize| {
        let mut m = vec![z; n * n];
        m[r * n + c] = base.one();
        index_of(&m, b)
    };
    let mut gens: Vec<usize> = base.generators().iter().map(|&g| scalar(g)).collect();
    for k in 0..n.saturating_sub(1) {
        gens.push(unit(k, k + 1));
        gens.push(unit(k + 1, k));
    }
    let mut r = FiniteRing::from_tables(
        format!("M{n}({})", base.name()),
        &add,
        &mul,
        scalar(z),
        scalar(base.one()),
        &gens,
        Some(labels),
    )?;
    for (nm, v) in base.names() {
        r.add_name(nm.clone(), scalar(*v) as Elem);
    }
    Ok(r)
}
