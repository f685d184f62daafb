//! Linear codes over finite rings: module θ-codes, codeword enumeration,
//! σ-duals, the component map Φ on codes, weight profiles and the
//! duality-preservation check.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::bases::{classify_basis, form_unchecked, is_symmetric, BasisError, ModuleBasis};
use crate::linalg::{self, is_field};
use crate::morphisms::{MapGroup, RingMap};
use crate::par::{self, pow_u128, BudgetExceeded, Search};
use crate::ring::{Elem, FiniteRing, SubringHandle};
use crate::skew::{SkewError, SkewPoly};

pub mod best;
mod binary;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator of length {found} in a code of length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("objects belong to different rings")]
    MixedRings,
    #[error("g is not monic")]
    NotMonic,
    #[error("g is not a right divisor of f")]
    NotRightDivisor,
    #[error("σ is not an involution")]
    NotInvolution,
    #[error("Lee weight undefined: {0}")]
    LeeUndefined(String),
    #[error("code is not over F2")]
    NotBinary,
    #[error("code is not self-dual")]
    NotSelfDual,
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// `p^exponent`. Every code is an additive p-group, so sizes are kept as
/// exponents and compared exactly at any length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cardinality {
    pub prime: u64,
    pub exponent: u32,
}

impl Cardinality {
    pub fn value(&self) -> Option<u128> {
        let v = pow_u128(self.prime as usize, self.exponent as usize);
        (v != u128::MAX).then_some(v)
    }

    pub fn times(self, other: Cardinality) -> Cardinality {
        Cardinality {
            prime: self.prime,
            exponent: self.exponent + other.exponent,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}^{}", self.prime, self.exponent),
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(v) if v <= u64::MAX as u128 => s.serialize_u64(v as u64),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

fn prime_of(order: usize) -> u64 {
    (2..=order).find(|d| order.is_multiple_of(*d)).unwrap_or(1) as u64
}

fn log_exact(prime: u64, mut v: u128) -> u32 {
    let mut e = 0;
    while v > 1 {
        debug_assert_eq!(v % prime as u128, 0);
        v /= prime as u128;
        e += 1;
    }
    e
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    ring: Arc<FiniteRing>,
    n: usize,
    gens: Vec<Vec<Elem>>,
    // Distinct left combinations of `gens` give distinct codewords.
    free: bool,
    size: Option<Cardinality>,
}

/// Some row has a unit at a column where every earlier row is zero, in
/// order. Such rows are left-independent.
fn unit_echelon(ring: &FiniteRing, gens: &[Vec<Elem>]) -> bool {
    gens.iter().enumerate().all(|(j, g)| {
        (0..g.len()).any(|c| ring.is_unit(g[c]) && gens[..j].iter().all(|h| h[c] == ring.zero()))
    })
}

impl LinearCode {
    /// The left span of `gens`. Zero rows are dropped.
    pub fn new(ring: &Arc<FiniteRing>, n: usize, gens: Vec<Vec<Elem>>) -> Result<LinearCode, CodeError> {
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return Err(CodeError::LengthMismatch {
                expected: n,
                found: g.len(),
            });
        }
        let zero = ring.zero();
        let gens: Vec<Vec<Elem>> = gens.into_iter().filter(|g| g.iter().any(|&x| x != zero)).collect();
        let free = unit_echelon(ring, &gens);
        Ok(Self::assemble(ring, n, gens, free))
    }

    fn assemble(ring: &Arc<FiniteRing>, n: usize, gens: Vec<Vec<Elem>>, free: bool) -> LinearCode {
        let mut c = LinearCode {
            ring: ring.clone(),
            n,
            gens,
            free,
            size: None,
        };
        if free {
            c.size = Some(c.symbols().times_n(c.gens.len()));
        }
        c
    }

    fn with_size(mut self, size: Cardinality) -> LinearCode {
        self.size = Some(size);
        self
    }

    pub fn zero(ring: &Arc<FiniteRing>, n: usize) -> LinearCode {
        Self::assemble(ring, n, Vec::new(), true)
    }

    pub fn full(ring: &Arc<FiniteRing>, n: usize) -> LinearCode {
        let gens = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Self::assemble(ring, n, gens, true)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn gens(&self) -> &[Vec<Elem>] {
        &self.gens
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    fn symbols(&self) -> Symbols {
        Symbols {
            prime: prime_of(self.ring.order()),
            per_symbol: log_exact(prime_of(self.ring.order()), self.ring.order() as u128),
        }
    }

    /// `|A|^n`.
    pub fn ambient(&self) -> Cardinality {
        self.symbols().times_n(self.n)
    }

    pub fn size(&self, search: &Search) -> Result<Cardinality, CodeError> {
        if let Some(s) = self.size {
            return Ok(s);
        }
        let sym = self.symbols();
        let exponent = match self.span(search)? {
            Span::Free(rows) => sym.per_symbol * rows.len() as u32,
            Span::Set(words) => log_exact(sym.prime, words.len() as u128),
        };
        Ok(Cardinality {
            prime: sym.prime,
            exponent,
        })
    }

    fn span(&self, search: &Search) -> Result<Span, CodeError> {
        if self.free {
            return Ok(Span::Free(self.gens.clone()));
        }
        if is_field(&self.ring) {
            return Ok(Span::Free(linalg::rref(&self.ring, &self.gens)));
        }
        Ok(Span::Set(closure(&self.ring, self.n, &self.gens, search)?))
    }

    /// Every codeword, sorted.
    pub fn codewords(&self, search: &Search) -> Result<Vec<Vec<Elem>>, CodeError> {
        let mut words = match self.span(search)? {
            Span::Set(words) => words,
            Span::Free(rows) => {
                search.check(pow_u128(self.ring.order(), rows.len()))?;
                let chunks = for_each_free(&self.ring, &rows, self.n, search, Vec::new, |out: &mut Vec<Vec<Elem>>, w| {
                    out.push(w.to_vec());
                    true
                });
                chunks.into_iter().flatten().collect()
            }
        };
        words.sort_unstable();
        Ok(words)
    }

    pub fn contains(&self, word: &[Elem], search: &Search) -> Result<bool, CodeError> {
        if word.len() != self.n {
            return Ok(false);
        }
        if is_field(&self.ring) {
            let base = linalg::rref(&self.ring, &self.gens);
            let mut ext = base.clone();
            ext.push(word.to_vec());
            return Ok(linalg::rank(&self.ring, &ext) == base.len());
        }
        Ok(self.codewords(search)?.binary_search(&word.to_vec()).is_ok())
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.gens
            .iter()
            .map(|g| g.iter().map(|&x| self.ring.label(x).to_string()).collect())
            .collect()
    }

    /// Moves the code along a ring isomorphism given by its image table.
    pub fn transport(&self, target: &Arc<FiniteRing>, image: &[Elem]) -> LinearCode {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().map(|&x| image[x as usize]).collect())
            .collect();
        let mut c = Self::assemble(target, self.n, gens, self.free);
        c.size = self.size;
        c
    }
}

#[derive(Clone, Copy)]
struct Symbols {
    prime: u64,
    per_symbol: u32,
}

impl Symbols {
    fn times_n(self, n: usize) -> Cardinality {
        Cardinality {
            prime: self.prime,
            exponent: self.per_symbol * n as u32,
        }
    }
}

enum Span {
    // Rows whose left combinations are pairwise distinct.
    Free(Vec<Vec<Elem>>),
    Set(Vec<Vec<Elem>>),
}

fn add_words(ring: &FiniteRing, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

fn scale(ring: &FiniteRing, a: Elem, w: &[Elem]) -> Vec<Elem> {
    w.iter().map(|&x| ring.mul(a, x)).collect()
}

/// The left span as an explicit set, built one generator at a time.
fn closure(ring: &FiniteRing, n: usize, gens: &[Vec<Elem>], search: &Search) -> Result<Vec<Vec<Elem>>, CodeError> {
    let mut set: HashSet<Vec<Elem>> = HashSet::from([vec![ring.zero(); n]]);
    let mut work: u128 = 0;
    for g in gens {
        let multiples: HashSet<Vec<Elem>> = ring.elements().map(|a| scale(ring, a, g)).collect();
        work += set.len() as u128 * multiples.len() as u128;
        search.check(work)?;
        let mut next = HashSet::with_capacity(set.len() * multiples.len());
        for s in &set {
            for m in &multiples {
                next.insert(add_words(ring, s, m));
            }
        }
        set = next;
    }
    Ok(set.into_iter().collect())
}

/// Visits `Σ a_j rows_j` for every coefficient tuple, chunked by `a_0`.
/// `visit` returns `false` to abandon its chunk.
fn for_each_free<T, I, V>(ring: &FiniteRing, rows: &[Vec<Elem>], n: usize, search: &Search, init: I, visit: V) -> Vec<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[Elem]) -> bool + Sync + Send,
{
    let q = ring.order();
    let k = rows.len();
    if k == 0 {
        let mut t = init();
        visit(&mut t, &vec![ring.zero(); n]);
        return vec![t];
    }
    // mult[j][a] = a·rows_j
    let mult: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|r| ring.elements().map(|a| scale(ring, a, r)).collect())
        .collect();
    par::map_chunks(search.strategy, q, |a0| {
        let mut t = init();
        let mut word = mult[0][a0].clone();
        let mut digits = vec![0usize; k];
        if !visit(&mut t, &word) {
            return t;
        }
        loop {
            let mut j = 1;
            loop {
                if j == k {
                    return t;
                }
                let old = digits[j];
                let new = if old + 1 < q { old + 1 } else { 0 };
                digits[j] = new;
                for (i, w) in word.iter_mut().enumerate() {
                    *w = ring.add(ring.sub(*w, mult[j][old][i]), mult[j][new][i]);
                }
                if new != 0 {
                    break;
                }
                j += 1;
            }
            if !visit(&mut t, &word) {
                return t;
            }
        }
    })
}

/// Non-generic part of a module θ-code: `g`, the modulus `f`, and the code
/// spanned by the rows `X^j g`, `j < k`.
#[derive(Clone, Debug)]
pub struct ThetaCode {
    g: SkewPoly,
    f: SkewPoly,
    code: LinearCode,
}

pub fn theta_code(g: &SkewPoly, f: &SkewPoly) -> Result<ThetaCode, CodeError> {
    if !g.is_monic() {
        return Err(CodeError::NotMonic);
    }
    if !g.right_divides(f)? {
        return Err(CodeError::NotRightDivisor);
    }
    let ctx = g.context();
    let ring = ctx.ring();
    let n = f.degree().unwrap_or(0);
    let k = n - g.degree().unwrap_or(0);
    let rows = (0..k)
        .map(|j| {
            let p = ctx.monomial(ring.one(), j).mul(g)?;
            Ok((0..n).map(|i| p.coeff(i)).collect())
        })
        .collect::<Result<Vec<Vec<Elem>>, CodeError>>()?;
    Ok(ThetaCode {
        g: g.clone(),
        f: f.clone(),
        code: LinearCode::new(ring, n, rows)?,
    })
}

impl ThetaCode {
    pub fn g(&self) -> &SkewPoly {
        &self.g
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn theta(&self) -> &RingMap {
        self.g.context().theta()
    }

    pub fn k(&self) -> usize {
        self.code.gens.len()
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }
}

/// `(θ(c_{n−1}), θ(c_0), …, θ(c_{n−2}))`.
pub fn theta_shift(theta: &RingMap, word: &[Elem]) -> Vec<Elem> {
    let n = word.len();
    (0..n).map(|i| theta.apply(word[(i + n - 1) % n])).collect()
}

fn check_sigma(code: &LinearCode, sigma: &RingMap) -> Result<(), CodeError> {
    if sigma.ring().fingerprint() != code.ring.fingerprint() {
        return Err(CodeError::MixedRings);
    }
    if !sigma.is_involution() {
        return Err(CodeError::NotInvolution);
    }
    Ok(())
}

/// `⟨g_i, g_j⟩ = 0` for all ordered pairs, which gives `C ⊆ C⊥`.
pub fn is_self_orthogonal(code: &LinearCode, sigma: &RingMap) -> Result<bool, CodeError> {
    check_sigma(code, sigma)?;
    let zero = code.ring.zero();
    Ok(code
        .gens
        .iter()
        .all(|a| code.gens.iter().all(|b| form_unchecked(sigma, a, b) == zero)))
}

/// `{v : ⟨v, g⟩ = 0 for every generator g}`. Testing generators suffices
/// because `⟨v, a·g⟩ = ⟨v, g⟩σ(a)`.
pub fn dual_code(code: &LinearCode, sigma: &RingMap, search: &Search) -> Result<LinearCode, CodeError> {
    check_sigma(code, sigma)?;
    let ring = &code.ring;
    if code.gens.is_empty() {
        return Ok(LinearCode::full(ring, code.n));
    }
    if is_field(ring) {
        let rows: Vec<Vec<Elem>> = code
            .gens
            .iter()
            .map(|g| g.iter().map(|&x| sigma.apply(x)).collect())
            .collect();
        let kernel = linalg::right_kernel(ring, &rows, code.n);
        return Ok(LinearCode::assemble(ring, code.n, linalg::rref(ring, &kernel), true));
    }
    let prime = SubringHandle::prime(ring);
    if is_field(&prime.to_ring()) {
        return dual_over_subfield(code, sigma, &prime);
    }
    dual_code_brute(code, sigma, search)
}

/// Writes `v_i = Σ_t x_{i,t} b_t` over a subfield `F` and solves the
/// F-linear system `ρ_s(⟨v, g_j⟩) = 0`.
fn dual_over_subfield(code: &LinearCode, sigma: &RingMap, sub: &SubringHandle) -> Result<LinearCode, CodeError> {
    let ring = &code.ring;
    let f = sub.to_ring();
    let basis = any_basis(sub)?;
    let r = basis.rank();
    let n = code.n;
    let local = |e: Elem| sub.local_index(e).expect("coordinate lies in the subfield");
    let mut rows = Vec::with_capacity(code.gens.len() * r);
    for g in &code.gens {
        let sg: Vec<Elem> = g.iter().map(|&x| sigma.apply(x)).collect();
        for s in 0..r {
            let mut row = Vec::with_capacity(n * r);
            for &y in &sg {
                for &b in basis.vecs() {
                    row.push(local(basis.rho(ring.mul(b, y))[s]));
                }
            }
            rows.push(row);
        }
    }
    let kernel = linalg::right_kernel(&f, &rows, n * r);
    let dim = kernel.len();
    let gens = kernel
        .iter()
        .map(|x| {
            let coords: Vec<Elem> = x.iter().map(|&l| sub.global(l)).collect();
            basis.phi_inv(&coords)
        })
        .collect();
    let size = Cardinality {
        prime: prime_of(f.order()),
        exponent: dim as u32 * log_exact(prime_of(f.order()), f.order() as u128),
    };
    Ok(LinearCode::new(ring, n, gens)?.with_size(size))
}

/// A basis of `A` over a subfield, chosen greedily in element order.
fn any_basis(sub: &SubringHandle) -> Result<ModuleBasis, CodeError> {
    let ring = sub.parent();
    let mut span: HashSet<Elem> = HashSet::from([ring.zero()]);
    let mut vecs = Vec::new();
    for a in ring.elements() {
        if span.contains(&a) {
            continue;
        }
        vecs.push(a);
        let old: Vec<Elem> = span.iter().copied().collect();
        for s in old {
            for &c in sub.elements() {
                span.insert(ring.add(s, ring.mul(c, a)));
            }
        }
        if span.len() == ring.order() {
            break;
        }
    }
    Ok(ModuleBasis::new(sub, &vecs)?)
}

/// Exhaustive dual over `A^n`, kept as an independent route.
pub fn dual_code_brute(code: &LinearCode, sigma: &RingMap, search: &Search) -> Result<LinearCode, CodeError> {
    check_sigma(code, sigma)?;
    let ring = &code.ring;
    let n = code.n;
    let q = ring.order();
    search.check(pow_u128(q, n))?;
    if n == 0 {
        return Ok(LinearCode::zero(ring, 0));
    }
    let zero = ring.zero();
    let chunks = par::map_chunks(search.strategy, q, |v0| {
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        digits[0] = v0;
        loop {
            let v: Vec<Elem> = digits.iter().map(|&d| d as Elem).collect();
            if code.gens.iter().all(|g| form_unchecked(sigma, &v, g) == zero) {
                out.push(v);
            }
            if !par::advance(&mut digits[1..], q) {
                break;
            }
        }
        out
    });
    let words: Vec<Vec<Elem>> = chunks.into_iter().flatten().collect();
    let size = Cardinality {
        prime: prime_of(q),
        exponent: log_exact(prime_of(q), words.len() as u128),
    };
    let gens = generating_subset(ring, n, &words);
    Ok(LinearCode::new(ring, n, gens)?.with_size(size))
}

fn generating_subset(ring: &FiniteRing, n: usize, words: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut span: HashSet<Vec<Elem>> = HashSet::from([vec![ring.zero(); n]]);
    let mut gens = Vec::new();
    for w in words {
        if span.contains(w) {
            continue;
        }
        let multiples: Vec<Vec<Elem>> = ring.elements().map(|a| scale(ring, a, w)).collect();
        let mut next = HashSet::new();
        for s in &span {
            for m in &multiples {
                next.insert(add_words(ring, s, m));
            }
        }
        span = next;
        gens.push(w.clone());
        if span.len() == words.len() {
            break;
        }
    }
    gens
}

/// Set equality of two codes.
pub fn same_code(a: &LinearCode, b: &LinearCode, search: &Search) -> Result<bool, CodeError> {
    if a.ring.fingerprint() != b.ring.fingerprint() {
        return Err(CodeError::MixedRings);
    }
    if a.n != b.n {
        return Ok(false);
    }
    if is_field(&a.ring) {
        return Ok(linalg::rref(&a.ring, &a.gens) == linalg::rref(&b.ring, &b.gens));
    }
    if a.size(search)? != b.size(search)? {
        return Ok(false);
    }
    Ok(a.codewords(search)? == b.codewords(search)?)
}

/// `C = C⊥`. On Frobenius rings this is `C ⊆ C⊥` with `|C|² = |A|^n`;
/// otherwise the dual is computed.
pub fn is_self_dual(code: &LinearCode, sigma: &RingMap, search: &Search) -> Result<bool, CodeError> {
    if !is_self_orthogonal(code, sigma)? {
        return Ok(false);
    }
    if code.ring.is_frobenius() {
        let s = code.size(search)?;
        return Ok(s.times(s) == code.ambient());
    }
    let d = dual_code(code, sigma, search)?;
    Ok(d.size(search)? == code.size(search)?)
}

/// `σ` on `R` as a map of the standalone subring.
pub fn restrict_map(sigma: &RingMap, sub: &SubringHandle) -> Result<RingMap, CodeError> {
    if !sigma.preserves(sub) {
        return Err(BasisError::SigmaDoesNotPreserveR.into());
    }
    let r = sub.to_ring();
    let perm = sub
        .elements()
        .iter()
        .map(|&e| sub.local_index(sigma.apply(e)).expect("σ preserves R"))
        .collect();
    RingMap::from_perm(&r, perm, sigma.kind()).map_err(|_| CodeError::NotInvolution)
}

/// `Φ(C)` over the standalone subring: rows `Φ(b_t·g_j)`, `j` outer and
/// `t` inner.
pub fn phi_image(code: &LinearCode, basis: &ModuleBasis) -> Result<LinearCode, CodeError> {
    if basis.ring().fingerprint() != code.ring.fingerprint() {
        return Err(CodeError::MixedRings);
    }
    let ring = &code.ring;
    let sub = basis.subring();
    let r_ring = sub.to_ring();
    let local = |e: Elem| sub.local_index(e).expect("coordinates lie in R");
    let mut rows = Vec::with_capacity(code.gens.len() * basis.rank());
    for g in &code.gens {
        for &b in basis.vecs() {
            let w = scale(ring, b, g);
            rows.push(basis.phi(&w).into_iter().map(local).collect());
        }
    }
    let n = code.n * basis.rank();
    let image = if code.free {
        // |Φ(C)| = |A|^k = |R|^{rk}, so the rk rows are free.
        LinearCode::assemble(&r_ring, n, rows, true)
    } else {
        let mut c = LinearCode::new(&r_ring, n, rows)?;
        c.size = code.size;
        c
    };
    Ok(image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Lee,
}

impl std::str::FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hamming" => Ok(Metric::Hamming),
            "lee" => Ok(Metric::Lee),
            _ => Err(format!("unknown metric `{s}`")),
        }
    }
}

/// Per-element weights; zero only on `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub metric: Metric,
    pub weights: Vec<u32>,
}

impl WeightTable {
    pub fn hamming(ring: &FiniteRing) -> WeightTable {
        WeightTable {
            metric: Metric::Hamming,
            weights: ring.elements().map(|a| (a != ring.zero()) as u32).collect(),
        }
    }

    /// Z₄ Lee weights `(0, 1, 2, 1)`, extended to a Z₄-algebra through the
    /// coordinates in `lee_basis`.
    pub fn lee(ring: &Arc<FiniteRing>, lee_basis: Option<&[Elem]>) -> Result<WeightTable, CodeError> {
        let prime = SubringHandle::prime(ring);
        if prime.order() != 4 || ring.characteristic() != 4 {
            return Err(CodeError::LeeUndefined(format!("{} is not a Z4-algebra", ring.name())));
        }
        let z4: Vec<u32> = (0..4).map(|k| (k as u32).min(4 - k as u32)).collect();
        let lee_of = |c: Elem| -> u32 {
            (0..4).find(|&k| ring.from_int(k as i64) == c).map(|k| z4[k]).expect("coordinate in Z4")
        };
        let weights = if ring.order() == 4 {
            ring.elements().map(lee_of).collect()
        } else {
            let b = lee_basis
                .ok_or_else(|| CodeError::LeeUndefined(format!("{} has no designated Z4-basis", ring.name())))?;
            let basis = ModuleBasis::new(&prime, b)?;
            ring.elements().map(|a| basis.rho(a).iter().map(|&c| lee_of(c)).sum()).collect()
        };
        Ok(WeightTable {
            metric: Metric::Lee,
            weights,
        })
    }

    fn of(&self, w: &[Elem]) -> u32 {
        w.iter().map(|&x| self.weights[x as usize]).sum()
    }

    fn is_hamming(&self) -> bool {
        self.metric == Metric::Hamming
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub metric: Metric,
    /// Smallest nonzero weight; 0 for the zero code.
    pub min_distance: u32,
    /// `distribution[w]` codewords of weight `w`.
    pub distribution: Vec<u64>,
}

impl WeightProfile {
    fn from_histogram(metric: Metric, mut distribution: Vec<u64>) -> WeightProfile {
        while distribution.len() > 1 && distribution.last() == Some(&0) {
            distribution.pop();
        }
        let min_distance = distribution.iter().skip(1).position(|&c| c > 0).map_or(0, |p| p as u32 + 1);
        WeightProfile {
            metric,
            min_distance,
            distribution,
        }
    }

    pub fn total(&self) -> u128 {
        self.distribution.iter().map(|&c| c as u128).sum()
    }

    /// `1+508z^8+896z^10+…` truncated after `terms` nonzero terms.
    pub fn enumerator(&self, terms: usize) -> String {
        let nz: Vec<(usize, u64)> = self.distribution.iter().copied().enumerate().filter(|&(_, c)| c > 0).collect();
        let mut s: Vec<String> = nz
            .iter()
            .take(terms)
            .map(|&(w, c)| if w == 0 { c.to_string() } else { format!("{c}z^{w}") })
            .collect();
        if nz.len() > terms {
            s.push("…".into());
        }
        s.join("+")
    }
}

pub fn weight_profile(code: &LinearCode, table: &WeightTable, search: &Search) -> Result<WeightProfile, CodeError> {
    let max = table.weights.iter().copied().max().unwrap_or(0) as usize * code.n;
    let span = code.span(search)?;
    if let (true, Span::Free(rows)) = (table.is_hamming(), &span) {
        if let Some(b) = binary::BinaryRows::pack(&code.ring, rows) {
            search.check(1u128 << rows.len().min(127))?;
            return Ok(WeightProfile::from_histogram(table.metric, b.histogram(search)));
        }
    }
    let mut hist = vec![0u64; max + 1];
    match span {
        Span::Set(words) => {
            for w in &words {
                hist[table.of(w) as usize] += 1;
            }
        }
        Span::Free(rows) => {
            search.check(pow_u128(code.ring.order(), rows.len()))?;
            let chunks = for_each_free(&code.ring, &rows, code.n, search, || vec![0u64; max + 1], |h, w| {
                h[table.of(w) as usize] += 1;
                true
            });
            for c in chunks {
                for (a, b) in hist.iter_mut().zip(c) {
                    *a += b;
                }
            }
        }
    }
    Ok(WeightProfile::from_histogram(table.metric, hist))
}

/// The minimum distance when it exceeds `cutoff`; `None` as soon as a
/// nonzero codeword of weight at most `cutoff` turns up, or for the zero
/// code.
pub fn min_distance_above(code: &LinearCode, table: &WeightTable, cutoff: u32, search: &Search) -> Result<Option<u32>, CodeError> {
    let span = code.span(search)?;
    if let (true, Span::Free(rows)) = (table.is_hamming(), &span) {
        if let Some(b) = binary::BinaryRows::pack(&code.ring, rows) {
            search.check(1u128 << rows.len().min(127))?;
            return Ok(b.min_weight_above(cutoff, search));
        }
    }
    let best = match span {
        Span::Set(words) => {
            let m = words.iter().map(|w| table.of(w)).filter(|&w| w > 0).min();
            m.filter(|&d| d > cutoff)
        }
        Span::Free(rows) => {
            search.check(pow_u128(code.ring.order(), rows.len()))?;
            let stop = AtomicBool::new(false);
            let chunks = for_each_free(&code.ring, &rows, code.n, search, || u32::MAX, |m, w| {
                let wt = table.of(w);
                if wt > 0 {
                    if wt <= cutoff {
                        stop.store(true, Ordering::Relaxed);
                        return false;
                    }
                    *m = (*m).min(wt);
                }
                !stop.load(Ordering::Relaxed)
            });
            if stop.load(Ordering::Relaxed) {
                None
            } else {
                chunks.into_iter().min().filter(|&m| m != u32::MAX)
            }
        }
    };
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BinaryType {
    I,
    II,
}

impl fmt::Display for BinaryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryType::I => "I",
            BinaryType::II => "II",
        })
    }
}

/// Type by full enumeration: II iff every weight is `0 mod 4`.
pub fn classify_binary_type(code: &LinearCode, search: &Search) -> Result<BinaryType, CodeError> {
    if code.ring.order() != 2 {
        return Err(CodeError::NotBinary);
    }
    if !is_self_dual(code, &RingMap::identity(&code.ring), search)? {
        return Err(CodeError::NotSelfDual);
    }
    let p = weight_profile(code, &WeightTable::hamming(&code.ring), search)?;
    let doubly_even = p.distribution.iter().enumerate().all(|(w, &c)| c == 0 || w % 4 == 0);
    Ok(if doubly_even { BinaryType::II } else { BinaryType::I })
}

/// Type of a self-orthogonal binary code from its generators: doubly even
/// rows span a doubly even code.
pub fn binary_type_from_rows(code: &LinearCode) -> Result<BinaryType, CodeError> {
    if code.ring.order() != 2 {
        return Err(CodeError::NotBinary);
    }
    let zero = code.ring.zero();
    let doubly_even = code
        .gens
        .iter()
        .all(|g| g.iter().filter(|&&x| x != zero).count() % 4 == 0);
    Ok(if doubly_even { BinaryType::II } else { BinaryType::I })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    RingFrobenius,
    SubringFrobenius,
    SigmaPreservesSubring,
    /// Pseudo-self-dual for `(σ, H)`, or symmetric with σ fixing the basis.
    BasisQualifies,
}

/// Both sides of `Φ(C⊥) = Φ(C)⊥`, computed whether or not the hypotheses
/// hold.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub failed: Vec<Hypothesis>,
    pub pseudo_self_dual: bool,
    pub symmetric_fixed: bool,
    pub code: Cardinality,
    pub dual: Cardinality,
    pub ambient: Cardinality,
    /// `|C|·|C⊥| = |A|^n`.
    pub wood: bool,
    pub phi_of_dual: Cardinality,
    pub dual_of_phi: Option<Cardinality>,
    /// `None` when σ does not restrict to `R`.
    pub preserved: Option<bool>,
}

impl DualityReport {
    pub fn hypotheses_met(&self) -> bool {
        self.failed.is_empty()
    }

    /// The theorem's conclusion holds wherever its hypotheses do.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_met() || self.preserved == Some(true)
    }
}

pub fn verify_duality_preservation(
    code: &LinearCode,
    basis: &ModuleBasis,
    sigma: &RingMap,
    h: &MapGroup,
    search: &Search,
) -> Result<DualityReport, CodeError> {
    check_sigma(code, sigma)?;
    let sub = basis.subring();
    let mut failed = Vec::new();
    if !code.ring.is_frobenius() {
        failed.push(Hypothesis::RingFrobenius);
    }
    if !sub.to_ring().is_frobenius() {
        failed.push(Hypothesis::SubringFrobenius);
    }
    let preserves = sigma.preserves(sub);
    if !preserves {
        failed.push(Hypothesis::SigmaPreservesSubring);
    }
    let pseudo_self_dual = preserves
        && sub.is_subset_of(&h.fixed_subring())
        && classify_basis(basis, sigma, h).is_ok_and(|c| c.pseudo_self_dual);
    let symmetric_fixed = sub.is_central() && is_symmetric(basis) && sigma.fixes_all(basis.vecs());
    if !pseudo_self_dual && !symmetric_fixed {
        failed.push(Hypothesis::BasisQualifies);
    }

    let dual = dual_code(code, sigma, search)?;
    let phi_dual = phi_image(&dual, basis)?;
    let phi_c = phi_image(code, basis)?;
    let (dual_of_phi, preserved) = if preserves {
        let s = restrict_map(sigma, sub)?;
        let d = dual_code(&phi_c, &s, search)?;
        (Some(d.size(search)?), Some(same_code(&phi_dual, &d, search)?))
    } else {
        (None, None)
    };
    let (c, cd) = (code.size(search)?, dual.size(search)?);
    Ok(DualityReport {
        failed,
        pseudo_self_dual,
        symmetric_fixed,
        code: c,
        dual: cd,
        ambient: code.ambient(),
        wood: c.times(cd) == code.ambient(),
        phi_of_dual: phi_dual.size(search)?,
        dual_of_phi,
        preserved,
    })
}
