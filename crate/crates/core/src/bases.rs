//! Free module bases of a ring over a subring, the component maps ρ and Φ,
//! Gram and multiplication matrices, and the trace-orthogonal,
//! pseudo-self-dual, self-dual and symmetric predicates.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::morphisms::{enumerate_automorphisms, enumerate_involutions, MapGroup, RingMap};
use crate::par::{self, BudgetExceeded, Search};
use crate::ring::{Elem, FiniteRing, SubringHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("ring of order {order} is not free of integer rank over a subring of order {sub}")]
    NotFreeRank { order: usize, sub: usize },
    #[error("elements do not form a free basis")]
    NotABasis,
    #[error("σ does not map the subring onto itself")]
    SigmaDoesNotPreserveR,
    #[error("φ does not map the subring onto itself")]
    PhiDoesNotPreserveR,
    #[error("the subring is not fixed by H")]
    RNotFixedByH,
    #[error("the subring is not central")]
    RNotCentral,
    #[error("σ is not an involution")]
    NotInvolution,
    #[error("ring is not a truncated polynomial ring over the subring")]
    NotTruncatedPolyRing,
    #[error("objects belong to different rings")]
    MixedRings,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// `r` with `|R|^r = |A|`.
pub fn free_rank(ring: &FiniteRing, sub: &SubringHandle) -> Result<usize, BasisError> {
    let err = BasisError::NotFreeRank {
        order: ring.order(),
        sub: sub.order(),
    };
    if sub.order() == 1 {
        return Err(err);
    }
    let mut acc = 1usize;
    let mut r = 0;
    while acc < ring.order() {
        acc *= sub.order();
        r += 1;
    }
    if acc == ring.order() {
        Ok(r)
    } else {
        Err(err)
    }
}

/// An ordered free left basis `(v_1, …, v_r)` of `A` over `R`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    sub: SubringHandle,
    vecs: Vec<Elem>,
    // ρ(a) flattened: coordinates of a at [a*r .. a*r+r], as elements of A.
    coords: Arc<Vec<Elem>>,
}

impl PartialEq for ModuleBasis {
    fn eq(&self, other: &Self) -> bool {
        self.vecs == other.vecs && self.sub == other.sub
    }
}

/// Builds the combination table of `vecs`; `None` if the map
/// `R^r → A` is not a bijection.
fn combination_table(ring: &FiniteRing, sub: &SubringHandle, vecs: &[Elem]) -> Option<Vec<Elem>> {
    let r = vecs.len();
    let n = ring.order();
    if par::pow_u128(sub.order(), r) != n as u128 {
        return None;
    }
    let mut coords = vec![0 as Elem; n * r];
    let mut hit = vec![false; n];
    let mut digits = vec![0usize; r];
    loop {
        let mut a = ring.zero();
        for (i, &d) in digits.iter().enumerate() {
            a = ring.add(a, ring.mul(sub.global(d as Elem), vecs[i]));
        }
        if std::mem::replace(&mut hit[a as usize], true) {
            return None;
        }
        for (i, &d) in digits.iter().enumerate() {
            coords[a as usize * r + i] = sub.global(d as Elem);
        }
        if !par::advance(&mut digits, sub.order()) {
            break;
        }
    }
    Some(coords)
}

impl ModuleBasis {
    pub fn new(sub: &SubringHandle, vecs: &[Elem]) -> Result<ModuleBasis, BasisError> {
        let ring = sub.parent();
        free_rank(ring, sub)?;
        let coords = combination_table(ring, sub, vecs).ok_or(BasisError::NotABasis)?;
        Ok(ModuleBasis {
            sub: sub.clone(),
            vecs: vecs.to_vec(),
            coords: Arc::new(coords),
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.sub.parent()
    }

    pub fn subring(&self) -> &SubringHandle {
        &self.sub
    }

    pub fn vecs(&self) -> &[Elem] {
        &self.vecs
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    /// Coordinates of `a`, as elements of `R`.
    pub fn rho(&self, a: Elem) -> &[Elem] {
        let r = self.rank();
        &self.coords[a as usize * r..a as usize * r + r]
    }

    pub fn rho_inv(&self, coords: &[Elem]) -> Elem {
        let ring = self.ring();
        coords
            .iter()
            .zip(&self.vecs)
            .fold(ring.zero(), |acc, (&c, &v)| ring.add(acc, ring.mul(c, v)))
    }

    /// `Φ: A^n → R^{rn}`.
    pub fn phi(&self, word: &[Elem]) -> Vec<Elem> {
        word.iter().flat_map(|&a| self.rho(a).iter().copied()).collect()
    }

    pub fn phi_inv(&self, v: &[Elem]) -> Vec<Elem> {
        v.chunks(self.rank()).map(|c| self.rho_inv(c)).collect()
    }

    /// Matrix of right multiplication by `a`: row `i` is `ρ(v_i a)`.
    pub fn mul_matrix(&self, a: Elem) -> MulMatrix {
        let ring = self.ring();
        MulMatrix {
            a,
            rows: self.vecs.iter().map(|&v| self.rho(ring.mul(v, a)).to_vec()).collect(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.vecs.iter().map(|&v| self.ring().label(v).to_string()).collect()
    }

    /// `(φσ(v_1), …, φσ(v_r))`.
    pub fn transform(&self, sigma: &RingMap, phi: &RingMap) -> Result<ModuleBasis, BasisError> {
        if !phi.preserves(&self.sub) {
            return Err(BasisError::PhiDoesNotPreserveR);
        }
        let vecs: Vec<Elem> = self.vecs.iter().map(|&v| phi.apply(sigma.apply(v))).collect();
        ModuleBasis::new(&self.sub, &vecs)
    }
}

/// Matrix over `R`, entries stored as elements of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulMatrix {
    pub a: Elem,
    pub rows: Vec<Vec<Elem>>,
}

impl MulMatrix {
    pub fn is_symmetric(&self) -> bool {
        let r = self.rows.len();
        (0..r).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn product(&self, other: &MulMatrix, ring: &FiniteRing) -> Vec<Vec<Elem>> {
        mat_mul(ring, &self.rows, &other.rows)
    }
}

pub fn mat_mul(ring: &FiniteRing, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(ring.zero(), |acc, (&x, brow)| ring.add(acc, ring.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

fn check_involution(sigma: &RingMap) -> Result<(), BasisError> {
    if sigma.is_involution() {
        Ok(())
    } else {
        Err(BasisError::NotInvolution)
    }
}

/// `⟨x, y⟩ = Σ x_i σ(y_i)`.
pub fn hermitian_form(sigma: &RingMap, x: &[Elem], y: &[Elem]) -> Result<Elem, BasisError> {
    check_involution(sigma)?;
    Ok(form_unchecked(sigma, x, y))
}

pub(crate) fn form_unchecked(sigma: &RingMap, x: &[Elem], y: &[Elem]) -> Elem {
    let ring = sigma.ring();
    x.iter()
        .zip(y)
        .fold(ring.zero(), |acc, (&a, &b)| ring.add(acc, ring.mul(a, sigma.apply(b))))
}

/// Entries `v_i σ(v_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Elem>>,
}

pub fn gram_matrix(basis: &ModuleBasis, sigma: &RingMap) -> Result<GramMatrix, BasisError> {
    check_involution(sigma)?;
    if !sigma.preserves(basis.subring()) {
        return Err(BasisError::SigmaDoesNotPreserveR);
    }
    let ring = basis.ring();
    let v = basis.vecs();
    Ok(GramMatrix {
        entries: v
            .iter()
            .map(|&a| v.iter().map(|&b| ring.mul(a, sigma.apply(b))).collect())
            .collect(),
    })
}

impl GramMatrix {
    /// `⟨x, y⟩` computed as `Φ(x) 𝓜 σ(Φ(y))ᵀ` with `𝓜` block diagonal.
    pub fn form_via_blocks(&self, basis: &ModuleBasis, sigma: &RingMap, x: &[Elem], y: &[Elem]) -> Elem {
        let ring = basis.ring();
        let r = basis.rank();
        let (px, py) = (basis.phi(x), basis.phi(y));
        let mut acc = ring.zero();
        for k in 0..x.len() {
            for i in 0..r {
                for j in 0..r {
                    let t = ring.mul(ring.mul(px[k * r + i], self.entries[i][j]), sigma.apply(py[k * r + j]));
                    acc = ring.add(acc, t);
                }
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisClass {
    TraceOrthogonal,
    PseudoSelfDual,
    SelfDual,
    Symmetric,
}

impl std::str::FromStr for BasisClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trace-orth" | "trace-orthogonal" => Ok(BasisClass::TraceOrthogonal),
            "psd" | "pseudo-self-dual" => Ok(BasisClass::PseudoSelfDual),
            "self-dual" | "sd" => Ok(BasisClass::SelfDual),
            "symmetric" | "sym" => Ok(BasisClass::Symmetric),
            _ => Err(format!("unknown basis class `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisClassification {
    pub trace_orthogonal: bool,
    pub pseudo_self_dual: bool,
    pub self_dual: bool,
    /// `None` when the subring is not central.
    pub symmetric: Option<bool>,
    pub gamma: Option<Elem>,
}

/// Precomputed tables for the trace predicates of a fixed `(R, σ, H)`.
#[derive(Clone, Debug)]
pub struct TraceContext {
    ring: Arc<FiniteRing>,
    // Tr_H(a σ(b)) at a*n+b.
    form: Vec<Elem>,
    // Candidate γ values: non-zero-divisors commuting with R.
    gamma_ok: Vec<bool>,
}

impl TraceContext {
    pub fn new(sub: &SubringHandle, sigma: &RingMap, h: &MapGroup) -> Result<TraceContext, BasisError> {
        let ring = sub.parent().clone();
        if sigma.ring().fingerprint() != ring.fingerprint() || h.ring().fingerprint() != ring.fingerprint() {
            return Err(BasisError::MixedRings);
        }
        check_involution(sigma)?;
        if !sigma.preserves(sub) {
            return Err(BasisError::SigmaDoesNotPreserveR);
        }
        let fixed = h.fixed_subring();
        if !sub.is_subset_of(&fixed) {
            return Err(BasisError::RNotFixedByH);
        }
        let n = ring.order();
        let tr = h.trace_table();
        let mut form = vec![0; n * n];
        for a in ring.elements() {
            for b in ring.elements() {
                form[a as usize * n + b as usize] = tr[ring.mul(a, sigma.apply(b)) as usize];
            }
        }
        let zd = ring.units_and_zero_divisors();
        let gamma_ok = ring
            .elements()
            .map(|g| {
                g != ring.zero()
                    && !zd.zero_divisors.contains(&g)
                    && sub.elements().iter().all(|&r| ring.mul(g, r) == ring.mul(r, g))
            })
            .collect();
        Ok(TraceContext { ring, form, gamma_ok })
    }

    #[inline]
    pub fn tr_form(&self, a: Elem, b: Elem) -> Elem {
        self.form[a as usize * self.ring.order() + b as usize]
    }

    /// Whether the last element of `prefix` keeps the prefix in `class`.
    fn extends(&self, class: BasisClass, prefix: &[Elem]) -> bool {
        let k = prefix.len() - 1;
        let vk = prefix[k];
        let zero = self.ring.zero();
        let ok_pairs = prefix[..k]
            .iter()
            .all(|&vi| self.tr_form(vi, vk) == zero && self.tr_form(vk, vi) == zero);
        if !ok_pairs {
            return false;
        }
        let d = self.tr_form(vk, vk);
        if d == zero {
            return false;
        }
        match class {
            BasisClass::TraceOrthogonal | BasisClass::Symmetric => true,
            BasisClass::PseudoSelfDual => self.gamma_ok[d as usize] && d == self.tr_form(prefix[0], prefix[0]),
            BasisClass::SelfDual => d == self.ring.one(),
        }
    }

    pub fn classify(&self, vecs: &[Elem]) -> (bool, Option<Elem>) {
        let zero = self.ring.zero();
        let to = vecs.iter().enumerate().all(|(i, &a)| {
            vecs.iter()
                .enumerate()
                .all(|(j, &b)| (i == j) != (self.tr_form(a, b) == zero))
        });
        if !to {
            return (false, None);
        }
        let g = self.tr_form(vecs[0], vecs[0]);
        let constant = vecs.iter().all(|&v| self.tr_form(v, v) == g);
        (true, constant.then_some(g))
    }
}

/// Classifies one basis. The trace predicates use `(σ, H)`; the symmetric
/// predicate is independent of both.
pub fn classify_basis(basis: &ModuleBasis, sigma: &RingMap, h: &MapGroup) -> Result<BasisClassification, BasisError> {
    let ctx = TraceContext::new(basis.subring(), sigma, h)?;
    let (trace_orthogonal, gamma) = ctx.classify(basis.vecs());
    let pseudo_self_dual = gamma.is_some_and(|g| ctx.gamma_ok[g as usize]);
    let self_dual = pseudo_self_dual && gamma == Some(basis.ring().one());
    Ok(BasisClassification {
        trace_orthogonal,
        pseudo_self_dual,
        self_dual,
        symmetric: basis.subring().is_central().then(|| is_symmetric(basis)),
        gamma,
    })
}

/// Every `M_{v_i}` is symmetric.
pub fn is_symmetric(basis: &ModuleBasis) -> bool {
    basis.vecs().iter().all(|&v| basis.mul_matrix(v).is_symmetric())
}

/// Search space of unordered bases of `A` over `R`.
#[derive(Clone, Debug)]
pub struct BasisSpace {
    sub: SubringHandle,
    rank: usize,
}

/// A complete candidate basis during enumeration.
pub struct BasisView<'a> {
    pub vecs: &'a [Elem],
    sub: &'a SubringHandle,
    // combination index of each element of A
    index: &'a [u32],
}

impl BasisView<'_> {
    /// Coordinate `i` of `ρ(a)`.
    #[inline]
    pub fn coord(&self, a: Elem, i: usize) -> Elem {
        let q = self.sub.order() as u32;
        let d = (self.index[a as usize] / q.pow(i as u32)) % q;
        self.sub.global(d as Elem)
    }

    pub fn is_symmetric(&self, ring: &FiniteRing) -> bool {
        let r = self.vecs.len();
        self.vecs.iter().all(|&v| {
            (0..r).all(|i| (0..i).all(|j| self.coord(ring.mul(self.vecs[i], v), j) == self.coord(ring.mul(self.vecs[j], v), i)))
        })
    }
}

impl BasisSpace {
    pub fn new(sub: &SubringHandle) -> Result<BasisSpace, BasisError> {
        let rank = free_rank(sub.parent(), sub)?;
        Ok(BasisSpace { sub: sub.clone(), rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn subring(&self) -> &SubringHandle {
        &self.sub
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.sub.parent()
    }

    /// Upper bound on the number of prefixes visited.
    pub fn candidate_bound(&self) -> u128 {
        let n = self.ring().order() as u128;
        (0..self.rank as u128).fold(1u128, |acc, i| acc.saturating_mul(n - i.min(n)))
    }

    /// Runs a pruned depth-first search over ascending tuples. `prefix_ok`
    /// sees each extended prefix; `full` sees each complete basis. Results
    /// are in lexicographic order of the tuple.
    pub fn search<P, F>(&self, search: &Search, prefix_ok: P, full: F) -> Result<Vec<Vec<Elem>>, BasisError>
    where
        P: Fn(&[Elem]) -> bool + Sync,
        F: Fn(&BasisView) -> bool + Sync,
    {
        search.check(self.candidate_bound() / factorial(self.rank))?;
        let n = self.ring().order();
        let chunks = par::map_chunks(search.strategy, n, |first| {
            let mut out = Vec::new();
            let mut st = Dfs::new(self, n);
            st.run(first as Elem, &prefix_ok, &full, &mut out);
            out
        });
        Ok(chunks.into_iter().flatten().collect())
    }

    pub fn count<P, F>(&self, search: &Search, prefix_ok: P, full: F) -> Result<usize, BasisError>
    where
        P: Fn(&[Elem]) -> bool + Sync,
        F: Fn(&BasisView) -> bool + Sync,
    {
        Ok(self.search(search, prefix_ok, full)?.len())
    }

    pub fn all(&self, search: &Search) -> Result<Vec<Vec<Elem>>, BasisError> {
        self.search(search, |_| true, |_| true)
    }

    pub fn symmetric(&self, search: &Search) -> Result<Vec<Vec<Elem>>, BasisError> {
        if !self.sub.is_central() {
            return Err(BasisError::RNotCentral);
        }
        let ring = self.ring().clone();
        self.search(search, |_| true, move |b| b.is_symmetric(&ring))
    }

    /// Bases in a trace class for `(σ, H)`.
    pub fn trace_class(&self, search: &Search, ctx: &TraceContext, class: BasisClass) -> Result<Vec<Vec<Elem>>, BasisError> {
        self.search(search, |p| ctx.extends(class, p), |_| true)
    }

    pub fn by_class(
        &self,
        search: &Search,
        class: BasisClass,
        sigma: &RingMap,
        h: &MapGroup,
    ) -> Result<Vec<Vec<Elem>>, BasisError> {
        match class {
            BasisClass::Symmetric => self.symmetric(search),
            _ => {
                let ctx = TraceContext::new(&self.sub, sigma, h)?;
                self.trace_class(search, &ctx, class)
            }
        }
    }

    pub fn basis(&self, vecs: &[Elem]) -> Result<ModuleBasis, BasisError> {
        ModuleBasis::new(&self.sub, vecs)
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product::<u128>().max(1)
}

struct Dfs<'a> {
    space: &'a BasisSpace,
    ring: &'a FiniteRing,
    prefix: Vec<Elem>,
    // span[i] = element with combination index i
    span: Vec<Elem>,
    // combination index per element, u32::MAX if outside the span
    index: Vec<u32>,
}

impl<'a> Dfs<'a> {
    fn new(space: &'a BasisSpace, n: usize) -> Self {
        let ring = space.ring();
        let mut index = vec![u32::MAX; n];
        index[ring.zero() as usize] = 0;
        Dfs {
            space,
            ring,
            prefix: Vec::with_capacity(space.rank),
            span: vec![ring.zero()],
            index,
        }
    }

    /// Extends the span by `v`; returns false (leaving state untouched) if
    /// the extension is not injective.
    fn push(&mut self, v: Elem) -> bool {
        let q = self.space.sub.order();
        let base = self.span.len();
        let sub = &self.space.sub;
        let mut added = 0;
        let mut ok = true;
        'outer: for j in 1..q {
            let av = self.ring.mul(sub.global(j as Elem), v);
            for s in 0..base {
                let e = self.ring.add(self.span[s], av) as usize;
                if self.index[e] != u32::MAX {
                    ok = false;
                    break 'outer;
                }
                self.index[e] = (j * base + s) as u32;
                self.span.push(e as Elem);
                added += 1;
            }
        }
        if !ok {
            for e in self.span.drain(base..) {
                self.index[e as usize] = u32::MAX;
            }
            debug_assert!(added <= base * q);
            return false;
        }
        self.prefix.push(v);
        true
    }

    fn pop(&mut self) {
        let q = self.space.sub.order();
        let base = self.span.len() / q;
        for e in self.span.drain(base..) {
            self.index[e as usize] = u32::MAX;
        }
        self.prefix.pop();
    }

    fn run<P, F>(&mut self, first: Elem, prefix_ok: &P, full: &F, out: &mut Vec<Vec<Elem>>)
    where
        P: Fn(&[Elem]) -> bool,
        F: Fn(&BasisView) -> bool,
    {
        if !self.push(first) {
            return;
        }
        if prefix_ok(&self.prefix) {
            self.descend(prefix_ok, full, out);
        }
        self.pop();
    }

    fn descend<P, F>(&mut self, prefix_ok: &P, full: &F, out: &mut Vec<Vec<Elem>>)
    where
        P: Fn(&[Elem]) -> bool,
        F: Fn(&BasisView) -> bool,
    {
        if self.prefix.len() == self.space.rank {
            let view = BasisView {
                vecs: &self.prefix,
                sub: &self.space.sub,
                index: &self.index,
            };
            if full(&view) {
                out.push(self.prefix.clone());
            }
            return;
        }
        let last = *self.prefix.last().unwrap();
        for v in last as usize + 1..self.ring.order() {
            let v = v as Elem;
            if self.index[v as usize] != u32::MAX {
                continue;
            }
            if !self.push(v) {
                continue;
            }
            if prefix_ok(&self.prefix) {
                self.descend(prefix_ok, full, out);
            }
            self.pop();
        }
    }
}

/// `F_q[x]/(x^r)` over `F_q`: with `B` the matrix whose rows are
/// `ρ(x^{i-1})`, test that `BBᵀ` is upper anti-triangular with constant
/// anti-diagonals.
pub fn alfaro_condition(basis: &ModuleBasis) -> Result<bool, BasisError> {
    let ring = basis.ring();
    let r = basis.rank();
    let x = ring.parse_element("x").map_err(|_| BasisError::NotTruncatedPolyRing)?;
    let sub = basis.subring();
    let is_field = sub.elements().iter().all(|&a| a == ring.zero() || ring.is_unit(a));
    let powers: Vec<Elem> = (0..r).map(|i| ring.pow(x, i)).collect();
    if !is_field || ring.pow(x, r) != ring.zero() || ModuleBasis::new(sub, &powers).is_err() {
        return Err(BasisError::NotTruncatedPolyRing);
    }
    let b: Vec<Vec<Elem>> = powers.iter().map(|&p| basis.rho(p).to_vec()).collect();
    let p = mat_mul(ring, &b, &transpose(&b));
    Ok(upper_anti_triangular_hankel(ring, &p))
}

fn upper_anti_triangular_hankel(ring: &FiniteRing, p: &[Vec<Elem>]) -> bool {
    let r = p.len();
    for s in 0..2 * r - 1 {
        let cells: Vec<Elem> = (0..r).filter(|&i| s >= i && s - i < r).map(|i| p[i][s - i]).collect();
        if cells.iter().any(|&c| c != cells[0]) {
            return false;
        }
        if s >= r && cells[0] != ring.zero() {
            return false;
        }
    }
    p[0][r - 1] != ring.zero()
}

/// All unital subrings, via joins of singly generated subrings.
pub fn all_subrings(ring: &Arc<FiniteRing>) -> Vec<SubringHandle> {
    let mut found: Vec<Vec<Elem>> = Vec::new();
    for a in ring.elements() {
        let s = ring.subring_elements(&[a]);
        if !found.contains(&s) {
            found.push(s);
        }
    }
    let cyclic = found.clone();
    let mut i = 0;
    while i < found.len() {
        for c in &cyclic {
            if c.iter().all(|e| found[i].contains(e)) {
                continue;
            }
            let mut gens = found[i].clone();
            gens.extend_from_slice(c);
            let s = ring.subring_elements(&gens);
            if !found.contains(&s) {
                found.push(s);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|s| SubringHandle::from_elements(ring.clone(), &s).expect("closure is a subring"))
        .collect()
}

/// Outcome of an exhaustive search for pseudo-self-dual bases over every
/// `(R, σ, H)` with `R` proper and free, `σ(R) = R` and `R ⊆ A^H`.
#[derive(Clone, Debug, Serialize)]
pub struct PsdCertificate {
    pub ring: String,
    pub subrings: usize,
    pub triples: usize,
    pub bases_examined: usize,
    pub found: usize,
    /// `(subring labels, σ index, |H|, count)` for every triple with hits.
    pub hits: Vec<(Vec<String>, usize, usize, usize)>,
}

pub fn psd_certificate(ring: &Arc<FiniteRing>, search: &Search) -> Result<PsdCertificate, BasisError> {
    let aut = enumerate_automorphisms(ring);
    let groups = aut.subgroups();
    let involutions = enumerate_involutions(ring);
    let mut cert = PsdCertificate {
        ring: ring.name().to_string(),
        subrings: 0,
        triples: 0,
        bases_examined: 0,
        found: 0,
        hits: Vec::new(),
    };
    for sub in all_subrings(ring) {
        if sub.order() == ring.order() {
            continue;
        }
        let Ok(space) = BasisSpace::new(&sub) else { continue };
        let total = space.all(search)?.len();
        if total == 0 {
            continue;
        }
        cert.subrings += 1;
        for (si, sigma) in involutions.iter().enumerate() {
            if !sigma.preserves(&sub) {
                continue;
            }
            for h in &groups {
                if !sub.is_subset_of(&h.fixed_subring()) {
                    continue;
                }
                cert.triples += 1;
                cert.bases_examined += total;
                let ctx = TraceContext::new(&sub, sigma, h)?;
                let hits = space.trace_class(search, &ctx, BasisClass::PseudoSelfDual)?.len();
                if hits > 0 {
                    cert.found += hits;
                    let labels = sub.elements().iter().map(|&e| ring.label(e).to_string()).collect();
                    cert.hits.push((labels, si, h.order(), hits));
                }
            }
        }
    }
    Ok(cert)
}
