//! Finite unital rings stored as Cayley tables.

mod build;
mod groebner;
pub mod parse;
pub(crate) mod program;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use build::{build_ring, RingPresentation, Twist};
use parse::{longest_name, parse_expr, ExprDomain};
use program::{Program, UNSET};

/// Element index. Rings have at most 256 elements.
pub type Elem = u8;

pub const MAX_ORDER: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring order {0} exceeds the cap of 256")]
    OrderTooLarge(u128),
    #[error("relation polynomial is not monic")]
    NonMonicRelation,
    #[error("tables fail the ring axioms: {}", .0.join(", "))]
    InconsistentTables(Vec<String>),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("cannot parse element '{input}': {reason}")]
    Parse { input: String, reason: String },
}

/// Outcome of the exhaustive ring-axiom audit. Each failure carries the
/// first counterexample found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingAudit {
    pub shape_ok: bool,
    pub failures: Vec<String>,
}

impl RingAudit {
    pub fn passed(&self) -> bool {
        self.shape_ok && self.failures.is_empty()
    }

    /// Audits raw tables. `add` and `mul` are row-major `n × n`.
    pub fn of_tables(n: usize, add: &[usize], mul: &[usize], zero: usize, one: usize) -> RingAudit {
        let mut audit = RingAudit {
            shape_ok: n > 0
                && add.len() == n * n
                && mul.len() == n * n
                && zero < n
                && one < n
                && add.iter().chain(mul).all(|&v| v < n),
            failures: Vec::new(),
        };
        if !audit.shape_ok {
            audit.failures.push("table shape".into());
            return audit;
        }
        let a = |x: usize, y: usize| add[x * n + y];
        let m = |x: usize, y: usize| mul[x * n + y];
        let mut fail = |what: &str, x: usize, y: usize, z: Option<usize>| {
            if !audit.failures.iter().any(|f| f.starts_with(what)) {
                let at = match z {
                    Some(z) => format!("{what} at ({x},{y},{z})"),
                    None => format!("{what} at ({x},{y})"),
                };
                audit.failures.push(at);
            }
        };
        for x in 0..n {
            if a(zero, x) != x || a(x, zero) != x {
                fail("additive identity", x, zero, None);
            }
            if !(0..n).any(|y| a(x, y) == zero) {
                fail("additive inverse", x, x, None);
            }
            if m(one, x) != x || m(x, one) != x {
                fail("multiplicative identity", x, one, None);
            }
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    fail("additive commutativity", x, y, None);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let axy = a(x, y);
                let mxy = m(x, y);
                for z in 0..n {
                    if a(axy, z) != a(x, a(y, z)) {
                        fail("additive associativity", x, y, Some(z));
                    }
                    if m(mxy, z) != m(x, m(y, z)) {
                        fail("multiplicative associativity", x, y, Some(z));
                    }
                    if m(x, a(y, z)) != a(mxy, m(x, z)) {
                        fail("left distributivity", x, y, Some(z));
                    }
                    if m(axy, z) != a(m(x, z), m(y, z)) {
                        fail("right distributivity", x, y, Some(z));
                    }
                }
            }
        }
        audit
    }
}

/// Units, zero divisors and (always empty for finite rings) regular non-units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPartition {
    pub units: Vec<Elem>,
    pub zero_divisors: Vec<Elem>,
    pub regular_nonunits: Vec<Elem>,
}

/// An additive character with values in `Z_e`, where `e` is the exponent of
/// the additive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub exponent: u32,
    pub values: Vec<u32>,
}

pub struct FiniteRing {
    name: String,
    n: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Option<Elem>>,
    zero: Elem,
    one: Elem,
    generators: Vec<Elem>,
    labels: Vec<String>,
    label_index: HashMap<String, Elem>,
    names: Vec<(String, Elem)>,
    characteristic: usize,
    commutative: bool,
    fingerprint: u64,
    additive_order: Vec<u32>,
    frobenius: OnceLock<Option<Character>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("order", &self.n)
            .field("characteristic", &self.characteristic)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl FiniteRing {
    /// Builds a ring from row-major tables, auditing all axioms. When
    /// `generators` does not generate the ring, extra generators are added
    /// greedily.
    pub fn from_tables(
        name: impl Into<String>,
        add: &[usize],
        mul: &[usize],
        zero: usize,
        one: usize,
        generators: &[usize],
        labels: Option<Vec<String>>,
    ) -> Result<FiniteRing, RingError> {
        let n = (add.len() as f64).sqrt().round() as usize;
        if n > MAX_ORDER {
            return Err(RingError::OrderTooLarge(n as u128));
        }
        let audit = RingAudit::of_tables(n, add, mul, zero, one);
        if !audit.passed() {
            return Err(RingError::InconsistentTables(audit.failures));
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(RingError::InvalidPresentation("generator out of range".into()));
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
        if labels.len() != n {
            return Err(RingError::InvalidPresentation("label count differs from order".into()));
        }
        let mut label_index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i as Elem).is_some() {
                return Err(RingError::InvalidPresentation(format!("duplicate label {l}")));
            }
        }
        let to8 = |v: &[usize]| v.iter().map(|&x| x as Elem).collect::<Vec<_>>();
        let add8 = to8(add);
        let mul8 = to8(mul);
        let mut neg = vec![0; n];
        for x in 0..n {
            neg[x] = (0..n).find(|&y| add[x * n + y] == zero).unwrap() as Elem;
        }
        let mut inv = vec![None; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| mul[x * n + y] == one && mul[y * n + x] == one)
                .map(|y| y as Elem);
        }
        let commutative = (0..n).all(|x| (0..n).all(|y| mul[x * n + y] == mul[y * n + x]));
        let mut additive_order = vec![0u32; n];
        for x in 0..n {
            let mut k = 1;
            let mut acc = x;
            while acc != zero {
                acc = add[acc * n + x];
                k += 1;
            }
            additive_order[x] = if x == zero { 1 } else { k };
        }
        let characteristic = additive_order[one] as usize;
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (n, zero, one).hash(&mut h);
        add8.hash(&mut h);
        mul8.hash(&mut h);
        let mut ring = FiniteRing {
            name: name.into(),
            n,
            add: add8,
            mul: mul8,
            neg,
            inv,
            zero: zero as Elem,
            one: one as Elem,
            generators: Vec::new(),
            labels,
            label_index,
            names: Vec::new(),
            characteristic,
            commutative,
            fingerprint: h.finish(),
            additive_order,
            frobenius: OnceLock::new(),
        };
        let gens: Vec<Elem> = generators.iter().map(|&g| g as Elem).collect();
        ring.generators = ring.complete_generators(&gens);
        Ok(ring)
    }

    fn complete_generators(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut gens = gens.to_vec();
        loop {
            let reached = Program::ring(self, &gens).reached().len();
            if reached == self.n {
                return gens;
            }
            let covered = self.subring_elements(&gens);
            let next = (0..self.n as u16)
                .map(|x| x as Elem)
                .find(|&x| !covered.contains(&x))
                .unwrap();
            gens.push(next);
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Two-sided inverse.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.inv[a as usize]
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv[a as usize].is_some()
    }

    /// Row `a` of the multiplication table: `b ↦ a·b`.
    #[inline]
    pub fn mul_row(&self, a: Elem) -> &[Elem] {
        let s = a as usize * self.n;
        &self.mul[s..s + self.n]
    }

    /// Row `a` of the addition table.
    #[inline]
    pub fn add_row(&self, a: Elem) -> &[Elem] {
        let s = a as usize * self.n;
        &self.add[s..s + self.n]
    }

    pub fn pow(&self, a: Elem, e: usize) -> Elem {
        let mut acc = self.one;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `k·1`.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = self.characteristic as i64;
        let k = k.rem_euclid(c);
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, self.one);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.n as u16).map(|x| x as Elem)
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn additive_order(&self, a: Elem) -> u32 {
        self.additive_order[a as usize]
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Registers a name usable in element expressions (variables, aliases).
    pub fn add_name(&mut self, name: impl Into<String>, value: Elem) {
        let name = name.into();
        self.names.retain(|(n, _)| *n != name);
        self.names.push((name, value));
    }

    pub fn names(&self) -> &[(String, Elem)] {
        &self.names
    }

    /// Parses an element: an exact label first, then an expression over the
    /// registered names.
    pub fn parse_element(&self, s: &str) -> Result<Elem, RingError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(&e) = self.label_index.get(&compact) {
            return Ok(e);
        }
        parse_expr(self, &compact).map_err(|reason| RingError::Parse {
            input: s.to_string(),
            reason,
        })
    }

    pub fn parse_elements(&self, items: &[impl AsRef<str>]) -> Result<Vec<Elem>, RingError> {
        items.iter().map(|s| self.parse_element(s.as_ref())).collect()
    }

    pub fn audit(&self) -> RingAudit {
        let widen = |v: &[Elem]| v.iter().map(|&x| x as usize).collect::<Vec<_>>();
        RingAudit::of_tables(
            self.n,
            &widen(&self.add),
            &widen(&self.mul),
            self.zero as usize,
            self.one as usize,
        )
    }

    /// Tables as row-major index vectors.
    pub fn add_table(&self) -> Vec<usize> {
        self.add.iter().map(|&x| x as usize).collect()
    }

    pub fn mul_table(&self) -> Vec<usize> {
        self.mul.iter().map(|&x| x as usize).collect()
    }

    pub fn units_and_zero_divisors(&self) -> UnitPartition {
        let mut units = Vec::new();
        let mut zero_divisors = Vec::new();
        let mut regular_nonunits = Vec::new();
        for a in self.elements() {
            if a == self.zero {
                continue;
            }
            if self.is_unit(a) {
                units.push(a);
            } else if self.elements().any(|b| {
                b != self.zero && (self.mul(a, b) == self.zero || self.mul(b, a) == self.zero)
            }) {
                zero_divisors.push(a);
            } else {
                regular_nonunits.push(a);
            }
        }
        UnitPartition {
            units,
            zero_divisors,
            regular_nonunits,
        }
    }

    /// True when `a` is neither a left nor a right zero divisor.
    pub fn is_regular(&self, a: Elem) -> bool {
        a != self.zero
            && self
                .elements()
                .all(|b| b == self.zero || (self.mul(a, b) != self.zero && self.mul(b, a) != self.zero))
    }

    /// Sorted elements of the subring generated by `s`.
    pub fn subring_elements(&self, s: &[Elem]) -> Vec<Elem> {
        Program::ring(self, s).reached().to_vec()
    }

    /// Element signature preserved by injective ring homomorphisms and by
    /// anti-automorphisms: additive order and the shape of the power
    /// sequence `a, a², …` (index of first repeat, period).
    pub fn signature(&self, a: Elem) -> (u32, u32, u32) {
        let mut seen = vec![0u32; self.n];
        let mut p = a;
        let mut k = 1u32;
        loop {
            if seen[p as usize] != 0 {
                let first = seen[p as usize];
                return (self.additive_order(a), first, k - first);
            }
            seen[p as usize] = k;
            p = self.mul(p, a);
            k += 1;
        }
    }

    pub fn signatures(&self) -> Vec<(u32, u32, u32)> {
        self.elements().map(|a| self.signature(a)).collect()
    }

    /// All injective unital homomorphisms `pattern → self`, as images of the
    /// pattern elements. Generator images are drawn from elements with the
    /// same signature.
    pub fn embeddings_of(&self, pattern: &FiniteRing) -> Vec<Vec<Elem>> {
        if pattern.order() > self.n {
            return Vec::new();
        }
        let prog = Program::ring(pattern, pattern.generators());
        let sigs = self.signatures();
        let cands: Vec<Vec<Elem>> = pattern
            .generators()
            .iter()
            .map(|&g| {
                let sg = pattern.signature(g);
                self.elements().filter(|&a| sigs[a as usize] == sg).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for_each_choice(&cands, |choice| {
            let mut seeds = vec![self.zero, self.one];
            seeds.extend_from_slice(choice);
            prog.replay(self, &seeds, false, &mut buf);
            if let Some(map) = check_hom(pattern, self, &buf, false, true) {
                out.push(map);
            }
        });
        out
    }

    pub fn is_frobenius(&self) -> bool {
        self.generating_character().is_some()
    }

    /// A left generating additive character: its kernel contains no nonzero
    /// left ideal. The result is cached.
    pub fn generating_character(&self) -> Option<&Character> {
        self.frobenius
            .get_or_init(|| self.find_generating_character())
            .as_ref()
    }

    fn find_generating_character(&self) -> Option<Character> {
        let e = self.elements().map(|a| self.additive_order(a)).max().unwrap_or(1);
        // Greedy additive generating set.
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = vec![false; self.n];
        span[self.zero as usize] = true;
        let mut by_order: Vec<Elem> = self.elements().collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.additive_order(a)));
        for a in by_order {
            if span[a as usize] {
                continue;
            }
            gens.push(a);
            for x in Program::additive(self, &gens).reached() {
                span[*x as usize] = true;
            }
        }
        let prog = Program::additive(self, &gens);
        // Characters are written as values in Z_e on `gens`; a generator of
        // additive order o may only take multiples of e / o.
        let steps: Vec<u32> = gens.iter().map(|&g| e / self.additive_order(g)).collect();
        let radices: Vec<usize> = gens.iter().map(|&g| self.additive_order(g) as usize).collect();
        let mut digits = vec![0usize; gens.len()];
        let mut buf = Vec::new();
        loop {
            let mut seeds = vec![0u32];
            seeds.extend(digits.iter().zip(&steps).map(|(&d, &s)| d as u32 * s));
            prog.replay_with(u32::MAX, &seeds, |l, r| (l + r) % e, |_, _| unreachable!(), &mut buf);
            if self.is_additive_hom(&buf, e) && self.is_generating(&buf) {
                return Some(Character {
                    exponent: e,
                    values: buf.clone(),
                });
            }
            let mut carried = true;
            for (d, &r) in digits.iter_mut().zip(&radices) {
                *d += 1;
                if *d < r {
                    carried = false;
                    break;
                }
                *d = 0;
            }
            if carried {
                return None;
            }
        }
    }

    fn is_additive_hom(&self, chi: &[u32], e: u32) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| chi[self.add(a, b) as usize] == (chi[a as usize] + chi[b as usize]) % e)
        })
    }

    fn is_generating(&self, chi: &[u32]) -> bool {
        self.elements()
            .filter(|&a| a != self.zero)
            .all(|a| self.elements().any(|b| chi[self.mul(b, a) as usize] != 0))
    }
}

impl ExprDomain for FiniteRing {
    type Value = Elem;
    fn zero(&self) -> Elem {
        self.zero
    }
    fn one(&self) -> Elem {
        self.one
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::add(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        FiniteRing::neg(self, *a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::mul(self, *a, *b)
    }
    fn name_prefix(&self, rest: &[char]) -> Option<(usize, Elem)> {
        longest_name(self.names.iter().map(|(n, v)| (n.as_str(), v)), rest)
    }
    fn bracket_literal(&self, text: &str) -> Option<Elem> {
        self.label_index.get(text).copied()
    }
}

/// Calls `f` on every tuple in the Cartesian product of `cands`.
pub(crate) fn for_each_choice<F: FnMut(&[Elem])>(cands: &[Vec<Elem>], mut f: F) {
    if cands.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; cands.len()];
    let mut choice: Vec<Elem> = cands.iter().map(|c| c[0]).collect();
    loop {
        f(&choice);
        let mut k = 0;
        loop {
            if k == cands.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                choice[k] = cands[k][idx[k]];
                break;
            }
            idx[k] = 0;
            choice[k] = cands[k][0];
            k += 1;
        }
    }
}

/// Verifies that a replayed image table is a (anti-)homomorphism from
/// `src` to `dst`, optionally injective. Returns the full image vector.
pub(crate) fn check_hom(
    src: &FiniteRing,
    dst: &FiniteRing,
    img: &[u16],
    anti: bool,
    injective: bool,
) -> Option<Vec<Elem>> {
    if img.len() < src.order() || img[..src.order()].contains(&UNSET) {
        return None;
    }
    let img: Vec<Elem> = img[..src.order()].iter().map(|&v| v as Elem).collect();
    if injective {
        let mut hit = vec![false; dst.order()];
        for &v in &img {
            if std::mem::replace(&mut hit[v as usize], true) {
                return None;
            }
        }
    }
    for a in src.elements() {
        let ia = img[a as usize];
        for b in src.elements() {
            let ib = img[b as usize];
            if img[src.add(a, b) as usize] != dst.add(ia, ib) {
                return None;
            }
            let prod = if anti { dst.mul(ib, ia) } else { dst.mul(ia, ib) };
            if img[src.mul(a, b) as usize] != prod {
                return None;
            }
        }
    }
    Some(img)
}

/// A unital subring of a parent ring.
#[derive(Clone)]
pub struct SubringHandle {
    parent: Arc<FiniteRing>,
    elements: Vec<Elem>,
    local: Vec<Option<Elem>>,
    label: Option<String>,
    ring: Arc<OnceLock<Arc<FiniteRing>>>,
}

impl fmt::Debug for SubringHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubringHandle")
            .field("parent", &self.parent.name())
            .field("order", &self.elements.len())
            .field("label", &self.label)
            .finish()
    }
}

impl PartialEq for SubringHandle {
    fn eq(&self, other: &Self) -> bool {
        self.parent.fingerprint() == other.parent.fingerprint() && self.elements == other.elements
    }
}

impl SubringHandle {
    /// Wraps a subset, checking closure.
    pub fn from_elements(parent: Arc<FiniteRing>, elements: &[Elem]) -> Result<SubringHandle, RingError> {
        let closure = parent.subring_elements(elements);
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if closure != sorted {
            return Err(RingError::InvalidPresentation(
                "subset is not a unital subring".into(),
            ));
        }
        Ok(Self::trusted(parent, sorted))
    }

    fn trusted(parent: Arc<FiniteRing>, elements: Vec<Elem>) -> SubringHandle {
        let mut local = vec![None; parent.order()];
        for (i, &e) in elements.iter().enumerate() {
            local[e as usize] = Some(i as Elem);
        }
        SubringHandle {
            parent,
            elements,
            local,
            label: None,
            ring: Arc::new(OnceLock::new()),
        }
    }

    pub fn generated(parent: &Arc<FiniteRing>, s: &[Elem]) -> SubringHandle {
        let elems = parent.subring_elements(s);
        Self::trusted(parent.clone(), elems)
    }

    pub fn whole(parent: &Arc<FiniteRing>) -> SubringHandle {
        Self::trusted(parent.clone(), parent.elements().collect())
    }

    pub fn prime(parent: &Arc<FiniteRing>) -> SubringHandle {
        Self::generated(parent, &[])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn parent(&self) -> &Arc<FiniteRing> {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.local[a as usize].is_some()
    }

    /// Position of `a` in the sorted element list.
    #[inline]
    pub fn local_index(&self, a: Elem) -> Option<Elem> {
        self.local[a as usize]
    }

    #[inline]
    pub fn global(&self, local: Elem) -> Elem {
        self.elements[local as usize]
    }

    pub fn is_central(&self) -> bool {
        self.elements.iter().all(|&r| {
            self.parent
                .elements()
                .all(|a| self.parent.mul(r, a) == self.parent.mul(a, r))
        })
    }

    pub fn is_subset_of(&self, other: &SubringHandle) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// The subring as a standalone ring on local indices, labelled with the
    /// parent's labels.
    pub fn to_ring(&self) -> Arc<FiniteRing> {
        self.ring
            .get_or_init(|| {
                let k = self.elements.len();
                let p = &self.parent;
                let loc = |e: Elem| self.local[e as usize].unwrap() as usize;
                let mut add = vec![0; k * k];
                let mut mul = vec![0; k * k];
                for (i, &a) in self.elements.iter().enumerate() {
                    for (j, &b) in self.elements.iter().enumerate() {
                        add[i * k + j] = loc(p.add(a, b));
                        mul[i * k + j] = loc(p.mul(a, b));
                    }
                }
                let labels = self.elements.iter().map(|&e| p.label(e).to_string()).collect();
                let gens: Vec<usize> = Vec::new();
                let name = self
                    .label
                    .clone()
                    .unwrap_or_else(|| format!("subring of {}", p.name()));
                let mut r = FiniteRing::from_tables(
                    name,
                    &add,
                    &mul,
                    loc(p.zero()),
                    loc(p.one()),
                    &gens,
                    Some(labels),
                )
                .expect("a closed subset is a ring");
                for (nm, v) in p.names() {
                    if let Some(l) = self.local[*v as usize] {
                        r.add_name(nm.clone(), l);
                    }
                }
                Arc::new(r)
            })
            .clone()
    }
}

/// Every unital subring of `a` isomorphic to `pattern`.
pub fn find_isomorphic_subrings(a: &Arc<FiniteRing>, pattern: &FiniteRing) -> Vec<SubringHandle> {
    let mut sets: Vec<Vec<Elem>> = a
        .embeddings_of(pattern)
        .into_iter()
        .map(|mut img| {
            img.sort_unstable();
            img
        })
        .collect();
    sets.sort();
    sets.dedup();
    sets.into_iter()
        .map(|s| SubringHandle::trusted(a.clone(), s))
        .collect()
}

/// Ring tables in the canonical JSON layout.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RingDump {
    pub order: usize,
    pub zero: usize,
    pub one: usize,
    pub generators: Vec<usize>,
    pub labels: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl FiniteRing {
    pub fn dump(&self) -> RingDump {
        let rows = |t: &[Elem]| {
            t.chunks(self.n)
                .map(|r| r.iter().map(|&x| x as usize).collect())
                .collect()
        };
        RingDump {
            order: self.n,
            zero: self.zero as usize,
            one: self.one as usize,
            generators: self.generators.iter().map(|&g| g as usize).collect(),
            labels: self.labels.clone(),
            add: rows(&self.add),
            mul: rows(&self.mul),
        }
    }
}
