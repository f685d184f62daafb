//! Automorphisms, anti-automorphisms and involutions of finite rings, the
//! groups they form, fixed subrings and trace maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::program::Program;
use crate::ring::{check_hom, for_each_choice, Elem, FiniteRing, SubringHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("maps belong to different rings")]
    MixedRings,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("not an automorphism")]
    NotAutomorphism,
    #[error("images do not define a {0:?}")]
    InvalidImages(MapKind),
    #[error("the source elements do not generate the ring")]
    SourcesDoNotGenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Automorphism,
    AntiAutomorphism,
}

impl MapKind {
    fn compose(self, other: MapKind) -> MapKind {
        if self == other {
            MapKind::Automorphism
        } else {
            MapKind::AntiAutomorphism
        }
    }
}

/// An additive bijection that preserves or reverses products.
#[derive(Clone)]
pub struct RingMap {
    ring: Arc<FiniteRing>,
    perm: Vec<Elem>,
    kind: MapKind,
    order: usize,
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingMap")
            .field("kind", &self.kind)
            .field("order", &self.order)
            .field("perm", &self.perm)
            .finish()
    }
}

impl PartialEq for RingMap {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.ring.fingerprint() == other.ring.fingerprint()
    }
}

impl Eq for RingMap {}

fn perm_order(perm: &[Elem]) -> usize {
    let mut cur: Vec<Elem> = perm.to_vec();
    let mut k = 1;
    while cur.iter().enumerate().any(|(i, &v)| v as usize != i) {
        cur = cur.iter().map(|&v| perm[v as usize]).collect();
        k += 1;
    }
    k
}

impl RingMap {
    pub fn identity(ring: &Arc<FiniteRing>) -> RingMap {
        RingMap {
            ring: ring.clone(),
            perm: ring.elements().collect(),
            kind: MapKind::Automorphism,
            order: 1,
        }
    }

    /// Audits `perm` against `kind` on all element pairs.
    pub fn from_perm(ring: &Arc<FiniteRing>, perm: Vec<Elem>, kind: MapKind) -> Result<RingMap, MapError> {
        let img: Vec<u16> = perm.iter().map(|&x| x as u16).collect();
        if perm.len() != ring.order()
            || perm[ring.one() as usize] != ring.one()
            || check_hom(ring, ring, &img, kind == MapKind::AntiAutomorphism, true).is_none()
        {
            return Err(MapError::InvalidImages(kind));
        }
        Ok(Self::trusted(ring, perm, kind))
    }

    fn trusted(ring: &Arc<FiniteRing>, perm: Vec<Elem>, kind: MapKind) -> RingMap {
        let order = perm_order(&perm);
        RingMap {
            ring: ring.clone(),
            perm,
            kind,
            order,
        }
    }

    /// The unique map of the given kind sending `sources[i]` to `images[i]`.
    pub fn from_generator_images(
        ring: &Arc<FiniteRing>,
        sources: &[Elem],
        images: &[Elem],
        kind: MapKind,
    ) -> Result<RingMap, MapError> {
        let prog = Program::ring(ring, sources);
        if prog.reached().len() != ring.order() {
            return Err(MapError::SourcesDoNotGenerate);
        }
        let mut seeds = vec![ring.zero(), ring.one()];
        seeds.extend_from_slice(images);
        let mut buf = Vec::new();
        prog.replay(ring, &seeds, kind == MapKind::AntiAutomorphism, &mut buf);
        let perm = check_hom(ring, ring, &buf, kind == MapKind::AntiAutomorphism, true)
            .ok_or(MapError::InvalidImages(kind))?;
        // Images of duplicated seeds must agree with the replay.
        if sources.iter().zip(images).any(|(&s, &i)| perm[s as usize] != i) {
            return Err(MapError::InvalidImages(kind));
        }
        Ok(Self::trusted(ring, perm, kind))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.perm[a as usize]
    }

    pub fn perm(&self) -> &[Elem] {
        &self.perm
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Order under composition.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// True when the map preserves products, which every map does on a
    /// commutative ring.
    pub fn is_automorphism(&self) -> bool {
        self.kind == MapKind::Automorphism || self.ring.is_commutative()
    }

    /// An involution is an anti-automorphism of order at most two. On a
    /// commutative ring this includes the identity.
    pub fn is_involution(&self) -> bool {
        self.order <= 2 && (self.kind == MapKind::AntiAutomorphism || self.ring.is_commutative())
    }

    fn same_ring(&self, other: &RingMap) -> Result<(), MapError> {
        if self.ring.fingerprint() != other.ring.fingerprint() {
            Err(MapError::MixedRings)
        } else {
            Ok(())
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingMap) -> Result<RingMap, MapError> {
        self.same_ring(other)?;
        let perm = other.perm.iter().map(|&v| self.perm[v as usize]).collect();
        Ok(Self::trusted(&self.ring, perm, self.kind.compose(other.kind)))
    }

    pub fn inverse(&self) -> RingMap {
        let mut perm = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            perm[v as usize] = i as Elem;
        }
        Self::trusted(&self.ring, perm, self.kind)
    }

    pub fn power(&self, k: usize) -> RingMap {
        let mut acc = RingMap::identity(&self.ring);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same ring");
        }
        acc
    }

    /// True when the map sends `sub` onto itself.
    pub fn preserves(&self, sub: &SubringHandle) -> bool {
        sub.elements().iter().all(|&r| sub.contains(self.apply(r)))
    }

    /// True when the map fixes every element of `elems`.
    pub fn fixes_all(&self, elems: &[Elem]) -> bool {
        elems.iter().all(|&e| self.apply(e) == e)
    }

    /// Images of the ring's recorded generators, as labels.
    pub fn describe(&self) -> String {
        let r = &self.ring;
        let parts: Vec<String> = r
            .generators()
            .iter()
            .map(|&g| format!("{}↦{}", r.label(g), r.label(self.apply(g))))
            .collect();
        parts.join(", ")
    }
}

/// A group of maps closed under composition.
#[derive(Clone, Debug)]
pub struct MapGroup {
    ring: Arc<FiniteRing>,
    members: Vec<RingMap>,
    generators: Vec<usize>,
}

impl MapGroup {
    fn from_sorted(ring: &Arc<FiniteRing>, mut members: Vec<RingMap>, gens: &[RingMap]) -> MapGroup {
        members.sort_by(|a, b| a.perm.cmp(&b.perm));
        members.dedup();
        let generators = gens
            .iter()
            .filter_map(|g| members.iter().position(|m| m == g))
            .collect();
        MapGroup {
            ring: ring.clone(),
            members,
            generators,
        }
    }

    pub fn trivial(ring: &Arc<FiniteRing>) -> MapGroup {
        Self::from_sorted(ring, vec![RingMap::identity(ring)], &[])
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// Members in lexicographic order of permutation; the identity is first.
    pub fn members(&self) -> &[RingMap] {
        &self.members
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, m: &RingMap) -> bool {
        self.members.iter().any(|x| x == m)
    }

    pub fn is_subgroup_of(&self, other: &MapGroup) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// Count of members by their order.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut stats = BTreeMap::new();
        for m in &self.members {
            *stats.entry(m.order()).or_insert(0) += 1;
        }
        stats
    }

    /// Name of the isomorphism class, identified by group order and the
    /// element-order histogram. Dihedral groups use the `D_n` convention
    /// with `2n` elements, so `D2` is the Klein four-group.
    pub fn label(&self) -> String {
        let stats = self.order_statistics();
        let count = |k: usize| stats.get(&k).copied().unwrap_or(0);
        let n = self.order();
        let cyclic = count(n) > 0;
        match n {
            1 => "1".into(),
            2 => "S2".into(),
            _ if cyclic => format!("C{n}"),
            4 => "D2".into(),
            6 => "S3".into(),
            8 => match (count(2), count(4)) {
                (5, 2) => "D4".into(),
                (1, 6) => "Q8".into(),
                (3, 4) => "C4xC2".into(),
                (7, 0) => "C2^3".into(),
                _ => "order 8".into(),
            },
            16 => match (count(2), count(4), count(8)) {
                (9, 2, 4) => "D8".into(),
                (5, 6, 4) => "SD16".into(),
                (3, 4, 8) => "M16".into(),
                (1, 10, 4) => "Q16".into(),
                _ => "order 16".into(),
            },
            24 if count(2) == 9 && count(3) == 8 && count(4) == 6 => "S4".into(),
            _ => format!("order {n}"),
        }
    }

    /// Elements fixed by every member.
    pub fn fixed_subring(&self) -> SubringHandle {
        let fixed: Vec<Elem> = self
            .ring
            .elements()
            .filter(|&a| self.members.iter().all(|h| h.apply(a) == a))
            .collect();
        SubringHandle::from_elements(self.ring.clone(), &fixed).expect("fixed points form a subring")
    }

    /// `Tr_H(a) = Σ_{h∈H} h(a)`.
    pub fn trace(&self, a: Elem) -> Elem {
        self.members
            .iter()
            .fold(self.ring.zero(), |acc, h| self.ring.add(acc, h.apply(a)))
    }

    /// Trace of every element, indexed by element.
    pub fn trace_table(&self) -> Vec<Elem> {
        self.ring.elements().map(|a| self.trace(a)).collect()
    }

    /// `φ H φ^{-1}`; for an involution this is `φHφ`.
    pub fn conjugate_by(&self, phi: &RingMap) -> Result<MapGroup, MapError> {
        let inv = phi.inverse();
        let mut members = Vec::with_capacity(self.members.len());
        for h in &self.members {
            members.push(phi.compose(&h.compose(&inv)?)?);
        }
        let gens: Vec<RingMap> = self.generators.iter().map(|&i| members[i].clone()).collect();
        Ok(Self::from_sorted(&self.ring, members, &gens))
    }

    /// Members fixing every element of `sub`.
    pub fn stabilizer(&self, sub: &SubringHandle) -> MapGroup {
        let members: Vec<RingMap> = self
            .members
            .iter()
            .filter(|h| h.fixes_all(sub.elements()))
            .cloned()
            .collect();
        Self::from_sorted(&self.ring, members, &[])
    }

    /// Every subgroup, obtained as joins of cyclic subgroups.
    pub fn subgroups(&self) -> Vec<MapGroup> {
        let mut found: Vec<MapGroup> = Vec::new();
        let push = |g: MapGroup, found: &mut Vec<MapGroup>| {
            if found.iter().all(|f| f.members != g.members) {
                found.push(g);
                true
            } else {
                false
            }
        };
        for m in &self.members {
            let g = subgroup_generated(&self.ring, std::slice::from_ref(m)).expect("members are automorphisms");
            push(g, &mut found);
        }
        let cyclic = found.len();
        let mut i = 0;
        while i < found.len() {
            for c in 0..cyclic {
                if found[c].is_subgroup_of(&found[i]) {
                    continue;
                }
                let mut gens: Vec<RingMap> = found[i].members.clone();
                gens.extend(found[c].members.iter().cloned());
                let g = subgroup_generated(&self.ring, &gens).expect("members are automorphisms");
                push(g, &mut found);
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| {
            let pa: Vec<&[Elem]> = a.members.iter().map(|m| m.perm()).collect();
            let pb: Vec<&[Elem]> = b.members.iter().map(|m| m.perm()).collect();
            pa.cmp(&pb)
        }));
        found
    }
}

/// Closure of `maps` under composition. All maps must be automorphisms of
/// the same ring.
pub fn subgroup_generated(ring: &Arc<FiniteRing>, maps: &[RingMap]) -> Result<MapGroup, MapError> {
    for m in maps {
        if m.ring.fingerprint() != ring.fingerprint() {
            return Err(MapError::MixedRings);
        }
        if !m.is_automorphism() {
            return Err(MapError::NotAutomorphism);
        }
    }
    let as_auto = |m: &RingMap| RingMap {
        kind: MapKind::Automorphism,
        ..m.clone()
    };
    let gens: Vec<RingMap> = maps.iter().map(as_auto).collect();
    let mut members = vec![RingMap::identity(ring)];
    let mut i = 0;
    while i < members.len() {
        for g in &gens {
            let next = g.compose(&members[i])?;
            if !members.contains(&next) {
                members.push(next);
            }
        }
        i += 1;
    }
    Ok(MapGroup::from_sorted(ring, members, &gens))
}

fn search_maps(ring: &Arc<FiniteRing>, kind: MapKind) -> Vec<RingMap> {
    let anti = kind == MapKind::AntiAutomorphism;
    let gens = ring.generators();
    let prog = Program::ring(ring, gens);
    let sigs = ring.signatures();
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| ring.elements().filter(|&a| sigs[a as usize] == sigs[g as usize]).collect())
        .collect();
    let mut out = Vec::new();
    let mut buf = Vec::new();
    let mut seeds = vec![ring.zero(), ring.one()];
    seeds.extend_from_slice(gens);
    for_each_choice(&cands, |choice| {
        seeds.truncate(2);
        seeds.extend_from_slice(choice);
        prog.replay(ring, &seeds, anti, &mut buf);
        if let Some(perm) = check_hom(ring, ring, &buf, anti, true) {
            out.push(RingMap::trusted(ring, perm, kind));
        }
    });
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

/// The full automorphism group.
pub fn enumerate_automorphisms(ring: &Arc<FiniteRing>) -> MapGroup {
    let maps = search_maps(ring, MapKind::Automorphism);
    MapGroup::from_sorted(ring, maps, &[])
}

/// All anti-automorphisms. On a commutative ring these coincide with the
/// automorphisms.
pub fn enumerate_anti_automorphisms(ring: &Arc<FiniteRing>) -> Vec<RingMap> {
    search_maps(ring, MapKind::AntiAutomorphism)
}

/// Anti-automorphisms of order at most two. On a commutative ring these are
/// the automorphisms of order at most two, tagged as automorphisms.
pub fn enumerate_involutions(ring: &Arc<FiniteRing>) -> Vec<RingMap> {
    if ring.is_commutative() {
        enumerate_automorphisms(ring)
            .members()
            .iter()
            .filter(|m| m.order() <= 2)
            .cloned()
            .collect()
    } else {
        enumerate_anti_automorphisms(ring)
            .into_iter()
            .filter(|m| m.order() <= 2)
            .collect()
    }
}

/// Independent search over all additive automorphisms fixing one, keeping
/// those that preserve (or reverse) products. Used to validate the
/// generator-image search on small rings.
pub fn exhaustive_maps(ring: &Arc<FiniteRing>, kind: MapKind) -> Vec<RingMap> {
    let anti = kind == MapKind::AntiAutomorphism;
    // Additive generating set.
    let mut gens: Vec<Elem> = Vec::new();
    let mut span: Vec<Elem> = vec![ring.zero()];
    for a in ring.elements() {
        if !span.contains(&a) {
            gens.push(a);
            span = Program::additive(ring, &gens).reached().to_vec();
        }
    }
    let prog = Program::additive(ring, &gens);
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            ring.elements()
                .filter(|&a| ring.additive_order(a) == ring.additive_order(g))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut buf: Vec<u16> = Vec::new();
    for_each_choice(&cands, |choice| {
        let mut seeds = vec![ring.zero() as u16];
        seeds.extend(choice.iter().map(|&c| c as u16));
        prog.replay_with(
            crate::ring::program::UNSET,
            &seeds,
            |l, r| ring.add(l as Elem, r as Elem) as u16,
            |_, _| unreachable!("additive program"),
            &mut buf,
        );
        if buf[ring.one() as usize] != ring.one() as u16 {
            return;
        }
        if let Some(perm) = check_hom(ring, ring, &buf, anti, true) {
            out.push(RingMap::trusted(ring, perm, kind));
        }
    });
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

/// `φσφ` for involutions `σ`, `φ`.
pub fn conjugate_involution(sigma: &RingMap, phi: &RingMap) -> Result<RingMap, MapError> {
    sigma.same_ring(phi)?;
    if !sigma.is_involution() || !phi.is_involution() {
        return Err(MapError::NotInvolution);
    }
    phi.compose(&sigma.compose(phi)?)
}

#[cfg(test)]
mod tests;
