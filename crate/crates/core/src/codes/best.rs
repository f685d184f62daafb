//! Best minimum distance of binary self-dual images `Φ(C)`, over every θ,
//! every self-dual θ-cyclic generator and every symmetric F₂-basis.

use std::sync::Arc;

use serde::Serialize;

use super::{binary_type_from_rows, min_distance_above, phi_image, theta_code, BinaryType, CodeError, WeightTable};
use crate::bases::{BasisError, BasisSpace};
use crate::morphisms::enumerate_automorphisms;
use crate::par::Search;
use crate::ring::{FiniteRing, SubringHandle};
use crate::skew::{count_self_dual_generators, SkewRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub theta: String,
    pub g: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestEntry {
    pub distance: u32,
    /// Best over θ = id, if any generator exists there.
    pub identity: Option<u32>,
    /// Strictly better than every θ = id image.
    pub theta_only: bool,
    pub witness: Witness,
}

impl BestEntry {
    pub fn render(&self) -> String {
        if self.theta_only {
            format!("{}θ", self.distance)
        } else {
            self.distance.to_string()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestCell {
    pub ring: String,
    /// Length of the binary image.
    pub length: usize,
    pub bases: usize,
    pub codes: usize,
    pub type_i: Option<BestEntry>,
    pub type_ii: Option<BestEntry>,
}

impl BestCell {
    pub fn entry(&self, t: BinaryType) -> Option<&BestEntry> {
        match t {
            BinaryType::I => self.type_i.as_ref(),
            BinaryType::II => self.type_ii.as_ref(),
        }
    }

    pub fn render(&self, t: BinaryType) -> String {
        self.entry(t).map_or_else(|| "-".into(), BestEntry::render)
    }
}

type Slot = Option<(u32, Witness)>;

/// `n` is the length over `A`; images have length `r·n`.
pub fn best_binary_self_dual(ring: &Arc<FiniteRing>, n: usize, search: &Search) -> Result<BestCell, CodeError> {
    let f2 = SubringHandle::prime(ring);
    if f2.order() != 2 {
        return Err(CodeError::NotBinary);
    }
    let space = BasisSpace::new(&f2)?;
    let bases = space
        .symmetric(search)?
        .iter()
        .map(|v| space.basis(v))
        .collect::<Result<Vec<_>, BasisError>>()?;
    let hamming = WeightTable::hamming(&f2.to_ring());
    // [type][θ = id]
    let mut best: [[Slot; 2]; 2] = Default::default();
    let mut codes = 0;
    for theta in enumerate_automorphisms(ring).members() {
        let ctx = SkewRing::new(theta)?;
        let id = theta.is_identity() as usize;
        let f = ctx.x_pow_minus(n, ring.one());
        let gens = count_self_dual_generators(&ctx, n, search)?;
        for g in gens.generators() {
            let code = theta_code(g, &f)?;
            for basis in &bases {
                codes += 1;
                let image = phi_image(code.code(), basis)?;
                let t = binary_type_from_rows(&image)? as usize;
                let slot = &mut best[t][id];
                let cutoff = slot.as_ref().map_or(0, |s| s.0);
                if let Some(d) = min_distance_above(&image, &hamming, cutoff, search)? {
                    *slot = Some((
                        d,
                        Witness {
                            theta: theta.describe(),
                            g: g.to_string(),
                            basis: basis.labels(),
                        },
                    ));
                }
            }
        }
    }
    let entry = |slots: &[Slot; 2]| -> Option<BestEntry> {
        let identity = slots[1].as_ref().map(|s| s.0);
        let other = slots[0].as_ref().map(|s| s.0);
        let theta_only = other > identity;
        let (d, w) = if theta_only { slots[0].clone()? } else { slots[1].clone()? };
        Some(BestEntry {
            distance: d,
            identity,
            theta_only,
            witness: w,
        })
    };
    Ok(BestCell {
        ring: ring.name().to_string(),
        length: n * space.rank(),
        bases: bases.len(),
        codes,
        type_i: entry(&best[BinaryType::I as usize]),
        type_ii: entry(&best[BinaryType::II as usize]),
    })
}
