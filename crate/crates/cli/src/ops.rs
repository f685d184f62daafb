//! Name resolution and small builders shared by commands and recipes.

use std::sync::Arc;

use skewcode_core::bases::ModuleBasis;
use skewcode_core::codes::{theta_code, LinearCode, ThetaCode, WeightTable};
use skewcode_core::config::{self, LoadedRing};
use skewcode_core::morphisms::{enumerate_automorphisms, enumerate_involutions, subgroup_generated, MapGroup, RingMap};
use skewcode_core::par::Search;
use skewcode_core::skew::{SkewPoly, SkewRing};
use skewcode_core::{Elem, SubringHandle};

use crate::CliError;

#[derive(Clone, Copy, Debug)]
pub struct Opts {
    pub budget: u64,
    pub seed: u64,
    pub sequential: bool,
}

impl Opts {
    pub fn new(budget: u64, seed: u64) -> Opts {
        Opts { budget, seed, sequential: false }
    }

    pub fn search(&self) -> Search {
        let s = Search::with_budget(self.budget);
        if self.sequential {
            s.sequential()
        } else {
            s
        }
    }
}

pub fn ring(spec: &str) -> Result<LoadedRing, CliError> {
    Ok(config::resolve(spec)?)
}

pub fn elem(r: &LoadedRing, label: &str) -> Result<Elem, CliError> {
    r.ring
        .parse_element(label)
        .map_err(|e| CliError::Usage(format!("{}: {e}", r.key)))
}

pub fn elems(r: &LoadedRing, labels: &[String]) -> Result<Vec<Elem>, CliError> {
    labels.iter().map(|l| elem(r, l)).collect()
}

/// `id`, a named map, or an index into the sorted list `pool`.
fn pick_map(r: &LoadedRing, name: &str, pool: impl FnOnce() -> Vec<RingMap>, what: &str) -> Result<RingMap, CliError> {
    if name == "id" {
        return Ok(RingMap::identity(&r.ring));
    }
    if let Some(m) = r.map(name) {
        return Ok(m.clone());
    }
    if let Ok(i) = name.parse::<usize>() {
        let pool = pool();
        let n = pool.len();
        return pool
            .into_iter()
            .nth(i)
            .ok_or_else(|| CliError::Usage(format!("{what} index {i} out of range (0..{n})")));
    }
    Err(CliError::Usage(format!("{}: no map named `{name}`", r.key)))
}

pub fn theta(r: &LoadedRing, name: &str) -> Result<RingMap, CliError> {
    pick_map(r, name, || enumerate_automorphisms(&r.ring).members().to_vec(), "automorphism")
}

pub fn sigma(r: &LoadedRing, name: &str) -> Result<RingMap, CliError> {
    pick_map(r, name, || enumerate_involutions(&r.ring), "involution")
}

/// `prime`, `whole`, or a subring named in the config.
pub fn subring(r: &LoadedRing, name: &str) -> Result<SubringHandle, CliError> {
    match name {
        "prime" => Ok(SubringHandle::prime(&r.ring)),
        "whole" => Ok(SubringHandle::whole(&r.ring)),
        _ => r
            .subring(name)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("{}: no subring named `{name}`", r.key))),
    }
}

/// `aut`, `trivial`, `stabilizer` (of `sub` inside Aut), or the group
/// generated by a named map.
pub fn group(r: &LoadedRing, name: &str, sub: &SubringHandle) -> Result<MapGroup, CliError> {
    match name {
        "aut" => Ok(enumerate_automorphisms(&r.ring)),
        "trivial" => Ok(MapGroup::trivial(&r.ring)),
        "stabilizer" => Ok(enumerate_automorphisms(&r.ring).stabilizer(sub)),
        _ => {
            let m = theta(r, name)?;
            Ok(subgroup_generated(&r.ring, &[m])?)
        }
    }
}

pub fn poly(ctx: &Arc<SkewRing>, labels: &[String]) -> Result<SkewPoly, CliError> {
    Ok(ctx.parse(labels)?)
}

/// The θ-code of `g` (ascending labels) inside `A[X;θ]/(X^n − a)`.
pub fn code(r: &LoadedRing, theta_name: &str, g: &[String], n: usize, a: &str) -> Result<ThetaCode, CliError> {
    let ctx = SkewRing::new(&theta(r, theta_name)?)?;
    let g = poly(&ctx, g)?;
    let f = ctx.x_pow_minus(n, elem(r, a)?);
    Ok(theta_code(&g, &f)?)
}

pub fn basis(r: &LoadedRing, sub: &SubringHandle, labels: &[String]) -> Result<ModuleBasis, CliError> {
    Ok(ModuleBasis::new(sub, &elems(r, labels)?)?)
}

pub fn weights(code: &LinearCode, metric: &str, lee_basis: Option<&[Elem]>) -> Result<WeightTable, CliError> {
    match metric {
        "hamming" => Ok(WeightTable::hamming(code.ring())),
        "lee" => Ok(WeightTable::lee(code.ring(), lee_basis)?),
        _ => Err(CliError::Usage(format!("unknown metric `{metric}`"))),
    }
}

/// Rows of labels; images over a subring carry the parent's labels.
pub fn grid(code: &LinearCode) -> Vec<Vec<String>> {
    code.labels()
}

pub fn join(labels: &[String]) -> String {
    labels.join(" ")
}

pub fn set_labels(r: &LoadedRing, v: &[Elem]) -> String {
    let l: Vec<String> = v.iter().map(|&e| r.ring.label(e).to_string()).collect();
    format!("{{{}}}", l.join(", "))
}

pub fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}
