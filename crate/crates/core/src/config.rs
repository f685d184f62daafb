//! Ring configuration files: a presentation plus named aliases, maps,
//! subrings and an optional Lee coordinate basis.
//!
//! ```toml
//! name = "GR(4,2)"
//! lee_basis = ["ξ+1", "ξ+2"]
//!
//! [presentation]
//! kind = "galois_ring"
//! p = 2
//! k = 2
//! degree = 2
//! modulus = [1, 1, 1]
//!
//! [aliases]
//! w = "ξ"
//!
//! [maps.theta]
//! kind = "automorphism"
//! images = { "ξ" = "3ξ+3" }
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::morphisms::{MapError, MapKind, RingMap};
use crate::ring::{build_ring, Elem, FiniteRing, RingError, RingPresentation, SubringHandle};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config `{key}`: {source}")]
    Toml {
        key: String,
        source: toml::de::Error,
    },
    #[error("ring `{key}`: {source}")]
    Ring { key: String, source: RingError },
    #[error("ring `{key}`, map `{map}`: {source}")]
    Map {
        key: String,
        map: String,
        source: MapError,
    },
    #[error("ring `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

#[derive(Clone, Debug, Deserialize)]
pub struct MapSpec {
    pub kind: MapKind,
    /// Source element label to image label. The sources must generate the
    /// ring.
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RingConfig {
    pub name: String,
    pub presentation: RingPresentation,
    #[serde(default)]
    pub aliases: BTreeMap<String, String>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub subrings: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub lee_basis: Option<Vec<String>>,
}

/// A ring built from configuration together with its named objects.
#[derive(Clone, Debug)]
pub struct LoadedRing {
    pub key: String,
    pub ring: Arc<FiniteRing>,
    pub maps: BTreeMap<String, RingMap>,
    pub subrings: BTreeMap<String, SubringHandle>,
    pub lee_basis: Option<Vec<Elem>>,
}

impl LoadedRing {
    pub fn map(&self, name: &str) -> Option<&RingMap> {
        self.maps.get(name)
    }

    pub fn subring(&self, name: &str) -> Option<&SubringHandle> {
        self.subrings.get(name)
    }

    pub fn elem(&self, label: &str) -> Elem {
        self.ring
            .parse_element(label)
            .unwrap_or_else(|e| panic!("{}: {e}", self.key))
    }

    pub fn elems(&self, labels: &[&str]) -> Vec<Elem> {
        labels.iter().map(|l| self.elem(l)).collect()
    }
}

macro_rules! catalog {
    ($($key:literal),* $(,)?) => {
        &[$(($key, include_str!(concat!("../../../rings/", $key, ".toml")))),*]
    };
}

/// Built-in ring configurations keyed by file stem.
pub const CATALOG: &[(&str, &str)] = catalog![
    "z4", "f2", "f3", "f4", "f5", "f9", "f25", "gr42",
    "f2x2", "f2x2x", "f2x3", "f2x3m1", "f2x4",
    "f4x2", "f4x2-skew", "f2xy", "f2xy-b", "f2uv",
    "m2f2", "m2f3",
    "z4x2", "z4x2+2x", "z4x2+2", "z4x2+3x", "z4x2+2x+2",
    "f3xy", "f3x3", "f3x2", "f3x2x", "f9x2", "f9x2x", "f5x2",
];

pub fn parse_config(key: &str, text: &str) -> Result<RingConfig, ConfigError> {
    toml::from_str(text).map_err(|source| ConfigError::Toml {
        key: key.into(),
        source,
    })
}

pub fn load_config(key: &str, cfg: &RingConfig) -> Result<LoadedRing, ConfigError> {
    let ring_err = |source| ConfigError::Ring {
        key: key.into(),
        source,
    };
    let mut ring = build_ring(&cfg.presentation).map_err(ring_err)?;
    ring.set_name(cfg.name.clone());
    for (alias, value) in &cfg.aliases {
        let v = ring.parse_element(value).map_err(ring_err)?;
        ring.add_name(alias.clone(), v);
    }
    let ring = Arc::new(ring);

    let mut maps = BTreeMap::new();
    for (name, spec) in &cfg.maps {
        let mut sources = Vec::new();
        let mut images = Vec::new();
        for (s, i) in &spec.images {
            sources.push(ring.parse_element(s).map_err(ring_err)?);
            images.push(ring.parse_element(i).map_err(ring_err)?);
        }
        let m = RingMap::from_generator_images(&ring, &sources, &images, spec.kind).map_err(|source| {
            ConfigError::Map {
                key: key.into(),
                map: name.clone(),
                source,
            }
        })?;
        maps.insert(name.clone(), m);
    }

    let mut subrings = BTreeMap::new();
    for (name, gens) in &cfg.subrings {
        let g = ring.parse_elements(gens).map_err(ring_err)?;
        subrings.insert(name.clone(), SubringHandle::generated(&ring, &g).with_label(name.clone()));
    }

    let lee_basis = match &cfg.lee_basis {
        None => None,
        Some(b) => Some(ring.parse_elements(b).map_err(ring_err)?),
    };
    Ok(LoadedRing {
        key: key.into(),
        ring,
        maps,
        subrings,
        lee_basis,
    })
}

pub fn load_str(key: &str, text: &str) -> Result<LoadedRing, ConfigError> {
    load_config(key, &parse_config(key, text)?)
}

pub fn builtin(key: &str) -> Result<LoadedRing, ConfigError> {
    let (_, text) = CATALOG
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| ConfigError::UnknownRing(key.into()))?;
    load_str(key, text)
}

/// Loads a catalog key, or a path to a config file.
pub fn resolve(spec: &str) -> Result<LoadedRing, ConfigError> {
    if CATALOG.iter().any(|(k, _)| *k == spec) {
        return builtin(spec);
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: spec.into(),
            source,
        })?;
        let key = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
        return load_str(key, &text);
    }
    Err(ConfigError::UnknownRing(spec.into()))
}
