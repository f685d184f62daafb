//! Named reproduction recipes. Each one runs a fixed sequence of core
//! operations, compares against embedded expected values and renders to a
//! text layout stored under `golden/`.

use std::fmt::Display;
use std::path::PathBuf;

use crate::ops::Opts;
use crate::table::{ResultTable, Status};
use crate::CliError;

mod examples;
mod structure;
mod suites;
mod tables;

pub struct Recipe {
    pub name: &'static str,
    pub about: &'static str,
    run: fn(&Opts) -> Result<ResultTable, CliError>,
}

impl Recipe {
    pub fn run(&self, opts: &Opts) -> Result<ResultTable, CliError> {
        (self.run)(opts)
    }
}

macro_rules! recipe {
    ($name:literal, $about:literal, $f:path) => {
        Recipe {
            name: $name,
            about: $about,
            run: $f,
        }
    };
}

pub const RECIPES: &[Recipe] = &[
    recipe!("table1", "monic right divisors of degree n/2 of X^n - 1, theta = id and summed over theta != id", tables::table1),
    recipe!("table2", "generators of self-dual theta-cyclic codes, theta = id and summed over theta != id", tables::table2),
    recipe!("table3", "best binary self-dual images over symmetric F2-bases, type I / type II", tables::table3),
    recipe!("aut-groups", "automorphism groups, anti-automorphisms and involutions", structure::aut_groups),
    recipe!("basis-counts", "symmetric and pseudo-self-dual basis counts", structure::basis_counts),
    recipe!("ex-gr42-bases", "pseudo-self-dual Z4-bases of GR(4,2) for sigma = id, H = Aut", structure::gr42_bases),
    recipe!("negative-certificates", "exhaustive searches expected to come back empty", structure::negative_certificates),
    recipe!("ex-dual-numbers", "a self-dual code over F2[x]/(x^2) and its images in two bases", examples::dual_numbers),
    recipe!("ex-m2f2-map", "a theta-code over M2(F2) and its images over F2 and F4", examples::m2f2_map),
    recipe!("ex-f4x2-images", "theta-codes over F4[x]/(x^2) and their F4 images", examples::f4x2_images),
    recipe!("ex-gr42-lee", "Lee distances of self-dual theta-codes over GR(4,2)", examples::gr42_lee),
    recipe!("ex-z4-lee", "Lee distances of self-dual codes over Z4[x]/(x^2-2) and their Z4 images", examples::z4_lee),
    recipe!("ex-f25-negacyclic", "self-dual theta-negacyclic codes over F25 and their F5 images", examples::f25_negacyclic),
    recipe!("ex-f5-negacyclic", "a self-dual theta-negacyclic code over F5[x]/(x^2) and its F5 image", examples::f5_negacyclic),
    recipe!("theorem-suite", "duality preservation, basis criteria and Wood's law over the computed codes", suites::theorem_suite),
    recipe!("property-sample", "seeded random codes: dual routes, Wood's law, component map, shift closure", suites::property_sample),
];

pub fn find(name: &str) -> Result<&'static Recipe, CliError> {
    RECIPES
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| CliError::UnknownRecipe(name.into()))
}

pub fn run(name: &str, opts: &Opts) -> Result<ResultTable, CliError> {
    find(name)?.run(opts)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(format!("{name}.txt"))
}

/// First differing line between `expected` and `actual`, 1-based.
pub fn first_diff(expected: &str, actual: &str) -> Option<(usize, String, String)> {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    for i in 1.. {
        match (e.next(), a.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => return Some((i, x.unwrap_or("<eof>").into(), y.unwrap_or("<eof>").into())),
        }
    }
    unreachable!()
}

pub(crate) const COLUMNS: [&str; 5] = ["case", "expected", "computed", "status", "detail"];

/// Rows of `case | expected | computed | status | detail`.
pub(crate) struct Checks {
    t: ResultTable,
    budget: u64,
}

impl Checks {
    pub(crate) fn new(name: &str, opts: &Opts) -> Checks {
        let about = find(name).map(|r| r.about).unwrap_or("");
        Checks {
            t: ResultTable::new(name, &COLUMNS, opts.budget).about(about),
            budget: opts.budget,
        }
    }

    pub(crate) fn ring(&mut self, key: &str) {
        self.t.add_ring(key);
    }

    pub(crate) fn seed(&mut self, seed: u64) {
        self.t.provenance.seed = Some(seed);
    }

    pub(crate) fn fits(&self, cost: u128) -> bool {
        cost <= self.budget as u128
    }

    pub(crate) fn check(&mut self, case: impl Into<String>, expected: impl Display, computed: impl Display) -> bool {
        self.check_with(case, expected, computed, "")
    }

    pub(crate) fn check_with(
        &mut self,
        case: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        detail: impl Into<String>,
    ) -> bool {
        let (e, c) = (expected.to_string(), computed.to_string());
        let ok = e == c;
        self.t.push(vec![case.into(), e, c, Status::of(ok).as_str().into(), detail.into()]);
        ok
    }

    pub(crate) fn skip(&mut self, case: impl Into<String>, expected: impl Display, cost: u128) {
        self.t.push(vec![
            case.into(),
            expected.to_string(),
            "-".into(),
            Status::Skipped.as_str().into(),
            format!("needs budget {cost}"),
        ]);
    }

    pub(crate) fn matrix(&mut self, title: impl Into<String>, rows: Vec<Vec<String>>) {
        self.t.add_matrix(title, rows);
    }

    pub(crate) fn done(self) -> ResultTable {
        self.t
    }
}

/// `"k×n"` summary for a matrix check plus the first differing row.
pub(crate) fn compare_rows(got: &[Vec<String>], expected: &[&str]) -> String {
    let shape = format!("{}x{}", got.len(), got.first().map_or(0, |r| r.len()));
    let bad = got
        .iter()
        .map(|r| r.join(" "))
        .zip(expected.iter())
        .position(|(g, e)| g != *e);
    if got.len() != expected.len() {
        format!("{shape}, {} rows expected", expected.len())
    } else if let Some(i) = bad {
        format!("{shape}, row {} differs", i + 1)
    } else {
        format!("{shape} as listed")
    }
}

pub(crate) fn expected_shape(expected: &[&str]) -> String {
    let n = expected.first().map_or(0, |r| r.split_whitespace().count());
    format!("{}x{n} as listed", expected.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_resolvable() {
        for (i, r) in RECIPES.iter().enumerate() {
            assert!(RECIPES[i + 1..].iter().all(|s| s.name != r.name), "{}", r.name);
            assert_eq!(find(r.name).unwrap().name, r.name);
        }
        assert!(matches!(find("table9"), Err(CliError::UnknownRecipe(_))));
    }

    #[test]
    fn diff_reports_first_line() {
        assert_eq!(first_diff("a\nb\n", "a\nb\n"), None);
        assert_eq!(first_diff("a\nb\n", "a\nc\n"), Some((2, "b".into(), "c".into())));
        assert_eq!(first_diff("a\n", "a\nc\n"), Some((2, "<eof>".into(), "c".into())));
    }

    #[test]
    fn row_comparison() {
        let got = vec![vec!["1".to_string(), "0".into()], vec!["0".into(), "1".into()]];
        assert_eq!(compare_rows(&got, &["1 0", "0 1"]), "2x2 as listed");
        assert_eq!(compare_rows(&got, &["1 0", "1 1"]), "2x2, row 2 differs");
        assert_eq!(compare_rows(&got, &["1 0"]), "2x2, 1 rows expected");
        assert_eq!(expected_shape(&["1 0", "0 1"]), "2x2 as listed");
    }
}
