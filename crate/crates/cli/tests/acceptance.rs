//! One PASS / FAIL / SKIPPED line per acceptance criterion.
//!
//! `SKEWCODE_HEAVY=1` raises the budget so the optional cells run. The
//! process exits non-zero only for a failure that is not in `KNOWN`.

use std::collections::BTreeMap;
use std::process::ExitCode;

use skewcode_cli::ops::Opts;
use skewcode_cli::recipes::{self, first_diff, golden_path};
use skewcode_cli::table::{Format, ResultTable};
use skewcode_core::par::DEFAULT_BUDGET;

const HEAVY_BUDGET: u64 = 1 << 40;

/// Rows whose computed value is known to differ from the expected one,
/// with the reason.
const KNOWN: &[(&str, &str, &str)] = &[
    ("table2", "f2xy n=2 non-id", "64 computed by two independent routes"),
    ("table2", "f2xy n=6 id", "64 computed by two independent routes"),
    ("table2", "f2x4 n=6 id", "16 computed by two independent routes"),
    ("table2", "f2xy n=10 non-id", "688 computed by two independent routes"),
    ("table2", "f4x2 n=12 non-id", "2848 = 1920 (order-2 θ) + 928 (order-3 θ)"),
    ("table3", "f2x4 length 48", "best θ = id image has distance 4"),
    ("ex-gr42-lee", "n=10 self-dual generators", "no self-dual generator exists for any unit constant"),
    ("ex-gr42-lee", "n=10 best Lee distance", "no length-10 self-dual θ-code to search"),
    ("negative-certificates", "f4x2 pseudo-self-dual bases", "self-dual bases exist over the dual-number subrings"),
    ("negative-certificates", "f4x2-skew pseudo-self-dual bases", "self-dual bases exist over the dual-number subrings"),
];

struct Row {
    recipe: &'static str,
    case: String,
    status: String,
}

struct Runner {
    opts: Opts,
    cache: BTreeMap<&'static str, ResultTable>,
}

impl Runner {
    fn table(&mut self, name: &'static str) -> &ResultTable {
        let opts = self.opts;
        self.cache
            .entry(name)
            .or_insert_with(|| recipes::run(name, &opts).unwrap_or_else(|e| panic!("{name}: {e}")))
    }

    fn rows(&mut self, name: &'static str) -> Vec<Row> {
        let t = self.table(name);
        let col = |c: &str| t.columns.iter().position(|x| x == c).unwrap();
        let (case, status) = (col("case"), col("status"));
        t.rows
            .iter()
            .map(|r| Row {
                recipe: name,
                case: r[case].clone(),
                status: r[status].clone(),
            })
            .collect()
    }
}

fn known(r: &Row) -> Option<&'static str> {
    KNOWN.iter().find(|(n, c, _)| *n == r.recipe && *c == r.case).map(|k| k.2)
}

#[derive(Default)]
struct Verdict {
    failed: Vec<String>,
    unexpected: Vec<String>,
    skipped: usize,
    optional: Vec<String>,
}

impl Verdict {
    fn required(&mut self, rows: impl IntoIterator<Item = Row>) {
        for r in rows {
            match r.status.as_str() {
                "FAIL" => {
                    match known(&r) {
                        Some(why) => self.failed.push(format!("{}: {} ({why})", r.recipe, r.case)),
                        None => {
                            self.failed.push(format!("{}: {}", r.recipe, r.case));
                            self.unexpected.push(format!("{}: {}", r.recipe, r.case));
                        }
                    }
                }
                "SKIPPED" => self.skipped += 1,
                _ => {}
            }
        }
    }

    fn optional(&mut self, rows: impl IntoIterator<Item = Row>) {
        let (mut pass, mut skip, mut fail) = (0, 0, Vec::new());
        for r in rows {
            match r.status.as_str() {
                "PASS" => pass += 1,
                "SKIPPED" => skip += 1,
                _ => {
                    if known(&r).is_none() {
                        self.unexpected.push(format!("{}: {}", r.recipe, r.case));
                    }
                    fail.push(r.case);
                }
            }
        }
        if pass + skip + fail.len() > 0 {
            let mut s = format!("optional cells: {pass} pass, {skip} skipped, {} fail", fail.len());
            if !fail.is_empty() {
                s += &format!(" ({})", fail.join(", "));
            }
            self.optional.push(s);
        }
    }

    fn line(&self, id: usize, title: &str) -> String {
        let mut notes = self.optional.clone();
        let status = if !self.failed.is_empty() {
            notes.insert(0, self.failed.join("; "));
            "FAIL"
        } else if self.skipped > 0 {
            notes.insert(0, format!("{} required cells need a larger budget", self.skipped));
            "SKIPPED"
        } else {
            "PASS"
        };
        if notes.is_empty() {
            format!("criterion {id} ({title}): {status}")
        } else {
            format!("criterion {id} ({title}): {status} - {}", notes.join("; "))
        }
    }
}

/// Length `n` from a case like `f2xy n=10 id`.
fn length(case: &str, marker: &str) -> usize {
    let rest = &case[case.find(marker).expect("length marker") + marker.len()..];
    rest.chars().take_while(|c| c.is_ascii_digit()).collect::<String>().parse().unwrap()
}

const EXAMPLES: [&str; 7] = [
    "ex-dual-numbers",
    "ex-m2f2-map",
    "ex-f4x2-images",
    "ex-gr42-lee",
    "ex-z4-lee",
    "ex-f25-negacyclic",
    "ex-f5-negacyclic",
];

fn main() -> ExitCode {
    let heavy = std::env::var("SKEWCODE_HEAVY").is_ok_and(|v| v == "1");
    let budget = if heavy { HEAVY_BUDGET } else { DEFAULT_BUDGET };
    let mut run = Runner {
        opts: Opts::new(budget, 1),
        cache: BTreeMap::new(),
    };
    let mut lines = Vec::new();
    let mut unexpected = Vec::new();
    let mut record = |id: usize, title: &str, v: Verdict| {
        lines.push(v.line(id, title));
        unexpected.extend(v.unexpected);
    };

    let mut v = Verdict::default();
    v.required(run.rows("basis-counts"));
    v.required(run.rows("ex-gr42-bases"));
    record(1, "basis counts", v);

    let mut v = Verdict::default();
    v.required(run.rows("aut-groups"));
    record(2, "automorphism structure", v);

    let mut v = Verdict::default();
    v.required(run.rows("table1"));
    record(3, "divisor counts", v);

    let mut v = Verdict::default();
    let (req, opt): (Vec<Row>, Vec<Row>) = run
        .rows("table2")
        .into_iter()
        .partition(|r| r.case.starts_with("f2x2 ") || r.case.starts_with("f2x2x ") || length(&r.case, "n=") <= 8);
    v.required(req);
    v.optional(opt);
    record(4, "self-dual generator counts", v);

    // Golden files are rendered at the default budget.
    let mut v = Verdict::default();
    let default = Opts::new(DEFAULT_BUDGET, 1);
    for name in EXAMPLES {
        let rows = run.rows(name).into_iter().filter(|r| r.case.ends_with(" matrix"));
        v.required(rows);
        let got = recipes::run(name, &default).expect(name).emit(Format::Text);
        match std::fs::read_to_string(golden_path(name)) {
            Ok(want) => {
                if let Some((line, _, _)) = first_diff(&want, &got) {
                    let why = format!("{name}: golden file differs at line {line}");
                    v.failed.push(why.clone());
                    v.unexpected.push(why);
                }
            }
            Err(e) => {
                let why = format!("{name}: golden file unreadable ({e})");
                v.failed.push(why.clone());
                v.unexpected.push(why);
            }
        }
    }
    record(5, "worked-example matrices", v);

    let mut v = Verdict::default();
    for name in EXAMPLES {
        let (opt, req): (Vec<Row>, Vec<Row>) = run
            .rows(name)
            .into_iter()
            .filter(|r| !r.case.ends_with(" matrix"))
            .partition(|r| r.recipe == "ex-gr42-lee" && r.case.starts_with("n=10"));
        v.required(req);
        v.optional(opt);
    }
    record(6, "distances and enumerators", v);

    let mut v = Verdict::default();
    let (req, opt): (Vec<Row>, Vec<Row>) = run.rows("table3").into_iter().partition(|r| length(&r.case, "length ") <= 24);
    v.required(req);
    v.optional(opt);
    record(7, "best binary images", v);

    let mut v = Verdict::default();
    v.required(run.rows("theorem-suite"));
    v.required(run.rows("property-sample"));
    record(8, "theorem property suites", v);

    let mut v = Verdict::default();
    v.required(run.rows("negative-certificates"));
    record(9, "negative certificates", v);

    println!("budget {budget}{}", if heavy { " (heavy)" } else { "" });
    for l in &lines {
        println!("{l}");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join("; "));
        ExitCode::FAILURE
    }
}
