//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits nonzero if a criterion fails that is not listed in `KNOWN_FAILURES`,
//! or if a listed one unexpectedly passes.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use farflat::arith::matrix::{kernel_basis, rank_of};
use farflat::arith::{AlgebraicNumber, NumberField, Rational};
use farflat::arrangement::{Chamber, ConeTester, Face};
use farflat::cli::{core_rank_table, full_support_table, Table};
use farflat::coxeter::{enumerate_group, parse_type, DegreeTable};
use farflat::faraway::{
    associated_faces, average_faraway, beta_equivalence, chapoton, chapoton_refined,
    coincidental_average, coincidental_check, cores_of_type, double_counting_check, exact,
    faraway_planes, g_type, nearest_faraway_flats, nfw_se, theorem_pairs, BuildOptions, Context,
    CountReport,
};

/// The literal per-core coincidental equality is false (A3, core {2},
/// target [A2]: 0 against 2/3); only its mean over cores of a type holds.
const KNOWN_FAILURES: &[u32] = &[9];

/// `I2(6)` is spelled `G2`.
const THEOREM_TYPES: &[&str] = &[
    "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "H4", "I2(5)", "G2", "I2(7)", "I2(8)",
];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

type Check = fn() -> Result<Outcome, String>;

fn context(t: &str, max_codim: Option<usize>) -> Result<Context, String> {
    let ct = parse_type(t).map_err(|e| e.to_string())?;
    let k = max_codim.unwrap_or(ct.rank());
    Context::build(&ct, k, BuildOptions::for_rank(ct.rank())).map_err(|e| e.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Compares the rows of `table` with `expected`; a leading `*` marks a bold
/// entry and an empty string is a cell the reference leaves blank.
fn compare_grid(table: &Table, expected: &[&[&str]]) -> Vec<String> {
    let mut problems = Vec::new();
    if table.rows.len() != expected.len() {
        problems.push(format!(
            "{} rows, expected {}",
            table.rows.len(),
            expected.len()
        ));
    }
    for (r, (row, want)) in table.rows.iter().zip(expected).enumerate() {
        if row.len() != want.len() {
            problems.push(format!(
                "row {r}: {} cells, expected {}",
                row.len(),
                want.len()
            ));
            continue;
        }
        for (c, (cell, w)) in row.iter().zip(want.iter()).enumerate() {
            if w.is_empty() {
                continue;
            }
            let (bold, value) = match w.strip_prefix('*') {
                Some(v) => (true, v),
                None => (false, *w),
            };
            if cell.value != value || cell.bold != bold {
                problems.push(format!(
                    "row {r} ({}), column {}: got {}{}, expected {w}",
                    row[..2]
                        .iter()
                        .map(|c| c.value.as_str())
                        .collect::<Vec<_>>()
                        .join(" "),
                    table.header[c],
                    if cell.bold { "*" } else { "" },
                    cell.value
                ));
            }
        }
    }
    problems
}

fn grid_outcome(table: &Table, expected: &[&[&str]], what: &str) -> Outcome {
    let problems = compare_grid(table, expected);
    let checked: usize = expected
        .iter()
        .map(|r| r.iter().filter(|c| !c.is_empty()).count())
        .sum();
    let failed_checks = table
        .checks
        .iter()
        .filter(|c| c.matched == Some(false))
        .count();
    if problems.is_empty() && failed_checks == 0 {
        Outcome::new(
            true,
            format!(
                "{what}: {checked} cells exact, {} formula checks pass",
                table.checks.len()
            ),
        )
    } else {
        Outcome::new(
            false,
            format!(
                "{what}: {} failed formula checks; {}",
                failed_checks,
                problems.join("; ")
            ),
        )
    }
}

fn criterion_1() -> Result<Outcome, String> {
    let ctx = context("H4", None)?;
    let table = core_rank_table(&ctx, 1).map_err(err)?;
    let expected: &[&[&str]] = &[
        &["*15", "A1^2", "11", "12", "12", "10", "*45"],
        &["*10", "A2", "8", "7", "7", "8", "*30"],
        &["*6", "I2(5)", "4", "4", "4", "6", "*18"],
        &["*31", "nfw_se(I)", "23", "23", "23", "24", "*93"],
    ];
    Ok(grid_outcome(&table, expected, "H4 core rank 1"))
}

fn criterion_2() -> Result<Outcome, String> {
    let ctx = context("H4", None)?;
    let table = full_support_table(&ctx).map_err(err)?;
    let expected: &[&[&str]] = &[
        &[
            "A0", "{}", "42", "382", "157", "48", "457", "232", "197", "16", "42",
        ],
        &[
            "A0",
            "G([A0])_[Y]",
            "*42",
            "382",
            "157",
            "48",
            "457",
            "232",
            "197",
            "16",
            "*42",
        ],
        &[
            "A0",
            "u_[A0],[Y]",
            "*60",
            "450",
            "200",
            "72",
            "600",
            "360",
            "300",
            "60",
            "*60",
        ],
        &["A1", "{1}", "", "11", "8", "4", "33", "24", "26", "7", "23"],
        &["A1", "{2}", "", "12", "7", "4", "33", "28", "23", "6", "23"],
        &["A1", "{3}", "", "12", "7", "4", "31", "32", "17", "8", "23"],
        &["A1", "{4}", "", "10", "8", "6", "30", "29", "21", "8", "24"],
        &[
            "A1",
            "G([A1])_[Y]",
            "",
            "*45",
            "*30",
            "*18",
            "127",
            "113",
            "87",
            "29",
            "*93",
        ],
        &[
            "A1",
            "u_[A1],[Y]",
            "1",
            "*15",
            "*10",
            "*6",
            "40",
            "36",
            "30",
            "15",
            "*31",
        ],
        &["A1^2", "{1,3}", "", "", "", "", "3", "4", "2", "1", "10"],
        &["A1^2", "{1,4}", "", "", "", "", "3", "3", "2", "2", "10"],
        &["A1^2", "{2,4}", "", "", "", "", "4", "3", "1", "2", "10"],
        &[
            "A1^2",
            "G([A1^2])_[Y]",
            "",
            "",
            "",
            "",
            "*10",
            "*10",
            "*5",
            "*5",
            "*30",
        ],
        &[
            "A1^2",
            "u_[A1^2],[Y]",
            "",
            "1",
            "0",
            "0",
            "*4",
            "*4",
            "*2",
            "*2",
            "*12",
        ],
        &["A2", "{2,3}", "", "", "", "", "3", "0", "5", "2", "10"],
        &["A2", "{3,4}", "", "", "", "", "2", "0", "5", "3", "10"],
        &[
            "A2",
            "G([A2])_[Y]",
            "",
            "",
            "",
            "",
            "*5",
            "*0",
            "*10",
            "*5",
            "*20",
        ],
        &[
            "A2",
            "u_[A2],[Y]",
            "",
            "",
            "1",
            "0",
            "*3",
            "*0",
            "*6",
            "*3",
            "*12",
        ],
        &["I2(5)", "{1,2}", "", "", "", "", "0", "4", "0", "4", "8"],
        &[
            "I2(5)",
            "G([I2(5)])_[Y]",
            "",
            "",
            "",
            "",
            "*0",
            "*4",
            "*0",
            "*4",
            "*8",
        ],
        &[
            "I2(5)",
            "u_[I2(5)],[Y]",
            "",
            "",
            "",
            "1",
            "*0",
            "*5",
            "*0",
            "*5",
            "*10",
        ],
    ];
    let mut outcome = grid_outcome(&table, expected, "H4 all cores");
    // every full-support rank-3 parabolic, summed over core types, is u - 1
    let mut sums = Vec::new();
    for y in ["A1xA2", "A1xI2(5)", "A3", "H3"] {
        let col = table
            .header
            .iter()
            .position(|h| h == y)
            .ok_or(format!("no column {y}"))?;
        let total: u64 = table
            .rows
            .iter()
            .filter(|r| r[1].value.starts_with("G("))
            .filter_map(|r| r[col].value.parse::<u64>().ok())
            .sum();
        let u: u64 = table
            .cell(&["A0", "u_[A0],[Y]"], y)
            .ok_or("no u row")?
            .value
            .parse()
            .map_err(err)?;
        if total + 1 != u {
            outcome.passed = false;
        }
        sums.push(format!("[{y}] {total} = {u} - 1"));
    }
    outcome
        .detail
        .push_str(&format!("; sanity sums {}", sums.join(", ")));
    Ok(outcome)
}

fn all_pass(reports: &[CountReport]) -> Option<&CountReport> {
    reports.iter().find(|r| !r.passed())
}

fn criterion_3() -> Result<Outcome, String> {
    let mut reports = Vec::new();
    for t in THEOREM_TYPES {
        let ctx = context(t, None)?;
        for (x, y) in theorem_pairs(&ctx) {
            reports.push(g_type(&ctx, x, y).map_err(err)?);
        }
        for x in &ctx.orbits().types {
            if x.codim + 2 <= ctx.rank() {
                reports.push(nfw_se(&ctx, x.id).map_err(err)?);
            }
        }
    }
    Ok(match all_pass(&reports) {
        None => Outcome::new(
            true,
            format!(
                "{} pairs and nfw_se sums exact in {} types (G2 for I2(6))",
                reports.len(),
                THEOREM_TYPES.len()
            ),
        ),
        Some(bad) => Outcome::new(
            false,
            format!("{}: {} vs {:?}", bad.identity, bad.lhs, bad.rhs),
        ),
    })
}

fn criterion_4() -> Result<Outcome, String> {
    let spot = [("A2", 1), ("A3", 1), ("B2", 2), ("H3", 8), ("H4", 42)];
    let mut ok = true;
    let mut values = Vec::new();
    for t in THEOREM_TYPES {
        let ctx = context(t, Some(1))?;
        let r = chapoton(&ctx).map_err(err)?;
        ok &= r.passed();
        if let Some(&(_, want)) = spot.iter().find(|(s, _)| s == t) {
            ok &= r.lhs_integer() == Some(want);
            values.push(format!("f_{t} = {}", r.lhs));
        }
    }
    Ok(Outcome::new(
        ok,
        format!(
            "two-sided in {} types; {}",
            THEOREM_TYPES.len(),
            values.join(", ")
        ),
    ))
}

fn criterion_5() -> Result<Outcome, String> {
    let mut ok = true;
    let mut values = Vec::new();
    for t in ["B3", "F4"] {
        let ctx = context(t, Some(1))?;
        let orbits = ctx.orbits().at_codim(1);
        ok &= orbits.len() == 2;
        for h in orbits {
            let r = chapoton_refined(&ctx, h).map_err(err)?;
            ok &= r.passed();
            values.push(format!(
                "{t} [{}] {} = {}",
                ctx.orbits().types[h].label,
                r.lhs,
                r.rhs.unwrap_or_default()
            ));
        }
    }
    Ok(Outcome::new(ok, values.join(", ")))
}

fn criterion_6() -> Result<Outcome, String> {
    let mut reports = Vec::new();
    for t in ["A3", "B3", "H3"] {
        let ctx = context(t, None)?;
        let elements = enumerate_group(ctx.system(), 1_000_000).map_err(err)?;
        let tester = ConeTester::new(ctx.system());
        let v = ctx.lattice().level(0).start;
        for h in ctx.orbits().at_codim(1) {
            let planes = ctx.orbits().members(h);
            reports.push(double_counting_check(&ctx, &tester, &elements, v, &planes).map_err(err)?);
        }
    }
    let ctx = context("B4", None)?;
    let elements = enumerate_group(ctx.system(), 1_000_000).map_err(err)?;
    let tester = ConeTester::new(ctx.system());
    let planes: Vec<usize> = ctx.lattice().hyperplanes().collect();
    let b4 = double_counting_check(
        &ctx,
        &tester,
        &elements,
        ctx.lattice().level(0).start,
        &planes,
    )
    .map_err(err)?;
    let chambers_ok = elements.len() == 384;
    reports.push(b4.clone());
    Ok(match all_pass(&reports) {
        None if chambers_ok => Outcome::new(
            true,
            format!(
                "{} checks exact; B4 full arrangement {} = {} ({})",
                reports.len(),
                b4.lhs,
                b4.rhs.unwrap_or_default(),
                b4.notes.join("; ")
            ),
        ),
        None => Outcome::new(false, format!("B4 has {} chambers", elements.len())),
        Some(bad) => Outcome::new(
            false,
            format!("{}: {} vs {:?}", bad.identity, bad.lhs, bad.rhs),
        ),
    })
}

fn criterion_7() -> Result<Outcome, String> {
    let mut reports = Vec::new();
    for t in ["A3", "B3", "H3", "B4"] {
        let ctx = context(t, None)?;
        let elements = enumerate_group(ctx.system(), 1_000_000).map_err(err)?;
        let tester = ConeTester::new(ctx.system());
        let v = ctx.lattice().level(0).start;
        for h in ctx.orbits().at_codim(1) {
            let k = ctx.orbits().types[h].representative;
            reports.push(beta_equivalence(&ctx, &tester, &elements, v, k).map_err(err)?);
        }
    }
    Ok(match all_pass(&reports) {
        None => Outcome::new(true, format!("{} hyperplane orbits agree", reports.len())),
        Some(bad) => Outcome::new(
            false,
            format!("{}: {} vs {:?}", bad.identity, bad.lhs, bad.rhs),
        ),
    })
}

fn criterion_8() -> Result<Outcome, String> {
    let mut ok = true;
    let mut values = Vec::new();
    for (t, want) in [("A2", 1), ("B3", 3), ("H3", 8)] {
        let ctx = context(t, None)?;
        let elements = enumerate_group(ctx.system(), 1_000_000).map_err(err)?;
        let tester = ConeTester::new(ctx.system());
        let r =
            average_faraway(&ctx, &tester, &elements, ctx.lattice().level(0).start).map_err(err)?;
        ok &= r.passed() && r.lhs == exact(want);
        values.push(format!("{t} -> {}", r.lhs));
    }
    Ok(Outcome::new(ok, values.join(", ")))
}

fn criterion_9() -> Result<Outcome, String> {
    let mut literal = 0;
    let mut mismatched = Vec::new();
    let mut averages = 0;
    let mut averages_ok = true;
    for t in [
        "A3", "A4", "B3", "B4", "H3", "I2(5)", "G2", "I2(7)", "I2(8)",
    ] {
        let ctx = context(t, None)?;
        let n = ctx.rank();
        for x in ctx.orbits().types.iter().filter(|x| x.codim + 2 <= n) {
            let cores = cores_of_type(&ctx, x.id);
            if cores.is_empty() {
                continue;
            }
            for y in ctx.orbits().at_codim(x.codim + 1) {
                for &core in &cores {
                    let r = coincidental_check(&ctx, core, y).map_err(err)?;
                    literal += 1;
                    if !r.passed() {
                        mismatched.push(format!(
                            "{}: {} vs {}",
                            r.identity,
                            r.lhs,
                            r.rhs.unwrap_or_default()
                        ));
                    }
                }
                let avg = coincidental_average(&ctx, x.id, y).map_err(err)?;
                averages += 1;
                averages_ok &= avg.passed();
            }
        }
    }
    let detail = format!(
        "literal per-core equality holds for {} of {literal} pairs (first counterexample: {}); the mean over cores of each type matches in {} cases{}",
        literal - mismatched.len(),
        mismatched.first().map_or("none", String::as_str),
        averages,
        if averages_ok { "" } else { " with failures" }
    );
    Ok(Outcome::new(mismatched.is_empty() && averages_ok, detail))
}

fn criterion_10() -> Result<Outcome, String> {
    let ctx = context("E8", Some(2))?;
    let table = core_rank_table(&ctx, 1).map_err(err)?;
    let expected: &[&[&str]] = &[
        &[
            "*63", "A1^2", "27", "25", "24", "24", "24", "24", "24", "26", "*198",
        ],
        &[
            "*28", "A2", "11", "10", "10", "10", "10", "10", "10", "17", "*88",
        ],
        &[
            "*91",
            "nfw_se(I)",
            "38",
            "35",
            "34",
            "34",
            "34",
            "34",
            "34",
            "43",
            "*286",
        ],
    ];
    let mut outcome = grid_outcome(&table, expected, "E8 core rank 1 from codim <= 2 flats");
    let bundled = table
        .checks
        .iter()
        .all(|c| c.notes.iter().any(|n| n.contains("[bundled]")));
    if !bundled {
        outcome.passed = false;
    }
    outcome.detail.push_str(if bundled {
        "; exponents of A^H flagged [bundled]"
    } else {
        "; provenance flag missing"
    });
    Ok(outcome)
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn number(k: &std::sync::Arc<NumberField>, c: &[(i64, i64)]) -> AlgebraicNumber {
    AlgebraicNumber::from_coeffs(k, c.iter().map(|&(n, d)| rational(n, d)).collect())
}

fn criterion_11() -> Result<Outcome, String> {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 200,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    );
    let coeffs = || prop::collection::vec((-20i64..=20, 1i64..=6), 0..7);
    let labels = prop::sample::select(vec![3u32, 4, 5, 7, 8, 10, 12]);
    runner
        .run(
            &(labels.clone(), coeffs(), coeffs(), coeffs()),
            |(m, a, b, c)| {
                let k = NumberField::new(m).unwrap();
                let (a, b, c) = (number(&k, &a), number(&k, &b), number(&k, &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    prop_assert!((&a * &a.inverse().unwrap()).is_one());
                    prop_assert_eq!(a.sign() * (-&a).sign(), -1);
                    prop_assert_eq!((&a * &a).sign(), 1);
                }
                Ok(())
            },
        )
        .map_err(|e| format!("field axioms: {e}"))?;
    let rows = prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..6);
    runner
        .run(&(labels, rows), |(m, rows)| {
            let k = NumberField::new(m).unwrap();
            let theta = AlgebraicNumber::theta(&k);
            let rows: Vec<Vec<AlgebraicNumber>> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .map(|&v| {
                            let x = AlgebraicNumber::from_int(&k, v);
                            if i % 2 == 1 {
                                &x * &theta
                            } else {
                                x
                            }
                        })
                        .collect()
                })
                .collect();
            prop_assert_eq!(kernel_basis(&rows, 4, &k).len() + rank_of(&rows, 4), 4);
            Ok(())
        })
        .map_err(|e| format!("kernel rank: {e}"))?;

    for t in [
        "A1", "A7", "B5", "D6", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(9)",
    ] {
        let ct = parse_type(t).map_err(err)?;
        let d = DegreeTable::of(&ct.factors()[0]);
        if 2 * d.reflections() != d.coxeter_number * ct.rank() as u64 {
            return Ok(Outcome::new(false, format!("2N = hn fails for {t}")));
        }
    }

    let mut stabilizer_checks = 0;
    for t in ["A3", "B3", "H3", "D4", "F4"] {
        let ctx = context(t, None)?;
        let elements = enumerate_group(ctx.system(), 1_000_000).map_err(err)?;
        for x in &ctx.orbits().types {
            let rep = *ctx.lattice().flat(x.representative).roots();
            let orbit: BTreeSet<usize> = elements
                .iter()
                .filter_map(|w| ctx.lattice().find(&w.map_set(&rep)))
                .collect();
            let stab = elements.iter().filter(|w| w.map_set(&rep) == rep).count();
            if orbit.len() != x.size || stab * x.size != elements.len() {
                return Ok(Outcome::new(
                    false,
                    format!("orbit-stabilizer fails for {t} [{}]", x.label),
                ));
            }
            stabilizer_checks += 1;
        }
    }

    let mut faces = 0;
    for t in ["A2", "B2", "G2", "I2(5)", "A3", "B3", "H3"] {
        let ctx = context(t, None)?;
        let sys = ctx.system();
        let tester = ConeTester::new(sys);
        let planes: Vec<usize> = ctx.lattice().hyperplanes().collect();
        for w in enumerate_group(sys, 1_000_000).map_err(err)? {
            let c = Chamber::new(w);
            let far = faraway_planes(ctx.lattice(), &tester, &c, &planes);
            let near =
                nearest_faraway_flats(ctx.lattice(), &tester, &Face::new(c.clone(), 0), &planes)
                    .map_err(err)?;
            if far != near {
                return Ok(Outcome::new(
                    false,
                    format!("faraway planes differ from nearest faraway flats in {t}"),
                ));
            }
            for f in ctx.lattice().flats() {
                if f.dim() > 0 && tester.trivial(f.roots(), &c) {
                    if associated_faces(sys, f.roots(), &c).len() != 1 {
                        return Ok(Outcome::new(
                            false,
                            format!("associated face not unique in {t}"),
                        ));
                    }
                    faces += 1;
                }
            }
        }
    }
    Ok(Outcome::new(
        true,
        format!("field axioms and kernel ranks on 200 cases each; 2N = hn; {stabilizer_checks} orbit-stabilizer products; faraway = nearest faraway at J = {{}}; {faces} unique associated faces"),
    ))
}

fn main() {
    // libtest-style flags (`--list`, filters) are ignored; only --list is answered
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(u32, &str, Duration, Check); 11] = [
        (
            1,
            "H4 core-rank-1 table",
            Duration::from_secs(600),
            criterion_1,
        ),
        (
            2,
            "H4 all-cores table and support sums",
            Duration::from_secs(1800),
            criterion_2,
        ),
        (
            3,
            "main theorem on every valid pair",
            Duration::from_secs(900),
            criterion_3,
        ),
        (
            4,
            "full-support reflection count",
            Duration::from_secs(900),
            criterion_4,
        ),
        (
            5,
            "refined full-support reflection counts",
            Duration::from_secs(900),
            criterion_5,
        ),
        (
            6,
            "double counting of faraway planes",
            Duration::from_secs(120),
            criterion_6,
        ),
        (
            7,
            "beta by chambers equals beta by derivative",
            Duration::from_secs(900),
            criterion_7,
        ),
        (
            8,
            "average number of faraway planes",
            Duration::from_secs(900),
            criterion_8,
        ),
        (
            9,
            "coincidental formula for every core",
            Duration::from_secs(900),
            criterion_9,
        ),
        (
            10,
            "E8 core-rank-1 table",
            Duration::from_secs(7200),
            criterion_10,
        ),
        (
            11,
            "property suites",
            Duration::from_secs(120),
            criterion_11,
        ),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let elapsed = start.elapsed();
        let in_budget = elapsed <= budget;
        let passed = outcome.passed && in_budget;
        println!(
            "criterion {id:>2}: {} {name} ({:.1}s, budget {}s) {}{}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail,
            if in_budget { "" } else { " [over budget]" }
        );
        let known = KNOWN_FAILURES.contains(&id);
        if passed == known {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as recorded (known failures: {KNOWN_FAILURES:?})");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
