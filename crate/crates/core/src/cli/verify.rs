use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::config::OutputFormat;
use crate::arrangement::{ConeTester, FlatId};
use crate::coxeter::{enumerate_group, GroupElement};
use crate::error::{Error, Result};
use crate::faraway::{
    average_faraway, beta_equivalence, chapoton, chapoton_refined, coincidental_average,
    coincidental_check, constant_ratio, core_label, cores_of_type, double_counting_check, exact,
    g_type, nfw_se, nu_identity, reduce_reducible, support_identity, theorem_pairs, BuildOptions,
    Context, CountReport,
};
use crate::invariants::{beta_from_polynomial, os_exponents, restriction_polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Beta,
    DoubleCounting,
    MainTheorem,
    Chapoton,
    Coincidental,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(Self::Beta),
            "double-counting" => Ok(Self::DoubleCounting),
            "main-theorem" => Ok(Self::MainTheorem),
            "chapoton" => Ok(Self::Chapoton),
            "coincidental" => Ok(Self::Coincidental),
            "all" => Ok(Self::All),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected beta, double-counting, main-theorem, chapoton, coincidental or all"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub suite: Suite,
    pub passed: bool,
    pub reports: Vec<CountReport>,
    /// Sub-suites of `all` that do not apply to the group.
    pub skipped: Vec<String>,
}

impl VerifyReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            OutputFormat::Markdown => {
                let mut out = format!(
                    "## verify {} ({})\n\n",
                    self.group,
                    serde_json::to_value(self.suite)
                        .unwrap()
                        .as_str()
                        .unwrap_or_default()
                );
                for r in &self.reports {
                    out.push_str(&format!("- {r}\n"));
                }
                for s in &self.skipped {
                    out.push_str(&format!("- [SKIP] {s}\n"));
                }
                out.push_str(&format!(
                    "\n{}\n",
                    if self.passed {
                        "all checks passed"
                    } else {
                        "MISMATCH"
                    }
                ));
                out
            }
            OutputFormat::Csv => {
                let mut out = String::from("identity,lhs,rhs,matched\n");
                for r in &self.reports {
                    let v = serde_json::to_value(r).expect("reports serialize");
                    out.push_str(&format!(
                        "\"{}\",{},{},{}\n",
                        r.identity.replace('"', "\"\""),
                        v["lhs"].as_str().unwrap_or_default(),
                        v["rhs"].as_str().unwrap_or_default(),
                        r.matched.map_or("", |m| if m { "true" } else { "false" })
                    ));
                }
                out
            }
        }
    }
}

/// Chamber data shared by the sweep suites.
struct Sweep<'a> {
    tester: ConeTester<'a>,
    elements: Vec<GroupElement>,
}

impl<'a> Sweep<'a> {
    fn new(ctx: &'a Context, limit: u128) -> Result<Self> {
        let elements = enumerate_group(ctx.system(), limit)?;
        Ok(Self {
            tester: ConeTester::new(ctx.system()),
            elements,
        })
    }
}

/// Representatives of the types whose restriction has dimension at least 2.
fn restriction_reps(ctx: &Context) -> Vec<FlatId> {
    ctx.orbits()
        .types
        .iter()
        .filter(|t| t.codim + 2 <= ctx.rank())
        .map(|t| t.representative)
        .collect()
}

fn beta_suite(ctx: &Context, sweep: &Sweep<'_>) -> Result<Vec<CountReport>> {
    let mut out = Vec::new();
    for t in ctx.orbits().at_codim(1) {
        let k = ctx.orbits().types[t].representative;
        out.push(beta_equivalence(ctx, &sweep.tester, &sweep.elements, 0, k)?);
    }
    for x in restriction_reps(ctx).into_iter().filter(|&x| x != 0) {
        let k = ctx.lattice().contained_at(x, 1)[0];
        out.push(beta_equivalence(ctx, &sweep.tester, &sweep.elements, x, k)?);
    }
    if ctx.lattice().is_complete() {
        for x in restriction_reps(ctx) {
            let start = Instant::now();
            let chi = restriction_polynomial(ctx.lattice(), x)?;
            let os = os_exponents(ctx.lattice(), x)?;
            let label = &ctx.orbits().type_of(x).label;
            out.push(
                CountReport::compare(
                    format!(
                        "beta of A^[{label}] in {}: derivative vs exponents",
                        ctx.coxeter_type()
                    ),
                    exact(beta_from_polynomial(&chi)),
                    exact(os.beta() as i128),
                )
                .note(format!("chi = {chi}"))
                .timed(start),
            );
        }
    }
    Ok(out)
}

fn double_counting_suite(ctx: &Context, sweep: &Sweep<'_>) -> Result<Vec<CountReport>> {
    let (t, e) = (&sweep.tester, &sweep.elements);
    let mut out = Vec::new();
    for h in ctx.orbits().at_codim(1) {
        let planes = ctx.orbits().members(h);
        let mut r = double_counting_check(ctx, t, e, 0, &planes)?;
        r.identity = format!("{} (orbit [{}])", r.identity, ctx.orbits().types[h].label);
        out.push(r);
    }
    let all: Vec<FlatId> = ctx.lattice().hyperplanes().collect();
    out.push(double_counting_check(ctx, t, e, 0, &all)?);
    out.push(average_faraway(ctx, t, e, 0)?);
    for x in restriction_reps(ctx).into_iter().filter(|&x| x != 0) {
        let planes = ctx.lattice().contained_at(x, 1);
        let mut r = double_counting_check(ctx, t, e, x, &planes)?;
        r.identity = format!(
            "{} (restriction to [{}])",
            r.identity,
            ctx.orbits().type_of(x).label
        );
        out.push(r);
    }
    Ok(out)
}

fn main_theorem_suite(ctx: &Context, options: BuildOptions) -> Result<Vec<CountReport>> {
    let n = ctx.rank();
    let types = &ctx.orbits().types;
    let mut out = Vec::new();
    if ctx.coxeter_type().is_irreducible() {
        for (x, y) in theorem_pairs(ctx) {
            out.push(g_type(ctx, x, y)?);
        }
        for x in types.iter().filter(|t| t.codim + 2 <= n).map(|t| t.id) {
            out.push(nfw_se(ctx, x)?);
            out.push(constant_ratio(ctx, x)?);
            if ctx.lattice().is_complete() {
                out.push(nu_identity(ctx, x)?);
            }
        }
    } else {
        let cores: Vec<u64> = (0u64..1 << n)
            .filter(|c| c.count_ones() as usize + 2 <= n)
            .collect();
        for &c in &cores {
            let mut r = reduce_reducible(ctx, &[c], options)?;
            r.identity = format!(
                "simple extensions of {} in {} via factors",
                core_label(c),
                ctx.coxeter_type()
            );
            out.push(r);
        }
    }
    for y in types.iter().filter(|t| t.codim + 1 == n).map(|t| t.id) {
        out.push(support_identity(ctx, y)?);
    }
    Ok(out)
}

fn chapoton_suite(ctx: &Context) -> Result<Vec<CountReport>> {
    let mut out = vec![chapoton(ctx)?];
    for h in ctx.orbits().at_codim(1) {
        out.push(chapoton_refined(ctx, h)?);
    }
    Ok(out)
}

/// The coincidental formula is checked against the mean over cores of a
/// type; per-core values are listed without a verdict since they need not
/// match it individually.
fn coincidental_suite(ctx: &Context) -> Result<Vec<CountReport>> {
    let n = ctx.rank();
    let mut out = Vec::new();
    for x in ctx.orbits().types.iter().filter(|t| t.codim + 2 <= n) {
        for y in ctx.orbits().at_codim(x.codim + 1) {
            out.push(coincidental_average(ctx, x.id, y)?);
            for core in cores_of_type(ctx, x.id) {
                let r = coincidental_check(ctx, core, y)?;
                let formula = r
                    .rhs
                    .map(|v| format!("formula value {v}"))
                    .unwrap_or_default();
                out.push(CountReport::enumeration(r.identity, r.lhs).note(formula));
            }
        }
    }
    Ok(out)
}

fn is_coincidental(ctx: &Context) -> bool {
    let ct = ctx.coxeter_type();
    ct.is_irreducible() && ct.factors()[0].is_coincidental()
}

/// Runs a suite; `limit` caps the group enumeration of the chamber sweeps.
pub fn verify(
    ctx: &Context,
    suite: Suite,
    limit: u128,
    options: BuildOptions,
) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let chambers = matches!(suite, Suite::Beta | Suite::DoubleCounting | Suite::All);
    let sweep = if chambers {
        Some(Sweep::new(ctx, limit)?)
    } else {
        None
    };
    let irreducible = ctx.coxeter_type().is_irreducible();
    match suite {
        Suite::Beta => reports.extend(beta_suite(ctx, sweep.as_ref().unwrap())?),
        Suite::DoubleCounting => {
            reports.extend(double_counting_suite(ctx, sweep.as_ref().unwrap())?)
        }
        Suite::MainTheorem => reports.extend(main_theorem_suite(ctx, options)?),
        Suite::Chapoton => reports.extend(chapoton_suite(ctx)?),
        Suite::Coincidental => reports.extend(coincidental_suite(ctx)?),
        Suite::All => {
            let sweep = sweep.as_ref().unwrap();
            reports.extend(beta_suite(ctx, sweep)?);
            reports.extend(double_counting_suite(ctx, sweep)?);
            reports.extend(main_theorem_suite(ctx, options)?);
            if irreducible {
                reports.extend(chapoton_suite(ctx)?);
            } else {
                skipped.push(format!("chapoton: {} is reducible", ctx.coxeter_type()));
            }
            if is_coincidental(ctx) {
                reports.extend(coincidental_suite(ctx)?);
            } else {
                skipped.push(format!(
                    "coincidental: {} is not a coincidental type",
                    ctx.coxeter_type()
                ));
            }
        }
    }
    Ok(VerifyReport {
        group: ctx.coxeter_type().to_string(),
        suite,
        passed: reports.iter().all(CountReport::passed),
        reports,
        skipped,
    })
}
