use serde::Serialize;

use super::config::OutputFormat;
use crate::error::{Error, Result};
use crate::faraway::{
    core_label, cores_of_type, g_set, g_type, nfw_se, nfw_se_core, support_identity, Context,
    CountReport,
};

/// How a cell value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Row or column heading.
    Label,
    /// Counted over the lattice.
    Enumerated,
    /// Counted over the lattice and equal to the closed formula.
    Theorem,
    /// Entry of the Orlik-Solomon matrix.
    OsMatrix,
    /// Number of hyperplanes of a restriction.
    Restriction,
    Blank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub value: String,
    pub route: Route,
    /// Set on quantities given by the closed formulas.
    pub bold: bool,
    /// Text printed before the value in markdown (`|A^X| = `).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caption: Option<String>,
}

impl Cell {
    fn label(s: impl Into<String>) -> Self {
        Self {
            value: s.into(),
            route: Route::Label,
            bold: false,
            caption: None,
        }
    }

    fn blank() -> Self {
        Self {
            value: String::new(),
            route: Route::Blank,
            bold: false,
            caption: None,
        }
    }

    fn count(v: impl ToString, route: Route, bold: bool) -> Self {
        Self {
            value: v.to_string(),
            route,
            bold,
            caption: None,
        }
    }

    fn captioned(mut self, caption: impl Into<String>) -> Self {
        self.caption = Some(caption.into());
        self
    }
}

/// A formula check as it appears in a table artifact (no timing, so the
/// artifact is byte-stable).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub lhs: String,
    pub rhs: Option<String>,
    pub matched: Option<bool>,
    pub notes: Vec<String>,
}

impl From<&CountReport> for Check {
    fn from(r: &CountReport) -> Self {
        let v = serde_json::to_value(r).expect("reports serialize");
        Self {
            identity: r.identity.clone(),
            lhs: v["lhs"].as_str().unwrap_or_default().to_string(),
            rhs: v["rhs"].as_str().map(str::to_string),
            matched: r.matched,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub group: String,
    pub layout: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Vec<Check>,
}

impl Table {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.matched != Some(false))
    }

    /// Looks up a body cell by its row label pair and column header.
    pub fn cell(&self, row: &[&str], column: &str) -> Option<&Cell> {
        let c = self.header.iter().position(|h| h == column)?;
        self.rows
            .iter()
            .find(|r| r.iter().zip(row).all(|(cell, want)| cell.value == *want))
            .map(|r| &r[c])
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Markdown => self.to_markdown(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_markdown(&self) -> String {
        let esc = |s: &str| s.replace('|', "\\|");
        let mut out = format!("## {} ({})\n\n", self.group, self.layout);
        out.push_str(&format!(
            "| {} |\n",
            self.header
                .iter()
                .map(|h| esc(h))
                .collect::<Vec<_>>()
                .join(" | ")
        ));
        out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| {
                    let v = if c.bold && !c.value.is_empty() {
                        format!("**{}**", c.value)
                    } else {
                        c.value.clone()
                    };
                    match &c.caption {
                        Some(cap) => esc(&format!("{cap} = {v}")),
                        None => esc(&v),
                    }
                })
                .collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for c in &self.checks {
                let status = match c.matched {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "ENUM",
                };
                let rhs = c
                    .rhs
                    .as_deref()
                    .map(|r| format!(", rhs = {r}"))
                    .unwrap_or_default();
                let notes: String = c.notes.iter().map(|n| format!("; {n}")).collect();
                out.push_str(&format!(
                    "- [{status}] {}: lhs = {}{rhs}{notes}\n",
                    c.identity, c.lhs
                ));
            }
        }
        out
    }

    /// One line per cell: row, column, value, route, bold.
    pub fn to_csv(&self) -> String {
        let quote = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::from("row,column,value,route,bold\n");
        for (i, row) in self.rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let route = serde_json::to_value(cell.route).expect("routes serialize");
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i,
                    quote(&self.header[j]),
                    quote(&cell.value),
                    route.as_str().unwrap_or_default(),
                    cell.bold
                ));
            }
        }
        out
    }
}

/// Simple-root subsets in reading order (`{1,3}` before `{1,4}` before `{2,3}`).
fn sorted_cores(mut cores: Vec<u64>) -> Vec<u64> {
    cores.sort_by_key(|&m| (0..64).filter(|s| m >> s & 1 == 1).collect::<Vec<u32>>());
    cores
}

fn theorem_cell(report: &CountReport) -> Cell {
    let value = report.lhs_integer().unwrap_or_default();
    match report.matched {
        Some(true) => Cell::count(value, Route::Theorem, true),
        Some(false) => Cell::count(value, Route::Enumerated, true),
        None => Cell::count(value, Route::Enumerated, false),
    }
}

/// Cores of rank `r` against targets one codimension down: one `u` column
/// and one `G([X])` column per core type, and an `nfw_se` footer.
pub fn core_rank_table(ctx: &Context, r: usize) -> Result<Table> {
    let n = ctx.rank();
    if r + 2 > n {
        return Err(Error::InvalidArgument(format!(
            "core rank {r} leaves no targets above the origin in rank {n}"
        )));
    }
    if r + 1 > ctx.lattice().max_codim() {
        return Err(Error::InsufficientDepth {
            needed: r + 1,
            available: ctx.lattice().max_codim(),
        });
    }
    let types = &ctx.orbits().types;
    let xs: Vec<usize> = ctx
        .orbits()
        .at_codim(r)
        .into_iter()
        .filter(|&x| !cores_of_type(ctx, x).is_empty())
        .collect();
    let ys = ctx.orbits().at_codim(r + 1);
    let cores: Vec<u64> = xs
        .iter()
        .flat_map(|&x| sorted_cores(cores_of_type(ctx, x)))
        .collect();

    let mut header: Vec<String> = xs
        .iter()
        .map(|&x| format!("u_[{}],[Y]", types[x].label))
        .collect();
    header.push("[Y]".into());
    header.extend(cores.iter().map(|&c| core_label(c)));
    header.extend(xs.iter().map(|&x| format!("G([{}])_[Y]", types[x].label)));

    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for &y in &ys {
        let mut row: Vec<Cell> = xs
            .iter()
            .map(|&x| Cell::count(ctx.u(x, y), Route::OsMatrix, true))
            .collect();
        row.push(Cell::label(types[y].label.clone()));
        row.extend(
            cores
                .iter()
                .map(|&c| Cell::count(g_set(ctx, c, y).len(), Route::Enumerated, false)),
        );
        for &x in &xs {
            let report = g_type(ctx, x, y)?;
            row.push(theorem_cell(&report));
            checks.push(Check::from(&report));
        }
        rows.push(row);
    }
    let mut footer = Vec::new();
    for &x in &xs {
        footer.push(
            Cell::count(ctx.restriction_size(x)?, Route::Restriction, true).captioned("|A^X|"),
        );
    }
    footer.push(Cell::label("nfw_se(I)"));
    footer.extend(
        cores
            .iter()
            .map(|&c| Cell::count(nfw_se_core(ctx, c).len(), Route::Enumerated, false)),
    );
    for &x in &xs {
        let report = nfw_se(ctx, x)?;
        footer.push(theorem_cell(&report).captioned(format!("nfw_se([{}])", types[x].label)));
        checks.push(Check::from(&report));
    }
    rows.push(footer);
    Ok(Table {
        group: ctx.coxeter_type().to_string(),
        layout: format!("core rank {r}"),
        header,
        rows,
        checks,
    })
}

/// Every core against every target type: per-core rows, then the
/// `G([X])` and `u` rows of each core type.
pub fn full_support_table(ctx: &Context) -> Result<Table> {
    let n = ctx.rank();
    if ctx.lattice().max_codim() + 1 < n {
        return Err(Error::InsufficientDepth {
            needed: n - 1,
            available: ctx.lattice().max_codim(),
        });
    }
    let types = &ctx.orbits().types;
    let ys: Vec<usize> = types
        .iter()
        .filter(|t| t.codim >= 1 && t.codim < n)
        .map(|t| t.id)
        .collect();
    let xs: Vec<usize> = types
        .iter()
        .filter(|t| t.codim + 2 <= n)
        .map(|t| t.id)
        .filter(|&x| !cores_of_type(ctx, x).is_empty())
        .collect();

    let mut header = vec!["[V^I]".to_string(), "I".to_string()];
    header.extend(ys.iter().map(|&y| types[y].label.clone()));
    header.push("nfw_se(I)".into());

    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for &x in &xs {
        let cx = types[x].codim;
        let xl = types[x].label.clone();
        for core in sorted_cores(cores_of_type(ctx, x)) {
            let mut row = vec![Cell::label(xl.clone()), Cell::label(core_label(core))];
            for &y in &ys {
                row.push(if types[y].codim > cx {
                    Cell::count(g_set(ctx, core, y).len(), Route::Enumerated, false)
                } else {
                    Cell::blank()
                });
            }
            row.push(Cell::count(
                nfw_se_core(ctx, core).len(),
                Route::Enumerated,
                false,
            ));
            rows.push(row);
        }

        let mut g_row = vec![
            Cell::label(xl.clone()),
            Cell::label(format!("G([{xl}])_[Y]")),
        ];
        for &y in &ys {
            g_row.push(if types[y].codim > cx {
                let report = g_type(ctx, x, y)?;
                if report.rhs.is_some() {
                    checks.push(Check::from(&report));
                }
                theorem_cell(&report)
            } else {
                Cell::blank()
            });
        }
        let report = nfw_se(ctx, x)?;
        g_row.push(theorem_cell(&report).captioned(format!("nfw_se([{xl}])")));
        checks.push(Check::from(&report));
        rows.push(g_row);

        let mut u_row = vec![
            Cell::label(xl.clone()),
            Cell::label(format!("u_[{xl}],[Y]")),
        ];
        for &y in &ys {
            let cy = types[y].codim;
            u_row.push(if cy >= cx {
                Cell::count(ctx.u(x, y), Route::OsMatrix, cy == cx + 1)
            } else {
                Cell::blank()
            });
        }
        u_row.push(
            Cell::count(ctx.restriction_size(x)?, Route::Restriction, true).captioned("|A^X|"),
        );
        rows.push(u_row);
    }
    for &y in &ys {
        if types[y].codim + 1 == n {
            checks.push(Check::from(&support_identity(ctx, y)?));
        }
    }
    Ok(Table {
        group: ctx.coxeter_type().to_string(),
        layout: "all cores".into(),
        header,
        rows,
        checks,
    })
}

/// Lattice depth a table needs: one below the cores for a fixed core rank,
/// the corank-one level for the full layout.
pub fn required_codim(rank: usize, core_rank: Option<usize>) -> usize {
    match core_rank {
        Some(r) => (r + 1).min(rank),
        None => rank.saturating_sub(1).max(1),
    }
}
