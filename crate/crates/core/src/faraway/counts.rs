use std::time::Instant;

use rayon::prelude::*;

use super::context::{BuildOptions, Context};
use super::nearest::faraway_planes;
use super::report::{exact, CountReport, Exact};
use crate::arrangement::{restricted_chambers, ConeTester, FlatId};
use crate::coxeter::{CoxeterType, GroupElement};
use crate::error::{Error, Result};
use crate::invariants::{
    beta_from_polynomial, os_exponents, restriction_polynomial, OSData, Provenance,
};

fn mask_label(mask: u64) -> String {
    let parts: Vec<String> = (0..64)
        .filter(|s| mask >> s & 1 == 1)
        .map(|s| (s + 1).to_string())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Full-support flats of orbit `y` whose core is exactly `core`.
pub fn g_set(ctx: &Context, core: u64, y: usize) -> Vec<FlatId> {
    ctx.orbits()
        .members(y)
        .into_iter()
        .filter(|&z| ctx.is_full_support(z) && ctx.core_support(z).core == core)
        .collect()
}

/// Full-support flats with core `core` that are simple extensions of it:
/// codimension `|core| + 1`, origin excluded.
pub fn nfw_se_core(ctx: &Context, core: u64) -> Vec<FlatId> {
    let k = core.count_ones() as usize + 1;
    if k >= ctx.rank() || k > ctx.lattice().max_codim() {
        return Vec::new();
    }
    ctx.lattice()
        .level(k)
        .filter(|&z| ctx.is_full_support(z) && ctx.core_support(z).core == core)
        .collect()
}

/// Simple-root subsets `I` with `[V^I] = [X]`.
pub fn cores_of_type(ctx: &Context, x: usize) -> Vec<u64> {
    crate::invariants::standard_members(ctx.lattice(), ctx.orbits(), x)
}

fn exponent_note(label: &str, os: &OSData) -> String {
    let list: Vec<String> = os.exponents.iter().map(u64::to_string).collect();
    format!("b^{label} = ({}) [{}]", list.join(","), os.provenance)
}

/// `2 m / [N(X):W_X] * prod_{i>=2} (b_i^X - 1)`, shared by the main theorem
/// (`m = u[X][Y]`) and its sum over targets (`m = |A^X|`).
fn theorem_rhs(ctx: &Context, x: usize, m: u64) -> Result<(Exact, Vec<String>)> {
    let rep = ctx.orbits().types[x].representative;
    let os = os_exponents(ctx.lattice(), rep)?;
    let index = ctx.normalizer_index(x)?;
    let rhs = Exact::new(2 * m as i128 * os.beta() as i128, index as i128);
    let mut notes = vec![
        exponent_note(&ctx.orbits().types[x].label, &os),
        format!("[N(X):W_X] = {index}"),
    ];
    if ctx.coxeter_type().degree_table().is_some() && ctx.rank() >= 6 {
        notes.push("|W| from the degree table [bundled]".into());
    }
    Ok((rhs, notes))
}

/// `|G([X])_[Y]|` by enumeration, compared with the main theorem when
/// `dim X = dim Y + 1`, `Y` is not the origin and the group is irreducible.
pub fn g_type(ctx: &Context, x: usize, y: usize) -> Result<CountReport> {
    let start = Instant::now();
    let types = &ctx.orbits().types;
    let cores = cores_of_type(ctx, x);
    let lhs: usize = cores.iter().map(|&i| g_set(ctx, i, y).len()).sum();
    let name = format!(
        "G([{}])_[{}] in {}",
        types[x].label,
        types[y].label,
        ctx.coxeter_type()
    );
    let regime = types[y].codim == types[x].codim + 1 && types[y].codim < ctx.rank();
    if !regime || !ctx.coxeter_type().is_irreducible() {
        return Ok(CountReport::enumeration(name, exact(lhs as i128)).timed(start));
    }
    let (rhs, notes) = theorem_rhs(ctx, x, ctx.u(x, y))?;
    let mut report = CountReport::compare(name, exact(lhs as i128), rhs);
    report.notes = notes;
    report.notes.push(format!("u = {}", ctx.u(x, y)));
    Ok(report.timed(start))
}

/// Every `([X],[Y])` pair the main theorem covers.
pub fn theorem_pairs(ctx: &Context) -> Vec<(usize, usize)> {
    let types = &ctx.orbits().types;
    let mut pairs = Vec::new();
    for x in 0..types.len() {
        for y in 0..types.len() {
            if types[y].codim == types[x].codim + 1 && types[y].codim < ctx.rank() {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// `|G([X])_[Y]| / u[X][Y]` over the targets `[Y]` one codimension down
/// with `u > 0`: reports the largest ratio against the smallest.
pub fn constant_ratio(ctx: &Context, x: usize) -> Result<CountReport> {
    let start = Instant::now();
    let types = &ctx.orbits().types;
    let codim = types[x].codim;
    if codim + 2 > ctx.rank() {
        return Err(Error::InvalidArgument(format!(
            "[{}] has no targets above the origin",
            types[x].label
        )));
    }
    let cores = cores_of_type(ctx, x);
    let mut ratios = Vec::new();
    for y in ctx.orbits().at_codim(codim + 1) {
        let u = ctx.u(x, y);
        if u > 0 {
            let g: usize = cores.iter().map(|&i| g_set(ctx, i, y).len()).sum();
            ratios.push((y, Exact::new(g as i128, u as i128)));
        }
    }
    let hi = ratios.iter().map(|r| r.1).max().unwrap_or_default();
    let lo = ratios.iter().map(|r| r.1).min().unwrap_or_default();
    let listed: Vec<String> = ratios
        .iter()
        .map(|(y, r)| format!("[{}]: {}", types[*y].label, super::report::exact_str(r)))
        .collect();
    Ok(CountReport::compare(
        format!(
            "ratio |G([{}])_[Y]|/u constant in {}",
            types[x].label,
            ctx.coxeter_type()
        ),
        hi,
        lo,
    )
    .note(listed.join(", "))
    .timed(start))
}

/// `|nfw_se([X])|` against `2 |A^X| / [N(X):W_X] * beta(A^X)`.
pub fn nfw_se(ctx: &Context, x: usize) -> Result<CountReport> {
    let start = Instant::now();
    let lhs: usize = cores_of_type(ctx, x)
        .iter()
        .map(|&i| nfw_se_core(ctx, i).len())
        .sum();
    let label = &ctx.orbits().types[x].label;
    let name = format!("nfw_se([{label}]) in {}", ctx.coxeter_type());
    // the formula needs W irreducible and a non-origin extension
    if !ctx.coxeter_type().is_irreducible() || ctx.orbits().types[x].codim + 2 > ctx.rank() {
        return Ok(CountReport::enumeration(name, exact(lhs as i128)).timed(start));
    }
    let size = ctx.restriction_size(x)?;
    let (rhs, notes) = theorem_rhs(ctx, x, size)?;
    let mut report = CountReport::compare(name, exact(lhs as i128), rhs);
    report.notes = notes;
    report.notes.push(format!("|A^X| = {size}"));
    Ok(report.timed(start))
}

fn irreducible_table(ctx: &Context) -> Result<crate::coxeter::DegreeTable> {
    ctx.coxeter_type()
        .degree_table()
        .ok_or_else(|| Error::InvalidArgument(format!("{} is not irreducible", ctx.coxeter_type())))
}

/// Number of full-support reflections against `nh/|W| prod_{i>=2}(e_i - 1)`.
pub fn chapoton(ctx: &Context) -> Result<CountReport> {
    let start = Instant::now();
    let table = irreducible_table(ctx)?;
    let lhs = ctx
        .lattice()
        .hyperplanes()
        .filter(|&h| ctx.is_full_support(h))
        .count();
    let n = ctx.rank() as i128;
    let prod: i128 = table
        .exponents
        .iter()
        .skip(1)
        .map(|&e| e as i128 - 1)
        .product();
    let rhs = Exact::new(n * table.coxeter_number as i128 * prod, table.order as i128);
    Ok(CountReport::compare(
        format!("f_W in {}", ctx.coxeter_type()),
        exact(lhs as i128),
        rhs,
    )
    .timed(start))
}

/// Full-support reflections in the orbit `[H]` against
/// `prod_{i<n} (h - 1 - e_i) / [N(H):W_H]`, with exponent duality checked.
pub fn chapoton_refined(ctx: &Context, h: usize) -> Result<CountReport> {
    let start = Instant::now();
    let table = irreducible_table(ctx)?;
    let t = &ctx.orbits().types[h];
    if t.codim != 1 {
        return Err(Error::InvalidArgument(format!(
            "{} is not a hyperplane type",
            t.label
        )));
    }
    let lhs = ctx
        .orbits()
        .members(h)
        .into_iter()
        .filter(|&f| ctx.is_full_support(f))
        .count();
    let e = &table.exponents;
    let hh = table.coxeter_number as i128;
    let n = e.len();
    let prod: i128 = e[..n - 1].iter().map(|&x| hh - 1 - x as i128).product();
    let index = ctx.normalizer_index(h)?;
    let rhs = Exact::new(prod, index as i128);
    let duality = (0..n).all(|i| e[i] + e[n - 1 - i] == table.coxeter_number);
    let mut report = CountReport::compare(
        format!("(f_W)_[{}] in {}", t.label, ctx.coxeter_type()),
        exact(lhs as i128),
        rhs,
    );
    report.notes.push(format!("[N(H):W_H] = {index}"));
    if !duality {
        report.matched = Some(false);
        report.notes.push("exponent duality fails".into());
    }
    Ok(report.timed(start))
}

/// `|G(I)_[Y]|` against `u[V^I][Y] prod_{i=2}^{n-|I|} (e_i - 1)/(e_i + 1)`
/// for coincidental types.
pub fn coincidental_check(ctx: &Context, core: u64, y: usize) -> Result<CountReport> {
    let start = Instant::now();
    let ct = ctx.coxeter_type();
    if !ct.is_irreducible() || !ct.factors()[0].is_coincidental() {
        return Err(Error::InvalidArgument(format!(
            "{ct} is not a coincidental type"
        )));
    }
    let k = core.count_ones() as usize;
    let t = &ctx.orbits().types[y];
    if t.codim != k + 1 {
        return Err(Error::InvalidArgument(format!(
            "[{}] has rank {}, expected {}",
            t.label,
            t.codim,
            k + 1
        )));
    }
    let x = ctx.type_of_mask(core).ok_or(Error::InsufficientDepth {
        needed: k,
        available: ctx.lattice().max_codim(),
    })?;
    let lhs = g_set(ctx, core, y).len();
    let e = ct.exponents();
    let n = ctx.rank();
    let mut rhs = exact(ctx.u(x, y) as i128);
    for &ei in &e[1..n - k] {
        rhs *= Exact::new(ei as i128 - 1, ei as i128 + 1);
    }
    Ok(CountReport::compare(
        format!(
            "G({})_[{}] in {ct} (coincidental)",
            mask_label(core),
            t.label
        ),
        exact(lhs as i128),
        rhs,
    )
    .timed(start))
}

/// The coincidental formula against the average of `|G(I)_[Y]|` over the
/// cores `I` of type `[X]`. Per-core values need not be equal (A3 gives
/// 1, 0, 1 for `[Y] = [A2]` against the formula's 2/3); their mean is
/// `|G([X])_[Y]| / nu[X]`, which the main theorem pins down.
pub fn coincidental_average(ctx: &Context, x: usize, y: usize) -> Result<CountReport> {
    let start = Instant::now();
    let cores = cores_of_type(ctx, x);
    let first = *cores.first().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "[{}] has no standard member",
            ctx.orbits().types[x].label
        ))
    })?;
    let formula = coincidental_check(ctx, first, y)?
        .rhs
        .expect("coincidental reports carry a formula");
    let values: Vec<usize> = cores.iter().map(|&i| g_set(ctx, i, y).len()).collect();
    let mean = Exact::new(values.iter().sum::<usize>() as i128, cores.len() as i128);
    let types = &ctx.orbits().types;
    let listed: Vec<String> = cores
        .iter()
        .zip(&values)
        .map(|(&i, v)| format!("{}: {v}", mask_label(i)))
        .collect();
    Ok(CountReport::compare(
        format!(
            "mean G(I)_[{}] over I of type [{}] in {} (coincidental)",
            types[y].label,
            types[x].label,
            ctx.coxeter_type()
        ),
        mean,
        formula,
    )
    .note(listed.join(", "))
    .timed(start))
}

/// Beta invariant of `A^X` through the derivative of `chi` when the lattice
/// reaches the origin, otherwise from bundled exponents.
pub fn beta_of(ctx: &Context, x: FlatId) -> Result<(u128, Provenance)> {
    if ctx.lattice().is_complete() {
        let chi = restriction_polynomial(ctx.lattice(), x)?;
        return Ok((beta_from_polynomial(&chi) as u128, Provenance::Computed));
    }
    let os = os_exponents(ctx.lattice(), x)?;
    Ok((os.beta(), os.provenance))
}

/// Sum over the chambers of `A^X` of the number of faraway planes among
/// `planes`, against `2 |P| beta(A^X)`.
pub fn double_counting_check(
    ctx: &Context,
    tester: &ConeTester<'_>,
    elements: &[GroupElement],
    x: FlatId,
    planes: &[FlatId],
) -> Result<CountReport> {
    let start = Instant::now();
    let lattice = ctx.lattice();
    let rx = lattice.flat(x).roots();
    let hyperplanes = lattice.contained_at(x, 1);
    if let Some(bad) = planes.iter().find(|p| !hyperplanes.contains(p)) {
        return Err(Error::InvalidArgument(format!(
            "flat {bad} is not a hyperplane of the restriction"
        )));
    }
    let chambers = restricted_chambers(ctx.system(), rx, elements);
    let lhs: usize = chambers
        .par_iter()
        .map(|f| faraway_planes(lattice, tester, &f.chamber, planes).len())
        .sum();
    let (beta, prov) = beta_of(ctx, x)?;
    let rhs = 2 * planes.len() as i128 * beta as i128;
    Ok(CountReport::compare(
        format!(
            "double counting on {} planes in {}",
            planes.len(),
            ctx.coxeter_type()
        ),
        exact(lhs as i128),
        exact(rhs),
    )
    .note(format!(
        "{} chambers, beta = {beta} [{prov}]",
        chambers.len()
    ))
    .timed(start))
}

/// Beta of `A^X` by the derivative route against half the chambers missing
/// the hyperplane `k`.
pub fn beta_equivalence(
    ctx: &Context,
    tester: &ConeTester<'_>,
    elements: &[GroupElement],
    x: FlatId,
    k: FlatId,
) -> Result<CountReport> {
    let start = Instant::now();
    let lattice = ctx.lattice();
    let by_chambers = crate::invariants::beta_via_chambers(
        tester,
        elements,
        lattice.flat(x).roots(),
        lattice.flat(k).roots(),
    )?;
    let (beta, prov) = beta_of(ctx, x)?;
    Ok(CountReport::compare(
        format!(
            "beta via chambers for [{}] in {}",
            ctx.orbits().type_of(k).label,
            ctx.coxeter_type()
        ),
        exact(by_chambers as i128),
        exact(beta as i128),
    )
    .note(format!("derivative route [{prov}]"))
    .timed(start))
}

/// Average number of faraway planes over the chambers of `A^X` against
/// `|A^X| prod_{i>=2} (b_i - 1)/(b_i + 1)`.
pub fn average_faraway(
    ctx: &Context,
    tester: &ConeTester<'_>,
    elements: &[GroupElement],
    x: FlatId,
) -> Result<CountReport> {
    let start = Instant::now();
    let lattice = ctx.lattice();
    let planes = lattice.contained_at(x, 1);
    let chambers = restricted_chambers(ctx.system(), lattice.flat(x).roots(), elements);
    let total: usize = chambers
        .par_iter()
        .map(|f| faraway_planes(lattice, tester, &f.chamber, &planes).len())
        .sum();
    let lhs = Exact::new(total as i128, chambers.len() as i128);
    let os = os_exponents(lattice, x)?;
    let mut rhs = exact(planes.len() as i128);
    for &b in &os.exponents[1..] {
        rhs *= Exact::new(b as i128 - 1, b as i128 + 1);
    }
    Ok(CountReport::compare(
        format!("average faraway planes in {}", ctx.coxeter_type()),
        lhs,
        rhs,
    )
    .note(exponent_note(&ctx.orbits().type_of(x).label, &os))
    .timed(start))
}

/// Full-support flats of a type of corank one against `|[Y]| - nu[Y]`
/// (a corank-one parabolic is either full support or standard).
pub fn support_identity(ctx: &Context, y: usize) -> Result<CountReport> {
    let start = Instant::now();
    let t = &ctx.orbits().types[y];
    if t.codim + 1 != ctx.rank() {
        return Err(Error::InvalidArgument(format!(
            "[{}] is not of corank one",
            t.label
        )));
    }
    let lhs = ctx
        .orbits()
        .members(y)
        .into_iter()
        .filter(|&f| ctx.is_full_support(f))
        .count();
    let nu = cores_of_type(ctx, y).len();
    Ok(CountReport::compare(
        format!("full-support [{}] in {}", t.label, ctx.coxeter_type()),
        exact(lhs as i128),
        exact(t.size as i128 - nu as i128),
    )
    .note(format!("u[A0][Y] = {}, nu = {nu}", t.size))
    .timed(start))
}

/// `nu[X] [N(X):W_X] = prod (b_i^X + 1)`.
pub fn nu_identity(ctx: &Context, x: usize) -> Result<CountReport> {
    let start = Instant::now();
    let t = &ctx.orbits().types[x];
    let os = os_exponents(ctx.lattice(), t.representative)?;
    let nu = cores_of_type(ctx, x).len() as i128;
    let index = ctx.normalizer_index(x)? as i128;
    let rhs: i128 = os.exponents.iter().map(|&b| b as i128 + 1).product();
    Ok(CountReport::compare(
        format!("nu [N:W_X] for [{}] in {}", t.label, ctx.coxeter_type()),
        exact(nu * index),
        exact(rhs),
    )
    .note(exponent_note(&t.label, &os))
    .timed(start))
}

/// Simple-extension counts in a reducible group, directly and through the
/// factors: a full-support simple extension of `<I>` differs from the full
/// group in one factor, so the count is the sum over factors `i` with
/// `S_j ⊆ I` for every `j != i` of the count in `W_i`.
pub fn reduce_reducible(
    ctx: &Context,
    cores: &[u64],
    options: BuildOptions,
) -> Result<CountReport> {
    let start = Instant::now();
    let ct = ctx.coxeter_type();
    let lhs: usize = cores.iter().map(|&i| nfw_se_core(ctx, i).len()).sum();
    let offsets = ct.factor_offsets();
    let masks: Vec<u64> = ct
        .factors()
        .iter()
        .zip(&offsets)
        .map(|(f, &o)| ((1u64 << f.rank()) - 1) << o)
        .collect();
    let mut rhs = 0usize;
    let mut factor_cache: Vec<Option<Context>> = vec![None; masks.len()];
    for &core in cores {
        for i in 0..masks.len() {
            let others_full = (0..masks.len()).all(|j| j == i || core & masks[j] == masks[j]);
            let local = (core & masks[i]) >> offsets[i];
            let k = local.count_ones() as usize;
            let rank_i = ct.factors()[i].rank();
            // when k + 1 = rank_i the only extension is the origin
            if !others_full || k + 1 >= rank_i {
                continue;
            }
            if factor_cache[i]
                .as_ref()
                .is_none_or(|c| c.lattice().max_codim() < k + 1)
            {
                let single = CoxeterType::irreducible(ct.factors()[i])?;
                factor_cache[i] = Some(Context::build(&single, k + 1, options)?);
            }
            rhs += nfw_se_core(factor_cache[i].as_ref().unwrap(), local).len();
        }
    }
    let cores_text: Vec<String> = cores.iter().map(|&c| mask_label(c)).collect();
    Ok(CountReport::compare(
        format!(
            "reduction to factors of {ct} for cores {}",
            cores_text.join(" ")
        ),
        exact(lhs as i128),
        exact(rhs as i128),
    )
    .timed(start))
}

pub fn core_label(mask: u64) -> String {
    mask_label(mask)
}
