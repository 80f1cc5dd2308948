//! Python bindings: groups, arrangements with their orbit data, counts,
//! tables and verification suites.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use farflat::cli::{self, OutputFormat, Suite};
use farflat::coxeter::{self, CoxeterType, RootSystem};
use farflat::faraway::{self, BuildOptions, Context, CountReport};
use farflat::invariants::{characteristic_polynomial, os_exponents};
use farflat::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::RankOutOfRange { .. } | Error::InvalidArgument(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn format_of(s: &str) -> PyResult<OutputFormat> {
    s.parse().map_err(py_err)
}

/// A finite Coxeter group given by its type symbol (`"H4"`, `"A1xB3"`).
#[pyclass(frozen, module = "pyfarflat")]
struct CoxeterGroup {
    ctype: CoxeterType,
}

#[pymethods]
impl CoxeterGroup {
    #[new]
    fn new(symbol: &str) -> PyResult<Self> {
        Ok(Self {
            ctype: coxeter::parse_type(symbol).map_err(py_err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.ctype.rank()
    }

    /// `|W|` as a Python int.
    #[getter]
    fn order(&self) -> u128 {
        self.ctype.order()
    }

    #[getter]
    fn reflections(&self) -> usize {
        self.ctype.reflections()
    }

    #[getter]
    fn exponents(&self) -> Vec<u64> {
        self.ctype.exponents()
    }

    #[getter]
    fn degrees(&self) -> Vec<u64> {
        self.ctype
            .factors()
            .iter()
            .flat_map(|f| f.degrees())
            .collect()
    }

    #[getter]
    fn is_irreducible(&self) -> bool {
        self.ctype.is_irreducible()
    }

    /// Degree data as JSON (same payload as `farflat describe --format json`).
    fn describe(&self) -> PyResult<String> {
        let d = cli::describe(&self.ctype).map_err(py_err)?;
        serde_json::to_string(&d).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Positive roots in the simple-root basis, as float coordinates.
    fn positive_roots(&self) -> PyResult<Vec<Vec<f64>>> {
        let sys = RootSystem::generate(&self.ctype).map_err(py_err)?;
        Ok(sys
            .roots()
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64()).collect())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("CoxeterGroup('{}')", self.ctype)
    }

    fn __str__(&self) -> String {
        self.ctype.to_string()
    }
}

/// One side-by-side check: the enumerated value and, when a formula
/// applies, its exact value.
#[pyclass(frozen, get_all, module = "pyfarflat")]
struct Report {
    identity: String,
    lhs: String,
    rhs: Option<String>,
    matched: Option<bool>,
    notes: Vec<String>,
}

#[pymethods]
impl Report {
    #[getter]
    fn passed(&self) -> bool {
        self.matched != Some(false)
    }

    fn __repr__(&self) -> String {
        match &self.rhs {
            Some(rhs) => format!("Report({}: {} vs {})", self.identity, self.lhs, rhs),
            None => format!("Report({}: {})", self.identity, self.lhs),
        }
    }
}

impl From<&CountReport> for Report {
    fn from(r: &CountReport) -> Self {
        Self {
            identity: r.identity.clone(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.map(|v| v.to_string()),
            matched: r.matched,
            notes: r.notes.clone(),
        }
    }
}

/// The reflection arrangement of a group with its lattice of flats built
/// to `max_codim` (full rank by default), orbits and Orlik-Solomon data.
#[pyclass(frozen, module = "pyfarflat")]
struct Arrangement {
    ctx: Context,
}

impl Arrangement {
    fn type_id(&self, label: &str) -> PyResult<usize> {
        self.ctx
            .type_id(label.trim_start_matches('[').trim_end_matches(']'))
            .map_err(py_err)
    }
}

fn core_mask(core: &[usize], rank: usize) -> PyResult<u64> {
    let mut mask = 0u64;
    for &i in core {
        if i == 0 || i > rank {
            return Err(PyValueError::new_err(format!(
                "simple index {i} outside 1..={rank}"
            )));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

#[pymethods]
impl Arrangement {
    #[new]
    #[pyo3(signature = (symbol, max_codim=None))]
    fn new(py: Python<'_>, symbol: &str, max_codim: Option<usize>) -> PyResult<Self> {
        let config = cli::RunConfig::new(symbol, max_codim).map_err(py_err)?;
        let ctx = py
            .detach(|| {
                Context::build(
                    &config.group,
                    config.max_codim,
                    BuildOptions::for_rank(config.group.rank()),
                )
            })
            .map_err(py_err)?;
        Ok(Self { ctx })
    }

    #[getter]
    fn group(&self) -> CoxeterGroup {
        CoxeterGroup {
            ctype: self.ctx.coxeter_type().clone(),
        }
    }

    #[getter]
    fn max_codim(&self) -> usize {
        self.ctx.lattice().max_codim()
    }

    /// Number of flats per codimension.
    fn level_sizes(&self) -> Vec<usize> {
        self.ctx.lattice().level_sizes()
    }

    /// `(label, codim, size)` for every orbit of flats.
    fn orbits(&self) -> Vec<(String, usize, usize)> {
        self.ctx
            .orbits()
            .types
            .iter()
            .map(|t| (t.label.clone(), t.codim, t.size))
            .collect()
    }

    /// Coefficients of `chi(A, t)`, constant term first.
    fn characteristic_polynomial(&self) -> PyResult<Vec<i128>> {
        let chi =
            characteristic_polynomial(self.ctx.lattice(), self.ctx.mobius()).map_err(py_err)?;
        Ok(chi.coefficients().to_vec())
    }

    /// Orlik-Solomon exponents of the restriction to a flat of type `label`
    /// and where they came from (`computed` or `bundled`).
    fn os_exponents(&self, label: &str) -> PyResult<(Vec<u64>, String)> {
        let x = self.type_id(label)?;
        let rep = self.ctx.orbits().types[x].representative;
        let os = os_exponents(self.ctx.lattice(), rep).map_err(py_err)?;
        Ok((os.exponents, os.provenance.to_string()))
    }

    /// `u[X][Y]`: flats of type `y` inside a fixed flat of type `x`.
    fn u(&self, x: &str, y: &str) -> PyResult<u64> {
        Ok(self.ctx.u(self.type_id(x)?, self.type_id(y)?))
    }

    /// `|G(I)_[Y]|` for a core given as 1-based simple indices.
    fn g(&self, core: Vec<usize>, target: &str) -> PyResult<usize> {
        let mask = core_mask(&core, self.ctx.rank())?;
        Ok(faraway::g_set(&self.ctx, mask, self.type_id(target)?).len())
    }

    /// `|G([X])_[Y]|` with the closed formula when it applies.
    fn g_type(&self, x: &str, y: &str) -> PyResult<Report> {
        let r = faraway::g_type(&self.ctx, self.type_id(x)?, self.type_id(y)?).map_err(py_err)?;
        Ok(Report::from(&r))
    }

    fn nfw_se(&self, x: &str) -> PyResult<Report> {
        let r = faraway::nfw_se(&self.ctx, self.type_id(x)?).map_err(py_err)?;
        Ok(Report::from(&r))
    }

    /// Number of full-support reflections against its closed formula.
    fn full_support_reflections(&self) -> PyResult<Report> {
        Ok(Report::from(&faraway::chapoton(&self.ctx).map_err(py_err)?))
    }

    /// Rendered table: all cores by default, or one core rank.
    #[pyo3(signature = (core_rank=None, format="markdown"))]
    fn table(&self, py: Python<'_>, core_rank: Option<usize>, format: &str) -> PyResult<String> {
        let format = format_of(format)?;
        let table = py
            .detach(|| match core_rank {
                Some(r) => cli::core_rank_table(&self.ctx, r),
                None => cli::full_support_table(&self.ctx),
            })
            .map_err(py_err)?;
        Ok(table.render(format))
    }

    /// Runs a verification suite; returns `(passed, reports)`.
    #[pyo3(signature = (suite="all"))]
    fn verify(&self, py: Python<'_>, suite: &str) -> PyResult<(bool, Vec<Report>)> {
        let suite: Suite = suite.parse().map_err(py_err)?;
        let options = BuildOptions::for_rank(self.ctx.rank());
        let report = py
            .detach(|| cli::verify(&self.ctx, suite, cli::DEFAULT_LIMIT, options))
            .map_err(py_err)?;
        Ok((
            report.passed,
            report.reports.iter().map(Report::from).collect(),
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "Arrangement('{}', max_codim={})",
            self.ctx.coxeter_type(),
            self.ctx.lattice().max_codim()
        )
    }
}

/// Canonical spelling of a type symbol.
#[pyfunction]
fn parse_type(symbol: &str) -> PyResult<String> {
    Ok(coxeter::parse_type(symbol).map_err(py_err)?.to_string())
}

/// Rational coefficients (as strings, constant term first) of the minimal
/// polynomial of `2 cos(pi/m)`.
#[pyfunction]
fn minimal_polynomial(m: u32) -> PyResult<Vec<String>> {
    let k = farflat::arith::minimal_polynomial_2cos(m).map_err(py_err)?;
    Ok(k.minimal_polynomial()
        .iter()
        .map(ToString::to_string)
        .collect())
}

#[pymodule]
fn pyfarflat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CoxeterGroup>()?;
    m.add_class::<Arrangement>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(parse_type, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_polynomial, m)?)?;
    Ok(())
}
