//! JSON problem files in, JSON reports out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use superopt_core::factorization::BalancedPair;
use superopt_core::linalg::{c, CMat};
use superopt_core::superopt::{self, CanonicalFactorization, Config};
use superopt_core::verify::{self, CheckRecord};
use superopt_core::{hankel, wiener_hopf, Error, MatFun};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "invalid input: {s}"),
            CliError::Numerical(s) => write!(f, "numerical failure: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Nehari,
    Superopt,
    Factorize,
    Verify,
    WhIndices,
    Classify,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Nehari, Command::Superopt, Command::Factorize, Command::Verify, Command::WhIndices, Command::Classify];

    pub fn name(self) -> &'static str {
        match self {
            Command::Nehari => "nehari",
            Command::Superopt => "superopt",
            Command::Factorize => "factorize",
            Command::Verify => "verify",
            Command::WhIndices => "wh-indices",
            Command::Classify => "classify",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc_band: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub k: i64,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub superoptimal_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

/// Claimed factor data for one level; Υ is n×r, Θ n×(n−r), Ω m×r, Ξ m×(m−r).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub sigma: f64,
    pub r: usize,
    #[serde(rename = "U")]
    pub u: Vec<CoeffEntry>,
    #[serde(rename = "Upsilon")]
    pub upsilon: Vec<CoeffEntry>,
    #[serde(rename = "Theta", default)]
    pub theta: Vec<CoeffEntry>,
    #[serde(rename = "Omega")]
    pub omega: Vec<CoeffEntry>,
    #[serde(rename = "Xi", default)]
    pub xi: Vec<CoeffEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub m: usize,
    pub n: usize,
    pub coeffs: Vec<CoeffEntry>,
    #[serde(default)]
    pub options: Options,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Vec<BlockSpec>>,
}

fn entries_to_matfun(rows: usize, cols: usize, entries: &[CoeffEntry], what: &str) -> Result<MatFun, CliError> {
    let mut seen = BTreeSet::new();
    let mut out = BTreeMap::new();
    for e in entries {
        if !seen.insert(e.k) {
            return Err(CliError::Input(format!("{what}: duplicate coefficient index k = {}", e.k)));
        }
        let shape_ok = |m: &Vec<Vec<f64>>| m.len() == rows && m.iter().all(|r| r.len() == cols);
        if !shape_ok(&e.re) {
            return Err(CliError::Input(format!("{what}: coefficient k = {} has re of wrong shape (expected {rows}x{cols})", e.k)));
        }
        if let Some(im) = &e.im {
            if !shape_ok(im) {
                return Err(CliError::Input(format!("{what}: coefficient k = {} has im of wrong shape (expected {rows}x{cols})", e.k)));
            }
        }
        if e.re.iter().flatten().chain(e.im.iter().flatten().flatten()).any(|x| !x.is_finite()) {
            return Err(CliError::Input(format!("{what}: coefficient k = {} is not finite", e.k)));
        }
        let a = CMat::from_fn(rows, cols, |i, j| c(e.re[i][j], e.im.as_ref().map_or(0.0, |m| m[i][j])));
        out.insert(e.k, a);
    }
    Ok(MatFun::from_map(rows, cols, out, 0.0))
}

pub fn matfun_to_entries(f: &MatFun) -> Vec<CoeffEntry> {
    f.coeffs()
        .iter()
        .map(|(&k, a)| CoeffEntry {
            k,
            re: (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[(i, j)].re).collect()).collect(),
            im: Some((0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[(i, j)].im).collect()).collect()),
        })
        .collect()
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_matfun(f: &MatFun) -> Self {
        ProblemSpec { m: f.rows(), n: f.cols(), coeffs: matfun_to_entries(f), options: Options::default(), expected: None, factorization: None }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.m == 0 || self.n == 0 {
            return Err(CliError::Input("m and n must be positive".into()));
        }
        if self.coeffs.is_empty() {
            return Err(CliError::Input("coeffs must not be empty".into()));
        }
        self.symbol()?;
        if let Some(bs) = &self.factorization {
            self.blocks(bs)?;
        }
        Ok(())
    }

    pub fn symbol(&self) -> Result<MatFun, CliError> {
        entries_to_matfun(self.m, self.n, &self.coeffs, "coeffs")
    }

    /// Factor data as (σ, U, 𝒱 pair, 𝒲ᵗ pair), with dimensions shrinking level by level.
    pub fn blocks(&self, bs: &[BlockSpec]) -> Result<Vec<(f64, MatFun, BalancedPair, BalancedPair)>, CliError> {
        let (mut m, mut n) = (self.m, self.n);
        let mut out = Vec::new();
        for (j, b) in bs.iter().enumerate() {
            let r = b.r;
            if r == 0 || r > m || r > n {
                return Err(CliError::Input(format!("factorization block {j}: r = {r} incompatible with {m}x{n}")));
            }
            let tag = |s: &str| format!("factorization block {j} {s}");
            let u = entries_to_matfun(r, r, &b.u, &tag("U"))?;
            let ups = entries_to_matfun(n, r, &b.upsilon, &tag("Upsilon"))?;
            let th = entries_to_matfun(n, n - r, &b.theta, &tag("Theta"))?;
            let om = entries_to_matfun(m, r, &b.omega, &tag("Omega"))?;
            let xi = entries_to_matfun(m, m - r, &b.xi, &tag("Xi"))?;
            let pv = BalancedPair::from_parts(ups, th)?;
            let pw = BalancedPair::from_parts(om, xi)?;
            out.push((b.sigma, u, pv, pw));
            m -= r;
            n -= r;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

pub fn parse_input(path: &Path) -> Result<ProblemSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    ProblemSpec::from_json(&text).map_err(|e| match e {
        CliError::Input(s) => CliError::Input(format!("{}: {s}", path.display())),
        other => other,
    })
}

/// Flags given on the command line; they override the file's options.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub timings: bool,
}

/// Reals written with 17 significant digits; non-finite values become null.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffOut {
    pub k: i64,
    pub re: Vec<Vec<Num>>,
    pub im: Vec<Vec<Num>>,
}

fn coeffs_out(f: &MatFun) -> Vec<CoeffOut> {
    f.coeffs()
        .iter()
        .map(|(&k, a)| CoeffOut {
            k,
            re: (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| Num(a[(i, j)].re)).collect()).collect(),
            im: (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| Num(a[(i, j)].im)).collect()).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockOut {
    pub sigma: Num,
    pub r: usize,
    pub index_sum: i64,
    #[serde(rename = "U_coeffs")]
    pub u: Vec<CoeffOut>,
    #[serde(rename = "V_coeffs")]
    pub v: Vec<CoeffOut>,
    #[serde(rename = "W_coeffs")]
    pub w: Vec<CoeffOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub defect: Num,
    pub tol: Num,
    pub passed: bool,
    pub details: String,
}

impl From<&CheckRecord> for CheckOut {
    fn from(c: &CheckRecord) -> Self {
        CheckOut { name: c.name.clone(), defect: Num(c.defect), tol: Num(c.tol), passed: c.passed, details: c.details.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub unitary: bool,
    pub badly_approximable: bool,
    pub very_badly_approximable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices_negative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense_range: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_kernel: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub superoptimal_values: Vec<Num>,
    pub multiplicities: Vec<usize>,
    pub blocks: Vec<BlockOut>,
    #[serde(rename = "F_coeffs")]
    pub f_coeffs: Vec<CoeffOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_coeffs: Option<Vec<CoeffOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    pub checks: Vec<CheckOut>,
    pub timings_ms: BTreeMap<String, Num>,
}

impl Report {
    fn new(cmd: Command) -> Self {
        Report {
            command: cmd.name().into(),
            superoptimal_values: vec![],
            multiplicities: vec![],
            blocks: vec![],
            f_coeffs: vec![],
            error_coeffs: None,
            indices: None,
            classification: None,
            checks: vec![],
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn push(&mut self, c: CheckRecord) {
        self.checks.push((&c).into());
    }

    fn fill_factorization(&mut self, cf: &CanonicalFactorization) {
        self.superoptimal_values = cf.svals.values.iter().map(|&x| Num(x)).collect();
        self.multiplicities = cf.svals.multiplicities.clone();
        self.f_coeffs = coeffs_out(&cf.best_approx);
        self.blocks = cf
            .blocks
            .iter()
            .map(|b| BlockOut {
                sigma: Num(b.sigma),
                r: b.r,
                index_sum: b.index_sum,
                u: coeffs_out(&b.u),
                v: coeffs_out(&b.pair_v.v),
                w: coeffs_out(&b.pair_w.v.transpose()),
            })
            .collect();
    }
}

pub fn config_for(spec: &ProblemSpec, opts: &RunOptions) -> Config {
    let d = Config::default();
    Config {
        tol: opts.tol.or(spec.options.tol).unwrap_or(d.tol),
        trunc_band: spec.options.trunc_band.unwrap_or(d.trunc_band),
        grid: opts.grid.or(spec.options.grid).unwrap_or(d.grid),
        seed: opts.seed.or(spec.options.seed),
        zero_tol: d.zero_tol,
    }
}

fn ms(t: Instant) -> Num {
    Num(t.elapsed().as_secs_f64() * 1e3)
}

fn expected_checks(spec: &ProblemSpec, values: Option<&[f64]>, indices: Option<&[i64]>) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let Some(ex) = &spec.expected else { return out };
    let tol = ex.tol.unwrap_or(1e-8);
    if let (Some(want), Some(got)) = (&ex.superoptimal_values, values) {
        let defect = if want.len() != got.len() {
            f64::INFINITY
        } else {
            want.iter().zip(got).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        out.push(CheckRecord::new("expected superoptimal values", defect, tol, format!("got {got:?}")));
    }
    if let (Some(want), Some(got)) = (&ex.indices, indices) {
        let defect = if want.as_slice() == got { 0.0 } else { 1.0 };
        out.push(CheckRecord::new("expected indices", defect, 0.0, format!("got {got:?}")));
    }
    out
}

/// Sup over the grid of |s₀(e(ζ)) − σ|.
fn modulus_check(e: &MatFun, sigma: f64) -> CheckRecord {
    let grid = e.default_grid().max(512);
    let defect = e
        .samples(grid)
        .iter()
        .map(|a| (superopt_core::linalg::op_norm(a) - sigma).abs())
        .fold(0.0, f64::max);
    CheckRecord::new("error norm constant", defect, 1e-7, "")
}

fn supplied_factor_checks(spec: &ProblemSpec, phi: &MatFun, cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let Some(bs) = &spec.factorization else { return Ok(()) };
    let blocks = spec.blocks(bs)?;
    for (j, (_, u, pv, pw)) in blocks.iter().enumerate() {
        report.push(verify::check_balanced(pv, &format!("supplied V{j}")));
        report.push(verify::check_balanced(pw, &format!("supplied W{j}")));
        report.push(CheckRecord::new(format!("supplied U{j} unitary-valued"), u.unitarity_defect(u.default_grid().max(256)), 1e-8, ""));
    }
    let parts: Vec<_> = blocks.iter().map(|(s, u, pv, pw)| (*s, u, pv, pw)).collect();
    let band = phi.bandwidth().max(cfg.trunc_band);
    let rebuilt = superopt::reconstruct_from_blocks(&parts, spec.m, spec.n, band)?;
    let cf = superopt::canonical_factorize(phi, cfg)?;
    let grid = superopt_core::laurent::default_grid(band);
    let target = phi.sub(&cf.best_approx)?;
    report.push(CheckRecord::new("supplied factors reproduce error function", rebuilt.grid_distance(&target, grid), 1e-7, ""));
    for c in verify::check_converse(&parts, spec.m, spec.n, cfg) {
        report.push(c);
    }
    Ok(())
}

pub fn run_pipeline(spec: &ProblemSpec, cmd: Command, opts: &RunOptions) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let phi = spec.symbol()?;
    let cfg = config_for(spec, opts);
    let mut report = Report::new(cmd);
    match cmd {
        Command::Nehari => {
            let (f, e) = superopt::nehari_best_approx(&phi, &cfg)?;
            let sigma = hankel::hankel_truncation(&phi).operator_norm();
            report.superoptimal_values = vec![Num(sigma)];
            report.push(modulus_check(&e, sigma));
            report.push(CheckRecord::new("best approximation analytic", f.analyticity_defect(), 1e-9, ""));
            for c in expected_checks(spec, Some(&[sigma][..]), None) {
                report.push(c);
            }
            report.f_coeffs = coeffs_out(&f);
            report.error_coeffs = Some(coeffs_out(&e));
        }
        Command::Superopt | Command::Factorize => {
            let cf = superopt::canonical_factorize(&phi, &cfg)?;
            report.timings_ms.insert("factorize".into(), ms(t0));
            let t1 = Instant::now();
            report.fill_factorization(&cf);
            if cmd == Command::Superopt {
                report.push(verify::check_error_singular_values(&phi, &cf));
                report.push(CheckRecord::new("best approximation analytic", cf.best_approx.analyticity_defect(), 1e-9, ""));
            } else {
                for c in verify::verify_factorization(&phi, &cf, None) {
                    report.push(c);
                }
            }
            for c in expected_checks(spec, Some(&cf.svals.values), None) {
                report.push(c);
            }
            report.timings_ms.insert("checks".into(), ms(t1));
        }
        Command::Verify => {
            let seed = cfg.seed.unwrap_or(1);
            let (cf, rep) = verify::verify_all(&phi, &cfg, (seed, seed.wrapping_add(1)))?;
            report.timings_ms.insert("verify".into(), ms(t0));
            report.fill_factorization(&cf);
            for c in &rep.checks {
                report.push(c.clone());
            }
            for c in expected_checks(spec, Some(&cf.svals.values), None) {
                report.push(c);
            }
            supplied_factor_checks(spec, &phi, &cfg, &mut report)?;
        }
        Command::WhIndices => {
            let w = wiener_hopf::wh_indices(&phi, hankel::RANK_TOL)?;
            let (k, kstar) = hankel::kernel_dims(&phi, hankel::RANK_TOL)?;
            let ind = k as i64 - kstar as i64;
            report.push(CheckRecord::new(
                "index sum equals Toeplitz index",
                (ind + w.sum()).abs() as f64,
                0.0,
                format!("dim Ker {k}, dim Ker* {kstar}"),
            ));
            for c in expected_checks(spec, None, Some(&w.indices)) {
                report.push(c);
            }
            report.indices = Some(w.indices);
        }
        Command::Classify => classify(&phi, &cfg, spec, &mut report)?,
    }
    if opts.timings {
        report.timings_ms.insert("total".into(), ms(t0));
    } else {
        report.timings_ms.clear();
    }
    Ok(report)
}

fn classify(phi: &MatFun, cfg: &Config, spec: &ProblemSpec, report: &mut Report) -> Result<(), CliError> {
    let grid = phi.default_grid().max(256);
    let unitary = phi.rows() == phi.cols() && phi.unitarity_defect(grid) <= 1e-8;
    let hn = {
        let h = hankel::hankel_truncation(phi);
        if h.trunc == 0 {
            0.0
        } else {
            h.operator_norm()
        }
    };
    let sup = phi.sup_norm(grid);
    let badly = (sup - hn).abs() <= 1e-8 * sup.max(1.0);
    let cf = superopt::canonical_factorize(phi, cfg)?;
    let very = cf.best_approx.sup_norm(grid) <= 1e-7;
    report.fill_factorization(&cf);
    let mut out = Classification {
        unitary,
        badly_approximable: badly,
        very_badly_approximable: very,
        indices_negative: None,
        dense_range: None,
        trivial_kernel: None,
    };
    if unitary {
        let c = wiener_hopf::classify_unitary(phi, hankel::RANK_TOL)?;
        let agree = c.indices_negative == c.dense_range && c.dense_range == c.trivial_kernel;
        report.push(CheckRecord::new("index criteria agree", if agree { 0.0 } else { 1.0 }, 0.0, ""));
        let pipeline = very && cf.svals.values.iter().all(|t| (t - 1.0).abs() <= 1e-8);
        report.push(CheckRecord::new(
            "index classification matches superoptimal pipeline",
            if pipeline == c.indices_negative { 0.0 } else { 1.0 },
            0.0,
            format!("indices {:?}", c.indices.indices),
        ));
        report.indices = Some(c.indices.indices.clone());
        out.indices_negative = Some(c.indices_negative);
        out.dense_range = Some(c.dense_range);
        out.trivial_kernel = Some(c.trivial_kernel);
    }
    for c in expected_checks(spec, Some(&cf.svals.values), report.indices.as_deref()) {
        report.push(c);
    }
    report.classification = Some(out);
    Ok(())
}

/// Exit code and either a report or an error message for one input file.
pub fn run_file(path: &Path, cmd: Command, opts: &RunOptions) -> (i32, Result<Report, CliError>) {
    let t = Instant::now();
    let spec = match parse_input(path) {
        Ok(s) => s,
        Err(e) => return (e.exit_code(), Err(e)),
    };
    let parse_ms = ms(t);
    match run_pipeline(&spec, cmd, opts) {
        Ok(mut r) => {
            if opts.timings {
                r.timings_ms.insert("parse".into(), parse_ms);
            }
            (r.exit_code(), Ok(r))
        }
        Err(e) => (e.exit_code(), Err(e)),
    }
}
