//! Command implementations. Each command returns its output as strings so
//! the binary only handles argument parsing, files and exit codes.

use std::fs;
use std::path::Path;

use thiserror::Error;

use sharkdepth::bounds::{
    build_alternating_dataset, tradeoff_csv, tradeoff_table, verify_error_bound, TradeoffRow,
};
use sharkdepth::covering::{chain_for_period, crossing_series, ChainAnalysis};
use sharkdepth::dynamics::{cycle_report, find_cycles, prime_period, sharkovsky_order, SharkovskyKey};
use sharkdepth::format::{read_network, read_pwl, write_dataset, write_network, write_pwl};
use sharkdepth::maps::{canonical, golden_ratio_upper, logistic, tent};
use sharkdepth::scalar::format_sig12;
use sharkdepth::spectral::rho;
use sharkdepth::{compile_tent, extract_pwl, format_rational, parse_rational, Interval, Pwl, RatInterval, Rational};

/// Grid size used for `logistic:r` when none is given.
pub const DEFAULT_LOGISTIC_GRID: usize = 4096;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    /// Piece cap reached; `partial` holds whatever was completed.
    #[error("{message}")]
    Resource { message: String, partial: Option<String> },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Resource { .. } => 3,
            CliError::Invariant(_) => 4,
            CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }
}

impl From<sharkdepth::Error> for CliError {
    fn from(e: sharkdepth::Error) -> Self {
        use sharkdepth::Error as E;
        match e {
            E::Parse(_) | E::Malformed(_) | E::InvalidArgument(_) | E::DimensionMismatch(_) => {
                CliError::Parse(e.to_string())
            }
            E::ResourceLimit { .. } => CliError::Resource { message: e.to_string(), partial: None },
            E::Invariant(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub cap: usize,
    pub tol: f64,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Self { cap: sharkdepth::DEFAULT_BREAKPOINT_CAP, tol: sharkdepth::spectral::RHO_TOL, format: Format::Csv }
    }
}

/// Result of a command: the report, plus an optional artifact (a network,
/// PWL or dataset file) that goes to `--out` when given.
#[derive(Debug, Default, PartialEq)]
pub struct Output {
    pub report: String,
    pub artifact: Option<String>,
}

impl Output {
    fn report(report: String) -> Self {
        Self { report, artifact: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapSpec {
    Tent(Rational),
    Logistic { r: Rational, grid: usize },
    Canonical(usize),
    File(String),
}

impl MapSpec {
    /// `tent:<mu>`, `logistic:<r>[:<N>]`, `canonical:<n>` or `file:<path>`.
    pub fn parse(s: &str) -> CliResult<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| CliError::Parse(format!("map spec {s:?} has no ':'")))?;
        let bad = |what: &str| CliError::Parse(format!("map spec {s:?}: {what}"));
        match kind {
            "tent" => Ok(MapSpec::Tent(parse_rational(rest)?)),
            "logistic" => {
                let (r, grid) = match rest.split_once(':') {
                    Some((r, n)) => (r, n.parse().map_err(|_| bad("grid size is not an integer"))?),
                    None => (rest, DEFAULT_LOGISTIC_GRID),
                };
                Ok(MapSpec::Logistic { r: parse_rational(r)?, grid })
            }
            "canonical" => Ok(MapSpec::Canonical(rest.parse().map_err(|_| bad("period is not an integer"))?)),
            "file" if !rest.is_empty() => Ok(MapSpec::File(rest.to_string())),
            _ => Err(bad("unknown kind (expected tent, logistic, canonical or file)")),
        }
    }

    pub fn is_approximate(&self) -> bool {
        matches!(self, MapSpec::Logistic { .. })
    }

    pub fn load(&self) -> CliResult<Pwl> {
        Ok(match self {
            MapSpec::Tent(mu) => tent(mu.clone())?,
            MapSpec::Logistic { r, grid } => logistic(r, *grid)?,
            MapSpec::Canonical(n) => canonical(*n)?,
            MapSpec::File(path) => read_pwl(&read_file(path)?)?,
        })
    }
}

fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(Path::new(path)).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// Loaded map with the header every report derived from it starts with.
pub struct LoadedMap {
    pub spec: String,
    pub approximate: bool,
    pub f: Pwl,
}

impl LoadedMap {
    pub fn new(spec: &str) -> CliResult<Self> {
        let parsed = MapSpec::parse(spec)?;
        let f = parsed.load()?;
        if !f.maps_into_itself() {
            return Err(CliError::Parse(format!("{spec}: the map does not send its domain into itself")));
        }
        Ok(Self { spec: spec.to_string(), approximate: parsed.is_approximate(), f })
    }

    fn header(&self) -> String {
        let d = self.f.domain();
        format!(
            "# map={} domain=[{},{}] pieces={}\n# approximate={}\n",
            self.spec,
            format_rational(d.lo()),
            format_rational(d.hi()),
            self.f.pieces(),
            self.approximate
        )
    }
}

/// Renders rows as CSV, or as space-aligned columns.
pub fn render_table(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(header.to_vec()));
            for row in rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

fn parse_interval(s: &str) -> CliResult<RatInterval> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| CliError::Parse(format!("interval {s:?} must be written x,y")))?;
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    if a >= b {
        return Err(CliError::Parse(format!("interval {s:?} needs x < y")));
    }
    Ok(Interval::new(a, b)?)
}

fn show_interval(iv: &RatInterval) -> String {
    format!("[{},{}]", format_rational(iv.lo()), format_rational(iv.hi()))
}

/// Chain for the Sharkovsky-greatest period up to `max_period` that has an
/// odd factor above one.
fn best_chain(f: &Pwl, max_period: usize, cap: usize) -> CliResult<Option<ChainAnalysis<Rational>>> {
    for n in sharkovsky_order(max_period) {
        if SharkovskyKey::of(n).is_power_of_two() {
            break;
        }
        match chain_for_period(f, n, cap) {
            Ok(a) => return Ok(Some(a)),
            Err(sharkdepth::Error::NoChain(_)) | Err(sharkdepth::Error::ResourceLimit { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(None)
}

fn chain_text(a: &ChainAnalysis<Rational>, tol: f64) -> String {
    let mut out = String::new();
    let m = a.key.power_of_two();
    out.push_str(&format!("base: f^{m}, odd period {} of the base\n", a.key.odd));
    let orbit: Vec<String> = a.cycle.points().iter().map(format_rational).collect();
    out.push_str(&format!("cycle: {}{}\n", orbit.join(","), if a.cycle.is_continuum() { " (segment representative)" } else { "" }));
    for (i, iv) in a.graph.intervals().iter().enumerate() {
        let succ: Vec<String> = a.graph.successors(i).map(|j| format!("I{j}")).collect();
        out.push_str(&format!("I{i} {} -> {}\n", show_interval(iv), succ.join(" ")));
    }
    let chain: Vec<String> = a.chain.chain().iter().map(|i| format!("I{i}")).collect();
    out.push_str(&format!("chain: {}\n", chain.join(" -> ")));
    out.push_str("A:\n");
    for row in a.chain.matrix_a::<i64>().rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("  {}\n", cells.join(" ")));
    }
    let r = a.chain.r();
    out.push_str(&format!("r: {r}\nrho: {}\n", format_sig12(rho(r as u32, tol))));
    out
}

pub fn cmd_analyze(map: &str, max_period: usize, opts: &Options) -> CliResult<Output> {
    let m = LoadedMap::new(map)?;
    let mut out = m.header();
    let report = prime_period(&m.f, max_period, opts.cap)?;
    out.push_str(&format!("{}\n", report.summary()));
    for n in 1..=max_period {
        match find_cycles(&m.f, n, opts.cap) {
            Ok(cycles) if cycles.is_empty() => {}
            Ok(cycles) => {
                let segments = cycles.iter().filter(|c| c.is_continuum()).count();
                let mut line = format!("period {n}: {} cycle(s)", cycles.len());
                if segments > 0 {
                    line.push_str(&format!(", {segments} from segments of periodic points"));
                    if n == 1 {
                        line = format!("period 1: {} fixed point(s), fixed segment present", cycles.len());
                    }
                }
                out.push_str(&line);
                out.push('\n');
            }
            Err(sharkdepth::Error::ResourceLimit { .. }) => out.push_str(&format!("period {n}: skipped (piece cap)\n")),
            Err(e) => return Err(e.into()),
        }
    }
    match best_chain(&m.f, max_period, opts.cap)? {
        Some(a) => {
            out.push_str(&chain_text(&a, opts.tol));
            out.push_str("regime: exponential crossings\n");
        }
        None => {
            out.push_str("chain: none (no period with an odd factor above one)\n");
            out.push_str("regime: at most polynomial\n");
        }
    }
    Ok(Output::report(out))
}

pub fn cmd_cycles(map: &str, periods: &[usize], opts: &Options) -> CliResult<Output> {
    let m = LoadedMap::new(map)?;
    let mut out = m.header();
    let mut all = Vec::new();
    for &n in periods {
        let cycles = find_cycles(&m.f, n, opts.cap)?;
        for c in cycles.iter().filter(|c| c.is_continuum()) {
            let pts: Vec<String> = c.points().iter().map(format_rational).collect();
            out.push_str(&format!("# segment representative: period={n} orbit={}\n", pts.join(",")));
        }
        all.extend(cycles);
    }
    out.push_str(&cycle_report(&all));
    Ok(Output::report(out))
}

pub fn cmd_covering(map: &str, period: Option<usize>, max_period: usize, opts: &Options) -> CliResult<Output> {
    let m = LoadedMap::new(map)?;
    let mut out = m.header();
    let analysis = match period {
        Some(n) => Some(chain_for_period(&m.f, n, opts.cap)?),
        None => best_chain(&m.f, max_period, opts.cap)?,
    };
    match analysis {
        Some(a) => out.push_str(&chain_text(&a, opts.tol)),
        None => return Err(CliError::Failed(format!("no covering chain for periods up to {max_period}"))),
    }
    Ok(Output::report(out))
}

pub fn cmd_iterate(map: &str, t_max: usize, interval: Option<&str>, max_period: usize, opts: &Options) -> CliResult<Output> {
    let m = LoadedMap::new(map)?;
    let mut out = m.header();
    let (base, intervals, rate) = match interval {
        Some(s) => {
            out.push_str("# intervals: given\n");
            (m.f.clone(), vec![parse_interval(s)?], None)
        }
        None => match best_chain(&m.f, max_period, opts.cap)? {
            Some(a) => {
                let ivs: Vec<String> = a.chain.intervals().iter().map(show_interval).collect();
                out.push_str(&format!("# base=f^{} chain={}\n", a.key.power_of_two(), ivs.join(" ")));
                let r = a.chain.r() as u32;
                (a.base, a.chain.intervals().to_vec(), Some(rho(r, opts.tol)))
            }
            None => {
                let range = m.f.range();
                if range.is_degenerate() {
                    return Err(CliError::Failed("map is constant; give --interval".into()));
                }
                out.push_str(&format!("# no covering chain; counting over the range {}\n", show_interval(&range)));
                (m.f.clone(), vec![range], None)
            }
        },
    };
    let (rows, err) = crossing_series(&base, &intervals, t_max, opts.cap);
    let mut header = vec!["t".to_string(), "pieces".to_string()];
    header.extend((0..intervals.len()).map(|i| format!("delta_{i}")));
    header.push("lower_bound".into());
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|(cv, pieces)| {
            let mut row = vec![cv.t.to_string(), pieces.to_string()];
            row.extend(cv.delta.iter().map(|d| d.to_string()));
            row.push(rate.map(|r| format_sig12(r.powi(cv.t as i32))).unwrap_or_default());
            row
        })
        .collect();
    let cols: Vec<&str> = header.iter().map(String::as_str).collect();
    out.push_str(&render_table(&cols, &table, opts.format));
    match err {
        None => Ok(Output::report(out)),
        Some(sharkdepth::Error::ResourceLimit { required, cap }) => Err(CliError::Resource {
            message: format!(
                "piece cap {cap} reached (needed {required}); largest completed t = {}",
                rows.len()
            ),
            partial: Some(out),
        }),
        Some(e) => Err(e.into()),
    }
}

pub fn cmd_rho(r_max: u32, opts: &Options) -> CliResult<Output> {
    if r_max == 0 {
        return Err(CliError::Parse("--r-max must be positive".into()));
    }
    let rows: Vec<Vec<String>> = (1..=r_max).map(|r| vec![r.to_string(), format_sig12(rho(r, opts.tol))]).collect();
    Ok(Output::report(render_table(&["r", "rho"], &rows, opts.format)))
}

pub fn cmd_compile(mu: &str, k: usize, opts: &Options) -> CliResult<Output> {
    let mu = parse_rational(mu)?;
    let net = compile_tent(mu.clone())?.stack(k)?;
    let unit = Interval::new(Rational::from_integer(0.into()), Rational::from_integer(1.into()))?;
    let g = extract_pwl(&net, &unit)?;
    if g.pieces() > opts.cap {
        return Err(sharkdepth::Error::ResourceLimit { required: g.pieces(), cap: opts.cap }.into());
    }
    let report = format!(
        "mu={} k={k} depth={} width={} pieces={}\n",
        format_rational(&mu),
        net.depth(),
        net.width(),
        g.pieces()
    );
    Ok(Output { report, artifact: Some(write_network(&net)) })
}

pub fn cmd_extract(network_path: &str, domain: &str) -> CliResult<Output> {
    let net = read_network(&read_file(network_path)?)?;
    let domain = parse_interval(domain)?;
    let g = extract_pwl(&net, &domain)?;
    let report = format!("depth={} width={} pieces={} domain={}\n", net.depth(), net.width(), g.pieces(), show_interval(&domain));
    Ok(Output { report, artifact: Some(write_pwl(&g)) })
}

pub struct DatasetArgs<'a> {
    pub map: &'a str,
    pub m: usize,
    pub p: usize,
    pub k: u32,
    pub interval: Option<&'a str>,
    pub verify: &'a [(u32, u64)],
}

pub fn cmd_dataset(args: &DatasetArgs<'_>, opts: &Options) -> CliResult<Output> {
    let map = LoadedMap::new(args.map)?;
    let mut report = map.header();
    let iv = match args.interval {
        Some(s) => parse_interval(s)?,
        None => {
            let a = chain_for_period(&map.f, args.m * args.p, opts.cap)?;
            if a.chain.r() != args.p - 2 {
                report.push_str(&format!("# note: chain has r={}, not p-2={}\n", a.chain.r(), args.p - 2));
            }
            a.chain.intervals()[0].clone()
        }
    };
    let d = build_alternating_dataset(&map.f, args.m, args.p, args.k, iv.lo(), iv.hi(), opts.cap)?;
    let origin = d.origin().expect("built datasets record their origin");
    report.push_str(&format!(
        "interval={} n={} points={} floor_rho_k={} threshold={}\n",
        show_interval(&iv),
        d.n(),
        d.len(),
        origin.floor_rho_k,
        format_rational(d.threshold())
    ));
    if origin.half_integer() {
        report.push_str("note: floor(rho^k) is odd; n rounded down from a half-integer\n");
    }
    for &(l, u) in args.verify {
        let r = verify_error_bound(&d, l, u)?;
        report.push_str(&r.summary());
        report.push('\n');
    }
    Ok(Output { report, artifact: Some(write_dataset(&d)) })
}

pub fn cmd_tradeoff(p: usize, k: u32, l_max: Option<u32>, opts: &Options) -> CliResult<Output> {
    let rows = tradeoff_table(p, k, 1..=l_max.unwrap_or(k))?;
    let report = match opts.format {
        Format::Csv => tradeoff_csv(&rows),
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(tradeoff_cells).collect();
            render_table(&["l", "u_max", "bound"], &cells, Format::Text)
        }
    };
    Ok(Output::report(report))
}

fn tradeoff_cells(row: &TradeoffRow) -> Vec<String> {
    vec![
        row.l.to_string(),
        row.u_max.to_string(),
        row.bound.map_or_else(|| "vacuous".to_string(), format_sig12),
    ]
}

/// Whether `tent(mu)` has a cycle of least period 3.
fn tent_has_three_cycle(mu: &Rational, cap: usize) -> CliResult<bool> {
    Ok(!find_cycles(&tent(mu.clone())?, 3, cap)?.is_empty())
}

pub fn cmd_bias_experiment(epsilon: &str, opts: &Options) -> CliResult<Output> {
    let eps = parse_rational(epsilon)?;
    let phi = golden_ratio_upper(12);
    if eps < Rational::from_integer(0.into()) || eps >= phi {
        return Err(CliError::Parse(format!("epsilon {epsilon} must lie in [0, phi_hat)")));
    }
    let perturbed = &phi - &eps;
    let base = tent_has_three_cycle(&phi, opts.cap)?;
    let shifted = tent_has_three_cycle(&perturbed, opts.cap)?;
    let mut out = format!("phi_hat={}\nepsilon={}\n", format_rational(&phi), format_rational(&eps));
    out.push_str(&format!("tent(phi_hat): period 3 {}\n", if base { "present" } else { "absent" }));
    out.push_str(&format!("tent(phi_hat - epsilon): period 3 {}\n", if shifted { "present" } else { "absent" }));
    Ok(Output::report(out))
}
