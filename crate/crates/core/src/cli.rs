//! The `astab` command line: argument parsing, dispatch, artifact writing.
//!
//! Reports go to stdout (or `--out`); artifacts go to `--out` or a default
//! file name under the output directory (`--out-dir`, `ASTAB_OUT_DIR`).
//! Exit codes: 0 success, 2 usage, 3 input, 4 resource guard, 5 internal.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{
    build_astab_spectral_polytope, build_awp_spectral_polytope, classify_operator, classify_spectrum,
    conjecture_harness, qutrit_ternary_points, radii_report, sample_lambda_vertices, write_harness_outputs,
    write_ternary_csv, ClassificationReport, Fingerprint, HarnessMode, LambdaSampler, SampledVertex,
};
use crate::error::{Error, Result};
use crate::format::{fmt_g12, CsvWriter};
use crate::operators::{
    enumerate_cnc_qubits, enumerate_stabilizer_states, phase_point_operators, qutrit_lambda_vertices,
    single_qudit_full_cnc, HermitianOperator, OperatorJson,
};
use crate::phase_space::{check_prime, hilbert_dim};
use crate::polytope::{double_description, lambda_hrep_qubits, DdOptions, DdProgress};
use crate::scalar::format_rational;
use crate::spectral::{eigen_spectrum, Spectrum};

/// Spectra whose sum is off by more than this are rejected.
pub const NORMALIZATION_TOL: f64 = 1e-8;
/// Below this the input is taken as is; in between it is renormalized with a warning.
pub const RENORMALIZE_TOL: f64 = 1e-12;

/// Circle samples in the qutrit ternary output.
const TERNARY_CIRCLE_POINTS: usize = 120;

#[derive(Parser, Debug)]
#[command(name = "astab", version, about = "Absolutely stabilizer and absolutely Wigner-positive spectra")]
pub struct Cli {
    /// Directory for artifacts without an explicit --out.
    #[arg(long, global = true, env = "ASTAB_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for vertex sampling; everything else runs on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Stab,
    Lambda,
    Cnc,
    Phasepoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolytopeKind {
    Astab,
    Awp,
    /// Single-qutrit ternary plot data (always CSV).
    Ternary,
}

#[derive(Args, Debug, Clone)]
pub struct System {
    /// Local dimension (prime).
    #[arg(short = 'd', default_value_t = 2)]
    pub d: u32,
    /// Number of qudits.
    #[arg(short = 'n', default_value_t = 1)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stabilizer states, Lambda vertices, CNC operators or phase point operators.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumerateKind,
        #[command(flatten)]
        sys: System,
        /// Allow the two-qubit Lambda double description.
        #[arg(long)]
        confirm_long: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a spectrum or a density matrix.
    Test {
        #[arg(short = 'd', default_value_t = 3)]
        d: u32,
        /// Defaults to the value implied by the spectrum length (1 for "uniform").
        #[arg(short = 'n')]
        n: Option<usize>,
        /// Comma-separated eigenvalues, or "uniform".
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix", allow_hyphen_values = true)]
        spectrum: Option<String>,
        /// Density matrix in operator JSON (d and n are taken from the file).
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ASTAB or AWP polytope of spectra.
    SpectralPolytope {
        #[arg(value_enum, default_value_t = PolytopeKind::Astab)]
        kind: PolytopeKind,
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Named radii, purity thresholds and the ordering chain.
    Radii {
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// LP-sampled qubit Lambda vertices.
    Sample {
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Majorization and norm checks over Lambda vertex orbits.
    Conjectures {
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (defaults to --out-dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr();
    run_with(std::env::args_os(), &mut out, &mut err)
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let threads = match cli.command {
        Command::Sample { .. } | Command::Conjectures { samples: Some(_), .. } => cli.jobs as usize,
        _ => 1,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    dispatch(cli, &pool, stdout, stderr)
}

fn dispatch(cli: &Cli, pool: &rayon::ThreadPool, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let fmt = cli.format;
    match &cli.command {
        Command::Enumerate { kind, sys, confirm_long, out } => {
            let items = pool.install(|| enumerate(*kind, sys, *confirm_long))?;
            let name = format!("{}-d{}-n{}.{}", kind_name(*kind), sys.d, sys.n, ext(fmt));
            let path = artifact_path(&cli.out_dir, out.as_deref(), &name)?;
            let bytes = match fmt {
                Format::Json => json_bytes(&enumeration_json(*kind, sys, &items))?,
                Format::Csv => enumeration_csv(&items)?,
            };
            std::fs::write(&path, bytes)?;
            summary(stdout, json!({ "kind": kind_name(*kind), "d": sys.d, "n": sys.n, "count": items.len(), "file": path }))
        }
        Command::Test { d, n, spectrum, matrix, out } => {
            let report = match (spectrum, matrix) {
                (Some(s), _) => {
                    let (n, s) = parse_spectrum(*d, *n, s, stderr)?;
                    classify_spectrum(*d, n, &s)?
                }
                (None, Some(path)) => classify_operator(&read_matrix(path, stderr)?)?,
                (None, None) => return Err(Error::InvalidArgument("give --spectrum or --matrix".into())),
            };
            let bytes = match fmt {
                Format::Json => json_bytes(&report)?,
                Format::Csv => report_csv(&report)?,
            };
            emit(stdout, out.as_deref(), &bytes)
        }
        Command::SpectralPolytope { kind, sys, out } => {
            let (bytes, ext) = pool.install(|| spectral_polytope(*kind, sys, fmt))?;
            let name = format!("{}-polytope-d{}-n{}.{ext}", polytope_name(*kind), sys.d, sys.n);
            let path = artifact_path(&cli.out_dir, out.as_deref(), &name)?;
            std::fs::write(&path, bytes)?;
            summary(stdout, json!({ "kind": polytope_name(*kind), "d": sys.d, "n": sys.n, "file": path }))
        }
        Command::Radii { sys, out } => {
            let r = radii_report(sys.d, sys.n)?;
            let bytes = match fmt {
                Format::Json => json_bytes(&r)?,
                Format::Csv => {
                    let mut w = CsvWriter::new(Vec::new(), &["quantity", "value"])?;
                    let mut rows = vec![("r_stab", Some(r.r_stab)), ("r_wp", r.r_wp), ("r_awp_out", r.r_awp_out)];
                    rows.extend([("r_gb", Some(r.r_gb)), ("r_psd", Some(r.r_psd))]);
                    rows.extend([("purity_stab_ball", Some(r.purity.stab_ball)), ("purity_awp_upper", r.purity.awp_upper)]);
                    for (k, v) in rows.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))) {
                        w.row_strings([k.to_string(), fmt_g12(v)])?;
                    }
                    for l in &r.chain {
                        w.row_strings([l.relation.clone(), l.holds.to_string()])?;
                    }
                    w.into_inner()
                }
            };
            emit(stdout, out.as_deref(), &bytes)
        }
        Command::Sample { n, count, seed, out } => {
            let draws = pool.install(|| sample_lambda_vertices(*n, *count, *seed))?;
            let name = format!("samples-n{n}-seed{seed}.{}", ext(fmt));
            let path = artifact_path(&cli.out_dir, out.as_deref(), &name)?;
            let bytes = match fmt {
                Format::Json => json_bytes(&samples_json(*n, *seed, &draws))?,
                Format::Csv => samples_csv(*n, &draws)?,
            };
            std::fs::write(&path, bytes)?;
            let distinct: std::collections::BTreeSet<&Fingerprint> = draws.iter().map(|v| &v.fingerprint).collect();
            summary(stdout, json!({ "n": n, "count": count, "seed": seed, "distinct_orbits": distinct.len(), "file": path }))
        }
        Command::Conjectures { n, exhaustive, samples, seed, out } => {
            let mode = match (exhaustive, samples) {
                (true, _) => HarnessMode::Exhaustive,
                (false, Some(s)) => HarnessMode::Sampled {
                    samples: *s,
                    seed: seed.ok_or_else(|| Error::InvalidArgument("--samples needs --seed".into()))?,
                },
                (false, None) => return Err(Error::InvalidArgument("give --exhaustive or --samples".into())),
            };
            let progress = |p: DdProgress| eprintln!("dd: {}/{} constraints, {} rays", p.processed, p.total, p.rays);
            let report = pool.install(|| conjecture_harness(*n, mode, Some(&progress)))?;
            let dir = out.clone().unwrap_or_else(|| cli.out_dir.clone());
            write_harness_outputs(&report, &dir)?;
            summary(
                stdout,
                json!({
                    "n": report.n,
                    "vertices": report.vertices,
                    "distinct_orbits": report.distinct_orbits,
                    "cnc_orbits": report.cnc_orbits,
                    "mixture_failures": report.mixture_failures,
                    "m1_failures": report.m1_failures,
                    "norm_failures": report.norm_failures,
                    "max_hs_norm_sqr": report.max_hs_norm_sqr,
                    "passed": report.passed(),
                    "dir": dir,
                }),
            )
        }
    }
}

fn kind_name(k: EnumerateKind) -> &'static str {
    match k {
        EnumerateKind::Stab => "stab",
        EnumerateKind::Lambda => "lambda",
        EnumerateKind::Cnc => "cnc",
        EnumerateKind::Phasepoints => "phasepoints",
    }
}

fn polytope_name(k: PolytopeKind) -> &'static str {
    match k {
        PolytopeKind::Astab => "astab",
        PolytopeKind::Awp => "awp",
        PolytopeKind::Ternary => "ternary",
    }
}

fn ext(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn artifact_path(dir: &Path, out: Option<&Path>, name: &str) -> Result<PathBuf> {
    match out {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            Ok(p.to_path_buf())
        }
        None => {
            std::fs::create_dir_all(dir)?;
            Ok(dir.join(name))
        }
    }
}

fn json_bytes<T: Serialize + ?Sized>(v: &T) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

fn emit(stdout: &mut dyn Write, out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => {
            let p = artifact_path(Path::new("."), Some(p), "")?;
            std::fs::write(p, bytes)?;
        }
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn summary(stdout: &mut dyn Write, v: Value) -> Result<()> {
    writeln!(stdout, "{}", serde_json::to_string(&v)?)?;
    Ok(())
}

/// One enumerated object: the operator (or exact Pauli coordinates for
/// qubit Lambda vertices) with its label, spectrum and norm.
struct Item {
    label: String,
    operator: Option<OperatorJson>,
    coords: Option<Vec<String>>,
    spectrum: Vec<f64>,
    hs_norm_sqr: f64,
}

impl Item {
    fn from_operator(x: &HermitianOperator) -> Result<Self> {
        Ok(Item {
            label: x.label().to_string(),
            spectrum: eigen_spectrum(x)?.sorted_desc().iter().map(|&v| snap(v)).collect(),
            hs_norm_sqr: x.hs_norm_sqr(),
            operator: Some(x.to_json()),
            coords: None,
        })
    }

    fn from_vertex(v: &SampledVertex) -> Self {
        Item {
            label: v.operator.label().to_string(),
            operator: None,
            coords: Some(v.coords.iter().map(format_rational).collect()),
            spectrum: v.spectrum.sorted_desc().to_vec(),
            hs_norm_sqr: crate::scalar::Scalar::to_f64(&v.hs_norm_sqr),
        }
    }
}

// eigensolver noise around exact zeros
fn snap(x: f64) -> f64 {
    if x.abs() < 1e-13 {
        0.0
    } else {
        x
    }
}

fn unsupported(kind: EnumerateKind, d: u32, n: usize) -> Error {
    let matrix = match kind {
        EnumerateKind::Stab => "d^n <= 64",
        EnumerateKind::Lambda => "(2,1), (2,2) with --confirm-long, (3,1)",
        EnumerateKind::Cnc => "qubits with n <= 3, odd d with n = 1",
        EnumerateKind::Phasepoints => "odd d with d^n <= 64",
    };
    Error::InvalidArgument(format!("enumerate {} is not available at ({d},{n}); supported: {matrix}", kind_name(kind)))
}

fn enumerate(kind: EnumerateKind, sys: &System, confirm_long: bool) -> Result<Vec<Item>> {
    let (d, n) = (sys.d, sys.n);
    check_prime(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    match kind {
        EnumerateKind::Stab => {
            if hilbert_dim(d, n) > 64 {
                return Err(unsupported(kind, d, n));
            }
            enumerate_stabilizer_states(d, n)?.iter().map(|s| Item::from_operator(&s.projector())).collect()
        }
        EnumerateKind::Lambda => match (d, n) {
            (2, 1) | (2, 2) => {
                if n == 2 && !confirm_long {
                    return Err(Error::Resource(
                        "the two-qubit Lambda enumeration runs for tens of seconds to minutes; pass --confirm-long".into(),
                    ));
                }
                let progress = |p: DdProgress| eprintln!("dd: {}/{} constraints, {} rays", p.processed, p.total, p.rays);
                let opts = DdOptions { progress: if n == 2 { Some(&progress) } else { None }, ..Default::default() };
                let mut poly = double_description(&lambda_hrep_qubits(n)?, &opts)?;
                poly.sort_vertices();
                let sampler = LambdaSampler::new(n)?;
                poly.vertices()
                    .iter()
                    .map(|v| sampler.vertex_from_coords(v.clone()).map(|s| Item::from_vertex(&s)))
                    .collect()
            }
            (3, 1) => qutrit_lambda_vertices()?.iter().map(Item::from_operator).collect(),
            _ => Err(unsupported(kind, d, n)),
        },
        EnumerateKind::Cnc => {
            let ops = match (d, n) {
                (2, 1..=3) => {
                    let mut all = Vec::new();
                    for m in 1..=n {
                        all.extend(enumerate_cnc_qubits(n, m)?);
                    }
                    all
                }
                (3 | 5 | 7, 1) => single_qudit_full_cnc(d)?,
                _ => return Err(unsupported(kind, d, n)),
            };
            ops.iter().map(|o| Item::from_operator(&o.operator())).collect()
        }
        EnumerateKind::Phasepoints => {
            if d == 2 || hilbert_dim(d, n) > 64 {
                return Err(unsupported(kind, d, n));
            }
            phase_point_operators(d, n)?.iter().map(Item::from_operator).collect()
        }
    }
}

fn enumeration_json(kind: EnumerateKind, sys: &System, items: &[Item]) -> Value {
    let entries: Vec<Value> = items
        .iter()
        .enumerate()
        .map(|(i, it)| {
            let mut e = json!({ "index": i, "label": it.label, "spectrum": it.spectrum, "hs_norm_sqr": it.hs_norm_sqr });
            if let Some(op) = &it.operator {
                e["operator"] = json!(op);
            }
            if let Some(c) = &it.coords {
                e["pauli_coords"] = json!(c);
            }
            e
        })
        .collect();
    json!({ "kind": kind_name(kind), "d": sys.d, "n": sys.n, "count": items.len(), "items": entries })
}

fn enumeration_csv(items: &[Item]) -> Result<Vec<u8>> {
    let dim = items.first().map_or(0, |i| i.spectrum.len());
    let mut header = vec!["index".to_string(), "label".into(), "hs_norm_sqr".into()];
    header.extend((1..=dim).map(|k| format!("lambda_{k}")));
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut w = CsvWriter::new(Vec::new(), &h)?;
    for (i, it) in items.iter().enumerate() {
        let mut row = vec![i.to_string(), it.label.clone(), fmt_g12(it.hs_norm_sqr)];
        row.extend(it.spectrum.iter().map(|&x| fmt_g12(x)));
        w.row_strings(row)?;
    }
    Ok(w.into_inner())
}

/// Validates a density spectrum: entries below `-1e-8` or a sum off by more
/// than `1e-8` are errors; smaller defects are repaired with a warning.
pub fn normalize_spectrum(values: Vec<f64>, stderr: &mut dyn Write) -> Result<Spectrum> {
    if values.is_empty() {
        return Err(Error::Input("empty spectrum".into()));
    }
    if let Some(x) = values.iter().find(|x| !x.is_finite() || **x < -NORMALIZATION_TOL) {
        return Err(Error::Input(format!("spectrum entry {x} is negative or not finite")));
    }
    let mut v = values;
    if v.iter().any(|&x| x < -RENORMALIZE_TOL) {
        let _ = writeln!(stderr, "warning: clamping slightly negative eigenvalues to zero");
    }
    v.iter_mut().for_each(|x| *x = x.max(0.0));
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Input(format!("spectrum sums to {sum}, expected 1")));
    }
    if (sum - 1.0).abs() > RENORMALIZE_TOL {
        let _ = writeln!(stderr, "warning: spectrum sums to {sum}; renormalizing");
        v.iter_mut().for_each(|x| *x /= sum);
    }
    Spectrum::density(v)
}

fn parse_spectrum(d: u32, n: Option<usize>, text: &str, stderr: &mut dyn Write) -> Result<(usize, Spectrum)> {
    check_prime(d)?;
    if text.trim() == "uniform" {
        let n = n.unwrap_or(1);
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        return Ok((n, Spectrum::uniform(hilbert_dim(d, n))));
    }
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Input(format!("not a number: {t:?}"))))
        .collect::<Result<Vec<f64>>>()?;
    let len = values.len();
    let n = match n {
        Some(n) => n,
        None => (1..=16)
            .find(|&k| hilbert_dim(d, k) == len)
            .ok_or_else(|| Error::Dimension(format!("spectrum length {len} is not a power of d = {d}")))?,
    };
    if hilbert_dim(d, n) != len {
        return Err(Error::Dimension(format!("spectrum has {len} entries, expected {}", hilbert_dim(d, n))));
    }
    Ok((n, normalize_spectrum(values, stderr)?))
}

fn read_matrix(path: &Path, stderr: &mut dyn Write) -> Result<HermitianOperator> {
    let text = std::fs::read_to_string(path)?;
    let j: OperatorJson = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let rho = HermitianOperator::from_json(&j)?;
    let tr = rho.trace();
    if (tr - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Input(format!("matrix has trace {tr}, expected 1")));
    }
    if (tr - 1.0).abs() > RENORMALIZE_TOL {
        let _ = writeln!(stderr, "warning: matrix has trace {tr}; renormalizing");
        let m = rho.matrix().scale(num_complex::Complex64::new(1.0 / tr, 0.0));
        return HermitianOperator::with_tolerance(rho.d(), rho.n(), rho.label().clone(), m, 1e-9);
    }
    Ok(rho)
}

fn verdict_str<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn report_csv(r: &ClassificationReport) -> Result<Vec<u8>> {
    let mut w = CsvWriter::new(
        Vec::new(),
        &["d", "n", "in_stab_hull", "astab", "wp", "awp", "conditional", "necessary_only", "purity", "hs_distance", "violated"],
    )?;
    let violated: Vec<String> = r.violated_constraints.iter().map(|v| v.constraint.clone()).collect();
    w.row_strings([
        r.d.to_string(),
        r.n.to_string(),
        verdict_str(&r.verdicts.in_stab_hull),
        verdict_str(&r.verdicts.astab),
        verdict_str(&r.verdicts.wp),
        verdict_str(&r.verdicts.awp),
        r.conditional.to_string(),
        r.necessary_only.to_string(),
        fmt_g12(r.purity_position.purity),
        fmt_g12(r.purity_position.hs_distance),
        violated.join(";"),
    ])?;
    Ok(w.into_inner())
}

fn spectral_polytope(kind: PolytopeKind, sys: &System, fmt: Format) -> Result<(Vec<u8>, &'static str)> {
    let (d, n) = (sys.d, sys.n);
    match kind {
        PolytopeKind::Astab => {
            let p = build_astab_spectral_polytope(d, n)?;
            match fmt {
                Format::Json => Ok((json_bytes(&p.to_json())?, "json")),
                Format::Csv => {
                    let mut rows: Vec<(&str, &[f64])> = p.chamber.vertices().iter().map(|v| ("chamber", &v[..])).collect();
                    if let Some(c) = &p.closure {
                        rows.extend(c.vertices().iter().map(|v| ("closure", &v[..])));
                    }
                    Ok((vertex_csv(hilbert_dim(d, n), rows)?, "csv"))
                }
            }
        }
        PolytopeKind::Awp => {
            let p = build_awp_spectral_polytope(d, n)?;
            match fmt {
                Format::Json => {
                    let v = json!({ "kind": "awp", "d": d, "n": n, "closure": p.to_json() });
                    Ok((json_bytes(&v)?, "json"))
                }
                Format::Csv => {
                    let f = p.to_f64();
                    let rows: Vec<(&str, &[f64])> = f.vertices().iter().map(|v| ("closure", &v[..])).collect();
                    Ok((vertex_csv(hilbert_dim(d, n), rows)?, "csv"))
                }
            }
        }
        PolytopeKind::Ternary => {
            if (d, n) != (3, 1) {
                return Err(Error::InvalidArgument(format!("ternary output is for one qutrit, got ({d},{n})")));
            }
            let pts = qutrit_ternary_points(TERNARY_CIRCLE_POINTS)?;
            Ok((write_ternary_csv(Vec::new(), &pts)?, "csv"))
        }
    }
}

fn vertex_csv(dim: usize, rows: Vec<(&str, &[f64])>) -> Result<Vec<u8>> {
    let mut header = vec!["set".to_string()];
    header.extend((1..=dim).map(|k| format!("lambda_{k}")));
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut w = CsvWriter::new(Vec::new(), &h)?;
    for (set, v) in rows {
        let mut row = vec![set.to_string()];
        row.extend(v.iter().map(|&x| fmt_g12(x)));
        w.row_strings(row)?;
    }
    Ok(w.into_inner())
}

fn samples_json(n: usize, seed: u64, draws: &[SampledVertex]) -> Value {
    let rows: Vec<Value> = draws
        .iter()
        .enumerate()
        .map(|(i, v)| {
            json!({
                "index": i,
                "pauli_coords": v.coords.iter().map(format_rational).collect::<Vec<_>>(),
                "spectrum": v.spectrum.sorted_desc(),
                "hs_norm_sqr": format_rational(&v.hs_norm_sqr),
                "cnc_type": crate::classifier::cnc_type_of(n, &v.spectrum),
            })
        })
        .collect();
    json!({ "n": n, "seed": seed, "count": draws.len(), "draws": rows })
}

fn samples_csv(n: usize, draws: &[SampledVertex]) -> Result<Vec<u8>> {
    let dim = 1usize << n;
    let mut header = vec!["index".to_string(), "hs_norm_sqr".into(), "cnc_type".into()];
    header.extend((1..=dim).map(|k| format!("lambda_{k}")));
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut w = CsvWriter::new(Vec::new(), &h)?;
    for (i, v) in draws.iter().enumerate() {
        let cnc = crate::classifier::cnc_type_of(n, &v.spectrum).map_or(String::new(), |m| m.to_string());
        let mut row = vec![i.to_string(), format_rational(&v.hs_norm_sqr), cnc];
        row.extend(v.spectrum.sorted_desc().iter().map(|&x| fmt_g12(x)));
        w.row_strings(row)?;
    }
    Ok(w.into_inner())
}
