//! Evidence for the two qubit conjectures: every Lambda vertex spectrum is
//! majorized by a mixture of CNC spectra, and no vertex has `Tr(X^2) > 2`.
//!
//! Vertices come from exact double description (one and two qubits) or from
//! LP sampling (up to three qubits).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::sampling::{sample_lambda_vertices, Fingerprint, LambdaSampler, SampledVertex};
use super::verdict::qubit_cnc_spectrum;
use crate::error::{Error, Result};
use crate::format::{fmt_g12, CsvWriter};
use crate::lp::mixture_majorization_feasible;
use crate::polytope::{double_description, lambda_hrep_qubits, DdOptions, DdProgress};
use crate::scalar::{Rational, Scalar};
use crate::spectral::{majorizes, write_lorenz_csv, Spectrum};

/// Allowed excess of `Tr(X^2)` over 2.
pub const NORM_TOL: f64 = 1e-9;

/// Sorted spectra closer than this are the same orbit when matching against CNC spectra.
const CNC_MATCH_TOL: f64 = 1e-6;

/// Histogram bins: `[k w, (k+1) w)` for `k = 0..HIST_BINS`.
pub const HIST_BIN_WIDTH: f64 = 0.0625;
pub const HIST_BINS: usize = 40;

/// One spectral orbit of Lambda vertices with an exact representative.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaOrbit {
    pub label: String,
    /// Number of vertices (or draws) with this fingerprint.
    pub count: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub representative: Vec<Rational>,
    pub spectrum: Spectrum,
    #[serde(serialize_with = "ser_rational")]
    pub hs_norm_sqr: Rational,
    pub fingerprint: Fingerprint,
    pub cnc_type: Option<usize>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::scalar::format_rational(r))
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&crate::scalar::format_rational(r))?;
    }
    seq.end()
}

/// CNC type whose spectrum matches `s`, if any.
pub fn cnc_type_of(n: usize, s: &Spectrum) -> Option<usize> {
    (1..=n).find(|&m| {
        let c = qubit_cnc_spectrum(n, m).unwrap();
        c.sorted_desc().iter().zip(s.sorted_desc()).all(|(a, b)| (a - b).abs() < CNC_MATCH_TOL)
    })
}

/// Groups vertices by fingerprint; orbits are ordered by decreasing norm, then fingerprint.
fn group(n: usize, verts: Vec<SampledVertex>, prefix: &str) -> Vec<LambdaOrbit> {
    let mut by: BTreeMap<Fingerprint, (usize, SampledVertex)> = BTreeMap::new();
    for v in verts {
        by.entry(v.fingerprint.clone()).and_modify(|e| e.0 += 1).or_insert((1, v));
    }
    let mut orbits: Vec<LambdaOrbit> = by
        .into_values()
        .map(|(count, v)| LambdaOrbit {
            label: String::new(),
            count,
            cnc_type: cnc_type_of(n, &v.spectrum),
            representative: v.coords,
            spectrum: v.spectrum,
            hs_norm_sqr: v.hs_norm_sqr,
            fingerprint: v.fingerprint,
        })
        .collect();
    orbits.sort_by(|a, b| {
        b.fingerprint.hs_norm_sqr.cmp(&a.fingerprint.hs_norm_sqr).then(a.fingerprint.cmp(&b.fingerprint))
    });
    let mut k = 0;
    for o in orbits.iter_mut() {
        o.label = match o.cnc_type {
            Some(m) => format!("cnc(m={m})"),
            None => {
                k += 1;
                format!("{prefix}-{k}")
            }
        };
    }
    orbits
}

/// Every vertex of the `n`-qubit Lambda polytope (`n <= 2`) by exact double
/// description, grouped into spectral orbits.
pub fn lambda_orbits_exhaustive(
    n: usize,
    progress: Option<&(dyn Fn(DdProgress) + Sync)>,
) -> Result<Vec<LambdaOrbit>> {
    if n == 0 || n > 2 {
        return Err(Error::InvalidArgument(format!(
            "exhaustive Lambda enumeration is available for 1 or 2 qubits, got {n}"
        )));
    }
    let opts = DdOptions { progress, ..Default::default() };
    let poly = double_description(&lambda_hrep_qubits(n)?, &opts)?;
    let sampler = LambdaSampler::new(n)?;
    let verts = poly
        .vertices()
        .iter()
        .map(|v| sampler.vertex_from_coords(v.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(group(n, verts, "orbit"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HarnessMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCheck {
    #[serde(flatten)]
    pub orbit: LambdaOrbit,
    /// Majorized by a mixture of the CNC spectra `m = 1..n`.
    pub mixture_majorized: bool,
    /// Majorized by the `m = 1` CNC spectrum alone.
    pub m1_majorized: bool,
    /// `Tr(X^2) <= 2 + NORM_TOL`.
    pub norm_bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub mode: HarnessMode,
    /// Vertices checked, counted with multiplicity.
    pub vertices: usize,
    pub distinct_orbits: usize,
    pub cnc_orbits: usize,
    /// Vertices not majorized by any mixture of CNC spectra.
    pub mixture_failures: usize,
    /// Non-CNC vertices not majorized by the `m = 1` spectrum.
    pub m1_failures: usize,
    /// Vertices with `Tr(X^2) > 2`.
    pub norm_failures: usize,
    pub max_hs_norm_sqr: f64,
    /// Labels of orbits failing any check.
    pub counterexamples: Vec<String>,
    pub orbits: Vec<OrbitCheck>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.mixture_failures == 0 && self.m1_failures == 0 && self.norm_failures == 0
    }
}

/// Runs the three checks on every orbit found by `mode`.
pub fn conjecture_harness(
    n: usize,
    mode: HarnessMode,
    progress: Option<&(dyn Fn(DdProgress) + Sync)>,
) -> Result<ConjectureReport> {
    let orbits = match mode {
        HarnessMode::Exhaustive => lambda_orbits_exhaustive(n, progress)?,
        HarnessMode::Sampled { samples, seed } => group(n, sample_lambda_vertices(n, samples, seed)?, "sample"),
    };
    let cnc: Vec<Spectrum> = (1..=n).map(|m| qubit_cnc_spectrum(n, m)).collect::<Result<_>>()?;
    let mut checks = Vec::with_capacity(orbits.len());
    for o in orbits {
        let mixture_majorized = mixture_majorization_feasible(&o.spectrum, &cnc)?;
        let m1_majorized = majorizes(&cnc[0], &o.spectrum)?;
        let norm_bounded = o.hs_norm_sqr.to_f64() <= 2.0 + NORM_TOL;
        checks.push(OrbitCheck { orbit: o, mixture_majorized, m1_majorized, norm_bounded });
    }
    let count = |f: &dyn Fn(&OrbitCheck) -> bool| checks.iter().filter(|c| f(c)).map(|c| c.orbit.count).sum();
    let mixture_failures = count(&|c| !c.mixture_majorized);
    let m1_failures = count(&|c| c.orbit.cnc_type.is_none() && !c.m1_majorized);
    let norm_failures = count(&|c| !c.norm_bounded);
    let counterexamples = checks
        .iter()
        .filter(|c| !c.mixture_majorized || !c.norm_bounded || (c.orbit.cnc_type.is_none() && !c.m1_majorized))
        .map(|c| c.orbit.label.clone())
        .collect();
    Ok(ConjectureReport {
        n,
        mode,
        vertices: count(&|_| true),
        distinct_orbits: checks.len(),
        cnc_orbits: checks.iter().filter(|c| c.orbit.cnc_type.is_some()).count(),
        mixture_failures,
        m1_failures,
        norm_failures,
        max_hs_norm_sqr: checks.iter().map(|c| c.orbit.hs_norm_sqr.to_f64()).fold(f64::NEG_INFINITY, f64::max),
        counterexamples,
        orbits: checks,
    })
}

/// `bin_lo,bin_hi,count` over `Tr(X^2)`, counting multiplicities.
pub fn write_hsnorm_histogram<W: Write>(out: W, report: &ConjectureReport) -> Result<W> {
    let mut counts = vec![0usize; HIST_BINS];
    for c in &report.orbits {
        let k = (c.orbit.hs_norm_sqr.to_f64() / HIST_BIN_WIDTH).floor() as usize;
        counts[k.min(HIST_BINS - 1)] += c.orbit.count;
    }
    let mut w = CsvWriter::new(out, &["bin_lo", "bin_hi", "count"])?;
    for (k, c) in counts.iter().enumerate() {
        w.row_strings([
            fmt_g12(k as f64 * HIST_BIN_WIDTH),
            fmt_g12((k + 1) as f64 * HIST_BIN_WIDTH),
            c.to_string(),
        ])?;
    }
    Ok(w.into_inner())
}

/// Writes `lorenz.csv`, `hsnorm_hist.csv` and `summary.json` into `dir`.
pub fn write_harness_outputs(report: &ConjectureReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut curves: Vec<(String, Spectrum)> = (1..=report.n)
        .map(|m| Ok((format!("cnc(m={m})"), qubit_cnc_spectrum(report.n, m)?)))
        .collect::<Result<_>>()?;
    curves.extend(
        report.orbits.iter().filter(|c| c.orbit.cnc_type.is_none()).map(|c| (c.orbit.label.clone(), c.orbit.spectrum.clone())),
    );
    write_lorenz_csv(std::fs::File::create(dir.join("lorenz.csv"))?, &curves)?;
    write_hsnorm_histogram(std::fs::File::create(dir.join("hsnorm_hist.csv"))?, report)?;
    let mut f = std::fs::File::create(dir.join("summary.json"))?;
    serde_json::to_writer_pretty(&mut f, report)?;
    writeln!(f)?;
    Ok(())
}
