//! Membership tests for ASTAB, AWP, WP and the stabilizer hull, and the
//! report combining them.

use serde::Serialize;

use super::radii::{radii_report, RadiiReport};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::operators::{stabilizer_projectors, stabilizer_state_count, wigner_function, HermitianOperator};
use crate::phase_space::{check_prime, hilbert_dim};
use crate::spectral::{eigen_spectrum, kyfan_min_pairing, purity, Spectrum};

/// Boundary tolerance shared by the spectral verdicts.
pub const VERDICT_TOL: f64 = 1e-10;

/// Wigner values at or above `-WP_TOL` count as nonnegative.
pub const WP_TOL: f64 = 1e-12;

/// Largest stabilizer-state count for which the hull LP is attempted.
pub const STAB_HULL_LIMIT: u128 = 5000;

/// How much a set of vertex spectra decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    /// The spectra generate every Lambda vertex constraint.
    Complete,
    /// CNC spectra only; sufficient if they are spectrally generating.
    CncConditional,
    /// Phase point spectra only; passing is necessary, not sufficient.
    NecessaryOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledSpectrum {
    pub label: String,
    pub spectrum: Spectrum,
}

/// Lambda-vertex spectra used for the ASTAB test at one `(d, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct VertexSpectra {
    pub d: u32,
    pub n: usize,
    pub coverage: Coverage,
    pub spectra: Vec<LabeledSpectrum>,
}

impl VertexSpectra {
    pub fn spectra(&self) -> Vec<Spectrum> {
        self.spectra.iter().map(|l| l.spectrum.clone()).collect()
    }
}

/// Spectrum of an `n`-qubit CNC operator of type `m`:
/// `(1 +- sqrt(2m+1)) / 2^m`, each `2^{m-1}` times, and zeros.
pub fn qubit_cnc_spectrum(n: usize, m: usize) -> Result<Spectrum> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("CNC type m = {m} needs 1 <= m <= n = {n}")));
    }
    let s = ((2 * m + 1) as f64).sqrt();
    let scale = 0.5f64.powi(m as i32);
    let half = 1usize << (m - 1);
    let mut v = vec![(1.0 + s) * scale; half];
    v.extend(std::iter::repeat_n(0.0, (1 << n) - (1 << m)));
    v.extend(std::iter::repeat_n((1.0 - s) * scale, half));
    Ok(Spectrum::new(v))
}

/// Spectrum of a phase point operator: `+1` with multiplicity `(D+1)/2`, `-1` with `(D-1)/2`.
pub fn phase_point_spectrum(d: u32, n: usize) -> Result<Spectrum> {
    check_prime(d)?;
    if d == 2 {
        return Err(Error::Unsupported("phase point operators need odd d".into()));
    }
    let dim = hilbert_dim(d, n);
    let mut v = vec![1.0; dim.div_ceil(2)];
    v.extend(std::iter::repeat_n(-1.0, dim / 2));
    Ok(Spectrum::new(v))
}

/// Largest qubit count for which vertex-spectrum constraints are emitted.
pub const MAX_QUBITS: usize = 10;

/// The vertex spectra available at `(d, n)` and how far they decide ASTAB.
///
/// Qubits use the CNC spectra `m = 1..n`; these are all of Lambda's
/// constraints up to majorization for one and two qubits and conditional
/// beyond. A single qutrit has two vertex orbits. Other odd cases only get
/// the phase point constraint.
pub fn vertex_spectra(d: u32, n: usize) -> Result<VertexSpectra> {
    check_prime(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (coverage, spectra) = if d == 2 {
        if n > MAX_QUBITS {
            return Err(Error::Resource(format!("at most {MAX_QUBITS} qubits, got {n}")));
        }
        let spectra = (1..=n)
            .map(|m| Ok(LabeledSpectrum { label: format!("cnc(m={m})"), spectrum: qubit_cnc_spectrum(n, m)? }))
            .collect::<Result<Vec<_>>>()?;
        (if n <= 2 { Coverage::Complete } else { Coverage::CncConditional }, spectra)
    } else {
        if hilbert_dim(d, n) > 4096 {
            return Err(Error::Resource(format!("d^n = {} exceeds 4096", hilbert_dim(d, n))));
        }
        let mut spectra =
            vec![LabeledSpectrum { label: "phase-point".into(), spectrum: phase_point_spectrum(d, n)? }];
        if (d, n) == (3, 1) {
            let s5 = 5f64.sqrt();
            spectra.push(LabeledSpectrum {
                label: "cnc-nonlinear".into(),
                spectrum: Spectrum::new(vec![(1.0 + s5) / 2.0, 0.0, (1.0 - s5) / 2.0]),
            });
            (Coverage::Complete, spectra)
        } else {
            (Coverage::NecessaryOnly, spectra)
        }
    };
    Ok(VertexSpectra { d, n, coverage, spectra })
}

fn check_density(s: &Spectrum) -> Result<()> {
    Spectrum::density(s.values().to_vec()).map(|_| ())
}

/// True iff the Ky Fan pairing of `s` with every supplied vertex spectrum is `>= -1e-10`.
pub fn astab_test(s: &Spectrum, vertex_spectra: &[Spectrum]) -> Result<bool> {
    if vertex_spectra.is_empty() {
        return Err(Error::InvalidArgument("no vertex spectra supplied".into()));
    }
    check_density(s)?;
    for a in vertex_spectra {
        if kyfan_min_pairing(s, a)? < -VERDICT_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sum of the `(D-1)/2` largest entries.
pub fn awp_top_sum(s: &Spectrum) -> f64 {
    s.sorted_desc()[..(s.len() - 1) / 2].iter().sum()
}

/// True iff the `(D-1)/2` largest eigenvalues sum to at most `1/2 + 1e-10`.
/// `D` must be odd (a power of an odd prime).
pub fn awp_test(s: &Spectrum) -> Result<bool> {
    if s.len().is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "absolute Wigner positivity needs odd d, spectrum has even length {}",
            s.len()
        )));
    }
    check_density(s)?;
    Ok(awp_top_sum(s) <= 0.5 + VERDICT_TOL)
}

/// True iff the discrete Wigner function of `rho` is nonnegative to `1e-12`.
pub fn wp_test(rho: &HermitianOperator) -> Result<bool> {
    Ok(wigner_function(rho)?.is_nonnegative(WP_TOL))
}

/// Whether `rho` is a convex combination of pure stabilizer projectors,
/// by LP over entrywise real coordinates. `None` past [`STAB_HULL_LIMIT`].
pub fn in_stab_hull(rho: &HermitianOperator) -> Result<Option<bool>> {
    let (d, n) = (rho.d(), rho.n());
    if stabilizer_state_count(d, n) > STAB_HULL_LIMIT {
        return Ok(None);
    }
    let projectors = stabilizer_projectors(d, n)?;
    let dim = rho.dim();
    let coords = |m: &crate::linalg::CMatrix| {
        let mut v = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            v.push(m[(i, i)].re);
            for j in i + 1..dim {
                v.push(m[(i, j)].re);
                v.push(m[(i, j)].im);
            }
        }
        v
    };
    let cols: Vec<Vec<f64>> = projectors.iter().map(coords).collect();
    let target = coords(rho.matrix());
    let mut lp = LinearProgram::new(Sense::Minimize, vec![0.0; cols.len()]);
    lp.add(vec![1.0; cols.len()], Relation::Eq, 1.0);
    // the diagonal sum is implied by the normalization row; drop the last diagonal entry
    let last_diag = target.len() - 1;
    for k in 0..target.len() {
        if k == last_diag {
            continue;
        }
        lp.add(cols.iter().map(|c| c[k]).collect(), Relation::Eq, target[k]);
    }
    Ok(Some(matches!(lp.solve()?, LpOutcome::Optimal(_))))
}

/// Tri-state verdict as reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    True,
    False,
    /// True provided the CNC vertices are spectrally generating.
    Conditional,
    /// Passes the available necessary conditions; membership is undecided.
    NecessaryOnly,
    /// Not determined by the given input.
    Unknown,
    /// The property is not defined here (Wigner functions for qubits).
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub in_stab_hull: Verdict,
    pub astab: Verdict,
    pub wp: Verdict,
    pub awp: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub constraint: String,
    /// Ky Fan pairing, or `1/2 - top sum` for the AWP constraint.
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PurityPosition {
    pub purity: f64,
    /// Hilbert-Schmidt distance from the maximally mixed state.
    pub hs_distance: f64,
    pub r_stab: f64,
    pub r_gb: f64,
    pub r_psd: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_awp_out: Option<f64>,
    pub within_r_stab: bool,
    pub within_r_gb: bool,
    pub within_r_psd: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_r_awp_out: Option<bool>,
}

impl PurityPosition {
    fn new(s: &Spectrum, radii: &RadiiReport) -> Self {
        let p = purity(s);
        let dist = (p - 1.0 / s.len() as f64).max(0.0).sqrt();
        let within = |r: f64| dist <= r + VERDICT_TOL;
        PurityPosition {
            purity: p,
            hs_distance: dist,
            r_stab: radii.r_stab,
            r_gb: radii.r_gb,
            r_psd: radii.r_psd,
            r_awp_out: radii.r_awp_out,
            within_r_stab: within(radii.r_stab),
            within_r_gb: within(radii.r_gb),
            within_r_psd: within(radii.r_psd),
            within_r_awp_out: radii.r_awp_out.map(within),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub d: u32,
    pub n: usize,
    /// Sorted descending.
    pub spectrum: Vec<f64>,
    pub verdicts: Verdicts,
    /// The ASTAB verdict depends on the CNC vertices being spectrally generating.
    pub conditional: bool,
    /// Only necessary ASTAB constraints were available.
    pub necessary_only: bool,
    pub coverage: Coverage,
    pub violated_constraints: Vec<Violation>,
    pub purity_position: PurityPosition,
    pub tolerance: f64,
}

fn astab_verdict(s: &Spectrum, vs: &VertexSpectra) -> Result<(Verdict, Vec<Violation>)> {
    check_density(s)?;
    let mut violations = Vec::new();
    for l in &vs.spectra {
        let v = kyfan_min_pairing(s, &l.spectrum)?;
        if v < -VERDICT_TOL {
            violations.push(Violation { constraint: l.label.clone(), value: v });
        }
    }
    let verdict = match (violations.is_empty(), vs.coverage) {
        (false, _) => Verdict::False,
        (true, Coverage::Complete) => Verdict::True,
        (true, Coverage::CncConditional) => Verdict::Conditional,
        (true, Coverage::NecessaryOnly) => Verdict::NecessaryOnly,
    };
    Ok((verdict, violations))
}

/// Report for a state given only by its spectrum. Properties of `rho` that
/// are not spectral (hull and WP membership) are filled in only where the
/// spectral verdict already implies them.
pub fn classify_spectrum(d: u32, n: usize, s: &Spectrum) -> Result<ClassificationReport> {
    let dim = hilbert_dim(d, n);
    check_prime(d)?;
    if s.len() != dim {
        return Err(Error::Dimension(format!("spectrum has {} entries, expected d^n = {dim}", s.len())));
    }
    let vs = vertex_spectra(d, n)?;
    let (astab, mut violated) = astab_verdict(s, &vs)?;
    let awp = if d == 2 {
        Verdict::NotApplicable
    } else {
        let top = awp_top_sum(s);
        if top > 0.5 + VERDICT_TOL {
            violated.push(Violation { constraint: "awp-top-sum".into(), value: 0.5 - top });
        }
        Verdict::from_bool(awp_test(s)?)
    };
    let in_stab_hull = match astab {
        Verdict::True => Verdict::True,
        Verdict::Conditional => Verdict::Conditional,
        _ => Verdict::Unknown,
    };
    let wp = match awp {
        Verdict::NotApplicable => Verdict::NotApplicable,
        Verdict::True => Verdict::True,
        _ => Verdict::Unknown,
    };
    let radii = radii_report(d, n)?;
    Ok(ClassificationReport {
        d,
        n,
        spectrum: s.sorted_desc().to_vec(),
        verdicts: Verdicts { in_stab_hull, astab, wp, awp },
        conditional: vs.coverage == Coverage::CncConditional,
        necessary_only: vs.coverage == Coverage::NecessaryOnly,
        coverage: vs.coverage,
        violated_constraints: violated,
        purity_position: PurityPosition::new(s, &radii),
        tolerance: VERDICT_TOL,
    })
}

/// Report for an explicit density matrix: adds the hull LP and the Wigner test.
pub fn classify_operator(rho: &HermitianOperator) -> Result<ClassificationReport> {
    let s = eigen_spectrum(rho)?;
    let values: Vec<f64> = s.values().iter().map(|&x| if x < 0.0 && x > -1e-12 { 0.0 } else { x }).collect();
    let s = Spectrum::density(values)?;
    let mut report = classify_spectrum(rho.d(), rho.n(), &s)?;
    report.verdicts.in_stab_hull = match in_stab_hull(rho)? {
        Some(b) => Verdict::from_bool(b),
        None => report.verdicts.in_stab_hull,
    };
    if rho.d() != 2 {
        report.verdicts.wp = Verdict::from_bool(wp_test(rho)?);
    }
    Ok(report)
}
