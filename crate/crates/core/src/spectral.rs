//! Spectra, Ky Fan pairings, majorization and Lorenz curves.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{fmt_g12, CsvWriter};
use crate::linalg::eigh;
use crate::operators::HermitianOperator;

/// Default tolerance for comparisons on spectra.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// A real spectrum with cached sorted views.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum {
    values: Vec<f64>,
    desc: Vec<f64>,
}

impl From<Vec<f64>> for Spectrum {
    fn from(values: Vec<f64>) -> Self {
        Spectrum::new(values)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.values
    }
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Self {
        let mut desc = values.clone();
        desc.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, desc }
    }

    /// A density-matrix spectrum: entries `>= -1e-12` and sum within `1e-10` of 1.
    pub fn density(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("empty spectrum".into()));
        }
        if let Some(x) = values.iter().find(|x| **x < -1e-12 || !x.is_finite()) {
            return Err(Error::Input(format!("spectrum entry {x} is negative or not finite")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Input(format!("spectrum sums to {sum}, expected 1")));
        }
        Ok(Spectrum::new(values))
    }

    pub fn uniform(dim: usize) -> Self {
        Spectrum::new(vec![1.0 / dim as f64; dim])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn sorted_desc(&self) -> &[f64] {
        &self.desc
    }
    pub fn sorted_asc(&self) -> Vec<f64> {
        self.desc.iter().rev().copied().collect()
    }
    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Eigenvalues of a Hermitian operator (Hermitian to `1e-10`).
pub fn eigen_spectrum(x: &HermitianOperator) -> Result<Spectrum> {
    Ok(Spectrum::new(eigh(x.matrix(), 1e-10)?.values))
}

fn same_len(a: &Spectrum, b: &Spectrum) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "spectra have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `sum_k lambda_k^up(rho) lambda_k^down(A)`, the minimum of `Tr(U rho U^dag A)` over unitaries.
pub fn kyfan_min_pairing(rho: &Spectrum, a: &Spectrum) -> Result<f64> {
    same_len(rho, a)?;
    Ok(rho.desc.iter().rev().zip(&a.desc).map(|(x, y)| x * y).sum())
}

/// Whether `mu` majorizes `lam`, with the default tolerance.
pub fn majorizes(mu: &Spectrum, lam: &Spectrum) -> Result<bool> {
    majorizes_tol(mu, lam, SPECTRAL_TOL)
}

/// Every descending partial sum of `mu` is at least that of `lam` (minus `tol`).
pub fn majorizes_tol(mu: &Spectrum, lam: &Spectrum, tol: f64) -> Result<bool> {
    same_len(mu, lam)?;
    let (sm, sl) = (mu.trace(), lam.trace());
    if (sm - sl).abs() > tol {
        return Err(Error::ContractViolation(format!(
            "majorization needs equal sums, got {sm} and {sl}"
        )));
    }
    let (lm, ll) = (lorenz_curve(mu), lorenz_curve(lam));
    Ok(lm.iter().zip(&ll).all(|(a, b)| *a >= b - tol))
}

/// Partial sums of the `k` largest values, `k = 1..len`.
pub fn lorenz_curve(s: &Spectrum) -> Vec<f64> {
    s.desc
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// `sum lambda^2`.
pub fn purity(s: &Spectrum) -> f64 {
    s.values.iter().map(|x| x * x).sum()
}

/// Lorenz curves as CSV with columns `k,S(k),label`; `k` starts at 1.
pub fn write_lorenz_csv<W: Write>(out: W, curves: &[(String, Spectrum)]) -> Result<W> {
    let mut w = CsvWriter::new(out, &["k", "S(k)", "label"])?;
    for (label, s) in curves {
        for (k, v) in lorenz_curve(s).into_iter().enumerate() {
            w.row_strings([(k + 1).to_string(), fmt_g12(v), label.clone()])?;
        }
    }
    Ok(w.into_inner())
}
