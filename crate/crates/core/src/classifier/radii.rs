//! Hilbert-Schmidt radii about the maximally mixed state and the purity
//! thresholds they translate into.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_space::{check_prime, hilbert_dim};
use crate::polytope::{double_description, hrep_from_vrep, lambda_hrep_qubits, DdOptions};
use crate::scalar::{Rational, Scalar};

/// Relative tolerance for the equalities in the ordering chain.
const CHAIN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PurityThresholds {
    /// Purity at or below which every state is a stabilizer mixture (`1/D + r_STAB^2`).
    pub stab_ball: f64,
    /// Purity above which no state is AWP (`1/D + R_AWP^2 = 1/(D-1)`), odd `d` only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub awp_upper: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiiReport {
    pub d: u32,
    pub n: usize,
    pub dim: usize,
    /// Inradius of the zero-trace stabilizer polytope.
    pub r_stab: f64,
    /// Qubit values rest on the CNC vertices having the largest norm in Lambda.
    pub r_stab_conditional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_wp: Option<f64>,
    /// Circumradius of the zero-trace AWP set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_awp_out: Option<f64>,
    /// Gurvits-Barnum separable ball `2 / (sqrt(2) d)^n`.
    pub r_gb: f64,
    /// Largest ball of positive operators, `1/sqrt(D(D-1))`.
    pub r_psd: f64,
    pub purity: PurityThresholds,
    pub chain: Vec<ChainLink>,
}

impl RadiiReport {
    pub fn chain_holds(&self) -> bool {
        self.chain.iter().all(|l| l.holds)
    }
}

fn less(name: &str, a: f64, b: f64) -> ChainLink {
    ChainLink { relation: name.into(), lhs: a, rhs: b, holds: a < b * (1.0 - CHAIN_TOL) }
}

fn equal(name: &str, a: f64, b: f64) -> ChainLink {
    ChainLink { relation: name.into(), lhs: a, rhs: b, holds: (a - b).abs() <= CHAIN_TOL * b.abs() }
}

/// Named radii for `n` qudits of prime dimension `d`.
///
/// The stabilizer inradius is `1/(D * R)` where `R^2 = max Tr(A^2) - 1/D`
/// over Lambda vertices: `2` for qubits (largest CNC norm), `D` for odd `d`
/// (phase point operators).
pub fn radii_report(d: u32, n: usize) -> Result<RadiiReport> {
    check_prime(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let dim = hilbert_dim(d, n);
    let df = dim as f64;
    let max_vertex_norm = if d == 2 { 2.0 } else { df };
    let r_stab = 1.0 / (df * (max_vertex_norm - 1.0 / df).sqrt());
    let r_gb = 2.0 / (2f64.sqrt() * d as f64).powi(n as i32);
    let r_psd = 1.0 / (df * (df - 1.0)).sqrt();
    let (r_wp, r_awp_out) = if d == 2 {
        (None, None)
    } else {
        // WP_0 is polar to -D times the phase point simplex; Tr(A_u^2) = D
        let r_wp = 1.0 / (df * (df - 1.0 / df).sqrt());
        // farthest AWP spectrum: (1/(D-1), ..., 1/(D-1), 0)
        let top = 1.0 / (df - 1.0);
        let u = 1.0 / df;
        let out = ((df - 1.0) * (top - u).powi(2) + u * u).sqrt();
        (Some(r_wp), Some(out))
    };
    let mut chain = Vec::new();
    if let (Some(wp), Some(out)) = (r_wp, r_awp_out) {
        chain.push(equal("r_STAB = r_WP", r_stab, wp));
        chain.push(less("r_WP < r_GB", wp, r_gb));
        chain.push(less("r_GB < r_PSD", r_gb, r_psd));
        chain.push(equal("r_PSD = R_AWP", r_psd, out));
    } else {
        chain.push(less("r_STAB < r_GB", r_stab, r_gb));
        chain.push(less("r_GB < r_PSD", r_gb, r_psd));
    }
    Ok(RadiiReport {
        d,
        n,
        dim,
        r_stab,
        r_stab_conditional: d == 2 && n >= 3,
        r_wp,
        r_awp_out,
        r_gb,
        r_psd,
        purity: PurityThresholds {
            stab_ball: 1.0 / df + r_stab * r_stab,
            awp_upper: r_awp_out.map(|r| 1.0 / df + r * r),
        },
        chain,
    })
}

/// `(r(STAB_0) * R(-2 Lambda_0))^2` for one qubit, computed exactly from the
/// two polytopes: facets of the stabilizer octahedron by double description
/// of its vertex set, and vertices of Lambda by double description of its
/// facets. Distances use the Hilbert-Schmidt metric `|X_0|^2 = |x|^2 / 2`
/// in Pauli coordinates.
pub fn single_qubit_polar_radius_product_sqr() -> Result<Rational> {
    let half = Rational::from_ratio(1, 2);
    let stab: Vec<Vec<Rational>> = (0..3)
        .flat_map(|axis| {
            [1i64, -1].map(|s| {
                let mut v = vec![Rational::from_i64(0); 3];
                v[axis] = Rational::from_i64(s);
                v
            })
        })
        .collect();
    let octa = hrep_from_vrep(&stab, &DdOptions::default())?;
    let r_sqr = octa
        .ineq
        .iter()
        .map(|h| {
            let a2: Rational = h.a.iter().map(|x| x * x).sum();
            &h.b * &h.b / a2 * &half
        })
        .min()
        .ok_or_else(|| Error::Internal("octahedron has no facets".into()))?;
    let cube = double_description(&lambda_hrep_qubits(1)?, &DdOptions::default())?;
    let big_r_sqr = cube
        .vertices()
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<Rational>() * &half)
        .max()
        .ok_or_else(|| Error::Internal("Lambda has no vertices".into()))?;
    // R(-D Lambda_0) = D R(Lambda_0), D = 2
    Ok(r_sqr * big_r_sqr * Rational::from_i64(4))
}
