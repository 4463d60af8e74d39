use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::phase_space::hilbert_dim;

/// What a constructed operator is.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OperatorLabel {
    Stabilizer,
    Cnc { m: usize },
    CncNonlinear,
    PhasePoint,
    LambdaVertex,
    Generic,
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorLabel::Stabilizer => write!(f, "stabilizer"),
            OperatorLabel::Cnc { m } => write!(f, "cnc(m={m})"),
            OperatorLabel::CncNonlinear => write!(f, "cnc-nonlinear"),
            OperatorLabel::PhasePoint => write!(f, "phase-point"),
            OperatorLabel::LambdaVertex => write!(f, "lambda-vertex"),
            OperatorLabel::Generic => write!(f, "generic"),
        }
    }
}

impl std::str::FromStr for OperatorLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "stabilizer" => OperatorLabel::Stabilizer,
            "cnc-nonlinear" => OperatorLabel::CncNonlinear,
            "phase-point" => OperatorLabel::PhasePoint,
            "lambda-vertex" => OperatorLabel::LambdaVertex,
            "generic" => OperatorLabel::Generic,
            other => {
                let m = other
                    .strip_prefix("cnc(m=")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(|| Error::Input(format!("unknown operator label {other:?}")))?;
                OperatorLabel::Cnc { m }
            }
        })
    }
}

/// Dense Hermitian operator on `n` qudits of dimension `d`.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    d: u32,
    n: usize,
    label: OperatorLabel,
    matrix: CMatrix,
}

pub const HERMITIAN_TOL: f64 = 1e-12;

impl HermitianOperator {
    /// Wraps `matrix`, checking its size and Hermiticity.
    pub fn new(d: u32, n: usize, label: OperatorLabel, matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(d, n, label, matrix, HERMITIAN_TOL)
    }

    pub fn with_tolerance(
        d: u32,
        n: usize,
        label: OperatorLabel,
        matrix: CMatrix,
        tol: f64,
    ) -> Result<Self> {
        let dim = hilbert_dim(d, n);
        if matrix.dim() != dim {
            return Err(Error::Dimension(format!(
                "expected a {dim}x{dim} matrix for d={d}, n={n}, got {}",
                matrix.dim()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::ContractViolation(format!(
                "operator is not Hermitian (defect {defect:.3e})"
            )));
        }
        Ok(HermitianOperator { d, n, label, matrix })
    }

    pub fn maximally_mixed(d: u32, n: usize) -> Self {
        let dim = hilbert_dim(d, n);
        let matrix = CMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        HermitianOperator { d, n, label: OperatorLabel::Generic, matrix }
    }

    pub fn from_pure_state(d: u32, n: usize, psi: &[Complex64]) -> Result<Self> {
        Self::new(d, n, OperatorLabel::Generic, CMatrix::outer(psi))
    }

    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
    pub fn label(&self) -> &OperatorLabel {
        &self.label
    }
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
    pub fn with_label(mut self, label: OperatorLabel) -> Self {
        self.label = label;
        self
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr(self * other)`, real for Hermitian pairs.
    pub fn inner(&self, other: &HermitianOperator) -> f64 {
        self.matrix.trace_product(&other.matrix).re
    }

    /// Squared Hilbert-Schmidt norm `Tr(X^2)`.
    pub fn hs_norm_sqr(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        Self::with_tolerance(
            self.d,
            self.n,
            self.label.clone(),
            self.matrix.conjugate_by(u),
            1e-10,
        )
    }

    pub fn to_json(&self) -> OperatorJson {
        let dim = self.dim();
        let mut re = vec![vec![0.0; dim]; dim];
        let mut im = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                re[i][j] = self.matrix[(i, j)].re;
                im[i][j] = self.matrix[(i, j)].im;
            }
        }
        OperatorJson { d: self.d, n: self.n, label: self.label.to_string(), re, im }
    }

    pub fn from_json(j: &OperatorJson) -> Result<Self> {
        let dim = hilbert_dim(j.d, j.n);
        if j.re.len() != dim || j.im.len() != dim {
            return Err(Error::Input(format!("operator JSON must have {dim} rows")));
        }
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            if j.re[i].len() != dim || j.im[i].len() != dim {
                return Err(Error::Input(format!("row {i} must have {dim} entries")));
            }
            for k in 0..dim {
                m[(i, k)] = Complex64::new(j.re[i][k], j.im[i][k]);
            }
        }
        Self::with_tolerance(j.d, j.n, j.label.parse()?, m, 1e-9)
    }
}

/// Wire format for [`HermitianOperator`]: full row-major real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OperatorJson {
    pub d: u32,
    pub n: usize,
    pub label: String,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}
