use num_complex::Complex64;

use super::hermitian::{HermitianOperator, OperatorLabel};
use super::pauli::pauli_word;
use super::pauli::{basis_digits, basis_index};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::phase_space::{check_prime, hilbert_dim, SymplecticVector};

fn require_odd(d: u32) -> Result<()> {
    check_prime(d)?;
    if d == 2 {
        return Err(Error::Unsupported(
            "phase-space point operators are defined for odd d only".into(),
        ));
    }
    Ok(())
}

/// The parity operator `A_0 = sum_j |-j><j|`.
pub fn parity_operator(d: u32, n: usize) -> Result<HermitianOperator> {
    require_odd(d)?;
    let dim = hilbert_dim(d, n);
    let mut m = CMatrix::zeros(dim);
    for col in 0..dim {
        let j = basis_digits(d, n, col);
        let neg: Vec<u32> = j.iter().map(|&c| (d - c) % d).collect();
        m[(basis_index(d, &neg), col)] = Complex64::new(1.0, 0.0);
    }
    HermitianOperator::new(d, n, OperatorLabel::PhasePoint, m)
}

/// `A_u = T_u A_0 T_u^dagger`.
pub fn phase_point_operator(u: &SymplecticVector) -> Result<HermitianOperator> {
    parity_operator(u.d(), u.n())?.conjugate_by(&pauli_word(u))
}

/// All `d^{2n}` phase point operators, indexed by `u.index()`.
pub fn phase_point_operators(d: u32, n: usize) -> Result<Vec<HermitianOperator>> {
    require_odd(d)?;
    if hilbert_dim(d, n) > 64 {
        return Err(Error::Resource(format!("d^n = {} exceeds 64", hilbert_dim(d, n))));
    }
    SymplecticVector::all(d, n).map(|u| phase_point_operator(&u)).collect()
}

/// Discrete Wigner function `W(u) = Tr(rho A_u) / d^n`.
#[derive(Clone, Debug)]
pub struct WignerFunction {
    d: u32,
    n: usize,
    values: Vec<f64>,
}

impl WignerFunction {
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn get(&self, u: &SymplecticVector) -> f64 {
        self.values[u.index()]
    }
    /// Values in `u.index()` order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.min() >= -tol
    }

    /// `sum_v W(v) A_v`.
    pub fn reconstruct(&self) -> Result<CMatrix> {
        let dim = hilbert_dim(self.d, self.n);
        let mut m = CMatrix::zeros(dim);
        for (i, w) in self.values.iter().enumerate() {
            let a = phase_point_operator(&SymplecticVector::from_index(self.d, self.n, i))?;
            m.add_scaled(a.matrix(), Complex64::new(*w, 0.0));
        }
        Ok(m)
    }
}

pub fn wigner_function(rho: &HermitianOperator) -> Result<WignerFunction> {
    let (d, n) = (rho.d(), rho.n());
    require_odd(d)?;
    let a0 = parity_operator(d, n)?;
    let inv = 1.0 / hilbert_dim(d, n) as f64;
    let values = SymplecticVector::all(d, n)
        .map(|u| {
            // Tr(rho T_u A_0 T_u^dag) = Tr((T_u^dag rho T_u) A_0)
            let t = pauli_word(&u);
            let shifted = t.adjoint().matmul(rho.matrix()).matmul(&t);
            shifted.trace_product(a0.matrix()).re * inv
        })
        .collect();
    Ok(WignerFunction { d, n, values })
}
