use num_complex::Complex64;

use crate::linalg::CMatrix;
use crate::phase_space::{hilbert_dim, monomial_phase, SymplecticVector};

/// `zeta^k` with `zeta = e^{i pi/d}`.
pub(crate) fn zeta_pow(d: u32, k: u32) -> Complex64 {
    let k = k % (2 * d);
    // exact values for quarter turns keep qubit matrices free of 1e-17 noise
    if (2 * k).is_multiple_of(d) {
        return match 2 * k / d {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / d as f64)
}

/// `omega^k` with `omega = e^{2 pi i/d}`.
pub(crate) fn omega_pow(d: u32, k: u32) -> Complex64 {
    zeta_pow(d, 2 * (k % d))
}

/// Digits of a computational-basis index; qudit 1 is the most significant.
pub(crate) fn basis_digits(d: u32, n: usize, mut index: usize) -> Vec<u32> {
    let mut j = vec![0u32; n];
    for k in (0..n).rev() {
        j[k] = (index % d as usize) as u32;
        index /= d as usize;
    }
    j
}

pub(crate) fn basis_index(d: u32, j: &[u32]) -> usize {
    j.iter().fold(0usize, |acc, &c| acc * d as usize + c as usize)
}

/// The generalized Pauli operator `T_u = tau^{-u_z.u_x} Z^{u_z} X^{u_x}`.
pub fn pauli_word(u: &SymplecticVector) -> CMatrix {
    let (d, n) = (u.d(), u.n());
    let dim = hilbert_dim(d, n);
    let mut m = CMatrix::zeros(dim);
    for col in 0..dim {
        let j = basis_digits(d, n, col);
        let target: Vec<u32> = j.iter().zip(u.x()).map(|(a, b)| (a + b) % d).collect();
        m[(basis_index(d, &target), col)] = zeta_pow(d, monomial_phase(u, &j));
    }
    m
}

/// Sparse form of `T_u`: for each column `j`, the row hit and the `zeta` exponent.
pub(crate) fn pauli_monomial(u: &SymplecticVector) -> Vec<(usize, u32)> {
    let (d, n) = (u.d(), u.n());
    (0..hilbert_dim(d, n))
        .map(|col| {
            let j = basis_digits(d, n, col);
            let target: Vec<u32> = j.iter().zip(u.x()).map(|(a, b)| (a + b) % d).collect();
            (basis_index(d, &target), monomial_phase(u, &j))
        })
        .collect()
}

/// `sum_u c_u T_u` accumulated without building each Pauli matrix.
pub(crate) fn pauli_sum<'a>(
    d: u32,
    n: usize,
    terms: impl IntoIterator<Item = (&'a SymplecticVector, Complex64)>,
) -> CMatrix {
    let mut m = CMatrix::zeros(hilbert_dim(d, n));
    for (u, c) in terms {
        for (col, (row, ph)) in pauli_monomial(u).into_iter().enumerate() {
            m[(row, col)] += c * zeta_pow(d, ph);
        }
    }
    m
}
