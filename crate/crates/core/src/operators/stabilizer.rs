use std::collections::HashMap;

use num_complex::Complex64;

use super::hermitian::{HermitianOperator, OperatorLabel};
use super::pauli::{omega_pow, pauli_sum};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::phase_space::{
    beta_unchecked, check_prime, enumerate_isotropic, hilbert_dim, IsotropicSubspace,
    SymplecticVector,
};

/// A function `r: S -> Z_d` on a set of phase-space points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValueAssignment {
    values: HashMap<SymplecticVector, u32>,
}

impl ValueAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (SymplecticVector, u32)>) -> Self {
        let values = pairs.into_iter().map(|(u, r)| {
            let d = u.d();
            (u, r % d)
        });
        ValueAssignment { values: values.collect() }
    }

    /// Extends values on the basis of `sub` to all of `sub` using
    /// `r(u + v) = r(u) + r(v) + beta(u, v)`, which is the only consistent choice.
    pub fn extend_from_basis(sub: &IsotropicSubspace, basis_values: &[u32]) -> Result<Self> {
        if basis_values.len() != sub.dim() {
            return Err(Error::Dimension(format!(
                "{} basis values for a {}-dimensional subspace",
                basis_values.len(),
                sub.dim()
            )));
        }
        let d = sub.d();
        let elems = sub.elements_with_coeffs();
        let mut by_index: Vec<u32> = vec![0; elems.len()];
        let mut values = HashMap::with_capacity(elems.len());
        for (idx, (coeffs, v)) in elems.iter().enumerate() {
            if let Some(i) = coeffs.iter().position(|&c| c != 0) {
                let prev_idx = idx - (d as usize).pow(i as u32);
                let prev = &elems[prev_idx].1;
                let b = &sub.basis()[i];
                by_index[idx] = (by_index[prev_idx] + basis_values[i] + beta_unchecked(prev, b)) % d;
            }
            values.insert(v.clone(), by_index[idx]);
        }
        Ok(ValueAssignment { values })
    }

    pub fn get(&self, u: &SymplecticVector) -> Option<u32> {
        self.values.get(u).copied()
    }

    pub fn insert(&mut self, u: SymplecticVector, r: u32) {
        let d = u.d();
        self.values.insert(u, r % d);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SymplecticVector, u32)> {
        self.values.iter().map(|(k, v)| (k, *v))
    }

    /// Checks `r(u) + r(v) = r(u + v) - beta(u, v)` on every commuting pair of
    /// the domain whose sum is also in the domain, and `r(0) = 0` when present.
    pub fn check_noncontextual(&self) -> Result<()> {
        let mut keys: Vec<&SymplecticVector> = self.values.keys().collect();
        keys.sort();
        for u in &keys {
            if u.is_zero() && self.values[*u] != 0 {
                return Err(Error::ContractViolation(format!("r(0) = {} != 0", self.values[*u])));
            }
        }
        for (i, u) in keys.iter().enumerate() {
            for v in &keys[i..] {
                if !u.commutes_with(v) {
                    continue;
                }
                let w = u.add(v);
                let Some(rw) = self.values.get(&w) else { continue };
                let d = u.d();
                let lhs = (self.values[*u] + self.values[*v] + beta_unchecked(u, v)) % d;
                if lhs != *rw {
                    return Err(Error::ContractViolation(format!(
                        "inconsistent values on u={u:?}, v={v:?}, u+v={w:?}: \
                         r(u)={}, r(v)={}, beta={}, r(u+v)={rw}",
                        self.values[*u],
                        self.values[*v],
                        beta_unchecked(u, v)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A stabilizer state: a Lagrangian subspace with a consistent value assignment.
#[derive(Clone, Debug)]
pub struct StabilizerState {
    pub subspace: IsotropicSubspace,
    pub values: ValueAssignment,
}

impl StabilizerState {
    pub fn projector(&self) -> HermitianOperator {
        stabilizer_projector(&self.subspace, &self.values)
            .expect("enumerated stabilizer states are consistent")
    }

    /// Qubit Pauli coordinates `s_a = Tr(sigma T_a)` indexed by `a.index()`:
    /// `(-1)^{r(a)}` on the subspace, zero elsewhere.
    pub fn qubit_signs(&self) -> Vec<i8> {
        let (d, n) = (self.subspace.d(), self.subspace.n());
        assert_eq!(d, 2, "Pauli sign vectors are defined for qubits");
        let mut s = vec![0i8; 4usize.pow(n as u32)];
        for (u, r) in self.values.iter() {
            s[u.index()] = if r == 0 { 1 } else { -1 };
        }
        s
    }
}

/// Projector onto the joint eigenspace `T_u |psi> = omega^{r(u)} |psi>`, `u` in `sub`:
/// `(1/|sub|) sum_u omega^{-r(u)} T_u`.
pub fn stabilizer_projector(
    sub: &IsotropicSubspace,
    r: &ValueAssignment,
) -> Result<HermitianOperator> {
    let (d, n) = (sub.d(), sub.n());
    let elems = sub.elements();
    for u in &elems {
        if r.get(u).is_none() {
            return Err(Error::InvalidArgument(format!("no value assigned to {u:?}")));
        }
    }
    let restricted = ValueAssignment::from_pairs(elems.iter().map(|u| (u.clone(), r.get(u).unwrap())));
    restricted.check_noncontextual()?;
    let norm = Complex64::new(1.0 / elems.len() as f64, 0.0);
    let m = pauli_sum(
        d,
        n,
        elems.iter().map(|u| (u, omega_pow(d, d - restricted.get(u).unwrap()) * norm)),
    );
    let label = if sub.is_lagrangian() { OperatorLabel::Stabilizer } else { OperatorLabel::Generic };
    HermitianOperator::with_tolerance(d, n, label, m, 1e-10)
}

/// Largest Hilbert dimension for which stabilizer states are enumerated.
pub const STABILIZER_ENUMERATION_LIMIT: usize = 64;

/// Every pure stabilizer state, in canonical order (Lagrangian, then basis values).
pub fn enumerate_stabilizer_states(d: u32, n: usize) -> Result<Vec<StabilizerState>> {
    check_prime(d)?;
    let dim = hilbert_dim(d, n);
    if dim > STABILIZER_ENUMERATION_LIMIT {
        return Err(Error::Resource(format!(
            "stabilizer enumeration is limited to d^n <= {STABILIZER_ENUMERATION_LIMIT}, got {dim}"
        )));
    }
    let mut out = Vec::new();
    for sub in enumerate_isotropic(d, n, n)? {
        for idx in 0..dim {
            let mut t = idx;
            let vals: Vec<u32> = (0..n)
                .map(|_| {
                    let c = (t % d as usize) as u32;
                    t /= d as usize;
                    c
                })
                .collect();
            let values = ValueAssignment::extend_from_basis(&sub, &vals)?;
            out.push(StabilizerState { subspace: sub.clone(), values });
        }
    }
    Ok(out)
}

/// Number of pure stabilizer states, `d^n prod_{k=1}^n (d^k + 1)`.
pub fn stabilizer_state_count(d: u32, n: usize) -> u128 {
    let d = d as u128;
    d.pow(n as u32) * (1..=n as u32).map(|k| d.pow(k) + 1).product::<u128>()
}

/// Projectors for all stabilizer states as dense matrices.
pub fn stabilizer_projectors(d: u32, n: usize) -> Result<Vec<CMatrix>> {
    Ok(enumerate_stabilizer_states(d, n)?
        .iter()
        .map(|s| s.projector().into_matrix())
        .collect())
}
