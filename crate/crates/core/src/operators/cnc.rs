use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;

use super::hermitian::{HermitianOperator, OperatorLabel};
use super::pauli::{omega_pow, pauli_sum};
use super::stabilizer::ValueAssignment;
use crate::error::{Error, Result};
use crate::phase_space::{
    beta_unchecked, check_prime, enumerate_isotropic, hilbert_dim, IsotropicSubspace,
    SymplecticVector,
};

/// A set closed under inference, `Omega = union_k <a_k, I>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CncSet {
    d: u32,
    n: usize,
    /// Type parameter for qubit sets; `None` for the full single-qudit phase space.
    m: Option<usize>,
    isotropic: IsotropicSubspace,
    reps: Vec<SymplecticVector>,
    omega: Vec<SymplecticVector>,
}

impl CncSet {
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> Option<usize> {
        self.m
    }
    pub fn isotropic(&self) -> &IsotropicSubspace {
        &self.isotropic
    }
    /// Coset representatives `a_k`.
    pub fn reps(&self) -> &[SymplecticVector] {
        &self.reps
    }
    /// Elements of `Omega`, sorted.
    pub fn omega(&self) -> &[SymplecticVector] {
        &self.omega
    }
    pub fn len(&self) -> usize {
        self.omega.len()
    }
    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }
    pub fn contains(&self, u: &SymplecticVector) -> bool {
        self.omega.binary_search(u).is_ok()
    }

    /// Whether `[u, v] = 0` implies `u + v` in the set, for every pair.
    pub fn is_closed_under_inference(&self) -> bool {
        self.omega.iter().all(|u| {
            self.omega
                .iter()
                .all(|v| !u.commutes_with(v) || self.contains(&u.add(v)))
        })
    }

    /// Four elements `a11, a12, a21, a22` generating a Mermin square inside the
    /// set: rows and columns commute, the diagonals anticommute, and all nine
    /// entries (the pairwise sums) are in the set.
    pub fn find_mermin_square(&self) -> Option<[SymplecticVector; 4]> {
        let elems: Vec<&SymplecticVector> = self.omega.iter().filter(|u| !u.is_zero()).collect();
        for a11 in &elems {
            for a12 in elems.iter().filter(|v| a11.commutes_with(v) && *v != a11) {
                for a21 in elems.iter().filter(|v| a11.commutes_with(v) && !a12.commutes_with(v)) {
                    for a22 in elems.iter().filter(|v| {
                        a21.commutes_with(v) && a12.commutes_with(v) && !a11.commutes_with(v)
                    }) {
                        let sums = [
                            a11.add(a12),
                            a21.add(a22),
                            a11.add(a21),
                            a12.add(a22),
                            a11.add(a12).add(a21).add(a22),
                        ];
                        if sums.iter().all(|s| self.contains(s)) {
                            return Some([
                                (*a11).clone(),
                                (*a12).clone(),
                                (*a21).clone(),
                                (*a22).clone(),
                            ]);
                        }
                    }
                }
            }
        }
        None
    }
}

/// A CNC set together with a noncontextual value assignment.
#[derive(Clone, Debug)]
pub struct CncOperator {
    pub set: Arc<CncSet>,
    pub gamma: ValueAssignment,
}

impl CncOperator {
    /// `A = (1/d^n) sum_{v in Omega} omega^{-gamma(v)} T_v`.
    pub fn operator(&self) -> HermitianOperator {
        let (d, n) = (self.set.d, self.set.n);
        let norm = Complex64::new(1.0 / hilbert_dim(d, n) as f64, 0.0);
        let m = pauli_sum(
            d,
            n,
            self.set
                .omega
                .iter()
                .map(|v| (v, omega_pow(d, d - self.gamma.get(v).unwrap()) * norm)),
        );
        HermitianOperator::with_tolerance(d, n, self.label(), m, 1e-12)
            .expect("noncontextual value assignments give Hermitian operators")
    }

    pub fn label(&self) -> OperatorLabel {
        match self.set.m {
            Some(m) => OperatorLabel::Cnc { m },
            None if self.is_linear() => OperatorLabel::PhasePoint,
            None => OperatorLabel::CncNonlinear,
        }
    }

    /// Whether gamma is additive on all of `Omega`.
    pub fn is_linear(&self) -> bool {
        let om = &self.set.omega;
        om.iter().all(|u| {
            om.iter().all(|v| {
                let w = u.add(v);
                match self.gamma.get(&w) {
                    Some(g) => {
                        (self.gamma.get(u).unwrap() + self.gamma.get(v).unwrap()) % self.set.d == g
                    }
                    None => true,
                }
            })
        })
    }

    /// Qubit Pauli coordinates `x_a = Tr(A T_a)`, indexed by `a.index()`.
    pub fn qubit_coords(&self) -> Vec<i8> {
        assert_eq!(self.set.d, 2);
        let mut x = vec![0i8; 4usize.pow(self.set.n as u32)];
        for v in &self.set.omega {
            x[v.index()] = if self.gamma.get(v).unwrap() == 0 { 1 } else { -1 };
        }
        x
    }

    /// `(v, gamma(v))` in sorted order, used as a canonical key.
    pub fn key(&self) -> Vec<(SymplecticVector, u32)> {
        self.set.omega.iter().map(|v| (v.clone(), self.gamma.get(v).unwrap())).collect()
    }
}

/// All maximal CNC sets of type `m` on `n` qubits.
pub fn enumerate_cnc_sets(n: usize, m: usize) -> Result<Vec<CncSet>> {
    if m < 1 || m > n {
        return Err(Error::InvalidArgument(format!(
            "CNC type must satisfy 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    if n > 3 {
        return Err(Error::Resource(format!(
            "exhaustive CNC enumeration supports n <= 3, got {n}"
        )));
    }
    let xi = 2 * m + 1;
    let mut seen: BTreeSet<Vec<SymplecticVector>> = BTreeSet::new();
    let mut out = Vec::new();
    for iso in enumerate_isotropic(2, n, n - m)? {
        let in_iso: BTreeSet<SymplecticVector> = iso.elements().into_iter().collect();
        // nonzero cosets of I in I^perp, keyed by their smallest element
        let mut cosets: BTreeSet<SymplecticVector> = BTreeSet::new();
        for v in iso.perp_elements() {
            if in_iso.contains(&v) {
                continue;
            }
            let rep = in_iso.iter().map(|i| v.add(i)).min().unwrap();
            cosets.insert(rep);
        }
        let cosets: Vec<SymplecticVector> = cosets.into_iter().collect();
        let mut clique = Vec::with_capacity(xi);
        let mut cliques = Vec::new();
        anticommuting_cliques(&cosets, xi, 0, &mut clique, &mut cliques);
        for reps in cliques {
            let reps: Vec<SymplecticVector> = reps.into_iter().map(|i| cosets[i].clone()).collect();
            let mut omega: BTreeSet<SymplecticVector> = in_iso.clone();
            for a in &reps {
                omega.extend(in_iso.iter().map(|i| a.add(i)));
            }
            let omega: Vec<SymplecticVector> = omega.into_iter().collect();
            if seen.insert(omega.clone()) {
                out.push(CncSet { d: 2, n, m: Some(m), isotropic: iso.clone(), reps, omega });
            }
        }
    }
    Ok(out)
}

fn anticommuting_cliques(
    nodes: &[SymplecticVector],
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for i in start..nodes.len() {
        if nodes.len() - i < size - current.len() {
            break;
        }
        if current.iter().all(|&j| !nodes[j].commutes_with(&nodes[i])) {
            current.push(i);
            anticommuting_cliques(nodes, size, i + 1, current, out);
            current.pop();
        }
    }
}

/// All noncontextual value assignments on a qubit CNC set: free on a basis
/// of `I` and on each `a_k`, then `gamma(a + i) = gamma(a) + gamma(i) + beta(a, i)`.
pub fn cnc_value_assignments(set: &CncSet) -> Result<Vec<ValueAssignment>> {
    let k = set.isotropic.dim();
    let xi = set.reps.len();
    let iso_elems = set.isotropic.elements();
    let mut out = Vec::with_capacity(1 << (k + xi));
    for bits in 0u64..(1u64 << (k + xi)) {
        let basis_vals: Vec<u32> = (0..k).map(|i| ((bits >> i) & 1) as u32).collect();
        let mut gamma = ValueAssignment::extend_from_basis(&set.isotropic, &basis_vals)?;
        let on_iso = gamma.clone();
        for (j, a) in set.reps.iter().enumerate() {
            let ga = ((bits >> (k + j)) & 1) as u32;
            for i in &iso_elems {
                let gi = on_iso.get(i).unwrap();
                gamma.insert(a.add(i), (ga + gi + beta_unchecked(a, i)) % 2);
            }
        }
        out.push(gamma);
    }
    Ok(out)
}

/// Every maximal type-`m` CNC operator on `n` qubits, deduplicated by
/// sorted `(v, gamma(v))` lists.
pub fn enumerate_cnc_qubits(n: usize, m: usize) -> Result<Vec<CncOperator>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for set in enumerate_cnc_sets(n, m)? {
        let set = Arc::new(set);
        for gamma in cnc_value_assignments(&set)? {
            let op = CncOperator { set: Arc::clone(&set), gamma };
            if seen.insert(op.key()) {
                out.push(op);
            }
        }
    }
    Ok(out)
}

/// CNC operators on the full single-qudit phase space `Z_d^2` (odd `d`):
/// gamma is linear along each of the `d + 1` lines through the origin.
pub fn single_qudit_full_cnc(d: u32) -> Result<Vec<CncOperator>> {
    check_prime(d)?;
    if d == 2 {
        return Err(Error::Unsupported(
            "full-phase-space CNC operators are constructed for odd d only".into(),
        ));
    }
    let mut lines: Vec<SymplecticVector> =
        (0..d).map(|k| SymplecticVector::new(d, &[1], &[k]).unwrap()).collect();
    lines.push(SymplecticVector::new(d, &[0], &[1]).unwrap());
    let omega: Vec<SymplecticVector> = SymplecticVector::all(d, 1).collect::<BTreeSet<_>>().into_iter().collect();
    let set = Arc::new(CncSet {
        d,
        n: 1,
        m: None,
        isotropic: IsotropicSubspace::trivial(d, 1),
        reps: lines.clone(),
        omega,
    });
    let total = (d as usize).pow(lines.len() as u32);
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut t = idx;
        let mut gamma = ValueAssignment::new();
        gamma.insert(SymplecticVector::zero(d, 1), 0);
        for g in &lines {
            let slope = (t % d as usize) as u32;
            t /= d as usize;
            for c in 1..d {
                gamma.insert(g.scale(c), c * slope);
            }
        }
        out.push(CncOperator { set: Arc::clone(&set), gamma });
    }
    Ok(out)
}
