//! Random vertices of the qubit Lambda polytope by linear programming.
//!
//! For a Haar-random `|psi>` the program `max Tr(|psi><psi| X)` over Lambda
//! is solved in its dual form (one column per stabilizer state, one row per
//! Pauli coordinate), which keeps the tableau small. The primal optimum is
//! read off the dual multipliers, then re-solved exactly on an independent
//! tight set and certified as a vertex in rational arithmetic.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::haar_state;
use crate::lp::{LinearProgram, LpOutcome, LpTolerances, PivotRule, Relation, Sense};
use crate::operators::pauli::{pauli_sum, pauli_word};
use crate::operators::{enumerate_stabilizer_states, HermitianOperator, OperatorLabel};
use crate::phase_space::SymplecticVector;
use crate::scalar::{solve_square, Rational, Scalar};
use crate::spectral::{eigen_spectrum, Spectrum};

/// Largest qubit count accepted by the sampler.
pub const SAMPLING_MAX_QUBITS: usize = 3;

/// Spectrum and norm rounded to six decimals, used to merge orbit copies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub spectrum: Vec<i64>,
    pub hs_norm_sqr: i64,
}

fn round6(x: f64) -> i64 {
    let r = (x * 1e6).round() as i64;
    // keep -0.0000001 and 0.0000001 in the same bucket
    if r == 0 {
        0
    } else {
        r
    }
}

impl Fingerprint {
    pub fn new(spectrum: &Spectrum, hs_norm_sqr: f64) -> Self {
        Fingerprint {
            spectrum: spectrum.sorted_desc().iter().map(|&x| round6(x)).collect(),
            hs_norm_sqr: round6(hs_norm_sqr),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SampledVertex {
    pub operator: HermitianOperator,
    /// Exact Pauli coordinates `x_a = Tr(X T_a)`, `a != 0`, by `a.index()`.
    pub coords: Vec<Rational>,
    pub spectrum: Spectrum,
    /// `Tr(X^2) = (1 + |x|^2) / 2^n`, exact.
    pub hs_norm_sqr: Rational,
    pub fingerprint: Fingerprint,
}

/// Stabilizer sign vectors without the identity entry, shared by all draws.
pub struct LambdaSampler {
    n: usize,
    signs: Vec<Vec<i8>>,
    paulis: Vec<Vec<Complex64>>,
}

impl LambdaSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > SAMPLING_MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "vertex sampling supports 1..={SAMPLING_MAX_QUBITS} qubits, got {n}"
            )));
        }
        let signs = enumerate_stabilizer_states(2, n)?
            .iter()
            .map(|s| s.qubit_signs()[1..].to_vec())
            .collect();
        let dim = 1usize << n;
        let paulis = (1..dim * dim)
            .map(|i| pauli_word(&SymplecticVector::from_index(2, n, i)).data().to_vec())
            .collect();
        Ok(LambdaSampler { n, signs, paulis })
    }

    fn coords_dim(&self) -> usize {
        (1usize << (2 * self.n)) - 1
    }

    /// Maximizer of `Tr(|psi><psi| X)` over Lambda, certified as a vertex.
    pub fn maximize(&self, psi: &[Complex64]) -> Result<SampledVertex> {
        let dim = 1usize << self.n;
        if psi.len() != dim {
            return Err(Error::Dimension(format!("state has length {}, expected {dim}", psi.len())));
        }
        // c_a = <psi|T_a|psi>
        let c: Vec<f64> = self
            .paulis
            .iter()
            .map(|t| {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..dim {
                    let mut row = Complex64::new(0.0, 0.0);
                    for j in 0..dim {
                        row += t[i * dim + j] * psi[j];
                    }
                    acc += psi[i].conj() * row;
                }
                acc.re
            })
            .collect();
        let x = self.solve_dual(&c)?;
        self.certify(&x)
    }

    /// `min sum y` subject to `sum_s y_s (-s) = c`, `y >= 0`; returns the multipliers.
    fn solve_dual(&self, c: &[f64]) -> Result<Vec<f64>> {
        let k = self.coords_dim();
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0; self.signs.len()]);
        for a in 0..k {
            let row: Vec<f64> = self.signs.iter().map(|s| -(s[a] as f64)).collect();
            lp.add(row, Relation::Eq, c[a]);
        }
        let sol = match lp.solve_with(LpTolerances { rule: PivotRule::Dantzig, ..Default::default() })? {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Infeasible => return Err(Error::Solver("vertex program is infeasible".into())),
            LpOutcome::Unbounded => return Err(Error::Solver("vertex program is unbounded".into())),
        };
        // the multipliers are the primal point up to the sign convention
        let feasible = |x: &[f64]| {
            self.signs.iter().all(|s| {
                1.0 + s.iter().zip(x).map(|(&a, b)| a as f64 * b).sum::<f64>() > -1e-6
            })
        };
        let value = |x: &[f64]| x.iter().zip(c).map(|(a, b)| a * b).sum::<f64>();
        let neg: Vec<f64> = sol.duals.iter().map(|v| -v).collect();
        for cand in [sol.duals.clone(), neg] {
            if feasible(&cand) && (value(&cand) - sol.value).abs() < 1e-6 * (1.0 + sol.value.abs()) {
                return Ok(cand);
            }
        }
        Err(Error::Solver("dual multipliers give no feasible primal point".into()))
    }

    /// Re-solves `s . x = -1` on an independent tight set in exact arithmetic,
    /// then checks feasibility and full tight rank.
    fn certify(&self, approx: &[f64]) -> Result<SampledVertex> {
        let k = self.coords_dim();
        let tight: Vec<usize> = (0..self.signs.len())
            .filter(|&i| {
                let v = 1.0 + self.signs[i].iter().zip(approx).map(|(&a, b)| a as f64 * b).sum::<f64>();
                v.abs() < 1e-6
            })
            .collect();
        // greedy independent subset, reducing each candidate against the rows kept so far
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut reduced: Vec<(usize, Vec<f64>)> = Vec::with_capacity(k);
        for &i in &tight {
            let mut v: Vec<f64> = self.signs[i].iter().map(|&x| x as f64).collect();
            for (pc, r) in &reduced {
                let f = v[*pc] / r[*pc];
                if f != 0.0 {
                    v.iter_mut().zip(r).for_each(|(a, b)| *a -= f * b);
                }
            }
            let (pc, m) = v
                .iter()
                .enumerate()
                .map(|(j, x)| (j, x.abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if m > 1e-7 {
                reduced.push((pc, v));
                chosen.push(i);
                if chosen.len() == k {
                    break;
                }
            }
        }
        if chosen.len() < k {
            return Err(Error::Tolerance(format!(
                "LP optimum has tight rank {} < {k}; not a vertex",
                chosen.len()
            )));
        }
        let a: Vec<Vec<Rational>> = chosen
            .iter()
            .map(|&i| self.signs[i].iter().map(|&x| Rational::from_i64(x as i64)).collect())
            .collect();
        let b = vec![Rational::from_i64(-1); k];
        let x = solve_square(&a, &b, 0.0)
            .ok_or_else(|| Error::Internal("independent tight rows became singular".into()))?;
        let one = Rational::from_i64(1);
        for (i, s) in self.signs.iter().enumerate() {
            let v = s
                .iter()
                .zip(&x)
                .filter(|(a, _)| **a != 0)
                .fold(one.clone(), |acc, (&a, xi)| if a > 0 { acc + xi } else { acc - xi });
            if v.is_negative() {
                return Err(Error::Tolerance(format!(
                    "polished vertex violates stabilizer constraint {i}"
                )));
            }
        }
        let max_dev = x.iter().zip(approx).map(|(e, f)| (Scalar::to_f64(e) - f).abs()).fold(0.0, f64::max);
        if max_dev > 1e-5 {
            return Err(Error::Tolerance(format!("polishing moved the vertex by {max_dev:.3e}")));
        }
        self.vertex_from_coords(x)
    }

    pub(crate) fn vertex_from_coords(&self, x: Vec<Rational>) -> Result<SampledVertex> {
        let dim = 1usize << self.n;
        let scale = 1.0 / dim as f64;
        let labels: Vec<SymplecticVector> =
            (0..dim * dim).map(|i| SymplecticVector::from_index(2, self.n, i)).collect();
        let coeffs: Vec<f64> =
            std::iter::once(1.0).chain(x.iter().map(Scalar::to_f64)).map(|v| v * scale).collect();
        let m = pauli_sum(
            2,
            self.n,
            labels
                .iter()
                .zip(&coeffs)
                .filter(|(_, c)| **c != 0.0)
                .map(|(u, c)| (u, Complex64::new(*c, 0.0))),
        );
        let operator = HermitianOperator::with_tolerance(2, self.n, OperatorLabel::LambdaVertex, m, 1e-10)?;
        let spectrum = eigen_spectrum(&operator)?;
        let sq: Rational = x.iter().filter(|v| !v.is_zero()).map(|v| v * v).sum();
        let hs_norm_sqr = (Rational::from_i64(1) + sq) / Rational::from_i64(dim as i64);
        let fingerprint = Fingerprint::new(&spectrum, Scalar::to_f64(&hs_norm_sqr));
        Ok(SampledVertex { operator, coords: x, spectrum, hs_norm_sqr, fingerprint })
    }
}

/// Independent generator for draw `index`: the seed selects the key, the
/// index selects the stream.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `count` LP-sampled vertices of the `n`-qubit Lambda polytope, in draw order.
///
/// Draws run in parallel on the current rayon pool; each has its own
/// generator stream, so the output does not depend on the thread count.
pub fn sample_lambda_vertices(n: usize, count: usize, seed: u64) -> Result<Vec<SampledVertex>> {
    let sampler = LambdaSampler::new(n)?;
    let dim = 1usize << n;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let psi = haar_state(dim, &mut draw_rng(seed, i as u64));
            sampler.maximize(&psi)
        })
        .collect()
}
