//! Membership and vertex certificates for the Lambda polytope, the set of
//! unit-trace Hermitian operators with `Tr(X sigma) >= 0` for every pure
//! stabilizer state `sigma`.

use super::cnc::single_qudit_full_cnc;
use super::hermitian::HermitianOperator;
use super::stabilizer::stabilizer_projectors;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::rank;

/// Tightness threshold for `Tr(X sigma) = 0`.
pub const TIGHT_TOL: f64 = 1e-9;
/// Pivot threshold for the rank of the tight constraint set.
pub const RANK_TOL: f64 = 1e-8;

/// Real coordinates of the functional `X -> Tr(X Y)` for Hermitian `Y`.
fn functional_row(y: &CMatrix) -> Vec<f64> {
    let dim = y.dim();
    let mut row = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        row.push(y[(i, i)].re);
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            row.push(2.0 * y[(i, j)].re);
            row.push(2.0 * y[(i, j)].im);
        }
    }
    row
}

/// Smallest `Tr(X sigma)` over the given stabilizer projectors.
pub fn min_stabilizer_overlap(x: &HermitianOperator, projectors: &[CMatrix]) -> f64 {
    projectors
        .iter()
        .map(|p| x.matrix().trace_product(p).re)
        .fold(f64::INFINITY, f64::min)
}

/// Indices of projectors with `|Tr(X sigma)| <= TIGHT_TOL`.
pub fn tight_set(x: &HermitianOperator, projectors: &[CMatrix]) -> Vec<usize> {
    projectors
        .iter()
        .enumerate()
        .filter(|(_, p)| x.matrix().trace_product(p).re.abs() <= TIGHT_TOL)
        .map(|(i, _)| i)
        .collect()
}

/// Whether `X` is a vertex: tight constraints plus the trace condition pin
/// down all `D^2` real parameters.
pub fn is_lambda_vertex(x: &HermitianOperator, projectors: &[CMatrix]) -> bool {
    let dim = x.dim();
    let mut rows: Vec<Vec<f64>> = tight_set(x, projectors)
        .into_iter()
        .map(|i| functional_row(&projectors[i]))
        .collect();
    rows.push(functional_row(&CMatrix::identity(dim)));
    rank(&rows, RANK_TOL) == dim * dim
}

/// The 81 single-qutrit Lambda vertices, each checked for membership and vertexhood.
pub fn qutrit_lambda_vertices() -> Result<Vec<HermitianOperator>> {
    let projectors = stabilizer_projectors(3, 1)?;
    let mut out = Vec::with_capacity(81);
    for op in single_qudit_full_cnc(3)? {
        let x = op.operator();
        let lo = min_stabilizer_overlap(&x, &projectors);
        if lo < -1e-12 {
            return Err(Error::Internal(format!(
                "constructed qutrit operator lies outside Lambda (min overlap {lo:.3e})"
            )));
        }
        if !is_lambda_vertex(&x, &projectors) {
            return Err(Error::Internal("constructed qutrit operator is not a vertex".into()));
        }
        out.push(x);
    }
    Ok(out)
}
