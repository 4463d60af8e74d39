//! Polytopes of ASTAB and AWP spectra: Weyl chamber pieces and their
//! permutation closures.

use std::io::Write;

use serde_json::{json, Value};

use super::verdict::{vertex_spectra, Coverage};
use crate::error::{Error, Result};
use crate::format::{fmt_g12, CsvWriter};
use crate::phase_space::{check_prime, hilbert_dim};
use crate::polytope::{
    hrep_from_vrep, intersect_halfspace, permutation_closure, weyl_chamber, DdOptions, Halfspace, Polytope,
};
use crate::scalar::{Rational, Scalar};

/// Largest Hilbert dimension for which AWP vertex orbits are materialized.
pub const AWP_MAX_DIM: usize = 27;

/// Largest Hilbert dimension for which AWP facets are computed from the vertices.
pub const AWP_FACET_MAX_DIM: usize = 9;

/// Tolerance for vertex and sign decisions on the (irrational) ASTAB polytopes.
pub const ASTAB_POLYTOPE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SpectralPolytope {
    pub d: u32,
    pub n: usize,
    /// Labels of the vertex spectra imposed on the chamber, in order.
    pub constraints: Vec<String>,
    /// Sorted spectra satisfying every constraint.
    pub chamber: Polytope<f64>,
    /// All spectra (any order); `None` when the permutation guard is hit.
    pub closure: Option<Polytope<f64>>,
    /// Why `closure` is missing.
    pub closure_note: Option<String>,
    /// Depends on the CNC spectra being spectrally generating.
    pub conditional: bool,
}

impl SpectralPolytope {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "astab",
            "d": self.d,
            "n": self.n,
            "conditional": self.conditional,
            "constraints": self.constraints,
            "chamber": self.chamber.to_json(),
            "closure": self.closure.as_ref().map(|p| p.to_json()),
            "closure_note": self.closure_note,
        })
    }
}

/// Weyl chamber cut by `sum_i A^up_i lambda_i >= 0` for every available
/// vertex spectrum `A`, then closed under permutations.
///
/// Supported: `(2,1)`, `(2,2)`, `(3,1)` exactly, and qubits with `3 <= n <= 6`
/// conditionally. Other cases lack a vertex-spectrum description and are
/// rejected.
pub fn build_astab_spectral_polytope(d: u32, n: usize) -> Result<SpectralPolytope> {
    check_prime(d)?;
    let supported = matches!((d, n), (2, 1..=6) | (3, 1));
    if !supported {
        return Err(Error::InvalidArgument(format!(
            "ASTAB spectral polytope is available for (2,1..=6) and (3,1), got ({d},{n})"
        )));
    }
    let vs = vertex_spectra(d, n)?;
    let dim = hilbert_dim(d, n);
    let mut chamber = weyl_chamber::<f64>(dim)?;
    let mut labels = Vec::new();
    for l in &vs.spectra {
        let h = Halfspace::new(l.spectrum.sorted_asc(), 0.0);
        chamber = intersect_halfspace(&chamber, &h, ASTAB_POLYTOPE_TOL)?;
        labels.push(l.label.clone());
    }
    let opts = DdOptions { tol: ASTAB_POLYTOPE_TOL, ..Default::default() };
    let (closure, closure_note) = match permutation_closure(&chamber, &opts) {
        Ok(p) => (Some(p), None),
        Err(Error::Resource(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    Ok(SpectralPolytope {
        d,
        n,
        constraints: labels,
        chamber,
        closure,
        closure_note,
        conditional: vs.coverage == Coverage::CncConditional,
    })
}

/// Closed-form vertices of the AWP spectral polytope for odd `D = d^n`:
/// the permutations of `(1/(D-1), ..., 1/(D-1), 0)` and, for `D > 3`, of
/// `(2/(D+1), 1/(D+1), ..., 1/(D+1))`. Sorted lexicographically.
pub fn awp_closed_form_vertices(dim: usize) -> Result<Vec<Vec<Rational>>> {
    if dim.is_multiple_of(2) || dim < 3 {
        return Err(Error::Unsupported(format!("AWP spectra need odd D >= 3, got {dim}")));
    }
    if dim > AWP_MAX_DIM {
        return Err(Error::Resource(format!("AWP vertex orbits are materialized for D <= {AWP_MAX_DIM}")));
    }
    let d = dim as i64;
    let mut out = Vec::new();
    for k in 0..dim {
        // v_{D-1} with the zero in slot k
        let mut v = vec![Rational::from_ratio(1, d - 1); dim];
        v[k] = Rational::from_i64(0);
        out.push(v);
        if dim > 3 {
            let mut w = vec![Rational::from_ratio(1, d + 1); dim];
            w[k] = Rational::from_ratio(2, d + 1);
            out.push(w);
        }
    }
    out.sort_by(|a, b| crate::polytope::cmp_vec(a, b));
    Ok(out)
}

/// AWP spectral polytope of `n` qudits of odd prime dimension `d`, from the
/// closed-form vertices; facets are attached for `D <= 9`.
pub fn build_awp_spectral_polytope(d: u32, n: usize) -> Result<Polytope<Rational>> {
    check_prime(d)?;
    if d == 2 {
        return Err(Error::Unsupported("AWP spectra are defined for odd d".into()));
    }
    let dim = hilbert_dim(d, n);
    let verts = awp_closed_form_vertices(dim)?;
    if dim <= AWP_FACET_MAX_DIM {
        let mut p = hrep_from_vrep(&verts, &DdOptions::default())?;
        p.sort_vertices();
        Ok(p)
    } else {
        let eq = vec![Halfspace::new(vec![Rational::from_i64(1); dim], Rational::from_i64(1))];
        Ok(Polytope { dim, ineq: Vec::new(), eq, vertices: Some(verts) })
    }
}

/// The same polytope by brute force: the Weyl chamber cut by
/// `sum_{i <= (D-1)/2} lambda_i <= 1/2`, then permutation closure.
pub fn awp_brute_force(dim: usize) -> Result<Polytope<Rational>> {
    if dim.is_multiple_of(2) || dim < 3 {
        return Err(Error::Unsupported(format!("AWP spectra need odd D >= 3, got {dim}")));
    }
    let chamber = weyl_chamber::<Rational>(dim)?;
    let mut a = vec![Rational::from_i64(0); dim];
    for x in a.iter_mut().take((dim - 1) / 2) {
        *x = Rational::from_i64(-1);
    }
    let cut = intersect_halfspace(&chamber, &Halfspace::new(a, Rational::from_ratio(-1, 2)), 0.0)?;
    permutation_closure(&cut, &DdOptions::default())
}

/// Barycentric and planar coordinates of qutrit spectra, one row per point:
/// `label,l1,l2,l3,x,y` with `x = l2 + l3/2`, `y = sqrt(3)/2 l3`.
pub fn write_ternary_csv<W: Write>(out: W, points: &[(String, [f64; 3])]) -> Result<W> {
    let mut w = CsvWriter::new(out, &["label", "l1", "l2", "l3", "x", "y"])?;
    let h = 3f64.sqrt() / 2.0;
    for (label, l) in points {
        w.row_strings([
            label.clone(),
            fmt_g12(l[0]),
            fmt_g12(l[1]),
            fmt_g12(l[2]),
            fmt_g12(l[1] + l[2] / 2.0),
            fmt_g12(h * l[2]),
        ])?;
    }
    Ok(w.into_inner())
}

/// Ternary rows for the single-qutrit picture: ASTAB closure vertices, AWP
/// vertices and a polygonal sample of the common inscribed circle.
pub fn qutrit_ternary_points(circle_points: usize) -> Result<Vec<(String, [f64; 3])>> {
    let mut out = Vec::new();
    let astab = build_astab_spectral_polytope(3, 1)?;
    if let Some(c) = &astab.closure {
        for v in c.vertices() {
            out.push(("astab".to_string(), [v[0], v[1], v[2]]));
        }
    }
    for v in build_awp_spectral_polytope(3, 1)?.vertices() {
        out.push(("awp".to_string(), [v[0].to_f64(), v[1].to_f64(), v[2].to_f64()]));
    }
    // spectra at HS distance r = 1/sqrt(24) from the uniform point
    let r = 1.0 / 24f64.sqrt();
    let e1 = [2f64.sqrt() / 2.0, -(2f64.sqrt()) / 2.0, 0.0];
    let e2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    for k in 0..circle_points {
        let t = 2.0 * std::f64::consts::PI * k as f64 / circle_points as f64;
        let p: Vec<f64> = (0..3).map(|i| 1.0 / 3.0 + r * (t.cos() * e1[i] + t.sin() * e2[i])).collect();
        out.push(("inradius".to_string(), [p[0], p[1], p[2]]));
    }
    Ok(out)
}
