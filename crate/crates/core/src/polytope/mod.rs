//! Convex polytopes in H- and V-representation, with conversions by double description.

pub mod dd;
pub mod spectral;

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operators::enumerate_stabilizer_states;
use crate::scalar::{dot, Rational, Scalar};
pub use dd::{cone_extreme_rays, DdOptions, DdProgress, InsertionOrder, Ray};
pub use spectral::{
    intersect_halfspace, permutation_closure, radius_extremes, weyl_chamber, RadiusExtremes,
    PERMUTATION_IMAGE_LIMIT,
};

/// `a . x >= b`
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace<F> {
    pub a: Vec<F>,
    pub b: F,
}

impl<F: Scalar> Halfspace<F> {
    pub fn new(a: Vec<F>, b: F) -> Self {
        Halfspace { a, b }
    }
    /// `a . x - b`
    pub fn slack(&self, x: &[F]) -> F {
        dot(&self.a, x).sub(&self.b)
    }
    pub fn negated(&self) -> Self {
        Halfspace { a: self.a.iter().map(|x| x.neg()).collect(), b: self.b.neg() }
    }
}

/// A polytope with an inequality description, optional equalities, and
/// (once computed) its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope<F> {
    pub dim: usize,
    pub ineq: Vec<Halfspace<F>>,
    /// Equalities `a . x = b`.
    pub eq: Vec<Halfspace<F>>,
    pub vertices: Option<Vec<Vec<F>>>,
}

impl<F: Scalar> Polytope<F> {
    pub fn from_h(dim: usize, ineq: Vec<Halfspace<F>>, eq: Vec<Halfspace<F>>) -> Self {
        Polytope { dim, ineq, eq, vertices: None }
    }

    pub fn exact(&self) -> bool {
        F::EXACT
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        self.vertices.as_deref().unwrap_or(&[])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn facet_count(&self) -> usize {
        self.ineq.len()
    }

    pub fn contains(&self, x: &[F], tol: f64) -> bool {
        self.ineq.iter().all(|h| !h.slack(x).is_neg(tol))
            && self.eq.iter().all(|h| h.slack(x).is_zero_tol(tol))
    }

    /// Indices of inequalities tight at `x`.
    pub fn tight_set(&self, x: &[F], tol: f64) -> Vec<usize> {
        (0..self.ineq.len()).filter(|&i| self.ineq[i].slack(x).is_zero_tol(tol)).collect()
    }

    /// Every inequality as rows `(a, b)`, equalities expanded into opposing pairs.
    pub fn all_halfspaces(&self) -> Vec<Halfspace<F>> {
        let mut out = self.ineq.clone();
        for e in &self.eq {
            out.push(e.clone());
            out.push(e.negated());
        }
        out
    }

    pub fn to_f64(&self) -> Polytope<f64> {
        let conv = |h: &Halfspace<F>| Halfspace {
            a: h.a.iter().map(|x| x.to_f64()).collect(),
            b: h.b.to_f64(),
        };
        Polytope {
            dim: self.dim,
            ineq: self.ineq.iter().map(conv).collect(),
            eq: self.eq.iter().map(conv).collect(),
            vertices: self
                .vertices
                .as_ref()
                .map(|vs| vs.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect()),
        }
    }

    /// Sorts vertices lexicographically (by float value).
    pub fn sort_vertices(&mut self) {
        if let Some(vs) = self.vertices.as_mut() {
            vs.sort_by(|a, b| cmp_vec(a, b));
        }
    }

    /// `{"dim", "exact", "H": [{"a", "b"}], "V": [[..]]}`; equalities appear as opposing pairs.
    pub fn to_json(&self) -> Value {
        let h: Vec<Value> = self
            .all_halfspaces()
            .iter()
            .map(|h| {
                json!({
                    "a": h.a.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                    "b": h.b.to_json(),
                })
            })
            .collect();
        let v: Vec<Value> = self
            .vertices()
            .iter()
            .map(|v| Value::Array(v.iter().map(|x| x.to_json()).collect()))
            .collect();
        json!({ "dim": self.dim, "exact": F::EXACT, "H": h, "V": v })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Input(format!("polytope JSON: {m}"));
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let mut ineq = Vec::new();
        for h in v["H"].as_array().ok_or_else(|| bad("missing H"))? {
            let a = h["a"]
                .as_array()
                .ok_or_else(|| bad("halfspace without a"))?
                .iter()
                .map(F::from_json)
                .collect::<Result<Vec<F>>>()?;
            if a.len() != dim {
                return Err(bad("halfspace of the wrong length"));
            }
            ineq.push(Halfspace { a, b: F::from_json(&h["b"])? });
        }
        let vertices = match v.get("V").and_then(|x| x.as_array()) {
            Some(vs) if !vs.is_empty() => Some(
                vs.iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| bad("vertex is not an array"))?
                            .iter()
                            .map(F::from_json)
                            .collect::<Result<Vec<F>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => None,
        };
        Ok(Polytope { dim, ineq, eq: Vec::new(), vertices })
    }
}

pub(crate) fn cmp_vec<F: Scalar>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.to_f64().total_cmp(&y.to_f64()) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Vertices of a bounded H-polytope.
pub fn double_description<F: Scalar>(p: &Polytope<F>, opts: &DdOptions<'_>) -> Result<Polytope<F>> {
    // homogenize: (t, x) with a.x - b t >= 0 and t >= 0
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut t_row = vec![F::zero(); p.dim + 1];
    t_row[0] = F::one();
    rows.push(t_row);
    for h in p.all_halfspaces() {
        let mut r = Vec::with_capacity(p.dim + 1);
        r.push(h.b.neg());
        r.extend(h.a.iter().cloned());
        rows.push(r);
    }
    let rays = cone_extreme_rays(&rows, opts)?;
    let tol = if F::EXACT { 0.0 } else { opts.tol };
    let mut vertices = Vec::with_capacity(rays.len());
    for r in rays {
        if !r.coords[0].is_pos(tol) {
            return Err(Error::Unbounded(format!(
                "polytope has a recession direction {:?}",
                r.coords[1..].iter().map(|x| x.to_f64()).collect::<Vec<_>>()
            )));
        }
        let t = r.coords[0].clone();
        vertices.push(r.coords[1..].iter().map(|x| x.div(&t)).collect::<Vec<F>>());
    }
    let mut out = p.clone();
    out.vertices = Some(vertices);
    out.sort_vertices();
    Ok(out)
}

/// Pivot columns of the affine hull of `points` (a coordinate chart on it)
/// and a basis of normals to it.
fn affine_chart<F: Scalar>(points: &[Vec<F>], tol: f64) -> (Vec<usize>, Vec<Vec<F>>) {
    let dim = points[0].len();
    let mut m: Vec<Vec<F>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a.sub(b)).collect())
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == m.len() {
            break;
        }
        let piv = if F::EXACT {
            (r..m.len()).find(|&i| !m[i][c].is_zero_tol(0.0))
        } else {
            (r..m.len())
                .filter(|&i| m[i][c].abs_f64() > tol)
                .max_by(|&i, &j| m[i][c].abs_f64().total_cmp(&m[j][c].abs_f64()))
        };
        let Some(p) = piv else { continue };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for j in 0..dim {
            m[r][j] = m[r][j].div(&pv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero_tol(0.0) {
                let f = m[i][c].clone();
                for j in 0..dim {
                    m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut normals = Vec::new();
    for f in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut n = vec![F::zero(); dim];
        n[f] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            n[pc] = m[row][f].neg();
        }
        normals.push(n);
    }
    (pivots, normals)
}

/// Facets (and affine-hull equalities) of the convex hull of `points`.
pub fn hrep_from_vrep<F: Scalar>(points: &[Vec<F>], opts: &DdOptions<'_>) -> Result<Polytope<F>> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidArgument("convex hull of no points".into()));
    };
    let dim = first.len();
    let tol = if F::EXACT { 0.0 } else { opts.tol };
    let (chart, normals) = affine_chart(points, tol.max(if F::EXACT { 0.0 } else { 1e-9 }));
    let eq: Vec<Halfspace<F>> = normals
        .into_iter()
        .map(|n| {
            let b = dot(&n, first);
            Halfspace { a: n, b }
        })
        .collect();
    let ineq = if chart.is_empty() {
        Vec::new()
    } else {
        // cone of (beta, alpha) with alpha . v_chart - beta >= 0 for every point
        let rows: Vec<Vec<F>> = points
            .iter()
            .map(|p| {
                let mut r = vec![F::one().neg()];
                r.extend(chart.iter().map(|&c| p[c].clone()));
                r
            })
            .collect();
        let rays = cone_extreme_rays(&rows, opts)?;
        let mut ineq = Vec::new();
        for r in rays {
            let alpha = &r.coords[1..];
            if alpha.iter().all(|x| x.is_zero_tol(tol)) {
                continue;
            }
            let mut a = vec![F::zero(); dim];
            for (k, &c) in chart.iter().enumerate() {
                a[c] = alpha[k].clone();
            }
            ineq.push(Halfspace { a, b: r.coords[0].clone() });
        }
        ineq
    };
    Ok(Polytope { dim, ineq, eq, vertices: Some(points.to_vec()) })
}

/// The qubit Lambda polytope in Pauli coordinates `x_a = Tr(X T_a)`, `a != 0`:
/// one inequality `1 + sum_a s_a x_a >= 0` per pure stabilizer state.
pub fn lambda_hrep_qubits(n: usize) -> Result<Polytope<Rational>> {
    let states = enumerate_stabilizer_states(2, n)?;
    let dim = 4usize.pow(n as u32) - 1;
    let ineq = states
        .iter()
        .map(|s| {
            let signs = s.qubit_signs();
            Halfspace {
                a: signs[1..].iter().map(|&x| Rational::from_i64(x as i64)).collect(),
                b: Rational::from_i64(-1),
            }
        })
        .collect();
    Ok(Polytope::from_h(dim, ineq, Vec::new()))
}
