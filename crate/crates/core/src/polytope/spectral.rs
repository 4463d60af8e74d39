//! Polytopes in spectrum space: Weyl chambers, single halfspace cuts,
//! permutation closure and radii.

use std::collections::BTreeSet;

use super::{cmp_vec, hrep_from_vrep, DdOptions, Halfspace, Polytope};
use crate::error::{Error, Result};
use crate::lp::convex_hull_contains;
use crate::scalar::Scalar;

/// The sorted slice `x_1 >= ... >= x_dim >= 0`, `sum x = 1`, with vertices
/// `v_k = (1/k, ..., 1/k, 0, ..., 0)`.
pub fn weyl_chamber<F: Scalar>(dim: usize) -> Result<Polytope<F>> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("Weyl chamber needs dim >= 2, got {dim}")));
    }
    let mut ineq = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut a = vec![F::zero(); dim];
        a[i] = F::one();
        if i + 1 < dim {
            a[i + 1] = F::one().neg();
        }
        ineq.push(Halfspace::new(a, F::zero()));
    }
    let eq = vec![Halfspace::new(vec![F::one(); dim], F::one())];
    let vertices = (1..=dim)
        .map(|k| {
            let mut v = vec![F::zero(); dim];
            for x in v.iter_mut().take(k) {
                *x = F::from_ratio(1, k as i64);
            }
            v
        })
        .collect();
    Ok(Polytope { dim, ineq, eq, vertices: Some(vertices) })
}

fn same<F: Scalar>(a: &F, b: &F, tol: f64) -> bool {
    a.sub(b).is_zero_tol(tol)
}

fn same_vec<F: Scalar>(a: &[F], b: &[F], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| same(x, y, tol))
}

/// Largest number of distinct coordinate permutations allowed per vertex.
pub const PERMUTATION_IMAGE_LIMIT: u128 = 720;

fn multinomial(counts: &[usize]) -> u128 {
    let mut total: u128 = 1;
    let mut seen = 0u128;
    for &c in counts {
        for k in 1..=c as u128 {
            seen += 1;
            total = total * seen / k;
        }
    }
    total
}

/// Distinct coordinate permutations of `v`, in lexicographic order of value classes.
pub(crate) fn distinct_permutations<F: Scalar>(v: &[F], tol: f64) -> Result<Vec<Vec<F>>> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].to_f64().total_cmp(&v[j].to_f64()));
    let mut classes: Vec<F> = Vec::new();
    let mut labels = vec![0usize; v.len()];
    for &i in &order {
        match classes.last() {
            Some(c) if same(c, &v[i], tol) => labels[i] = classes.len() - 1,
            _ => {
                classes.push(v[i].clone());
                labels[i] = classes.len() - 1;
            }
        }
    }
    let mut counts = vec![0usize; classes.len()];
    for &l in &labels {
        counts[l] += 1;
    }
    let n_images = multinomial(&counts);
    if n_images > PERMUTATION_IMAGE_LIMIT {
        return Err(Error::Resource(format!(
            "vertex has {n_images} distinct coordinate permutations (limit {PERMUTATION_IMAGE_LIMIT})"
        )));
    }
    let mut perm: Vec<usize> = labels.clone();
    perm.sort_unstable();
    let mut out = Vec::with_capacity(n_images as usize);
    loop {
        out.push(perm.iter().map(|&l| classes[l].clone()).collect());
        // next lexicographic permutation
        let Some(i) = (0..perm.len().saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

fn sorted_key<F: Scalar>(v: &[F]) -> Vec<F> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
    s
}

/// Convex hull of all coordinate permutations of the vertices of `p`, with
/// non-extreme points removed by LP and facets recomputed.
///
/// Redundancy is tested on one representative per permutation orbit, since
/// extremality is invariant under coordinate permutations.
pub fn permutation_closure<F: Scalar>(p: &Polytope<F>, opts: &DdOptions<'_>) -> Result<Polytope<F>> {
    let verts = p
        .vertices
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("permutation closure needs a V-representation".into()))?;
    let tol = if F::EXACT { 0.0 } else { opts.tol };
    // orbit representatives, deduplicated by their sorted coordinates
    let mut reps: Vec<Vec<F>> = Vec::new();
    for v in verts {
        let key = sorted_key(v);
        if !reps.iter().any(|r| same_vec(&sorted_key(r), &key, tol)) {
            reps.push(v.clone());
        }
    }
    let orbits: Vec<Vec<Vec<F>>> =
        reps.iter().map(|r| distinct_permutations(r, tol)).collect::<Result<_>>()?;
    let mut keep = Vec::new();
    for (k, rep) in reps.iter().enumerate() {
        let others: Vec<Vec<F>> = orbits
            .iter()
            .flatten()
            .filter(|v| !same_vec(v, rep, tol))
            .cloned()
            .collect();
        if !convex_hull_contains(rep, &others)? {
            keep.push(k);
        }
    }
    let mut survivors: Vec<Vec<F>> = keep.iter().flat_map(|&k| orbits[k].clone()).collect();
    survivors.sort_by(|a, b| cmp_vec(a, b));
    let mut out = hrep_from_vrep(&survivors, opts)?;
    out.sort_vertices();
    Ok(out)
}

/// `p` intersected with `h`, by one double-description step on the V-representation.
pub fn intersect_halfspace<F: Scalar>(
    p: &Polytope<F>,
    h: &Halfspace<F>,
    tol: f64,
) -> Result<Polytope<F>> {
    let verts = p
        .vertices
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("halfspace cut needs a V-representation".into()))?;
    let tol = if F::EXACT { 0.0 } else { tol };
    let slacks: Vec<F> = verts.iter().map(|v| h.slack(v)).collect();
    let tight: Vec<BTreeSet<usize>> =
        verts.iter().map(|v| p.tight_set(v, tol).into_iter().collect()).collect();
    let mut out_v: Vec<Vec<F>> = Vec::new();
    for (i, v) in verts.iter().enumerate() {
        if !slacks[i].is_neg(tol) {
            out_v.push(v.clone());
        }
    }
    for u in (0..verts.len()).filter(|&i| slacks[i].is_pos(tol)) {
        for w in (0..verts.len()).filter(|&i| slacks[i].is_neg(tol)) {
            let common: BTreeSet<usize> = tight[u].intersection(&tight[w]).copied().collect();
            let adjacent = (0..verts.len())
                .all(|z| z == u || z == w || !common.is_subset(&tight[z]));
            if !adjacent {
                continue;
            }
            // point on [u, w] where the slack vanishes
            let (su, sw) = (&slacks[u], &slacks[w]);
            let denom = su.sub(sw);
            let x: Vec<F> = verts[u]
                .iter()
                .zip(&verts[w])
                .map(|(a, b)| su.mul(b).sub(&sw.mul(a)).div(&denom))
                .collect();
            if !out_v.iter().any(|y| same_vec(y, &x, tol.max(if F::EXACT { 0.0 } else { 1e-12 }))) {
                out_v.push(x);
            }
        }
    }
    let mut ineq = p.ineq.clone();
    ineq.push(h.clone());
    let mut out = Polytope { dim: p.dim, ineq, eq: p.eq.clone(), vertices: Some(out_v) };
    out.sort_vertices();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusExtremes {
    /// Distance from the center to the nearest facet within the affine hull.
    pub inradius: f64,
    /// Distance from the center to the farthest vertex.
    pub circumradius: f64,
}

/// Inradius (nearest facet) and circumradius (farthest vertex) about `center`,
/// Euclidean and measured inside the affine hull given by the equalities.
pub fn radius_extremes<F: Scalar>(p: &Polytope<F>, center: &[f64]) -> Result<RadiusExtremes> {
    let q = p.to_f64();
    if !q.contains(center, 1e-12) {
        return Err(Error::ContractViolation("center lies outside the polytope".into()));
    }
    // orthonormal basis of the equality normals
    let mut normals: Vec<Vec<f64>> = Vec::new();
    for e in &q.eq {
        let mut v = e.a.clone();
        for n in &normals {
            let c: f64 = v.iter().zip(n).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(n).for_each(|(a, b)| *a -= c * b);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            normals.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    let mut inradius = f64::INFINITY;
    for h in &q.ineq {
        let mut a = h.a.clone();
        for n in &normals {
            let c: f64 = a.iter().zip(n).map(|(x, y)| x * y).sum();
            a.iter_mut().zip(n).for_each(|(x, y)| *x -= c * y);
        }
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        inradius = inradius.min(h.slack(center) / norm);
    }
    let circumradius = q
        .vertices()
        .iter()
        .map(|v| v.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    Ok(RadiusExtremes { inradius, circumradius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn chamber_vertices() {
        let w: Polytope<Rational> = weyl_chamber(3).unwrap();
        let q = Rational::from_ratio;
        assert_eq!(
            w.vertices(),
            &[
                vec![q(1, 1), q(0, 1), q(0, 1)],
                vec![q(1, 2), q(1, 2), q(0, 1)],
                vec![q(1, 3), q(1, 3), q(1, 3)]
            ]
        );
        for v in w.vertices() {
            assert!(w.contains(v, 0.0));
        }
        assert!(weyl_chamber::<f64>(1).is_err());
    }

    #[test]
    fn multiset_permutations() {
        let p = distinct_permutations(&[1.0, 0.0, 0.0], 1e-12).unwrap();
        assert_eq!(p, vec![vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]]);
        assert_eq!(distinct_permutations(&[0.1, 0.2, 0.3, 0.4], 1e-12).unwrap().len(), 24);
        let seven: Vec<f64> = (0..7).map(|i| i as f64).collect();
        assert!(matches!(distinct_permutations(&seven, 1e-12), Err(Error::Resource(_))));
    }

    #[test]
    fn qutrit_awp_cut() {
        let w: Polytope<Rational> = weyl_chamber(3).unwrap();
        let q = Rational::from_ratio;
        // lambda_1 <= 1/2
        let h = Halfspace::new(vec![q(-1, 1), q(0, 1), q(0, 1)], q(-1, 2));
        let cut = intersect_halfspace(&w, &h, 0.0).unwrap();
        assert_eq!(
            cut.vertices(),
            &[
                vec![q(1, 3), q(1, 3), q(1, 3)],
                vec![q(1, 2), q(1, 4), q(1, 4)],
                vec![q(1, 2), q(1, 2), q(0, 1)],
            ]
        );
        // a redundant cut changes nothing
        let r = Halfspace::new(vec![q(1, 1), q(0, 1), q(0, 1)], q(0, 1));
        let mut sorted = w.clone();
        sorted.sort_vertices();
        assert_eq!(intersect_halfspace(&w, &r, 0.0).unwrap().vertices(), sorted.vertices());
    }

    #[test]
    fn closure_of_uniform_point_is_itself() {
        let p = Polytope {
            dim: 3,
            ineq: vec![],
            eq: vec![],
            vertices: Some(vec![vec![1.0 / 3.0; 3]]),
        };
        let c = permutation_closure(&p, &DdOptions::default()).unwrap();
        assert_eq!(c.vertex_count(), 1);
    }

    #[test]
    fn closure_of_qutrit_awp_chamber_is_a_triangle() {
        let w: Polytope<Rational> = weyl_chamber(3).unwrap();
        let q = Rational::from_ratio;
        let h = Halfspace::new(vec![q(-1, 1), q(0, 1), q(0, 1)], q(-1, 2));
        let cut = intersect_halfspace(&w, &h, 0.0).unwrap();
        let c = permutation_closure(&cut, &DdOptions::default()).unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.facet_count(), 3);
        assert!(c.vertices().iter().all(|v| sorted_key(v) == vec![q(0, 1), q(1, 2), q(1, 2)]));
    }

    #[test]
    fn unit_cube_radii() {
        let mut ineq = Vec::new();
        for i in 0..3 {
            let mut a = vec![0.0; 3];
            a[i] = 1.0;
            ineq.push(Halfspace::new(a.clone(), -1.0));
            ineq.push(Halfspace::new(a.iter().map(|x| -x).collect(), -1.0));
        }
        let mut p = Polytope::from_h(3, ineq, vec![]);
        p.vertices = Some(
            (0..8)
                .map(|m| (0..3).map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 }).collect())
                .collect(),
        );
        let r = radius_extremes(&p, &[0.0; 3]).unwrap();
        assert!((r.inradius - 1.0).abs() < 1e-12);
        assert!((r.circumradius - 3f64.sqrt()).abs() < 1e-12);
        assert!(matches!(radius_extremes(&p, &[2.0, 0.0, 0.0]), Err(Error::ContractViolation(_))));
    }
}
