//! Double description: extreme rays of a pointed cone `{x : A x >= 0}`.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{dot, Scalar};

/// Fixed-width bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    pub(crate) fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Order in which the remaining constraints are inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InsertionOrder {
    /// As given.
    Given,
    /// At each step, the constraint producing the fewest candidate pairs
    /// `|P| * |N|` (ties to the lowest index).
    #[default]
    MinPairs,
}

#[derive(Clone, Copy, Debug)]
pub struct DdProgress {
    pub processed: usize,
    pub total: usize,
    pub rays: usize,
}

pub struct DdOptions<'a> {
    pub order: InsertionOrder,
    /// Zero band for sign decisions in floating mode (ignored when exact).
    pub tol: f64,
    pub progress: Option<&'a (dyn Fn(DdProgress) + Sync)>,
}

impl Default for DdOptions<'_> {
    fn default() -> Self {
        DdOptions { order: InsertionOrder::default(), tol: 1e-9, progress: None }
    }
}

#[derive(Clone, Debug)]
pub struct Ray<F> {
    pub coords: Vec<F>,
    pub(crate) zeros: Bits,
}

impl<F> Ray<F> {
    /// Indices of constraints vanishing on the ray.
    pub fn zero_set(&self) -> Vec<usize> {
        self.zeros.ones().collect()
    }
}

fn tol_of<F: Scalar>(t: f64) -> f64 {
    if F::EXACT {
        0.0
    } else {
        t
    }
}

/// Greedily chooses `dim` linearly independent rows, scanning in order.
fn independent_rows<F: Scalar>(rows: &[Vec<F>], dim: usize, tol: f64) -> Vec<usize> {
    // maintain a reduced basis in echelon form with its pivot columns
    let mut reduced: Vec<(usize, Vec<F>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        for (pc, b) in &reduced {
            if v[*pc].is_zero_tol(0.0) {
                continue;
            }
            let f = v[*pc].div(&b[*pc]);
            for j in 0..dim {
                v[j] = v[j].sub(&f.mul(&b[j]));
            }
        }
        let piv = if F::EXACT {
            (0..dim).find(|&j| !v[j].is_zero_tol(0.0))
        } else {
            let scale = r.iter().map(|x| x.abs_f64()).fold(0.0, f64::max).max(1.0);
            let (j, m) = (0..dim)
                .map(|j| (j, v[j].abs_f64()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            (m > tol * scale * 1e3).then_some(j)
        };
        if let Some(pc) = piv {
            reduced.push((pc, v));
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    chosen
}

fn zero_set_of<F: Scalar>(coords: &[F], rows: &[Vec<F>], processed: &[usize], m: usize, tol: f64) -> Bits {
    let mut z = Bits::new(m);
    for &i in processed {
        if dot(&rows[i], coords).is_zero_tol(tol) {
            z.set(i);
        }
    }
    z
}

/// Extreme rays of `{x : rows[i] . x >= 0 for all i}`, which must be pointed.
///
/// Returns `Error::Unbounded` when the rows do not have full column rank
/// (the cone contains a line).
pub fn cone_extreme_rays<F: Scalar>(rows: &[Vec<F>], opts: &DdOptions<'_>) -> Result<Vec<Ray<F>>> {
    let m = rows.len();
    let Some(dim) = rows.first().map(|r| r.len()) else {
        return Err(Error::Unbounded("no constraints".into()));
    };
    let tol = tol_of::<F>(opts.tol);
    let basis = independent_rows(rows, dim, tol);
    if basis.len() < dim {
        return Err(Error::Unbounded(format!(
            "constraint matrix has rank {} < {dim}; the cone is not pointed",
            basis.len()
        )));
    }
    // initial simplicial cone: columns of the inverse of A_B
    let a_b: Vec<Vec<F>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let mut rays: Vec<Ray<F>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![F::zero(); dim];
        e[j] = F::one();
        let mut coords = crate::scalar::solve_square(&a_b, &e, tol)
            .ok_or_else(|| Error::Tolerance("initial basis became singular".into()))?;
        F::normalize_ray(&mut coords);
        let zeros = zero_set_of(&coords, rows, &basis, m, tol);
        rays.push(Ray { coords, zeros });
    }
    let mut processed = basis.clone();
    let mut remaining: Vec<usize> = (0..m).filter(|i| !basis.contains(i)).collect();
    let report = |rays: usize, processed: usize| {
        if let Some(cb) = opts.progress {
            cb(DdProgress { processed, total: m, rays });
        }
    };
    report(rays.len(), processed.len());

    while !remaining.is_empty() {
        let pick = match opts.order {
            InsertionOrder::Given => 0,
            InsertionOrder::MinPairs => {
                let costs: Vec<u64> = remaining
                    .par_iter()
                    .map(|&i| {
                        let (mut p, mut n) = (0u64, 0u64);
                        for r in &rays {
                            match dot(&rows[i], &r.coords).sign(tol) {
                                Ordering::Greater => p += 1,
                                Ordering::Less => n += 1,
                                Ordering::Equal => {}
                            }
                        }
                        p * n
                    })
                    .collect();
                (0..remaining.len()).min_by_key(|&k| (costs[k], k)).unwrap()
            }
        };
        let row_idx = remaining.remove(pick);
        let row = &rows[row_idx];
        let vals: Vec<F> = rays.par_iter().map(|r| dot(row, &r.coords)).collect();
        let signs: Vec<Ordering> = vals.iter().map(|v| v.sign(tol)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i] == Ordering::Greater).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i] == Ordering::Less).collect();

        let mut new_rays: Vec<Ray<F>> = if neg.is_empty() || pos.is_empty() {
            Vec::new()
        } else {
            let threshold = dim.saturating_sub(2) as u32;
            let rays_ref = &rays;
            let per_pos: Vec<Vec<Ray<F>>> = pos
                .par_iter()
                .map(|&p| {
                    let mut out = Vec::new();
                    for &n in &neg {
                        let inter = rays_ref[p].zeros.and(&rays_ref[n].zeros);
                        if inter.count() < threshold {
                            continue;
                        }
                        let blocked = rays_ref.iter().enumerate().any(|(k, r)| {
                            k != p && k != n && inter.is_subset_of(&r.zeros)
                        });
                        if blocked {
                            continue;
                        }
                        // (a.p) n - (a.n) p lies on the hyperplane
                        let (vp, vn) = (&vals[p], &vals[n]);
                        let mut coords: Vec<F> = rays_ref[n]
                            .coords
                            .iter()
                            .zip(&rays_ref[p].coords)
                            .map(|(cn, cp)| vp.mul(cn).sub(&vn.mul(cp)))
                            .collect();
                        F::normalize_ray(&mut coords);
                        let mut zeros = inter;
                        zeros.set(row_idx);
                        out.push(Ray { coords, zeros });
                    }
                    out
                })
                .collect();
            per_pos.into_iter().flatten().collect()
        };
        if !F::EXACT {
            for r in &new_rays {
                if r.coords.iter().all(|c| c.abs_f64() < tol) {
                    return Err(Error::Tolerance(format!(
                        "degenerate ray while inserting constraint {row_idx}; \
                         tight set {:?}",
                        r.zero_set()
                    )));
                }
            }
        }
        let mut next: Vec<Ray<F>> = Vec::with_capacity(rays.len() - neg.len() + new_rays.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            match signs[i] {
                Ordering::Greater => next.push(r),
                Ordering::Equal => {
                    r.zeros.set(row_idx);
                    next.push(r);
                }
                Ordering::Less => {}
            }
        }
        next.append(&mut new_rays);
        rays = next;
        processed.push(row_idx);
        report(rays.len(), processed.len());
    }
    if !F::EXACT {
        // recompute zero sets against all rows and drop duplicates in floating mode
        let all: Vec<usize> = (0..m).collect();
        for r in rays.iter_mut() {
            r.zeros = zero_set_of(&r.coords, rows, &all, m, tol);
        }
        let mut seen = std::collections::HashSet::new();
        rays.retain(|r| seen.insert(r.zeros.clone()));
    }
    Ok(rays)
}
