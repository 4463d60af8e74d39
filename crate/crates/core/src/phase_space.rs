//! Arithmetic on the finite symplectic phase space `Z_d^{2n}` for prime `d`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

pub fn check_prime(d: u32) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&d) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "d = {d} is not a supported prime (expected one of {SUPPORTED_PRIMES:?})"
        )))
    }
}

/// Hilbert-space dimension `d^n`.
pub fn hilbert_dim(d: u32, n: usize) -> usize {
    (d as usize).pow(n as u32)
}

/// An element `u = (u_z, u_x)` of `Z_d^{2n}`.
///
/// Coordinates are stored as `[z_1..z_n, x_1..x_n]`, always reduced mod `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymplecticVector {
    d: u32,
    n: usize,
    coords: Vec<u32>,
}

impl fmt::Debug for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(z={:?}, x={:?})", self.z(), self.x())
    }
}

impl SymplecticVector {
    pub fn new(d: u32, z: &[u32], x: &[u32]) -> Result<Self> {
        if z.len() != x.len() {
            return Err(Error::Dimension(format!(
                "z has {} entries but x has {}",
                z.len(),
                x.len()
            )));
        }
        let coords = z.iter().chain(x).map(|&c| c % d).collect();
        Ok(SymplecticVector { d, n: z.len(), coords })
    }

    pub fn zero(d: u32, n: usize) -> Self {
        SymplecticVector { d, n, coords: vec![0; 2 * n] }
    }

    /// Vector whose coordinates are the base-`d` digits of `index`
    /// (`z_1` least significant, then the rest of `z`, then `x`).
    pub fn from_index(d: u32, n: usize, mut index: usize) -> Self {
        let mut coords = vec![0; 2 * n];
        for c in coords.iter_mut() {
            *c = (index % d as usize) as u32;
            index /= d as usize;
        }
        SymplecticVector { d, n, coords }
    }

    pub fn index(&self) -> usize {
        self.coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.d as usize + c as usize)
    }

    /// All `d^{2n}` vectors in index order.
    pub fn all(d: u32, n: usize) -> impl Iterator<Item = SymplecticVector> {
        let total = (d as usize).pow(2 * n as u32);
        (0..total).map(move |i| SymplecticVector::from_index(d, n, i))
    }

    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn z(&self) -> &[u32] {
        &self.coords[..self.n]
    }
    pub fn x(&self) -> &[u32] {
        &self.coords[self.n..]
    }
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::Dimension(format!(
                "vectors live in Z_{}^{{2*{}}} and Z_{}^{{2*{}}}",
                self.d, self.n, other.d, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.d == other.d && self.n == other.n);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) % self.d)
            .collect();
        SymplecticVector { d: self.d, n: self.n, coords }
    }

    pub fn scale(&self, k: u32) -> Self {
        let coords = self.coords.iter().map(|a| (a * (k % self.d)) % self.d).collect();
        SymplecticVector { d: self.d, n: self.n, coords }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.d - 1)
    }

    /// `[u,v] = u_z . v_x - u_x . v_z mod d`.
    pub fn symplectic_form(&self, other: &Self) -> Result<u32> {
        self.check_same(other)?;
        Ok(self.form_unchecked(other))
    }

    pub(crate) fn form_unchecked(&self, other: &Self) -> u32 {
        let d = self.d as u64;
        let mut acc: u64 = 0;
        for k in 0..self.n {
            acc += self.coords[k] as u64 * other.coords[self.n + k] as u64;
            acc += (d - self.coords[self.n + k] as u64) * other.coords[k] as u64;
        }
        (acc % d) as u32
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.form_unchecked(other) == 0
    }

    /// The `beta` cocycle: `T_u T_v = omega^{-beta(u,v)} T_{u+v}` for commuting `u, v`.
    ///
    /// Computed from the exact monomial phase of the generalized Pauli
    /// operators under the `tau = (-1)^d e^{i pi/d}` convention. For odd `d`
    /// this is identically zero.
    pub fn beta(&self, other: &Self) -> Result<u32> {
        self.check_same(other)?;
        if !self.commutes_with(other) {
            return Err(Error::ContractViolation(format!(
                "beta is only defined on commuting pairs; [{self:?}, {other:?}] != 0"
            )));
        }
        Ok(beta_unchecked(self, other))
    }
}

/// Exponent of `zeta = e^{i pi/d}` (an element of `Z_{2d}`) in `tau`.
pub(crate) fn tau_exponent(d: u32) -> u32 {
    (d * d + 1) % (2 * d)
}

/// Phase exponent `phi` with `T_u |j> = zeta^{phi} |j + u_x>`, in `Z_{2d}`.
pub(crate) fn monomial_phase(u: &SymplecticVector, j: &[u32]) -> u32 {
    let d = u.d;
    let m = 2 * d;
    let zx: u32 = u.z().iter().zip(u.x()).map(|(a, b)| a * b).sum();
    let mut phase = (m - (tau_exponent(d) * zx) % m) % m;
    for k in 0..u.n {
        let target = (j[k] + u.x()[k]) % d;
        phase = (phase + 2 * u.z()[k] * target) % m;
    }
    phase
}

pub(crate) fn beta_unchecked(u: &SymplecticVector, v: &SymplecticVector) -> u32 {
    let d = u.d;
    let m = 2 * d;
    let origin = vec![0u32; u.n];
    let w = u.add(v);
    let lhs = (monomial_phase(u, v.x()) + monomial_phase(v, &origin)) % m;
    let rhs = monomial_phase(&w, &origin);
    let delta = (lhs + m - rhs) % m;
    debug_assert!(delta.is_multiple_of(2), "commuting Paulis compose up to a power of omega");
    // omega^{-beta} = zeta^{delta}  =>  -2 beta = delta (mod 2d)
    (d - (delta / 2) % d) % d
}

/// An isotropic subspace of `Z_d^{2n}`, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsotropicSubspace {
    d: u32,
    n: usize,
    basis: Vec<SymplecticVector>,
}

impl fmt::Debug for IsotropicSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.basis).finish()
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Reduced row echelon form over `Z_d`; zero rows dropped.
fn rref(d: u32, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = inv_mod(m[r][c], d);
        for v in m[r].iter_mut() {
            *v = (*v * inv) % d;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    m[i][j] = (m[i][j] + d * d - f * m[r][j] % d) % d;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

impl IsotropicSubspace {
    /// The trivial subspace `{0}`.
    pub fn trivial(d: u32, n: usize) -> Self {
        IsotropicSubspace { d, n, basis: Vec::new() }
    }

    /// Span of `generators`; fails if the span is not isotropic.
    pub fn span(d: u32, n: usize, generators: &[SymplecticVector]) -> Result<Self> {
        for g in generators {
            if g.d != d || g.n != n {
                return Err(Error::Dimension("generator outside Z_d^{2n}".into()));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::ContractViolation(format!(
                        "generators {a:?} and {b:?} do not commute"
                    )));
                }
            }
        }
        let rows: Vec<Vec<u32>> = generators.iter().map(|g| g.coords.clone()).collect();
        let basis = rref(d, &rows)
            .into_iter()
            .map(|coords| SymplecticVector { d, n, coords })
            .collect();
        Ok(IsotropicSubspace { d, n, basis })
    }

    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[SymplecticVector] {
        &self.basis
    }
    pub fn is_lagrangian(&self) -> bool {
        self.dim() == self.n
    }
    pub fn size(&self) -> usize {
        (self.d as usize).pow(self.dim() as u32)
    }

    /// Every element, as `(coefficients over the basis, vector)`.
    pub fn elements_with_coeffs(&self) -> Vec<(Vec<u32>, SymplecticVector)> {
        let k = self.dim();
        let mut out = Vec::with_capacity(self.size());
        for idx in 0..self.size() {
            let mut c = vec![0u32; k];
            let mut t = idx;
            for ci in c.iter_mut() {
                *ci = (t % self.d as usize) as u32;
                t /= self.d as usize;
            }
            let mut v = SymplecticVector::zero(self.d, self.n);
            for (ci, b) in c.iter().zip(&self.basis) {
                v = v.add(&b.scale(*ci));
            }
            out.push((c, v));
        }
        out
    }

    pub fn elements(&self) -> Vec<SymplecticVector> {
        self.elements_with_coeffs().into_iter().map(|(_, v)| v).collect()
    }

    pub fn contains(&self, v: &SymplecticVector) -> bool {
        let mut rows: Vec<Vec<u32>> = self.basis.iter().map(|b| b.coords.clone()).collect();
        rows.push(v.coords.clone());
        rref(self.d, &rows).len() == self.dim()
    }

    /// Symplectic complement `I^perp` as a list of vectors.
    pub fn perp_elements(&self) -> Vec<SymplecticVector> {
        SymplecticVector::all(self.d, self.n)
            .filter(|v| self.basis.iter().all(|b| b.commutes_with(v)))
            .collect()
    }
}

/// Number of isotropic subspaces of dimension `k` in `Z_d^{2n}`.
pub fn isotropic_count(d: u32, n: usize, k: usize) -> u128 {
    let d = d as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= d.pow(2 * (n - i) as u32) - 1;
        den *= d.pow(i as u32 + 1) - 1;
    }
    num / den
}

/// Upper bound on the number of subspaces `enumerate_isotropic` will build.
pub const ISOTROPIC_ENUMERATION_LIMIT: u128 = 250_000;

/// All isotropic subspaces of the given dimension, each once, in canonical order.
pub fn enumerate_isotropic(d: u32, n: usize, dim: usize) -> Result<Vec<IsotropicSubspace>> {
    check_prime(d)?;
    if dim > n {
        return Err(Error::InvalidArgument(format!(
            "isotropic subspaces of Z_{d}^{{2*{n}}} have dimension at most {n}, got {dim}"
        )));
    }
    if hilbert_dim(d, n) > 128 {
        return Err(Error::Resource(format!("d^n = {} exceeds 128", hilbert_dim(d, n))));
    }
    let work: u128 = (0..=dim).map(|k| isotropic_count(d, n, k)).sum();
    if work > ISOTROPIC_ENUMERATION_LIMIT {
        return Err(Error::Resource(format!(
            "{work} isotropic subspaces to build for (d={d}, n={n}, dim={dim})"
        )));
    }
    let mut layer: BTreeSet<IsotropicSubspace> = BTreeSet::new();
    layer.insert(IsotropicSubspace::trivial(d, n));
    for _ in 0..dim {
        let mut next: HashSet<IsotropicSubspace> = HashSet::new();
        for sub in &layer {
            for v in sub.perp_elements() {
                if sub.contains(&v) {
                    continue;
                }
                let mut gens = sub.basis.clone();
                gens.push(v);
                next.insert(IsotropicSubspace::span(d, n, &gens)?);
            }
        }
        layer = next.into_iter().collect();
    }
    Ok(layer.into_iter().collect())
}
