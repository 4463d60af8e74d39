//! Number types shared by the polytope engine and the LP solver.
//!
//! Two implementations exist: `f64` with an explicit tolerance on every sign
//! decision, and [`Rational`] (arbitrary precision) where the tolerance is
//! ignored and all comparisons are exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Sign, with values inside `[-tol, tol]` reported as zero for inexact types.
    fn sign(&self, tol: f64) -> Ordering;
    fn to_f64(&self) -> f64;
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Rescale a ray by a positive factor into a canonical representative:
    /// primitive integers for exact types, unit max-norm for floats.
    fn normalize_ray(v: &mut [Self]);

    /// Serialize as a JSON value (`"p/q"` strings for exact types).
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;

    fn is_zero_tol(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Equal
    }
    fn is_pos(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Greater
    }
    fn is_neg(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Less
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero_tol(0.0) || y.is_zero_tol(0.0) {
            continue;
        }
        acc = acc.add(&x.mul(y));
    }
    acc
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self, tol: f64) -> Ordering {
        if *self > tol {
            Ordering::Greater
        } else if *self < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn normalize_ray(v: &mut [Self]) {
        let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if m > 0.0 {
            for x in v.iter_mut() {
                *x /= m;
            }
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Input(format!("not a float: {n}"))),
            serde_json::Value::String(s) => parse_rational(s).map(|r| Scalar::to_f64(&r)),
            other => Err(Error::Input(format!("expected number, got {other}"))),
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self, _tol: f64) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn normalize_ray(v: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in v.iter() {
            if !x.is_zero() {
                lcm = lcm.lcm(x.denom());
            }
        }
        let mut g = BigInt::zero();
        for x in v.iter() {
            if !x.is_zero() {
                let n = x.numer() * (&lcm / x.denom());
                g = g.gcd(&n);
            }
        }
        if g.is_zero() {
            return;
        }
        for x in v.iter_mut() {
            if !x.is_zero() {
                let n = x.numer() * (&lcm / x.denom()) / &g;
                *x = Rational::from_integer(n);
            }
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(<Rational as Scalar>::from_i64)
                .ok_or_else(|| Error::Input(format!("non-integer number {n} in exact mode"))),
            other => Err(Error::Input(format!("expected rational, got {other}"))),
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Input(format!("malformed rational literal {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Exact rank of a row set over the rationals, or tolerance-aware rank for
/// floats (column-pivoted elimination, pivots below `tol` treated as zero).
pub fn rank<F: Scalar>(rows: &[Vec<F>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // partial pivoting: largest magnitude for floats, first nonzero for exact
        let mut piv = None;
        let mut best = 0.0;
        for (i, row) in m.iter().enumerate().skip(r) {
            if row[c].is_zero_tol(tol) {
                continue;
            }
            if F::EXACT {
                piv = Some(i);
                break;
            }
            let a = row[c].abs_f64();
            if a > best {
                best = a;
                piv = Some(i);
            }
        }
        let Some(p) = piv else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero_tol(0.0) {
                continue;
            }
            let f = m[i][c].div(&pivot);
            for j in c..ncols {
                let t = m[r][j].mul(&f);
                m[i][j] = m[i][j].sub(&t);
            }
        }
        r += 1;
    }
    r
}

/// Solve a square system `a x = b`; `None` when singular.
pub fn solve_square<F: Scalar>(a: &[Vec<F>], b: &[F], tol: f64) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let mut piv = None;
        let mut best = 0.0;
        for (i, row) in m.iter().enumerate().skip(c) {
            if row[c].is_zero_tol(tol) {
                continue;
            }
            if F::EXACT {
                piv = Some(i);
                break;
            }
            let v = row[c].abs_f64();
            if v > best {
                best = v;
                piv = Some(i);
            }
        }
        let p = piv?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for j in c..=n {
            m[c][j] = m[c][j].div(&pivot);
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero_tol(0.0) {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let t = m[c][j].mul(&f);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}
