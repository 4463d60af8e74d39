//! Randomized invariants. `criterion_suites` gathers the named suites; the
//! remaining invariants are standalone tests.

use std::f64::consts::PI;

use astab::classifier::{
    astab_test, awp_test, classify_operator, classify_spectrum, sample_lambda_vertices, vertex_spectra, wp_test,
};
use astab::classifier::verdict::awp_top_sum;
use astab::linalg::{eigh, haar_unitary, CMatrix};
use astab::lp::{convex_hull_contains, LinearProgram, LpOutcome, Relation, Sense};
use astab::operators::{
    enumerate_cnc_qubits, is_lambda_vertex, pauli_word, stabilizer_projectors, wigner_function, HermitianOperator,
    OperatorLabel,
};
use astab::phase_space::SymplecticVector;
use astab::polytope::{double_description, hrep_from_vrep, DdOptions};
use astab::scalar::{Rational, Scalar};
use astab::spectral::{kyfan_min_pairing, majorizes, purity, Spectrum};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::common::{random_density, serial, orbit_row, ORBIT_NORMS};

const CASES: u32 = 256;

fn config(seed: u64, cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        max_global_rejects: 50_000,
        ..Config::default()
    }
}

fn run<S: Strategy>(
    seed: u64,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config(seed, cases)).run(&strategy, test).map_err(|e| e.to_string())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dim_of(d: u32, n: usize) -> usize {
    (d as usize).pow(n as u32)
}

/// `V diag(values) V^dagger` for a Haar `V`.
fn random_operator(d: u32, n: usize, values: &[f64], r: &mut ChaCha8Rng) -> HermitianOperator {
    let v = haar_unitary(values.len(), r);
    let m = CMatrix::from_real_diagonal(values).conjugate_by(&v);
    HermitianOperator::new(d, n, OperatorLabel::Generic, m).unwrap()
}

/// Uniform spectrum moved toward a random spectrum by a random amount.
fn spread_spectrum(dim: usize, r: &mut ChaCha8Rng) -> Vec<f64> {
    let power = r.random_range(1.0..4.0);
    let p = random_density(r, dim, power);
    let w: f64 = r.random();
    p.iter().map(|x| (1.0 - w) / dim as f64 + w * x).collect()
}

/// `Tr(U diag(rho) U^dagger diag(a))`.
fn diagonal_pairing(u: &CMatrix, rho: &[f64], a: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, ai) in a.iter().enumerate() {
        for (j, rj) in rho.iter().enumerate() {
            s += u[(i, j)].norm_sqr() * rj * ai;
        }
    }
    s
}

fn kyfan_lower_bound() -> Result<(), String> {
    run(101, CASES, (2usize..=8, any::<u64>()), |(dim, seed)| {
        let mut r = rng(seed);
        let rho = random_density(&mut r, dim, 1.5);
        let a: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..2.0)).collect();
        let kf = kyfan_min_pairing(&Spectrum::new(rho.clone()), &Spectrum::new(a.clone())).unwrap();
        for _ in 0..50 {
            let v = diagonal_pairing(&haar_unitary(dim, &mut r), &rho, &a);
            prop_assert!(v >= kf - 1e-10, "pairing {v} below Ky Fan bound {kf}");
        }
        Ok(())
    })
}

fn kyfan_lower_bound_dense() -> Result<(), String> {
    let mut r = rng(102);
    for dim in 2..=8 {
        let rho = random_density(&mut r, dim, 2.0);
        let a: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..2.0)).collect();
        let kf = kyfan_min_pairing(&Spectrum::new(rho.clone()), &Spectrum::new(a.clone())).unwrap();
        for _ in 0..10_000 {
            let v = diagonal_pairing(&haar_unitary(dim, &mut r), &rho, &a);
            if v < kf - 1e-10 {
                return Err(format!("dim {dim}: pairing {v} below Ky Fan bound {kf}"));
            }
        }
    }
    Ok(())
}

fn kyfan_equality_witness() -> Result<(), String> {
    run(103, CASES, (2usize..=8, any::<u64>()), |(dim, seed)| {
        let mut r = rng(seed);
        let rho_vals = random_density(&mut r, dim, 1.5);
        let a_vals: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..2.0)).collect();
        let rho = CMatrix::from_real_diagonal(&rho_vals).conjugate_by(&haar_unitary(dim, &mut r));
        let a = CMatrix::from_real_diagonal(&a_vals).conjugate_by(&haar_unitary(dim, &mut r));
        let er = eigh(&rho, 1e-9).unwrap();
        let ea = eigh(&a, 1e-9).unwrap();
        // largest eigenvector of rho onto the smallest of A, and so on
        let rows: Vec<Vec<Complex64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).map(|k| ea.vectors[(i, dim - 1 - k)] * er.vectors[(j, k)].conj()).sum())
                    .collect()
            })
            .collect();
        let u = CMatrix::from_rows(&rows);
        let value = rho.conjugate_by(&u).trace_product(&a).re;
        let kf = kyfan_min_pairing(&Spectrum::new(rho_vals), &Spectrum::new(a_vals)).unwrap();
        prop_assert!((value - kf).abs() <= 1e-10, "witness gives {value}, bound {kf}");
        Ok(())
    })
}

const INVARIANCE_CASES: [(u32, usize); 4] = [(2, 1), (2, 2), (3, 1), (5, 1)];

fn verdict_unitary_invariance() -> Result<(), String> {
    run(104, CASES, (0..INVARIANCE_CASES.len(), any::<u64>()), |(k, seed)| {
        let (d, n) = INVARIANCE_CASES[k];
        let mut r = rng(seed);
        let s = spread_spectrum(dim_of(d, n), &mut r);
        let spec = Spectrum::new(s.clone());
        let vs = vertex_spectra(d, n).unwrap().spectra();
        let mut margin = vs.iter().map(|a| kyfan_min_pairing(&spec, a).unwrap().abs()).fold(f64::INFINITY, f64::min);
        if d != 2 {
            margin = margin.min((awp_top_sum(&spec) - 0.5).abs());
        }
        prop_assume!(margin > 1e-8);
        let by_spectrum = classify_spectrum(d, n, &spec).unwrap();
        let rho = random_operator(d, n, &s, &mut r);
        let by_operator = classify_operator(&rho).unwrap();
        let dev = by_spectrum
            .spectrum
            .iter()
            .zip(&by_operator.spectrum)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prop_assert!(dev <= 1e-9, "spectra differ by {dev}");
        prop_assert_eq!(by_spectrum.verdicts.astab, by_operator.verdicts.astab);
        prop_assert_eq!(by_spectrum.verdicts.awp, by_operator.verdicts.awp);
        Ok(())
    })
}

const PURITY_CASES: [(u32, usize); 8] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (7, 1)];

fn purity_sufficiency() -> Result<(), String> {
    run(105, CASES, (0..PURITY_CASES.len(), any::<u64>(), 0.0..=1.0f64), |(k, seed, u)| {
        let (d, n) = PURITY_CASES[k];
        let dim = dim_of(d, n);
        let dd = dim as f64;
        let threshold = if d == 2 { 1.0 / (dd - 0.5) } else { 1.0 / (dd - 1.0 / dd) };
        let mut r = rng(seed);
        let mut x: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..1.0)).collect();
        let mean = x.iter().sum::<f64>() / dd;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        let t = ((threshold - 1.0 / dd) * u / norm2).sqrt();
        let s = Spectrum::new(x.iter().map(|v| 1.0 / dd + t * v).collect());
        prop_assert!(purity(&s) <= threshold + 1e-15);
        let vs = vertex_spectra(d, n).unwrap().spectra();
        prop_assert!(astab_test(&s, &vs).unwrap(), "purity {} fails ASTAB at ({d},{n})", purity(&s));
        if d != 2 {
            prop_assert!(awp_test(&s).unwrap(), "purity {} fails AWP at ({d},{n})", purity(&s));
        }
        Ok(())
    })
}

const ODD_CASES: [(u32, usize); 5] = [(3, 1), (3, 2), (3, 3), (5, 1), (7, 1)];

fn awp_purity_necessity() -> Result<(), String> {
    run(106, CASES, (0..ODD_CASES.len(), any::<u64>(), 1.0..4.0f64), |(k, seed, power)| {
        let (d, n) = ODD_CASES[k];
        let dim = dim_of(d, n);
        let s = Spectrum::new(random_density(&mut rng(seed), dim, power));
        prop_assume!(purity(&s) > 1.0 / (dim as f64 - 1.0) + 1e-9);
        prop_assert!(!awp_test(&s).unwrap(), "purity {} passes AWP", purity(&s));
        Ok(())
    })
}

fn wp_awp_consistency() -> Result<(), String> {
    let cases = [(3u32, 1usize), (3, 2), (5, 1)];
    run(107, CASES, (0..cases.len(), any::<u64>(), 0.0..=1.0f64), |(k, seed, frac)| {
        let (d, n) = cases[k];
        let dim = dim_of(d, n);
        let mut r = rng(seed);
        // push toward a random spectrum as far as the AWP boundary allows, times `frac`
        let power = r.random_range(1.0..4.0);
        let p = random_density(&mut r, dim, power);
        let base = (dim - 1) as f64 / (2.0 * dim as f64);
        let top = awp_top_sum(&Spectrum::new(p.clone()));
        let w = if top <= 0.5 { 1.0 } else { (0.5 - base) / (top - base) } * frac;
        let s: Vec<f64> = p.iter().map(|x| (1.0 - w) / dim as f64 + w * x).collect();
        prop_assert!(awp_test(&Spectrum::new(s.clone())).unwrap());
        for _ in 0..100 {
            let rho = random_operator(d, n, &s, &mut r);
            prop_assert!(wp_test(&rho).unwrap(), "AWP spectrum {s:?} has a negative Wigner conjugate");
        }
        Ok(())
    })
}

fn wigner_round_trip() -> Result<(), String> {
    let cases = [(3u32, 1usize), (3, 2), (5, 1), (7, 1)];
    run(108, CASES, (0..cases.len(), any::<u64>()), |(k, seed)| {
        let (d, n) = cases[k];
        let mut r = rng(seed);
        let s = random_density(&mut r, dim_of(d, n), 2.0);
        let rho = random_operator(d, n, &s, &mut r);
        let w = wigner_function(&rho).unwrap();
        let err = w.reconstruct().unwrap().max_abs_diff(rho.matrix());
        prop_assert!(err <= 1e-10, "reconstruction error {err:e}");
        prop_assert!((w.total() - 1.0).abs() <= 1e-10);
        Ok(())
    })
}

pub fn criterion_suites() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("Ky Fan lower bound, dims 2-8, 256 cases x 50 unitaries", kyfan_lower_bound()),
        ("Ky Fan lower bound, dims 2-8, 10^4 unitaries each", kyfan_lower_bound_dense()),
        ("Ky Fan equality witness, dims 2-8", kyfan_equality_witness()),
        ("verdicts are unitarily invariant", verdict_unitary_invariance()),
        ("low purity implies ASTAB and AWP", purity_sufficiency()),
        ("high purity excludes AWP", awp_purity_necessity()),
        ("AWP spectra stay Wigner positive under 100 conjugations", wp_awp_consistency()),
        ("Wigner reconstruction round trip", wigner_round_trip()),
    ]
}

#[test]
fn prop_qutrit_astab_inside_awp() {
    let _g = serial();
    let vs = vertex_spectra(3, 1).unwrap().spectra();
    run(201, CASES, any::<u64>(), |seed| {
        let s = Spectrum::new(spread_spectrum(3, &mut rng(seed)));
        if astab_test(&s, &vs).unwrap() {
            prop_assert!(awp_test(&s).unwrap(), "{:?} is ASTAB but not AWP", s.values());
        }
        Ok(())
    })
    .unwrap();
    let half = Spectrum::new(vec![0.5, 0.5, 0.0]);
    assert!(awp_test(&half).unwrap());
    assert!(!astab_test(&half, &vs).unwrap());
}

/// `x` with the mass of positions `i, j` mixed by `t`.
fn t_transform(x: &[f64], i: usize, j: usize, t: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[i] = t * x[i] + (1.0 - t) * x[j];
    y[j] = (1.0 - t) * x[i] + t * x[j];
    y
}

#[test]
fn prop_majorization_is_a_preorder() {
    let _g = serial();
    run(202, CASES, (2usize..=8, any::<u64>()), |(dim, seed)| {
        let mut r = rng(seed);
        let a = random_density(&mut r, dim, 2.0);
        let mut b = a.clone();
        let mut c = a.clone();
        for _ in 0..3 {
            let (i, j) = (r.random_range(0..dim), r.random_range(0..dim));
            b = t_transform(&b, i, j, r.random());
        }
        c.clone_from(&b);
        for _ in 0..3 {
            let (i, j) = (r.random_range(0..dim), r.random_range(0..dim));
            c = t_transform(&c, i, j, r.random());
        }
        let (a, b, c) = (Spectrum::new(a), Spectrum::new(b), Spectrum::new(c));
        prop_assert!(majorizes(&a, &a).unwrap());
        prop_assert!(majorizes(&a, &b).unwrap() && majorizes(&b, &c).unwrap() && majorizes(&a, &c).unwrap());
        if majorizes(&b, &a).unwrap() {
            let dev = a.sorted_desc().iter().zip(b.sorted_desc()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            prop_assert!(dev < 1e-8, "mutual majorization with sorted gap {dev}");
        }
        Ok(())
    })
    .unwrap();
}

fn vector_strategy() -> impl Strategy<Value = (u32, usize, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=3).prop_flat_map(|(d, n)| {
        let v = prop::collection::vec(0..d, 2 * n);
        (Just(d), Just(n), v.clone(), v.clone(), v)
    })
}

fn sv(d: u32, n: usize, c: &[u32]) -> SymplecticVector {
    SymplecticVector::new(d, &c[..n], &c[n..]).unwrap()
}

#[test]
fn prop_symplectic_form_is_bilinear_and_alternating() {
    let _g = serial();
    run(203, CASES, vector_strategy(), |(d, n, a, b, c)| {
        let (u, v, w) = (sv(d, n, &a), sv(d, n, &b), sv(d, n, &c));
        let f = |x: &SymplecticVector, y: &SymplecticVector| x.symplectic_form(y).unwrap();
        prop_assert_eq!(f(&u.add(&v), &w), (f(&u, &w) + f(&v, &w)) % d);
        prop_assert_eq!(f(&u, &u), 0);
        prop_assert_eq!((f(&u, &v) + f(&v, &u)) % d, 0);
        prop_assert_eq!(f(&u.scale(3), &v), (3 * f(&u, &v)) % d);
        Ok(())
    })
    .unwrap();
}

#[test]
fn prop_beta_matches_pauli_products() {
    let _g = serial();
    let strategy = vector_strategy().prop_filter("d^n small", |(d, n, ..)| dim_of(*d, *n) <= 25);
    run(204, CASES, strategy, |(d, n, a, b, _)| {
        let (u, v) = (sv(d, n, &a), sv(d, n, &b));
        prop_assume!(u.commutes_with(&v));
        let beta = u.beta(&v).unwrap();
        if d != 2 {
            prop_assert_eq!(beta, 0);
        }
        let lhs = pauli_word(&u).matmul(&pauli_word(&v));
        let phase = Complex64::from_polar(1.0, -2.0 * PI * beta as f64 / d as f64);
        let rhs = pauli_word(&u.add(&v)).scale(phase);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12, "T_u T_v != omega^-beta T_(u+v)");
        Ok(())
    })
    .unwrap();
}

#[test]
fn prop_stabilizer_projectors_are_rank_one_with_quantized_overlaps() {
    let _g = serial();
    let cases: Vec<(u32, usize, Vec<CMatrix>)> = [(2u32, 1usize), (2, 2), (3, 1), (3, 2), (5, 1)]
        .iter()
        .map(|&(d, n)| (d, n, stabilizer_projectors(d, n).unwrap()))
        .collect();
    run(205, CASES, (0..cases.len(), any::<u64>()), |(k, seed)| {
        let (d, n, projs) = &cases[k];
        let mut r = rng(seed);
        let a = &projs[r.random_range(0..projs.len())];
        let b = &projs[r.random_range(0..projs.len())];
        prop_assert!(a.matmul(a).max_abs_diff(a) < 1e-12);
        prop_assert!((a.trace().re - 1.0).abs() < 1e-12);
        let overlap = a.trace_product(b).re;
        let allowed = std::iter::once(0.0).chain((0..=*n).map(|j| (*d as f64).powi(-(j as i32))));
        let hits = allowed.clone().any(|q| (overlap - q).abs() < 1e-12);
        prop_assert!(hits, "overlap {overlap} is not 0 or a power of 1/{d}");
        Ok(())
    })
    .unwrap();
}

#[test]
fn prop_cnc_operators_are_lambda_vertices() {
    let _g = serial();
    let projs = stabilizer_projectors(2, 2).unwrap();
    let ops: Vec<_> = (1..=2).flat_map(|m| enumerate_cnc_qubits(2, m).unwrap()).collect();
    run(206, CASES, 0..ops.len(), |i| {
        prop_assert!(is_lambda_vertex(&ops[i].operator(), &projs), "CNC operator {i} is not a Lambda vertex");
        Ok(())
    })
    .unwrap();
}

fn point_set_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4).prop_flat_map(|dim| prop::collection::vec(prop::collection::vec(-5i64..=5, dim), dim + 1..=9))
}

#[test]
fn prop_double_description_round_trip() {
    let _g = serial();
    run(207, CASES, point_set_strategy(), |pts| {
        let q: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().map(|&x| Rational::from_i64(x)).collect()).collect();
        let opts = DdOptions::default();
        let h = hrep_from_vrep(&q, &opts).unwrap();
        for p in &q {
            prop_assert!(h.contains(p, 0.0), "input point outside its own hull");
        }
        let v = double_description(&h, &opts).unwrap();
        for x in v.vertices() {
            prop_assert!(q.contains(x), "DD vertex {x:?} is not an input point");
        }
        for p in &q {
            prop_assert!(convex_hull_contains(p, v.vertices()).unwrap());
        }
        let again = hrep_from_vrep(v.vertices(), &opts).unwrap();
        prop_assert_eq!(again.facet_count(), h.facet_count());
        prop_assert_eq!(again.eq.len(), h.eq.len());
        Ok(())
    })
    .unwrap();
}

fn lp_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(m, k)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=5, k), m),
            prop::collection::vec(1i64..=10, m),
            prop::collection::vec(-3i64..=5, k),
        )
    })
}

fn build_lp<F: Scalar>(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> LinearProgram<F> {
    let k = c.len();
    let mut lp = LinearProgram::new(Sense::Maximize, c.iter().map(|&x| F::from_i64(x)).collect());
    for (row, &bi) in a.iter().zip(b) {
        lp.add(row.iter().map(|&x| F::from_i64(x)).collect(), Relation::Le, F::from_i64(bi));
    }
    lp.add(vec![F::one(); k], Relation::Le, F::from_i64(20));
    lp
}

#[test]
fn prop_lp_optimum_is_certified_by_its_duals() {
    let _g = serial();
    run(208, CASES, lp_strategy(), |(a, b, c)| {
        let exact = build_lp::<Rational>(&a, &b, &c).solve().unwrap();
        let float = build_lp::<f64>(&a, &b, &c).solve().unwrap();
        let (LpOutcome::Optimal(e), LpOutcome::Optimal(f)) = (exact, float) else {
            return Err(TestCaseError::fail("bounded feasible program not solved to optimality"));
        };
        let mut rhs: Vec<Rational> = b.iter().map(|&x| Rational::from_i64(x)).collect();
        rhs.push(Rational::from_i64(20));
        let dual_value: Rational = e.duals.iter().zip(&rhs).map(|(y, b)| y * b).sum();
        prop_assert_eq!(&dual_value, &e.value);
        let primal: Rational = e.point.iter().zip(&c).map(|(x, &ci)| x * Rational::from_i64(ci)).sum();
        prop_assert_eq!(&primal, &e.value);
        for (row, &bi) in a.iter().zip(&b) {
            let lhs: Rational = e.point.iter().zip(row).map(|(x, &r)| x * Rational::from_i64(r)).sum();
            prop_assert!(lhs <= Rational::from_i64(bi));
        }
        prop_assert!((f.value - e.value.to_f64()).abs() <= 1e-8 * (1.0 + f.value.abs()));
        Ok(())
    })
    .unwrap();
}

#[test]
fn prop_sampled_two_qubit_vertices_are_known_orbits() {
    let _g = serial();
    run(209, CASES, any::<u64>(), |seed| {
        let v = sample_lambda_vertices(2, 1, seed).unwrap().remove(0);
        let Some(k) = orbit_row(&v.spectrum, 1e-5) else {
            return Err(TestCaseError::fail(format!("spectrum {:?} is not a known orbit", v.spectrum.sorted_asc())));
        };
        let (p, q) = ORBIT_NORMS[k];
        prop_assert_eq!(v.hs_norm_sqr, Rational::new(p.into(), q.into()));
        Ok(())
    })
    .unwrap();
}
