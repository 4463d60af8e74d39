use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use astab::classifier::{conjecture_harness, ConjectureReport, HarnessMode};
use astab::error::Result;
use astab::spectral::Spectrum;

/// Criteria run one at a time so their wall-clock budgets are not shared.
pub fn serial() -> MutexGuard<'static, ()> {
    static LOCK: Mutex<()> = Mutex::new(());
    LOCK.lock().unwrap_or_else(|e| e.into_inner())
}

/// Named sub-checks of one criterion; `finish` prints them all and fails if any did.
pub struct Checks {
    name: &'static str,
    lines: Vec<(bool, String)>,
}

impl Checks {
    pub fn new(name: &'static str) -> Self {
        Checks { name, lines: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        self.lines.push((ok, what.into()));
        ok
    }

    /// Records an `Err` as a failed check.
    pub fn ok<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, format!("{what}: {e}"));
                None
            }
        }
    }

    pub fn finish(self) {
        let failed: Vec<&String> = self.lines.iter().filter(|l| !l.0).map(|l| &l.1).collect();
        for (ok, line) in &self.lines {
            println!("  [{}] {line}", if *ok { "ok" } else { "FAIL" });
        }
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {}", self.name);
        assert!(
            failed.is_empty(),
            "{}: {} of {} checks failed:\n  {}",
            self.name,
            failed.len(),
            self.lines.len(),
            failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n  ")
        );
    }
}

pub struct Exhaustive {
    pub report: ConjectureReport,
    pub seconds: f64,
}

/// Exact two-qubit Lambda enumeration plus the conjecture checks, computed once.
pub fn two_qubit_exhaustive() -> &'static Exhaustive {
    static CELL: OnceLock<Exhaustive> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let report = conjecture_harness(2, HarnessMode::Exhaustive, None).expect("two-qubit DD failed");
        Exhaustive { report, seconds: t.elapsed().as_secs_f64() }
    })
}

/// Sorted ascending eigenvalues of the eight two-qubit Lambda orbits, five decimals.
pub const ORBIT_SPECTRA: [(&str, [f64; 4]); 8] = [
    ("cnc m=1", [-0.36603, 0.0, 0.0, 1.36603]),
    ("cnc m=2", [-0.30902, -0.30902, 0.80902, 0.80902]),
    ("orbit 3", [-0.20497, -0.10018, 0.16717, 1.13798]),
    ("orbit 4", [-0.20213, -0.13165, 0.27810, 1.05569]),
    ("orbit 5", [-0.16144, 0.0, 0.0, 1.16144]),
    ("orbit 6", [-0.22553, -0.04389, 0.54389, 0.72553]),
    ("orbit 7", [-0.14550, 0.0, 0.0, 1.14550]),
    ("orbit 8", [-0.09297, -0.08564, 0.02662, 1.15198]),
];

/// `Tr(A^2)` of the same orbits, as `(numerator, denominator)`.
pub const ORBIT_NORMS: [(i64, i64); 8] = [(2, 1), (3, 2), (11, 8), (5, 4), (11, 8), (7, 8), (4, 3), (43, 32)];

pub fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Index of the orbit within `tol` of `s`, entrywise after ascending sort.
pub fn orbit_row(s: &Spectrum, tol: f64) -> Option<usize> {
    let asc = s.sorted_asc();
    ORBIT_SPECTRA.iter().position(|(_, row)| max_dev(&asc, row) <= tol)
}

/// Spectrum of `dim` entries drawn from exponentials, normalized, with a sharpening power.
pub fn random_density<R: rand::Rng>(rng: &mut R, dim: usize, power: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim).map(|_| (-(rng.random::<f64>().max(1e-300)).ln()).powf(power)).collect();
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}
