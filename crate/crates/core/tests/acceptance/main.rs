//! One test per acceptance criterion, plus the randomized property suites.
//! Each criterion prints its sub-checks and a final `PASS`/`FAIL` line.

mod common;
mod props;
mod schemas;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use astab::classifier::{
    awp_brute_force, awp_closed_form_vertices, build_astab_spectral_polytope, conjecture_harness, radii_report,
    single_qubit_polar_radius_product_sqr, HarnessMode,
};
use astab::operators::{
    enumerate_cnc_qubits, enumerate_stabilizer_states, phase_point_operators, qutrit_lambda_vertices,
    single_qudit_full_cnc, OperatorLabel,
};
use astab::polytope::{double_description, lambda_hrep_qubits, DdOptions};
use astab::scalar::Rational;
use astab::spectral::eigen_spectrum;
use common::{max_dev, serial, orbit_row, two_qubit_exhaustive, Checks, ORBIT_SPECTRA, ORBIT_NORMS};

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64())
}

#[test]
fn criterion_1_counting_goldens() {
    let _g = serial();
    let mut c = Checks::new("criterion 1: counting goldens");
    for (d, n, want) in [(2, 1, 6), (2, 2, 60), (2, 3, 1080), (3, 1, 12)] {
        let (r, secs) = timed(|| enumerate_stabilizer_states(d, n));
        if let Some(states) = c.ok(r, "stabilizer enumeration") {
            c.check(
                states.len() == want && secs < 1.0,
                format!("stabilizer states ({d},{n}): {} (want {want}) in {secs:.3} s", states.len()),
            );
        }
    }
    let (r, secs) = timed(|| double_description(&lambda_hrep_qubits(1).unwrap(), &DdOptions::default()));
    if let Some(p) = c.ok(r, "one-qubit Lambda DD") {
        c.check(p.vertex_count() == 8 && secs < 1.0, format!("Lambda (2,1): {} vertices in {secs:.3} s", p.vertex_count()));
    }
    let (r, secs) = timed(qutrit_lambda_vertices);
    if let Some(vs) = c.ok(r, "qutrit Lambda vertices") {
        let pp = vs.iter().filter(|v| *v.label() == OperatorLabel::PhasePoint).count();
        c.check(
            vs.len() == 81 && pp == 9 && secs < 1.0,
            format!("Lambda (3,1): {} vertices ({pp} phase points) in {secs:.3} s", vs.len()),
        );
    }
    let ex = two_qubit_exhaustive();
    c.check(
        ex.report.vertices == 22_320 && ex.seconds <= 1800.0,
        format!("Lambda (2,2) by exact DD: {} vertices in {:.1} s", ex.report.vertices, ex.seconds),
    );
    c.finish();
}

#[test]
fn criterion_2_spectra_goldens() {
    let _g = serial();
    let mut c = Checks::new("criterion 2: spectra goldens");
    for n in 1..=3usize {
        for m in 1..=n {
            let s = (2.0 * m as f64 + 1.0).sqrt();
            let half = 1usize << (m - 1);
            let scale = 0.5f64.powi(m as i32);
            let mut want = vec![(1.0 + s) * scale; half];
            want.extend(std::iter::repeat_n(0.0, (1 << n) - (1 << m)));
            want.extend(std::iter::repeat_n((1.0 - s) * scale, half));
            let Some(ops) = c.ok(enumerate_cnc_qubits(n, m), "CNC enumeration") else { continue };
            let worst = ops
                .iter()
                .map(|o| max_dev(eigen_spectrum(&o.operator()).unwrap().sorted_desc(), &want))
                .fold(0.0, f64::max);
            c.check(
                worst <= 1e-9,
                format!("CNC n={n} m={m}: {} operators, worst eigenvalue deviation {worst:.1e}", ops.len()),
            );
        }
    }
    for (d, n) in [(3u32, 1usize), (3, 2), (5, 1)] {
        let dim = (d as usize).pow(n as u32);
        let mut want = vec![1.0; dim.div_ceil(2)];
        want.extend(std::iter::repeat_n(-1.0, dim / 2));
        let Some(ops) = c.ok(phase_point_operators(d, n), "phase points") else { continue };
        let worst = ops
            .iter()
            .map(|a| max_dev(eigen_spectrum(a).unwrap().sorted_desc(), &want))
            .fold(0.0, f64::max);
        c.check(
            ops.len() == dim * dim && worst <= 1e-9,
            format!("phase points ({d},{n}): {} operators, worst deviation {worst:.1e}", ops.len()),
        );
    }
    let report = &two_qubit_exhaustive().report;
    let mut matched = vec![0usize; ORBIT_SPECTRA.len()];
    for o in &report.orbits {
        match orbit_row(&o.orbit.spectrum, 1e-5) {
            Some(k) => matched[k] += 1,
            None => {
                c.check(false, format!("orbit {} {:?} matches no known orbit", o.orbit.label, o.orbit.spectrum.sorted_asc()));
            }
        }
    }
    c.check(
        report.orbits.len() == 8 && matched.iter().all(|&k| k == 1),
        format!("(2,2) orbits: {} found, known orbits matched {matched:?}", report.orbits.len()),
    );
    c.finish();
}

#[test]
fn criterion_3_norm_goldens() {
    let _g = serial();
    let mut c = Checks::new("criterion 3: norm goldens");
    for n in 1..=3usize {
        for m in 1..=n {
            let Some(ops) = c.ok(enumerate_cnc_qubits(n, m), "CNC enumeration") else { continue };
            let dim = (1usize << n) as f64;
            let worst = ops
                .iter()
                .map(|o| (o.operator().hs_norm_sqr() - o.set.len() as f64 / dim).abs())
                .fold(0.0, f64::max);
            c.check(worst <= 1e-9, format!("Tr(A^2) = |Omega|/2^n for n={n} m={m}: worst {worst:.1e}"));
        }
    }
    for d in [3u32, 5] {
        let Some(ops) = c.ok(single_qudit_full_cnc(d), "qudit CNC") else { continue };
        let worst = ops
            .iter()
            .map(|o| (o.operator().hs_norm_sqr() - o.set.len() as f64 / d as f64).abs())
            .fold(0.0, f64::max);
        c.check(worst <= 1e-9, format!("Tr(A^2) = |Omega|/{d} for {} single-qudit CNC operators: worst {worst:.1e}", ops.len()));
    }
    let report = &two_qubit_exhaustive().report;
    for o in &report.orbits {
        if let Some(k) = orbit_row(&o.orbit.spectrum, 1e-5) {
            let (p, q) = ORBIT_NORMS[k];
            let want = Rational::new(p.into(), q.into());
            c.check(
                o.orbit.hs_norm_sqr == want,
                format!("{}: Tr(X^2) = {} (want {p}/{q})", ORBIT_SPECTRA[k].0, o.orbit.hs_norm_sqr),
            );
        }
    }
    c.finish();
}

fn two_qubit_chamber_closed_forms() -> Vec<[f64; 4]> {
    let (r3, r5, r15) = (3f64.sqrt(), 5f64.sqrt(), 15f64.sqrt());
    vec![
        [0.25; 4],
        [(5.0 + r3) / 22.0, (5.0 + r3) / 22.0, (5.0 + r3) / 22.0, (7.0 - 3.0 * r3) / 22.0],
        [(7.0 + 3.0 * r3) / 22.0, (5.0 - r3) / 22.0, (5.0 - r3) / 22.0, (5.0 - r3) / 22.0],
        [(5.0 + r5) / 20.0, (5.0 + r5) / 20.0, (5.0 - r5) / 20.0, (5.0 - r5) / 20.0],
        [
            (5.0 + r5) / 20.0,
            (5.0 + r5) / 20.0,
            (5.0 * r3 - 4.0 * r5 + r15) / 20.0,
            (10.0 - 5.0 * r3 + 2.0 * r5 - r15) / 20.0,
        ],
        [
            (10.0 + 5.0 * r3 - 2.0 * r5 - r15) / 20.0,
            (-5.0 * r3 + 4.0 * r5 + r15) / 20.0,
            (5.0 - r5) / 20.0,
            (5.0 - r5) / 20.0,
        ],
    ]
}

/// `a` is a positive multiple of `b`.
fn parallel(a: &[f64], b: &[f64]) -> bool {
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    a.iter().zip(b).all(|(x, y)| (x / na - y / nb).abs() < 1e-9)
}

#[test]
fn criterion_4_spectral_polytope_goldens() {
    let _g = serial();
    let mut c = Checks::new("criterion 4: spectral polytope goldens");
    if let Some(p) = c.ok(build_astab_spectral_polytope(2, 2), "(2,2) polytope") {
        let got = p.chamber.vertices();
        let want = two_qubit_chamber_closed_forms();
        let all_found = want.iter().all(|w| got.iter().any(|v| max_dev(v, w) <= 1e-9));
        let no_extra = got.iter().all(|v| want.iter().any(|w| max_dev(v, w) <= 1e-9));
        c.check(
            got.len() == 6 && all_found && no_extra,
            format!("(2,2) chamber: {} vertices, all 6 closed forms found: {all_found}", got.len()),
        );
        match &p.closure {
            Some(cl) => {
                c.check(cl.vertex_count() == 40, format!("(2,2) closure vertices: {} (want 40)", cl.vertex_count()));
                c.check(cl.facet_count() == 18, format!("(2,2) closure facets: {} (want 18)", cl.facet_count()));
            }
            None => {
                c.check(false, "(2,2) closure missing");
            }
        }
    }
    if let Some(p) = c.ok(build_astab_spectral_polytope(3, 1), "(3,1) polytope") {
        let s5 = 5f64.sqrt();
        let rows = [[-1.0, 1.0, 1.0], [(1.0 - s5) / 2.0, 0.0, (1.0 + s5) / 2.0]];
        for r in &rows {
            let present = p.chamber.ineq.iter().any(|h| h.b.abs() < 1e-12 && parallel(&h.a, r));
            c.check(present, format!("(3,1) chamber carries constraint {r:?} . lambda >= 0"));
        }
        // membership agrees with the two constraints on a grid of sorted spectra
        let mut disagreements = 0;
        let mut points = 0;
        let k = 90;
        for i in 0..=k {
            for j in 0..=k - i {
                let l = [i as f64 / k as f64, j as f64 / k as f64, (k - i - j) as f64 / k as f64];
                if !(l[0] >= l[1] && l[1] >= l[2]) {
                    continue;
                }
                let a = -l[0] + l[1] + l[2];
                let b = rows[1][0] * l[0] + rows[1][2] * l[2];
                if a.abs() < 1e-7 || b.abs() < 1e-7 {
                    continue;
                }
                points += 1;
                if p.chamber.contains(&l, 1e-9) != (a >= 0.0 && b >= 0.0) {
                    disagreements += 1;
                }
            }
        }
        c.check(disagreements == 0, format!("(3,1) polygon membership on {points} grid spectra: {disagreements} disagreements"));
    }
    for (d, n) in [(3usize, 1u32), (3, 2), (5, 1)] {
        let dim = d.pow(n);
        let (Some(closed), Some(brute)) =
            (c.ok(awp_closed_form_vertices(dim), "AWP closed form"), c.ok(awp_brute_force(dim), "AWP brute force"))
        else {
            continue;
        };
        let key = |v: &Vec<Rational>| v.clone();
        let mut a: Vec<Vec<Rational>> = closed.iter().map(key).collect();
        let mut b: Vec<Vec<Rational>> = brute.vertices().iter().map(key).collect();
        a.sort();
        b.sort();
        c.check(a == b, format!("AWP ({d},{n}): closed form {} vertices, chamber DD {} vertices", a.len(), b.len()));
    }
    c.finish();
}

#[test]
fn criterion_5_radii() {
    let _g = serial();
    let mut c = Checks::new("criterion 5: radii");
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs();
    let cases = [(2u32, 1..=5usize), (3, 1..=3), (5, 1..=2), (7, 1..=2)];
    for (d, ns) in cases {
        for n in ns {
            let Some(r) = c.ok(radii_report(d, n), "radii") else { continue };
            let dd = (d as f64).powi(n as i32);
            let r_psd = 1.0 / (dd * (dd - 1.0)).sqrt();
            let r_gb = 2.0 / (2f64.sqrt() * d as f64).powi(n as i32);
            let mut ok = close(r.r_psd, r_psd) && close(r.r_gb, r_gb);
            if d == 2 {
                ok &= close(r.r_stab, 1.0 / (dd * (2.0 * dd - 1.0)).sqrt());
                ok &= close(r.purity.stab_ball, 1.0 / (dd - 0.5));
            } else {
                let r_stab = 1.0 / (dd * (dd * dd - 1.0)).sqrt();
                ok &= close(r.r_stab, r_stab) && r.r_wp.is_some_and(|x| close(x, r_stab));
                ok &= r.r_awp_out.is_some_and(|x| close(x, r_psd));
                ok &= close(r.purity.stab_ball, 1.0 / (dd - 1.0 / dd));
                ok &= r.purity.awp_upper.is_some_and(|x| close(x, 1.0 / (dd - 1.0)));
            }
            c.check(ok, format!("closed forms at ({d},{n}): r_stab {:.6e}, r_gb {:.6e}, r_psd {:.6e}", r.r_stab, r.r_gb, r.r_psd));
        }
    }
    for (d, n) in [(3u32, 1usize), (3, 2), (5, 1), (7, 1)] {
        let Some(r) = c.ok(radii_report(d, n), "radii") else { continue };
        let broken: Vec<String> = r
            .chain
            .iter()
            .filter(|l| !l.holds)
            .map(|l| format!("{} ({:.6} vs {:.6})", l.relation, l.lhs, l.rhs))
            .collect();
        c.check(broken.is_empty(), format!("chain r_STAB = r_WP < r_GB < r_PSD = R_AWP at ({d},{n}); broken: {broken:?}"));
    }
    if let Some(p) = c.ok(single_qubit_polar_radius_product_sqr(), "polar radii") {
        c.check(p == Rational::from_integer(1.into()), format!("(2,1) (r R)^2 = {p} exactly"));
    }
    c.finish();
}

#[test]
fn criterion_6_conjecture_evidence() {
    let _g = serial();
    let mut c = Checks::new("criterion 6: conjecture evidence");
    let ex = two_qubit_exhaustive();
    let r = &ex.report;
    c.check(
        r.passed() && r.distinct_orbits == 8 && r.max_hs_norm_sqr == 2.0,
        format!(
            "(2,2) exhaustive: {} orbits, failures mixture {} / m=1 {} / norm {}, max Tr(X^2) {}",
            r.distinct_orbits, r.mixture_failures, r.m1_failures, r.norm_failures, r.max_hs_norm_sqr
        ),
    );
    let (s, secs) = timed(|| conjecture_harness(3, HarnessMode::Sampled { samples: 1000, seed: 7 }, None));
    if let Some(s) = c.ok(s, "(2,3) sampling") {
        c.check(
            s.vertices == 1000 && s.mixture_failures == 0 && s.m1_failures == 0 && s.max_hs_norm_sqr <= 2.0 + 1e-9,
            format!(
                "(2,3) 1000 seeded samples: {} orbits, majorization failures {} (m=1: {}), max Tr(X^2) {:.6}",
                s.distinct_orbits, s.mixture_failures, s.m1_failures, s.max_hs_norm_sqr
            ),
        );
    }
    let total = ex.seconds + secs;
    c.check(total <= 900.0, format!("runtime {total:.1} s (exhaustive {:.1} s, sampled {secs:.1} s)", ex.seconds));
    c.finish();
}

#[test]
fn criterion_7_property_suites() {
    let _g = serial();
    let mut c = Checks::new("criterion 7: property suites");
    for (name, r) in props::criterion_suites() {
        let ok = r.is_ok();
        c.check(ok, format!("{name}{}", r.err().map(|e| format!(": {e}")).unwrap_or_default()));
    }
    c.finish();
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(p) = stack.pop() {
        for e in std::fs::read_dir(&p).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

/// Runs the binary in a fresh directory; returns exit code, stdout and every written file.
fn run_cli(args: &[&str]) -> (i32, Vec<u8>, BTreeMap<String, Vec<u8>>) {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_astab"))
        .args(args)
        .current_dir(dir.path())
        .env_remove("ASTAB_OUT_DIR")
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout, snapshot(dir.path()))
}

#[test]
fn criterion_8_determinism() {
    let _g = serial();
    let mut c = Checks::new("criterion 8: determinism");
    let commands: &[&[&str]] = &[
        &["sample", "-n", "2", "--count", "40", "--seed", "5"],
        &["sample", "-n", "2", "--count", "40", "--seed", "5", "--format", "csv"],
        &["sample", "-n", "3", "--count", "12", "--seed", "9", "--jobs", "2"],
        &["sample", "-n", "1", "--count", "10", "--seed", "0"],
        &["conjectures", "-n", "2", "--samples", "60", "--seed", "3", "--out", "conj"],
        &["conjectures", "-n", "3", "--samples", "15", "--seed", "7", "--out", "conj"],
        &["conjectures", "-n", "1", "--exhaustive", "--out", "conj"],
        &["enumerate", "stab", "-d", "2", "-n", "2"],
        &["enumerate", "lambda", "-d", "3", "-n", "1", "--format", "csv"],
        &["enumerate", "cnc", "-d", "2", "-n", "2"],
        &["enumerate", "phasepoints", "-d", "3", "-n", "2"],
        &["test", "-d", "3", "-n", "1", "--spectrum", "0.5,0.5,0"],
        &["radii", "-d", "3", "-n", "2"],
        &["spectral-polytope", "astab", "-d", "2", "-n", "2"],
        &["spectral-polytope", "awp", "-d", "3", "-n", "2", "--format", "csv"],
        &["spectral-polytope", "ternary", "-d", "3", "-n", "1"],
    ];
    for args in commands {
        let a = run_cli(args);
        let b = run_cli(args);
        let bytes: usize = a.2.values().map(|v| v.len()).sum::<usize>() + a.1.len();
        c.check(
            a.0 == 0 && a == b,
            format!("`astab {}`: exit {}, {} files, {bytes} bytes identical: {}", args.join(" "), a.0, a.2.len(), a == b),
        );
    }
    let one = run_cli(&["--jobs", "1", "sample", "-n", "3", "--count", "16", "--seed", "21"]);
    let four = run_cli(&["--jobs", "4", "sample", "-n", "3", "--count", "16", "--seed", "21"]);
    c.check(one.0 == 0 && one == four, "sample output identical for --jobs 1 and --jobs 4");
    let one = run_cli(&["--jobs", "1", "conjectures", "-n", "2", "--samples", "50", "--seed", "4", "--out", "c"]);
    let three = run_cli(&["--jobs", "3", "conjectures", "-n", "2", "--samples", "50", "--seed", "4", "--out", "c"]);
    c.check(one.0 == 0 && one == three, "conjectures output identical for --jobs 1 and --jobs 3");
    c.finish();
}
