//! Majorization and norm checks of the qubit conjectures.
//!
//! Usage: `conjectures [n] [samples] [seed]`; with no sample count the
//! one-qubit case is exhaustive and larger cases draw 200 samples.

use astab::classifier::{conjecture_harness, HarnessMode};

fn main() -> astab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let samples = args.get(1).and_then(|s| s.parse().ok());
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mode = match samples {
        None if n == 1 => HarnessMode::Exhaustive,
        None => HarnessMode::Sampled { samples: 200, seed },
        Some(samples) => HarnessMode::Sampled { samples, seed },
    };
    let r = conjecture_harness(n, mode, None)?;
    println!(
        "n = {n}: {} vertices in {} orbits ({} CNC); failures: mixture {}, m=1 {}, norm {}; max Tr(X^2) = {}",
        r.vertices, r.distinct_orbits, r.cnc_orbits, r.mixture_failures, r.m1_failures, r.norm_failures, r.max_hs_norm_sqr
    );
    for c in r.orbits.iter().take(12) {
        let o = &c.orbit;
        let s: Vec<String> = o.spectrum.sorted_desc().iter().map(|x| format!("{x:.5}")).collect();
        println!("  {:10} x{:<5} Tr(X^2) = {:8}  [{}]", o.label, o.count, astab::scalar::format_rational(&o.hs_norm_sqr), s.join(", "));
    }
    Ok(())
}
