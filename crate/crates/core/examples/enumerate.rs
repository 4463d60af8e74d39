//! Counts of stabilizer states, CNC operators and single-qutrit Lambda vertices.

use std::collections::BTreeMap;

use astab::operators::{
    enumerate_cnc_qubits, enumerate_stabilizer_states, qutrit_lambda_vertices, stabilizer_state_count,
};
use astab::spectral::eigen_spectrum;

fn main() -> astab::Result<()> {
    for (d, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let states = enumerate_stabilizer_states(d, n)?;
        println!("stabilizer states ({d},{n}): {} (formula {})", states.len(), stabilizer_state_count(d, n));
    }
    for n in 1..=3 {
        for m in 1..=n {
            let ops = enumerate_cnc_qubits(n, m)?;
            let omega = ops.first().map_or(0, |o| o.set.len());
            println!("qubit CNC n={n} m={m}: {} operators, |Omega| = {omega}", ops.len());
        }
    }
    let mut orbits: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for x in qutrit_lambda_vertices()? {
        let key = eigen_spectrum(&x)?.sorted_desc().iter().map(|v| (v * 1e6).round() as i64).collect();
        *orbits.entry(key).or_default() += 1;
    }
    println!("qutrit Lambda vertices by spectrum:");
    for (s, k) in orbits {
        let s: Vec<f64> = s.iter().map(|&v| v as f64 * 1e-6).collect();
        println!("  {k:3} x {s:?}");
    }
    Ok(())
}
