//! LP-sampled vertices of the qubit Lambda polytope and their spectral fingerprints.
//!
//! Usage: `sample_vertices [n] [count] [seed]`

use std::collections::BTreeMap;
use std::time::Instant;

use astab::classifier::sample_lambda_vertices;

fn main() -> astab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let count = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let t = Instant::now();
    let verts = sample_lambda_vertices(n, count, seed)?;
    let mut orbits: BTreeMap<_, usize> = BTreeMap::new();
    for v in &verts {
        *orbits.entry(v.fingerprint.clone()).or_default() += 1;
    }
    println!("{count} draws on {n} qubits in {:.1?}: {} distinct fingerprints", t.elapsed(), orbits.len());
    for (f, k) in orbits.iter().take(20) {
        let spec: Vec<f64> = f.spectrum.iter().map(|&x| x as f64 * 1e-6).collect();
        println!("{k:6}  Tr(X^2) = {:.6}  spectrum {:?}", f.hs_norm_sqr as f64 * 1e-6, spec);
    }
    Ok(())
}
