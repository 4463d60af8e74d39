//! Exact vertex enumeration of the two-qubit Lambda polytope.
//!
//! Takes minutes in release mode: `cargo run --release --example lambda_two_qubits`.

use std::time::Instant;

use astab::polytope::{double_description, lambda_hrep_qubits, DdOptions, DdProgress, InsertionOrder};

fn main() -> astab::Result<()> {
    let order = match std::env::args().nth(1).as_deref() {
        Some("given") => InsertionOrder::Given,
        _ => InsertionOrder::MinPairs,
    };
    let h = lambda_hrep_qubits(2)?;
    println!("{} stabilizer inequalities in dimension {}", h.ineq.len(), h.dim);
    let start = Instant::now();
    let progress = |p: DdProgress| {
        eprintln!("[{:>7.1}s] {}/{} constraints, {} rays", start.elapsed().as_secs_f64(), p.processed, p.total, p.rays);
    };
    let opts = DdOptions { order, progress: Some(&progress), ..Default::default() };
    let p = double_description(&h, &opts)?;
    println!("{} vertices in {:.1}s", p.vertex_count(), start.elapsed().as_secs_f64());
    Ok(())
}
