//! ASTAB and AWP spectral polytopes for small systems.
//!
//! Prints each chamber polytope, its permutation closure and the AWP cross-check.

use astab::classifier::{awp_brute_force, build_astab_spectral_polytope, build_awp_spectral_polytope};

fn main() -> astab::Result<()> {
    for (d, n) in [(2, 1), (2, 2), (3, 1), (2, 3)] {
        let p = build_astab_spectral_polytope(d, n)?;
        println!("ASTAB ({d},{n}){}: constraints {:?}", if p.conditional { " [conditional]" } else { "" }, p.constraints);
        println!("  chamber vertices:");
        for v in p.chamber.vertices() {
            println!("    {v:.6?}");
        }
        match &p.closure {
            Some(c) => println!("  closure: {} vertices, {} facets", c.vertex_count(), c.facet_count()),
            None => println!("  closure skipped: {}", p.closure_note.as_deref().unwrap_or("")),
        }
    }
    for (d, n) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
        let p = build_awp_spectral_polytope(d, n)?;
        let b = awp_brute_force(p.dim)?;
        println!(
            "AWP ({d},{n}): {} vertices, {} facets; brute force agrees: {}",
            p.vertex_count(),
            p.facet_count(),
            b.vertices() == p.vertices()
        );
    }
    Ok(())
}
