//! Radii, purity thresholds and the ordering chain for small systems.

use astab::classifier::{radii_report, single_qubit_polar_radius_product_sqr};

fn main() -> astab::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}  chain", "(d,n)", "r_STAB", "r_GB", "r_PSD", "R_AWP");
    for (d, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)] {
        let r = radii_report(d, n)?;
        let failed: Vec<&str> = r.chain.iter().filter(|l| !l.holds).map(|l| l.relation.as_str()).collect();
        let out = r.r_awp_out.map_or("-".to_string(), |x| format!("{x:.9}"));
        let chain = if failed.is_empty() { "holds".to_string() } else { format!("fails {failed:?}") };
        println!("{:>6} {:12.9} {:12.9} {:12.9} {out:>12}  {chain}", format!("({d},{n})"), r.r_stab, r.r_gb, r.r_psd);
    }
    println!("one qubit (r R)^2 = {} (exact)", single_qubit_polar_radius_product_sqr()?);
    Ok(())
}
