//! Discrete Wigner functions of a qutrit: a stabilizer state, the Strange
//! state and a random mixed state, with the reconstruction check.

use astab::classifier::{awp_test, wp_test};
use astab::linalg::{haar_unitary, CMatrix};
use astab::operators::{enumerate_stabilizer_states, wigner_function, HermitianOperator, OperatorLabel};
use astab::spectral::{eigen_spectrum, Spectrum};
use num_complex::Complex64;
use rand::SeedableRng;

fn report(tag: &str, rho: &HermitianOperator) -> astab::Result<()> {
    let w = wigner_function(rho)?;
    let back = w.reconstruct()?;
    let vals: Vec<String> = w.values().iter().map(|x| format!("{x:+.4}")).collect();
    println!("{tag}\n  W = [{}]", vals.join(" "));
    println!(
        "  min {:+.4}, sum {:.6}, reconstruction error {:.1e}, wp {}, awp {}",
        w.min(),
        w.total(),
        back.max_abs_diff(rho.matrix()),
        wp_test(rho)?,
        awp_test(&eigen_spectrum(rho)?)?
    );
    Ok(())
}

fn main() -> astab::Result<()> {
    report("stabilizer |0>", &enumerate_stabilizer_states(3, 1)?[0].projector())?;

    // (|1> - |2>)/sqrt(2)
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let strange = [Complex64::new(0.0, 0.0), Complex64::new(s, 0.0), Complex64::new(-s, 0.0)];
    report("strange state", &HermitianOperator::from_pure_state(3, 1, &strange)?)?;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let u = haar_unitary(3, &mut rng);
    let diag = CMatrix::from_real_diagonal(Spectrum::new(vec![0.45, 0.35, 0.2]).values());
    let rho = HermitianOperator::new(3, 1, OperatorLabel::Generic, diag)?.conjugate_by(&u)?;
    report("U diag(0.45,0.35,0.2) U^dag", &rho)?;
    Ok(())
}
