//! Classifies a few spectra and one explicit density matrix.

use astab::classifier::{classify_operator, classify_spectrum};
use astab::linalg::CMatrix;
use astab::operators::{HermitianOperator, OperatorLabel};
use astab::spectral::Spectrum;

fn show(tag: &str, r: &astab::classifier::ClassificationReport) {
    let v = serde_json::to_value(&r.verdicts).unwrap();
    let broken: Vec<&str> = r.violated_constraints.iter().map(|c| c.constraint.as_str()).collect();
    println!("{tag:28} {v}  violated {broken:?}");
}

fn main() -> astab::Result<()> {
    let cases: [(u32, usize, Vec<f64>); 5] = [
        (2, 1, vec![0.75, 0.25]),
        (2, 1, vec![0.8, 0.2]),
        (2, 2, vec![0.4, 0.3, 0.2, 0.1]),
        (3, 1, vec![0.5, 0.5, 0.0]),
        (2, 3, vec![0.3, 0.3, 0.2, 0.2, 0.0, 0.0, 0.0, 0.0]),
    ];
    for (d, n, s) in cases {
        let r = classify_spectrum(d, n, &Spectrum::density(s.clone())?)?;
        show(&format!("({d},{n}) {s:?}"), &r);
    }

    // |T><T| mixed with white noise on one qubit
    let p = 0.7;
    let t = std::f64::consts::FRAC_PI_4;
    let (a, b) = ((t / 2.0).cos(), (t / 2.0).sin());
    let psi = [num_complex::Complex64::new(a, 0.0), num_complex::Complex64::from_polar(b, t)];
    let pure = CMatrix::outer(&psi);
    let m = pure.scale(p.into()).add(&CMatrix::identity(2).scale(((1.0 - p) / 2.0).into()));
    let rho = HermitianOperator::new(2, 1, OperatorLabel::Generic, m)?;
    show("noisy T state (p = 0.7)", &classify_operator(&rho)?);
    Ok(())
}
