//! Decision procedures on spectra, spectral polytopes, radii and the
//! conjecture-evidence pipeline.

pub mod conjecture;
pub mod radii;
pub mod sampling;
pub mod spectral_polytope;
pub mod verdict;

pub use conjecture::{
    cnc_type_of, conjecture_harness, lambda_orbits_exhaustive, write_harness_outputs, write_hsnorm_histogram,
    ConjectureReport, HarnessMode, LambdaOrbit, OrbitCheck,
};
pub use radii::{radii_report, single_qubit_polar_radius_product_sqr, ChainLink, RadiiReport};
pub use sampling::{sample_lambda_vertices, Fingerprint, LambdaSampler, SampledVertex};
pub use spectral_polytope::{
    awp_brute_force, awp_closed_form_vertices, build_astab_spectral_polytope, build_awp_spectral_polytope,
    qutrit_ternary_points, write_ternary_csv, SpectralPolytope,
};
pub use verdict::{
    astab_test, awp_test, classify_operator, classify_spectrum, in_stab_hull, phase_point_spectrum,
    qubit_cnc_spectrum, vertex_spectra, wp_test, ClassificationReport, Coverage, Verdict, VertexSpectra,
};
