//! Exact and simulated n-step distributions of radial walks, spectral data
//! of the simple walk and its local limit asymptotics.

pub mod exact;
pub mod mc;
pub mod spectral;

pub use exact::{
    exact_distribution, exact_distribution_rational, exact_distribution_with, DenseSimpleWalk,
    RadialWalkSpec, WalkDistribution,
};
pub use mc::{mc_simulate, McResult};
pub use spectral::{
    beta_finite_difference, c_expansion_error, c_w, determinant_fit, eigen_surface,
    eigen_surface_grid, induced_eigen, llt_estimate, llt_estimate_corrected, perturbation_check,
    spectral_data, DetFit, PerturbationCheck, SpectralData,
};
