//! Gamma machinery, the archimedean factors, the approximate-functional-
//! equation weights and the Voronoi kernels.

mod factors;
mod gamma;
mod voronoi;
mod weights;

pub use factors::{
    gamma_dirichlet, gamma_maass, gamma_ratio_dirichlet, gamma_ratio_maass, ln_gamma_dirichlet,
    ln_gamma_maass, maass_ratio_stirling_defect, EvaluationPoint,
};
pub use gamma::{complex_gamma, gamma_ratio, ln_gamma};
pub use voronoi::{
    bump, voronoi_g, voronoi_psi, voronoi_quotients, BumpMellin, PsiKernel, DEFAULT_PSI_SIGMA,
    MELLIN_NODES_PER_COUNT,
};
pub use weights::{dirichlet_residue_series, weight_v, weight_w, Weight, WeightKind, WeightParams};
