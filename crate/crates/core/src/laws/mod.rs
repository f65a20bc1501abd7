//! Limit-law parameters for random planar graphs: Gaussian laws for edges,
//! blocks and appearances, the local law with its growth curve, Poisson laws
//! for components and families, and the edge-entropy constant.

mod appearances;
mod entropy;
mod gauss;
mod local;
mod poisson;

pub use appearances::{appearances_law, AppearancesLaw, DeviationBound, Tail};
pub use entropy::{edge_entropy_tau, EdgeEntropy};
pub use gauss::{blocks_law, edges_law, zeta_by_extrapolation, GaussLaw, LawContext, ZetaCheck};
pub use local::{curve_to_csv, growth_curve, local_law, CountKind, CurvePoint, LocalLawPoint};
pub use poisson::{builtin_family_law, components_law, family_law, FamilyKind, PoissonLaw};
