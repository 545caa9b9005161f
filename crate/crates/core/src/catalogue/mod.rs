//! Case taxonomy: coefficient families, the induced coefficient functions,
//! the catalogued kernels, and singularity classification.

mod cases;
mod classify;
mod family;
pub(crate) mod kernel;

pub use cases::{
    build_case, default_case, ode_residual, CaseId, CaseInfo, DecayInfo, Integrability, KernelCase, ParamSpec, Params,
    POLE_TOLERANCE, REGISTRY,
};
pub use classify::{classify, EquationClass, Location, PointKind, RiemannScheme, SingularPoint, SingularityReport};
pub use family::{alpha_of, beta_of, factor_difference, CoefficientFamily, FamilyFunction, FamilyTag};
