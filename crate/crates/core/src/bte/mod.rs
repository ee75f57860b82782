//! Discrete-ordinates transport with scattering.

mod iteration;
mod kernel;
mod mms;
mod ordinates;

pub use iteration::{
    bochner_error, ordinate_errors, reduction_factor, reduction_factor_of, scalar_flux,
    scattering_source, source_iteration, AngularFlux, ErrorReference, IterationLog,
    IterationOptions, IterationRecord, OrdinateExecutor, Sequential, SourceIterationOutcome,
    TransportProblem,
};
pub use kernel::{coercivity_check, scattering_ratio, AngularProfile, ScatteringKernel};
pub use mms::{mms_exact, mms_inflow, mms_source, mms_streaming};
pub use ordinates::{ordinates, OrdinateSet};
