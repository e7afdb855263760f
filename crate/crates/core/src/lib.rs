//! Simulation core for tripartite coherence concurrence of Dirac modes seen by
//! accelerated observers.
//!
//! The pipeline is: a GHZ/product mixture shared by Alice, Bob and Charlie is
//! dilated onto the Rindler modes `[A, B_I, B_II, C_I, C_II]`, optionally
//! passed through single-qubit Kraus channels, and reduced to one of six
//! tripartite subsystems. Coherence is then quantified with the l1-norm, the
//! X-state closed form, or a numerical convex-roof search.
//!
//! The [`reference`] module carries the published closed forms for every
//! reduced and evolved state, and [`verify`] cross-checks the two.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod channels;
pub mod convex_roof;
pub mod dilation;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod reference;
pub mod subsystem;
pub mod verify;

pub use channels::{apply_policy, apply_to_qubit, make_channel, ChannelKind, KrausChannel, NoisePolicy};
pub use convex_roof::{convex_roof_search, convex_roof_upper_bound, ConvexRoofOptions};
pub use dilation::{
    acceleration_parameter, dilate, initial_state, reduce_to_subsystem, unruh_isometry,
    AccelerationParameter, PhysicalAcceleration, Scenario,
};
pub use error::{Error, Result};
pub use linalg::{
    partial_trace, tensor_product, validate_density, ComplexMatrix, DensityMatrix, PureState,
    QubitIndex, Tolerances, Violation, ViolationReport,
};
pub use measures::{
    coherence_concurrence, coherence_concurrence_with, is_x_shaped, l1_coherence,
    pure_concurrence, x_concurrence, CoherenceBounds, Method,
};
pub use num_complex::Complex64;
pub use reference::{
    complementarity_residuals, concurrence_closed_form, evolved_matrix_closed_form,
    reduced_matrix_closed_form,
};
pub use subsystem::Subsystem;
pub use verify::{
    closed_form_concurrence, closed_form_state, compare_state, compare_state_with, point_options,
    run_suite, simulate, Classification, DiscrepancyRecord, GridSpec, Report, Summary,
};

/// Crate version, recorded in verification reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
