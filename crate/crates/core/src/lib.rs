//! Design and verification toolkit for a printable seesaw-style focus lever.
//!
//! A smartphone microscope focuses by moving its reversed lens a few
//! micrometers at a time. The lever that makes this practical is a compliant
//! seesaw: an adjustment screw presses one arm, two flexing beams scale the
//! motion down, and the opposite arm carries the lens. This crate models
//! that mechanism end to end:
//!
//! - [`mechanics`]: closed-form beam model of the lever, displacement
//!   ratios, stresses, and safe working limits.
//! - [`fem`]: an independent plane-frame finite element model, used as an
//!   oracle to cross-check the closed forms rather than replace them.
//! - [`optics`]: screw motion to focus motion, depth of focus, and
//!   resolution-target line widths.
//! - [`search`]: constrained grid search and local refinement over lever
//!   geometries.
//!
//! Everything computes in millimeters, newtons, megapascals, and radians;
//! optics quantities use micrometers where noted. Models are generic over
//! the scalar (see [`scalar::Float`]); the `*64` aliases at the crate root
//! pin the common `f64` choice.

pub mod error;
pub mod fem;
pub mod mechanics;
pub mod optics;
pub mod scalar;
pub mod search;

pub use error::{FemError, MechanicsError, OpticsError, SearchError};
pub use fem::{
    build_seesaw_frame, oracle_displacement_ratio, oracle_displacement_ratio_with_mesh,
    seesaw_tip_displacements, solve_frame, FixedDofs, FrameElement, FrameModel, FrameNode,
    FrameSolution, NodalLoad, NodeDisplacement, SeesawFrame, SeesawTips,
    ORACLE_ELEMENTS_PER_SEGMENT,
};
pub use mechanics::{
    active_cantilever, arc_shortening, displacement_ratio, displacement_ratio_closed_form,
    max_bending_stress, max_safe_active_displacement, max_safe_force, passive_tip, second_moment,
    solve_load_case, support_rotation, CrossSection, DeflectionState, DisplacementConvention,
    LoadCase, Material, SeesawGeometry, ThicknessAssignment, SMALL_ANGLE_LIMIT_RAD,
};
pub use optics::{
    accuracy_surface, depth_of_focus, required_ratio, tuning_accuracy, usaf_line_pairs_per_mm,
    usaf_linewidth_um, OpticsSpec, ScrewSpec, SurfacePoint, TuningResult, DEFAULT_WAVELENGTH_UM,
};
pub use scalar::Float;
pub use search::{
    evaluate_candidate, grid_search, local_refine, DesignCandidate, DesignConstraints,
    DesignObjective, DesignSpace, InfeasibilityCensus, InfeasibleReason, ParamRange,
    RefineOutcome, SearchOutcome, DEFAULT_CANDIDATE_CAP,
};

/// Lever geometry in `f64`.
pub type SeesawGeometry64 = mechanics::SeesawGeometry<f64>;
/// Material in `f64`.
pub type Material64 = mechanics::Material<f64>;
/// Solved lever state in `f64`.
pub type DeflectionState64 = mechanics::DeflectionState<f64>;
/// Frame model in `f64`.
pub type FrameModel64 = fem::FrameModel<f64>;
/// Frame solution in `f64`.
pub type FrameSolution64 = fem::FrameSolution<f64>;
/// Optics parameters in `f64`.
pub type OpticsSpec64 = optics::OpticsSpec<f64>;
/// Screw parameters in `f64`.
pub type ScrewSpec64 = optics::ScrewSpec<f64>;
/// Tuning evaluation in `f64`.
pub type TuningResult64 = optics::TuningResult<f64>;
/// Design space in `f64`.
pub type DesignSpace64 = search::DesignSpace<f64>;
/// Evaluated design in `f64`.
pub type DesignCandidate64 = search::DesignCandidate<f64>;
