//! Error types for the mechanics, frame-oracle, optics, and search modules.

use thiserror::Error;

/// Failures of the closed-form lever model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MechanicsError {
    /// A geometric dimension that must be strictly positive is not.
    #[error("invalid geometry: `{field}` must be strictly positive, got {value}")]
    InvalidGeometry { field: &'static str, value: f64 },

    /// A material property that must be strictly positive is not.
    #[error("invalid material: `{field}` must be strictly positive, got {value}")]
    InvalidMaterial { field: &'static str, value: f64 },

    /// The joint rotation left the small-angle regime the closed forms assume.
    #[error(
        "joint rotation {theta_rad} rad is outside the small-angle regime \
         (|theta| < {limit_rad} rad)"
    )]
    OutOfRegime { theta_rad: f64, limit_rad: f64 },

    /// A prescribed displacement cannot be mapped back to a force.
    #[error("prescribed displacement cannot be inverted: zero-stiffness response")]
    SingularSystem,

    /// The operation needs a force load, not a prescribed displacement.
    #[error("this operation requires a force load case")]
    ForceLoadRequired,

    /// Safety factors below one would rate the part above its strength.
    #[error("safety factor must be >= 1, got {0}")]
    InvalidSafetyFactor(f64),
}

/// Failures of the plane-frame oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FemError {
    /// The model has no nodes or no elements.
    #[error("frame model is empty")]
    EmptyModel,

    /// An element or load references a node that does not exist.
    #[error("node {node} is out of range (model has {count} nodes)")]
    UnknownNode { node: usize, count: usize },

    /// Coincident end nodes give an element no length to work with.
    #[error("element {index} has zero length")]
    ZeroLengthElement { index: usize },

    /// Some part of the frame is not load-connected to the rest.
    #[error("frame graph is not connected")]
    Disconnected,

    /// Nothing anchors the frame; every solve would be a rigid-body motion.
    #[error("model needs at least one fully fixed node")]
    NoFixedNode,

    /// Segment subdivision counts must be at least one.
    #[error("elements_per_segment must be >= 1")]
    InvalidSubdivision,

    /// The reduced stiffness matrix has no unique solution.
    #[error("stiffness matrix is singular: the model is under-constrained")]
    UnderConstrained,

    /// The direct solve finished but equilibrium is not satisfied.
    #[error("solution residual {residual} exceeds the solver tolerance")]
    Unconverged { residual: f64 },

    /// A ratio readout divided by a vanishing displacement.
    #[error("degenerate solution: passive-tip displacement is zero")]
    DegenerateSolution,

    /// Invalid geometry or material passed through to the frame builder.
    #[error(transparent)]
    Mechanics(#[from] MechanicsError),
}

/// Failures of the focus-tuning optics model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    /// Numerical aperture outside the open interval (0, 1).
    #[error("numerical aperture must be in (0, 1), got {0}")]
    InvalidNumericalAperture(f64),

    /// Wavelength outside the visible-ish band the model is meant for.
    #[error("wavelength must be in (0.3, 1.1) um, got {0}")]
    InvalidWavelength(f64),

    /// Magnification must be strictly positive.
    #[error("magnification must be strictly positive, got {0}")]
    InvalidMagnification(f64),

    /// Screw pitch must be strictly positive.
    #[error("screw pitch must be strictly positive, got {0}")]
    InvalidPitch(f64),

    /// Minimal hand rotation must be in (0, 2*pi] rad.
    #[error("minimal rotation must be in (0, 2*pi] rad, got {0}")]
    InvalidRotation(f64),

    /// Screw diameter must be strictly positive.
    #[error("screw diameter must be strictly positive, got {0}")]
    InvalidDiameter(f64),

    /// Displacement ratios must be strictly positive.
    #[error("displacement ratio must be strictly positive, got {0}")]
    InvalidRatio(f64),

    /// Target accuracies must be strictly positive.
    #[error("target accuracy must be strictly positive, got {0}")]
    InvalidTarget(f64),

    /// USAF element index outside 1..=6.
    #[error("USAF element must be in 1..=6, got {0}")]
    InvalidElement(i32),

    /// USAF group index outside -2..=9.
    #[error("USAF group must be in -2..=9, got {0}")]
    InvalidGroup(i32),

    /// Surface grids need at least two samples per axis.
    #[error("surface sampling needs >= 2 samples per axis, got {0}")]
    InvalidSampleCount(usize),

    /// Surface ranges must be positive and ordered.
    #[error("invalid range: low {lo} .. high {hi} (must satisfy 0 < low < high)")]
    InvalidRange { lo: f64, hi: f64 },
}

/// Failures of the design-space search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    /// The Cartesian grid would exceed the candidate cap.
    #[error("candidate count {count} exceeds the cap of {cap}")]
    CandidateCapExceeded { count: u128, cap: usize },

    /// A parameter range is unusable (unordered, non-positive, or zero steps).
    #[error("design-space range for `{field}` is invalid: {lo}..{hi} with {steps} steps")]
    InvalidRange {
        field: &'static str,
        lo: f64,
        hi: f64,
        steps: usize,
    },

    /// A constraint value is outside its meaningful range.
    #[error("constraint `{field}` is invalid: {value}")]
    InvalidConstraint { field: &'static str, value: f64 },

    /// Refinement must start from a feasible candidate.
    #[error("refinement start candidate is infeasible")]
    InfeasibleStart,

    /// Invalid mechanics inputs in the space definition.
    #[error(transparent)]
    Mechanics(#[from] MechanicsError),

    /// Invalid optics inputs in the space definition.
    #[error(transparent)]
    Optics(#[from] OpticsError),
}
