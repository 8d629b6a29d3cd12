//! Grid search and local refinement over lever geometries.
//!
//! A design space is six dimension ranges plus a material, a screw, and the
//! modeling conventions. The search grids the space, scores every candidate
//! against an objective (hit a displacement ratio, or hit a focus-step size),
//! filters by manufacturability and strength, and ranks the survivors. A
//! coordinate-descent refiner then polishes the best candidate inside the
//! same bounds.
//!
//! Feasibility is judged at the constraint stroke: the passive tip (the
//! lens) must travel `required_stroke` millimeters without overstressing
//! either beam, without leaving the small-angle regime, and without dragging
//! the lens sideways by more than the allowed parasitic fraction.

use core::cmp::Ordering;
use core::fmt;

use rayon::prelude::*;

use crate::error::SearchError;
use crate::mechanics::{
    displacement_ratio, max_bending_stress, second_moment, DisplacementConvention, LoadCase,
    Material, SeesawGeometry, ThicknessAssignment, SMALL_ANGLE_LIMIT_RAD,
};
use crate::optics::{tuning_accuracy, ScrewSpec};
use crate::scalar::{abs, as_f64, is_positive, lit, max, Float};

/// Largest grid the search will evaluate by default.
pub const DEFAULT_CANDIDATE_CAP: usize = 10_000_000;

/// Inclusive sampled interval for one dimension (mm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRange<T> {
    pub lo: T,
    pub hi: T,
    pub steps: usize,
}

impl<T: Float> ParamRange<T> {
    pub fn new(lo: T, hi: T, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    /// Fixes a dimension to one value.
    pub fn fixed(value: T) -> Self {
        Self {
            lo: value,
            hi: value,
            steps: 1,
        }
    }

    /// Rejects empty, non-positive, or inverted ranges; `field` names the
    /// offending axis in the error.
    pub fn validate(&self, field: &'static str) -> Result<(), SearchError> {
        let ok = self.steps >= 1
            && self.lo > T::zero()
            && self.lo.is_finite()
            && self.hi.is_finite()
            && if self.steps == 1 {
                self.hi >= self.lo
            } else {
                self.hi > self.lo
            };
        if ok {
            Ok(())
        } else {
            Err(SearchError::InvalidRange {
                field,
                lo: as_f64(self.lo),
                hi: as_f64(self.hi),
                steps: self.steps,
            })
        }
    }

    /// The i-th sample. Endpoints are returned exactly; a single-step range
    /// samples its lower bound.
    pub fn value(&self, index: usize) -> T {
        if index == 0 {
            return self.lo;
        }
        if index == self.steps - 1 {
            return self.hi;
        }
        let fraction = lit::<T>(index as f64) / lit::<T>((self.steps - 1) as f64);
        self.lo + (self.hi - self.lo) * fraction
    }

    fn spacing(&self) -> T {
        if self.steps <= 1 {
            T::zero()
        } else {
            (self.hi - self.lo) / lit::<T>((self.steps - 1) as f64)
        }
    }
}

/// What the search optimizes for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignObjective<T> {
    /// Get the displacement ratio as close as possible to this value.
    TargetRatio(T),
    /// Get the focus step per minimum screw rotation (um) as close as
    /// possible to this value.
    TargetAccuracy(T),
}

impl<T: Float> DesignObjective<T> {
    fn target(&self) -> T {
        match *self {
            Self::TargetRatio(t) | Self::TargetAccuracy(t) => t,
        }
    }
}

/// Searchable box of lever designs.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignSpace<T> {
    pub l1: ParamRange<T>,
    pub l2: ParamRange<T>,
    pub l3: ParamRange<T>,
    pub t1: ParamRange<T>,
    pub t2: ParamRange<T>,
    pub b: ParamRange<T>,
    pub material: Material<T>,
    pub screw: ScrewSpec<T>,
    pub assignment: ThicknessAssignment,
    pub convention: DisplacementConvention,
    pub candidate_cap: usize,
}

impl<T: Float> DesignSpace<T> {
    /// Axis ranges in grid order; the last axis varies fastest.
    pub fn axes(&self) -> [(&'static str, ParamRange<T>); 6] {
        [
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("t1", self.t1),
            ("t2", self.t2),
            ("b", self.b),
        ]
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        for (field, range) in self.axes() {
            range.validate(field)?;
        }
        self.material.validate()?;
        ScrewSpec::new(
            self.screw.pitch_mm,
            self.screw.min_rotation_rad,
            self.screw.diameter_mm,
        )?;
        if self.candidate_cap == 0 {
            return Err(SearchError::InvalidConstraint {
                field: "candidate_cap",
                value: 0.0,
            });
        }
        Ok(())
    }

    /// Grid size as a width-proof count.
    pub fn candidate_count(&self) -> u128 {
        self.axes()
            .iter()
            .map(|(_, range)| range.steps as u128)
            .product()
    }

    fn geometry_at(&self, indices: [usize; 6]) -> SeesawGeometry<T> {
        let axes = self.axes();
        SeesawGeometry {
            l1: axes[0].1.value(indices[0]),
            l2: axes[1].1.value(indices[1]),
            l3: axes[2].1.value(indices[2]),
            t1: axes[3].1.value(indices[3]),
            t2: axes[4].1.value(indices[4]),
            b: axes[5].1.value(indices[5]),
            thickness_assignment: self.assignment,
        }
    }
}

/// Manufacturing and service limits every candidate must satisfy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignConstraints<T> {
    /// Smallest printable dimension (mm); every one of the six dimensions
    /// must reach it.
    pub min_feature: T,
    /// Lens travel the design must deliver (mm).
    pub required_stroke: T,
    /// Strength reserve against the material's bending strength.
    pub safety_factor: T,
    /// Largest tolerated sideways lens motion as a fraction of its stroke.
    pub max_parasitic_fraction: T,
    pub objective: DesignObjective<T>,
}

impl<T: Float> DesignConstraints<T> {
    /// Defaults for a desktop resin printer and a +-0.5 mm focus stroke.
    pub fn with_defaults(objective: DesignObjective<T>) -> Self {
        Self {
            min_feature: lit(0.2),
            required_stroke: lit(0.5),
            safety_factor: T::one(),
            max_parasitic_fraction: lit(0.15),
            objective,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let check = |field: &'static str, value: T, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(SearchError::InvalidConstraint {
                    field,
                    value: as_f64(value),
                })
            }
        };
        check(
            "min_feature",
            self.min_feature,
            self.min_feature > T::zero() && self.min_feature.is_finite(),
        )?;
        check(
            "required_stroke",
            self.required_stroke,
            self.required_stroke > T::zero() && self.required_stroke.is_finite(),
        )?;
        check(
            "safety_factor",
            self.safety_factor,
            self.safety_factor >= T::one() && self.safety_factor.is_finite(),
        )?;
        check(
            "max_parasitic_fraction",
            self.max_parasitic_fraction,
            self.max_parasitic_fraction > T::zero() && self.max_parasitic_fraction <= T::one(),
        )?;
        let target = self.objective.target();
        check("objective", target, target > T::zero() && target.is_finite())
    }
}

/// Why a candidate was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfeasibleReason {
    /// A dimension is below the printable feature size.
    Printability,
    /// Delivering the stroke would overstress a beam.
    Strength,
    /// The lens would wander sideways past the allowed fraction.
    Parasitic,
    /// Delivering the stroke needs a joint rotation outside the small-angle
    /// regime, where the models stop being trustworthy.
    RatioRange,
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Printability => "printability",
            Self::Strength => "strength",
            Self::Parasitic => "parasitic-motion",
            Self::RatioRange => "rotation-regime",
        })
    }
}

/// How many candidates each rejection reason claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InfeasibilityCensus {
    pub printability: usize,
    pub strength: usize,
    pub parasitic: usize,
    pub ratio_range: usize,
}

impl InfeasibilityCensus {
    pub fn total(&self) -> usize {
        self.printability + self.strength + self.parasitic + self.ratio_range
    }

    fn record(&mut self, reason: InfeasibleReason) {
        match reason {
            InfeasibleReason::Printability => self.printability += 1,
            InfeasibleReason::Strength => self.strength += 1,
            InfeasibleReason::Parasitic => self.parasitic += 1,
            InfeasibleReason::RatioRange => self.ratio_range += 1,
        }
    }
}

/// One evaluated design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignCandidate<T> {
    pub geometry: SeesawGeometry<T>,
    /// Displacement ratio under the search's convention.
    pub achieved_ratio: T,
    /// Focus step per minimum screw rotation (um).
    pub achieved_dz_um: T,
    /// Peak bending stress while delivering the stroke (MPa).
    pub max_stress_at_stroke: T,
    /// Sideways lens motion over lens stroke.
    pub parasitic_fraction: T,
    pub feasible: bool,
    pub infeasibility: Option<InfeasibleReason>,
    /// Distance from the objective target; smaller is better.
    pub objective_score: T,
}

/// Search result: feasible candidates best-first, plus the rejection census.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome<T> {
    pub ranked: Vec<DesignCandidate<T>>,
    pub census: InfeasibilityCensus,
    pub evaluated: usize,
}

/// Scores one geometry against the constraints.
///
/// Invalid geometries (a non-positive dimension) come back as infeasible
/// printability rejections with NaN metrics instead of an error, so sweeps
/// over wide ranges degrade gracefully.
pub fn evaluate_candidate<T: Float>(
    geometry: &SeesawGeometry<T>,
    material: &Material<T>,
    screw: &ScrewSpec<T>,
    constraints: &DesignConstraints<T>,
    convention: DisplacementConvention,
) -> Result<DesignCandidate<T>, SearchError> {
    material.validate()?;
    ScrewSpec::new(screw.pitch_mm, screw.min_rotation_rad, screw.diameter_mm)?;
    constraints.validate()?;
    Ok(evaluate_prechecked(
        geometry,
        material,
        screw,
        constraints,
        convention,
    ))
}

fn evaluate_prechecked<T: Float>(
    geometry: &SeesawGeometry<T>,
    material: &Material<T>,
    screw: &ScrewSpec<T>,
    constraints: &DesignConstraints<T>,
    convention: DisplacementConvention,
) -> DesignCandidate<T> {
    let nan = lit::<T>(f64::NAN);
    if geometry.validate().is_err() {
        return DesignCandidate {
            geometry: *geometry,
            achieved_ratio: nan,
            achieved_dz_um: nan,
            max_stress_at_stroke: nan,
            parasitic_fraction: nan,
            feasible: false,
            infeasibility: Some(InfeasibleReason::Printability),
            objective_score: nan,
        };
    }

    // Ratio and parasitic fraction are pure geometry; no modulus involved.
    let ratio = displacement_ratio(geometry, convention).expect("geometry already validated");
    let dz = tuning_accuracy(screw, screw.min_rotation_rad, ratio)
        .expect("screw validated, ratio positive")
        .delta_z_um;
    let arm = geometry.passive_arm();
    let parasitic = geometry.l2 / (lit::<T>(2.0) * arm);

    // Force that drives the lens through the stroke: the lens moves
    // arm * theta2 per unit force, with theta2 = F l1 l2 / (E I_s).
    let i_s = second_moment(&geometry.supporting_section()).expect("validated");
    let force_at_stroke = constraints.required_stroke * material.youngs_modulus * i_s
        / (arm * geometry.l1 * geometry.l2);
    let (sigma_h, sigma_s) = max_bending_stress(geometry, LoadCase::Force(force_at_stroke))
        .expect("validated force case");
    let stress = max(sigma_h, sigma_s);
    let theta_at_stroke = constraints.required_stroke / arm;

    let dims = [
        geometry.l1,
        geometry.l2,
        geometry.l3,
        geometry.t1,
        geometry.t2,
        geometry.b,
    ];
    let infeasibility = if dims.iter().any(|&d| d < constraints.min_feature) {
        Some(InfeasibleReason::Printability)
    } else if stress * constraints.safety_factor > material.bending_strength {
        Some(InfeasibleReason::Strength)
    } else if parasitic > constraints.max_parasitic_fraction {
        Some(InfeasibleReason::Parasitic)
    } else if abs(theta_at_stroke) >= lit(SMALL_ANGLE_LIMIT_RAD) {
        Some(InfeasibleReason::RatioRange)
    } else {
        None
    };

    let objective_score = match constraints.objective {
        DesignObjective::TargetRatio(target) => abs(ratio - target),
        DesignObjective::TargetAccuracy(target) => abs(dz - target),
    };

    DesignCandidate {
        geometry: *geometry,
        achieved_ratio: ratio,
        achieved_dz_um: dz,
        max_stress_at_stroke: stress,
        parasitic_fraction: parasitic,
        feasible: infeasibility.is_none(),
        infeasibility,
        objective_score,
    }
}

/// Total order for ranking: score, then stress, then the dimensions, so
/// equal-quality candidates still sort the same way on every run.
fn compare_candidates<T: Float>(a: &DesignCandidate<T>, b: &DesignCandidate<T>) -> Ordering {
    let keys = |c: &DesignCandidate<T>| {
        [
            c.objective_score,
            c.max_stress_at_stroke,
            c.geometry.l1,
            c.geometry.l2,
            c.geometry.l3,
            c.geometry.t1,
            c.geometry.t2,
            c.geometry.b,
        ]
    };
    for (x, y) in keys(a).into_iter().zip(keys(b)) {
        match x.partial_cmp(&y) {
            Some(Ordering::Equal) | None => continue,
            Some(order) => return order,
        }
    }
    Ordering::Equal
}

/// Evaluates the whole grid and ranks the feasible candidates.
///
/// The grid is the Cartesian product of the six axis ranges, refused up
/// front if it exceeds `candidate_cap`. Evaluation order never affects the
/// outcome: candidates are scored independently (in parallel) and ranked by
/// a total order.
pub fn grid_search<T: Float>(
    space: &DesignSpace<T>,
    constraints: &DesignConstraints<T>,
) -> Result<SearchOutcome<T>, SearchError> {
    space.validate()?;
    constraints.validate()?;
    let count = space.candidate_count();
    if count > space.candidate_cap as u128 {
        return Err(SearchError::CandidateCapExceeded {
            count,
            cap: space.candidate_cap,
        });
    }
    let count = count as usize;
    let lens: Vec<usize> = space.axes().iter().map(|(_, r)| r.steps).collect();

    let candidates: Vec<DesignCandidate<T>> = (0..count)
        .into_par_iter()
        .map(|flat| {
            let mut indices = [0usize; 6];
            let mut rest = flat;
            for axis in (0..6).rev() {
                indices[axis] = rest % lens[axis];
                rest /= lens[axis];
            }
            let geometry = space.geometry_at(indices);
            evaluate_prechecked(
                &geometry,
                &space.material,
                &space.screw,
                constraints,
                space.convention,
            )
        })
        .collect();

    let mut census = InfeasibilityCensus::default();
    let mut ranked = Vec::new();
    for candidate in candidates {
        match candidate.infeasibility {
            Some(reason) => census.record(reason),
            None => ranked.push(candidate),
        }
    }
    ranked.sort_by(compare_candidates);

    Ok(SearchOutcome {
        ranked,
        census,
        evaluated: count,
    })
}

/// Result of a refinement run.
#[derive(Debug, Clone, PartialEq)]
pub struct RefineOutcome<T> {
    pub best: DesignCandidate<T>,
    /// Every accepted improvement, in order.
    pub trace: Vec<DesignCandidate<T>>,
    /// Full coordinate sweeps performed.
    pub sweeps: usize,
}

/// Polishes a feasible geometry by coordinate descent inside the space's
/// bounds.
///
/// Starts from the grid spacing of each axis, tries one step up and down per
/// dimension, keeps any feasible improvement, and halves every step when a
/// full sweep finds none. Stops when the largest step drops below 1e-4 mm or
/// after `max_sweeps` sweeps.
pub fn local_refine<T: Float>(
    start: &SeesawGeometry<T>,
    space: &DesignSpace<T>,
    constraints: &DesignConstraints<T>,
    max_sweeps: usize,
) -> Result<RefineOutcome<T>, SearchError> {
    space.validate()?;
    constraints.validate()?;
    let mut best = evaluate_prechecked(
        &start.with_assignment(space.assignment),
        &space.material,
        &space.screw,
        constraints,
        space.convention,
    );
    if !best.feasible {
        return Err(SearchError::InfeasibleStart);
    }

    let axes = space.axes();
    let mut steps: Vec<T> = axes.iter().map(|(_, r)| r.spacing()).collect();
    // Fixed axes get no step and are never moved.
    let mut trace = Vec::new();
    let mut sweeps = 0;
    let floor = lit::<T>(1e-4);

    while sweeps < max_sweeps {
        if !steps.iter().fold(T::zero(), |acc, &s| max(acc, s)).gt(&floor) {
            break;
        }
        sweeps += 1;
        let mut improved = false;
        for axis in 0..6 {
            let step = steps[axis];
            if !is_positive(step) {
                continue;
            }
            let (_, range) = axes[axis];
            for direction in [step, -step] {
                let mut geometry = best.geometry;
                let slot = match axis {
                    0 => &mut geometry.l1,
                    1 => &mut geometry.l2,
                    2 => &mut geometry.l3,
                    3 => &mut geometry.t1,
                    4 => &mut geometry.t2,
                    _ => &mut geometry.b,
                };
                *slot = clamp(*slot + direction, range.lo, range.hi);
                let candidate = evaluate_prechecked(
                    &geometry,
                    &space.material,
                    &space.screw,
                    constraints,
                    space.convention,
                );
                if candidate.feasible && candidate.objective_score < best.objective_score {
                    best = candidate;
                    trace.push(candidate);
                    improved = true;
                }
            }
        }
        if !improved {
            for step in &mut steps {
                *step /= lit(2.0);
            }
        }
    }

    Ok(RefineOutcome { best, trace, sweeps })
}

fn clamp<T: Float>(value: T, lo: T, hi: T) -> T {
    if value < lo {
        lo
    } else if value > hi {
        hi
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn stock_space(steps: usize) -> DesignSpace<f64> {
        DesignSpace {
            l1: ParamRange::new(20.0, 30.0, steps),
            l2: ParamRange::new(4.0, 8.0, steps),
            l3: ParamRange::fixed(25.0),
            t1: ParamRange::fixed(3.0),
            t2: ParamRange::fixed(1.5),
            b: ParamRange::fixed(8.0),
            material: Material::resin(),
            screw: ScrewSpec::stock(),
            assignment: ThicknessAssignment::Swapped,
            convention: DisplacementConvention::KinematicTotal,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }

    fn ratio_11() -> DesignConstraints<f64> {
        DesignConstraints::with_defaults(DesignObjective::TargetRatio(11.0))
    }

    #[test]
    fn range_sampling_hits_both_endpoints_exactly() {
        let range = ParamRange::new(0.5, 3.0, 7);
        assert_eq!(range.value(0), 0.5);
        assert_eq!(range.value(6), 3.0);
        assert!(range.value(3) > 0.5 && range.value(3) < 3.0);

        let single = ParamRange::new(2.0, 5.0, 1);
        assert_eq!(single.value(0), 2.0);
        assert_eq!(ParamRange::fixed(4.0).value(0), 4.0);
    }

    #[test]
    fn stock_swapped_candidate_matches_hand_numbers() {
        let geometry = SeesawGeometry::stock(ThicknessAssignment::Swapped);
        let candidate = evaluate_candidate(
            &geometry,
            &Material::resin(),
            &ScrewSpec::stock(),
            &ratio_11(),
            DisplacementConvention::KinematicTotal,
        )
        .expect("valid inputs");
        assert!(candidate.feasible);
        assert_relative_eq!(candidate.achieved_ratio, 11.4255765199, max_relative = 1e-10);
        assert_relative_eq!(candidate.parasitic_fraction, 6.0 / 53.0, max_relative = 1e-12);
        // 0.5 mm of lens stroke takes F = 0.5 E I_s / (arm l1 l2) newtons,
        // and the thin hanging beam carries the peak stress.
        assert_relative_eq!(candidate.max_stress_at_stroke, 50.9433962264, max_relative = 1e-10);
        assert_relative_eq!(
            candidate.objective_score,
            11.4255765199f64 - 11.0,
            max_relative = 1e-8
        );
    }

    #[test]
    fn stress_scales_with_the_modulus_but_ratio_does_not() {
        let geometry = SeesawGeometry::stock(ThicknessAssignment::Swapped);
        let eval = |material: &Material<f64>| {
            evaluate_candidate(
                &geometry,
                material,
                &ScrewSpec::stock(),
                &ratio_11(),
                DisplacementConvention::KinematicTotal,
            )
            .expect("valid inputs")
        };
        let resin = eval(&Material::resin());
        let nylon = eval(&Material::nylon());
        assert_eq!(resin.achieved_ratio.to_bits(), nylon.achieved_ratio.to_bits());
        assert_relative_eq!(
            nylon.max_stress_at_stroke,
            resin.max_stress_at_stroke * 1300.0 / 2700.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn rejection_reasons_fire_in_order() {
        let screw = ScrewSpec::stock();
        let material = Material::resin();
        let convention = DisplacementConvention::KinematicTotal;

        let mut constraints = ratio_11();
        constraints.min_feature = 2.0;
        let thin = SeesawGeometry::stock(ThicknessAssignment::Swapped);
        let candidate =
            evaluate_candidate(&thin, &material, &screw, &constraints, convention).unwrap();
        assert_eq!(candidate.infeasibility, Some(InfeasibleReason::Printability));

        let mut constraints = ratio_11();
        constraints.required_stroke = 1.2;
        let candidate =
            evaluate_candidate(&thin, &material, &screw, &constraints, convention).unwrap();
        assert_eq!(candidate.infeasibility, Some(InfeasibleReason::Strength));

        let mut constraints = ratio_11();
        constraints.max_parasitic_fraction = 0.05;
        let candidate =
            evaluate_candidate(&thin, &material, &screw, &constraints, convention).unwrap();
        assert_eq!(candidate.infeasibility, Some(InfeasibleReason::Parasitic));

        // A short passive arm needs theta = stroke / arm = 0.1 rad for a
        // 1 mm stroke; the long compliant supporting path keeps stress and
        // the relaxed parasitic bound keeps sideways motion out of the way.
        let stubby = SeesawGeometry::new(
            25.0,
            18.0,
            8.5,
            3.0,
            1.5,
            8.0,
            ThicknessAssignment::Swapped,
        )
        .unwrap();
        let mut constraints = ratio_11();
        constraints.required_stroke = 1.0;
        constraints.max_parasitic_fraction = 1.0;
        let candidate =
            evaluate_candidate(&stubby, &Material::nylon(), &screw, &constraints, convention)
                .unwrap();
        assert_eq!(candidate.infeasibility, Some(InfeasibleReason::RatioRange));
    }

    #[test]
    fn invalid_geometry_degrades_to_a_printability_rejection() {
        let mut geometry = SeesawGeometry::stock(ThicknessAssignment::Swapped);
        geometry.l2 = -1.0;
        let candidate = evaluate_candidate(
            &geometry,
            &Material::resin(),
            &ScrewSpec::stock(),
            &ratio_11(),
            DisplacementConvention::KinematicTotal,
        )
        .expect("degenerate geometry is not an error");
        assert!(!candidate.feasible);
        assert_eq!(candidate.infeasibility, Some(InfeasibleReason::Printability));
        assert!(candidate.achieved_ratio.is_nan());
    }

    #[test]
    fn grid_search_ranks_and_counts_everything() {
        let outcome = grid_search(&stock_space(5), &ratio_11()).expect("searches");
        assert_eq!(outcome.evaluated, 25);
        assert_eq!(outcome.ranked.len() + outcome.census.total(), 25);
        assert!(!outcome.ranked.is_empty());
        for pair in outcome.ranked.windows(2) {
            assert!(pair[0].objective_score <= pair[1].objective_score);
        }
        // Every ranked candidate re-validates as feasible.
        for candidate in &outcome.ranked {
            assert!(candidate.feasible);
            assert!(candidate.infeasibility.is_none());
        }
    }

    #[test]
    fn grid_search_is_deterministic() {
        let space = stock_space(6);
        let first = grid_search(&space, &ratio_11()).expect("searches");
        let second = grid_search(&space, &ratio_11()).expect("searches");
        assert_eq!(first, second);
    }

    #[test]
    fn candidate_cap_is_enforced() {
        let mut space = stock_space(100);
        space.candidate_cap = 1000;
        let err = grid_search(&space, &ratio_11()).unwrap_err();
        assert!(matches!(
            err,
            SearchError::CandidateCapExceeded { count: 10000, cap: 1000 }
        ));
    }

    #[test]
    fn invalid_ranges_are_named() {
        let mut space = stock_space(5);
        space.l2 = ParamRange::new(8.0, 4.0, 5);
        assert!(matches!(
            grid_search(&space, &ratio_11()),
            Err(SearchError::InvalidRange { field: "l2", .. })
        ));

        let mut space = stock_space(5);
        space.t1 = ParamRange::new(3.0, 4.0, 0);
        assert!(matches!(
            space.validate(),
            Err(SearchError::InvalidRange { field: "t1", steps: 0, .. })
        ));
    }

    #[test]
    fn refinement_improves_the_score_within_bounds() {
        let space = stock_space(5);
        let constraints = ratio_11();
        let start = SeesawGeometry::stock(ThicknessAssignment::Swapped);
        let refined = local_refine(&start, &space, &constraints, 100).expect("refines");
        let start_score = evaluate_candidate(
            &start,
            &space.material,
            &space.screw,
            &constraints,
            space.convention,
        )
        .unwrap()
        .objective_score;
        assert!(refined.best.objective_score < start_score);
        assert!(refined.best.feasible);
        assert!(refined.sweeps <= 100);
        assert!(refined.best.geometry.l2 >= 4.0 && refined.best.geometry.l2 <= 8.0);
        // The trace is monotone improving.
        for pair in refined.trace.windows(2) {
            assert!(pair[1].objective_score < pair[0].objective_score);
        }
    }

    #[test]
    fn refinement_rejects_infeasible_starts() {
        let mut constraints = ratio_11();
        constraints.min_feature = 2.0;
        let start = SeesawGeometry::stock(ThicknessAssignment::Swapped);
        assert!(matches!(
            local_refine(&start, &stock_space(5), &constraints, 10),
            Err(SearchError::InfeasibleStart)
        ));
    }
}
