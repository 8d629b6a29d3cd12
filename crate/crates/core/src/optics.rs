//! Focus optics of the reversed-lens smartphone microscope.
//!
//! The lever's passive tip carries the lens, so one screw turn on the active
//! arm moves the lens by the screw's travel divided by the lever's
//! displacement ratio. These helpers convert between screw motion, axial
//! focus steps, the objective's depth of focus, and resolution-target line
//! widths.
//!
//! Units: millimeters for screw pitch and diameters, micrometers for axial
//! distances and line widths, radians internally for rotation. Wavelengths
//! are in micrometers (0.55 um is green light, the bundled default).

use crate::error::OpticsError;
use crate::scalar::{as_f64, is_positive, lit, Float};

/// Default design wavelength (um), mid-visible green.
pub const DEFAULT_WAVELENGTH_UM: f64 = 0.55;

const MM_TO_UM: f64 = 1000.0;

/// Imaging-side optical parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticsSpec<T> {
    /// Numerical aperture of the reversed lens.
    pub numerical_aperture: T,
    /// Design wavelength (um).
    pub wavelength_um: T,
    /// Lateral magnification, used for reporting only.
    pub magnification: T,
}

impl<T: Float> OpticsSpec<T> {
    pub fn new(
        numerical_aperture: T,
        wavelength_um: T,
        magnification: T,
    ) -> Result<Self, OpticsError> {
        if !(numerical_aperture > T::zero() && numerical_aperture < T::one())
            || !numerical_aperture.is_finite()
        {
            return Err(OpticsError::InvalidNumericalAperture(as_f64(
                numerical_aperture,
            )));
        }
        if !(wavelength_um > lit(0.3) && wavelength_um < lit(1.1)) {
            return Err(OpticsError::InvalidWavelength(as_f64(wavelength_um)));
        }
        if !is_positive(magnification) {
            return Err(OpticsError::InvalidMagnification(as_f64(magnification)));
        }
        Ok(Self {
            numerical_aperture,
            wavelength_um,
            magnification,
        })
    }

    /// Reversed phone camera lens: NA 0.12, green light, 6x.
    pub fn stock() -> Self {
        Self {
            numerical_aperture: lit(0.12),
            wavelength_um: lit(DEFAULT_WAVELENGTH_UM),
            magnification: lit(6.0),
        }
    }
}

/// Adjustment screw driving the active arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewSpec<T> {
    /// Thread pitch (mm per turn).
    pub pitch_mm: T,
    /// Smallest rotation a hand reliably applies (rad).
    pub min_rotation_rad: T,
    /// Nominal thread diameter (mm), informational.
    pub diameter_mm: T,
}

impl<T: Float> ScrewSpec<T> {
    pub fn new(pitch_mm: T, min_rotation_rad: T, diameter_mm: T) -> Result<Self, OpticsError> {
        if !is_positive(pitch_mm) {
            return Err(OpticsError::InvalidPitch(as_f64(pitch_mm)));
        }
        check_rotation(min_rotation_rad)?;
        if !is_positive(diameter_mm) {
            return Err(OpticsError::InvalidDiameter(as_f64(diameter_mm)));
        }
        Ok(Self {
            pitch_mm,
            min_rotation_rad,
            diameter_mm,
        })
    }

    /// Stock M6x2 adjustment screw, with a 5 degree minimum hand rotation.
    pub fn stock() -> Self {
        Self {
            pitch_mm: lit(2.0),
            min_rotation_rad: lit(5.0f64.to_radians()),
            diameter_mm: lit(6.0),
        }
    }

    /// Axial screw travel for a rotation (mm).
    pub fn travel_mm(&self, rotation_rad: T) -> T {
        self.pitch_mm * rotation_rad / lit(core::f64::consts::TAU)
    }
}

/// One tuning evaluation: screw motion in, lens motion out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuningResult<T> {
    /// Lens step along the optical axis (um).
    pub delta_z_um: T,
    /// Displacement ratio the lever contributed.
    pub ratio: T,
    /// Screw travel that produced the step (mm).
    pub screw_travel_mm: T,
}

/// Depth of focus `wavelength / NA^2` (um).
///
/// The square is spelled as a product so that independently written
/// expressions of the same formula agree bit for bit.
pub fn depth_of_focus<T: Float>(optics: &OpticsSpec<T>) -> Result<T, OpticsError> {
    OpticsSpec::new(
        optics.numerical_aperture,
        optics.wavelength_um,
        optics.magnification,
    )?;
    let na = optics.numerical_aperture;
    Ok(optics.wavelength_um / (na * na))
}

/// Smallest lens step the hand-screw-lever chain resolves (um).
///
/// `rotation -> travel = pitch * rotation / tau`, then the lever divides the
/// travel by `ratio`.
pub fn tuning_accuracy<T: Float>(
    screw: &ScrewSpec<T>,
    rotation_rad: T,
    ratio: T,
) -> Result<TuningResult<T>, OpticsError> {
    ScrewSpec::new(screw.pitch_mm, screw.min_rotation_rad, screw.diameter_mm)?;
    check_rotation(rotation_rad)?;
    if !is_positive(ratio) {
        return Err(OpticsError::InvalidRatio(as_f64(ratio)));
    }
    let screw_travel_mm = screw.travel_mm(rotation_rad);
    let delta_z_um = screw_travel_mm * lit(MM_TO_UM) / ratio;
    Ok(TuningResult {
        delta_z_um,
        ratio,
        screw_travel_mm,
    })
}

/// Displacement ratio needed to turn the screw's minimum rotation into a lens
/// step no larger than `target_delta_z_um`.
pub fn required_ratio<T: Float>(
    screw: &ScrewSpec<T>,
    target_delta_z_um: T,
) -> Result<T, OpticsError> {
    ScrewSpec::new(screw.pitch_mm, screw.min_rotation_rad, screw.diameter_mm)?;
    if !is_positive(target_delta_z_um) {
        return Err(OpticsError::InvalidTarget(as_f64(target_delta_z_um)));
    }
    let travel_um = screw.travel_mm(screw.min_rotation_rad) * lit(MM_TO_UM);
    Ok(travel_um / target_delta_z_um)
}

/// Line width of a 1951 resolution-target element (um),
/// `500 / 2^(group + (element - 1) / 6)`.
///
/// Groups -2 through 9 and elements 1 through 6 cover the printed range of
/// the chart.
pub fn usaf_linewidth_um<T: Float>(group: i32, element: i32) -> Result<T, OpticsError> {
    if !(-2..=9).contains(&group) {
        return Err(OpticsError::InvalidGroup(group));
    }
    if !(1..=6).contains(&element) {
        return Err(OpticsError::InvalidElement(element));
    }
    let exponent = lit::<T>(f64::from(group))
        + lit::<T>(f64::from(element - 1)) / lit::<T>(6.0);
    Ok(lit::<T>(500.0) / lit::<T>(2.0).powf(exponent))
}

/// Spatial frequency of the same element (line pairs per mm).
pub fn usaf_line_pairs_per_mm<T: Float>(group: i32, element: i32) -> Result<T, OpticsError> {
    let width_um = usaf_linewidth_um::<T>(group, element)?;
    Ok(lit::<T>(MM_TO_UM) / (lit::<T>(2.0) * width_um))
}

/// One sampled point of the accuracy surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint<T> {
    pub rotation_rad: T,
    pub pitch_mm: T,
    pub delta_z_um: T,
}

/// Samples `tuning_accuracy` over a rotation range (outer) and a pitch range
/// (inner), inclusive of both endpoints, at a fixed lever ratio.
///
/// Each axis needs at least two samples so the endpoints stay distinct.
pub fn accuracy_surface<T: Float>(
    rotation_range_rad: (T, T),
    pitch_range_mm: (T, T),
    ratio: T,
    samples: (usize, usize),
) -> Result<Vec<SurfacePoint<T>>, OpticsError> {
    let (rotation_samples, pitch_samples) = samples;
    if rotation_samples < 2 {
        return Err(OpticsError::InvalidSampleCount(rotation_samples));
    }
    if pitch_samples < 2 {
        return Err(OpticsError::InvalidSampleCount(pitch_samples));
    }
    check_range(rotation_range_rad)?;
    check_range(pitch_range_mm)?;
    if !is_positive(ratio) {
        return Err(OpticsError::InvalidRatio(as_f64(ratio)));
    }

    let mut points = Vec::with_capacity(rotation_samples * pitch_samples);
    for i in 0..rotation_samples {
        let rotation_rad = interpolate(rotation_range_rad, i, rotation_samples);
        for j in 0..pitch_samples {
            let pitch_mm = interpolate(pitch_range_mm, j, pitch_samples);
            let screw = ScrewSpec {
                pitch_mm,
                min_rotation_rad: rotation_rad,
                diameter_mm: lit(6.0),
            };
            let result = tuning_accuracy(&screw, rotation_rad, ratio)?;
            points.push(SurfacePoint {
                rotation_rad,
                pitch_mm,
                delta_z_um: result.delta_z_um,
            });
        }
    }
    Ok(points)
}

fn check_rotation<T: Float>(rotation_rad: T) -> Result<(), OpticsError> {
    let full_turn = lit::<T>(core::f64::consts::TAU);
    if !(rotation_rad > T::zero() && rotation_rad <= full_turn) {
        return Err(OpticsError::InvalidRotation(as_f64(rotation_rad)));
    }
    Ok(())
}

fn check_range<T: Float>(range: (T, T)) -> Result<(), OpticsError> {
    let (lo, hi) = range;
    if !(is_positive(lo) && hi.is_finite() && hi > lo) {
        return Err(OpticsError::InvalidRange {
            lo: as_f64(lo),
            hi: as_f64(hi),
        });
    }
    Ok(())
}

fn interpolate<T: Float>(range: (T, T), index: usize, samples: usize) -> T {
    // Endpoints are returned exactly, no arithmetic wobble.
    if index == 0 {
        return range.0;
    }
    if index == samples - 1 {
        return range.1;
    }
    let fraction = lit::<T>(index as f64) / lit::<T>((samples - 1) as f64);
    range.0 + (range.1 - range.0) * fraction
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn depth_of_focus_matches_the_stock_lens() {
        let dof = depth_of_focus(&OpticsSpec::<f64>::stock()).expect("valid");
        assert_relative_eq!(dof, 38.1944444444, max_relative = 1e-10);
        // Within 10% of the round 40 um figure quoted for this lens class.
        assert!((dof - 40.0).abs() / 40.0 < 0.10);
    }

    #[test]
    fn tuning_accuracy_reproduces_the_stock_chain() {
        let screw = ScrewSpec::<f64>::stock();
        let five_deg = 5.0f64.to_radians();
        let result = tuning_accuracy(&screw, five_deg, 11.0).expect("valid");
        assert_relative_eq!(result.delta_z_um, 2.52525252525, max_relative = 1e-10);
        assert_relative_eq!(
            result.screw_travel_mm,
            2.0 * five_deg / core::f64::consts::TAU,
            max_relative = 1e-12
        );

        let one_deg = tuning_accuracy(&screw, 1.0f64.to_radians(), 11.0).expect("valid");
        assert_relative_eq!(one_deg.delta_z_um, 0.505050505051, max_relative = 1e-10);
    }

    #[test]
    fn required_ratio_inverts_tuning_accuracy() {
        let screw = ScrewSpec::<f64>::stock();
        let ratio = required_ratio(&screw, 2.525).expect("valid");
        assert_relative_eq!(ratio, 11.00110011, max_relative = 1e-8);

        let back = tuning_accuracy(&screw, screw.min_rotation_rad, ratio).expect("valid");
        assert_relative_eq!(back.delta_z_um, 2.525, max_relative = 1e-12);
    }

    #[test]
    fn linewidths_match_the_printed_chart() {
        let w = |g, e| usaf_linewidth_um::<f64>(g, e).expect("on chart");
        assert_relative_eq!(w(9, 1), 0.9765625, max_relative = 1e-12);
        assert_relative_eq!(w(9, 3), 0.775098169906, max_relative = 1e-10);
        assert_eq!(w(0, 1), 500.0);
        assert_relative_eq!(w(-2, 6), 1122.46204831, max_relative = 1e-10);
        // Element 1 of the next group is exactly half of the previous one.
        assert_relative_eq!(w(3, 1), w(2, 1) / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn line_pairs_per_mm_is_the_reciprocal_pair_width() {
        let lp = usaf_line_pairs_per_mm::<f64>(0, 1).expect("on chart");
        assert_eq!(lp, 1.0);
        let lp93 = usaf_line_pairs_per_mm::<f64>(9, 3).expect("on chart");
        assert_relative_eq!(lp93, 1000.0 / (2.0 * 0.775098169906), max_relative = 1e-10);
    }

    #[test]
    fn chart_bounds_are_enforced() {
        assert!(matches!(
            usaf_linewidth_um::<f64>(10, 1),
            Err(OpticsError::InvalidGroup(10))
        ));
        assert!(matches!(
            usaf_linewidth_um::<f64>(-3, 1),
            Err(OpticsError::InvalidGroup(-3))
        ));
        assert!(matches!(
            usaf_linewidth_um::<f64>(4, 0),
            Err(OpticsError::InvalidElement(0))
        ));
        assert!(matches!(
            usaf_linewidth_um::<f64>(4, 7),
            Err(OpticsError::InvalidElement(7))
        ));
    }

    #[test]
    fn surface_covers_both_ranges_inclusively() {
        let points = accuracy_surface(
            (0.5f64.to_radians(), 30.0f64.to_radians()),
            (0.5, 3.0),
            11.0,
            (4, 3),
        )
        .expect("valid");
        assert_eq!(points.len(), 12);
        let first = points.first().expect("non-empty");
        let last = points.last().expect("non-empty");
        assert_eq!(first.rotation_rad, 0.5f64.to_radians());
        assert_eq!(first.pitch_mm, 0.5);
        assert_eq!(last.rotation_rad, 30.0f64.to_radians());
        assert_eq!(last.pitch_mm, 3.0);
        // Rotation varies in the outer loop.
        assert_eq!(points[1].rotation_rad, first.rotation_rad);
        assert!(points[3].rotation_rad > first.rotation_rad);
        for p in &points {
            let screw = ScrewSpec::new(p.pitch_mm, p.rotation_rad, 6.0).expect("valid");
            let expected = tuning_accuracy(&screw, p.rotation_rad, 11.0).expect("valid");
            assert_eq!(p.delta_z_um, expected.delta_z_um);
        }
    }

    #[test]
    fn surface_rejects_degenerate_requests() {
        assert!(matches!(
            accuracy_surface((0.1, 0.5), (0.5, 3.0), 11.0, (1, 3)),
            Err(OpticsError::InvalidSampleCount(1))
        ));
        assert!(matches!(
            accuracy_surface((0.5, 0.1), (0.5, 3.0), 11.0, (3, 3)),
            Err(OpticsError::InvalidRange { .. })
        ));
        assert!(matches!(
            accuracy_surface((0.1, 0.5), (0.5, 3.0), -1.0, (3, 3)),
            Err(OpticsError::InvalidRatio(_))
        ));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(matches!(
            OpticsSpec::new(0.0, 0.55, 6.0),
            Err(OpticsError::InvalidNumericalAperture(_))
        ));
        assert!(matches!(
            OpticsSpec::new(1.2, 0.55, 6.0),
            Err(OpticsError::InvalidNumericalAperture(_))
        ));
        assert!(matches!(
            OpticsSpec::new(0.12, 0.2, 6.0),
            Err(OpticsError::InvalidWavelength(_))
        ));
        assert!(matches!(
            ScrewSpec::new(0.0, 0.1, 6.0),
            Err(OpticsError::InvalidPitch(_))
        ));
        assert!(matches!(
            tuning_accuracy(&ScrewSpec::<f64>::stock(), -0.1, 11.0),
            Err(OpticsError::InvalidRotation(_))
        ));
        // More than a full turn is outside the single-adjustment model.
        assert!(matches!(
            tuning_accuracy(&ScrewSpec::<f64>::stock(), 7.0, 11.0),
            Err(OpticsError::InvalidRotation(_))
        ));
        assert!(matches!(
            required_ratio(&ScrewSpec::<f64>::stock(), 0.0),
            Err(OpticsError::InvalidTarget(_))
        ));
    }
}
