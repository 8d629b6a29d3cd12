//! Closed-form bending model of the seesaw lever.
//!
//! The lever is a T-shaped compliant frame. A vertical supporting beam of
//! length `l2` is clamped at its base; a horizontal hanging beam crosses its
//! tip. Pressing the active arm (length `l1` from the joint) bends the
//! hanging beam and rotates the supporting beam's tip; the passive arm on the
//! far side rotates almost rigidly about the joint, so the input displacement
//! arrives scaled down at the passive tip. An adjustment screw drives the
//! active arm, the passive arm carries the lens.
//!
//! Euler-Bernoulli closed forms, all in mm / N / MPa / rad:
//!
//! ```text
//! active arm (cantilever, end force F):   w1 = F l1^3 / (3 E I_h)
//!                                         theta1 = F l1^2 / (2 E I_h)
//! supporting beam (tip moment M = F l1):  theta2 = M l2 / (E I_s)
//!                                         w2 = M l2^2 / (2 E I_s)
//! passive arm (rigid, small angles):      theta3 = theta2
//!                                         w3 = (l3 + t_s/2) theta3
//! ```
//!
//! Sign convention: positive force presses the active tip down, and every
//! kinematic quantity is positive under positive force. `w3` is reported
//! along the passive tip's own travel direction, which is physically opposite
//! to the active tip's (seesaw action).
//!
//! The closed forms assume small angles; [`solve_load_case`] refuses load
//! cases that push `|theta2|` to [`SMALL_ANGLE_LIMIT_RAD`] or beyond.

use core::fmt;
use core::str::FromStr;

use crate::error::MechanicsError;
use crate::scalar::{abs, as_f64, is_positive, lit, max, Float};

/// Small-angle validity limit for the rigid-rotation step (rad).
pub const SMALL_ANGLE_LIMIT_RAD: f64 = 0.1;

/// Rectangular beam cross-section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSection<T> {
    /// Out-of-plane width (mm).
    pub width: T,
    /// In-plane thickness, the bending direction (mm).
    pub thickness: T,
}

impl<T: Float> CrossSection<T> {
    pub fn new(width: T, thickness: T) -> Result<Self, MechanicsError> {
        let section = Self { width, thickness };
        section.validate()?;
        Ok(section)
    }

    pub fn validate(&self) -> Result<(), MechanicsError> {
        require_positive("width", self.width)?;
        require_positive("thickness", self.thickness)
    }

    /// Cross-sectional area (mm^2).
    pub fn area(&self) -> T {
        self.width * self.thickness
    }
}

/// Second moment of area of a rectangular section, `width * thickness^3 / 12`
/// (mm^4).
pub fn second_moment<T: Float>(section: &CrossSection<T>) -> Result<T, MechanicsError> {
    section.validate()?;
    Ok(section.width * section.thickness.powi(3) / lit(12.0))
}

/// Printable material, linear-elastic as far as the models care.
#[derive(Debug, Clone, PartialEq)]
pub struct Material<T> {
    pub name: String,
    /// Young's modulus (MPa).
    pub youngs_modulus: T,
    /// Flexural strength (MPa).
    pub bending_strength: T,
    /// Density (kg/m^3); informational, the models ignore gravity.
    pub density: T,
}

impl<T: Float> Material<T> {
    pub fn new(
        name: impl Into<String>,
        youngs_modulus: T,
        bending_strength: T,
        density: T,
    ) -> Result<Self, MechanicsError> {
        let material = Self {
            name: name.into(),
            youngs_modulus,
            bending_strength,
            density,
        };
        material.validate()?;
        Ok(material)
    }

    /// Stereolithography resin, the stock build material.
    pub fn resin() -> Self {
        Self {
            name: "resin".to_owned(),
            youngs_modulus: lit(2700.0),
            bending_strength: lit(73.0),
            density: lit(1170.0),
        }
    }

    /// Selective-laser-sintered nylon, the alternative build material.
    pub fn nylon() -> Self {
        Self {
            name: "nylon".to_owned(),
            youngs_modulus: lit(1300.0),
            bending_strength: lit(46.0),
            density: lit(1020.0),
        }
    }

    /// Looks up a built-in material by case-insensitive name.
    pub fn by_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "resin" => Some(Self::resin()),
            "nylon" => Some(Self::nylon()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), MechanicsError> {
        let check = |field, value: T| {
            if value > T::zero() && value.is_finite() {
                Ok(())
            } else {
                Err(MechanicsError::InvalidMaterial {
                    field,
                    value: as_f64(value),
                })
            }
        };
        check("youngs_modulus", self.youngs_modulus)?;
        check("bending_strength", self.bending_strength)?;
        check("density", self.density)
    }
}

/// How the two labeled thicknesses map onto the frame's beams.
///
/// `AsPrinted` assigns `t1` to the hanging (horizontal) beam and `t2` to the
/// supporting (vertical) beam, exactly as the stock drawing labels them.
/// `Swapped` exchanges the two; that assignment is the one under which the
/// stock lever actually reduces motion (see the adjudication report).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ThicknessAssignment {
    #[default]
    AsPrinted,
    Swapped,
}

impl fmt::Display for ThicknessAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AsPrinted => "as-printed",
            Self::Swapped => "swapped",
        })
    }
}

impl FromStr for ThicknessAssignment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "as-printed" => Ok(Self::AsPrinted),
            "swapped" => Ok(Self::Swapped),
            other => Err(format!(
                "unknown thickness assignment `{other}`, expected `as-printed` or `swapped`"
            )),
        }
    }
}

/// Which measure counts as the active-side displacement.
///
/// `BendingOnly` uses the hanging beam's bending deflection `w1` alone; this
/// is the definition behind the closed-form ratio algebra. `KinematicTotal`
/// adds the rigid share of the joint rotation, `w1 + l1 * theta2`, which is
/// what a dial gauge resting on the active tip actually reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DisplacementConvention {
    #[default]
    BendingOnly,
    KinematicTotal,
}

impl fmt::Display for DisplacementConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BendingOnly => "bending-only",
            Self::KinematicTotal => "kinematic-total",
        })
    }
}

impl FromStr for DisplacementConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bending-only" => Ok(Self::BendingOnly),
            "kinematic-total" => Ok(Self::KinematicTotal),
            other => Err(format!(
                "unknown displacement convention `{other}`, expected `bending-only` or \
                 `kinematic-total`"
            )),
        }
    }
}

/// Lever dimensions (mm) plus the thickness assignment in force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeesawGeometry<T> {
    /// Active arm length, joint to pressed tip (mm).
    pub l1: T,
    /// Supporting beam length, clamped base to joint (mm).
    pub l2: T,
    /// Passive arm clear length beyond the supporting beam's face (mm).
    pub l3: T,
    /// First labeled thickness (mm).
    pub t1: T,
    /// Second labeled thickness (mm).
    pub t2: T,
    /// Out-of-plane width shared by every beam (mm).
    pub b: T,
    pub thickness_assignment: ThicknessAssignment,
}

impl<T: Float> SeesawGeometry<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        l1: T,
        l2: T,
        l3: T,
        t1: T,
        t2: T,
        b: T,
        thickness_assignment: ThicknessAssignment,
    ) -> Result<Self, MechanicsError> {
        let geometry = Self {
            l1,
            l2,
            l3,
            t1,
            t2,
            b,
            thickness_assignment,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    /// Factory dimensions of the stock lever: l1 25, l2 6, l3 25, t1 3,
    /// t2 1.5, b 8 (mm).
    pub fn stock(thickness_assignment: ThicknessAssignment) -> Self {
        Self {
            l1: lit(25.0),
            l2: lit(6.0),
            l3: lit(25.0),
            t1: lit(3.0),
            t2: lit(1.5),
            b: lit(8.0),
            thickness_assignment,
        }
    }

    pub fn validate(&self) -> Result<(), MechanicsError> {
        require_positive("l1", self.l1)?;
        require_positive("l2", self.l2)?;
        require_positive("l3", self.l3)?;
        require_positive("t1", self.t1)?;
        require_positive("t2", self.t2)?;
        require_positive("b", self.b)
    }

    pub fn with_assignment(mut self, assignment: ThicknessAssignment) -> Self {
        self.thickness_assignment = assignment;
        self
    }

    /// Thickness of the horizontal hanging beam under the assignment (mm).
    pub fn hanging_thickness(&self) -> T {
        match self.thickness_assignment {
            ThicknessAssignment::AsPrinted => self.t1,
            ThicknessAssignment::Swapped => self.t2,
        }
    }

    /// Thickness of the vertical supporting beam under the assignment (mm).
    pub fn supporting_thickness(&self) -> T {
        match self.thickness_assignment {
            ThicknessAssignment::AsPrinted => self.t2,
            ThicknessAssignment::Swapped => self.t1,
        }
    }

    pub fn hanging_section(&self) -> CrossSection<T> {
        CrossSection {
            width: self.b,
            thickness: self.hanging_thickness(),
        }
    }

    pub fn supporting_section(&self) -> CrossSection<T> {
        CrossSection {
            width: self.b,
            thickness: self.supporting_thickness(),
        }
    }

    /// Effective passive arm measured from the joint, `l3 + t_s / 2` (mm).
    pub fn passive_arm(&self) -> T {
        self.l3 + self.supporting_thickness() / lit(2.0)
    }
}

/// External load on the active tip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoadCase<T> {
    /// Force pressed onto the active tip (N, positive down).
    Force(T),
    /// Prescribed active-tip displacement (mm), interpreted under the
    /// solver's displacement convention.
    PrescribedActive(T),
}

/// Linear response of the lever to one load case.
///
/// Every kinematic field scales linearly with the applied force and negates
/// when the force flips sign. The two stress fields are magnitudes: they
/// scale with `|force|` and do not flip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeflectionState<T> {
    /// Bending deflection of the active tip relative to the joint (mm).
    pub w1: T,
    /// Transverse tip deflection of the supporting beam (mm).
    pub w2: T,
    /// Vertical displacement of the passive tip (mm); positive under positive
    /// force, physically opposite in direction to the active tip's travel.
    pub w3: T,
    /// Hanging-beam slope at the active tip, relative to the joint (rad).
    pub theta1: T,
    /// Joint rotation, equal to the supporting beam's tip rotation (rad).
    pub theta2: T,
    /// Passive-arm rotation; the arm is rigid, so this equals `theta2`.
    pub theta3: T,
    /// Horizontal displacement of the passive tip (mm), equal to `w2`: the
    /// whole hanging beam translates with the supporting beam's tip.
    pub horizontal_p: T,
    /// Active-side displacement under the chosen convention (mm).
    pub active_total: T,
    /// Peak bending stress magnitude in the hanging beam (MPa).
    pub sigma_max_hanging: T,
    /// Peak bending stress magnitude in the supporting beam (MPa).
    pub sigma_max_supporting: T,
}

/// Cantilever of length `l1` under end force: `(w1, theta1)` as
/// `(f l1^3 / (3 e i1), f l1^2 / (2 e i1))`.
pub fn active_cantilever<T: Float>(
    force: T,
    l1: T,
    i1: T,
    e: T,
) -> Result<(T, T), MechanicsError> {
    require_positive("l1", l1)?;
    require_positive("i1", i1)?;
    require_positive("e", e)?;
    let w1 = force * l1.powi(3) / (lit::<T>(3.0) * e * i1);
    let theta1 = force * l1.powi(2) / (lit::<T>(2.0) * e * i1);
    Ok((w1, theta1))
}

/// Beam of length `l2` under tip moment: `(theta2, w2)` as
/// `(m l2 / (e i2), m l2^2 / (2 e i2))`.
pub fn support_rotation<T: Float>(
    moment: T,
    l2: T,
    i2: T,
    e: T,
) -> Result<(T, T), MechanicsError> {
    require_positive("l2", l2)?;
    require_positive("i2", i2)?;
    require_positive("e", e)?;
    let theta2 = moment * l2 / (e * i2);
    let w2 = moment * l2.powi(2) / (lit::<T>(2.0) * e * i2);
    Ok((theta2, w2))
}

/// Rigid rotation of the passive arm: `(theta3, w3)` with `theta3 = theta2`
/// and `w3 = (l3 + t2/2) * theta3`.
///
/// `t2` here is the supporting beam's thickness; half of it extends the clear
/// arm length `l3` to the beam's centerline. Errors when `|theta2|` is at or
/// beyond [`SMALL_ANGLE_LIMIT_RAD`], where the rigid small-angle step stops
/// being a faithful description.
pub fn passive_tip<T: Float>(theta2: T, l3: T, t2: T) -> Result<(T, T), MechanicsError> {
    require_positive("l3", l3)?;
    require_positive("t2", t2)?;
    check_regime(theta2)?;
    let theta3 = theta2;
    let w3 = (l3 + t2 / lit(2.0)) * theta3;
    Ok((theta3, w3))
}

/// Closed-form displacement ratio, written exactly as the printed algebra:
/// `t_s^3 l1^2 / (3 t_h^3 l2 (l3 + t_s/2))` with the thickness assignment
/// resolved first.
///
/// The modulus cancels out of this expression, so the result is
/// bit-identical for any material.
pub fn displacement_ratio_closed_form<T: Float>(
    geom: &SeesawGeometry<T>,
) -> Result<T, MechanicsError> {
    geom.validate()?;
    let t_h = geom.hanging_thickness();
    let t_s = geom.supporting_thickness();
    let numerator = t_s.powi(3) * geom.l1.powi(2);
    let denominator = lit::<T>(3.0) * t_h.powi(3) * geom.l2 * geom.passive_arm();
    Ok(numerator / denominator)
}

/// Displacement ratio (active over passive) under either convention, still
/// modulus-free.
///
/// `KinematicTotal` adds the rigid-rotation share, which algebraically is
/// `l1 / (l3 + t_s/2)` on top of the bending-only ratio.
pub fn displacement_ratio<T: Float>(
    geom: &SeesawGeometry<T>,
    convention: DisplacementConvention,
) -> Result<T, MechanicsError> {
    let base = displacement_ratio_closed_form(geom)?;
    match convention {
        DisplacementConvention::BendingOnly => Ok(base),
        DisplacementConvention::KinematicTotal => Ok(base + geom.l1 / geom.passive_arm()),
    }
}

/// Per-newton response coefficients, the shared backbone of the solvers.
///
/// No small-angle gate here: these are linear coefficients, and the gate
/// applies to realized rotations, not to slopes per unit force.
struct UnitResponse<T> {
    w1: T,
    theta1: T,
    theta2: T,
    w2: T,
    w3: T,
    sigma_hanging: T,
    sigma_supporting: T,
}

fn unit_response<T: Float>(
    geom: &SeesawGeometry<T>,
    material: &Material<T>,
) -> Result<UnitResponse<T>, MechanicsError> {
    geom.validate()?;
    material.validate()?;
    let e = material.youngs_modulus;
    let i_h = second_moment(&geom.hanging_section())?;
    let i_s = second_moment(&geom.supporting_section())?;
    let (w1, theta1) = active_cantilever(T::one(), geom.l1, i_h, e)?;
    let moment = geom.l1; // unit force times the active arm
    let (theta2, w2) = support_rotation(moment, geom.l2, i_s, e)?;
    let w3 = geom.passive_arm() * theta2;
    let half = lit::<T>(2.0);
    let sigma_hanging = moment * (geom.hanging_thickness() / half) / i_h;
    let sigma_supporting = moment * (geom.supporting_thickness() / half) / i_s;
    Ok(UnitResponse {
        w1,
        theta1,
        theta2,
        w2,
        w3,
        sigma_hanging,
        sigma_supporting,
    })
}

fn active_coefficient<T: Float>(
    response: &UnitResponse<T>,
    geom: &SeesawGeometry<T>,
    convention: DisplacementConvention,
) -> T {
    match convention {
        DisplacementConvention::BendingOnly => response.w1,
        DisplacementConvention::KinematicTotal => response.w1 + geom.l1 * response.theta2,
    }
}

/// Solves one load case against the closed-form model.
///
/// Prescribed displacements are inverted through the chosen convention's
/// per-newton coefficient. Errors when the realized joint rotation leaves the
/// small-angle regime.
pub fn solve_load_case<T: Float>(
    geom: &SeesawGeometry<T>,
    material: &Material<T>,
    load: LoadCase<T>,
    convention: DisplacementConvention,
) -> Result<DeflectionState<T>, MechanicsError> {
    let response = unit_response(geom, material)?;
    let per_active = active_coefficient(&response, geom, convention);
    let force = match load {
        LoadCase::Force(f) => f,
        LoadCase::PrescribedActive(x) => {
            if !is_positive(per_active) {
                return Err(MechanicsError::SingularSystem);
            }
            x / per_active
        }
    };
    let theta2 = force * response.theta2;
    check_regime(theta2)?;
    Ok(DeflectionState {
        w1: force * response.w1,
        w2: force * response.w2,
        w3: force * response.w3,
        theta1: force * response.theta1,
        theta2,
        theta3: theta2,
        horizontal_p: force * response.w2,
        active_total: force * per_active,
        sigma_max_hanging: abs(force) * response.sigma_hanging,
        sigma_max_supporting: abs(force) * response.sigma_supporting,
    })
}

/// Second-order arc shortening of the passive tip toward the supporting
/// beam, `(l3 + t_s/2) * (1 - cos theta3)` (mm).
///
/// Informational companion to [`DeflectionState::horizontal_p`]: the linear
/// state keeps `horizontal_p = w2` so that every field stays force-linear,
/// and this quadratic term is reported separately.
pub fn arc_shortening<T: Float>(geom: &SeesawGeometry<T>, theta3: T) -> Result<T, MechanicsError> {
    geom.validate()?;
    Ok(geom.passive_arm() * (T::one() - theta3.cos()))
}

/// Peak bending stress magnitudes `(hanging, supporting)` in MPa.
///
/// Both beams carry the same root moment `|f| * l1`; each sees it over its
/// own section. Requires a force load case.
pub fn max_bending_stress<T: Float>(
    geom: &SeesawGeometry<T>,
    load: LoadCase<T>,
) -> Result<(T, T), MechanicsError> {
    let force = match load {
        LoadCase::Force(f) => f,
        LoadCase::PrescribedActive(_) => return Err(MechanicsError::ForceLoadRequired),
    };
    geom.validate()?;
    let i_h = second_moment(&geom.hanging_section())?;
    let i_s = second_moment(&geom.supporting_section())?;
    let moment = abs(force) * geom.l1;
    let half = lit::<T>(2.0);
    Ok((
        moment * (geom.hanging_thickness() / half) / i_h,
        moment * (geom.supporting_thickness() / half) / i_s,
    ))
}

/// Largest force whose peak stress stays within
/// `bending_strength / safety_factor` (N).
pub fn max_safe_force<T: Float>(
    geom: &SeesawGeometry<T>,
    material: &Material<T>,
    safety_factor: T,
) -> Result<T, MechanicsError> {
    material.validate()?;
    if !(safety_factor.is_finite() && safety_factor >= T::one()) {
        return Err(MechanicsError::InvalidSafetyFactor(as_f64(safety_factor)));
    }
    let (sigma_h, sigma_s) = max_bending_stress(geom, LoadCase::Force(T::one()))?;
    let per_newton = max(sigma_h, sigma_s);
    Ok(material.bending_strength / (safety_factor * per_newton))
}

/// Active-tip displacement at [`max_safe_force`] under `convention` (mm).
///
/// Deliberately extrapolates the linear model without the small-angle gate:
/// this is a strength bound, not a deflection-model guarantee, and stiff
/// variants reach their strength limit well beyond the gate.
pub fn max_safe_active_displacement<T: Float>(
    geom: &SeesawGeometry<T>,
    material: &Material<T>,
    safety_factor: T,
    convention: DisplacementConvention,
) -> Result<T, MechanicsError> {
    let force = max_safe_force(geom, material, safety_factor)?;
    let response = unit_response(geom, material)?;
    Ok(force * active_coefficient(&response, geom, convention))
}

fn require_positive<T: Float>(field: &'static str, value: T) -> Result<(), MechanicsError> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(MechanicsError::InvalidGeometry {
            field,
            value: as_f64(value),
        })
    }
}

fn check_regime<T: Float>(theta: T) -> Result<(), MechanicsError> {
    let limit = lit::<T>(SMALL_ANGLE_LIMIT_RAD);
    if abs(theta) >= limit {
        return Err(MechanicsError::OutOfRegime {
            theta_rad: as_f64(theta),
            limit_rad: SMALL_ANGLE_LIMIT_RAD,
        });
    }
    Ok(())
}
