//! Property tests of the closed-form lever model: linearity, symmetry,
//! convention algebra, and agreement with first-principles beam formulas.

use proptest::prelude::*;
use seesaw_core::{
    displacement_ratio, max_bending_stress, max_safe_force, second_moment, solve_load_case,
    DisplacementConvention, LoadCase, Material, SeesawGeometry, ThicknessAssignment,
    SMALL_ANGLE_LIMIT_RAD,
};

type Geometry = SeesawGeometry<f64>;

fn geometry_strategy() -> impl Strategy<Value = Geometry> {
    (
        5.0..50.0f64,
        2.0..20.0f64,
        5.0..50.0f64,
        0.5..5.0f64,
        0.5..5.0f64,
        2.0..15.0f64,
        prop::bool::ANY,
    )
        .prop_map(|(l1, l2, l3, t1, t2, b, swapped)| SeesawGeometry {
            l1,
            l2,
            l3,
            t1,
            t2,
            b,
            thickness_assignment: if swapped {
                ThicknessAssignment::Swapped
            } else {
                ThicknessAssignment::AsPrinted
            },
        })
}

/// Largest force that keeps the joint rotation inside the small-angle gate.
fn regime_force(geom: &Geometry, material: &Material<f64>) -> f64 {
    let i_s = second_moment(&geom.supporting_section()).unwrap();
    SMALL_ANGLE_LIMIT_RAD * material.youngs_modulus * i_s / (geom.l1 * geom.l2)
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn response_is_linear_in_the_force(
        geom in geometry_strategy(),
        frac in 0.05..0.95f64,
        k in 0.001..1.0f64,
    ) {
        let material = Material::resin();
        let force = frac * 0.9 * regime_force(&geom, &material);
        let convention = DisplacementConvention::KinematicTotal;
        let one = solve_load_case(&geom, &material, LoadCase::Force(force), convention).unwrap();
        let scaled =
            solve_load_case(&geom, &material, LoadCase::Force(k * force), convention).unwrap();
        prop_assert!(rel_close(scaled.w1, k * one.w1, 1e-12));
        prop_assert!(rel_close(scaled.w2, k * one.w2, 1e-12));
        prop_assert!(rel_close(scaled.w3, k * one.w3, 1e-12));
        prop_assert!(rel_close(scaled.theta1, k * one.theta1, 1e-12));
        prop_assert!(rel_close(scaled.theta2, k * one.theta2, 1e-12));
        prop_assert!(rel_close(scaled.active_total, k * one.active_total, 1e-12));
        prop_assert!(rel_close(scaled.horizontal_p, k * one.horizontal_p, 1e-12));
        prop_assert!(rel_close(scaled.sigma_max_hanging, k * one.sigma_max_hanging, 1e-12));
        prop_assert!(rel_close(scaled.sigma_max_supporting, k * one.sigma_max_supporting, 1e-12));
    }

    #[test]
    fn flipping_the_force_flips_every_kinematic_field_exactly(
        geom in geometry_strategy(),
        frac in 0.05..0.95f64,
    ) {
        let material = Material::nylon();
        let force = frac * 0.9 * regime_force(&geom, &material);
        let convention = DisplacementConvention::BendingOnly;
        let push = solve_load_case(&geom, &material, LoadCase::Force(force), convention).unwrap();
        let pull = solve_load_case(&geom, &material, LoadCase::Force(-force), convention).unwrap();
        // Sign flips are exact in floating point, so equality is bitwise.
        prop_assert_eq!(pull.w1, -push.w1);
        prop_assert_eq!(pull.w2, -push.w2);
        prop_assert_eq!(pull.w3, -push.w3);
        prop_assert_eq!(pull.theta1, -push.theta1);
        prop_assert_eq!(pull.theta2, -push.theta2);
        prop_assert_eq!(pull.theta3, -push.theta3);
        prop_assert_eq!(pull.active_total, -push.active_total);
        prop_assert_eq!(pull.horizontal_p, -push.horizontal_p);
        // Stress magnitudes do not flip.
        prop_assert_eq!(pull.sigma_max_hanging, push.sigma_max_hanging);
        prop_assert_eq!(pull.sigma_max_supporting, push.sigma_max_supporting);
    }

    #[test]
    fn displacement_ratio_is_constant_across_six_orders_of_force(
        geom in geometry_strategy(),
        frac in 0.05..0.95f64,
    ) {
        let material = Material::resin();
        let base = frac * 0.9 * regime_force(&geom, &material);
        for convention in [
            DisplacementConvention::BendingOnly,
            DisplacementConvention::KinematicTotal,
        ] {
            let expected = displacement_ratio(&geom, convention).unwrap();
            for magnitude in 0..=6 {
                let force = base * 10f64.powi(-magnitude);
                let state =
                    solve_load_case(&geom, &material, LoadCase::Force(force), convention).unwrap();
                prop_assert!(
                    rel_close(state.active_total / state.w3, expected, 1e-12),
                    "ratio drifted at force {force}: {} vs {expected}",
                    state.active_total / state.w3
                );
            }
        }
    }

    #[test]
    fn passive_arm_rotation_equals_joint_rotation(
        geom in geometry_strategy(),
        frac in 0.05..0.95f64,
    ) {
        let material = Material::resin();
        let force = frac * 0.9 * regime_force(&geom, &material);
        let state = solve_load_case(
            &geom,
            &material,
            LoadCase::Force(force),
            DisplacementConvention::KinematicTotal,
        )
        .unwrap();
        prop_assert_eq!(state.theta3, state.theta2);
    }

    #[test]
    fn solved_fields_match_first_principles_beam_formulas(
        geom in geometry_strategy(),
        frac in 0.05..0.95f64,
    ) {
        let material = Material::resin();
        let e = material.youngs_modulus;
        let force = frac * 0.9 * regime_force(&geom, &material);
        let state = solve_load_case(
            &geom,
            &material,
            LoadCase::Force(force),
            DisplacementConvention::BendingOnly,
        )
        .unwrap();

        let t_h = geom.hanging_thickness();
        let t_s = geom.supporting_thickness();
        let i_h = geom.b * t_h * t_h * t_h / 12.0;
        let i_s = geom.b * t_s * t_s * t_s / 12.0;
        let arm = geom.l3 + t_s / 2.0;

        prop_assert!(rel_close(state.w1, force * geom.l1.powi(3) / (3.0 * e * i_h), 1e-12));
        prop_assert!(rel_close(state.theta1, force * geom.l1 * geom.l1 / (2.0 * e * i_h), 1e-12));
        prop_assert!(rel_close(state.theta2, force * geom.l1 * geom.l2 / (e * i_s), 1e-12));
        prop_assert!(rel_close(
            state.w2,
            force * geom.l1 * geom.l2 * geom.l2 / (2.0 * e * i_s),
            1e-12
        ));
        prop_assert!(rel_close(state.w3, arm * state.theta2, 1e-12));
        prop_assert_eq!(state.horizontal_p, state.w2);
        // The one force-displacement identity behind the ratio algebra.
        prop_assert!(rel_close(state.w1 / state.w3, displacement_ratio(
            &geom,
            DisplacementConvention::BendingOnly,
        ).unwrap(), 1e-12));
    }

    #[test]
    fn prescribed_displacement_kinematics_do_not_depend_on_the_material(
        geom in geometry_strategy(),
        frac in 0.05..0.95f64,
    ) {
        // The prescribed displacement fixes the shape; the modulus only
        // rescales the force needed to hold it there.
        let convention = DisplacementConvention::KinematicTotal;
        let resin = Material::resin();
        let probe_force = 0.5 * regime_force(&geom, &resin);
        let probe =
            solve_load_case(&geom, &resin, LoadCase::Force(probe_force), convention).unwrap();
        let stroke_limit = SMALL_ANGLE_LIMIT_RAD * probe.active_total / probe.theta2;
        let stroke = frac * 0.9 * stroke_limit;

        let a = solve_load_case(&geom, &resin, LoadCase::PrescribedActive(stroke), convention)
            .unwrap();
        let b = solve_load_case(
            &geom,
            &Material::nylon(),
            LoadCase::PrescribedActive(stroke),
            convention,
        )
        .unwrap();
        prop_assert!(rel_close(a.w1, b.w1, 1e-12));
        prop_assert!(rel_close(a.w2, b.w2, 1e-12));
        prop_assert!(rel_close(a.w3, b.w3, 1e-12));
        prop_assert!(rel_close(a.theta2, b.theta2, 1e-12));
        prop_assert!(rel_close(a.active_total, b.active_total, 1e-12));
    }

    #[test]
    fn the_safe_force_exactly_spends_the_strength_budget(
        geom in geometry_strategy(),
        sf in 1.0..5.0f64,
    ) {
        let material = Material::resin();
        let force = max_safe_force(&geom, &material, sf).unwrap();
        let (sigma_h, sigma_s) =
            max_bending_stress(&geom, LoadCase::Force(force)).unwrap();
        let peak = sigma_h.max(sigma_s);
        prop_assert!(rel_close(peak * sf, material.bending_strength, 1e-12));
    }
}
