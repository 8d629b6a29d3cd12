//! Property tests of the optics chain: inversion round trips, monotone
//! behavior, and resolution-chart structure.

use proptest::prelude::*;
use seesaw_core::{
    depth_of_focus, required_ratio, tuning_accuracy, usaf_line_pairs_per_mm, usaf_linewidth_um,
    OpticsSpec, ScrewSpec,
};

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1e-300)
}

fn screw_strategy() -> impl Strategy<Value = ScrewSpec<f64>> {
    (0.25..5.0f64, 0.002..1.0f64, 2.0..10.0f64).prop_map(|(pitch, rotation, diameter)| {
        ScrewSpec {
            pitch_mm: pitch,
            min_rotation_rad: rotation,
            diameter_mm: diameter,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn required_ratio_round_trips_through_tuning_accuracy(
        screw in screw_strategy(),
        target in 0.05..50.0f64,
    ) {
        let ratio = required_ratio(&screw, target).unwrap();
        let achieved = tuning_accuracy(&screw, screw.min_rotation_rad, ratio)
            .unwrap()
            .delta_z_um;
        prop_assert!(rel_close(achieved, target, 1e-12));
    }

    #[test]
    fn tuning_accuracy_round_trips_through_required_ratio(
        screw in screw_strategy(),
        ratio in 0.5..50.0f64,
    ) {
        let dz = tuning_accuracy(&screw, screw.min_rotation_rad, ratio)
            .unwrap()
            .delta_z_um;
        let back = required_ratio(&screw, dz).unwrap();
        prop_assert!(rel_close(back, ratio, 1e-12));
    }

    #[test]
    fn depth_of_focus_recomputes_bit_for_bit(
        na in 0.01..0.95f64,
        wavelength in 0.35..1.05f64,
    ) {
        let spec = OpticsSpec::new(na, wavelength, 6.0).unwrap();
        let dof = depth_of_focus(&spec).unwrap();
        // The defining expression, written out independently here, lands on
        // the identical float.
        prop_assert_eq!(dof.to_bits(), (wavelength / (na * na)).to_bits());
        // And it shrinks quadratically: double the aperture, quarter the
        // depth (to rounding).
        if na < 0.47 {
            let double = depth_of_focus(&OpticsSpec::new(2.0 * na, wavelength, 6.0).unwrap())
                .unwrap();
            prop_assert!(rel_close(dof, 4.0 * double, 1e-12));
        }
    }

    #[test]
    fn focus_step_is_monotone_in_each_input(
        screw in screw_strategy(),
        ratio in 0.5..50.0f64,
        grow in 1.01..4.0f64,
    ) {
        let base = tuning_accuracy(&screw, screw.min_rotation_rad, ratio)
            .unwrap()
            .delta_z_um;

        let mut coarser = screw;
        coarser.pitch_mm *= grow;
        let with_pitch = tuning_accuracy(&coarser, screw.min_rotation_rad, ratio)
            .unwrap()
            .delta_z_um;
        prop_assert!(with_pitch > base);

        let with_rotation = tuning_accuracy(
            &screw,
            (screw.min_rotation_rad * grow).min(std::f64::consts::TAU),
            ratio,
        )
        .unwrap()
        .delta_z_um;
        prop_assert!(with_rotation > base);

        let with_ratio = tuning_accuracy(&screw, screw.min_rotation_rad, ratio * grow)
            .unwrap()
            .delta_z_um;
        prop_assert!(with_ratio < base);
    }

    #[test]
    fn resolution_chart_halves_per_group_and_steps_by_sixth_roots(
        group in -2..9i32,
        element in 1..=6i32,
    ) {
        let width = usaf_linewidth_um::<f64>(group, element).unwrap();
        let next_group = usaf_linewidth_um::<f64>(group + 1, element).unwrap();
        prop_assert!(rel_close(next_group, width / 2.0, 1e-12));

        if element < 6 {
            let next_element = usaf_linewidth_um::<f64>(group, element + 1).unwrap();
            prop_assert!(rel_close(next_element / width, 2f64.powf(-1.0 / 6.0), 1e-12));
        }

        // Line pairs per millimeter is the reciprocal of the pair width.
        let lp = usaf_line_pairs_per_mm::<f64>(group, element).unwrap();
        prop_assert!(rel_close(lp, 1000.0 / (2.0 * width), 1e-12));
    }
}
