//! Command implementations. Every command builds its standard output as a
//! string (so tests can assert on it) and performs file writes itself.

use std::path::Path;

use seesaw_core::{
    accuracy_surface, depth_of_focus, displacement_ratio, grid_search, local_refine,
    max_safe_active_displacement, max_safe_force, oracle_displacement_ratio,
    oracle_displacement_ratio_with_mesh, required_ratio, second_moment, seesaw_tip_displacements,
    solve_frame, solve_load_case, support_rotation, tuning_accuracy, usaf_line_pairs_per_mm,
    usaf_linewidth_um, CrossSection, DesignCandidate, DesignObjective, DisplacementConvention,
    FixedDofs, FrameModel, LoadCase, Material, NodalLoad, OpticsSpec, ScrewSpec, SeesawGeometry,
    ThicknessAssignment, ORACLE_ELEMENTS_PER_SEGMENT,
};

use crate::args::{
    AdjudicateArgs, AnalyzeArgs, Cli, Command, FemValidateArgs, OptimizeArgs, SurfaceArgs,
    TuningArgs, UsafArgs,
};
use crate::config::{parse_config, RunConfig};
use crate::error::CliError;
use crate::report::{csv_line, fmt_sig, AdjudicationReport};

/// Dispatches one parsed invocation and returns its standard output.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze(args) => analyze(&args),
        Command::Adjudicate(args) => adjudicate(&args),
        Command::Tuning(args) => tuning(&args),
        Command::Surface(args) => surface(&args),
        Command::Usaf(args) => usaf(&args),
        Command::Optimize(args) => optimize(&args),
        Command::FemValidate(args) => fem_validate(&args),
    }
}

fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::io(path.display().to_string(), err))?;
    let parsed = parse_config(&text)?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(parsed.config)
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|err| CliError::io(path.display().to_string(), err))
}

fn geometry_line(geom: &SeesawGeometry<f64>) -> String {
    format!(
        "l1 {}  l2 {}  l3 {}  t1 {}  t2 {}  b {}  mm ({})",
        fmt_sig(geom.l1, 6),
        fmt_sig(geom.l2, 6),
        fmt_sig(geom.l3, 6),
        fmt_sig(geom.t1, 6),
        fmt_sig(geom.t2, 6),
        fmt_sig(geom.b, 6),
        geom.thickness_assignment
    )
}

/// `lo:hi:count` for sweeps; count >= 1, endpoints exact.
fn parse_sweep(token: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("sweep must be `lo:hi:count`, got `{token}`"));
    let parts: Vec<&str> = token.split(':').map(str::trim).collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if count == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(bad());
    }
    Ok((0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            }
        })
        .collect())
}

/// `lo:hi` for surface axes.
fn parse_pair(token: &str, what: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("{what} must be `lo:hi`, got `{token}`"));
    let parts: Vec<&str> = token.split(':').map(str::trim).collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?))
}

/// Joint rotation per newton, used to read the force back out of a
/// prescribed-displacement solution.
fn joint_rotation_per_newton(
    geom: &SeesawGeometry<f64>,
    material: &Material<f64>,
) -> Result<f64, CliError> {
    let i_s = second_moment(&geom.supporting_section())?;
    let (theta2, _) = support_rotation(geom.l1, geom.l2, i_s, material.youngs_modulus)?;
    Ok(theta2)
}

fn analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let config = load_config(&args.config)?;
    let mut geom = config.geometry;
    if let Some(assignment) = args.assignment {
        geom = geom.with_assignment(assignment);
    }
    let material = &config.material;
    let convention = args.convention;

    let load = match (args.force, args.active_mm) {
        (Some(force), None) => LoadCase::Force(force),
        (None, Some(active)) => LoadCase::PrescribedActive(active),
        (None, None) => LoadCase::Force(1.0),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let state = solve_load_case(&geom, material, load, convention)?;
    let force = match load {
        LoadCase::Force(force) => force,
        LoadCase::PrescribedActive(_) => {
            state.theta2 / joint_rotation_per_newton(&geom, material)?
        }
    };

    let stress = state.sigma_max_hanging.max(state.sigma_max_supporting);
    if stress > material.bending_strength {
        return Err(CliError::Constraint(format!(
            "peak bending stress {} MPa exceeds the material strength {} MPa at force {} N",
            fmt_sig(stress, 6),
            fmt_sig(material.bending_strength, 6),
            fmt_sig(force, 6)
        )));
    }

    let ratio = displacement_ratio(&geom, convention)?;
    let vertical_to_horizontal = 2.0 * geom.passive_arm() / geom.l2;
    let arc = seesaw_core::arc_shortening(&geom, state.theta3)?;
    let safe_force = max_safe_force(&geom, material, 1.0)?;
    let safe_travel = max_safe_active_displacement(&geom, material, 1.0, convention)?;

    let mut out = String::from("lever analysis\n");
    out.push_str(&format!("  geometry      {}\n", geometry_line(&geom)));
    out.push_str(&format!(
        "  material      {}  (E {} MPa, bending strength {} MPa)\n",
        material.name,
        fmt_sig(material.youngs_modulus, 6),
        fmt_sig(material.bending_strength, 6)
    ));
    out.push_str(&format!("  convention    {convention}\n"));
    match load {
        LoadCase::Force(f) => out.push_str(&format!("  load          force {} N\n", fmt_sig(f, 6))),
        LoadCase::PrescribedActive(x) => out.push_str(&format!(
            "  load          prescribed active {} mm (force {} N)\n",
            fmt_sig(x, 6),
            fmt_sig(force, 6)
        )),
    }
    out.push('\n');
    out.push_str(&format!(
        "  active tip displacement     {} mm\n",
        fmt_sig(state.active_total, 6)
    ));
    out.push_str(&format!(
        "  hanging-beam bending (w1)   {} mm\n",
        fmt_sig(state.w1, 6)
    ));
    out.push_str(&format!(
        "  joint rotation              {} rad\n",
        fmt_sig(state.theta2, 6)
    ));
    out.push_str(&format!(
        "  passive tip rise            {} mm  ({} um)\n",
        fmt_sig(state.w3, 6),
        fmt_sig(state.w3 * 1000.0, 6)
    ));
    out.push_str(&format!(
        "  passive tip horizontal      {} mm\n",
        fmt_sig(state.horizontal_p, 6)
    ));
    out.push_str(&format!(
        "  vertical:horizontal at P    {}\n",
        fmt_sig(vertical_to_horizontal, 6)
    ));
    out.push_str(&format!(
        "  arc shortening at P         {} mm  (second-order)\n",
        fmt_sig(arc, 6)
    ));
    out.push('\n');
    out.push_str(&format!(
        "  displacement ratio (A:P)    {}\n",
        fmt_sig(ratio, 6)
    ));
    out.push_str(&format!(
        "  peak stress, hanging        {} MPa\n",
        fmt_sig(state.sigma_max_hanging, 6)
    ));
    out.push_str(&format!(
        "  peak stress, supporting     {} MPa\n",
        fmt_sig(state.sigma_max_supporting, 6)
    ));
    out.push_str(&format!(
        "  safe force limit            {} N (safety factor 1)\n",
        fmt_sig(safe_force, 6)
    ));
    out.push_str(&format!(
        "  safe active travel          {} mm\n",
        fmt_sig(safe_travel, 6)
    ));

    if args.with_fem {
        let tips = seesaw_tip_displacements(&geom, material, force, ORACLE_ELEMENTS_PER_SEGMENT)?;
        let fem_ratio = oracle_displacement_ratio(&geom, convention)?;
        out.push('\n');
        out.push_str(&format!(
            "  frame-oracle cross-check ({ORACLE_ELEMENTS_PER_SEGMENT} elements per segment)\n"
        ));
        out.push_str(&format!(
            "  fem active tip              {} mm\n",
            fmt_sig(tips.active.v, 6)
        ));
        out.push_str(&format!(
            "  fem passive tip             {} mm\n",
            fmt_sig(tips.passive.v, 6)
        ));
        out.push_str(&format!(
            "  fem ratio ({convention})  {}\n",
            fmt_sig(fem_ratio, 6)
        ));
        out.push_str(&format!("  solve residual              {:.1e}\n", tips.residual));
    }

    if let Some(csv_path) = &args.csv {
        let sweep = parse_sweep(&args.sweep)?;
        let theta2_per_newton = joint_rotation_per_newton(&geom, material)?;
        let mut csv = if args.with_fem {
            csv_line(&[
                "force_N",
                "active_mm",
                "passive_um",
                "horizontal_um",
                "sigma_max_MPa",
                "fem_passive_um",
            ])
        } else {
            csv_line(&[
                "force_N",
                "active_mm",
                "passive_um",
                "horizontal_um",
                "sigma_max_MPa",
            ])
        };
        for active in &sweep {
            let row = solve_load_case(&geom, material, LoadCase::PrescribedActive(*active), convention)?;
            let row_force = row.theta2 / theta2_per_newton;
            let mut fields = vec![
                fmt_sig(row_force, 6),
                fmt_sig(*active, 6),
                fmt_sig(row.w3 * 1000.0, 6),
                fmt_sig(row.horizontal_p * 1000.0, 6),
                fmt_sig(row.sigma_max_hanging.max(row.sigma_max_supporting), 6),
            ];
            if args.with_fem {
                let tips =
                    seesaw_tip_displacements(&geom, material, row_force, ORACLE_ELEMENTS_PER_SEGMENT)?;
                fields.push(fmt_sig(tips.passive.v.abs() * 1000.0, 6));
            }
            csv.push_str(&csv_line(&fields));
        }
        write_file(csv_path, &csv)?;
        out.push('\n');
        out.push_str(&format!(
            "  wrote {} sweep rows to {}\n",
            sweep.len(),
            csv_path.display()
        ));
    }

    Ok(out)
}

fn adjudicate(args: &AdjudicateArgs) -> Result<String, CliError> {
    let config = load_config(&args.config)?;
    let report = AdjudicationReport::build(&config.geometry, args.elements)?;
    let mut out = report.render_text();
    if let Some(csv_path) = &args.csv {
        write_file(csv_path, &report.render_csv())?;
        out.push_str(&format!("  wrote the table to {}\n", csv_path.display()));
    }
    Ok(out)
}

fn tuning(args: &TuningArgs) -> Result<String, CliError> {
    let screw = ScrewSpec::new(args.pitch_mm, args.angle_deg.to_radians(), args.diameter_mm)?;

    let mut out = String::from("focus tuning\n");
    let (ratio, optics) = match (&args.ratio, &args.config) {
        (Some(ratio), None) => (*ratio, OpticsSpec::stock()),
        (None, Some(path)) => {
            let config = load_config(path)?;
            let mut geom = config.geometry;
            if let Some(assignment) = args.assignment {
                geom = geom.with_assignment(assignment);
            }
            let ratio = displacement_ratio(&geom, args.convention)?;
            out.push_str(&format!("  geometry      {}\n", geometry_line(&geom)));
            out.push_str(&format!("  convention    {}\n", args.convention));
            (ratio, config.optics)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give a ratio with --ratio or a geometry with --config".to_owned(),
            ));
        }
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };

    let result = tuning_accuracy(&screw, screw.min_rotation_rad, ratio)?;
    let dof = depth_of_focus(&optics)?;
    let ratio_for_micron = required_ratio(&screw, 1.0)?;

    out.push_str(&format!(
        "  rotation      {} deg ({} rad)\n",
        fmt_sig(args.angle_deg, 6),
        fmt_sig(screw.min_rotation_rad, 6)
    ));
    out.push_str(&format!("  pitch         {} mm per turn\n", fmt_sig(args.pitch_mm, 6)));
    out.push_str(&format!(
        "  screw travel  {} mm\n",
        fmt_sig(result.screw_travel_mm, 6)
    ));
    out.push_str(&format!("  ratio         {}\n", fmt_sig(ratio, 6)));
    out.push_str(&format!(
        "  focus step    {} um\n",
        fmt_sig(result.delta_z_um, 6)
    ));
    out.push('\n');
    out.push_str(&format!(
        "  depth of focus {} um (NA {}, wavelength {} um); the step is {}% of it\n",
        fmt_sig(dof, 6),
        fmt_sig(optics.numerical_aperture, 6),
        fmt_sig(optics.wavelength_um, 6),
        fmt_sig(100.0 * result.delta_z_um / dof, 6)
    ));
    out.push_str(&format!(
        "  ratio for a 1 um step at this rotation: {}\n",
        fmt_sig(ratio_for_micron, 6)
    ));
    Ok(out)
}

fn surface(args: &SurfaceArgs) -> Result<String, CliError> {
    let (rot_lo, rot_hi) = parse_pair(&args.rotation_deg, "--rotation-deg")?;
    let (pitch_lo, pitch_hi) = parse_pair(&args.pitch_mm, "--pitch-mm")?;
    let points = accuracy_surface(
        (rot_lo.to_radians(), rot_hi.to_radians()),
        (pitch_lo, pitch_hi),
        args.ratio,
        (args.samples, args.samples),
    )?;

    let mut csv = csv_line(&["rotation_deg", "pitch_mm", "delta_z_um"]);
    for point in &points {
        csv.push_str(&csv_line(&[
            fmt_sig(point.rotation_rad.to_degrees(), 6),
            fmt_sig(point.pitch_mm, 6),
            fmt_sig(point.delta_z_um, 6),
        ]));
    }

    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            Ok(format!(
                "wrote {} surface points to {}\n",
                points.len(),
                path.display()
            ))
        }
        None => Ok(csv),
    }
}

fn usaf(args: &UsafArgs) -> Result<String, CliError> {
    let width: f64 = usaf_linewidth_um(args.group, args.element)?;
    let pairs: f64 = usaf_line_pairs_per_mm(args.group, args.element)?;
    let mut out = String::from("usaf 1951 resolution target\n");
    out.push_str(&format!("  group {}, element {}\n", args.group, args.element));
    out.push_str(&format!(
        "  line width    {:.2} um  ({} um unrounded)\n",
        width,
        fmt_sig(width, 6)
    ));
    out.push_str(&format!("  line pairs    {} per mm\n", fmt_sig(pairs, 6)));
    Ok(out)
}

fn candidate_row(rank: usize, candidate: &DesignCandidate<f64>, fem: Option<f64>) -> String {
    let geom = &candidate.geometry;
    format!(
        "  {:>4}  {:>9} {:>9} {:>9} {:>8} {:>8} {:>8}  {:>11} {:>11} {:>11} {:>11} {:>12}  {}\n",
        rank,
        fmt_sig(geom.l1, 6),
        fmt_sig(geom.l2, 6),
        fmt_sig(geom.l3, 6),
        fmt_sig(geom.t1, 6),
        fmt_sig(geom.t2, 6),
        fmt_sig(geom.b, 6),
        fmt_sig(candidate.achieved_ratio, 6),
        fmt_sig(candidate.achieved_dz_um, 6),
        fmt_sig(candidate.max_stress_at_stroke, 6),
        fmt_sig(candidate.parasitic_fraction, 6),
        fmt_sig(candidate.objective_score, 6),
        match fem {
            Some(value) => fmt_sig(value, 6),
            None => String::new(),
        }
    )
}

fn optimize(args: &OptimizeArgs) -> Result<String, CliError> {
    let config = load_config(&args.config)?;
    let space = config.design_space()?;
    let constraints = config.require_constraints()?;
    let outcome = grid_search(&space, &constraints)?;

    let census = &outcome.census;
    let census_line = format!(
        "printability {}, strength {}, parasitic-motion {}, rotation-regime {}",
        census.printability, census.strength, census.parasitic, census.ratio_range
    );
    if outcome.ranked.is_empty() {
        return Err(CliError::Infeasible(format!(
            "no feasible candidate among {} evaluated; rejections: {census_line}",
            outcome.evaluated
        )));
    }

    let mut out = String::from("design search\n");
    out.push_str(&format!(
        "  objective     {}\n",
        match constraints.objective {
            DesignObjective::TargetRatio(t) => format!("displacement ratio {}", fmt_sig(t, 6)),
            DesignObjective::TargetAccuracy(t) => format!("focus step {} um", fmt_sig(t, 6)),
        }
    ));
    out.push_str(&format!("  convention    {}\n", space.convention));
    out.push_str(&format!("  assignment    {}\n", space.assignment));
    out.push_str(&format!("  evaluated     {} candidates\n", outcome.evaluated));
    out.push_str(&format!("  feasible      {}\n", outcome.ranked.len()));
    out.push_str(&format!(
        "  rejected      {}  ({census_line})\n",
        census.total()
    ));
    out.push('\n');
    out.push_str(&format!(
        "  {:>4}  {:>9} {:>9} {:>9} {:>8} {:>8} {:>8}  {:>11} {:>11} {:>11} {:>11} {:>12}  {}\n",
        "rank", "l1 mm", "l2 mm", "l3 mm", "t1 mm", "t2 mm", "b mm", "ratio", "dz um",
        "stress MPa", "parasitic", "score", "fem ratio"
    ));
    for (index, candidate) in outcome.ranked.iter().take(args.top).enumerate() {
        let fem = if index < args.fem_check {
            Some(oracle_displacement_ratio(
                &candidate.geometry,
                space.convention,
            )?)
        } else {
            None
        };
        out.push_str(&candidate_row(index + 1, candidate, fem));
    }

    if args.refine {
        let best = &outcome.ranked[0];
        let refined = local_refine(&best.geometry, &space, &constraints, args.max_sweeps)?;
        out.push('\n');
        out.push_str(&format!(
            "  refine: {} sweeps, score {} -> {}\n",
            refined.sweeps,
            fmt_sig(best.objective_score, 6),
            fmt_sig(refined.best.objective_score, 6)
        ));
        out.push_str(&format!(
            "  refined geometry  {}\n",
            geometry_line(&refined.best.geometry)
        ));
        out.push_str(&format!(
            "  refined ratio {}, focus step {} um, stress {} MPa\n",
            fmt_sig(refined.best.achieved_ratio, 6),
            fmt_sig(refined.best.achieved_dz_um, 6),
            fmt_sig(refined.best.max_stress_at_stroke, 6)
        ));
    }

    if let Some(csv_path) = &args.csv {
        let mut csv = csv_line(&[
            "rank",
            "l1_mm",
            "l2_mm",
            "l3_mm",
            "t1_mm",
            "t2_mm",
            "b_mm",
            "ratio",
            "dz_um",
            "stress_MPa",
            "parasitic_fraction",
            "score",
        ]);
        for (index, candidate) in outcome.ranked.iter().take(args.csv_limit).enumerate() {
            let geom = &candidate.geometry;
            csv.push_str(&csv_line(&[
                (index + 1).to_string(),
                fmt_sig(geom.l1, 6),
                fmt_sig(geom.l2, 6),
                fmt_sig(geom.l3, 6),
                fmt_sig(geom.t1, 6),
                fmt_sig(geom.t2, 6),
                fmt_sig(geom.b, 6),
                fmt_sig(candidate.achieved_ratio, 6),
                fmt_sig(candidate.achieved_dz_um, 6),
                fmt_sig(candidate.max_stress_at_stroke, 6),
                fmt_sig(candidate.parasitic_fraction, 6),
                fmt_sig(candidate.objective_score, 6),
            ]));
        }
        write_file(csv_path, &csv)?;
        out.push('\n');
        out.push_str(&format!(
            "  wrote {} ranked rows to {}\n",
            outcome.ranked.len().min(args.csv_limit),
            csv_path.display()
        ));
    }

    Ok(out)
}

fn rel_err(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(1e-300)
}

fn fem_validate(args: &FemValidateArgs) -> Result<String, CliError> {
    let geometry = match &args.config {
        Some(path) => load_config(path)?.geometry,
        None => SeesawGeometry::stock(ThicknessAssignment::AsPrinted),
    };
    if args.max_elements == 0 {
        return Err(CliError::Usage("--max-elements must be at least 1".to_owned()));
    }

    const TOLERANCE: f64 = 1e-9;
    let mut failures = Vec::new();
    let mut out = String::from("frame-oracle validation\n");

    // Patch tests: a single-element cantilever is nodally exact, so the tip
    // readings must match beam theory to rounding.
    let length = 25.0;
    let modulus = 2700.0;
    let section = CrossSection::new(8.0, 3.0)?;
    let inertia = second_moment(&section)?;

    let cantilever = |fy: f64, moment: f64| -> Result<_, CliError> {
        let mut model: FrameModel<f64> = FrameModel::new();
        let root = model.add_node(0.0, 0.0);
        let tip = model.add_node(length, 0.0);
        model.add_element(root, tip, section, modulus);
        model.fix_node(root, FixedDofs::clamped());
        model.add_load(NodalLoad {
            node: tip,
            fx: 0.0,
            fy,
            moment,
        });
        let solution = solve_frame(&model)?;
        Ok(solution.displacements[tip])
    };

    let mut patch = |label: &str, got: f64, want: f64, unit: &str| {
        let err = rel_err(got, want);
        let pass = err < TOLERANCE;
        if !pass {
            failures.push(format!("{label}: rel err {err:.1e}"));
        }
        out.push_str(&format!(
            "  patch: {:<28} {:>13} {unit}  theory {:>13} {unit}  rel err {:>8}  {}\n",
            label,
            fmt_sig(got, 9),
            fmt_sig(want, 9),
            format!("{err:.1e}"),
            if pass { "PASS" } else { "FAIL" }
        ));
    };

    let end_load = cantilever(-1.0, 0.0)?;
    patch(
        "end-loaded tip deflection",
        end_load.v.abs(),
        length.powi(3) / (3.0 * modulus * inertia),
        "mm",
    );
    let end_moment = cantilever(0.0, 25.0)?;
    patch(
        "end-moment tip rotation",
        end_moment.theta,
        25.0 * length / (modulus * inertia),
        "rad",
    );
    patch(
        "end-moment tip deflection",
        end_moment.v,
        25.0 * length.powi(2) / (2.0 * modulus * inertia),
        "mm",
    );

    // Mesh refinement: the elements are nodally exact, so refining must not
    // move the ratio beyond rounding noise.
    let convention = DisplacementConvention::KinematicTotal;
    out.push('\n');
    out.push_str(&format!(
        "  mesh refinement, displacement ratio ({}, {convention}):\n",
        geometry.thickness_assignment
    ));
    out.push_str(&format!(
        "  {:>18} {:>16} {:>20}\n",
        "elements/segment", "ratio", "drift vs coarsest"
    ));
    let reference = oracle_displacement_ratio_with_mesh(&geometry, convention, 1)?;
    let mut drift: f64 = 0.0;
    let mut n = 1;
    while n <= args.max_elements {
        let ratio = oracle_displacement_ratio_with_mesh(&geometry, convention, n)?;
        let delta = rel_err(ratio, reference);
        drift = drift.max(delta);
        out.push_str(&format!(
            "  {:>18} {:>16} {:>20}\n",
            n,
            fmt_sig(ratio, 10),
            format!("{delta:.1e}")
        ));
        n *= 2;
    }
    let mesh_pass = drift < TOLERANCE;
    if !mesh_pass {
        failures.push(format!("mesh refinement drift {drift:.1e}"));
    }
    out.push_str(&format!(
        "  largest drift {:.1e}  {} (tolerance {TOLERANCE:.0e})\n",
        drift,
        if mesh_pass { "PASS" } else { "FAIL" }
    ));

    if failures.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Numerical(format!(
            "frame-oracle validation failed: {}",
            failures.join("; ")
        )))
    }
}
