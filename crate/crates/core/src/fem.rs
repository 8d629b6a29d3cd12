//! Plane-frame finite element oracle.
//!
//! An independent structural model of the lever: 2-node Euler-Bernoulli frame
//! elements with three degrees of freedom per node (u, v, theta), assembled
//! into a dense stiffness system and factored by LU. Cubic beam elements
//! represent point-loaded prismatic members exactly, so for the seesaw frame
//! the solution is mesh-independent up to round-off. That makes this module
//! a cross-check on the closed forms in [`crate::mechanics`] rather than an
//! approximation of them.
//!
//! Axes: x to the right, y up, rotations counter-clockwise. Units stay
//! mm / N / MPa / rad, so stiffness entries are N/mm and moments N*mm.

use nalgebra::{DMatrix, DVector, SMatrix};

use crate::error::FemError;
use crate::mechanics::{CrossSection, DisplacementConvention, Material, SeesawGeometry};
use crate::scalar::{abs, as_f64, is_positive, lit, max, Float};

type M6<T> = SMatrix<T, 6, 6>;
type V6<T> = SMatrix<T, 6, 1>;

/// Node position (mm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameNode<T> {
    pub x: T,
    pub y: T,
}

/// Prismatic element between two nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameElement<T> {
    pub start: usize,
    pub end: usize,
    pub section: CrossSection<T>,
    /// Young's modulus of this element's material (MPa).
    pub youngs_modulus: T,
}

/// Which of a node's three degrees of freedom are fixed to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FixedDofs {
    pub u: bool,
    pub v: bool,
    pub theta: bool,
}

impl FixedDofs {
    /// Clamped: all three degrees of freedom fixed.
    pub fn clamped() -> Self {
        Self {
            u: true,
            v: true,
            theta: true,
        }
    }

    /// Pinned: translations fixed, rotation free.
    pub fn pinned() -> Self {
        Self {
            u: true,
            v: true,
            theta: false,
        }
    }

    fn any(&self) -> bool {
        self.u || self.v || self.theta
    }
}

/// Concentrated load on one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalLoad<T> {
    pub node: usize,
    /// Horizontal force (N).
    pub fx: T,
    /// Vertical force (N), positive up.
    pub fy: T,
    /// Concentrated moment (N*mm), positive counter-clockwise.
    pub moment: T,
}

/// Assembled frame: geometry, topology, supports, and loads.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrameModel<T> {
    pub nodes: Vec<FrameNode<T>>,
    pub elements: Vec<FrameElement<T>>,
    pub supports: Vec<(usize, FixedDofs)>,
    pub loads: Vec<NodalLoad<T>>,
}

impl<T: Float> FrameModel<T> {
    pub fn new() -> Self {
        Self {
            nodes: Vec::new(),
            elements: Vec::new(),
            supports: Vec::new(),
            loads: Vec::new(),
        }
    }

    /// Adds a node and returns its index.
    pub fn add_node(&mut self, x: T, y: T) -> usize {
        self.nodes.push(FrameNode { x, y });
        self.nodes.len() - 1
    }

    pub fn add_element(
        &mut self,
        start: usize,
        end: usize,
        section: CrossSection<T>,
        youngs_modulus: T,
    ) {
        self.elements.push(FrameElement {
            start,
            end,
            section,
            youngs_modulus,
        });
    }

    pub fn fix_node(&mut self, node: usize, dofs: FixedDofs) {
        self.supports.push((node, dofs));
    }

    pub fn add_load(&mut self, load: NodalLoad<T>) {
        self.loads.push(load);
    }

    /// Structural sanity: indices in range, no zero-length elements, at
    /// least one anchored degree of freedom, one connected graph.
    pub fn validate(&self) -> Result<(), FemError> {
        if self.nodes.is_empty() || self.elements.is_empty() {
            return Err(FemError::EmptyModel);
        }
        let count = self.nodes.len();
        let check_node = |node: usize| {
            if node < count {
                Ok(())
            } else {
                Err(FemError::UnknownNode { node, count })
            }
        };
        for (index, element) in self.elements.iter().enumerate() {
            check_node(element.start)?;
            check_node(element.end)?;
            element
                .section
                .validate()
                .map_err(FemError::Mechanics)?;
            if !is_positive(element.youngs_modulus) {
                return Err(FemError::Mechanics(
                    crate::error::MechanicsError::InvalidMaterial {
                        field: "youngs_modulus",
                        value: as_f64(element.youngs_modulus),
                    },
                ));
            }
            if !is_positive(element_length(self, element)) {
                return Err(FemError::ZeroLengthElement { index });
            }
        }
        for &(node, _) in &self.supports {
            check_node(node)?;
        }
        for load in &self.loads {
            check_node(load.node)?;
        }
        if !self.supports.iter().any(|(_, dofs)| dofs.any()) {
            return Err(FemError::NoFixedNode);
        }
        if !self.is_connected() {
            return Err(FemError::Disconnected);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.elements[0].start];
        seen[self.elements[0].start] = true;
        while let Some(node) = stack.pop() {
            for element in &self.elements {
                for (a, b) in [(element.start, element.end), (element.end, element.start)] {
                    if a == node && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Displacement of one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeDisplacement<T> {
    /// Horizontal (mm).
    pub u: T,
    /// Vertical (mm), positive up.
    pub v: T,
    /// Rotation (rad), positive counter-clockwise.
    pub theta: T,
}

impl<T: Float> NodeDisplacement<T> {
    fn zero() -> Self {
        Self {
            u: T::zero(),
            v: T::zero(),
            theta: T::zero(),
        }
    }
}

/// Solved frame state.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSolution<T> {
    pub displacements: Vec<NodeDisplacement<T>>,
    /// Peak fiber stress magnitude per element (MPa): bending plus axial.
    pub element_stresses: Vec<T>,
    /// Normalized backward-error residual of the solve.
    pub residual: T,
}

/// Assembles and solves the frame.
///
/// The residual gate `||K d - f|| / (||K|| ||d|| + ||f||) < 1000 eps` rejects
/// solves whose round-off grew past what a healthy LU factorization leaves
/// behind.
pub fn solve_frame<T: Float>(model: &FrameModel<T>) -> Result<FrameSolution<T>, FemError> {
    model.validate()?;
    let ndof = model.nodes.len() * 3;

    let mut fixed = vec![false; ndof];
    for &(node, dofs) in &model.supports {
        fixed[node * 3] |= dofs.u;
        fixed[node * 3 + 1] |= dofs.v;
        fixed[node * 3 + 2] |= dofs.theta;
    }
    let mut free_index = vec![usize::MAX; ndof];
    let mut nfree = 0;
    for (dof, &is_fixed) in fixed.iter().enumerate() {
        if !is_fixed {
            free_index[dof] = nfree;
            nfree += 1;
        }
    }
    if nfree == 0 {
        // Everything is anchored; the zero state trivially satisfies it.
        return Ok(FrameSolution {
            displacements: vec![NodeDisplacement::zero(); model.nodes.len()],
            element_stresses: vec![T::zero(); model.elements.len()],
            residual: T::zero(),
        });
    }

    let mut k_ff = DMatrix::<T>::zeros(nfree, nfree);
    for element in &model.elements {
        let k_global = element_global_stiffness(model, element);
        let dofs = element_dofs(element);
        for (row_local, &row_global) in dofs.iter().enumerate() {
            if fixed[row_global] {
                continue;
            }
            let row = free_index[row_global];
            for (col_local, &col_global) in dofs.iter().enumerate() {
                if fixed[col_global] {
                    continue;
                }
                let col = free_index[col_global];
                k_ff[(row, col)] += k_global[(row_local, col_local)];
            }
        }
    }

    let mut f_f = DVector::<T>::zeros(nfree);
    for load in &model.loads {
        for (offset, value) in [(0, load.fx), (1, load.fy), (2, load.moment)] {
            let dof = load.node * 3 + offset;
            if !fixed[dof] {
                f_f[free_index[dof]] += value;
            }
        }
    }

    let lu = k_ff.clone().lu();
    // Partial pivoting pushes a mechanism's null space into a vanishing
    // trailing pivot; backward error alone would not notice, because LU is
    // backward-stable even on singular systems.
    let pivots = lu.u().diagonal();
    let max_pivot = inf_norm(pivots.iter());
    let min_pivot = pivots.iter().fold(max_pivot, |acc, &x| {
        if abs(x) < acc {
            abs(x)
        } else {
            acc
        }
    });
    if min_pivot <= lit::<T>(1e3) * T::machine_epsilon() * max_pivot {
        return Err(FemError::UnderConstrained);
    }
    let d_f = lu.solve(&f_f).ok_or(FemError::UnderConstrained)?;
    if d_f.iter().any(|x| !x.is_finite()) {
        return Err(FemError::UnderConstrained);
    }

    let residual = backward_error(&k_ff, &d_f, &f_f);
    if residual >= lit::<T>(1e3) * T::machine_epsilon() {
        return Err(FemError::Unconverged {
            residual: as_f64(residual),
        });
    }

    let displacements: Vec<NodeDisplacement<T>> = (0..model.nodes.len())
        .map(|node| {
            let pick = |offset: usize| {
                let dof = node * 3 + offset;
                if fixed[dof] {
                    T::zero()
                } else {
                    d_f[free_index[dof]]
                }
            };
            NodeDisplacement {
                u: pick(0),
                v: pick(1),
                theta: pick(2),
            }
        })
        .collect();

    let element_stresses = model
        .elements
        .iter()
        .map(|element| element_peak_stress(model, element, &displacements))
        .collect();

    Ok(FrameSolution {
        displacements,
        element_stresses,
        residual,
    })
}

fn element_dofs<T>(element: &FrameElement<T>) -> [usize; 6] {
    let a = element.start * 3;
    let b = element.end * 3;
    [a, a + 1, a + 2, b, b + 1, b + 2]
}

fn element_length<T: Float>(model: &FrameModel<T>, element: &FrameElement<T>) -> T {
    let start = model.nodes[element.start];
    let end = model.nodes[element.end];
    let dx = end.x - start.x;
    let dy = end.y - start.y;
    (dx * dx + dy * dy).sqrt()
}

fn direction_cosines<T: Float>(model: &FrameModel<T>, element: &FrameElement<T>) -> (T, T, T) {
    let start = model.nodes[element.start];
    let end = model.nodes[element.end];
    let dx = end.x - start.x;
    let dy = end.y - start.y;
    let length = (dx * dx + dy * dy).sqrt();
    (dx / length, dy / length, length)
}

/// Local stiffness in element axes: axial rod plus Euler-Bernoulli beam.
fn local_stiffness<T: Float>(e: T, area: T, inertia: T, length: T) -> M6<T> {
    let mut k = M6::<T>::zeros();
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let six = lit::<T>(6.0);
    let twelve = lit::<T>(12.0);

    let axial = e * area / length;
    k[(0, 0)] = axial;
    k[(0, 3)] = -axial;
    k[(3, 0)] = -axial;
    k[(3, 3)] = axial;

    let ei = e * inertia;
    let l2 = length * length;
    let l3 = l2 * length;
    let b = [
        [twelve * ei / l3, six * ei / l2, -twelve * ei / l3, six * ei / l2],
        [six * ei / l2, four * ei / length, -six * ei / l2, two * ei / length],
        [-twelve * ei / l3, -six * ei / l2, twelve * ei / l3, -six * ei / l2],
        [six * ei / l2, two * ei / length, -six * ei / l2, four * ei / length],
    ];
    let map = [1usize, 2, 4, 5];
    for (i, &row) in map.iter().enumerate() {
        for (j, &col) in map.iter().enumerate() {
            k[(row, col)] = b[i][j];
        }
    }
    k
}

/// Global-to-local rotation, block diagonal over the two nodes.
fn transformation<T: Float>(c: T, s: T) -> M6<T> {
    let mut t = M6::<T>::zeros();
    for block in [0, 3] {
        t[(block, block)] = c;
        t[(block, block + 1)] = s;
        t[(block + 1, block)] = -s;
        t[(block + 1, block + 1)] = c;
        t[(block + 2, block + 2)] = T::one();
    }
    t
}

fn element_global_stiffness<T: Float>(model: &FrameModel<T>, element: &FrameElement<T>) -> M6<T> {
    let (c, s, length) = direction_cosines(model, element);
    let inertia = element.section.width * element.section.thickness.powi(3) / lit(12.0);
    let k_local = local_stiffness(
        element.youngs_modulus,
        element.section.area(),
        inertia,
        length,
    );
    let t = transformation(c, s);
    t.transpose() * k_local * t
}

/// Peak fiber stress `|N|/A + max(|M1|, |M2|) c / I` from recovered end
/// forces.
fn element_peak_stress<T: Float>(
    model: &FrameModel<T>,
    element: &FrameElement<T>,
    displacements: &[NodeDisplacement<T>],
) -> T {
    let (c, s, length) = direction_cosines(model, element);
    let inertia = element.section.width * element.section.thickness.powi(3) / lit(12.0);
    let k_local = local_stiffness(
        element.youngs_modulus,
        element.section.area(),
        inertia,
        length,
    );
    let t = transformation(c, s);

    let mut d_global = V6::<T>::zeros();
    for (i, node) in [element.start, element.end].into_iter().enumerate() {
        d_global[i * 3] = displacements[node].u;
        d_global[i * 3 + 1] = displacements[node].v;
        d_global[i * 3 + 2] = displacements[node].theta;
    }
    let f_local = k_local * (t * d_global);

    let axial = abs(f_local[0]);
    let moment = max(abs(f_local[2]), abs(f_local[5]));
    let half_thickness = element.section.thickness / lit(2.0);
    axial / element.section.area() + moment * half_thickness / inertia
}

fn backward_error<T: Float>(k: &DMatrix<T>, d: &DVector<T>, f: &DVector<T>) -> T {
    let r = k * d - f;
    let r_norm = inf_norm(r.iter());
    let k_norm = (0..k.nrows())
        .map(|i| k.row(i).iter().fold(T::zero(), |acc, &x| acc + abs(x)))
        .fold(T::zero(), max);
    let d_norm = inf_norm(d.iter());
    let f_norm = inf_norm(f.iter());
    let scale = k_norm * d_norm + f_norm;
    if scale > T::zero() {
        r_norm / scale
    } else {
        r_norm
    }
}

fn inf_norm<'a, T: Float>(values: impl Iterator<Item = &'a T>) -> T {
    values.fold(T::zero(), |acc, &x| max(acc, abs(x)))
}

/// Mesh density used by the ratio oracle; two elements per segment already
/// sits at round-off because the elements are nodally exact.
pub const ORACLE_ELEMENTS_PER_SEGMENT: usize = 2;

/// The lever meshed as a frame, with the landmark node indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SeesawFrame<T> {
    pub model: FrameModel<T>,
    /// Clamped base of the supporting beam.
    pub base: usize,
    /// Junction of the supporting beam and the hanging beam.
    pub joint: usize,
    /// Pressed end of the active arm.
    pub active_tip: usize,
    /// Lens end of the passive arm.
    pub passive_tip: usize,
}

/// Meshes the lever: supporting beam from the origin up to the joint, active
/// arm to the left, passive arm (length `l3 + t_s/2`, to the beam centerline)
/// to the right, each segment split into `elements_per_segment` pieces.
pub fn build_seesaw_frame<T: Float>(
    geom: &SeesawGeometry<T>,
    material: &Material<T>,
    elements_per_segment: usize,
) -> Result<SeesawFrame<T>, FemError> {
    geom.validate().map_err(FemError::Mechanics)?;
    material.validate().map_err(FemError::Mechanics)?;
    if elements_per_segment == 0 {
        return Err(FemError::InvalidSubdivision);
    }
    let n = elements_per_segment;
    let e = material.youngs_modulus;
    let supporting = geom.supporting_section();
    let hanging = geom.hanging_section();

    let mut model = FrameModel::new();
    let base = model.add_node(T::zero(), T::zero());

    // Supporting beam, base to joint.
    let mut previous = base;
    for i in 1..=n {
        let y = geom.l2 * lit::<T>(i as f64) / lit::<T>(n as f64);
        let node = model.add_node(T::zero(), y);
        model.add_element(previous, node, supporting, e);
        previous = node;
    }
    let joint = previous;

    // Active arm, joint toward -x; `previous` is still the joint here.
    for i in 1..=n {
        let x = -geom.l1 * lit::<T>(i as f64) / lit::<T>(n as f64);
        let node = model.add_node(x, geom.l2);
        model.add_element(previous, node, hanging, e);
        previous = node;
    }
    let active_tip = previous;

    // Passive arm, joint toward +x.
    previous = joint;
    let arm = geom.passive_arm();
    for i in 1..=n {
        let x = arm * lit::<T>(i as f64) / lit::<T>(n as f64);
        let node = model.add_node(x, geom.l2);
        model.add_element(previous, node, hanging, e);
        previous = node;
    }
    let passive_tip = previous;

    model.fix_node(base, FixedDofs::clamped());

    Ok(SeesawFrame {
        model,
        base,
        joint,
        active_tip,
        passive_tip,
    })
}

/// Displacements of the landmark nodes under a tip force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeesawTips<T> {
    pub active: NodeDisplacement<T>,
    pub passive: NodeDisplacement<T>,
    pub joint: NodeDisplacement<T>,
    /// Residual of the underlying solve.
    pub residual: T,
}

/// Solves the meshed lever for a downward force on the active tip.
pub fn seesaw_tip_displacements<T: Float>(
    geom: &SeesawGeometry<T>,
    material: &Material<T>,
    force: T,
    elements_per_segment: usize,
) -> Result<SeesawTips<T>, FemError> {
    let mut frame = build_seesaw_frame(geom, material, elements_per_segment)?;
    frame.model.add_load(NodalLoad {
        node: frame.active_tip,
        fx: T::zero(),
        fy: -force,
        moment: T::zero(),
    });
    let solution = solve_frame(&frame.model)?;
    Ok(SeesawTips {
        active: solution.displacements[frame.active_tip],
        passive: solution.displacements[frame.passive_tip],
        joint: solution.displacements[frame.joint],
        residual: solution.residual,
    })
}

/// Frame-model displacement ratio at a chosen mesh density.
///
/// Solved with a unit Young's modulus: the ratio of two displacements of the
/// same linear-elastic frame cannot depend on the modulus, and keeping it out
/// of the arithmetic entirely makes the independence exact, bit for bit.
///
/// `KinematicTotal` divides the full active-tip drop by the passive-tip rise.
/// `BendingOnly` first subtracts the rigid share `l1 * theta_joint` from the
/// active reading, mirroring the closed-form convention.
pub fn oracle_displacement_ratio_with_mesh<T: Float>(
    geom: &SeesawGeometry<T>,
    convention: DisplacementConvention,
    elements_per_segment: usize,
) -> Result<T, FemError> {
    let unit_material = Material {
        name: "unit-modulus".to_owned(),
        youngs_modulus: T::one(),
        bending_strength: T::one(),
        density: T::one(),
    };
    let tips = seesaw_tip_displacements(geom, &unit_material, T::one(), elements_per_segment)?;
    if tips.passive.v == T::zero() {
        return Err(FemError::DegenerateSolution);
    }
    let active_reading = match convention {
        DisplacementConvention::KinematicTotal => tips.active.v,
        // The load points down, active.v < 0, theta > 0; at x = -l1 the
        // rigid rotation contributes -l1 * theta, removed here by adding.
        DisplacementConvention::BendingOnly => tips.active.v + geom.l1 * tips.joint.theta,
    };
    Ok(abs(active_reading) / abs(tips.passive.v))
}

/// Frame-model displacement ratio at the oracle's standard mesh.
pub fn oracle_displacement_ratio<T: Float>(
    geom: &SeesawGeometry<T>,
    convention: DisplacementConvention,
) -> Result<T, FemError> {
    oracle_displacement_ratio_with_mesh(geom, convention, ORACLE_ELEMENTS_PER_SEGMENT)
}
