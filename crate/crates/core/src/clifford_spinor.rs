//! Complex Clifford modules, spin lifts of block rotations, supertraces,
//! the equivariant factors `a_g(W)` and the Gaussian Thom-form fiber
//! integral over a representation.
//!
//! Generators are built by the Jordan-Wigner tensor recursion on
//! `ceil(m/2)` two-dimensional factors: generator `2j` is
//! `i Z^(j) X I...`, generator `2j+1` is `i Z^(j) Y I...`, and the grading
//! is `Z Z ... Z`. With this basis the rotation plane `(2j, 2j+1)` acts on
//! the `j`-th factor only, so supertraces factor plane by plane.
//!
//! Phase convention: `a_g = tr_s(g | S(W^perp))`. For a single plane
//! rotated by `theta` this is `-2i sin(theta/2)`, which equals
//! `(-1) * Ahat_g^{-1}` for the flat equivariant Ahat block
//! `1 / (e^{i theta/2} - e^{-i theta/2})`. In general
//! `a_g = (-1)^{k_g} eps_g Ahat_g^{-1}`.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_rep::{ClassFunction, FiniteGroup};

pub type CMatrix = DMatrix<Complex64>;

const MAX_RANK: usize = 12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(which: char) -> CMatrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match which {
        'I' => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        'X' => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        'Y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => unreachable!("unknown Pauli label"),
    }
}

fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

/// A graded complex Clifford module of rank `m` with spinor dimension
/// `2^ceil(m/2)`.
#[derive(Clone, Debug)]
pub struct CliffordModule {
    rank: usize,
    gammas: Vec<CMatrix>,
    grading: CMatrix,
}

pub fn build_clifford(rank: usize) -> Result<CliffordModule> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::RankOutOfRange(rank));
    }
    let qubits = rank.div_ceil(2);
    let gammas = (0..rank)
        .map(|g| {
            let slot = g / 2;
            let factors: Vec<CMatrix> = (0..qubits)
                .map(|q| match q.cmp(&slot) {
                    std::cmp::Ordering::Less => pauli('Z'),
                    std::cmp::Ordering::Equal => pauli(if g % 2 == 0 { 'X' } else { 'Y' }),
                    std::cmp::Ordering::Greater => pauli('I'),
                })
                .collect();
            kron_all(&factors) * c(0.0, 1.0)
        })
        .collect();
    let grading = kron_all(&vec![pauli('Z'); qubits]);
    Ok(CliffordModule { rank, gammas, grading })
}

impl CliffordModule {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.grading.nrows()
    }

    pub fn gamma(&self, j: usize) -> &CMatrix {
        &self.gammas[j]
    }

    pub fn grading(&self) -> &CMatrix {
        &self.grading
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    /// `tr(grading * a)`.
    pub fn supertrace(&self, a: &CMatrix) -> Complex64 {
        (&self.grading * a).trace()
    }

    /// Largest entry of `g_j g_k + g_k g_j + 2 delta_jk` and of the
    /// anticommutators with the grading.
    pub fn relation_residual(&self) -> f64 {
        let id = self.identity();
        let mut worst: f64 = 0.0;
        for (j, a) in self.gammas.iter().enumerate() {
            for (k, b) in self.gammas.iter().enumerate() {
                let mut r = a * b + b * a;
                if j == k {
                    r += &id * c(2.0, 0.0);
                }
                worst = worst.max(r.camax());
            }
            let g = &self.grading;
            worst = worst.max((a * g + g * a).camax());
        }
        worst
    }

    /// Ordered product `g_{i1} g_{i2} ...`.
    pub fn product(&self, indices: &[usize]) -> CMatrix {
        indices.iter().fold(self.identity(), |acc, &j| acc * &self.gammas[j])
    }
}

/// A rotation in a disjoint set of coordinate planes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneRotation {
    pub plane: (usize, usize),
    pub angle: f64,
}

/// `sign * prod_j exp((theta_j/2) g_a g_b)` on the spinor module.
#[derive(Clone, Debug)]
pub struct SpinLift {
    rotations: Vec<PlaneRotation>,
    negative: bool,
    matrix: CMatrix,
}

pub fn spin_lift(module: &CliffordModule, rotations: &[PlaneRotation], negative: bool) -> Result<SpinLift> {
    let mut used = vec![false; module.rank()];
    for r in rotations {
        let (a, b) = r.plane;
        if a == b || a >= module.rank() || b >= module.rank() || used[a] || used[b] {
            return Err(Error::OverlappingPlanes);
        }
        used[a] = true;
        used[b] = true;
    }
    let id = module.identity();
    let mut matrix = rotations.iter().fold(id.clone(), |acc, r| {
        let gen = module.gamma(r.plane.0) * module.gamma(r.plane.1);
        let half = r.angle / 2.0;
        acc * (&id * c(half.cos(), 0.0) + gen * c(half.sin(), 0.0))
    });
    if negative {
        matrix = -matrix;
    }
    Ok(SpinLift { rotations: rotations.to_vec(), negative, matrix })
}

impl SpinLift {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn rotations(&self) -> &[PlaneRotation] {
        &self.rotations
    }

    /// The covered `SO(m)` element.
    pub fn rotation_matrix(&self, rank: usize) -> DMatrix<f64> {
        let mut r = DMatrix::<f64>::identity(rank, rank);
        for rot in &self.rotations {
            let (a, b) = rot.plane;
            let (s, co) = rot.angle.sin_cos();
            r[(a, a)] = co;
            r[(b, b)] = co;
            r[(b, a)] = s;
            r[(a, b)] = -s;
        }
        r
    }

    /// Largest deviation of `L g_j L^-1` from `sum_k R_kj g_k`.
    pub fn conjugation_residual(&self, module: &CliffordModule) -> f64 {
        let rot = self.rotation_matrix(module.rank());
        let inv = self.matrix.adjoint();
        (0..module.rank())
            .map(|j| {
                let lhs = &self.matrix * module.gamma(j) * &inv;
                let rhs = (0..module.rank()).fold(CMatrix::zeros(module.dim(), module.dim()), |acc, k| {
                    acc + module.gamma(k) * c(rot[(k, j)], 0.0)
                });
                (lhs - rhs).camax()
            })
            .fold(0.0, f64::max)
    }

    /// Commutes with the grading.
    pub fn is_even(&self, module: &CliffordModule, tol: f64) -> bool {
        let g = module.grading();
        (&self.matrix * g - g * &self.matrix).camax() <= tol
    }

    pub fn power(&self, n: u32) -> CMatrix {
        (0..n).fold(CMatrix::identity(self.matrix.nrows(), self.matrix.nrows()), |acc, _| acc * &self.matrix)
    }

    /// The lift generates a representation of the cyclic group of order `k`.
    pub fn is_homomorphism(&self, k: u32, tol: f64) -> bool {
        let p = self.power(k);
        (p.clone() - CMatrix::identity(p.nrows(), p.nrows())).camax() <= tol
    }
}

/// Action data of one group element on a real representation `W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementAction {
    /// Rotation angles of the 2-planes of `W^perp`, each in `(0, 2pi)`.
    pub angles: Vec<f64>,
    pub fixed_dim: usize,
    /// Selects the negative of the product-of-exponentials lift.
    #[serde(default)]
    pub negative: bool,
}

impl ElementAction {
    pub fn identity(fixed_dim: usize) -> Self {
        ElementAction { angles: Vec::new(), fixed_dim, negative: false }
    }

    pub fn dim(&self) -> usize {
        self.fixed_dim + 2 * self.angles.len()
    }

    /// Direct sum of two actions of the same element.
    pub fn direct_sum(&self, other: &ElementAction) -> ElementAction {
        let mut angles = self.angles.clone();
        angles.extend_from_slice(&other.angles);
        ElementAction { angles, fixed_dim: self.fixed_dim + other.fixed_dim, negative: self.negative ^ other.negative }
    }
}

fn check_angles(angles: &[f64]) -> Result<()> {
    for &a in angles {
        let r = a.rem_euclid(2.0 * PI);
        if !(a > 0.0 && a < 2.0 * PI) || r.min(2.0 * PI - r) < 1e-12 {
            return Err(Error::ZeroAngleInPerp(a));
        }
    }
    Ok(())
}

/// `tr_s` of the spin lift on `S(W^perp)` built from explicit matrices.
pub fn perp_supertrace(action: &ElementAction) -> Result<Complex64> {
    check_angles(&action.angles)?;
    if action.angles.is_empty() {
        return Ok(c(if action.negative { -1.0 } else { 1.0 }, 0.0));
    }
    let module = build_clifford(2 * action.angles.len())?;
    let rotations: Vec<PlaneRotation> = action
        .angles
        .iter()
        .enumerate()
        .map(|(j, &angle)| PlaneRotation { plane: (2 * j, 2 * j + 1), angle })
        .collect();
    let lift = spin_lift(&module, &rotations, action.negative)?;
    Ok(module.supertrace(lift.matrix()))
}

/// Per-element equivariant factors of a representation.
#[derive(Clone, Debug)]
pub struct EquivFactorTable {
    group: Arc<FiniteGroup>,
    values: Vec<Complex64>,
    half_perp_dims: Vec<usize>,
    fixed_dims: Vec<usize>,
}

impl EquivFactorTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, element: usize) -> Complex64 {
        self.values[element]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `k_g = dim(W^perp) / 2`.
    pub fn k(&self, element: usize) -> usize {
        self.half_perp_dims[element]
    }

    pub fn fixed_dim(&self, element: usize) -> usize {
        self.fixed_dims[element]
    }

    /// The factors as a class function; requires them to be constant on
    /// classes.
    pub fn to_class_function(&self, tol: f64) -> Option<ClassFunction> {
        let g = &self.group;
        for cl in 0..g.num_classes() {
            let elems = g.class_elements(cl);
            if elems.iter().any(|&e| (self.values[e] - self.values[elems[0]]).norm() > tol) {
                return None;
            }
        }
        Some(ClassFunction::from_element_fn(g.clone(), |e| self.values[e]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = (0..self.values.len())
            .map(|e| {
                serde_json::json!({
                    "element": e,
                    "a": [self.values[e].re, self.values[e].im],
                    "modulus": self.values[e].norm(),
                    "k": self.half_perp_dims[e],
                    "fixed_dim": self.fixed_dims[e],
                })
            })
            .collect();
        serde_json::json!({ "group": self.group.family(), "factors": rows })
    }
}

/// `a_g(W)` for every element. Odd-dimensional `W` gets a trivial line
/// appended first, which only changes `dim W^g`.
pub fn a_factor(group: &Arc<FiniteGroup>, actions: &[ElementAction]) -> Result<EquivFactorTable> {
    if actions.len() != group.order() {
        return Err(Error::LengthMismatch { expected: group.order(), got: actions.len() });
    }
    let id = &actions[0];
    if !id.angles.is_empty() || id.negative {
        return Err(Error::InvalidGeometry("the identity must act trivially".into()));
    }
    let mut values = Vec::with_capacity(actions.len());
    let mut half_perp_dims = Vec::with_capacity(actions.len());
    let mut fixed_dims = Vec::with_capacity(actions.len());
    for act in actions {
        if act.dim() != id.dim() {
            return Err(Error::InvalidGeometry(format!(
                "element acts on a space of dimension {} instead of {}",
                act.dim(),
                id.dim()
            )));
        }
        values.push(perp_supertrace(act)?);
        half_perp_dims.push(act.angles.len());
        fixed_dims.push(act.fixed_dim + act.dim() % 2);
    }
    Ok(EquivFactorTable { group: group.clone(), values, half_perp_dims, fixed_dims })
}

/// Element actions for the cyclic group of order `k` acting on
/// `R^fixed (+) C_{w_1} (+) ... (+) C_{w_n}`, where the generator rotates
/// plane `j` by `2 pi w_j / k`. The spin lift of `g^m` is the `m`-th power of
/// the generator's lift, so each element carries the sign picked up when
/// its angles are reduced into `(0, 2pi)`, including planes it fixes.
pub fn cyclic_actions(k: usize, weights: &[i64], fixed_dim: usize, negative_generator: bool) -> Vec<ElementAction> {
    (0..k)
        .map(|m| {
            let mut angles = Vec::new();
            let mut fixed = fixed_dim;
            let mut flips = if negative_generator { m } else { 0 };
            for &w in weights {
                let num = w * m as i64;
                let q = num.div_euclid(k as i64);
                let r = num.rem_euclid(k as i64);
                flips += q.rem_euclid(2) as usize;
                if r == 0 {
                    fixed += 2;
                } else {
                    angles.push(2.0 * PI * r as f64 / k as f64);
                }
            }
            ElementAction { angles, fixed_dim: fixed, negative: flips % 2 == 1 }
        })
        .collect()
}

/// Lift of the generator of the cyclic group of order `k` on all of `W`.
pub fn cyclic_generator_lift(k: usize, weights: &[i64], negative: bool) -> Result<(CliffordModule, SpinLift)> {
    let module = build_clifford((2 * weights.len()).max(2))?;
    let rotations: Vec<PlaneRotation> = weights
        .iter()
        .enumerate()
        .map(|(j, &w)| PlaneRotation { plane: (2 * j, 2 * j + 1), angle: 2.0 * PI * w as f64 / k as f64 })
        .collect();
    let lift = spin_lift(&module, &rotations, negative)?;
    Ok((module, lift))
}

/// A sign choice for which the generator lift is a homomorphism from the
/// cyclic group, if one exists.
pub fn homomorphic_sign(k: usize, weights: &[i64]) -> Result<Option<bool>> {
    for negative in [false, true] {
        let (_, lift) = cyclic_generator_lift(k, weights, negative)?;
        if lift.is_homomorphism(k as u32, 1e-9) {
            return Ok(Some(negative));
        }
    }
    Ok(None)
}

/// Normalisation per 2-plane of the Gaussian Thom form, fixed so that the
/// rank-2 form integrates to 1 at the identity.
pub fn thom_normalisation() -> Complex64 {
    c(0.0, -1.0 / (2.0 * PI))
}

fn trapezoid_gaussian(dim: usize, points: usize, half_width: f64) -> f64 {
    let h = 2.0 * half_width / (points - 1) as f64;
    let nodes: Vec<f64> = (0..points).map(|i| -half_width + h * i as f64).collect();
    let weights: Vec<f64> = (0..points).map(|i| if i == 0 || i == points - 1 { 0.5 * h } else { h }).collect();
    if dim == 0 {
        return 1.0;
    }
    // outer axis in parallel, partial sums reduced in index order
    let partials: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|i0| {
            let mut idx = vec![0usize; dim - 1];
            let mut acc = 0.0;
            loop {
                let mut r2 = nodes[i0] * nodes[i0];
                let mut w = weights[i0];
                for &j in &idx {
                    r2 += nodes[j] * nodes[j];
                    w *= weights[j];
                }
                acc += w * (-r2).exp();
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        return acc;
                    }
                    idx[pos] += 1;
                    if idx[pos] < points {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();
    partials.iter().sum()
}

/// Integrates `tr_s(g exp(A^2))` of the Gaussian superconnection
/// `A = c(v) + d` over `W^g`, for a single element acting by `action`.
///
/// The top-degree coefficient is `(-1)^r tr_s(g_1 ... g_2r L_g) e^{-|v|^2}`
/// times the normalisation per plane; the supertrace is taken on the full
/// module `S(W^g) (x) S(W^perp)` and the Gaussian is integrated by a
/// tensor trapezoid rule at `resolution` and `2 * resolution` points per
/// axis.
pub fn mq_thom_integral(action: &ElementAction, resolution: usize, tol: f64) -> Result<Complex64> {
    check_angles(&action.angles)?;
    let fixed = action.fixed_dim + action.dim() % 2;
    if fixed > 4 {
        return Err(Error::FixedDimensionTooLarge(fixed));
    }
    let r = fixed / 2;
    let k = action.angles.len();
    let rank = 2 * (r + k);
    let sign = if action.negative { -1.0 } else { 1.0 };
    let coefficient = if rank == 0 {
        c(sign, 0.0)
    } else {
        let module = build_clifford(rank)?;
        let rotations: Vec<PlaneRotation> = action
            .angles
            .iter()
            .enumerate()
            .map(|(j, &angle)| PlaneRotation { plane: (2 * (r + j), 2 * (r + j) + 1), angle })
            .collect();
        let lift = spin_lift(&module, &rotations, action.negative)?;
        let top: Vec<usize> = (0..2 * r).collect();
        let st = module.supertrace(&(module.product(&top) * lift.matrix()));
        let reorder = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
        st * reorder * thom_normalisation().powi(r as i32)
    };
    if r == 0 {
        return Ok(coefficient);
    }
    let resolution = resolution.max(4);
    let coarse = trapezoid_gaussian(2 * r, resolution, 6.5);
    let fine = trapezoid_gaussian(2 * r, 2 * resolution, 6.5);
    let diff = (coefficient * (fine - coarse)).norm();
    if diff > 10.0 * tol {
        return Err(Error::QuadratureNotConverged { diff, tol });
    }
    Ok(coefficient * fine)
}
