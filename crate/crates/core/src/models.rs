//! Model geometries and the pushforward identities checked on them.
//!
//! Circle: `X` has circumference `2 pi`, `Z/k` rotates it by `2 pi / k`, and
//! the quotient `Y` has circumference `2 pi / k`. A spinor on `Y` with offset
//! `s` twisted by a flat line of holonomy `e^{2 pi i beta}` has eigenvalues
//! `k (m + s + beta)`. Sphere: `Z/k` rotates `S^2` about the poles and acts on
//! the line bundle of degree `n` with fiber weight `p_N` at the north pole.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::char_forms::{
    a_hat_series, ch_series, fixed_point_contribution, ChernRootSpec, FixedPointConvention, FormSeries, RootEntry,
};
use crate::error::{Error, Result};
use crate::group_rep::{
    build_group, regular_character, CharacterTable, ClassFunction, GroupFamily, VirtualCharacter, MAX_ORDER,
};
use crate::r_torus::{project, torus_act, torus_distance, torus_sub, TorusElement};
use crate::spectral_eta::{spectral_flow, xi_closed_form, xi_reduced, ArithmeticSpectrum, SpectrumFamily};

/// Default tolerance for route-equality checks.
pub const ROUTE_TOL: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn cyclic_table(k: usize) -> Result<Arc<CharacterTable>> {
    Ok(build_group(&GroupFamily::Cyclic { k })?.1)
}

fn route_check(check: &str, distance: f64) -> Result<()> {
    if distance.is_finite() && distance <= ROUTE_TOL {
        Ok(())
    } else {
        Err(Error::RouteMismatch { check: check.to_string(), distance })
    }
}

/// Verification record `{check, inputs, lhs, rhs, distance, pass}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: serde_json::Value,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub distance: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(
        check: impl Into<String>,
        inputs: serde_json::Value,
        lhs: serde_json::Value,
        rhs: serde_json::Value,
        distance: f64,
        tol: f64,
    ) -> Self {
        CheckReport { check: check.into(), inputs, lhs, rhs, distance, pass: distance.is_finite() && distance <= tol }
    }

    fn torus(check: &str, inputs: serde_json::Value, lhs: &TorusElement, rhs: &TorusElement, tol: f64) -> Result<Self> {
        let d = torus_distance(lhs, rhs)?;
        Ok(CheckReport::new(check, inputs, lhs.to_json(), rhs.to_json(), d, tol))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleGeometry {
    pub k: usize,
    /// Spin structure offset, `0` or `1/2`.
    pub spin_offset: f64,
    /// Holonomy parameter of the flat line on the quotient, in `[0, 1)`.
    pub beta: f64,
    /// Index of the irreducible of `Z/k` twisting the bundle.
    #[serde(default)]
    pub chi: usize,
    /// Extra weight `delta` in the rotation phase on eigensections; the
    /// generator acts with an additional `e^{2 pi i delta / k}`.
    #[serde(default)]
    pub lift_weight: i64,
}

impl CircleGeometry {
    /// Validates and checks that the Fourier and quotient routes agree.
    pub fn new(k: usize, spin_offset: f64, beta: f64, chi: usize) -> Result<Self> {
        let g = CircleGeometry { k, spin_offset, beta, chi, lift_weight: 0 };
        circle_spectrum(&g)?;
        Ok(g)
    }

    pub fn with_lift_weight(mut self, delta: i64) -> Result<Self> {
        self.lift_weight = delta;
        circle_spectrum(&self)?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > MAX_ORDER {
            return Err(Error::InvalidGeometry(format!("cyclic order {} outside 1..={MAX_ORDER}", self.k)));
        }
        if self.spin_offset != 0.0 && self.spin_offset != 0.5 {
            return Err(Error::InvalidGeometry(format!("spin offset {} is not 0 or 1/2", self.spin_offset)));
        }
        if !(0.0..1.0).contains(&self.beta) {
            return Err(Error::InvalidGeometry(format!("beta {} outside [0, 1)", self.beta)));
        }
        if self.chi >= self.k {
            return Err(Error::InvalidGeometry(format!("character index {} not below {}", self.chi, self.k)));
        }
        Ok(())
    }

    pub fn table(&self) -> Result<Arc<CharacterTable>> {
        cyclic_table(self.k)
    }

    fn twist(&self) -> i64 {
        (self.chi as i64 + self.lift_weight).rem_euclid(self.k as i64)
    }

    fn params(&self) -> CircleParams {
        CircleParams { k: self.k, h: self.spin_offset + self.beta, twist: self.twist() }
    }
}

#[derive(Clone, Copy, Debug)]
struct CircleParams {
    k: usize,
    /// Spin offset plus holonomy parameter.
    h: f64,
    twist: i64,
}

/// Route (i): Fourier modes `e^{i nu theta}` on `X`, `nu in Z + k h`, with
/// the generator acting by the explicit phase `rho e^{-2 pi i nu / k}`.
fn fourier_route(p: CircleParams, table: &Arc<CharacterTable>) -> Result<ArithmeticSpectrum> {
    let k = p.k as f64;
    let offset = k * p.h;
    let rho = Complex64::from_polar(1.0, 2.0 * PI * (p.h + p.twist as f64 / k));
    let group = table.group().clone();
    let mut weights = Vec::with_capacity(p.k);
    for r in 0..p.k {
        let nu = r as f64 + offset;
        let phase = rho * Complex64::from_polar(1.0, -2.0 * PI * nu / k);
        let defect = (phase.powu(p.k as u32) - c(1.0)).norm();
        route_check("circle lift phase", defect)?;
        weights.push(ClassFunction::from_element_fn(group.clone(), |m| phase.powu(m as u32)));
    }
    ArithmeticSpectrum::new(table.clone(), vec![SpectrumFamily { offset, period: p.k as u32, weights }], Vec::new())
}

/// Quotient operator on `Y` twisted by the flat line of the `c'`-th
/// irreducible: eigenvalues `k m + k h + twist + c'`.
fn quotient_offset(p: CircleParams, c_prime: usize) -> f64 {
    p.k as f64 * p.h + p.twist as f64 + c_prime as f64
}

/// Route (ii): union of quotient spectra, the `c'` summand carrying the dual
/// of the `c'`-th irreducible.
fn quotient_route(p: CircleParams, table: &Arc<CharacterTable>) -> Result<ArithmeticSpectrum> {
    let group = table.group().clone();
    let families = (0..p.k)
        .map(|cp| {
            let mut weights = vec![ClassFunction::zero(group.clone()); p.k];
            weights[0] = table.irrep(cp).dual();
            SpectrumFamily { offset: quotient_offset(p, cp), period: p.k as u32, weights }
        })
        .collect();
    ArithmeticSpectrum::new(table.clone(), families, Vec::new())
}

/// Ordinary spectrum of the `c'`-twisted quotient operator.
fn quotient_ordinary(p: CircleParams, c_prime: usize) -> Result<ArithmeticSpectrum> {
    let table = cyclic_table(1)?;
    let mut weights = vec![ClassFunction::zero(table.group().clone()); p.k];
    weights[0] = table.trivial().clone();
    ArithmeticSpectrum::new(
        table,
        vec![SpectrumFamily { offset: quotient_offset(p, c_prime), period: p.k as u32, weights }],
        Vec::new(),
    )
}

/// Largest character difference over eigenvalues with `|lambda| < radius`.
pub fn spectrum_distance(a: &ArithmeticSpectrum, b: &ArithmeticSpectrum, radius: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (lambda, _) in a.eigenvalues_in(-radius, radius).into_iter().chain(b.eigenvalues_in(-radius, radius)) {
        worst = worst.max(a.character_at(lambda).distance(&b.character_at(lambda))?);
    }
    Ok(worst)
}

fn circle_spectrum_params(p: CircleParams) -> Result<ArithmeticSpectrum> {
    let table = cyclic_table(p.k)?;
    let direct = fourier_route(p, &table)?;
    let quotient = quotient_route(p, &table)?;
    let radius = 2.0 * p.k as f64 + 4.0 + (p.k as f64 * p.h).abs();
    route_check("circle spectrum routes", spectrum_distance(&direct, &quotient, radius)?)?;
    Ok(direct)
}

/// Equivariant Dirac spectrum on `X`, built by Fourier analysis and checked
/// against the quotient decomposition.
pub fn circle_spectrum(geom: &CircleGeometry) -> Result<ArithmeticSpectrum> {
    geom.validate()?;
    circle_spectrum_params(geom.params())
}

/// Both circle routes, exposed for inspection.
pub fn circle_routes(geom: &CircleGeometry) -> Result<(ArithmeticSpectrum, ArithmeticSpectrum)> {
    geom.validate()?;
    let table = geom.table()?;
    Ok((fourier_route(geom.params(), &table)?, quotient_route(geom.params(), &table)?))
}

/// Reduced invariants of the quotient operators twisted by each irreducible.
pub fn quotient_xi_values(geom: &CircleGeometry) -> Result<Vec<f64>> {
    geom.validate()?;
    (0..geom.k).map(|cp| Ok(xi_reduced(&quotient_ordinary(geom.params(), cp)?)?.reduced.coeffs()[0])).collect()
}

fn decomposition_element(table: &Arc<CharacterTable>, values: &[f64]) -> Result<TorusElement> {
    let f = values
        .iter()
        .enumerate()
        .fold(ClassFunction::zero(table.group().clone()), |acc, (cp, &x)| &acc + &table.irrep(cp).dual().scale(c(x)));
    project(table, &f, ROUTE_TOL)
}

/// Equivariant pushforward assembled as `sum_chi xi(Y; chi) * dual(chi)`,
/// checked against the direct equivariant reduced invariant on `X`.
pub fn free_pushforward(geom: &CircleGeometry) -> Result<TorusElement> {
    let report = free_case_report(geom)?;
    route_check("free-case decomposition", report.distance)?;
    let table = geom.table()?;
    decomposition_element(&table, &quotient_xi_values(geom)?)
}

pub fn free_case_report(geom: &CircleGeometry) -> Result<CheckReport> {
    let table = geom.table()?;
    let direct = xi_reduced(&circle_spectrum(geom)?)?.reduced;
    let decomposed = decomposition_element(&table, &quotient_xi_values(geom)?)?;
    CheckReport::torus(
        "free-case decomposition",
        serde_json::to_value(geom).expect("plain data"),
        &direct,
        &decomposed,
        ROUTE_TOL,
    )
}

/// Checks of the pull-push identity along `p: X -> Y`: the direct image of
/// a pulled-back bundle is the bundle tensored with the regular
/// representation, both on equivariant Chern characters and on reduced
/// invariants, and the invariant part of the equivariant invariant on `X` is
/// the invariant of `Y`.
pub fn pull_push_reports(geom: &CircleGeometry, degree: u32) -> Result<Vec<CheckReport>> {
    geom.validate()?;
    let table = geom.table()?;
    let group = table.group().clone();
    let inputs = serde_json::to_value(geom).expect("plain data");
    let regular = regular_character(&group);

    // Chern character of the direct image, one flat summand per irreducible
    let root = vec![(0usize, 1.0)];
    let v = ChernRootSpec::new(1, degree, vec![RootEntry { weight: c(1.0), root: root.clone(), sign: 1 }])?;
    let ch_v = ch_series(&v);
    let mut ch_dist: f64 = 0.0;
    for g in 0..group.order() {
        let fiber: Vec<RootEntry> = (0..geom.k)
            .map(|cp| RootEntry { weight: table.irrep(cp).value_at(g).conj(), root: Vec::new(), sign: 1 })
            .collect();
        let fiber = ChernRootSpec::new(1, degree, fiber)?;
        let lhs = ch_series(&fiber.tensor(&v)?);
        let rhs = ch_v.scale(regular.value_at(g));
        ch_dist = ch_dist.max(lhs.distance(&rhs));
    }
    let ch_report = CheckReport::new(
        "pull-push chern character",
        inputs.clone(),
        serde_json::json!({ "degree": degree }),
        serde_json::json!("regular character times ch(V)"),
        ch_dist,
        ROUTE_TOL,
    );

    // V (x) C[G] over Y with trivial action
    let ordinary = quotient_ordinary(geom.params(), 0)?;
    let xi_y = xi_reduced(&ordinary)?.reduced.coeffs()[0];
    let inflated = ordinary.inflate(&table, &regular)?;
    let lhs = xi_reduced(&inflated)?.reduced;
    let reg = VirtualCharacter::new(table.clone(), vec![1; table.len()])?;
    let rhs = torus_act(&reg, &project(&table, &table.trivial().scale(c(xi_y)), ROUTE_TOL)?)?;
    let reg_report = CheckReport::torus("pull-push regular action", inputs.clone(), &lhs, &rhs, ROUTE_TOL)?;

    // invariant part of the X invariant equals the Y invariant
    let direct = xi_reduced(&circle_spectrum(geom)?)?.reduced;
    let lhs_inv = direct.coeffs()[0];
    let d = (lhs_inv - xi_y).rem_euclid(1.0);
    let comp_report = CheckReport::new(
        "pull-push composition",
        inputs,
        serde_json::json!(lhs_inv),
        serde_json::json!(xi_y),
        d.min(1.0 - d),
        ROUTE_TOL,
    );
    Ok(vec![ch_report, reg_report, comp_report])
}

fn default_rotation_weight() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereGeometry {
    pub k: usize,
    /// Degree of the line bundle.
    pub degree: i64,
    /// The generator multiplies the north-pole coordinate by `e^{2 pi i w / k}`.
    #[serde(default = "default_rotation_weight")]
    pub rotation_weight: i64,
    /// Fiber weight at the north pole.
    #[serde(default)]
    pub north_weight: i64,
    /// Fiber weight at the south pole; must equal `north + degree * w` mod `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub south_weight: Option<i64>,
    #[serde(default)]
    pub convention: FixedPointConvention,
}

impl SphereGeometry {
    pub fn new(k: usize, degree: i64, north_weight: i64) -> Result<Self> {
        let g = SphereGeometry {
            k,
            degree,
            rotation_weight: 1,
            north_weight,
            south_weight: None,
            convention: FixedPointConvention::default(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > MAX_ORDER {
            return Err(Error::InvalidGeometry(format!("cyclic order {} outside 1..={MAX_ORDER}", self.k)));
        }
        if self.k > 1 && gcd(self.rotation_weight, self.k as i64) != 1 {
            return Err(Error::InvalidGeometry(format!(
                "rotation weight {} not coprime to {}: fixed set is larger than the poles",
                self.rotation_weight, self.k
            )));
        }
        if let Some(s) = self.south_weight {
            if (s - self.expected_south()).rem_euclid(self.k as i64) != 0 {
                return Err(Error::InvalidGeometry(format!(
                    "south weight {s} incompatible with degree {} (expected {} mod {})",
                    self.degree,
                    self.expected_south(),
                    self.k
                )));
            }
        }
        Ok(())
    }

    fn expected_south(&self) -> i64 {
        self.north_weight + self.degree * self.rotation_weight
    }

    pub fn south(&self) -> i64 {
        self.south_weight.unwrap_or_else(|| self.expected_south())
    }
}

/// Characters of `H^0` and `H^1` of the line bundle, by enumerating weights
/// of monomials `z^j`.
pub fn sphere_cohomology_characters(geom: &SphereGeometry) -> Result<(VirtualCharacter, VirtualCharacter)> {
    geom.validate()?;
    let table = cyclic_table(geom.k)?;
    let k = geom.k as i64;
    let mut h0 = vec![0i64; geom.k];
    let mut h1 = vec![0i64; geom.k];
    let index = |j: i64| (geom.north_weight + geom.rotation_weight * j).rem_euclid(k) as usize;
    for j in 0..=geom.degree {
        h0[index(j)] += 1;
    }
    for j in (geom.degree + 1)..0 {
        h1[index(j)] += 1;
    }
    Ok((VirtualCharacter::new(table.clone(), h0)?, VirtualCharacter::new(table, h1)?))
}

/// `int Ahat(x) e^{x/2} e^{l}` on the sphere, with `int x = 2`, `int l = n`.
fn surface_index(degree: i64) -> Result<f64> {
    let x = vec![(0usize, 1.0)];
    let ahat = a_hat_series(2, 2, std::slice::from_ref(&x), &[], 1)?;
    let half = FormSeries::var(2, 2, 0).scale(c(0.5)).compose_univariate(&[c(1.0), c(1.0), c(0.5)]);
    let line = FormSeries::var(2, 2, 1).compose_univariate(&[c(1.0), c(1.0), c(0.5)]);
    let integrand = ahat.mul(&half).mul(&line);
    Ok((integrand.coeff(&[1, 0]) * 2.0 + integrand.coeff(&[0, 1]) * degree as f64).re)
}

/// Equivariant index, localized at the poles, as a class function.
pub fn sphere_localized_character(geom: &SphereGeometry) -> Result<ClassFunction> {
    geom.validate()?;
    let table = cyclic_table(geom.k)?;
    let k = geom.k as f64;
    let at_identity = surface_index(geom.degree)?;
    let values = (0..geom.k)
        .map(|m| {
            if m == 0 {
                return Ok(c(at_identity));
            }
            let theta = 2.0 * PI * (geom.rotation_weight * m as i64) as f64 / k;
            let mu_n = Complex64::from_polar(1.0, 2.0 * PI * (geom.north_weight * m as i64) as f64 / k);
            let mu_s = Complex64::from_polar(1.0, 2.0 * PI * (geom.south() * m as i64) as f64 / k);
            Ok(fixed_point_contribution(&[theta], mu_n, geom.convention)?
                + fixed_point_contribution(&[-theta], mu_s, geom.convention)?)
        })
        .collect::<Result<Vec<_>>>()?;
    // element m of the cyclic group is the m-th power of the generator
    let group = table.group().clone();
    let mut by_class = vec![c(0.0); group.num_classes()];
    for (m, v) in values.into_iter().enumerate() {
        by_class[group.class_of(m)] = v;
    }
    ClassFunction::new(group, by_class)
}

/// Equivariant index of the Dolbeault operator, by localization and by
/// weight enumeration; the two must agree.
pub fn sphere_index_character(geom: &SphereGeometry) -> Result<VirtualCharacter> {
    let (h0, h1) = sphere_cohomology_characters(geom)?;
    let oracle = h0.try_add(&h1.negate())?;
    let localized = sphere_localized_character(geom)?;
    route_check("sphere index routes", localized.distance(&oracle.to_class_function())?)?;
    Ok(oracle)
}

pub fn sphere_index_report(geom: &SphereGeometry) -> Result<CheckReport> {
    let (h0, h1) = sphere_cohomology_characters(geom)?;
    let oracle = h0.try_add(&h1.negate())?.to_class_function();
    let localized = sphere_localized_character(geom)?;
    let d = localized.distance(&oracle)?;
    let show = |f: &ClassFunction| serde_json::json!(f.values().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
    Ok(CheckReport::new(
        "sphere index",
        serde_json::to_value(geom).expect("plain data"),
        show(&localized),
        show(&oracle),
        d,
        ROUTE_TOL,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductGeometry {
    pub circle: CircleGeometry,
    pub sphere: SphereGeometry,
}

impl ProductGeometry {
    pub fn validate(&self) -> Result<()> {
        self.circle.validate()?;
        self.sphere.validate()?;
        if self.circle.k != self.sphere.k {
            return Err(Error::InvalidGeometry(format!(
                "factor groups differ: Z/{} and Z/{}",
                self.circle.k, self.sphere.k
            )));
        }
        Ok(())
    }
}

/// Characters of the nonzero sphere level `j >= 1`: weights
/// `p_N + w i` for `-j <= i <= n + j`.
fn sphere_level_character(geom: &SphereGeometry, table: &Arc<CharacterTable>, j: i64) -> Result<ClassFunction> {
    let k = geom.k as i64;
    let mut coeffs = vec![0i64; geom.k];
    for i in -j..=(geom.degree + j) {
        coeffs[(geom.north_weight + geom.rotation_weight * i).rem_euclid(k) as usize] += 1;
    }
    Ok(VirtualCharacter::new(table.clone(), coeffs)?.to_class_function())
}

/// Product spectrum on `X x S^2`: the circle spectrum on the kernel of the
/// sphere operator (reflected on the odd part), plus a finite sample of
/// paired eigenvalues `+-sqrt(lambda^2 + mu^2)` from nonzero sphere modes.
pub fn product_spectrum(geom: &ProductGeometry, levels: i64) -> Result<ArithmeticSpectrum> {
    geom.validate()?;
    let circle = circle_spectrum(&geom.circle)?;
    let table = circle.table().clone();
    let (h0, h1) = sphere_cohomology_characters(&geom.sphere)?;
    let even = circle.twist(&h0.to_class_function())?;
    let odd = circle.reflect().twist(&h1.to_class_function())?;
    let mut pairs = Vec::new();
    let j0 = 1.max(-geom.sphere.degree);
    for j in j0..j0 + levels {
        let mu = ((j * (j + geom.sphere.degree.abs() + 1)) as f64).sqrt();
        let level = sphere_level_character(&geom.sphere, &table, j)?;
        for (lambda, chi) in circle.eigenvalues_in(-3.0, 3.0) {
            let w = chi.tensor(&level)?;
            let r = (lambda * lambda + mu * mu).sqrt();
            pairs.push((r, w.clone()));
            pairs.push((-r, w));
        }
    }
    let sample = ArithmeticSpectrum::new(table, Vec::new(), pairs)?;
    even.union(&odd)?.union(&sample)
}

pub fn product_report(geom: &ProductGeometry) -> Result<CheckReport> {
    let product = xi_reduced(&product_spectrum(geom, 3)?)?.reduced;
    let index = sphere_index_character(&geom.sphere)?;
    let circle = xi_reduced(&circle_spectrum(&geom.circle)?)?.reduced;
    let rhs = torus_act(&index, &circle)?;
    CheckReport::torus("fubini", serde_json::to_value(geom).expect("plain data"), &product, &rhs, ROUTE_TOL)
}

/// Reduced invariant of the product, checked against the index of the even
/// factor acting on the invariant of the odd factor.
pub fn product_pushforward(geom: &ProductGeometry) -> Result<TorusElement> {
    let report = product_report(geom)?;
    route_check("fubini", report.distance)?;
    xi_reduced(&product_spectrum(geom, 3)?).map(|r| r.reduced)
}

/// Outcome of varying the holonomy parameter along a path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CylinderReport {
    pub k: usize,
    pub a0: f64,
    pub a1: f64,
    pub steps: usize,
    pub alpha: f64,
    /// Worst per-step distance between the change of the reduced invariant
    /// and minus the transgression.
    pub step_distance: f64,
    pub net_distance: f64,
    /// Irreducible coefficients of each spectral-flow jump.
    pub jumps: Vec<(f64, f64, Vec<i64>)>,
    /// Nonpositive when `xi(alpha)` moves continuously apart from the jumps.
    pub max_excess: f64,
    pub pass: bool,
}

impl CylinderReport {
    pub fn to_check(&self) -> CheckReport {
        CheckReport {
            check: "stokes".into(),
            inputs: serde_json::json!({ "k": self.k, "a0": self.a0, "a1": self.a1, "steps": self.steps }),
            lhs: serde_json::json!({ "step_distance": self.step_distance, "net_distance": self.net_distance }),
            rhs: serde_json::json!({ "jumps": self.jumps, "max_excess": self.max_excess }),
            distance: self.step_distance.max(self.net_distance),
            pass: self.pass,
        }
    }
}

/// Varies `beta` from `a0` to `a1` (the endpoint may be `1`) and checks
/// `Delta xi = -Delta beta * chi_regular` mod `R(G)` step by step, with
/// spectral-flow jumps matching the crossing characters.
pub fn cylinder_variation(geom: &CircleGeometry, a0: f64, a1: f64, steps: usize) -> Result<CylinderReport> {
    geom.validate()?;
    if !(0.0..=1.0).contains(&a0) || !(0.0..=1.0).contains(&a1) || steps == 0 {
        return Err(Error::InvalidGeometry("path endpoints must lie in [0, 1] with at least one step".into()));
    }
    let table = geom.table()?;
    let group = table.group().clone();
    let regular = regular_character(&group);
    let base = geom.params();
    let at = |beta: f64| CircleParams { h: geom.spin_offset + beta, ..base };
    let grid: Vec<f64> = (0..=steps).map(|i| a0 + (a1 - a0) * i as f64 / steps as f64).collect();
    let spectra = grid.iter().map(|&b| circle_spectrum_params(at(b))).collect::<Result<Vec<_>>>()?;

    let alpha = (0..64)
        .map(|i| 0.137 + 0.0731 * i as f64)
        .find(|&a| spectra.iter().all(|s| !s.is_eigenvalue(a) && s.eigenvalues_in(a - 1e-6, a + 1e-6).is_empty()))
        .ok_or_else(|| Error::InvalidGeometry("no admissible cut along the path".into()))?;

    let reduced = spectra.iter().map(|s| Ok(xi_reduced(s)?.reduced)).collect::<Result<Vec<_>>>()?;
    let transgression = |db: f64| project(&table, &regular.scale(c(-db)), ROUTE_TOL);
    let mut step_distance: f64 = 0.0;
    for i in 0..steps {
        let delta = torus_sub(&reduced[i + 1], &reduced[i])?;
        step_distance = step_distance.max(torus_distance(&delta, &transgression(grid[i + 1] - grid[i])?)?);
    }
    let net = torus_sub(&reduced[steps], &reduced[0])?;
    let net_distance = torus_distance(&net, &transgression(a1 - a0)?)?;

    let flow = spectral_flow(|b| circle_spectrum_params(at(b)), &grid, alpha)?;
    let mut jumps = Vec::new();
    let mut integral = true;
    for j in &flow.jumps {
        match VirtualCharacter::from_class_function(table.clone(), &j.jump, ROUTE_TOL) {
            Some(v) => jumps.push((j.lo, j.hi, v.coeffs().to_vec())),
            None => integral = false,
        }
    }
    // the jumps plus continuous drift reproduce xi(alpha) at the endpoints
    let mut total = flow.xi[0].clone();
    for j in &flow.jumps {
        total = &total + &j.jump;
    }
    let drift = regular.scale(c(-(a1 - a0)));
    let end_gap = (&(&flow.xi[steps] - &total) - &drift).values().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = ROUTE_TOL;
    let pass = step_distance <= tol && net_distance <= tol && integral && flow.max_excess <= 0.0 && end_gap <= 1e-6;
    Ok(CylinderReport {
        k: geom.k,
        a0,
        a1,
        steps,
        alpha,
        step_distance,
        net_distance,
        jumps,
        max_excess: flow.max_excess.max(end_gap - 1e-6),
        pass,
    })
}

/// `xi` of the assembly `sum_i S_i (x) chi_i` (trivial action) against
/// `sum_i xi(S_i) chi_i`.
pub fn trivial_action_decomposition(
    k: usize,
    summands: &[(ArithmeticSpectrum, VirtualCharacter)],
) -> Result<CheckReport> {
    let table = cyclic_table(k)?;
    let mut assembled: Option<ArithmeticSpectrum> = None;
    let mut rhs = ClassFunction::zero(table.group().clone());
    for (s, chi) in summands {
        if chi.table() != &table {
            return Err(Error::GroupMismatch {
                left: chi.table().group().family().to_string(),
                right: table.group().family().to_string(),
            });
        }
        if !chi.is_genuine() {
            return Err(Error::NotACharacter { eigenvalue: f64::NAN });
        }
        let inflated = s.inflate(&table, &chi.to_class_function())?;
        assembled = Some(match assembled {
            None => inflated,
            Some(a) => a.union(&inflated)?,
        });
        let xi = xi_reduced(s)?.reduced.coeffs()[0];
        rhs = &rhs + &chi.to_class_function().scale(c(xi));
    }
    let lhs = match assembled {
        Some(a) => xi_reduced(&a)?.reduced,
        None => TorusElement::zero(table.clone()),
    };
    let rhs = project(&table, &rhs, ROUTE_TOL)?;
    let inputs = serde_json::json!({
        "k": k,
        "summands": summands
            .iter()
            .map(|(s, chi)| serde_json::json!({ "spectrum": s.to_json(), "character": chi.coeffs() }))
            .collect::<Vec<_>>(),
    });
    CheckReport::torus("trivial-action decomposition", inputs, &lhs, &rhs, ROUTE_TOL)
}

/// Geometry input, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Circle(CircleGeometry),
    Sphere(SphereGeometry),
    Product(ProductGeometry),
}

/// Value of `xi(alpha)` at a chosen cut for a circle geometry; exposed for
/// callers that want an unreduced class function.
pub fn circle_xi_at(geom: &CircleGeometry, alpha: f64) -> Result<ClassFunction> {
    xi_closed_form(&circle_spectrum(geom)?, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_circle_is_half_integers() {
        let g = CircleGeometry::new(1, 0.5, 0.0, 0).unwrap();
        let s = circle_spectrum(&g).unwrap();
        let eig: Vec<f64> = s.eigenvalues_in(-2.0, 2.0).iter().map(|e| e.0).collect();
        assert_eq!(eig, vec![-1.5, -0.5, 0.5, 1.5]);
    }

    #[test]
    fn double_cover_alternates_characters() {
        let g = CircleGeometry::new(2, 0.0, 0.0, 0).unwrap();
        let s = circle_spectrum(&g).unwrap();
        let table = g.table().unwrap();
        for (lambda, chi) in s.eigenvalues_in(-3.5, 3.5) {
            let expect = (lambda.round() as i64).rem_euclid(2) as usize;
            assert!(chi.approx_eq(table.irrep(expect), 1e-12), "lambda {lambda}");
        }
    }

    #[test]
    fn lift_weight_is_a_twist() {
        let a = CircleGeometry::new(3, 0.0, 0.2, 1).unwrap();
        let b = CircleGeometry::new(3, 0.0, 0.2, 0).unwrap().with_lift_weight(1).unwrap();
        let d = spectrum_distance(&circle_spectrum(&a).unwrap(), &circle_spectrum(&b).unwrap(), 10.0).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn invalid_geometry() {
        assert!(CircleGeometry::new(0, 0.0, 0.0, 0).is_err());
        assert!(CircleGeometry::new(2, 0.3, 0.0, 0).is_err());
        assert!(CircleGeometry::new(2, 0.0, 1.0, 0).is_err());
        assert!(SphereGeometry { rotation_weight: 2, ..SphereGeometry::new(4, 1, 0).unwrap() }.validate().is_err());
        let bad_south = SphereGeometry { south_weight: Some(2), ..SphereGeometry::new(4, 1, 0).unwrap() };
        assert!(bad_south.validate().is_err());
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_index_character(&SphereGeometry::new(1, 2, 0).unwrap()).unwrap().coeffs(), &[3]);
        assert_eq!(sphere_index_character(&SphereGeometry::new(1, -1, 0).unwrap()).unwrap().coeffs(), &[0]);
        assert_eq!(sphere_index_character(&SphereGeometry::new(1, -3, 0).unwrap()).unwrap().coeffs(), &[-2]);
        let v = sphere_index_character(&SphereGeometry::new(2, 1, 0).unwrap()).unwrap();
        assert_eq!(v.coeffs(), &[1, 1]);
    }

    #[test]
    fn free_case_small() {
        let g = CircleGeometry::new(2, 0.0, 0.2, 0).unwrap();
        let t = free_pushforward(&g).unwrap();
        // dual of each cyclic-2 irreducible is itself
        assert!((t.coeffs()[0] - 0.3).abs() < 1e-12);
        assert!((t.coeffs()[1] - 0.8).abs() < 1e-12);
        for r in pull_push_reports(&g, 6).unwrap() {
            assert!(r.pass, "{}: {}", r.check, r.distance);
        }
    }

    #[test]
    fn cylinder_full_loop() {
        let g = CircleGeometry::new(1, 0.0, 0.0, 0).unwrap();
        let r = cylinder_variation(&g, 0.0, 1.0, 10).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.jumps.len(), 1);
        assert_eq!(r.jumps[0].2, vec![1]);
    }
}
