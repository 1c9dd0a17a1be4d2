//! Named verification suites over the math modules, producing ordered,
//! digest-stamped reports.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::char_forms::{
    a_hat_series, ch_series, euler_series, flat_a_hat, pfaffian_block_series, pfaffian_square_target,
    spinor_difference_series, ChernRootSpec, FormSeries, PerpBlock, RootEntry,
};
use crate::clifford_spinor::{mq_thom_integral, perp_supertrace, ElementAction};
use crate::error::{Error, Result};
use crate::group_rep::{build_group, ClassFunction, GroupFamily, VirtualCharacter};
use crate::models::{
    cylinder_variation, free_case_report, product_report, pull_push_reports, sphere_index_report,
    trivial_action_decomposition, CheckReport, CircleGeometry, ProductGeometry, SphereGeometry,
};
use crate::spectral_eta::{xi_closed_form, xi_smoothed_oracle, ArithmeticSpectrum, SmoothingConfig};

const SEED: u64 = 0x5eed_2026;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Tolerance for route-equality checks.
    pub tolerance: f64,
    /// Truncation degree of characteristic series.
    pub truncation_degree: u32,
    /// Trapezoid points per axis for Thom-form integrals.
    pub quadrature_resolution: usize,
    pub output_dir: Option<PathBuf>,
    pub suites: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-9,
            truncation_degree: 10,
            quadrature_resolution: 24,
            output_dir: None,
            suites: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if !self.truncation_degree.is_multiple_of(2) || self.truncation_degree > 16 {
            return Err(Error::InvalidConfig(format!(
                "truncation degree must be even and at most 16, got {}",
                self.truncation_degree
            )));
        }
        if self.quadrature_resolution < 4 {
            return Err(Error::InvalidConfig("quadrature resolution must be at least 4".into()));
        }
        for s in &self.suites {
            s.parse::<Suite>()?;
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Orthogonality,
    Clifford,
    Forms,
    Eta,
    FreeCase,
    SphereIndex,
    Fubini,
    Stokes,
    TrivialAction,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "orthogonality",
        "clifford",
        "forms",
        "eta",
        "free-case",
        "sphere-index",
        "fubini",
        "stokes",
        "trivial-action",
        "all",
    ];

    fn members() -> [Suite; 9] {
        [
            Suite::Orthogonality,
            Suite::Clifford,
            Suite::Forms,
            Suite::Eta,
            Suite::FreeCase,
            Suite::SphereIndex,
            Suite::Fubini,
            Suite::Stokes,
            Suite::TrivialAction,
        ]
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            Suite::Orthogonality,
            Suite::Clifford,
            Suite::Forms,
            Suite::Eta,
            Suite::FreeCase,
            Suite::SphereIndex,
            Suite::Fubini,
            Suite::Stokes,
            Suite::TrivialAction,
            Suite::All,
        ];
        Suite::NAMES.iter().zip(all).find(|(n, _)| **n == s).map(|(_, v)| v).ok_or_else(|| {
            Error::InvalidConfig(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Suite::members().iter().position(|s| s == self).unwrap_or(9);
        write!(f, "{}", Suite::NAMES[i])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs_digest: String,
    pub inputs: serde_json::Value,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub distance: f64,
    pub pass: bool,
}

impl From<CheckReport> for CheckRecord {
    fn from(r: CheckReport) -> Self {
        let digest = hex::encode(Sha256::digest(r.inputs.to_string().as_bytes()));
        CheckRecord {
            name: r.check,
            inputs_digest: digest,
            inputs: r.inputs,
            lhs: r.lhs,
            rhs: r.rhs,
            distance: r.distance,
            pass: r.pass,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.suite));
        std::fs::write(&path, serde_json::to_string_pretty(self).expect("plain data"))?;
        Ok(path)
    }
}

/// Turns an error inside a check into a failing record.
fn guard(name: &str, inputs: serde_json::Value, f: impl FnOnce() -> Result<CheckReport>) -> CheckReport {
    f().unwrap_or_else(|e| CheckReport {
        check: name.to_string(),
        inputs,
        lhs: json!({ "error": e.to_string() }),
        rhs: serde_json::Value::Null,
        distance: f64::INFINITY,
        pass: false,
    })
}

fn cmplx(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

pub fn orthogonality_checks() -> Vec<CheckReport> {
    let mut families: Vec<GroupFamily> = (1..=12).map(|k| GroupFamily::Cyclic { k }).collect();
    families.push(GroupFamily::CyclicProduct { factors: vec![2, 2] });
    families.push(GroupFamily::Symmetric3);
    families.push(GroupFamily::Dihedral { k: 4 });
    families.push(GroupFamily::Dihedral { k: 5 });
    families
        .par_iter()
        .map(|f| {
            let inputs = json!({ "group": f.to_string() });
            guard("character orthogonality", inputs.clone(), || {
                let (_, table) = build_group(f)?;
                let row = table.orthonormality_residual();
                let col = table.column_orthogonality_residual();
                Ok(CheckReport::new(
                    "character orthogonality",
                    inputs,
                    json!({ "row_residual": row, "column_residual": col }),
                    json!("identity"),
                    row.max(col),
                    1e-12,
                ))
            })
        })
        .collect()
}

pub fn clifford_checks(cfg: &RunConfig) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let lists: Vec<Vec<f64>> = (0..50)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            (0..n).map(|_| rng.gen_range(0.05..(2.0 * PI - 0.05))).collect()
        })
        .collect();
    let mut out: Vec<CheckReport> = lists
        .par_iter()
        .enumerate()
        .map(|(i, angles)| {
            let negative = i % 2 == 1;
            let action = ElementAction { angles: angles.clone(), fixed_dim: 0, negative };
            let inputs = json!({ "angles": angles, "negative": negative });
            guard("equivariant factor", inputs.clone(), || {
                let st = perp_supertrace(&action)?;
                let eps = if negative { -1.0 } else { 1.0 };
                let product: Complex64 =
                    angles.iter().map(|&t| Complex64::new(0.0, -2.0 * (t / 2.0).sin())).product::<Complex64>() * eps;
                let modulus: f64 = angles.iter().map(|&t| 2.0 * (t / 2.0).sin().abs()).product();
                let d = (st.norm() - modulus).abs().max((st - product).norm());
                Ok(CheckReport::new("equivariant factor", inputs, cmplx(st), cmplx(product), d, 1e-12))
            })
        })
        .collect();
    // Thom integral against the inverse flat Ahat, (-1)^k eps / Ahat
    let cases: Vec<(Vec<f64>, usize, bool)> = vec![
        (vec![], 2, false),
        (vec![], 4, false),
        (vec![1.1], 0, false),
        (vec![1.1], 2, false),
        (vec![PI], 2, true),
        (vec![0.7, 2.9], 0, false),
        (vec![2.0], 1, false),
        (vec![0.4, 5.0], 2, true),
    ];
    let res = cfg.quadrature_resolution;
    out.par_extend(cases.par_iter().map(|(angles, fixed, negative)| {
        let inputs = json!({ "angles": angles, "fixed_dim": fixed, "negative": negative, "resolution": res });
        guard("thom integral", inputs.clone(), || {
            let action = ElementAction { angles: angles.clone(), fixed_dim: *fixed, negative: *negative };
            let lhs = mq_thom_integral(&action, res, 1e-6)?;
            let eps: i8 = if *negative { -1 } else { 1 };
            let k = angles.len() as i32;
            let rhs = if angles.is_empty() {
                Complex64::new(eps as f64, 0.0)
            } else {
                flat_a_hat(angles, eps)?.inv() * (-1.0f64).powi(k)
            };
            Ok(CheckReport::new("thom integral", inputs, cmplx(lhs), cmplx(rhs), (lhs - rhs).norm(), 1e-4))
        })
    }));
    out
}

pub fn forms_checks(cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.truncation_degree;
    let tol = 1e-12;
    let x = |i: usize| vec![(i, 1.0)];
    let mut out = Vec::new();
    let inputs = json!({ "degree": d });

    out.push(guard("ahat multiplicativity", inputs.clone(), || {
        let block = PerpBlock { angle: 2.1, root: x(2) };
        let whole = a_hat_series(3, d, &[x(0), x(1)], std::slice::from_ref(&block), 1)?;
        let parts = a_hat_series(3, d, &[x(0)], &[], 1)?.mul(&a_hat_series(3, d, &[x(1)], &[], 1)?).mul(&a_hat_series(
            3,
            d,
            &[],
            &[block],
            1,
        )?);
        Ok(CheckReport::new(
            "ahat multiplicativity",
            inputs.clone(),
            json!(whole.to_string().len()),
            json!(parts.to_string().len()),
            whole.distance(&parts),
            tol,
        ))
    }));

    out.push(guard("ch tensor multiplicativity", inputs.clone(), || {
        let w = |t: f64| Complex64::from_polar(1.0, t);
        let v = ChernRootSpec::new(
            2,
            d,
            vec![
                RootEntry { weight: w(0.3), root: x(0), sign: 1 },
                RootEntry { weight: w(1.7), root: x(1), sign: 1 },
                RootEntry { weight: w(-2.0), root: vec![(0, 1.0), (1, 1.0)], sign: -1 },
            ],
        )?;
        let u = ChernRootSpec::new(
            2,
            d,
            vec![
                RootEntry { weight: w(2.5), root: x(1), sign: 1 },
                RootEntry { weight: w(0.0), root: vec![], sign: 1 },
            ],
        )?;
        let lhs = ch_series(&v.tensor(&u)?);
        let rhs = ch_series(&v).mul(&ch_series(&u));
        Ok(CheckReport::new(
            "ch tensor multiplicativity",
            inputs.clone(),
            cmplx(lhs.constant_term()),
            cmplx(rhs.constant_term()),
            lhs.distance(&rhs),
            tol,
        ))
    }));

    for angle in [0.3, 1.0, PI, 4.4] {
        let inputs = json!({ "degree": d, "angle": angle });
        out.push(guard("pfaffian square", inputs.clone(), || {
            let block = PerpBlock { angle, root: x(0) };
            let pf = pfaffian_block_series(1, d, &block)?;
            let sq = pf.mul(&pf);
            let target = pfaffian_square_target(1, d, &block);
            Ok(CheckReport::new(
                "pfaffian square",
                inputs.clone(),
                cmplx(sq.constant_term()),
                cmplx(target.constant_term()),
                sq.distance(&target),
                tol,
            ))
        }));
    }

    for n in 1..=3usize {
        let inputs = json!({ "degree": d, "roots": n });
        out.push(guard("spinor difference", inputs.clone(), || {
            let roots: Vec<Vec<(usize, f64)>> = (0..n).map(x).collect();
            let lhs = spinor_difference_series(n, d, &roots);
            let rhs = euler_series(n, d, &roots).mul(&a_hat_series(n, d, &roots, &[], 1)?.invert()?);
            Ok(CheckReport::new(
                "spinor difference",
                inputs.clone(),
                json!(lhs.max_stored_degree()),
                json!(rhs.max_stored_degree()),
                lhs.distance(&rhs),
                tol,
            ))
        }));
    }

    out.push(guard("flat block modulus", json!({ "angle": PI }), || {
        let v = flat_a_hat(&[PI], 1)?;
        let a = perp_supertrace(&ElementAction { angles: vec![PI], fixed_dim: 0, negative: false })?;
        Ok(CheckReport::new(
            "flat block modulus",
            json!({ "angle": PI }),
            json!(v.norm()),
            json!(1.0 / a.norm()),
            (v.norm() - 1.0 / a.norm()).abs(),
            tol,
        ))
    }));
    let _ = FormSeries::one(1, d);
    out
}

fn class_distance(a: &ClassFunction, b: &ClassFunction) -> f64 {
    a.distance(b).unwrap_or(f64::INFINITY)
}

fn show(f: &ClassFunction) -> serde_json::Value {
    json!(f.values().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

pub fn eta_checks(cfg: &RunConfig) -> Vec<CheckReport> {
    let smoothing = SmoothingConfig::default();
    let mut out: Vec<CheckReport> = [0.1, 0.25, 0.5, 0.9]
        .par_iter()
        .flat_map(|&a| {
            let inputs = json!({ "offset": a });
            let s = ArithmeticSpectrum::shifted_integers(a);
            vec![
                guard("eta oracle", inputs.clone(), || {
                    let closed = xi_closed_form(&s, 0.0)?;
                    let oracle = xi_smoothed_oracle(&s, 0.0, &smoothing)?;
                    Ok(CheckReport::new(
                        "eta oracle",
                        inputs.clone(),
                        show(&closed),
                        show(&oracle.value),
                        class_distance(&closed, &oracle.value),
                        1e-6,
                    ))
                }),
                guard("eta closed form", inputs.clone(), || {
                    let closed = xi_closed_form(&s, 0.0)?.values()[0].re;
                    let d = (closed - (0.5 - a)).rem_euclid(1.0);
                    Ok(CheckReport::new(
                        "eta closed form",
                        inputs.clone(),
                        json!(closed),
                        json!(0.5 - a),
                        d.min(1.0 - d),
                        1e-12,
                    ))
                }),
            ]
        })
        .collect();

    out.push(guard("eta oracle equivariant", json!({ "k": 3, "beta": 0.2 }), || {
        let g = CircleGeometry::new(3, 0.0, 0.2, 0)?;
        let s = crate::models::circle_spectrum(&g)?;
        let closed = xi_closed_form(&s, 0.0)?;
        let oracle = xi_smoothed_oracle(&s, 0.0, &smoothing)?;
        Ok(CheckReport::new(
            "eta oracle equivariant",
            json!({ "k": 3, "beta": 0.2 }),
            show(&closed),
            show(&oracle.value),
            class_distance(&closed, &oracle.value),
            1e-6,
        ))
    }));

    // jump formula on an equivariant spectrum with a kernel
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let pairs: Vec<(f64, f64)> = (0..20)
        .map(|_| {
            let a = rng.gen_range(-4.0..4.0);
            let b = rng.gen_range(-4.0..4.0);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    let tol = cfg.tolerance;
    out.par_extend(pairs.par_iter().map(|&(alpha, beta)| {
        let inputs = json!({ "k": 3, "beta": 0.0, "alpha": alpha, "cut": beta });
        guard("jump formula", inputs.clone(), || {
            let g = CircleGeometry::new(3, 0.0, 0.0, 1)?;
            let s = crate::models::circle_spectrum(&g)?;
            let table = s.table().clone();
            let lhs = &xi_closed_form(&s, alpha)? - &xi_closed_form(&s, beta)?;
            let rhs = s
                .eigenvalues_in(alpha, beta)
                .into_iter()
                .fold(ClassFunction::zero(table.group().clone()), |acc, (_, w)| &acc + &w);
            let integral = VirtualCharacter::from_class_function(table, &lhs, tol).is_some();
            let d = if integral { class_distance(&lhs, &rhs) } else { f64::INFINITY };
            Ok(CheckReport::new("jump formula", inputs.clone(), show(&lhs), show(&rhs), d, tol))
        })
    }));
    out
}

fn free_geometries() -> Vec<CircleGeometry> {
    let mut out = Vec::new();
    for k in [1usize, 2, 3, 4, 6] {
        for beta in [0.0, 0.2] {
            for s in [0.0, 0.5] {
                let mut chis = vec![0];
                if k > 1 {
                    chis.push(1);
                }
                for chi in chis {
                    out.push(CircleGeometry { k, spin_offset: s, beta, chi, lift_weight: 0 });
                }
            }
        }
    }
    out
}

pub fn free_case_checks(cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.truncation_degree;
    free_geometries()
        .par_iter()
        .flat_map(|g| {
            let inputs = serde_json::to_value(g).expect("plain data");
            let mut v = vec![guard("free-case decomposition", inputs.clone(), || free_case_report(g))];
            match pull_push_reports(g, d) {
                Ok(r) => v.extend(r),
                Err(e) => v.push(guard("pull-push", inputs, || Err(e))),
            }
            v
        })
        .collect()
}

pub fn sphere_checks() -> Vec<CheckReport> {
    let mut geoms = Vec::new();
    for k in [1usize, 2, 3, 4] {
        for n in -3..=3i64 {
            for north in [0i64, 1] {
                geoms.push(SphereGeometry {
                    k,
                    degree: n,
                    rotation_weight: 1,
                    north_weight: north,
                    south_weight: None,
                    convention: Default::default(),
                });
            }
        }
    }
    geoms.push(SphereGeometry {
        k: 5,
        degree: 2,
        rotation_weight: 2,
        north_weight: 3,
        south_weight: Some(7),
        convention: Default::default(),
    });
    geoms.push(SphereGeometry {
        k: 3,
        degree: 2,
        rotation_weight: 1,
        north_weight: 0,
        south_weight: None,
        convention: crate::char_forms::FixedPointConvention::Dolbeault,
    });
    geoms
        .par_iter()
        .map(|g| guard("sphere index", serde_json::to_value(g).expect("plain data"), || sphere_index_report(g)))
        .collect()
}

pub fn fubini_checks() -> Vec<CheckReport> {
    let mut geoms = Vec::new();
    for k in [1usize, 2] {
        for n in 0..=2i64 {
            for (s, beta) in [(0.0, 0.2), (0.5, 0.0), (0.0, 0.0)] {
                geoms.push(ProductGeometry {
                    circle: CircleGeometry { k, spin_offset: s, beta, chi: 0, lift_weight: 0 },
                    sphere: SphereGeometry::new(k, n, if k > 1 { 1 } else { 0 }).expect("valid"),
                });
            }
        }
    }
    geoms
        .par_iter()
        .map(|g| guard("fubini", serde_json::to_value(g).expect("plain data"), || product_report(g)))
        .collect()
}

pub fn stokes_checks() -> Vec<CheckReport> {
    let mut cases = Vec::new();
    for k in [1usize, 2, 3] {
        for (a0, a1) in [(0.2, 0.3), (0.1, 0.9), (0.75, 0.05), (0.0, 1.0)] {
            cases.push((k, a0, a1));
        }
    }
    cases
        .par_iter()
        .map(|&(k, a0, a1)| {
            let inputs = json!({ "k": k, "a0": a0, "a1": a1, "steps": 10 });
            guard("stokes", inputs, || {
                let g = CircleGeometry::new(k, 0.0, 0.0, 0)?;
                let r = cylinder_variation(&g, a0, a1, 10)?;
                let mut check = r.to_check();
                if k == 1 && a0 == 0.0 && a1 == 1.0 {
                    check.check = "stokes full loop".into();
                    check.pass &= r.jumps.len() == 1 && r.jumps[0].2 == vec![1];
                }
                Ok(check)
            })
        })
        .collect()
}

pub fn trivial_action_checks() -> Vec<CheckReport> {
    let build = |k: usize, items: &[(f64, Vec<i64>)]| -> Result<CheckReport> {
        let (_, table) = build_group(&GroupFamily::Cyclic { k })?;
        let summands = items
            .iter()
            .map(|(a, coeffs)| {
                Ok((ArithmeticSpectrum::shifted_integers(*a), VirtualCharacter::new(table.clone(), coeffs.clone())?))
            })
            .collect::<Result<Vec<_>>>()?;
        trivial_action_decomposition(k, &summands)
    };
    let cases: Vec<(usize, Vec<(f64, Vec<i64>)>)> = vec![
        (2, vec![(0.25, vec![1, 0])]),
        (2, vec![(0.25, vec![1, 0]), (0.6, vec![0, 1])]),
        (2, vec![(0.1, vec![1, 1]), (0.0, vec![0, 2])]),
        (3, vec![(0.1, vec![1, 0, 0]), (0.5, vec![0, 1, 0]), (0.0, vec![0, 0, 1])]),
        (3, vec![(0.3, vec![0, 2, 1]), (0.85, vec![1, 0, 1])]),
    ];
    cases
        .par_iter()
        .map(|(k, items)| {
            let inputs = json!({ "k": k, "summands": items });
            guard("trivial-action decomposition", inputs, || build(*k, items))
        })
        .collect()
}

fn suite_checks(suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
    match suite {
        Suite::Orthogonality => orthogonality_checks(),
        Suite::Clifford => clifford_checks(cfg),
        Suite::Forms => forms_checks(cfg),
        Suite::Eta => eta_checks(cfg),
        Suite::FreeCase => free_case_checks(cfg),
        Suite::SphereIndex => sphere_checks(),
        Suite::Fubini => fubini_checks(),
        Suite::Stokes => stokes_checks(),
        Suite::TrivialAction => trivial_action_checks(),
        Suite::All => Suite::members().iter().flat_map(|&s| suite_checks(s, cfg)).collect(),
    }
}

/// Runs a named suite. Route checks use `cfg.tolerance` in place of their
/// default when it is tighter.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let suite: Suite = name.parse()?;
    let start = Instant::now();
    let records: Vec<CheckRecord> = suite_checks(suite, cfg)
        .into_iter()
        .map(|mut r| {
            if r.distance.is_finite() && r.distance > cfg.tolerance && r.distance <= 1e-9 {
                r.pass = false;
            }
            CheckRecord::from(r)
        })
        .collect();
    let pass = records.iter().all(|r| r.pass);
    Ok(Report { suite: suite.to_string(), records, pass, elapsed_ms: start.elapsed().as_secs_f64() * 1e3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig { tolerance: 0.0, ..Default::default() }.validate().is_err());
        assert!(RunConfig { truncation_degree: 9, ..Default::default() }.validate().is_err());
        assert!(RunConfig { truncation_degree: 18, ..Default::default() }.validate().is_err());
        assert!(RunConfig::from_json_str(r#"{"tolerance": 1e-8}"#).unwrap().tolerance == 1e-8);
        assert!(RunConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn suite_names_roundtrip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().to_string(), n);
        }
        assert!("unknown-name".parse::<Suite>().is_err());
    }

    #[test]
    fn orthogonality_suite_passes_and_is_deterministic() {
        let a = run_suite("orthogonality", &RunConfig::default()).unwrap();
        let b = run_suite("orthogonality", &RunConfig::default()).unwrap();
        assert!(a.pass);
        assert_eq!(a.records, b.records);
    }
}
