//! The torus `(R(G) (x) R) / R(G)`, where odd pushforwards and reduced eta
//! invariants take values.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_rep::{CharacterTable, ClassFunction, GroupFamily, VirtualCharacter};

/// Real coefficients over the irreducibles, each kept in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct TorusElement {
    table: Arc<CharacterTable>,
    coeffs: Vec<f64>,
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = frac(a - b);
    d.min(1.0 - d)
}

impl TorusElement {
    pub fn from_coeffs(table: Arc<CharacterTable>, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != table.len() {
            return Err(Error::LengthMismatch { expected: table.len(), got: coeffs.len() });
        }
        Ok(TorusElement { table, coeffs: coeffs.iter().map(|&x| frac(x)).collect() })
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let n = table.len();
        TorusElement { table, coeffs: vec![0.0; n] }
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Representative class function `sum c_i chi_i` with `c_i in [0,1)`.
    pub fn to_class_function(&self) -> ClassFunction {
        self.table.reconstruct_real(&self.coeffs).expect("coefficient count matches table")
    }

    pub fn negate(&self) -> TorusElement {
        TorusElement { table: self.table.clone(), coeffs: self.coeffs.iter().map(|&x| frac(-x)).collect() }
    }

    pub fn approx_eq(&self, other: &TorusElement, tol: f64) -> bool {
        torus_distance(self, other).map(|d| d < tol).unwrap_or(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TorusJson::from(self)).expect("plain data")
    }
}

/// Wire form: `{"group": {...}, "coefficients": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusJson {
    pub group: GroupFamily,
    pub coefficients: Vec<f64>,
}

impl From<&TorusElement> for TorusJson {
    fn from(t: &TorusElement) -> Self {
        TorusJson { group: t.table.group().family().clone(), coefficients: t.coeffs.clone() }
    }
}

impl TorusJson {
    pub fn into_element(self, table: Arc<CharacterTable>) -> Result<TorusElement> {
        if &self.group != table.group().family() {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: table.group().family().to_string(),
            });
        }
        TorusElement::from_coeffs(table, &self.coefficients)
    }
}

fn check_table(a: &CharacterTable, b: &CharacterTable) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch { left: a.group().family().to_string(), right: b.group().family().to_string() })
    }
}

/// Projects a class function with real irreducible coefficients to the torus.
pub fn project(table: &Arc<CharacterTable>, f: &ClassFunction, tol: f64) -> Result<TorusElement> {
    let raw = table.decompose(f)?;
    let mut coeffs = Vec::with_capacity(raw.len());
    for (index, c) in raw.into_iter().enumerate() {
        if c.im.abs() > tol {
            return Err(Error::NonRealCoefficient { index, imag: c.im });
        }
        coeffs.push(frac(c.re));
    }
    Ok(TorusElement { table: table.clone(), coeffs })
}

pub fn torus_add(s: &TorusElement, t: &TorusElement) -> Result<TorusElement> {
    check_table(&s.table, &t.table)?;
    let coeffs = s.coeffs.iter().zip(&t.coeffs).map(|(a, b)| frac(a + b)).collect();
    Ok(TorusElement { table: s.table.clone(), coeffs })
}

pub fn torus_sub(s: &TorusElement, t: &TorusElement) -> Result<TorusElement> {
    torus_add(s, &t.negate())
}

/// Module action of `R(G)`: multiply the underlying class functions and
/// re-project.
pub fn torus_act(v: &VirtualCharacter, t: &TorusElement) -> Result<TorusElement> {
    check_table(v.table(), &t.table)?;
    let prod = v.to_class_function().tensor(&t.to_class_function())?;
    // products of characters have integer structure constants, so the
    // imaginary parts only carry rounding noise
    project(&t.table, &prod, 1e-6)
}

/// Max over irreducibles of the circle distance between coefficients.
pub fn torus_distance(s: &TorusElement, t: &TorusElement) -> Result<f64> {
    check_table(&s.table, &t.table)?;
    Ok(s.coeffs.iter().zip(&t.coeffs).map(|(&a, &b)| circle_distance(a, b)).fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KPoint {
    /// `R(G)` itself.
    Lattice,
    /// `(R(G) (x) R) / R(G)`.
    Torus,
}

/// Differential equivariant K-theory of a point in degree `-i`.
pub fn k_point(i: i64) -> KPoint {
    if i.rem_euclid(2) == 0 {
        KPoint::Lattice
    } else {
        KPoint::Torus
    }
}

impl KPoint {
    pub fn describe(self, table: &CharacterTable) -> String {
        let g = table.group().family();
        match self {
            KPoint::Lattice => format!("lattice R({g}) of rank {}", table.len()),
            KPoint::Torus => format!("torus (R({g}) (x) R)/R({g}) of dimension {}", table.len()),
        }
    }
}

/// Class function `sum c_i chi_i` for real coefficients, without reduction.
pub fn real_combination(table: &CharacterTable, coeffs: &[f64]) -> Result<ClassFunction> {
    table.reconstruct(&coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
}
