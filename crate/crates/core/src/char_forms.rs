//! Truncated multivariate power series in Chern roots, and the equivariant
//! characteristic series built from them: Chern character, Ahat with
//! Pfaffian block factors, spinor differences, and localized index
//! contributions at isolated fixed points.
//!
//! A root variable has cohomological degree 2; the degree-`2k` part of a
//! series implicitly carries `u^{-k}`. Only block-level offsets are tracked
//! explicitly in `FormSeries::u_offset`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE: u32 = 10;

type Monomial = Vec<u8>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Multivariate polynomial with complex coefficients, truncated at total
/// degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSeries {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Complex64>,
    u_offset: i32,
}

fn total(m: &Monomial) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

impl FormSeries {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        FormSeries { nvars, degree, terms: BTreeMap::new(), u_offset: 0 }
    }

    pub fn constant(nvars: usize, degree: u32, value: Complex64) -> Self {
        let mut s = Self::zero(nvars, degree);
        s.insert(vec![0; nvars], value);
        s
    }

    pub fn one(nvars: usize, degree: u32) -> Self {
        Self::constant(nvars, degree, c(1.0, 0.0))
    }

    pub fn var(nvars: usize, degree: u32, index: usize) -> Self {
        let mut m = vec![0; nvars];
        m[index] = 1;
        let mut s = Self::zero(nvars, degree);
        s.insert(m, c(1.0, 0.0));
        s
    }

    /// `sum_j c_j x_j` for a list of `(variable, coefficient)` pairs.
    pub fn linear(nvars: usize, degree: u32, form: &[(usize, f64)]) -> Self {
        let mut s = Self::zero(nvars, degree);
        for &(v, coef) in form {
            s = s.add(&Self::var(nvars, degree, v).scale(c(coef, 0.0)));
        }
        s
    }

    fn insert(&mut self, m: Monomial, value: Complex64) {
        if total(&m) > self.degree {
            return;
        }
        let e = self.terms.entry(m).or_insert(c(0.0, 0.0));
        *e += value;
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn u_offset(&self) -> i32 {
        self.u_offset
    }

    pub fn with_u_offset(mut self, offset: i32) -> Self {
        self.u_offset = offset;
        self
    }

    pub fn coeff(&self, exponents: &[u8]) -> Complex64 {
        self.terms.get(exponents).copied().unwrap_or(c(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], Complex64)> {
        self.terms.iter().map(|(m, &v)| (m.as_slice(), v))
    }

    /// Highest total degree among stored terms.
    pub fn max_stored_degree(&self) -> u32 {
        self.terms.keys().map(total).max().unwrap_or(0)
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous(&self, deg: u32) -> FormSeries {
        let mut s = Self::zero(self.nvars, self.degree);
        for (m, v) in &self.terms {
            if total(m) == deg {
                s.terms.insert(m.clone(), *v);
            }
        }
        s
    }

    fn same_shape(&self, other: &FormSeries) -> Result<()> {
        if self.nvars == other.nvars && self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::SeriesShapeMismatch)
        }
    }

    pub fn try_add(&self, other: &FormSeries) -> Result<FormSeries> {
        self.same_shape(other)?;
        let mut s = self.clone();
        for (m, v) in &other.terms {
            s.insert(m.clone(), *v);
        }
        Ok(s)
    }

    pub fn try_mul(&self, other: &FormSeries) -> Result<FormSeries> {
        self.same_shape(other)?;
        let mut s = Self::zero(self.nvars, self.degree);
        s.u_offset = self.u_offset + other.u_offset;
        for (ma, va) in &self.terms {
            let da = total(ma);
            for (mb, vb) in &other.terms {
                if da + total(mb) > self.degree {
                    continue;
                }
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                s.insert(m, va * vb);
            }
        }
        Ok(s)
    }

    /// Panicking variant of `try_add` for series built in the same context.
    pub fn add(&self, other: &FormSeries) -> FormSeries {
        self.try_add(other).expect("series shape mismatch")
    }

    pub fn sub(&self, other: &FormSeries) -> FormSeries {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &FormSeries) -> FormSeries {
        self.try_mul(other).expect("series shape mismatch")
    }

    pub fn scale(&self, k: Complex64) -> FormSeries {
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v *= k;
        }
        s
    }

    pub fn pow(&self, n: u32) -> FormSeries {
        (0..n).fold(Self::one(self.nvars, self.degree), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse up to the truncation degree.
    pub fn invert(&self) -> Result<FormSeries> {
        let c0 = self.constant_term();
        if c0.norm() == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        // s = c0 (1 + r) with r nilpotent below the truncation
        let r = self.scale(c0.inv()).sub(&Self::one(self.nvars, self.degree));
        let neg_r = r.scale(c(-1.0, 0.0));
        let mut acc = Self::one(self.nvars, self.degree);
        for _ in 0..self.degree {
            acc = Self::one(self.nvars, self.degree).add(&neg_r.mul(&acc));
        }
        let mut out = acc.scale(c0.inv());
        out.u_offset = -self.u_offset;
        Ok(out)
    }

    /// `sum_n coeffs[n] * self^n`; `self` must have zero constant term.
    pub fn compose_univariate(&self, coeffs: &[Complex64]) -> FormSeries {
        debug_assert!(self.constant_term().norm() == 0.0);
        let n = coeffs.len().min(self.degree as usize + 1);
        let mut acc = Self::zero(self.nvars, self.degree);
        for k in (0..n).rev() {
            acc = acc.mul(self).add(&Self::constant(self.nvars, self.degree, coeffs[k]));
        }
        acc
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(m, v)| m.iter().zip(point).fold(*v, |acc, (&e, x)| acc * x.powu(e as u32))).sum()
    }

    /// Largest coefficient-wise difference.
    pub fn distance(&self, other: &FormSeries) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, v) in &self.terms {
            worst = worst.max((v - other.coeff(m)).norm());
        }
        for (m, v) in &other.terms {
            worst = worst.max((v - self.coeff(m)).norm());
        }
        worst
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, v)| v.norm() != 0.0)
            .map(|(m, v)| serde_json::json!({ "exponents": m, "re": v.re, "im": v.im }))
            .collect();
        serde_json::json!({
            "nvars": self.nvars,
            "degree": self.degree,
            "u_offset": self.u_offset,
            "terms": terms,
        })
    }
}

impl fmt::Display for FormSeries {
    /// Monomials sorted by total degree, then lexicographically.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(&Monomial, &Complex64)> = self.terms.iter().filter(|(_, v)| v.norm() > 1e-300).collect();
        items.sort_by(|a, b| total(a.0).cmp(&total(b.0)).then(b.0.cmp(a.0)));
        if items.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = items
            .iter()
            .map(|(m, v)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
                let coef = crate::group_rep::format_complex(**v);
                if mono.is_empty() {
                    format!("({coef})")
                } else {
                    format!("({coef})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Taylor coefficients of `a e^{z/2} + b e^{-z/2}` up to `deg`.
fn half_exp_combination(a: Complex64, b: Complex64, deg: u32) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    let mut fact = 1.0;
    for n in 0..=deg {
        if n > 0 {
            fact *= n as f64;
        }
        let h = 0.5f64.powi(n as i32);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        out.push((a * h + b * h * sign) / fact);
    }
    out
}

fn exp_coeffs(deg: u32) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    let mut fact = 1.0;
    for n in 0..=deg {
        if n > 0 {
            fact *= n as f64;
        }
        out.push(c(1.0 / fact, 0.0));
    }
    out
}

/// Coefficients of the reciprocal of a univariate power series.
fn univariate_invert(a: &[Complex64]) -> Result<Vec<Complex64>> {
    if a[0].norm() == 0.0 {
        return Err(Error::ZeroConstantTerm);
    }
    let mut b = vec![c(0.0, 0.0); a.len()];
    b[0] = a[0].inv();
    for n in 1..a.len() {
        let s: Complex64 = (1..=n).map(|k| a[k] * b[n - k]).sum();
        b[n] = -s * b[0];
    }
    Ok(b)
}

/// One summand of an eigenbundle decomposition: a line with Chern root
/// `root` on which the group element acts by the unit complex `weight`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub weight: Complex64,
    /// Linear combination of root variables, as `(variable, coefficient)`.
    pub root: Vec<(usize, f64)>,
    /// `+1` for the even part of a graded bundle, `-1` for the odd part.
    pub sign: i8,
}

/// Eigenbundle weight data for one group element on one fixed component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernRootSpec {
    pub nvars: usize,
    pub degree: u32,
    pub entries: Vec<RootEntry>,
}

impl ChernRootSpec {
    pub fn new(nvars: usize, degree: u32, entries: Vec<RootEntry>) -> Result<Self> {
        for e in &entries {
            if (e.weight.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::NonUnitWeight(e.weight.norm()));
            }
            if e.root.iter().any(|&(v, _)| v >= nvars) {
                return Err(Error::SeriesShapeMismatch);
            }
        }
        Ok(ChernRootSpec { nvars, degree, entries })
    }

    pub fn direct_sum(&self, other: &ChernRootSpec) -> Result<ChernRootSpec> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::SeriesShapeMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(ChernRootSpec { entries, ..self.clone() })
    }

    /// Formal negative: every grading sign flipped.
    pub fn negate(&self) -> ChernRootSpec {
        let entries = self.entries.iter().map(|e| RootEntry { sign: -e.sign, ..e.clone() }).collect();
        ChernRootSpec { entries, ..self.clone() }
    }

    /// Tensor product: weights multiply, roots add, signs multiply.
    pub fn tensor(&self, other: &ChernRootSpec) -> Result<ChernRootSpec> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::SeriesShapeMismatch);
        }
        let mut entries = Vec::new();
        for a in &self.entries {
            for b in &other.entries {
                let mut root = a.root.clone();
                root.extend_from_slice(&b.root);
                entries.push(RootEntry { weight: a.weight * b.weight, root, sign: a.sign * b.sign });
            }
        }
        Ok(ChernRootSpec { entries, ..self.clone() })
    }
}

/// `sum_j sign_j lambda_j exp(x_j)`.
pub fn ch_series(spec: &ChernRootSpec) -> FormSeries {
    let exp = exp_coeffs(spec.degree);
    spec.entries.iter().fold(FormSeries::zero(spec.nvars, spec.degree), |acc, e| {
        let root = FormSeries::linear(spec.nvars, spec.degree, &e.root);
        acc.add(&root.compose_univariate(&exp).scale(e.weight * e.sign as f64))
    })
}

/// A 2-plane of the normal bundle: rotation angle of the group element and
/// the Chern root of its curvature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerpBlock {
    pub angle: f64,
    pub root: Vec<(usize, f64)>,
}

fn check_block_angle(angle: f64) -> Result<()> {
    let r = angle.rem_euclid(2.0 * PI);
    if r.min(2.0 * PI - r) < 1e-12 {
        Err(Error::ZeroAngleInPerp(angle))
    } else {
        Ok(())
    }
}

/// Pfaffian factor of one rotated block,
/// `-i (e^{(y + i theta)/2} - e^{-(y + i theta)/2})`.
///
/// This branch is analytic at `y = 0`, equals `2 sin(theta/2)` there, and
/// squares to `(1 - e^{i theta} e^y)(1 - e^{-i theta} e^{-y})`.
pub fn pfaffian_block_series(nvars: usize, degree: u32, block: &PerpBlock) -> Result<FormSeries> {
    check_block_angle(block.angle)?;
    let half = c(0.0, block.angle / 2.0).exp();
    let coeffs: Vec<Complex64> =
        half_exp_combination(half, -half.inv(), degree).iter().map(|z| z * c(0.0, -1.0)).collect();
    Ok(FormSeries::linear(nvars, degree, &block.root).compose_univariate(&coeffs))
}

/// `Pf(1 - g e^{y})^2` for a block, in closed form.
pub fn pfaffian_square_target(nvars: usize, degree: u32, block: &PerpBlock) -> FormSeries {
    let y = FormSeries::linear(nvars, degree, &block.root);
    let exp = exp_coeffs(degree);
    let ey = y.compose_univariate(&exp);
    let eny = y.scale(c(-1.0, 0.0)).compose_univariate(&exp);
    let t = c(0.0, block.angle).exp();
    let one = FormSeries::one(nvars, degree);
    one.sub(&ey.scale(t)).mul(&one.sub(&eny.scale(t.inv())))
}

/// `x / (e^{x/2} - e^{-x/2})` for one root.
pub fn a_hat_root_series(nvars: usize, degree: u32, root: &[(usize, f64)]) -> FormSeries {
    // (e^{z/2} - e^{-z/2}) / z has coefficients shifted down by one
    let mut num = half_exp_combination(c(1.0, 0.0), c(-1.0, 0.0), degree + 1);
    num.remove(0);
    let inv = univariate_invert(&num).expect("constant term is 1");
    FormSeries::linear(nvars, degree, root).compose_univariate(&inv)
}

/// Equivariant Ahat series:
/// `eps * i^{-k} * prod_fixed x/(e^{x/2}-e^{-x/2}) / prod_blocks Pf_block`.
pub fn a_hat_series(
    nvars: usize,
    degree: u32,
    fixed_roots: &[Vec<(usize, f64)>],
    blocks: &[PerpBlock],
    eps: i8,
) -> Result<FormSeries> {
    let mut s = FormSeries::one(nvars, degree);
    for r in fixed_roots {
        s = s.mul(&a_hat_root_series(nvars, degree, r));
    }
    for b in blocks {
        s = s.mul(&pfaffian_block_series(nvars, degree, b)?.invert()?);
    }
    let k = blocks.len() as i32;
    let phase = c(0.0, -1.0).powi(k) * eps as f64;
    Ok(s.scale(phase))
}

/// Flat value of the equivariant Ahat for rotation angles only.
pub fn flat_a_hat(angles: &[f64], eps: i8) -> Result<Complex64> {
    let blocks: Vec<PerpBlock> = angles.iter().map(|&angle| PerpBlock { angle, root: Vec::new() }).collect();
    Ok(a_hat_series(1, 0, &[], &blocks, eps)?.constant_term())
}

/// `prod_j (e^{x_j/2} - e^{-x_j/2})`.
pub fn spinor_difference_series(nvars: usize, degree: u32, roots: &[Vec<(usize, f64)>]) -> FormSeries {
    let coeffs = half_exp_combination(c(1.0, 0.0), c(-1.0, 0.0), degree);
    roots.iter().fold(FormSeries::one(nvars, degree), |acc, r| {
        acc.mul(&FormSeries::linear(nvars, degree, r).compose_univariate(&coeffs))
    })
}

/// `prod_j x_j`.
pub fn euler_series(nvars: usize, degree: u32, roots: &[Vec<(usize, f64)>]) -> FormSeries {
    roots.iter().fold(FormSeries::one(nvars, degree), |acc, r| acc.mul(&FormSeries::linear(nvars, degree, r)))
}

pub fn series_invert(s: &FormSeries) -> Result<FormSeries> {
    s.invert()
}

pub fn series_mul(a: &FormSeries, b: &FormSeries) -> Result<FormSeries> {
    a.try_mul(b)
}

pub fn series_add(a: &FormSeries, b: &FormSeries) -> Result<FormSeries> {
    a.try_add(b)
}

pub fn series_eval(s: &FormSeries, point: &[Complex64]) -> Complex64 {
    s.eval(point)
}

/// How a local contribution at an isolated fixed point is assembled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointConvention {
    /// `mu / prod (1 - t_j)` for the Dolbeault complex.
    Dolbeault,
    /// `mu * prod (-e^{-i theta_j/2}) Ahat_flat(2 pi - theta_j)`: the flat
    /// Ahat block at the tangent rotation angle, with the bundle weight
    /// shifted by a square root of the canonical bundle.
    #[default]
    Spin,
}

/// Local index contribution at an isolated fixed point.
///
/// `angles[j]` is the angle of the weight `t_j = e^{i theta_j}` by which the
/// group element multiplies the `j`-th holomorphic coordinate function; the
/// fixed point set is the origin of those coordinates. `mu` is the weight on
/// the bundle fiber.
pub fn fixed_point_contribution(angles: &[f64], mu: Complex64, convention: FixedPointConvention) -> Result<Complex64> {
    let mut out = mu;
    for &theta in angles {
        let r = theta.rem_euclid(2.0 * PI);
        if r.min(2.0 * PI - r) < 1e-12 {
            return Err(Error::DegenerateWeight);
        }
        match convention {
            FixedPointConvention::Dolbeault => {
                out /= c(1.0, 0.0) - c(0.0, r).exp();
            }
            FixedPointConvention::Spin => {
                let shift = -c(0.0, -r / 2.0).exp();
                out *= shift * flat_a_hat(&[2.0 * PI - r], 1)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(d: u32) -> (usize, u32, Vec<(usize, f64)>) {
        (1, d, vec![(0, 1.0)])
    }

    #[test]
    fn exponential_of_single_root() {
        let spec =
            ChernRootSpec::new(1, 10, vec![RootEntry { weight: c(1.0, 0.0), root: vec![(0, 1.0)], sign: 1 }]).unwrap();
        let ch = ch_series(&spec);
        let mut fact = 1.0;
        for n in 0..=10u8 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((ch.coeff(&[n]) - c(1.0 / fact, 0.0)).norm() < 1e-15);
        }
        assert!(ch.max_stored_degree() <= 10);
        let cancel = ch_series(&spec.direct_sum(&spec.negate()).unwrap());
        assert!(cancel.distance(&FormSeries::zero(1, 10)) < 1e-15);
    }

    #[test]
    fn ch_is_multiplicative_on_two_root_specs() {
        let w = |t: f64| c(0.0, t).exp();
        let v = ChernRootSpec::new(
            2,
            4,
            vec![
                RootEntry { weight: w(0.3), root: vec![(0, 1.0)], sign: 1 },
                RootEntry { weight: w(1.9), root: vec![(1, 1.0)], sign: 1 },
            ],
        )
        .unwrap();
        let vp = ChernRootSpec::new(
            2,
            4,
            vec![
                RootEntry { weight: w(-0.7), root: vec![(1, 1.0)], sign: 1 },
                RootEntry { weight: w(2.2), root: vec![(0, 2.0)], sign: -1 },
            ],
        )
        .unwrap();
        let lhs = ch_series(&v.tensor(&vp).unwrap());
        // oracle: multiply the two degree-4 expansions term by term
        let expand = |s: &ChernRootSpec| {
            let mut m: BTreeMap<(u8, u8), Complex64> = BTreeMap::new();
            for e in &s.entries {
                let (a, b) =
                    e.root
                        .iter()
                        .fold((0.0, 0.0), |acc, &(v, k)| if v == 0 { (acc.0 + k, acc.1) } else { (acc.0, acc.1 + k) });
                // (a x + b y)^n / n! expanded binomially
                for n in 0..=4u8 {
                    for i in 0..=n {
                        let binom = (1..=n as u32).product::<u32>() as f64
                            / ((1..=i as u32).product::<u32>() as f64 * (1..=(n - i) as u32).product::<u32>() as f64);
                        let fact = (1..=n as u32).product::<u32>() as f64;
                        let coef = binom * a.powi(i as i32) * b.powi((n - i) as i32) / fact;
                        *m.entry((i, n - i)).or_insert(c(0.0, 0.0)) += e.weight * e.sign as f64 * coef;
                    }
                }
            }
            m
        };
        let (ea, eb) = (expand(&v), expand(&vp));
        for i in 0..=4u8 {
            for j in 0..=(4 - i) {
                let mut want = c(0.0, 0.0);
                for (&(i1, j1), &x) in &ea {
                    if i1 <= i && j1 <= j {
                        if let Some(&y) = eb.get(&(i - i1, j - j1)) {
                            want += x * y;
                        }
                    }
                }
                assert!((lhs.coeff(&[i, j]) - want).norm() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn a_hat_single_root_expansion() {
        let (n, d, r) = one_var(10);
        let s = a_hat_series(n, d, &[r], &[], 1).unwrap();
        assert!((s.coeff(&[0]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((s.coeff(&[2]) - c(-1.0 / 24.0, 0.0)).norm() < 1e-15);
        assert!((s.coeff(&[4]) - c(7.0 / 5760.0, 0.0)).norm() < 1e-15);
        assert!(s.coeff(&[1]).norm() < 1e-15);
        let empty = a_hat_series(1, 10, &[], &[], 1).unwrap();
        assert!(empty.distance(&FormSeries::one(1, 10)) < 1e-15);
    }

    #[test]
    fn flat_half_turn_block() {
        let v = flat_a_hat(&[PI], 1).unwrap();
        assert!((v.norm() - 0.5).abs() < 1e-15);
        assert!(matches!(flat_a_hat(&[0.0], 1), Err(Error::ZeroAngleInPerp(_))));
    }

    #[test]
    fn inversion() {
        let x = FormSeries::var(1, 10, 0);
        let s = FormSeries::one(1, 10).add(&x);
        let inv = s.invert().unwrap();
        for n in 0..=10u8 {
            let want = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((inv.coeff(&[n]) - c(want, 0.0)).norm() < 1e-15);
        }
        assert!(matches!(x.invert(), Err(Error::ZeroConstantTerm)));
        let a = a_hat_series(
            2,
            10,
            &[vec![(0, 1.0)], vec![(1, 1.0)]],
            &[PerpBlock { angle: 1.0, root: vec![(1, 0.5)] }],
            1,
        )
        .unwrap();
        assert!(a.mul(&a.invert().unwrap()).distance(&FormSeries::one(2, 10)) < 1e-12);
    }

    #[test]
    fn spinor_difference_identity() {
        let roots = vec![vec![(0, 1.0)], vec![(1, 1.0)]];
        let sd = spinor_difference_series(2, 10, &roots);
        assert!((sd.coeff(&[1, 1]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((sd.coeff(&[3, 1]) - c(1.0 / 24.0, 0.0)).norm() < 1e-15);
        let rhs = euler_series(2, 10, &roots).mul(&a_hat_series(2, 10, &roots, &[], 1).unwrap().invert().unwrap());
        assert!(sd.distance(&rhs) < 1e-12);
        assert!(spinor_difference_series(1, 10, &[]).distance(&FormSeries::one(1, 10)) < 1e-15);
    }

    #[test]
    fn pfaffian_branch_squares_correctly() {
        for angle in [0.4, PI, 2.0 * PI / 3.0, 5.9] {
            let block = PerpBlock { angle, root: vec![(0, 1.0)] };
            let pf = pfaffian_block_series(1, 10, &block).unwrap();
            assert!(pf.mul(&pf).distance(&pfaffian_square_target(1, 10, &block)) < 1e-12);
            assert!((pf.constant_term() - c(2.0 * (angle / 2.0).sin(), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn fixed_point_conventions_agree() {
        for theta in [0.5, 2.0, PI, 4.0] {
            let mu = c(0.0, 0.3 * theta).exp();
            let d = fixed_point_contribution(&[theta], mu, FixedPointConvention::Dolbeault).unwrap();
            let s = fixed_point_contribution(&[theta], mu, FixedPointConvention::Spin).unwrap();
            assert!((d - s).norm() < 1e-12);
            let conj =
                fixed_point_contribution(&[2.0 * PI - theta], mu.conj(), FixedPointConvention::Dolbeault).unwrap();
            assert!((conj - d.conj()).norm() < 1e-12);
        }
        assert!(matches!(
            fixed_point_contribution(&[2.0 * PI], c(1.0, 0.0), FixedPointConvention::Dolbeault),
            Err(Error::DegenerateWeight)
        ));
    }

    #[test]
    fn display_is_sorted() {
        let x = FormSeries::var(2, 3, 0);
        let y = FormSeries::var(2, 3, 1);
        let s = FormSeries::one(2, 3).add(&x.mul(&y)).add(&y);
        let text = s.to_string();
        assert!(text.starts_with("(1+0i)"));
        assert!(text.find("x1").unwrap() < text.find("x0*x1").unwrap());
    }
}
