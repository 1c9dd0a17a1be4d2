//! Finite groups given by explicit multiplication tables, class functions,
//! character tables and virtual characters.
//!
//! Every group is built from a closed-form family constructor. Class
//! functions are stored per conjugacy class; the inverse-class map carries
//! the real structure `f(g^-1) = conj(f(g))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order the constructors accept.
pub const MAX_ORDER: usize = 256;

/// Default tolerance for comparing complex values.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupFamily {
    Cyclic {
        k: usize,
    },
    CyclicProduct {
        factors: Vec<usize>,
    },
    /// Symmetries of a regular `k`-gon, order `2k`.
    Dihedral {
        k: usize,
    },
    Symmetric3,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic { k } => write!(f, "cyclic({k})"),
            GroupFamily::CyclicProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|k| k.to_string()).collect();
                write!(f, "cyclic_product({})", parts.join("x"))
            }
            GroupFamily::Dihedral { k } => write!(f, "dihedral({k})"),
            GroupFamily::Symmetric3 => write!(f, "symmetric3"),
        }
    }
}

impl std::str::FromStr for GroupFamily {
    type Err = Error;

    /// Parses `cyclic:4`, `product:2x2`, `dihedral:4` or `s3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedFamily(s.to_string());
        let s = s.trim();
        if s.eq_ignore_ascii_case("s3") || s.eq_ignore_ascii_case("symmetric3") {
            return Ok(GroupFamily::Symmetric3);
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "cyclic" | "c" => Ok(GroupFamily::Cyclic { k: arg.parse().map_err(|_| bad())? }),
            "dihedral" | "d" => Ok(GroupFamily::Dihedral { k: arg.parse().map_err(|_| bad())? }),
            "product" | "cyclic_product" => {
                let factors =
                    arg.split('x').map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
                Ok(GroupFamily::CyclicProduct { factors })
            }
            _ => Err(bad()),
        }
    }
}

/// A finite group as a multiplication table on indices `0..order`, with `0`
/// the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    family: GroupFamily,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl FiniteGroup {
    fn from_table(family: GroupFamily, order: usize, mul: Vec<usize>) -> Self {
        let inv: Vec<usize> = (0..order)
            .map(|a| (0..order).find(|&b| mul[a * order + b] == 0).expect("group element without inverse"))
            .collect();
        let mut class_of = vec![usize::MAX; order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..order).map(|g| mul[mul[g * order + x] * order + inv[g]]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members);
        }
        let inverse_class = classes.iter().map(|c| class_of[inv[c[0]]]).collect();
        FiniteGroup { family, order, mul, inv, class_of, classes, inverse_class }
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_elements(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// Group-axiom check: identity, inverses, associativity on the given
    /// triples, and the class-partition invariants.
    pub fn check_axioms(&self, triples: &[(usize, usize, usize)]) -> bool {
        let n = self.order;
        let identity = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let inverses = (0..n).all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let assoc = triples.iter().all(|&(a, b, c)| {
            let (a, b, c) = (a % n, b % n, c % n);
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        });
        let partition = self.classes.iter().map(Vec::len).sum::<usize>() == n;
        let involution = (0..self.num_classes()).all(|c| self.inverse_class(self.inverse_class(c)) == c);
        identity && inverses && assoc && partition && involution && self.class_of(0) == 0
    }
}

/// A complex-valued function on the conjugacy classes of a group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Complex64>,
}

fn check_same(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch { left: a.family.to_string(), right: b.family.to_string() })
    }
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::LengthMismatch { expected: group.num_classes(), got: values.len() });
        }
        Ok(ClassFunction { group, values })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.num_classes();
        ClassFunction { group, values: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn constant(group: Arc<FiniteGroup>, c: Complex64) -> Self {
        let n = group.num_classes();
        ClassFunction { group, values: vec![c; n] }
    }

    /// Builds a class function from a function on elements, evaluated on
    /// class representatives.
    pub fn from_element_fn(group: Arc<FiniteGroup>, f: impl Fn(usize) -> Complex64) -> Self {
        let values = group.classes.iter().map(|c| f(c[0])).collect();
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, class: usize) -> Complex64 {
        self.values[class]
    }

    pub fn value_at(&self, element: usize) -> Complex64 {
        self.values[self.group.class_of(element)]
    }

    /// `f(g^-1) = conj(f(g))` for every class.
    pub fn is_k_real(&self, tol: f64) -> bool {
        (0..self.values.len()).all(|c| {
            let inv = self.values[self.group.inverse_class(c)];
            (self.values[c] - inv.conj()).norm() <= tol
        })
    }

    pub fn dual(&self) -> ClassFunction {
        let values = (0..self.values.len()).map(|c| self.values[self.group.inverse_class(c)]).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    pub fn conj(&self) -> ClassFunction {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, c: Complex64) -> ClassFunction {
        self.map(|z| z * c)
    }

    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a * b)
    }

    pub fn try_add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<ClassFunction> {
        check_same(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// Largest pointwise modulus of the difference.
    pub fn distance(&self, other: &ClassFunction) -> Result<f64> {
        check_same(&self.group, &other.group)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &ClassFunction, tol: f64) -> bool {
        self.distance(other).map(|d| d <= tol).unwrap_or(false)
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&ClassFunction> for &ClassFunction {
            type Output = ClassFunction;
            /// Panics if the operands live on different groups.
            fn $method(self, rhs: &ClassFunction) -> ClassFunction {
                self.$inner(rhs).expect("class functions on different groups")
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, tensor);

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        self.map(|z| -z)
    }
}

/// `(1/|G|) sum_g a(g) conj(b(g))`, summed over classes weighted by size.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Complex64> {
    check_same(&a.group, &b.group)?;
    let g = &a.group;
    let sum: Complex64 = (0..g.num_classes()).map(|c| a.values[c] * b.values[c].conj() * g.class_size(c) as f64).sum();
    Ok(sum / g.order() as f64)
}

pub fn tensor(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    a.tensor(b)
}

pub fn dual(f: &ClassFunction) -> ClassFunction {
    f.dual()
}

pub fn regular_character(group: &Arc<FiniteGroup>) -> ClassFunction {
    let mut f = ClassFunction::zero(group.clone());
    f.values[0] = Complex64::new(group.order() as f64, 0.0);
    f
}

/// Irreducible characters of a group, trivial character first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreps: Vec<ClassFunction>,
    dims: Vec<usize>,
}

impl PartialEq for CharacterTable {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
    }
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn irreps(&self) -> &[ClassFunction] {
        &self.irreps
    }

    pub fn irrep(&self, i: usize) -> &ClassFunction {
        &self.irreps[i]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn trivial(&self) -> &ClassFunction {
        &self.irreps[0]
    }

    /// Index of the irreducible equal to `f`, if any.
    pub fn find_irrep(&self, f: &ClassFunction, tol: f64) -> Option<usize> {
        self.irreps.iter().position(|chi| chi.approx_eq(f, tol))
    }

    /// Coefficients `<f, chi_i>` against every irreducible.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<Complex64>> {
        self.irreps.iter().map(|chi| inner_product(f, chi)).collect()
    }

    pub fn reconstruct(&self, coeffs: &[Complex64]) -> Result<ClassFunction> {
        if coeffs.len() != self.irreps.len() {
            return Err(Error::LengthMismatch { expected: self.irreps.len(), got: coeffs.len() });
        }
        let mut out = ClassFunction::zero(self.group.clone());
        for (c, chi) in coeffs.iter().zip(&self.irreps) {
            for (o, v) in out.values.iter_mut().zip(&chi.values) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    pub fn reconstruct_real(&self, coeffs: &[f64]) -> Result<ClassFunction> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.reconstruct(&c)
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.irreps.iter().enumerate() {
            for (j, b) in self.irreps.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                let ip = inner_product(a, b).expect("same group");
                worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest deviation of the column relations
    /// `sum_i chi_i(c) conj(chi_i(c')) = delta |G|/|c|`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        let g = &self.group;
        let n = g.num_classes();
        let mut worst: f64 = 0.0;
        for c in 0..n {
            for d in 0..n {
                let s: Complex64 = self.irreps.iter().map(|chi| chi.values[c] * chi.values[d].conj()).sum();
                let target = if c == d { g.order() as f64 / g.class_size(c) as f64 } else { 0.0 };
                worst = worst.max((s - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Rows are irreducibles, columns are classes, entries formatted `re+imi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("irrep,dim");
        for c in 0..self.group.num_classes() {
            out.push_str(&format!(",class{c}"));
        }
        out.push('\n');
        for (i, chi) in self.irreps.iter().enumerate() {
            out.push_str(&format!("{i},{}", self.dims[i]));
            for v in &chi.values {
                out.push(',');
                out.push_str(&format_complex(*v));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        serde_json::json!({
            "group": g.family(),
            "order": g.order(),
            "class_sizes": (0..g.num_classes()).map(|c| g.class_size(c)).collect::<Vec<_>>(),
            "inverse_class": (0..g.num_classes()).map(|c| g.inverse_class(c)).collect::<Vec<_>>(),
            "dims": self.dims,
            "characters": self.irreps.iter()
                .map(|chi| chi.values.iter().map(|z| [clean(z.re), clean(z.im)]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else {
        x
    }
}

pub fn format_complex(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re}{sign}{}i", im.abs())
}

/// An element of `R(G)`: integer coefficients over the irreducibles.
#[derive(Clone, Debug)]
pub struct VirtualCharacter {
    table: Arc<CharacterTable>,
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn new(table: Arc<CharacterTable>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != table.len() {
            return Err(Error::LengthMismatch { expected: table.len(), got: coeffs.len() });
        }
        Ok(VirtualCharacter { table, coeffs })
    }

    pub fn irrep(table: Arc<CharacterTable>, i: usize) -> Self {
        let mut coeffs = vec![0; table.len()];
        coeffs[i] = 1;
        VirtualCharacter { table, coeffs }
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let coeffs = vec![0; table.len()];
        VirtualCharacter { table, coeffs }
    }

    /// Rounds the decomposition of `f`; fails unless every coefficient is an
    /// integer within `tol`.
    pub fn from_class_function(table: Arc<CharacterTable>, f: &ClassFunction, tol: f64) -> Option<Self> {
        let raw = table.decompose(f).ok()?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for c in raw {
            let r = c.re.round();
            if (c - Complex64::new(r, 0.0)).norm() > tol {
                return None;
            }
            coeffs.push(r as i64);
        }
        Some(VirtualCharacter { table, coeffs })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn to_class_function(&self) -> ClassFunction {
        let c: Vec<f64> = self.coeffs.iter().map(|&x| x as f64).collect();
        self.table.reconstruct_real(&c).expect("length checked at construction")
    }

    /// Nonnegative coefficients: the character of an honest representation.
    pub fn is_genuine(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn dimension(&self) -> i64 {
        self.coeffs.iter().zip(self.table.dims()).map(|(&c, &d)| c * d as i64).sum()
    }

    pub fn try_add(&self, other: &VirtualCharacter) -> Result<VirtualCharacter> {
        check_same(&self.table.group, &other.table.group)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(VirtualCharacter { table: self.table.clone(), coeffs })
    }

    pub fn negate(&self) -> VirtualCharacter {
        VirtualCharacter { table: self.table.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn tensor(&self, other: &VirtualCharacter) -> Result<VirtualCharacter> {
        let f = self.to_class_function().tensor(&other.to_class_function())?;
        Ok(VirtualCharacter::from_class_function(self.table.clone(), &f, 1e-6)
            .expect("product of characters is a virtual character"))
    }

    pub fn dual(&self) -> VirtualCharacter {
        let f = self.to_class_function().dual();
        VirtualCharacter::from_class_function(self.table.clone(), &f, 1e-6).expect("dual of a virtual character")
    }
}

impl PartialEq for VirtualCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.coeffs == other.coeffs
    }
}

fn root_of_unity(num: i64, den: usize) -> Complex64 {
    let r = num.rem_euclid(den as i64) as f64 / den as f64;
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Builds a group and its character table from a family constructor.
pub fn build_group(family: &GroupFamily) -> Result<(Arc<FiniteGroup>, Arc<CharacterTable>)> {
    let order = match family {
        GroupFamily::Cyclic { k } => *k,
        GroupFamily::CyclicProduct { factors } => {
            if factors.is_empty() || factors.contains(&0) {
                return Err(Error::UnsupportedFamily(family.to_string()));
            }
            factors.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k)).unwrap_or(usize::MAX)
        }
        GroupFamily::Dihedral { k } => k.saturating_mul(2),
        GroupFamily::Symmetric3 => 6,
    };
    if order == 0 || order > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
    }
    let (group, irreps) = match family {
        GroupFamily::Cyclic { k } => {
            let k = *k;
            let mul = (0..k * k).map(|ab| (ab / k + ab % k) % k).collect();
            let g = Arc::new(FiniteGroup::from_table(family.clone(), k, mul));
            let irreps: Vec<_> = (0..k)
                .map(|j| ClassFunction::from_element_fn(g.clone(), |m| root_of_unity((j * m) as i64, k)))
                .collect();
            (g, irreps)
        }
        GroupFamily::CyclicProduct { factors } => {
            let digits = |mut x: usize| {
                let mut d = vec![0; factors.len()];
                for (slot, &k) in d.iter_mut().zip(factors).rev() {
                    *slot = x % k;
                    x /= k;
                }
                d
            };
            let undigits = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &k)| acc * k + x);
            let mut mul = Vec::with_capacity(order * order);
            for a in 0..order {
                let da = digits(a);
                for b in 0..order {
                    let db = digits(b);
                    let s: Vec<usize> = da.iter().zip(&db).zip(factors).map(|((x, y), k)| (x + y) % k).collect();
                    mul.push(undigits(&s));
                }
            }
            let g = Arc::new(FiniteGroup::from_table(family.clone(), order, mul));
            let irreps = (0..order)
                .map(|j| {
                    let dj = digits(j);
                    ClassFunction::from_element_fn(g.clone(), |m| {
                        let dm = digits(m);
                        dj.iter().zip(&dm).zip(factors).map(|((a, b), &k)| root_of_unity((a * b) as i64, k)).product()
                    })
                })
                .collect();
            (g, irreps)
        }
        GroupFamily::Dihedral { k } => {
            let k = *k;
            // element r^i s^b has index i + k b; s r^j = r^-j s
            let mut mul = Vec::with_capacity(order * order);
            for a in 0..order {
                let (i, b) = (a % k, a / k);
                for x in 0..order {
                    let (j, c) = (x % k, x / k);
                    let rot = if b == 0 { (i + j) % k } else { (i + k - j) % k };
                    mul.push(rot + k * (b ^ c));
                }
            }
            let g = Arc::new(FiniteGroup::from_table(family.clone(), order, mul));
            let mut irreps = Vec::new();
            let r_signs: &[f64] = if k % 2 == 0 { &[1.0, -1.0] } else { &[1.0] };
            for &rs in r_signs {
                for &ss in &[1.0, -1.0] {
                    irreps.push(ClassFunction::from_element_fn(g.clone(), |m| {
                        let (i, b) = (m % k, m / k);
                        real(rs.powi(i as i32) * if b == 1 { ss } else { 1.0 })
                    }));
                }
            }
            for h in 1..=(k - 1) / 2 {
                irreps.push(ClassFunction::from_element_fn(g.clone(), |m| {
                    let (i, b) = (m % k, m / k);
                    if b == 1 {
                        real(0.0)
                    } else {
                        real(2.0 * (2.0 * std::f64::consts::PI * (h * i) as f64 / k as f64).cos())
                    }
                }));
            }
            (g, irreps)
        }
        GroupFamily::Symmetric3 => {
            let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
            let mut mul = Vec::with_capacity(36);
            for a in &perms {
                for b in &perms {
                    mul.push(index([a[b[0]], a[b[1]], a[b[2]]]));
                }
            }
            let g = Arc::new(FiniteGroup::from_table(family.clone(), 6, mul));
            let sign = |p: &[usize; 3]| {
                let inversions =
                    (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                if inversions % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            };
            let irreps = vec![
                ClassFunction::constant(g.clone(), real(1.0)),
                ClassFunction::from_element_fn(g.clone(), |m| real(sign(&perms[m]))),
                ClassFunction::from_element_fn(g.clone(), |m| {
                    real((0..3).filter(|&i| perms[m][i] == i).count() as f64 - 1.0)
                }),
            ];
            (g, irreps)
        }
    };
    let dims = irreps.iter().map(|chi| chi.value(0).re.round() as usize).collect();
    let table = Arc::new(CharacterTable { group: group.clone(), irreps, dims });
    debug_assert!(table.orthonormality_residual() < 1e-9);
    Ok((group, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Inner product by summing over every element, independent of the
    /// class-size weighting used in `inner_product`.
    fn brute_inner(a: &ClassFunction, b: &ClassFunction) -> Complex64 {
        let g = a.group();
        (0..g.order()).map(|x| a.value_at(x) * b.value_at(x).conj()).sum::<Complex64>() / g.order() as f64
    }

    #[test]
    fn cyclic4_is_abelian() {
        let (g, t) = build_group(&GroupFamily::Cyclic { k: 4 }).unwrap();
        assert_eq!(g.num_classes(), 4);
        assert_eq!(t.dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn s3_and_d4_dimensions_by_enumeration() {
        let (g, t) = build_group(&GroupFamily::Symmetric3).unwrap();
        assert_eq!(g.num_classes(), 3);
        assert_eq!(t.dims(), &[1, 1, 2]);
        let (g4, t4) = build_group(&GroupFamily::Dihedral { k: 4 }).unwrap();
        assert_eq!(g4.num_classes(), 5);
        assert_eq!(t4.dims(), &[1, 1, 1, 1, 2]);
        for table in [&t, &t4] {
            for (i, a) in table.irreps().iter().enumerate() {
                for (j, b) in table.irreps().iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((brute_inner(a, b) - c(want)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn group_axioms_hold() {
        let triples: Vec<_> = (0..40).map(|i| (i * 7 + 1, i * 13 + 2, i * 5 + 3)).collect();
        for fam in [
            GroupFamily::Cyclic { k: 12 },
            GroupFamily::CyclicProduct { factors: vec![2, 3, 4] },
            GroupFamily::Dihedral { k: 5 },
            GroupFamily::Dihedral { k: 6 },
            GroupFamily::Symmetric3,
        ] {
            let (g, t) = build_group(&fam).unwrap();
            assert!(g.check_axioms(&triples), "{fam}");
            let dim_sq: usize = t.dims().iter().map(|d| d * d).sum();
            assert_eq!(dim_sq, g.order());
            assert!(t.column_orthogonality_residual() < 1e-12);
        }
    }

    #[test]
    fn regular_character_decomposes_into_dimensions() {
        let (g, t) = build_group(&GroupFamily::Dihedral { k: 4 }).unwrap();
        let reg = regular_character(&g);
        assert!((inner_product(&reg, t.trivial()).unwrap() - c(1.0)).norm() < 1e-12);
        assert!((brute_inner(&reg, &reg) - c(8.0)).norm() < 1e-12);
        let coeffs = t.decompose(&reg).unwrap();
        for (x, d) in coeffs.iter().zip(t.dims()) {
            assert!((x - c(*d as f64)).norm() < 1e-12);
        }
        let (g2, _) = build_group(&GroupFamily::Cyclic { k: 2 }).unwrap();
        assert_eq!(regular_character(&g2).values(), &[c(2.0), c(0.0)]);
    }

    #[test]
    fn cyclic3_products_and_duals() {
        let (_, t) = build_group(&GroupFamily::Cyclic { k: 3 }).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let p = tensor(t.irrep(a), t.irrep(b)).unwrap();
                let coeffs = t.decompose(&p).unwrap();
                for (i, x) in coeffs.iter().enumerate() {
                    let want = if i == (a + b) % 3 { 1.0 } else { 0.0 };
                    assert!((x - c(want)).norm() < 1e-12);
                }
            }
        }
        assert!(dual(t.irrep(1)).approx_eq(t.irrep(2), 1e-12));
        assert!(t.irrep(1).dual().approx_eq(&t.irrep(1).conj(), 1e-12));
    }

    #[test]
    fn s3_standard_squared() {
        let (_, t) = build_group(&GroupFamily::Symmetric3).unwrap();
        let sq = t.irrep(2) * t.irrep(2);
        let coeffs = t.decompose(&sq).unwrap();
        for x in coeffs {
            assert!((x - c(1.0)).norm() < 1e-12);
        }
        let (_, t2) = build_group(&GroupFamily::Cyclic { k: 2 }).unwrap();
        assert!((t2.irrep(1) * t2.irrep(1)).approx_eq(t2.trivial(), 1e-15));
    }

    #[test]
    fn rejects_bad_families() {
        assert!(matches!(build_group(&GroupFamily::Cyclic { k: 0 }), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(build_group(&GroupFamily::Cyclic { k: 257 }), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(build_group(&GroupFamily::Dihedral { k: 200 }), Err(Error::OrderOutOfRange { .. })));
        assert!("quaternion:8".parse::<GroupFamily>().is_err());
        assert_eq!("product:2x2".parse::<GroupFamily>().unwrap(), GroupFamily::CyclicProduct { factors: vec![2, 2] });
    }

    #[test]
    fn mismatched_groups_error() {
        let (_, a) = build_group(&GroupFamily::Cyclic { k: 2 }).unwrap();
        let (_, b) = build_group(&GroupFamily::Cyclic { k: 3 }).unwrap();
        assert!(matches!(inner_product(a.trivial(), b.trivial()), Err(Error::GroupMismatch { .. })));
        assert!(tensor(a.trivial(), b.trivial()).is_err());
    }

    #[test]
    fn characters_are_k_real() {
        let (_, t) = build_group(&GroupFamily::Cyclic { k: 5 }).unwrap();
        for chi in t.irreps() {
            assert!(chi.is_k_real(1e-12));
        }
        let mixed = t.reconstruct_real(&[0.5, -1.25, 3.0, 0.0, 2.0]).unwrap();
        assert!(mixed.is_k_real(1e-12));
        let not_real = t.irrep(1).scale(Complex64::new(0.0, 1.0));
        assert!(!not_real.is_k_real(1e-9));
    }

    #[test]
    fn csv_export_shape() {
        let (_, t) = build_group(&GroupFamily::Cyclic { k: 3 }).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "0,1,1+0i,1+0i,1+0i");
        assert!(lines[2].contains("-0.49999999999999") || lines[2].contains("-0.5+0.866"), "{}", lines[2]);
        assert!(lines[2].contains("+0.8660254037844"));
    }
}
