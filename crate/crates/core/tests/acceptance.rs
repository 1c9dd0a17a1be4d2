//! Acceptance criteria, one line per criterion. Expected values come from
//! oracles written here, independent of the library's closed forms.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use eqkt::char_forms::{
    a_hat_series, ch_series, euler_series, pfaffian_block_series, pfaffian_square_target, spinor_difference_series,
    ChernRootSpec, PerpBlock, RootEntry,
};
use eqkt::clifford_spinor::{mq_thom_integral, perp_supertrace, ElementAction};
use eqkt::group_rep::{build_group, ClassFunction, GroupFamily, VirtualCharacter};
use eqkt::models::{
    circle_spectrum, cylinder_variation, free_case_report, product_pushforward, pull_push_reports,
    sphere_localized_character, trivial_action_decomposition, CircleGeometry, ProductGeometry, SphereGeometry,
};
use eqkt::r_torus::TorusElement;
use eqkt::spectral_eta::{xi_closed_form, xi_reduced, xi_smoothed_oracle, ArithmeticSpectrum, SmoothingConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    worst: f64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { worst: 0.0, failures: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, distance: f64, tol: f64) {
        if distance.is_finite() {
            self.worst = self.worst.max(distance);
        }
        if !(distance <= tol) {
            self.failures.push(format!("{} (distance {distance:e}, tol {tol:e})", what.into()));
        }
    }

    fn require(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn error(&mut self, what: impl Into<String>, e: impl std::fmt::Display) {
        self.failures.push(format!("{}: {e}", what.into()));
    }
}

fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Reduced invariant of `Z + x` with multiplicity one: `1/2 - frac(x)`, and
/// `1/2` when zero is an eigenvalue (kernel contributes half its dimension).
fn ordinary_xi(x: f64) -> f64 {
    let q = x - x.floor();
    if q < 1e-12 || 1.0 - q < 1e-12 {
        0.5
    } else {
        0.5 - q
    }
}

fn torus_coeff_dist(t: &TorusElement, oracle: &[f64]) -> f64 {
    t.coeffs().iter().zip(oracle).map(|(&a, &b)| circle_dist(a, b)).fold(0.0, f64::max)
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut families: Vec<GroupFamily> = (1..=12).map(|k| GroupFamily::Cyclic { k }).collect();
    families.push(GroupFamily::CyclicProduct { factors: vec![2, 2] });
    families.push(GroupFamily::Symmetric3);
    families.push(GroupFamily::Dihedral { k: 4 });
    for f in families {
        let (group, table) = build_group(&f).unwrap();
        // brute force over elements: <a, b> = (1/|G|) sum_g a(g) conj(b(g))
        for i in 0..table.len() {
            for j in 0..table.len() {
                let s: Complex64 = (0..group.order())
                    .map(|g| table.irrep(i).value_at(g) * table.irrep(j).value_at(g).conj())
                    .sum::<Complex64>()
                    / group.order() as f64;
                let want = if i == j { 1.0 } else { 0.0 };
                out.check(format!("{f} <{i},{j}>"), (s - want).norm(), 1e-12);
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let cfg = SmoothingConfig::default();
    for a in [0.1, 0.25, 0.5, 0.9] {
        let s = ArithmeticSpectrum::shifted_integers(a);
        match (xi_closed_form(&s, 0.0), xi_smoothed_oracle(&s, 0.0, &cfg)) {
            (Ok(closed), Ok(oracle)) => {
                out.check(format!("a={a} closed vs smoothed"), closed.distance(&oracle.value).unwrap(), 1e-6);
                out.check(format!("a={a} closed vs 1/2 - a"), circle_dist(closed.values()[0].re, 0.5 - a), 1e-12);
            }
            (Err(e), _) | (_, Err(e)) => out.error(format!("a={a}"), e),
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = 3usize;
    let geom = CircleGeometry::new(k, 0.0, 0.35, 1).unwrap();
    let s = circle_spectrum(&geom).unwrap();
    let table = s.table().clone();
    for trial in 0..20 {
        let (mut a, mut b) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let lhs = match (xi_closed_form(&s, a), xi_closed_form(&s, b)) {
            (Ok(x), Ok(y)) => &x - &y,
            (Err(e), _) | (_, Err(e)) => {
                out.error(format!("trial {trial}"), e);
                continue;
            }
        };
        // eigenvalues nu = n + k (s + beta); generator acts by omega^{chi - n}
        let offset = k as f64 * 0.35;
        let mut rhs = ClassFunction::zero(table.group().clone());
        for n in -20i64..20 {
            let nu = n as f64 + offset;
            if nu > a && nu < b {
                let idx = (1 - n).rem_euclid(k as i64) as usize;
                rhs = &rhs + table.irrep(idx);
            }
        }
        out.check(format!("trial {trial} cuts ({a:.3}, {b:.3})"), lhs.distance(&rhs).unwrap(), 1e-9);
        out.require(
            format!("trial {trial} jump is a virtual character"),
            VirtualCharacter::from_class_function(table.clone(), &lhs, 1e-9).is_some(),
        );
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for k in [1usize, 2, 3, 4, 6] {
        for beta in [0.0, 0.2] {
            for s in [0.0, 0.5] {
                for chi in if k > 1 { vec![0, 1] } else { vec![0] } {
                    let label = format!("k={k} beta={beta} s={s} chi={chi}");
                    let geom = CircleGeometry { k, spin_offset: s, beta, chi, lift_weight: 0 };
                    match free_case_report(&geom) {
                        Ok(r) => out.check(format!("{label} decomposition"), r.distance, 1e-9),
                        Err(e) => out.error(&label, e),
                    }
                    // oracle: coefficient on dual(chi_c') is the ordinary
                    // invariant of Z + s + beta + (chi + c')/k
                    let direct = xi_reduced(&circle_spectrum(&geom).unwrap()).unwrap().reduced;
                    let mut want = vec![0.0; k];
                    for cp in 0..k {
                        want[(k - cp) % k] = ordinary_xi(s + beta + (chi + cp) as f64 / k as f64);
                    }
                    out.check(format!("{label} oracle"), torus_coeff_dist(&direct, &want), 1e-9);
                    match pull_push_reports(&geom, 10) {
                        Ok(rs) => {
                            for r in rs {
                                out.check(format!("{label} {}", r.check), r.distance, 1e-9);
                            }
                        }
                        Err(e) => out.error(&label, e),
                    }
                }
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..50 {
        let n = rng.gen_range(1..=5);
        let angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..(2.0 * PI - 0.01))).collect();
        let negative = rng.gen_bool(0.5);
        let st = perp_supertrace(&ElementAction { angles: angles.clone(), fixed_dim: 0, negative }).unwrap();
        let modulus: f64 = angles.iter().map(|t| 2.0 * (t / 2.0).sin().abs()).product();
        out.check(format!("trial {trial} modulus"), (st.norm() - modulus).abs(), 1e-12);
        // recorded convention: each plane contributes -2i sin(theta/2)
        let eps = if negative { -1.0 } else { 1.0 };
        let product: Complex64 = angles.iter().map(|t| Complex64::new(0.0, -2.0 * (t / 2.0).sin())).product();
        out.check(format!("trial {trial} sign convention"), (st - product * eps).norm(), 1e-12);
    }
    let cases: [(&[f64], usize); 6] = [(&[], 2), (&[], 4), (&[1.3], 0), (&[1.3], 2), (&[0.5, 2.5], 0), (&[4.0], 1)];
    for (angles, fixed) in cases {
        let action = ElementAction { angles: angles.to_vec(), fixed_dim: fixed, negative: false };
        // flat Ahat block 1/(2i sin(theta/2)); its inverse times (-1) per plane
        let want: Complex64 =
            angles.iter().map(|t| -(Complex64::new(0.0, 2.0 * (t / 2.0).sin()))).product::<Complex64>();
        match mq_thom_integral(&action, 24, 1e-6) {
            Ok(v) => out.check(format!("thom {angles:?} fixed {fixed}"), (v - want).norm(), 1e-4),
            Err(e) => out.error(format!("thom {angles:?}"), e),
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let d = 10;
    let x = |i: usize| vec![(i, 1.0)];
    let block = PerpBlock { angle: 2.3, root: x(2) };
    let whole = a_hat_series(3, d, &[x(0), x(1)], std::slice::from_ref(&block), -1).unwrap();
    let parts = a_hat_series(3, d, &[x(0)], &[], 1)
        .unwrap()
        .mul(&a_hat_series(3, d, &[x(1)], &[], 1).unwrap())
        .mul(&a_hat_series(3, d, &[], &[block], -1).unwrap());
    out.check("ahat multiplicativity", whole.distance(&parts), 1e-12);

    // numeric bridge: x / (2 sinh(x/2)) at a small point
    let single = a_hat_series(1, d, &[x(0)], &[], 1).unwrap();
    let z: f64 = 0.3;
    let direct = z / (2.0 * (z / 2.0).sinh());
    out.check("ahat numeric", (single.eval(&[Complex64::new(z, 0.0)]).re - direct).abs(), 1e-12);

    let w = |t: f64| Complex64::from_polar(1.0, t);
    let v = ChernRootSpec::new(
        2,
        d,
        vec![
            RootEntry { weight: w(0.4), root: x(0), sign: 1 },
            RootEntry { weight: w(2.2), root: vec![(0, 1.0), (1, -1.0)], sign: -1 },
        ],
    )
    .unwrap();
    let u = ChernRootSpec::new(
        2,
        d,
        vec![RootEntry { weight: w(-1.0), root: x(1), sign: 1 }, RootEntry { weight: w(3.0), root: x(0), sign: 1 }],
    )
    .unwrap();
    let lhs = ch_series(&v.tensor(&u).unwrap());
    let rhs = ch_series(&v).mul(&ch_series(&u));
    out.check("ch tensor multiplicativity", lhs.distance(&rhs), 1e-12);

    for angle in [0.2, 1.5, PI, 5.5] {
        let block = PerpBlock { angle, root: x(0) };
        let pf = pfaffian_block_series(1, d, &block).unwrap();
        out.check(
            format!("pfaffian square {angle}"),
            pf.mul(&pf).distance(&pfaffian_square_target(1, d, &block)),
            1e-12,
        );
        // branch: value at 0 is 2 sin(theta/2)
        out.check(format!("pfaffian branch {angle}"), (pf.constant_term().re - 2.0 * (angle / 2.0).sin()).abs(), 1e-12);
    }

    let roots = vec![x(0), x(1)];
    let sd = spinor_difference_series(2, d, &roots);
    let rhs = euler_series(2, d, &roots).mul(&a_hat_series(2, d, &roots, &[], 1).unwrap().invert().unwrap());
    out.check("spinor difference", sd.distance(&rhs), 1e-12);
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    for k in [2usize, 3, 4] {
        for n in -1..=3i64 {
            for north in [0i64, 1] {
                let geom = SphereGeometry::new(k, n, north).unwrap();
                let localized = match sphere_localized_character(&geom) {
                    Ok(v) => v,
                    Err(e) => {
                        out.error(format!("k={k} n={n}"), e);
                        continue;
                    }
                };
                // weight oracle: sections z^j carry omega^{north + j}, and for
                // n <= -2 the first cohomology has weights omega^{north + m},
                // n < m < 0
                let (group, _) = build_group(&GroupFamily::Cyclic { k }).unwrap();
                let oracle = ClassFunction::from_element_fn(group, |g| {
                    let w = |e: i64| Complex64::from_polar(1.0, 2.0 * PI * (e * g as i64) as f64 / k as f64);
                    let h0: Complex64 = (0..=n).map(|j| w(north + j)).sum();
                    let h1: Complex64 = ((n + 1)..0).map(|m| w(north + m)).sum();
                    h0 - h1
                });
                out.check(format!("k={k} n={n} north={north}"), localized.distance(&oracle).unwrap(), 1e-9);
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    for k in [1usize, 2] {
        for n in 0..=2i64 {
            for (s, beta) in [(0.0, 0.2), (0.5, 0.0), (0.5, 0.3)] {
                let label = format!("k={k} n={n} s={s} beta={beta}");
                let geom = ProductGeometry {
                    circle: CircleGeometry { k, spin_offset: s, beta, chi: 0, lift_weight: 0 },
                    sphere: SphereGeometry::new(k, n, 0).unwrap(),
                };
                let product = match product_pushforward(&geom) {
                    Ok(t) => t,
                    Err(e) => {
                        out.error(&label, e);
                        continue;
                    }
                };
                // oracle: index coefficients are weight counts of z^0..z^n;
                // circle coefficient on dual(chi_c') is the ordinary invariant
                let circle: Vec<f64> =
                    (0..k).map(|i| ordinary_xi(s + beta + ((k - i) % k) as f64 / k as f64)).collect();
                let mut index = vec![0.0; k];
                for j in 0..=n {
                    index[(j as usize) % k] += 1.0;
                }
                let mut want = vec![0.0; k];
                for a in 0..k {
                    for b in 0..k {
                        want[(a + b) % k] += index[a] * circle[b];
                    }
                }
                out.check(label, torus_coeff_dist(&product, &want), 1e-9);
            }
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    for k in [1usize, 2] {
        for (a0, a1) in [(0.2, 0.3), (0.05, 0.95), (0.6, 0.1), (0.0, 1.0)] {
            let label = format!("k={k} {a0}->{a1}");
            let geom = CircleGeometry::new(k, 0.0, 0.0, 0).unwrap();
            let r = match cylinder_variation(&geom, a0, a1, 10) {
                Ok(r) => r,
                Err(e) => {
                    out.error(&label, e);
                    continue;
                }
            };
            out.check(format!("{label} per-step"), r.step_distance, 1e-9);
            out.check(format!("{label} net"), r.net_distance, 1e-9);
            out.require(format!("{label} jumps match crossings"), r.max_excess <= 0.0 && r.pass);
            // oracle for the identity coefficient: each irreducible moves by -(a1 - a0)
            if k == 1 {
                let net = ordinary_xi(a1) - ordinary_xi(a0);
                out.check(format!("{label} closed"), circle_dist(net, -(a1 - a0)), 1e-9);
            }
            if (a0, a1) == (0.0, 1.0) && k == 1 {
                out.require(format!("{label} one unit jump"), r.jumps.len() == 1 && r.jumps[0].2 == vec![1]);
                out.check(format!("{label} net zero"), r.net_distance, 1e-9);
            }
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let cases: Vec<(usize, Vec<(f64, usize)>)> = vec![
        (2, vec![(0.25, 0), (0.6, 1)]),
        (2, vec![(0.1, 1), (0.0, 1)]),
        (3, vec![(0.1, 0), (0.45, 1), (0.8, 2)]),
        (3, vec![(0.3, 2), (0.0, 0), (0.7, 2)]),
    ];
    for (k, items) in cases {
        let (_, table) = build_group(&GroupFamily::Cyclic { k }).unwrap();
        let summands: Vec<_> = items
            .iter()
            .map(|&(a, i)| (ArithmeticSpectrum::shifted_integers(a), VirtualCharacter::irrep(table.clone(), i)))
            .collect();
        match trivial_action_decomposition(k, &summands) {
            Ok(r) => out.check(format!("k={k} {items:?} report"), r.distance, 1e-9),
            Err(e) => out.error(format!("k={k}"), e),
        }
        let mut assembled: Option<ArithmeticSpectrum> = None;
        for (s, chi) in &summands {
            let inf = s.inflate(&table, &chi.to_class_function()).unwrap();
            assembled = Some(match assembled {
                None => inf,
                Some(a) => a.union(&inf).unwrap(),
            });
        }
        let lhs = xi_reduced(&assembled.unwrap()).unwrap().reduced;
        let mut want = vec![0.0; k];
        for &(a, i) in &items {
            want[i] += ordinary_xi(a);
        }
        out.check(format!("k={k} {items:?} oracle"), torus_coeff_dist(&lhs, &want), 1e-9);
    }
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("character orthogonality", criterion_1),
        ("reduced eta closed form vs oracle", criterion_2),
        ("jump formula", criterion_3),
        ("free-case decomposition and pull-push", criterion_4),
        ("equivariant factors and Thom integral", criterion_5),
        ("series identities", criterion_6),
        ("sphere localization", criterion_7),
        ("Fubini", criterion_8),
        ("Stokes variation", criterion_9),
        ("trivial-action decomposition", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name} (worst distance {:.2e}, {secs:.2}s)", i + 1, outcome.worst);
        for msg in &outcome.failures {
            println!("    {msg}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
