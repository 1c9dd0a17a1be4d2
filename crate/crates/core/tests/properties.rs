use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use eqkt::char_forms::FormSeries;
use eqkt::group_rep::{build_group, GroupFamily};
use eqkt::r_torus::{torus_add, torus_distance, torus_sub, TorusElement};
use eqkt::spectral_eta::{xi_closed_form, ArithmeticSpectrum};

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn torus_add_sub_roundtrip(a in coeffs(3), b in coeffs(3)) {
        let (_, table) = build_group(&GroupFamily::Cyclic { k: 3 }).unwrap();
        let x = TorusElement::from_coeffs(table.clone(), &a).unwrap();
        let y = TorusElement::from_coeffs(table, &b).unwrap();
        let back = torus_sub(&torus_add(&x, &y).unwrap(), &y).unwrap();
        prop_assert!(torus_distance(&back, &x).unwrap() < 1e-9);
        prop_assert!(x.coeffs().iter().all(|c| (0.0..1.0).contains(c)));
    }

    #[test]
    fn torus_distance_symmetric(a in coeffs(2), b in coeffs(2)) {
        let (_, table) = build_group(&GroupFamily::Cyclic { k: 2 }).unwrap();
        let x = TorusElement::from_coeffs(table.clone(), &a).unwrap();
        let y = TorusElement::from_coeffs(table, &b).unwrap();
        let d = torus_distance(&x, &y).unwrap();
        assert_abs_diff_eq!(d, torus_distance(&y, &x).unwrap(), epsilon = 1e-12);
        prop_assert!(d <= 1.0);
    }

    #[test]
    fn shifted_integers_closed_form(a in 0.01f64..0.99) {
        let xi = xi_closed_form(&ArithmeticSpectrum::shifted_integers(a), 0.0).unwrap().values()[0];
        assert_abs_diff_eq!(xi.re, 0.5 - a, epsilon = 1e-12);
        assert_abs_diff_eq!(xi.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn series_inverse_is_inverse(c0 in 0.5f64..2.0, c1 in -1.0f64..1.0, c2 in -1.0f64..1.0) {
        let x = FormSeries::var(2, 6, 0);
        let y = FormSeries::var(2, 6, 1);
        let f = FormSeries::constant(2, 6, Complex64::new(c0, 0.0))
            .add(&x.scale(Complex64::new(c1, 0.0)))
            .add(&x.mul(&y).scale(Complex64::new(c2, 0.0)));
        let prod = f.mul(&f.invert().unwrap());
        prop_assert!(prod.distance(&FormSeries::one(2, 6)) < 1e-10);
    }
}
