use ptwishart_core::engine::limit_moment;
use ptwishart_core::laws::{
    cumulants, density, law_moments, numeric_moment, x1_plus_x2_cumulants, LawSpec,
};
use ptwishart_core::{ExactValue, Label, Regime, RegimeLimit, Word};

fn q(a: i64, b: i64) -> ExactValue {
    ExactValue::ratio(a, b)
}

#[test]
fn bn_law_is_a_free_difference() {
    for c in [q(1, 2), q(2, 7), q(3, 1)] {
        for d in 1..=5 {
            let bn = cumulants(&LawSpec::bn_law(d, c.clone()).unwrap(), 8).unwrap();
            let diff = cumulants(&LawSpec::bn_as_free_difference(d, &c).unwrap(), 8).unwrap();
            assert_eq!(bn, diff, "d = {d}");
        }
    }
}

#[test]
fn bn_law_moments_match_scaled_left_transpose_limits() {
    for d in [2u32, 3] {
        for c in [q(1, 2), q(5, 3)] {
            let lim = RegimeLimit::new(Regime::D1Fixed(d), c.clone()).unwrap();
            let m = law_moments(&LawSpec::bn_law(d, c.clone()).unwrap(), 8).unwrap();
            for n in 1..=8 {
                let word = Word::repeat(Label::LeftPt, n).unwrap();
                let scaled = ExactValue::integer(d as i64).powi(n as i32)
                    * limit_moment(&word, &lim).unwrap();
                assert_eq!(&scaled, m.get(n), "d = {d}, n = {n}");
            }
        }
    }
}

#[test]
fn semicircle_moments_match_right_transpose_limits() {
    for c in [q(1, 4), q(1, 1), q(7, 2)] {
        let lim = RegimeLimit::new(Regime::BothGrow, c.clone()).unwrap();
        let m = law_moments(&LawSpec::shifted_semicircle(c).unwrap(), 8).unwrap();
        for n in 1..=8 {
            let word = Word::repeat(Label::RightPt, n).unwrap();
            assert_eq!(&limit_moment(&word, &lim).unwrap(), m.get(n));
        }
    }
}

#[test]
fn bn_with_d_one_is_marchenko_pastur() {
    let c = q(2, 5);
    assert_eq!(
        law_moments(&LawSpec::bn_law(1, c.clone()).unwrap(), 8).unwrap(),
        law_moments(&LawSpec::marchenko_pastur(c).unwrap(), 8).unwrap()
    );
}

#[test]
fn x1_plus_x2_has_bn_cumulants() {
    for c in [q(1, 2), q(1, 3), q(4, 1)] {
        assert_eq!(
            x1_plus_x2_cumulants(&c, 10).unwrap(),
            cumulants(&LawSpec::bn_law(2, c).unwrap(), 10).unwrap()
        );
    }
}

#[test]
fn densities_integrate_to_the_moments() {
    for c in [q(1, 4), q(1, 1), q(4, 1)] {
        for law in [
            LawSpec::marchenko_pastur(c.clone()).unwrap(),
            LawSpec::shifted_semicircle(c.clone()).unwrap(),
        ] {
            let mass = numeric_moment(&law, 0, 1e-10).unwrap();
            assert!((mass - 1.0).abs() < 1e-6, "{law}: mass {mass}");
            let exact = law_moments(&law, 6).unwrap();
            for n in 1..=6 {
                let num = numeric_moment(&law, n as u32, 1e-10).unwrap();
                let want = exact.get(n).to_f64();
                assert!(((num - want) / want).abs() < 1e-5, "{law}, n = {n}: {num} vs {want}");
            }
        }
    }
}

#[test]
fn density_support_and_atom() {
    let mp = LawSpec::marchenko_pastur(q(1, 4)).unwrap();
    let s = density(&mp, 1.0).unwrap();
    assert_eq!((s.a, s.b, s.atom), (0.25, 2.25, 0.75));
    assert_eq!(density(&mp, 0.1).unwrap().density, 0.0);
    let ss = LawSpec::shifted_semicircle(q(4, 1)).unwrap();
    let s = density(&ss, 4.0).unwrap();
    assert_eq!((s.a, s.b, s.atom), (0.0, 8.0, 0.0));
    assert!((s.density - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
}
