//! A fast subset of the invariant suite, runnable from the binary.

use ptwishart_core::engine::{self, f_exponent};
use ptwishart_core::enumerate::for_each_permutation;
use ptwishart_core::laws::{cumulants, law_moments, x1_plus_x2_cumulants, LawSpec};
use ptwishart_core::nc::{catalan, enumerate_nc_perms, enumerate_pairings};
use ptwishart_core::perm::join;
use ptwishart_core::{Case, Dims, EpsilonVector, ExactValue, Label, Regime, RegimeLimit, SignedPerm, Word};

use crate::sim;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(), String>) -> Check {
    match f() {
        Ok(()) => Check { name, passed: true, detail: String::new() },
        Err(detail) => Check { name, passed: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(a: i64, b: i64) -> ExactValue {
    ExactValue::ratio(a, b)
}

pub fn run_all() -> Vec<Check> {
    vec![
        check("catalan_counts", || {
            for n in 1..=7 {
                let got = enumerate_nc_perms(n).map_err(|e| e.to_string())?.len() as u64;
                ensure(got == catalan(n), || format!("n = {n}: {got}"))?;
            }
            Ok(())
        }),
        check("pairing_join", || {
            for n in 1..=4 {
                let ps = enumerate_pairings(n, false).map_err(|e| e.to_string())?;
                for a in ps.members() {
                    for b in ps.members() {
                        let blocks = join(a, b).map_err(|e| e.to_string())?.block_count();
                        let cycles = a.compose(b).map_err(|e| e.to_string())?.cycle_count();
                        ensure(2 * blocks == cycles, || format!("{a} vs {b}"))?;
                    }
                }
            }
            Ok(())
        }),
        check("f_exponent_nonpositive", || {
            for n in 1..=4 {
                let mut bad = None;
                for_each_permutation(n, |p| {
                    let images: Vec<usize> = p.iter().map(|&i| i as usize + 1).collect();
                    let sigma = SignedPerm::embed(&images).expect("valid permutation");
                    for mask in 0..1u32 << n {
                        let signs: Vec<i64> =
                            (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                        let eps = EpsilonVector::new(&signs).expect("valid signs");
                        if f_exponent(&sigma, &eps).expect("same size") > 0 {
                            bad.get_or_insert_with(|| format!("{sigma}, {signs:?}"));
                        }
                    }
                });
                if let Some(b) = bad {
                    return Err(b);
                }
            }
            Ok(())
        }),
        check("closed_form_second_moments", || {
            for (d1, d2, p) in [(2u64, 3u64, 5u64), (3, 4, 7), (4, 2, 9)] {
                let dims = Dims::new(d1, d2, p).expect("positive");
                let ct = dims.c_tilde();
                let wr: Word = "w,r".parse().expect("valid");
                let got = engine::exact_moment_complex(&wr, &dims).map_err(|e| e.to_string())?;
                let want = &(&ct * &ct) + &(&ct / &ExactValue::integer(d2 as i64));
                ensure(got == want, || format!("complex w,r at {d1},{d2},{p}: {got}"))?;
                let e = EpsilonVector::new(&[1, -1]).expect("valid");
                let got = engine::exact_moment_real(&e, &dims).map_err(|e| e.to_string())?;
                let inv = &q(1, d1 as i64) + &q(1, d2 as i64);
                let want = &(&ct * &ct) + &(&ct * &inv);
                ensure(got == want, || format!("real w,r at {d1},{d2},{p}: {got}"))?;
            }
            Ok(())
        }),
        check("limit_laws", || {
            let c = q(1, 2);
            let both = RegimeLimit::new(Regime::BothGrow, c.clone()).expect("c > 0");
            let ss = law_moments(&LawSpec::shifted_semicircle(c.clone()).expect("c > 0"), 6)
                .map_err(|e| e.to_string())?;
            let bn = law_moments(&LawSpec::bn_law(2, c.clone()).expect("c > 0"), 6)
                .map_err(|e| e.to_string())?;
            let d1 = RegimeLimit::new(Regime::D1Fixed(2), c.clone()).expect("c > 0");
            for n in 1..=6 {
                let r = Word::repeat(Label::RightPt, n).expect("n > 0");
                let got = engine::limit_moment(&r, &both).map_err(|e| e.to_string())?;
                ensure(&got == ss.get(n), || format!("semicircle n = {n}"))?;
                let l = Word::repeat(Label::LeftPt, n).expect("n > 0");
                let got = ExactValue::integer(2).powi(n as i32)
                    * engine::limit_moment(&l, &d1).map_err(|e| e.to_string())?;
                ensure(&got == bn.get(n), || format!("bn law n = {n}"))?;
            }
            Ok(())
        }),
        check("asymptotic_freeness", || {
            let both = RegimeLimit::new(Regime::BothGrow, q(1, 2)).expect("c > 0");
            let r = engine::freeness_report(Case::Complex, &Label::ALL, 3, &both)
                .map_err(|e| e.to_string())?;
            ensure(r.all_vanish(), || "nonzero mixed cumulant in both_grow".into())?;
            let d2 = RegimeLimit::new(Regime::D2Fixed(2), q(1, 2)).expect("c > 0");
            let r = engine::freeness_report(Case::Complex, &[Label::Plain, Label::RightPt], 2, &d2)
                .map_err(|e| e.to_string())?;
            let wr: Word = "w,r".parse().expect("valid");
            ensure(r.get(&wr) == Some(&q(1, 4)), || "kappa_2(W, W^Gamma) != c/2".into())
        }),
        check("x1_plus_x2_is_bn", || {
            let c = q(1, 2);
            let a = x1_plus_x2_cumulants(&c, 10).map_err(|e| e.to_string())?;
            let b = cumulants(&LawSpec::bn_law(2, c).expect("c > 0"), 10).map_err(|e| e.to_string())?;
            ensure(a == b, || "cumulant sequences differ".into())
        }),
        check("monte_carlo_w_r", || {
            let dims = Dims::new(2, 3, 6).expect("positive");
            let wr: Word = "w,r".parse().expect("valid");
            for case in [Case::Complex, Case::Real] {
                let est = sim::estimate_word_moment(&wr, &dims, case, 4000, 11).map_err(|e| e.to_string())?;
                let exact = engine::exact_moment(case, &wr, &dims).map_err(|e| e.to_string())?;
                let z = est.z_score(exact.to_f64());
                ensure(z.abs() <= 4.0, || format!("{case:?}: z = {z}"))?;
            }
            Ok(())
        }),
    ]
}
