//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails. Numeric arguments restrict the run to those criteria.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ptwishart::sim::{block_experiment, estimate_word_moment, BlockQuantity};
use ptwishart_core::engine::{exact_moment, f_exponent, freeness_report, limit_moment};
use ptwishart_core::enumerate::for_each_permutation;
use ptwishart_core::laws::{cumulants, law_moments, x1_plus_x2_cumulants, LawSpec};
use ptwishart_core::nc::{catalan, enumerate_nc_perms, enumerate_pairings};
use ptwishart_core::perm::{
    bn_cycle_identity_check, is_constant_on_cycles, is_noncrossing, join, sigma_epsilon,
};
use ptwishart_core::{
    Case, Dims, EpsilonVector, ExactValue, Label, Regime, RegimeLimit, SignedPerm, Word,
};

use common::wick;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(a: i64, b: i64) -> ExactValue {
    ExactValue::ratio(a, b)
}

fn w(text: &str) -> Word {
    text.parse().expect("valid word")
}

fn all_words(n: usize, alphabet: &[Label]) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Label>| {
                alphabet.iter().map(move |&l| {
                    let mut next = prefix.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Word::new(v).unwrap()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
}

fn exact_identities() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (d1, d2, p) in [(2u64, 3u64, 5u64), (3, 4, 7), (4, 2, 9)] {
        let dims = Dims::new(d1, d2, p).unwrap();
        let ct = q(p as i64, (d1 * d2) as i64);
        let inv1 = q(1, d1 as i64);
        let inv2 = q(1, d2 as i64);
        let checks = [
            (Case::Complex, "w", ct.clone()),
            (Case::Complex, "w,w", &ct + &(&ct * &ct)),
            (Case::Complex, "w,r", &(&ct * &ct) + &(&ct * &inv2)),
            (Case::Real, "w,r", &(&ct * &ct) + &(&ct * &(&inv1 + &inv2))),
        ];
        for (case, word, want) in checks {
            let start = Instant::now();
            let got = exact_moment(case, &w(word), &dims).map_err(|e| e.to_string())?;
            slowest = slowest.max(start.elapsed());
            ensure(got == want, || format!("{case:?} {word} at {dims:?}: {got} != {want}"))?;
        }
    }
    within(slowest, Duration::from_secs(1))?;
    Ok(format!("12 identities, slowest {slowest:.2?}"))
}

fn wick_oracle() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for p in [2u64, 3] {
        let dims = Dims::new(2, 2, p).unwrap();
        for n in 1..=3 {
            for word in all_words(n, &Label::ALL) {
                let oracle = wick::complex_moment(word.letters(), 2, 2, p as usize);
                let got = exact_moment(Case::Complex, &word, &dims).map_err(|e| e.to_string())?;
                ensure(got == oracle, || format!("complex {word}, p = {p}: {got} != {oracle}"))?;
                compared += 1;
            }
            for word in all_words(n, &[Label::Plain, Label::RightPt]) {
                let oracle = wick::real_moment(word.letters(), 2, 2, p as usize);
                let got = exact_moment(Case::Real, &word, &dims).map_err(|e| e.to_string())?;
                ensure(got == oracle, || format!("real {word}, p = {p}: {got} != {oracle}"))?;
                compared += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("{compared} words bit-exact in {elapsed:.2?}"))
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let samples = 100_000;
    let complex_dims = Dims::new(2, 2, 3).unwrap();
    let real_dims = Dims::new(2, 3, 6).unwrap();
    let mut runs: Vec<(Case, Word, Dims)> = Vec::new();
    runs.extend(all_words(2, &Label::ALL).into_iter().map(|x| (Case::Complex, x, complex_dims)));
    runs.extend(
        all_words(2, &[Label::Plain, Label::RightPt])
            .into_iter()
            .map(|x| (Case::Real, x, real_dims)),
    );
    for text in ["w,l,r", "t,r,r", "w,r,w,r", "l,l,r,t"] {
        runs.push((Case::Complex, w(text), complex_dims));
    }
    for text in ["w,r,r", "w,r,w,r"] {
        runs.push((Case::Real, w(text), real_dims));
    }
    let mut worst = 0.0f64;
    for (k, (case, word, dims)) in runs.iter().enumerate() {
        let exact = exact_moment(*case, word, dims).map_err(|e| e.to_string())?;
        let est = estimate_word_moment(word, dims, *case, samples, 1000 + k as u64)
            .map_err(|e| e.to_string())?;
        let z = est.z_score(exact.to_f64());
        worst = worst.max(z.abs());
        ensure(z.abs() <= 4.0, || {
            format!("{case:?} {word}: mean {} vs {exact}, z = {z:.2}", est.mean)
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("{} words, max |z| = {worst:.2}, {elapsed:.2?}", runs.len()))
}

fn limit_laws() -> Outcome {
    for c in [q(1, 4), q(1, 2), q(1, 1), q(7, 3)] {
        let both = RegimeLimit::new(Regime::BothGrow, c.clone()).unwrap();
        let semicircle = law_moments(&LawSpec::shifted_semicircle(c.clone()).unwrap(), 8).unwrap();
        for n in 1..=8 {
            let got = limit_moment(&Word::repeat(Label::RightPt, n).unwrap(), &both).unwrap();
            ensure(&got == semicircle.get(n), || format!("semicircle c = {c}, n = {n}"))?;
        }
        for d in [2u32, 3] {
            let fixed = RegimeLimit::new(Regime::D1Fixed(d), c.clone()).unwrap();
            let bn = law_moments(&LawSpec::bn_law(d, c.clone()).unwrap(), 8).unwrap();
            for n in 1..=8 {
                let word = Word::repeat(Label::LeftPt, n).unwrap();
                let got = ExactValue::integer(d as i64).powi(n as i32) * limit_moment(&word, &fixed).unwrap();
                ensure(&got == bn.get(n), || format!("bn d = {d}, c = {c}, n = {n}"))?;
            }
            let dd = ExactValue::integer(d as i64);
            let cd = &c * &dd;
            let plus = &(&cd * &(&dd + &ExactValue::one())) * &q(1, 2);
            let minus = &(&cd * &(&dd - &ExactValue::one())) * &q(1, 2);
            let lhs = cumulants(&LawSpec::bn_law(d, c.clone()).unwrap(), 8).unwrap();
            let rhs = cumulants(&LawSpec::mp_free_difference(plus, minus).unwrap(), 8).unwrap();
            ensure(lhs == rhs, || format!("free difference d = {d}, c = {c}"))?;
        }
    }
    Ok("semicircle and bn moments exact for n <= 8, d in {2, 3}".into())
}

fn freeness() -> Outcome {
    let c = q(1, 2);
    let both = RegimeLimit::new(Regime::BothGrow, c.clone()).unwrap();
    let complex = freeness_report(Case::Complex, &Label::ALL, 5, &both).map_err(|e| e.to_string())?;
    ensure(complex.all_vanish(), || {
        format!("complex: {} nonzero mixed cumulants", complex.nonzero().count())
    })?;
    let real = freeness_report(Case::Real, &[Label::Plain, Label::RightPt], 5, &both)
        .map_err(|e| e.to_string())?;
    ensure(real.all_vanish(), || {
        format!("real: {} nonzero mixed cumulants", real.nonzero().count())
    })?;

    let kappa2 = |regime: Regime, word: &str| -> Result<ExactValue, String> {
        let lim = RegimeLimit::new(regime, c.clone()).unwrap();
        let report = freeness_report(Case::Complex, &Label::ALL, 2, &lim).map_err(|e| e.to_string())?;
        report.get(&w(word)).cloned().ok_or_else(|| format!("{word} missing from report"))
    };
    for d in [2u32, 3] {
        let want = &c * &q(1, d as i64);
        let got = kappa2(Regime::D2Fixed(d), "w,r")?;
        ensure(got == want, || format!("d2_fixed({d}): kappa2(w, r) = {got}, want {want}"))?;
        let got = kappa2(Regime::D1Fixed(d), "w,l")?;
        ensure(got == want, || format!("d1_fixed({d}): kappa2(w, l) = {got}, want {want}"))?;
        let got = kappa2(Regime::D1Fixed(d), "w,r")?;
        ensure(got.is_zero(), || format!("d1_fixed({d}): kappa2(w, r) = {got}, want 0"))?;
    }
    Ok(format!(
        "{} complex and {} real mixed cumulants vanish; witnesses c/d",
        complex.entries.len(),
        real.entries.len()
    ))
}

fn block_experiment_check() -> Outcome {
    let start = Instant::now();
    let c = q(1, 2);
    let record = block_experiment(&c, 256, 10_000, 2024).map_err(|e| e.to_string())?;
    let expected = [
        (BlockQuantity::X1X2GammaX2GammaX1, 5.0),
        (BlockQuantity::X1X2X2X1, 2.0),
        (BlockQuantity::X1Power(1), 1.0),
        (BlockQuantity::X1Power(2), 2.0),
        (BlockQuantity::X1Power(3), 5.0),
        (BlockQuantity::X1Power(4), 14.0),
    ];
    let mut summary = Vec::new();
    for (quantity, want) in expected {
        let s = record.get(quantity).ok_or_else(|| format!("{} missing", quantity.name()))?;
        ensure(s.agrees(want, 4.0, 0.05), || {
            format!("{}: {} ± {} vs {want}", quantity.name(), s.mean, s.stderr)
        })?;
        summary.push(format!("{}={:.4}", quantity.name(), s.mean));
    }
    let sum = x1_plus_x2_cumulants(&c, 10).unwrap();
    let bn = cumulants(&LawSpec::bn_law(2, c).unwrap(), 10).unwrap();
    ensure(sum == bn, || "x1 + x2 cumulants differ from bn(2, 1/2)".into())?;
    Ok(format!("{} in {:.1?}", summary.join(" "), start.elapsed()))
}

fn embed0(images: &[u32]) -> SignedPerm {
    let one_based: Vec<usize> = images.iter().map(|&i| i as usize + 1).collect();
    SignedPerm::embed(&one_based).unwrap()
}

fn combinatorics() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let nc = enumerate_nc_perms(n).map_err(|e| e.to_string())?;
        ensure(nc.len() as u64 == catalan(n), || format!("catalan n = {n}"))?;
    }
    for n in 1..=7 {
        let gamma = SignedPerm::gamma(n);
        for sigma in enumerate_nc_perms(n).unwrap().members() {
            ensure(bn_cycle_identity_check(sigma, &gamma).unwrap(), || format!("even cycles {sigma}"))?;
        }
    }
    let mut failure = None;
    for n in 1..=8 {
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            if is_noncrossing(&sigma) && is_noncrossing(&sigma.inverse()) && !sigma.is_involution() {
                failure.get_or_insert_with(|| format!("noncrossing inverse {sigma}"));
            }
        });
    }
    for n in 1..=5 {
        let pairings = enumerate_pairings(n, false).unwrap();
        for a in pairings.members() {
            for b in pairings.members() {
                if 2 * join(a, b).unwrap().block_count() != a.compose(b).unwrap().cycle_count() {
                    failure.get_or_insert_with(|| format!("pairing join {a} {b}"));
                }
            }
        }
    }
    for n in 1..=5 {
        let signs: Vec<EpsilonVector> = (0..1u32 << n)
            .map(|mask| {
                let s: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                EpsilonVector::new(&s).unwrap()
            })
            .collect();
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            for eps in &signs {
                let f = f_exponent(&sigma, eps).unwrap();
                let zero = is_constant_on_cycles(eps, &sigma)
                    && is_noncrossing(&sigma_epsilon(&sigma, eps).unwrap());
                if f > 0 || (f == 0) != zero {
                    failure.get_or_insert_with(|| format!("f exponent {sigma} {:?}", eps.signs()));
                }
            }
        });
    }
    if let Some(msg) = failure {
        return Err(msg);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("exhaustive suites in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("exact closed forms", exact_identities),
        ("wick oracle", wick_oracle),
        ("monte carlo", monte_carlo),
        ("limit laws", limit_laws),
        ("freeness", freeness),
        ("block experiment", block_experiment_check),
        ("combinatorics", combinatorics),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(k + 1)) {
            continue;
        }
        ran += 1;
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS  {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL  {detail}", k + 1);
            }
        }
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
