//! Acceptance checks. Each criterion prints one PASS/FAIL line with its
//! wall time against the allowed budget; the process exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vtc_core::catdata::{delta_weight, h_weight, CategorySpec, Label, Param, SimpleLabel};
use vtc_core::dirlim::selftest::run_property_suite;
use vtc_core::exact::{Rat, RatFunc};
use vtc_core::fusion::{monodromy, mueger_scan, ring_mul, FusionElement};
use vtc_core::induction::{
    default_sample, frobenius_dim, induce, locality, min_weight_summand, restriction_oracle_check, AlgebraObject,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn svir_base(n: u32, m: u32) -> SimpleLabel {
    Label::pair(Label::VirasoroKp2(n, 1), Label::VirasoroT(m, 1))
}

fn osp_base(n: u32) -> SimpleLabel {
    Label::pair(Label::AffineVerma(1), Label::VirasoroT(n, 1))
}

fn balancing_closed_form() -> Outcome {
    let cat = CategorySpec::builtin("virasoro-t").unwrap();
    for r in 1..=10u32 {
        for s in 1..=10u32 {
            let report = monodromy(&cat, &Label::VirasoroT(r, 1), &Label::VirasoroT(1, s)).map_err(|e| e.to_string())?;
            ensure(report.entries.len() == 1, || format!("({r},1)x(1,{s}): {} summands", report.entries.len()))?;
            let (r, s) = (i64::from(r), i64::from(s));
            let expected = RatFunc::constant(Rat::frac(r + s - r * s - 1, 2));
            let got = &report.entries[0].exponent;
            ensure(*got == expected, || format!("({r},1)x(1,{s}): exponent {}, expected {}", got.to_string_in("t"), expected.to_string_in("t")))?;
        }
    }
    Ok(())
}

fn locality_parities() -> Outcome {
    let svir = AlgebraObject::svir_ext();
    for n in 1..=12 {
        for m in 1..=12 {
            let local = locality(&svir, &svir_base(n, m)).map_err(|e| e.to_string())?.is_local();
            ensure(local == ((n + m) % 2 == 0), || format!("S-algebra base ({n},{m}): local = {local}"))?;
        }
    }
    let osp = AlgebraObject::osp_ext();
    for n in 1..=15 {
        let local = locality(&osp, &osp_base(n)).map_err(|e| e.to_string())?.is_local();
        ensure(local == (n % 2 == 1), || format!("osp base {n}: local = {local}"))?;
    }
    Ok(())
}

fn minimum_weights() -> Outcome {
    // Weights written in t and in k+2 = t/(2t-1), then moved to s through
    // t = (s+1)/(2s).
    let in_t = Param::T.vars();
    let in_s = Param::S.vars();
    let t_of_s = &in_s.t;
    let sample = default_sample();
    let svir = AlgebraObject::svir_ext();
    for n in 1..=10u32 {
        for m in 1..=10u32 {
            if (n + m) % 2 != 0 {
                continue;
            }
            let r = (n + m) / 2;
            let h_k = h_weight(n, r, &in_t.kp2).substitute(t_of_s).map_err(|e| e.to_string())?;
            let h_t = h_weight(m, r, &in_t.t).substitute(t_of_s).map_err(|e| e.to_string())?;
            let delta = delta_weight(n, m, &in_s.s);
            let sum = &h_k + &h_t;
            ensure(sum == delta, || format!("({n},{m}): {} != {}", sum.to_string_in("s"), delta.to_string_in("s")))?;

            let module = induce(&svir, &svir_base(n, m)).map_err(|e| e.to_string())?;
            let (argmin, w) = min_weight_summand(&module, &sample, 20).map_err(|e| e.to_string())?;
            ensure(argmin == r && w == delta, || {
                format!("S({n},{m}): minimum at r = {argmin} with weight {}, expected r = {r}", w.to_string_in("s"))
            })?;
        }
    }
    let osp = AlgebraObject::osp_ext();
    for n in (1..=15u32).step_by(2) {
        let module = induce(&osp, &osp_base(n)).map_err(|e| e.to_string())?;
        let (_, w) = min_weight_summand(&module, &sample, 20).map_err(|e| e.to_string())?;
        let nn = i64::from(n * n) - 1;
        let expected = &RatFunc::constant(Rat::frac(nn, 8)) * &in_s.s.recip().unwrap();
        ensure(w == expected, || format!("M({n}): minimum {}, expected {}", w.to_string_in("s"), expected.to_string_in("s")))?;
    }
    Ok(())
}

fn non_degeneracy_scans() -> Outcome {
    let sv = mueger_scan(&CategorySpec::builtin("supervir").unwrap(), 8, 8);
    ensure(sv == vec![Label::SuperVir(1, 1)], || format!("supervir candidates {sv:?}"))?;
    let osp = mueger_scan(&CategorySpec::builtin("osp").unwrap(), 8, 8);
    ensure(osp == vec![Label::OspMod(1)], || format!("osp candidates {osp:?}"))
}

fn frobenius_reciprocity() -> Outcome {
    let svir = AlgebraObject::svir_ext();
    for (n, m, n2, m2) in (1..=8u32).flat_map(|a| (1..=8u32).flat_map(move |b| (1..=8u32).flat_map(move |c| (1..=8u32).map(move |d| (a, b, c, d))))) {
        let d = frobenius_dim(&svir, &svir_base(n, m), &svir_base(n2, m2)).map_err(|e| e.to_string())?;
        let expected = u64::from((n, m) == (n2, m2));
        ensure(d == expected, || format!("({n},{m}) vs ({n2},{m2}): dim {d}"))?;
    }
    let osp = AlgebraObject::osp_ext();
    for n in 1..=8u32 {
        for n2 in 1..=8u32 {
            let d = frobenius_dim(&osp, &osp_base(n), &osp_base(n2)).map_err(|e| e.to_string())?;
            ensure(d == u64::from(n == n2), || format!("osp {n} vs {n2}: dim {d}"))?;
        }
    }
    Ok(())
}

fn induced_fusion_oracle() -> Outcome {
    let svir = AlgebraObject::svir_ext();
    let sv: Vec<SimpleLabel> = (1..=6u32)
        .flat_map(|n| (1..=6u32).map(move |m| (n, m)))
        .filter(|(n, m)| (n + m) % 2 == 0)
        .map(|(n, m)| svir_base(n, m))
        .collect();
    let osp = AlgebraObject::osp_ext();
    let os: Vec<SimpleLabel> = (1..=6u32).filter(|n| n % 2 == 1).map(osp_base).collect();
    for (alg, bases) in [(&svir, &sv), (&osp, &os)] {
        for b1 in bases {
            for b2 in bases {
                let ok = restriction_oracle_check(alg, b1, b2, 12).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{}: {b1} with {b2} disagrees", alg.name))?;
            }
        }
    }
    Ok(())
}

fn direct_limit_suite() -> Outcome {
    let report = run_property_suite(0, 100);
    ensure(report.all_passed() && report.cases == 100, || {
        let first = report.failures.first().map(|f| f.to_string()).unwrap_or_default();
        format!("{}/{} cases passed; first failure: {first}", report.passed, report.cases)
    })
}

fn associativity(cat: &CategorySpec, a: &SimpleLabel, b: &SimpleLabel, c: &SimpleLabel) -> Outcome {
    let el = |x: &SimpleLabel| FusionElement::simple(x.clone());
    let ab = ring_mul(cat, &el(a), &el(b)).map_err(|e| e.to_string())?;
    let bc = ring_mul(cat, &el(b), &el(c)).map_err(|e| e.to_string())?;
    let left = ring_mul(cat, &ab, &el(c)).map_err(|e| e.to_string())?;
    let right = ring_mul(cat, &el(a), &bc).map_err(|e| e.to_string())?;
    ensure(left == right, || format!("({a}{b}){c} = {left} but {a}({b}{c}) = {right}"))
}

fn fusion_associativity() -> Outcome {
    let cat = CategorySpec::builtin("virasoro-t").unwrap();
    let small = cat.labels_up_to(4);
    ensure(small.len() == 16, || format!("{} labels up to 4", small.len()))?;
    for a in &small {
        for b in &small {
            for c in &small {
                associativity(&cat, a, b, c)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pick = || Label::VirasoroT(rng.gen_range(1..=8), rng.gen_range(1..=8));
    for _ in 0..500 {
        let (a, b, c) = (pick(), pick(), pick());
        associativity(&cat, &a, &b, &c)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("1 balancing closed form", 1, balancing_closed_form),
        ("2 locality parities", 5, locality_parities),
        ("3 minimum-weight identities", u64::MAX, minimum_weights),
        ("4 non-degeneracy scans", 30, non_degeneracy_scans),
        ("5 Frobenius reciprocity", u64::MAX, frobenius_reciprocity),
        ("6 induced fusion oracle", 60, induced_fusion_oracle),
        ("7 direct-limit property suite", 60, direct_limit_suite),
        ("8 fusion-ring associativity", 10, fusion_associativity),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = budget != u64::MAX && elapsed > Duration::from_secs(budget);
        let budget_text = if budget == u64::MAX { "none".to_string() } else { format!("{budget}s") };
        match (&outcome, over) {
            (Ok(()), false) => println!("criterion {name}: PASS ({elapsed:.2?}, budget {budget_text})"),
            (Ok(()), true) => {
                failed += 1;
                println!("criterion {name}: FAIL (took {elapsed:.2?}, budget {budget_text})");
            }
            (Err(msg), _) => {
                failed += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
