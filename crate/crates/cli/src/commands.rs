use std::fmt::Write;

use serde_json::{json, Value};
use vtc_core::catdata::{Builtin, CategorySpec, Family, Label, SimpleLabel};
use vtc_core::dirlim::selftest::run_property_suite;
use vtc_core::exact::RatFunc;
use vtc_core::fusion::{monodromy, mueger_scan, FusionElement};
use vtc_core::induction::{
    frobenius_dim, induce, locality_with, min_weight_summand, AlgebraObject, InducedNaming, InductionError,
    LocalityCertificate, LocalityVerdict,
};

use crate::{CliError, Command, Format, RunConfig};

type Output = Result<String, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

pub fn run(command: Command, cfg: &RunConfig) -> Output {
    match command {
        Command::Weights => cmd_weights(cfg),
        Command::Fuse => cmd_fuse(cfg),
        Command::Monodromy => cmd_monodromy(cfg),
        Command::Locality => cmd_locality(cfg),
        Command::Induce => cmd_induce(cfg),
        Command::MinWeight => cmd_min_weight(cfg),
        Command::Frobenius => cmd_frobenius(cfg),
        Command::Center => cmd_center(cfg),
        Command::DirlimSelftest => cmd_dirlim_selftest(cfg),
    }
}

fn read_json_arg(value: &str) -> Result<Option<String>, CliError> {
    if value.ends_with(".json") {
        std::fs::read_to_string(value)
            .map(Some)
            .map_err(|e| config(format!("cannot read {value}: {e}")))
    } else {
        Ok(None)
    }
}

fn category(cfg: &RunConfig) -> Result<CategorySpec, CliError> {
    let name = cfg.category.as_deref().ok_or_else(|| config("--category is required"))?;
    let spec = match read_json_arg(name)? {
        Some(text) => CategorySpec::from_json(&text),
        None => CategorySpec::builtin(name),
    };
    spec.map_err(|e| config(e.to_string()))
}

fn algebra(cfg: &RunConfig) -> Result<AlgebraObject, CliError> {
    let name = cfg.algebra.as_deref().ok_or_else(|| config("--algebra is required"))?;
    let alg = match read_json_arg(name)? {
        Some(text) => AlgebraObject::from_json(&text),
        None => AlgebraObject::by_name(name),
    };
    alg.map_err(|e| config(e.to_string()))
}

fn bound(value: Option<u32>, flag: &str) -> Result<u32, CliError> {
    match value {
        Some(b) if b >= 1 => Ok(b),
        Some(_) => Err(config(format!("{flag} must be at least 1"))),
        None => Err(config(format!("{flag} is required"))),
    }
}

fn parse_in(text: &str, cat: &CategorySpec) -> Result<SimpleLabel, CliError> {
    let x: SimpleLabel = text.parse().map_err(|e: vtc_core::catdata::CatError| config(e.to_string()))?;
    if cat.contains(&x) {
        Ok(x)
    } else {
        Err(config(format!("{x} is not a simple of {}", cat.name)))
    }
}

/// `--x`, or a label assembled from the index selectors.
fn first_label(cfg: &RunConfig, cat: &CategorySpec) -> Result<SimpleLabel, CliError> {
    if let Some(text) = &cfg.x {
        return parse_in(text, cat);
    }
    let x = match &cat.family {
        Family::Builtin { kind, .. } => match kind {
            Builtin::VirasoroT => Label::VirasoroT(bound(cfg.r, "--r")?, bound(cfg.s_index, "--s-index")?),
            Builtin::VirasoroKp2 => Label::VirasoroKp2(bound(cfg.r, "--r")?, bound(cfg.s_index, "--s-index")?),
            Builtin::KlSl2 => Label::AffineVerma(bound(cfg.r, "--r")?),
            Builtin::SuperVir => Label::SuperVir(bound(cfg.n, "--n")?, bound(cfg.m, "--m")?),
            Builtin::Osp => Label::OspMod(bound(cfg.n, "--n")?),
        },
        Family::Deligne(..) => return Err(config("--x is required for a Deligne product")),
    };
    if cat.contains(&x) {
        Ok(x)
    } else {
        Err(config(format!("{x} is not a simple of {}", cat.name)))
    }
}

fn second_label(cfg: &RunConfig, cat: &CategorySpec) -> Result<SimpleLabel, CliError> {
    let text = cfg.y.as_deref().ok_or_else(|| config("--y is required"))?;
    parse_in(text, cat)
}

/// The base simple of an induced module: `--x`, or `--n`/`--m` for the
/// built-in naming schemes.
fn base_label(cfg: &RunConfig, alg: &AlgebraObject) -> Result<SimpleLabel, CliError> {
    if let Some(text) = &cfg.x {
        return parse_in(text, &alg.base);
    }
    let x = match alg.naming {
        InducedNaming::Supervir => Label::pair(
            Label::VirasoroKp2(bound(cfg.n, "--n")?, 1),
            Label::VirasoroT(bound(cfg.m, "--m")?, 1),
        ),
        InducedNaming::Osp => Label::pair(Label::AffineVerma(1), Label::VirasoroT(bound(cfg.n, "--n")?, 1)),
        InducedNaming::Plain => return Err(config("--x is required for this algebra")),
    };
    if alg.base.contains(&x) {
        Ok(x)
    } else {
        Err(config(format!("{x} is not a simple of {}", alg.base.name)))
    }
}

fn json_out(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_weights(cfg: &RunConfig) -> Output {
    let cat = category(cfg)?;
    let b = bound(cfg.bound, "--bound")?;
    let rows: Vec<(SimpleLabel, String)> = cat
        .labels_up_to(b)
        .into_iter()
        .map(|x| {
            let w = cat.weight(&x).map_err(compute)?;
            Ok((x, cat.display_weight(&w)))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(match cfg.format {
        Format::Tsv => rows.iter().fold(String::new(), |mut s, (x, w)| {
            let _ = writeln!(s, "{x}\t{w}");
            s
        }),
        Format::Json => json_out(Value::Array(
            rows.iter()
                .map(|(x, w)| json!({"label": x.to_string(), "weight": w}))
                .collect(),
        )),
    })
}

fn element_rows(e: &FusionElement) -> String {
    e.terms().fold(String::new(), |mut s, (x, m)| {
        let _ = writeln!(s, "{x}\t{m}");
        s
    })
}

fn cmd_fuse(cfg: &RunConfig) -> Output {
    let cat = category(cfg)?;
    let x = first_label(cfg, &cat)?;
    let y = second_label(cfg, &cat)?;
    let product = cat.fusion(&x, &y).map_err(compute)?;
    Ok(match cfg.format {
        Format::Tsv => element_rows(&product),
        Format::Json => json_out(json!({"x": x.to_string(), "y": y.to_string(), "product": product})),
    })
}

fn cmd_monodromy(cfg: &RunConfig) -> Output {
    let cat = category(cfg)?;
    let x = first_label(cfg, &cat)?;
    let y = second_label(cfg, &cat)?;
    let report = monodromy(&cat, &x, &y).map_err(compute)?;
    Ok(match cfg.format {
        Format::Tsv => report.entries.iter().fold(String::new(), |mut s, e| {
            let phase = e.phase.as_ref().map_or("-".to_string(), |p| p.to_string());
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}",
                e.summand,
                e.multiplicity,
                e.exponent.to_string_in(report.var),
                e.status.name(),
                phase
            );
            s
        }),
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    })
}

fn family_text(cert: &LocalityCertificate, var: &str) -> Option<String> {
    if let Some(p) = &cert.exponent_family {
        return Some(p.to_string());
    }
    let coeffs = cert.coefficients.as_ref()?;
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let c = c.to_string_in(var);
            match i {
                0 => format!("({c})"),
                1 => format!("({c})*r"),
                _ => format!("({c})*r^{i}"),
            }
        })
        .collect();
    Some(if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
}

fn cmd_locality(cfg: &RunConfig) -> Output {
    let alg = algebra(cfg)?;
    let base = base_label(cfg, &alg)?;
    let cert = locality_with(&alg, &base, cfg.truncate).map_err(compute)?;
    let (verdict, witness) = match cert.verdict {
        LocalityVerdict::Local => ("local", None),
        LocalityVerdict::NonLocal { witness } => ("non-local", Some(witness)),
        LocalityVerdict::Undecidable { checked_up_to } => ("undecidable", Some(checked_up_to)),
    };
    let family = family_text(&cert, alg.base.base.var_name());
    Ok(match cfg.format {
        Format::Tsv => {
            let mut s = format!("base\t{base}\nverdict\t{verdict}\n");
            match cert.verdict {
                LocalityVerdict::NonLocal { witness } => {
                    let _ = writeln!(s, "witness\t{witness}");
                }
                LocalityVerdict::Undecidable { checked_up_to } => {
                    let _ = writeln!(s, "checked_up_to\t{checked_up_to}");
                }
                LocalityVerdict::Local => {}
            }
            let _ = writeln!(s, "family\t{}", family.as_deref().unwrap_or("-"));
            s
        }
        Format::Json => json_out(json!({
            "base": base.to_string(),
            "verdict": verdict,
            "witness": witness,
            "family": family,
        })),
    })
}

fn cmd_induce(cfg: &RunConfig) -> Output {
    let alg = algebra(cfg)?;
    let base = base_label(cfg, &alg)?;
    let module = induce(&alg, &base).map_err(compute)?;
    let rows: Vec<(u32, FusionElement)> = (1..=cfg.truncate).map(|r| (r, module.restriction(r))).collect();
    Ok(match cfg.format {
        Format::Tsv => rows.iter().fold(String::new(), |mut s, (r, e)| {
            let _ = writeln!(s, "{r}\t{e}");
            s
        }),
        Format::Json => json_out(json!({
            "base": base.to_string(),
            "induced": alg.induced_label(&base).map(|x| x.to_string()),
            "restriction": rows.iter().map(|(r, e)| json!({"r": r, "summands": e})).collect::<Vec<_>>(),
        })),
    })
}

fn cmd_min_weight(cfg: &RunConfig) -> Output {
    let alg = algebra(cfg)?;
    let base = base_label(cfg, &alg)?;
    let module = induce(&alg, &base).map_err(compute)?;
    let (r, w): (u32, RatFunc) = min_weight_summand(&module, &cfg.sample, cfg.truncate).map_err(|e| match e {
        InductionError::Sample(_) => config(format!("--sample {}: {e}", cfg.sample)),
        other => compute(other),
    })?;
    let weight = alg.base.display_weight(&w);
    Ok(match cfg.format {
        Format::Tsv => format!("{r}\t{weight}\n"),
        Format::Json => json_out(json!({"base": base.to_string(), "r": r, "weight": weight})),
    })
}

fn cmd_frobenius(cfg: &RunConfig) -> Output {
    let alg = algebra(cfg)?;
    let b1 = base_label(cfg, &alg)?;
    let b2 = second_label(cfg, &alg.base)?;
    let dim = frobenius_dim(&alg, &b1, &b2).map_err(compute)?;
    Ok(match cfg.format {
        Format::Tsv => format!("{dim}\n"),
        Format::Json => json_out(json!({"x": b1.to_string(), "y": b2.to_string(), "dim": dim})),
    })
}

fn cmd_center(cfg: &RunConfig) -> Output {
    let cat = category(cfg)?;
    let b = bound(cfg.bound, "--bound")?;
    let w = match cfg.witness_bound {
        Some(_) => bound(cfg.witness_bound, "--witness-bound")?,
        None => b,
    };
    let found = mueger_scan(&cat, b, w);
    Ok(match cfg.format {
        Format::Tsv => found.iter().fold(String::new(), |mut s, x| {
            let _ = writeln!(s, "{x}");
            s
        }),
        Format::Json => json_out(Value::Array(found.iter().map(|x| json!(x.to_string())).collect())),
    })
}

fn cmd_dirlim_selftest(cfg: &RunConfig) -> Output {
    if cfg.cases == 0 {
        return Err(config("--cases must be at least 1"));
    }
    let report = run_property_suite(cfg.seed, cfg.cases);
    let out = match cfg.format {
        Format::Tsv => {
            let mut s = format!("{}/{} passed\n", report.passed, report.cases);
            for f in &report.failures {
                let _ = writeln!(s, "{}\t{}\t{}", f.case, f.property, f.message);
            }
            s
        }
        Format::Json => json_out(json!({
            "seed": cfg.seed,
            "cases": report.cases,
            "passed": report.passed,
            "failures": report.failures.iter().map(|f| json!({
                "case": f.case,
                "property": f.property.name(),
                "message": f.message,
            })).collect::<Vec<_>>(),
        })),
    };
    if report.all_passed() {
        Ok(out)
    } else {
        Err(CliError::SelftestFailed(out))
    }
}
