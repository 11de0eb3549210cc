//! Fusion-ring arithmetic, monodromy from balancing, and Müger-center scans.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catdata::{label_weight, CatError, CategorySpec, SimpleLabel};
use crate::exact::{Phase, RatFunc};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FusionError {
    #[error("label {label} is not in category {category}")]
    CategoryMismatch { label: String, category: String },
}

impl From<CatError> for FusionError {
    fn from(e: CatError) -> Self {
        match e {
            CatError::ForeignLabel { label, category } => FusionError::CategoryMismatch { label, category },
            other => FusionError::CategoryMismatch {
                label: other.to_string(),
                category: String::new(),
            },
        }
    }
}

/// A formal non-negative integer combination of simples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FusionElement {
    terms: BTreeMap<SimpleLabel, u64>,
}

impl FusionElement {
    pub fn zero() -> Self {
        FusionElement::default()
    }

    pub fn simple(x: SimpleLabel) -> Self {
        FusionElement::from_terms([(x, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SimpleLabel, u64)>) -> Self {
        let mut out = FusionElement::zero();
        for (x, m) in terms {
            out.add_term(x, m);
        }
        out
    }

    pub fn add_term(&mut self, x: SimpleLabel, mult: u64) {
        if mult > 0 {
            *self.terms.entry(x).or_insert(0) += mult;
        }
    }

    pub fn add(&mut self, other: &FusionElement) {
        for (x, m) in &other.terms {
            self.add_term(x.clone(), *m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SimpleLabel, u64)> {
        self.terms.iter().map(|(x, m)| (x, *m))
    }

    pub fn labels(&self) -> Vec<SimpleLabel> {
        self.terms.keys().cloned().collect()
    }

    pub fn multiplicity(&self, x: &SimpleLabel) -> u64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of simple summands counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Keeps only the terms whose labels satisfy `keep`.
    pub fn filtered(&self, keep: impl Fn(&SimpleLabel) -> bool) -> FusionElement {
        FusionElement {
            terms: self
                .terms
                .iter()
                .filter(|(x, _)| keep(x))
                .map(|(x, m)| (x.clone(), *m))
                .collect(),
        }
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, m)| if *m == 1 { x.to_string() } else { format!("{m}*{x}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for FusionElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u64> = self.terms.iter().map(|(x, m)| (x.to_string(), *m)).collect();
        map.serialize(serializer)
    }
}

fn check_all(cat: &CategorySpec, a: &FusionElement) -> Result<(), FusionError> {
    match a.terms.keys().find(|x| !cat.contains(x)) {
        Some(x) => Err(FusionError::CategoryMismatch {
            label: x.to_string(),
            category: cat.name.clone(),
        }),
        None => Ok(()),
    }
}

/// Bilinear extension of fusion.
pub fn ring_mul(cat: &CategorySpec, a: &FusionElement, b: &FusionElement) -> Result<FusionElement, FusionError> {
    check_all(cat, a)?;
    check_all(cat, b)?;
    let mut out = FusionElement::zero();
    for (x, mx) in a.terms() {
        for (y, my) in b.terms() {
            for (z, mz) in cat.fusion(x, y)?.terms() {
                out.add_term(z.clone(), mx * my * mz);
            }
        }
    }
    Ok(out)
}

/// `dim Hom(a, b)` in the semisimple category.
pub fn hom_dim(cat: &CategorySpec, a: &FusionElement, b: &FusionElement) -> Result<u64, FusionError> {
    check_all(cat, a)?;
    check_all(cat, b)?;
    Ok(a.terms().map(|(x, m)| m * b.multiplicity(x)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentStatus {
    Integer,
    NonIntegerConstant,
    ParameterDependent,
}

impl ExponentStatus {
    pub fn of(e: &RatFunc) -> Self {
        match e.as_constant() {
            Some(c) if c.is_integer() => ExponentStatus::Integer,
            Some(_) => ExponentStatus::NonIntegerConstant,
            None => ExponentStatus::ParameterDependent,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExponentStatus::Integer => "integer",
            ExponentStatus::NonIntegerConstant => "non-integer-constant",
            ExponentStatus::ParameterDependent => "parameter-dependent",
        }
    }
}

impl fmt::Display for ExponentStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyEntry {
    pub summand: SimpleLabel,
    pub multiplicity: u64,
    /// `weight(summand) - weight(x) - weight(y)`.
    pub exponent: RatFunc,
    pub status: ExponentStatus,
    /// `exponent mod 1` when the exponent is constant.
    pub phase: Option<Phase>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyReport {
    pub var: &'static str,
    pub entries: Vec<MonodromyEntry>,
}

#[derive(Serialize)]
struct EntryDoc {
    summand: String,
    exponent: String,
    status: ExponentStatus,
    phase: Option<String>,
}

impl MonodromyReport {
    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| e.status == ExponentStatus::Integer)
    }

    pub fn entry(&self, summand: &SimpleLabel) -> Option<&MonodromyEntry> {
        self.entries.iter().find(|e| &e.summand == summand)
    }

    pub fn to_json(&self) -> String {
        let docs: Vec<EntryDoc> = self
            .entries
            .iter()
            .map(|e| EntryDoc {
                summand: e.summand.to_string(),
                exponent: e.exponent.to_string_in(self.var),
                status: e.status,
                phase: e.phase.as_ref().map(|p| p.to_string()),
            })
            .collect();
        serde_json::to_string(&docs).expect("serializable")
    }
}

/// The double braiding on each summand `z` of `x ⊠ y` is
/// `e^{2πi(h_z - h_x - h_y)}` by balancing.
pub fn monodromy(cat: &CategorySpec, x: &SimpleLabel, y: &SimpleLabel) -> Result<MonodromyReport, FusionError> {
    let base = &cat.weight(x)? + &cat.weight(y)?;
    let entries = cat
        .fusion(x, y)?
        .terms()
        .map(|(z, mult)| {
            // fusion may leave a bounded index window; the formula still applies
            let exponent = &label_weight(cat.base, z) - &base;
            let status = ExponentStatus::of(&exponent);
            let phase = exponent.as_constant().map(|c| Phase::from_exponent(&c));
            MonodromyEntry {
                summand: z.clone(),
                multiplicity: mult,
                exponent,
                status,
                phase,
            }
        })
        .collect();
    Ok(MonodromyReport {
        var: cat.base.var_name(),
        entries,
    })
}

/// A summand with non-trivial monodromy phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub witness: SimpleLabel,
    pub summand: SimpleLabel,
    pub exponent: RatFunc,
    pub status: ExponentStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transparency {
    pub transparent: bool,
    pub certificate: Option<Certificate>,
}

/// `x` is transparent against `witnesses` when every monodromy exponent is an
/// integer constant; otherwise the first offending summand is returned.
pub fn is_transparent(
    cat: &CategorySpec,
    x: &SimpleLabel,
    witnesses: &[SimpleLabel],
) -> Result<Transparency, FusionError> {
    for w in witnesses {
        let report = monodromy(cat, x, w)?;
        if let Some(e) = report.entries.iter().find(|e| e.status != ExponentStatus::Integer) {
            return Ok(Transparency {
                transparent: false,
                certificate: Some(Certificate {
                    witness: w.clone(),
                    summand: e.summand.clone(),
                    exponent: e.exponent.clone(),
                    status: e.status,
                }),
            });
        }
    }
    Ok(Transparency {
        transparent: true,
        certificate: None,
    })
}

/// Labels with indices `<= index_bound` that are transparent against every
/// label with indices `<= witness_bound`, in increasing label order.
pub fn mueger_scan(cat: &CategorySpec, index_bound: u32, witness_bound: u32) -> Vec<SimpleLabel> {
    let candidates = cat.labels_up_to(index_bound);
    let witnesses = cat.labels_up_to(witness_bound);
    let mut found: Vec<SimpleLabel> = candidates
        .par_iter()
        .filter(|x| {
            is_transparent(cat, x, &witnesses)
                .map(|t| t.transparent)
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    found.sort();
    found
}
