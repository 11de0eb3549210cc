//! Seeded property suite for direct limits.

use std::fmt;

use rayon::prelude::*;

use crate::exact::Rat;

use super::inclusion::{inclusion_system, q_map};
use super::limit::{direct_limit, universal_map, Limit, Target};
use super::linalg::{unit, Subspace};
use super::random::{case_rng, random_chain_system, random_subspaces, random_system, random_target};
use super::system::DirectSystem;
use super::tensor::fubini_compare;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    LegCompatibility,
    UnionOfImages,
    KernelLemma,
    UniversalUniqueness,
    QInjective,
    Fubini,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::LegCompatibility,
        Property::UnionOfImages,
        Property::KernelLemma,
        Property::UniversalUniqueness,
        Property::QInjective,
        Property::Fubini,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::LegCompatibility => "leg-compatibility",
            Property::UnionOfImages => "union-of-images",
            Property::KernelLemma => "kernel-lemma",
            Property::UniversalUniqueness => "universal-uniqueness",
            Property::QInjective => "q-injective",
            Property::Fubini => "fubini",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: u64,
    pub property: Property,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}: {}: {}", self.case, self.property, self.message)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub cases: u64,
    pub passed: u64,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sizes used by the generators.
#[derive(Clone, Copy, Debug)]
pub struct SuiteBounds {
    pub poset_len: usize,
    pub dim: usize,
    pub subspaces: usize,
    pub fubini_chain: usize,
    pub fubini_dim: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            poset_len: 6,
            dim: 5,
            subspaces: 5,
            fubini_chain: 3,
            fubini_dim: 3,
        }
    }
}

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_leg_compatibility(lim: &Limit) -> Check {
    let sys = &lim.system;
    for (i, j) in sys.poset.strict_pairs() {
        let f = sys.map(i, j).expect("valid system");
        ensure(lim.legs[j].compose(f).matrix == lim.legs[i].matrix, || {
            format!("phi_{} o f != phi_{}", sys.poset.id(j), sys.poset.id(i))
        })?;
    }
    Ok(())
}

/// The leg images span the limit, and every basis vector of the limit lies in
/// a single leg image.
pub fn check_union_of_images(lim: &Limit) -> Check {
    let n = lim.space.dim();
    let images: Vec<Subspace> = (0..lim.legs.len()).map(|i| lim.image_of_leg(i)).collect();
    let total = images.iter().fold(Subspace::zero(n), |acc, s| acc.sum(s));
    ensure(total.dim() == n, || format!("images span {} of {}", total.dim(), n))?;
    for k in 0..n {
        let e = unit(n, k);
        ensure(images.iter().any(|s| s.contains(&e)), || {
            format!("basis vector {k} lies in no single image")
        })?;
    }
    Ok(())
}

/// `ker φ_i` against `Σ_{j >= i} ker f_i^j`, computed from the maps alone.
pub fn check_kernel_lemma(lim: &Limit) -> Check {
    let sys = &lim.system;
    for i in 0..sys.poset.len() {
        let dim = sys.spaces[i].dim();
        let from_maps = sys
            .poset
            .up_set(i)
            .into_iter()
            .map(|j| Subspace::span(dim, sys.map(i, j).expect("i <= j").matrix.nullspace()))
            .fold(Subspace::zero(dim), |acc, k| acc.sum(&k));
        ensure(lim.kernel_of_leg_at(i) == from_maps, || {
            format!("kernel mismatch at {}", sys.poset.id(i))
        })?;
    }
    Ok(())
}

/// The universal map reproduces the cocone, and changing any single entry
/// breaks some triangle.
pub fn check_universal_uniqueness(lim: &Limit, tgt: &Target) -> Check {
    let f = universal_map(lim, tgt).map_err(|e| e.to_string())?;
    for (i, psi) in tgt.psis.iter().enumerate() {
        ensure(f.compose(&lim.legs[i]).matrix == psi.matrix, || {
            format!("F o phi_{i} != psi_{i}")
        })?;
    }
    for r in 0..f.matrix.rows() {
        for c in 0..f.matrix.cols() {
            let mut g = f.matrix.clone();
            g.set(r, c, f.matrix.get(r, c) + &Rat::one());
            let still = (0..lim.legs.len()).all(|i| g.mul(&lim.legs[i].matrix) == tgt.psis[i].matrix);
            ensure(!still, || format!("perturbing entry ({r},{c}) is undetected"))?;
        }
    }
    Ok(())
}

fn check_system_case(sys: &DirectSystem, rng: &mut impl rand::Rng, dim: usize) -> Vec<(Property, Check)> {
    let lim = match direct_limit(sys) {
        Ok(l) => l,
        Err(e) => {
            let msg = format!("construction failed: {e}");
            return Property::ALL[..4].iter().map(|&p| (p, Err(msg.clone()))).collect();
        }
    };
    let (space, psis) = random_target(rng, sys, dim);
    let tgt = Target { space, psis };
    vec![
        (Property::LegCompatibility, check_leg_compatibility(&lim)),
        (Property::UnionOfImages, check_union_of_images(&lim)),
        (Property::KernelLemma, check_kernel_lemma(&lim)),
        (Property::UniversalUniqueness, check_universal_uniqueness(&lim, &tgt)),
    ]
}

fn check_q_case(rng: &mut impl rand::Rng, bounds: &SuiteBounds) -> Check {
    let (ambient, subs) = random_subspaces(rng, bounds.dim, bounds.subspaces);
    let inc = inclusion_system(&ambient, &subs).map_err(|e| e.to_string())?;
    let report = q_map(&ambient, &inc).map_err(|e| e.to_string())?;
    ensure(report.injective, || "Q is not injective".into())?;
    let covered = subs
        .iter()
        .fold(Subspace::zero(ambient.dim()), |acc, s| acc.sum(s))
        .dim()
        == ambient.dim();
    ensure(report.surjective == covered, || {
        format!("Q surjective = {} but cover = {}", report.surjective, covered)
    })
}

fn check_fubini_case(rng: &mut impl rand::Rng, bounds: &SuiteBounds) -> Check {
    let mut chain = || {
        let len = rng.gen_range(1..=bounds.fubini_chain);
        random_chain_system(rng, len, bounds.fubini_dim)
    };
    let (a, b, c) = (chain(), chain(), chain());
    let r = fubini_compare(&a, &b, &c).map_err(|e| e.to_string())?;
    ensure(r.graded_dims_equal, || "graded dimensions differ".into())?;
    ensure(r.is_isomorphism, || "comparison is not an isomorphism".into())
}

/// Runs every property on one seeded case. Q-injectivity is exercised twice
/// per case on independent inclusion systems.
pub fn run_case(seed: u64, case: u64, bounds: &SuiteBounds) -> Vec<Failure> {
    let mut rng = case_rng(seed, case);
    let sys = random_system(&mut rng, bounds.poset_len, bounds.dim);
    let mut results = check_system_case(&sys, &mut rng, bounds.dim);
    results.push((Property::QInjective, check_q_case(&mut rng, bounds)));
    results.push((Property::QInjective, check_q_case(&mut rng, bounds)));
    results.push((Property::Fubini, check_fubini_case(&mut rng, bounds)));
    results
        .into_iter()
        .filter_map(|(property, res)| {
            res.err().map(|message| Failure {
                case,
                property,
                message,
            })
        })
        .collect()
}

/// Runs `cases` seeded cases in parallel; the report does not depend on the
/// schedule.
pub fn run_property_suite(seed: u64, cases: u64) -> SuiteReport {
    run_property_suite_with(seed, cases, &SuiteBounds::default())
}

pub fn run_property_suite_with(seed: u64, cases: u64, bounds: &SuiteBounds) -> SuiteReport {
    let per_case: Vec<Vec<Failure>> = (0..cases)
        .into_par_iter()
        .map(|case| run_case(seed, case, bounds))
        .collect();
    let passed = per_case.iter().filter(|f| f.is_empty()).count() as u64;
    SuiteReport {
        cases,
        passed,
        failures: per_case.into_iter().flatten().collect(),
    }
}
