//! Seeded generators for posets, direct systems, targets and subspace lists.
//!
//! Systems are built as quotients of a tower of coordinate sets
//! `B_i ⊆ A_i` (both monotone in `i`): `W(i)` is spanned by the coordinates
//! in `A_i \ B_i` and `f_i^j` keeps a coordinate unless it falls into `B_j`.
//! A random grade-preserving change of basis on each `W(i)` then hides the
//! coordinate structure, so kernels and images are no longer axis-aligned.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::Rat;

use super::graded::{BasisVector, DirectedPoset, GradeMap, GradedSpace};
use super::linalg::{Matrix, Subspace};
use super::system::DirectSystem;

const WEIGHTS: [(i64, i64); 3] = [(0, 1), (1, 2), (1, 1)];

/// Deterministic generator for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn random_weight(rng: &mut impl Rng) -> Rat {
    let (p, q) = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
    Rat::frac(p, q)
}

fn small_entry(rng: &mut impl Rng) -> Rat {
    Rat::from_int(rng.gen_range(-3i64..=3))
}

/// A random partial order on `1..=max_len` elements (at least one), made
/// directed by placing the last element above everything.
pub fn random_poset(rng: &mut impl Rng, max_len: usize) -> DirectedPoset {
    let n = rng.gen_range(1..=max_len.max(1));
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                pairs.push((i, j));
            }
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut poset = DirectedPoset::closure_of(ids.clone(), pairs.iter().copied());
    if poset.greatest().is_none() {
        pairs.extend((0..n - 1).map(|i| (i, n - 1)));
        poset = DirectedPoset::closure_of(ids, pairs);
    }
    poset
}

/// A random invertible grade-preserving matrix on `space`.
pub fn random_automorphism(rng: &mut impl Rng, space: &GradedSpace) -> Matrix {
    let n = space.dim();
    loop {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if space.weight(r) == space.weight(c) {
                    let x = if r == c && rng.gen_bool(0.5) {
                        Rat::one()
                    } else {
                        small_entry(rng)
                    };
                    m.set(r, c, x);
                }
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}

/// A random grade-preserving map between two graded spaces.
pub fn random_grade_map(rng: &mut impl Rng, source: &GradedSpace, target: &GradedSpace) -> GradeMap {
    let mut m = Matrix::zeros(target.dim(), source.dim());
    for r in 0..target.dim() {
        for c in 0..source.dim() {
            if target.weight(r) == source.weight(c) {
                m.set(r, c, small_entry(rng));
            }
        }
    }
    GradeMap::new(source.clone(), target.clone(), m).expect("shape by construction")
}

/// A random graded space of dimension `0..=max_dim`.
pub fn random_space(rng: &mut impl Rng, prefix: &str, max_dim: usize) -> GradedSpace {
    let n = rng.gen_range(0..=max_dim);
    let weights: Vec<Rat> = (0..n).map(|_| random_weight(rng)).collect();
    GradedSpace::with_weights(prefix, &weights)
}

fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// A valid random direct system over `poset` with every space of dimension
/// at most `max_dim`.
pub fn random_system_on(rng: &mut impl Rng, poset: DirectedPoset, max_dim: usize) -> DirectSystem {
    let n = poset.len();
    let coords = max_dim;
    let coord_weight: Vec<Rat> = (0..coords).map(|_| random_weight(rng)).collect();
    let own_a: Vec<BTreeSet<usize>> = (0..n).map(|_| random_subset(rng, coords, 0.5)).collect();
    let own_b: Vec<BTreeSet<usize>> = (0..n).map(|_| random_subset(rng, coords, 0.2)).collect();

    let down: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&k| poset.leq(k, i)).collect())
        .collect();
    let below = |i: usize| down[i].iter().copied();
    let a: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| below(i).flat_map(|k| own_a[k].iter().copied()).collect())
        .collect();
    let b: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| {
            below(i)
                .flat_map(|k| own_b[k].intersection(&a[k]).copied().collect::<Vec<_>>())
                .collect()
        })
        .collect();
    let live: Vec<Vec<usize>> = (0..n).map(|i| a[i].difference(&b[i]).copied().collect()).collect();

    let spaces: Vec<GradedSpace> = (0..n)
        .map(|i| {
            GradedSpace::new(
                live[i]
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| BasisVector {
                        id: format!("x{k}"),
                        weight: coord_weight[c].clone(),
                    })
                    .collect(),
            )
        })
        .collect();
    let change: Vec<Matrix> = spaces.iter().map(|s| random_automorphism(rng, s)).collect();
    let change_inv: Vec<Matrix> = change
        .iter()
        .map(|m| m.inverse().expect("invertible by construction"))
        .collect();

    let mut maps = BTreeMap::new();
    for &(i, j) in poset.relation() {
        let mut f = Matrix::zeros(live[j].len(), live[i].len());
        for (col, c) in live[i].iter().enumerate() {
            if let Some(row) = live[j].iter().position(|x| x == c) {
                f.set(row, col, Rat::one());
            }
        }
        let twisted = change[j].mul(&f).mul(&change_inv[i]);
        maps.insert(
            (i, j),
            GradeMap::new(spaces[i].clone(), spaces[j].clone(), twisted).expect("shape"),
        );
    }
    DirectSystem::new(poset, spaces, maps)
}

/// A valid random system on a random poset of at most `max_len` elements.
pub fn random_system(rng: &mut impl Rng, max_len: usize, max_dim: usize) -> DirectSystem {
    let poset = random_poset(rng, max_len);
    random_system_on(rng, poset, max_dim)
}

/// A valid random system on the chain with exactly `len` elements.
pub fn random_chain_system(rng: &mut impl Rng, len: usize, max_dim: usize) -> DirectSystem {
    random_system_on(rng, DirectedPoset::chain(len), max_dim)
}

/// A compatible cocone `ψ_i = h ∘ f_i^m` through the greatest element `m`
/// and a random grade-preserving `h`.
pub fn random_target(rng: &mut impl Rng, sys: &DirectSystem, max_dim: usize) -> (GradedSpace, Vec<GradeMap>) {
    let top = sys.poset.greatest().expect("directed finite poset has a top");
    let space = random_space(rng, "t", max_dim);
    let h = random_grade_map(rng, &sys.spaces[top], &space);
    let psis = (0..sys.poset.len())
        .map(|i| h.compose(sys.map(i, top).expect("i <= top")))
        .collect();
    (space, psis)
}

/// A random ambient space and a list of graded subspaces of it.
pub fn random_subspaces(
    rng: &mut impl Rng,
    max_dim: usize,
    max_count: usize,
) -> (GradedSpace, Vec<Subspace>) {
    let ambient = random_space(rng, "a", max_dim);
    let n = ambient.dim();
    let count = rng.gen_range(0..=max_count);
    let subspaces = (0..count)
        .map(|_| {
            let gens = rng.gen_range(0..=n);
            let vectors: Vec<Vec<Rat>> = (0..gens)
                .map(|_| {
                    let w = if n == 0 {
                        Rat::zero()
                    } else {
                        ambient.weight(rng.gen_range(0..n)).clone()
                    };
                    (0..n)
                        .map(|k| {
                            if ambient.weight(k) == &w {
                                small_entry(rng)
                            } else {
                                Rat::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            Subspace::span(n, vectors)
        })
        .collect();
    (ambient, subspaces)
}
