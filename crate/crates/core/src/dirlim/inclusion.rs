use std::collections::BTreeMap;

use crate::exact::Rat;

use super::graded::{BasisVector, DirectedPoset, GradeMap, GradedSpace};
use super::limit::{direct_limit, universal_map, Limit, Target};
use super::linalg::{Matrix, Subspace};
use super::system::DirectSystem;
use super::DirlimError;

/// A direct system of subspaces of one ambient space, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct InclusionSystem {
    pub system: DirectSystem,
    /// The subspace behind each poset element.
    pub members: Vec<Subspace>,
    /// `embeddings[i]: W_i -> ambient`, the inclusion in ambient coordinates.
    pub embeddings: Vec<GradeMap>,
}

#[derive(Clone, Debug)]
pub struct QMapReport {
    pub map: GradeMap,
    pub limit: Limit,
    pub injective: bool,
    pub surjective: bool,
}

fn project_to_weight(space: &GradedSpace, v: &[Rat], w: &Rat) -> Vec<Rat> {
    v.iter()
        .enumerate()
        .map(|(i, x)| if space.weight(i) == w { x.clone() } else { Rat::zero() })
        .collect()
}

/// Homogeneous basis of a graded subspace, weight by weight; errors if the
/// subspace is not spanned by homogeneous vectors.
fn homogeneous_basis(ambient: &GradedSpace, s: &Subspace) -> Result<Vec<(Rat, Vec<Rat>)>, DirlimError> {
    let mut out = Vec::new();
    for w in ambient.weights() {
        let parts: Vec<Vec<Rat>> = s
            .basis()
            .iter()
            .map(|v| project_to_weight(ambient, v, &w))
            .collect();
        if parts.iter().any(|p| !s.contains(p)) {
            return Err(DirlimError::NotASubspace(format!(
                "subspace is not graded (weight {w} component escapes)"
            )));
        }
        let graded_part = Subspace::span(ambient.dim(), parts);
        out.extend(graded_part.basis().iter().map(|v| (w.clone(), v.clone())));
    }
    Ok(out)
}

/// System indexed by the listed subspaces closed under pairwise sums, with
/// the zero subspace adjoined, ordered by inclusion.
pub fn inclusion_system(
    ambient: &GradedSpace,
    subspaces: &[Subspace],
) -> Result<InclusionSystem, DirlimError> {
    let n = ambient.dim();
    for s in subspaces {
        if s.ambient_dim() != n {
            return Err(DirlimError::NotASubspace(format!(
                "subspace lives in dimension {}, ambient has {}",
                s.ambient_dim(),
                n
            )));
        }
        homogeneous_basis(ambient, s)?;
    }

    let mut members: Vec<Subspace> = vec![Subspace::zero(n)];
    for s in subspaces {
        if !members.contains(s) {
            members.push(s.clone());
        }
    }
    let mut grew = true;
    while grew {
        grew = false;
        let snapshot = members.clone();
        for a in 0..snapshot.len() {
            for b in a + 1..snapshot.len() {
                let sum = snapshot[a].sum(&snapshot[b]);
                if !members.contains(&sum) {
                    members.push(sum);
                    grew = true;
                }
            }
        }
    }

    let ids: Vec<String> = (0..members.len()).map(|i| format!("W{i}")).collect();
    let mut spaces = Vec::new();
    let mut embeddings = Vec::new();
    for (i, s) in members.iter().enumerate() {
        let hb = homogeneous_basis(ambient, s)?;
        let space = GradedSpace::new(
            hb.iter()
                .enumerate()
                .map(|(k, (w, _))| BasisVector {
                    id: format!("{}.{k}", ids[i]),
                    weight: w.clone(),
                })
                .collect(),
        );
        let cols: Vec<Vec<Rat>> = hb.into_iter().map(|(_, v)| v).collect();
        let emb = Matrix::from_columns(n, &cols);
        embeddings.push(GradeMap::new(space.clone(), ambient.clone(), emb).expect("shape"));
        spaces.push(space);
    }

    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|a| (0..members.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| members[a].is_subspace_of(&members[b]))
        .collect();
    let poset = DirectedPoset::closure_of(ids, pairs.iter().copied());
    let mut maps = BTreeMap::new();
    for &(a, b) in poset.relation() {
        let coords = embeddings[b]
            .matrix
            .solve(&embeddings[a].matrix)
            .expect("smaller subspace lies in the larger one");
        maps.insert(
            (a, b),
            GradeMap::new(spaces[a].clone(), spaces[b].clone(), coords).expect("shape"),
        );
    }
    Ok(InclusionSystem {
        system: DirectSystem::new(poset, spaces, maps),
        members,
        embeddings,
    })
}

/// The canonical map from the direct limit of the subspaces to the ambient
/// space, with its injectivity and surjectivity.
pub fn q_map(ambient: &GradedSpace, inc: &InclusionSystem) -> Result<QMapReport, DirlimError> {
    let limit = direct_limit(&inc.system)?;
    let tgt = Target {
        space: ambient.clone(),
        psis: inc.embeddings.clone(),
    };
    let map = universal_map(&limit, &tgt)?;
    let rank = map.rank();
    Ok(QMapReport {
        injective: rank == limit.space.dim(),
        surjective: rank == ambient.dim(),
        map,
        limit,
    })
}
