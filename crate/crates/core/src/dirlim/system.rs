use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::Rat;

use super::graded::{BasisVector, DirectedPoset, GradeMap, GradedSpace};
use super::linalg::Matrix;
use super::DirlimError;

/// A functor from a finite directed poset to graded vector spaces.
///
/// `maps` holds `f_i^j` for every pair `i <= j` of the relation, identities
/// included.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectSystem {
    pub poset: DirectedPoset,
    pub spaces: Vec<GradedSpace>,
    pub maps: BTreeMap<(usize, usize), GradeMap>,
}

impl DirectSystem {
    pub fn new(
        poset: DirectedPoset,
        spaces: Vec<GradedSpace>,
        maps: BTreeMap<(usize, usize), GradeMap>,
    ) -> Self {
        DirectSystem {
            poset,
            spaces,
            maps,
        }
    }

    /// Every space equal to `space`, every map the identity.
    pub fn constant(poset: DirectedPoset, space: &GradedSpace) -> Self {
        let maps = poset
            .relation()
            .iter()
            .map(|&p| (p, GradeMap::identity(space)))
            .collect();
        let spaces = vec![space.clone(); poset.len()];
        DirectSystem::new(poset, spaces, maps)
    }

    /// Builds `f_i^j` for all `i <= j` of a chain by composing consecutive
    /// steps; `steps[k]` maps `spaces[k]` to `spaces[k + 1]`.
    pub fn from_chain(spaces: Vec<GradedSpace>, steps: Vec<Matrix>) -> Result<Self, DirlimError> {
        let n = spaces.len();
        if steps.len() + 1 != n.max(1) {
            return Err(DirlimError::Shape("chain needs one step per consecutive pair".into()));
        }
        let poset = DirectedPoset::chain(n);
        let mut maps = BTreeMap::new();
        for i in 0..n {
            let mut acc = GradeMap::identity(&spaces[i]);
            maps.insert((i, i), acc.clone());
            for j in i + 1..n {
                let step = GradeMap::new(spaces[j - 1].clone(), spaces[j].clone(), steps[j - 1].clone())
                    .ok_or_else(|| DirlimError::Shape(format!("step {} has the wrong shape", j - 1)))?;
                acc = step.compose(&acc);
                maps.insert((i, j), acc.clone());
            }
        }
        Ok(DirectSystem::new(poset, spaces, maps))
    }

    /// First `n` stages of an infinite chain described by `stage` and `step`.
    pub fn truncated_chain(
        n: usize,
        stage: impl Fn(usize) -> GradedSpace,
        step: impl Fn(usize) -> Matrix,
    ) -> Result<Self, DirlimError> {
        let spaces = (0..n).map(&stage).collect();
        let steps = (0..n.saturating_sub(1)).map(step).collect();
        DirectSystem::from_chain(spaces, steps)
    }

    pub fn map(&self, i: usize, j: usize) -> Option<&GradeMap> {
        self.maps.get(&(i, j))
    }

    pub fn element_index(&self, id: &str) -> Result<usize, DirlimError> {
        self.poset
            .index_of(id)
            .ok_or_else(|| DirlimError::UnknownElement(id.to_string()))
    }

    pub fn validate(&self) -> ValidationReport {
        validate_system(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SystemDoc::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, DirlimError> {
        let doc: SystemDoc =
            serde_json::from_str(text).map_err(|e| DirlimError::Json(e.to_string()))?;
        doc.try_into()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive { element: String },
    NotTransitive { a: String, b: String, c: String },
    NotDirected { a: String, b: String },
    SpaceCountMismatch { spaces: usize, elements: usize },
    DuplicateBasisIds { element: String },
    MissingMap { from: String, to: String },
    MapOutsideRelation { from: String, to: String },
    WrongShape { from: String, to: String },
    NotGradePreserving { from: String, to: String },
    NotIdentity { element: String },
    CompositionFailure { i: String, j: String, k: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive { element } => write!(f, "{element} <= {element} missing"),
            Violation::NotTransitive { a, b, c } => {
                write!(f, "{a} <= {b} <= {c} but not {a} <= {c}")
            }
            Violation::NotDirected { a, b } => write!(f, "{a} and {b} have no upper bound"),
            Violation::SpaceCountMismatch { spaces, elements } => {
                write!(f, "{spaces} spaces for {elements} elements")
            }
            Violation::DuplicateBasisIds { element } => {
                write!(f, "duplicate basis ids in W({element})")
            }
            Violation::MissingMap { from, to } => write!(f, "no map for {from} <= {to}"),
            Violation::MapOutsideRelation { from, to } => {
                write!(f, "map given for {from}, {to} which are not related")
            }
            Violation::WrongShape { from, to } => write!(f, "map {from} -> {to} has the wrong shape"),
            Violation::NotGradePreserving { from, to } => {
                write!(f, "map {from} -> {to} mixes weights")
            }
            Violation::NotIdentity { element } => write!(f, "f_{element}^{element} is not the identity"),
            Violation::CompositionFailure { i, j, k } => {
                write!(f, "f_{j}^{k} ∘ f_{i}^{j} != f_{i}^{k}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks directedness and functoriality, reporting every violation found.
///
/// Compositions are checked on triples `i ⋖ j <= k` with `j` covering `i`;
/// together with the identity checks this forces `f_j^k ∘ f_i^j = f_i^k`
/// for every `i <= j <= k` (induct on the interval `[i, k]`).
pub fn validate_system(sys: &DirectSystem) -> ValidationReport {
    let p = &sys.poset;
    let n = p.len();
    let id = |i: usize| p.id(i).to_string();
    let mut out = Vec::new();

    for i in 0..n {
        if !p.leq(i, i) {
            out.push(Violation::NotReflexive { element: id(i) });
        }
    }
    for &(a, b) in p.relation() {
        for c in p.up_set(b) {
            if !p.leq(a, c) {
                out.push(Violation::NotTransitive { a: id(a), b: id(b), c: id(c) });
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if p.upper_bound(a, b).is_none() {
                out.push(Violation::NotDirected { a: id(a), b: id(b) });
            }
        }
    }
    if sys.spaces.len() != n {
        out.push(Violation::SpaceCountMismatch {
            spaces: sys.spaces.len(),
            elements: n,
        });
        return ValidationReport { violations: out };
    }
    for i in 0..n {
        if !sys.spaces[i].has_unique_ids() {
            out.push(Violation::DuplicateBasisIds { element: id(i) });
        }
    }

    let mut usable = BTreeSet::new();
    for &(i, j) in sys.maps.keys() {
        if i >= n || j >= n || !p.leq(i, j) {
            out.push(Violation::MapOutsideRelation {
                from: if i < n { id(i) } else { i.to_string() },
                to: if j < n { id(j) } else { j.to_string() },
            });
        }
    }
    for &(i, j) in p.relation() {
        let Some(f) = sys.map(i, j) else {
            out.push(Violation::MissingMap { from: id(i), to: id(j) });
            continue;
        };
        if f.source != sys.spaces[i]
            || f.target != sys.spaces[j]
            || f.matrix.rows() != sys.spaces[j].dim()
            || f.matrix.cols() != sys.spaces[i].dim()
        {
            out.push(Violation::WrongShape { from: id(i), to: id(j) });
            continue;
        }
        if !f.is_grade_preserving() {
            out.push(Violation::NotGradePreserving { from: id(i), to: id(j) });
        }
        usable.insert((i, j));
    }
    for i in 0..n {
        if usable.contains(&(i, i))
            && sys.map(i, i).map(|f| &f.matrix) != Some(&Matrix::identity(sys.spaces[i].dim()))
        {
            out.push(Violation::NotIdentity { element: id(i) });
        }
    }
    for i in 0..n {
        for j in covers(p, i) {
            for k in p.up_set(j) {
                let (Some(fij), Some(fjk), Some(fik)) = (
                    usable.get(&(i, j)).and(sys.map(i, j)),
                    usable.get(&(j, k)).and(sys.map(j, k)),
                    usable.get(&(i, k)).and(sys.map(i, k)),
                ) else {
                    continue;
                };
                if fjk.matrix.mul(&fij.matrix) != fik.matrix {
                    out.push(Violation::CompositionFailure { i: id(i), j: id(j), k: id(k) });
                }
            }
        }
    }
    ValidationReport { violations: out }
}

/// Elements `j > i` with nothing strictly between.
fn covers(p: &DirectedPoset, i: usize) -> Vec<usize> {
    let above: Vec<usize> = p
        .up_set(i)
        .into_iter()
        .filter(|&j| j != i && !p.leq(j, i))
        .collect();
    above
        .iter()
        .copied()
        .filter(|&j| {
            !above
                .iter()
                .any(|&m| m != j && p.leq(m, j) && !p.leq(j, m))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    elements: Vec<String>,
    leq: Vec<(String, String)>,
}

/// JSON layout: `{poset: {elements, leq}, spaces: {id: [[basis_id, weight]]},
/// maps: {"i<=j": [[entry]]}}` with rationals as strings.
#[derive(Serialize, Deserialize)]
struct SystemDoc {
    poset: PosetDoc,
    spaces: BTreeMap<String, Vec<(String, Rat)>>,
    maps: BTreeMap<String, Vec<Vec<Rat>>>,
}

impl From<&DirectSystem> for SystemDoc {
    fn from(sys: &DirectSystem) -> Self {
        let p = &sys.poset;
        SystemDoc {
            poset: PosetDoc {
                elements: p.elements().to_vec(),
                leq: p
                    .relation()
                    .iter()
                    .map(|&(i, j)| (p.id(i).to_string(), p.id(j).to_string()))
                    .collect(),
            },
            spaces: sys
                .spaces
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let basis = s
                        .basis()
                        .iter()
                        .map(|b| (b.id.clone(), b.weight.clone()))
                        .collect();
                    (p.id(i).to_string(), basis)
                })
                .collect(),
            maps: sys
                .maps
                .iter()
                .map(|(&(i, j), f)| (format!("{}<={}", p.id(i), p.id(j)), f.matrix.to_rows()))
                .collect(),
        }
    }
}

impl TryFrom<SystemDoc> for DirectSystem {
    type Error = DirlimError;

    fn try_from(doc: SystemDoc) -> Result<Self, DirlimError> {
        let elements = doc.poset.elements;
        let index = |id: &str| {
            elements
                .iter()
                .position(|e| e == id)
                .ok_or_else(|| DirlimError::UnknownElement(id.to_string()))
        };
        let mut leq = BTreeSet::new();
        for (a, b) in &doc.poset.leq {
            leq.insert((index(a)?, index(b)?));
        }
        let mut spaces = Vec::with_capacity(elements.len());
        for e in &elements {
            let basis = doc
                .spaces
                .get(e)
                .ok_or_else(|| DirlimError::Json(format!("no space for element {e:?}")))?;
            spaces.push(GradedSpace::new(
                basis
                    .iter()
                    .map(|(id, w)| BasisVector {
                        id: id.clone(),
                        weight: w.clone(),
                    })
                    .collect(),
            ));
        }
        let mut maps = BTreeMap::new();
        for (key, rows) in doc.maps {
            let (a, b) = key
                .split_once("<=")
                .ok_or_else(|| DirlimError::Json(format!("bad map key {key:?}")))?;
            let (i, j) = (index(a.trim())?, index(b.trim())?);
            let (src, tgt) = (&spaces[i], &spaces[j]);
            let matrix = if rows.is_empty() {
                Matrix::zeros(tgt.dim(), src.dim())
            } else {
                let cols = rows[0].len();
                Matrix::from_rows(rows.len(), cols, rows)
                    .ok_or_else(|| DirlimError::Json(format!("ragged matrix for {key:?}")))?
            };
            let f = GradeMap::new(src.clone(), tgt.clone(), matrix)
                .ok_or_else(|| DirlimError::Shape(format!("map {key:?} has the wrong shape")))?;
            maps.insert((i, j), f);
        }
        // identities may be omitted in the document
        for i in 0..elements.len() {
            if leq.contains(&(i, i)) {
                maps.entry((i, i))
                    .or_insert_with(|| GradeMap::identity(&spaces[i]));
            }
        }
        Ok(DirectSystem::new(DirectedPoset::new(elements, leq), spaces, maps))
    }
}
