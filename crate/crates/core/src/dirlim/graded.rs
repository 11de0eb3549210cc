use std::collections::BTreeSet;

use crate::exact::Rat;

use super::linalg::Matrix;

/// A finite set with a reflexive-transitive relation, intended to be directed.
///
/// Elements are addressed by position; ids are only for display and
/// serialization. Validation lives in [`super::validate_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPoset {
    elements: Vec<String>,
    leq: BTreeSet<(usize, usize)>,
}

impl DirectedPoset {
    /// Takes the relation as given; see [`DirectedPoset::closure_of`] to
    /// build one from generating pairs.
    pub fn new(elements: Vec<String>, leq: BTreeSet<(usize, usize)>) -> Self {
        DirectedPoset { elements, leq }
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn closure_of(elements: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = elements.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            rel[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let leq = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| rel[i][j])
            .collect();
        DirectedPoset { elements, leq }
    }

    /// `0 <= 1 <= ... <= n-1` with ids `"1".."n"`.
    pub fn chain(n: usize) -> Self {
        let ids = (1..=n).map(|i| i.to_string()).collect();
        DirectedPoset::closure_of(ids, (1..n).map(|i| (i - 1, i)))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn id(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == id)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.contains(&(i, j))
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.leq
    }

    /// Pairs `i <= j` with `i != j`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.leq.iter().copied().filter(|(i, j)| i != j)
    }

    pub fn upper_bound(&self, i: usize, j: usize) -> Option<usize> {
        (0..self.len()).find(|&k| self.leq(i, k) && self.leq(j, k))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|i| self.leq(i, m)))
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// A linear extension: elements sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| ((0..self.len()).filter(|&k| self.leq(k, i)).count(), i));
        order
    }

    /// Componentwise order on pairs; element `(i, j)` sits at `i · other.len() + j`.
    pub fn product(&self, other: &DirectedPoset) -> DirectedPoset {
        let nb = other.len();
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let leq = self
            .leq
            .iter()
            .flat_map(|&(i, i2)| other.leq.iter().map(move |&(j, j2)| (i * nb + j, i2 * nb + j2)))
            .collect();
        DirectedPoset { elements, leq }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub id: String,
    pub weight: Rat,
}

/// Finite-dimensional graded vector space given by a weighted basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    basis: Vec<BasisVector>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisVector>) -> Self {
        GradedSpace { basis }
    }

    pub fn zero() -> Self {
        GradedSpace::default()
    }

    /// Basis ids `{prefix}0, {prefix}1, ...` with the given weights.
    pub fn with_weights(prefix: &str, weights: &[Rat]) -> Self {
        GradedSpace {
            basis: weights
                .iter()
                .enumerate()
                .map(|(i, w)| BasisVector {
                    id: format!("{prefix}{i}"),
                    weight: w.clone(),
                })
                .collect(),
        }
    }

    /// `n` basis vectors, all of weight 0.
    pub fn trivial(prefix: &str, n: usize) -> Self {
        GradedSpace::with_weights(prefix, &vec![Rat::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn weight(&self, i: usize) -> &Rat {
        &self.basis[i].weight
    }

    /// Distinct weights in increasing order.
    pub fn weights(&self) -> Vec<Rat> {
        let set: BTreeSet<&Rat> = self.basis.iter().map(|b| &b.weight).collect();
        set.into_iter().cloned().collect()
    }

    pub fn indices_of_weight(&self, w: &Rat) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.basis[i].weight == w).collect()
    }

    /// `(weight, dimension)` pairs in increasing weight order.
    pub fn graded_dimension(&self) -> Vec<(Rat, usize)> {
        self.weights()
            .into_iter()
            .map(|w| {
                let d = self.indices_of_weight(&w).len();
                (w, d)
            })
            .collect()
    }

    pub fn has_unique_ids(&self) -> bool {
        let ids: BTreeSet<&str> = self.basis.iter().map(|b| b.id.as_str()).collect();
        ids.len() == self.basis.len()
    }

    /// Basis `a⊗b` in lexicographic order; weights add.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .flat_map(|a| {
                other.basis.iter().map(move |b| BasisVector {
                    id: format!("{}⊗{}", a.id, b.id),
                    weight: &a.weight + &b.weight,
                })
            })
            .collect();
        GradedSpace { basis }
    }
}

/// Linear map between graded spaces; columns index the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub matrix: Matrix,
}

impl GradeMap {
    pub fn new(source: GradedSpace, target: GradedSpace, matrix: Matrix) -> Option<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return None;
        }
        Some(GradeMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(space: &GradedSpace) -> Self {
        GradeMap {
            source: space.clone(),
            target: space.clone(),
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace) -> Self {
        GradeMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.dim(), source.dim()),
        }
    }

    /// No nonzero entry connects basis vectors of different weight.
    pub fn is_grade_preserving(&self) -> bool {
        (0..self.matrix.rows()).all(|r| {
            (0..self.matrix.cols()).all(|c| {
                self.matrix.get(r, c).is_zero() || self.target.weight(r) == self.source.weight(c)
            })
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradeMap) -> GradeMap {
        GradeMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    pub fn tensor(&self, other: &GradeMap) -> GradeMap {
        GradeMap {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_order() {
        let c = DirectedPoset::chain(3);
        assert!(c.leq(0, 2));
        assert!(!c.leq(2, 0));
        assert_eq!(c.greatest(), Some(2));
        assert_eq!(c.linear_extension(), vec![0, 1, 2]);
    }

    #[test]
    fn product_is_componentwise() {
        let p = DirectedPoset::chain(2).product(&DirectedPoset::chain(2));
        assert_eq!(p.elements(), &["(1,1)", "(1,2)", "(2,1)", "(2,2)"]);
        assert!(p.leq(1, 3));
        assert!(!p.leq(1, 2));
        assert_eq!(p.greatest(), Some(3));
    }

    #[test]
    fn tensor_weights_add() {
        let a = GradedSpace::with_weights("a", &[Rat::zero(), Rat::frac(1, 2)]);
        let b = GradedSpace::with_weights("b", &[Rat::one()]);
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.weight(1), &Rat::frac(3, 2));
        assert_eq!(t.basis()[0].id, "a0⊗b0");
    }

    #[test]
    fn grade_preservation() {
        let s = GradedSpace::with_weights("x", &[Rat::zero(), Rat::one()]);
        let good = GradeMap::new(s.clone(), s.clone(), Matrix::from_ints(2, 2, &[2, 0, 0, 3])).unwrap();
        let bad = GradeMap::new(s.clone(), s.clone(), Matrix::from_ints(2, 2, &[1, 1, 0, 1])).unwrap();
        assert!(good.is_grade_preserving());
        assert!(!bad.is_grade_preserving());
    }
}
