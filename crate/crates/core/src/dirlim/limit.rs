use crate::exact::Rat;

use super::graded::{BasisVector, GradeMap, GradedSpace};
use super::linalg::{Matrix, SparseEchelon, Subspace};
use super::system::DirectSystem;
use super::DirlimError;

/// A constructed direct limit together with its structure maps.
#[derive(Clone, Debug)]
pub struct Limit {
    pub system: DirectSystem,
    pub space: GradedSpace,
    /// `legs[i]: W(i) -> space`.
    pub legs: Vec<GradeMap>,
}

/// A cocone over a direct system: maps `psis[i]: W(i) -> space`.
#[derive(Clone, Debug)]
pub struct Target {
    pub space: GradedSpace,
    pub psis: Vec<GradeMap>,
}

/// Direct limit as the quotient of `⊕ W(i)` by the span of
/// `q_i(w) − q_j(f_i^j w)` over all `i <= j`, reduced one weight at a time.
///
/// Columns of the direct sum are ordered along a linear extension of the
/// poset, so each relation's pivot falls in the lower block. The quotient
/// basis is the set of non-pivot columns; each leg sends a basis vector to
/// the normal form of its image modulo the relations.
pub fn direct_limit(sys: &DirectSystem) -> Result<Limit, DirlimError> {
    let report = sys.validate();
    if !report.is_valid() {
        return Err(DirlimError::InvalidSystem(report));
    }
    let poset = &sys.poset;
    let n = poset.len();
    let order = poset.linear_extension();

    let mut weights: Vec<Rat> = sys.spaces.iter().flat_map(|s| s.weights()).collect();
    weights.sort();
    weights.dedup();

    let mut basis = Vec::new();
    // per element: (basis index in W(i), limit basis index or normal form)
    let mut leg_columns: Vec<Vec<(usize, Vec<(usize, Rat)>)>> = vec![Vec::new(); n];

    for w in &weights {
        // global column list for this weight: (element, basis index)
        let mut cols: Vec<(usize, usize)> = Vec::new();
        let mut col_of: Vec<Vec<Option<usize>>> =
            sys.spaces.iter().map(|s| vec![None; s.dim()]).collect();
        for &i in &order {
            for b in sys.spaces[i].indices_of_weight(w) {
                col_of[i][b] = Some(cols.len());
                cols.push((i, b));
            }
        }
        if cols.is_empty() {
            continue;
        }

        let mut ech = SparseEchelon::new();
        for (i, j) in poset.strict_pairs() {
            let f = sys.map(i, j).expect("validated");
            for b in sys.spaces[i].indices_of_weight(w) {
                let mut row = vec![(col_of[i][b].expect("weight match"), Rat::one())];
                for c in sys.spaces[j].indices_of_weight(w) {
                    let x = f.matrix.get(c, b);
                    if !x.is_zero() {
                        row.push((col_of[j][c].expect("weight match"), -x));
                    }
                }
                ech.insert(&row);
            }
        }

        let offset = basis.len();
        let mut quotient_index = vec![None; cols.len()];
        for (k, &(i, b)) in cols.iter().enumerate() {
            if !ech.is_pivot(k) {
                quotient_index[k] = Some(basis.len());
                let src = &sys.spaces[i].basis()[b];
                basis.push(BasisVector {
                    id: format!("{}:{}", poset.id(i), src.id),
                    weight: w.clone(),
                });
            }
        }
        debug_assert_eq!(basis.len() - offset, cols.len() - ech.rank());

        for (k, &(i, b)) in cols.iter().enumerate() {
            let nf = ech.reduce(&[(k, Rat::one())]);
            let image = nf
                .into_iter()
                .map(|(c, x)| (quotient_index[c].expect("normal form avoids pivots"), x))
                .collect();
            leg_columns[i].push((b, image));
        }
    }

    let space = GradedSpace::new(basis);
    let legs = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(space.dim(), sys.spaces[i].dim());
            for (b, image) in &leg_columns[i] {
                for (r, x) in image {
                    m.set(*r, *b, x.clone());
                }
            }
            GradeMap::new(sys.spaces[i].clone(), space.clone(), m).expect("shape by construction")
        })
        .collect();
    Ok(Limit {
        system: sys.clone(),
        space,
        legs,
    })
}

impl Limit {
    pub fn leg(&self, id: &str) -> Result<&GradeMap, DirlimError> {
        Ok(&self.legs[self.system.element_index(id)?])
    }

    /// All legs side by side: a `dim(space) × Σ dim W(i)` matrix.
    pub fn leg_matrix(&self) -> Matrix {
        let blocks: Vec<&Matrix> = self.legs.iter().map(|l| &l.matrix).collect();
        Matrix::hstack(self.space.dim(), &blocks)
    }

    /// `ker φ_i` as a subspace of `W(i)`.
    pub fn kernel_of_leg(&self, id: &str) -> Result<Subspace, DirlimError> {
        let i = self.system.element_index(id)?;
        Ok(self.kernel_of_leg_at(i))
    }

    pub fn kernel_of_leg_at(&self, i: usize) -> Subspace {
        let leg = &self.legs[i];
        Subspace::span(leg.source.dim(), leg.matrix.nullspace())
    }

    /// Image of `φ_i` as a subspace of the limit.
    pub fn image_of_leg(&self, i: usize) -> Subspace {
        let m = &self.legs[i].matrix;
        Subspace::span(self.space.dim(), (0..m.cols()).map(|c| m.column(c)))
    }
}

/// The unique `F: lim -> tgt.space` with `F ∘ φ_i = ψ_i` for all `i`.
pub fn universal_map(lim: &Limit, tgt: &Target) -> Result<GradeMap, DirlimError> {
    let sys = &lim.system;
    let n = sys.poset.len();
    if tgt.psis.len() != n {
        return Err(DirlimError::Shape(format!(
            "target has {} maps for {} elements",
            tgt.psis.len(),
            n
        )));
    }
    for (i, psi) in tgt.psis.iter().enumerate() {
        if psi.matrix.cols() != sys.spaces[i].dim() || psi.matrix.rows() != tgt.space.dim() {
            return Err(DirlimError::Shape(format!(
                "psi for {} has the wrong shape",
                sys.poset.id(i)
            )));
        }
    }
    for (i, j) in sys.poset.strict_pairs() {
        let f = sys.map(i, j).expect("limit built from a valid system");
        if tgt.psis[j].matrix.mul(&f.matrix) != tgt.psis[i].matrix {
            return Err(DirlimError::IncompatibleTarget {
                from: sys.poset.id(i).to_string(),
                to: sys.poset.id(j).to_string(),
            });
        }
    }

    let phi = lim.leg_matrix();
    let psi_blocks: Vec<&Matrix> = tgt.psis.iter().map(|p| &p.matrix).collect();
    let psi = Matrix::hstack(tgt.space.dim(), &psi_blocks);
    // The legs span the limit, so some set of leg columns is a basis; F is
    // determined by its values there.
    let (_, pivots) = phi.rref();
    debug_assert_eq!(pivots.len(), lim.space.dim());
    let basis_cols: Vec<Vec<Rat>> = pivots.iter().map(|&c| phi.column(c)).collect();
    let values: Vec<Vec<Rat>> = pivots.iter().map(|&c| psi.column(c)).collect();
    let b = Matrix::from_columns(lim.space.dim(), &basis_cols);
    let v = Matrix::from_columns(tgt.space.dim(), &values);
    let b_inv = b.inverse().expect("pivot columns are independent");
    let f = v.mul(&b_inv);
    if f.mul(&phi) != psi {
        return Err(DirlimError::IncompatibleTarget {
            from: "*".into(),
            to: "*".into(),
        });
    }
    Ok(GradeMap::new(lim.space.clone(), tgt.space.clone(), f).expect("shape by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirlim::graded::DirectedPoset;

    fn q(n: usize) -> GradedSpace {
        GradedSpace::trivial("e", n)
    }

    fn inclusion(m: usize, n: usize) -> Matrix {
        let mut f = Matrix::zeros(n, m);
        for i in 0..m {
            f.set(i, i, Rat::one());
        }
        f
    }

    #[test]
    fn constant_system_limit_is_isomorphic() {
        let w = GradedSpace::with_weights("w", &[Rat::zero(), Rat::frac(1, 2)]);
        let poset = DirectedPoset::closure_of(
            vec!["a".into(), "b".into(), "c".into()],
            [(0, 2), (1, 2)],
        );
        let lim = direct_limit(&DirectSystem::constant(poset, &w)).unwrap();
        assert_eq!(lim.space.dim(), 2);
        assert!(lim.legs.iter().all(GradeMap::is_isomorphism));
    }

    #[test]
    fn zero_maps_leave_only_the_top_stage() {
        let sys = DirectSystem::from_chain(
            vec![q(1), q(1), q(1)],
            vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)],
        )
        .unwrap();
        let lim = direct_limit(&sys).unwrap();
        // q_1(w) and q_2(w) are relations; q_3(w) has no relation above it.
        assert_eq!(lim.space.dim(), 1);
        assert!(lim.legs[0].matrix.is_zero());
        assert!(lim.legs[1].matrix.is_zero());
        assert!(lim.legs[2].is_isomorphism());
    }

    #[test]
    fn increasing_inclusions() {
        let sys = DirectSystem::from_chain(
            vec![q(1), q(2), q(3)],
            vec![inclusion(1, 2), inclusion(2, 3)],
        )
        .unwrap();
        let lim = direct_limit(&sys).unwrap();
        assert_eq!(lim.space.dim(), 3);
        assert!(lim.legs.iter().all(GradeMap::is_injective));
    }

    #[test]
    fn invalid_system_rejected() {
        let mut sys = DirectSystem::constant(DirectedPoset::chain(2), &q(1));
        sys.maps.remove(&(0, 1));
        assert!(matches!(direct_limit(&sys), Err(DirlimError::InvalidSystem(_))));
    }

    #[test]
    fn universal_map_to_self_is_identity() {
        let sys = DirectSystem::from_chain(vec![q(1), q(2)], vec![inclusion(1, 2)]).unwrap();
        let lim = direct_limit(&sys).unwrap();
        let tgt = Target {
            space: lim.space.clone(),
            psis: lim.legs.clone(),
        };
        let f = universal_map(&lim, &tgt).unwrap();
        assert_eq!(f.matrix, Matrix::identity(lim.space.dim()));
    }

    #[test]
    fn universal_map_to_zero() {
        let sys = DirectSystem::from_chain(vec![q(1), q(2)], vec![inclusion(1, 2)]).unwrap();
        let lim = direct_limit(&sys).unwrap();
        let z = GradedSpace::zero();
        let tgt = Target {
            space: z.clone(),
            psis: sys.spaces.iter().map(|s| GradeMap::zero(s, &z)).collect(),
        };
        let f = universal_map(&lim, &tgt).unwrap();
        assert_eq!((f.matrix.rows(), f.matrix.cols()), (0, 2));
    }

    #[test]
    fn incompatible_target_rejected() {
        let sys = DirectSystem::from_chain(vec![q(1), q(1)], vec![Matrix::identity(1)]).unwrap();
        let lim = direct_limit(&sys).unwrap();
        let tgt = Target {
            space: q(1),
            psis: vec![
                GradeMap::new(q(1), q(1), Matrix::from_ints(1, 1, &[1])).unwrap(),
                GradeMap::new(q(1), q(1), Matrix::from_ints(1, 1, &[2])).unwrap(),
            ],
        };
        assert!(matches!(
            universal_map(&lim, &tgt),
            Err(DirlimError::IncompatibleTarget { .. })
        ));
    }

    #[test]
    fn kernel_of_first_leg() {
        // f_1^2 kills e1, f_2^3 injective
        let f12 = Matrix::from_ints(2, 2, &[0, 0, 0, 1]);
        let f23 = inclusion(2, 3);
        let sys = DirectSystem::from_chain(vec![q(2), q(2), q(3)], vec![f12, f23]).unwrap();
        let lim = direct_limit(&sys).unwrap();
        let k = lim.kernel_of_leg("1").unwrap();
        assert_eq!(k, Subspace::span(2, [vec![Rat::one(), Rat::zero()]]));
        assert_eq!(lim.kernel_of_leg("3").unwrap().dim(), 0);
        assert!(matches!(lim.kernel_of_leg("9"), Err(DirlimError::UnknownElement(_))));
    }

    #[test]
    fn zero_maps_on_two_chain_kernel_is_everything() {
        let sys = DirectSystem::from_chain(vec![q(2), q(1)], vec![Matrix::zeros(1, 2)]).unwrap();
        let lim = direct_limit(&sys).unwrap();
        assert_eq!(lim.kernel_of_leg("1").unwrap(), Subspace::full(2));
    }
}
