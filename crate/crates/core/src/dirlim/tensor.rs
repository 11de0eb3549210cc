use std::collections::BTreeMap;

use crate::exact::Rat;

use super::graded::{GradeMap, GradedSpace};
use super::limit::{direct_limit, universal_map, Limit, Target};
use super::system::DirectSystem;
use super::DirlimError;

/// The product system over `I × J` with `W(i) ⊗ U(j)` and maps `f ⊗ g`.
pub fn tensor_system(a: &DirectSystem, b: &DirectSystem) -> DirectSystem {
    let poset = a.poset.product(&b.poset);
    let nb = b.poset.len();
    let spaces = a
        .spaces
        .iter()
        .flat_map(|w| b.spaces.iter().map(move |u| w.tensor(u)))
        .collect();
    let mut maps = BTreeMap::new();
    for (&(i, i2), f) in &a.maps {
        for (&(j, j2), g) in &b.maps {
            maps.insert((i * nb + j, i2 * nb + j2), f.tensor(g));
        }
    }
    DirectSystem::new(poset, spaces, maps)
}

/// The system `i ↦ W(i) ⊗ X` with maps `f_i^j ⊗ id_X`.
pub fn tensor_with_space(a: &DirectSystem, x: &GradedSpace) -> DirectSystem {
    let id = GradeMap::identity(x);
    let spaces = a.spaces.iter().map(|w| w.tensor(x)).collect();
    let maps = a.maps.iter().map(|(&k, f)| (k, f.tensor(&id))).collect();
    DirectSystem::new(a.poset.clone(), spaces, maps)
}

#[derive(Clone, Debug)]
pub struct FubiniReport {
    /// `lim_{I×J×K} W ⊗ (U ⊗ V)`.
    pub multiple: Limit,
    /// `lim_I (W ⊗ lim_{J×K} U ⊗ V)`.
    pub iterated: Limit,
    /// Canonical comparison map `multiple -> iterated`.
    pub comparison: GradeMap,
    pub graded_dims_equal: bool,
    pub is_isomorphism: bool,
}

impl FubiniReport {
    pub fn graded_dims(&self) -> (Vec<(Rat, usize)>, Vec<(Rat, usize)>) {
        (
            self.multiple.space.graded_dimension(),
            self.iterated.space.graded_dimension(),
        )
    }
}

/// Compares the multiple limit over `I × J × K` with the iterated limit
/// obtained by first taking the limit over `J × K`.
///
/// The comparison comes from the universal property applied to the cocone
/// `λ_i ∘ (id ⊗ φ_{(j,k)})`; tensoring vector spaces is exact, so it is
/// always an isomorphism.
pub fn fubini_compare(
    a: &DirectSystem,
    b: &DirectSystem,
    c: &DirectSystem,
) -> Result<FubiniReport, DirlimError> {
    let bc = tensor_system(b, c);
    let abc = tensor_system(a, &bc);
    let multiple = direct_limit(&abc)?;

    let inner = direct_limit(&bc)?;
    let outer = tensor_with_space(a, &inner.space);
    let iterated = direct_limit(&outer)?;

    let nbc = bc.poset.len();
    let mut psis = Vec::with_capacity(abc.poset.len());
    for i in 0..a.poset.len() {
        let id_w = GradeMap::identity(&a.spaces[i]);
        for jk in 0..nbc {
            let into_inner = id_w.tensor(&inner.legs[jk]);
            psis.push(iterated.legs[i].compose(&into_inner));
        }
    }
    let comparison = universal_map(
        &multiple,
        &Target {
            space: iterated.space.clone(),
            psis,
        },
    )?;
    let graded_dims_equal =
        multiple.space.graded_dimension() == iterated.space.graded_dimension();
    let is_isomorphism = comparison.is_isomorphism();
    Ok(FubiniReport {
        multiple,
        iterated,
        comparison,
        graded_dims_equal,
        is_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirlim::graded::DirectedPoset;
    use crate::dirlim::linalg::Matrix;

    fn inclusion(m: usize, n: usize) -> Matrix {
        let mut f = Matrix::zeros(n, m);
        for i in 0..m {
            f.set(i, i, Rat::one());
        }
        f
    }

    #[test]
    fn tensor_with_zero_system_is_zero() {
        let a = DirectSystem::constant(DirectedPoset::chain(2), &GradedSpace::trivial("a", 2));
        let z = DirectSystem::constant(DirectedPoset::chain(3), &GradedSpace::zero());
        let t = tensor_system(&a, &z);
        assert!(t.spaces.iter().all(|s| s.dim() == 0));
        assert!(t.validate().is_valid());
    }

    #[test]
    fn constant_tensor_constant() {
        let w = GradedSpace::trivial("w", 2);
        let u = GradedSpace::trivial("u", 3);
        let t = tensor_system(
            &DirectSystem::constant(DirectedPoset::chain(2), &w),
            &DirectSystem::constant(DirectedPoset::chain(2), &u),
        );
        assert!(t.spaces.iter().all(|s| s.dim() == 6));
        assert!(t.maps.values().all(|f| f.matrix == Matrix::identity(6)));
    }

    #[test]
    fn kronecker_dimensions() {
        let q = |n| GradedSpace::trivial("e", n);
        let a = DirectSystem::from_chain(vec![q(1), q(2)], vec![inclusion(1, 2)]).unwrap();
        let b = DirectSystem::from_chain(vec![q(1), q(3)], vec![inclusion(1, 3)]).unwrap();
        let t = tensor_system(&a, &b);
        let dims: Vec<usize> = t.spaces.iter().map(GradedSpace::dim).collect();
        assert_eq!(dims, vec![1, 3, 2, 6]);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn fubini_on_constant_systems() {
        let w = GradedSpace::with_weights("w", &[Rat::zero(), Rat::one()]);
        let u = GradedSpace::trivial("u", 2);
        let v = GradedSpace::with_weights("v", &[Rat::frac(1, 2)]);
        let r = fubini_compare(
            &DirectSystem::constant(DirectedPoset::chain(2), &w),
            &DirectSystem::constant(DirectedPoset::chain(3), &u),
            &DirectSystem::constant(DirectedPoset::chain(2), &v),
        )
        .unwrap();
        assert_eq!(r.multiple.space.dim(), 4);
        assert!(r.is_isomorphism);
        assert!(r.graded_dims_equal);
    }

    #[test]
    fn fubini_with_zero_factor() {
        let w = GradedSpace::trivial("w", 2);
        let r = fubini_compare(
            &DirectSystem::constant(DirectedPoset::chain(2), &w),
            &DirectSystem::constant(DirectedPoset::chain(2), &GradedSpace::zero()),
            &DirectSystem::constant(DirectedPoset::chain(2), &w),
        )
        .unwrap();
        assert_eq!(r.multiple.space.dim(), 0);
        assert_eq!(r.iterated.space.dim(), 0);
        assert!(r.is_isomorphism);
    }
}
