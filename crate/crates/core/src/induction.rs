//! Commutative algebra objects given as infinite direct sums of Deligne-pair
//! simples, and the induction functor at the level of multiplicities.
//!
//! An algebra is stored as a template whose indices are affine in the
//! summand number `r`, so `A = ⊕_{r >= 1} summand(r)` is never materialized.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::catdata::{label_weight, parse_label, CatError, CategorySpec, Label, Parity, SimpleLabel};
use crate::exact::{ExactError, IntPoly, Rat, RatFunc};
use crate::fusion::{ExponentStatus, FusionElement};

/// Truncation used when locality cannot be decided in closed form.
pub const DEFAULT_LOCALITY_TRUNCATION: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InductionError {
    #[error(transparent)]
    Category(#[from] CatError),
    #[error("{0} does not induce to a local module")]
    NotLocal(String),
    #[error("minimum found at the truncation bound {0}; it may lie further out")]
    TruncationTooSmall(u32),
    #[error("Hom space has unbounded support for {0}")]
    InfiniteSupport(String),
    #[error("no induced label is known for {0}")]
    Unnamed(String),
    #[error("invalid algebra object: {0}")]
    InvalidAlgebra(String),
    #[error("evaluation at the sample point failed: {0}")]
    Sample(#[from] ExactError),
}

/// An index `slope·r + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineIndex {
    pub slope: i64,
    pub offset: i64,
}

impl AffineIndex {
    pub fn constant(c: i64) -> Self {
        AffineIndex { slope: 0, offset: c }
    }

    pub fn r() -> Self {
        AffineIndex { slope: 1, offset: 0 }
    }

    pub fn at(&self, r: u32) -> i64 {
        self.slope * i64::from(r) + self.offset
    }

    pub fn is_constant(&self) -> bool {
        self.slope == 0
    }
}

impl fmt::Display for AffineIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope {
            0 => return write!(f, "{}", self.offset),
            1 => write!(f, "r")?,
            -1 => write!(f, "-r")?,
            k => write!(f, "{k}r")?,
        }
        match self.offset {
            0 => Ok(()),
            o if o > 0 => write!(f, "+{o}"),
            o => write!(f, "{o}"),
        }
    }
}

impl FromStr for AffineIndex {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CatError::InvalidLabel(format!("bad index expression {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let Some(pos) = text.find('r') else {
            return text.parse().map(AffineIndex::constant).map_err(|_| bad());
        };
        let slope = match &text[..pos] {
            "" | "+" => 1,
            "-" => -1,
            k => k.parse().map_err(|_| bad())?,
        };
        let offset = match &text[pos + 1..] {
            "" => 0,
            rest if rest.starts_with('+') || rest.starts_with('-') => rest.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(AffineIndex { slope, offset })
    }
}

/// A label whose indices depend affinely on `r`.
pub type LabelTemplate = Label<AffineIndex>;

pub fn parse_template(text: &str) -> Result<LabelTemplate, CatError> {
    parse_label(text)
}

/// The label at `r`, or `None` if some index drops below 1.
pub fn instantiate(t: &LabelTemplate, r: u32) -> Option<SimpleLabel> {
    if t.indices().iter().any(|i| i.at(r) < 1 || i.at(r) > i64::from(u32::MAX)) {
        return None;
    }
    Some(t.map_indices(&|i: &AffineIndex| i.at(r) as u32))
}

/// Zips the index slots of a template and a label of the same shape.
fn zip_slots(t: &LabelTemplate, x: &SimpleLabel) -> Option<Vec<(AffineIndex, u32)>> {
    use Label::*;
    let pairs = match (t, x) {
        (VirasoroT(a, b), VirasoroT(c, d))
        | (VirasoroKp2(a, b), VirasoroKp2(c, d))
        | (SuperVir(a, b), SuperVir(c, d)) => vec![(*a, *c), (*b, *d)],
        (AffineVerma(a), AffineVerma(c)) | (OspMod(a), OspMod(c)) => vec![(*a, *c)],
        (Pair(l, r), Pair(l2, r2)) => {
            let mut v = zip_slots(l, l2)?;
            v.extend(zip_slots(r, r2)?);
            v
        }
        _ => return None,
    };
    Some(pairs)
}

/// `summand(r) ⊠ x` as a single template when it is simple for every `r`.
///
/// Each slot fuses by the range `|a-c|+1 .. a+c-1`, which has one element
/// exactly when `min(a, c) = 1`.
fn fuse_template(t: &LabelTemplate, x: &SimpleLabel) -> Option<LabelTemplate> {
    let slots = zip_slots(t, x)?;
    let mut fused = Vec::with_capacity(slots.len());
    for (a, c) in slots {
        let idx = if a.is_constant() {
            let a0 = a.offset;
            if a0 == 1 || c == 1 {
                AffineIndex::constant(a0.max(i64::from(c)))
            } else {
                return None;
            }
        } else if a == AffineIndex::constant(1) {
            AffineIndex::constant(i64::from(c))
        } else if c == 1 {
            a
        } else {
            return None;
        };
        fused.push(idx);
    }
    let next = std::cell::Cell::new(0);
    Some(t.map_indices(&|_| {
        let k = next.get();
        next.set(k + 1);
        fused[k]
    }))
}

/// How induced modules are named.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InducedNaming {
    /// `Lk(n,1)⊗Lt(m,1) ↦ S(n,m)`.
    Supervir,
    /// `V(1)⊗Lt(n,1) ↦ M(n)`.
    Osp,
    /// Induced modules keep the label of the base simple.
    Plain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraObject {
    pub name: String,
    pub base: CategorySpec,
    pub summand: LabelTemplate,
    pub naming: InducedNaming,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CategoryRef {
    Name(String),
    Doc(serde_json::Value),
}

#[derive(Deserialize)]
struct AlgebraDoc {
    name: String,
    base_category: CategoryRef,
    summand_rule: String,
    #[serde(default = "plain")]
    induced_naming: InducedNaming,
}

fn plain() -> InducedNaming {
    InducedNaming::Plain
}

impl AlgebraObject {
    /// Checks that every summand is a label of the base category with
    /// indices at least 1, and that the first summand is the unit.
    pub fn new(
        name: impl Into<String>,
        base: CategorySpec,
        summand: LabelTemplate,
        naming: InducedNaming,
    ) -> Result<Self, InductionError> {
        let alg = AlgebraObject {
            name: name.into(),
            base,
            summand,
            naming,
        };
        if alg.summand.indices().iter().any(|i| i.slope < 0 || i.at(1) < 1) {
            return Err(InductionError::InvalidAlgebra(format!(
                "template {} has indices below 1",
                alg.summand
            )));
        }
        let first = instantiate(&alg.summand, 1).expect("indices checked");
        if first != alg.base.unit() {
            return Err(InductionError::InvalidAlgebra(format!(
                "first summand {first} is not the unit {}",
                alg.base.unit()
            )));
        }
        for r in 1..=3 {
            let x = instantiate(&alg.summand, r).expect("indices checked");
            if !alg.base.contains(&x) {
                return Err(InductionError::InvalidAlgebra(format!(
                    "summand {x} is not in {}",
                    alg.base.name
                )));
            }
        }
        Ok(alg)
    }

    /// `⊕_r Lk(1,r)⊗Lt(1,r)`, the super-Virasoro coset extension.
    pub fn svir_ext() -> Self {
        AlgebraObject::new(
            "svir-ext",
            CategorySpec::builtin("deligne(virasoro-kp2,virasoro-t)").expect("builtin"),
            parse_template("Lk(1,r)⊗Lt(1,r)").expect("literal"),
            InducedNaming::Supervir,
        )
        .expect("valid builtin")
    }

    /// `⊕_r V(r)⊗Lt(1,r)`, the affine osp(1|2) coset extension.
    pub fn osp_ext() -> Self {
        AlgebraObject::new(
            "osp-ext",
            CategorySpec::builtin("deligne(kl-sl2,virasoro-t)").expect("builtin"),
            parse_template("V(r)⊗Lt(1,r)").expect("literal"),
            InducedNaming::Osp,
        )
        .expect("valid builtin")
    }

    pub fn by_name(name: &str) -> Result<Self, InductionError> {
        match name {
            "svir-ext" => Ok(AlgebraObject::svir_ext()),
            "osp-ext" => Ok(AlgebraObject::osp_ext()),
            _ => Err(InductionError::InvalidAlgebra(format!("unknown algebra {name:?}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InductionError> {
        let doc: AlgebraDoc =
            serde_json::from_str(text).map_err(|e| InductionError::InvalidAlgebra(e.to_string()))?;
        let base = match doc.base_category {
            CategoryRef::Name(n) => CategorySpec::builtin(&n)?,
            CategoryRef::Doc(v) => CategorySpec::from_json(&v.to_string())?,
        };
        let summand = parse_template(&doc.summand_rule)?;
        AlgebraObject::new(doc.name, base, summand, doc.induced_naming)
    }

    pub fn summand(&self, r: u32) -> SimpleLabel {
        instantiate(&self.summand, r).expect("indices are at least 1 for r >= 1")
    }

    /// Parity of the `r`-th summand: `(r-1) mod 2` for the super-algebra
    /// namings, even otherwise.
    pub fn summand_parity(&self, r: u32) -> Parity {
        match self.naming {
            InducedNaming::Supervir | InducedNaming::Osp => Parity::from_bit((r + 1) % 2),
            InducedNaming::Plain => Parity::Even,
        }
    }

    /// The category the induced local modules are named in, if any.
    pub fn induced_category(&self) -> Option<CategorySpec> {
        match self.naming {
            InducedNaming::Supervir => Some(CategorySpec::builtin("supervir").expect("builtin")),
            InducedNaming::Osp => Some(CategorySpec::builtin("osp").expect("builtin")),
            InducedNaming::Plain => None,
        }
    }

    pub fn induced_label(&self, base: &SimpleLabel) -> Option<SimpleLabel> {
        match (self.naming, base) {
            (InducedNaming::Supervir, Label::Pair(l, r)) => match (&**l, &**r) {
                (Label::VirasoroKp2(n, 1), Label::VirasoroT(m, 1)) if (n + m) % 2 == 0 => {
                    Some(Label::SuperVir(*n, *m))
                }
                _ => None,
            },
            (InducedNaming::Osp, Label::Pair(l, r)) => match (&**l, &**r) {
                (Label::AffineVerma(1), Label::VirasoroT(n, 1)) if n % 2 == 1 => Some(Label::OspMod(*n)),
                _ => None,
            },
            (InducedNaming::Plain, _) => Some(base.clone()),
            _ => None,
        }
    }

    /// Inverse of [`AlgebraObject::induced_label`].
    pub fn base_of(&self, induced: &SimpleLabel) -> Option<SimpleLabel> {
        match (self.naming, induced) {
            (InducedNaming::Supervir, Label::SuperVir(n, m)) => {
                Some(Label::pair(Label::VirasoroKp2(*n, 1), Label::VirasoroT(*m, 1)))
            }
            (InducedNaming::Osp, Label::OspMod(n)) => {
                Some(Label::pair(Label::AffineVerma(1), Label::VirasoroT(*n, 1)))
            }
            (InducedNaming::Plain, x) => Some(x.clone()),
            _ => None,
        }
    }

    fn require(&self, x: &SimpleLabel) -> Result<(), InductionError> {
        if self.base.contains(x) {
            Ok(())
        } else {
            Err(CatError::ForeignLabel {
                label: x.to_string(),
                category: self.base.name.clone(),
            }
            .into())
        }
    }
}

/// `F(base) = A ⊠ base`, restricted to the base category summand by summand.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedModule {
    pub algebra: AlgebraObject,
    pub base: SimpleLabel,
}

impl InducedModule {
    /// `summand(r) ⊠ base`.
    pub fn restriction(&self, r: u32) -> FusionElement {
        self.algebra
            .base
            .fusion(&self.algebra.summand(r), &self.base)
            .expect("both labels are in the base category")
    }
}

pub fn induce(alg: &AlgebraObject, base: &SimpleLabel) -> Result<InducedModule, InductionError> {
    alg.require(base)?;
    Ok(InducedModule {
        algebra: alg.clone(),
        base: base.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalityVerdict {
    Local,
    NonLocal { witness: u32 },
    /// No closed form was available and no counterexample was found up to
    /// the given summand.
    Undecidable { checked_up_to: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalityCertificate {
    /// The monodromy exponent against `summand(r)` as a polynomial in `r`,
    /// when it is parameter-free.
    pub exponent_family: Option<IntPoly>,
    /// Coefficients in `r` (lowest degree first) when a closed form exists.
    pub coefficients: Option<Vec<RatFunc>>,
    pub verdict: LocalityVerdict,
}

impl LocalityCertificate {
    pub fn is_local(&self) -> bool {
        self.verdict == LocalityVerdict::Local
    }
}

/// Coefficients of the quadratic through `(1, e1), (2, e2), (3, e3)`.
fn quadratic_through(e: [&RatFunc; 3]) -> [RatFunc; 3] {
    let d1 = e[1] - e[0];
    let d2 = &(e[2] - &e[1].scale(&Rat::from_int(2))) + e[0];
    let c2 = d2.scale(&Rat::frac(1, 2));
    let c1 = &d1 - &d2.scale(&Rat::frac(3, 2));
    let c0 = &(e[0] - &d1) + &d2;
    [c0, c1, c2]
}

fn eval_coeffs(c: &[RatFunc], r: u32) -> RatFunc {
    let x = Rat::from_int(i64::from(r));
    c.iter()
        .rev()
        .fold(RatFunc::zero(), |acc, ci| &acc.scale(&x) + ci)
}

/// Decides whether `F(base)` is local, i.e. whether the monodromy of `base`
/// with every summand of the algebra is trivial.
pub fn locality(alg: &AlgebraObject, base: &SimpleLabel) -> Result<LocalityCertificate, InductionError> {
    locality_with(alg, base, DEFAULT_LOCALITY_TRUNCATION)
}

/// As [`locality`], with the truncation used when no closed form exists.
pub fn locality_with(
    alg: &AlgebraObject,
    base: &SimpleLabel,
    truncate: u32,
) -> Result<LocalityCertificate, InductionError> {
    alg.require(base)?;
    let p = alg.base.base;
    let wb = label_weight(p, base);
    if let Some(fused) = fuse_template(&alg.summand, base) {
        // Weights are quadratic in the indices, so the exponent is a
        // quadratic polynomial in r.
        let exponent_at = |r: u32| -> Option<RatFunc> {
            let z = instantiate(&fused, r)?;
            Some(&(&label_weight(p, &z) - &wb) - &label_weight(p, &alg.summand(r)))
        };
        let values: Option<Vec<RatFunc>> = (1..=5).map(exponent_at).collect();
        if let Some(values) = values {
            let coeffs = quadratic_through([&values[0], &values[1], &values[2]]);
            debug_assert!((4..=5).all(|r| eval_coeffs(&coeffs, r) == values[r as usize - 1]));
            let constants: Option<Vec<Rat>> = coeffs.iter().map(RatFunc::as_constant).collect();
            let (family, verdict) = match constants {
                Some(c) => {
                    let poly = IntPoly::new(c);
                    let verdict = match poly.first_non_integer() {
                        None => LocalityVerdict::Local,
                        Some(r) => LocalityVerdict::NonLocal { witness: r as u32 },
                    };
                    (Some(poly), verdict)
                }
                None => {
                    // A quadratic taking integer constant values at r = 1..3
                    // has constant coefficients, so some r <= 3 fails.
                    let witness = (1..=3)
                        .find(|&r| ExponentStatus::of(&values[r as usize - 1]) != ExponentStatus::Integer)
                        .expect("non-constant quadratic fails at one of three points");
                    (None, LocalityVerdict::NonLocal { witness })
                }
            };
            return Ok(LocalityCertificate {
                exponent_family: family,
                coefficients: Some(coeffs.to_vec()),
                verdict,
            });
        }
    }

    for r in 1..=truncate {
        let a = alg.summand(r);
        let wa = label_weight(p, &a);
        let fused = alg.base.fusion(&a, base)?;
        for (z, _) in fused.terms() {
            let e = &(&label_weight(p, z) - &wb) - &wa;
            if ExponentStatus::of(&e) != ExponentStatus::Integer {
                return Ok(LocalityCertificate {
                    exponent_family: None,
                    coefficients: None,
                    verdict: LocalityVerdict::NonLocal { witness: r },
                });
            }
        }
    }
    Ok(LocalityCertificate {
        exponent_family: None,
        coefficients: None,
        verdict: LocalityVerdict::Undecidable { checked_up_to: truncate },
    })
}

/// Default sample point for selecting the minimum-weight summand.
pub fn default_sample() -> Rat {
    Rat::frac(355, 113)
}

/// The summand of lowest weight among `r = 1..=truncate`, chosen by
/// evaluating at `sample` (smallest `r` on ties), with its exact weight.
pub fn min_weight_summand(
    module: &InducedModule,
    sample: &Rat,
    truncate: u32,
) -> Result<(u32, RatFunc), InductionError> {
    let p = module.algebra.base.base;
    let mut best: Option<(u32, Rat, RatFunc)> = None;
    for r in 1..=truncate {
        for (z, _) in module.restriction(r).terms() {
            let w = label_weight(p, z);
            let v = w.eval(sample)?;
            if best.as_ref().is_none_or(|(_, bv, _)| v < *bv) {
                best = Some((r, v, w));
            }
        }
    }
    match best {
        Some((r, _, _)) if r == truncate => Err(InductionError::TruncationTooSmall(truncate)),
        Some((r, _, w)) => Ok((r, w)),
        None => Err(InductionError::TruncationTooSmall(truncate)),
    }
}

/// `dim Hom(F(base1), F(base2)) = Σ_r dim Hom(base1, summand(r) ⊠ base2)`.
///
/// A slot of `summand(r)` with index `a(r)` fused with index `c2` yields
/// indices `>= |a(r) - c2| + 1`, so it can reach `c1` only while
/// `a(r) <= c1 + c2 - 1`. Any growing slot therefore bounds the support.
pub fn frobenius_dim(alg: &AlgebraObject, base1: &SimpleLabel, base2: &SimpleLabel) -> Result<u64, InductionError> {
    alg.require(base1)?;
    alg.require(base2)?;
    let s2 = zip_slots(&alg.summand, base2).expect("same shape as the base category");
    let s1 = zip_slots(&alg.summand, base1).expect("same shape as the base category");
    let bound = s2
        .iter()
        .zip(&s1)
        .filter(|((a, _), _)| a.slope > 0)
        .map(|((a, c2), (_, c1))| (i64::from(*c1) + i64::from(*c2) - 1 - a.offset).div_euclid(a.slope))
        .min()
        .ok_or_else(|| InductionError::InfiniteSupport(alg.summand.to_string()))?;
    let mut total = 0;
    for r in 1..=bound.max(0) as u32 {
        total += alg.base.fusion(&alg.summand(r), base2)?.multiplicity(base1);
    }
    Ok(total)
}

fn require_local(alg: &AlgebraObject, base: &SimpleLabel) -> Result<(), InductionError> {
    if locality(alg, base)?.is_local() {
        Ok(())
    } else {
        Err(InductionError::NotLocal(base.to_string()))
    }
}

/// `F(base1) ⊠ F(base2)` in the category of local modules, expressed in
/// induced labels. For the built-in algebras this uses the fusion rules of
/// the super-Virasoro and osp(1|2) categories directly.
pub fn induced_fusion(
    alg: &AlgebraObject,
    base1: &SimpleLabel,
    base2: &SimpleLabel,
) -> Result<FusionElement, InductionError> {
    require_local(alg, base1)?;
    require_local(alg, base2)?;
    match alg.induced_category() {
        Some(cat) => {
            let name = |b: &SimpleLabel| alg.induced_label(b).ok_or_else(|| InductionError::Unnamed(b.to_string()));
            Ok(cat.fusion(&name(base1)?, &name(base2)?)?)
        }
        None => Ok(alg.base.fusion(base1, base2)?),
    }
}

/// Compares two restrictions of `F(base1) ⊠ F(base2)` to the base category,
/// on labels with every index at most `truncate`:
///
/// * `⊕_r (summand(r) ⊠ base1) ⊠ base2`, computed in the base category;
/// * `⊕_{z ∈ induced_fusion} ⊕_r summand(r) ⊠ base_of(z)`.
pub fn restriction_oracle_check(
    alg: &AlgebraObject,
    base1: &SimpleLabel,
    base2: &SimpleLabel,
    truncate: u32,
) -> Result<bool, InductionError> {
    let induced = induced_fusion(alg, base1, base2)?;
    restrictions_agree(alg, base1, base2, &induced, truncate)
}

/// The comparison behind [`restriction_oracle_check`] for a proposed
/// product `induced` of `F(base1)` and `F(base2)`.
pub fn restrictions_agree(
    alg: &AlgebraObject,
    base1: &SimpleLabel,
    base2: &SimpleLabel,
    induced: &FusionElement,
    truncate: u32,
) -> Result<bool, InductionError> {
    let min_offset = alg.summand.indices().iter().map(|i| i.offset).min().unwrap_or(0);
    let reach = truncate + base1.max_index() + base2.max_index() + min_offset.unsigned_abs() as u32;
    let keep = |x: &SimpleLabel| x.max_index() <= truncate;
    let cat = &alg.base;

    let mut direct = FusionElement::zero();
    for r in 1..=reach {
        for (x, mx) in cat.fusion(&alg.summand(r), base1)?.terms() {
            for (y, my) in cat.fusion(x, base2)?.filtered(keep).terms() {
                direct.add_term(y.clone(), mx * my);
            }
        }
    }

    let mut via_induced = FusionElement::zero();
    for (z, mz) in induced.terms() {
        let b = alg.base_of(z).ok_or_else(|| InductionError::Unnamed(z.to_string()))?;
        for r in 1..=reach {
            for (y, my) in cat.fusion(&alg.summand(r), &b)?.filtered(keep).terms() {
                via_induced.add_term(y.clone(), mz * my);
            }
        }
    }
    Ok(direct == via_induced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(n: u32, m: u32) -> SimpleLabel {
        Label::pair(Label::VirasoroKp2(n, 1), Label::VirasoroT(m, 1))
    }

    fn osp(n: u32) -> SimpleLabel {
        Label::pair(Label::AffineVerma(1), Label::VirasoroT(n, 1))
    }

    #[test]
    fn affine_index_text() {
        for text in ["r", "2r+1", "3", "r-1", "-r+4"] {
            let i: AffineIndex = text.parse().unwrap();
            assert_eq!(i.to_string(), text);
        }
        assert_eq!("2*r + 1".parse::<AffineIndex>().unwrap(), AffineIndex { slope: 2, offset: 1 });
        assert!("r2".parse::<AffineIndex>().is_err());
    }

    #[test]
    fn restriction_examples() {
        let a = AlgebraObject::svir_ext();
        let unit = induce(&a, &sv(1, 1)).unwrap();
        assert_eq!(unit.restriction(1), FusionElement::simple(sv(1, 1)));
        assert_eq!(
            unit.restriction(4),
            FusionElement::simple(Label::pair(Label::VirasoroKp2(1, 4), Label::VirasoroT(1, 4)))
        );
        let m = induce(&a, &sv(3, 5)).unwrap();
        assert_eq!(
            m.restriction(2),
            FusionElement::simple(Label::pair(Label::VirasoroKp2(3, 2), Label::VirasoroT(5, 2)))
        );
        let o = induce(&AlgebraObject::osp_ext(), &osp(3)).unwrap();
        assert_eq!(
            o.restriction(3),
            FusionElement::simple(Label::pair(Label::AffineVerma(3), Label::VirasoroT(3, 3)))
        );
        assert!(induce(&a, &osp(1)).is_err());
    }

    #[test]
    fn summand_parities_alternate() {
        let a = AlgebraObject::svir_ext();
        let got: Vec<Parity> = (1..=4).map(|r| a.summand_parity(r)).collect();
        assert_eq!(got, [Parity::Even, Parity::Odd, Parity::Even, Parity::Odd]);
    }

    #[test]
    fn locality_families() {
        let a = AlgebraObject::svir_ext();
        let c = locality(&a, &sv(2, 2)).unwrap();
        assert!(c.is_local());
        assert_eq!(c.exponent_family.unwrap().to_string(), "-(r-1)");

        let c = locality(&a, &sv(2, 1)).unwrap();
        assert_eq!(c.verdict, LocalityVerdict::NonLocal { witness: 2 });
        assert_eq!(c.exponent_family.unwrap().to_string(), "-(r-1)/2");

        let o = AlgebraObject::osp_ext();
        for n in 1..=7 {
            assert_eq!(locality(&o, &osp(n)).unwrap().is_local(), n % 2 == 1);
        }
    }

    #[test]
    fn locality_without_closed_form() {
        let a = AlgebraObject::svir_ext();
        let b = Label::pair(Label::VirasoroKp2(1, 2), Label::VirasoroT(1, 2));
        let c = locality(&a, &b).unwrap();
        assert!(c.coefficients.is_none());
        assert!(matches!(c.verdict, LocalityVerdict::NonLocal { .. }));
    }

    #[test]
    fn minimum_weights() {
        let s = default_sample();
        let a = AlgebraObject::svir_ext();
        let (r, w) = min_weight_summand(&induce(&a, &sv(2, 2)).unwrap(), &s, 20).unwrap();
        assert_eq!(r, 2);
        assert_eq!(w, RatFunc::parse("3*s/8 + 3/(8*s) - 3/4", "s").unwrap());

        let (r, w) = min_weight_summand(&induce(&AlgebraObject::osp_ext(), &osp(3)).unwrap(), &s, 20).unwrap();
        assert_eq!(r, 1);
        assert_eq!(w, RatFunc::parse("1/s", "s").unwrap());

        let (r, w) = min_weight_summand(&induce(&a, &sv(1, 1)).unwrap(), &s, 20).unwrap();
        assert_eq!((r, w), (1, RatFunc::zero()));

        assert_eq!(
            min_weight_summand(&induce(&a, &sv(9, 9)).unwrap(), &s, 9),
            Err(InductionError::TruncationTooSmall(9))
        );
    }

    #[test]
    fn frobenius_examples() {
        let a = AlgebraObject::svir_ext();
        assert_eq!(frobenius_dim(&a, &sv(2, 2), &sv(2, 2)).unwrap(), 1);
        assert_eq!(frobenius_dim(&a, &sv(2, 1), &sv(3, 1)).unwrap(), 0);
        assert_eq!(frobenius_dim(&a, &sv(1, 1), &sv(1, 1)).unwrap(), 1);
        // a summand of the algebra itself maps to the algebra
        let a2 = Label::pair(Label::VirasoroKp2(1, 2), Label::VirasoroT(1, 2));
        assert_eq!(frobenius_dim(&a, &a2, &sv(1, 1)).unwrap(), 1);
    }

    #[test]
    fn induced_fusion_tables() {
        let a = AlgebraObject::svir_ext();
        let f = induced_fusion(&a, &sv(2, 2), &sv(3, 5)).unwrap();
        let expect: Vec<SimpleLabel> = [(2, 4), (2, 6), (4, 4), (4, 6)]
            .iter()
            .map(|&(n, m)| Label::SuperVir(n, m))
            .collect();
        assert_eq!(f.labels(), expect);
        let f = induced_fusion(&a, &sv(2, 2), &sv(1, 1)).unwrap();
        assert_eq!(f.labels(), vec![Label::SuperVir(2, 2)]);

        let o = AlgebraObject::osp_ext();
        assert_eq!(induced_fusion(&o, &osp(5), &osp(1)).unwrap().labels(), vec![Label::OspMod(5)]);
        assert_eq!(
            induced_fusion(&o, &osp(3), &osp(3)).unwrap().labels(),
            vec![Label::OspMod(1), Label::OspMod(3), Label::OspMod(5)]
        );
        assert!(matches!(
            induced_fusion(&a, &sv(2, 1), &sv(1, 1)),
            Err(InductionError::NotLocal(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let a = AlgebraObject::svir_ext();
        assert!(restriction_oracle_check(&a, &sv(2, 2), &sv(2, 2), 10).unwrap());
        assert!(restriction_oracle_check(&a, &sv(3, 1), &sv(1, 1), 10).unwrap());
        let o = AlgebraObject::osp_ext();
        assert!(restriction_oracle_check(&o, &osp(3), &osp(3), 10).unwrap());
    }

    #[test]
    fn oracle_detects_a_wrong_table() {
        let a = AlgebraObject::svir_ext();
        let (b1, b2) = (sv(2, 2), sv(3, 5));
        let right = induced_fusion(&a, &b1, &b2).unwrap();
        assert!(restrictions_agree(&a, &b1, &b2, &right, 10).unwrap());

        let mut extra = right.clone();
        extra.add_term(Label::SuperVir(2, 2), 1);
        assert!(!restrictions_agree(&a, &b1, &b2, &extra, 10).unwrap());

        let swapped = FusionElement::from_terms(right.terms().map(|(z, m)| match z {
            Label::SuperVir(n, k) => (Label::SuperVir(*k, *n), m),
            other => (other.clone(), m),
        }));
        assert!(!restrictions_agree(&a, &b1, &b2, &swapped, 10).unwrap());
    }

    #[test]
    fn algebra_json() {
        let a = AlgebraObject::from_json(
            r#"{"name":"mine","base_category":"deligne(virasoro-kp2,virasoro-t)","summand_rule":"Lk(1,r)⊗Lt(1,r)","induced_naming":"supervir"}"#,
        )
        .unwrap();
        assert_eq!(a.summand, AlgebraObject::svir_ext().summand);
        let bad = AlgebraObject::from_json(
            r#"{"name":"x","base_category":"deligne(virasoro-kp2,virasoro-t)","summand_rule":"Lk(2,r)⊗Lt(1,r)"}"#,
        );
        assert!(matches!(bad, Err(InductionError::InvalidAlgebra(_))));
    }
}
