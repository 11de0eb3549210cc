//! Simple-object labels, conformal weights, twists and fusion rules for the
//! generic-level Virasoro, affine sl2, N=1 super-Virasoro and osp(1|2)
//! categories, plus their Deligne products.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{Rat, RatFunc};
use crate::fusion::FusionElement;

/// Largest index accepted by default.
pub const DEFAULT_MAX_INDEX: u32 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatError {
    #[error("label {label} does not belong to category {category}")]
    ForeignLabel { label: String, category: String },
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
    #[error("malformed category document: {0}")]
    Json(String),
}

/// Label of a simple object, generic over the index type so that the same
/// shape serves concrete labels (`u32`) and `r`-dependent templates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label<I> {
    /// `L(c_t, h_{r,s})`.
    VirasoroT(I, I),
    /// `L(c_{k+2}, h_{r,s})`.
    VirasoroKp2(I, I),
    /// Affine sl2 Verma-type module `V^k(λ_r)`, highest weight `(r-1)ω`.
    AffineVerma(I),
    /// `S(c_s, Δ_{n,m})`.
    SuperVir(I, I),
    /// `M^k(n)`.
    OspMod(I),
    /// Deligne product of two simples.
    Pair(Box<Label<I>>, Box<Label<I>>),
}

pub type SimpleLabel = Label<u32>;

impl<I> Label<I> {
    pub fn pair(left: Label<I>, right: Label<I>) -> Self {
        Label::Pair(Box::new(left), Box::new(right))
    }

    /// All indices, left to right.
    pub fn indices(&self) -> Vec<&I> {
        match self {
            Label::VirasoroT(a, b) | Label::VirasoroKp2(a, b) | Label::SuperVir(a, b) => vec![a, b],
            Label::AffineVerma(a) | Label::OspMod(a) => vec![a],
            Label::Pair(l, r) => {
                let mut v = l.indices();
                v.extend(r.indices());
                v
            }
        }
    }

    /// Applies `f` to every index.
    pub fn map_indices<J>(&self, f: &impl Fn(&I) -> J) -> Label<J> {
        match self {
            Label::VirasoroT(a, b) => Label::VirasoroT(f(a), f(b)),
            Label::VirasoroKp2(a, b) => Label::VirasoroKp2(f(a), f(b)),
            Label::AffineVerma(a) => Label::AffineVerma(f(a)),
            Label::SuperVir(a, b) => Label::SuperVir(f(a), f(b)),
            Label::OspMod(a) => Label::OspMod(f(a)),
            Label::Pair(l, r) => Label::pair(l.map_indices(f), r.map_indices(f)),
        }
    }

    fn head(&self) -> &'static str {
        match self {
            Label::VirasoroT(..) => "Lt",
            Label::VirasoroKp2(..) => "Lk",
            Label::AffineVerma(..) => "V",
            Label::SuperVir(..) => "S",
            Label::OspMod(..) => "M",
            Label::Pair(..) => "",
        }
    }
}

impl SimpleLabel {
    pub fn vir_t(r: u32, s: u32) -> Self {
        Label::VirasoroT(r, s)
    }

    pub fn vir_kp2(r: u32, s: u32) -> Self {
        Label::VirasoroKp2(r, s)
    }

    pub fn verma(r: u32) -> Self {
        Label::AffineVerma(r)
    }

    pub fn svir(n: u32, m: u32) -> Self {
        Label::SuperVir(n, m)
    }

    pub fn osp(n: u32) -> Self {
        Label::OspMod(n)
    }

    /// Positivity of indices and the parity constraints on `S(n,m)` and
    /// `M(n)`.
    pub fn check(&self) -> Result<(), CatError> {
        if self.indices().iter().any(|&&i| i == 0) {
            return Err(CatError::InvalidLabel(format!("{self}: indices start at 1")));
        }
        match self {
            Label::SuperVir(n, m) if (n + m) % 2 == 1 => {
                Err(CatError::InvalidLabel(format!("{self}: n+m must be even")))
            }
            Label::OspMod(n) if n % 2 == 0 => {
                Err(CatError::InvalidLabel(format!("{self}: n must be odd")))
            }
            Label::Pair(l, r) => {
                l.check()?;
                r.check()
            }
            _ => Ok(()),
        }
    }

    pub fn max_index(&self) -> u32 {
        self.indices().into_iter().copied().max().unwrap_or(0)
    }

    pub fn min_index(&self) -> u32 {
        self.indices().into_iter().copied().min().unwrap_or(0)
    }
}

impl<I: fmt::Display> fmt::Display for Label<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pair(l, r) => {
                if matches!(**l, Label::Pair(..)) {
                    write!(f, "({l})⊗{r}")
                } else {
                    write!(f, "{l}⊗{r}")
                }
            }
            _ => {
                let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
                write!(f, "{}({})", self.head(), idx.join(","))
            }
        }
    }
}

fn split_top_level(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (pos, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '⊗' if depth == 0 => return Some((&text[..pos], &text[pos + ch.len_utf8()..])),
            _ => {}
        }
    }
    None
}

fn strip_outer_parens(text: &str) -> Option<&str> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some(inner)
}

/// Parses `Lt(r,s)`, `Lk(r,s)`, `V(r)`, `S(n,m)`, `M(n)` and `A⊗B`
/// (right-nested; parenthesize a pair on the left).
pub fn parse_label<I: FromStr>(text: &str) -> Result<Label<I>, CatError> {
    let text = text.trim();
    let bad = || CatError::InvalidLabel(text.to_string());
    if let Some((l, r)) = split_top_level(text) {
        return Ok(Label::pair(parse_label(l)?, parse_label(r)?));
    }
    if let Some(inner) = strip_outer_parens(text) {
        return parse_label(inner);
    }
    let open = text.find('(').ok_or_else(bad)?;
    let head = text[..open].trim();
    let body = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let idx: Vec<I> = body
        .split(',')
        .map(|p| p.trim().parse::<I>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let mut it = idx.into_iter();
    let label = match (head, it.len()) {
        ("Lt", 2) => Label::VirasoroT(it.next().unwrap(), it.next().unwrap()),
        ("Lk", 2) => Label::VirasoroKp2(it.next().unwrap(), it.next().unwrap()),
        ("V", 1) => Label::AffineVerma(it.next().unwrap()),
        ("S", 2) => Label::SuperVir(it.next().unwrap(), it.next().unwrap()),
        ("M", 1) => Label::OspMod(it.next().unwrap()),
        _ => return Err(bad()),
    };
    Ok(label)
}

impl FromStr for SimpleLabel {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let label: SimpleLabel = parse_label(s)?;
        label.check()?;
        Ok(label)
    }
}

impl Serialize for SimpleLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// The formal variable weights are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    T,
    S,
}

impl Param {
    pub fn var_name(self) -> &'static str {
        match self {
            Param::T => "t",
            Param::S => "s",
        }
    }

    /// `t`, `s` and `k+2` as rational functions of this parameter.
    pub fn vars(self) -> ParamVars {
        let x = RatFunc::var();
        let one = RatFunc::one();
        let two = RatFunc::from_int(2);
        match self {
            Param::T => {
                let two_t_minus_one = &(&two * &x) - &one;
                ParamVars {
                    t: x.clone(),
                    s: two_t_minus_one.recip().expect("nonzero"),
                    kp2: x.checked_div(&two_t_minus_one).expect("nonzero"),
                }
            }
            Param::S => ParamVars {
                t: (&x + &one).checked_div(&(&two * &x)).expect("nonzero"),
                s: x.clone(),
                kp2: (&x + &one).scale(&Rat::frac(1, 2)),
            },
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.var_name())
    }
}

impl FromStr for Param {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "t" => Ok(Param::T),
            "s" => Ok(Param::S),
            _ => Err(CatError::Json(format!("unknown parameter {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamVars {
    pub t: RatFunc,
    pub s: RatFunc,
    pub kp2: RatFunc,
}

/// The substitutions linking `k`, `t`, `s` and `k+2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamChain {
    /// `k = (2-3t)/(2t-1)`.
    pub k_of_t: RatFunc,
    /// `s = 2k+3`.
    pub s_of_k: RatFunc,
    /// `t = (s+1)/(2s)`.
    pub t_of_s: RatFunc,
    /// `k+2 = (s+1)/2`.
    pub kp2_of_s: RatFunc,
}

/// Builds the chain and checks `s(k(t)) = 1/(2t-1)`, `t(s(k(t))) = t` and
/// `k(t(s)) + 2 = (s+1)/2`.
pub fn param_chain() -> ParamChain {
    let x = RatFunc::var();
    let k_of_t = RatFunc::parse("(2-3*t)/(2*t-1)", "t").expect("literal");
    let s_of_k = RatFunc::parse("2*k+3", "k").expect("literal");
    let t_of_s = RatFunc::parse("(s+1)/(2*s)", "s").expect("literal");
    let kp2_of_s = RatFunc::parse("(s+1)/2", "s").expect("literal");

    let s_of_t = s_of_k.substitute(&k_of_t).expect("non-degenerate");
    assert_eq!(s_of_t, RatFunc::parse("1/(2*t-1)", "t").expect("literal"));
    assert_eq!(t_of_s.substitute(&s_of_t).expect("non-degenerate"), x);
    let k_of_s = k_of_t.substitute(&t_of_s).expect("non-degenerate");
    assert_eq!(&k_of_s + &RatFunc::from_int(2), kp2_of_s);
    ParamChain {
        k_of_t,
        s_of_k,
        t_of_s,
        kp2_of_s,
    }
}

/// `h_{r,s}(x) = (r²-1)/4·x - (rs-1)/2 + (s²-1)/4·x⁻¹`.
pub fn h_weight(r: u32, s: u32, x: &RatFunc) -> RatFunc {
    let (r, s) = (i64::from(r), i64::from(s));
    let inv = x.recip().expect("parameter is nonzero");
    &(&x.scale(&Rat::frac(r * r - 1, 4)) - &RatFunc::constant(Rat::frac(r * s - 1, 2)))
        + &inv.scale(&Rat::frac(s * s - 1, 4))
}

/// `Δ_{n,m}(s) = (n²-1)/8·s + (m²-1)/8·s⁻¹ - (mn-1)/4`.
pub fn delta_weight(n: u32, m: u32, s: &RatFunc) -> RatFunc {
    let (n, m) = (i64::from(n), i64::from(m));
    let inv = s.recip().expect("parameter is nonzero");
    &(&s.scale(&Rat::frac(n * n - 1, 8)) - &RatFunc::constant(Rat::frac(m * n - 1, 4)))
        + &inv.scale(&Rat::frac(m * m - 1, 8))
}

/// Indices `|a-b|+1, |a-b|+3, ..., a+b-1`.
pub fn parity_range(a: u32, b: u32) -> impl Iterator<Item = u32> {
    (a.abs_diff(b) + 1..a + b).step_by(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builtin {
    #[serde(rename = "virasoro-t")]
    VirasoroT,
    #[serde(rename = "virasoro-kp2")]
    VirasoroKp2,
    #[serde(rename = "kl-sl2")]
    KlSl2,
    #[serde(rename = "supervir")]
    SuperVir,
    #[serde(rename = "osp")]
    Osp,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::VirasoroT => "virasoro-t",
            Builtin::VirasoroKp2 => "virasoro-kp2",
            Builtin::KlSl2 => "kl-sl2",
            Builtin::SuperVir => "supervir",
            Builtin::Osp => "osp",
        }
    }

    fn from_name(s: &str) -> Option<Builtin> {
        [
            Builtin::VirasoroT,
            Builtin::VirasoroKp2,
            Builtin::KlSl2,
            Builtin::SuperVir,
            Builtin::Osp,
        ]
        .into_iter()
        .find(|b| b.name() == s)
    }

    /// The parameter a lone category of this family is stated in.
    pub fn natural_param(self) -> Param {
        match self {
            Builtin::VirasoroT => Param::T,
            _ => Param::S,
        }
    }
}

/// Which simples a category contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Builtin {
        kind: Builtin,
        min_index: u32,
        max_index: u32,
    },
    Deligne(Box<Family>, Box<Family>),
}

impl Family {
    pub fn builtin(kind: Builtin) -> Self {
        Family::Builtin {
            kind,
            min_index: 1,
            max_index: DEFAULT_MAX_INDEX,
        }
    }

    pub fn deligne(a: Family, b: Family) -> Self {
        Family::Deligne(Box::new(a), Box::new(b))
    }

    /// Parses `virasoro-t`, `deligne(kl-sl2,virasoro-t)` and so on.
    pub fn parse(name: &str) -> Result<Family, CatError> {
        let name = name.trim();
        if let Some(kind) = Builtin::from_name(name) {
            return Ok(Family::builtin(kind));
        }
        let unknown = || CatError::UnknownCategory(name.to_string());
        let body = name
            .strip_prefix("deligne(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(unknown)?;
        let mut depth = 0i32;
        for (pos, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    return Ok(Family::deligne(
                        Family::parse(&body[..pos])?,
                        Family::parse(&body[pos + 1..])?,
                    ))
                }
                _ => {}
            }
        }
        Err(unknown())
    }

    pub fn name(&self) -> String {
        match self {
            Family::Builtin { kind, .. } => kind.name().to_string(),
            Family::Deligne(a, b) => format!("deligne({},{})", a.name(), b.name()),
        }
    }

    pub fn contains(&self, x: &SimpleLabel) -> bool {
        match (self, x) {
            (Family::Deligne(a, b), Label::Pair(l, r)) => a.contains(l) && b.contains(r),
            (
                Family::Builtin {
                    kind,
                    min_index,
                    max_index,
                },
                _,
            ) => {
                let shape = matches!(
                    (kind, x),
                    (Builtin::VirasoroT, Label::VirasoroT(..))
                        | (Builtin::VirasoroKp2, Label::VirasoroKp2(..))
                        | (Builtin::KlSl2, Label::AffineVerma(..))
                        | (Builtin::SuperVir, Label::SuperVir(..))
                        | (Builtin::Osp, Label::OspMod(..))
                );
                shape
                    && x.check().is_ok()
                    && x.min_index() >= *min_index
                    && x.max_index() <= *max_index
            }
            _ => false,
        }
    }

    pub fn unit(&self) -> SimpleLabel {
        match self {
            Family::Builtin { kind, .. } => match kind {
                Builtin::VirasoroT => Label::VirasoroT(1, 1),
                Builtin::VirasoroKp2 => Label::VirasoroKp2(1, 1),
                Builtin::KlSl2 => Label::AffineVerma(1),
                Builtin::SuperVir => Label::SuperVir(1, 1),
                Builtin::Osp => Label::OspMod(1),
            },
            Family::Deligne(a, b) => Label::pair(a.unit(), b.unit()),
        }
    }

    /// Labels with every index at most `bound`, in increasing order.
    pub fn labels_up_to(&self, bound: u32) -> Vec<SimpleLabel> {
        match self {
            Family::Builtin {
                kind,
                min_index,
                max_index,
            } => {
                let hi = bound.min(*max_index);
                let lo = *min_index;
                let one: Vec<u32> = (lo..=hi).collect();
                let two: Vec<(u32, u32)> = (lo..=hi).flat_map(|a| (lo..=hi).map(move |b| (a, b))).collect();
                let out: Vec<SimpleLabel> = match kind {
                    Builtin::VirasoroT => two.iter().map(|&(a, b)| Label::VirasoroT(a, b)).collect(),
                    Builtin::VirasoroKp2 => two.iter().map(|&(a, b)| Label::VirasoroKp2(a, b)).collect(),
                    Builtin::KlSl2 => one.iter().map(|&a| Label::AffineVerma(a)).collect(),
                    Builtin::SuperVir => two
                        .iter()
                        .filter(|(a, b)| (a + b) % 2 == 0)
                        .map(|&(a, b)| Label::SuperVir(a, b))
                        .collect(),
                    Builtin::Osp => one.iter().filter(|a| *a % 2 == 1).map(|&a| Label::OspMod(a)).collect(),
                };
                out
            }
            Family::Deligne(a, b) => {
                let right = b.labels_up_to(bound);
                a.labels_up_to(bound)
                    .into_iter()
                    .flat_map(|l| right.iter().map(move |r| Label::pair(l.clone(), r.clone())))
                    .collect()
            }
        }
    }

    fn checklist_items(&self) -> [(bool, String); 5] {
        match self {
            Family::Builtin {
                min_index,
                max_index,
                ..
            } => {
                let generic = "generic parameter: the category is semisimple and its simples are \
                               determined by their labels";
                let unit = if *min_index <= 1 {
                    (true, "the unit label has all indices equal to 1 and lies in the index window".to_string())
                } else {
                    (false, format!("index window starts at {min_index}, so the unit is excluded"))
                };
                let fusion = if *max_index >= DEFAULT_MAX_INDEX {
                    (true, "fusion rules stay inside the family".to_string())
                } else {
                    (false, format!("index window ends at {max_index}; fusion products can leave it"))
                };
                [
                    unit,
                    (true, format!("{generic}; sums and summands of objects are objects")),
                    (true, "every object is a finite direct sum of simples".to_string()),
                    fusion,
                    (true, format!("{generic}; images of intertwining maps decompose into simples")),
                ]
            }
            Family::Deligne(a, b) => {
                let (ia, ib) = (a.checklist_items(), b.checklist_items());
                std::array::from_fn(|k| {
                    if ia[k].0 && ib[k].0 {
                        (true, "Deligne product of two factors that both satisfy the condition".to_string())
                    } else {
                        let bad = if ia[k].0 { &ib[k].1 } else { &ia[k].1 };
                        (false, format!("a factor fails: {bad}"))
                    }
                })
            }
        }
    }
}

const CONDITIONS: [&str; 5] = [
    "the unit object belongs to the category",
    "closed under subobjects, quotients and finite direct sums",
    "every object is finitely generated",
    "carries vertex and braided tensor category structure",
    "images of intertwining maps out of pairs of objects are objects",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChecklistItem {
    pub condition: u8,
    pub statement: String,
    pub satisfied: bool,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checklist {
    pub category: String,
    pub items: Vec<ChecklistItem>,
}

impl Checklist {
    pub fn all_satisfied(&self) -> bool {
        self.items.iter().all(|i| i.satisfied)
    }

    pub fn flagged(&self) -> Vec<u8> {
        self.items.iter().filter(|i| !i.satisfied).map(|i| i.condition).collect()
    }
}

/// A ribbon category given by a family of simples and a base parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CategorySpec {
    pub name: String,
    pub base: Param,
    pub family: Family,
}

#[derive(Serialize, Deserialize)]
struct FamilyDoc {
    builtin: String,
    #[serde(default = "one")]
    min_index: u32,
    #[serde(default = "default_max")]
    max_index: u32,
}

fn one() -> u32 {
    1
}

fn default_max() -> u32 {
    DEFAULT_MAX_INDEX
}

#[derive(Serialize, Deserialize)]
struct CategoryDoc {
    name: String,
    base_parameter: Param,
    families: Vec<FamilyDoc>,
}

fn with_window(f: Family, lo: u32, hi: u32) -> Family {
    match f {
        Family::Builtin { kind, .. } => Family::Builtin {
            kind,
            min_index: lo,
            max_index: hi,
        },
        Family::Deligne(a, b) => Family::deligne(with_window(*a, lo, hi), with_window(*b, lo, hi)),
    }
}

impl CategorySpec {
    pub fn new(name: impl Into<String>, base: Param, family: Family) -> Self {
        CategorySpec {
            name: name.into(),
            base,
            family,
        }
    }

    /// A built-in category by name, e.g. `supervir` or
    /// `deligne(virasoro-kp2,virasoro-t)`.
    pub fn builtin(name: &str) -> Result<Self, CatError> {
        let family = Family::parse(name)?;
        let base = match &family {
            Family::Builtin { kind, .. } => kind.natural_param(),
            Family::Deligne(..) => Param::S,
        };
        Ok(CategorySpec::new(family.name(), base, family))
    }

    pub fn from_json(text: &str) -> Result<Self, CatError> {
        let doc: CategoryDoc = serde_json::from_str(text).map_err(|e| CatError::Json(e.to_string()))?;
        let mut parts = Vec::new();
        for f in &doc.families {
            if f.min_index == 0 || f.min_index > f.max_index {
                return Err(CatError::Json(format!(
                    "empty index window [{}, {}]",
                    f.min_index, f.max_index
                )));
            }
            parts.push(with_window(Family::parse(&f.builtin)?, f.min_index, f.max_index));
        }
        let family = match parts.len() {
            1 => parts.pop().expect("one family"),
            2 => {
                let b = parts.pop().expect("two");
                let a = parts.pop().expect("two");
                Family::deligne(a, b)
            }
            n => return Err(CatError::Json(format!("expected 1 or 2 families, got {n}"))),
        };
        Ok(CategorySpec::new(doc.name, doc.base_parameter, family))
    }

    pub fn to_json(&self) -> String {
        let families = match &self.family {
            Family::Deligne(a, b) => vec![a.as_ref(), b.as_ref()],
            f => vec![f],
        };
        let doc = CategoryDoc {
            name: self.name.clone(),
            base_parameter: self.base,
            families: families
                .into_iter()
                .map(|f| {
                    let (min_index, max_index) = match f {
                        Family::Builtin {
                            min_index,
                            max_index,
                            ..
                        } => (*min_index, *max_index),
                        Family::Deligne(..) => (1, DEFAULT_MAX_INDEX),
                    };
                    FamilyDoc {
                        builtin: f.name(),
                        min_index,
                        max_index,
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn contains(&self, x: &SimpleLabel) -> bool {
        self.family.contains(x)
    }

    pub fn unit(&self) -> SimpleLabel {
        self.family.unit()
    }

    pub fn labels_up_to(&self, bound: u32) -> Vec<SimpleLabel> {
        self.family.labels_up_to(bound)
    }

    fn require(&self, x: &SimpleLabel) -> Result<(), CatError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(CatError::ForeignLabel {
                label: x.to_string(),
                category: self.name.clone(),
            })
        }
    }

    /// Lowest conformal weight as a rational function of the base parameter.
    pub fn weight(&self, x: &SimpleLabel) -> Result<RatFunc, CatError> {
        self.require(x)?;
        Ok(weight_in(&self.base.vars(), x))
    }

    pub fn parity(&self, x: &SimpleLabel) -> Result<Parity, CatError> {
        self.require(x)?;
        Ok(parity_of(x))
    }

    /// The twist is `P_X e^{2πi·weight}`: the weight and the parity.
    pub fn twist_exponent(&self, x: &SimpleLabel) -> Result<(RatFunc, Parity), CatError> {
        Ok((self.weight(x)?, self.parity(x)?))
    }

    pub fn fusion(&self, x: &SimpleLabel, y: &SimpleLabel) -> Result<FusionElement, CatError> {
        self.require(x)?;
        self.require(y)?;
        Ok(fuse_labels(x, y))
    }

    pub fn display_weight(&self, w: &RatFunc) -> String {
        w.to_string_in(self.base.var_name())
    }

    pub fn checklist_report(&self) -> Checklist {
        let items = self
            .family
            .checklist_items()
            .into_iter()
            .zip(CONDITIONS)
            .enumerate()
            .map(|(k, ((satisfied, justification), statement))| ChecklistItem {
                condition: k as u8 + 1,
                statement: statement.to_string(),
                satisfied,
                justification,
            })
            .collect();
        Checklist {
            category: self.name.clone(),
            items,
        }
    }
}

/// Weight of any well-formed label in the given parameter, without a
/// membership check.
pub fn label_weight(base: Param, x: &SimpleLabel) -> RatFunc {
    weight_in(&base.vars(), x)
}

fn weight_in(v: &ParamVars, x: &SimpleLabel) -> RatFunc {
    match x {
        Label::VirasoroT(r, s) => h_weight(*r, *s, &v.t),
        Label::VirasoroKp2(r, s) => h_weight(*r, *s, &v.kp2),
        Label::AffineVerma(r) => {
            let r = i64::from(*r);
            v.kp2
                .scale(&Rat::from_int(4))
                .recip()
                .expect("nonzero")
                .scale(&Rat::from_int(r * r - 1))
        }
        Label::SuperVir(n, m) => delta_weight(*n, *m, &v.s),
        Label::OspMod(n) => {
            let n = i64::from(*n);
            v.s.recip().expect("nonzero").scale(&Rat::frac(n * n - 1, 8))
        }
        Label::Pair(l, r) => &weight_in(v, l) + &weight_in(v, r),
    }
}

fn parity_of(x: &SimpleLabel) -> Parity {
    match x {
        Label::SuperVir(n, m) => Parity::from_bit((n + m) / 2 - 1),
        Label::Pair(l, r) => parity_of(l).combine(parity_of(r)),
        _ => Parity::Even,
    }
}

/// Fusion of two labels of the same shape; mismatched shapes fuse to zero.
pub(crate) fn fuse_labels(x: &SimpleLabel, y: &SimpleLabel) -> FusionElement {
    let mut out = FusionElement::zero();
    match (x, y) {
        (Label::VirasoroT(r, s), Label::VirasoroT(r2, s2)) => {
            for a in parity_range(*r, *r2) {
                for b in parity_range(*s, *s2) {
                    out.add_term(Label::VirasoroT(a, b), 1);
                }
            }
        }
        (Label::VirasoroKp2(r, s), Label::VirasoroKp2(r2, s2)) => {
            for a in parity_range(*r, *r2) {
                for b in parity_range(*s, *s2) {
                    out.add_term(Label::VirasoroKp2(a, b), 1);
                }
            }
        }
        (Label::SuperVir(n, m), Label::SuperVir(n2, m2)) => {
            for a in parity_range(*n, *n2) {
                for b in parity_range(*m, *m2) {
                    out.add_term(Label::SuperVir(a, b), 1);
                }
            }
        }
        (Label::AffineVerma(r), Label::AffineVerma(r2)) => {
            for a in parity_range(*r, *r2) {
                out.add_term(Label::AffineVerma(a), 1);
            }
        }
        (Label::OspMod(n), Label::OspMod(n2)) => {
            for a in parity_range(*n, *n2) {
                out.add_term(Label::OspMod(a), 1);
            }
        }
        (Label::Pair(a, b), Label::Pair(a2, b2)) => {
            let left = fuse_labels(a, a2);
            let right = fuse_labels(b, b2);
            for (l, ml) in left.terms() {
                for (r, mr) in right.terms() {
                    out.add_term(Label::pair(l.clone(), r.clone()), ml * mr);
                }
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(text: &str, var: &str) -> RatFunc {
        RatFunc::parse(text, var).unwrap()
    }

    #[test]
    fn label_text_roundtrip() {
        for text in ["Lt(2,3)", "Lk(1,4)", "V(5)", "S(3,1)", "M(7)", "Lk(2,1)⊗Lt(4,1)", "V(1)⊗Lt(3,2)"] {
            let l: SimpleLabel = text.parse().unwrap();
            assert_eq!(l.to_string(), text);
        }
        let nested = SimpleLabel::pair(
            SimpleLabel::pair(Label::VirasoroT(1, 1), Label::AffineVerma(2)),
            Label::OspMod(3),
        );
        assert_eq!(nested.to_string().parse::<SimpleLabel>().unwrap(), nested);
    }

    #[test]
    fn label_constraints() {
        assert!("S(2,1)".parse::<SimpleLabel>().is_err());
        assert!("M(2)".parse::<SimpleLabel>().is_err());
        assert!("Lt(0,1)".parse::<SimpleLabel>().is_err());
        assert!("Q(1)".parse::<SimpleLabel>().is_err());
        assert!("Lt(1)".parse::<SimpleLabel>().is_err());
    }

    #[test]
    fn param_chain_identities() {
        let c = param_chain();
        assert_eq!(c.kp2_of_s.eval(&Rat::one()).unwrap(), Rat::one());
        assert_eq!(c.s_of_k.substitute(&c.k_of_t).unwrap(), rf("1/(2*t-1)", "t"));
    }

    #[test]
    fn vars_agree_across_bases() {
        let vt = Param::T.vars();
        let vs = Param::S.vars();
        // rewriting the s-based expressions in t gives the t-based ones
        let s_in_t = &vt.s;
        assert_eq!(vs.t.substitute(s_in_t).unwrap(), vt.t);
        assert_eq!(vs.kp2.substitute(s_in_t).unwrap(), vt.kp2);
    }

    #[test]
    fn virasoro_weights() {
        let cat = CategorySpec::builtin("virasoro-t").unwrap();
        assert!(cat.weight(&Label::VirasoroT(1, 1)).unwrap().is_zero());
        let w = cat.weight(&Label::VirasoroT(2, 2)).unwrap();
        assert_eq!(w, rf("3*t/4 - 3/2 + 3/(4*t)", "t"));
        assert_eq!(cat.display_weight(&w), "(3*t^2-6*t+3)/(4*t)");
    }

    #[test]
    fn supervir_weights() {
        let cat = CategorySpec::builtin("supervir").unwrap();
        let w = cat.weight(&Label::SuperVir(2, 2)).unwrap();
        assert_eq!(w, rf("3*s/8 + 3/(8*s) - 3/4", "s"));
        let (w13, p) = cat.twist_exponent(&Label::SuperVir(1, 3)).unwrap();
        assert_eq!(w13, rf("1/s - 1/2", "s"));
        assert_eq!(cat.display_weight(&w13), "-(s-2)/(2*s)");
        assert_eq!(p, Parity::Odd);
        assert_eq!(cat.twist_exponent(&cat.unit()).unwrap(), (RatFunc::zero(), Parity::Even));
    }

    #[test]
    fn pair_twist_adds() {
        let cat = CategorySpec::builtin("deligne(virasoro-kp2,virasoro-t)").unwrap();
        let x = SimpleLabel::pair(Label::VirasoroKp2(1, 2), Label::VirasoroT(1, 2));
        let (w, p) = cat.twist_exponent(&x).unwrap();
        let v = Param::S.vars();
        assert_eq!(w, &h_weight(1, 2, &v.kp2) + &h_weight(1, 2, &v.t));
        assert_eq!(p, Parity::Even);
    }

    #[test]
    fn balancing_is_constant() {
        let t = RatFunc::var();
        for r in 1..=10 {
            for s in 1..=10 {
                let e = &(&h_weight(r, s, &t) - &h_weight(r, 1, &t)) - &h_weight(1, s, &t);
                let (r, s) = (i64::from(r), i64::from(s));
                assert_eq!(e.as_constant(), Some(Rat::frac(r + s - r * s - 1, 2)));
            }
        }
    }

    #[test]
    fn h_symmetry_under_inversion() {
        let t = RatFunc::var();
        let tinv = t.recip().unwrap();
        for r in 1..=6 {
            for s in 1..=6 {
                assert_eq!(h_weight(r, s, &t), h_weight(s, r, &tinv));
            }
        }
    }

    #[test]
    fn fusion_examples() {
        let cat = CategorySpec::builtin("virasoro-t").unwrap();
        let f = cat.fusion(&Label::VirasoroT(2, 1), &Label::VirasoroT(1, 2)).unwrap();
        assert_eq!(f, FusionElement::simple(Label::VirasoroT(2, 2)));
        let sv = CategorySpec::builtin("supervir").unwrap();
        let f = sv.fusion(&Label::SuperVir(2, 2), &Label::SuperVir(2, 2)).unwrap();
        let expect: Vec<SimpleLabel> = vec![
            Label::SuperVir(1, 1),
            Label::SuperVir(1, 3),
            Label::SuperVir(3, 1),
            Label::SuperVir(3, 3),
        ];
        assert_eq!(f.labels(), expect);
        assert!(matches!(
            sv.fusion(&Label::OspMod(1), &Label::SuperVir(1, 1)),
            Err(CatError::ForeignLabel { .. })
        ));
    }

    #[test]
    fn unit_and_commutativity() {
        for name in ["virasoro-t", "kl-sl2", "supervir", "osp", "deligne(kl-sl2,virasoro-t)"] {
            let cat = CategorySpec::builtin(name).unwrap();
            let labels = cat.labels_up_to(4);
            for x in &labels {
                assert_eq!(cat.fusion(&cat.unit(), x).unwrap(), FusionElement::simple(x.clone()));
                for y in &labels {
                    assert_eq!(cat.fusion(x, y).unwrap(), cat.fusion(y, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn checklist_flags() {
        let cat = CategorySpec::builtin("virasoro-t").unwrap();
        assert!(cat.checklist_report().all_satisfied());
        let d = CategorySpec::builtin("deligne(virasoro-kp2,virasoro-t)").unwrap();
        let report = d.checklist_report();
        assert!(report.all_satisfied());
        assert!(report.items[0].justification.contains("Deligne"));

        let no_unit = CategorySpec::from_json(
            r#"{"name":"cut","base_parameter":"t","families":[{"builtin":"virasoro-t","min_index":2}]}"#,
        )
        .unwrap();
        assert_eq!(no_unit.checklist_report().flagged(), vec![1]);
        let bounded = CategorySpec::from_json(
            r#"{"name":"small","base_parameter":"s","families":[{"builtin":"kl-sl2","max_index":5},{"builtin":"virasoro-t"}]}"#,
        )
        .unwrap();
        assert_eq!(bounded.checklist_report().flagged(), vec![4]);
    }

    #[test]
    fn json_roundtrip() {
        let cat = CategorySpec::builtin("deligne(kl-sl2,virasoro-t)").unwrap();
        let back = CategorySpec::from_json(&cat.to_json()).unwrap();
        assert_eq!(back, cat);
        assert!(CategorySpec::from_json(r#"{"name":"x","base_parameter":"q","families":[]}"#).is_err());
        assert!(matches!(CategorySpec::builtin("nope"), Err(CatError::UnknownCategory(_))));
    }

    #[test]
    fn window_membership() {
        let cat = CategorySpec::from_json(
            r#"{"name":"w","base_parameter":"t","families":[{"builtin":"virasoro-t","min_index":1,"max_index":3}]}"#,
        )
        .unwrap();
        assert!(cat.contains(&Label::VirasoroT(3, 3)));
        assert!(!cat.contains(&Label::VirasoroT(4, 1)));
        assert_eq!(cat.labels_up_to(10).len(), 9);
    }
}
