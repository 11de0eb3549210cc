use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Poly, Rat};

/// Arithmetic operation selector for [`RatFunc::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Univariate rational function `numerator / denominator` over `Rat`.
///
/// Always normalized: the two polynomials are coprime, the denominator is
/// monic, and zero is `0 / 1`. Equality is therefore structural.
///
/// The formal variable carries no name; printing and parsing take one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_rem(&g).expect("gcd nonzero").0,
                den.div_rem(&g).expect("gcd nonzero").0,
            )
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.checked_recip().expect("nonzero leading coefficient");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::constant(Rat::from_int(n))
    }

    /// The formal variable itself.
    pub fn var() -> Self {
        RatFunc {
            num: Poly::x(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Re-normalizes; the identity on every value this type can hold.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn arith(&self, rhs: &RatFunc, op: ArithOp) -> Result<RatFunc, ExactError> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn recip(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        (0..e).fold(RatFunc::one(), |acc, _| &acc * self)
    }

    /// Composition `self ∘ inner`, i.e. the variable of `self` replaced by `inner`.
    pub fn substitute(&self, inner: &RatFunc) -> Result<RatFunc, ExactError> {
        let d = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let (p, q) = (&inner.num, &inner.den);
        // a(P/Q) = (sum a_i P^i Q^(d-i)) / Q^d, and the Q^d cancels in the quotient.
        let p_pows: Vec<Poly> = (0..=d).map(|i| p.pow(i)).collect();
        let q_pows: Vec<Poly> = (0..=d).map(|i| q.pow(i)).collect();
        let homogenize = |f: &Poly| {
            f.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(Poly::zero(), |acc, (i, c)| {
                    &acc + &(&p_pows[i] * &q_pows[d - i]).scale(c)
                })
        };
        let num = homogenize(&self.num);
        let den = homogenize(&self.den);
        if den.is_zero() {
            return Err(ExactError::DegenerateSubstitution);
        }
        Ok(Self::normalized(num, den))
    }

    /// The constant value when both numerator and denominator have degree 0.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// True iff the function is a parameter-free integer.
    pub fn is_integer_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, ExactError> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    /// Canonical text with the given variable name, e.g. `(3*t^2-6*t+3)/(4*t)`.
    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayIn { f: self, var }
    }

    pub fn to_string_in(&self, var: &str) -> String {
        self.display(var).to_string()
    }

    pub fn parse(text: &str, var: &str) -> Result<RatFunc, ExactError> {
        super::parse::parse_ratfunc(text, var)
    }
}

struct DisplayIn<'a> {
    f: &'a RatFunc,
    var: &'a str,
}

/// Integer coefficient vector scaled so numerator and denominator share no content.
fn integer_coeffs(p: &Poly, scale: &BigInt) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            let v = c * &Rat::from_int(scale.clone());
            debug_assert!(v.is_integer());
            v.numer().clone()
        })
        .collect()
}

fn poly_terms(coeffs: &[BigInt], var: &str) -> (String, usize) {
    let mut out = String::new();
    let mut count = 0;
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if count == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        if deg == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
        count += 1;
    }
    (out, count)
}

impl fmt::Display for DisplayIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rf = self.f;
        if rf.is_zero() {
            return write!(f, "0");
        }
        let l = Rat::denominator_lcm(rf.num.coeffs().iter().chain(rf.den.coeffs()));
        let mut n = integer_coeffs(&rf.num, &l);
        let mut d = integer_coeffs(&rf.den, &l);
        let g = n
            .iter()
            .chain(d.iter())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            n.iter_mut().for_each(|c| *c = &*c / &g);
            d.iter_mut().for_each(|c| *c = &*c / &g);
        }
        let negative = n.last().is_some_and(|c| c.is_negative());
        if negative {
            n.iter_mut().for_each(|c| *c = -&*c);
        }
        let (num_s, num_terms) = poly_terms(&n, self.var);
        let (den_s, den_terms) = poly_terms(&d, self.var);
        let has_den = !(d.len() == 1 && d[0].is_one());
        if negative {
            write!(f, "-")?;
        }
        if num_terms > 1 && (has_den || negative) {
            write!(f, "({num_s})")?;
        } else {
            write!(f, "{num_s}")?;
        }
        if has_den {
            if den_terms > 1 || den_s.contains('*') {
                write!(f, "/({den_s})")?;
            } else {
                write!(f, "/{den_s}")?;
            }
        }
        Ok(())
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}
