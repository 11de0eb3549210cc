use std::fmt;

use super::{Poly, Rat, RatFunc};

/// Polynomial with rational coefficients in an auxiliary integer index `r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly(Poly);

impl IntPoly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        IntPoly(Poly::new(coeffs))
    }

    pub fn from_poly(p: Poly) -> Self {
        IntPoly(p)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn eval(&self, r: i64) -> Rat {
        self.0.eval(&Rat::from_int(r))
    }

    /// Whether `p(r)` is an integer for every integer `r >= 1`.
    ///
    /// Integer values at `deg + 1` consecutive integers force integer values
    /// everywhere (Newton forward differences are then integers), so
    /// checking `r = 1 ..= deg + 2` decides the question.
    pub fn integer_valued_on_positives(&self) -> bool {
        self.first_non_integer().is_none()
    }

    /// Smallest `r >= 1` with `p(r)` non-integral, if any.
    pub fn first_non_integer(&self) -> Option<i64> {
        let deg = self.degree().unwrap_or(0) as i64;
        (1..=deg + 2).find(|&r| !self.eval(r).is_integer())
    }

    /// Lagrange interpolation through `(1, v[0]), (2, v[1]), ...`.
    pub fn interpolate(values: &[Rat]) -> IntPoly {
        let n = values.len();
        let mut acc = Poly::zero();
        for (i, vi) in values.iter().enumerate() {
            let xi = Rat::from_int(i as i64 + 1);
            let mut basis = Poly::one();
            let mut denom = Rat::one();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let xj = Rat::from_int(j as i64 + 1);
                basis = &basis * &Poly::new(vec![-&xj, Rat::one()]);
                denom = denom * (&xi - &xj);
            }
            acc = &acc + &basis.scale(&(vi / &denom));
        }
        IntPoly(acc)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", RatFunc::from_poly(self.0.clone()).display("r"))
    }
}
