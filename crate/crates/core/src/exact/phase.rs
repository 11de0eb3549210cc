use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use super::Rat;

/// A root of unity `exp(2πi·value)` with `value` reduced into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Phase(Rat);

impl Phase {
    pub fn from_exponent(x: &Rat) -> Self {
        Phase(x.fract_mod1())
    }

    pub fn trivial() -> Self {
        Phase(Rat::zero())
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add<&Phase> for &Phase {
    type Output = Phase;
    fn add(self, rhs: &Phase) -> Phase {
        Phase::from_exponent(&(&self.0 + &rhs.0))
    }
}

impl Sub<&Phase> for &Phase {
    type Output = Phase;
    fn sub(self, rhs: &Phase) -> Phase {
        Phase::from_exponent(&(&self.0 - &rhs.0))
    }
}

impl Neg for &Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_exponent(&-&self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(Phase::from_exponent(&Rat::frac(-1, 2)).value(), &Rat::frac(1, 2));
        assert!(Phase::from_exponent(&Rat::from_int(-7)).is_trivial());
        let a = Phase::from_exponent(&Rat::frac(3, 4));
        let b = Phase::from_exponent(&Rat::frac(1, 2));
        assert_eq!((&a + &b).value(), &Rat::frac(1, 4));
        assert!((&a + &(-&a)).is_trivial());
    }
}
