//! Exact non-negative rationals for colength ratios. No floating point
//! appears anywhere in reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// self < other by cross-multiplication in u128.
    pub fn lt(&self, other: &Rational) -> bool {
        (self.num as u128) * (other.den as u128) < (other.num as u128) * (self.den as u128)
    }

    pub fn le(&self, other: &Rational) -> bool {
        !other.lt(self)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_compare() {
        let a = Rational::new(6, 4);
        assert_eq!(a, Rational::new(3, 2));
        assert!(Rational::new(5, 4).lt(&a));
        assert!(a.le(&a));
        assert!(Rational::new(4, 4).is_one());
        assert_eq!(format!("{}", a), "3/2");
        assert_eq!(format!("{}", Rational::new(8, 2)), "4");
    }
}
