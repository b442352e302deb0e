//! Exact numbers of the form `k / 2^e`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// `numerator / 2^log2_den`, kept with an odd numerator (or zero over 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    num: i128,
    log2_den: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, log2_den: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, log2_den: 0 };

    pub fn new(num: i128, log2_den: u32) -> Self {
        Dyadic { num, log2_den }.normalized()
    }

    pub fn from_int(n: i128) -> Self {
        Dyadic::new(n, 0)
    }

    /// `±2^{-e}`.
    pub fn signed_pow2_inv(negative: bool, e: u32) -> Self {
        Dyadic { num: if negative { -1 } else { 1 }, log2_den: e }
    }

    pub fn numerator(self) -> i128 {
        self.num
    }

    pub fn log2_den(self) -> u32 {
        self.log2_den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Division by `2^e`.
    pub fn halve(self, e: u32) -> Self {
        if self.num == 0 {
            return self;
        }
        Dyadic { num: self.num, log2_den: self.log2_den + e }
    }

    fn normalized(mut self) -> Self {
        if self.num == 0 {
            return Dyadic::ZERO;
        }
        let tz = self.num.trailing_zeros().min(self.log2_den);
        self.num >>= tz;
        self.log2_den -= tz;
        self
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / 2f64.powi(self.log2_den as i32)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let e = self.log2_den.max(rhs.log2_den);
        let a = self.num << (e - self.log2_den);
        let b = rhs.num << (e - rhs.log2_den);
        Dyadic::new(a + b, e)
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, rhs: Dyadic) {
        *self = *self + rhs;
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, log2_den: self.log2_den }
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.num * rhs.num, self.log2_den + rhs.log2_den)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u128 << self.log2_den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 5), Dyadic::ZERO);
        assert_eq!(Dyadic::new(6, 0).numerator(), 6);
    }

    #[test]
    fn arithmetic() {
        let half = Dyadic::new(1, 1);
        let quarter = Dyadic::new(1, 2);
        assert_eq!(half + quarter, Dyadic::new(3, 2));
        assert_eq!(half - half, Dyadic::ZERO);
        assert_eq!(half * half, quarter);
        assert_eq!(Dyadic::ONE.halve(2), quarter);
        assert_eq!((quarter + quarter + half).to_string(), "1");
        assert_eq!((-Dyadic::new(3, 2)).to_string(), "-3/4");
    }
}
