use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ArithError, ConstField, Field, Rational};

/// An element `re + om·ω` of ℚ(ω), where ω² = −1 − ω.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Eisenstein {
    pub re: Rational,
    pub om: Rational,
}

impl Eisenstein {
    pub fn new(re: Rational, om: Rational) -> Self {
        Eisenstein { re, om }
    }

    pub fn from_ints(re: i64, om: i64) -> Self {
        Eisenstein::new(Rational::integer(re), Rational::integer(om))
    }

    pub fn from_rational(re: Rational) -> Self {
        Eisenstein::new(re, <Rational as ConstField>::zero())
    }

    pub fn omega() -> Self {
        Eisenstein::from_ints(0, 1)
    }

    /// ω^k for any integer k.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Eisenstein::from_ints(1, 0),
            1 => Eisenstein::from_ints(0, 1),
            _ => Eisenstein::from_ints(-1, -1),
        }
    }

    /// The norm a² − ab + b².
    pub fn norm(&self) -> Rational {
        let (a, b) = (&self.re, &self.om);
        &(&(a * a) - &(a * b)) + &(b * b)
    }

    /// Image under ω ↦ ω².
    pub fn conj(&self) -> Self {
        Eisenstein::new(&self.re - &self.om, -self.om.clone())
    }

    pub fn is_rational(&self) -> bool {
        Field::is_zero(&self.om)
    }

    pub fn checked_inverse(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        let inv = n.inverse().ok_or(ArithError::DivisionByZero)?;
        let c = self.conj();
        Ok(Eisenstein::new(&c.re * &inv, &c.om * &inv))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Eisenstein::new(&self.re * r, &self.om * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Eisenstein::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<i64> for Eisenstein {
    fn from(n: i64) -> Self {
        Eisenstein::from_ints(n, 0)
    }
}

impl From<Rational> for Eisenstein {
    fn from(r: Rational) -> Self {
        Eisenstein::from_rational(r)
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = Field::is_zero(&self.re);
        let om0 = Field::is_zero(&self.om);
        match (re0, om0) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}ω", self.om),
            (false, false) => {
                if self.om.is_negative() {
                    write!(f, "({} - {}ω)", self.re, self.om.abs())
                } else {
                    write!(f, "({} + {}ω)", self.re, self.om)
                }
            }
        }
    }
}

impl fmt::Debug for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: &'a Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.re + &rhs.re, &self.om + &rhs.om)
    }
}

impl<'a> Sub<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: &'a Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.re - &rhs.re, &self.om - &rhs.om)
    }
}

impl<'a> Mul<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: &'a Eisenstein) -> Eisenstein {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let ac = &self.re * &rhs.re;
        let bd = &self.om * &rhs.om;
        let ad = &self.re * &rhs.om;
        let bc = &self.om * &rhs.re;
        Eisenstein::new(&ac - &bd, &(&ad + &bc) - &bd)
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: Eisenstein) -> Eisenstein {
        &self + &rhs
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: Eisenstein) -> Eisenstein {
        &self - &rhs
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: Eisenstein) -> Eisenstein {
        &self * &rhs
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-self.re, -self.om)
    }
}

impl Field for Eisenstein {
    fn is_zero(&self) -> bool {
        Field::is_zero(&self.re) && Field::is_zero(&self.om)
    }
    fn zero_like(&self) -> Self {
        Eisenstein::zero()
    }
    fn one_like(&self) -> Self {
        Eisenstein::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Eisenstein::from_ints(n, 0)
    }
    fn inverse(&self) -> Option<Self> {
        self.checked_inverse().ok()
    }
}

impl ConstField for Eisenstein {
    fn zero() -> Self {
        Eisenstein::from_ints(0, 0)
    }
    fn one() -> Self {
        Eisenstein::from_ints(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        Eisenstein::from_ints(n, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Eisenstein {
        Eisenstein::omega()
    }

    #[test]
    fn omega_relations() {
        let w2 = &w() * &w();
        assert_eq!(w2, Eisenstein::from_ints(-1, -1));
        assert_eq!(&w() * &w2, Eisenstein::one());
        assert!((&(&Eisenstein::one() + &w()) + &w2).is_zero());
        assert_eq!(Eisenstein::omega_pow(-1), w2);
        assert_eq!(Eisenstein::omega_pow(5), w2);
    }

    #[test]
    fn one_plus_omega_times_one_plus_omega_sq() {
        let a = &Eisenstein::one() + &w();
        let b = &Eisenstein::one() + &Eisenstein::omega_pow(2);
        assert_eq!(&a * &b, Eisenstein::one());
    }

    #[test]
    fn inverses() {
        assert_eq!(w().inverse().unwrap(), Eisenstein::from_ints(-1, -1));
        assert_eq!(
            Eisenstein::from_ints(2, 0).inverse().unwrap(),
            Eisenstein::from_rational(Rational::new(1, 2))
        );
        let a = Eisenstein::from_ints(1, -1);
        let expect = Eisenstein::new(Rational::new(2, 3), Rational::new(1, 3));
        assert_eq!(a.inverse().unwrap(), expect);
        assert_eq!(&a * &expect, Eisenstein::one());
        assert_eq!(
            Eisenstein::zero().checked_inverse(),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn json_shape() {
        let a = Eisenstein::new(Rational::new(2, 3), Rational::integer(-1));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"re":"2/3","om":"-1"}"#);
        let back: Eisenstein = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
