use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ArithError, Eisenstein, Field, Rational};

/// The prime field F_p for p ≡ 1 mod 3, with a fixed cube root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    omega: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !is_prime(p) || p % 3 != 1 || p > u32::MAX as u64 {
            return Err(ArithError::BadModulus(p));
        }
        let omega = (2..p)
            .find(|&w| (w * w + w + 1) % p == 0)
            .ok_or(ArithError::BadModulus(p))?;
        Ok(PrimeField { p, omega })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn zero(&self) -> PrimeFieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> PrimeFieldElement {
        self.elem(1)
    }

    pub fn omega(&self) -> PrimeFieldElement {
        PrimeFieldElement {
            value: self.omega,
            p: self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElement> + '_ {
        (0..self.p).map(move |v| PrimeFieldElement { value: v, p: self.p })
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((n % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }

    /// Reduction of a rational; `None` when p divides the denominator.
    pub fn reduce_rational(&self, r: &Rational) -> Option<PrimeFieldElement> {
        let d = self.reduce_bigint(r.denom());
        if d == 0 {
            return None;
        }
        let n = PrimeFieldElement { value: self.reduce_bigint(r.numer()), p: self.p };
        let d = PrimeFieldElement { value: d, p: self.p };
        Some(n * d.inverse()?)
    }

    /// Image under the ring map ℤ_(p)[ω] → F_p sending ω to ω_p.
    pub fn reduce_eisenstein(&self, e: &Eisenstein) -> Option<PrimeFieldElement> {
        let a = self.reduce_rational(&e.re)?;
        let b = self.reduce_rational(&e.om)?;
        Some(a + b * self.omega())
    }

    /// Integer square root bound used for Hasse checks: ⌊2√p⌋.
    pub fn two_sqrt_floor(&self) -> u64 {
        let mut r = (4.0 * self.p as f64).sqrt() as u64;
        while r * r > 4 * self.p {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= 4 * self.p {
            r += 1;
        }
        r
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    pub value: u64,
    pub p: u64,
}

impl PrimeFieldElement {
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = PrimeFieldElement { value: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "prime field elements from different fields");
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElement { value: (self.value + rhs.value) % self.p, p: self.p }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElement { value: (self.value + self.p - rhs.value) % self.p, p: self.p }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElement { value: (self.value * rhs.value) % self.p, p: self.p }
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElement { value: (self.p - self.value) % self.p, p: self.p }
    }
}

impl Field for PrimeFieldElement {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn zero_like(&self) -> Self {
        PrimeFieldElement { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        PrimeFieldElement { value: 1, p: self.p }
    }
    fn int_like(&self, n: i64) -> Self {
        PrimeFieldElement { value: n.rem_euclid(self.p as i64) as u64, p: self.p }
    }
    fn inverse(&self) -> Option<Self> {
        if self.value.is_zero() {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
    fn same_field(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_choice() {
        for (p, w) in [(7, 2), (13, 3), (31, 5), (997, 304)] {
            let f = PrimeField::new(p).unwrap();
            let om = f.omega();
            assert_eq!(om.pow(3), f.one());
            assert_ne!(om, f.one());
            assert_eq!(om.value, w, "p = {p}");
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [2, 3, 5, 11, 15, 21] {
            assert!(PrimeField::new(p).is_err());
        }
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(13).unwrap();
        let half = f.reduce_rational(&Rational::new(1, 2)).unwrap();
        assert_eq!(half * f.elem(2), f.one());
        assert!(f.reduce_rational(&Rational::new(1, 13)).is_none());
    }

    #[test]
    fn two_sqrt() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.two_sqrt_floor(), 7);
        let f = PrimeField::new(997).unwrap();
        assert_eq!(f.two_sqrt_floor(), 63);
    }
}
