//! Enumerative bookkeeping: the blow-up computation of the dual degree, the
//! Verlinde dimensions and their leading coefficient, and two small counts.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{bernoulli, binomial, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumError {
    #[error("level {0} is out of range")]
    InvalidLevel(i64),
    #[error("dimension at level {k} is {value}, not within tolerance of an integer")]
    NonIntegralDimension { k: u32, value: f64 },
}

/// Ambient dimension of the blown-up ℙ⁸.
pub const DIM: usize = 8;
/// Number of theta coordinates: c(N) = (1 + h)^9.
const NORMAL_RANK_PLUS_FIBRE: u64 = 9;
/// h² = 9(Θ·Θ) = 18 on the abelian surface.
pub const H_SQUARED: i64 = 18;

/// A class Σ c_r H̃^r e^{d−r} of homogeneous degree d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionClass {
    pub degree: usize,
    /// coeffs[r] multiplies H̃^r e^{d−r}.
    pub coeffs: Vec<BigInt>,
}

impl IntersectionClass {
    pub fn one() -> Self {
        IntersectionClass { degree: 0, coeffs: vec![BigInt::one()] }
    }

    /// a·H̃ + b·e.
    pub fn linear(a: i64, b: i64) -> Self {
        IntersectionClass { degree: 1, coeffs: vec![BigInt::from(b), BigInt::from(a)] }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntersectionClass { degree: self.degree + other.degree, coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Degree of a top-dimensional class.
    pub fn evaluate(&self) -> BigInt {
        assert_eq!(self.degree, DIM, "only top-degree classes can be evaluated");
        let table = derived_table();
        self.coeffs.iter().zip(table.iter()).map(|(c, v)| c * BigInt::from(*v)).sum()
    }
}

/// (h̃^a ξ^b)_E for a + b = 7, from h̃³ = 0, h̃²ξ⁵ = −h² and the relation
/// ξ⁶ = 9h̃ξ⁵ − 36h̃²ξ⁴ coming from c(N) = (1 + h)^9.
pub fn exceptional_integral(a: usize, b: usize) -> i64 {
    assert_eq!(a + b, DIM - 1);
    let c1 = binomial(NORMAL_RANK_PLUS_FIBRE, 1);
    let c2 = binomial(NORMAL_RANK_PLUS_FIBRE, 2);
    let c1: i64 = c1.try_into().expect("small");
    let c2: i64 = c2.try_into().expect("small");
    match a {
        a if a >= 3 => 0,
        2 => -H_SQUARED,
        _ => c1 * exceptional_integral(a + 1, b - 1) - c2 * exceptional_integral(a + 2, b - 2),
    }
}

/// H̃^r e^{8−r} for r = 0..8.
pub fn derived_table() -> [i64; DIM + 1] {
    std::array::from_fn(|r| if r == DIM { 1 } else { exceptional_integral(r, DIM - 1 - r) })
}

/// The values printed with the computation, kept only as a cross-check.
pub const PRINTED_TABLE: [(usize, i64); 3] = [(2, -18), (1, -162), (0, -810)];

/// (3H̃ − 2e)(2H̃ − e)^7.
pub fn dual_degree_class() -> IntersectionClass {
    IntersectionClass::linear(3, -2).mul(&IntersectionClass::linear(2, -1).pow(7))
}

pub fn dual_degree_computation() -> BigInt {
    dual_degree_class().evaluate()
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// V₁,₁,₁(m) summed over interior points a, b ≥ 1, a + b ≤ m − 1.
pub fn verlinde_v111(m: u32) -> f64 {
    let mf = m as f64;
    let mut terms = Vec::new();
    for a in 1..m {
        for b in 1..(m - a) {
            let s = (PI * a as f64 / mf).sin() * (PI * b as f64 / mf).sin() * (PI * (a + b) as f64 / mf).sin();
            terms.push(1.0 / (s * s));
        }
    }
    pairwise_sum(&terms)
}

pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;
pub const MAX_LEVEL: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerlindeValue {
    pub k: u32,
    pub value: f64,
    pub nearest: i64,
}

/// dim H⁰(𝓜, 𝓛^k) = 3((k+3)/8)² V₁,₁,₁(k+3).
pub fn verlinde_dimension(k: u32) -> Result<VerlindeValue, EnumError> {
    if k > MAX_LEVEL {
        return Err(EnumError::InvalidLevel(k as i64));
    }
    let m = k + 3;
    let value = 3.0 * (m as f64 / 8.0).powi(2) * verlinde_v111(m);
    let nearest = value.round();
    if (value - nearest).abs() > INTEGRALITY_TOLERANCE * nearest.abs().max(1.0) {
        return Err(EnumError::NonIntegralDimension { k, value });
    }
    Ok(VerlindeValue { k, value, nearest: nearest as i64 })
}

/// Iterated forward differences; `out[n]` is the n-th difference sequence.
pub fn finite_differences(xs: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![xs.to_vec()];
    while out.last().map_or(false, |v| v.len() > 1) {
        let last = out.last().expect("nonempty");
        let next: Vec<i64> = last.windows(2).map(|w| w[1] - w[0]).collect();
        out.push(next);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaDegree {
    pub dims: Vec<i64>,
    /// 8th difference of the dimensions at k = 1..9, equal to 8!·leading coefficient.
    pub eighth_difference: i64,
    /// 9th difference over k = 0..9.
    pub ninth_difference: i64,
    pub degree: i64,
}

pub fn theta_degree_from_verlinde() -> Result<ThetaDegree, EnumError> {
    let dims: Vec<i64> = (0..=9).map(|k| verlinde_dimension(k).map(|v| v.nearest)).collect::<Result<_, _>>()?;
    let eighth = finite_differences(&dims[1..])[8][0];
    let ninth = finite_differences(&dims)[9][0];
    Ok(ThetaDegree { dims, eighth_difference: eighth, ninth_difference: ninth, degree: eighth })
}

/// v_{h,h,h} = (−1)^h 2^{6h} Σ_r C(4h−2r−1, 2h−1) B_{2r}/(2r)! · B_{6h−2r}/(6h−2r)!.
pub fn zagier_leading_coefficient(h: u32) -> Result<Rational, EnumError> {
    if h == 0 {
        return Err(EnumError::InvalidLevel(0));
    }
    let h = h as u64;
    let fact = |n: u64| Rational::from_bigint((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)));
    let mut sum = Rational::integer(0);
    for r in 0..=h {
        let c = Rational::from_bigint(binomial(4 * h - 2 * r - 1, 2 * h - 1));
        let t1 = bernoulli(2 * r as usize) / fact(2 * r);
        let t2 = bernoulli((6 * h - 2 * r) as usize) / fact(6 * h - 2 * r);
        sum = &sum + &(&(&c * &t1) * &t2);
    }
    let sign = if h % 2 == 0 { 1 } else { -1 };
    let scale = Rational::from_bigint(BigInt::from(sign) * (BigInt::one() << (6 * h) as usize));
    Ok(&scale * &sum)
}

/// 8!·3·v₁,₁,₁/8², the top intersection number predicted by the Bernoulli route.
pub fn degree_from_zagier() -> Rational {
    let v = zagier_leading_coefficient(1).expect("h = 1 is valid");
    &Rational::new(40320 * 3, 64) * &v
}

/// dim H⁰(ℙ⁸, 𝓞(2)) − dim H⁰(A, 𝓞(6Θ)) = C(10, 2) − 6².
pub fn quadric_dimension_count() -> i64 {
    let quadrics: i64 = binomial(10, 2).try_into().expect("small");
    quadrics - 36
}

/// From K_𝓜 = θ*(K_ℙ⁸ + δ) with K_𝓜 = −6 and K_ℙ⁸ = −9: (δ, deg 𝓑 = 2δ).
pub fn ramification_degree() -> (i64, i64) {
    let k_m = -6;
    let k_p = -9;
    let delta = k_m - k_p;
    (delta, 2 * delta)
}
