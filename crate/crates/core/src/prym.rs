//! Integer matrix and genus arithmetic for cyclic and dihedral covers.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrymError {
    #[error("invalid cover parameters: {0}")]
    InvalidParams(String),
    #[error("genus {num}/2 is not an integer")]
    NonIntegralGenus { num: i64 },
    #[error("|T| = {t} gives negative genus {genus}")]
    InadmissibleT { t: u32, genus: i64 },
    #[error("no integer solution for beta")]
    NoSolution,
    #[error("beta is not determined uniquely")]
    NonUnique,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntMatrix2(pub [[i64; 2]; 2]);

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2([[1, 0], [0, 1]]);
    pub const ZERO: IntMatrix2 = IntMatrix2([[0, 0], [0, 0]]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2([[a, b], [c, d]])
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        IntMatrix2([[a, c], [b, d]])
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::IDENTITY, |acc, _| acc * *self)
    }

    /// Inverse over ℤ when the determinant is ±1.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let [[a, b], [c, e]] = self.0;
        Some(IntMatrix2([[e * d, -b * d], [-c * d, a * d]]))
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let [[a, b], [c, d]] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// Kernel of the reduction mod n on (ℤ/n)².
    pub fn kernel_mod(&self, n: i64) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let w = self.apply([x, y]);
                if w.iter().all(|c| c.rem_euclid(n) == 0) {
                    out.push([x, y]);
                }
            }
        }
        out
    }
}

impl Mul for IntMatrix2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = self.0;
        let b = o.0;
        IntMatrix2(std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])))
    }
}

impl Add for IntMatrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        IntMatrix2(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + o.0[i][j])))
    }
}

impl Sub for IntMatrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for IntMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        IntMatrix2(self.0.map(|r| r.map(|x| -x)))
    }
}

/// The order-3 automorphism σ on E×E.
pub const T: IntMatrix2 = IntMatrix2([[0, -1], [1, -1]]);
/// The involution j on E×E in the (x, σy) coordinates.
pub const J_TILDE: IntMatrix2 = IntMatrix2([[1, -1], [0, -1]]);

/// J = −J̃T².
pub fn j_matrix() -> IntMatrix2 {
    -(J_TILDE * T.pow(2))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub pass: bool,
}

pub fn dihedral_identities() -> Vec<IdentityCheck> {
    let j = j_matrix();
    let i = IntMatrix2::IDENTITY;
    vec![
        IdentityCheck { name: "T^3 = I", pass: T.pow(3) == i },
        IdentityCheck { name: "J^2 = I", pass: j.pow(2) == i },
        IdentityCheck { name: "Jtilde^2 = I", pass: J_TILDE.pow(2) == i },
        IdentityCheck { name: "TJ = JT^2", pass: T * j == j * T.pow(2) },
        IdentityCheck { name: "T^2 + T + I = 0", pass: T.pow(2) + T + i == IntMatrix2::ZERO },
        IdentityCheck { name: "J = [[0,-1],[-1,0]]", pass: j == IntMatrix2::new(0, -1, -1, 0) },
    ]
}

/// Closure of {T, J} under multiplication.
pub fn generated_group() -> Vec<IntMatrix2> {
    let gens = [T, j_matrix()];
    let mut group = vec![IntMatrix2::IDENTITY];
    let mut frontier = vec![IntMatrix2::IDENTITY];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g * s;
            if !group.contains(&h) {
                group.push(h);
                frontier.push(h);
            }
        }
    }
    group.sort();
    group
}

/// φ = [[2, β], [β, 2]].
pub fn phi(beta: i64) -> IntMatrix2 {
    IntMatrix2::new(2, beta, beta, 2)
}

/// Solves φT⁻¹ = ᵗTφ for β. Each entry of both sides is affine in β.
pub fn polarization_beta_solve() -> Result<i64, PrymError> {
    let t_inv = T.inverse().ok_or(PrymError::NoSolution)?;
    let side = |beta: i64| (phi(beta) * t_inv, T.transpose() * phi(beta));
    let (l0, r0) = side(0);
    let (l1, r1) = side(1);
    let mut solution: Option<i64> = None;
    let mut free = true;
    for i in 0..2 {
        for j in 0..2 {
            // a + bβ = c + dβ
            let (a, b) = (l0.0[i][j], l1.0[i][j] - l0.0[i][j]);
            let (c, d) = (r0.0[i][j], r1.0[i][j] - r0.0[i][j]);
            let (coef, rhs) = (b - d, c - a);
            if coef == 0 {
                if rhs != 0 {
                    return Err(PrymError::NoSolution);
                }
                continue;
            }
            if rhs % coef != 0 {
                return Err(PrymError::NoSolution);
            }
            let beta = rhs / coef;
            free = false;
            match solution {
                Some(s) if s != beta => return Err(PrymError::NoSolution),
                _ => solution = Some(beta),
            }
        }
    }
    if free {
        return Err(PrymError::NonUnique);
    }
    solution.ok_or(PrymError::NoSolution)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarizationReport {
    pub beta: i64,
    pub det: i64,
    /// Kernel of φ_M on (ℤ/3)².
    pub kernel_mod3: Vec<[i64; 2]>,
    pub kernel_is_antidiagonal: bool,
    pub kernel_is_fix_t: bool,
}

pub fn polarization_report() -> Result<PolarizationReport, PrymError> {
    let beta = polarization_beta_solve()?;
    let p = phi(beta);
    let kernel_mod3 = p.kernel_mod(3);
    let mut antidiag: Vec<[i64; 2]> = (0..3i64).map(|x| [x, (-x).rem_euclid(3)]).collect();
    antidiag.sort();
    let fix_t = (T - IntMatrix2::IDENTITY).kernel_mod(3);
    Ok(PolarizationReport {
        beta,
        det: p.det(),
        kernel_is_antidiagonal: kernel_mod3 == antidiag,
        kernel_is_fix_t: fix_t == kernel_mod3,
        kernel_mod3,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverParams {
    pub n: u32,
    pub g: u32,
    /// Weierstrass points with j-fixed fibres; only used for even n.
    pub t_size: u32,
}

/// Genus of the quotient curves C_ν.
pub fn genus_of_quotient(p: CoverParams) -> Result<i64, PrymError> {
    if p.n < 2 {
        return Err(PrymError::InvalidParams(format!("n = {} < 2", p.n)));
    }
    if p.g < 2 {
        return Err(PrymError::InvalidParams(format!("g = {} < 2", p.g)));
    }
    let (n, g) = (p.n as i64, p.g as i64);
    let twice = if n % 2 == 1 {
        (n - 1) * (g - 1)
    } else {
        if p.t_size % 2 == 1 || p.t_size > 2 * p.g + 2 {
            return Err(PrymError::InvalidParams(format!("|T| = {} for g = {}", p.t_size, p.g)));
        }
        n * (g - 1) + 2 - p.t_size as i64
    };
    if twice % 2 != 0 {
        return Err(PrymError::NonIntegralGenus { num: twice });
    }
    let genus = twice / 2;
    if genus < 0 {
        return Err(PrymError::InadmissibleT { t: p.t_size, genus });
    }
    Ok(genus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionMatch {
    pub prym_dim: i64,
    pub twice_genus: i64,
    pub pass: bool,
}

/// dim P = (n−1)(g−1) against 2g_ν, for odd n.
pub fn prym_dimension_match(n: u32, g: u32) -> Result<DimensionMatch, PrymError> {
    if n % 2 == 0 {
        return Err(PrymError::InvalidParams(format!("n = {n} is even")));
    }
    let genus = genus_of_quotient(CoverParams { n, g, t_size: 0 })?;
    let prym_dim = (n as i64 - 1) * (g as i64 - 1);
    Ok(DimensionMatch { prym_dim, twice_genus: 2 * genus, pass: prym_dim == 2 * genus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_from_tilde() {
        assert_eq!(j_matrix(), IntMatrix2::new(0, -1, -1, 0));
    }

    #[test]
    fn beta_is_minus_one() {
        assert_eq!(polarization_beta_solve(), Ok(-1));
        assert_eq!(phi(-1).det(), 3);
        assert_eq!(phi(-1).apply([1, -1]).map(|c| c.rem_euclid(3)), [0, 0]);
    }

    #[test]
    fn genus_examples() {
        let gp = |n, g, t| genus_of_quotient(CoverParams { n, g, t_size: t });
        assert_eq!(gp(3, 2, 0), Ok(1));
        assert_eq!(gp(5, 3, 0), Ok(4));
        assert_eq!(gp(2, 2, 6), Err(PrymError::InadmissibleT { t: 6, genus: -1 }));
        assert!(gp(1, 2, 0).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        assert_eq!(T * T.inverse().unwrap(), IntMatrix2::IDENTITY);
        assert!(phi(-1).inverse().is_none());
    }
}
