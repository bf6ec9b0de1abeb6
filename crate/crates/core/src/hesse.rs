//! The Hesse pencil of plane cubics, its dual sextic and a finite-field
//! duality oracle.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, ConstField, Eisenstein, ExactMatrix, Field, PrimeField, PrimeFieldElement, Rational};
use crate::heisenberg::{normalize_projective, PlaneHeisenberg};
use crate::poly::{Poly, VariableId};

type P = Poly<Rational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HesseError {
    #[error("cusp system is singular at lambda = {0}")]
    SingularSystem(Rational),
    #[error("gradient vanishes at a singular point of the cubic")]
    ZeroGradient,
    #[error("lambda = {lambda} gives a singular cubic (lambda^3 = 1) over F_{p}")]
    SingularMember { lambda: String, p: u64 },
    #[error("lambda = {0} has a denominator divisible by {1}")]
    BadDenominator(Rational, u64),
    #[error("dual sextic does not vanish at the image of {0:?}")]
    Counterexample([u64; 3]),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn lam() -> P {
    P::var(VariableId::lambda())
}

fn xv(i: u8) -> P {
    P::var(VariableId::x(i))
}

fn yv(i: u8) -> P {
    P::var(VariableId::y(i))
}

fn c(n: i64) -> P {
    P::from_i64(n)
}

/// f_λ = X₀³ + X₁³ + X₂³ − 3λX₀X₁X₂ with λ formal.
pub fn hesse_cubic_formal() -> P {
    let cubes = &(&xv(0).pow(3) + &xv(1).pow(3)) + &xv(2).pow(3);
    &cubes - &(&(&c(3) * &lam()) * &(&(&xv(0) * &xv(1)) * &xv(2)))
}

/// Replaces the formal λ by a value.
pub fn specialise(p: &P, lambda: &Rational) -> P {
    let mut asg = HashMap::new();
    asg.insert(VariableId::lambda(), P::constant(lambda.clone()));
    p.substitute(&asg)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HesseCubic {
    pub lambda: Rational,
    pub poly: P,
}

impl HesseCubic {
    pub fn new(lambda: Rational) -> Self {
        let poly = specialise(&hesse_cubic_formal(), &lambda);
        HesseCubic { lambda, poly }
    }

    pub fn is_smooth(&self) -> bool {
        !self.lambda.pow(3).is_one()
    }
}

/// The plane sextic basis S₁..S₄ in Y₀, Y₁, Y₂.
pub fn sextic_basis() -> [P; 4] {
    let s1 = &(&yv(0).pow(6) + &yv(1).pow(6)) + &yv(2).pow(6);
    let cube = |i: u8| yv(i).pow(3);
    let s2 = &(&(&cube(0) * &cube(1)) + &(&cube(0) * &cube(2))) + &(&cube(1) * &cube(2));
    let prod = &(&yv(0) * &yv(1)) * &yv(2);
    let s3 = &prod * &(&(&cube(0) + &cube(1)) + &cube(2));
    let s4 = prod.pow(2);
    [s1, s2, s3, s4]
}

/// a₁ = 4λ³ − 2, a₂ = −6λ², a₃ = −3λ(λ³ − 4), as polynomials in λ.
pub fn closed_form_coefficients() -> [P; 3] {
    let l3 = lam().pow(3);
    [
        &(&c(4) * &l3) - &c(2),
        &c(-6) * &lam().pow(2),
        &(&c(-3) * &lam()) * &(&l3 - &c(4)),
    ]
}

pub fn closed_form_at(lambda: &Rational) -> [Rational; 3] {
    closed_form_coefficients().map(|a| {
        specialise(&a, lambda)
            .coeff(&crate::poly::Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualSextic {
    /// `None` when λ is left formal.
    pub lambda: Option<Rational>,
    pub coefficients: [P; 3],
    pub poly: P,
}

fn assemble(coefficients: &[P; 3]) -> P {
    let [s1, s2, s3, s4] = sextic_basis();
    let mut out = s1;
    for (a, s) in coefficients.iter().zip([s2, s3, s4]) {
        out = &out + &(a * &s);
    }
    out
}

pub fn dual_sextic_closed_form(lambda: Option<&Rational>) -> DualSextic {
    let formal = closed_form_coefficients();
    let coefficients = match lambda {
        Some(l) => formal.map(|a| specialise(&a, l)),
        None => formal,
    };
    DualSextic { lambda: lambda.cloned(), poly: assemble(&coefficients), coefficients }
}

/// Rows (coefficients of a₁, a₂, a₃ and the right-hand side) of the cusp system.
pub fn cusp_system_formal() -> [[P; 4]; 3] {
    let l = lam();
    let l2 = l.pow(2);
    let l3 = l.pow(3);
    [
        [&c(6) * &l2, &(&c(4) * &l3) + &c(2), &c(2) * &l, &c(-6) * &l.pow(5)],
        [&c(3) * &(&l3 + &c(1)), &l * &(&l3 + &c(5)), &c(2) * &l2, c(-6)],
        [&c(9) * &l2, &(&c(4) * &l3) + &c(5), &c(4) * &l, P::zero()],
    ]
}

/// Residuals of the cusp system at the closed form; all zero when it solves it.
pub fn cusp_system_residuals() -> [P; 3] {
    let a = closed_form_coefficients();
    cusp_system_formal().map(|row| {
        let lhs = &(&(&row[0] * &a[0]) + &(&row[1] * &a[1])) + &(&row[2] * &a[2]);
        &lhs - &row[3]
    })
}

pub fn dual_sextic_from_cusp_system(lambda: &Rational) -> Result<[Rational; 3], HesseError> {
    let num = |p: &P| {
        specialise(p, lambda).coeff(&crate::poly::Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    };
    let sys = cusp_system_formal();
    let rows: Vec<Vec<Rational>> = sys.iter().map(|r| r[..3].iter().map(num).collect()).collect();
    let rhs: Vec<Rational> = sys.iter().map(|r| num(&r[3])).collect();
    let m = ExactMatrix::from_rows(rows)?;
    if m.rank()? < 3 {
        return Err(HesseError::SingularSystem(lambda.clone()));
    }
    let sol = m.solve(&rhs)?.ok_or_else(|| HesseError::SingularSystem(lambda.clone()))?;
    Ok(sol.try_into().expect("three unknowns"))
}

/// ∇f_λ at a point, over any field.
pub fn gradient_map<F: Field>(lambda: &F, p: &[F; 3]) -> Result<[F; 3], HesseError> {
    let three = lambda.int_like(3);
    let [x0, x1, x2] = p.clone();
    let g = [
        three.clone() * x0.clone() * x0.clone() - three.clone() * lambda.clone() * x1.clone() * x2.clone(),
        three.clone() * x1.clone() * x1.clone() - three.clone() * lambda.clone() * x0.clone() * x2.clone(),
        three.clone() * x2.clone() * x2 - three * lambda.clone() * x0 * x1,
    ];
    if g.iter().all(Field::is_zero) {
        Err(HesseError::ZeroGradient)
    } else {
        Ok(g)
    }
}

/// Whether two nonzero vectors span the same line.
pub fn projectively_equal<F: Field>(a: &[F], b: &[F]) -> bool {
    match (normalize_projective(a), normalize_projective(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// The Hessian determinant of f_λ, with λ formal.
pub fn hessian_determinant() -> P {
    let f = hesse_cubic_formal();
    let h: Vec<Vec<P>> = (0..3u8)
        .map(|i| {
            (0..3u8)
                .map(|j| f.partial_derivative(VariableId::x(i)).partial_derivative(VariableId::x(j)))
                .collect()
        })
        .collect();
    let minor = |a: usize, b: usize, cc: usize, d: usize| &(&h[1][a] * &h[2][b]) - &(&h[1][cc] * &h[2][d]);
    let t0 = &h[0][0] * &minor(1, 2, 2, 1);
    let t1 = &h[0][1] * &minor(0, 2, 2, 0);
    let t2 = &h[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

/// The nine images of (0:1:−1) under the plane Heisenberg group.
pub fn inflection_orbit(lambda: &Rational) -> Result<Vec<[Eisenstein; 3]>, HesseError> {
    if lambda.pow(3).is_one() {
        return Err(HesseError::SingularMember { lambda: lambda.to_string(), p: 0 });
    }
    let base = [Eisenstein::zero(), Eisenstein::one(), -Eisenstein::one()];
    let mut out: Vec<[Eisenstein; 3]> = Vec::new();
    for g in PlaneHeisenberg::all() {
        let img = normalize_projective(&g.act_on_point(&base)).expect("nonzero");
        let img: [Eisenstein; 3] = img.try_into().expect("three coordinates");
        if !out.contains(&img) {
            out.push(img);
        }
    }
    Ok(out)
}

/// Evaluates a polynomial in X or Y (and possibly λ) over ℚ(ω).
pub fn eval_eisenstein(p: &P, lambda: &Rational, pt: &[Eisenstein; 3]) -> Eisenstein {
    p.evaluate_with(
        |r| Some(Eisenstein::from_rational(r.clone())),
        |v| {
            if v == VariableId::lambda() {
                return Eisenstein::from_rational(lambda.clone());
            }
            (0..3u8)
                .find(|&i| v == VariableId::x(i) || v == VariableId::y(i))
                .map(|i| pt[i as usize].clone())
                .unwrap_or_else(Eisenstein::zero)
        },
        Eisenstein::zero(),
    )
    .expect("rational coefficients embed")
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspReport {
    pub d_y0: P,
    pub d_y1: P,
    pub d_y2: P,
    /// Second derivative of S restricted to Y₁ = Y₂ = 1, evaluated at Y₀ = λ.
    pub tangency: P,
}

impl CuspReport {
    pub fn passed(&self) -> bool {
        [&self.d_y0, &self.d_y1, &self.d_y2, &self.tangency].iter().all(|p| p.is_zero())
    }
}

/// Checks, identically in λ, that (λ:1:1) is singular on the closed-form sextic
/// and that the line Y₁ = Y₂ meets it there to order three.
pub fn cusp_orbit_check() -> CuspReport {
    let s = dual_sextic_closed_form(None).poly;
    let mut at = HashMap::new();
    at.insert(VariableId::y(0), lam());
    at.insert(VariableId::y(1), P::one());
    at.insert(VariableId::y(2), P::one());
    let d = |i: u8| s.partial_derivative(VariableId::y(i)).substitute(&at);
    let mut line = HashMap::new();
    line.insert(VariableId::y(1), P::one());
    line.insert(VariableId::y(2), P::one());
    let mut y0 = HashMap::new();
    y0.insert(VariableId::y(0), lam());
    let tangency = s
        .substitute(&line)
        .partial_derivative(VariableId::y(0))
        .partial_derivative(VariableId::y(0))
        .substitute(&y0);
    CuspReport { d_y0: d(0), d_y1: d(1), d_y2: d(2), tangency }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub lambda: Rational,
    pub p: u64,
    /// Number of F_p-points of f_λ = 0 in ℙ².
    pub points: u64,
    pub singular_points: u64,
    pub checked: u64,
    pub counterexamples: Vec<[u64; 3]>,
    pub hasse_ok: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.hasse_ok
    }

    pub fn verify(&self) -> Result<(), HesseError> {
        match self.counterexamples.first() {
            Some(pt) => Err(HesseError::Counterexample(*pt)),
            None => Ok(()),
        }
    }
}

fn projective_points(k: &PrimeField) -> impl Iterator<Item = [PrimeFieldElement; 3]> + '_ {
    let p = k.modulus();
    let affine = (0..p).flat_map(move |a| (0..p).map(move |b| [k.one(), k.elem(a as i64), k.elem(b as i64)]));
    let line = (0..p).map(move |b| [k.zero(), k.one(), k.elem(b as i64)]);
    affine.chain(line).chain(std::iter::once([k.zero(), k.zero(), k.one()]))
}

/// Scans every F_p-point of f_λ and evaluates the closed-form dual sextic at its
/// gradient image, without checking that λ is a smooth member.
pub fn duality_scan(lambda: &Rational, k: &PrimeField) -> Result<OracleReport, HesseError> {
    let p = k.modulus();
    let l = k.reduce_rational(lambda).ok_or_else(|| HesseError::BadDenominator(lambda.clone(), p))?;
    let dual = dual_sextic_closed_form(Some(lambda)).poly;
    let three = k.elem(3);
    let mut report = OracleReport {
        lambda: lambda.clone(),
        p,
        points: 0,
        singular_points: 0,
        checked: 0,
        counterexamples: Vec::new(),
        hasse_ok: false,
    };
    for pt in projective_points(k) {
        let [x0, x1, x2] = pt;
        let f = x0 * x0 * x0 + x1 * x1 * x1 + x2 * x2 * x2 - three * l * x0 * x1 * x2;
        if !f.is_zero() {
            continue;
        }
        report.points += 1;
        let g = match gradient_map(&l, &pt) {
            Ok(g) => g,
            Err(_) => {
                report.singular_points += 1;
                continue;
            }
        };
        report.checked += 1;
        let v = dual
            .evaluate_with(|r| k.reduce_rational(r), |var| g[(0..3u8).position(|i| var == VariableId::y(i)).unwrap_or(0)], k.zero())
            .ok_or_else(|| HesseError::BadDenominator(lambda.clone(), p))?;
        if !v.is_zero() {
            report.counterexamples.push(pt.map(|e| e.value));
        }
    }
    let dev = report.points as i128 - (p as i128 + 1);
    report.hasse_ok = dev * dev <= 4 * p as i128;
    Ok(report)
}

/// The duality oracle proper: requires a smooth member over F_p.
pub fn finite_field_duality_oracle(lambda: &Rational, p: u64) -> Result<OracleReport, HesseError> {
    let k = PrimeField::new(p)?;
    let l = k.reduce_rational(lambda).ok_or_else(|| HesseError::BadDenominator(lambda.clone(), p))?;
    if l.pow(3) == k.one() {
        return Err(HesseError::SingularMember { lambda: lambda.to_string(), p });
    }
    duality_scan(lambda, &k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_at(&q(2)), [q(30), q(-24), q(-24)]);
        assert_eq!(closed_form_at(&q(1))[1], q(-6));
        assert_eq!(closed_form_at(&q(0)), [q(-2), q(0), q(0)]);
    }

    #[test]
    fn fermat_dual() {
        let s = dual_sextic_closed_form(Some(&q(0))).poly;
        let b = sextic_basis();
        assert_eq!(s, &b[0] - &b[1].scalar_mul(&q(2)));
    }

    #[test]
    fn system_at_two() {
        assert_eq!(dual_sextic_from_cusp_system(&q(2)).unwrap(), [q(30), q(-24), q(-24)]);
    }

    #[test]
    fn system_singular_at_zero() {
        assert_eq!(dual_sextic_from_cusp_system(&q(0)), Err(HesseError::SingularSystem(q(0))));
    }

    #[test]
    fn gradient_examples() {
        let l = q(5);
        let g = gradient_map(&l, &[q(0), q(1), q(-1)]).unwrap();
        assert!(projectively_equal(&g, &[l.clone(), q(1), q(1)]));
        let g = gradient_map(&q(0), &[q(1), q(-1), q(0)]).unwrap();
        assert!(projectively_equal(&g, &[q(1), q(1), q(0)]));
        assert_eq!(gradient_map(&q(1), &[q(1), q(1), q(1)]), Err(HesseError::ZeroGradient));
    }

    #[test]
    fn hessian_shape() {
        // −54λ²(X₀³+X₁³+X₂³) + (216 − 54λ³)X₀X₁X₂
        let cubes = &(&xv(0).pow(3) + &xv(1).pow(3)) + &xv(2).pow(3);
        let prod = &(&xv(0) * &xv(1)) * &xv(2);
        let expect = &(&(&c(-54) * &lam().pow(2)) * &cubes) + &(&(&c(216) - &(&c(54) * &lam().pow(3))) * &prod);
        assert_eq!(hessian_determinant(), expect);
    }

    #[test]
    fn singular_member_rejected() {
        assert!(matches!(finite_field_duality_oracle(&q(1), 13), Err(HesseError::SingularMember { .. })));
    }
}
