//! Algebraic properties checked on random inputs. Each predicate returns
//! `Err` with a description on failure; [`run_suite`] drives them from a
//! seeded generator so reports are reproducible.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{ConstField, Eisenstein, ExactMatrix, Field, PrimeField, PrimeFieldElement, Rational};
use crate::heisenberg::{eigenspace_dim, weil_form, HeisenbergElement};
use crate::poly::{Monomial, Poly, VariableId};

pub type Check = Result<(), String>;

fn ensure(cond: bool, what: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

/// Ring and field axioms on three elements.
pub fn field_axioms<F: Field>(a: &F, b: &F, c: &F) -> Check {
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    let zero = a.zero_like();
    let one = a.one_like();
    ensure(a.clone() + b.clone() == b.clone() + a.clone(), "addition commutes")?;
    ensure(a.clone() * b.clone() == b.clone() * a.clone(), "multiplication commutes")?;
    ensure((a.clone() + b.clone()) + c.clone() == a.clone() + (b.clone() + c.clone()), "addition associates")?;
    ensure((a.clone() * b.clone()) * c.clone() == a.clone() * (b.clone() * c.clone()), "multiplication associates")?;
    ensure(a.clone() * (b.clone() + c.clone()) == a.clone() * b.clone() + a.clone() * c.clone(), "distributivity")?;
    ensure(a.clone() + zero.clone() == a, "additive identity")?;
    ensure(a.clone() * one.clone() == a, "multiplicative identity")?;
    ensure(a.clone() + (-a.clone()) == zero, "additive inverse")?;
    ensure(a.clone() - b.clone() == a.clone() + (-b.clone()), "subtraction")?;
    match a.inverse() {
        Some(inv) => ensure(!a.is_zero() && a.clone() * inv == one, "multiplicative inverse"),
        None => ensure(a.is_zero(), "nonzero element has an inverse"),
    }
}

/// N(ab) = N(a)N(b) and a·ā = N(a) in ℚ(ω).
pub fn norm_multiplicative(a: &Eisenstein, b: &Eisenstein) -> Check {
    ensure((a * b).norm() == &a.norm() * &b.norm(), "norm is multiplicative")?;
    ensure(a * &a.conj() == Eisenstein::from_rational(a.norm()), "a times conjugate is the norm")
}

/// ∂(pq) = ∂p·q + p·∂q.
pub fn leibniz(p: &Poly<Rational>, q: &Poly<Rational>, v: VariableId) -> Check {
    let lhs = (p * q).partial_derivative(v);
    let rhs = &(&p.partial_derivative(v) * q) + &(p * &q.partial_derivative(v));
    ensure(lhs == rhs, "Leibniz rule")
}

/// Σ X_b ∂p/∂X_b = d·p for p homogeneous of degree d in the theta variables.
pub fn euler(p: &Poly<Rational>, d: u32) -> Check {
    let mut acc = Poly::zero();
    for v in VariableId::all_theta() {
        acc = &acc + &(&Poly::var(v) * &p.partial_derivative(v));
    }
    ensure(acc == p.scalar_mul(&Rational::integer(d as i64)), "Euler identity")
}

/// The action is a homomorphism and commutators are central with the Weil form.
pub fn action_composition(g: &HeisenbergElement, h: &HeisenbergElement, p: &Poly<Eisenstein>) -> Check {
    let gh = g.mul(h);
    let prod = g.action_matrix().mul(&h.action_matrix()).map_err(|e| e.to_string())?;
    ensure(gh.action_matrix() == prod, "matrix of a product")?;
    ensure(gh.act_on_polynomial(p) == g.act_on_polynomial(&h.act_on_polynomial(p)), "action on polynomials")?;
    ensure(g.mul(&g.inverse()) == HeisenbergElement::identity(), "inverse")?;
    let c = g.commutator(h);
    ensure(c.is_central(), "commutator is central")?;
    ensure(c.t == weil_form(&g.point(), &h.point()), "commutator equals the Weil form")
}

/// A noncentral element has each cube root of unity with multiplicity three.
pub fn eigen_multiplicity(g: &HeisenbergElement) -> Check {
    if g.is_central() {
        return Ok(());
    }
    ensure((0..3).all(|k| eigenspace_dim(g, k) == 3), "eigenvalue multiplicity three")
}

/// rank + nullity = columns, kernel vectors are annihilated, row rank = column rank.
pub fn rank_nullity<F: Field>(m: &ExactMatrix<F>) -> Check {
    let rk = m.rank_and_kernel().map_err(|e| e.to_string())?;
    ensure(rk.rank + rk.kernel.len() == m.ncols(), "rank plus nullity")?;
    for v in &rk.kernel {
        let w = m.mul_vec(v).map_err(|e| e.to_string())?;
        ensure(w.iter().all(Field::is_zero), "kernel vector is annihilated")?;
    }
    ensure(m.transpose().rank().map_err(|e| e.to_string())? == rk.rank, "row rank equals column rank")
}

pub fn random_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-30..=30), rng.gen_range(1..=12))
}

pub fn random_eisenstein(rng: &mut StdRng) -> Eisenstein {
    Eisenstein::new(random_rational(rng), random_rational(rng))
}

pub fn random_element(rng: &mut StdRng) -> HeisenbergElement {
    let mut r = || rng.gen_range(0..3u8);
    HeisenbergElement::new(r(), [r(), r()], [r(), r()])
}

/// Sum of up to `terms` random theta monomials of degree `d`.
pub fn random_theta_poly<F: ConstField>(rng: &mut StdRng, d: u32, terms: usize, coeff: impl Fn(&mut StdRng) -> F) -> Poly<F> {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let idx: Vec<(u8, u8)> = (0..d).map(|_| (rng.gen_range(0..3), rng.gen_range(0..3))).collect();
        p.add_term(Monomial::theta_product(&idx), coeff(rng));
    }
    p
}

/// Random matrix with a prescribed rank deficiency pattern: some rows are
/// combinations of others.
pub fn random_matrix(rng: &mut StdRng) -> ExactMatrix<Rational> {
    let rows = rng.gen_range(1..=7);
    let cols = rng.gen_range(1..=7);
    let mut data: Vec<Vec<Rational>> = Vec::new();
    for i in 0..rows {
        if i >= 2 && rng.gen_bool(0.4) {
            let (a, b) = (random_rational(rng), random_rational(rng));
            let r: Vec<Rational> = (0..cols).map(|j| &(&a * &data[0][j]) + &(&b * &data[1][j])).collect();
            data.push(r);
        } else {
            data.push((0..cols).map(|_| if rng.gen_bool(0.3) { Rational::zero() } else { random_rational(rng) }).collect());
        }
    }
    ExactMatrix::from_rows(data).expect("rectangular")
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn run(name: &'static str, cases: usize, rng: &mut StdRng, mut case: impl FnMut(&mut StdRng) -> Check) -> SuiteOutcome {
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..cases {
        if let Err(e) = case(rng) {
            failures += 1;
            first_failure.get_or_insert(e);
        }
    }
    SuiteOutcome { name, cases, failures, first_failure }
}

/// Runs every property family `cases` times from `seed`.
pub fn run_suite(seed: u64, cases: usize) -> Vec<SuiteOutcome> {
    let mut rng = StdRng::seed_from_u64(seed);
    let primes = [7u64, 13, 31, 997];
    let int_coeff = |r: &mut StdRng| Rational::integer(r.gen_range(-5..=5));
    vec![
        run("field axioms (Q)", cases, &mut rng, |r| {
            field_axioms(&random_rational(r), &random_rational(r), &random_rational(r))
        }),
        run("field axioms (Q(w))", cases, &mut rng, |r| {
            let (a, b) = (random_eisenstein(r), random_eisenstein(r));
            field_axioms(&a, &b, &random_eisenstein(r))?;
            norm_multiplicative(&a, &b)
        }),
        run("field axioms (F_p)", cases, &mut rng, |r| {
            let k = PrimeField::new(primes[r.gen_range(0..primes.len())]).expect("valid prime");
            let mut e = || -> PrimeFieldElement { k.elem(r.gen_range(0..k.modulus() as i64)) };
            field_axioms(&e(), &e(), &e())
        }),
        run("Leibniz and Euler", cases, &mut rng, |r| {
            let d = r.gen_range(1..=4);
            let p = random_theta_poly(r, d, 4, int_coeff);
            let e = r.gen_range(1..=3);
            let q = random_theta_poly(r, e, 3, int_coeff);
            let v = VariableId::from_index(r.gen_range(0..9));
            leibniz(&p, &q, v)?;
            euler(&p, d)
        }),
        run("action composition", cases, &mut rng, |r| {
            let p = random_theta_poly(r, 3, 3, |r: &mut StdRng| Eisenstein::from_ints(r.gen_range(-3..=3), r.gen_range(-3..=3)));
            action_composition(&random_element(r), &random_element(r), &p)
        }),
        run("eigenvalue multiplicity", cases, &mut rng, |r| eigen_multiplicity(&random_element(r))),
        run("rank-nullity", cases, &mut rng, |r| rank_nullity(&random_matrix(r))),
    ]
}

pub const DEFAULT_SEED: u64 = 0x5eed_c0b1e;
pub const DEFAULT_CASES: usize = 256;
