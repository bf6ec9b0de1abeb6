//! Sparse multivariate polynomials over a [`Field`].
//!
//! Variables come from a fixed registry: the nine theta coordinates `Z_ij`
//! in row-major order, followed by the formal parameters. Monomials are dense
//! exponent vectors over that registry, and terms are kept in a map ordered
//! by graded lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{ArithError, ConstField, ExactMatrix, Field};

pub const NVARS: usize = 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Beta(u8),
    Lambda,
    Y(u8),
    /// Anti-invariant coordinates Z1..Z4 of the Y/Z splitting.
    Z(u8),
    /// Plane coordinates X0..X2 for cubics in ℙ².
    X(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Theta(u8, u8),
    Param(Param),
}

impl VariableId {
    pub fn theta(i: u8, j: u8) -> Self {
        VariableId::Theta(i % 3, j % 3)
    }

    pub fn beta(k: u8) -> Self {
        VariableId::Param(Param::Beta(k))
    }

    pub fn lambda() -> Self {
        VariableId::Param(Param::Lambda)
    }

    pub fn y(k: u8) -> Self {
        VariableId::Param(Param::Y(k))
    }

    pub fn z(k: u8) -> Self {
        VariableId::Param(Param::Z(k))
    }

    pub fn x(k: u8) -> Self {
        VariableId::Param(Param::X(k))
    }

    pub fn index(self) -> usize {
        match self {
            VariableId::Theta(i, j) => 3 * i as usize + j as usize,
            VariableId::Param(p) => match p {
                Param::Beta(k) if k < 5 => 9 + k as usize,
                Param::Lambda => 14,
                Param::Y(k) if k < 5 => 15 + k as usize,
                Param::Z(k) if (1..=4).contains(&k) => 19 + k as usize,
                Param::X(k) if k < 3 => 24 + k as usize,
                other => panic!("parameter {other:?} outside the registry"),
            },
        }
    }

    pub fn from_index(i: usize) -> Self {
        match i {
            0..=8 => VariableId::Theta((i / 3) as u8, (i % 3) as u8),
            9..=13 => VariableId::beta((i - 9) as u8),
            14 => VariableId::lambda(),
            15..=19 => VariableId::y((i - 15) as u8),
            20..=23 => VariableId::z((i - 19) as u8),
            24..=26 => VariableId::x((i - 24) as u8),
            _ => panic!("variable index {i} out of range"),
        }
    }

    pub fn all_theta() -> impl Iterator<Item = VariableId> {
        (0..9).map(VariableId::from_index)
    }

    pub fn is_theta(self) -> bool {
        matches!(self, VariableId::Theta(..))
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Theta(i, j) => write!(f, "Z{i}{j}"),
            VariableId::Param(Param::Beta(k)) => write!(f, "b{k}"),
            VariableId::Param(Param::Lambda) => write!(f, "lambda"),
            VariableId::Param(Param::Y(k)) => write!(f, "Y{k}"),
            VariableId::Param(Param::Z(k)) => write!(f, "Z{k}"),
            VariableId::Param(Param::X(k)) => write!(f, "X{k}"),
        }
    }
}

/// Exponent vector over the variable registry.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: VariableId) -> Self {
        Self::one().with(v, 1)
    }

    pub fn from_powers(powers: &[(VariableId, u16)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in powers {
            m.0[v.index()] += e;
        }
        m
    }

    /// Product of theta variables given by index pairs, repeated as needed.
    pub fn theta_product(idx: &[(u8, u8)]) -> Self {
        let mut m = Self::one();
        for &(i, j) in idx {
            m.0[VariableId::theta(i, j).index()] += 1;
        }
        m
    }

    pub fn with(mut self, v: VariableId, e: u16) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn exponent(&self, v: VariableId) -> u16 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> &[u16; NVARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn theta_degree(&self) -> u32 {
        self.0[..9].iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        Monomial(out)
    }

    pub fn powers(&self) -> impl Iterator<Item = (VariableId, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (VariableId::from_index(i), e))
    }

    /// Theta indices with multiplicity, in row-major order.
    pub fn theta_indices(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for k in 0..9 {
            for _ in 0..self.0[k] {
                out.push(((k / 3) as u8, (k % 3) as u8));
            }
        }
        out
    }

    /// Relabels theta variables through `f`; parameters stay put.
    pub fn map_theta(&self, f: impl Fn(u8, u8) -> (u8, u8)) -> Self {
        let mut out = *self;
        for k in 0..9 {
            out.0[k] = 0;
        }
        for k in 0..9 {
            let (i, j) = f((k / 3) as u8, (k % 3) as u8);
            out.0[VariableId::theta(i, j).index()] += self.0[k];
        }
        out
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: higher total degree first, then larger exponent
    /// of the earliest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .powers()
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial is not in the span of the basis")]
    NotInSpan,
    #[error("operands come from different fields")]
    MixedFields,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Sparse polynomial: nonzero coefficients keyed by monomial.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: ConstField> Poly<F> {
    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn var(v: VariableId) -> Self {
        Self::monomial(Monomial::var(v), F::one())
    }

    pub fn theta(i: u8, j: u8) -> Self {
        Self::var(VariableId::theta(i, j))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    /// Sum of monomials, each with coefficient 1.
    pub fn sum_of(monos: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero();
        for m in monos {
            p.add_term(m, F::one());
        }
        p
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(cur) => {
                let s = cur.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> Vec<VariableId> {
        let mut seen = [false; NVARS];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                seen[i] |= e > 0;
            }
        }
        (0..NVARS).filter(|&i| seen[i]).map(VariableId::from_index).collect()
    }

    fn some_coeff(&self) -> Option<&F> {
        self.terms.values().next()
    }

    pub fn scalar_mul(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self
    where
        F: ConstField,
    {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: VariableId) -> Self {
        let k = v.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[k] -= 1;
            out.add_term(dm, c.int_like(e as i64) * c.clone());
        }
        out
    }

    /// Replaces each assigned variable by its image; unassigned variables stay.
    pub fn substitute(&self, assignment: &HashMap<VariableId, Poly<F>>) -> Self
    where
        F: ConstField,
    {
        let mut cache: HashMap<(usize, u16), Poly<F>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = Monomial::one();
            let mut image = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assignment.get(&VariableId::from_index(i)) {
                    None => rest.0[i] = e,
                    Some(target) => {
                        let pw = cache.entry((i, e)).or_insert_with(|| target.pow(e as u32));
                        image = &image * pw;
                        if image.is_zero() {
                            break;
                        }
                    }
                }
            }
            for (im, ic) in image.terms {
                out.add_term(im.mul(&rest), ic);
            }
        }
        out
    }

    /// Evaluates through a coefficient map into another field. Returns `None`
    /// when some coefficient has no image.
    pub fn evaluate_with<G: Field>(
        &self,
        coeff: impl Fn(&F) -> Option<G>,
        point: impl Fn(VariableId) -> G,
        zero: G,
    ) -> Option<G> {
        let mut vals: Vec<Option<G>> = vec![None; NVARS];
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = coeff(c)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = vals[i].get_or_insert_with(|| point(VariableId::from_index(i))).clone();
                for _ in 0..e {
                    t = t * base.clone();
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    fn fields_agree(&self, other: &Self) -> bool {
        match (self.some_coeff(), other.some_coeff()) {
            (Some(a), Some(b)) => {
                self.terms.values().chain(other.terms.values()).all(|c| c.same_field(a)) && a.same_field(b)
            }
            _ => true,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if !self.fields_agree(other) {
            return Err(PolyError::MixedFields);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if !self.fields_agree(other) {
            return Err(PolyError::MixedFields);
        }
        Ok(self * other)
    }

    /// Unique coordinates of `self` in `basis`, by exact elimination on the
    /// monomial-coefficient matrix.
    pub fn coefficient_in_basis(&self, basis: &[Poly<F>]) -> Result<Vec<F>, PolyError>
    where
        F: ConstField,
    {
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in basis.iter().chain(std::iter::once(self)) {
            for m in p.terms.keys() {
                let n = index.len();
                index.entry(*m).or_insert(n);
            }
        }
        let mut a = ExactMatrix::<F>::zeros(index.len(), basis.len());
        for (j, p) in basis.iter().enumerate() {
            for (m, c) in &p.terms {
                a.set(index[m], j, c.clone());
            }
        }
        let mut rhs = vec![F::zero(); index.len()];
        for (m, c) in &self.terms {
            rhs[index[m]] = c.clone();
        }
        let x = a.solve(&rhs)?.ok_or(PolyError::NotInSpan)?;
        if a.rank()? < basis.len() {
            return Err(ArithError::Dimension("basis is linearly dependent".into()).into());
        }
        Ok(x)
    }
}

/// Exact rank of a family of polynomials viewed as coefficient vectors.
pub fn poly_rank<F: ConstField>(polys: &[Poly<F>]) -> Result<usize, ArithError> {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for m in p.monomials() {
            let n = index.len();
            index.entry(*m).or_insert(n);
        }
    }
    let mut a = ExactMatrix::<F>::zeros(polys.len(), index.len());
    for (i, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            a.set(i, index[m], c.clone());
        }
    }
    a.rank()
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if *m == Monomial::one() {
                    c.to_string()
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field + fmt::Display> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct TermRef<'a, F> {
    coeff: &'a F,
    exps: &'a [u16],
}

/// Serialized as a list of `{"coeff", "exps"}` records, highest term first.
impl<F: Field + Serialize> Serialize for Poly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermRef { coeff: c, exps: &m.0 })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Eisenstein, Rational};

    type P = Poly<Eisenstein>;

    fn z(i: u8, j: u8) -> P {
        P::theta(i, j)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z(0, 0) + &z(0, 1)) * &(&z(0, 0) - &z(0, 1));
        let expect = &z(0, 0).pow(2) - &z(0, 1).pow(2);
        assert_eq!(p, expect);
        assert!((&P::zero() * &p).is_zero());
    }

    #[test]
    fn binomial_with_omega() {
        let w = P::constant(Eisenstein::omega());
        let p = (&z(0, 0) + &(&w * &z(0, 1))).pow(3);
        let m = Monomial::theta_product(&[(0, 0), (0, 0), (0, 1)]);
        assert_eq!(p.coeff(&m), Some(&Eisenstein::from_ints(0, 3)));
    }

    #[test]
    fn derivatives() {
        let p = z(0, 0).pow(3);
        assert_eq!(p.partial_derivative(VariableId::theta(0, 0)), &P::from_i64(3) * &z(0, 0).pow(2));
        let q = &(&z(0, 0) * &z(0, 1)) * &z(0, 2);
        assert_eq!(q.partial_derivative(VariableId::theta(0, 1)), &z(0, 0) * &z(0, 2));
    }

    #[test]
    fn substitution_examples() {
        let f0 = VariableId::all_theta().fold(P::zero(), |acc, v| &acc + &P::var(v).pow(3));
        let mut asg = HashMap::new();
        for i in 1..3 {
            for j in 0..3 {
                asg.insert(VariableId::theta(i, j), P::zero());
            }
        }
        let expect = &(&z(0, 0).pow(3) + &z(0, 1).pow(3)) + &z(0, 2).pow(3);
        assert_eq!(f0.substitute(&asg), expect);

        let y1 = P::var(VariableId::y(1));
        let z1 = P::var(VariableId::z(1));
        let mut asg = HashMap::new();
        asg.insert(VariableId::theta(0, 1), &y1 + &z1);
        asg.insert(VariableId::theta(0, 2), &y1 - &z1);
        let got = (&z(0, 1) * &z(0, 2)).substitute(&asg);
        assert_eq!(got, &y1.pow(2) - &z1.pow(2));
    }

    #[test]
    fn basis_coordinates() {
        let y = |k| P::var(VariableId::y(k));
        let s1 = &(&y(0).pow(6) + &y(1).pow(6)) + &y(2).pow(6);
        let s4 = (&(&y(0) * &y(1)) * &y(2)).pow(2);
        let basis = vec![s1.clone(), s4];
        let two = Eisenstein::from_ints(2, 0);
        let c = s1.scalar_mul(&two).coefficient_in_basis(&basis).unwrap();
        assert_eq!(c, vec![two, Eisenstein::zero()]);
        assert_eq!(y(0).pow(6).coefficient_in_basis(&basis), Err(PolyError::NotInSpan));
    }

    #[test]
    fn json_order_is_graded_lex() {
        let p: Poly<Rational> = &(&Poly::theta(0, 1) + &Poly::theta(0, 0).pow(2)) + &Poly::one();
        let s = serde_json::to_value(&p).unwrap();
        let arr = s.as_array().unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr[0]["exps"][0], 2);
        assert_eq!(arr[1]["exps"][1], 1);
        assert_eq!(arr[2]["coeff"], "1");
        assert_eq!(arr[0]["exps"].as_array().unwrap().len(), NVARS);
    }

    #[test]
    fn registry_roundtrip() {
        for i in 0..NVARS {
            assert_eq!(VariableId::from_index(i).index(), i);
        }
        assert_eq!(VariableId::theta(2, 2).index(), 8);
        assert_eq!(VariableId::z(4).to_string(), "Z4");
    }
}
