//! The Heisenberg group H[3] for g = 2 and its Schrödinger action on the nine
//! theta coordinates.
//!
//! An element `(t, x, x*)` acts by `X_b ↦ ω^{t + x*·(b−x)} X_{b−x}`. The group
//! law is the one making this a left action:
//! `act(g·h, p) = act(g, act(h, p))`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ConstField, Eisenstein, ExactMatrix, Field};
use crate::poly::{Monomial, Poly, VariableId};

/// An element of (ℤ/3)².
pub type Idx = [u8; 2];

pub fn idx_add(a: Idx, b: Idx) -> Idx {
    [(a[0] + b[0]) % 3, (a[1] + b[1]) % 3]
}

pub fn idx_neg(a: Idx) -> Idx {
    [(3 - a[0]) % 3, (3 - a[1]) % 3]
}

pub fn idx_sub(a: Idx, b: Idx) -> Idx {
    idx_add(a, idx_neg(b))
}

pub fn dot(a: Idx, b: Idx) -> u8 {
    ((a[0] * b[0] + a[1] * b[1]) % 3) as u8
}

/// All of (ℤ/3)² in row-major order.
pub fn all_idx() -> impl Iterator<Item = Idx> {
    (0..9u8).map(|k| [k / 3, k % 3])
}

pub fn idx_pos(b: Idx) -> usize {
    3 * b[0] as usize + b[1] as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisenbergError {
    #[error("seed {0} has theta index sum ({1},{2}) which is not (0,0) mod 3")]
    NotKhatInvariant(String, u8, u8),
}

/// A point of A[3] ≅ (ℤ/3)⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Apoint {
    pub x: Idx,
    pub xstar: Idx,
}

impl Apoint {
    pub fn new(x: Idx, xstar: Idx) -> Self {
        Apoint { x: [x[0] % 3, x[1] % 3], xstar: [xstar[0] % 3, xstar[1] % 3] }
    }

    pub fn zero() -> Self {
        Apoint { x: [0, 0], xstar: [0, 0] }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn neg(&self) -> Self {
        Apoint { x: idx_neg(self.x), xstar: idx_neg(self.xstar) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Apoint { x: idx_add(self.x, o.x), xstar: idx_add(self.xstar, o.xstar) }
    }

    pub fn scale(&self, k: u8) -> Self {
        let k = k % 3;
        Apoint {
            x: [(self.x[0] * k) % 3, (self.x[1] * k) % 3],
            xstar: [(self.xstar[0] * k) % 3, (self.xstar[1] * k) % 3],
        }
    }

    pub fn all() -> impl Iterator<Item = Apoint> {
        (0..81u8).map(|k| Apoint {
            x: [k / 27, (k / 9) % 3],
            xstar: [(k / 3) % 3, k % 3],
        })
    }

    /// Representative of the class {a, −a}: the smaller of the two.
    pub fn class_rep(&self) -> Self {
        (*self).min(self.neg())
    }

    /// The 40 nonzero classes modulo ±, by representative.
    pub fn classes_mod_sign() -> Vec<Apoint> {
        let mut reps: Vec<Apoint> = Apoint::all()
            .filter(|a| !a.is_zero() && a.class_rep() == *a)
            .collect();
        reps.sort();
        reps
    }

    /// The element (0, x, x*) of the Heisenberg group.
    pub fn lift(&self, t: u8) -> HeisenbergElement {
        HeisenbergElement::new(t, self.x, self.xstar)
    }
}

/// ⟨(x,x*),(y,y*)⟩ = y*·x − x*·y mod 3.
pub fn weil_form(a: &Apoint, b: &Apoint) -> u8 {
    (dot(b.xstar, a.x) + 3 - dot(a.xstar, b.x)) % 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub t: u8,
    pub x: Idx,
    pub xstar: Idx,
}

impl HeisenbergElement {
    pub fn new(t: u8, x: Idx, xstar: Idx) -> Self {
        HeisenbergElement { t: t % 3, x: [x[0] % 3, x[1] % 3], xstar: [xstar[0] % 3, xstar[1] % 3] }
    }

    pub fn identity() -> Self {
        Self::new(0, [0, 0], [0, 0])
    }

    pub fn central(t: u8) -> Self {
        Self::new(t, [0, 0], [0, 0])
    }

    pub fn point(&self) -> Apoint {
        Apoint { x: self.x, xstar: self.xstar }
    }

    pub fn is_central(&self) -> bool {
        self.point().is_zero()
    }

    /// The four generators (0,e₁,0), (0,e₂,0), (0,0,e₁*), (0,0,e₂*).
    pub fn generators() -> [HeisenbergElement; 4] {
        [
            Self::new(0, [1, 0], [0, 0]),
            Self::new(0, [0, 1], [0, 0]),
            Self::new(0, [0, 0], [1, 0]),
            Self::new(0, [0, 0], [0, 1]),
        ]
    }

    pub fn all() -> impl Iterator<Item = HeisenbergElement> {
        (0..3u8).flat_map(|t| Apoint::all().map(move |a| a.lift(t)))
    }

    /// Product compatible with the action: the cocycle is x_h*·x_g.
    pub fn mul(&self, h: &Self) -> Self {
        Self::new(
            (self.t + h.t + dot(h.xstar, self.x)) % 3,
            idx_add(self.x, h.x),
            idx_add(self.xstar, h.xstar),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new((3 - self.t + dot(self.xstar, self.x)) % 3, idx_neg(self.x), idx_neg(self.xstar))
    }

    /// g h g⁻¹ h⁻¹.
    pub fn commutator(&self, h: &Self) -> Self {
        self.mul(h).mul(&self.inverse()).mul(&h.inverse())
    }

    /// Image of X_b: (exponent of ω, target index).
    pub fn on_coordinate(&self, b: Idx) -> (u8, Idx) {
        let shifted = idx_sub(b, self.x);
        ((self.t + dot(self.xstar, shifted)) % 3, shifted)
    }

    /// Matrix of the action on V in the basis X_00..X_22: column b holds the image of X_b.
    pub fn action_matrix(&self) -> ExactMatrix<Eisenstein> {
        let mut m = ExactMatrix::zeros(9, 9);
        for b in all_idx() {
            let (e, target) = self.on_coordinate(b);
            m.set(idx_pos(target), idx_pos(b), Eisenstein::omega_pow(e as i64));
        }
        m
    }

    /// Matrix of the dual action on points of ℙ(V): the transpose of [`Self::action_matrix`].
    pub fn point_action_matrix(&self) -> ExactMatrix<Eisenstein> {
        self.action_matrix().transpose()
    }

    pub fn act_on_polynomial(&self, p: &Poly<Eisenstein>) -> Poly<Eisenstein> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut exp = 0u32;
            for (b, e) in theta_powers(m) {
                exp += self.on_coordinate(b).0 as u32 * e as u32;
            }
            let image = m.map_theta(|i, j| {
                let s = idx_sub([i, j], self.x);
                (s[0], s[1])
            });
            out.add_term(image, c * &Eisenstein::omega_pow(exp as i64));
        }
        out
    }

    /// Whether `p` is fixed by this element.
    pub fn fixes(&self, p: &Poly<Eisenstein>) -> bool {
        self.act_on_polynomial(p) == *p
    }
}

fn theta_powers(m: &Monomial) -> impl Iterator<Item = (Idx, u16)> + '_ {
    all_idx()
        .map(move |b| (b, m.exponent(VariableId::theta(b[0], b[1]))))
        .filter(|&(_, e)| e > 0)
}

/// Sum of theta indices of a monomial, with multiplicity.
pub fn index_sum(m: &Monomial) -> Idx {
    theta_powers(m).fold([0, 0], |acc, (b, e)| {
        let e = (e % 3) as u8;
        [(acc[0] + b[0] * e) % 3, (acc[1] + b[1] * e) % 3]
    })
}

pub fn translate(m: &Monomial, x: Idx) -> Monomial {
    m.map_theta(|i, j| {
        let s = idx_sub([i, j], x);
        (s[0], s[1])
    })
}

/// The distinct monomials in the translation orbit of `seed`, in translation order.
pub fn translation_orbit(seed: &Monomial) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for x in all_idx() {
        let t = translate(seed, x);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Orbit sum under the translations (1, x, 0), each distinct monomial once.
pub fn orbit_sum<F: ConstField>(seed: &Monomial) -> Result<Poly<F>, HeisenbergError> {
    let s = index_sum(seed);
    if s != [0, 0] {
        return Err(HeisenbergError::NotKhatInvariant(seed.to_string(), s[0], s[1]));
    }
    Ok(Poly::sum_of(translation_orbit(seed)))
}

/// The raw sum Σ_x (1,x,0)·seed over all nine translations, with repetitions.
pub fn translation_sum<F: ConstField>(seed: &Monomial) -> Poly<F> {
    let mut p = Poly::zero();
    for x in all_idx() {
        p.add_term(translate(seed, x), F::one());
    }
    p
}

/// Dimension of the ω^k-eigenspace of the action matrix of `g`.
pub fn eigenspace_dim(g: &HeisenbergElement, k: u8) -> usize {
    let mut m = g.action_matrix();
    let w = Eisenstein::omega_pow(k as i64);
    for i in 0..9 {
        let v = m.get(i, i).clone() - w.clone();
        m.set(i, i, v);
    }
    9 - m.rank().expect("uniform field")
}

/// Gram matrix of the Weil form over ℤ/3 in the basis e₁, e₂, e₁*, e₂*.
pub fn weil_gram_rank() -> usize {
    let basis = [
        Apoint::new([1, 0], [0, 0]),
        Apoint::new([0, 1], [0, 0]),
        Apoint::new([0, 0], [1, 0]),
        Apoint::new([0, 0], [0, 1]),
    ];
    // ℤ/3 is not one of the PrimeField instances (3 ≢ 1 mod 3); eliminate by hand.
    let mut g: Vec<Vec<u8>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| weil_form(a, b)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..4 {
        let Some(p) = (rank..4).find(|&r| g[r][c] != 0) else { continue };
        g.swap(rank, p);
        let inv = if g[rank][c] == 1 { 1 } else { 2 };
        for j in 0..4 {
            g[rank][j] = (g[rank][j] * inv) % 3;
        }
        for r in 0..4 {
            if r != rank && g[r][c] != 0 {
                let f = g[r][c];
                for j in 0..4 {
                    g[r][j] = (g[r][j] + 3 * 3 - f * g[rank][j]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The plane Heisenberg group (g = 1) acting on points of ℙ² with coordinates
/// indexed by ℤ/3: `X_b ↦ ω^{t + x*(b−x)} X_{b−x}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlaneHeisenberg {
    pub t: u8,
    pub x: u8,
    pub xstar: u8,
}

impl PlaneHeisenberg {
    pub fn all() -> impl Iterator<Item = PlaneHeisenberg> {
        (0..27u8).map(|k| PlaneHeisenberg { t: k / 9, x: (k / 3) % 3, xstar: k % 3 })
    }

    /// Image of a point: coordinates shifted by x and scaled by the character ω^{x*·b}.
    pub fn act_on_point(&self, p: &[Eisenstein; 3]) -> [Eisenstein; 3] {
        let mut out: [Eisenstein; 3] = Default::default();
        for b in 0..3u8 {
            let src = ((b + self.x) % 3) as usize;
            let e = (self.t + self.xstar * b) % 3;
            out[b as usize] = &Eisenstein::omega_pow(e as i64) * &p[src];
        }
        out
    }
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn normalize_projective<F: Field>(v: &[F]) -> Option<Vec<F>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.inverse()?;
    Some(v.iter().map(|c| c.clone() * inv.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u8, j: u8) -> Poly<Eisenstein> {
        Poly::theta(i, j)
    }

    #[test]
    fn weil_examples() {
        let a = Apoint::new([1, 0], [0, 0]);
        let b = Apoint::new([0, 0], [1, 0]);
        assert_eq!(weil_form(&a, &b), 1);
        for a in Apoint::all() {
            assert_eq!(weil_form(&a, &a), 0);
        }
        let c = Apoint::new([0, 1], [1, 0]);
        let d = Apoint::new([1, 0], [0, 1]);
        assert_eq!(weil_form(&c, &d), 0);
        assert_eq!(weil_gram_rank(), 4);
    }

    #[test]
    fn forty_classes() {
        assert_eq!(Apoint::classes_mod_sign().len(), 40);
    }

    #[test]
    fn group_law_basics() {
        let g = HeisenbergElement::new(0, [1, 0], [0, 0]);
        assert_eq!(g.mul(&g).mul(&g), HeisenbergElement::identity());
        assert_eq!(g.mul(&g.inverse()), HeisenbergElement::identity());
        let h = HeisenbergElement::new(0, [0, 0], [1, 0]);
        let c = g.commutator(&h);
        assert!(c.is_central());
        assert_eq!(c.t, weil_form(&g.point(), &h.point()));
    }

    #[test]
    fn commutators_give_weil_form() {
        for g in HeisenbergElement::all().step_by(7) {
            for h in HeisenbergElement::all().step_by(5) {
                let c = g.commutator(&h);
                assert!(c.is_central());
                assert_eq!(c.t, weil_form(&g.point(), &h.point()));
            }
        }
    }

    #[test]
    fn character_acts_on_rows() {
        let g = HeisenbergElement::new(0, [0, 0], [1, 0]);
        for j in 0..3 {
            assert_eq!(g.act_on_polynomial(&z(1, j)), z(1, j).scalar_mul(&Eisenstein::omega()));
            assert_eq!(g.act_on_polynomial(&z(0, j)), z(0, j));
        }
    }

    #[test]
    fn center_trivial_in_degree_three() {
        let m = &(&z(0, 1) * &z(1, 2)) * &z(2, 2);
        assert_eq!(HeisenbergElement::central(1).act_on_polynomial(&m), m);
    }

    #[test]
    fn f0_invariant_under_shift() {
        let f0 = all_idx().fold(Poly::zero(), |acc, b| &acc + &z(b[0], b[1]).pow(3));
        let g = HeisenbergElement::new(0, [0, 1], [0, 0]);
        assert_eq!(g.act_on_polynomial(&f0), f0);
    }

    #[test]
    fn orbit_sums() {
        let seed = Monomial::theta_product(&[(0, 0); 3]);
        assert_eq!(orbit_sum::<Eisenstein>(&seed).unwrap().num_terms(), 9);
        let seed = Monomial::theta_product(&[(0, 0), (0, 1), (0, 2)]);
        let p = orbit_sum::<Eisenstein>(&seed).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(translation_sum::<Eisenstein>(&seed), p.scalar_mul(&Eisenstein::from_ints(3, 0)));
        let bad = Monomial::theta_product(&[(0, 0), (0, 0), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(matches!(orbit_sum::<Eisenstein>(&bad), Err(HeisenbergError::NotKhatInvariant(..))));
    }

    #[test]
    fn noncentral_eigenvalues_multiplicity_three() {
        for a in Apoint::all().filter(|a| !a.is_zero()) {
            for t in 0..3 {
                let g = a.lift(t);
                for k in 0..3 {
                    assert_eq!(eigenspace_dim(&g, k), 3, "{g:?} eigenvalue ω^{k}");
                }
            }
        }
    }
}
