//! A[3]-invariant forms of degree 3 and 6 and the ι-splitting.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arith::{ArithError, ConstField, Eisenstein, ExactMatrix, Field};
use crate::heisenberg::{index_sum, orbit_sum, translation_orbit, HeisenbergElement};
use crate::poly::{poly_rank, Monomial, Poly, PolyError};

type P = Poly<Eisenstein>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("degree {0} is not divisible by 3")]
    DegreeNotDivisibleBy3(u32),
    #[error("explicit bases are only built in degrees 3 and 6, not {0}")]
    UnsupportedDegree(u32),
    #[error("found {found} orbit sums in degree {degree}, expected {expected}")]
    InternalCountMismatch { degree: u32, found: usize, expected: usize },
    #[error("orbit sum {0} matches no labelled element")]
    Unlabelled(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub degree: u32,
    pub elements: Vec<P>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct IotaSplit {
    pub plus_basis: Vec<P>,
    pub minus_basis: Vec<P>,
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of (S^d V)^{A[3]} from the trace formula
/// (80·C(d/3+2, 2) + C(d+8, 8)) / 81.
pub fn invariant_dimension(d: u32) -> Result<u64, InvariantError> {
    if d % 3 != 0 {
        return Err(InvariantError::DegreeNotDivisibleBy3(d));
    }
    let d = d as u64;
    let num = 80 * binom(d / 3 + 2, 2) + binom(d + 8, 8);
    debug_assert_eq!(num % 81, 0);
    Ok(num / 81)
}

/// Every monomial of degree `d` in the nine theta variables.
pub fn theta_monomials(d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Monomial>) {
        if pos == 8 {
            for _ in 0..left {
                cur.push((2, 2));
            }
            out.push(Monomial::theta_product(cur));
            for _ in 0..left {
                cur.pop();
            }
            return;
        }
        let b = ((pos / 3) as u8, (pos % 3) as u8);
        for e in (0..=left).rev() {
            for _ in 0..e {
                cur.push(b);
            }
            rec(pos + 1, left - e, cur, out);
            for _ in 0..e {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut Vec::new(), &mut out);
    out
}

/// Number of translation orbits of K̂-invariant monomials of degree `d`,
/// counted combinatorially.
pub fn count_invariant_orbits(d: u32) -> usize {
    let mut reps = BTreeSet::new();
    for m in theta_monomials(d) {
        if index_sum(&m) == [0, 0] {
            let rep = translation_orbit(&m).into_iter().min().expect("nonempty orbit");
            reps.insert(rep);
        }
    }
    reps.len()
}

fn t(idx: &[(u8, u8, u16)]) -> Monomial {
    let mut v = Vec::new();
    for &(i, j, e) in idx {
        for _ in 0..e {
            v.push((i, j));
        }
    }
    Monomial::theta_product(&v)
}

/// Seeds of T1..T43 in table order.
pub fn sextic_seeds() -> Vec<Monomial> {
    vec![
        t(&[(0, 0, 6)]),
        t(&[(0, 0, 3), (0, 1, 3)]),
        t(&[(0, 0, 3), (1, 0, 3)]),
        t(&[(0, 0, 3), (1, 1, 3)]),
        t(&[(0, 0, 3), (1, 2, 3)]),
        t(&[(0, 0, 4), (0, 1, 1), (0, 2, 1)]),
        t(&[(0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 0, 3)]),
        t(&[(0, 0, 1), (0, 1, 1), (0, 2, 1), (2, 0, 3)]),
        t(&[(0, 0, 4), (1, 0, 1), (2, 0, 1)]),
        t(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (0, 1, 3)]),
        t(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (0, 2, 3)]),
        t(&[(0, 0, 4), (1, 1, 1), (2, 2, 1)]),
        t(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 1, 3)]),
        t(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 2, 3)]),
        t(&[(0, 0, 4), (1, 2, 1), (2, 1, 1)]),
        t(&[(0, 0, 1), (1, 2, 1), (2, 1, 1), (1, 0, 3)]),
        t(&[(0, 0, 1), (1, 2, 1), (2, 1, 1), (2, 0, 3)]),
        t(&[(0, 0, 2), (0, 1, 2), (0, 2, 2)]),
        t(&[(0, 0, 2), (1, 0, 2), (2, 0, 2)]),
        t(&[(0, 0, 2), (1, 1, 2), (2, 2, 2)]),
        t(&[(0, 0, 2), (2, 1, 2), (1, 2, 2)]),
        t(&[(0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 0, 1), (1, 1, 1), (1, 2, 1)]),
        t(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1)]),
        t(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 1, 1), (1, 2, 1), (2, 0, 1)]),
        t(&[(0, 0, 1), (1, 2, 1), (2, 1, 1), (0, 1, 1), (1, 0, 1), (2, 2, 1)]),
        t(&[(0, 0, 2), (0, 1, 1), (1, 1, 1), (1, 2, 2)]),
        t(&[(0, 0, 2), (0, 2, 1), (1, 2, 1), (1, 1, 2)]),
        t(&[(0, 0, 2), (1, 1, 1), (2, 1, 1), (0, 2, 2)]),
        t(&[(0, 0, 2), (1, 0, 1), (1, 1, 1), (2, 1, 2)]),
        t(&[(0, 0, 2), (1, 0, 1), (1, 2, 1), (2, 2, 2)]),
        t(&[(0, 0, 2), (1, 1, 1), (1, 2, 1), (2, 0, 2)]),
        t(&[(0, 0, 2), (0, 1, 1), (1, 2, 1), (1, 0, 2)]),
        t(&[(0, 0, 2), (0, 2, 1), (1, 1, 1), (1, 0, 2)]),
        t(&[(0, 0, 2), (1, 0, 1), (2, 1, 1), (0, 1, 2)]),
        t(&[(0, 0, 2), (1, 0, 1), (2, 2, 1), (0, 2, 2)]),
        t(&[(0, 0, 2), (1, 0, 1), (0, 1, 1), (1, 1, 2)]),
        t(&[(0, 0, 2), (0, 1, 1), (2, 0, 1), (2, 1, 2)]),
        t(&[(0, 0, 2), (0, 1, 1), (0, 2, 1), (1, 0, 1), (2, 0, 1)]),
        t(&[(0, 0, 2), (0, 1, 1), (0, 2, 1), (1, 1, 1), (2, 2, 1)]),
        t(&[(0, 0, 2), (0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 1, 1)]),
        t(&[(0, 0, 2), (1, 0, 1), (2, 0, 1), (1, 1, 1), (2, 2, 1)]),
        t(&[(0, 0, 2), (1, 0, 1), (2, 0, 1), (1, 2, 1), (2, 1, 1)]),
        t(&[(0, 0, 2), (1, 1, 1), (2, 2, 1), (1, 2, 1), (2, 1, 1)]),
    ]
}

/// Seeds of F0..F4.
pub fn cubic_seeds() -> Vec<Monomial> {
    vec![
        t(&[(0, 0, 3)]),
        t(&[(0, 0, 1), (0, 1, 1), (0, 2, 1)]),
        t(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)]),
        t(&[(0, 0, 1), (1, 1, 1), (2, 2, 1)]),
        t(&[(0, 0, 1), (1, 2, 1), (2, 1, 1)]),
    ]
}

/// T_j = orbit sum of the j-th seed.
pub fn sextic_basis() -> Vec<P> {
    sextic_seeds()
        .iter()
        .map(|s| orbit_sum(s).expect("seeds are K̂-invariant"))
        .collect()
}

pub fn sextic_labels() -> Vec<String> {
    (1..=43).map(|j| format!("T{j}")).collect()
}

/// Orbit sums of all K̂-invariant monomials of degree `d`, deduplicated by
/// polynomial equality, in order of first appearance.
pub fn enumerate_orbit_sums(d: u32) -> Vec<P> {
    let mut seen: BTreeSet<Vec<Monomial>> = BTreeSet::new();
    let mut out = Vec::new();
    for m in theta_monomials(d) {
        if index_sum(&m) != [0, 0] {
            continue;
        }
        let p: P = orbit_sum(&m).expect("checked");
        let key: Vec<Monomial> = p.monomials().copied().collect();
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

/// Labelled basis of (S^d V)^{A[3]} for d ∈ {3, 6}, built by orbit enumeration
/// and ordered by matching against the seed tables.
pub fn invariant_basis(d: u32) -> Result<InvariantBasis, InvariantError> {
    let (seeds, prefix, offset) = match d {
        3 => (cubic_seeds(), "F", 0),
        6 => (sextic_seeds(), "T", 1),
        _ => return Err(InvariantError::UnsupportedDegree(d)),
    };
    let expected = invariant_dimension(d)? as usize;
    let found = enumerate_orbit_sums(d);
    if found.len() != expected {
        return Err(InvariantError::InternalCountMismatch { degree: d, found: found.len(), expected });
    }
    let labelled: Vec<P> = seeds.iter().map(|s| orbit_sum(s).expect("seed")).collect();
    let mut elements = Vec::with_capacity(expected);
    let mut labels = Vec::with_capacity(expected);
    for (k, target) in labelled.iter().enumerate() {
        if !found.contains(target) {
            return Err(InvariantError::Unlabelled(format!("{prefix}{}", k + offset)));
        }
        elements.push(target.clone());
        labels.push(format!("{prefix}{}", k + offset));
    }
    for p in &found {
        if !labelled.contains(p) {
            return Err(InvariantError::Unlabelled(p.to_string()));
        }
    }
    Ok(InvariantBasis { degree: d, elements, labels })
}

/// Whether `p` is fixed by the four generators of A[3].
pub fn is_a3_invariant(p: &P) -> bool {
    HeisenbergElement::generators().iter().all(|g| g.fixes(p))
}

/// Z_(i,j) ↦ Z_(−i,−j).
pub fn iota_act(p: &P) -> P {
    p.map_monomials(|m| m.map_theta(|i, j| ((3 - i) % 3, (3 - j) % 3)))
}

/// Eigenbases of ι on the span of `basis`.
pub fn iota_split(basis: &InvariantBasis) -> Result<IotaSplit, InvariantError> {
    let n = basis.elements.len();
    let mut m = ExactMatrix::<Eisenstein>::zeros(n, n);
    for (j, p) in basis.elements.iter().enumerate() {
        let coords = iota_act(p).coefficient_in_basis(&basis.elements)?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    let eigen = |sign: i64| -> Result<Vec<P>, InvariantError> {
        let mut a = m.clone();
        for i in 0..n {
            let v = a.get(i, i).clone() - Eisenstein::from_i64(sign);
            a.set(i, i, v);
        }
        let rk = a.rank_and_kernel()?;
        Ok(rk
            .kernel
            .iter()
            .map(|v| combine(&basis.elements, v))
            .collect())
    };
    Ok(IotaSplit { plus_basis: eigen(1)?, minus_basis: eigen(-1)? })
}

/// Σ c_i p_i.
pub fn combine(basis: &[P], coeffs: &[Eisenstein]) -> P {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(P::zero(), |acc, (p, c)| &acc + &p.scalar_mul(c))
}

/// Exact rank of the coefficient matrix of `polys`.
pub fn rank_of(polys: &[P]) -> Result<usize, ArithError> {
    poly_rank(polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(invariant_dimension(3).unwrap(), 5);
        assert_eq!(invariant_dimension(6).unwrap(), 43);
        assert_eq!(invariant_dimension(9).unwrap(), 310);
        assert_eq!(invariant_dimension(4), Err(InvariantError::DegreeNotDivisibleBy3(4)));
    }

    #[test]
    fn orbit_counts_match_trace_formula() {
        for d in [3, 6] {
            assert_eq!(count_invariant_orbits(d) as u64, invariant_dimension(d).unwrap());
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(theta_monomials(3).len(), 165);
        assert_eq!(theta_monomials(6).len(), 3003);
    }

    #[test]
    fn cubic_basis() {
        let b = invariant_basis(3).unwrap();
        assert_eq!(b.labels, vec!["F0", "F1", "F2", "F3", "F4"]);
        assert_eq!(b.elements[0].num_terms(), 9);
        assert_eq!(b.elements[1].num_terms(), 3);
        assert!(b.elements.iter().all(is_a3_invariant));
        let split = iota_split(&b).unwrap();
        assert_eq!(split.plus_basis.len(), 5);
        assert!(split.minus_basis.is_empty());
    }

    #[test]
    fn unsupported_degree() {
        assert!(matches!(invariant_basis(9), Err(InvariantError::UnsupportedDegree(9))));
    }

    #[test]
    fn iota_involution() {
        let t = sextic_basis();
        let w1 = &t[7] - &t[6];
        assert_eq!(iota_act(&w1), -w1.clone());
        assert_eq!(iota_act(&iota_act(&t[25])), t[25]);
    }
}
