//! Printed forms transcribed as data: the 43 invariant sextics in `T := ...`
//! assignment syntax, the cubics F₀..F₄, Barth's nine quadrics, and their Y/Z
//! rewriting. These are kept separate from the generating code so that they
//! can serve as an independent oracle.

use crate::arith::{ConstField, Eisenstein};
use crate::heisenberg::{all_idx, idx_add, Idx};
use crate::poly::{Monomial, Poly, VariableId};

type P = Poly<Eisenstein>;

const SEXTIC_TABLE: &str = include_str!("../data/sextic_table.txt");

/// Parses a sum of products of `Z[i,j]^e` factors.
fn parse_printed_sum(s: &str) -> P {
    let mut p = P::zero();
    for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let mut m = Monomial::one();
        for factor in term.split('*') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<u16>().expect("exponent")),
                None => (factor, 1),
            };
            let inner = var
                .trim()
                .strip_prefix("Z[")
                .and_then(|v| v.strip_suffix(']'))
                .unwrap_or_else(|| panic!("bad factor {factor:?}"));
            let (i, j) = inner.split_once(',').expect("index pair");
            let v = VariableId::theta(i.parse().expect("row"), j.parse().expect("col"));
            m = m.mul(&Monomial::from_powers(&[(v, exp)]));
        }
        p.add_term(m, Eisenstein::one());
    }
    p
}

/// The printed sextics `T1..T43`, in table order.
pub fn printed_sextics() -> Vec<(String, P)> {
    SEXTIC_TABLE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, body) = l.split_once(":=").expect("name := body");
            (name.trim().to_string(), parse_printed_sum(body))
        })
        .collect()
}

fn x(b: Idx) -> P {
    P::theta(b[0], b[1])
}

/// F₀ = Σ_b X_b³ and F_k = Σ_b X_b X_{a+b} X_{2a+b} for a = 01, 10, 11, 12,
/// summed over all nine b as written.
pub fn printed_cubics() -> [P; 5] {
    let offsets: [Option<Idx>; 5] = [None, Some([0, 1]), Some([1, 0]), Some([1, 1]), Some([1, 2])];
    offsets.map(|a| {
        let mut f = P::zero();
        for b in all_idx() {
            let term = match a {
                None => x(b).pow(3),
                Some(a) => {
                    let a2 = idx_add(a, a);
                    &(&x(b) * &x(idx_add(a, b))) * &x(idx_add(a2, b))
                }
            };
            f = &f + &term;
        }
        f
    })
}

/// Barth's quadrics as printed: for each b, the five products paired with β₀..β₄.
const BARTH_TABLE: [([u8; 2], [[[u8; 2]; 2]; 5]); 9] = [
    ([0, 0], [[[0, 0], [0, 0]], [[0, 1], [0, 2]], [[1, 0], [2, 0]], [[1, 1], [2, 2]], [[1, 2], [2, 1]]]),
    ([0, 1], [[[0, 1], [0, 1]], [[0, 2], [0, 0]], [[1, 1], [2, 1]], [[1, 2], [2, 0]], [[1, 0], [2, 2]]]),
    ([0, 2], [[[0, 2], [0, 2]], [[0, 0], [0, 1]], [[1, 2], [2, 2]], [[1, 0], [2, 1]], [[1, 1], [2, 0]]]),
    ([1, 0], [[[1, 0], [1, 0]], [[1, 1], [1, 2]], [[2, 0], [0, 0]], [[2, 1], [0, 2]], [[2, 2], [0, 1]]]),
    ([1, 1], [[[1, 1], [1, 1]], [[1, 2], [1, 0]], [[2, 1], [0, 1]], [[2, 2], [0, 0]], [[2, 0], [0, 2]]]),
    ([1, 2], [[[1, 2], [1, 2]], [[1, 0], [1, 1]], [[2, 2], [0, 2]], [[2, 0], [0, 1]], [[2, 1], [0, 0]]]),
    ([2, 0], [[[2, 0], [2, 0]], [[2, 1], [2, 2]], [[0, 0], [1, 0]], [[0, 1], [1, 2]], [[0, 2], [1, 1]]]),
    ([2, 1], [[[2, 1], [2, 1]], [[2, 2], [2, 0]], [[0, 1], [1, 1]], [[0, 2], [1, 0]], [[0, 0], [1, 2]]]),
    ([2, 2], [[[2, 2], [2, 2]], [[2, 0], [2, 1]], [[0, 2], [1, 2]], [[0, 0], [1, 1]], [[0, 1], [1, 0]]]),
];

pub fn printed_barth_quadrics() -> Vec<(Idx, P)> {
    BARTH_TABLE
        .iter()
        .map(|(b, pairs)| {
            let mut q = P::zero();
            for (k, [u, v]) in pairs.iter().enumerate() {
                let term = &(&P::var(VariableId::beta(k as u8)) * &x(*u)) * &x(*v);
                q = &q + &term;
            }
            (*b, q)
        })
        .collect()
}

fn yv(k: u8) -> P {
    P::var(VariableId::y(k))
}

fn zv(k: u8) -> P {
    P::var(VariableId::z(k))
}

fn beta(k: u8) -> P {
    P::var(VariableId::beta(k))
}

fn c(n: i64) -> P {
    P::from_i64(n)
}

/// The printed 5×5 matrix q_ij(Z) of the restrictions to the minus space.
pub fn printed_minus_matrix() -> [[P; 5]; 5] {
    let zz = |a: u8, b: u8| &zv(a) * &zv(b);
    let n = |p: P| -p;
    [
        [P::zero(), n(zz(1, 1)), n(zz(2, 2)), n(zz(3, 3)), n(zz(4, 4))],
        [zz(1, 1), P::zero(), n(zz(3, 4)), n(zz(2, 4)), n(zz(2, 3))],
        [zz(2, 2), zz(3, 4), P::zero(), zz(1, 4), n(zz(1, 3))],
        [zz(3, 3), zz(2, 4), n(zz(1, 4)), P::zero(), zz(1, 2)],
        [zz(4, 4), zz(2, 3), zz(1, 3), n(zz(1, 2)), P::zero()],
    ]
}

/// The printed Y-part of the rows Q₁..Q₅.
fn printed_plus_matrix() -> [[P; 5]; 5] {
    let yy = |a: u8, b: u8| &yv(a) * &yv(b);
    [
        [yy(0, 0), yy(1, 1), yy(2, 2), yy(3, 3), yy(4, 4)],
        [yy(1, 1), yy(0, 1), yy(3, 4), yy(2, 4), yy(2, 3)],
        [yy(2, 2), yy(3, 4), yy(0, 2), yy(1, 4), yy(1, 3)],
        [yy(3, 3), yy(2, 4), yy(1, 4), yy(0, 3), yy(1, 2)],
        [yy(4, 4), yy(2, 3), yy(1, 3), yy(1, 2), yy(0, 4)],
    ]
}

/// The printed rows q₁..q₅ dotted with β.
pub fn printed_minus_rows() -> Vec<P> {
    printed_minus_matrix()
        .iter()
        .map(|row| row.iter().enumerate().fold(P::zero(), |acc, (j, e)| &acc + &(e * &beta(j as u8))))
        .collect()
}

/// The nine printed quadrics Q₁..Q₉ in the Y/Z coordinates.
pub fn printed_yz_quadrics() -> Vec<P> {
    let mut out = Vec::with_capacity(9);
    let plus = printed_plus_matrix();
    let minus = printed_minus_matrix();
    for i in 0..5 {
        let mut q = P::zero();
        for j in 0..5 {
            q = &q + &(&(&plus[i][j] + &minus[i][j]) * &beta(j as u8));
        }
        out.push(q);
    }
    let bz = |b: u8, z: u8| &beta(b) * &zv(z);
    let mixed: [[P; 5]; 4] = [
        [-bz(1, 1), &c(2) * &bz(0, 1), &bz(3, 4) - &bz(4, 3), &bz(4, 2) - &bz(2, 4), &bz(2, 3) - &bz(3, 2)],
        [-bz(2, 2), &(-bz(3, 4)) - &bz(4, 3), &c(2) * &bz(0, 2), &bz(1, 4) + &bz(4, 1), &bz(1, 3) - &bz(3, 1)],
        [-bz(3, 3), &(-bz(2, 4)) - &bz(4, 2), &bz(1, 4) - &bz(4, 1), &c(2) * &bz(0, 3), &bz(1, 2) + &bz(2, 1)],
        [-bz(4, 4), &(-bz(2, 3)) - &bz(3, 2), &bz(1, 3) + &bz(3, 1), &bz(1, 2) - &bz(2, 1), &c(2) * &bz(0, 4)],
    ];
    for row in mixed.iter() {
        let q = row.iter().enumerate().fold(P::zero(), |acc, (j, e)| &acc + &(e * &yv(j as u8)));
        out.push(q);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let t = printed_sextics();
        assert_eq!(t.len(), 43);
        assert_eq!(t[0].0, "T1");
        assert_eq!(t[0].1.num_terms(), 9);
        assert_eq!(t[17].1.num_terms(), 3);
        assert!(t.iter().all(|(_, p)| p.is_homogeneous() && p.total_degree() == Some(6)));
    }

    #[test]
    fn cubic_coefficients() {
        let f = printed_cubics();
        assert_eq!(f[0].num_terms(), 9);
        let m = Monomial::theta_product(&[(0, 0), (0, 1), (0, 2)]);
        assert_eq!(f[1].coeff(&m), Some(&Eisenstein::from_ints(3, 0)));
        assert_eq!(f[1].num_terms(), 3);
    }

    #[test]
    fn barth_rows_have_five_terms() {
        for (_, q) in printed_barth_quadrics() {
            assert_eq!(q.num_terms(), 5);
        }
    }
}
