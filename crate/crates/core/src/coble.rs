//! The Coble cubic F_β = Σ β_i F_i, Barth's quadrics Q_b, the Y/Z rewriting
//! and the Steiner matrix.

use std::collections::HashMap;

use thiserror::Error;

use crate::arith::{ArithError, ConstField, Eisenstein, ExactMatrix};
use crate::heisenberg::{all_idx, dot, idx_add, idx_sub, translation_sum, HeisenbergElement, Idx};
use crate::invariants::{cubic_seeds, iota_act, rank_of};
use crate::poly::{Poly, VariableId};
use crate::reference::{printed_barth_quadrics, printed_minus_matrix, printed_minus_rows, printed_yz_quadrics};

type P = Poly<Eisenstein>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CobleError {
    #[error("nonzero residual for {what}: {residual}")]
    Residual { what: String, residual: String },
    #[error("restricted quadric {0} is outside the printed span")]
    SpanMismatch(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn x(b: Idx) -> P {
    P::theta(b[0], b[1])
}

fn beta(k: u8) -> P {
    P::var(VariableId::beta(k))
}

#[derive(Clone, Debug)]
pub struct CobleCubic {
    pub poly: P,
}

/// F_β with F_i the nine-fold translation sums of the cubic seeds.
pub fn coble_cubic() -> CobleCubic {
    let poly = cubic_seeds()
        .iter()
        .enumerate()
        .fold(P::zero(), |acc, (k, s)| &acc + &(&beta(k as u8) * &translation_sum(s)));
    CobleCubic { poly }
}

/// The pairs (a, −a) used by the quadrics: a = 00, 01, 10, 11, 12.
const OFFSETS: [Idx; 5] = [[0, 0], [0, 1], [1, 0], [1, 1], [1, 2]];

/// Q_b = Σ_k β_k X_{b+a_k} X_{b−a_k}.
pub fn barth_quadric(b: Idx) -> P {
    OFFSETS.iter().enumerate().fold(P::zero(), |acc, (k, &a)| {
        &acc + &(&beta(k as u8) * &(&x(idx_add(b, a)) * &x(idx_sub(b, a))))
    })
}

#[derive(Clone, Debug)]
pub struct BarthQuadricSet {
    pub quadrics: Vec<(Idx, P)>,
}

impl BarthQuadricSet {
    pub fn get(&self, b: Idx) -> &P {
        &self.quadrics.iter().find(|(c, _)| *c == b).expect("all nine indices").1
    }
}

/// The nine quadrics as printed.
pub fn barth_quadrics() -> BarthQuadricSet {
    BarthQuadricSet { quadrics: printed_barth_quadrics() }
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    /// (name, residual) for every identity checked; all residuals should be zero.
    pub residuals: Vec<(String, P)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn first_failure(&self) -> Option<CobleError> {
        self.residuals.iter().find(|(_, r)| !r.is_zero()).map(|(w, r)| CobleError::Residual {
            what: w.clone(),
            residual: r.to_string(),
        })
    }

    fn push(&mut self, name: impl Into<String>, r: P) {
        self.residuals.push((name.into(), r));
    }
}

/// ∂F_β/∂X_b − 3Q_b for all b, Σ X_b Q_b − F_β, and the Euler identity.
pub fn verify_derivative_identity() -> IdentityReport {
    let f = coble_cubic().poly;
    let qs = barth_quadrics();
    let three = Eisenstein::from_i64(3);
    let mut rep = IdentityReport::default();
    let mut sum = P::zero();
    let mut euler = P::zero();
    for b in all_idx() {
        let v = VariableId::theta(b[0], b[1]);
        let d = f.partial_derivative(v);
        let q = qs.get(b);
        rep.push(format!("dF/dX{}{} - 3Q{}{}", b[0], b[1], b[0], b[1]), &d - &q.scalar_mul(&three));
        sum = &sum + &(&x(b) * q);
        euler = &euler + &(&x(b) * &d);
    }
    rep.push("sum X_b Q_b - F", &sum - &f);
    rep.push("sum X_b dF/dX_b - 3F", &euler - &f.scalar_mul(&three));
    rep
}

/// ι-invariance and invariance under the four generators.
pub fn verify_symmetries() -> IdentityReport {
    let f = coble_cubic().poly;
    let mut rep = IdentityReport::default();
    rep.push("iota(F) - F", &iota_act(&f) - &f);
    for (k, g) in HeisenbergElement::generators().iter().enumerate() {
        rep.push(format!("g{k}(F) - F"), &g.act_on_polynomial(&f) - &f);
    }
    rep
}

/// g·Q_b − ω^{2t + 2x*·(b−x)} Q_{b−x} for the generators and a central element.
pub fn verify_quadric_action() -> IdentityReport {
    let mut rep = IdentityReport::default();
    let mut elems: Vec<HeisenbergElement> = HeisenbergElement::generators().to_vec();
    elems.push(HeisenbergElement::new(1, [1, 2], [2, 1]));
    for g in elems {
        for b in all_idx() {
            let shifted = idx_sub(b, g.x);
            let e = 2 * g.t as i64 + 2 * dot(g.xstar, shifted) as i64;
            let expect = barth_quadric(shifted).scalar_mul(&Eisenstein::omega_pow(e));
            rep.push(
                format!("{g:?} on Q{}{}", b[0], b[1]),
                &g.act_on_polynomial(&barth_quadric(b)) - &expect,
            );
        }
    }
    rep
}

/// F_β restricted to the plane X_1j = X_2j = 0, which is fixed by (1, 00, 10).
pub fn restrict_to_eta_plane() -> P {
    let mut asg = HashMap::new();
    for i in 1..3 {
        for j in 0..3 {
            asg.insert(VariableId::theta(i, j), P::zero());
        }
    }
    coble_cubic().poly.substitute(&asg)
}

/// β₀(X₀³ + X₁³ + X₂³) + 3β₁X₀X₁X₂ with X_k = Z_0k.
pub fn expected_eta_restriction() -> P {
    let cubes = &(&x([0, 0]).pow(3) + &x([0, 1]).pow(3)) + &x([0, 2]).pow(3);
    let prod = &(&x([0, 0]) * &x([0, 1])) * &x([0, 2]);
    &(&beta(0) * &cubes) + &(&beta(1) * &prod.scalar_mul(&Eisenstein::from_i64(3)))
}

/// X₀₀ = Y₀, X_a = Y_k + Z_k, X_{−a} = Y_k − Z_k for a = 01, 10, 11, 12.
pub fn yz_assignment() -> HashMap<VariableId, P> {
    let y = |k| P::var(VariableId::y(k));
    let z = |k| P::var(VariableId::z(k));
    let mut asg = HashMap::new();
    asg.insert(VariableId::theta(0, 0), y(0));
    for (k, a) in OFFSETS.iter().enumerate().skip(1) {
        let k = k as u8;
        let na = idx_sub([0, 0], *a);
        asg.insert(VariableId::theta(a[0], a[1]), &y(k) + &z(k));
        asg.insert(VariableId::theta(na[0], na[1]), &y(k) - &z(k));
    }
    asg
}

/// The Q_b rewritten in the Y/Z coordinates.
pub fn yz_quadrics() -> Vec<(Idx, P)> {
    let asg = yz_assignment();
    barth_quadrics().quadrics.iter().map(|(b, q)| (*b, q.substitute(&asg))).collect()
}

#[derive(Clone, Debug)]
pub struct MinusSpaceReport {
    pub restricted: Vec<(Idx, P)>,
    pub q00_matches_row_one: bool,
    pub restricted_span_dim: usize,
    pub printed_span_dim: usize,
    pub joint_span_dim: usize,
}

impl MinusSpaceReport {
    pub fn passed(&self) -> bool {
        self.q00_matches_row_one
            && self.restricted_span_dim == self.joint_span_dim
            && self.printed_span_dim == self.joint_span_dim
    }
}

/// Restricts the Q_b to the minus space Y = 0 and compares with the printed rows.
pub fn minus_space_restriction() -> Result<MinusSpaceReport, CobleError> {
    let mut asg = yz_assignment();
    for v in asg.values_mut() {
        let mut zero_y = HashMap::new();
        for k in 0..5 {
            zero_y.insert(VariableId::y(k), P::zero());
        }
        *v = v.substitute(&zero_y);
    }
    let restricted: Vec<(Idx, P)> =
        barth_quadrics().quadrics.iter().map(|(b, q)| (*b, q.substitute(&asg))).collect();
    let rows = printed_minus_rows();
    let q00 = &restricted.iter().find(|(b, _)| *b == [0, 0]).expect("Q00").1;
    let polys: Vec<P> = restricted.iter().map(|(_, p)| p.clone()).collect();
    let mut joint = polys.clone();
    joint.extend(rows.iter().cloned());
    let report = MinusSpaceReport {
        q00_matches_row_one: *q00 == rows[0],
        restricted_span_dim: rank_of(&polys)?,
        printed_span_dim: rank_of(&rows)?,
        joint_span_dim: rank_of(&joint)?,
        restricted,
    };
    if !report.q00_matches_row_one {
        return Err(CobleError::SpanMismatch("Q00".into()));
    }
    if report.restricted_span_dim != report.joint_span_dim {
        return Err(CobleError::SpanMismatch("printed rows".into()));
    }
    Ok(report)
}

/// For each printed Y/Z quadric Q₁..Q₉, whether it lies in the span of the
/// rewritten Q_b.
pub fn printed_yz_membership() -> Result<Vec<bool>, CobleError> {
    let qs: Vec<P> = yz_quadrics().into_iter().map(|(_, p)| p).collect();
    let base = rank_of(&qs)?;
    printed_yz_quadrics()
        .into_iter()
        .map(|row| {
            let mut all = qs.clone();
            all.push(row);
            Ok(rank_of(&all)? == base)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SteinerResult {
    pub matrix: ExactMatrix<Eisenstein>,
    pub rank: usize,
    /// The Steiner image point, present when the rank is 4.
    pub kernel: Option<Vec<Eisenstein>>,
}

/// Evaluates the printed matrix q_ij(Z) at `z`.
pub fn steiner_matrix(z: &[Eisenstein; 4]) -> Result<SteinerResult, CobleError> {
    let q = printed_minus_matrix();
    let point = |v: VariableId| match v {
        VariableId::Param(crate::poly::Param::Z(k)) => z[k as usize - 1].clone(),
        _ => Eisenstein::zero(),
    };
    let mut m = ExactMatrix::zeros(5, 5);
    for (i, row) in q.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let v = e
                .evaluate_with(|c| Some(c.clone()), point, Eisenstein::zero())
                .expect("coefficients map to themselves");
            m.set(i, j, v);
        }
    }
    let rk = m.rank_and_kernel()?;
    let kernel = if rk.rank == 4 { rk.kernel.into_iter().next() } else { None };
    Ok(SteinerResult { matrix: m, rank: rk.rank, kernel })
}

#[derive(Clone, Debug)]
pub struct QuadricRank {
    /// Rank with β treated as variables, over ℚ.
    pub symbolic: usize,
    /// Rank after specialising β to a fixed generic point.
    pub specialised: usize,
}

/// Linear independence of the nine Q_b.
pub fn quadric_rank() -> Result<QuadricRank, CobleError> {
    let qs: Vec<P> = barth_quadrics().quadrics.into_iter().map(|(_, q)| q).collect();
    let symbolic = rank_of(&qs)?;
    let mut asg = HashMap::new();
    for (k, v) in [2, 3, 5, 7, 11].into_iter().enumerate() {
        asg.insert(VariableId::beta(k as u8), P::from_i64(v));
    }
    let spec: Vec<P> = qs.iter().map(|q| q.substitute(&asg)).collect();
    Ok(QuadricRank { symbolic, specialised: rank_of(&spec)? })
}
