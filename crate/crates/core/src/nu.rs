//! Fixed-point planes of Heisenberg lifts and the restriction map ν from
//! invariant sextics on ℙ⁸ to invariant sextics on the 40 planes.
//!
//! A chart is a 3-dimensional subspace of V given by three vectors; the
//! plane coordinates Y₀, Y₁, Y₂ enter through `Z_b = Σ_k basis[k][b]·Y_k`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{same_span, ArithError, ConstField, Eisenstein, ExactMatrix, Field};
use crate::heisenberg::{all_idx, idx_pos, normalize_projective, weil_form, Apoint, Idx};
use crate::invariants::{combine, iota_act, sextic_basis, sextic_labels};
use crate::poly::{Monomial, Poly, PolyError, VariableId};

type P = Poly<Eisenstein>;
type E = Eisenstein;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NuError {
    #[error("eigenspace of {0:?} has dimension {1}, expected 3")]
    EigenspaceDimension(Apoint, usize),
    #[error("restriction to chart {0} is not in the span of S1..S4")]
    NotInSpan(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "annexe")]
    Annexe,
    #[serde(rename = "all_lifts")]
    AllLifts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChartFamily {
    Diagonal { r: u8, s: u8 },
    Shift { dir: Idx, u: u8, v: u8 },
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPlaneChart {
    pub eta: Apoint,
    pub lift_t: u8,
    /// basis[k][b]: coefficient of Y_k in Z_b.
    pub basis: [Vec<E>; 3],
    pub family: ChartFamily,
}

impl FixedPlaneChart {
    pub fn label(&self) -> String {
        match self.family {
            ChartFamily::Diagonal { r, s } => format!("diag({r}{s})"),
            ChartFamily::Shift { dir, u, v } => format!("shift({}{};{}{})", dir[0], dir[1], u, v),
        }
    }

    pub fn substitution(&self) -> HashMap<VariableId, P> {
        let mut asg = HashMap::new();
        for b in all_idx() {
            let mut img = P::zero();
            for (k, vec) in self.basis.iter().enumerate() {
                let c = &vec[idx_pos(b)];
                if !c.is_zero() {
                    img = &img + &P::var(VariableId::y(k as u8)).scalar_mul(c);
                }
            }
            asg.insert(VariableId::theta(b[0], b[1]), img);
        }
        asg
    }

    pub fn restrict(&self, p: &P) -> P {
        match self.monomial_images() {
            Some(images) => restrict_monomially(p, &images),
            None => p.substitute(&self.substitution()),
        }
    }

    /// When every Z_b maps to a multiple of a single Y_k (or to zero), the image.
    fn monomial_images(&self) -> Option<Vec<Option<(u8, E)>>> {
        let mut out = Vec::with_capacity(9);
        for pos in 0..9 {
            let mut hit = None;
            for k in 0..3 {
                let c = &self.basis[k][pos];
                if !c.is_zero() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((k as u8, c.clone()));
                }
            }
            out.push(hit);
        }
        Some(out)
    }
}

fn restrict_monomially(p: &P, images: &[Option<(u8, E)>]) -> P {
    let mut out = P::zero();
    'terms: for (m, c) in p.terms() {
        let mut coeff = c.clone();
        let mut target = Monomial::one();
        for (pos, img) in images.iter().enumerate() {
            let e = m.exponents()[pos];
            if e == 0 {
                continue;
            }
            let Some((k, s)) = img else { continue 'terms };
            if !s.is_one() {
                coeff = &coeff * &s.pow(e as u32);
            }
            let var = VariableId::y(*k);
            target = target.with(var, target.exponent(var) + e);
        }
        out.add_term(target, coeff);
    }
    out
}

/// Diagonal charts in table order, then the four shift families.
pub const DIAGONALS: [(u8, u8); 4] = [(0, 1), (1, 0), (1, 1), (1, 2)];
pub const SHIFT_DIRS: [Idx; 4] = [[0, 1], [1, 0], [1, 1], [1, 2]];

/// Substitution tables: (Z index, Y index, phase argument for ω^{u·a + v·b}).
type ShiftRow = ([u8; 2], u8, Option<[u8; 2]>);

const SHIFT_TABLES: [[ShiftRow; 9]; 4] = [
    [
        ([0, 0], 0, None),
        ([0, 2], 0, Some([0, 1])),
        ([0, 1], 0, None),
        ([1, 0], 1, None),
        ([1, 2], 1, Some([2, 1])),
        ([1, 1], 1, Some([1, 0])),
        ([2, 0], 2, None),
        ([2, 2], 2, Some([1, 1])),
        ([2, 1], 2, Some([2, 0])),
    ],
    [
        ([0, 0], 0, None),
        ([2, 0], 0, Some([1, 0])),
        ([1, 0], 0, None),
        ([0, 1], 1, None),
        ([2, 1], 1, Some([1, 2])),
        ([1, 1], 1, Some([0, 1])),
        ([0, 2], 2, None),
        ([2, 2], 2, Some([1, 1])),
        ([1, 2], 2, Some([0, 2])),
    ],
    [
        ([0, 0], 0, None),
        ([2, 2], 0, Some([1, 1])),
        ([1, 1], 0, None),
        ([0, 1], 1, None),
        ([2, 0], 1, Some([1, 0])),
        ([1, 2], 1, Some([0, 1])),
        ([0, 2], 2, None),
        ([2, 1], 2, Some([1, 2])),
        ([1, 0], 2, Some([0, 2])),
    ],
    [
        ([0, 0], 0, None),
        ([2, 1], 0, Some([1, 2])),
        ([1, 2], 0, None),
        ([0, 1], 1, None),
        ([2, 2], 1, Some([1, 1])),
        ([1, 0], 1, Some([0, 1])),
        ([0, 2], 2, None),
        ([2, 0], 2, Some([1, 0])),
        ([1, 1], 2, Some([0, 2])),
    ],
];

fn zero_basis() -> [Vec<E>; 3] {
    [vec![E::zero(); 9], vec![E::zero(); 9], vec![E::zero(); 9]]
}

pub fn diagonal_chart(r: u8, s: u8) -> FixedPlaneChart {
    let mut basis = zero_basis();
    let kept: Vec<Idx> = all_idx().filter(|b| (r * b[0] + s * b[1]) % 3 == 0).collect();
    for (k, b) in kept.iter().enumerate() {
        basis[k][idx_pos(*b)] = E::one();
    }
    FixedPlaneChart {
        eta: Apoint::new([0, 0], [r, s]),
        lift_t: 0,
        basis,
        family: ChartFamily::Diagonal { r, s },
    }
}

pub fn shift_chart(family: usize, u: u8, v: u8) -> FixedPlaneChart {
    let mut basis = zero_basis();
    for &(z, y, phase) in SHIFT_TABLES[family].iter() {
        let e = phase.map_or(0, |[a, b]| (u * a + v * b) % 3);
        basis[y as usize][idx_pos(z)] = E::omega_pow(e as i64);
    }
    let dir = SHIFT_DIRS[family];
    FixedPlaneChart { eta: Apoint::new(dir, [u, v]), lift_t: 0, basis, family: ChartFamily::Shift { dir, u, v } }
}

/// The 40 charts in table order.
pub fn table_charts() -> Vec<FixedPlaneChart> {
    let mut out: Vec<FixedPlaneChart> = DIAGONALS.iter().map(|&(r, s)| diagonal_chart(r, s)).collect();
    for f in 0..4 {
        for u in 0..3 {
            for v in 0..3 {
                out.push(shift_chart(f, u, v));
            }
        }
    }
    out
}

/// The eigenvalue-1 eigenspace of the point action of the lift (t, η).
pub fn eigen_chart(eta: Apoint, t: u8, family: ChartFamily) -> Result<FixedPlaneChart, NuError> {
    let g = eta.lift(t);
    let mut m = g.point_action_matrix();
    for i in 0..9 {
        let v = m.get(i, i).clone() - E::one();
        m.set(i, i, v);
    }
    let rk = m.rank_and_kernel()?;
    if rk.kernel.len() != 3 {
        return Err(NuError::EigenspaceDimension(eta, rk.kernel.len()));
    }
    // Normalise each vector to 1 at its first nonzero coordinate and order by it.
    let mut vecs: Vec<Vec<E>> = rk
        .kernel
        .iter()
        .map(|v| normalize_projective(v).expect("kernel vectors are nonzero"))
        .collect();
    vecs.sort_by_key(|v| v.iter().position(|c| !c.is_zero()));
    let [a, b, c]: [Vec<E>; 3] = vecs.try_into().expect("three vectors");
    Ok(FixedPlaneChart { eta, lift_t: t, basis: [a, b, c], family })
}

pub fn fixed_plane_charts(mode: Mode) -> Result<Vec<FixedPlaneChart>, NuError> {
    let table = table_charts();
    match mode {
        Mode::Annexe => Ok(table),
        Mode::AllLifts => {
            let mut out = Vec::with_capacity(120);
            for ch in &table {
                for t in 0..3 {
                    out.push(eigen_chart(ch.eta, t, ch.family)?);
                }
            }
            Ok(out)
        }
    }
}

/// Whether every basis vector is fixed by the point action of the chart's lift.
pub fn is_fixed_by_lift(chart: &FixedPlaneChart) -> bool {
    let m = chart.eta.lift(chart.lift_t).point_action_matrix();
    chart
        .basis
        .iter()
        .all(|v| m.mul_vec(v).map(|w| w == *v).unwrap_or(false))
}

pub fn same_plane(a: &FixedPlaneChart, b: &FixedPlaneChart) -> bool {
    same_span(&E::one(), &a.basis, &b.basis, 9).unwrap_or(false)
}

fn y(k: u8) -> P {
    P::var(VariableId::y(k))
}

/// S₁ = ΣY⁶, S₂ = Σ Y_i³Y_j³, S₃ = Y₀Y₁Y₂·ΣY³, S₄ = (Y₀Y₁Y₂)².
pub fn plane_sextic_basis() -> [P; 4] {
    let sum = |f: &dyn Fn(u8) -> P| &(&f(0) + &f(1)) + &f(2);
    let s1 = sum(&|k| y(k).pow(6));
    let s2 = &(&(&y(0).pow(3) * &y(1).pow(3)) + &(&y(0).pow(3) * &y(2).pow(3))) + &(&y(1).pow(3) * &y(2).pow(3));
    let prod = &(&y(0) * &y(1)) * &y(2);
    let s3 = &prod * &sum(&|k| y(k).pow(3));
    let s4 = prod.pow(2);
    [s1, s2, s3, s4]
}

/// Coordinates of `p` restricted to `chart` in the basis S₁..S₄.
pub fn restrict_sextic(p: &P, chart: &FixedPlaneChart) -> Result<[E; 4], NuError> {
    let r = chart.restrict(p);
    coordinates_in_s(&r).map_err(|_| NuError::NotInSpan(chart.label()))
}

/// S₁..S₄ have disjoint supports, so the coordinates are read off one
/// monomial each and the reconstruction is checked.
pub fn coordinates_in_s(r: &P) -> Result<[E; 4], PolyError> {
    let probe = [[6, 0, 0], [3, 3, 0], [4, 1, 1], [2, 2, 2]].map(|e: [u16; 3]| {
        let m = (0..3).fold(Monomial::one(), |m, k| m.with(VariableId::y(k as u8), e[k]));
        r.coeff(&m).cloned().unwrap_or_else(E::zero)
    });
    let rebuilt = plane_sextic_basis()
        .iter()
        .zip(&probe)
        .fold(P::zero(), |acc, (s, c)| &acc + &s.scalar_mul(c));
    if &rebuilt == r {
        Ok(probe)
    } else {
        Err(PolyError::NotInSpan)
    }
}

/// Row entries from the coefficient-extraction route: after Y₁ = Y₂ = 1, test
/// the coefficients of Y₀², Y₀³, Y₀⁴, Y₀⁶ and record the leading coefficient of
/// the whole restriction (lex order Y₀ > Y₁ > Y₂) where the test is nonzero.
pub fn extraction_coordinates(r: &P) -> [E; 4] {
    let mut asg = HashMap::new();
    asg.insert(VariableId::y(1), P::one());
    asg.insert(VariableId::y(2), P::one());
    let flat = r.substitute(&asg);
    let lead = r
        .terms()
        .max_by(|(a, _), (b, _)| lex_y(a).cmp(&lex_y(b)))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(E::zero);
    [2u16, 3, 4, 6].map(|e| {
        let m = Monomial::one().with(VariableId::y(0), e);
        if flat.coeff(&m).is_some() {
            lead.clone()
        } else {
            E::zero()
        }
    })
}

fn lex_y(m: &Monomial) -> [u16; 3] {
    [0, 1, 2].map(|k| m.exponent(VariableId::y(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinatization {
    Invariant,
    Extraction,
}

#[derive(Clone, Debug)]
pub struct NuMatrix {
    pub matrix: ExactMatrix<E>,
    pub charts: Vec<FixedPlaneChart>,
    pub column_labels: Vec<String>,
}

fn restriction_rows(charts: &[FixedPlaneChart], basis: &[P], how: Coordinatization) -> Result<ExactMatrix<E>, NuError> {
    let mut m = ExactMatrix::zeros(4 * charts.len(), basis.len());
    for (c, chart) in charts.iter().enumerate() {
        for (j, t) in basis.iter().enumerate() {
            let coords = match how {
                Coordinatization::Invariant => restrict_sextic(t, chart)?,
                Coordinatization::Extraction => extraction_coordinates(&chart.restrict(t)),
            };
            for (i, v) in coords.into_iter().enumerate() {
                m.set(4 * c + i, j, v);
            }
        }
    }
    Ok(m)
}

pub fn assemble_nu_with(mode: Mode, how: Coordinatization) -> Result<NuMatrix, NuError> {
    let charts = fixed_plane_charts(mode)?;
    let matrix = restriction_rows(&charts, &sextic_basis(), how)?;
    Ok(NuMatrix { matrix, charts, column_labels: sextic_labels() })
}

pub fn assemble_nu(mode: Mode) -> Result<NuMatrix, NuError> {
    assemble_nu_with(mode, Coordinatization::Invariant)
}

/// w₁ = T₈−T₇, w₂ = T₁₁−T₁₀, w₃ = T₁₄−T₁₃, w₄ = T₁₇−T₁₆ in T-coordinates.
pub fn candidate_kernel() -> [Vec<E>; 4] {
    [(7, 8), (10, 11), (13, 14), (16, 17)].map(|(a, b)| {
        let mut v = vec![E::zero(); 43];
        v[a - 1] = -E::one();
        v[b - 1] = E::one();
        v
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Kernel = span{w₁..w₄}, rank 39.
    TextClaim,
    /// Kernel = span{w₂, w₃, w₄}, rank 40.
    FilterClaim,
    Neither,
}

#[derive(Clone, Debug)]
pub struct NuReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub transpose_rank: usize,
    pub kernel: Vec<Vec<E>>,
    pub verdict: Verdict,
    /// Whether each w_k is annihilated by ν.
    pub candidates_in_kernel: [bool; 4],
    pub iota_anti_invariant: bool,
    pub rank_nullity: bool,
}

fn in_kernel(m: &ExactMatrix<E>, v: &[E]) -> bool {
    m.mul_vec(v).map(|w| w.iter().all(Field::is_zero)).unwrap_or(false)
}

pub fn analyse(m: &ExactMatrix<E>) -> Result<NuReport, NuError> {
    let rk = m.rank_and_kernel()?;
    let transpose_rank = m.transpose().rank()?;
    let cand = candidate_kernel();
    let candidates_in_kernel = [0, 1, 2, 3].map(|k| in_kernel(m, &cand[k]));
    let one = E::one();
    let verdict = if same_span(&one, &rk.kernel, &cand, 43)? {
        Verdict::TextClaim
    } else if same_span(&one, &rk.kernel, &cand[1..], 43)? {
        Verdict::FilterClaim
    } else {
        Verdict::Neither
    };
    let t = sextic_basis();
    let iota_anti_invariant = rk.kernel.iter().all(|v| {
        let k = combine(&t, v);
        iota_act(&k) == -k
    });
    Ok(NuReport {
        rows: m.nrows(),
        cols: m.ncols(),
        rank: rk.rank,
        transpose_rank,
        rank_nullity: rk.rank + rk.kernel.len() == m.ncols(),
        kernel: rk.kernel,
        verdict,
        candidates_in_kernel,
        iota_anti_invariant,
    })
}

pub fn nu_rank_and_kernel(mode: Mode) -> Result<NuReport, NuError> {
    analyse(&assemble_nu(mode)?.matrix)
}

#[derive(Clone, Debug)]
pub struct FilterReport {
    /// Surviving counts after each diagonal filter.
    pub counts: Vec<usize>,
    /// 0-based indices of the surviving T's.
    pub survivors: Vec<usize>,
    pub diagonal_block_rank: usize,
    pub sub_rank: usize,
    pub sub_extraction_rank: usize,
    /// Kernel of the shift block on the survivors, in 43-dim T-coordinates.
    pub sub_kernel: Vec<Vec<E>>,
    pub sub_kernel_matches: bool,
}

/// Replays the filter method: keep the T's vanishing on each diagonal plane in
/// turn, then restrict the survivors to the 36 shift charts.
pub fn filter_replication() -> Result<FilterReport, NuError> {
    let t = sextic_basis();
    let charts = table_charts();
    let mut survivors: Vec<usize> = (0..t.len()).collect();
    let mut counts = Vec::new();
    for chart in &charts[..4] {
        survivors.retain(|&j| chart.restrict(&t[j]).is_zero());
        counts.push(survivors.len());
    }
    let diagonal_block_rank = restriction_rows(&charts[..4], &t, Coordinatization::Invariant)?.rank()?;
    let kept: Vec<P> = survivors.iter().map(|&j| t[j].clone()).collect();
    let sub = restriction_rows(&charts[4..], &kept, Coordinatization::Invariant)?;
    let sub_ext = restriction_rows(&charts[4..], &kept, Coordinatization::Extraction)?;
    let rk = sub.rank_and_kernel()?;
    let sub_kernel: Vec<Vec<E>> = rk
        .kernel
        .iter()
        .map(|v| {
            let mut full = vec![E::zero(); t.len()];
            for (c, &j) in v.iter().zip(&survivors) {
                full[j] = c.clone();
            }
            full
        })
        .collect();
    let cand = candidate_kernel();
    Ok(FilterReport {
        counts,
        survivors,
        diagonal_block_rank,
        sub_rank: rk.rank,
        sub_extraction_rank: sub_ext.rank()?,
        sub_kernel_matches: same_span(&E::one(), &sub_kernel, &cand[1..], 43)?,
        sub_kernel,
    })
}

/// Rank of ν when chart c uses lift `lifts[c]`.
pub fn rank_for_lifts(lifts: &[u8]) -> Result<usize, NuError> {
    let table = table_charts();
    assert_eq!(lifts.len(), table.len(), "one lift per chart");
    let charts: Vec<FixedPlaneChart> = table
        .iter()
        .zip(lifts)
        .map(|(c, &t)| eigen_chart(c.eta, t, c.family))
        .collect::<Result<_, _>>()?;
    Ok(restriction_rows(&charts, &sextic_basis(), Coordinatization::Invariant)?.rank()?)
}

/// For each table chart, the lifts whose eigenspace is the same plane.
pub fn matching_lifts() -> Result<Vec<Vec<u8>>, NuError> {
    table_charts()
        .iter()
        .map(|c| {
            let mut hits = Vec::new();
            for t in 0..3 {
                if same_plane(c, &eigen_chart(c.eta, t, c.family)?) {
                    hits.push(t);
                }
            }
            Ok(hits)
        })
        .collect()
}

/// Elements of ⟨η⟩⊥ modulo ⟨η⟩, one representative per class.
pub fn k_eta_reps(eta: &Apoint) -> Vec<Apoint> {
    let mut reps: Vec<Apoint> = Vec::new();
    for a in Apoint::all().filter(|a| weil_form(a, eta) == 0) {
        let class_min = (0..3).map(|k| a.add(&eta.scale(k))).min().expect("three");
        if !reps.contains(&class_min) {
            reps.push(class_min);
        }
    }
    reps.sort();
    reps
}

/// The 3×3 matrix M with g·basis[k] = Σ_l M[l][k] basis[l] for g = (0, a).
pub fn induced_plane_action(chart: &FixedPlaneChart, a: &Apoint) -> Result<ExactMatrix<E>, NuError> {
    let g = a.lift(0).point_action_matrix();
    let cols = ExactMatrix::from_rows(chart.basis.to_vec())?.transpose();
    let mut m = ExactMatrix::zeros(3, 3);
    for k in 0..3 {
        let img = g.mul_vec(&chart.basis[k])?;
        let coords = cols.solve(&img)?.ok_or(NuError::NotInSpan(chart.label()))?;
        for (l, c) in coords.into_iter().enumerate() {
            m.set(l, k, c);
        }
    }
    Ok(m)
}

/// Pulls a polynomial in Y back along the linear map Y_l ↦ Σ_k M[l][k] Y_k.
pub fn pull_back(p: &P, m: &ExactMatrix<E>) -> P {
    let mut asg = HashMap::new();
    for l in 0..3 {
        let mut img = P::zero();
        for k in 0..3 {
            img = &img + &y(k as u8).scalar_mul(m.get(l, k));
        }
        asg.insert(VariableId::y(l as u8), img);
    }
    p.substitute(&asg)
}

/// Emulation of the table computation with `w` kept as an indeterminate:
/// powers w³..w¹⁰ are rewritten as in the original worksheet, w¹¹ and w¹² are
/// left alone, and ranks are taken over ℚ(w).
pub mod symbolic_w {
    use std::collections::BTreeMap;

    use super::*;
    use crate::arith::Rational;

    /// Dense polynomial in w of degree at most 12.
    pub type WPoly = [Rational; 13];

    fn zero_w() -> WPoly {
        std::array::from_fn(|_| Rational::zero())
    }

    fn is_zero_w(p: &WPoly) -> bool {
        p.iter().all(Field::is_zero)
    }

    /// The worksheet's rewriting rule for a single power of w.
    pub fn rewrite_power(e: usize) -> usize {
        if (3..=10).contains(&e) {
            e % 3
        } else {
            e
        }
    }

    /// Restriction to shift chart (family, u, v) as a map Y-exponents ↦ polynomial in w.
    pub fn restrict(p: &P, family: usize, u: u8, v: u8) -> BTreeMap<[u16; 3], WPoly> {
        let mut image = [(0u8, 0usize); 9];
        for &(z, y, phase) in SHIFT_TABLES[family].iter() {
            let e = phase.map_or(0, |[a, b]| ((u * a + v * b) % 3) as usize);
            image[idx_pos(z)] = (y, e);
        }
        let mut out: BTreeMap<[u16; 3], WPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            assert!(c.is_rational(), "theta sextics have rational coefficients");
            let mut ym = [0u16; 3];
            let mut e = 0usize;
            for (pos, &(y, ph)) in image.iter().enumerate() {
                let k = m.exponents()[pos];
                ym[y as usize] += k;
                e += ph * k as usize;
            }
            let slot = out.entry(ym).or_insert_with(zero_w);
            let r = rewrite_power(e);
            slot[r] = &slot[r] + &c.re;
        }
        out.retain(|_, w| !is_zero_w(w));
        out
    }

    /// The four row entries for one chart and one sextic.
    pub fn row_entries(n: &BTreeMap<[u16; 3], WPoly>) -> [WPoly; 4] {
        let lead = n.iter().max_by_key(|(m, _)| **m).map(|(_, c)| c.clone()).unwrap_or_else(zero_w);
        [2u16, 3, 4, 6].map(|k| {
            let mut acc = zero_w();
            for (_, c) in n.iter().filter(|(m, _)| m[0] == k) {
                for (a, b) in acc.iter_mut().zip(c) {
                    *a = &*a + b;
                }
            }
            if is_zero_w(&acc) {
                zero_w()
            } else {
                lead.clone()
            }
        })
    }

    fn eval(p: &WPoly, t: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * t) + c)
    }

    #[derive(Clone, Debug)]
    pub struct SymbolicReport {
        pub counts: Vec<usize>,
        pub rows: usize,
        pub cols: usize,
        /// Rank over ℚ(w), as the largest rank among the specialisations tried.
        pub generic_rank: usize,
        /// For w₁..w₄: whether it is annihilated identically in w.
        pub candidates_in_kernel: [bool; 4],
        /// Whether the kernel at the best specialisation is span{w₂, w₃, w₄}.
        pub kernel_matches: bool,
    }

    pub fn replicate() -> Result<SymbolicReport, NuError> {
        let t = sextic_basis();
        let charts = table_charts();
        let mut survivors: Vec<usize> = (0..t.len()).collect();
        let mut counts = Vec::new();
        for chart in &charts[..4] {
            survivors.retain(|&j| chart.restrict(&t[j]).is_zero());
            counts.push(survivors.len());
        }
        let mut c: Vec<Vec<WPoly>> = vec![Vec::new(); 144];
        for f in 0..4 {
            for u in 0..3u8 {
                for v in 0..3u8 {
                    let b = 9 * f + 3 * u as usize + v as usize;
                    for &j in &survivors {
                        let entries = row_entries(&restrict(&t[j], f, u, v));
                        for (i, e) in entries.into_iter().enumerate() {
                            c[4 * b + i].push(e);
                        }
                    }
                }
            }
        }
        let cols = survivors.len();
        let cand: Vec<Vec<Rational>> = candidate_kernel()
            .iter()
            .map(|v| survivors.iter().map(|&j| v[j].re.clone()).collect())
            .collect();
        let candidates_in_kernel = [0, 1, 2, 3].map(|k| {
            c.iter().all(|row| {
                let mut acc = zero_w();
                for (e, x) in row.iter().zip(&cand[k]) {
                    if !x.is_zero() {
                        for (a, b) in acc.iter_mut().zip(e) {
                            *a = &*a + &(b * x);
                        }
                    }
                }
                is_zero_w(&acc)
            })
        });
        let mut best: Option<(usize, Vec<Vec<Rational>>)> = None;
        for t0 in [2i64, 3, 7, 19] {
            let tv = Rational::integer(t0);
            let rows: Vec<Vec<Rational>> = c.iter().map(|r| r.iter().map(|e| eval(e, &tv)).collect()).collect();
            let rk = ExactMatrix::from_rows(rows)?.rank_and_kernel()?;
            if best.as_ref().map_or(true, |(r, _)| rk.rank > *r) {
                best = Some((rk.rank, rk.kernel));
            }
        }
        let (generic_rank, kernel) = best.expect("at least one specialisation");
        let kernel_matches = same_span(&Rational::one(), &kernel, &cand[1..], cols)?;
        Ok(SymbolicReport { counts, rows: c.len(), cols, generic_rank, candidates_in_kernel, kernel_matches })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_chart_keeps_first_column() {
        let c = diagonal_chart(0, 1);
        let asg = c.substitution();
        assert_eq!(asg[&VariableId::theta(1, 0)], y(1));
        assert!(asg[&VariableId::theta(1, 1)].is_zero());
    }

    #[test]
    fn trivial_character_shift_chart() {
        let c = shift_chart(0, 0, 0);
        let asg = c.substitution();
        for j in 0..3 {
            assert_eq!(asg[&VariableId::theta(0, j)], y(0));
        }
    }

    #[test]
    fn t1_on_first_diagonal() {
        let t = sextic_basis();
        let c = restrict_sextic(&t[0], &diagonal_chart(0, 1)).unwrap();
        assert_eq!(c, [E::one(), E::zero(), E::zero(), E::zero()]);
        let z = restrict_sextic(&P::zero(), &diagonal_chart(0, 1)).unwrap();
        assert!(z.iter().all(Field::is_zero));
    }

    #[test]
    fn table_charts_are_fixed_planes() {
        for c in table_charts() {
            assert!(is_fixed_by_lift(&c), "{}", c.label());
        }
    }

    #[test]
    fn k_eta_has_nine_classes() {
        for c in table_charts() {
            assert_eq!(k_eta_reps(&c.eta).len(), 9);
        }
    }

    #[test]
    fn extraction_on_s_basis() {
        let s = plane_sextic_basis();
        let two = E::from_i64(2);
        let p = &s[1].scalar_mul(&two) + &s[3];
        assert_eq!(extraction_coordinates(&p), [two.clone(), two, E::zero(), E::zero()]);
    }
}
