use std::fmt;

use super::{ArithError, ConstField, Field};

/// Dense row-major matrix over a [`Field`].
///
/// The matrix keeps a copy of the field's one so that identity vectors can be
/// built even when it has no entries.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
    one: F,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub reduced: ExactMatrix<F>,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RankKernel<F> {
    pub rank: usize,
    pub kernel: Vec<Vec<F>>,
}

impl<F: ConstField> ExactMatrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, ArithError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_in(F::one(), rows, cols)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![F::zero(); rows * cols], one: F::one() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }
}

impl<F: Field> ExactMatrix<F> {
    /// Builds a matrix in the field of `one`. `cols` is used when `rows` is empty.
    pub fn from_rows_in(one: F, rows: Vec<Vec<F>>, cols: usize) -> Result<Self, ArithError> {
        let cols = rows.first().map_or(cols, |r| r.len());
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(ArithError::Ragged { row: i, len: r.len(), expected: cols });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, entries, one })
    }

    pub fn zeros_in(one: F, rows: usize, cols: usize) -> Self {
        let z = one.zero_like();
        ExactMatrix { rows, cols, entries: vec![z; rows * cols], one }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn one(&self) -> &F {
        &self.one
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, entries, one: self.one.clone() }
    }

    /// Keeps the given rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            entries.extend_from_slice(self.row(i));
        }
        ExactMatrix { rows: idx.len(), cols: self.cols, entries, one: self.one.clone() }
    }

    /// Keeps the given columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.rows, cols: idx.len(), entries, one: self.one.clone() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, ArithError> {
        if self.cols != other.cols {
            return Err(ArithError::Dimension(format!(
                "vstack {} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, entries, one: self.one.clone() })
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.one.zero_like(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros_in(self.one.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    fn check_uniform(&self) -> Result<(), ArithError> {
        if self.entries.iter().all(|e| e.same_field(&self.one)) {
            Ok(())
        } else {
            Err(ArithError::MixedFields)
        }
    }

    /// Gauss–Jordan elimination. The pivot in each column is the lowest-index
    /// row with a nonzero entry, and every pivot row is scaled to a leading 1.
    pub fn rref(&self) -> Result<Echelon<F>, ArithError> {
        self.check_uniform()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().ok_or(ArithError::DivisionByZero)?;
            for j in c..m.cols {
                let v = m.get(r, j).clone();
                if !v.is_zero() {
                    m.set(r, j, v * inv.clone());
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j).clone();
                    if pv.is_zero() {
                        continue;
                    }
                    let cur = m.get(i, j).clone();
                    m.set(i, j, cur - factor.clone() * pv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Echelon { reduced: m, pivots })
    }

    pub fn rank(&self) -> Result<usize, ArithError> {
        Ok(self.rref()?.pivots.len())
    }

    /// Rank and a reduced kernel basis: one vector per free column, with a 1 in
    /// that column and zeros in the other free columns.
    pub fn rank_and_kernel(&self) -> Result<RankKernel<F>, ArithError> {
        let ech = self.rref()?;
        let zero = self.one.zero_like();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut kernel = Vec::new();
        for f in (0..self.cols).filter(|&f| !is_pivot[f]) {
            let mut v = vec![zero.clone(); self.cols];
            v[f] = self.one.clone();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced.get(i, f).clone();
            }
            kernel.push(v);
        }
        Ok(RankKernel { rank: ech.pivots.len(), kernel })
    }

    /// Solves `self · x = rhs`; `Ok(None)` when inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &[F]) -> Result<Option<Vec<F>>, ArithError> {
        if rhs.len() != self.rows {
            return Err(ArithError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros_in(self.one.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let ech = aug.rref()?;
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.one.zero_like(); self.cols];
        for (i, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.reduced.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl<F: fmt::Debug> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in self.entries.chunks(self.cols.max(1)) {
            let cells: Vec<String> = r.iter().map(|e| format!("{e:?}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<F: Field>(one: &F, a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> Result<bool, ArithError> {
    let ma = ExactMatrix::from_rows_in(one.clone(), a.to_vec(), dim)?;
    let mb = ExactMatrix::from_rows_in(one.clone(), b.to_vec(), dim)?;
    let both = ma.vstack(&mb)?;
    let (ra, rb, rab) = (ma.rank()?, mb.rank()?, both.rank()?);
    Ok(ra == rab && rb == rab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Eisenstein, PrimeField, Rational};

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn identity_full_rank() {
        let m = ExactMatrix::<Rational>::identity(5);
        let rk = m.rank_and_kernel().unwrap();
        assert_eq!(rk.rank, 5);
        assert!(rk.kernel.is_empty());
    }

    #[test]
    fn omega_rank_one() {
        let w = Eisenstein::omega();
        let w2 = Eisenstein::omega_pow(2);
        let m = ExactMatrix::from_rows(vec![
            vec![Eisenstein::one(), w.clone()],
            vec![w2, Eisenstein::one()],
        ])
        .unwrap();
        let rk = m.rank_and_kernel().unwrap();
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel, vec![vec![-w, Eisenstein::one()]]);
    }

    #[test]
    fn kernel_is_reduced() {
        let m = ExactMatrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]).unwrap();
        let rk = m.rank_and_kernel().unwrap();
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel, vec![vec![q(-2), q(1), q(0)], vec![q(-3), q(0), q(1)]]);
    }

    #[test]
    fn mixed_prime_fields_rejected() {
        let f7 = PrimeField::new(7).unwrap();
        let f13 = PrimeField::new(13).unwrap();
        let m = ExactMatrix::from_rows_in(f7.one(), vec![vec![f7.elem(1), f13.elem(2)]], 2).unwrap();
        assert_eq!(m.rank().unwrap_err(), ArithError::MixedFields);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = ExactMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(-1)]]).unwrap();
        assert_eq!(m.solve(&[q(3), q(1)]).unwrap(), Some(vec![q(2), q(1)]));
        let s = ExactMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]).unwrap();
        assert_eq!(s.solve(&[q(1), q(3)]).unwrap(), None);
    }

    #[test]
    fn ragged_rejected() {
        let r = ExactMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(1)]]);
        assert!(matches!(r, Err(ArithError::Ragged { row: 1, .. })));
    }
}
