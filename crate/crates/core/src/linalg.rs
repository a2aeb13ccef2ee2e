//! Sparse exact vectors, incremental row reduction and canonical subspaces.

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::Error;

/// Sparse rational vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> SparseVec {
        SparseVec {
            entries: vec![(index, Rational::ONE)],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> SparseVec {
        let mut v: Vec<(usize, Rational)> = pairs.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(dense: &[Rational]) -> SparseVec {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut d = vec![Rational::ZERO; n];
        for (i, x) in &self.entries {
            d[*i] = x.clone();
        }
        d
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Rational {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut p, mut r) = (0, 0);
        while p < a.len() || r < b.len() {
            if r == b.len() || (p < a.len() && a[p].0 < b[r].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p == a.len() || b[r].0 < a[p].0 {
                out.push((b[r].0, c * &b[r].1));
                r += 1;
            } else {
                let s = &a[p].1 + &(c * &b[r].1);
                if !s.is_zero() {
                    out.push((a[p].0, s));
                }
                p += 1;
                r += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Rational::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-Rational::ONE, other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&-Rational::ONE)
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (a, b) = (&self.entries, &other.entries);
        let (mut p, mut r) = (0, 0);
        let mut acc = Rational::ZERO;
        while p < a.len() && r < b.len() {
            match a[p].0.cmp(&b[r].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => r += 1,
                std::cmp::Ordering::Equal => {
                    acc += &a[p].1 * &b[r].1;
                    p += 1;
                    r += 1;
                }
            }
        }
        acc
    }

    pub fn dot_dense(&self, dense: &[Rational]) -> Rational {
        self.entries.iter().map(|(i, x)| x * &dense[*i]).sum()
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (i + offset, x.clone())).collect(),
        }
    }
}

/// Dense accumulator with a list of touched slots, reused across reductions.
pub struct Accumulator {
    values: Vec<Rational>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Accumulator {
        Accumulator {
            values: vec![Rational::ZERO; n],
            touched: Vec::new(),
            mark: vec![false; n],
        }
    }

    pub fn add(&mut self, i: usize, x: &Rational) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.values[i] += x;
    }

    pub fn add_scaled(&mut self, c: &Rational, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.add(*i, &(c * x));
        }
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    /// Empties the accumulator into a sparse vector.
    pub fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let x = std::mem::take(&mut self.values[i]);
            if !x.is_zero() {
                entries.push((i, x));
            }
        }
        self.touched.clear();
        SparseVec { entries }
    }
}

/// Incremental reduced row echelon form over ℚ.
///
/// Each stored row has a leading 1 at its pivot column and zeros at every
/// other pivot column, so the echelon basis is canonical for the span.
pub struct RowReducer {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    acc: Accumulator,
}

impl RowReducer {
    pub fn new(ncols: usize) -> RowReducer {
        RowReducer {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            acc: Accumulator::new(ncols),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Remainder of `v` after elimination against the current rows.
    pub fn reduce(&mut self, v: &SparseVec) -> SparseVec {
        for (i, x) in v.iter() {
            self.acc.add(*i, x);
        }
        for (i, x) in v.iter() {
            if let Some(r) = self.pivot_row[*i] {
                let c = -x;
                for (j, y) in self.rows[r].iter() {
                    self.acc.add(*j, &(&c * y));
                }
            }
        }
        self.acc.drain()
    }

    /// Adds `v` to the span; returns true when the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        if self.is_full() || v.is_zero() {
            return false;
        }
        let rem = self.reduce(v);
        let Some(p) = rem.leading() else {
            return false;
        };
        let inv = rem.entries[0].1.recip();
        let row = rem.scale(&inv);
        for r in self.rows.iter_mut() {
            let c = r.get(p);
            if !c.is_zero() {
                *r = r.add_scaled(&-c, &row);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn into_subspace(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading());
        Subspace::from_rref_rows(self.ncols, rows)
    }

    /// Basis of `{x : r·x = 0 for every inserted row r}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut by_free: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for r in &self.rows {
            let p = r.entries[0].0;
            for (j, x) in &r.entries[1..] {
                by_free[*j].push((p, -x));
            }
        }
        (0..self.ncols)
            .filter(|c| self.pivot_row[*c].is_none())
            .map(|f| {
                let mut pairs = std::mem::take(&mut by_free[f]);
                pairs.push((f, Rational::ONE));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// A subspace of ℚⁿ held as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace::span(ambient_dim, (0..ambient_dim).map(SparseVec::unit))
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vectors: I) -> Subspace {
        let mut rr = RowReducer::new(ambient_dim);
        for v in vectors {
            rr.insert(&v);
        }
        rr.into_subspace()
    }

    fn from_rref_rows(ambient_dim: usize, rows: Vec<SparseVec>) -> Subspace {
        let pivots = rows.iter().map(|r| r.entries[0].0).collect();
        Subspace {
            ambient_dim,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &SparseVec) -> Result<(), Error> {
        match v.max_index() {
            Some(m) if m >= self.ambient_dim => Err(Error::Dimension {
                expected: self.ambient_dim,
                found: m + 1,
            }),
            _ => Ok(()),
        }
    }

    /// Coefficients of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Result<Option<Vec<Rational>>, Error> {
        self.check_len(v)?;
        let coeffs: Vec<Rational> = self.pivots.iter().map(|p| v.get(*p)).collect();
        let mut rest = v.clone();
        for (c, r) in coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                rest = rest.add_scaled(&-c, r);
            }
        }
        Ok(if rest.is_zero() { Some(coeffs) } else { None })
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool, Error> {
        Ok(self.coordinates(v)?.is_some())
    }

    fn same_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            })
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.same_ambient(other)?;
        Ok(Subspace::span(
            self.ambient_dim,
            self.rows.iter().chain(&other.rows).cloned(),
        ))
    }

    /// Zassenhaus: reduce `[u | u]` and `[w | 0]`; rows with zero left half span the intersection.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.same_ambient(other)?;
        let n = self.ambient_dim;
        let mut rr = RowReducer::new(2 * n);
        for u in &self.rows {
            rr.insert(&u.add(&u.shifted(n)));
        }
        for w in &other.rows {
            rr.insert(w);
        }
        let meet = rr
            .into_subspace()
            .rows
            .into_iter()
            .filter(|r| r.leading().is_some_and(|p| p >= n))
            .map(|r| SparseVec {
                entries: r.entries.into_iter().map(|(i, x)| (i - n, x)).collect(),
            });
        Ok(Subspace::span(n, meet))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, Error> {
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Standard basis vectors completing this subspace to the whole space.
    pub fn complement_basis(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.ambient_dim)
            .filter(|i| !is_pivot[*i])
            .map(SparseVec::unit)
            .collect()
    }
}

/// Nullspace of the linear system whose rows are `constraints`.
pub fn nullspace<I: IntoIterator<Item = SparseVec>>(ncols: usize, constraints: I) -> Vec<SparseVec> {
    let mut rr = RowReducer::new(ncols);
    for c in constraints {
        if rr.is_full() {
            break;
        }
        rr.insert(&c);
    }
    rr.nullspace()
}

/// Dense square or rectangular rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn rank(&self) -> usize {
        let mut rr = RowReducer::new(self.cols);
        for i in 0..self.rows {
            rr.insert(&SparseVec::from_dense(self.row(i)));
        }
        rr.rank()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Inertia `(n₊, n₀, n₋)` of a symmetric matrix by exact congruence (Lagrange reduction).
pub fn inertia(m: &Matrix) -> (usize, usize, usize) {
    assert!(m.is_symmetric(), "inertia of a non-symmetric matrix");
    let n = m.rows;
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal on the active block: pair i with some j where a_ij ≠ 0
                // and replace e_i by e_i + e_j, whose diagonal is 2a_ij ≠ 0.
                let found = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[(i, j)].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = found else { break };
                for k in 0..n {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for k in 0..n {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.signum() > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        let dinv = d.recip();
        for &i in &active {
            let f = &a[(i, p)] * &dinv;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = &f * &a[(p, k)];
                if !v.is_zero() {
                    a[(i, k)] -= v;
                }
            }
        }
    }
    (pos, n - pos - neg, neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn sv(d: &[i64]) -> SparseVec {
        SparseVec::from_dense(&d.iter().map(|x| Rational::integer(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn membership_and_intersection() {
        let s1 = Subspace::span(3, [sv(&[1, 0, 0])]);
        assert!(s1.contains(&sv(&[1, 0, 0])).unwrap());
        assert!(!s1.contains(&sv(&[0, 1, 0])).unwrap());
        let a = Subspace::span(3, [sv(&[1, 0, 0]), sv(&[0, 1, 0])]);
        let b = Subspace::span(3, [sv(&[0, 1, 0]), sv(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b).unwrap(), Subspace::span(3, [sv(&[0, 1, 0])]));
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
        assert!(s1.contains(&SparseVec::unit(5)).is_err());
    }

    #[test]
    fn nullspace_of_small_system() {
        // x + y + z = 0, x - y = 0
        let ns = nullspace(3, [sv(&[1, 1, 1]), sv(&[1, -1, 0])]);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], SparseVec::from_dense(&[q(-1, 2), q(-1, 2), Rational::ONE]));
    }

    #[test]
    fn inertia_examples() {
        let m = Matrix::from_rows(vec![
            vec![q(0, 1), q(1, 1)],
            vec![q(1, 1), q(0, 1)],
        ]);
        assert_eq!(inertia(&m), (1, 0, 1));
        let d = Matrix::from_rows(vec![
            vec![q(-2, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(3, 1)],
        ]);
        assert_eq!(inertia(&d), (1, 1, 1));
    }

    fn small_vec(n: usize) -> impl Strategy<Value = SparseVec> {
        proptest::collection::vec(-3i64..4, n).prop_map(|d| sv(&d))
    }

    proptest! {
        #[test]
        fn canonical_form(vs in proptest::collection::vec(small_vec(5), 0..6)) {
            let s = Subspace::span(5, vs.clone());
            prop_assert_eq!(s.sum(&s).unwrap(), s.clone());
            prop_assert_eq!(s.intersection(&s).unwrap(), s.clone());
            let rev = Subspace::span(5, vs.iter().rev().cloned());
            prop_assert_eq!(&rev, &s);
            for v in &vs {
                prop_assert!(s.contains(v).unwrap());
            }
        }

        #[test]
        fn nullspace_annihilates(rows in proptest::collection::vec(small_vec(6), 0..5)) {
            let ns = nullspace(6, rows.clone());
            let rank = Subspace::span(6, rows.clone()).dim();
            prop_assert_eq!(ns.len() + rank, 6);
            for v in &ns {
                for r in &rows {
                    prop_assert!(r.dot(v).is_zero());
                }
            }
        }

        #[test]
        fn intersection_dimension_formula(a in proptest::collection::vec(small_vec(4), 0..4),
                                          b in proptest::collection::vec(small_vec(4), 0..4)) {
            let (sa, sb) = (Subspace::span(4, a), Subspace::span(4, b));
            let meet = sa.intersection(&sb).unwrap();
            let join = sa.sum(&sb).unwrap();
            prop_assert_eq!(meet.dim() + join.dim(), sa.dim() + sb.dim());
            prop_assert!(meet.is_subspace_of(&sa).unwrap());
            prop_assert!(meet.is_subspace_of(&sb).unwrap());
        }

        #[test]
        fn inertia_congruence_invariant(d in proptest::collection::vec(-2i64..3, 4),
                                        u in proptest::collection::vec(-2i64..3, 6)) {
            // Unit upper-triangular change of basis is unimodular.
            let mut p = Matrix::identity(4);
            let mut it = u.into_iter();
            for i in 0..4 {
                for j in i + 1..4 {
                    p[(i, j)] = Rational::integer(it.next().unwrap());
                }
            }
            let mut dm = Matrix::zeros(4, 4);
            for (i, x) in d.iter().enumerate() {
                dm[(i, i)] = Rational::integer(*x);
            }
            let m = p.transpose().mul(&dm).mul(&p);
            let expect = (
                d.iter().filter(|x| **x > 0).count(),
                d.iter().filter(|x| **x == 0).count(),
                d.iter().filter(|x| **x < 0).count(),
            );
            prop_assert_eq!(inertia(&m), expect);
        }
    }
}
