//! Linear operators on algebras, derivation algebras as exact nullspaces, the
//! operator `D_{x,y}`, and designated derivation subalgebras.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, TableJson};
use crate::construct::{hurwitz, TensorBasisIndex};
use crate::linalg::{Accumulator, RowReducer, SparseVec, Subspace};
use crate::rational::Rational;
use crate::{Error, Result};

/// Square matrix acting on an algebra, stored by columns: `cols[i] = T(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    n: usize,
    cols: Vec<SparseVec>,
}

impl LinearOperator {
    pub fn zero(n: usize) -> LinearOperator {
        LinearOperator {
            n,
            cols: vec![SparseVec::new(); n],
        }
    }

    pub fn identity(n: usize) -> LinearOperator {
        LinearOperator {
            n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(cols: Vec<SparseVec>) -> LinearOperator {
        LinearOperator { n: cols.len(), cols }
    }

    /// From the row-major flattening `M[m][i]` at `m * n + i`.
    pub fn from_vec(n: usize, v: &SparseVec) -> LinearOperator {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        for (p, c) in v.iter() {
            cols[p % n].push((p / n, c.clone()));
        }
        LinearOperator {
            n,
            cols: cols.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn to_vec(&self) -> SparseVec {
        let n = self.n;
        SparseVec::from_pairs(
            self.cols
                .iter()
                .enumerate()
                .flat_map(|(i, col)| col.iter().map(move |(m, c)| (m * n + i, c.clone()))),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, i: usize) -> &SparseVec {
        &self.cols[i]
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.n);
        for (i, c) in x.iter() {
            acc.add_scaled(c, &self.cols[*i]);
        }
        acc.drain()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            n: self.n,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn commutator(&self, other: &LinearOperator) -> LinearOperator {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            n: self.n,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            n: self.n,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LinearOperator {
        LinearOperator {
            n: self.n,
            cols: self.cols.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// Whether `T(xy) = T(x)y + xT(y)` on all basis pairs.
    pub fn is_derivation_of(&self, t: &AlgebraTable) -> bool {
        let n = t.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.apply(t.product(i, j));
                let rhs = t
                    .mul_vec(&self.cols[i], &SparseVec::unit(j))
                    .add(&t.mul_vec(&SparseVec::unit(i), &self.cols[j]));
                lhs == rhs
            })
        })
    }
}

/// `y ↦ xy`.
pub fn left_mult(t: &AlgebraTable, x: &SparseVec) -> LinearOperator {
    LinearOperator::from_columns((0..t.dim()).map(|j| t.mul_vec(x, &SparseVec::unit(j))).collect())
}

/// `y ↦ yx`.
pub fn right_mult(t: &AlgebraTable, x: &SparseVec) -> LinearOperator {
    LinearOperator::from_columns((0..t.dim()).map(|j| t.mul_vec(&SparseVec::unit(j), x)).collect())
}

/// `D_{x,y} = [L_x, L_y] + [L_x, R_y] + [R_x, R_y]`.
pub fn d_operator(t: &AlgebraTable, x: &SparseVec, y: &SparseVec) -> LinearOperator {
    let (lx, ly) = (left_mult(t, x), left_mult(t, y));
    let (rx, ry) = (right_mult(t, x), right_mult(t, y));
    lx.commutator(&ly).add(&lx.commutator(&ry)).add(&rx.commutator(&ry))
}

/// A Lie algebra of operators on an `n`-dimensional algebra with its bracket table.
#[derive(Clone, Debug)]
pub struct LieSubalgebra {
    algebra: String,
    n: usize,
    basis: Subspace,
    table: AlgebraTable,
}

impl LieSubalgebra {
    /// Builds the commutator table of `span` (a subspace of `n × n` operators).
    pub fn from_span(name: &str, algebra: &str, n: usize, span: Subspace, prefix: &str) -> Result<LieSubalgebra> {
        let ops: Vec<LinearOperator> = span
            .basis()
            .iter()
            .map(|v| LinearOperator::from_vec(n, v))
            .collect();
        let d = ops.len();
        let mut sc = Vec::with_capacity(d * d);
        for a in &ops {
            for b in &ops {
                let c = a.commutator(b).to_vec();
                let coords = span.coordinates(&c)?.ok_or_else(|| {
                    Error::Invalid(format!("{name}: operator span is not closed under commutator"))
                })?;
                sc.push(SparseVec::from_dense(&coords));
            }
        }
        let labels = (0..d).map(|i| format!("{prefix}{i}")).collect();
        let table = AlgebraTable::new(name, labels, None, sc)?;
        Ok(LieSubalgebra {
            algebra: algebra.to_string(),
            n,
            basis: span,
            table,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn span(&self) -> &Subspace {
        &self.basis
    }

    pub fn operator(&self, i: usize) -> LinearOperator {
        LinearOperator::from_vec(self.n, &self.basis.basis()[i])
    }

    pub fn operators(&self) -> Vec<LinearOperator> {
        (0..self.dim()).map(|i| self.operator(i)).collect()
    }

    /// Coordinates of `op` in this basis, or `None` when outside.
    pub fn coordinates(&self, op: &LinearOperator) -> Result<Option<Vec<Rational>>> {
        if op.dim() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: op.dim(),
            });
        }
        self.basis.coordinates(&op.to_vec())
    }

    pub fn contains(&self, op: &LinearOperator) -> Result<bool> {
        Ok(self.coordinates(op)?.is_some())
    }

    pub fn to_json(&self) -> LieSubalgebraJson {
        let realization = self
            .operators()
            .iter()
            .map(|op| {
                let v = op.to_vec();
                v.iter().map(|(p, c)| (p / self.n, p % self.n, c.clone())).collect()
            })
            .collect();
        LieSubalgebraJson {
            table: self.table.to_json(),
            acts_on: self.algebra.clone(),
            algebra_dim: self.n,
            realization,
        }
    }

    pub fn from_json(j: LieSubalgebraJson) -> Result<LieSubalgebra> {
        let n = j.algebra_dim;
        let table = AlgebraTable::from_json(j.table)?;
        let vecs: Vec<SparseVec> = j
            .realization
            .into_iter()
            .map(|entries| SparseVec::from_pairs(entries.into_iter().map(|(m, i, c)| (m * n + i, c))))
            .collect();
        let basis = Subspace::span(n * n, vecs);
        if basis.dim() != table.dim() {
            return Err(Error::InvalidTable(format!(
                "realization spans {} operators, table has dim {}",
                basis.dim(),
                table.dim()
            )));
        }
        let prefix = table.labels().first().map_or("d".to_string(), |l| {
            l.trim_end_matches(|c: char| c.is_ascii_digit()).to_string()
        });
        LieSubalgebra::from_span(table.name(), &j.acts_on, n, basis, &prefix)
    }
}

/// Bracket table plus operator matrices `[[m, i, "c"], ...]` with `T(e_i) = Σ c e_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSubalgebraJson {
    #[serde(flatten)]
    pub table: TableJson,
    pub acts_on: String,
    pub algebra_dim: usize,
    pub realization: Vec<Vec<(usize, usize, Rational)>>,
}

/// Rows of the Leibniz system, one per `(i, j, k)`, over unknowns `M[m][i]` at `m·n + i`.
fn leibniz_rows(t: &AlgebraTable, i: usize, j: usize, by_right: &[Vec<Vec<(usize, Rational)>>], by_left: &[Vec<Vec<(usize, Rational)>>]) -> Vec<SparseVec> {
    let n = t.dim();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    // D(e_i e_j)_k = Σ_l c_ij^l M[k][l]
    for (l, c) in t.product(i, j).iter() {
        for (k, row) in rows.iter_mut().enumerate() {
            row.push((k * n + l, c.clone()));
        }
    }
    // (D(e_i) e_j)_k = Σ_m M[m][i] c_mj^k
    for (k, row) in rows.iter_mut().enumerate() {
        for (m, c) in &by_right[j][k] {
            row.push((m * n + i, -c));
        }
        // (e_i D(e_j))_k = Σ_m M[m][j] c_im^k
        for (m, c) in &by_left[i][k] {
            row.push((m * n + j, -c));
        }
    }
    rows.into_iter().map(SparseVec::from_pairs).filter(|r| !r.is_zero()).collect()
}

/// All linear `D` with `D(xy) = D(x)y + xD(y)`, as an exact nullspace.
pub fn derivation_algebra(t: &AlgebraTable) -> Result<LieSubalgebra> {
    let n = t.dim();
    // by_right[j][k] = [(m, c_mj^k)], by_left[i][k] = [(m, c_im^k)]
    let mut by_right = vec![vec![Vec::new(); n]; n];
    let mut by_left = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            for (k, c) in t.product(a, b).iter() {
                by_right[b][*k].push((a, c.clone()));
                by_left[a][*k].push((b, c.clone()));
            }
        }
    }
    let commutative = t.is_commutative();
    let mut rr = RowReducer::new(n * n);
    'outer: for i in 0..n {
        let start = if commutative { i } else { 0 };
        for j in start..n {
            for r in leibniz_rows(t, i, j, &by_right, &by_left) {
                rr.insert(&r);
            }
            if rr.is_full() {
                break 'outer;
            }
        }
    }
    let span = Subspace::span(n * n, rr.nullspace());
    LieSubalgebra::from_span(&format!("der({})", t.name()), t.name(), n, span, "d")
}

/// Smallest operator Lie algebra containing `ops`.
pub fn bracket_closure(n: usize, ops: &[LinearOperator]) -> Subspace {
    let mut rr = RowReducer::new(n * n);
    let mut basis: Vec<LinearOperator> = Vec::new();
    for op in ops {
        if rr.insert(&op.to_vec()) {
            basis.push(op.clone());
        }
    }
    let mut done = 0;
    while done < basis.len() {
        let new = basis[done].clone();
        for k in 0..=done {
            let c = basis[k].commutator(&new);
            if rr.insert(&c.to_vec()) {
                basis.push(c);
            }
        }
        done += 1;
    }
    rr.into_subspace()
}

/// Bracket closure of `ops`, each of which must lie in `ambient`.
pub fn designate(name: &str, ops: &[LinearOperator], ambient: &LieSubalgebra) -> Result<LieSubalgebra> {
    for (k, op) in ops.iter().enumerate() {
        if !ambient.contains(op)? {
            return Err(Error::Invalid(format!(
                "{name}: operator {k} is not in {}",
                ambient.table().name()
            )));
        }
    }
    let n = ambient.algebra_dim();
    LieSubalgebra::from_span(name, &ambient.algebra, n, bracket_closure(n, ops), "d")
}

/// `⊕_f I⊗…⊗der(f)⊗…⊗I` over the Hurwitz factors of a tensor table.
pub fn factor_derivations(t: &AlgebraTable) -> Result<Vec<LinearOperator>> {
    let fs = t.factors();
    if fs.is_empty() {
        return Err(Error::InvalidTable(format!("{} records no tensor factors", t.name())));
    }
    let n = t.dim();
    let decoded: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            TensorBasisIndex::decode(t, p).map(|ix| ix.factors.into_iter().map(|(_, i)| i).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (f, factor) in fs.iter().enumerate() {
        let der = derivation_algebra(&hurwitz(&factor.name)?)?;
        for d in der.operators() {
            let cols = (0..n)
                .map(|p| {
                    let idx = &decoded[p];
                    let img = d.column(idx[f]);
                    SparseVec::from_pairs(img.iter().map(|(m, c)| {
                        let mut jx = idx.clone();
                        jx[f] = *m;
                        let flat = TensorBasisIndex::encode(t, &jx).expect("in range").flat;
                        (flat, c.clone())
                    }))
                })
                .collect();
            out.push(LinearOperator::from_columns(cols));
        }
    }
    Ok(out)
}

/// Which derivation algebra of the coefficient algebra feeds a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivationChoice {
    /// Factor-wise derivations of the Hurwitz factors.
    Designated,
    /// The full derivation algebra.
    Full,
}

/// The designated subalgebra inside the full derivation algebra, or the full algebra.
pub fn derivations_for(t: &AlgebraTable, choice: DerivationChoice) -> Result<(LieSubalgebra, LieSubalgebra)> {
    let full = derivation_algebra(t)?;
    let chosen = match choice {
        DerivationChoice::Full => full.clone(),
        DerivationChoice::Designated => {
            if t.factors().len() <= 1 {
                full.clone()
            } else {
                let ops = factor_derivations(t)?;
                designate(&format!("der_fac({})", t.name()), &ops, &full)?
            }
        }
    };
    Ok((chosen, full))
}
