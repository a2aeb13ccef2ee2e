//! Finite-dimensional algebras given by sparse structure constants.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::linalg::{Accumulator, SparseVec};
use crate::rational::Rational;
use crate::{Error, Result};

/// A tensor factor recorded on product tables, slowest-varying first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    pub dim: usize,
}

/// Algebra over ℚ with basis `e_0..e_{dim-1}` and `e_i e_j = Σ_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    name: String,
    dim: usize,
    labels: Vec<String>,
    unit: Option<usize>,
    factors: Vec<Factor>,
    sc: Vec<SparseVec>,
}

/// Coefficient vector in the basis of some table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    dim: usize,
    coeffs: SparseVec,
}

impl Element {
    pub fn zero(dim: usize) -> Element {
        Element {
            dim,
            coeffs: SparseVec::new(),
        }
    }

    pub fn from_sparse(dim: usize, coeffs: SparseVec) -> Result<Element> {
        if let Some(m) = coeffs.max_index() {
            if m >= dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: m + 1,
                });
            }
        }
        Ok(Element { dim, coeffs })
    }

    pub fn from_dense(coeffs: &[Rational]) -> Element {
        Element {
            dim: coeffs.len(),
            coeffs: SparseVec::from_dense(coeffs),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.coeffs
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        self.coeffs.to_dense(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i)
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element {
            dim: self.dim,
            coeffs: self.coeffs.add(&other.coeffs),
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element {
            dim: self.dim,
            coeffs: self.coeffs.sub(&other.coeffs),
        })
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element {
            dim: self.dim,
            coeffs: self.coeffs.scale(c),
        }
    }
}

impl AlgebraTable {
    /// Validates and builds a table; `sc[i * dim + j]` is the product `e_i e_j`.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: Option<usize>,
        sc: Vec<SparseVec>,
    ) -> Result<AlgebraTable> {
        let dim = labels.len();
        let t = AlgebraTable {
            name: name.into(),
            dim,
            labels,
            unit,
            factors: Vec::new(),
            sc,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: Option<usize>,
        f: impl Fn(usize, usize) -> SparseVec,
    ) -> Result<AlgebraTable> {
        let n = labels.len();
        let sc = (0..n * n).map(|p| f(p / n, p % n)).collect();
        AlgebraTable::new(name, labels, unit, sc)
    }

    pub fn with_factors(mut self, factors: Vec<Factor>) -> Result<AlgebraTable> {
        let product: usize = factors.iter().map(|f| f.dim).product();
        if !factors.is_empty() && product != self.dim {
            return Err(Error::InvalidTable(format!(
                "factor dims multiply to {product}, table has dim {}",
                self.dim
            )));
        }
        self.factors = factors;
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> AlgebraTable {
        self.name = name.into();
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        if self.sc.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} products, found {}",
                n * n,
                self.sc.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &self.labels {
            if !seen.insert(l) {
                return Err(Error::InvalidTable(format!("duplicate label {l:?}")));
            }
        }
        for (p, v) in self.sc.iter().enumerate() {
            if let Some(k) = v.max_index() {
                if k >= n {
                    return Err(Error::InvalidTable(format!(
                        "product e{}·e{} has component {k} ≥ dim {n}",
                        p / n,
                        p % n
                    )));
                }
            }
        }
        if let Some(u) = self.unit {
            if u >= n {
                return Err(Error::InvalidTable(format!("unit index {u} ≥ dim {n}")));
            }
            for j in 0..n {
                let ej = SparseVec::unit(j);
                if self.sc[u * n + j] != ej || self.sc[j * n + u] != ej {
                    return Err(Error::InvalidTable(format!(
                        "declared unit {} does not act as identity on {}",
                        self.labels[u], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.sc[i * self.dim + j]
    }

    pub fn basis(&self, i: usize) -> Element {
        Element {
            dim: self.dim,
            coeffs: SparseVec::unit(i),
        }
    }

    pub fn one(&self) -> Option<Element> {
        self.unit.map(|u| self.basis(u))
    }

    pub fn element(&self, coeffs: &[Rational]) -> Result<Element> {
        if coeffs.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: coeffs.len(),
            });
        }
        Ok(Element::from_dense(coeffs))
    }

    fn own(&self, x: &Element) -> Result<()> {
        if x.dim == self.dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                found: x.dim,
            })
        }
    }

    /// Bilinear product on raw coefficient vectors.
    pub fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let n = self.dim;
        if x.nnz() == 1 && y.nnz() == 1 {
            let (i, a) = &x.entries()[0];
            let (j, b) = &y.entries()[0];
            return self.sc[i * n + j].scale(&(a * b));
        }
        let mut acc = Accumulator::new(n);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = &self.sc[i * n + j];
                if !p.is_zero() {
                    acc.add_scaled(&(a * b), p);
                }
            }
        }
        acc.drain()
    }

    pub fn commutator_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul_vec(x, y).sub(&self.mul_vec(y, x))
    }

    pub fn associator_vec(&self, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
        self.mul_vec(&self.mul_vec(x, y), z)
            .sub(&self.mul_vec(x, &self.mul_vec(y, z)))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.own(x)?;
        self.own(y)?;
        Ok(Element {
            dim: self.dim,
            coeffs: self.mul_vec(&x.coeffs, &y.coeffs),
        })
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.own(x)?;
        self.own(y)?;
        Ok(Element {
            dim: self.dim,
            coeffs: self.commutator_vec(&x.coeffs, &y.coeffs),
        })
    }

    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.own(x)?;
        self.own(y)?;
        self.own(z)?;
        Ok(Element {
            dim: self.dim,
            coeffs: self.associator_vec(&x.coeffs, &y.coeffs, &z.coeffs),
        })
    }

    /// First pair `(i, j)` with `e_i e_j ≠ e_j e_i`.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.sc[i * n + j] != self.sc[j * n + i])
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// First pair violating `e_i e_j = -e_j e_i` (including `e_i e_i = 0`).
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.sc[i * n + j] != self.sc[j * n + i].neg())
    }

    /// Renders an element such as `1 - 1/2 c1h1 + o3`.
    pub fn format(&self, x: &SparseVec) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (n, (i, c)) in x.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push(' ');
            }
            s.push_str(&self.labels[*i]);
        }
        s
    }

    /// Total number of stored structure constants.
    pub fn nnz(&self) -> usize {
        self.sc.iter().map(|v| v.nnz()).sum()
    }

    pub fn to_json(&self) -> TableJson {
        let n = self.dim;
        let mut sc = Vec::with_capacity(self.nnz());
        for (p, v) in self.sc.iter().enumerate() {
            for (k, c) in v.iter() {
                sc.push((p / n, p % n, *k, c.clone()));
            }
        }
        TableJson {
            name: self.name.clone(),
            dim: n,
            labels: self.labels.clone(),
            unit: self.unit,
            factors: self.factors.clone(),
            sc,
        }
    }

    pub fn from_json(j: TableJson) -> Result<AlgebraTable> {
        let n = j.dim;
        if j.labels.len() != n {
            return Err(Error::InvalidTable(format!(
                "dim {n} but {} labels",
                j.labels.len()
            )));
        }
        let mut pairs: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n * n];
        for (i, jj, k, c) in j.sc {
            if i >= n || jj >= n || k >= n {
                return Err(Error::InvalidTable(format!(
                    "entry ({i}, {jj}, {k}) out of range for dim {n}"
                )));
            }
            pairs[i * n + jj].push((k, c));
        }
        let sc = pairs.into_iter().map(SparseVec::from_pairs).collect();
        AlgebraTable::new(j.name, j.labels, j.unit, sc)?.with_factors(j.factors)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("table serializes")
    }

    pub fn from_json_str(s: &str) -> Result<AlgebraTable> {
        AlgebraTable::from_json(serde_json::from_str(s)?)
    }
}

/// Wire form: `{"name", "dim", "labels", "unit", "sc": [[i, j, k, "p/q"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<Factor>,
    pub sc: Vec<(usize, usize, usize, Rational)>,
}
