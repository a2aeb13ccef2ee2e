//! Named algebras: Hurwitz algebras via Cayley–Dickson doubling, tensor products,
//! and the Dixon algebra `C*H*O` with its norm, conjugation and zero divisors.
//!
//! Octonion orientation: `o1o2 = o3`, `o1o4 = o5`, `o2o4 = o6`, `o3o4 = o7`, from
//! the doubling `(a, b)(c, d) = (ac + μ d̄b, da + bc̄)` with `μ = -1`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, Element, Factor};
use crate::linalg::SparseVec;
use crate::rational::Rational;
use crate::{Error, Result};

/// Product of two Cayley–Dickson basis elements is `sign · e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SignedBasis {
    sign: i8,
    index: usize,
}

/// Multiplication table of the iterated doubling of ℝ with the given `μ` per level.
fn cayley_dickson(mus: &[i8]) -> Vec<SignedBasis> {
    let mut n = 1usize;
    let mut table = vec![SignedBasis { sign: 1, index: 0 }];
    for &mu in mus {
        let m = 2 * n;
        let mul = |i: usize, j: usize| table[i * n + j];
        let conj = |i: usize| if i == 0 { 1 } else { -1 };
        let mut next = vec![SignedBasis { sign: 0, index: 0 }; m * m];
        for i in 0..m {
            for j in 0..m {
                let (ib, jb) = (i >= n, j >= n);
                let (a, c) = (i % n, j % n);
                let r = match (ib, jb) {
                    // (a,0)(c,0) = (ac, 0)
                    (false, false) => mul(a, c),
                    // (a,0)(0,d) = (0, da)
                    (false, true) => {
                        let p = mul(c, a);
                        SignedBasis { sign: p.sign, index: p.index + n }
                    }
                    // (0,b)(c,0) = (0, b c̄)
                    (true, false) => {
                        let p = mul(a, c);
                        SignedBasis { sign: p.sign * conj(c), index: p.index + n }
                    }
                    // (0,b)(0,d) = (μ d̄ b, 0)
                    (true, true) => {
                        let p = mul(c, a);
                        SignedBasis { sign: p.sign * conj(c) * mu, index: p.index }
                    }
                };
                next[i * m + j] = r;
            }
        }
        table = next;
        n = m;
    }
    table
}

fn signed_table(name: &str, labels: Vec<String>, t: &[SignedBasis]) -> Result<AlgebraTable> {
    let n = labels.len();
    AlgebraTable::from_fn(name, labels, Some(0), |i, j| {
        let p = t[i * n + j];
        SparseVec::from_pairs([(p.index, Rational::integer(p.sign as i64))])
    })
}

fn unit_labels(prefix: &str, dim: usize) -> Vec<String> {
    std::iter::once("1".to_string())
        .chain((1..dim).map(|k| format!("{prefix}{k}")))
        .collect()
}

/// ℝ, ℂ, ℍ, 𝕆 and the split forms `Cs`, `Hs`, `Os`.
pub fn hurwitz(name: &str) -> Result<AlgebraTable> {
    let (mus, prefix): (&[i8], &str) = match name {
        "R" => (&[], ""),
        "C" => (&[-1], "c"),
        "H" => (&[-1, -1], "h"),
        "O" => (&[-1, -1, -1], "o"),
        "Cs" => (&[1], "cs"),
        "Hs" => (&[-1, 1], "hs"),
        "Os" => (&[-1, -1, 1], "os"),
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    };
    let t = cayley_dickson(mus);
    let dim = 1 << mus.len();
    let table = signed_table(name, unit_labels(prefix, dim), &t)?;
    table.with_factors(vec![Factor {
        name: name.to_string(),
        dim,
    }])
}

/// Factor-wise product `(a⊗b)(a′⊗b′) = aa′⊗bb′`, with `A` the slower index.
pub fn tensor(a: &AlgebraTable, b: &AlgebraTable) -> Result<AlgebraTable> {
    let (m, n) = (a.dim(), b.dim());
    let join = |i: usize, j: usize, sep: &str| -> String {
        match (Some(i) == a.unit(), Some(j) == b.unit()) {
            (true, true) => "1".to_string(),
            (true, false) => b.labels()[j].clone(),
            (false, true) => a.labels()[i].clone(),
            (false, false) => format!("{}{sep}{}", a.labels()[i], b.labels()[j]),
        }
    };
    let mut labels: Vec<String> = (0..m * n).map(|p| join(p / n, p % n, "")).collect();
    let mut seen = std::collections::HashSet::new();
    if !labels.iter().all(|l| seen.insert(l.clone())) {
        labels = (0..m * n).map(|p| join(p / n, p % n, ".")).collect();
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(u * n + v),
        _ => None,
    };
    let factors_of = |t: &AlgebraTable| -> Vec<Factor> {
        if t.factors().is_empty() {
            vec![Factor {
                name: t.name().to_string(),
                dim: t.dim(),
            }]
        } else {
            t.factors().to_vec()
        }
    };
    let mut factors = factors_of(a);
    factors.extend(factors_of(b));
    let table = AlgebraTable::from_fn(format!("{}*{}", a.name(), b.name()), labels, unit, |p, r| {
        let (i, j) = (p / n, p % n);
        let (k, l) = (r / n, r % n);
        let x = a.product(i, k);
        let y = b.product(j, l);
        SparseVec::from_pairs(
            x.iter()
                .flat_map(|(s, u)| y.iter().map(move |(t, v)| (s * n + t, u * v))),
        )
    })?;
    table.with_factors(factors)
}

/// Parses `C*H*O` style specs, evaluated left to right.
pub fn from_spec(spec: &str) -> Result<AlgebraTable> {
    let mut parts = spec.split('*').map(str::trim);
    let first = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::UnknownAlgebra(spec.to_string()))?;
    let mut acc = hurwitz(first)?;
    for p in parts {
        acc = tensor(&acc, &hurwitz(p)?)?;
    }
    Ok(acc)
}

/// The 64-dimensional Dixon algebra `C*H*O`.
pub fn dixon() -> AlgebraTable {
    from_spec("C*H*O").expect("Hurwitz factors are well formed")
}

/// Mixed-radix position of a basis element of a tensor table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorBasisIndex {
    pub factors: Vec<(String, usize)>,
    pub flat: usize,
}

impl TensorBasisIndex {
    pub fn decode(table: &AlgebraTable, flat: usize) -> Result<TensorBasisIndex> {
        if flat >= table.dim() {
            return Err(Error::Dimension {
                expected: table.dim(),
                found: flat + 1,
            });
        }
        let mut rest = flat;
        let mut out = Vec::with_capacity(table.factors().len());
        for f in table.factors().iter().rev() {
            out.push((f.name.clone(), rest % f.dim));
            rest /= f.dim;
        }
        out.reverse();
        Ok(TensorBasisIndex { factors: out, flat })
    }

    pub fn encode(table: &AlgebraTable, indices: &[usize]) -> Result<TensorBasisIndex> {
        let fs = table.factors();
        if indices.len() != fs.len() {
            return Err(Error::Invalid(format!(
                "{} factor indices for {} factors",
                indices.len(),
                fs.len()
            )));
        }
        let mut flat = 0;
        for (f, &i) in fs.iter().zip(indices) {
            if i >= f.dim {
                return Err(Error::Dimension {
                    expected: f.dim,
                    found: i + 1,
                });
            }
            flat = flat * f.dim + i;
        }
        Ok(TensorBasisIndex {
            factors: fs.iter().map(|f| f.name.clone()).zip(indices.iter().copied()).collect(),
            flat,
        })
    }
}

/// Sum of squared coefficients in the structural basis.
pub fn norm(t: &Element) -> Rational {
    polar(t, t)
}

/// Euclidean dot product of coefficient vectors.
pub fn polar(t1: &Element, t2: &Element) -> Rational {
    t1.coeffs().dot(t2.coeffs())
}

/// `t̄ = 2⟨t,1⟩1 − t`.
pub fn conjugate(table: &AlgebraTable, t: &Element) -> Result<Element> {
    let one = table
        .one()
        .ok_or_else(|| Error::InvalidTable(format!("{} has no unit", table.name())))?;
    let re = polar(t, &one);
    one.scale(&(Rational::integer(2) * re)).sub(t)
}

/// Annihilating pair `u·v` in a tensor of composition algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisor {
    pub u: SparseVec,
    pub v: SparseVec,
    pub product: SparseVec,
}

impl ZeroDivisor {
    pub fn annihilates(&self) -> bool {
        self.product.is_zero() && !self.u.is_zero() && !self.v.is_zero()
    }
}

/// For every product `x` of imaginary units from two distinct factors, the elements
/// `x ± 1` paired with `x ∓ 1`.
pub fn zero_divisor_witnesses(table: &AlgebraTable) -> Result<Vec<ZeroDivisor>> {
    let u = table
        .unit()
        .ok_or_else(|| Error::InvalidTable(format!("{} has no unit", table.name())))?;
    let fs = table.factors();
    let mut out = Vec::new();
    for f in 0..fs.len() {
        for g in f + 1..fs.len() {
            for alpha in 1..fs[f].dim {
                for beta in 1..fs[g].dim {
                    let mut idx = vec![0; fs.len()];
                    idx[f] = alpha;
                    idx[g] = beta;
                    let x = TensorBasisIndex::encode(table, &idx)?.flat;
                    for s in [1i64, -1] {
                        let d = SparseVec::from_pairs([(x, Rational::ONE), (u, Rational::integer(s))]);
                        let p = SparseVec::from_pairs([(x, Rational::ONE), (u, Rational::integer(-s))]);
                        let product = table.mul_vec(&d, &p);
                        out.push(ZeroDivisor { u: d, v: p, product });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First pair with `N(xy) ≠ N(x)N(y)`: basis pairs, then `x = 1 ± e_a`, `y = 1 ± e_b`.
pub fn composition_failure(table: &AlgebraTable) -> Option<(SparseVec, SparseVec)> {
    let n = table.dim();
    let nrm = |v: &SparseVec| v.dot(v);
    for i in 0..n {
        for j in 0..n {
            let p = table.product(i, j);
            if nrm(p) != Rational::ONE {
                return Some((SparseVec::unit(i), SparseVec::unit(j)));
            }
        }
    }
    let u = table.unit()?;
    let candidates: Vec<SparseVec> = (0..n)
        .filter(|&a| a != u)
        .flat_map(|a| {
            [1i64, -1].map(|s| SparseVec::from_pairs([(u, Rational::ONE), (a, Rational::integer(s))]))
        })
        .collect();
    for x in &candidates {
        for y in &candidates {
            if nrm(&table.mul_vec(x, y)) != nrm(x) * nrm(y) {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}
