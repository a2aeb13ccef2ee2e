//! The Tits construction `L = der(A) ⊕ der(J) ⊕ (A′ ⊗ J′)` as an explicit Lie table.
//!
//! Brackets:
//! 1. `der(A)` and `der(J)` keep their own brackets and commute with each other.
//! 2. `[d, a⊗X] = d(a)⊗X` for `d ∈ der(A)` and `a⊗d(X)` for `d ∈ der(J)`.
//! 3. `[a⊗X, b⊗Y] = c_D ⟨X,Y⟩ D_{a,b} + c_L ⟨a,b⟩ [L_X, L_Y] + c_T [a,b] ⊗ (X•Y)`.
//!
//! In rule 3, `L_X` is multiplication by `X` in the doubled product `X·Y = 2X∘Y`, so
//! `[L_X, L_Y] = 4[L∘_X, L∘_Y]`; `⟨X,Y⟩ = Tr(X∘Y)`; `⟨a,b⟩` is the Euclidean dot
//! product on `A′`, the span of the non-unit basis vectors; `X•Y = X·Y − c⟨X,Y⟩I`.
//! The tensor block is ordered with the `A′` index major and the `J′` index minor.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, TableJson};
use crate::derivations::{bracket_closure, d_operator, left_mult, LieSubalgebra, LinearOperator};
use crate::jordan::HermAlgebra;
use crate::linalg::{SparseVec, Subspace};
use crate::rational::{q, Rational};
use crate::{Error, Result};

/// Scalar conventions of rule 3 and the bullet product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsConfig {
    pub c_d: Rational,
    pub c_l: Rational,
    pub c_t: Rational,
    pub bullet_coeff: Rational,
}

impl Default for TitsConfig {
    fn default() -> Self {
        TitsConfig {
            c_d: q(1, 3),
            c_l: q(-1, 1),
            c_t: q(1, 2),
            bullet_coeff: q(2, 3),
        }
    }
}

/// Block sizes of the grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsGrading {
    pub der_a: usize,
    pub der_j: usize,
    pub a_prime: usize,
    pub j_prime: usize,
}

impl TitsGrading {
    pub fn tensor(&self) -> usize {
        self.a_prime * self.j_prime
    }

    pub fn total(&self) -> usize {
        self.der_a + self.der_j + self.tensor()
    }
}

/// One pair whose bracket leaves the space it must land in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureFailure {
    pub rule: String,
    pub pair: (String, String),
}

/// Whether every ingredient of rules 2 and 3 lands where it must.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// `D_{a,b} ∈ der(A)` for all `a, b ∈ A′`.
    pub d_ab_closed: bool,
    /// Number of ordered pairs with `D_{a,b}` outside `der(A)`.
    pub d_ab_failures: usize,
    /// Dimension of the bracket closure of `der(A)` and all `D_{a,b}`.
    pub d_ab_closure_dim: usize,
    /// `[L_X, L_Y] ∈ der(J)` for all `X, Y ∈ J′`.
    pub lxly_closed: bool,
    pub lxly_failures: usize,
    /// `[a,b] ∈ A′` for all `a, b ∈ A′`.
    pub commutator_closed: bool,
    /// `X•Y ∈ J′` for all `X, Y ∈ J′`.
    pub bullet_closed: bool,
    /// `d(A′) ⊆ A′` and `d(J′) ⊆ J′`.
    pub action_closed: bool,
    /// First few offending pairs.
    pub examples: Vec<ClosureFailure>,
}

impl ClosureReport {
    pub fn all_closed(&self) -> bool {
        self.d_ab_closed && self.lxly_closed && self.commutator_closed && self.bullet_closed && self.action_closed
    }
}

/// An assembled Tits algebra.
#[derive(Clone, Debug)]
pub struct TitsAlgebra {
    pub table: AlgebraTable,
    pub grading: TitsGrading,
    pub config: TitsConfig,
}

/// Result of an assembly attempt: the closure report and, when closed, the algebra.
#[derive(Clone, Debug)]
pub struct TitsBuild {
    pub grading: TitsGrading,
    pub closure: ClosureReport,
    pub algebra: Option<TitsAlgebra>,
}

/// Non-unit basis indices of a unital table.
pub fn prime_space(a: &AlgebraTable) -> Result<Vec<usize>> {
    let u = a
        .unit()
        .ok_or_else(|| Error::InvalidTable(format!("{} has no unit", a.name())))?;
    Ok((0..a.dim()).filter(|&i| i != u).collect())
}

/// Coordinates in `A′` of a vector with no unit component.
fn a_prime_coords(v: &SparseVec, pos: &[Option<usize>]) -> Option<SparseVec> {
    let mut out = Vec::with_capacity(v.nnz());
    for (i, c) in v.iter() {
        out.push((pos[*i]?, c.clone()));
    }
    Some(SparseVec::from_pairs(out))
}

fn sparse_coords(s: &Subspace, v: &SparseVec) -> Option<SparseVec> {
    s.coordinates(v)
        .expect("same ambient")
        .map(|c| SparseVec::from_dense(&c))
}

const EXAMPLES: usize = 8;

/// Membership of every `D_{a,b}`, `a, b ∈ A′`, in a derivation subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DabReport {
    pub pairs: usize,
    pub failures: usize,
    /// Dimension of the bracket closure of the subalgebra together with every `D_{a,b}`.
    pub closure_dim: usize,
    /// First few ordered pairs with `D_{a,b}` outside the subalgebra.
    pub failing_pairs: Vec<(String, String)>,
}

impl DabReport {
    pub fn closed(&self) -> bool {
        self.failures == 0
    }
}

pub fn d_ab_closure(a: &AlgebraTable, der_a: &LieSubalgebra) -> Result<DabReport> {
    Ok(d_ab_coordinates(a, der_a)?.1)
}

/// `D_{a,b}` in `der_a` coordinates for all ordered pairs of `A′` basis vectors.
fn d_ab_coordinates(a: &AlgebraTable, der_a: &LieSubalgebra) -> Result<(Vec<Option<SparseVec>>, DabReport)> {
    if der_a.algebra_dim() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: der_a.algebra_dim(),
        });
    }
    let ap = prime_space(a)?;
    let mut coords = Vec::with_capacity(ap.len() * ap.len());
    let mut outside = Vec::new();
    let mut failing_pairs = Vec::new();
    for &x in &ap {
        for &y in &ap {
            let d = d_operator(a, &SparseVec::unit(x), &SparseVec::unit(y));
            let c = der_a.coordinates(&d)?.map(|c| SparseVec::from_dense(&c));
            if c.is_none() {
                if failing_pairs.len() < EXAMPLES {
                    failing_pairs.push((a.labels()[x].clone(), a.labels()[y].clone()));
                }
                outside.push(d);
            }
            coords.push(c);
        }
    }
    let failures = outside.len();
    let closure_dim = if outside.is_empty() {
        der_a.dim()
    } else {
        let mut ops = der_a.operators();
        ops.extend(outside);
        bracket_closure(a.dim(), &ops).dim()
    };
    let report = DabReport {
        pairs: ap.len() * ap.len(),
        failures,
        closure_dim,
        failing_pairs,
    };
    Ok((coords, report))
}

pub fn build_tits(
    name: &str,
    a: &AlgebraTable,
    der_a: &LieSubalgebra,
    j: &HermAlgebra,
    der_j: &LieSubalgebra,
    config: &TitsConfig,
) -> Result<TitsBuild> {
    if der_a.algebra_dim() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: der_a.algebra_dim(),
        });
    }
    if der_j.algebra_dim() != j.dim() {
        return Err(Error::Dimension {
            expected: j.dim(),
            found: der_j.algebra_dim(),
        });
    }
    let ap = prime_space(a)?;
    let mut pos = vec![None; a.dim()];
    for (k, &i) in ap.iter().enumerate() {
        pos[i] = Some(k);
    }
    let jp = j.prime_space();
    let jpb: Vec<SparseVec> = jp.basis().to_vec();
    let (na, nj) = (ap.len(), jpb.len());
    let grading = TitsGrading {
        der_a: der_a.dim(),
        der_j: der_j.dim(),
        a_prime: na,
        j_prime: nj,
    };
    let mut examples = Vec::new();
    let mut note = |rule: &str, x: String, y: String| {
        if examples.len() < EXAMPLES {
            examples.push(ClosureFailure {
                rule: rule.to_string(),
                pair: (x, y),
            });
        }
    };
    let jl = |x: usize| -> String {
        match jpb[x].entries() {
            [(i, c)] if c.is_one() => j.table().labels()[*i].clone(),
            _ => format!("P{x}"),
        }
    };
    let al = |x: usize| a.labels()[ap[x]].clone();

    let (dab, dab_report) = d_ab_coordinates(a, der_a)?;
    for (x, y) in &dab_report.failing_pairs {
        note("D_{a,b} in der(A)", x.clone(), y.clone());
    }
    let d_ab_failures = dab_report.failures;
    let d_ab_closure_dim = dab_report.closure_dim;

    // [L_X, L_Y] in der(J) coordinates, in the doubled normalization.
    let lops: Vec<LinearOperator> = jpb.iter().map(|x| left_mult(j.table(), x)).collect();
    let four = Rational::integer(4);
    let mut lxly: Vec<Option<SparseVec>> = Vec::with_capacity(nj * nj);
    let mut lxly_failures = 0;
    for x in 0..nj {
        for y in 0..nj {
            let c = lops[x].commutator(&lops[y]).scale(&four);
            let co = der_j.coordinates(&c)?.map(|c| SparseVec::from_dense(&c));
            if co.is_none() {
                lxly_failures += 1;
                note("[L_X,L_Y] in der(J)", jl(x), jl(y));
            }
            lxly.push(co);
        }
    }

    // [a,b] in A′ and X•Y in J′.
    let mut comm: Vec<Option<SparseVec>> = Vec::with_capacity(na * na);
    for x in 0..na {
        for y in 0..na {
            let c = a.commutator_vec(&SparseVec::unit(ap[x]), &SparseVec::unit(ap[y]));
            let co = a_prime_coords(&c, &pos);
            if co.is_none() {
                note("[a,b] in A'", al(x), al(y));
            }
            comm.push(co);
        }
    }
    let commutator_closed = comm.iter().all(Option::is_some);
    let mut inner = Vec::with_capacity(nj * nj);
    let mut bullet: Vec<Option<SparseVec>> = Vec::with_capacity(nj * nj);
    for x in 0..nj {
        for y in 0..nj {
            inner.push(j.inner(&jpb[x], &jpb[y]));
            let b = j.bullet(&jpb[x], &jpb[y], &config.bullet_coeff);
            let co = sparse_coords(&jp, &b);
            if co.is_none() {
                note("X•Y in J'", jl(x), jl(y));
            }
            bullet.push(co);
        }
    }
    let bullet_closed = bullet.iter().all(Option::is_some);

    // Rule 2 actions.
    let da_ops = der_a.operators();
    let dj_ops = der_j.operators();
    let mut act_a: Vec<Option<SparseVec>> = Vec::new();
    for (di, d) in da_ops.iter().enumerate() {
        for x in 0..na {
            let co = a_prime_coords(d.column(ap[x]), &pos);
            if co.is_none() {
                note("d(a) in A'", der_a.table().labels()[di].clone(), al(x));
            }
            act_a.push(co);
        }
    }
    let mut act_j: Vec<Option<SparseVec>> = Vec::new();
    for (di, d) in dj_ops.iter().enumerate() {
        for x in 0..nj {
            let co = sparse_coords(&jp, &d.apply(&jpb[x]));
            if co.is_none() {
                note("d(X) in J'", der_j.table().labels()[di].clone(), jl(x));
            }
            act_j.push(co);
        }
    }
    let action_closed = act_a.iter().chain(&act_j).all(Option::is_some);

    let closure = ClosureReport {
        d_ab_closed: d_ab_failures == 0,
        d_ab_failures,
        d_ab_closure_dim,
        lxly_closed: lxly_failures == 0,
        lxly_failures,
        commutator_closed,
        bullet_closed,
        action_closed,
        examples,
    };
    if !closure.all_closed() {
        return Ok(TitsBuild {
            grading,
            closure,
            algebra: None,
        });
    }

    let (nda, ndj) = (der_a.dim(), der_j.dim());
    let off_j = nda;
    let off_t = nda + ndj;
    let ten = |x: usize, y: usize| off_t + x * nj + y;
    let total = grading.total();
    let mut labels: Vec<String> = Vec::with_capacity(total);
    labels.extend((0..nda).map(|i| format!("dA{i}")));
    labels.extend((0..ndj).map(|i| format!("dJ{i}")));
    for x in 0..na {
        for y in 0..nj {
            labels.push(format!("{}*{}", al(x), jl(y)));
        }
    }
    let unwrap = |v: &Option<SparseVec>| v.clone().expect("closure verified");
    let bracket = |p: usize, r: usize| -> SparseVec {
        match (p < off_j, p < off_t, r < off_j, r < off_t) {
            // der(A) × der(A)
            (true, _, true, _) => der_a.table().product(p, r).clone(),
            // der(J) × der(J)
            (false, true, false, true) => der_j.table().product(p - off_j, r - off_j).shifted(off_j),
            // der(A) × der(J) and der(J) × der(A)
            (true, _, false, true) | (false, true, true, _) => SparseVec::new(),
            // der(A) × tensor
            (true, _, false, false) => {
                let (x, y) = ((r - off_t) / nj, (r - off_t) % nj);
                let img = unwrap(&act_a[p * na + x]);
                SparseVec::from_pairs(img.iter().map(|(b, c)| (ten(*b, y), c.clone())))
            }
            (false, false, true, _) => {
                let (x, y) = ((p - off_t) / nj, (p - off_t) % nj);
                let img = unwrap(&act_a[r * na + x]);
                SparseVec::from_pairs(img.iter().map(|(b, c)| (ten(*b, y), -c)))
            }
            // der(J) × tensor
            (false, true, false, false) => {
                let (x, y) = ((r - off_t) / nj, (r - off_t) % nj);
                let img = unwrap(&act_j[(p - off_j) * nj + y]);
                SparseVec::from_pairs(img.iter().map(|(z, c)| (ten(x, *z), c.clone())))
            }
            (false, false, false, true) => {
                let (x, y) = ((p - off_t) / nj, (p - off_t) % nj);
                let img = unwrap(&act_j[(r - off_j) * nj + y]);
                SparseVec::from_pairs(img.iter().map(|(z, c)| (ten(x, *z), -c)))
            }
            // tensor × tensor: rule 3
            (false, false, false, false) => {
                let (xa, xj) = ((p - off_t) / nj, (p - off_t) % nj);
                let (ya, yj) = ((r - off_t) / nj, (r - off_t) % nj);
                let mut pairs: Vec<(usize, Rational)> = Vec::new();
                let ip = &inner[xj * nj + yj];
                if !ip.is_zero() {
                    let f = &config.c_d * ip;
                    for (k, c) in unwrap(&dab[xa * na + ya]).iter() {
                        pairs.push((*k, &f * c));
                    }
                }
                if xa == ya {
                    for (k, c) in unwrap(&lxly[xj * nj + yj]).iter() {
                        pairs.push((off_j + k, &config.c_l * c));
                    }
                }
                let ab = unwrap(&comm[xa * na + ya]);
                if !ab.is_zero() {
                    let xy = unwrap(&bullet[xj * nj + yj]);
                    for (s, c) in ab.iter() {
                        for (z, v) in xy.iter() {
                            pairs.push((ten(*s, *z), &config.c_t * &(c * v)));
                        }
                    }
                }
                SparseVec::from_pairs(pairs)
            }
        }
    };
    let table = AlgebraTable::from_fn(name, labels, None, bracket)?;
    Ok(TitsBuild {
        grading: grading.clone(),
        closure,
        algebra: Some(TitsAlgebra {
            table,
            grading,
            config: config.clone(),
        }),
    })
}

impl TitsAlgebra {
    pub fn to_json(&self) -> TitsJson {
        TitsJson {
            table: self.table.to_json(),
            grading: self.grading.clone(),
            conventions: self.config.clone(),
        }
    }

    pub fn from_json(j: TitsJson) -> Result<TitsAlgebra> {
        let table = AlgebraTable::from_json(j.table)?;
        if j.grading.total() != table.dim() {
            return Err(Error::InvalidTable(format!(
                "grading totals {} but table has dim {}",
                j.grading.total(),
                table.dim()
            )));
        }
        Ok(TitsAlgebra {
            table,
            grading: j.grading,
            config: j.conventions,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsJson {
    #[serde(flatten)]
    pub table: TableJson,
    pub grading: TitsGrading,
    pub conventions: TitsConfig,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{from_spec, hurwitz};
    use crate::derivations::{derivation_algebra, derivations_for, DerivationChoice};
    use crate::jordan::{build_herm, HermProduct, Involution};
    use crate::lie::{killing_summary, verify_jacobi, JacobiMode};

    fn magic(a: &str, b: &str, config: &TitsConfig) -> TitsBuild {
        let a = hurwitz(a).unwrap();
        let b = hurwitz(b).unwrap();
        let j = build_herm(&b, &Involution::conjugation(&b).unwrap(), HermProduct::Jordan).unwrap();
        let da = derivation_algebra(&a).unwrap();
        let dj = derivation_algebra(j.table()).unwrap();
        build_tits("L", &a, &da, &j, &dj, config).unwrap()
    }

    #[test]
    fn su3_from_complex_row() {
        // der(C) = 0, der(J3(R)) = so3, C′ ⊗ J3′(R) = 5: the 8-dim compact su3.
        let l = magic("C", "R", &TitsConfig::default()).algebra.unwrap();
        assert_eq!(l.table.dim(), 8);
        assert!(l.table.antisymmetry_violation().is_none());
        assert!(verify_jacobi(&l.table, JacobiMode::Full, Some(2)).holds());
        assert_eq!(killing_summary(&l.table).inertia, (0, 0, 8));
    }

    #[test]
    fn rule_three_sign_matters() {
        let flipped = TitsConfig {
            c_l: q(1, 1),
            ..TitsConfig::default()
        };
        let l = magic("H", "R", &flipped).algebra.unwrap();
        assert!(!verify_jacobi(&l.table, JacobiMode::Full, None).holds());
        let l = magic("H", "R", &TitsConfig::default()).algebra.unwrap();
        assert!(verify_jacobi(&l.table, JacobiMode::Full, None).holds());
        assert_eq!(killing_summary(&l.table).inertia, (0, 0, 21));
    }

    #[test]
    fn tensor_elements_bracket_to_zero_with_themselves() {
        let l = magic("H", "C", &TitsConfig::default()).algebra.unwrap();
        let off = l.grading.der_a + l.grading.der_j;
        for p in off..l.table.dim() {
            assert!(l.table.product(p, p).is_zero(), "{}", l.table.labels()[p]);
        }
    }

    #[test]
    fn designated_complex_quaternion_derivations_do_not_close() {
        let a = from_spec("C*H").unwrap();
        let (su2, full) = derivations_for(&a, DerivationChoice::Designated).unwrap();
        let r = d_ab_closure(&a, &su2).unwrap();
        assert_eq!(r.pairs, 49);
        assert!(!r.closed());
        assert_eq!(r.closure_dim, full.dim());
        assert!(d_ab_closure(&a, &full).unwrap().closed());
    }

    #[test]
    fn octonion_d_ab_is_inner() {
        let o = hurwitz("O").unwrap();
        let r = d_ab_closure(&o, &derivation_algebra(&o).unwrap()).unwrap();
        assert!(r.closed());
        assert_eq!(r.closure_dim, 14);
    }

    #[test]
    fn json_round_trip() {
        let l = magic("C", "C", &TitsConfig::default()).algebra.unwrap();
        let s = serde_json::to_string(&l.to_json()).unwrap();
        let back = TitsAlgebra::from_json(serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back.table, l.table);
        assert_eq!(back.grading, l.grading);
        assert_eq!(back.grading.total(), 16);
    }

    #[test]
    fn prime_space_needs_unit() {
        assert_eq!(prime_space(&hurwitz("R").unwrap()).unwrap().len(), 0);
        assert_eq!(prime_space(&from_spec("C*O").unwrap()).unwrap().len(), 15);
    }
}
