//! Involutions, nuclearity, and 3×3 Hermitian matrix algebras with the Jordan
//! product `x∘y = ½(xy + yx)`.
//!
//! Scalar conventions: `⟨X,Y⟩ = Tr(X∘Y)`; the doubled product `X·Y = XY + YX = 2X∘Y`
//! is used where a formula is stated for it. The bullet product
//! `X•Y = X·Y − c⟨X,Y⟩I` is trace-free exactly when `c = 2/3`, the default.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, TableJson};
use crate::linalg::{nullspace, SparseVec, Subspace};
use crate::profile::{nucleus, Check, Witness};
use crate::rational::{q, Rational};
use crate::{Error, Result};

/// Linear map `σ` on a coefficient algebra, stored by its images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub name: String,
    images: Vec<SparseVec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaFlavor {
    /// `z₀ + Σ z_k i_k ↦ z̄₀ − Σ z_k i_k`.
    RealDiagonal,
    /// `z₀ + Σ z_k i_k ↦ z₀ − Σ z_k i_k`.
    ComplexDiagonal,
}

/// Outcome of checking the involution axioms on basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionAxioms {
    pub squares_to_identity: bool,
    pub fixes_unit: bool,
    pub antihomomorphism: Check,
}

impl InvolutionAxioms {
    pub fn all_hold(&self) -> bool {
        self.squares_to_identity && self.fixes_unit && self.antihomomorphism.holds
    }
}

impl Involution {
    pub fn from_images(name: impl Into<String>, images: Vec<SparseVec>) -> Involution {
        Involution {
            name: name.into(),
            images,
        }
    }

    /// `t ↦ 2⟨t,1⟩1 − t`: fixes the unit, negates every other basis vector.
    pub fn conjugation(t: &AlgebraTable) -> Result<Involution> {
        let u = t
            .unit()
            .ok_or_else(|| Error::InvalidTable(format!("{} has no unit", t.name())))?;
        let images = (0..t.dim())
            .map(|i| {
                let s = if i == u { 1 } else { -1 };
                SparseVec::from_pairs([(i, Rational::integer(s))])
            })
            .collect();
        Ok(Involution::from_images("conjugation", images))
    }

    pub fn identity(t: &AlgebraTable) -> Involution {
        Involution::from_images("identity", (0..t.dim()).map(SparseVec::unit).collect())
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out = out.add_scaled(c, &self.images[*i]);
        }
        out
    }

    pub fn fixed_space(&self) -> Subspace {
        let n = self.dim();
        // Rows of σ − id, read column-wise from the images.
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        for (j, img) in self.images.iter().enumerate() {
            for (k, c) in img.iter() {
                rows[*k].push((j, c.clone()));
            }
            rows[j].push((j, -Rational::ONE));
        }
        Subspace::span(n, nullspace(n, rows.into_iter().map(SparseVec::from_pairs)))
    }

    pub fn check_axioms(&self, t: &AlgebraTable) -> Result<InvolutionAxioms> {
        if t.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: t.dim(),
                found: self.dim(),
            });
        }
        let n = t.dim();
        let squares_to_identity = (0..n).all(|i| self.apply(&self.images[i]) == SparseVec::unit(i));
        let fixes_unit = t.unit().is_none_or(|u| self.images[u] == SparseVec::unit(u));
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = self.apply(t.product(i, j));
                let rhs = t.mul_vec(&self.images[j], &self.images[i]);
                if lhs != rhs {
                    let v = lhs.sub(&rhs);
                    witness = Some(Witness::new(
                        t,
                        "σ(xy) = σ(y)σ(x)",
                        vec![SparseVec::unit(i), SparseVec::unit(j)],
                        &v,
                    ));
                    break 'outer;
                }
            }
        }
        Ok(InvolutionAxioms {
            squares_to_identity,
            fixes_unit,
            antihomomorphism: Check {
                holds: witness.is_none(),
                witness,
            },
        })
    }
}

/// The diagonal maps `γ` (real diagonal) and `γ̃` (complex diagonal) on a table whose
/// first tensor factor is `C`. On a single Hurwitz factor the real-diagonal map is
/// conjugation; the complex-diagonal map on `C` alone is the identity.
///
/// No axiom check is applied here: [`Involution::check_axioms`] reports whether the
/// map is an anti-automorphism, and for `γ` on a product with further factors it is not.
pub fn involution_gamma(t: &AlgebraTable, flavor: GammaFlavor) -> Result<Involution> {
    let u = t
        .unit()
        .ok_or_else(|| Error::InvalidTable(format!("{} has no unit", t.name())))?;
    let fs = t.factors();
    let name = match flavor {
        GammaFlavor::RealDiagonal => "gamma",
        GammaFlavor::ComplexDiagonal => "gamma_tilde",
    };
    if fs.len() <= 1 {
        let is_c = fs.first().is_some_and(|f| f.name == "C");
        return Ok(match (flavor, is_c) {
            (GammaFlavor::ComplexDiagonal, true) => Involution::identity(t),
            _ => Involution::conjugation(t)?,
        }
        .renamed(name));
    }
    if fs[0].name != "C" || fs[0].dim != 2 {
        return Err(Error::InvalidTable(format!(
            "{}: first factor must be C for the diagonal involutions",
            t.name()
        )));
    }
    let rest = t.dim() / 2;
    let rest_unit = u % rest;
    let images = (0..t.dim())
        .map(|i| {
            let (alpha, r) = (i / rest, i % rest);
            let s = if r != rest_unit {
                -1
            } else {
                match flavor {
                    GammaFlavor::RealDiagonal if alpha == 1 => -1,
                    _ => 1,
                }
            };
            SparseVec::from_pairs([(i, Rational::integer(s))])
        })
        .collect();
    Ok(Involution::from_images(name, images))
}

impl Involution {
    fn renamed(mut self, name: &str) -> Involution {
        self.name = name.to_string();
        self
    }
}

/// Decides `x·σ(x) ∈ Nuc(A)` for all `x` through the polarized condition on basis pairs.
pub fn is_nuclear(t: &AlgebraTable, inv: &Involution) -> Result<Check> {
    if t.dim() != inv.dim() {
        return Err(Error::Dimension {
            expected: t.dim(),
            found: inv.dim(),
        });
    }
    let nuc = nucleus(t);
    let n = t.dim();
    let norm_of = |x: &SparseVec| t.mul_vec(x, &inv.apply(x));
    let inside = |v: &SparseVec| nuc.contains(v).expect("same ambient");
    for i in 0..n {
        for j in i..n {
            let (ei, ej) = (SparseVec::unit(i), SparseVec::unit(j));
            let pol = t
                .mul_vec(&ei, inv.image(j))
                .add(&t.mul_vec(&ej, inv.image(i)));
            if inside(&pol) {
                continue;
            }
            let x = [ei.clone(), ej.clone(), ei.add(&ej)]
                .into_iter()
                .find(|x| !inside(&norm_of(x)))
                .expect("polarization outside the nucleus forces a witness");
            let v = norm_of(&x);
            return Ok(Check {
                holds: false,
                witness: Some(Witness::new(t, "xσ(x) ∈ Nuc", vec![x], &v)),
            });
        }
    }
    Ok(Check {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HermProduct {
    /// `½(XY + YX)`.
    Jordan,
    /// Plain matrix product `XY`.
    Raw,
}

#[derive(Debug, thiserror::Error)]
pub enum HermError {
    #[error(transparent)]
    Algebra(#[from] Error),
    #[error("Hermitian matrices are not closed under the product: {0:?}")]
    NotClosed(Box<Witness>),
}

/// A 3×3 matrix with entries in the coefficient algebra, row-major.
type Matrix3 = [SparseVec; 9];

const OFF_DIAGONAL: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Hermitian 3×3 matrices over a coefficient algebra with an involution.
#[derive(Clone, Debug)]
pub struct HermAlgebra {
    coeff: AlgebraTable,
    inv: Involution,
    product: HermProduct,
    fixed: Subspace,
    basis: Vec<Matrix3>,
    table: AlgebraTable,
    identity: SparseVec,
    trace_row: SparseVec,
}

fn matrix_mul(coeff: &AlgebraTable, x: &Matrix3, y: &Matrix3) -> Matrix3 {
    std::array::from_fn(|pr| {
        let (p, r) = (pr / 3, pr % 3);
        let mut acc = SparseVec::new();
        for qq in 0..3 {
            let (a, b) = (&x[p * 3 + qq], &y[qq * 3 + r]);
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add(&coeff.mul_vec(a, b));
            }
        }
        acc
    })
}

fn position_label(p: usize, qq: usize) -> String {
    format!("{}{}", p + 1, qq + 1)
}

fn entry_label(coeff: &AlgebraTable, v: &SparseVec, fallback: usize) -> String {
    match v.entries() {
        [(i, c)] if c.is_one() => coeff.labels()[*i].clone(),
        _ => format!("f{fallback}"),
    }
}

impl HermAlgebra {
    pub fn coeff(&self) -> &AlgebraTable {
        &self.coeff
    }

    pub fn involution(&self) -> &Involution {
        &self.inv
    }

    pub fn product_kind(&self) -> HermProduct {
        self.product
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// Number of diagonal basis members (`3 · dim Fix(σ)`).
    pub fn diagonal_dim(&self) -> usize {
        3 * self.fixed.dim()
    }

    pub fn fixed_space(&self) -> &Subspace {
        &self.fixed
    }

    pub fn identity(&self) -> &SparseVec {
        &self.identity
    }

    pub fn trace(&self, x: &SparseVec) -> Rational {
        self.trace_row.dot(x)
    }

    /// `X∘Y` in the table's product.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.table.mul_vec(x, y)
    }

    /// `⟨X,Y⟩ = Tr(X∘Y)`.
    pub fn inner(&self, x: &SparseVec, y: &SparseVec) -> Rational {
        self.trace(&self.mul(x, y))
    }

    /// `X − ⅓Tr(X)I`.
    pub fn prime(&self, x: &SparseVec) -> SparseVec {
        x.add_scaled(&(-q(1, 3) * self.trace(x)), &self.identity)
    }

    /// `X·Y − c⟨X,Y⟩I` with `X·Y = 2X∘Y`.
    pub fn bullet(&self, x: &SparseVec, y: &SparseVec, c: &Rational) -> SparseVec {
        let xy = self.mul(x, y);
        let ip = self.trace(&xy);
        xy.scale(&Rational::integer(2))
            .add_scaled(&(-c * &ip), &self.identity)
    }

    /// The trace-zero subspace `J′`.
    pub fn prime_space(&self) -> Subspace {
        Subspace::span(self.dim(), nullspace(self.dim(), [self.trace_row.clone()]))
    }

    /// The matrix of basis element `i`, entries in the coefficient algebra.
    pub fn basis_matrix(&self, i: usize) -> &[SparseVec; 9] {
        &self.basis[i]
    }

    pub fn to_json(&self) -> HermJson {
        let d = self.diagonal_dim();
        let labels = self.table.labels();
        let mut involution = Vec::new();
        for j in 0..self.inv.dim() {
            for (k, c) in self.inv.image(j).iter() {
                involution.push((j, *k, c.clone()));
            }
        }
        HermJson {
            table: self.table.to_json(),
            coefficient_algebra: self.coeff.name().to_string(),
            product: self.product,
            involution_name: self.inv.name.clone(),
            involution,
            grading: HermGrading {
                diagonal: labels[..d].to_vec(),
                off_diagonal: labels[d..].to_vec(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermGrading {
    pub diagonal: Vec<String>,
    pub off_diagonal: Vec<String>,
}

/// Table JSON plus the involution images `[j, k, "c"]` and the diagonal/off-diagonal split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermJson {
    #[serde(flatten)]
    pub table: TableJson,
    pub coefficient_algebra: String,
    pub product: HermProduct,
    pub involution_name: String,
    pub involution: Vec<(usize, usize, Rational)>,
    pub grading: HermGrading,
}

/// Builds the Hermitian basis (diagonal `E_pp ⊗ f` for `f` in the RREF basis of
/// `Fix(σ)`, then off-diagonal `X_pq = e_k, X_qp = σ(e_k)` at positions 12, 13, 23)
/// and its product table.
pub fn build_herm(coeff: &AlgebraTable, inv: &Involution, product: HermProduct) -> std::result::Result<HermAlgebra, HermError> {
    if coeff.dim() != inv.dim() {
        return Err(Error::Dimension {
            expected: coeff.dim(),
            found: inv.dim(),
        }
        .into());
    }
    let u = coeff
        .unit()
        .ok_or_else(|| Error::InvalidTable(format!("{} has no unit", coeff.name())))?;
    let m = coeff.dim();
    let fixed = inv.fixed_space();
    if !fixed.contains(&SparseVec::unit(u))? {
        return Err(Error::Invalid(format!("{} does not fix the unit", inv.name)).into());
    }
    let empty: Matrix3 = Default::default();
    let mut basis: Vec<Matrix3> = Vec::new();
    let mut labels = Vec::new();
    for p in 0..3 {
        for (n, f) in fixed.basis().iter().enumerate() {
            let mut x = empty.clone();
            x[p * 4] = f.clone();
            basis.push(x);
            let l = entry_label(coeff, f, n);
            labels.push(if l == coeff.labels()[u] {
                format!("E{}", p + 1)
            } else {
                format!("E{}[{l}]", p + 1)
            });
        }
    }
    for &(p, qq) in &OFF_DIAGONAL {
        for k in 0..m {
            let mut x = empty.clone();
            x[p * 3 + qq] = SparseVec::unit(k);
            x[qq * 3 + p] = inv.image(k).clone();
            basis.push(x);
            labels.push(format!("X{}[{}]", position_label(p, qq), coeff.labels()[k]));
        }
    }
    let nf = fixed.dim();
    let dim = basis.len();
    let coords = |x: &Matrix3| -> Option<SparseVec> {
        let mut pairs = Vec::new();
        for p in 0..3 {
            let c = fixed.coordinates(&x[p * 4]).ok()??;
            pairs.extend(c.into_iter().enumerate().map(|(n, v)| (p * nf + n, v)));
        }
        for (o, &(p, qq)) in OFF_DIAGONAL.iter().enumerate() {
            let a = &x[p * 3 + qq];
            if inv.apply(a) != x[qq * 3 + p] {
                return None;
            }
            pairs.extend(a.iter().map(|(k, v)| (3 * nf + o * m + k, v.clone())));
        }
        Some(SparseVec::from_pairs(pairs))
    };
    let half = q(1, 2);
    let mut sc = Vec::with_capacity(dim * dim);
    let mut failure = None;
    for i in 0..dim {
        for j in 0..dim {
            let xy = matrix_mul(coeff, &basis[i], &basis[j]);
            let z: Matrix3 = match product {
                HermProduct::Raw => xy,
                HermProduct::Jordan => {
                    let yx = matrix_mul(coeff, &basis[j], &basis[i]);
                    std::array::from_fn(|e| xy[e].add(&yx[e]).scale(&half))
                }
            };
            match coords(&z) {
                Some(c) => sc.push(c),
                None => {
                    failure = Some((i, j, z));
                    break;
                }
            }
        }
        if failure.is_some() {
            break;
        }
    }
    if let Some((i, j, z)) = failure {
        let show = |x: &Matrix3| -> String {
            let rows: Vec<String> = (0..3)
                .map(|p| {
                    let cells: Vec<String> = (0..3).map(|r| coeff.format(&x[p * 3 + r])).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            rows.join(" ")
        };
        return Err(HermError::NotClosed(Box::new(Witness {
            identity: "product of Hermitian matrices is Hermitian".to_string(),
            inputs: vec![labels[i].clone(), labels[j].clone()],
            value: show(&z),
            elements: vec![SparseVec::unit(i), SparseVec::unit(j)],
        })));
    }
    let name = format!(
        "{}3({},{})",
        match product {
            HermProduct::Jordan => "J",
            HermProduct::Raw => "H",
        },
        coeff.name(),
        inv.name
    );
    let table = AlgebraTable::new(name, labels, None, sc)?;
    let mut identity = empty.clone();
    for p in 0..3 {
        identity[p * 4] = SparseVec::unit(u);
    }
    let identity = coords(&identity).expect("identity matrix is Hermitian");
    let trace_row = SparseVec::from_pairs(
        (0..3).flat_map(|p| {
            fixed
                .basis()
                .iter()
                .enumerate()
                .map(move |(n, f)| (p * nf + n, f.get(u)))
        }),
    );
    Ok(HermAlgebra {
        coeff: coeff.clone(),
        inv: inv.clone(),
        product,
        fixed,
        basis,
        table,
        identity,
        trace_row,
    })
}

/// `(x∘y)∘(x∘x) − x∘(y∘(x∘x))`.
pub fn jordan_defect(t: &AlgebraTable, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let xx = t.mul_vec(x, x);
    let l = t.mul_vec(&t.mul_vec(x, y), &xx);
    let r = t.mul_vec(x, &t.mul_vec(y, &xx));
    l.sub(&r)
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> SparseVec {
    let k = rng.gen_range(1..=4.min(n));
    SparseVec::from_pairs((0..k).map(|_| {
        let i = rng.gen_range(0..n);
        let c = rng.gen_range(-2i64..=2);
        (i, Rational::integer(c))
    }))
}

/// Commutativity on basis pairs, a seeded random pre-filter, then the linearized
/// Jordan identity on basis multisets `{a ≤ b ≤ c}` against every basis `y`.
pub fn jordan_identity_check(t: &AlgebraTable, seed: u64) -> Check {
    if let Some((i, j)) = t.noncommuting_pair() {
        let v = t.commutator_vec(&SparseVec::unit(i), &SparseVec::unit(j));
        return Check {
            holds: false,
            witness: Some(Witness::new(t, "x∘y = y∘x", vec![SparseVec::unit(i), SparseVec::unit(j)], &v)),
        };
    }
    let n = t.dim();
    let fail = |x: SparseVec, y: SparseVec, v: SparseVec| Check {
        holds: false,
        witness: Some(Witness::new(t, "(x∘y)∘(x∘x) = x∘(y∘(x∘x))", vec![x, y], &v)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        if n == 0 {
            break;
        }
        let (x, y) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let v = jordan_defect(t, &x, &y);
        if !v.is_zero() {
            return fail(x, y, v);
        }
    }
    let e = SparseVec::unit;
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let pairs = [(a, t.product(b, c)), (b, t.product(a, c)), (c, t.product(a, b))];
                for y in 0..n {
                    let mut lin = SparseVec::new();
                    for (i, jk) in pairs {
                        let iy = t.product(i, y);
                        let l = t.mul_vec(iy, jk);
                        let r = t.mul_vec(&e(i), &t.mul_vec(&e(y), jk));
                        lin = lin.add(&l).sub(&r);
                    }
                    if lin.is_zero() {
                        continue;
                    }
                    // Degree ≤ 3 in each coefficient: a 4-point grid per variable suffices.
                    let mut idx = vec![a, b, c];
                    idx.dedup();
                    for code in 0..4usize.pow(idx.len() as u32) {
                        let mut cc = code;
                        let x = SparseVec::from_pairs(idx.iter().map(|&i| {
                            let v = [0, 1, -1, 2][cc % 4];
                            cc /= 4;
                            (i, Rational::integer(v))
                        }));
                        let v = jordan_defect(t, &x, &e(y));
                        if !v.is_zero() {
                            return fail(x, e(y), v);
                        }
                    }
                    unreachable!("nonzero linearization without a grid witness");
                }
            }
        }
    }
    Check {
        holds: true,
        witness: None,
    }
}
