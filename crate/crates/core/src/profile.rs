//! Structural predicates (commutative, associative, alternative, flexible,
//! power-associative) with witnesses, plus nucleus, commutant and center.
//!
//! Multilinear identities are decided on basis tuples. The power-associativity
//! identities are not multilinear; they are decided by a small-element witness
//! search followed by their full linearizations on basis multisets, which is
//! complete in characteristic zero.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraTable;
use crate::linalg::{RowReducer, SparseVec, Subspace};
use crate::rational::Rational;

/// Concrete elements on which an identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub identity: String,
    pub inputs: Vec<String>,
    pub value: String,
    #[serde(skip)]
    pub elements: Vec<SparseVec>,
}

impl Witness {
    pub fn new(table: &AlgebraTable, identity: &str, elements: Vec<SparseVec>, value: &SparseVec) -> Witness {
        Witness {
            identity: identity.to_string(),
            inputs: elements.iter().map(|e| table.format(e)).collect(),
            value: table.format(value),
            elements,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn from(w: Option<Witness>) -> Check {
        Check {
            holds: w.is_none(),
            witness: w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub commutative: Check,
    pub associative: Check,
    pub alternative: Check,
    pub flexible: Check,
    pub power_associative: Check,
}

pub fn structural_profile(t: &AlgebraTable) -> Profile {
    Profile {
        commutative: Check::from(commutativity_witness(t)),
        associative: Check::from(associativity_witness(t)),
        alternative: Check::from(alternativity_witness(t)),
        flexible: Check::from(flexibility_witness(t)),
        power_associative: Check::from(power_associativity_witness(t)),
    }
}

fn e(i: usize) -> SparseVec {
    SparseVec::unit(i)
}

fn assoc(t: &AlgebraTable, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
    t.associator_vec(x, y, z)
}

pub fn commutativity_witness(t: &AlgebraTable) -> Option<Witness> {
    t.noncommuting_pair().map(|(i, j)| {
        let v = t.commutator_vec(&e(i), &e(j));
        Witness::new(t, "xy = yx", vec![e(i), e(j)], &v)
    })
}

pub fn associativity_witness(t: &AlgebraTable) -> Option<Witness> {
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = assoc(t, &e(i), &e(j), &e(k));
                if !v.is_zero() {
                    return Some(Witness::new(t, "(xy)z = x(yz)", vec![e(i), e(j), e(k)], &v));
                }
            }
        }
    }
    None
}

/// Among `e_a`, `e_b`, `e_a + e_b`, the first `x` with `f(x) ≠ 0`.
fn quadratic_witness(
    a: usize,
    b: usize,
    f: impl Fn(&SparseVec) -> SparseVec,
) -> Option<(SparseVec, SparseVec)> {
    let cands = [e(a), e(b), e(a).add(&e(b))];
    cands.into_iter().find_map(|x| {
        let v = f(&x);
        (!v.is_zero()).then_some((x, v))
    })
}

pub fn alternativity_witness(t: &AlgebraTable) -> Option<Witness> {
    let n = t.dim();
    for a in 0..n {
        for b in a..n {
            for y in 0..n {
                let left = assoc(t, &e(a), &e(b), &e(y)).add(&assoc(t, &e(b), &e(a), &e(y)));
                if !left.is_zero() {
                    let (x, v) = quadratic_witness(a, b, |x| assoc(t, x, x, &e(y)))
                        .expect("nonzero polarization has a witness");
                    return Some(Witness::new(t, "(x,x,y) = 0", vec![x, e(y)], &v));
                }
                let right = assoc(t, &e(y), &e(a), &e(b)).add(&assoc(t, &e(y), &e(b), &e(a)));
                if !right.is_zero() {
                    let (x, v) = quadratic_witness(a, b, |x| assoc(t, &e(y), x, x))
                        .expect("nonzero polarization has a witness");
                    return Some(Witness::new(t, "(y,x,x) = 0", vec![x, e(y)], &v));
                }
            }
        }
    }
    None
}

pub fn flexibility_witness(t: &AlgebraTable) -> Option<Witness> {
    let n = t.dim();
    for a in 0..n {
        for b in a..n {
            for y in 0..n {
                let lin = assoc(t, &e(a), &e(y), &e(b)).add(&assoc(t, &e(b), &e(y), &e(a)));
                if !lin.is_zero() {
                    let (x, v) = quadratic_witness(a, b, |x| assoc(t, x, &e(y), x))
                        .expect("nonzero polarization has a witness");
                    return Some(Witness::new(t, "(x,y,x) = 0", vec![x, e(y)], &v));
                }
            }
        }
    }
    None
}

/// `(xx)x − x(xx)`.
fn cube_defect(t: &AlgebraTable, x: &SparseVec) -> SparseVec {
    let xx = t.mul_vec(x, x);
    t.mul_vec(&xx, x).sub(&t.mul_vec(x, &xx))
}

/// `((xx)x)x − (xx)(xx)`.
fn fourth_defect(t: &AlgebraTable, x: &SparseVec) -> SparseVec {
    let xx = t.mul_vec(x, x);
    t.mul_vec(&t.mul_vec(&xx, x), x).sub(&t.mul_vec(&xx, &xx))
}

fn power_defect(t: &AlgebraTable, x: &SparseVec) -> Option<(&'static str, SparseVec)> {
    let v = cube_defect(t, x);
    if !v.is_zero() {
        return Some(("(xx)x = x(xx)", v));
    }
    let v = fourth_defect(t, x);
    if !v.is_zero() {
        return Some(("((xx)x)x = (xx)(xx)", v));
    }
    None
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Searches `Σ c_i e_i` over the distinct indices of `support` with `c_i ∈ {-2..2}`.
/// A nonzero polynomial of degree ≤ 4 in each variable cannot vanish on that grid.
fn grid_witness(t: &AlgebraTable, support: &[usize]) -> Option<(SparseVec, &'static str, SparseVec)> {
    let mut idx = support.to_vec();
    idx.dedup();
    let k = idx.len();
    for code in 0..5usize.pow(k as u32) {
        let mut c = code;
        let x = SparseVec::from_pairs(idx.iter().map(|&i| {
            let v = [0, 1, -1, 2, -2][c % 5];
            c /= 5;
            (i, Rational::integer(v))
        }));
        if let Some((id, v)) = power_defect(t, &x) {
            return Some((x, id, v));
        }
    }
    None
}

pub fn power_associativity_witness(t: &AlgebraTable) -> Option<Witness> {
    let n = t.dim();
    let found = |x: SparseVec| power_defect(t, &x).map(|(id, v)| Witness::new(t, id, vec![x], &v));
    // Small supports first: single basis elements, then e_a ± e_b.
    for a in 0..n {
        if let Some(w) = found(e(a)) {
            return Some(w);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for s in [1, -1] {
                if let Some(w) = found(e(a).add_scaled(&Rational::integer(s), &e(b))) {
                    return Some(w);
                }
            }
        }
    }
    // Full linearizations on basis multisets.
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut lin = SparseVec::new();
                for p in permutations(&[a, b, c]) {
                    lin = lin.add(&assoc(t, &e(p[0]), &e(p[1]), &e(p[2])));
                }
                if !lin.is_zero() {
                    let (x, id, v) = grid_witness(t, &[a, b, c]).expect("grid search is complete");
                    return Some(Witness::new(t, id, vec![x], &v));
                }
            }
        }
    }
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    let mut lin = SparseVec::new();
                    for p in permutations(&[a, b, c, d]) {
                        let wx = t.mul_vec(&e(p[0]), &e(p[1]));
                        let l = t.mul_vec(&t.mul_vec(&wx, &e(p[2])), &e(p[3]));
                        let r = t.mul_vec(&wx, t.product(p[2], p[3]));
                        lin = lin.add(&l).sub(&r);
                    }
                    if !lin.is_zero() {
                        let (x, id, v) =
                            grid_witness(t, &[a, b, c, d]).expect("grid search is complete");
                        return Some(Witness::new(t, id, vec![x], &v));
                    }
                }
            }
        }
    }
    None
}

/// Solves for all `n` with `f(n, e_i, e_j) = 0` for each linear `f` produced by `maps`.
fn solve_linear_conditions(
    t: &AlgebraTable,
    conditions: &dyn Fn(usize, usize, usize) -> Vec<SparseVec>,
) -> Subspace {
    let n = t.dim();
    let mut rr = RowReducer::new(n);
    'outer: for i in 0..n {
        for j in 0..n {
            // images[m][c] = c-th condition applied to e_m; each is a vector in A.
            let images: Vec<Vec<SparseVec>> = (0..n).map(|m| conditions(m, i, j)).collect();
            let nconds = images.first().map_or(0, |v| v.len());
            for c in 0..nconds {
                let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
                for (m, img) in images.iter().enumerate() {
                    for (k, x) in img[c].iter() {
                        rows[*k].push((m, x.clone()));
                    }
                }
                for r in rows {
                    if !r.is_empty() {
                        rr.insert(&SparseVec::from_pairs(r));
                    }
                }
                if rr.is_full() {
                    break 'outer;
                }
            }
        }
    }
    Subspace::span(n, rr.nullspace())
}

/// `{n : (n,x,y) = (x,n,y) = (x,y,n) = 0 for all x, y}`.
pub fn nucleus(t: &AlgebraTable) -> Subspace {
    solve_linear_conditions(t, &|m, i, j| {
        vec![
            assoc(t, &e(m), &e(i), &e(j)),
            assoc(t, &e(i), &e(m), &e(j)),
            assoc(t, &e(i), &e(j), &e(m)),
        ]
    })
}

/// `{c : cx = xc for all x}`.
pub fn commutant(t: &AlgebraTable) -> Subspace {
    solve_linear_conditions(t, &|m, i, j| {
        if j == 0 {
            vec![t.commutator_vec(&e(m), &e(i))]
        } else {
            vec![SparseVec::new()]
        }
    })
}

pub fn center(t: &AlgebraTable) -> Subspace {
    nucleus(t)
        .intersection(&commutant(t))
        .expect("same ambient dimension")
}

/// First product of two basis vectors of `s` falling outside `s`.
pub fn closure_failure(t: &AlgebraTable, s: &Subspace) -> Option<(usize, usize)> {
    let b = s.basis();
    for i in 0..b.len() {
        for j in 0..b.len() {
            if !s.contains(&t.mul_vec(&b[i], &b[j])).expect("same ambient") {
                return Some((i, j));
            }
        }
    }
    None
}
