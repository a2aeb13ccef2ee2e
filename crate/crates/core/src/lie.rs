//! Lie-algebra diagnostics on bracket tables: Jacobi sweeps, Killing form and
//! inertia, derived algebra, center, and the symmetric-coset bracket test.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraTable;
use crate::linalg::{inertia, Matrix, RowReducer, SparseVec, Subspace};
use crate::rational::{common_denominator, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum JacobiMode {
    Full,
    Sampled { seed: u64, count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiOutcome {
    pub triples_checked: u64,
    pub failures: u64,
    /// Lexicographically smallest failing triple `i < j < k`.
    pub witness: Option<(usize, usize, usize)>,
    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]` at the witness.
    pub witness_value: Option<String>,
}

impl JacobiOutcome {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis elements.
pub fn jacobiator(t: &AlgebraTable, i: usize, j: usize, k: usize) -> SparseVec {
    let e = SparseVec::unit;
    let a = t.mul_vec(t.product(i, j), &e(k));
    let b = t.mul_vec(t.product(j, k), &e(i));
    let c = t.mul_vec(t.product(k, i), &e(j));
    a.add(&b).add(&c)
}

/// Structure constants scaled by a common denominator to machine integers.
struct IntTable {
    n: usize,
    sc: Vec<Vec<(u32, i64)>>,
}

impl IntTable {
    fn new(t: &AlgebraTable) -> Option<IntTable> {
        let n = t.dim();
        let all: Vec<&Rational> = (0..n * n)
            .flat_map(|p| t.product(p / n, p % n).iter().map(|(_, c)| c))
            .collect();
        let l = common_denominator(all.iter().copied())?;
        let mut sc = Vec::with_capacity(n * n);
        for p in 0..n * n {
            let mut row = Vec::new();
            for (k, c) in t.product(p / n, p % n).iter() {
                let (num, den) = c.as_small()?;
                let v = num.checked_mul(l / den)?;
                // Keep products of two constants and their sums comfortably inside i128.
                if v.unsigned_abs() > (1u64 << 40) {
                    return None;
                }
                row.push((*k as u32, v));
            }
            sc.push(row);
        }
        Some(IntTable { n, sc })
    }

    /// Whether the Jacobiator of `(i, j, k)` vanishes, using `acc` as scratch.
    fn jacobi_zero(&self, i: usize, j: usize, k: usize, acc: &mut [i128], touched: &mut Vec<u32>) -> bool {
        let n = self.n;
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for &(l, u) in &self.sc[a * n + b] {
                for &(m, v) in &self.sc[l as usize * n + c] {
                    let slot = &mut acc[m as usize];
                    if *slot == 0 {
                        touched.push(m);
                    }
                    *slot += (u as i128) * (v as i128);
                }
            }
        }
        let mut zero = true;
        for &m in touched.iter() {
            if acc[m as usize] != 0 {
                zero = false;
            }
            acc[m as usize] = 0;
        }
        touched.clear();
        zero
    }
}

fn thread_pool(threads: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        b = b.num_threads(k.max(1));
    }
    b.build().expect("thread pool")
}

/// Seeded sample of distinct triples `i < j < k`, sorted.
pub fn sample_triples(n: usize, seed: u64, count: u64) -> Vec<(usize, usize, usize)> {
    let total = if n < 3 { 0 } else { (n as u64) * (n as u64 - 1) * (n as u64 - 2) / 6 };
    let want = count.min(total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    while (set.len() as u64) < want {
        let mut v = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
        v.sort_unstable();
        if v[0] < v[1] && v[1] < v[2] {
            set.insert((v[0], v[1], v[2]));
        }
    }
    set.into_iter().collect()
}

/// Checks the Jacobi identity on basis triples `i < j < k`. Repeated indices need no
/// check once the table is antisymmetric. Every triple is visited, so the failure
/// count and the smallest witness do not depend on the thread count.
pub fn verify_jacobi(t: &AlgebraTable, mode: JacobiMode, threads: Option<usize>) -> JacobiOutcome {
    let n = t.dim();
    let pool = thread_pool(threads);
    let int = IntTable::new(t);
    let check = |i: usize, j: usize, k: usize, acc: &mut Vec<i128>, touched: &mut Vec<u32>| -> bool {
        match &int {
            Some(it) => it.jacobi_zero(i, j, k, acc, touched),
            None => jacobiator(t, i, j, k).is_zero(),
        }
    };
    // (checked, failures, min witness) per chunk
    type Tally = (u64, u64, Option<(usize, usize, usize)>);
    let merge = |a: Tally, b: Tally| -> Tally {
        let w = match (a.2, b.2) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        (a.0 + b.0, a.1 + b.1, w)
    };
    let (checked, failures, witness) = pool.install(|| match mode {
        JacobiMode::Full => (0..n)
            .into_par_iter()
            .map_init(
                || (vec![0i128; n], Vec::new()),
                |(acc, touched), i| {
                    let mut tally: Tally = (0, 0, None);
                    for j in i + 1..n {
                        for k in j + 1..n {
                            tally.0 += 1;
                            if !check(i, j, k, acc, touched) {
                                tally.1 += 1;
                                if tally.2.is_none() {
                                    tally.2 = Some((i, j, k));
                                }
                            }
                        }
                    }
                    tally
                },
            )
            .reduce(|| (0, 0, None), merge),
        JacobiMode::Sampled { seed, count } => {
            let triples = sample_triples(n, seed, count);
            triples
                .par_chunks(4096)
                .map_init(
                    || (vec![0i128; n], Vec::new()),
                    |(acc, touched), chunk| {
                        let mut tally: Tally = (0, 0, None);
                        for &(i, j, k) in chunk {
                            tally.0 += 1;
                            if !check(i, j, k, acc, touched) {
                                tally.1 += 1;
                                if tally.2.is_none() {
                                    tally.2 = Some((i, j, k));
                                }
                            }
                        }
                        tally
                    },
                )
                .reduce(|| (0, 0, None), merge)
        }
    });
    let witness_value = witness.map(|(i, j, k)| t.format(&jacobiator(t, i, j, k)));
    JacobiOutcome {
        triples_checked: checked,
        failures,
        witness,
        witness_value,
    }
}

/// `K(e_i, e_j) = tr(ad_i ad_j) = Σ_{k,l} c_ik^l c_jl^k`.
pub fn killing_form(t: &AlgebraTable) -> Matrix {
    let n = t.dim();
    // by_pos[l * n + k] = [(j, c_jl^k)]
    let mut by_pos: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n * n];
    for j in 0..n {
        for l in 0..n {
            for (k, c) in t.product(j, l).iter() {
                by_pos[l * n + k].push((j, c.clone()));
            }
        }
    }
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            for (l, c) in t.product(i, k).iter() {
                for (j, v) in &by_pos[l * n + k] {
                    m[(i, *j)] += c * v;
                }
            }
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingSummary {
    pub inertia: (usize, usize, usize),
    pub negative_definite: bool,
    pub semisimple: bool,
}

pub fn killing_summary(t: &AlgebraTable) -> KillingSummary {
    let (p, z, m) = inertia(&killing_form(t));
    KillingSummary {
        inertia: (p, z, m),
        negative_definite: p == 0 && z == 0,
        semisimple: z == 0,
    }
}

/// Cartan's criterion: nondegenerate Killing form.
pub fn is_semisimple(t: &AlgebraTable) -> bool {
    killing_summary(t).semisimple
}

/// Span of all brackets `[e_i, e_j]`.
pub fn derived_algebra(t: &AlgebraTable) -> Subspace {
    let n = t.dim();
    let mut rr = RowReducer::new(n);
    'outer: for i in 0..n {
        for j in i + 1..n {
            rr.insert(t.product(i, j));
            if rr.is_full() {
                break 'outer;
            }
        }
    }
    rr.into_subspace()
}

/// `{x : [x, e_j] = 0 for all j}`.
pub fn center_lie(t: &AlgebraTable) -> Subspace {
    let n = t.dim();
    let mut rr = RowReducer::new(n);
    'outer: for j in 0..n {
        // Row k: Σ_m x_m c_mj^k = 0
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        for m in 0..n {
            for (k, c) in t.product(m, j).iter() {
                rows[*k].push((m, c.clone()));
            }
        }
        for r in rows {
            if !r.is_empty() {
                rr.insert(&SparseVec::from_pairs(r));
            }
            if rr.is_full() {
                break 'outer;
            }
        }
    }
    Subspace::span(n, rr.nullspace())
}

pub fn bracket(t: &AlgebraTable, x: &SparseVec, y: &SparseVec) -> SparseVec {
    t.mul_vec(x, y)
}

/// First pair of basis vectors of `h` whose bracket leaves `h`.
pub fn subalgebra_failure(t: &AlgebraTable, h: &Subspace) -> Option<(usize, usize)> {
    let b = h.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !h.contains(&bracket(t, &b[i], &b[j])).expect("same ambient") {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTest {
    pub closed: bool,
    pub complement_dim: usize,
    /// Whether the complement is Killing-orthogonal to `h` (otherwise a coordinate complement).
    pub killing_orthogonal: bool,
    pub cc_in_h: bool,
}

/// For a subalgebra `h`, picks a complement `c` and reports whether `[c, c] ⊆ h`.
pub fn symmetric_coset_test(t: &AlgebraTable, h: &Subspace) -> Result<CosetTest> {
    let n = t.dim();
    if h.ambient_dim() != n {
        return Err(Error::Dimension {
            expected: n,
            found: h.ambient_dim(),
        });
    }
    if let Some((i, j)) = subalgebra_failure(t, h) {
        return Err(Error::Invalid(format!(
            "not a subalgebra: bracket of basis vectors {i} and {j} leaves it"
        )));
    }
    let k = killing_form(t);
    // Killing-orthogonal complement: {x : K(x, h_r) = 0 for all r}.
    let rows = h.basis().iter().map(|hv| {
        SparseVec::from_pairs((0..n).map(|x| {
            let v: Rational = hv.iter().map(|(y, c)| c * &k[(*y, x)]).sum();
            (x, v)
        }))
    });
    let mut rr = RowReducer::new(n);
    for r in rows {
        rr.insert(&r);
    }
    let perp = Subspace::span(n, rr.nullspace());
    let meet = perp.intersection(h)?;
    let (complement, killing_orthogonal) = if meet.dim() == 0 && perp.dim() + h.dim() == n {
        (perp.basis().to_vec(), true)
    } else {
        (h.complement_basis(), false)
    };
    let mut cc_in_h = true;
    'outer: for a in 0..complement.len() {
        for b in a + 1..complement.len() {
            if !h.contains(&bracket(t, &complement[a], &complement[b]))? {
                cc_in_h = false;
                break 'outer;
            }
        }
    }
    Ok(CosetTest {
        closed: true,
        complement_dim: complement.len(),
        killing_orthogonal,
        cc_in_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::hurwitz;
    use crate::derivations::derivation_algebra;

    fn su2() -> AlgebraTable {
        derivation_algebra(&hurwitz("H").unwrap()).unwrap().table().clone()
    }

    #[test]
    fn su2_diagnostics() {
        let t = su2();
        assert!(verify_jacobi(&t, JacobiMode::Full, Some(1)).holds());
        assert_eq!(killing_summary(&t).inertia, (0, 0, 3));
        assert_eq!(derived_algebra(&t).dim(), 3);
        assert_eq!(center_lie(&t).dim(), 0);
    }

    #[test]
    fn abelian_algebra() {
        let t = AlgebraTable::from_fn("ab", vec!["x".into(), "y".into()], None, |_, _| SparseVec::new()).unwrap();
        assert!(killing_form(&t).is_zero());
        assert!(!is_semisimple(&t));
        assert_eq!(center_lie(&t).dim(), 2);
    }

    #[test]
    fn jacobi_failure_is_found() {
        // [x,y] = x, [y,z] = x, [z,x] = z: Jacobiator on (x,y,z) is nonzero.
        let e = SparseVec::unit;
        let t = AlgebraTable::from_fn("bad", vec!["x".into(), "y".into(), "z".into()], None, |i, j| {
            match (i, j) {
                (0, 1) => e(0),
                (1, 0) => e(0).neg(),
                (1, 2) => e(0),
                (2, 1) => e(0).neg(),
                (2, 0) => e(2),
                (0, 2) => e(2).neg(),
                _ => SparseVec::new(),
            }
        })
        .unwrap();
        let out = verify_jacobi(&t, JacobiMode::Full, None);
        assert_eq!(out.witness, Some((0, 1, 2)));
        assert!(!jacobiator(&t, 0, 1, 2).is_zero());
    }

    #[test]
    fn coset_tests_on_su2() {
        let t = su2();
        let h = Subspace::span(3, [t.product(0, 1).clone()]);
        let r = symmetric_coset_test(&t, &h).unwrap();
        assert!(r.cc_in_h);
        assert_eq!(r.complement_dim, 2);
        let all = symmetric_coset_test(&t, &Subspace::full(3)).unwrap();
        assert!(all.cc_in_h && all.complement_dim == 0);
        assert!(!symmetric_coset_test(&t, &Subspace::zero(3)).unwrap().cc_in_h);
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(sample_triples(30, 7, 100), sample_triples(30, 7, 100));
        assert_ne!(sample_triples(30, 7, 100), sample_triples(30, 8, 100));
        assert_eq!(sample_triples(5, 0, 1000).len(), 10);
    }
}
