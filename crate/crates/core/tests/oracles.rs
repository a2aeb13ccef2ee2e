//! Computed values checked against independent implementations or closed formulas.

use tensorion_core::construct::{dixon, from_spec, hurwitz, zero_divisor_witnesses};
use tensorion_core::derivations::{derivation_algebra, derivations_for, DerivationChoice};
use tensorion_core::jordan::{build_herm, HermProduct, Involution};
use tensorion_core::lie::{killing_form, verify_jacobi, JacobiMode};
use tensorion_core::rational::Rational;
use tensorion_core::tits::{build_tits, TitsConfig};
use tensorion_core::{AlgebraTable, SparseVec};

type Quat = [i64; 4];

/// Hamilton's formulas.
fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qadd(a: Quat, b: Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Octonions as pairs of quaternions, `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
fn omul(x: [i64; 8], y: [i64; 8]) -> [i64; 8] {
    let split = |v: [i64; 8]| ([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]]);
    let ((a, b), (c, d)) = (split(x), split(y));
    let neg = |q: Quat| q.map(|v| -v);
    let l = qadd(qmul(a, c), neg(qmul(qconj(d), b)));
    let r = qadd(qmul(d, a), qmul(b, qconj(c)));
    [l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3]]
}

fn dense(t: &AlgebraTable, v: &SparseVec) -> Vec<i64> {
    v.to_dense(t.dim())
        .iter()
        .map(|c| c.to_string().parse().expect("integer structure constant"))
        .collect()
}

#[test]
fn quaternion_table_matches_hamilton() {
    let h = hurwitz("H").unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let mut a = [0; 4];
            let mut b = [0; 4];
            a[i] = 1;
            b[j] = 1;
            assert_eq!(dense(&h, h.product(i, j)), qmul(a, b).to_vec(), "e{i}·e{j}");
        }
    }
}

#[test]
fn octonion_table_matches_quaternion_pairs() {
    let o = hurwitz("O").unwrap();
    for i in 0..8 {
        for j in 0..8 {
            let mut a = [0; 8];
            let mut b = [0; 8];
            a[i] = 1;
            b[j] = 1;
            assert_eq!(dense(&o, o.product(i, j)), omul(a, b).to_vec(), "e{i}·e{j}");
        }
    }
    for (x, y, z) in [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7)] {
        assert_eq!(o.format(o.product(x, y)), format!("o{z}"));
    }
}

#[test]
fn dixon_product_is_factorwise() {
    let (c, h, o) = (hurwitz("C").unwrap(), hurwitz("H").unwrap(), hurwitz("O").unwrap());
    let t = dixon();
    let split = |k: usize| (k / 32, (k / 8) % 4, k % 8);
    let single = |tab: &AlgebraTable, i, j| {
        let p = tab.product(i, j);
        let (idx, s) = p.iter().next().unwrap();
        (*idx, s.clone())
    };
    for i in 0..64 {
        for j in 0..64 {
            let ((ci, hi, oi), (cj, hj, oj)) = (split(i), split(j));
            let (c0, s0) = single(&c, ci, cj);
            let (h0, s1) = single(&h, hi, hj);
            let (o0, s2) = single(&o, oi, oj);
            let expect = SparseVec::from_pairs([(c0 * 32 + h0 * 8 + o0, s0 * s1 * s2)]);
            assert_eq!(t.product(i, j), &expect);
        }
    }
}

#[test]
fn zero_divisor_count_matches_factor_pairs() {
    let t = dixon();
    // Imaginary units of C, H, O number 1, 3, 7; each cross product gives x ± 1.
    let expected = 2 * (1 * 3 + 1 * 7 + 3 * 7);
    let zd = zero_divisor_witnesses(&t).unwrap();
    assert_eq!(zd.len(), expected);
    for z in &zd {
        assert!(t.mul_vec(&z.u, &z.v).is_zero());
        assert_eq!(t.mul_vec(&z.v, &z.u), SparseVec::new());
    }
}

/// `der J3(A) = der A ⊕ A′⊗J3(ℝ)′ ⊕ so3`, so its dimension is `der A + 5(dim A − 1) + 3`.
#[test]
fn jordan_derivation_dims_follow_the_magic_square_formula() {
    for (n, der_a) in [("C", 0), ("H", 3), ("O", 14)] {
        let a = hurwitz(n).unwrap();
        assert_eq!(derivation_algebra(&a).unwrap().dim(), der_a);
        let j = build_herm(&a, &Involution::conjugation(&a).unwrap(), HermProduct::Jordan).unwrap();
        assert_eq!(j.dim(), 3 + 3 * a.dim());
        let expected = der_a + 5 * (a.dim() - 1) + 3;
        assert_eq!(derivation_algebra(j.table()).unwrap().dim(), expected, "der J3({n})");
    }
}

/// Over the commutative factor, `der(C⊗A) = C⊗der(A)`, which has twice the real
/// dimension of `der A`. The factor-wise choice keeps only `1⊗der(A)`.
#[test]
fn complex_tensor_derivations_double() {
    for (spec, base) in [("C*H", 3), ("C*O", 14)] {
        let a = from_spec(spec).unwrap();
        let (designated, full) = derivations_for(&a, DerivationChoice::Designated).unwrap();
        assert_eq!(designated.dim(), base);
        assert_eq!(full.dim(), 2 * base);
    }
}

/// `tr(ad x ad y)` from dense adjoint matrices.
#[test]
fn killing_form_matches_dense_adjoint_traces() {
    let o = hurwitz("O").unwrap();
    let g2 = derivation_algebra(&o).unwrap();
    let t = g2.table();
    let n = t.dim();
    let ad: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|i| (0..n).map(|k| t.product(i, k).to_dense(n)).collect())
        .collect();
    let k = killing_form(t);
    for i in 0..n {
        for j in 0..n {
            let mut tr = Rational::from(0);
            for a in 0..n {
                for b in 0..n {
                    // (ad_i ad_j)_{aa} = Σ_b (ad_i)_{ab} (ad_j)_{ba}; column c of ad_i is [e_i, e_c].
                    tr += &ad[i][b][a] * &ad[j][a][b];
                }
            }
            assert_eq!(k[(i, j)], tr, "K({i},{j})");
        }
    }
}

/// Compact magic square entries `su6 = 35`, `so12 = 66`, `e7 = 133`.
#[test]
fn magic_square_dimensions_and_jacobi() {
    for (an, bn, dim) in [("C", "H", 35), ("H", "H", 66), ("H", "O", 133)] {
        let a = hurwitz(an).unwrap();
        let b = hurwitz(bn).unwrap();
        let j = build_herm(&b, &Involution::conjugation(&b).unwrap(), HermProduct::Jordan).unwrap();
        let der_a = derivation_algebra(&a).unwrap();
        let der_j = derivation_algebra(j.table()).unwrap();
        let built = build_tits("L3", &a, &der_a, &j, &der_j, &TitsConfig::default()).unwrap();
        let alg = built.algebra.expect("closed");
        assert_eq!(alg.table.dim(), dim);
        assert!(verify_jacobi(&alg.table, JacobiMode::Full, None).holds());
    }
}
