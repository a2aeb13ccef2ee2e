use std::sync::OnceLock;

use proptest::prelude::*;
use tensorion_core::construct::{from_spec, hurwitz};
use tensorion_core::derivations::{derivation_algebra, derivations_for, DerivationChoice, LieSubalgebra};
use tensorion_core::jordan::{build_herm, jordan_defect, HermAlgebra, HermProduct, Involution};
use tensorion_core::lie::{jacobiator, killing_form};
use tensorion_core::profile::structural_profile;
use tensorion_core::rational::{q, Rational};
use tensorion_core::tits::{build_tits, TitsAlgebra, TitsConfig};
use tensorion_core::{AlgebraTable, SparseVec};

fn vec_of(n: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-3i64..4, n)
        .prop_map(|d| SparseVec::from_dense(&d.into_iter().map(Rational::from).collect::<Vec<_>>()))
}

fn octonions() -> &'static AlgebraTable {
    static T: OnceLock<AlgebraTable> = OnceLock::new();
    T.get_or_init(|| hurwitz("O").unwrap())
}

fn g2() -> &'static LieSubalgebra {
    static T: OnceLock<LieSubalgebra> = OnceLock::new();
    T.get_or_init(|| derivation_algebra(octonions()).unwrap())
}

fn albert() -> &'static HermAlgebra {
    static T: OnceLock<HermAlgebra> = OnceLock::new();
    T.get_or_init(|| {
        let o = octonions();
        build_herm(o, &Involution::conjugation(o).unwrap(), HermProduct::Jordan).unwrap()
    })
}

/// The 259-dimensional assembly over C⊗O with the full derivation algebra; not a Lie
/// algebra, but antisymmetric.
fn a3_full() -> &'static TitsAlgebra {
    static T: OnceLock<TitsAlgebra> = OnceLock::new();
    T.get_or_init(|| {
        let a = from_spec("C*O").unwrap();
        let h = hurwitz("H").unwrap();
        let j = build_herm(&h, &Involution::conjugation(&h).unwrap(), HermProduct::Jordan).unwrap();
        let der_j = derivation_algebra(j.table()).unwrap();
        let (der_a, _) = derivations_for(&a, DerivationChoice::Full).unwrap();
        build_tits("a3", &a, &der_a, &j, &der_j, &TitsConfig::default())
            .unwrap()
            .algebra
            .unwrap()
    })
}

/// Two-dimensional algebras with small structure constants.
fn small_table() -> impl Strategy<Value = AlgebraTable> {
    proptest::collection::vec(-1i64..2, 8).prop_map(|c| {
        AlgebraTable::from_fn("X", vec!["a".into(), "b".into()], None, |i, j| {
            let k = 2 * (2 * i + j);
            SparseVec::from_pairs([(0, Rational::from(c[k])), (1, Rational::from(c[k + 1]))])
        })
        .unwrap()
    })
}

fn bilinear_form(m: &tensorion_core::linalg::Matrix, x: &SparseVec, y: &SparseVec) -> Rational {
    let mut s = Rational::from(0);
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            s += a * b * &m[(*i, *j)];
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_bilinear(x in vec_of(8), y in vec_of(8), z in vec_of(8), a in -3i64..4) {
        let t = octonions();
        let a = Rational::from(a);
        let lhs = t.mul_vec(&x.scale(&a).add(&y), &z);
        let rhs = t.mul_vec(&x, &z).scale(&a).add(&t.mul_vec(&y, &z));
        prop_assert_eq!(lhs, rhs);
        let lhs = t.mul_vec(&z, &x.add(&y.scale(&a)));
        let rhs = t.mul_vec(&z, &x).add(&t.mul_vec(&z, &y).scale(&a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in vec_of(8), y in vec_of(8)) {
        let t = octonions();
        let p = t.mul_vec(&x, &y);
        prop_assert_eq!(p.dot(&p), x.dot(&x) * y.dot(&y));
    }

    #[test]
    fn profile_implications(t in small_table()) {
        let p = structural_profile(&t);
        if p.associative.holds {
            prop_assert!(p.alternative.holds);
        }
        if p.alternative.holds {
            prop_assert!(p.flexible.holds && p.power_associative.holds);
        }
        if p.commutative.holds {
            prop_assert!(p.flexible.holds);
        }
        for c in [&p.commutative, &p.associative, &p.alternative, &p.flexible, &p.power_associative] {
            prop_assert_eq!(c.holds, c.witness.is_none());
        }
    }

    #[test]
    fn derivations_obey_leibniz(k in 0usize..14, x in vec_of(8), y in vec_of(8)) {
        let t = octonions();
        let d = g2().operator(k);
        let lhs = d.apply(&t.mul_vec(&x, &y));
        let rhs = t.mul_vec(&d.apply(&x), &y).add(&t.mul_vec(&x, &d.apply(&y)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn killing_form_is_ad_invariant(x in vec_of(14), y in vec_of(14), z in vec_of(14)) {
        let l = g2().table();
        let k = killing_form(l);
        let lhs = bilinear_form(&k, &l.mul_vec(&x, &y), &z);
        let rhs = bilinear_form(&k, &x, &l.mul_vec(&y, &z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prime_projection(x in vec_of(27), y in vec_of(27)) {
        let j = albert();
        let xp = j.prime(&x);
        prop_assert_eq!(j.prime(&xp), xp.clone());
        prop_assert!(j.trace(&xp).is_zero());
        let yp = j.prime(&y);
        prop_assert!(j.trace(&j.bullet(&xp, &yp, &q(2, 3))).is_zero());
        prop_assert_eq!(j.bullet(&xp, &yp, &q(2, 3)), j.bullet(&yp, &xp, &q(2, 3)));
        prop_assert_eq!(j.inner(&x, &y), j.inner(&y, &x));
    }

    #[test]
    fn albert_algebra_is_jordan(x in vec_of(27), y in vec_of(27)) {
        let t = albert().table();
        prop_assert_eq!(t.mul_vec(&x, &y), t.mul_vec(&y, &x));
        prop_assert!(jordan_defect(t, &x, &y).is_zero());
    }

    #[test]
    fn jacobiator_is_alternating(i in 0usize..259, j in 0usize..259, k in 0usize..259) {
        let t = &a3_full().table;
        let base = jacobiator(t, i, j, k);
        prop_assert_eq!(jacobiator(t, j, k, i), base.clone());
        prop_assert_eq!(jacobiator(t, k, i, j), base.clone());
        prop_assert_eq!(jacobiator(t, j, i, k), base.neg());
        if i == j {
            prop_assert!(base.is_zero());
        }
    }
}
