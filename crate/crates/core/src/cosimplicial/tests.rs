use num_traits::{One, Zero};
use proptest::prelude::*;

use super::instances::{decode, increasing_tuples};
use super::*;
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::scalars::{Cyclotomic, Rational};

type Q = Rational;
type C = Cyclotomic;

fn z(m: u32) -> C {
    Cyclotomic::root_of_unity(m, 1)
}

fn cohomology<F: Field>(c: &GradedNComplex<F>, upto: usize) -> Vec<usize> {
    let h = c.homology();
    (0..=upto as i64).map(|d| h.dim(d, 1).unwrap()).collect()
}

/// k[t]/(t² − a t − b) with basis (1, t).
fn quadratic<F: Field>(a: F, b: F) -> AlgebraData<F> {
    AlgebraData::new(
        2,
        [(0, 0, 0, F::one()), (0, 1, 1, F::one()), (1, 0, 1, F::one()), (1, 1, 0, b), (1, 1, 1, a)],
        Some(SparseVec::unit(0)),
        None,
        false,
    )
    .unwrap()
}

fn regular_hochschild<F: Field>(a: &AlgebraData<F>, n_max: usize) -> CosimplicialData<F> {
    hochschild(a, &Bimodule::regular(a).unwrap(), n_max).unwrap()
}

#[test]
fn constant_module_cohomology() {
    let e = constant_module::<Q>(6);
    let d = e.simplicial_maps();
    for (n, m) in d.iter().enumerate() {
        assert_eq!(m.get(0, 0), if n % 2 == 0 { Q::zero() } else { Q::one() });
    }
    assert_eq!(cohomology(&e.simplicial_differential().unwrap(), 5), vec![1, 0, 0, 0, 0, 0]);
}

#[test]
fn hochschild_of_ground_field() {
    let k = AlgebraData::<Q>::ground();
    let e = regular_hochschild(&k, 5);
    assert!(e.dims().iter().all(|d| *d == 1));
    assert_eq!(cohomology(&e.simplicial_differential().unwrap(), 4), vec![1, 0, 0, 0, 0]);
}

/// HH(k[t]/t²) through the 2-periodic resolution: Hom-complex A →0 A →2t A →0 A …
fn periodic_oracle(upto: usize) -> Vec<usize> {
    let zero = ExactMatrix::<Q>::zeros(2, 2);
    let two_t = ExactMatrix::from_triplets(2, 2, [(1, 0, Q::from_i64(2))]);
    let maps = (0..upto + 1).map(|k| if k % 2 == 0 { zero.clone() } else { two_t.clone() }).collect();
    let c = GradedNComplex::with_boundaries(2, 0, vec![2; upto + 2], maps, Boundary::Zero, Boundary::Truncated).unwrap();
    cohomology(&c, upto)
}

#[test]
fn hochschild_of_dual_numbers() {
    let a = AlgebraData::<Q>::dual_numbers();
    let e = regular_hochschild(&a, 5);
    let got = cohomology(&e.simplicial_differential().unwrap(), 4);
    assert_eq!(got, periodic_oracle(4));
    assert_eq!(got, vec![2, 1, 1, 1, 1]);
}

#[test]
fn hochschild_of_matrix_algebra() {
    let a = AlgebraData::<Q>::matrix_algebra(2);
    let e = regular_hochschild(&a, 4);
    assert_eq!(cohomology(&e.simplicial_differential().unwrap(), 3), vec![1, 0, 0, 0]);
}

#[test]
fn d0_d1_reduce_to_simplicial_at_minus_one() {
    let a = AlgebraData::<Q>::dual_numbers();
    let e = regular_hochschild(&a, 4);
    let m1 = -Q::one();
    assert_eq!(e.d0_maps(&m1), e.simplicial_maps());
    assert_eq!(e.d1_maps(&m1), e.simplicial_maps());
}

#[test]
fn coface_sums_are_nilpotent() {
    // construction validates d^N = 0 in every stored degree
    let e = constant_module::<C>(8);
    for n in [3usize, 4, 5] {
        e.d0(&z(n as u32), n).unwrap();
        e.d1(&z(n as u32), n).unwrap();
    }
    let h = regular_hochschild(&AlgebraData::<C>::dual_numbers(), 6);
    h.d0(&z(3), 3).unwrap();
    h.d1(&z(3), 3).unwrap();
    // A0 without A1 still gives N-complexes
    let m1 = -Q::one();
    let e = regular_hochschild(&AlgebraData::<Q>::dual_numbers(), 5);
    e.d0(&m1, 4).unwrap();
    e.d1(&m1, 4).unwrap();
    assert!(matches!(e.d1(&Q::from_i64(2), 3), Err(NcxError::Assumption(_))));
}

#[test]
fn normalized_hochschild_vanishes_on_units() {
    let a = AlgebraData::<Q>::dual_numbers();
    let e = regular_hochschild(&a, 4);
    let (levels, _) = e.normalized_subcomplex().unwrap();
    for (n, l) in levels.iter().enumerate() {
        assert_eq!(l.dim(), 2);
        for b in l.basis() {
            for (idx, _) in b.iter() {
                // unit is e_0: normalized cochains only see tuples without it
                assert!(decode(idx / 2, 2, n).iter().all(|x| *x != 0));
            }
        }
    }
}

#[test]
fn normalized_constant_module() {
    let (levels, c) = constant_module::<Q>(5).normalized_subcomplex().unwrap();
    assert_eq!(levels.iter().map(|l| l.dim()).collect::<Vec<_>>(), vec![1, 0, 0, 0, 0, 0]);
    assert_eq!(cohomology(&c, 4), vec![1, 0, 0, 0, 0]);
}

#[test]
fn chevalley_eilenberg_examples() {
    let ab = AlgebraData::<Q>::abelian_lie(3);
    let r = Representation::trivial(&ab, 2);
    let c = chevalley_eilenberg(&ab, &r, 3).unwrap();
    assert!(c.degrees().filter_map(|d| c.map(d)).all(|m| m.is_zero()));
    assert_eq!(cohomology(&c, 3), vec![2, 6, 6, 2]);

    let aff = AlgebraData::<Q>::affine_lie();
    let c = chevalley_eilenberg(&aff, &Representation::trivial(&aff, 1), 2).unwrap();
    assert_eq!(cohomology(&c, 2), vec![1, 1, 0]);

    let sl2 = AlgebraData::<Q>::sl2();
    let c = chevalley_eilenberg(&sl2, &Representation::trivial(&sl2, 1), 3).unwrap();
    assert_eq!(cohomology(&c, 3), vec![1, 0, 0, 1]);

    // adjoint coefficients: H⁰ is the centre, zero for sl2 (Whitehead)
    let ad = Representation::new(&sl2, 3, sl2.adjoint()).unwrap();
    let c = chevalley_eilenberg(&sl2, &ad, 3).unwrap();
    assert_eq!(cohomology(&c, 3), vec![0, 0, 0, 0]);
}

#[test]
fn ce_bracket_sign_against_direct_formula() {
    // dω(X_0, X_1) = -ω([X_0, X_1]) for trivial coefficients
    let aff = AlgebraData::<Q>::affine_lie();
    let c = chevalley_eilenberg(&aff, &Representation::trivial(&aff, 1), 2).unwrap();
    let d1 = c.map(1).unwrap();
    assert_eq!(increasing_tuples(2, 2), vec![vec![0, 1]]);
    assert_eq!(d1.get(0, 0), Q::zero());
    assert_eq!(d1.get(0, 1), -Q::one());
}

#[test]
fn invalid_inputs_are_rejected() {
    // non-associative: t·t = 1 but (t·t)·t vs t·(t·t) fine; break unit instead
    let bad = AlgebraData::<Q>::new(2, [(0, 0, 0, Q::one()), (1, 1, 1, Q::one())], Some(SparseVec::unit(0)), None, false);
    assert!(bad.is_err());
    let bad_lie = AlgebraData::<Q>::new(2, [(0, 1, 1, Q::one())], None, None, true);
    assert!(bad_lie.is_err());
    let aff = AlgebraData::<Q>::affine_lie();
    let r = Representation::new(&aff, 1, vec![ExactMatrix::identity(1), ExactMatrix::identity(1)]);
    assert!(r.is_err());
    let a = AlgebraData::<Q>::dual_numbers();
    let m = Bimodule::new(&a, 2, vec![ExactMatrix::identity(2); 2], vec![ExactMatrix::identity(2); 2]);
    assert!(m.is_err());
}

#[test]
fn relation_failures_are_located() {
    let e = constant_module::<Q>(3);
    let id = ExactMatrix::<Q>::identity(1);
    let mut cof: Vec<Vec<ExactMatrix<Q>>> = (0..3).map(|n| vec![id.clone(); n + 2]).collect();
    cof[1][2] = id.scale(&Q::from_i64(2));
    let r = CosimplicialData::new(e.dims().to_vec(), cof, None);
    assert!(matches!(r, Err(NcxError::RelationFailure { relation: "F", level: 0, .. })));
}

#[test]
fn tensor_algebra_structure() {
    let a = AlgebraData::<Q>::dual_numbers();
    let t = TensorAlgebra::new(&a, 4).unwrap();
    assert_eq!(t.data().dims(), &[2, 4, 8, 16, 32]);
    let m2 = AlgebraData::<Q>::matrix_algebra(2);
    TensorAlgebra::new(&m2, 3).unwrap();
}

#[test]
fn universal_envelope_dimensions() {
    for (a, n_max) in [(AlgebraData::<Q>::dual_numbers(), 5), (AlgebraData::matrix_algebra(2), 3), (quadratic(Q::one(), Q::one()), 4)] {
        let om = universal_envelope(&a, n_max).unwrap();
        let d = a.dim();
        let expect: Vec<usize> = (0..=n_max).map(|n| d * (d - 1).pow(n as u32)).collect();
        assert_eq!(om.dims(), expect);
        // acyclic above degree 0
        let h = cohomology(&om.complex, n_max - 1);
        assert_eq!(h[0], 1);
        assert!(h[1..].iter().all(|x| *x == 0));
    }
    let om = universal_envelope(&AlgebraData::<Q>::ground(), 3).unwrap();
    assert_eq!(om.dims(), vec![1, 0, 0, 0]);
}

#[test]
fn universal_differential_on_generators() {
    let a = AlgebraData::<Q>::dual_numbers();
    let t = TensorAlgebra::new(&a, 2).unwrap();
    let d = &t.data().simplicial_maps()[0];
    // d x = 1 ⊗ x − x ⊗ 1, index of (u, v) is 2u + v
    let dt = d.apply(&SparseVec::unit(1));
    assert_eq!(dt, SparseVec::from_pairs(vec![(1, Q::one()), (2, -Q::one())]));
    assert!(d.apply(&SparseVec::unit(0)).is_zero());
    let om = universal_envelope(&a, 2).unwrap();
    assert!(om.levels[1].contains(&dt));
}

#[test]
fn tensor_algebra_relation() {
    let t = TensorAlgebra::new(&AlgebraData::<C>::dual_numbers(), 4).unwrap();
    assert!(t.q_leibniz_holds(&z(3)));
    assert!(t.q_leibniz_holds(&z(4)));
    let t = TensorAlgebra::new(&AlgebraData::<C>::matrix_algebra(2), 2).unwrap();
    assert!(t.q_leibniz_holds(&z(3)));
    // d₀ has no such rule: compare with d₀ in place of d₁ would fail, so check d₁ ≠ d₀
    assert_ne!(t.data().d1_maps(&z(3)), t.data().d0_maps(&z(3)));
}

#[test]
fn omega_q_reduces_to_omega_at_n2() {
    for a in [AlgebraData::<Q>::dual_numbers(), AlgebraData::matrix_algebra(2)] {
        let n_max = if a.dim() == 2 { 4 } else { 3 };
        let oq = omega_q(&a, &-Q::one(), 2, n_max).unwrap();
        let om = universal_envelope(&a, n_max).unwrap();
        assert_eq!(oq.dims(), om.dims());
    }
    let oq = omega_q(&AlgebraData::<C>::ground(), &z(3), 3, 4).unwrap();
    assert_eq!(oq.dims(), vec![1, 0, 0, 0, 0]);
}

#[test]
fn omega_q_is_larger_than_omega_for_n3() {
    let a = AlgebraData::<C>::dual_numbers();
    let oq = omega_q(&a, &z(3), 3, 4).unwrap();
    let om = universal_envelope(&a, 4).unwrap();
    assert!(oq.dims()[2] > om.dims()[2]);
}

#[test]
fn comparison_constant_module() {
    let e = constant_module::<C>(8);
    let r = theorem2_verify(&e, &z(3), 3, 6).unwrap();
    assert!(r.holds, "{r:?}");
    let nonzero: Vec<_> = r.rows.iter().filter(|x| x.computed > 0).map(|x| (x.differential, x.degree, x.m)).collect();
    // d₁: H⁰_(m) = H⁰; d₀: H^{N-m-1}_(m) = H⁰
    assert_eq!(nonzero, vec![("d0", 0, 2), ("d0", 1, 1), ("d1", 0, 1), ("d1", 0, 2)]);
}

#[test]
fn comparison_dual_numbers() {
    let a = AlgebraData::<C>::dual_numbers();
    let e = regular_hochschild(&a, 8);
    let r = theorem2_verify(&e, &z(3), 3, 6).unwrap();
    assert!(r.holds, "{r:?}");
    assert_eq!(&r.ordinary[..6], &[Some(2), Some(1), Some(1), Some(1), Some(1), Some(1)]);
    let e = regular_hochschild(&a, 7);
    assert!(theorem2_verify(&e, &z(4), 4, 4).unwrap().holds);
}

#[test]
fn comparison_matrix_algebra() {
    let e = regular_hochschild(&AlgebraData::<C>::matrix_algebra(2), 4);
    let r = theorem2_verify(&e, &z(3), 3, 2).unwrap();
    assert!(r.holds);
    assert!(r.rows.iter().filter(|x| x.computed > 0).all(|x| x.differential == "d0" || x.degree == 0));
}

#[test]
fn comparison_refusals() {
    let e = constant_module::<C>(8);
    assert!(matches!(theorem2_verify(&e, &z(3), 3, 1), Err(NcxError::Invalid(_))));
    assert!(matches!(theorem2_verify(&e, &z(3), 3, 7), Err(NcxError::OutsideWindow { .. })));
    assert!(matches!(theorem2_verify(&e, &-C::one(), 4, 4), Err(NcxError::Assumption(_))));
}

#[test]
fn vanishing_examples() {
    let r = prop7_verify(&AlgebraData::<C>::ground(), &z(3), 3, 4).unwrap();
    assert!(r.holds);
    let r = prop7_verify(&AlgebraData::<C>::dual_numbers(), &z(3), 3, 5).unwrap();
    assert!(r.holds, "{r:?}");
    let r = prop7_verify(&AlgebraData::<C>::matrix_algebra(2), &z(3), 3, 3).unwrap();
    assert!(r.holds);
}

#[test]
fn algebra_json_round_trip() {
    for a in [AlgebraData::<Q>::dual_numbers(), AlgebraData::sl2(), AlgebraData::matrix_algebra(2)] {
        let back = AlgebraData::<Q>::from_json(&a.to_json()).unwrap();
        assert_eq!(back.to_json(), a.to_json());
    }
    let v = serde_json::json!({"dim": 1, "structure_constants": [[0, 0, 0, 1]], "unit": ["1"], "lie": false});
    assert_eq!(AlgebraData::<Q>::from_json(&v).unwrap().dim(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadratic_algebras_satisfy_relations_and_comparison(a in -3i64..4, b in -3i64..4) {
        let alg = quadratic(C::from_i64(a), C::from_i64(b));
        let e = regular_hochschild(&alg, 5);
        let (_, norm) = e.normalized_subcomplex().unwrap();
        prop_assert_eq!(cohomology(&norm, 4), cohomology(&e.simplicial_differential().unwrap(), 4));
        prop_assert!(theorem2_verify(&e, &z(3), 3, 3).unwrap().holds);
    }
}
