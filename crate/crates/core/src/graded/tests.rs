use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random::*;
use super::*;
use crate::linalg::SparseVec;
use crate::ndiff::homotopy_criterion_lemma4;
use crate::error::NcxError;
use crate::linalg::ExactMatrix;
use crate::scalars::{Cyclotomic, Field, Rational};

type Q = Rational;
type C = Cyclotomic;

fn zeta(m: u32) -> C {
    Cyclotomic::root_of_unity(m, 1)
}

fn rand_complex<F: Field>(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64, chains: usize, ops: usize) -> GradedNComplex<F> {
    let ch = random_chains(rng, n, lo, hi, chains);
    scramble(rng, &complex_from_chains::<F>(n, lo, hi, &ch), ops)
}

fn ones(n: usize) -> Vec<C> {
    vec![C::one(); n]
}

#[test]
fn concentrated_in_degree_zero() {
    let c = GradedNComplex::<Q>::with_boundaries(3, 0, vec![4], vec![], Boundary::Zero, Boundary::Zero).unwrap();
    let h = c.homology();
    assert_eq!(h.dim(0, 1), Some(4));
    assert_eq!(h.dim(0, 2), Some(4));
    let t = GradedNComplex::<Q>::new(3, 0, vec![4], vec![]).unwrap();
    assert_eq!(t.homology().dim(0, 1), None);
}

#[test]
fn truncated_validity_window() {
    let base = complex_from_chains::<Q>(3, 0, 5, &[(0, 3), (1, 3), (2, 2), (4, 2)]);
    let dims: Vec<usize> = base.degrees().map(|d| base.component_dim(d).unwrap()).collect();
    let maps = (0..5).map(|d| base.map(d).unwrap()).collect();
    let t = GradedNComplex::new(3, 0, dims, maps).unwrap();
    let h = t.homology();
    for m in 1..3usize {
        for deg in 0..=5i64 {
            let inside = deg >= (3 - m) as i64 && deg <= 5 - m as i64;
            assert_eq!(h.dim(deg, m).is_some(), inside, "deg={deg} m={m}");
            if inside {
                assert_eq!(h.dim(deg, m), base.homology().dim(deg, m));
            }
        }
    }
}

#[test]
fn rejects_bad_composites() {
    let m = ExactMatrix::<Q>::identity(1);
    let r = GradedNComplex::with_boundaries(2, 0, vec![1, 1, 1], vec![m.clone(), m], Boundary::Zero, Boundary::Zero);
    assert!(matches!(r, Err(NcxError::NotNilpotent { n: 2 })));
}

#[test]
fn matrix_algebra_is_acyclic() {
    for n in 3..=5usize {
        let q = zeta(n as u32);
        let m = MatrixAlgebra::new(n, q.clone(), ones(n)).unwrap();
        assert!(m.e_power_identity());
        assert!(m.leibniz_holds());
        let c = m.complex().unwrap();
        let h = c.homology();
        assert!(h.table().iter().all(|r| r.dim == Some(0)), "N={n}");
        let total = c.total_module().unwrap();
        let hom = m.scalar_homotopy().unwrap();
        assert!(homotopy_criterion_lemma4(&total, &hom, &q).unwrap());
    }
}

#[test]
fn matrix_algebra_e_power_with_general_lambdas() {
    let lambdas = vec![C::from_i64(2), C::from_ratio(-1, 3), zeta(3)];
    let m = MatrixAlgebra::new(3, zeta(3), lambdas).unwrap();
    assert!(m.e_power_identity());
    assert_eq!(m.lambda_product(), C::from_ratio(-2, 3) * &zeta(3));
    assert!(m.leibniz_holds());
    assert!(matrix_algebra_complex(3, C::one(), ones(3)).is_err());
}

#[test]
fn matrix_algebra_with_a_zero_lambda() {
    let lambdas = vec![C::one(), C::one(), C::zero()];
    let c = matrix_algebra_complex(3, zeta(3), lambdas).unwrap();
    let h = c.homology();
    let per_m: Vec<usize> = (1..3).map(|m| (0..3).map(|d| h.dim(d, m).unwrap()).sum()).collect();
    // forgetting the grading gives the same totals
    let total = c.total_module().unwrap().homology();
    assert_eq!(per_m, vec![total.dim(1), total.dim(2)]);
    assert_eq!(per_m, vec![0, 0]);
}

#[test]
fn q_tensor_at_minus_one_is_classical() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let a = rand_complex::<Q>(&mut rng, 2, 0, 3, 4, 10);
        let b = rand_complex::<Q>(&mut rng, 2, -1, 1, 3, 10);
        let t = q_tensor(&a, &b, &-Q::one()).unwrap();
        let c = classical_tensor(&a, &b).unwrap();
        for d in t.degrees() {
            assert_eq!(t.map(d), c.map(d));
        }
        assert!(q_tensor_power_check(&a, &b, &t, &-Q::one()).unwrap());
    }
}

#[test]
fn q_tensor_of_matrix_examples() {
    let q = zeta(3);
    let m = matrix_algebra_complex(3, q.clone(), ones(3)).unwrap();
    let t = q_tensor(&m, &m, &q).unwrap();
    assert_eq!(t.total_dim(), 81);
    assert!(t.total_module().unwrap().power(3).is_zero());
    assert!(q_tensor_power_check(&m, &m, &t, &q).unwrap());
    // q must satisfy A1
    assert!(q_tensor(&m, &m, &C::one()).is_err());
}

#[test]
fn q_tensor_bounded_n3() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let q = zeta(3);
    for _ in 0..5 {
        let a = rand_complex::<C>(&mut rng, 3, 0, 3, 3, 8);
        let b = rand_complex::<C>(&mut rng, 3, 0, 2, 3, 8);
        let t = q_tensor(&a, &b, &q).unwrap();
        assert!(q_tensor_power_check(&a, &b, &t, &q).unwrap());
    }
}

#[test]
fn leibniz_fails_for_tensor_at_n3_but_not_n2() {
    let m3 = MatrixAlgebra::new(3, zeta(3), ones(3)).unwrap();
    let fail = q_leibniz_failure(&m3, &m3, &zeta(3), 2);
    assert!(fail.is_some());
    let m2 = MatrixAlgebra::new(2, -C::one(), ones(2)).unwrap();
    assert!(q_leibniz_failure(&m2, &m2, &-C::one(), 2).is_none());
}

fn point(n: usize, deg: i64) -> GradedNComplex<Q> {
    complex_from_chains(n, deg, deg, &[(deg, 1)])
}

#[test]
fn kunneth_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let a = scramble(&mut rng, &complex_from_chains::<Q>(2, 0, 3, &[(0, 2), (1, 1), (2, 2), (3, 1)]), 10);
    let r = kunneth_check(&a, &point(2, 0)).unwrap();
    assert!(r.holds);
    let id = complex_from_chains::<Q>(2, 0, 1, &[(0, 2)]);
    let r = kunneth_check(&id, &id).unwrap();
    assert!(r.holds);
    assert!(r.rows.iter().all(|x| x.dim_tensor == 0));
    for _ in 0..50 {
        let a = rand_complex::<Q>(&mut rng, 2, 0, 3, 4, 10);
        let b = rand_complex::<Q>(&mut rng, 2, 0, 2, 3, 10);
        assert!(kunneth_check(&a, &b).unwrap().holds);
    }
    let three = point(3, 0);
    assert!(kunneth_check(&three, &three).is_err());
}

#[test]
fn total_module_matches_graded_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let c = rand_complex::<Q>(&mut rng, n, -1, 4, 6, 20);
        let h = c.homology();
        let total = c.total_module().unwrap().homology();
        for m in 1..n {
            let s: usize = c.degrees().map(|d| h.dim(d, m).unwrap()).sum();
            assert_eq!(s, total.dim(m));
        }
    }
}

#[test]
fn split_les_is_exact_with_zero_connecting_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = rand_complex::<Q>(&mut rng, 3, 0, 8, 5, 20);
    let gens: Vec<(i64, SparseVec<Q>)> = Vec::new();
    let s = graded_ses_from_generators(a, &gens).unwrap();
    for n in 1..3 {
        for p in 0..3 {
            let r = les_check(&s, n, p).unwrap();
            assert!(r.exactness.exact);
        }
    }
}

#[test]
fn random_les_three_periods() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let s = random_graded_ses::<Q, _>(&mut rng, 3, 0, 9, 8);
        for n in 1..3 {
            for p in 0..3 {
                let r = les_check(&s, n, p).unwrap();
                assert!(r.exactness.exact, "{r:?}");
                assert!(r.nodes >= 7);
            }
        }
    }
}

#[test]
fn les_refuses_small_windows() {
    let c = complex_from_chains::<Q>(3, 0, 1, &[(0, 2)]);
    let dims = vec![1, 1];
    let t = GradedNComplex::new(3, 0, dims, vec![c.map(0).unwrap()]).unwrap();
    let s = GradedSes::new(
        GradedNComplex::new(3, 0, vec![0, 0], vec![ExactMatrix::zeros(0, 0)]).unwrap(),
        t.clone(),
        t,
        vec![ExactMatrix::zeros(1, 0), ExactMatrix::zeros(1, 0)],
        vec![ExactMatrix::identity(1), ExactMatrix::identity(1)],
    )
    .unwrap();
    assert!(les_check(&s, 1, 0).is_err());
}

#[test]
fn cone_les_has_connecting_isomorphisms() {
    // F acyclic (chains of full length N); the quotient's homology is carried by ∂
    let f = complex_from_chains::<Q>(3, 0, 8, &[(0, 3), (1, 3), (3, 3), (4, 3), (6, 3)]);
    assert!(f.homology().table().iter().all(|r| r.dim == Some(0)));
    let s = graded_ses_from_generators(f, &[(4, SparseVec::unit(1))]).unwrap();
    let r = les_check(&s, 1, 1).unwrap();
    assert!(r.exactness.exact);
    let he = s.e.homology();
    let hg = s.g.homology();
    // every ∂ between determinate pieces is invertible
    for deg in s.g.degrees() {
        for m in 1..3usize {
            let top = deg + m as i64;
            if let (Some(src), Some(tgt)) = (hg.get(deg, m), he.get(top, 3 - m)) {
                let c = s.connecting(deg, m, src, tgt).unwrap();
                assert_eq!(src.dim(), tgt.dim());
                assert_eq!(crate::linalg::rank(&c), src.dim());
            }
        }
    }
}

#[test]
fn pullback_matches_cyclic_homology() {
    let lambdas = vec![C::one(), C::from_i64(2), C::zero(), C::one()];
    let c = matrix_algebra_complex(4, zeta(4), lambdas).unwrap();
    let p = c.pullback(-4, 8).unwrap();
    let (hc, hp) = (c.homology(), p.homology());
    for deg in 0..=4i64 {
        for m in 1..4 {
            assert_eq!(hp.dim(deg, m), hc.dim(deg.rem_euclid(4), m));
        }
    }
}

#[test]
fn json_round_trip() {
    let c = complex_from_chains::<Q>(3, -1, 2, &[(-1, 3), (0, 2)]);
    let v = c.to_json(&crate::scalars::FieldDescriptor::rationals());
    let back = GradedNComplex::<Q>::from_json(&v).unwrap();
    assert_eq!(back.grading(), c.grading());
    for d in c.degrees() {
        assert_eq!(back.map(d), c.map(d));
    }
    let m = matrix_algebra_complex(3, zeta(3), ones(3)).unwrap();
    let back = GradedNComplex::<C>::from_json(&m.to_json(&crate::scalars::make_cyclotomic(3))).unwrap();
    assert!(back.is_cyclic());
    assert_eq!(back.map(2), m.map(2));
}
